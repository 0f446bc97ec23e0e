"""SVG figure of Majorana constellations, one disc per vector.

Each sphere is drawn as seen from +Y: a point (sin t cos p, sin t sin p, cos t)
lands at disc coordinates (x, z). Points on the front hemisphere (y >= 0) are
filled, the others hollow. Output bytes depend only on the input.
"""

import io
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

from matplotlib import rc_context  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import Circle  # noqa: E402

from ..config import config  # noqa: E402
from ..errors import PreconditionError  # noqa: E402
from ..majorana import Constellation, StarPoint  # noqa: E402

DISC_SIZE = 2.2
SVG_RC = {
    "svg.hashsalt": "qcw",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": 9,
}


@dataclass(frozen=True)
class DiscMarker:
    x: float
    z: float
    front: bool
    mult: int

    @property
    def annotation(self) -> Optional[str]:
        return f"×{self.mult}" if self.mult > 1 else None


def _sig(value: float, digits: int) -> float:
    return float(f"{value:.{digits}g}")


def disc_markers(c: Constellation, digits: Optional[int] = None) -> List[DiscMarker]:
    """Projected markers, south pole points collapsed into one marker."""
    digits = config.output.svg_digits if digits is None else digits
    points: List[StarPoint] = list(c.points)
    if c.south_pole_count:
        points.append(StarPoint(math.pi, 0.0, c.south_pole_count))

    markers = []
    for p in points:
        x, y, z = p.cartesian
        markers.append(DiscMarker(
            x=_sig(x, digits) + 0.0,
            z=_sig(z, digits) + 0.0,
            front=y >= -1e-12,
            mult=p.mult,
        ))
    return markers


def render_svg(constellations: Sequence[Tuple[str, Constellation]],
               columns: Optional[int] = None, digits: Optional[int] = None) -> str:
    """Grid of labelled discs as an SVG document."""
    if not constellations:
        raise PreconditionError("nothing to draw")
    columns = config.output.columns if columns is None else columns
    columns = max(1, min(columns, len(constellations)))
    rows = math.ceil(len(constellations) / columns)

    with rc_context(SVG_RC):
        fig = Figure(figsize=(DISC_SIZE * columns, DISC_SIZE * rows))
        for k, (label, c) in enumerate(constellations):
            ax = fig.add_subplot(rows, columns, k + 1)
            ax.set_gid(f"disc-{label}")
            ax.set_aspect("equal")
            ax.set_xlim(-1.35, 1.35)
            ax.set_ylim(-1.35, 1.35)
            ax.axis("off")
            ax.add_patch(Circle((0.0, 0.0), 1.0, fill=False, linewidth=1.0, color="0.3"))
            ax.plot([-1.0, 1.0], [0.0, 0.0], linewidth=0.4, linestyle=":", color="0.6")
            ax.set_title(label)

            for m in disc_markers(c, digits):
                ax.plot([m.x], [m.z], marker="o", markersize=6, linestyle="none",
                        markeredgecolor="tab:blue",
                        markerfacecolor="tab:blue" if m.front else "none")
                if m.annotation:
                    ax.annotate(m.annotation, (m.x, m.z), xytext=(5, 3),
                                textcoords="offset points", fontsize=8)

        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None, "Creator": None})
    return buffer.getvalue()


__all__ = ['DiscMarker', 'disc_markers', 'render_svg']
