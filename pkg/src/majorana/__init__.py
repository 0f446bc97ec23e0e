"""Majorana constellations of pure states in dimension d.

A state with amplitudes a_0..a_{d-1} is mapped to the polynomial
f(alpha) = sum_k sqrt(C(d-1, k)) a_k alpha^k. Each root alpha = e^{-i phi} tan(theta/2)
is a point on the sphere; roots at zero sit on the north pole and the
degree deficiency of f puts the remaining points on the south pole.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..config import config
from ..construction import MeasurementFamily, as_vector, flip_partner, is_normalized
from ..errors import DimensionMismatchError, InputFormatError, PreconditionError
from ..graph_core import family_partitions
from .roots import RootSet, polynomial_roots

logger = logging.getLogger("qcw.majorana")

# theta this close to pi is read back as the south pole
POLE_TOL = 1e-12


def _wrap_phi(phi: float) -> float:
    """Map an azimuth into (-pi, pi]."""
    phi = math.remainder(phi, 2 * math.pi)
    return math.pi if phi <= -math.pi else phi


@dataclass(frozen=True)
class StarPoint:
    theta: float
    phi: float
    mult: int = 1

    @property
    def cartesian(self) -> np.ndarray:
        s = math.sin(self.theta)
        return np.array([s * math.cos(self.phi), s * math.sin(self.phi), math.cos(self.theta)])

    @property
    def is_south_pole(self) -> bool:
        return abs(self.theta - math.pi) <= POLE_TOL


def angular_distance(p: StarPoint, q: StarPoint) -> float:
    """Great-circle angle between two points, computed from the chord."""
    chord = float(np.linalg.norm(p.cartesian - q.cartesian))
    return 2.0 * math.asin(min(1.0, chord / 2.0))


@dataclass(frozen=True)
class Constellation:
    d: int
    points: Tuple[StarPoint, ...] = ()
    south_pole_count: int = 0

    def __post_init__(self):
        points = tuple(self.points)
        for p in points:
            if not (math.isfinite(p.theta) and math.isfinite(p.phi)):
                raise PreconditionError(f"non-finite Majorana point {p}")
            if p.mult < 1:
                raise PreconditionError(f"multiplicity must be positive, got {p.mult}")
        if self.south_pole_count < 0:
            raise PreconditionError("negative south pole count")
        total = sum(p.mult for p in points) + self.south_pole_count
        if total != self.d - 1:
            raise DimensionMismatchError(f"constellation holds {total} points, expected d-1 = {self.d - 1}")
        object.__setattr__(self, "points", points)

    @property
    def count(self) -> int:
        return self.d - 1

    def expanded(self) -> List[StarPoint]:
        """Every point repeated by multiplicity, south pole included."""
        out = [StarPoint(p.theta, p.phi) for p in self.points for _ in range(p.mult)]
        out.extend(StarPoint(math.pi, 0.0) for _ in range(self.south_pole_count))
        return out

    def to_dict(self) -> Dict[str, Any]:
        points = [{"theta": p.theta, "phi": p.phi, "mult": p.mult} for p in self.points]
        if self.south_pole_count:
            points.append({"theta": math.pi, "phi": 0.0, "mult": self.south_pole_count})
        return {"d": self.d, "points": points}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Constellation":
        try:
            d = int(data["d"])
            raw = [StarPoint(float(p["theta"]), float(p["phi"]), int(p.get("mult", 1)))
                   for p in data["points"]]
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise InputFormatError(f"malformed constellation document: {e}") from e
        south = sum(p.mult for p in raw if p.is_south_pole)
        return cls(d=d, points=tuple(p for p in raw if not p.is_south_pole), south_pole_count=south)


def majorana_polynomial(state) -> np.ndarray:
    """Coefficients sqrt(C(d-1, k)) a_k, constant term first, trailing zeros kept."""
    a = as_vector(state)
    d = a.shape[0]
    if d < 2:
        raise PreconditionError(f"Majorana polynomial needs d >= 2, got {d}")
    weights = np.sqrt([math.comb(d - 1, k) for k in range(d)])
    return weights * a


def _merge(points: Sequence[StarPoint], merge_tol: float) -> Tuple[StarPoint, ...]:
    clusters: List[List[Any]] = []
    for p in sorted(points, key=lambda p: (p.theta, p.phi)):
        for cluster in clusters:
            if angular_distance(cluster[0], p) <= merge_tol:
                cluster[1] += p.mult
                break
        else:
            clusters.append([p, p.mult])
    return tuple(StarPoint(rep.theta, rep.phi, mult) for rep, mult in clusters)


def _root_to_point(alpha: complex) -> StarPoint:
    if alpha == 0:
        return StarPoint(0.0, 0.0)
    return StarPoint(2.0 * math.atan(abs(alpha)), _wrap_phi(-np.angle(alpha)))


def constellation(state, merge_tol: Optional[float] = None, tol: Optional[float] = None) -> Constellation:
    """Majorana points of a unit-norm state; coincident points merge with multiplicity."""
    merge_tol = config.majorana.merge_tol if merge_tol is None else merge_tol
    a = as_vector(state)
    if not is_normalized(a):
        raise PreconditionError(f"state is not normalized (norm {np.linalg.norm(a):.3e})")

    found: RootSet = polynomial_roots(majorana_polynomial(a), tol)
    points = _merge([_root_to_point(complex(r)) for r in found.roots], merge_tol)
    return Constellation(d=a.shape[0], points=points, south_pole_count=found.deficiency)


def reconstruct_state(c: Constellation) -> np.ndarray:
    """State with constellation ``c``; first nonzero amplitude real positive."""
    roots = []
    south = c.south_pole_count
    for p in c.points:
        if p.is_south_pole:
            south += p.mult
        else:
            roots.extend([np.exp(-1j * p.phi) * math.tan(p.theta / 2.0)] * p.mult)

    coeffs = np.zeros(c.d, dtype=np.complex128)
    coeffs[:len(roots) + 1] = np.poly(roots)[::-1] if roots else 1.0
    weights = np.sqrt([math.comb(c.d - 1, k) for k in range(c.d)])
    a = coeffs / weights
    a /= np.linalg.norm(a)

    lead = a[np.flatnonzero(np.abs(a) > 0)[0]]
    return a * (abs(lead) / lead)


def flip_constellation(c: Constellation) -> Constellation:
    """Image under the amplitude-reversing flip: (theta, phi) -> (pi - theta, -phi).

    North pole points become south pole points and the other way round.
    """
    points, south = [], 0
    for p in c.points:
        if p.theta == 0.0:
            south += p.mult
        else:
            points.append(StarPoint(math.pi - p.theta, _wrap_phi(-p.phi), p.mult))
    if c.south_pole_count:
        points.append(StarPoint(0.0, 0.0, c.south_pole_count))
    return Constellation(d=c.d, points=tuple(points), south_pole_count=south)


class Matching(NamedTuple):
    pairs: List[Tuple[StarPoint, StarPoint, float]]
    worst: float


def match_constellations(a: Constellation, b: Constellation) -> Matching:
    """Greedy nearest-neighbour pairing of the expanded point multisets."""
    left, right = a.expanded(), b.expanded()
    if len(left) != len(right):
        raise DimensionMismatchError(f"constellations hold {len(left)} and {len(right)} points")

    unused = list(range(len(right)))
    pairs = []
    for p in left:
        distances = [angular_distance(p, right[k]) for k in unused]
        k = int(np.argmin(distances))
        pairs.append((p, right[unused[k]], distances[k]))
        unused.pop(k)
    worst = max((dist for _, _, dist in pairs), default=0.0)
    return Matching(pairs=pairs, worst=worst)


def constellations_match(a: Constellation, b: Constellation, tol: Optional[float] = None) -> bool:
    tol = config.majorana.merge_tol if tol is None else tol
    return match_constellations(a, b).worst <= tol


def family_constellations(fam: MeasurementFamily) -> List[Tuple[str, Constellation]]:
    """Constellations of psi and every vertex vector, labelled psi, v1, v2, ..."""
    panels = [("psi", constellation(fam.state))]
    panels.extend((f"v{i}", constellation(v)) for i, v in fam.vectors.items())
    return panels


@dataclass
class FlipCheck:
    label: str
    worst: float
    passed: bool


@dataclass
class FlipSymmetryReport:
    n: int
    tol: float
    checks: List[FlipCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "tol": self.tol,
            "passed": self.passed,
            "checks": [{"label": c.label, "worst": c.worst, "passed": c.passed} for c in self.checks],
        }


def flip_symmetry_report(fam: MeasurementFamily, tol: Optional[float] = None) -> FlipSymmetryReport:
    """psi and v1 are flip-invariant; each V_B vector is the flip image of its V_A partner."""
    if fam.n < 6 or fam.d != fam.n - 2:
        raise PreconditionError(f"flip symmetry needs a constructed family (n >= 6, d = n - 2), "
                                f"got n={fam.n}, d={fam.d}")
    tol = config.majorana.merge_tol if tol is None else tol
    report = FlipSymmetryReport(n=fam.n, tol=tol)

    def record(label: str, a: Constellation, b: Constellation):
        worst = match_constellations(a, b).worst
        report.checks.append(FlipCheck(label, worst, worst <= tol))

    psi = constellation(fam.state)
    record("psi", psi, flip_constellation(psi))
    v1 = constellation(fam.vector(1))
    record("v1", v1, flip_constellation(v1))

    part_a, _ = family_partitions(fam.n)
    for vertex in part_a:
        partner = flip_partner(fam.n, vertex)
        image = flip_constellation(constellation(fam.vector(vertex)))
        record(f"v{vertex}->v{partner}", constellation(fam.vector(partner)), image)

    if not report.passed:
        failed = [c.label for c in report.checks if not c.passed]
        logger.warning(f"Flip symmetry broken for n={fam.n}: {', '.join(failed)}")
    return report


__all__ = [
    'StarPoint',
    'Constellation',
    'Matching',
    'FlipCheck',
    'FlipSymmetryReport',
    'RootSet',
    'angular_distance',
    'majorana_polynomial',
    'polynomial_roots',
    'constellation',
    'reconstruct_state',
    'flip_constellation',
    'match_constellations',
    'constellations_match',
    'family_constellations',
    'flip_symmetry_report',
]
