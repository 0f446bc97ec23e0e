"""Simultaneous polynomial root finding (Aberth-Ehrlich iteration).

Coefficients are ordered from the constant term upwards. Exact zero roots
and missing top-degree terms are split off before iterating so the
iteration only sees a polynomial with a nonzero constant and leading term.
"""

import logging
from typing import NamedTuple, Optional

import numpy as np
from numpy.polynomial import polynomial as P

from ..config import config
from ..errors import ConvergenceError, PreconditionError

logger = logging.getLogger("qcw.majorana.roots")

# Coefficients below this fraction of the largest one count as zero.
ZERO_COEFF_TOL = 1e-14

# Spread allowed for the approximations of a k-fold root, in units of eps^(1/k).
CLUSTER_FACTOR = 50.0


class RootSet(NamedTuple):
    roots: np.ndarray
    deficiency: int


def _aberth(monic: np.ndarray, max_iter: int) -> np.ndarray:
    degree = monic.size - 1
    if degree == 1:
        return np.array([-monic[0]], dtype=np.complex128)

    rng = np.random.default_rng(degree)
    radius = abs(monic[0]) ** (1.0 / degree)
    angles = 2 * np.pi * np.arange(degree) / degree + 0.4 + rng.uniform(-0.1, 0.1, degree)
    z = radius * np.exp(1j * angles)
    derivative = P.polyder(monic)

    for it in range(max_iter):
        p = P.polyval(z, monic)
        dp = P.polyval(z, derivative)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(p == 0, 0.0, p / dp)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inverse = 1.0 / diff
            np.fill_diagonal(inverse, 0.0)
            repulsion = np.sum(inverse, axis=1)
            step = np.where(p == 0, 0.0, ratio / (1.0 - ratio * repulsion))
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.all(np.abs(step) <= 4 * np.finfo(float).eps * (1.0 + np.abs(z))):
            logger.debug(f"Aberth converged after {it + 1} iterations (degree {degree})")
            break
    else:
        logger.debug(f"Aberth hit {max_iter} iterations (degree {degree})")

    # one Newton polishing pass, kept only where it lowers |p|
    p = P.polyval(z, monic)
    dp = P.polyval(z, derivative)
    with np.errstate(divide="ignore", invalid="ignore"):
        polished = np.where(dp != 0, z - p / dp, z)
    better = np.abs(P.polyval(polished, monic)) < np.abs(p)
    return np.where(better & np.isfinite(polished), polished, z)


def _vanishes_to_order(monic: np.ndarray, z: complex, k: int, tol: float) -> bool:
    """f and its first k-1 derivatives are all zero at z, each relative to its own coefficients."""
    poly = monic
    for _ in range(k):
        bound = tol * np.max(np.abs(poly)) * max(1.0, abs(z)) ** (poly.size - 1)
        if abs(P.polyval(z, poly)) > bound:
            return False
        poly = P.polyder(poly)
    return True


def _polish_on_derivative(monic: np.ndarray, z: complex, k: int) -> complex:
    """Newton on f^(k-1), where a k-fold root of f is simple."""
    poly = P.polyder(monic, k - 1)
    slope = P.polyder(poly)
    for _ in range(3):
        dp = P.polyval(z, slope)
        if dp == 0:
            break
        z = z - P.polyval(z, poly) / dp
    return complex(z)


def _cluster_multiple_roots(z: np.ndarray, monic: np.ndarray, tol: float) -> np.ndarray:
    """Replace the k approximations of a k-fold root by their centroid.

    An isolated k-fold root is only resolved to about eps^(1/k), the k
    approximations scattering around it. Their mean is polished on f^(k-1)
    and the group is accepted when its spread fits that scale and the
    polynomial vanishes to order k at the polished centre.
    """
    eps = np.finfo(float).eps
    out = z.copy()
    remaining = list(range(z.size))
    while remaining:
        first = remaining[0]
        order = np.argsort(np.abs(z[remaining] - z[first]), kind="stable")
        group = [first]
        for k in range(len(remaining), 1, -1):
            members = [remaining[j] for j in order[:k]]
            centre = complex(np.mean(z[members]))
            radius = CLUSTER_FACTOR * eps ** (1.0 / k) * max(1.0, abs(centre))
            if np.max(np.abs(z[members] - centre)) > radius:
                continue
            polished = _polish_on_derivative(monic, centre, k)
            if abs(polished - centre) <= radius:
                centre = polished
            if (np.max(np.abs(z[members] - centre)) <= 2 * radius
                    and _vanishes_to_order(monic, centre, k, tol)):
                group = members
                out[members] = centre
                logger.debug(f"Merged {k} approximations into a {k}-fold root at {centre:.6g}")
                break
        remaining = [i for i in remaining if i not in group]
    return out


def polynomial_roots(coeffs, tol: Optional[float] = None, max_iter: Optional[int] = None) -> RootSet:
    """All roots of the polynomial's actual degree plus the degree deficiency.

    Every returned root r satisfies |f(r)| <= tol * max|c| * max(1, |r|)^k,
    k being the actual degree.
    """
    tol = config.majorana.root_tol if tol is None else tol
    max_iter = config.majorana.max_iter if max_iter is None else max_iter

    c = np.asarray(coeffs, dtype=np.complex128)
    scale = float(np.max(np.abs(c))) if c.size else 0.0
    if scale == 0.0:
        raise PreconditionError("polynomial has no nonzero coefficient")

    nonzero = np.flatnonzero(np.abs(c) > ZERO_COEFF_TOL * scale)
    low, high = int(nonzero[0]), int(nonzero[-1])
    deficiency = c.size - 1 - high
    core = c[low:high + 1]

    roots = [np.zeros(low, dtype=np.complex128)]
    if core.size > 1:
        monic = core / core[-1]
        roots.append(_cluster_multiple_roots(_aberth(monic, max_iter), monic, tol))
    found = np.concatenate(roots)

    degree = high
    trimmed = c[:high + 1]
    magnitude = np.maximum(1.0, np.abs(found)) ** degree
    residual = np.abs(P.polyval(found, trimmed))
    if np.any(residual > tol * scale * magnitude):
        worst = float(np.max(residual / (scale * magnitude)))
        raise ConvergenceError(f"root residual {worst:.3e} above tolerance {tol:g}", best=found)

    return RootSet(roots=found, deficiency=deficiency)
