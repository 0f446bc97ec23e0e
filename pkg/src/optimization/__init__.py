"""State search for the largest KCBS value with the measurements held fixed.

beta(psi) = <psi|S|psi> with S = sum_i |v_i><v_i|, so the optimum over
states is the top eigenvalue of S. It is found by power iteration from
seeded random complex starts.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..config import config
from ..construction import MeasurementFamily, as_vector
from ..errors import DimensionMismatchError, PreconditionError

logger = logging.getLogger("qcw.optimization")

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense d x d Hermitian matrix."""
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"operator must be square, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=HERMITIAN_TOL):
            raise PreconditionError("operator is not Hermitian")
        object.__setattr__(self, "matrix", m)

    @property
    def d(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def rayleigh(self, v: np.ndarray) -> float:
        """<v|S|v> / <v|v>."""
        return float(np.vdot(v, self.matrix @ v).real / np.vdot(v, v).real)


@dataclass
class OptimumResult:
    lambda_max: float
    state: np.ndarray
    restarts_used: int
    converged: bool
    iterations: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda_max": self.lambda_max,
            "state": [[float(a.real), float(a.imag)] for a in self.state],
            "restarts_used": self.restarts_used,
            "converged": self.converged,
            "iterations": self.iterations,
        }


def projector_sum(fam: MeasurementFamily, vertices: Optional[Sequence[int]] = None) -> HermitianOperator:
    """S = sum of |v_i><v_i| over ``vertices`` (default: all)."""
    chosen = list(fam.vectors) if vertices is None else list(vertices)
    total = np.zeros((fam.d, fam.d), dtype=np.complex128)
    for i in chosen:
        total += fam.projector(i)
    return HermitianOperator(total)


def _phase_fixed(v: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest amplitude is real positive."""
    k = int(np.argmax(np.abs(v)))
    return v * np.exp(-1j * np.angle(v[k]))


def _power_iteration(op: HermitianOperator, rng: np.random.Generator, iters: int, tol: float):
    x = rng.standard_normal(op.d) + 1j * rng.standard_normal(op.d)
    x /= np.linalg.norm(x)
    lam = op.rayleigh(x)

    for it in range(1, iters + 1):
        y = op.apply(x)
        norm = np.linalg.norm(y)
        if norm == 0:
            # start fell in the kernel
            x = rng.standard_normal(op.d) + 1j * rng.standard_normal(op.d)
            x /= np.linalg.norm(x)
            continue
        x = y / norm
        lam_next = op.rayleigh(x)
        if abs(lam_next - lam) <= tol:
            return lam_next, x, True, it
        lam = lam_next

    return lam, x, False, iters


def max_violation_state(fam: MeasurementFamily,
                        restarts: Optional[int] = None,
                        iters: Optional[int] = None,
                        tol: Optional[float] = None,
                        seed: Optional[int] = None,
                        operator: Optional[HermitianOperator] = None) -> OptimumResult:
    """Top eigenpair of ``projector_sum(fam)`` by randomized-restart power iteration.

    Each restart draws its start from its own stream of ``seed``; the best
    Rayleigh quotient wins, ties going to the lowest restart index.
    """
    restarts = config.optimizer.restarts if restarts is None else restarts
    iters = config.optimizer.iters if iters is None else iters
    tol = config.optimizer.tol if tol is None else tol
    seed = config.simulation.seed if seed is None else seed
    if restarts < 1:
        raise PreconditionError(f"need at least one restart, got {restarts}")

    op = operator if operator is not None else projector_sum(fam)

    best = None
    total_iterations = 0
    for r in range(restarts):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(r,)))
        lam, x, converged, used = _power_iteration(op, rng, iters, tol)
        total_iterations += used
        logger.debug(f"Restart {r}: lambda={lam:.15f} converged={converged} after {used} iterations")
        if best is None or lam > best[0]:
            best = (lam, x, converged)

    lam, x, converged = best
    if not converged:
        logger.warning(f"Power iteration did not converge within {iters} iterations (best {lam:.12f})")

    state = as_vector(_phase_fixed(x / np.linalg.norm(x)))
    return OptimumResult(
        lambda_max=float(lam),
        state=state,
        restarts_used=restarts,
        converged=converged,
        iterations=total_iterations,
    )


__all__ = [
    'HermitianOperator',
    'OptimumResult',
    'projector_sum',
    'max_violation_state',
]
