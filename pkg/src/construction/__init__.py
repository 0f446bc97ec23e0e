"""Measurement vectors and state realizing the Hardy-like paradox for N >= 6.

The family lives in dimension d = N - 2 with the computational basis
|0>, ..., |N-3>. V_B vectors are the images of V_A vectors under the flip
operator X = sum_i |i><N-3-i|, which leaves the state invariant.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, NamedTuple, Sequence

import numpy as np

from ..errors import DimensionMismatchError, InputFormatError, PreconditionError
from ..graph_core import family_partitions
from .simplex import CoefficientMatrix, simplex_rows

logger = logging.getLogger("qcw.construction")

# Unit-norm check applied to every vector entering a family.
NORM_TOL = 1e-9


def as_vector(components: Iterable[complex]) -> np.ndarray:
    """Copy amplitudes into a finite complex128 vector."""
    if not isinstance(components, np.ndarray):
        components = list(components)
    v = np.array(components, dtype=np.complex128)
    if v.ndim != 1:
        raise DimensionMismatchError(f"expected a 1-d amplitude list, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise PreconditionError("amplitudes must be finite")
    return v


def normalize(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v)
    if norm == 0:
        raise PreconditionError("cannot normalize the zero vector")
    return v / norm


def is_normalized(v: np.ndarray, tol: float = NORM_TOL) -> bool:
    return abs(np.linalg.norm(v) - 1.0) <= tol


def basis_vector(d: int, k: int) -> np.ndarray:
    e = np.zeros(d, dtype=np.complex128)
    e[k] = 1.0
    return e


def _amplitudes_to_json(v: np.ndarray) -> List[List[float]]:
    return [[float(a.real), float(a.imag)] for a in v]


def _amplitudes_from_json(data: Any, d: int) -> np.ndarray:
    try:
        v = as_vector(complex(float(re), float(im)) for re, im in data)
    except (TypeError, ValueError) as e:
        raise InputFormatError(f"amplitudes must be [re, im] pairs: {e}") from e
    if v.shape[0] != d:
        raise InputFormatError(f"expected {d} amplitudes, got {v.shape[0]}")
    return v


@dataclass(frozen=True, eq=False)
class MeasurementFamily:
    """One unit vector per vertex plus the measured state, all in dimension d."""
    n: int
    d: int
    vectors: Dict[int, np.ndarray]
    state: np.ndarray

    def __post_init__(self):
        vectors = {int(i): as_vector(v) for i, v in sorted(self.vectors.items())}
        state = as_vector(self.state)
        if sorted(vectors) != list(range(1, self.n + 1)):
            raise PreconditionError(f"family must hold one vector per vertex 1..{self.n}")
        for i, v in vectors.items():
            if v.shape[0] != self.d:
                raise DimensionMismatchError(f"vector {i} has dimension {v.shape[0]}, expected {self.d}")
            if not is_normalized(v):
                raise PreconditionError(f"vector {i} is not normalized (norm {np.linalg.norm(v):.3e})")
        if state.shape[0] != self.d:
            raise DimensionMismatchError(f"state has dimension {state.shape[0]}, expected {self.d}")
        if not is_normalized(state):
            raise PreconditionError(f"state is not normalized (norm {np.linalg.norm(state):.3e})")
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "state", state)

    def vector(self, vertex: int) -> np.ndarray:
        try:
            return self.vectors[vertex]
        except KeyError:
            raise PreconditionError(f"unknown vertex {vertex}") from None

    def matrix(self, vertices: Sequence[int]) -> np.ndarray:
        """d x k matrix whose columns are the vectors of ``vertices``."""
        return np.column_stack([self.vector(i) for i in vertices])

    def overlap(self, vertex: int) -> complex:
        """<v_i|psi>."""
        return complex(np.vdot(self.vector(vertex), self.state))

    def projector(self, vertex: int) -> np.ndarray:
        v = self.vector(vertex)
        return np.outer(v, v.conj())

    def with_vector(self, vertex: int, v: np.ndarray) -> "MeasurementFamily":
        if vertex not in self.vectors:
            raise PreconditionError(f"unknown vertex {vertex}")
        vectors = dict(self.vectors)
        vectors[vertex] = as_vector(v)
        return MeasurementFamily(self.n, self.d, vectors, self.state)

    def with_state(self, state: np.ndarray) -> "MeasurementFamily":
        return MeasurementFamily(self.n, self.d, self.vectors, state)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "state": _amplitudes_to_json(self.state),
            "vectors": {str(i): _amplitudes_to_json(v) for i, v in self.vectors.items()},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MeasurementFamily":
        try:
            n, d = int(data["n"]), int(data["d"])
            vectors = {int(k): _amplitudes_from_json(v, d) for k, v in data["vectors"].items()}
            state = _amplitudes_from_json(data["state"], d)
        except (KeyError, TypeError, AttributeError, ValueError) as e:
            if isinstance(e, PreconditionError):
                raise
            raise InputFormatError(f"malformed family document: {e}") from e
        return cls(n=n, d=d, vectors=vectors, state=state)


class FlipOperator:
    """X = sum_i |i><d-1-i|, the amplitude-reversing involution."""

    def __init__(self, d: int):
        if d < 1:
            raise PreconditionError(f"flip operator needs d >= 1, got {d}")
        self.d = d

    def __call__(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.shape != (self.d,):
            raise DimensionMismatchError(f"flip operator acts on dimension {self.d}, got shape {v.shape}")
        return v[::-1].copy()

    @property
    def matrix(self) -> np.ndarray:
        return np.fliplr(np.eye(self.d, dtype=np.complex128))


def flip_operator(d: int) -> FlipOperator:
    return FlipOperator(d)


def flip_partner(n: int, vertex: int) -> int:
    """V_B vertex holding the X-image of a V_A vertex (2 <-> N, the even shared vertex is fixed)."""
    part_a, _ = family_partitions(n)
    if vertex not in part_a:
        raise PreconditionError(f"vertex {vertex} is not in V_A for n={n}")
    return n + 2 - vertex


def _odd_family(n: int, d: int) -> Dict[int, np.ndarray]:
    last = n - 3
    mid = (n - 3) // 2
    e = lambda k: basis_vector(d, k)  # noqa: E731

    vectors = {
        1: (e(0) - e(mid) + e(last)) / np.sqrt(3),
        2: e(0),
    }
    coefficients = simplex_rows((n - 3) // 2, -2.0)
    for vertex, row in zip(range(3, (n + 1) // 2 + 1), coefficients.rows):
        template = e(mid) + e(last)
        template[mid + 1:mid + 1 + row.size] = row
        vectors[vertex] = normalize(template)
    return vectors


def _even_family(n: int, d: int) -> Dict[int, np.ndarray]:
    last = n - 3
    low = n // 2 - 2
    e = lambda k: basis_vector(d, k)  # noqa: E731
    sqrt2 = np.sqrt(2)

    vectors = {
        1: (sqrt2 * e(0) - e(low) - e(low + 1) + sqrt2 * e(last)) / np.sqrt(6),
        2: e(0),
        n // 2 + 1: (-e(low) + e(low + 1)) / sqrt2,
    }
    # n = 6 has a single template and no coefficients: |1> + |2> + sqrt2|3>.
    coefficients = simplex_rows(n // 2 - 2, -4.0)
    for vertex, row in zip(range(3, n // 2 + 1), coefficients.rows):
        template = e(low) + e(low + 1) + sqrt2 * e(last)
        template[n // 2:n // 2 + row.size] = row
        vectors[vertex] = normalize(template)
    return vectors


def family_state(n: int) -> np.ndarray:
    """The state |psi> measured in the N-vertex construction."""
    d = n - 2
    last = n - 3
    if n % 2:
        mid = (n - 3) // 2
        return (basis_vector(d, 0) + basis_vector(d, mid) + basis_vector(d, last)) / np.sqrt(3)
    low = n // 2 - 2
    sqrt2 = np.sqrt(2)
    return (sqrt2 * basis_vector(d, 0) + basis_vector(d, low) + basis_vector(d, low + 1)
            + sqrt2 * basis_vector(d, last)) / np.sqrt(6)


def build_measurements(n: int) -> MeasurementFamily:
    """All N normalized measurement vectors and the state, in dimension N - 2."""
    if n < 6:
        raise PreconditionError(f"the construction needs n >= 6, got {n}")

    d = n - 2
    vectors = _odd_family(n, d) if n % 2 else _even_family(n, d)

    flip = flip_operator(d)
    part_a, _ = family_partitions(n)
    for vertex in part_a:
        partner = flip_partner(n, vertex)
        if partner != vertex:
            vectors[partner] = flip(vectors[vertex])

    logger.debug(f"Built measurement family n={n}, d={d}")
    return MeasurementFamily(n=n, d=d, vectors=vectors, state=family_state(n))


class Decomposition(NamedTuple):
    coefficients: np.ndarray
    residual: float


def decompose_state(state: np.ndarray, family: MeasurementFamily,
                    subset: Sequence[int]) -> Decomposition:
    """Least-squares expansion of ``state`` over the vectors of ``subset``."""
    subset = list(subset)
    if not subset:
        raise PreconditionError("cannot decompose over an empty subset")
    state = as_vector(state)
    if state.shape[0] != family.d:
        raise DimensionMismatchError(f"state has dimension {state.shape[0]}, family has {family.d}")

    basis = family.matrix(subset)
    coefficients, *_ = np.linalg.lstsq(basis, state, rcond=None)
    residual = float(np.linalg.norm(state - basis @ coefficients))
    return Decomposition(coefficients=coefficients, residual=residual)


__all__ = [
    'MeasurementFamily',
    'CoefficientMatrix',
    'Decomposition',
    'FlipOperator',
    'NORM_TOL',
    'as_vector',
    'normalize',
    'is_normalized',
    'basis_vector',
    'simplex_rows',
    'build_measurements',
    'family_state',
    'flip_operator',
    'flip_partner',
    'decompose_state',
]
