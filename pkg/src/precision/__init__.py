"""Finite-precision tolerance of the KCBS violation.

A violation Delta above the classical bound survives imprecise measurements
as long as the probability of a vertex answering differently in two
contexts stays below Delta/N (odd N) or Delta/(N+3) (even N). The simulator
below jitters every (vertex, context) copy of a projector independently,
measures each context sequentially and estimates that cross-context gap
from finite shots.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import config
from ..construction import MeasurementFamily, as_vector, build_measurements, is_normalized, normalize
from ..errors import DimensionMismatchError, PreconditionError
from ..graph_core import Context, Graph, build_family_graph, maximal_cliques
from ..verification import KCBS_CLASSICAL_BOUND

logger = logging.getLogger("qcw.precision")

Number = Union[float, Fraction]
Outcome = Tuple[int, ...]

# Probability mass a context may lose or gain before sampling is refused.
MASS_TOL = 1e-9


@dataclass(frozen=True)
class OncThreshold:
    n: int
    delta: Number
    epsilon_bound: Number

    @property
    def positive(self) -> bool:
        return self.epsilon_bound > 0

    def certifies(self, epsilon: Number) -> bool:
        """Strict: an imprecision equal to the bound no longer protects the violation."""
        return epsilon < self.epsilon_bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "delta": float(self.delta),
            "epsilon_bound": float(self.epsilon_bound),
            "parity": "odd" if self.n % 2 else "even",
        }


def onc_threshold(n: int, delta: Number) -> OncThreshold:
    """Delta/n for odd n, Delta/(n+3) for even n. Fractions stay exact."""
    if n < 5:
        raise PreconditionError(f"thresholds are defined for n >= 5, got {n}")
    if delta < 0:
        raise PreconditionError(f"delta must be non-negative, got {delta}")
    divisor = n if n % 2 else n + 3
    return OncThreshold(n=n, delta=delta, epsilon_bound=delta / divisor)


def onc_certified(n: int, delta: Number, epsilon: Number) -> bool:
    return onc_threshold(n, delta).certifies(epsilon)


@dataclass(frozen=True, eq=False)
class MeasurementMap:
    """A (possibly perturbed) copy of every vertex vector for each context it sits in."""
    n: int
    d: int
    eta: float
    seed: int
    contexts: Tuple[Context, ...]
    vectors: Dict[Tuple[int, int], np.ndarray]

    def vector(self, vertex: int, context_index: int) -> np.ndarray:
        try:
            return self.vectors[(vertex, context_index)]
        except KeyError:
            raise PreconditionError(f"vertex {vertex} is not in context {context_index}") from None

    def context_vectors(self, context_index: int) -> List[np.ndarray]:
        return [self.vector(v, context_index) for v in self.contexts[context_index]]

    def contexts_of(self, vertex: int) -> List[int]:
        return [k for k, c in enumerate(self.contexts) if vertex in c]


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def perturb_family(fam: MeasurementFamily, eta: float, seed: Optional[int] = None,
                   graph: Optional[Graph] = None) -> MeasurementMap:
    """Independent copies normalize(v_i + eta * g) per (vertex, context), g standard complex Gaussian.

    Context k draws from its own stream so the copies of one context do not
    depend on how many other contexts exist. eta = 0 copies the family exactly.
    """
    if eta < 0:
        raise PreconditionError(f"noise eta must be non-negative, got {eta}")
    seed = config.simulation.seed if seed is None else seed
    graph = build_family_graph(fam.n) if graph is None else graph
    if graph.n != fam.n:
        raise DimensionMismatchError(f"graph has {graph.n} vertices, family has {fam.n}")

    contexts = tuple(maximal_cliques(graph))
    vectors = {}
    for k, ctx in enumerate(contexts):
        rng = _stream(seed, 0, k)
        for vertex in ctx:
            v = fam.vector(vertex)
            if eta == 0:
                vectors[(vertex, k)] = v.copy()
                continue
            g = (rng.standard_normal(fam.d) + 1j * rng.standard_normal(fam.d)) / np.sqrt(2)
            vectors[(vertex, k)] = normalize(v + eta * g)

    logger.debug(f"Perturbed n={fam.n} family over {len(contexts)} contexts, eta={eta:g}, seed={seed}")
    return MeasurementMap(n=fam.n, d=fam.d, eta=float(eta), seed=seed, contexts=contexts, vectors=vectors)


def context_distribution(vectors: Sequence[np.ndarray], state: np.ndarray,
                         floor: Optional[float] = None) -> Dict[Outcome, float]:
    """Outcome probabilities of yes/no tests applied one after another.

    Each test is the Kraus pair |u><u|, I - |u><u| acting on the collapsed
    branch. Branches whose probability drops to ``floor`` or below are
    discarded; the all-zero outcome is the 'no click' event.
    """
    floor = config.simulation.probability_floor if floor is None else floor
    branches: List[Tuple[Outcome, np.ndarray]] = [((), as_vector(state))]

    for u in vectors:
        grown = []
        for outcome, psi in branches:
            yes = u * np.vdot(u, psi)
            no = psi - yes
            for bit, branch in ((0, no), (1, yes)):
                if np.vdot(branch, branch).real > floor:
                    grown.append((outcome + (bit,), branch))
        branches = grown

    probabilities = {outcome: float(np.vdot(psi, psi).real) for outcome, psi in branches}
    total = sum(probabilities.values())
    if abs(total - 1.0) > MASS_TOL:
        raise PreconditionError(f"context outcome probabilities sum to {total:.12f}, not 1")
    return {outcome: p / total for outcome, p in sorted(probabilities.items())}


@dataclass
class ContextHistogram:
    context: Context
    counts: Dict[Outcome, int]
    exact: Dict[Outcome, float]

    @property
    def shots(self) -> int:
        return sum(self.counts.values())

    @property
    def no_click(self) -> int:
        return self.counts.get((0,) * len(self.context), 0)

    @property
    def multi_click(self) -> int:
        return sum(c for outcome, c in self.counts.items() if sum(outcome) >= 2)

    def yes_frequency(self, vertex: int) -> float:
        pos = self.context.vertices.index(vertex)
        return sum(c for outcome, c in self.counts.items() if outcome[pos]) / self.shots

    def yes_probability(self, vertex: int) -> float:
        pos = self.context.vertices.index(vertex)
        return sum(p for outcome, p in self.exact.items() if outcome[pos])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "context": list(self.context.vertices),
            "counts": {"".join(map(str, o)): c for o, c in self.counts.items()},
            "no_click": self.no_click,
        }


def _max_gap(per_context: Iterable[float]) -> float:
    values = list(per_context)
    return max(values) - min(values) if values else 0.0


@dataclass
class SimulationResult:
    n: int
    eta: float
    seed: int
    shots: int
    histograms: List[ContextHistogram] = field(default_factory=list)
    empirical_beta: float = 0.0
    empirical_exclusivity_violation: float = 0.0
    epsilon_estimate: float = 0.0
    epsilon_exact_tv: float = 0.0
    yes_frequencies: Dict[int, List[float]] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "eta": self.eta,
            "seed": self.seed,
            "shots": self.shots,
            "empirical_beta": self.empirical_beta,
            "empirical_exclusivity_violation": self.empirical_exclusivity_violation,
            "epsilon_estimate_tv": self.epsilon_estimate,
            "epsilon_exact_tv": self.epsilon_exact_tv,
            "yes_frequencies": {str(v): f for v, f in self.yes_frequencies.items()},
            "contexts": [h.to_dict() for h in self.histograms],
        }


def simulate_contexts(measmap: MeasurementMap, state, shots: Optional[int] = None,
                      seed: Optional[int] = None) -> SimulationResult:
    """Sample every context ``shots`` times and aggregate per-vertex yes frequencies.

    The exact outcome distribution of each context is computed first and
    the shots are drawn from it in one multinomial call on the context's
    own stream.
    """
    shots = config.simulation.shots if shots is None else shots
    seed = config.simulation.seed if seed is None else seed
    if shots < 1:
        raise PreconditionError(f"shots must be >= 1, got {shots}")
    psi = as_vector(state)
    if psi.shape[0] != measmap.d:
        raise DimensionMismatchError(f"state has dimension {psi.shape[0]}, measurements {measmap.d}")
    if not is_normalized(psi):
        raise PreconditionError(f"state is not normalized (norm {np.linalg.norm(psi):.3e})")

    histograms = []
    for k, ctx in enumerate(measmap.contexts):
        exact = context_distribution(measmap.context_vectors(k), psi)
        outcomes = list(exact)
        drawn = _stream(seed, 1, k).multinomial(shots, [exact[o] for o in outcomes])
        histograms.append(ContextHistogram(ctx, dict(zip(outcomes, map(int, drawn))), exact))

    frequencies: Dict[int, List[float]] = {}
    exact_probabilities: Dict[int, List[float]] = {}
    for vertex in range(1, measmap.n + 1):
        indices = measmap.contexts_of(vertex)
        frequencies[vertex] = [histograms[k].yes_frequency(vertex) for k in indices]
        exact_probabilities[vertex] = [histograms[k].yes_probability(vertex) for k in indices]

    beta = sum(float(np.mean(f)) for f in frequencies.values() if f)
    violations = sum(h.multi_click for h in histograms)

    result = SimulationResult(
        n=measmap.n,
        eta=measmap.eta,
        seed=seed,
        shots=shots,
        histograms=histograms,
        empirical_beta=beta,
        empirical_exclusivity_violation=violations / (shots * len(histograms)),
        epsilon_estimate=max(_max_gap(f) for f in frequencies.values()),
        epsilon_exact_tv=max(_max_gap(p) for p in exact_probabilities.values()),
        yes_frequencies=frequencies,
    )
    logger.info(f"Simulated n={measmap.n} eta={measmap.eta:g} shots={shots}: "
                f"beta={result.empirical_beta:.6f}, eps={result.epsilon_estimate:.3e}")
    return result


SWEEP_FIELDS = ["n", "eta", "seed", "shots", "empirical_beta", "epsilon_estimate", "epsilon_bound"]


@dataclass
class SweepRow:
    n: int
    eta: float
    seed: int
    shots: int
    empirical_beta: float
    epsilon_estimate: float
    epsilon_bound: float

    def to_dict(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in SWEEP_FIELDS}


def sweep(ns: Sequence[int], etas: Sequence[float], seeds: Sequence[int],
          shots: Optional[int] = None) -> List[SweepRow]:
    """simulate_contexts over a grid; the bound uses the observed violation max(beta - 2, 0)."""
    shots = config.simulation.shots if shots is None else shots
    rows = []
    for n in ns:
        fam = build_measurements(n)
        graph = build_family_graph(n)
        for eta in etas:
            for seed in seeds:
                measmap = perturb_family(fam, eta, seed, graph)
                result = simulate_contexts(measmap, fam.state, shots, seed)
                delta = max(result.empirical_beta - KCBS_CLASSICAL_BOUND, 0.0)
                rows.append(SweepRow(
                    n=n,
                    eta=float(eta),
                    seed=seed,
                    shots=shots,
                    empirical_beta=result.empirical_beta,
                    epsilon_estimate=result.epsilon_estimate,
                    epsilon_bound=float(onc_threshold(n, delta).epsilon_bound),
                ))
    logger.info(f"Sweep produced {len(rows)} rows")
    return rows


__all__ = [
    'OncThreshold',
    'MeasurementMap',
    'ContextHistogram',
    'SimulationResult',
    'SweepRow',
    'SWEEP_FIELDS',
    'onc_threshold',
    'onc_certified',
    'perturb_family',
    'context_distribution',
    'simulate_contexts',
    'sweep',
]
