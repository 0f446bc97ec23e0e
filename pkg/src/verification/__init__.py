"""Machine checks of the Hardy-like paradox and the extended KCBS inequality.

The quantum side audits a measurement family against its graph: edge
orthogonality, the two Hardy span conditions, P(1|1) and beta. The classical
side enumerates deterministic assignments.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..construction import MeasurementFamily, decompose_state
from ..errors import DimensionMismatchError
from ..graph_core import (
    Edge, Graph, clique_number, hardy_sets_for, independence_number,
)
from .classical import (
    Assignment, ClassicalAnalysis, all_assignments, classical_analysis, iter_assignment_masks,
)

logger = logging.getLogger("qcw.verification")

KCBS_CLASSICAL_BOUND = 2
HARDY_P11 = 1.0 / 9.0
HARDY_REDUCED_BOUND = 2.0 + 1.0 / 9.0
PENTAGON_LOVASZ = float(np.sqrt(5.0))


@dataclass
class OrthogonalityAudit:
    """Edge overlaps |<v_i|v_j>| of a family against its graph."""
    passed: bool
    worst_edge_overlap: float
    worst_edge: Optional[Edge]
    min_nonedge_overlap: Optional[float]
    offenders: List[Tuple[Edge, float]] = field(default_factory=list)


@dataclass
class HardyReport:
    """Quantum side of the paradox."""
    conditions_ok: bool
    residual_a: float
    residual_b: float
    p11: float
    coefficients_a: np.ndarray
    coefficients_b: np.ndarray

    @property
    def p_all_zero_a(self) -> float:
        """P(0...0 | V_A): squared distance of psi from the span of V_A."""
        return self.residual_a ** 2

    @property
    def p_all_zero_b(self) -> float:
        return self.residual_b ** 2


@dataclass
class CheckResult:
    """One named pass/fail line of a report."""
    name: str
    passed: Optional[bool]
    value: Any = None
    detail: str = ""

    @property
    def status(self) -> str:
        if self.passed is None:
            return "N/A"
        return "PASS" if self.passed else "FAIL"


@dataclass
class VerificationReport:
    n: int
    d: int
    tol: float
    exclusivity_ok: bool
    worst_overlap: float
    worst_edge: Optional[Edge]
    min_nonedge_overlap: Optional[float]
    offenders: List[Tuple[Edge, float]]
    hardy_conditions_ok: bool
    residual_a: float
    residual_b: float
    p11: float
    beta: float
    partition_sum_a: float
    partition_sum_b: float
    classical_alpha: int
    classical_hardy_possible: bool
    classical_hardy_p11: float
    independence_number: int
    clique_number: int

    @property
    def dimension_gap(self) -> int:
        """d minus the largest clique, the lower bound on the dimension."""
        return self.d - self.clique_number

    def checks(self) -> List[CheckResult]:
        return [
            CheckResult("orthogonality", self.exclusivity_ok, self.worst_overlap,
                        f"worst edge {self.worst_edge}"),
            CheckResult("hardy_spans", self.hardy_conditions_ok,
                        max(self.residual_a, self.residual_b), "residual over V_A / V_B"),
            CheckResult("p11_positive", self.p11 > self.tol, self.p11, "quantum P(1|1)"),
            CheckResult("classical_p11_zero", not self.classical_hardy_possible,
                        self.classical_hardy_p11, "max P(1|1) over deterministic models"),
            CheckResult("kcbs_violation", self.beta > self.classical_alpha + self.tol, self.beta,
                        f"classical bound {self.classical_alpha}"),
            CheckResult("alpha_oracle", self.classical_alpha == self.independence_number,
                        self.classical_alpha, f"independence number {self.independence_number}"),
        ]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks() if c.passed is not None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "tol": self.tol,
            "passed": self.passed,
            "exclusivity_ok": self.exclusivity_ok,
            "worst_overlap": self.worst_overlap,
            "worst_edge": None if self.worst_edge is None else list(self.worst_edge),
            "min_nonedge_overlap": self.min_nonedge_overlap,
            "offenders": [{"edge": list(e), "overlap": o} for e, o in self.offenders],
            "hardy_conditions_ok": self.hardy_conditions_ok,
            "residual_a": self.residual_a,
            "residual_b": self.residual_b,
            "p11": self.p11,
            "beta": self.beta,
            "partition_sum_a": self.partition_sum_a,
            "partition_sum_b": self.partition_sum_b,
            "classical_alpha": self.classical_alpha,
            "classical_hardy_possible": self.classical_hardy_possible,
            "classical_hardy_p11": self.classical_hardy_p11,
            "independence_number": self.independence_number,
            "clique_number": self.clique_number,
            "dimension_gap": self.dimension_gap,
            "checks": [{"name": c.name, "status": c.status} for c in self.checks()],
        }


def _check_sizes(g: Graph, fam: MeasurementFamily) -> None:
    if fam.n != g.n:
        raise DimensionMismatchError(f"family has {fam.n} vectors, graph has {g.n} vertices")


def audit_orthogonality(g: Graph, fam: MeasurementFamily, tol: float) -> OrthogonalityAudit:
    """Passes iff every edge's vectors overlap by at most ``tol``."""
    _check_sizes(g, fam)

    def overlap(i: int, j: int) -> float:
        return float(abs(np.vdot(fam.vector(i), fam.vector(j))))

    edge_overlaps = [(e, overlap(*e)) for e in g.sorted_edges()]
    worst_edge, worst = None, 0.0
    for e, o in edge_overlaps:
        if o > worst or worst_edge is None:
            worst_edge, worst = e, o

    nonedge_overlaps = [overlap(i, j) for i, j in g.non_edges()]
    offenders = sorted(((e, o) for e, o in edge_overlaps if o > tol), key=lambda x: (-x[1], x[0]))

    if offenders:
        logger.warning(f"{len(offenders)} edge(s) above tolerance {tol:g}, worst {worst_edge}: {worst:.3e}")

    return OrthogonalityAudit(
        passed=not offenders,
        worst_edge_overlap=worst,
        worst_edge=worst_edge,
        min_nonedge_overlap=min(nonedge_overlaps) if nonedge_overlaps else None,
        offenders=offenders,
    )


def hardy_quantum_report(g: Graph, fam: MeasurementFamily, tol: float,
                         hardy_sets: Optional[Tuple[Sequence[int], Sequence[int]]] = None
                         ) -> HardyReport:
    """Span conditions over V_A and V_B, and P(1|1) = |<v_1|psi>|^2."""
    _check_sizes(g, fam)
    set_a, set_b = hardy_sets if hardy_sets is not None else hardy_sets_for(g)

    dec_a = decompose_state(fam.state, fam, set_a)
    dec_b = decompose_state(fam.state, fam, set_b)
    p11 = abs(fam.overlap(1)) ** 2

    logger.debug(f"Hardy residuals n={fam.n}: A={dec_a.residual:.3e}, B={dec_b.residual:.3e}, P(1|1)={p11:.12f}")
    return HardyReport(
        conditions_ok=dec_a.residual <= tol and dec_b.residual <= tol,
        residual_a=dec_a.residual,
        residual_b=dec_b.residual,
        p11=float(p11),
        coefficients_a=dec_a.coefficients,
        coefficients_b=dec_b.coefficients,
    )


def vertex_contributions(fam: MeasurementFamily) -> Dict[int, float]:
    return {i: float(abs(fam.overlap(i)) ** 2) for i in fam.vectors}


def kcbs_value(fam: MeasurementFamily) -> float:
    """beta = sum_i |<v_i|psi>|^2."""
    return float(sum(vertex_contributions(fam).values()))


def partition_sum(fam: MeasurementFamily, vertices: Sequence[int]) -> float:
    return float(sum(abs(fam.overlap(i)) ** 2 for i in vertices))


def verify_family(g: Graph, fam: MeasurementFamily, tol: float) -> VerificationReport:
    """Run every quantum and classical check and collect them in one report."""
    audit = audit_orthogonality(g, fam, tol)
    set_a, set_b = hardy_sets_for(g)
    hardy = hardy_quantum_report(g, fam, tol, (set_a, set_b))
    classical = classical_analysis(g, (set_a, set_b))

    report = VerificationReport(
        n=fam.n,
        d=fam.d,
        tol=tol,
        exclusivity_ok=audit.passed,
        worst_overlap=audit.worst_edge_overlap,
        worst_edge=audit.worst_edge,
        min_nonedge_overlap=audit.min_nonedge_overlap,
        offenders=audit.offenders,
        hardy_conditions_ok=hardy.conditions_ok,
        residual_a=hardy.residual_a,
        residual_b=hardy.residual_b,
        p11=hardy.p11,
        beta=kcbs_value(fam),
        partition_sum_a=partition_sum(fam, set_a),
        partition_sum_b=partition_sum(fam, set_b),
        classical_alpha=classical.alpha,
        classical_hardy_possible=classical.hardy_possible_with_x1,
        classical_hardy_p11=classical.hardy_p11,
        independence_number=independence_number(g),
        clique_number=clique_number(g),
    )
    logger.info(f"Verified n={fam.n}: passed={report.passed}, P(1|1)={report.p11:.12f}, beta={report.beta:.12f}")
    return report


__all__ = [
    'Assignment',
    'ClassicalAnalysis',
    'CheckResult',
    'HardyReport',
    'OrthogonalityAudit',
    'VerificationReport',
    'KCBS_CLASSICAL_BOUND',
    'HARDY_P11',
    'HARDY_REDUCED_BOUND',
    'PENTAGON_LOVASZ',
    'audit_orthogonality',
    'hardy_quantum_report',
    'kcbs_value',
    'vertex_contributions',
    'partition_sum',
    'classical_analysis',
    'all_assignments',
    'iter_assignment_masks',
    'verify_family',
]
