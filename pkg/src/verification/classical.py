"""Deterministic non-contextual assignments on a compatibility graph."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..graph_core import EXHAUSTIVE_BOUND, Graph
from ..errors import SizeBoundError

logger = logging.getLogger("qcw.verification.classical")


@dataclass(frozen=True)
class Assignment:
    """Predetermined 0/1 outcome X_i for every vertex."""
    bits: Dict[int, int]

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Assignment":
        return cls({v: (mask >> v) & 1 for v in range(1, n + 1)})

    @property
    def ones(self) -> Tuple[int, ...]:
        return tuple(v for v, b in sorted(self.bits.items()) if b)

    @property
    def total(self) -> int:
        return sum(self.bits.values())

    def respects_exclusivity(self, g: Graph) -> bool:
        """No edge has both endpoints answering 'yes'."""
        return not any(self.bits.get(i) and self.bits.get(j) for i, j in g.edges)


@dataclass
class ClassicalAnalysis:
    """Outcome of the exhaustive enumeration."""
    alpha: int
    hardy_possible_with_x1: bool
    hardy_applicable: bool
    assignments_checked: int
    best_assignment: Assignment
    hardy_witness: Optional[Assignment] = None

    @property
    def hardy_p11(self) -> float:
        """Largest P(1|1) any deterministic model meeting the Hardy conditions can reach."""
        return 1.0 if self.hardy_possible_with_x1 else 0.0


def iter_assignment_masks(g: Graph) -> Iterator[int]:
    """Exclusivity-respecting assignments as bit masks (bit v is X_v).

    Vertices are decided in order 1..N, 0 before 1; a branch setting X_v = 1
    is pruned as soon as a neighbour already holds a 1.
    """
    if g.n > EXHAUSTIVE_BOUND:
        raise SizeBoundError(g.n, EXHAUSTIVE_BOUND)

    neighbour_masks = [0] * (g.n + 1)
    for i, j in g.edges:
        neighbour_masks[i] |= 1 << j
        neighbour_masks[j] |= 1 << i

    # the 1-branch goes on the stack first so the 0-branch is popped first
    stack: List[Tuple[int, int]] = [(1, 0)]
    while stack:
        vertex, mask = stack.pop()
        if vertex > g.n:
            yield mask
            continue
        if not neighbour_masks[vertex] & mask:
            stack.append((vertex + 1, mask | (1 << vertex)))
        stack.append((vertex + 1, mask))


def classical_analysis(g: Graph,
                       hardy_sets: Optional[Tuple[Sequence[int], Sequence[int]]] = None
                       ) -> ClassicalAnalysis:
    """Max sum of X_i over deterministic models, and whether X_1 = 1 survives the Hardy conditions.

    ``hardy_sets`` defaults to the graph's V_A / V_B; graphs without them
    (the pentagon unless its sets are passed) report the flag as not applicable.
    """
    if hardy_sets is None and g.has_partitions:
        hardy_sets = (g.part_a, g.part_b)
    set_a, set_b = hardy_sets if hardy_sets is not None else ((), ())
    applicable = bool(set_a) and bool(set_b)

    mask_a = sum(1 << v for v in set_a)
    mask_b = sum(1 << v for v in set_b)

    alpha, best_mask, witness_mask, checked = -1, 0, None, 0
    for mask in iter_assignment_masks(g):
        checked += 1
        total = mask.bit_count()
        if total > alpha:
            alpha, best_mask = total, mask
        if (applicable and witness_mask is None and mask & 2
                and mask & mask_a and mask & mask_b):
            witness_mask = mask

    logger.debug(f"Enumerated {checked} assignments on n={g.n}: alpha={alpha}")
    return ClassicalAnalysis(
        alpha=alpha,
        hardy_possible_with_x1=witness_mask is not None,
        hardy_applicable=applicable,
        assignments_checked=checked,
        best_assignment=Assignment.from_mask(g.n, best_mask),
        hardy_witness=None if witness_mask is None else Assignment.from_mask(g.n, witness_mask),
    )


def all_assignments(g: Graph) -> List[Assignment]:
    return [Assignment.from_mask(g.n, m) for m in iter_assignment_masks(g)]
