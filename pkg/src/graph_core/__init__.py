"""Compatibility graphs: the pentagon and the N > 5 family built on it.

Vertices are labelled 1..N. For N > 5 the graph carries the two partitions
V_A and V_B, each inducing a complete subgraph; for even N they share the
vertex N/2 + 1.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx

from ..errors import InputFormatError, PreconditionError, SizeBoundError

logger = logging.getLogger("qcw.graph_core")

Edge = Tuple[int, int]

# Exhaustive searches (independence number, assignment enumeration) refuse larger graphs.
EXHAUSTIVE_BOUND = 24

# Hardy conditions of the pentagon: P(0,0|2,3) = 0 and P(0,0|4,5) = 0.
PENTAGON_HARDY_SETS: Tuple[Tuple[int, ...], Tuple[int, ...]] = ((2, 3), (4, 5))


def _edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with optional V_A / V_B partition metadata."""
    n: int
    edges: FrozenSet[Edge]
    part_a: Tuple[int, ...] = ()
    part_b: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError(f"graph needs at least one vertex, got n={self.n}")

        normalized = set()
        for i, j in self.edges:
            if i == j:
                raise PreconditionError(f"self-loop on vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise PreconditionError(f"edge ({i}, {j}) outside 1..{self.n}")
            normalized.add(_edge(i, j))
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "part_a", tuple(self.part_a))
        object.__setattr__(self, "part_b", tuple(self.part_b))

        for name, part in (("part_a", self.part_a), ("part_b", self.part_b)):
            for i, j in itertools.combinations(part, 2):
                if _edge(i, j) not in self.edges:
                    raise PreconditionError(f"{name} is not a clique: ({i}, {j}) missing")

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def has_partitions(self) -> bool:
        return bool(self.part_a) and bool(self.part_b)

    @property
    def shared_vertices(self) -> Tuple[int, ...]:
        """Vertices that belong to both partitions (the even-N shared vertex)."""
        return tuple(sorted(set(self.part_a) & set(self.part_b)))

    def adjacent(self, i: int, j: int) -> bool:
        return _edge(i, j) in self.edges

    def neighbours(self, i: int) -> FrozenSet[int]:
        return frozenset(b if a == i else a for a, b in self.edges if i in (a, b))

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def non_edges(self) -> Iterator[Edge]:
        for i, j in itertools.combinations(self.vertices, 2):
            if (i, j) not in self.edges:
                yield (i, j)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.sorted_edges())
        return g

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "edges": [list(e) for e in self.sorted_edges()],
            "part_a": list(self.part_a),
            "part_b": list(self.part_b),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Graph":
        try:
            return cls(
                n=int(data["n"]),
                edges=frozenset((int(i), int(j)) for i, j in data["edges"]),
                part_a=tuple(int(v) for v in data.get("part_a", ())),
                part_b=tuple(int(v) for v in data.get("part_b", ())),
            )
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, PreconditionError):
                raise
            raise InputFormatError(f"malformed graph document: {e}") from e


@dataclass(frozen=True)
class Context:
    """A clique of the compatibility graph, i.e. a jointly measurable set."""
    vertices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vertex: int) -> bool:
        return vertex in self.vertices

    def label(self) -> str:
        return "{" + ",".join(str(v) for v in self.vertices) + "}"


def make_context(g: Graph, vertices: Iterable[int]) -> Context:
    """Build a context after checking it is a clique of ``g``."""
    ctx = Context(tuple(vertices))
    for i, j in itertools.combinations(ctx.vertices, 2):
        if not g.adjacent(i, j):
            raise PreconditionError(f"{ctx.label()} is not a clique: ({i}, {j}) missing")
    return ctx


def family_partitions(n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """V_A and V_B of the family graph on n > 5 vertices."""
    if n % 2:
        half = (n + 1) // 2
        return tuple(range(2, half + 1)), tuple(range(half + 1, n + 1))
    return tuple(range(2, n // 2 + 2)), tuple(range(n // 2 + 1, n + 1))


def build_family_graph(n: int) -> Graph:
    """Pentagon for n = 5, otherwise the N-vertex family graph."""
    if n < 5:
        raise PreconditionError(f"family graphs need n >= 5, got {n}")

    if n == 5:
        edges = frozenset(_edge(i, i % 5 + 1) for i in range(1, 6))
        return Graph(n=5, edges=edges)

    part_a, part_b = family_partitions(n)
    edges = {_edge(1, j) for j in range(3, n)}
    edges.add(_edge(2, n))
    edges.update(_edge(i, j) for i, j in itertools.combinations(part_a, 2))
    edges.update(_edge(i, j) for i, j in itertools.combinations(part_b, 2))

    logger.debug(f"Built family graph n={n} with {len(edges)} edges")
    return Graph(n=n, edges=frozenset(edges), part_a=part_a, part_b=part_b)


def _check_bound(g: Graph) -> None:
    if g.n > EXHAUSTIVE_BOUND:
        raise SizeBoundError(g.n, EXHAUSTIVE_BOUND)


def independence_number(g: Graph) -> int:
    """Exact α(G), as the maximum clique of the complement graph."""
    _check_bound(g)
    complement = nx.complement(g.to_networkx())
    _, size = nx.max_weight_clique(complement, weight=None)
    return int(size)


def clique_number(g: Graph) -> int:
    """Size of the largest clique; the smallest dimension an orthonormal representation can use."""
    _, size = nx.max_weight_clique(g.to_networkx(), weight=None)
    return int(size)


def maximal_cliques(g: Graph) -> List[Context]:
    """All maximal cliques, each sorted, in lexicographic order."""
    cliques = sorted(tuple(sorted(c)) for c in nx.find_cliques(g.to_networkx()))
    return [Context(c) for c in cliques]


def contexts_of(contexts: Sequence[Context], vertex: int) -> List[Context]:
    """The contexts in which ``vertex`` is measured."""
    return [c for c in contexts if vertex in c]


def hardy_sets_for(g: Graph) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """The two vertex sets required to answer 'yes' at least once."""
    if g.has_partitions:
        return g.part_a, g.part_b
    if g == build_family_graph(5):
        return PENTAGON_HARDY_SETS
    raise PreconditionError("graph carries no Hardy partitions")


__all__ = [
    'Graph',
    'Context',
    'Edge',
    'EXHAUSTIVE_BOUND',
    'PENTAGON_HARDY_SETS',
    'build_family_graph',
    'family_partitions',
    'independence_number',
    'clique_number',
    'maximal_cliques',
    'make_context',
    'contexts_of',
    'hardy_sets_for',
]
