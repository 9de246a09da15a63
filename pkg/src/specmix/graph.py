"""Edge-partitioned simple graphs.

Every edge of a simple graph on ``n`` vertices carries one of two labels:
*diffusive* (the Laplacian class, written ``g`` in files) or *saddle* (the
adjacency class, written ``h``).  Vertices are 0-based in memory and 1-based
in the text format; conversion happens only in :func:`parse_graph` and
:meth:`PartitionedGraph.to_text`.

Text format::

    # comment
    n 3
    g 1 2
    g 2 3
    h 1 3
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from .errors import DuplicateEdge, ParseError, SelfLoop, VertexOutOfRange


class EdgeClass(str, Enum):
    DIFFUSIVE = "g"
    SADDLE = "h"


Edge = tuple[int, int]


def _canonical(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class PartitionedGraph:
    """Simple graph with edges split into diffusive (G) and saddle (H) sets.

    Use :meth:`from_edges` or :func:`parse_graph` rather than the raw
    constructor; both validate the input.
    """

    n: int
    g_edges: tuple[Edge, ...]
    h_edges: tuple[Edge, ...]

    @classmethod
    def from_edges(
        cls, n: int, g_edges: Iterable[Edge] = (), h_edges: Iterable[Edge] = ()
    ) -> "PartitionedGraph":
        """Build and validate a graph from 0-based edge lists."""
        if n < 1:
            raise ParseError(None, f"vertex count must be positive, got {n}")
        seen: set[Edge] = set()
        out: dict[EdgeClass, list[Edge]] = {EdgeClass.DIFFUSIVE: [], EdgeClass.SADDLE: []}
        for cls_, edges in ((EdgeClass.DIFFUSIVE, g_edges), (EdgeClass.SADDLE, h_edges)):
            for i, j in edges:
                i, j = int(i), int(j)
                _check_edge(i, j, n, seen, line=None)
                e = _canonical(i, j)
                seen.add(e)
                out[cls_].append(e)
        return cls(n, tuple(sorted(out[EdgeClass.DIFFUSIVE])), tuple(sorted(out[EdgeClass.SADDLE])))

    @property
    def num_g(self) -> int:
        return len(self.g_edges)

    @property
    def num_h(self) -> int:
        return len(self.h_edges)

    def edges(self) -> list[tuple[int, int, EdgeClass]]:
        """All edges as ``(i, j, class)`` triples, sorted by vertex pair."""
        tagged = [(i, j, EdgeClass.DIFFUSIVE) for i, j in self.g_edges]
        tagged += [(i, j, EdgeClass.SADDLE) for i, j in self.h_edges]
        return sorted(tagged)

    def degrees(self, edge_class: EdgeClass) -> np.ndarray:
        edges = self.g_edges if edge_class is EdgeClass.DIFFUSIVE else self.h_edges
        deg = np.zeros(self.n, dtype=np.int64)
        for i, j in edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def relabel(self, perm) -> "PartitionedGraph":
        """Image of the graph under the vertex map ``v -> perm[v]`` (0-based)."""
        perm = [int(p) for p in perm]
        return PartitionedGraph.from_edges(
            self.n,
            [(perm[i], perm[j]) for i, j in self.g_edges],
            [(perm[i], perm[j]) for i, j in self.h_edges],
        )

    def to_text(self) -> str:
        lines = [f"n {self.n}"]
        lines += [f"{c.value} {i + 1} {j + 1}" for i, j, c in self.edges()]
        return "\n".join(lines) + "\n"


def _check_edge(i: int, j: int, n: int, seen: set, line) -> None:
    for v in (i, j):
        if not 0 <= v < n:
            raise VertexOutOfRange(line, f"vertex {v + 1} outside 1..{n}")
    if i == j:
        raise SelfLoop(line, f"self-loop at vertex {i + 1}")
    if _canonical(i, j) in seen:
        raise DuplicateEdge(line, f"duplicate vertex pair {{{i + 1}, {j + 1}}}")


def parse_graph(text: str) -> PartitionedGraph:
    """Parse the line-oriented edge-list format (1-based vertices)."""
    n = None
    seen: set[Edge] = set()
    g_edges: list[Edge] = []
    h_edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        tag = fields[0].lower()
        if n is None:
            if tag != "n" or len(fields) != 2:
                raise ParseError(lineno, "first non-comment line must be 'n <int>'")
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(lineno, f"bad vertex count {fields[1]!r}") from None
            if n < 1:
                raise ParseError(lineno, f"vertex count must be positive, got {n}")
            continue
        if tag == "n":
            raise ParseError(lineno, "vertex count given more than once")
        if tag not in ("g", "h"):
            raise ParseError(lineno, f"unknown record type {fields[0]!r}")
        if len(fields) != 3:
            raise ParseError(lineno, "edge records need exactly two vertices")
        try:
            i, j = int(fields[1]) - 1, int(fields[2]) - 1
        except ValueError:
            raise ParseError(lineno, "vertex indices must be integers") from None
        _check_edge(i, j, n, seen, lineno)
        e = _canonical(i, j)
        seen.add(e)
        (g_edges if tag == "g" else h_edges).append(e)
    if n is None:
        raise ParseError(0, "missing 'n <int>' header")
    return PartitionedGraph(n, tuple(sorted(g_edges)), tuple(sorted(h_edges)))


@dataclass(frozen=True)
class ComponentDecomposition:
    """Connected components of the diffusive subgraph.

    Components are numbered 0..r-1 in order of their smallest vertex.
    """

    r: int
    component_of: tuple[int, ...]
    sizes: tuple[int, ...]

    def members(self, index: int) -> list[int]:
        return [v for v, c in enumerate(self.component_of) if c == index]

    def indicator(self, index: int) -> np.ndarray:
        return (np.asarray(self.component_of) == index).astype(np.int64)


def connected_components(g: PartitionedGraph) -> ComponentDecomposition:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for i, j in g.g_edges:
        adj[i].append(j)
        adj[j].append(i)
    comp = [-1] * g.n
    sizes = []
    for start in range(g.n):
        if comp[start] >= 0:
            continue
        label = len(sizes)
        comp[start] = label
        queue = deque([start])
        size = 0
        while queue:
            v = queue.popleft()
            size += 1
            for w in adj[v]:
                if comp[w] < 0:
                    comp[w] = label
                    queue.append(w)
        sizes.append(size)
    return ComponentDecomposition(len(sizes), tuple(comp), tuple(sizes))


@dataclass(frozen=True)
class HEdgeCounts:
    """Saddle edges inside each component and between pairs of components."""

    within: tuple[int, ...]
    between: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.within)

    def total(self) -> int:
        r = self.r
        return sum(self.within) + sum(self.between[i][j] for i in range(r) for j in range(i + 1, r))


def h_edge_counts(g: PartitionedGraph, comp: ComponentDecomposition) -> HEdgeCounts:
    within = [0] * comp.r
    between = [[0] * comp.r for _ in range(comp.r)]
    for i, j in g.h_edges:
        a, b = comp.component_of[i], comp.component_of[j]
        if a == b:
            within[a] += 1
        else:
            between[a][b] += 1
            between[b][a] += 1
    return HEdgeCounts(tuple(within), tuple(tuple(row) for row in between))


def is_complete_component(comp_index: int, g: PartitionedGraph, comp: ComponentDecomposition) -> bool:
    """True iff the diffusive edges of the component form a complete graph."""
    k = comp.sizes[comp_index]
    inside = sum(1 for i, _ in g.g_edges if comp.component_of[i] == comp_index)
    return inside == k * (k - 1) // 2
