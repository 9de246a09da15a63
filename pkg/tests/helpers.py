"""Graph builders and hypothesis strategies shared by the test modules."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from specmix.graph import PartitionedGraph

TRIANGLE = "n 3\ng 1 2\ng 2 3\nh 1 3\n"
TWO_PATHS = "n 6\ng 1 2\ng 2 3\ng 4 5\ng 5 6\nh 1 3\nh 4 6\nh 3 4\n"
TWO_K2 = "n 4\ng 1 2\ng 3 4\nh 2 3\n"


@st.composite
def partitioned_graphs(draw, min_n: int = 1, max_n: int = 8) -> PartitionedGraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    labels = draw(st.lists(st.sampled_from("-gh"), min_size=len(pairs), max_size=len(pairs)))
    g = [p for p, c in zip(pairs, labels) if c == "g"]
    h = [p for p, c in zip(pairs, labels) if c == "h"]
    return PartitionedGraph.from_edges(n, g, h)


def int_sym_matrices(max_dim: int = 6, bound: int = 4):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_dim))
        entries = draw(st.lists(st.integers(-bound, bound), min_size=n * n, max_size=n * n))
        a = np.array(entries, dtype=np.int64).reshape(n, n)
        return np.triu(a) + np.triu(a, 1).T

    return build()


def random_graph(rng: np.random.Generator, n: int, p_edge: float = 0.5, p_saddle: float = 0.5):
    g, h = [], []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p_edge:
                (h if rng.random() < p_saddle else g).append((i, j))
    return PartitionedGraph.from_edges(n, g, h)


def graph_with_components(rng: np.random.Generator, sizes, p_extra: float = 0.3, p_h_within: float = 0.3,
                          p_h_between: float = 0.1) -> PartitionedGraph:
    """Diffusive part has exactly ``len(sizes)`` components of the given sizes.

    Each component is a random spanning tree plus extra diffusive edges; the
    remaining pairs become saddle edges at the given rates.
    """
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    n = int(offsets[-1])
    comp = np.repeat(np.arange(len(sizes)), sizes)
    g = set()
    for c, k in enumerate(sizes):
        verts = offsets[c] + rng.permutation(k)
        for t in range(1, k):
            u = int(verts[t])
            v = int(verts[rng.integers(t)])
            g.add((min(u, v), max(u, v)))
    h = []
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in g:
                continue
            same = comp[i] == comp[j]
            if same and rng.random() < p_extra:
                g.add((i, j))
            elif rng.random() < (p_h_within if same else p_h_between):
                h.append((i, j))
    return PartitionedGraph.from_edges(n, sorted(g), h)
