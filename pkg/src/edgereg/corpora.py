"""Named graphs, exhaustive labeled enumerations, and seeded samplers.

Corpora for the verification harness are built here (or read from graph6
files); nothing fancy like canonical augmentation, just labeled
enumeration at small n and seeded random sampling.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional

from .graphs import Graph, make_graph, parse_graph6
from .ideals import MonomialIdeal, minimalize
from .complexes import SimplicialComplex, make_complex


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return make_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(m: int, n: int) -> Graph:
    return make_graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def g0_jump_graph() -> Graph:
    """The bipartite graph with reg(I^2) = reg(I) + 1.

    Vertices 0..3 are the x side, 4..7 the y side; edges x_i y_j for
    (i, j) in {11, 22, 33, 44, 12, 24, 31, 43} (1-based).
    """
    pairs = [(1, 1), (2, 2), (3, 3), (4, 4), (1, 2), (2, 4), (3, 1), (4, 3)]
    return make_graph(8, [(i - 1, 3 + j) for i, j in pairs])


def labeled_graphs(n: int, min_edges: int = 0) -> Iterator[Graph]:
    """Every labeled graph on exactly n vertices, by edge-set bitmask order."""
    pairs = list(itertools.combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        if code.bit_count() < min_edges:
            continue
        yield make_graph(n, [pairs[i] for i in range(len(pairs)) if code >> i & 1])


def labeled_graphs_upto(n: int, min_edges: int = 0) -> Iterator[Graph]:
    for k in range(1, n + 1):
        yield from labeled_graphs(k, min_edges)


def random_graph(n: int, rng: random.Random, p: float = 0.5,
                 require_edges: bool = True) -> Graph:
    while True:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < p]
        if edges or not require_edges:
            return make_graph(n, edges)


def random_bipartite_graph(n: int, rng: random.Random, p: float = 0.5,
                           require_edges: bool = True) -> Graph:
    while True:
        left = rng.randint(1, n - 1)
        edges = [(u, v) for u in range(left) for v in range(left, n)
                 if rng.random() < p]
        if edges or not require_edges:
            return make_graph(n, edges)


def random_monomial_ideal(rng: random.Random, max_vars: int = 6,
                          max_exp: int = 2, max_gens: int = 6,
                          require_nonlinear: bool = True) -> MonomialIdeal:
    """A random nonzero ideal inside the oracle's size gate."""
    while True:
        nv = rng.randint(2, max_vars)
        gens = []
        for _ in range(rng.randint(1, max_gens)):
            m = tuple(rng.randint(0, max_exp) for _ in range(nv))
            if sum(m) >= 1:
                gens.append(m)
        if not gens:
            continue
        ideal = minimalize(gens, nv)
        if ideal.is_zero():
            continue
        if require_nonlinear and all(sum(g) == 1 for g in ideal.gens):
            continue
        return ideal


def random_complex(rng: random.Random, nverts: int,
                   max_nonfaces: Optional[int] = None) -> SimplicialComplex:
    """A random complex via random minimal non-faces of size 2..4."""
    count = rng.randint(1, max_nonfaces or max(2, nverts))
    nonfaces = []
    for _ in range(count):
        size = rng.randint(2, min(4, nverts)) if nverts >= 2 else 1
        nonfaces.append(sum(1 << v for v in rng.sample(range(nverts), size)))
    return make_complex(nverts, nonfaces)


def read_graph6_corpus(text: str) -> list[Graph]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(parse_graph6(line))
    return out
