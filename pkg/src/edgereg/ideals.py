"""Monomials, monomial ideals, and the edge-ideal constructions.

A monomial is a dense tuple of nonnegative exponents; a monomial ideal
stores its minimal generating set (a divisibility antichain) in a fixed
canonical order (total degree, then exponent tuple), which makes every
derived object reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InternalConsistencyError, ParseError, PreconditionError
from .graphs import Graph, bits, make_graph, is_bipartite

Monomial = tuple[int, ...]

EXP_CAP = 255


def mono_deg(m: Monomial) -> int:
    return sum(m)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / gcd(a, b), the colon quotient."""
    return tuple(x - min(x, y) for x, y in zip(a, b))


def mono_support(m: Monomial) -> int:
    mask = 0
    for i, e in enumerate(m):
        if e:
            mask |= 1 << i
    return mask


def mono_is_squarefree(m: Monomial) -> bool:
    return all(e <= 1 for e in m)


_INV = bytes(255 - i for i in range(256))


def _gen_key(m: Monomial):
    # degree, then lexicographic (x0 > x1 > ...): highest first within a degree
    return (sum(m), bytes(m).translate(_INV))


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal generating set of a monomial ideal; empty gens = zero ideal."""

    nvars: int
    gens: tuple[Monomial, ...]
    var_names: Optional[tuple[str, ...]] = None

    def is_zero(self) -> bool:
        return not self.gens

    def is_squarefree(self) -> bool:
        return all(mono_is_squarefree(g) for g in self.gens)

    def max_degree(self) -> int:
        return max((mono_deg(g) for g in self.gens), default=0)

    def contains(self, m: Monomial) -> bool:
        return any(mono_divides(g, m) for g in self.gens)

    def name(self, i: int) -> str:
        return self.var_names[i] if self.var_names else f"x{i}"


def minimalize(gens: Iterable[Monomial], nvars: int,
               var_names: Optional[tuple[str, ...]] = None) -> MonomialIdeal:
    """Divisibility-minimal antichain in canonical (degree, lex) order."""
    pool = sorted(set(gens), key=_gen_key)
    for g in pool:
        if len(g) != nvars:
            raise PreconditionError(f"generator of length {len(g)} in a {nvars}-variable ring")
        if any(e < 0 or e > EXP_CAP for e in g):
            raise PreconditionError(f"exponent outside 0..{EXP_CAP} in {g}")
    kept: list[Monomial] = []
    smaller: list[Monomial] = []  # strictly smaller degree: the only possible divisors
    group_deg = -1
    for g in pool:
        d = mono_deg(g)
        if d == 0:
            raise PreconditionError("degree-0 generator: unit ideal is out of scope")
        if d != group_deg:
            smaller = list(kept)
            group_deg = d
        if not any(mono_divides(h, g) for h in smaller):
            kept.append(g)
    return MonomialIdeal(nvars, tuple(kept), var_names)


def edge_ideal(g: Graph) -> MonomialIdeal:
    gens = []
    for u, v in g.edges():
        e = [0] * g.n
        e[u] = e[v] = 1
        gens.append(tuple(e))
    return minimalize(gens, g.n, g.labels)


def power(ideal: MonomialIdeal, s: int) -> MonomialIdeal:
    """I^s from all s-multisets of generators, minimalized once."""
    if s < 1:
        raise PreconditionError("power requires s >= 1")
    if ideal.is_zero():
        return ideal
    prods = set()
    for combo in itertools.combinations_with_replacement(ideal.gens, s):
        m = combo[0]
        for g in combo[1:]:
            m = mono_mul(m, g)
        prods.add(m)
    return minimalize(prods, ideal.nvars, ideal.var_names)


def colon(ideal: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """(I : m) for a monomial m, via generator-wise colon quotients."""
    if len(m) != ideal.nvars:
        raise PreconditionError("colon monomial lives in a different ring")
    return minimalize((mono_quotient(g, m) for g in ideal.gens),
                      ideal.nvars, ideal.var_names)


# ---------------------------------------------------------------------------
# polarization

@dataclass(frozen=True)
class PolarizationMap:
    """Bijection between (original variable, copy index >= 1) and new indices.

    Copy 1 is identified with the original variable; higher copies are the
    whisker variables.
    """

    nvars_src: int
    nvars_dst: int
    back: tuple[tuple[int, int], ...]  # new index -> (var, copy)

    def forward(self, var: int, copy: int) -> int:
        return self._fwd[(var, copy)]

    def __post_init__(self):
        object.__setattr__(self, "_fwd",
                           {vc: i for i, vc in enumerate(self.back)})

    def copies_of(self, var: int) -> list[int]:
        return [i for i, (v, _) in enumerate(self.back) if v == var]


def _polarized_name(base: str, copy: int) -> str:
    if copy == 1:
        return base
    if copy == 2:
        return base + "'"
    return base + f"^({copy})"


def polarize(ideal: MonomialIdeal) -> tuple[MonomialIdeal, PolarizationMap]:
    """Squarefree polarization; generator count and minimality are preserved.

    Every variable keeps at least one copy so squarefree ideals polarize to
    themselves with the identity map.
    """
    copies = [1] * ideal.nvars
    for g in ideal.gens:
        for i, e in enumerate(g):
            copies[i] = max(copies[i], e)
    back = []
    names = []
    for i in range(ideal.nvars):
        for j in range(1, copies[i] + 1):
            back.append((i, j))
            names.append(_polarized_name(ideal.name(i), j))
    pmap = PolarizationMap(ideal.nvars, len(back), tuple(back))
    new_gens = []
    for g in ideal.gens:
        e = [0] * len(back)
        for i, exp in enumerate(g):
            for j in range(1, exp + 1):
                e[pmap.forward(i, j)] = 1
        new_gens.append(tuple(e))
    pol = minimalize(new_gens, len(back), tuple(names))
    if len(pol.gens) != len(ideal.gens):
        raise InternalConsistencyError("polarization changed the generator count")
    return pol, pmap


def depolarize_monomial(pmap: PolarizationMap, m: Monomial) -> Monomial:
    """Inverse image of a squarefree polarized monomial."""
    e = [0] * pmap.nvars_src
    for idx, exp in enumerate(m):
        if exp:
            var, _ = pmap.back[idx]
            e[var] += exp
    return tuple(e)


# ---------------------------------------------------------------------------
# the paper's colon constructions

def colon_square_formula(g: Graph, a: int, b: int) -> MonomialIdeal:
    """I(G) + (x*y : x in N(a), y in N(b)), squares included when x == y.

    Equals (I(G)^2 : ab) for every edge ab; the direct colon is the
    independent oracle for that identity.
    """
    if not g.has_edge(a, b):
        raise PreconditionError(f"colon_square_formula requires edge ({a},{b})")
    gens = list(edge_ideal(g).gens)
    for x in bits(g.adj[a]):
        for y in bits(g.adj[b]):
            e = [0] * g.n
            e[x] += 1
            e[y] += 1
            gens.append(tuple(e))
    return minimalize(gens, g.n, g.labels)


def bipartite_colon_graph(g: Graph, edges: list[tuple[int, int]]) -> Graph:
    """Graph of (I(G)^{s+1} : e_1 ... e_s) for bipartite G.

    The colon ideal is computed directly; that it is again the edge ideal
    of a bipartite graph on the same partition is a theorem, so any
    violation is reported as an internal-consistency error.
    """
    parts = is_bipartite(g)
    if parts is None:
        raise PreconditionError("bipartite_colon_graph requires a bipartite graph")
    if not edges:
        raise PreconditionError("need at least one edge to colon by")
    left, right = parts
    ideal = edge_ideal(g)
    prod = tuple([0] * g.n)
    for u, v in edges:
        if not g.has_edge(u, v):
            raise PreconditionError(f"({u},{v}) is not an edge of the graph")
        e = [0] * g.n
        e[u] = e[v] = 1
        prod = mono_mul(prod, tuple(e))
    result = colon(power(ideal, len(edges) + 1), prod)
    out = []
    for gen in result.gens:
        if mono_deg(gen) != 2 or not mono_is_squarefree(gen):
            raise InternalConsistencyError(
                f"colon generator {gen} is not a squarefree quadratic")
        u, v = bits(mono_support(gen))
        same_side = (left >> u & 1) == (left >> v & 1)
        if same_side:
            raise InternalConsistencyError(
                f"colon edge ({u},{v}) does not respect the bipartition")
        out.append((u, v))
    return make_graph(g.n, out, g.labels)


def strip_linear_generators(ideal: MonomialIdeal) -> tuple[MonomialIdeal, int]:
    """Remove degree-1 generators and eliminate their variables.

    Generators divisible by a removed variable are dropped; the remaining
    ring is reindexed. Regularity is unchanged by this reduction.
    Returns the reduced ideal and the removed-variable mask (original
    indexing).
    """
    removed = 0
    for gen in ideal.gens:
        if mono_deg(gen) == 1:
            removed |= mono_support(gen)
    if not removed:
        return ideal, 0
    keep = [i for i in range(ideal.nvars) if not removed >> i & 1]
    names = tuple(ideal.name(i) for i in keep) if ideal.var_names else None
    new_gens = []
    for gen in ideal.gens:
        if mono_support(gen) & removed:
            continue
        new_gens.append(tuple(gen[i] for i in keep))
    return minimalize(new_gens, len(keep), names), removed


# ---------------------------------------------------------------------------
# text format: one generator per line, '*'-separated "x<k>" / "x<k>^<e>"

def format_ideal(ideal: MonomialIdeal) -> str:
    lines = [f"n {ideal.nvars}"]
    for gen in ideal.gens:
        factors = []
        for i, e in enumerate(gen):
            if e == 1:
                factors.append(f"x{i}")
            elif e > 1:
                factors.append(f"x{i}^{e}")
        lines.append("*".join(factors))
    return "\n".join(lines) + "\n"


def parse_ideal(text: str) -> MonomialIdeal:
    nvars = None
    gens = []
    raw_gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n "):
            if nvars is not None:
                raise ParseError(f"line {lineno}: duplicate variable-count header")
            try:
                nvars = int(line.split()[1])
            except (IndexError, ValueError):
                raise ParseError(f"line {lineno}: malformed header {line!r}") from None
            continue
        factors = {}
        for token in line.split("*"):
            token = token.strip()
            if not token.startswith("x"):
                raise ParseError(f"line {lineno}: malformed factor {token!r}")
            body = token[1:]
            if "^" in body:
                idx_s, exp_s = body.split("^", 1)
            else:
                idx_s, exp_s = body, "1"
            try:
                idx, exp = int(idx_s), int(exp_s)
            except ValueError:
                raise ParseError(f"line {lineno}: malformed factor {token!r}") from None
            if idx < 0 or exp < 1:
                raise ParseError(f"line {lineno}: bad index or exponent in {token!r}")
            factors[idx] = factors.get(idx, 0) + exp
        raw_gens.append((lineno, factors))
    max_idx = max((max(f) for _, f in raw_gens if f), default=-1)
    if nvars is None:
        nvars = max_idx + 1
    if max_idx >= nvars:
        raise ParseError(f"variable x{max_idx} exceeds declared count {nvars}")
    for _, factors in raw_gens:
        e = [0] * nvars
        for idx, exp in factors.items():
            e[idx] = exp
        gens.append(tuple(e))
    return minimalize(gens, nvars)
