"""Independent regularity oracle via Koszul-complex strands.

Computes every multigraded Betti number beta_{i,a}(R/I) as the homology of
the Koszul strand in multidegree a, for a running over the lcm lattice of
the generators.  This path shares nothing with the simplicial-homology
pipeline: it has its own little dense elimination and never builds a
complex, which is what makes it a trustworthy cross-check for the
Hochster engine.  It is gated to small instances on purpose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PreconditionError, SizeGateError
from .ideals import MonomialIdeal, mono_lcm

ORACLE_MAX_VARS = 12
ORACLE_MAX_GENS = 25
ORACLE_MAX_LATTICE = 20000


@dataclass(frozen=True)
class BettiTable:
    """Z-graded Betti numbers of the ideal: entries[(i, j)] = beta_{i,j}(I)."""

    char: int
    entries: tuple[tuple[tuple[int, int], int], ...]

    def beta(self, i: int, j: int) -> int:
        for (ii, jj), b in self.entries:
            if (ii, jj) == (i, j):
                return b
        return 0

    def regularity(self) -> int:
        return max(j - i for (i, j), _ in self.entries)

    def as_dict(self) -> dict:
        return {k: v for k, v in self.entries}


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Plain dense Gaussian elimination mod p (oracle-local on purpose)."""
    if not rows or not rows[0]:
        return 0
    work = [row[:] for row in rows]
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(work)):
            if work[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [(x * inv) % p for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] % p:
                f = work[r][col]
                work[r] = [(x - f * y) % p for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def lcm_lattice(ideal: MonomialIdeal, cap: int = ORACLE_MAX_LATTICE) -> set:
    """All lcms of nonempty generator subsets, by closure under pairwise lcm."""
    lattice = set(ideal.gens)
    frontier = set(ideal.gens)
    while frontier:
        nxt = set()
        for a in frontier:
            for g in ideal.gens:
                m = mono_lcm(a, g)
                if m not in lattice:
                    lattice.add(m)
                    nxt.add(m)
                    if len(lattice) > cap:
                        raise SizeGateError(
                            f"lcm lattice exceeded {cap} elements; oracle is for tests")
        frontier = nxt
    return lattice


def multigraded_betti(ideal: MonomialIdeal, p: int = 2) -> dict:
    """{(i, a): beta_{i,a}(R/I)} over the lcm lattice, nonzero entries only."""
    if ideal.is_zero():
        raise PreconditionError("oracle requires a nonzero ideal")
    if ideal.nvars > ORACLE_MAX_VARS or len(ideal.gens) > ORACLE_MAX_GENS:
        raise SizeGateError(
            f"instance ({ideal.nvars} vars, {len(ideal.gens)} gens) above the oracle "
            f"size gate ({ORACLE_MAX_VARS} vars, {ORACLE_MAX_GENS} gens); oracle is for tests")
    out = {(0, tuple([0] * ideal.nvars)): 1}  # beta_{0,0}(R/I) = 1, the ring itself
    for a in sorted(lcm_lattice(ideal)):
        supp = [i for i, e in enumerate(a) if e]
        k = len(supp)
        # strand basis in homological degree i: subsets S of supp(a) with
        # x^a / x_S outside I
        basis: list[list[tuple[int, ...]]] = []
        index: list[dict] = []
        for i in range(k + 1):
            level = []
            for s_set in itertools.combinations(supp, i):
                quotient = list(a)
                for v in s_set:
                    quotient[v] -= 1
                if not ideal.contains(tuple(quotient)):
                    level.append(s_set)
            basis.append(level)
            index.append({s: j for j, s in enumerate(level)})
        ranks = [0] * (k + 2)
        for i in range(1, k + 1):
            if not basis[i] or not basis[i - 1]:
                continue
            rows = [[0] * len(basis[i]) for _ in basis[i - 1]]
            for j, s_set in enumerate(basis[i]):
                for pos, v in enumerate(s_set):
                    target = s_set[:pos] + s_set[pos + 1:]
                    row = index[i - 1].get(target)
                    if row is not None:
                        rows[row][j] = (p - 1) if pos & 1 else 1
            ranks[i] = _rank_mod_p(rows, p)
        for i in range(k + 1):
            beta = len(basis[i]) - ranks[i] - ranks[i + 1]
            if beta:
                out[(i, a)] = beta
    return out


def koszul_oracle_reg(ideal: MonomialIdeal, p: int = 2):
    """(regularity of the ideal, Z-graded BettiTable of the ideal).

    reg(I) = reg(R/I) + 1 with reg(R/I) read off the multigraded table as
    max(|a| - i) over nonzero entries.
    """
    from .regularity import RegularityResult  # local import: no cycle at load

    mg = multigraded_betti(ideal, p)
    reg_ri = max(sum(a) - i for (i, a), _ in mg.items())
    graded: dict[tuple[int, int], int] = {}
    for (i, a), b in mg.items():
        if i >= 1:
            key = (i - 1, sum(a))
            graded[key] = graded.get(key, 0) + b
    table = BettiTable(p, tuple(sorted(graded.items())))
    result = RegularityResult(value=reg_ri + 1, method="koszul-oracle",
                              certificate=None, char=p)
    return result, table
