"""Simplicial complexes represented by their minimal non-faces.

A set F is a face iff it contains no minimal non-face, so face tests are
subset tests against a short antichain and the Stanley-Reisner translation
is free.  Two degenerate complexes are kept distinct: the void complex (no
faces at all, encoded by the empty set being a non-face) and the empty
complex {emptyset}.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import BudgetExceededError, ParseError, PreconditionError
from .graphs import Graph, bits, mask_of
from .ideals import MonomialIdeal, mono_support, mono_is_squarefree


def _canonical_nonfaces(nonfaces: Iterable[int]) -> tuple[int, ...]:
    pool = sorted(set(nonfaces), key=lambda m: (m.bit_count(), m))
    if pool and pool[0] == 0:
        return (0,)  # the void complex absorbs everything
    return antichain(pool)


def antichain(pool: list[int]) -> tuple[int, ...]:
    """Containment-minimal members of a deduplicated (popcount, value)-sorted
    list; equal-size masks never contain each other, so only strictly
    smaller ones need checking."""
    kept: list[int] = []
    smaller: list[int] = []
    group_size = -1
    for m in pool:
        size = m.bit_count()
        if size != group_size:
            smaller = list(kept)
            group_size = size
        if not any(k & m == k for k in smaller):
            kept.append(m)
    return tuple(kept)


@dataclass(frozen=True)
class SimplicialComplex:
    nverts: int
    min_nonfaces: tuple[int, ...]

    @property
    def is_void(self) -> bool:
        return self.min_nonfaces == (0,)

    @property
    def is_empty_complex(self) -> bool:
        """True for {emptyset}: every vertex excluded, but the empty face present."""
        if self.is_void:
            return False
        excluded = 0
        for m in self.min_nonfaces:
            if m.bit_count() == 1:
                excluded |= m
        return excluded == self.universe()

    def universe(self) -> int:
        return (1 << self.nverts) - 1

    def vertex_set(self) -> int:
        """Vertices that are actually faces (not excluded by a singleton non-face)."""
        if self.is_void:
            return 0
        out = self.universe()
        for m in self.min_nonfaces:
            if m.bit_count() == 1:
                out &= ~m
        return out

    def is_face(self, mask: int) -> bool:
        if self.is_void:
            return False
        if mask & ~self.universe():
            return False
        return not any(n & mask == n for n in self.min_nonfaces)

    def dim(self) -> int:
        """Dimension (max face size - 1); -1 for {emptyset}, -2 for void."""
        if self.is_void:
            return -2
        best = -1
        for f in enumerate_faces(self.nverts, self.min_nonfaces):
            best = max(best, f.bit_count() - 1)
        return best


def make_complex(nverts: int, nonfaces: Iterable[int]) -> SimplicialComplex:
    nf = _canonical_nonfaces(nonfaces)
    for m in nf:
        if m >> nverts:
            raise PreconditionError("non-face uses a vertex outside the universe")
    return SimplicialComplex(nverts, nf)


VOID = object()  # sentinel docs only


def full_simplex(nverts: int) -> SimplicialComplex:
    return SimplicialComplex(nverts, ())


def enumerate_faces(nverts: int, nonfaces: tuple[int, ...],
                    cap: Optional[int] = None) -> list[int]:
    """All face masks (the empty face included), DFS over ascending vertices."""
    if nonfaces and nonfaces[0] == 0:
        return []
    pair_block = [0] * nverts   # for 2-element non-faces: forbidden co-members
    single_block = 0
    larger: list[list[int]] = [[] for _ in range(nverts)]
    for n in nonfaces:
        size = n.bit_count()
        if size == 1:
            single_block |= n
        elif size == 2:
            u, v = bits(n)
            pair_block[u] |= 1 << v
            pair_block[v] |= 1 << u
        else:
            for v in bits(n):
                larger[v].append(n)
    out = [0]
    stack = [(0, 0)]
    while stack:
        mask, start = stack.pop()
        for w in range(start, nverts):
            wb = 1 << w
            if single_block & wb or mask & pair_block[w]:
                continue
            cand = mask | wb
            if any(n & cand == n for n in larger[w]):
                continue
            out.append(cand)
            if cap is not None and len(out) > cap:
                raise BudgetExceededError(f"face enumeration exceeded cap {cap}")
            stack.append((cand, w + 1))
    return out


def facets(k: SimplicialComplex) -> list[int]:
    """Maximal faces, sorted by (size, mask)."""
    all_faces = set(enumerate_faces(k.nverts, k.min_nonfaces))
    out = []
    for f in all_faces:
        if not any(f != g and f & g == f for g in all_faces):
            out.append(f)
    return sorted(out, key=lambda m: (m.bit_count(), m))


def from_facets(nverts: int, facet_masks: Iterable[int]) -> SimplicialComplex:
    """Complex generated by the given facets, as minimal non-faces.

    Minimal non-faces can only be one vertex larger than the largest facet
    dimension they meet, so the search is bounded by max facet size + 1.
    """
    fs = sorted(set(facet_masks), key=lambda m: (m.bit_count(), m))
    if not fs:
        return make_complex(nverts, [0])
    if fs == [0]:
        return make_complex(nverts, [1 << v for v in range(nverts)])

    def is_face(mask: int) -> bool:
        return any(mask & f == mask for f in fs)

    nonfaces = []
    max_size = max(f.bit_count() for f in fs) + 1
    # grow candidate non-faces: minimal sets all of whose proper subsets are faces
    frontier = [0]
    for _ in range(max_size + 1):
        nxt = []
        for m in frontier:
            top = m.bit_length()
            for v in range(top, nverts):
                cand = m | (1 << v)
                if not all(is_face(cand & ~(1 << u)) for u in bits(cand)):
                    continue
                if is_face(cand):
                    nxt.append(cand)
                else:
                    nonfaces.append(cand)
        frontier = nxt
    return make_complex(nverts, nonfaces)


# ---------------------------------------------------------------------------
# constructions from section 2

def stanley_reisner(ideal: MonomialIdeal) -> SimplicialComplex:
    """Complex whose minimal non-faces are the generator supports.

    For an edge ideal this is the clique complex of the complement graph
    (the independence complex of the graph).
    """
    if not ideal.is_squarefree():
        raise PreconditionError("stanley_reisner requires a squarefree ideal")
    return make_complex(ideal.nvars, (mono_support(g) for g in ideal.gens))


def clique_complex(g: Graph) -> SimplicialComplex:
    """cl(G): minimal non-faces are the non-edges."""
    nonfaces = []
    for u in range(g.n):
        non = ~g.adj[u] & ~(1 << u) & g.vertex_mask()
        for v in bits(non >> (u + 1) << (u + 1)):
            nonfaces.append((1 << u) | (1 << v))
    return make_complex(g.n, nonfaces)


def independence_complex(g: Graph) -> SimplicialComplex:
    """cl(G^c) = Stanley-Reisner complex of the edge ideal."""
    return make_complex(g.n, ((1 << u) | (1 << v) for u, v in g.edges()))


def induced_subcomplex(k: SimplicialComplex, w: int) -> SimplicialComplex:
    """K[W], reindexed to ascending order of W."""
    if k.is_void:
        return SimplicialComplex(len(list(bits(w))), (0,))
    keep = list(bits(w & k.universe()))
    pos = {v: i for i, v in enumerate(keep)}
    nf = []
    for n in k.min_nonfaces:
        if n & w == n:
            nf.append(mask_of(pos[v] for v in bits(n)))
    return make_complex(len(keep), nf)


def _require_vertex(k: SimplicialComplex, d: int):
    if k.is_void or not k.is_face(1 << d):
        raise PreconditionError(f"{{{d}}} is not a face of the complex")


def link(k: SimplicialComplex, d: int) -> SimplicialComplex:
    """Faces tau with d not in tau and tau + {d} a face; lives on V - {d}."""
    _require_vertex(k, d)
    keep = [v for v in range(k.nverts) if v != d]
    pos = {v: i for i, v in enumerate(keep)}
    nf = [mask_of(pos[v] for v in bits(n & ~(1 << d))) for n in k.min_nonfaces]
    return make_complex(len(keep), nf)


def antistar(k: SimplicialComplex, d: int) -> SimplicialComplex:
    """Faces avoiding d: the induced subcomplex on V - {d}."""
    _require_vertex(k, d)
    return induced_subcomplex(k, k.universe() & ~(1 << d))


def closed_star(k: SimplicialComplex, d: int) -> SimplicialComplex:
    """Smallest subcomplex containing every face through d; lives on V."""
    _require_vertex(k, d)
    return make_complex(k.nverts, (n & ~(1 << d) for n in k.min_nonfaces))


def star_vertex_set(k: SimplicialComplex, d: int) -> int:
    """Vr(St_d): d together with every vertex on a face through d."""
    _require_vertex(k, d)
    out = 1 << d
    for v in bits(k.vertex_set() & ~(1 << d)):
        if k.is_face((1 << d) | (1 << v)):
            out |= 1 << v
    return out


def join(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    """K1 * K2 with K2's vertices relabelled after K1's."""
    shifted = tuple(n << k1.nverts for n in k2.min_nonfaces)
    return make_complex(k1.nverts + k2.nverts, k1.min_nonfaces + shifted)


def two_points() -> SimplicialComplex:
    return make_complex(2, [0b11])


def suspension(k: SimplicialComplex) -> SimplicialComplex:
    """Join with two new points (indices n and n+1, the only new non-face)."""
    return join(k, two_points())


def is_cone(k: SimplicialComplex) -> Optional[int]:
    """Lowest vertex contained in every facet, or None.

    Such an apex is exactly a vertex that appears in no minimal non-face.
    """
    if k.is_void:
        raise PreconditionError("is_cone is undefined for the void complex")
    if k.nverts == 0:
        return None
    covered = 0
    for n in k.min_nonfaces:
        covered |= n
    free = k.universe() & ~covered
    if free:
        return next(bits(free))
    return None


# ---------------------------------------------------------------------------
# Theorem 3.1 decomposition validator

def verify_decomposition_thm31(g: Graph, a: int, b: int) -> bool:
    """Face-set equality of cl(G'^c) with the glued union decomposition.

    Builds Delta = cl(G^c), Delta' = cl(G'^c), the vertex sets
    A = Vr(closed star of a), B likewise for b, C = A cap B,
    D = V - (A cup B), and compares Delta' against
    (Delta[A] u Delta[B]) u Delta[C] u union over d in D of
    {d} * Delta[C cap Vr(St_d)] by exhaustive face tests.
    """
    from .graphs import suspension_graph  # local import to avoid cycle at module load

    if not g.has_edge(a, b):
        raise PreconditionError(f"requires edge ({a},{b})")
    gp = suspension_graph(g, a, b)
    full = g.vertex_mask()

    def face_of(graph: Graph, f: int) -> bool:
        return not any(graph.adj[u] & f for u in bits(f))

    set_a = full & ~g.adj[a]
    set_b = full & ~g.adj[b]
    set_c = set_a & set_b
    set_d = full & ~(set_a | set_b)
    star_sets = {d: full & ~g.adj[d] for d in bits(set_d)}

    for f in range(1 << g.n):
        lhs = face_of(gp, f)
        rhs = False
        if (f & ~set_a == 0 or f & ~set_b == 0) and face_of(g, f):
            rhs = True
        else:
            for d in bits(set_d):
                allowed = (1 << d) | (set_c & star_sets[d])
                if f & ~allowed == 0 and face_of(g, f & ~(1 << d)):
                    rhs = True
                    break
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# text format: "n <nverts>" then one minimal non-face per line

def format_complex(k: SimplicialComplex, provenance: Optional[str] = None,
                   checksum: bool = False) -> str:
    body_lines = [f"n {k.nverts}"]
    for n in sorted(k.min_nonfaces, key=lambda m: (m.bit_count(), m)):
        body_lines.append(" ".join(str(v) for v in bits(n)) if n else "void")
    body = "\n".join(body_lines) + "\n"
    head = []
    if provenance:
        head.append(f"# provenance: {provenance}")
    if checksum:
        head.append(f"# sha256: {hashlib.sha256(body.encode()).hexdigest()}")
    return ("\n".join(head) + "\n" if head else "") + body


def parse_complex(text: str, verify_checksum: bool = True
                  ) -> tuple[SimplicialComplex, dict]:
    """Parse the complex format; returns (complex, metadata)."""
    meta = {}
    body_lines = []
    nverts = None
    nonfaces = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("#"):
            stripped = raw[1:].strip()
            if ":" in stripped:
                key, val = stripped.split(":", 1)
                meta[key.strip()] = val.strip()
            continue
        line = raw.strip()
        if not line:
            continue
        body_lines.append(raw)
        if line.startswith("n "):
            if nverts is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            try:
                nverts = int(line.split()[1])
            except (IndexError, ValueError):
                raise ParseError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if nverts is None:
            raise ParseError(f"line {lineno}: missing 'n <nverts>' header")
        if line == "void":
            nonfaces.append(0)
            continue
        try:
            verts = [int(t) for t in line.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: malformed non-face {line!r}") from None
        if any(v < 0 or v >= nverts for v in verts):
            raise ParseError(f"line {lineno}: vertex outside 0..{nverts - 1}")
        nonfaces.append(mask_of(verts))
    if nverts is None:
        raise ParseError("missing 'n <nverts>' header")
    if verify_checksum and "sha256" in meta:
        body = "\n".join(body_lines) + "\n"
        digest = hashlib.sha256(body.encode()).hexdigest()
        if digest != meta["sha256"]:
            raise ParseError(f"sha256 checksum mismatch: file says {meta['sha256']}, "
                             f"body hashes to {digest}")
    return make_complex(nverts, nonfaces), meta
