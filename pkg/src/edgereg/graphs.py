"""Finite simple graphs on indexed vertices with bit-row adjacency.

Vertex sets are plain ints used as bit masks (bit v set means vertex v is
in the set), so intersection/union/difference are ``&``/``|``/``&~`` and
iteration is ascending by index via :func:`bits`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import ParseError, PreconditionError

MAX_VERTICES = 1024


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple graph: ``adj[v]`` is the neighbour mask of vertex ``v``.

    Invariants: adjacency symmetric, no self loops, rows only use bits < n.
    """

    n: int
    adj: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else f"x{v}"


def make_graph(n: int, edges: Iterable[tuple[int, int]],
               labels: Optional[tuple[str, ...]] = None) -> Graph:
    if n < 0 or n > MAX_VERTICES:
        raise PreconditionError(f"vertex count {n} outside supported range 0..{MAX_VERTICES}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
        if u == v:
            raise PreconditionError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), labels)


# ---------------------------------------------------------------------------
# parsing and encoding

def parse_edge_list(text: str) -> Graph:
    """Parse "u v" lines; '#' starts a comment, "n <count>" declares size."""
    declared = None
    edges = []
    max_seen = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "n":
            if declared is not None:
                raise ParseError(f"line {lineno}: duplicate vertex-count header")
            if len(tok) != 2 or not tok[1].isdigit():
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            declared = int(tok[1])
            continue
        if len(tok) != 2:
            raise ParseError(f"line {lineno}: expected two vertex indices, got {line!r}")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed token in {line!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex index")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop {u} {u}")
        edges.append((u, v))
        max_seen = max(max_seen, u, v)
    n = declared if declared is not None else max_seen + 1
    if n < max_seen + 1:
        raise ParseError(f"header declares {n} vertices but index {max_seen} appears")
    return make_graph(n, edges)


def parse_graph6(line: str) -> Graph:
    """Decode one standard graph6 line (6-bit chunks offset by 63)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ParseError("empty graph6 string")
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError as exc:
        raise ParseError(f"graph6 byte {exc.start}: non-ASCII character") from None
    pos = 0
    if data[0] == 126:  # '~'
        if len(data) >= 2 and data[1] == 126:
            raise ParseError("graph6 byte 1: >=258048 vertices unsupported")
        if len(data) < 4:
            raise ParseError(f"graph6 length mismatch: byte {len(data)}: truncated vertex count")
        n = 0
        for k in range(1, 4):
            c = data[k] - 63
            if not 0 <= c < 64:
                raise ParseError(f"graph6 byte {k}: invalid character {chr(data[k])!r}")
            n = (n << 6) | c
        pos = 4
    else:
        n = data[0] - 63
        if not 0 <= n < 63:
            raise ParseError(f"graph6 byte 0: invalid character {chr(data[0])!r}")
        pos = 1
    if n > MAX_VERTICES:
        raise ParseError(f"graph6 declares {n} vertices, supported maximum is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        raise ParseError(
            f"graph6 length mismatch at byte {pos}: need {nbytes} data bytes, have {len(data) - pos}")
    adj = [0] * n
    bit = 0
    for k in range(nbytes):
        c = data[pos + k] - 63
        if not 0 <= c < 64:
            raise ParseError(f"graph6 byte {pos + k}: invalid character {chr(data[pos + k])!r}")
        for shift in range(5, -1, -1):
            if bit >= nbits:
                if (c >> shift) & 1:
                    raise ParseError(f"graph6 byte {pos + k}: nonzero padding bit")
                continue
            if (c >> shift) & 1:
                # upper-triangle column order: bit index runs over pairs (i,j), j>i
                j = _g6_col(bit)
                i = bit - j * (j - 1) // 2
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit += 1
    return Graph(n, tuple(adj))


def _g6_col(bit_index: int) -> int:
    # smallest j with j(j+1)/2 > bit_index
    j = 1
    while j * (j + 1) // 2 <= bit_index:
        j += 1
    return j


def encode_graph6(g: Graph) -> str:
    """Encode as a standard graph6 string; decode(encode(g)) == g byte-exactly."""
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        raise PreconditionError("graph6 encoding beyond 258047 vertices unsupported")
    out = []
    acc = 0
    filled = 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | (g.adj[i] >> j & 1)
            filled += 1
            if filled == 6:
                out.append(acc + 63)
                acc = 0
                filled = 0
    if filled:
        out.append((acc << (6 - filled)) + 63)
    return bytes(head + out).decode("ascii")


def parse_graph(text: str, fmt: str) -> Graph:
    if fmt == "edge-list":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise ParseError(f"unknown graph format {fmt!r}")


# ---------------------------------------------------------------------------
# basic operations

def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    adj = tuple((full ^ g.adj[v]) & ~(1 << v) for v in range(g.n))
    return Graph(g.n, adj, g.labels)


def induced_subgraph(g: Graph, w: int) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on vertex mask ``w``, reindexed ascending.

    Returns the subgraph and the tuple mapping new index -> old index.
    """
    keep = tuple(bits(w & g.vertex_mask()))
    pos = {v: i for i, v in enumerate(keep)}
    adj = [0] * len(keep)
    for i, v in enumerate(keep):
        for u in bits(g.adj[v] & w):
            adj[i] |= 1 << pos[u]
    labels = tuple(g.label(v) for v in keep) if g.labels else None
    return Graph(len(keep), tuple(adj), labels), keep


def is_bipartite(g: Graph) -> Optional[tuple[int, int]]:
    """2-colour by BFS; the lowest vertex of each component lands in L."""
    color = {}
    left = right = 0
    for root in range(g.n):
        if root in color:
            continue
        color[root] = 0
        left |= 1 << root
        queue = [root]
        while queue:
            v = queue.pop()
            for u in bits(g.adj[v]):
                if u not in color:
                    color[u] = color[v] ^ 1
                    if color[u]:
                        right |= 1 << u
                    else:
                        left |= 1 << u
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return left, right


def lexbfs_order(g: Graph) -> tuple[int, ...]:
    """Lexicographic BFS vertex order (partition refinement)."""
    classes = [list(range(g.n))]
    order = []
    while classes:
        first = classes[0]
        v = first.pop(0)
        order.append(v)
        if not first:
            classes.pop(0)
        nxt = []
        for cl in classes:
            inside = [u for u in cl if g.adj[v] >> u & 1]
            outside = [u for u in cl if not g.adj[v] >> u & 1]
            if inside:
                nxt.append(inside)
            if outside:
                nxt.append(outside)
        classes = nxt
    return tuple(order)


def is_chordal(g: Graph) -> Optional[tuple[int, ...]]:
    """Return a verified perfect elimination ordering, or None.

    LexBFS reversed is a PEO exactly on chordal graphs; the verification
    step is what certifies the answer.
    """
    order = lexbfs_order(g)
    peo = tuple(reversed(order))
    pos = [0] * g.n
    for i, v in enumerate(peo):
        pos[v] = i
    later = [0] * g.n  # mask of neighbours appearing after v in the PEO
    for v in range(g.n):
        later[v] = g.adj[v] & mask_of(u for u in bits(g.adj[v]) if pos[u] > pos[v])
    for v in peo:
        rest = later[v]
        if not rest:
            continue
        parent = min(bits(rest), key=lambda u: pos[u])
        if (rest & ~(1 << parent)) & ~g.adj[parent]:
            return None
    return peo


def is_cochordal(g: Graph) -> bool:
    return is_chordal(complement(g)) is not None


def is_gap_free(g: Graph) -> bool:
    """True iff the complement has no induced 4-cycle (no 2K2 in g)."""
    h = complement(g)
    for u in range(h.n):
        nonadj = ~h.adj[u] & ~(1 << u) & ((1 << h.n) - 1)
        for v in bits(nonadj >> (u + 1) << (u + 1)):
            common = h.adj[u] & h.adj[v]
            # induced C4 u-x-v-y needs two nonadjacent common neighbours
            for x in bits(common):
                if common & ~h.adj[x] & ~(1 << x):
                    return False
    return True


def has_induced_c4(g: Graph) -> bool:
    return not is_gap_free(complement(g))


def suspension_graph(g: Graph, a: int, b: int) -> Graph:
    """G' = G plus every edge xy with x in N(a), y in N(b), x != y."""
    if not g.has_edge(a, b):
        raise PreconditionError(f"suspension_graph requires edge ({a},{b})")
    adj = list(g.adj)
    for x in bits(g.adj[a]):
        new = g.adj[b] & ~(1 << x)
        adj[x] |= new
        for y in bits(new):
            adj[y] |= 1 << x
    return Graph(g.n, tuple(adj), g.labels)


def connected_components(g: Graph) -> list[int]:
    """Vertex masks of connected components, ordered by lowest vertex."""
    seen = 0
    comps = []
    for root in range(g.n):
        if seen >> root & 1:
            continue
        comp = 1 << root
        frontier = 1 << root
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        seen |= comp
    return comps
