"""The dunce-hat experiment: flag-no-square subdivisions and the probe.

The subdivision round replaces every triangle by a blunted triangular
patch: boundary edges become arcs of length 3, each corner is cushioned
by an interior vertex (so the two arc-neighbours of a corner are not
adjacent, which subdivides every cycle in the links of the original
vertices), and a three-vertex core keeps all interior links at girth at
least 5.  Hollow triangles and induced 4-cycles both come from short
cycles in vertex links, so one round is expected to reach flag-no-square;
the validators re-check every claimed property (including homology
preservation) at runtime rather than trusting the construction.
"""

from __future__ import annotations

import hashlib
import itertools
import random
import time
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .errors import (BudgetExceededError, InternalConsistencyError,
                     PreconditionError)
from .graphs import Graph, bits, complement, has_induced_c4, make_graph, mask_of
from .complexes import SimplicialComplex, make_complex, parse_complex
from .homology import betti_ambient, reduced_betti_vector
from .ideals import colon_square_formula, edge_ideal, mono_support
from .regularity import (Budget, Certificate, RegularityResult,
                         reg_edge_power, reg_monomial)

Facet = tuple[int, ...]


def _closure(facet_list: list[Facet]) -> set[Facet]:
    out: set[Facet] = set()
    for f in facet_list:
        for size in range(1, len(f) + 1):
            out.update(itertools.combinations(f, size))
    return out


def _min_nonfaces_2dim(nverts: int, facet_list: list[Facet]) -> SimplicialComplex:
    """Minimal non-faces of a complex of dimension <= 2.

    They have size at most 4: non-edges, hollow triangles, and empty
    tetrahedra (all four triangles present, which cannot bound in a
    2-complex).
    """
    if any(len(f) > 3 for f in facet_list):
        raise PreconditionError("helper only supports complexes of dimension <= 2")
    faces = _closure(facet_list)
    adj = [0] * nverts
    for (u, v) in (f for f in faces if len(f) == 2):
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    tri_faces = {f for f in faces if len(f) == 3}
    nonfaces = []
    full = (1 << nverts) - 1
    for u in range(nverts):
        if (u,) not in faces:
            nonfaces.append(1 << u)
            continue
        for v in bits(~adj[u] & full >> (u + 1) << (u + 1)):
            if (v,) in faces:
                nonfaces.append((1 << u) | (1 << v))
    hollow = []
    for u in range(nverts):
        for v in bits(adj[u] >> (u + 1) << (u + 1)):
            for w in bits((adj[u] & adj[v]) >> (v + 1) << (v + 1)):
                if (u, v, w) not in tri_faces:
                    hollow.append((u, v, w))
                    nonfaces.append(mask_of((u, v, w)))
    hollow_set = set(hollow)
    for (u, v, w) in sorted(tri_faces):
        for z in bits((adj[u] & adj[v] & adj[w]) >> (w + 1) << (w + 1)):
            if all(tuple(sorted(t)) in tri_faces
                   for t in ((u, v, z), (u, w, z), (v, w, z))):
                if not any(tuple(sorted(t)) in hollow_set
                           for t in ((u, v, z), (u, w, z), (v, w, z))):
                    nonfaces.append(mask_of((u, v, w, z)))
    return make_complex(nverts, nonfaces)


@dataclass(frozen=True)
class LabeledComplex:
    """A complex with provenance, its cached 1-skeleton, and its facets."""

    complex: SimplicialComplex
    provenance: str
    skeleton: Graph
    facet_list: tuple[Facet, ...]
    flag_no_square: Optional[bool] = None

    def f_vector(self) -> tuple[int, ...]:
        counts: dict[int, int] = {}
        for f in _closure(list(self.facet_list)):
            counts[len(f)] = counts.get(len(f), 0) + 1
        return tuple(counts.get(k, 0) for k in range(1, max(counts) + 1))

    def checksum(self) -> str:
        body = ";".join(",".join(map(str, f)) for f in sorted(self.facet_list))
        return hashlib.sha256(body.encode()).hexdigest()


def _skeleton_graph(nverts: int, facet_list: list[Facet]) -> Graph:
    edges = {f for f in _closure(facet_list) if len(f) == 2}
    return make_graph(nverts, sorted(edges))


def labeled_from_facets(nverts: int, facet_list, provenance: str,
                        flag_no_square: Optional[bool] = None) -> LabeledComplex:
    fl = tuple(sorted(tuple(sorted(f)) for f in facet_list))
    return LabeledComplex(_min_nonfaces_2dim(nverts, list(fl)), provenance,
                          _skeleton_graph(nverts, list(fl)), fl, flag_no_square)


# ---------------------------------------------------------------------------
# the shipped dunce hat

def dunce_hat_complex() -> LabeledComplex:
    """The 8-vertex, 17-triangle dunce hat, loaded from the shipped data file.

    Load-time validation: checksum, pure 2-dimensional, f-vector
    (8, 24, 17), and all reduced homology zero over GF(2) and GF(3).
    """
    text = resources.files("edgereg.data").joinpath("dunce_hat_8.cplx").read_text()
    k, meta = parse_complex(text)  # raises on checksum mismatch
    from .complexes import facets as complex_facets
    facet_masks = complex_facets(k)
    facet_list = [tuple(bits(m)) for m in facet_masks]
    if any(len(f) != 3 for f in facet_list):
        raise InternalConsistencyError("dunce hat data is not pure 2-dimensional")
    lc = labeled_from_facets(k.nverts, facet_list,
                             meta.get("provenance", "dunce hat"))
    if lc.f_vector() != (8, 24, 17):
        raise InternalConsistencyError(f"dunce hat f-vector {lc.f_vector()}")
    for p in (2, 3):
        if not reduced_betti_vector(lc.complex, p).is_zero():
            raise InternalConsistencyError(f"dunce hat has homology over GF({p})")
    return lc


# ---------------------------------------------------------------------------
# subdivision machinery

def blunted_refinement(nverts: int, facet_list: list[Facet]
                       ) -> tuple[int, list[Facet]]:
    """One subdivision round: each triangle becomes a 19-cell blunted patch.

    Boundary edges turn into arcs of length 3 (shared between incident
    patches), corners get a cushion vertex so the two arc-neighbours of a
    corner are never adjacent, and a three-vertex core fans the inner
    9-gon.  Every new vertex link then has girth >= 5, and the links of
    the original vertices come back with all their cycles subdivided,
    which is exactly what removes hollow triangles and induced 4-cycles.
    """
    ids: dict = {}

    def vid(key):
        if key not in ids:
            ids[key] = len(ids)
        return ids[key]

    for v in range(nverts):
        vid(("v", v))
    out = []

    def arc(u, v):
        e = (min(u, v), max(u, v))
        first, second = ("e", e, 1), ("e", e, 2)
        if u < v:
            return [("v", u), first, second, ("v", v)]
        return [("v", u), second, first, ("v", v)]

    def cell(*keys):
        out.append(tuple(sorted(vid(k) for k in keys)))

    for f in facet_list:
        if len(f) == 1:
            cell(("v", f[0]))
        elif len(f) == 2:
            path = arc(f[0], f[1])
            for i in range(3):
                cell(path[i], path[i + 1])
        else:
            a, b, c = sorted(f)
            va, vb, vc = ("v", a), ("v", b), ("v", c)
            ab, ac, bc = arc(a, b), arc(a, c), arc(b, c)
            p1, p2 = ab[1], ab[2]
            r2, r1 = ac[1], ac[2]
            q1, q2 = bc[1], bc[2]
            t = (a, b, c)
            ua, ub, uc = ("uA", t), ("uB", t), ("uC", t)
            z1, z2, z3 = ("z1", t), ("z2", t), ("z3", t)
            cell(va, p1, ua); cell(va, ua, r2)
            cell(vb, p2, ub); cell(vb, ub, q1)
            cell(vc, q2, uc); cell(vc, uc, r1)
            cell(z1, ua, p1); cell(z1, p1, p2); cell(z1, p2, ub)
            cell(z2, ub, q1); cell(z2, q1, q2); cell(z2, q2, uc)
            cell(z3, uc, r1); cell(z3, r1, r2); cell(z3, r2, ua)
            cell(z1, ub, z2); cell(z2, uc, z3); cell(z3, ua, z1)
            cell(z1, z2, z3)
    return len(ids), sorted(set(out))


def validate_flag_no_square(lc: LabeledComplex) -> dict:
    """flag: complex equals the clique complex of its skeleton;
    no_square: the skeleton has no induced 4-cycle."""
    flag = all(n.bit_count() == 2 for n in lc.complex.min_nonfaces)
    return {"flag": flag, "no_square": not has_induced_c4(lc.skeleton)}


def flag_no_square_subdivide(lc: LabeledComplex, max_rounds: int = 4
                             ) -> LabeledComplex:
    """Subdivide until the validators pass, re-checking homology each round.

    Applies blunted-refinement rounds; on the dunce hat a single round
    reaches flag-no-square.  If max_rounds rounds never validate, the last
    complex is returned carrying flag_no_square=False.
    """
    dims = {len(f) for f in lc.facet_list}
    if max(dims) != 3:
        raise PreconditionError("flag_no_square_subdivide needs a 2-dimensional complex")
    reference = {p: reduced_betti_vector(lc.complex, p).entries for p in (2, 3)}
    current = lc
    for round_no in range(1, max_rounds + 1):
        n, facets = blunted_refinement(current.skeleton.n, list(current.facet_list))
        nxt = labeled_from_facets(
            n, facets, f"{lc.provenance} / flag-no-square round {round_no}")
        for p in (2, 3):
            if reduced_betti_vector(nxt.complex, p).entries != reference[p]:
                raise InternalConsistencyError(
                    f"subdivision changed homology over GF({p})")
        verdict = validate_flag_no_square(nxt)
        if verdict["flag"] and verdict["no_square"]:
            return LabeledComplex(nxt.complex, nxt.provenance, nxt.skeleton,
                                  nxt.facet_list, flag_no_square=True)
        current = nxt
    return LabeledComplex(current.complex, current.provenance, current.skeleton,
                          current.facet_list, flag_no_square=False)


# ---------------------------------------------------------------------------
# the Conjecture 4.3 probe

def _link_h1_certificate(h: Graph, p: int) -> Optional[Certificate]:
    """A vertex link of cl(H) with nonzero first homology, as a witness.

    In a flag complex the link of a is the induced subcomplex on N(a), so
    H~_1 there gives reg >= 3 by Hochster.
    """
    g = complement(h)
    nonfaces = tuple(sorted((1 << u) | (1 << v) for u, v in g.edges()))
    for a in range(h.n):
        w = h.adj[a]
        nf = [n for n in nonfaces if not n & ~w]
        b = betti_ambient(w, nf, p)
        if b.get(1, 0):
            return Certificate(tuple(bits(w)), 1, h.n, nonfaces)
    return None


def conjecture43_probe(lc: LabeledComplex, budget: Optional[Budget] = None,
                       p: int = 2, threads: int = 1, edge_sample: int = 20,
                       seed: int = 0) -> dict:
    """Probe the Nevo-Peeva conjecture obstruction instance.

    With H the 1-skeleton and G = H^c: certifies reg(I(G)) = 3 (link
    witness for the lower bound; vanishing top homology of a 2-complex
    caps it), checks reg(I(G)^2 : ab) = 3 on sampled edges, and brackets
    reg(I(G)^2), which is expected to stay PARTIAL within any realistic
    budget on the full dunce hat.
    """
    t_start = time.monotonic()
    verdict = validate_flag_no_square(lc)
    if not (verdict["flag"] and verdict["no_square"]):
        raise PreconditionError(f"probe needs a flag-no-square complex, got {verdict}")
    for q in (2, 3):
        if not reduced_betti_vector(lc.complex, q).is_zero():
            raise PreconditionError("probe needs a homology-free (contractible-like) complex")
    budget = budget or Budget(seconds=3600.0, subset_cap=5_000_000)
    h = lc.skeleton
    g = complement(h)
    report: dict = {
        "triangulation_sha256": lc.checksum(),
        "nverts": h.n,
        "skeleton_edges": h.edge_count(),
        "g_edges": g.edge_count(),
        "char": p,
        "validators": verdict,
    }

    # reg(I(G)): full Hochster only for small instances, otherwise certify
    reg_ig: dict = {}
    if h.n <= 20:
        try:
            res = reg_edge_power(g, 1, p, budget, threads, use_fast_paths=False)
            reg_ig = {"value": res.value, "method": "hochster", "status": "ok"}
        except BudgetExceededError as exc:
            reg_ig = {"lower": exc.partial.value, "method": "hochster-partial",
                      "status": "partial"}
    if "value" not in reg_ig:
        cert = _link_h1_certificate(h, p)
        if cert is None or not cert.verify(p):
            raise InternalConsistencyError("no vertex link with nonzero H_1 found")
        # a 2-complex with vanishing top homology has no induced subcomplex
        # with H_2 (2-cycles restrict injectively, nothing bounds), so the
        # Hochster maximum is capped at 1 + 2
        top = reduced_betti_vector(lc.complex, p).betti(2)
        if top != 0:
            raise InternalConsistencyError("top homology expected to vanish")
        reg_ig = {"value": 3, "status": "ok",
                  "method": "link-certificate+top-vanishing",
                  "certificate_W": list(cert.w), "certificate_l": cert.l}
    report["reg_IG"] = reg_ig
    reg1 = reg_ig.get("value")

    # sampled colon ideals (I(G)^2 : ab)
    rng = random.Random(seed)
    edges = list(g.edges())
    sample = edges if len(edges) <= edge_sample else rng.sample(edges, edge_sample)
    sample.sort()
    colon_reports = []
    for (a, b) in sample:
        entry: dict = {"edge": [a, b]}
        ideal = colon_square_formula(g, a, b)
        if any(mono_support(x).bit_count() not in (1, 2) or sum(x) != 2
               for x in ideal.gens):
            raise InternalConsistencyError("colon formula produced a non-quadratic")
        if h.n <= 12:
            try:
                res = reg_monomial(ideal, p, budget, threads)
                entry.update(value=res.value, method="hochster", status="ok")
            except BudgetExceededError as exc:
                entry.update(lower=exc.partial.value, method="hochster-partial",
                             status="partial")
        if "value" not in entry:
            # witness inside the original variables: the colon ideal restricted
            # there is the suspension-construction ideal J, whose complex still
            # contains the untouched link of a
            from .graphs import suspension_graph
            gp = suspension_graph(g, a, b)
            hp = complement(gp)
            cert = _link_h1_certificate(hp, p)
            lower = 3 if cert is not None else None
            entry.update(
                lower=lower, upper=3,
                upper_method="theorem-bound(ses-chain+suspension)",
                value=3 if lower == 3 else None,
                status="ok" if lower == 3 else "partial")
        colon_reports.append(entry)
    report["colon_checks"] = colon_reports

    # reg(I(G)^2): exact for small instances, else an honest bracket
    e_count = g.edge_count()
    gens2 = e_count * (e_count + 1) // 2
    reg2: dict = {}
    if h.n <= 12 and gens2 <= 20000:
        try:
            res = reg_edge_power(g, 2, p, budget, threads, use_fast_paths=False)
            reg2 = {"value": res.value, "method": "hochster", "status": "ok"}
        except BudgetExceededError as exc:
            reg2 = {"lower": max(exc.partial.value, 4), "status": "partial",
                    "method": "hochster-partial"}
    else:
        reg2 = {"status": "partial", "method": "degree-bound",
                "note": f"I^2 has ~{gens2} generators; enumeration out of reach"}
    if "value" not in reg2:
        reg2.setdefault("lower", 4)  # generated in degree 4, beta_{0,4} != 0
        if reg1 is not None:
            reg2["upper"] = reg1 + 2
            reg2["upper_method"] = "thm1.1(i)"
    report["reg_IG2"] = reg2
    report["millis"] = int((time.monotonic() - t_start) * 1000)
    report["status"] = ("ok" if reg2.get("status") == "ok"
                        and all(c.get("status") == "ok" for c in colon_reports)
                        and reg_ig.get("status") == "ok" else "partial")
    return report
