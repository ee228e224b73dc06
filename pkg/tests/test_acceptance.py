"""Acceptance suite: one test per criterion, one printed verdict line each.

Every criterion computes a canonical JSON payload (no timing fields) via a
thread-count-parameterized runner; the determinism criterion re-runs the
first ten at a different thread count and compares the bytes.
"""

import itertools
import json
import random
import time
from functools import lru_cache

import pytest

from edgereg.graphs import bits, encode_graph6, is_cochordal, make_graph
from edgereg.homology import reduced_betti_vector
from edgereg.complexes import suspension, verify_decomposition_thm31
from edgereg.ideals import colon, colon_square_formula, edge_ideal, power
from edgereg.koszul import koszul_oracle_reg
from edgereg.regularity import (Budget, reg_edge_power, reg_monomial,
                                verify_bounds)
from edgereg.constructions import (conjecture43_probe, dunce_hat_complex,
                                   flag_no_square_subdivide,
                                   validate_flag_no_square)
from edgereg.corpora import (complete_bipartite, g0_jump_graph, labeled_graphs,
                             labeled_graphs_upto, random_bipartite_graph,
                             random_complex, random_graph,
                             random_monomial_ideal)

_THREADS = 8


def canonical(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def verdict(num, name, ok, t0, extra=""):
    state = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:02d} {name}: {state} ({time.time() - t0:.1f}s{extra})")
    assert ok, f"criterion {num} ({name}) failed"


# --- criterion runners (memoized per thread count) ---------------------------

@lru_cache(maxsize=None)
def run_criterion_1(threads: int) -> str:
    pairs = list(itertools.combinations(range(6), 2))
    records = []
    for code in range(1, 1 << 15):
        g = make_graph(6, [pairs[i] for i in range(15) if code >> i & 1])
        value = reg_edge_power(g, 1, threads=threads, use_fast_paths=False).value
        records.append([code, is_cochordal(g), value])
    return canonical(records)


@lru_cache(maxsize=None)
def run_criterion_2(threads: int) -> str:
    out = {}
    for (m, n) in [(2, 2), (2, 3), (3, 3)]:
        for s in (1, 2, 3):
            res = reg_edge_power(complete_bipartite(m, n), s, threads=threads,
                                 use_fast_paths=False)
            out[f"K{m}{n}^s{s}"] = [res.value, res.method,
                                    list(res.certificate.w), res.certificate.l]
    return canonical(out)


@lru_cache(maxsize=None)
def run_criterion_3(threads: int) -> str:
    g0 = g0_jump_graph()
    r1 = reg_edge_power(g0, 1, threads=threads, use_fast_paths=False)
    r2 = reg_edge_power(g0, 2, threads=threads, use_fast_paths=False)
    return canonical({"reg1": r1.value, "reg2": r2.value,
                      "cert1": [list(r1.certificate.w), r1.certificate.l],
                      "cert2": [list(r2.certificate.w), r2.certificate.l]})


def _corpus_4():
    corpus = [g for g in labeled_graphs_upto(5, min_edges=1)]
    rng = random.Random(48104810)
    for _ in range(200):
        corpus.append(random_graph(rng.randint(5, 8), rng,
                                   rng.choice([0.3, 0.5, 0.7])))
    return corpus


@lru_cache(maxsize=None)
def run_criterion_4(threads: int) -> str:
    report = verify_bounds(_corpus_4(), s_max=2, threads=threads, checks="a")
    return canonical([[r["graph6"], r["status"], r["checks"]]
                      for r in report["items"]])


def _corpus_5():
    rng = random.Random(51055105)
    a = [random_bipartite_graph(rng.randint(4, 10), rng) for _ in range(200)]
    b = [random_bipartite_graph(rng.randint(4, 8), rng) for _ in range(200)]
    return a, b


@lru_cache(maxsize=None)
def run_criterion_5(threads: int) -> str:
    a, b = _corpus_5()
    rep_a = verify_bounds(a, s_max=2, threads=threads, checks="b")
    rep_b = verify_bounds(b, s_max=3, threads=threads, checks="b")
    return canonical([[r["graph6"], r["status"], r["checks"]]
                      for r in rep_a["items"] + rep_b["items"]])


@lru_cache(maxsize=None)
def run_criterion_6(threads: int) -> str:
    corpus = list(labeled_graphs_upto(6, min_edges=1))
    report = verify_bounds(corpus, s_max=2, threads=threads, checks="cd")
    return canonical([[r["graph6"], r["status"]] for r in report["items"]])


@lru_cache(maxsize=None)
def run_criterion_7(threads: int) -> str:
    records = []
    for g in labeled_graphs_upto(5, min_edges=1):
        ideal = edge_ideal(g)
        records.append([encode_graph6(g), 1,
                        reg_monomial(ideal, threads=threads).value,
                        koszul_oracle_reg(ideal)[0].value])
    for g in labeled_graphs(4, min_edges=1):
        sq = power(edge_ideal(g), 2)
        records.append([encode_graph6(g), 2,
                        reg_monomial(sq, threads=threads).value,
                        koszul_oracle_reg(sq)[0].value])
    rng = random.Random(71427142)
    for _ in range(200):
        ideal = random_monomial_ideal(rng)
        records.append([[list(g) for g in ideal.gens], 1,
                        reg_monomial(ideal, threads=threads).value,
                        koszul_oracle_reg(ideal)[0].value])
    return canonical(records)


@lru_cache(maxsize=None)
def run_criterion_8(threads: int) -> str:
    rng = random.Random(82468246)
    records = []
    pairs_done = 0
    while pairs_done < 10000:
        n = rng.randint(3, 7)
        g = random_graph(n, rng, rng.choice([0.3, 0.5, 0.7]))
        sq = power(edge_ideal(g), 2)
        for (a, b) in g.edges():
            m = tuple(1 if i in (a, b) else 0 for i in range(g.n))
            agree = colon_square_formula(g, a, b).gens == colon(sq, m).gens
            records.append([encode_graph6(g), a, b, agree])
            pairs_done += 1
    return canonical(records)


@lru_cache(maxsize=None)
def run_criterion_9(threads: int) -> str:
    records = []
    for g in labeled_graphs_upto(6, min_edges=1):
        for (a, b) in g.edges():
            records.append([encode_graph6(g), a, b,
                            verify_decomposition_thm31(g, a, b)])
    return canonical(records)


@lru_cache(maxsize=None)
def run_criterion_10(threads: int) -> str:
    rng = random.Random(1010_1010)
    records = []
    for _ in range(500):
        K = random_complex(rng, rng.randint(1, 8))
        for p in (2, 3):
            base = dict(reduced_betti_vector(K, p).entries)
            shifted = dict(reduced_betti_vector(suspension(K), p).entries)
            records.append([K.nverts, list(K.min_nonfaces), p,
                            sorted(base.items()), sorted(shifted.items()),
                            shifted == {l + 1: v for l, v in base.items()}])
    return canonical(records)


# --- the criteria ------------------------------------------------------------

def test_criterion_01_froeberg_equivalence():
    t0 = time.time()
    records = json.loads(run_criterion_1(_THREADS))
    ok = all(cochordal == (value == 2) for _, cochordal, value in records)
    verdict(1, "froeberg-equivalence-n6", ok and len(records) == (1 << 15) - 1,
            t0, f", {len(records)} graphs")


def test_criterion_02_complete_bipartite_powers():
    t0 = time.time()
    out = json.loads(run_criterion_2(_THREADS))
    ok = all(out[f"K{m}{n}^s{s}"][0] == 2 * s and out[f"K{m}{n}^s{s}"][1] == "hochster"
             for (m, n) in [(2, 2), (2, 3), (3, 3)] for s in (1, 2, 3))
    verdict(2, "complete-bipartite-powers-2s", ok, t0)


def test_criterion_03_jump_example():
    t0 = time.time()
    out = json.loads(run_criterion_3(_THREADS))
    verdict(3, "bipartite-jump-reg-plus-one", out["reg2"] - out["reg1"] == 1, t0,
            f", reg={out['reg1']},{out['reg2']}")


def test_criterion_04_thm11i():
    t0 = time.time()
    items = json.loads(run_criterion_4(_THREADS))
    ok = all(status == "PASS" for _, status, _ in items)
    verdict(4, "thm1.1(i)-square-bound", ok, t0, f", {len(items)} graphs")


def test_criterion_05_thm11ii_bipartite():
    t0 = time.time()
    items = json.loads(run_criterion_5(_THREADS))
    ok = all(status == "PASS" for _, status, _ in items)
    verdict(5, "thm1.1(ii)-bipartite-powers", ok, t0, f", {len(items)} graphs")


def test_criterion_06_colon_and_suspension_bounds():
    t0 = time.time()
    items = json.loads(run_criterion_6(_THREADS))
    ok = all(status == "PASS" for _, status in items)
    verdict(6, "colon+suspension-bounds-n6", ok, t0, f", {len(items)} graphs")


def test_criterion_07_oracle_equivalence():
    t0 = time.time()
    records = json.loads(run_criterion_7(_THREADS))
    ok = all(engine == oracle for _, _, engine, oracle in records)
    verdict(7, "hochster-equals-koszul-oracle", ok, t0, f", {len(records)} instances")


def test_criterion_08_colon_formula():
    t0 = time.time()
    records = json.loads(run_criterion_8(_THREADS))
    ok = all(agree for *_, agree in records) and len(records) >= 10000
    verdict(8, "cor2.4-formula-vs-direct-colon", ok, t0, f", {len(records)} pairs")


def test_criterion_09_decomposition_identity():
    t0 = time.time()
    records = json.loads(run_criterion_9(_THREADS))
    ok = all(good for *_, good in records)
    verdict(9, "thm3.1-decomposition-facesets", ok, t0, f", {len(records)} pairs")


def test_criterion_10_suspension_shift():
    t0 = time.time()
    records = json.loads(run_criterion_10(_THREADS))
    ok = all(good for *_, good in records) and len(records) == 1000
    verdict(10, "suspension-homology-shift", ok, t0, f", {len(records)} checks")


def test_criterion_11_dunce_probe():
    t0 = time.time()
    fns = flag_no_square_subdivide(dunce_hat_complex())
    checks = validate_flag_no_square(fns)
    ok = fns.flag_no_square and checks["flag"] and checks["no_square"]
    report = conjecture43_probe(fns)  # default one-hour budget
    reg_ig = report["reg_IG"]
    ok = ok and (reg_ig.get("value") == 3 or reg_ig.get("lower", 0) >= 3)
    reg2 = report["reg_IG2"]
    if "value" in reg2 and reg2["status"] == "ok":
        ok = ok and 4 <= reg2["value"] <= reg_ig["value"] + 2
    else:
        ok = ok and reg2["status"] == "partial"
        ok = ok and 4 <= reg2["lower"] <= reg2["upper"] <= reg_ig["value"] + 2
    verdict(11, "dunce-hat-probe", ok, t0,
            f", reg={reg_ig.get('value')}, bracket=[{reg2.get('lower')},{reg2.get('upper')}]")


def test_criterion_12_thread_determinism():
    t0 = time.time()
    runners = [run_criterion_1, run_criterion_2, run_criterion_3,
               run_criterion_4, run_criterion_5, run_criterion_6,
               run_criterion_7, run_criterion_8, run_criterion_9,
               run_criterion_10]
    ok = True
    for i, runner in enumerate(runners, start=1):
        if runner(_THREADS) != runner(1):
            ok = False
            print(f"  criterion {i} differs between thread counts")
    verdict(12, "thread-count-determinism", ok, t0)
