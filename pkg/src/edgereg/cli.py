"""Command-line surface.

Reports are one JSON object per line (resumable for corpus runs), with a
CSV projection and a text rendering of the same fields.  Exit codes:
0 success, 1 usage/input error, 2 a theorem bound failed (engine bug),
3 budget-partial results.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (BoundViolationError, BudgetExceededError, EdgeRegError,
                     ParseError)
from .graphs import (Graph, bits, complement, encode_graph6, is_bipartite,
                     is_chordal, is_cochordal, is_gap_free, parse_graph)
from .ideals import colon_square_formula, format_ideal, parse_ideal
from .corpora import read_graph6_corpus
from .regularity import (Budget, RegularityResult, koszul_oracle_reg,
                         reg_edge_power, reg_monomial, reg_sequence,
                         verify_bounds)

_CSV_FIELDS = ["graph", "s", "value", "method", "certificate_W",
               "certificate_l", "char", "millis", "status"]


def _record(result: RegularityResult, graph=None, s=None,
            include_w=False) -> dict:
    cert_w = cert_l = None
    if result.certificate is not None:
        cert_l = result.certificate.l
        if include_w:
            cert_w = list(result.certificate.w)
    return {
        "graph": graph,
        "s": s,
        "value": result.value,
        "method": result.method,
        "certificate_W": cert_w,
        "certificate_l": cert_l,
        "char": result.char,
        "millis": result.millis,
        "status": result.status,
    }


def _emit(records, fmt: str, out):
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        keys = _CSV_FIELDS if all(set(r) <= set(_CSV_FIELDS) for r in records) \
            else sorted({k for r in records for k in r})
        out.write(",".join(keys) + "\n")
        for r in records:
            row = []
            for k in keys:
                v = r.get(k)
                if isinstance(v, list):
                    v = ";".join(str(x) for x in v)
                row.append("" if v is None else str(v))
            out.write(",".join(row) + "\n")
    else:
        for r in records:
            out.write("  ".join(f"{k}={r[k]}" for k in sorted(r)) + "\n")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(args) -> Graph:
    if args.format == "ideal":
        raise ParseError("this subcommand needs a graph, not an ideal")
    text = _read_input(args.input)
    if args.format == "graph6":
        lines = [l for l in text.splitlines() if l.strip() and not l.startswith("#")]
        if len(lines) != 1:
            raise ParseError(f"expected one graph6 line, found {len(lines)}")
        return parse_graph(lines[0], "graph6")
    return parse_graph(text, "edge-list")


def _budget(args) -> Budget:
    return Budget(seconds=args.budget_seconds, subset_cap=args.budget_subsets)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="edgereg",
        description="Exact Castelnuovo-Mumford regularity of edge ideals and their powers.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", nargs="?", default="-",
                           help="input file, or - for stdin")
        p.add_argument("--format", default="edge-list",
                       choices=["edge-list", "graph6", "ideal"])
        p.add_argument("--char", type=int, default=2, help="field characteristic")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--budget-seconds", type=float, default=None)
        p.add_argument("--budget-subsets", type=int, default=None)
        p.add_argument("--output", default="json", choices=["json", "csv", "text"])
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--certificate", action="store_true",
                       help="include the witness set W in output")
        p.add_argument("--no-fast-path", action="store_true",
                       help="disable the cochordal Froeberg/HHZ shortcuts")

    p = sub.add_parser("reg", help="regularity of an edge ideal")
    common(p)
    p = sub.add_parser("reg-power", help="regularity of I(G)^s")
    common(p)
    p.add_argument("--s", type=int, required=True)
    p = sub.add_parser("reg-seq", help="reg(I(G)^s) for s = 1..smax")
    common(p)
    p.add_argument("--smax", type=int, required=True)
    p = sub.add_parser("reg-ideal", help="regularity of a monomial ideal file")
    common(p)
    p = sub.add_parser("colon", help="the colon ideal (I(G)^2 : ab) by formula")
    common(p)
    p.add_argument("--edge", type=int, nargs=2, required=True, metavar=("A", "B"))
    p = sub.add_parser("props", help="bipartite/chordal/cochordal/gap-free flags")
    common(p)
    p = sub.add_parser("verify", help="theorem bound checks over a graph6 corpus")
    common(p)
    p.add_argument("--corpus", default=None, help="graph6 corpus file (alias for input)")
    p.add_argument("--smax", type=int, default=2)
    p.add_argument("--checks", default="abcde",
                   help="subset of checks a..e to run")
    p = sub.add_parser("dunce", help="flag-no-square dunce hat probe")
    common(p, with_input=False)
    p.add_argument("--max-rounds", type=int, default=4)
    p.add_argument("--edge-sample", type=int, default=20)
    p = sub.add_parser("oracle", help="cross-check engine vs Koszul oracle")
    common(p)
    return ap


def _cmd_reg(args, out) -> int:
    g = _load_graph(args)
    code = 0
    try:
        res = reg_edge_power(g, 1, args.char, _budget(args), args.threads,
                             use_fast_paths=not args.no_fast_path)
    except BudgetExceededError as exc:
        res, code = exc.partial, 3
    _emit([_record(res, encode_graph6(g), 1, args.certificate)], args.output, out)
    return code


def _cmd_reg_power(args, out) -> int:
    g = _load_graph(args)
    code = 0
    try:
        res = reg_edge_power(g, args.s, args.char, _budget(args), args.threads,
                             use_fast_paths=not args.no_fast_path)
    except BudgetExceededError as exc:
        res, code = exc.partial, 3
    _emit([_record(res, encode_graph6(g), args.s, args.certificate)], args.output, out)
    return code


def _cmd_reg_seq(args, out) -> int:
    g = _load_graph(args)
    report = reg_sequence(g, args.smax, args.char, _budget(args), args.threads,
                          use_fast_paths=not args.no_fast_path)
    g6 = encode_graph6(g)
    records = [_record(r, g6, s + 1, args.certificate)
               for s, r in enumerate(report["entries"])]
    if report["observed_stabilization_s"] is not None:
        records.append({"graph": g6, "observed_stabilization_s":
                        report["observed_stabilization_s"], "status": "ok",
                        "note": "observed, not certified"})
    _emit(records, args.output, out)
    return 3 if any(r.get("status") == "partial" for r in records) else 0


def _cmd_reg_ideal(args, out) -> int:
    ideal = parse_ideal(_read_input(args.input))
    code = 0
    try:
        res = reg_monomial(ideal, args.char, _budget(args), args.threads)
    except BudgetExceededError as exc:
        res, code = exc.partial, 3
    _emit([_record(res, None, None, args.certificate)], args.output, out)
    return code


def _cmd_colon(args, out) -> int:
    g = _load_graph(args)
    a, b = args.edge
    ideal = colon_square_formula(g, a, b)
    if args.output == "json":
        gens = [format_ideal(ideal).splitlines()[1 + i]
                for i in range(len(ideal.gens))]
        out.write(json.dumps({"graph": encode_graph6(g), "edge": [a, b],
                              "nvars": ideal.nvars, "gens": gens},
                             sort_keys=True, separators=(",", ":")) + "\n")
    else:
        out.write(format_ideal(ideal))
    return 0


def _cmd_props(args, out) -> int:
    g = _load_graph(args)
    parts = is_bipartite(g)
    rec = {
        "graph": encode_graph6(g),
        "n": g.n,
        "edges": g.edge_count(),
        "bipartite": parts is not None,
        "chordal": is_chordal(g) is not None,
        "cochordal": is_cochordal(g),
        "gap_free": is_gap_free(g),
    }
    if parts:
        rec["bipartition_L"] = list(bits(parts[0]))
        rec["bipartition_R"] = list(bits(parts[1]))
    _emit([rec], args.output, out)
    return 0


def _cmd_verify(args, out) -> int:
    path = args.corpus if args.corpus is not None else args.input
    corpus = read_graph6_corpus(_read_input(path))
    report = verify_bounds(corpus, args.smax, args.char, _budget(args),
                           args.threads, checks=args.checks)
    _emit(report["items"], args.output, out)
    summary = {"summary": True, "graphs": len(report["items"]),
               "all_pass": report["all_pass"], "checks": report["checks"]}
    _emit([summary], args.output, out)
    if not report["all_pass"]:
        return 3  # skipped items are budget-partials; FAILs raise instead
    return 0


def _cmd_dunce(args, out) -> int:
    from .constructions import (conjecture43_probe, dunce_hat_complex,
                                flag_no_square_subdivide)
    lc = flag_no_square_subdivide(dunce_hat_complex(), args.max_rounds)
    if not lc.flag_no_square:
        out.write(json.dumps({"status": "failed",
                              "reason": "validators did not pass"}) + "\n")
        return 2
    budget = _budget(args)
    if budget.seconds is None and budget.subset_cap is None:
        budget = Budget(seconds=3600.0, subset_cap=5_000_000)
    report = conjecture43_probe(lc, budget, args.char, args.threads,
                                edge_sample=args.edge_sample, seed=args.seed)
    out.write(json.dumps(report, sort_keys=True, separators=(",", ":"),
                         default=str) + "\n")
    return 3 if report["status"] == "partial" else 0


def _cmd_oracle(args, out) -> int:
    if args.format == "ideal":
        ideal = parse_ideal(_read_input(args.input))
        graph_id = None
    else:
        g = _load_graph(args)
        from .ideals import edge_ideal
        ideal = edge_ideal(g)
        graph_id = encode_graph6(g)
    engine = reg_monomial(ideal, args.char, _budget(args), args.threads)
    oracle, table = koszul_oracle_reg(ideal, args.char)
    rec = {"graph": graph_id, "engine_value": engine.value,
           "oracle_value": oracle.value, "agree": engine.value == oracle.value,
           "betti_table": {f"{i},{j}": b for (i, j), b in table.entries},
           "char": args.char,
           "status": "ok" if engine.value == oracle.value else "FAIL"}
    _emit([rec], args.output, out)
    return 0 if rec["agree"] else 2


_DISPATCH = {
    "reg": _cmd_reg,
    "reg-power": _cmd_reg_power,
    "reg-seq": _cmd_reg_seq,
    "reg-ideal": _cmd_reg_ideal,
    "colon": _cmd_colon,
    "props": _cmd_props,
    "verify": _cmd_verify,
    "dunce": _cmd_dunce,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return _DISPATCH[args.command](args, sys.stdout)
    except BoundViolationError as exc:
        sys.stderr.write(f"BOUND FAIL: {exc}\n")
        sys.stderr.write(json.dumps(exc.bundle, sort_keys=True) + "\n")
        return 2
    except BudgetExceededError as exc:
        sys.stderr.write(f"budget exhausted: {exc}\n")
        return 3
    except (EdgeRegError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
