"""Command-line front end.

JSON documents in, JSON (or text) reports out.  Exit code 0 means success,
1 means a mathematical failure (a counterexample was found and its
certificate emitted), 2 means an input or validation error.  The
ZCHAIN_MAX_RANK environment variable (default 64) caps every materialized
rank; inputs or constructions that would exceed it abort with exit code 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import DocumentError, RankCapExceeded, ZchainError
from .documents import complex_to_doc, doc_to_complex, doc_to_map, map_to_doc, matrix_to_json
from .complexes import tensor
from .factor import factor_acf_fib, factor_cof_afb, gamma
from .intlinalg import snf
from .lifting import LiftProblem, solve_lift
from .modelcls import classify
from .monoidal_proper import check_proper, pushout_product
from .verify import run_verify

DEFAULT_MAX_RANK = 64


def _max_rank():
    raw = os.environ.get("ZCHAIN_MAX_RANK")
    if raw is None:
        return DEFAULT_MAX_RANK
    try:
        value = int(raw)
    except ValueError:
        raise DocumentError(f"ZCHAIN_MAX_RANK must be an integer, got {raw!r}",
                            code="bad_env") from None
    if value <= 0:
        raise DocumentError("ZCHAIN_MAX_RANK must be positive", code="bad_env")
    return value


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}: invalid JSON: {e}", code="bad_json") from e
    except OSError as e:
        raise DocumentError(f"{path}: {e}", code="io_error") from e


def _emit(payload, fmt):
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        _emit_text(payload)


def _emit_text(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        for key in payload:
            value = payload[key]
            if isinstance(value, (dict, list)):
                sys.stdout.write(f"{pad}{key}:\n")
                _emit_text(value, indent + 1)
            else:
                sys.stdout.write(f"{pad}{key}: {value}\n")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                _emit_text(value, indent)
                sys.stdout.write("\n" if indent == 0 else "")
            else:
                sys.stdout.write(f"{pad}- {value}\n")
    else:
        sys.stdout.write(f"{pad}{payload}\n")


def _group_summary(g):
    return {"invariant_factors": [str(d) for d in g.invariant_factors],
            "free_rank": g.free_rank}


def _cmd_snf(args, cap):
    doc = _read_json(args.file)
    data = doc.get("matrix") if isinstance(doc, dict) else doc
    if not isinstance(data, list):
        raise DocumentError("expected {\"matrix\": [[...]]} or a bare matrix",
                            code="bad_document")
    rows = len(data)
    cols = len(data[0]) if rows else 0
    from .documents import json_to_matrix

    m = json_to_matrix(data, rows, cols, "matrix")
    if max(rows, cols) > cap:
        raise RankCapExceeded(f"matrix side {max(rows, cols)} exceeds the cap {cap}")
    res = snf(m)
    return {
        "d": matrix_to_json(res.D),
        "u": matrix_to_json(res.U),
        "v": matrix_to_json(res.V),
        "rank": res.rank,
    }, 0


def _cmd_homology(args, cap):
    c = doc_to_complex(_read_json(args.file), max_rank=cap)
    degrees = [args.degree] if args.degree is not None else list(c.window(1))
    return {
        "homology": [
            dict(degree=n, **_group_summary(c.homology(n).group)) for n in degrees
        ]
    }, 0


def _cmd_classify(args, cap):
    f = doc_to_map(_read_json(args.file), max_rank=cap)
    return classify(f).as_dict(), 0


def _cmd_factorize(args, cap):
    f = doc_to_map(_read_json(args.file), max_rank=cap)
    if args.mode == "cof-acf":
        fact = factor_cof_afb(f, max_rank=cap)
    else:
        fact = factor_acf_fib(f, max_rank=cap)
    return {
        "mode": args.mode,
        "middle": complex_to_doc(fact.middle),
        "left": map_to_doc(fact.left),
        "right": map_to_doc(fact.right),
        "left_classification": fact.left_classification.as_dict(),
        "right_classification": fact.right_classification.as_dict(),
        "summands": {
            str(n): [{"kind": kind, "degree": deg, "generators": k}
                     for (kind, deg, k) in parts]
            for n, parts in fact.summands.items()
        },
    }, 0


def _cmd_resolve(args, cap):
    b = doc_to_complex(_read_json(args.file), max_rank=cap)
    g, p = gamma(b, max_rank=cap)
    return {
        "resolution": complex_to_doc(g),
        "projection": map_to_doc(p),
        "classification": classify(p).as_dict(),
    }, 0


def _cmd_lift(args, cap):
    doc = _read_json(args.file)
    if not isinstance(doc, dict):
        raise DocumentError("lift problem must be an object with i, q, f, g",
                            code="bad_document")
    maps = {}
    for key in ("i", "q", "f", "g"):
        if key not in doc:
            raise DocumentError(f"lift problem is missing the map {key!r}",
                                code="bad_document")
        maps[key] = doc_to_map(doc[key], max_rank=cap)
    problem = LiftProblem(i=maps["i"], q=maps["q"], f=maps["f"], g=maps["g"])
    h = solve_lift(problem)
    return {"lift": map_to_doc(h)}, 0


def _cmd_tensor(args, cap):
    a = doc_to_complex(_read_json(args.first), max_rank=cap)
    b = doc_to_complex(_read_json(args.second), max_rank=cap)
    if a.support and b.support:
        for n in range(a.support[0] + b.support[0], a.support[1] + b.support[1] + 1):
            size = sum(a.group(p).ngens * b.group(n - p).ngens for p in a.degrees())
            if size > cap:
                raise RankCapExceeded(
                    f"tensor degree {n} needs {size} generators, exceeding the cap {cap}")
    return {"tensor": complex_to_doc(tensor(a, b))}, 0


def _cmd_pushout_product(args, cap):
    i = doc_to_map(_read_json(args.first), max_rank=cap)
    j = doc_to_map(_read_json(args.second), max_rank=cap)
    cert = pushout_product(i, j)
    return {
        "map": map_to_doc(cert.k),
        "classification": cert.classification.as_dict(),
        "cokernel": complex_to_doc(cert.coker_k),
        "cokernel_matches_tensor": True,
    }, 0


def _cmd_proper_check(args, cap):
    one = doc_to_map(_read_json(args.first), max_rank=cap)
    other = doc_to_map(_read_json(args.second), max_rank=cap)
    report = check_proper(args.kind, one, other)
    payload = {
        "kind": report.kind,
        "certified": report.certified,
        "opposite_classification": report.classification.as_dict(),
        "ladder": report.ladder,
        "opposite": map_to_doc(report.opposite),
    }
    return payload, 0 if report.certified else 1


def _parse_degrees(spec):
    try:
        lo, hi = spec.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise DocumentError(f"degrees must look like LO..HI, got {spec!r}",
                            code="bad_flag") from None
    if lo > hi:
        raise DocumentError("degree window is empty", code="bad_flag")
    return lo, hi


def _cmd_verify(args, cap):
    degrees = _parse_degrees(args.degrees)
    report = run_verify(args.seed, args.cases, max_order=args.max_order, degrees=degrees)
    return report, 0 if report["status"] == "pass" else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zchain",
        description="Exact model-structure computations on bounded chain "
                    "complexes of finitely generated abelian groups.")
    parser.add_argument("--format", choices=["json", "text"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_snf)

    p = sub.add_parser("homology", help="homology groups of a complex")
    p.add_argument("file")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(fn=_cmd_homology)

    p = sub.add_parser("classify", help="classify a chain map")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("factorize", help="factor a chain map")
    p.add_argument("file")
    p.add_argument("--mode", choices=["cof-acf", "acf-fib"], required=True)
    p.set_defaults(fn=_cmd_factorize)

    p = sub.add_parser("resolve", help="cofibrant replacement of a complex")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_resolve)

    p = sub.add_parser("lift", help="solve a lifting square {i, q, f, g}")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_lift)

    p = sub.add_parser("tensor", help="tensor product of two complexes")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=_cmd_tensor)

    p = sub.add_parser("pushout-product", help="pushout product of two cofibrations")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=_cmd_pushout_product)

    p = sub.add_parser("proper-check", help="certify a properness square")
    p.add_argument("--kind", choices=["pushout", "pullback"], required=True)
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=_cmd_proper_check)

    p = sub.add_parser("verify", help="run the randomized axiom suite")
    p.add_argument("--seed", default="0")
    p.add_argument("--cases", type=int, default=10)
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--degrees", default="-2..2")
    p.set_defaults(fn=_cmd_verify)

    return parser


def _join_degree_flag(argv):
    """Let `--degrees -3..4` parse: argparse would read the value as a flag."""
    out = []
    skip = False
    for k, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok == "--degrees" and k + 1 < len(argv):
            out.append(f"--degrees={argv[k + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_degree_flag(list(argv)))
    try:
        cap = _max_rank()
        payload, code = args.fn(args, cap)
    except (DocumentError, RankCapExceeded) as e:
        _emit({"error": {"type": type(e).__name__, "message": str(e),
                         **getattr(e, "details", {})}}, args.format)
        return 2
    except ZchainError as e:
        _emit({"error": {"type": type(e).__name__, "message": str(e)}}, args.format)
        return 2
    _emit(payload, args.format)
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
