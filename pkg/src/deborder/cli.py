"""Command-line interface: ``deborder <command> ...``.

Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
3 computation error. Errors go to stderr as ``error: <Reason>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures, textio
from .apolarity import hilbert_function
from .border import limit_of_decomposition
from .errors import ArityMismatch, ContextMismatch, DeborderError, ParseError
from .gad import check_gad, extract_gad
from .oracles import Tag, catalecticant_lower_bound, classify_small_border, normal_form_sample
from .synthesis import DEFAULT_MAX_CONDUCTOR, bounds, deborder

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3

FIXTURES = ("intro-tangent", "eq1-fd", "eq2-wild", "normal-form")


class _InputError(Exception):
    def __init__(self, exc: DeborderError):
        self.exc = exc


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str | None, parser):
    try:
        return parser(_read(path))
    except (ParseError, ArityMismatch, ContextMismatch) as exc:
        raise _InputError(exc) from None


def _emit(args, obj, comments=()):
    if args.json:
        data = json.loads(textio.to_json(obj))
        return data
    for c in comments:
        print(f"# {c}")
    sys.stdout.write(textio.format_any(obj))
    return None


def _print_json(data):
    print(json.dumps(data, sort_keys=False))


# ---------------------------------------------------------------------------
# commands


def cmd_deborder(args) -> int:
    B = _load(args.border, textio.parse_border)
    W = deborder(B, args.max_conductor)
    report = bounds(max(B.r, 1), max(B.degree, 1), B.nvars)
    path = "gad" if B.degree >= B.r - 1 else "essential-variables fallback"
    comments = [f"path: {path}", "bounds: " + " ".join(report.lines())]
    data = _emit(args, W, comments)
    if data is not None:
        data["bounds"] = report.as_dict()
        data["path"] = path
        _print_json(data)
    return EXIT_OK


def cmd_gad(args) -> int:
    B = _load(args.border, textio.parse_border)
    G = extract_gad(B)
    data = _emit(args, G)
    if data is not None:
        _print_json(data)
    return EXIT_OK


def _report(args, ok: bool, reason: str | None = None) -> int:
    if args.json:
        _print_json({"ok": ok, "reason": reason})
    else:
        print("ok" if ok else f"mismatch: {reason}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_border(args) -> int:
    B = _load(args.border, textio.parse_border)
    f = _load(args.poly, textio.parse_poly)
    if (B.nvars, B.degree) != (f.nvars, f.degree):
        return _report(args, False, "shape differs from the polynomial")
    return _report(args, limit_of_decomposition(B) == f, "limit differs from the polynomial")


def cmd_verify_waring(args) -> int:
    f = _load(args.poly, textio.parse_poly)
    W = _load(args.waring, textio.parse_waring)
    return _report(args, W.verify(f), "expansion differs from the polynomial")


def cmd_verify_gad(args) -> int:
    f = _load(args.poly, textio.parse_poly)
    G = _load(args.gad, textio.parse_gad)
    reason = check_gad(G, f)
    return _report(args, reason is None, reason)


def cmd_rank_bounds(args) -> int:
    try:
        report = bounds(args.r, args.d, args.n)
    except ValueError as exc:
        print(f"error: UsageError: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        _print_json(report.as_dict())
    else:
        print("\n".join(report.lines()))
    return EXIT_OK


def _witness_text(value) -> str:
    if isinstance(value, (list, tuple)):
        parts = []
        for v in value:
            if hasattr(v, "to_literals"):
                parts.append("(" + " ".join(v.to_literals()) + ")")
            elif hasattr(v, "to_literal"):
                parts.append(v.to_literal())
            else:
                parts.append(str(v))
        return " ".join(parts)
    return str(value)


def cmd_classify(args) -> int:
    f = _load(args.poly, textio.parse_poly)
    cert = classify_small_border(f)
    witness = {k: _witness_text(v) for k, v in cert.witness.items()}
    if args.json:
        _print_json({"kind": cert.kind, "value": cert.value, "tag": str(cert.tag), "witness": witness})
        return EXIT_OK
    print(f"certificate kind={cert.kind} value={cert.value} tag={cert.tag}")
    for k, v in witness.items():
        print(f"witness {k}: {v}")
    src = args.poly or "-"
    print(f"# lower bound check: deborder hilbert {src}  (max entry = {catalecticant_lower_bound(f)})")
    return EXIT_OK


def cmd_hilbert(args) -> int:
    f = _load(args.poly, textio.parse_poly)
    h = hilbert_function(f)
    if args.json:
        _print_json({"values": list(h.values)})
    else:
        print(h)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    name = args.name
    if name in ("intro-tangent", "eq1-fd") and args.d is None:
        print(f"error: UsageError: fixture {name} needs --d", file=sys.stderr)
        return EXIT_USAGE
    try:
        if name == "intro-tangent":
            B = fixtures.tangent_border(args.d)
        elif name == "eq1-fd":
            B = fixtures.three_tangents(args.d)
        elif name == "eq2-wild":
            B = fixtures.wild_cubic()
        else:
            if args.tag is None or args.d is None:
                print("error: UsageError: normal-form needs --tag and --d", file=sys.stderr)
                return EXIT_USAGE
            obj = normal_form_sample(args.tag, args.d, args.seed)
            data = _emit(args, obj)
            if data is not None:
                _print_json(data)
            return EXIT_OK
    except ValueError as exc:
        print(f"error: UsageError: {exc}", file=sys.stderr)
        return EXIT_USAGE
    obj = limit_of_decomposition(B) if args.poly else B
    data = _emit(args, obj)
    if data is not None:
        _print_json(data)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--max-conductor",
        type=int,
        default=DEFAULT_MAX_CONDUCTOR,
        metavar="N",
        help="refuse computations needing roots of unity of order above N (default %(default)s)",
    )
    p = argparse.ArgumentParser(
        prog="deborder",
        description="Exact debordering of border Waring decompositions.",
        parents=[common],
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("deborder", parents=[common], help="border decomposition -> Waring decomposition")
    s.add_argument("border", nargs="?", help="border file (default: stdin)")
    s.set_defaults(func=cmd_deborder)

    s = sub.add_parser("gad", parents=[common], help="border decomposition -> generalized additive decomposition")
    s.add_argument("border", nargs="?", help="border file (default: stdin)")
    s.set_defaults(func=cmd_gad)

    s = sub.add_parser("verify-border", parents=[common], help="check that a border decomposition has limit POLY")
    s.add_argument("border")
    s.add_argument("poly")
    s.set_defaults(func=cmd_verify_border)

    s = sub.add_parser("verify-waring", parents=[common], help="check a Waring decomposition of POLY")
    s.add_argument("poly")
    s.add_argument("waring")
    s.set_defaults(func=cmd_verify_waring)

    s = sub.add_parser("verify-gad", parents=[common], help="check a generalized additive decomposition of POLY")
    s.add_argument("poly")
    s.add_argument("gad")
    s.set_defaults(func=cmd_verify_gad)

    s = sub.add_parser("rank-bounds", parents=[common], help="print the rank bounds for (r, d, n)")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_rank_bounds)

    s = sub.add_parser("classify", parents=[common], help="classify a form of border rank at most 3")
    s.add_argument("poly", nargs="?", help="poly file (default: stdin)")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("hilbert", parents=[common], help="Hilbert function of the apolar algebra")
    s.add_argument("poly", nargs="?", help="poly file (default: stdin)")
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("fixtures", parents=[common], help="write a worked example")
    s.add_argument("name", choices=FIXTURES)
    s.add_argument("--d", type=int)
    s.add_argument("--tag", choices=[t.value for t in Tag if t is not Tag.UNKNOWN])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--poly", action="store_true", help="write the limit polynomial instead")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as wrapped:
        exc = wrapped.exc
        print(f"error: {exc.reason}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: IOError: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DeborderError as exc:
        print(f"error: {exc.reason}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
