"""Command-line front end.

Exit codes: 0 success, 1 input could not be read or parsed, 2 the logic is
not well-disciplined, 3 the conclusion is not a consequence, 4 a fuzz
suite found a counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .builtins import CATALOG, get_logic
from .engine import compute_closure, derive_proof, query
from .errors import DLError, NotAConsequence, NotWellDisciplined
from .harness import report_lines, run_fuzz
from .logic import check_logic, parse_logic
from .tags import parse_conclusion
from .theory import parse_theory

EXIT_OK, EXIT_PARSE, EXIT_DISCIPLINE, EXIT_NOT_CONSEQUENCE, EXIT_FUZZ = 0, 1, 2, 3, 4

TAG_HELP = """\
tags are written in ASCII:
  delta     definite provability (facts and strict rules)
  partial   defeasible provability with team defeat
  lambda    potential defeasible provability (support for the parallel logic)
  spartial  defeasible provability in the parallel logic
a conclusion is written SIGN TAG LITERAL, e.g. "+partial ~fly(tweety)".
"""


class _InputError(Exception):
    pass


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _InputError(f"cannot read {path}: {e.strerror}") from None


def _load_logic(args, default=None):
    if args.logic_file:
        return parse_logic(_read(args.logic_file))
    name = args.logic or default
    if name is None:
        raise _InputError("one of --logic or --logic-file is required")
    return get_logic(name)


def _load_theory(path):
    return parse_theory(_read(path))


def _emit(out, rec):
    out.write(json.dumps(rec, sort_keys=True) + "\n")


def _refuse(err, args, out):
    if args.format == "json":
        _emit(out, {"error": "not well-disciplined", "report": err.report.to_json()})
    else:
        out.write(err.report.render() + "\n")
    print(f"error: {err}", file=sys.stderr)
    return EXIT_DISCIPLINE


# -- commands --------------------------------------------------------------

def cmd_conclusions(args, out):
    L = _load_logic(args)
    D = _load_theory(args.theory)
    try:
        P = compute_closure(L, D).conclusions
    except NotWellDisciplined as e:
        return _refuse(e, args, out)
    rank = {t: i for i, t in enumerate(L.tags)}
    for c in sorted(P, key=lambda c: (rank[c.tag], c.literal.sort_key())):
        if args.format == "json":
            _emit(out, c.to_json())
        else:
            out.write(f"{c}\n")
    return EXIT_OK


def cmd_query(args, out):
    L = _load_logic(args)
    D = _load_theory(args.theory)
    c = parse_conclusion(args.conclusion)
    try:
        proved = query(L, D, c)
    except NotWellDisciplined as e:
        return _refuse(e, args, out)
    verdict = "Proved" if proved else "NotProved"
    if args.format == "json":
        _emit(out, {"conclusion": c.to_json(), "result": verdict})
    else:
        out.write(f"{verdict}\n")
    return EXIT_OK if proved else EXIT_NOT_CONSEQUENCE


def _step_json(rec):
    return {
        "step": rec.step,
        "conclusion": rec.conclusion.to_json(),
        "bindings": [[v, str(x)] for v, x in rec.bindings],
        "witnesses": [{"step": s, "conclusion": str(w)} for w, s in rec.witnesses],
        "closure_tests": [{"closure": n, "conclusion": str(w), "member": hit}
                          for n, w, hit in rec.closure_tests],
        "facts": [{"literal": str(q), "fact": f} for q, f in rec.facts],
        "superiority": [{"superior": hi, "inferior": lo, "holds": h}
                        for hi, lo, h in rec.superiority],
    }


def cmd_explain(args, out):
    L = _load_logic(args)
    D = _load_theory(args.theory)
    c = parse_conclusion(args.conclusion)
    try:
        proof = derive_proof(L, D, c)
    except NotWellDisciplined as e:
        return _refuse(e, args, out)
    except NotAConsequence as e:
        if args.format == "json":
            _emit(out, {"conclusion": c.to_json(), "result": "NotProved"})
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_CONSEQUENCE
    if args.format == "json":
        for rec in proof.provenance:
            _emit(out, _step_json(rec))
    else:
        out.write(proof.format() + "\n")
    return EXIT_OK


def cmd_check_logic(args, out):
    if args.path:
        L = parse_logic(_read(args.path))
    else:
        L = _load_logic(args)
    report = check_logic(L)
    if args.format == "json":
        _emit(out, report.to_json())
    else:
        out.write(report.render() + "\n")
    return EXIT_OK if report.well_disciplined else EXIT_DISCIPLINE


def cmd_fuzz(args, out):
    L = _load_logic(args)
    report = check_logic(L)
    if not report.well_disciplined:
        return _refuse(NotWellDisciplined(report), args, out)
    verdicts = run_fuzz(L, trials=args.trials, seed=args.seed)
    if args.format == "json":
        for line in report_lines(verdicts):
            out.write(line + "\n")
    else:
        for v in verdicts:
            out.write(v.summary() + "\n")
            for f in v.failures:
                out.write("  " + json.dumps(f, sort_keys=True) + "\n")
        ok = all(v.passed for v in verdicts)
        out.write(f"{'all properties hold' if ok else 'counterexamples found'} "
                  f"(logic {L.name}, seed {args.seed}, trials {args.trials})\n")
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_FUZZ


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--logic", choices=CATALOG, help="a shipped logic")
    src.add_argument("--logic-file", metavar="PATH", help="a logic definition (.dlx)")
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="json writes one record per line")

    p = argparse.ArgumentParser(
        prog="dlmeta", description="Run defeasible logics defined as data.",
        epilog=TAG_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("conclusions", parents=[common], help="print every conclusion")
    s.add_argument("theory", help="theory file (.dfl)")
    s.set_defaults(func=cmd_conclusions)

    s = sub.add_parser("query", parents=[common], help="is a conclusion derivable?")
    s.add_argument("theory")
    s.add_argument("conclusion", help='e.g. "+partial ~fly(tweety)"')
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("explain", parents=[common], help="print a proof of a conclusion")
    s.add_argument("theory")
    s.add_argument("conclusion")
    s.set_defaults(func=cmd_explain)

    s = sub.add_parser("check-logic", parents=[common], help="check a logic's discipline")
    s.add_argument("path", nargs="?", help="logic definition (.dlx)")
    s.set_defaults(func=cmd_check_logic)

    s = sub.add_parser("fuzz", parents=[common], help="run the randomized property suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=100)
    s.set_defaults(func=cmd_fuzz)

    for name in ("conclusions", "query", "explain", "check-logic", "fuzz"):
        sub.choices[name].epilog = TAG_HELP
        sub.choices[name].formatter_class = argparse.RawDescriptionHelpFormatter
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command != "check-logic" and not args.logic and not args.logic_file:
        args.logic = "classic"
    try:
        return args.func(args, out)
    except (_InputError, DLError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
