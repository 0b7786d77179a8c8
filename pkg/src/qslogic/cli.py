"""
Command-line front end.

Exit codes: 0 affirmative (ok / valid / derivable / true), 1 negative with a
witness or report, 2 unknown (search bound exhausted), 3 input error.
Output is line-oriented ``key: value`` text; models are printed in the
JSON model-file layout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .formula import FormulaError, Signature, parse, render, is_basic
from .kripke import ModelError, dump_model, eval_formula, load_model
from .proofs import ScriptError, check_proof, load_script, theorem_library
from .qdeduction import Derivability, quantum_derives
from .suite import run_suite
from .validity import BoundTooLarge, Countermodel, SearchBound, check_validity

OK, NEGATIVE, UNKNOWN, INPUT_ERROR = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(INPUT_ERROR)


def _shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bound", type=int, default=3, help="maximum number of worlds")
    p.add_argument("--class", dest="frame_class", default="S4", choices=["K", "T", "S4", "S5"])
    p.add_argument("--ortho", default="on", choices=["on", "off"],
                   help="forbid declared orthocomplement pairs from holding together")
    p.add_argument("--sig", help="JSON file with atoms and perp pairs")
    p.add_argument("--auto-atoms", action="store_true",
                   help="accept atoms missing from --sig")
    p.add_argument("--literal-meas", action="store_true",
                   help="evaluate M(a*b) without the reflexive-world conjunct")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qslogic", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse and print the canonical form")
    p.add_argument("formula")
    _shared(p)

    p = sub.add_parser("eval", help="evaluate a formula in a model file")
    p.add_argument("formula")
    p.add_argument("--model", required=True)
    p.add_argument("--world")
    _shared(p)

    for name in ("validate", "countermodel"):
        p = sub.add_parser(name, help="bounded validity check")
        p.add_argument("formula")
        p.add_argument("--out", help="write the countermodel file here")
        _shared(p)

    p = sub.add_parser("check-proof", help="check a proof script file")
    p.add_argument("file", nargs="?")
    p.add_argument("--library", action="store_true", help="check the bundled theorem scripts")
    _shared(p)

    p = sub.add_parser("qderive", help="quantum deduction")
    p.add_argument("--gamma", required=True,
                   help="formulas separated by ';', or a file with one per line / a JSON list")
    p.add_argument("--alpha", required=True)
    _shared(p)

    p = sub.add_parser("suite", help="run the acceptance battery")
    _shared(p)
    return parser


def _signature(args) -> Signature | None:
    if not args.sig:
        return None
    with open(args.sig) as fh:
        data = json.load(fh)
    return Signature.from_pairs(data.get("atoms", []), [tuple(p) for p in data.get("perp", [])])


def _bound(args) -> SearchBound:
    return SearchBound(args.bound, args.frame_class, args.ortho == "on", args.literal_meas)


def _read(text: str, sig: Signature | None, args):
    return parse(text, sig, strict=False if args.auto_atoms else None)


def _gamma_texts(source: str) -> list[str]:
    if os.path.isfile(source):
        with open(source) as fh:
            content = fh.read()
        if content.lstrip().startswith("["):
            return list(json.loads(content))
        return [ln.strip() for ln in content.splitlines() if ln.strip() and not ln.startswith("#")]
    return [t.strip() for t in source.split(";") if t.strip()]


def _cmd_parse(args, out) -> int:
    f = _read(args.formula, _signature(args), args)
    print(f"formula: {render(f)}", file=out)
    print(f"basic: {str(is_basic(f)).lower()}", file=out)
    return OK


def _cmd_eval(args, out) -> int:
    model = load_model(args.model)
    if args.literal_meas:
        from dataclasses import replace
        model = replace(model, literal_meas=True)
    f = parse(args.formula, model.sig, strict=False)
    model = model.extend_domain([f])
    worlds = [args.world] if args.world else list(model.worlds)
    for w in worlds:
        if w not in model.worlds:
            raise ModelError(f"unknown world {w!r}")
    values = {w: eval_formula(model, w, f) for w in worlds}
    for w in worlds:
        print(f"{w}: {str(values[w]).lower()}", file=out)
    return OK if all(values.values()) else NEGATIVE


def _cmd_validate(args, out) -> int:
    f = _read(args.formula, _signature(args), args)
    verdict = check_validity(f, _bound(args), _signature(args))
    print(f"verdict: {verdict}", file=out)
    if isinstance(verdict, Countermodel):
        print(f"world: {verdict.world}", file=out)
        text = dump_model(verdict.model)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
            print(f"model_file: {args.out}", file=out)
        print("model:", file=out)
        print(text, file=out)
        return NEGATIVE
    return OK


def _cmd_check_proof(args, out) -> int:
    if args.library:
        scripts = list(theorem_library().values())
    elif args.file:
        scripts = [load_script(args.file)]
    else:
        raise ScriptError("give a script file or --library")
    code = OK
    for script in scripts:
        report = check_proof(script)
        print(f"proof: {script.name}", file=out)
        print(f"status: {'ok' if report.ok else 'failed'}", file=out)
        if not report.ok:
            print(f"line: {report.line}", file=out)
            print(f"reason: {report.message}", file=out)
            code = NEGATIVE
    return code


def _cmd_qderive(args, out) -> int:
    sig = _signature(args)
    gamma = [_read(t, sig, args) for t in _gamma_texts(args.gamma)]
    alpha = _read(args.alpha, sig, args)
    result = quantum_derives(gamma, alpha, _bound(args), sig)
    print(f"derivable: {result.answer.value}", file=out)
    for line in result.trace.lines():
        print(line, file=out)
    return {Derivability.YES: OK, Derivability.NO: NEGATIVE, Derivability.UNKNOWN: UNKNOWN}[result.answer]


def _cmd_suite(args, out) -> int:
    criteria = run_suite()
    for c in criteria:
        print(f"{c.number}. {c.title}: {'PASS' if c.passed else 'FAIL'}", file=out)
        for description, ok in c.checks:
            if not ok:
                print(f"   failed: {description}", file=out)
    return OK if all(c.passed for c in criteria) else NEGATIVE


_COMMANDS = {
    "parse": _cmd_parse, "eval": _cmd_eval, "validate": _cmd_validate,
    "countermodel": _cmd_validate, "check-proof": _cmd_check_proof,
    "qderive": _cmd_qderive, "suite": _cmd_suite,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except BoundTooLarge as e:
        print("verdict: Unknown", file=out)
        print(f"reason: {e}", file=out)
        return UNKNOWN
    except (FormulaError, ModelError, ScriptError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
