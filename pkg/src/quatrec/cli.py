"""Command line interface.

Exit codes: 0 affirmative, 1 refusal with a witness, 2 unknown or
inconclusive, 3 input error.  JSON reports are written with sorted keys
so that identical invocations give identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import BUILTIN_NAMES, Algebra, Element, builtin, validate
from .analysis import (
    DEFAULT_HEIGHT,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    HypothesisReport,
    _pull_back,
    center_basis,
    check_hypotheses,
)
from .enumeration import GuardRailError, enumerate_algebras
from .exact_math import parse_scalar
from .files import AlgebraFileError, load_algebra, save_algebra
from .localization import from_lifted
from .recognition import (
    CentralInput,
    RecognitionError,
    decompose,
    quadratic_certificate,
    recognize,
)

EXIT_OK, EXIT_REFUSED, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress: bool) -> argparse.ArgumentParser:
        # global flags may appear before or after the command; the
        # subcommand copies must not overwrite an earlier value
        p = argparse.ArgumentParser(add_help=False)
        for flag, kind, default in (
            ("--format", str, "json"),
            ("--seed", int, DEFAULT_SEED),
            ("--samples", int, DEFAULT_SAMPLES),
            ("--height", int, DEFAULT_HEIGHT),
        ):
            choices = ("json", "text") if flag == "--format" else None
            p.add_argument(flag, type=kind, choices=choices, default=argparse.SUPPRESS if suppress else default)
        return p

    common = flags(suppress=True)
    parser = _Parser(prog="quatrec", description=__doc__.splitlines()[0], parents=[flags(suppress=False)])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_text in (
        ("check", "test both commutator hypotheses"),
        ("recognize", "run the full quaternion recognition"),
        ("center", "compute the center and decide whether it is a field"),
    ):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("file")
    for name, help_text in (
        ("decompose", "write an element over 1, i, j, k"),
        ("quadratic", "quadratic relation a x^2 + b x + c = 0 with central a, b, c"),
    ):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("file")
        p.add_argument("--element", required=True, help="comma separated coordinates, e.g. 1,2,3,4")
    p = sub.add_parser("enumerate", help="sweep all small tables over F_p", parents=[common])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--field", type=int, required=True)
    p.add_argument("--force", action="store_true", help="lift the size guard rails")
    p = sub.add_parser("examples", help="export a builtin presentation", parents=[common])
    p.add_argument("--name", required=True, help=f"one of {', '.join(sorted(BUILTIN_NAMES))} or a descriptor")
    p.add_argument("--out", required=True)
    return parser


# ---------------------------------------------------------------------------
# helpers


def _params(args) -> dict:
    return {"seed": args.seed, "samples": args.samples, "height": args.height}


def _load(path: str) -> Algebra:
    try:
        return load_algebra(path)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except AlgebraFileError as err:
        raise InputError(str(err), err.witness) from None


def _parse_element(A: Algebra, text: str) -> Element:
    parts = text.split(",")
    if len(parts) != A.dim:
        raise InputError(f"--element: expected {A.dim} coordinates, got {len(parts)}")
    try:
        return A.element([parse_scalar(t, A.base) for t in parts])
    except ValueError as err:
        raise InputError(f"--element: {err}") from None


def _refusal_code(witnesses) -> int:
    return EXIT_REFUSED if witnesses else EXIT_UNKNOWN


# ---------------------------------------------------------------------------
# commands; each returns (result dict, exit code)


def cmd_check(args):
    A = _load(args.file)
    report = check_hypotheses(A, args.samples, args.height, args.seed)
    recognition = None
    if report.h2.holds and not (report.h1.holds or report.h1.fails):
        # sampling alone cannot confirm h1; a division certificate can
        outcome = recognize(A, args.samples, args.height, args.seed)
        recognition = outcome.status
        if outcome.hypotheses is not None and (outcome.hypotheses.h1.holds or outcome.hypotheses.h1.fails):
            h1 = outcome.hypotheses.h1
            if outcome.localized:
                h1 = _pull_back(A, h1)
            report = HypothesisReport(h1, report.h2)
    witnesses = [v.witness.to_json() for v in (report.h2, report.h1) if v.fails and v.witness]
    if report.h1.fails or report.h2.fails:
        code = _refusal_code(witnesses)
    elif report.h1.holds and report.h2.holds:
        code = EXIT_OK
    else:
        code = EXIT_UNKNOWN
    result = {"hypotheses": report.to_json(), "witnesses": witnesses, "recognition_status": recognition}
    return result, code


def cmd_recognize(args):
    A = _load(args.file)
    outcome = recognize(A, args.samples, args.height, args.seed)
    if outcome.status == "quaternion":
        code = EXIT_OK if outcome.division_certified else EXIT_UNKNOWN
    elif outcome.status == "refused":
        code = _refusal_code(outcome.witnesses)
    else:
        code = EXIT_UNKNOWN
    return outcome.to_json(), code


def cmd_decompose(args):
    A = _load(args.file)
    x = _parse_element(A, args.element)
    outcome = recognize(A, args.samples, args.height, args.seed)
    result = {"recognition": {"status": outcome.status, "stage": outcome.stage, "reason": outcome.reason}}
    if outcome.status != "quaternion":
        result["witnesses"] = [w.to_json() for w in outcome.witnesses]
        code = _refusal_code(outcome.witnesses) if outcome.status == "refused" else EXIT_UNKNOWN
        return result, code
    F = outcome.algebra
    qs = outcome.structure
    result["basis"] = outcome.structure_source
    result["structure"] = qs.to_json()
    xf = F.element(x.coords)
    try:
        dec = decompose(F, qs, xf)
    except RecognitionError as err:
        result["reason"] = f"{type(err).__name__}: {err.reason}"
        wits = [err.witness] if err.witness is not None else []
        result["witnesses"] = [w.to_json() for w in wits]
        return result, _refusal_code(wits)
    result["decomposition"] = dec.to_json()
    scalars = dec.scalars(qs.center)
    result["coordinates"] = None if scalars is None else [str(c) for c in scalars]
    if outcome.localized:
        result["fractions"] = [str(from_lifted(A, c)) for c in dec.coefficients]
    if not dec.m.is_zero():
        wits = [dec.zero_divisor] if dec.zero_divisor is not None else []
        result["witnesses"] = [w.to_json() for w in wits]
        return result, _refusal_code(wits)
    return result, EXIT_OK


def cmd_center(args):
    A = _load(args.file)
    F = A.lift()
    C = center_basis(F, args.seed)
    result = {"center": C.to_json(), "localized": F is not A}
    if C.is_field == "yes":
        return result, EXIT_OK
    if C.is_field == "no":
        result["witnesses"] = [C.zero_divisor.to_json()] if C.zero_divisor else []
        return result, _refusal_code(result["witnesses"])
    return result, EXIT_UNKNOWN


def cmd_quadratic(args):
    A = _load(args.file)
    x = _parse_element(A, args.element)
    try:
        cert = quadratic_certificate(A, x)
    except CentralInput:
        return {"central": True, "note": "x is central: x - x * 1 = 0 is the trivial relation"}, EXIT_OK
    except RecognitionError as err:
        wits = [err.witness] if err.witness is not None else []
        result = {"reason": f"{type(err).__name__}: {err.reason}", "witnesses": [w.to_json() for w in wits]}
        return result, _refusal_code(wits)
    result = {"central": False, "certificate": cert.to_json(), "residual": cert.residual().to_json()}
    return result, EXIT_OK


def cmd_enumerate(args):
    try:
        summary = enumerate_algebras(args.dim, args.field, force=args.force)
    except (GuardRailError, ValueError) as err:
        raise InputError(str(err)) from None
    code = EXIT_OK if summary.consistent else EXIT_REFUSED
    return summary.to_json(), code


def cmd_examples(args):
    try:
        A = builtin(args.name)
    except ValueError as err:
        raise InputError(f"{err}; known names: {', '.join(sorted(BUILTIN_NAMES))}") from None
    save_algebra(A, args.out)
    return {"name": args.name, "out": args.out, "dim": A.dim, "base": str(A.base), "valid": validate(A).ok}, EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "recognize": cmd_recognize,
    "decompose": cmd_decompose,
    "center": cmd_center,
    "quadratic": cmd_quadratic,
    "enumerate": cmd_enumerate,
    "examples": cmd_examples,
}


# ---------------------------------------------------------------------------
# reporting


def _input_info(args):
    path = getattr(args, "file", None)
    if path is None or not Path(path).is_file():
        return None if path is None else {"path": path, "sha256": None}
    return {"path": path, "sha256": hashlib.sha256(Path(path).read_bytes()).hexdigest()}


def _command_args(args) -> dict:
    skip = {"command", "format", "seed", "samples", "height", "file"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _render_text(value, indent=0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, list) and all(not isinstance(v, (dict, list)) for v in item):
                lines.append(f"{pad}{key}: [{', '.join(_scalar_text(v) for v in item)}]")
            elif isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(item)}")
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            lines.append(f"{pad}[{', '.join(_scalar_text(v) for v in value)}]")
        else:
            for item in value:
                sub = _render_text(item, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}" if sub else f"{pad}-")
                lines.extend(sub[1:])
    else:
        lines.append(f"{pad}{_scalar_text(value)}")
    return lines


def _scalar_text(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)
    return "\n".join(_render_text(report))


def run(argv=None):
    """Parse ``argv`` and run the command; returns (exit code, report dict)."""
    return _execute(build_parser().parse_args(argv))


def _execute(args):
    report = {
        "command": args.command,
        "args": _command_args(args),
        "input": _input_info(args),
        "params": _params(args),
        "version": __version__,
    }
    try:
        result, code = COMMANDS[args.command](args)
    except InputError as err:
        result = {"error": str(err), "witnesses": [err.witness.to_json()] if err.witness else []}
        code = EXIT_INPUT
    report["result"] = result
    report["exit_code"] = code
    return code, report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, report = _execute(args)
    print(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
