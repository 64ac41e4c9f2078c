"""Command-line interface.

Exit codes: 0 pass, 1 a check or replay failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .algebra import bracket
from .derivations import Window, derivation_space
from .errors import InvalidParameter, PgcaError
from .exprio import dump_json, load_instance_file, parse_element, print_element, save_report
from .fuzz import PROPERTIES, run_fuzz
from .twolocal import (
    extract_derivation,
    replay_lemma31,
    replay_lemma32,
    replay_lemma33,
    replay_lemma34,
    replay_lemma35,
)

LEMMAS = ("3.1i", "3.1ii", "3.2", "3.3", "3.4", "3.5")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--window", type=int, default=12, help="window radius N (default 12)")
    p.add_argument("--interior", type=int, default=None, help="interior radius (default N // 2)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="pgca", description="Exact computations in the planar Galilean conformal algebra."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="bracket two elements")
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("der-solve", parents=[common], help="solve for homogeneous derivations on a window")
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("replay", parents=[common], help="replay one lemma as a finite computation")
    p.add_argument("--lemma", choices=LEMMAS, required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--x")
    p.add_argument("--probes", help="comma-separated probe indices")

    p = sub.add_parser("extract", parents=[common], help="extract the derivation behind a 2-local instance")
    p.add_argument("--file", required=True)

    p = sub.add_parser("fuzz", parents=[common], help="seeded property fuzzing")
    p.add_argument("--what", choices=sorted(PROPERTIES), required=True)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _window(args) -> Window:
    return Window(args.window, args.interior)


def _cmd_bracket(args):
    x, y = parse_element(args.x), parse_element(args.y)
    z = bracket(x, y)
    doc = {"command": "bracket", "status": "pass", "exit_code": 0, "x": x, "y": y, "result": z}
    return doc, print_element(z)


def _cmd_der_solve(args):
    w = _window(args)
    space = derivation_space(w, args.degree)
    ok = space.matches and space.contains_outer is not False
    expected = ", ".join(str(d) for d in space.expected)
    doc = {
        "command": "der-solve",
        "status": "pass" if ok else "fail",
        "exit_code": 0 if ok else 1,
        "window": w.radius,
        "interior": w.interior,
        "degree": args.degree,
        "dimension": space.dimension,
        "full_dimension": space.full_dimension,
        "expected_dimension": len(space.expected),
        "expected_span": [str(d) for d in space.expected],
        "matches_expected": space.matches,
        "basis": [{str(g): str(v) for g, v in sorted(m.images.items())} for m in space.interior_basis],
    }
    if space.contains_outer is not None:
        doc["contains_D"] = space.contains_outer
    lines = [
        f"derivation space: window {w.radius} (interior {w.interior}), degree {args.degree}",
        f"window dimension: {space.full_dimension}",
        f"interior dimension: {space.dimension}",
        f"expected span: {{{expected}}} (dimension {len(space.expected)})",
        f"matches expected: {'yes' if space.matches else 'no'}",
    ]
    if space.contains_outer is not None:
        lines.append(f"contains D: {'yes' if space.contains_outer else 'no'}")
    lines.append(f"status: {doc['status']}")
    return doc, "\n".join(lines)


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise InvalidParameter(f"--lemma {args.lemma} needs --{name}")
    return value


def _probes(args):
    if args.probes is None:
        return None
    try:
        return [int(t) for t in args.probes.split(",") if t.strip()]
    except ValueError:
        raise InvalidParameter(f"--probes must be comma-separated integers, got {args.probes!r}") from None


def _cmd_replay(args):
    w = _window(args)
    lemma = args.lemma
    if lemma == "3.1i":
        report = replay_lemma31(_need(args, "i"), w)
    elif lemma == "3.1ii":
        report = replay_lemma31("I0J0", w)
    elif lemma == "3.2":
        report = replay_lemma32(_need(args, "i"), w)
    elif lemma == "3.3":
        report = replay_lemma33(parse_element(_need(args, "x")), _probes(args), w)
    elif lemma == "3.4":
        report = replay_lemma34(_need(args, "p"), w)
    else:
        report = replay_lemma35(parse_element(_need(args, "x")), _probes(args), w)
    doc = report.to_report()
    lines = [f"Lemma {lemma} replay: {doc['status']}"]
    for k, v in doc["params"].items():
        lines.append(f"  {k}: {v}")
    lines.append(f"  dimension: {doc['dimension']}")
    lines.append("  basis: " + ("{0}" if not doc["basis"] else ""))
    lines.extend(f"    {b}" for b in doc["basis"])
    for k, v in doc["details"].items():
        if isinstance(v, (list, tuple)):
            v = "{" + ", ".join(v) + "}" if v else "{0}"
        lines.append(f"  {k}: {v}")
    return doc, "\n".join(lines)


def _cmd_extract(args):
    inst = load_instance_file(args.file)
    d = extract_derivation(inst)
    doc = {
        "command": "extract",
        "status": "pass",
        "exit_code": 0,
        "points": len(inst.table),
        "derivation": d,
    }
    return doc, f"inner: {print_element(d.inner)}\nlambda: {d.outer}"


def _cmd_fuzz(args):
    result = run_fuzz(args.what, args.window, args.samples, args.seed)
    doc = result.to_report()
    text = (
        f"fuzz {result.what}: {result.checked} of {result.samples} samples, seed {result.seed}, "
        f"window {result.radius}: {doc['status']}"
    )
    if not result.passed:
        text += "\nminimal counterexample: " + " ; ".join(doc["counterexample"])
    return doc, text


COMMANDS = {
    "bracket": _cmd_bracket,
    "der-solve": _cmd_der_solve,
    "replay": _cmd_replay,
    "extract": _cmd_extract,
    "fuzz": _cmd_fuzz,
}


def _error_doc(command, exc, exit_code):
    doc = {"command": command, "status": "error" if exit_code == 2 else "fail", "exit_code": exit_code}
    if isinstance(exc, PgcaError):
        doc["error"] = exc.to_dict()
        point = getattr(exc, "point", None)
        if point is not None:
            doc["error"]["point"] = print_element(point)
    else:
        doc["error"] = {"code": "InternalError", "message": f"{type(exc).__name__}: {exc}"}
    return doc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, text = COMMANDS[args.command](args)
        code = doc["exit_code"]
    except PgcaError as exc:
        code = 2 if exc.input_error else 1
        doc = _error_doc(args.command, exc, code)
        text = f"error {exc.code}: {exc}"
    except Exception as exc:  # noqa: BLE001 - every run must end in 0/1/2
        code = 1
        doc = _error_doc(args.command, exc, code)
        text = f"error InternalError: {type(exc).__name__}: {exc}"
    if args.format == "json":
        sys.stdout.write(dump_json(save_report(doc)))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
