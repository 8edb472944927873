"""Command-line front end.

Exit codes: 0 success, 1 parse error (or "not isomorphic" for ``iso``),
2 interface or other evaluation error, 3 unknown name, 4 a law check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from .algebra import broadcast_algebra, ccs_algebra, check_rel_monoid, classify
from .core import (
    Alphabet, InterfaceError, LawReport, TltsError, UnknownStateError,
    iso_equal, reachable, state_key, state_to_json, tlts_to_json,
)
from .dot import to_dot
from .lang import Evaluator, ParseError, UnknownNameError, parse
from .parallel import embed, prop1_reports, prop3_check
from .sampling import MAX_STATES, MAX_TRANSITIONS, random_one_sided
from .wscc import wscc_reports

EXIT_PARSE, EXIT_INTERFACE, EXIT_UNKNOWN, EXIT_LAW = 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _color_enabled(stream) -> bool:
    return os.environ.get("TLTS_COLOR", "1") != "0" and hasattr(stream, "isatty") and stream.isatty()


def _error(message: str) -> None:
    prefix = "error:"
    if _color_enabled(sys.stderr):
        prefix = "\033[31merror:\033[0m"
    print(f"{prefix} {message}", file=sys.stderr)


def _load(path: str) -> Evaluator:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_UNKNOWN) from exc
    try:
        return Evaluator(parse(text))
    except ParseError as exc:
        raise CliError(f"{path}:{exc}", EXIT_PARSE) from exc


def _run(fn):
    try:
        return fn()
    except CliError:
        raise
    except ParseError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    except (UnknownNameError, UnknownStateError) as exc:
        raise CliError(str(exc), EXIT_UNKNOWN) from exc
    except InterfaceError as exc:
        raise CliError(str(exc), EXIT_INTERFACE) from exc
    except TltsError as exc:
        raise CliError(str(exc), EXIT_INTERFACE) from exc


def parse_state(text: str):
    """``s0`` or ``(s0,t0)``, nested to any depth."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        parts = _split_top(text[1:-1])
        if len(parts) != 2:
            raise CliError(f"pair state needs two components: {text}", EXIT_UNKNOWN)
        return (parse_state(parts[0]), parse_state(parts[1]))
    if not text:
        raise CliError("empty state name", EXIT_UNKNOWN)
    return text


def _split_top(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def _system(args, ev: Evaluator):
    t = _run(lambda: ev.named(args.expr))
    initial = []
    if args.reachable_from:
        initial = [parse_state(s) for s in _split_top(args.reachable_from)]
        t = _run(lambda: reachable(t, initial))
    return t, initial


def _render(t, initial, args) -> str:
    if args.format == "dot":
        return to_dot(t, args.expr, show_eps=args.show_eps, initial=initial)
    return json.dumps(tlts_to_json(t)) + "\n"


def cmd_eval(args) -> int:
    ev = _load(args.file)
    t, initial = _system(args, ev)
    sys.stdout.write(_render(t, initial, args))
    return 0


def cmd_export(args) -> int:
    ev = _load(args.file)
    t, initial = _system(args, ev)
    Path(args.output).write_text(_render(t, initial, args), encoding="utf-8")
    return 0


def cmd_iso(args) -> int:
    a = _run(lambda: _load(args.file_a).named(args.expr_a))
    b = _run(lambda: _load(args.file_b).named(args.expr_b))
    phi = iso_equal(a, b)
    if phi is None:
        print("not-isomorphic")
        return 1
    pairs = [[state_to_json(s), state_to_json(phi[s])] for s in sorted(phi, key=state_key)]
    print(json.dumps({"bijection": pairs}))
    return 0


def _sample_reports(law: str, alg, n: int, seed: int, max_states: int,
                    max_transitions: int) -> list[LawReport]:
    rng = random.Random(seed)
    view = None
    if law == "prop3":
        view = classify(alg)
    out = []
    for i in range(n):
        a = random_one_sided(rng, alg.carrier, "a", max_states, max_transitions)
        b = random_one_sided(rng, alg.carrier, "b", max_states, max_transitions)
        inputs = {"sample": i, "seed": seed}
        try:
            if law == "prop3":
                report = prop3_check(a, b, view)
                report.inputs = {**inputs, **report.inputs}
                out.append(report)
            else:
                c = random_one_sided(rng, alg.carrier, "c", max_states, max_transitions)
                out.extend(prop1_reports(alg, embed(a), embed(b), embed(c), inputs))
        except TltsError as exc:
            out.append(LawReport(law, False, inputs, {"error": str(exc)}))
    return out


def _law_reports(spec: str, ev: Evaluator, args) -> list[LawReport]:
    kind, sep, name = spec.partition(":")
    if not sep or not name:
        raise CliError(f"law spec must look like kind:name, got {spec!r}", EXIT_UNKNOWN)
    if kind == "wscc":
        return wscc_reports(_run(lambda: ev.alphabet(name)))
    if kind not in ("monoid", "prop1", "prop3"):
        raise CliError(f"unknown law family {kind!r}", EXIT_UNKNOWN)
    alg = _run(lambda: ev.algebra(name))
    if kind == "monoid":
        return check_rel_monoid(alg)
    try:
        return _sample_reports(kind, alg, args.samples, args.seed,
                               args.max_states, args.max_transitions)
    except TltsError as exc:
        return [LawReport(kind, False, {"algebra": name}, {"error": str(exc)})]


def _emit(reports) -> int:
    ok = True
    for r in reports:
        print(json.dumps(r.to_json()))
        ok = ok and r.passed
    return 0 if ok else EXIT_LAW


def cmd_check(args) -> int:
    ev = _load(args.file)
    specs = [s for item in args.laws for s in item.split(",") if s]
    reports = []
    for spec in specs:
        reports.extend(_law_reports(spec, ev, args))
    return _emit(reports)


def cmd_random_check(args) -> int:
    labels = [l for l in args.labels.split(",") if l]
    if args.algebra == "ccs":
        alg = _run(lambda: ccs_algebra(labels))
    else:
        alg = _run(lambda: broadcast_algebra(Alphabet.of(*labels)))
    return _emit(_sample_reports(args.law, alg, args.samples, args.seed,
                                 args.max_states, args.max_transitions))


def _sampling_flags(p) -> None:
    p.add_argument("--samples", type=int, default=100, help="random samples per law (default 100)")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    p.add_argument("--max-states", type=int, default=MAX_STATES)
    p.add_argument("--max-transitions", type=int, default=MAX_TRANSITIONS)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tlts", description="Two-sided transition systems.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (("eval", cmd_eval, "evaluate a system or expr"),
                            ("export", cmd_export, "evaluate and write to a file")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("expr")
        p.add_argument("--format", choices=["json", "dot"], default="json")
        p.add_argument("--reachable-from", metavar="S1,S2,...",
                       help="restrict to states reachable from these; pairs as (s,t)")
        p.add_argument("--show-eps", action="store_true", help="draw reflexive eps/eps loops in DOT")
        if name == "export":
            p.add_argument("-o", "--output", required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("check", help="run law suites, one JSON report per line")
    p.add_argument("file")
    p.add_argument("--laws", action="append", required=True,
                   metavar="KIND:NAME", help="wscc:ALPHABET, monoid:ALG, prop1:ALG or prop3:ALG")
    _sampling_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("iso", help="search for a state bijection between two systems")
    p.add_argument("file_a")
    p.add_argument("expr_a")
    p.add_argument("file_b")
    p.add_argument("expr_b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("random-check", help="property suites on built-in algebras without a file")
    p.add_argument("--law", choices=["prop1", "prop3"], required=True)
    p.add_argument("--algebra", choices=["ccs", "broadcast"], default="ccs")
    p.add_argument("--labels", default="a,b", help="CCS names or broadcast labels (default a,b)")
    _sampling_flags(p)
    p.set_defaults(func=cmd_random_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        _error(str(exc))
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
