"""Command-line front end: `tcalab <verb> ...`.

Exit status: 0 on success or Holds, 1 when a check Fails, 2 on parse, type
or input errors.  `--json` switches every verb to a single JSON document.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Callable, Optional, Sequence

from . import __version__
from .apartness import Checker, build_apartness_structure, check_axioms, translate_type
from .assemblies import run_fixture_checks
from .ce import CE0Fixture, CE1Fixture, CEError, ce0_witness, ce1_search, load_fixtures
from .kernel import (
    Fails,
    ParseError,
    TypeCheckError,
    Unknown,
    Verdict,
    elaborate,
    normalize,
    parse_term,
    parse_type,
    show,
)
from .tca import build_d, random_term

DEFAULT_SEED = 20240101

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    """Unreadable file or malformed fixture."""


def _env():
    return {"d": build_d()}


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


def _verdict_json(v: Verdict) -> dict:
    if isinstance(v, Fails):
        return {"verdict": "Fails", "counterexample": [show(t) for t in v.counterexample], "note": v.note}
    if isinstance(v, Unknown):
        return {"verdict": "Unknown", "reason": v.reason}
    return {"verdict": "Holds"}


def _verdict_status(verdicts) -> int:
    return FAILED if any(isinstance(v, Fails) for v in verdicts) else OK


# ---------------------------------------------------------------------------
# verbs; each returns (status, plain lines, json document)


def cmd_eval(args) -> tuple[int, list[str], Any]:
    t, ty = elaborate(parse_term(args.term, _env()))
    nf = show(normalize(t))
    return OK, [nf], {"term": args.term, "normal_form": nf, "type": str(ty)}


def cmd_type(args) -> tuple[int, list[str], Any]:
    _, ty = elaborate(parse_term(args.term, _env()))
    return OK, [str(ty)], {"term": args.term, "type": str(ty)}


def cmd_translate(args) -> tuple[int, list[str], Any]:
    tr = translate_type(parse_type(args.type))
    return OK, [str(tr.plus), str(tr.minus)], {"type": str(tr.source), "plus": str(tr.plus), "minus": str(tr.minus)}


def _fixtures(path: str, kind: type) -> list:
    try:
        fixtures = load_fixtures(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CEError):
            raise
        raise InputError(f"{path}: malformed fixture: {exc}") from exc
    wrong = [i for i, f in enumerate(fixtures) if not isinstance(f, kind)]
    if wrong:
        raise InputError(f"{path}: fixture {wrong[0]} is not a {kind.__name__}")
    return fixtures


def _run_ce(fixtures, solve: Callable) -> tuple[int, list[str], Any]:
    status, lines, rows = OK, [], []
    for fx in fixtures:
        try:
            shown, extra = solve(fx)
        except CEError as exc:
            status = FAILED
            lines.append(f"Fails: {exc}")
            rows.append({"fixture": fx.to_json(), "error": type(exc).__name__, "message": str(exc)})
            continue
        lines.append(shown)
        rows.append({"fixture": fx.to_json(), **extra})
    doc = {"fixtures": [r["fixture"] for r in rows], "results": [{k: v for k, v in r.items() if k != "fixture"}
                                                                 for r in rows]}
    return status, lines, doc


def cmd_ce0(args) -> tuple[int, list[str], Any]:
    def solve(fx):
        w = ce0_witness(fx.phi, fx.f, fx.g)
        return str(w), {"witness": w}
    return _run_ce(_fixtures(args.fixtures, CE0Fixture), solve)


def cmd_ce1(args) -> tuple[int, list[str], Any]:
    def solve(fx):
        r = ce1_search(fx.phi, fx.f, fx.g)
        seq = list(r.sequence or ())
        return "<" + ", ".join(map(str, seq)) + ">", {"sequence": seq, "witness": r.witness.to_json(),
                                                      "index": r.index, "bound": r.bound}
    return _run_ce(_fixtures(args.fixtures, CE1Fixture), solve)


def _samples(args, carrier) -> list:
    if args.samples is not None:
        data = _read_json(args.samples)
        if not isinstance(data, list) or not all(isinstance(t, str) for t in data):
            raise InputError(f"{args.samples}: expected a JSON list of terms")
        return [parse_term(t, _env()) for t in data]
    rng = random.Random(args.seed)
    return [random_term(carrier, rng, depth=2) for _ in range(3)]


def cmd_check_apartness(args) -> tuple[int, list[str], Any]:
    s = build_apartness_structure(parse_type(args.type))
    samples = [elaborate(t, s.carrier_type)[0] for t in _samples(args, s.carrier_type)]
    results = check_axioms(s, Checker(samples=samples))
    lines = [f"{name}: {v}" for name, v in results.items()]
    doc = {"type": args.type, "structure": str(s), "samples": [show(t) for t in samples],
           "axioms": {name: _verdict_json(v) for name, v in results.items()}}
    return _verdict_status(results.values()), lines, doc


def cmd_check_hyperdoctrine(args) -> tuple[int, list[str], Any]:
    data = _read_json(args.fixtures)
    if isinstance(data, dict):
        data = data["fixtures"] if "fixtures" in data else [data]
    if not isinstance(data, list):
        raise InputError(f"{args.fixtures}: expected a fixture object or a list of them")
    lines, rows, verdicts = [], [], []
    for i, fx in enumerate(data):
        try:
            results = run_fixture_checks(fx)
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"{args.fixtures}: malformed fixture {i}: {exc}") from exc
        verdicts += results.values()
        lines += [f"fixture {i} {name}: {v}" for name, v in results.items()]
        rows.append({name: _verdict_json(v) for name, v in results.items()})
    return _verdict_status(verdicts), lines, {"fixtures": data, "results": rows}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tcalab", description="Typed combinatory algebra toolkit.")
    parser.add_argument("--version", action="version", version=f"tcalab {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(run=fn)
        return p

    verb("eval", cmd_eval, "normalize a closed term").add_argument("term")
    verb("type", cmd_type, "infer the type of a closed term").add_argument("term")
    verb("translate", cmd_translate, "plus and minus types of a finite type").add_argument("type")
    verb("ce0", cmd_ce0, "CE0 witnesses for fixtures").add_argument("--fixtures", required=True)
    verb("ce1", cmd_ce1, "CE1 witnesses for fixtures").add_argument("--fixtures", required=True)
    p = verb("check-apartness", cmd_check_apartness, "sampled apartness axioms at a type")
    p.add_argument("type")
    p.add_argument("--samples", help="JSON list of extra sample terms")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for generated samples")
    verb("check-hyperdoctrine", cmd_check_hyperdoctrine,
         "hyperdoctrine laws on assembly fixtures").add_argument("--fixtures", required=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, lines, doc = args.run(args)
    except (ParseError, TypeCheckError, InputError, ValueError) as exc:
        if args.json:
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
