"""Command-line interface: ``ginv <verb> ...``.

Exit codes: 0 success, 1 property falsified, 2 input or usage error,
3 inverse absent.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import checker, encoding, formulas
from .errors import GinvError, InvalidRingSpec, ParseError, UnknownPredicate, UnknownTheorem
from .group_inverse import drazin_inverse, group_inverse, is_15_inverse
from .pierce import assumption_profile, decompose
from .rings import Element, MatrixRing, Rationals, diag, make_ring

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_ABSENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# input helpers


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def load_element(path: str) -> Element:
    return encoding.loads_element(_read_text(path))


def parse_ring(text: str, dim: int):
    """``Q``, ``Fp:p``, ``Zmod:m`` or a JSON ring descriptor."""
    text = text.strip()
    if text.startswith("{"):
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidRingSpec(f"bad ring JSON: {exc}") from None
        if isinstance(spec, dict) and "n" not in spec:
            spec = dict(spec, n=dim)
        return make_ring(spec)
    kind, _, arg = text.partition(":")
    if kind == "Q" and not arg:
        return make_ring(("Q", dim))
    try:
        value = int(arg)
    except ValueError:
        raise InvalidRingSpec(f"unrecognized ring {text!r}") from None
    if kind == "Fp":
        return make_ring(("Fp", value, dim))
    if kind == "Zmod":
        return make_ring(("Zmod", value))
    raise InvalidRingSpec(f"unrecognized ring {text!r}")


def _emit(text: str, out: str | None = None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _show(label: str, a: Element):
    body = encoding.format_element(a)
    if "\n" in body:
        print(f"{label} =")
        print("  " + body.replace("\n", "\n  "))
    else:
        print(f"{label} = {body}")


def _witness_message(w: dict | None) -> str:
    if not w:
        return "not group invertible"
    kind = w.get("kind")
    if kind == "rank":
        return f"not group invertible: rank(a)={w['rank']}, rank(a²)={w['rank_square']}"
    if kind == "exhaustion":
        return f"not group invertible: none of {w['candidates']} candidates satisfies the defining equations"
    if kind == "component":
        return f"not group invertible in component {w['index']}: " + _witness_message(w.get("witness"))
    return f"not group invertible: {w}"


# ---------------------------------------------------------------------------
# verbs


def cmd_compute(args) -> int:
    a = load_element(args.path)
    if args.kind == "drazin":
        res = drazin_inverse(a)
        if args.json:
            print(encoding.dumps({"inverse": encoding.element_to_json(res.inverse), "index": res.index}))
        else:
            _show("a^D", res.inverse)
            print(f"index = {res.index}")
        return EXIT_OK
    res = group_inverse(a)
    if args.json:
        payload = {"exists": res.exists, "method": res.method,
                   "inverse": encoding.element_to_json(res.inverse) if res.exists else None,
                   "witness": res.witness}
        print(encoding.dumps(payload))
    elif res.exists:
        _show("a#", res.inverse)
    else:
        print(_witness_message(res.witness))
    return EXIT_OK if res.exists else EXIT_ABSENT


def cmd_pierce(args) -> int:
    p, q = load_element(args.p), load_element(args.q)
    blocks = decompose(q, p)
    prof = assumption_profile(q, p)
    payload = {f"q{i}": encoding.element_to_json(getattr(blocks, f"q{i}")) for i in range(1, 5)}
    payload["assumptions"] = prof.as_dict()
    payload["clauses"] = prof.clauses
    print(encoding.dumps(payload))
    return EXIT_OK


def outcome_to_json(out: formulas.FormulaOutcome) -> dict:
    return {
        "name": out.name,
        "hypotheses": out.hypotheses,
        "hypotheses_hold": out.hypotheses_hold,
        "criterion": out.criterion,
        "exists": out.exists,
        "value": out.value,
        "verified": out.verified,
        "checks": out.checks,
        "ok": out.ok,
        "problems": out.problems(),
        "notes": out.notes,
    }


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"formula {args.name} needs " + ", ".join("--" + n for n in missing))


def cmd_formula(args) -> int:
    name = args.name
    if name in formulas.PAIR_FORMULAS:
        _need(args, "p", "q")
        out = formulas.PAIR_FORMULAS[name](load_element(args.p), load_element(args.q), strict=False)
    elif name in ("cline", "commuting"):
        _need(args, "a", "b")
        out = formulas.ELEMENT_FORMULAS[name](load_element(args.a), load_element(args.b), strict=False)
    elif name == "antidiag":
        _need(args, "a", "b", "p")
        out = formulas.antidiag_group_inverse(load_element(args.a), load_element(args.b),
                                              load_element(args.p), strict=False)
    elif name == "cao":
        _need(args, "a", "b", "c")
        try:
            b = json.loads(_read_text(args.b))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {args.b}: {exc}") from None
        if isinstance(b, dict):
            b = b.get("entries")
        out = formulas.cao_triangular(load_element(args.a), b, load_element(args.c))
    else:
        raise UsageError(f"unknown formula {name!r}; expected one of {', '.join(formulas.FORMULA_NAMES)}")
    print(encoding.dumps(outcome_to_json(out)))
    return EXIT_OK if out.hypotheses_hold and out.ok else EXIT_FALSIFIED


def _config(args, trials_default=100) -> checker.GeneratorConfig:
    ring = parse_ring(args.ring, args.dim)
    if args.seed is None and not (args.exhaustive or args.shape == "paper-example"):
        raise UsageError("--seed is required for randomized runs")
    trials = args.trials if args.trials is not None else trials_default
    return checker.GeneratorConfig(ring, trials, args.seed or 0, args.shape, args.exhaustive)


def cmd_check(args) -> int:
    if args.theorem not in checker.THEOREM_KINDS:
        raise UnknownTheorem(f"unknown theorem {args.theorem!r}; expected one of {', '.join(checker.THEOREM_KINDS)}")
    cfg = _config(args)
    report = checker.check_theorem(args.theorem, cfg)
    _emit(encoding.dumps(report.as_dict(timing=args.timing)), args.out)
    print(f"{report.theorem}: {report.trials} trials, {report.held} held, {report.verified} verified, "
          f"{report.skipped} skipped, {len(report.failures)} failures ({report.wall_time:.2f}s)", file=sys.stderr)
    return EXIT_OK if report.clean else EXIT_FALSIFIED


def cmd_search(args) -> int:
    if args.predicate not in checker.PREDICATES:
        raise UnknownPredicate(f"unknown predicate {args.predicate!r}; expected one of {', '.join(checker.PREDICATES)}")
    cfg = _config(args)
    result = checker.search_counterexample(args.predicate, cfg, args.theorem)
    _emit(encoding.dumps(result.as_dict()), args.out)
    # finding the witness is the success case for ph-necessity; for the
    # other predicates a hit means a theorem was falsified
    if args.predicate == "ph-necessity":
        return EXIT_OK if result.found else EXIT_FALSIFIED
    return EXIT_FALSIFIED if result.found else EXIT_OK


def paper_example_facts() -> tuple[dict, dict]:
    """Computed values for the worked 4x4 example, plus the fixture."""
    ring = MatrixRing(Rationals(), 4)
    p, q = diag(ring, [1, 1, 0, 0]), diag(ring, [1, 0, 1, 0])
    out = formulas.diff_sum_formulas(p, q)
    S = p + q
    x, h, ps = out.notes["x"], out.notes["h"], out.notes["sum_inverse"]
    values = {"p": p, "q": q, "(p-q)#": out.value, "(p+q)#": ps, "h": h, "x": x}
    facts = {
        "ph != p": p * h != p,
        "(p+q)x(p+q) != p+q": S * x * S != S,
        "x is a {1,5}-inverse of p+q": is_15_inverse(S, x),
        "(p+q)# != x": ps != x,
    }
    expected_values = {
        "p": p, "q": q,
        "(p-q)#": diag(ring, [0, 1, -1, 0]),
        "(p+q)#": diag(ring, [Fraction(1, 2), 1, 1, 0]),
        "h": diag(ring, [0, 1, 1, 0]),
        "x": diag(ring, [0, 1, 1, 0]),
    }
    expected_facts = {k: True for k in facts}
    return {"values": values, "facts": facts}, {"values": expected_values, "facts": expected_facts}


def cmd_example(args) -> int:
    if args.name != "paper-4.1":
        raise UsageError(f"unknown example {args.name!r}; available: paper-4.1")
    got, want = paper_example_facts()
    matches = {k: got["values"][k] == want["values"][k] for k in want["values"]}
    matches.update({k: got["facts"][k] == want["facts"][k] for k in want["facts"]})
    ok = all(matches.values())
    if args.json:
        print(encoding.dumps({"values": got["values"], "facts": got["facts"], "matches": matches, "ok": ok}))
    else:
        for k, v in got["values"].items():
            _show(k, v)
        for k, v in got["facts"].items():
            print(f"{k}: {v}")
        print("fixture: match" if ok else "fixture: MISMATCH")
    return EXIT_OK if ok else EXIT_FALSIFIED


# ---------------------------------------------------------------------------


def _add_run_flags(sp):
    sp.add_argument("--ring", default="Q", help="Q, Fp:p, Zmod:m or a JSON descriptor")
    sp.add_argument("--dim", type=int, default=4)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--shape", default="general", choices=checker.SHAPES)
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ginv", description="Exact group inverses of idempotent expressions.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    sp = sub.add_parser("compute", help="group or Drazin inverse of a JSON element")
    sp.add_argument("path", help="JSON element file, or - for stdin")
    sp.add_argument("--kind", choices=("group", "drazin"), default="group")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("pierce", help="blocks of q with respect to p and the assumption flags")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    sp.set_defaults(func=cmd_pierce)

    sp = sub.add_parser("formula", help="evaluate one closed-form formula")
    sp.add_argument("name")
    for flag in ("--p", "--q", "--a", "--b", "--c"):
        sp.add_argument(flag)
    sp.set_defaults(func=cmd_formula)

    sp = sub.add_parser("check", help="run a seeded theorem suite")
    sp.add_argument("theorem")
    _add_run_flags(sp)
    sp.add_argument("--timing", action="store_true", help="include wall time in the report")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("search", help="scan trials for a counterexample")
    sp.add_argument("predicate")
    sp.add_argument("--theorem")
    _add_run_flags(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("example", help="reproduce a worked example")
    sp.add_argument("name")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, ParseError, InvalidRingSpec, UnknownTheorem, UnknownPredicate) as exc:
        print(f"ginv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GinvError as exc:
        print(f"ginv: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
