"""Command-line front end.

Exit codes: 0 affirmative verdict or success, 1 negative verdict, 2 usage or
input error, 3 internal invariant violation.  Every subcommand accepts
--json for a structured rendering of the same fields as the text output.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import localmaps, shifts
from .core import SftSpec, load_sft, normalize_periodic
from .errors import FormatError, SymshiftError
from .graphs import essential_form, load_presentation, save_presentation
from .localmaps import LocalRule, load_rule

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

LIST_CAP = 10000


@dataclass
class Verdict:
    """Answer to one decision question, with an optional witness word."""

    question: str
    answer: bool
    witness: str | None = None
    witness_label: str = "witness"
    elapsed_ms: float = 0.0

    def emit(self, as_json: bool) -> int:
        if as_json:
            doc = {
                "question": self.question,
                "answer": "yes" if self.answer else "no",
                "witness": self.witness,
                "elapsed_ms": round(self.elapsed_ms, 3),
            }
            print(json.dumps(doc))
        else:
            print("yes" if self.answer else "no")
            if self.witness is not None:
                print(f"{self.witness_label}: {self.witness}")
        return EXIT_YES if self.answer else EXIT_NO


def _verdict(question, thunk, witness_label="witness"):
    start = time.perf_counter()
    answer, witness = thunk()
    elapsed = (time.perf_counter() - start) * 1000.0
    return Verdict(question, answer, witness, witness_label, elapsed)


def _load_spec_and_rule(args) -> tuple[SftSpec, LocalRule]:
    spec = load_sft(args.spec_file)
    return spec, load_rule(args.rule_file, spec)


def cmd_shift_check(args) -> int:
    spec = load_sft(args.spec_file)
    empty = shifts.is_empty(spec)
    if args.json:
        print(
            json.dumps(
                {
                    "alphabet": list(spec.alphabet.symbols),
                    "memory": spec.memory,
                    "forbidden": sorted(f.text() for f in spec.forbidden),
                    "empty": empty,
                }
            )
        )
    else:
        print(f"alphabet: {' '.join(spec.alphabet.symbols)}")
        print(f"memory: {spec.memory}")
        print(f"forbidden: {' '.join(sorted(f.text() for f in spec.forbidden)) or '-'}")
        print(f"empty: {'yes' if empty else 'no'}")
    return EXIT_YES


def cmd_shift_empty(args) -> int:
    spec = load_sft(args.spec_file)
    return _verdict("empty", lambda: (shifts.is_empty(spec), None)).emit(args.json)


def cmd_shift_member(args) -> int:
    spec = load_sft(args.spec_file)
    word = spec.alphabet.parse_word(args.word)
    return _verdict("member", lambda: (shifts.language_member(spec, word), None)).emit(
        args.json
    )


def cmd_shift_irreducible(args) -> int:
    spec = load_sft(args.spec_file)
    return _verdict("irreducible", lambda: (shifts.is_irreducible(spec), None)).emit(
        args.json
    )


def cmd_shift_mixing(args) -> int:
    spec = load_sft(args.spec_file)
    return _verdict("mixing", lambda: (shifts.is_mixing(spec), None)).emit(args.json)


def cmd_shift_dense(args) -> int:
    spec = load_sft(args.spec_file)
    return _verdict(
        "dense-periodic", lambda: (shifts.periodic_density(spec), None)
    ).emit(args.json)


def cmd_shift_periodic(args) -> int:
    spec = load_sft(args.spec_file)
    census = shifts.periodic_census(spec, args.max_n)
    rows = []
    for n in range(1, args.max_n + 1):
        row = {"n": n, "p": census.p[n - 1], "q": census.q[n - 1]}
        if args.list:
            if census.p[n - 1] > LIST_CAP:
                print(
                    f"error: p_{n} = {census.p[n - 1]} exceeds the listing cap {LIST_CAP}",
                    file=sys.stderr,
                )
                return EXIT_USAGE
            row["configs"] = [
                c.primitive.text() for c in shifts.enumerate_periodic(spec, n)
            ]
        rows.append(row)
    if args.json:
        print(json.dumps({"max_n": args.max_n, "census": rows}))
    else:
        print("n p_n q_n")
        for row in rows:
            print(f"{row['n']} {row['p']} {row['q']}")
            if args.list:
                print(f"  configs: {' '.join(row['configs']) or '-'}")
    return EXIT_YES


def cmd_sofic_equal(args) -> int:
    g1 = load_presentation(args.a)
    g2 = load_presentation(args.b)

    def decide():
        equal, ce = shifts.sofic_equal(g1, g2)
        return equal, None if ce is None else ce.text()

    return _verdict("sofic-equal", decide, "counterexample").emit(args.json)


def cmd_map_apply(args) -> int:
    spec, rule = _load_spec_and_rule(args)
    word = spec.alphabet.parse_word(args.word)
    config = normalize_periodic(word)
    image = localmaps.apply_to_periodic(rule, config)
    if args.json:
        print(json.dumps({"image": image.primitive.text(), "period": image.least_period}))
    else:
        print(f"image: {image.primitive.text()}")
        print(f"period: {image.least_period}")
    return EXIT_YES


def cmd_map_image(args) -> int:
    spec, rule = _load_spec_and_rule(args)
    graph = essential_form(localmaps.build_image_presentation(rule).graph)
    save_presentation(graph, args.out)
    if args.json:
        print(
            json.dumps(
                {"out": args.out, "states": len(graph.states), "edges": len(graph.edges)}
            )
        )
    else:
        print(f"wrote {args.out} ({len(graph.states)} states, {len(graph.edges)} edges)")
    return EXIT_YES


def _target(args, spec: SftSpec) -> SftSpec:
    return load_sft(args.onto) if args.onto else spec


def cmd_map_surjective(args) -> int:
    spec, rule = _load_spec_and_rule(args)
    target = _target(args, spec)

    def decide():
        ok, orphan = localmaps.is_surjective(rule, target)
        return ok, None if orphan is None else orphan.text()

    return _verdict("surjective", decide, "orphan").emit(args.json)


def cmd_map_injective(args) -> int:
    spec, rule = _load_spec_and_rule(args)
    return _verdict("injective", lambda: (localmaps.is_injective(rule), None)).emit(
        args.json
    )


def cmd_map_preinjective(args) -> int:
    spec, rule = _load_spec_and_rule(args)
    return _verdict(
        "preinjective", lambda: (localmaps.is_preinjective(rule), None)
    ).emit(args.json)


def cmd_map_goe(args) -> int:
    spec, rule = _load_spec_and_rule(args)
    target = _target(args, spec)

    def decide():
        orphan = localmaps.find_goe_pattern(rule, target)
        return orphan is not None, None if orphan is None else orphan.text()

    return _verdict("goe-pattern-exists", decide, "orphan").emit(args.json)


def cmd_map_audit(args) -> int:
    spec = load_sft(args.spec_file)
    count = localmaps.rule_count(spec, args.radius)
    if count > args.limit:
        print(
            f"error: {count} rules of radius {args.radius} exceed the limit {args.limit}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    start = time.perf_counter()
    report = localmaps.surjunctivity_audit(
        localmaps.enumerate_rules(spec, args.radius), spec
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    selfmaps = [e for e in report.entries if e.selfmap]
    summary = {
        "rules": len(report.entries),
        "selfmaps": len(selfmaps),
        "injective": sum(1 for e in selfmaps if e.injective),
        "surjective": sum(1 for e in selfmaps if e.surjective),
        "violations": [e.name for e in report.violations],
        "elapsed_ms": round(elapsed, 3),
    }
    if args.json:
        summary["entries"] = [
            {
                "name": e.name,
                "selfmap": e.selfmap,
                "injective": e.injective,
                "surjective": e.surjective,
            }
            for e in report.entries
        ]
        print(json.dumps(summary))
    else:
        print(f"rules: {summary['rules']}")
        print(f"selfmaps: {summary['selfmaps']}")
        print(f"injective: {summary['injective']}")
        print(f"surjective: {summary['surjective']}")
        print(f"violations: {len(summary['violations'])}")
        for name in summary["violations"]:
            print(f"violation: {name}")
    return EXIT_INTERNAL if report.violations else EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symshift",
        description="Decision procedures for one-dimensional shift spaces and local maps.",
    )
    top = parser.add_subparsers(dest="group", required=True)
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--json", action="store_true", help="structured output")

    shift = top.add_parser("shift", help="shift-space questions").add_subparsers(
        dest="command", required=True
    )
    p = shift.add_parser("check", parents=[flags], help="validate and describe a spec")
    p.add_argument("spec_file")
    p.set_defaults(func=cmd_shift_check)
    p = shift.add_parser("empty", parents=[flags], help="tiling problem: is the shift empty")
    p.add_argument("spec_file")
    p.set_defaults(func=cmd_shift_empty)
    p = shift.add_parser("member", parents=[flags], help="extension problem: word in the language")
    p.add_argument("spec_file")
    p.add_argument("word")
    p.set_defaults(func=cmd_shift_member)
    p = shift.add_parser("irreducible", parents=[flags])
    p.add_argument("spec_file")
    p.set_defaults(func=cmd_shift_irreducible)
    p = shift.add_parser("mixing", parents=[flags])
    p.add_argument("spec_file")
    p.set_defaults(func=cmd_shift_mixing)
    p = shift.add_parser("dense-periodic", parents=[flags], help="are periodic configurations dense")
    p.add_argument("spec_file")
    p.set_defaults(func=cmd_shift_dense)
    p = shift.add_parser("periodic", parents=[flags], help="periodic-point census")
    p.add_argument("spec_file")
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_shift_periodic)

    sofic = top.add_parser("sofic", help="sofic presentation questions").add_subparsers(
        dest="command", required=True
    )
    p = sofic.add_parser("equal", parents=[flags], help="do two presentations accept the same shift")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_sofic_equal)

    mp = top.add_parser("map", help="local map questions").add_subparsers(
        dest="command", required=True
    )
    p = mp.add_parser("apply", parents=[flags], help="image of the periodization of a word")
    p.add_argument("spec_file")
    p.add_argument("rule_file")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_map_apply)
    p = mp.add_parser("image", parents=[flags], help="emit the image presentation")
    p.add_argument("spec_file")
    p.add_argument("rule_file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_map_image)
    p = mp.add_parser("surjective", parents=[flags])
    p.add_argument("spec_file")
    p.add_argument("rule_file")
    p.add_argument("--onto", help="target spec (default: the domain spec)")
    p.set_defaults(func=cmd_map_surjective)
    p = mp.add_parser("injective", parents=[flags])
    p.add_argument("spec_file")
    p.add_argument("rule_file")
    p.set_defaults(func=cmd_map_injective)
    p = mp.add_parser("preinjective", parents=[flags])
    p.add_argument("spec_file")
    p.add_argument("rule_file")
    p.set_defaults(func=cmd_map_preinjective)
    p = mp.add_parser("goe", parents=[flags], help="find a shortest orphan pattern")
    p.add_argument("spec_file")
    p.add_argument("rule_file")
    p.add_argument("--onto", help="target spec (default: the domain spec)")
    p.set_defaults(func=cmd_map_goe)
    p = mp.add_parser("audit", parents=[flags], help="surjunctivity audit over all rules of a radius")
    p.add_argument("spec_file")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--limit", type=int, default=65536)
    p.set_defaults(func=cmd_map_audit)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Dispatch one invocation and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SymshiftError as e:
        print(f"error[{e.code}]: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:  # noqa: BLE001 - anything else is a bug
        print(f"internal error: {e!r}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
