"""Command-line front end.

Commands::

    oddsaudit audit <file> [--pairwise]
    oddsaudit posterior <file> [--observe E1=1,E2=0] --method exact|odds (-i I | --all) [--approx]
    oddsaudit example <name> [-o <file>]
    oddsaudit sweep --n N --m M --denominator D [--require-condition1]
                    [--witness-dir DIR] [--max-models N]
    oddsaudit scenario --values V,... --weights W,... --noise OFF:P,...
                       --thresholds T1,T2 -o <file>

Exit codes: 0 success/clean, 1 audit findings, 2 input errors, 3 enumeration
budget exceeded.  All numeric output is exact; ``--approx`` adds a clearly
marked float column for reading convenience only.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from .audit import check_assumptions, check_independence, render_report
from .construct import EXAMPLE_NAMES, example_model, measurement_scenario
from .errors import ModelError, SweepLimitError
from .model import Model, Side
from .modelfile import dump, dumps, load
from .rational import format_rational, parse_rational
from .sweep import DEFAULT_MAX_MODELS, SweepConfig, SweepResult, sweep
from .updating import odds_posterior

_OBSERVE_TOKEN = re.compile(r"^E(\d+)=(0|1)$")


def parse_observation(text: str, m: int) -> dict[int, bool]:
    """Parse ``E<j>=<0|1>`` tokens, comma separated; empty means no evidence."""
    event: dict[int, bool] = {}
    text = text.strip()
    if not text:
        return event
    for token in text.split(","):
        token = token.strip()
        match = _OBSERVE_TOKEN.match(token)
        if match is None:
            raise ValueError(f"bad observation token {token!r}; expected E<j>=<0|1>")
        j = int(match.group(1))
        if not 1 <= j <= m:
            raise ValueError(f"evidence index out of range 1..{m}: E{j}")
        if j in event:
            raise ValueError(f"duplicate observation for E{j}")
        event[j] = match.group(2) == "1"
    return event


def _rational_list(text: str, what: str) -> list[Fraction]:
    items = [token.strip() for token in text.split(",") if token.strip()]
    if not items:
        raise ValueError(f"{what} list is empty")
    return [parse_rational(token) for token in items]


def _noise_map(text: str) -> dict[Fraction, Fraction]:
    noise: dict[Fraction, Fraction] = {}
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        offset_text, _, prob_text = token.partition(":")
        if not prob_text:
            raise ValueError(f"bad noise entry {token!r}; expected offset:probability")
        offset = parse_rational(offset_text.strip())
        if offset in noise:
            raise ValueError(f"duplicate noise offset {offset_text.strip()}")
        noise[offset] = parse_rational(prob_text.strip())
    if not noise:
        raise ValueError("noise list is empty")
    return noise


def _format_value(value: Fraction, approx: bool) -> str:
    text = format_rational(value)
    if approx:
        text += f" (approx {float(value):.9g})"
    return text


def cmd_audit(args) -> int:
    model = load(args.file)
    report = check_assumptions(model, mode="pairwise" if args.pairwise else "full")
    sys.stdout.write(render_report(report))
    return 0 if report.clean else 1


def cmd_posterior(args) -> int:
    model = load(args.file)
    event = parse_observation(args.observe or "", model.m)
    compute = model.posterior if args.method == "exact" else lambda e, i: odds_posterior(model, e, i)
    if args.all:
        for i in range(1, model.n + 1):
            print(f"H{i}: {_format_value(compute(event, i), args.approx)}")
    else:
        print(_format_value(compute(event, args.hypothesis), args.approx))
    return 0


def cmd_example(args) -> int:
    text = dumps(example_model(args.name))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _print_sweep_counts(result: SweepResult, stream) -> None:
    print(f"models-enumerated: {result.models_enumerated}", file=stream)
    print(f"models-satisfying-assumptions: {result.models_satisfying_all}", file=stream)
    print(f"witnesses-with-updating: {result.witnesses_with_updating}", file=stream)
    print(f"multiple-updating-violations: {len(result.theorem_violations)}", file=stream)


def cmd_sweep(args) -> int:
    config = SweepConfig(
        n=args.n,
        m=args.m,
        denominator=args.denominator,
        require_condition1=args.require_condition1,
    )
    try:
        result = sweep(config, max_models=args.max_models, witness_dir=args.witness_dir)
    except SweepLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.partial is not None:
            _print_sweep_counts(exc.partial, sys.stderr)
        return 3
    _print_sweep_counts(result, sys.stdout)
    for violation in result.theorem_violations:
        j1, j2 = violation.evidence
        print(
            f"  violation: H{violation.hypothesis} updated by E{j1} and E{j2} "
            f"in {violation.spec}"
        )
    return 0 if not result.theorem_violations else 1


def cmd_scenario(args) -> int:
    values = _rational_list(args.values, "values")
    weights = _rational_list(args.weights, "weights")
    noise = _noise_map(args.noise)
    thresholds = _rational_list(args.thresholds, "thresholds")
    if len(thresholds) != 2:
        raise ValueError(f"expected two thresholds, got {len(thresholds)}")
    t1, t2 = thresholds
    model = measurement_scenario(
        values, weights, noise, lambda y: y <= t1, lambda z: z <= t2
    )
    dump(model, args.output)
    print(f"wrote {args.output} (hypotheses={model.n}, evidence={model.m})")
    _print_side_summary(model, Side.GIVEN_H, "independence given each hypothesis")
    _print_side_summary(model, Side.GIVEN_NOT_H, "independence given each complement")
    return 0


def _print_side_summary(model: Model, side: Side, label: str) -> None:
    violated = sorted(
        i for i in range(1, model.n + 1) if check_independence(model, i, side)
    )
    if violated:
        print(f"{label}: violated ({', '.join(f'H{i}' for i in violated)})")
    else:
        print(f"{label}: holds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oddsaudit",
        description=(
            "Exact-arithmetic auditing of likelihood-ratio odds updating over "
            "partitioned hypothesis models."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p_audit = commands.add_parser(
        "audit", help="check a model file against the updating assumptions"
    )
    p_audit.add_argument("file", help="model file to audit")
    p_audit.add_argument(
        "--pairwise",
        action="store_true",
        help="test only size-2 evidence subsets (weaker, but polynomial in m)",
    )
    p_audit.set_defaults(func=cmd_audit)

    p_post = commands.add_parser("posterior", help="posterior probabilities for a model")
    p_post.add_argument("file", help="model file")
    p_post.add_argument(
        "--observe",
        default="",
        help="comma-separated literals E<j>=<0|1>; omitted propositions are unobserved",
    )
    p_post.add_argument(
        "--method",
        choices=("exact", "odds"),
        default="exact",
        help="direct conditioning on the atom table, or the odds-product scheme",
    )
    target = p_post.add_mutually_exclusive_group(required=True)
    target.add_argument("-i", dest="hypothesis", type=int, help="hypothesis index (1-based)")
    target.add_argument("--all", action="store_true", help="one line per hypothesis")
    p_post.add_argument(
        "--approx",
        action="store_true",
        help="append a float rendering (display only; the rational is authoritative)",
    )
    p_post.set_defaults(func=cmd_posterior)

    p_example = commands.add_parser("example", help="emit a bundled example model")
    p_example.add_argument("name", choices=EXAMPLE_NAMES)
    p_example.add_argument("-o", "--output", help="write to a file instead of stdout")
    p_example.set_defaults(func=cmd_example)

    p_sweep = commands.add_parser(
        "sweep", help="enumerate a conditional grid and verify single-updating"
    )
    p_sweep.add_argument("--n", type=int, required=True, help="hypothesis count (> 2)")
    p_sweep.add_argument("--m", type=int, required=True, help="evidence count (>= 2)")
    p_sweep.add_argument(
        "--denominator", type=int, required=True, help="grid denominator D"
    )
    p_sweep.add_argument(
        "--require-condition1",
        action="store_true",
        help="keep only specs where every all-evidence posterior is nonzero",
    )
    p_sweep.add_argument(
        "--witness-dir", help="write each surviving spec as a model file here"
    )
    p_sweep.add_argument(
        "--max-models",
        type=int,
        default=DEFAULT_MAX_MODELS,
        help="enumeration budget before aborting with partial counts",
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_scenario = commands.add_parser(
        "scenario", help="build a two-instrument measurement model"
    )
    p_scenario.add_argument(
        "--values", required=True, help="comma-separated true values (rationals)"
    )
    p_scenario.add_argument(
        "--weights", required=True, help="comma-separated prior weights (sum to 1)"
    )
    p_scenario.add_argument(
        "--noise",
        required=True,
        help=(
            "comma-separated offset:probability pairs for the instrument error; "
            "use --noise=-1:1/3,... when the first offset is negative"
        ),
    )
    p_scenario.add_argument(
        "--thresholds",
        required=True,
        help="T1,T2: first proposition is reading1 <= T1, second is reading2 <= T2",
    )
    p_scenario.add_argument("-o", "--output", required=True, help="model file to write")
    p_scenario.set_defaults(func=cmd_scenario)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SweepLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ModelError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
