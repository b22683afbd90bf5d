"""
Command Line
============
``quasiperiod`` entry point: exact baselines, testers, the streaming
algorithm, generators, certificates and experiment sweeps.

Exit codes: 0 success or YES, 1 NO, 2 usage or input error,
3 internal assertion failure.
"""

import argparse
import logging
import random
import sys
from contextlib import contextmanager
from typing import BinaryIO, Dict, Iterator, List, Optional, Sequence, TextIO

from pydantic import ValidationError

from .errors import InvariantViolation, ParameterError, QuasiperiodError
from .exact_core import (
    Text,
    all_covers,
    borders_up_to,
    is_cover,
    is_seed,
    occurrences,
    period_set,
    shortest_cover,
)
from .farness import dist_to_Q, gen_coverable, gen_far
from .policies import (
    PRESET_SWEEPS,
    ExperimentSpec,
    FarnessPolicy,
    StreamMode,
    StreamPolicy,
    TesterConfig,
)
from .settings import settings
from .streaming import iter_letters, stream_init
from .tester import FileOracle, QueryOracle, Verdict, run_cover_tester, run_seed_tester

logger = logging.getLogger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


# =============================================================================
# Input and Output
# =============================================================================


@contextmanager
def _open_binary(path: str) -> Iterator[BinaryIO]:
    if path == "-":
        yield sys.stdin.buffer
    else:
        with open(path, "rb") as handle:
            yield handle


@contextmanager
def _open_output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as handle:
            yield handle


def _to_symbol(letter: int, fmt: StreamMode) -> int:
    # byte b is symbol b + 1; 0 stays reserved
    return letter + 1 if fmt == "bytes" else letter


def read_text(path: str, fmt: StreamMode) -> Text:
    with _open_binary(path) as stream:
        return Text(tuple(_to_symbol(x, fmt) for x in iter_letters(stream, fmt)))


def parse_pattern(value: str, fmt: StreamMode) -> Text:
    """A candidate given on the command line: raw characters, or comma-separated integers."""
    if fmt == "bytes":
        return Text(tuple(b + 1 for b in value.encode()))
    tokens = value.replace(",", " ").split()
    try:
        return Text(tuple(int(token) for token in tokens))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"malformed integer pattern: {value!r}") from exc


def fit_alphabet(text: Text, sigma: int) -> Text:
    """Relabel letters onto [1, sigma] by first appearance unless they already lie there."""
    if not text.letters or max(text.letters) <= sigma:
        return text
    table: Dict[int, int] = {}
    for letter in text.letters:
        table.setdefault(letter, len(table) + 1)
    if len(table) > sigma:
        raise ParameterError(f"text has {len(table)} distinct letters but sigma={sigma}")
    return Text(tuple(table[letter] for letter in text.letters), sigma)


def write_text(text: Text, fmt: StreamMode, out: BinaryIO) -> None:
    if fmt == "bytes":
        if text.letters and max(text.letters) > 256:
            raise QuasiperiodError("alphabet larger than 256 cannot be written as bytes")
        out.write(bytes(x - 1 for x in text.letters))
    else:
        out.write("".join(f"{x}\n" for x in text.letters).encode())


def _join(values: Sequence[int]) -> str:
    return " ".join(str(v) for v in values)


# =============================================================================
# Commands
# =============================================================================


def cmd_exact(args: argparse.Namespace) -> int:
    text = read_text(args.input, args.format)
    lines: List[str] = []
    if args.all_covers:
        lines.append(_join(all_covers(text)))
    if args.shortest_cover:
        lines.append(str(shortest_cover(text)))
    if args.borders is not None:
        lines.append(_join(borders_up_to(text, args.borders)))
    if args.period_set is not None:
        periods = period_set(parse_pattern(args.period_set, args.format))
        lines.append(f"{_join(periods.periods)} gcd={periods.gcd_value}")
    if args.is_cover is not None:
        lines.append(str(is_cover(parse_pattern(args.is_cover, args.format), text)).lower())
    if args.is_seed is not None:
        lines.append(str(is_seed(parse_pattern(args.is_seed, args.format), text)).lower())
    if args.occurrences is not None:
        lines.append(_join(occurrences(parse_pattern(args.occurrences, args.format), text)))
    if not lines:
        lines.append(_join(all_covers(text)))
    print("\n".join(lines))
    return EXIT_YES


def _print_verdict(verdict: Verdict, config: TesterConfig) -> int:
    print(verdict.answer)
    print(f"queries_used {verdict.queries_used}")
    print(f"query_bound {config.query_bound}")
    print(f"survivors {_join(verdict.surviving_candidates) or '-'}")
    return EXIT_YES if verdict.answer == "YES" else EXIT_NO


def _run_tester(args: argparse.Namespace, seeds: bool) -> int:
    tester = run_seed_tester if seeds else run_cover_tester
    if args.format == "bytes" and args.input != "-":
        with FileOracle(args.input) as oracle:
            config = TesterConfig(
                q=args.q, n=oracle.length, epsilon=args.epsilon, rng_seed=args.seed
            )
            return _print_verdict(tester(config, oracle), config)
    text = read_text(args.input, args.format)
    config = TesterConfig(q=args.q, n=len(text), epsilon=args.epsilon, rng_seed=args.seed)
    return _print_verdict(tester(config, QueryOracle.from_text(text)), config)


def cmd_test(args: argparse.Namespace) -> int:
    return _run_tester(args, seeds=False)


def cmd_seed_test(args: argparse.Namespace) -> int:
    return _run_tester(args, seeds=True)


def cmd_stream(args: argparse.Namespace) -> int:
    policy = StreamPolicy(q=args.q, mode=args.format)
    state = stream_init(policy.q, policy.mode)
    with _open_binary(args.input) as stream:
        for letter in iter_letters(stream, policy.mode):
            state.push(letter)
    result = state.finalize()
    print("none" if result is None else result)
    if args.stats:
        print(f"peak_buffer {state.peak_buffer}")
        print(f"letters {state.letters_seen}")
    return EXIT_YES


def cmd_gen(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    if args.kind == "coverable":
        if args.pattern is None:
            raise QuasiperiodError("gen coverable needs --pattern")
        text = gen_coverable(parse_pattern(args.pattern, args.format), args.n, rng)
    else:
        policy = FarnessPolicy(verify_transitions=args.verify)
        certificate = gen_far(
            args.q,
            args.sigma,
            args.n,
            args.epsilon,
            rng,
            max_attempts=policy.max_attempts,
            budget=policy.enumeration_budget,
            target=args.target,
            verify=policy.verify_transitions,
        )
        assert certificate.text is not None
        text = certificate.text
        if args.certificate:
            with open(args.certificate, "w") as handle:
                handle.write(certificate.to_text())

    if args.out is None or args.out == "-":
        write_text(text, args.format, sys.stdout.buffer)
        sys.stdout.buffer.flush()
    else:
        with open(args.out, "wb") as handle:
            write_text(text, args.format, handle)
    return EXIT_YES


def cmd_certify(args: argparse.Namespace) -> int:
    text = read_text(args.input, args.format)
    if args.format == "bytes":
        # raw bytes land far above sigma; only their pattern of equalities matters
        text = fit_alphabet(text, args.sigma)
    policy = FarnessPolicy(verify_transitions=args.verify)
    certificate = dist_to_Q(
        text,
        args.q,
        args.sigma,
        budget=policy.enumeration_budget,
        target=args.target,
        verify=policy.verify_transitions,
    )
    with _open_output(args.out) as out:
        out.write(certificate.to_text())
    if args.epsilon is not None:
        far = certificate.is_far(args.epsilon)
        print(f"far {str(far).lower()}", file=sys.stderr)
        return EXIT_YES if far else EXIT_NO
    return EXIT_YES


def cmd_experiment(args: argparse.Namespace) -> int:
    # imported here so the light commands never load SQLAlchemy
    from .experiments import ExperimentRunner, emit_rows, open_journal

    if args.spec is None and not args.preset:
        raise ParameterError("experiment needs a spec file or at least one --preset")
    spec = ExperimentSpec()
    if args.spec is not None:
        with open(args.spec) as handle:
            spec = ExperimentSpec.model_validate_json(handle.read() or "{}")
    if args.preset:
        presets = [PRESET_SWEEPS[name]() for name in args.preset]
        spec = ExperimentSpec(
            master_seed=spec.master_seed, experiments=[*spec.experiments, *presets]
        )
    if args.seed is not None:
        spec = spec.model_copy(update={"master_seed": args.seed})
    if args.trials is not None:
        sweeps = [sweep.model_copy(update={"trials": args.trials}) for sweep in spec.experiments]
        spec = spec.model_copy(update={"experiments": sweeps})
    journal_file = args.journal or settings.journal_db_file
    journal = open_journal(journal_file) if journal_file else None
    if args.fresh and journal is None:
        logger.warning("[EXPERIMENT] --fresh has no effect without a journal")
    runner = ExperimentRunner(
        spec,
        journal=journal,
        jobs=args.jobs,
        farness=FarnessPolicy(verify_transitions=args.verify),
        fresh=args.fresh,
    )
    rows = runner.run()
    with _open_output(args.out) as out:
        emit_rows(rows, out)
    logger.info(f"[EXPERIMENT] wrote {len(rows)} row(s)")
    return EXIT_YES


# =============================================================================
# Parser
# =============================================================================


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("bytes", "ints"),
        default="bytes",
        help="bytes: one symbol per byte; ints: whitespace-separated positive integers",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasiperiod",
        description="Covers, seeds and their sublinear testers.",
    )
    parser.add_argument("--log-level", default=None, help="Overrides QP_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    exact = commands.add_parser("exact", help="Exact baselines on a whole text")
    exact.add_argument("input", nargs="?", default="-", help="Input file, '-' for stdin")
    _add_format(exact)
    exact.add_argument("--all-covers", action="store_true")
    exact.add_argument("--shortest-cover", action="store_true")
    exact.add_argument("--borders", type=int, metavar="Q", help="Border lengths up to Q")
    exact.add_argument("--period-set", metavar="C")
    exact.add_argument("--is-cover", metavar="C")
    exact.add_argument("--is-seed", metavar="C")
    exact.add_argument("--occurrences", metavar="C")
    exact.set_defaults(handler=cmd_exact)

    for name, handler, summary in (
        ("test", cmd_test, "Sublinear q-cover tester"),
        ("seed-test", cmd_seed_test, "Sublinear q-seed tester"),
    ):
        tester = commands.add_parser(name, help=summary)
        tester.add_argument("input", nargs="?", default="-")
        _add_format(tester)
        tester.add_argument("--q", type=int, required=True)
        tester.add_argument("--epsilon", type=float, default=0.1)
        tester.add_argument("--seed", type=int, default=0)
        tester.set_defaults(handler=handler)

    stream = commands.add_parser("stream", help="One-pass shortest cover of length at most q")
    stream.add_argument("input", nargs="?", default="-")
    _add_format(stream)
    stream.add_argument("--q", type=int, required=True)
    stream.add_argument("--stats", action="store_true", help="Print the peak buffer size")
    stream.set_defaults(handler=cmd_stream)

    gen = commands.add_parser("gen", help="Generate coverable or certified-far texts")
    gen.add_argument("kind", choices=("coverable", "far"))
    _add_format(gen)
    gen.add_argument("--pattern", help="Cover for 'coverable'")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--q", type=int, default=2)
    gen.add_argument("--sigma", type=int, default=2)
    gen.add_argument("--epsilon", type=float, default=0.1)
    gen.add_argument("--target", choices=("cover", "seed"), default="cover")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)
    gen.add_argument("--certificate", default=None, help="Write the farness certificate here")
    gen.add_argument("--verify", action="store_true", help="Re-check every optimal placement chain")
    gen.set_defaults(handler=cmd_gen)

    certify = commands.add_parser(
        "certify",
        help="Exhaustive distance of a text to Q(q)",
        description="Byte input is relabelled onto [1, sigma] by first appearance.",
    )
    certify.add_argument("input", nargs="?", default="-")
    _add_format(certify)
    certify.add_argument("--q", type=int, required=True)
    certify.add_argument("--sigma", type=int, required=True)
    certify.add_argument("--target", choices=("cover", "seed"), default="cover")
    certify.add_argument("--epsilon", type=float, default=None, help="Exit 1 unless epsilon-far")
    certify.add_argument("--out", default=None)
    certify.add_argument("--verify", action="store_true", help="Re-check every optimal placement chain")
    certify.set_defaults(handler=cmd_certify)

    experiment = commands.add_parser("experiment", help="Run the sweeps of a JSON spec file")
    experiment.add_argument("spec", nargs="?", default=None)
    experiment.add_argument(
        "--preset",
        action="append",
        choices=sorted(PRESET_SWEEPS),
        help="Add a preset sweep; may be repeated",
    )
    experiment.add_argument("--jobs", type=int, default=settings.jobs)
    experiment.add_argument("--trials", type=int, default=None, help="Override trials per sweep")
    experiment.add_argument("--seed", type=int, default=None, help="Override the master seed")
    experiment.add_argument("--out", default=None)
    experiment.add_argument("--journal", default=None, help="SQLite journal file for resume")
    experiment.add_argument(
        "--fresh", action="store_true", help="Drop journaled rows of each sweep before running"
    )
    experiment.add_argument("--verify", action="store_true", help="Re-check far instances")
    experiment.set_defaults(handler=cmd_experiment)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (QuasiperiodError, ValidationError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
