"""Command-line front end.

Exit codes: 0 success, 1 internal failure, 2 usage or input parse errors.
Words on the command line are letter tokens joined by '.' (e.g. b.b.b);
single-character alphabets also accept plain strings like bbb.
"""

from __future__ import annotations

import argparse
import sys

from .automata import member
from .bench import ALGORITHMS, BenchConfig, parse_sizes, records_to_csv, run_benchmark, summarize, summary_to_csv
from .equivalence import equivalent, minimize, product_witness
from .fileformat import AutomatonFormatError, load_automaton, save_automaton
from .generator import GenConfig, default_alphabet, gen_random_minimal_wdba
from .learner import learn
from .mp import mp_learn
from .teacher import Teacher
from .words import Decomposition


class InputError(Exception):
    """User-facing input problem: report and exit 2."""


def _load(path: str):
    try:
        return load_automaton(path)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except AutomatonFormatError as e:
        raise InputError(f"{path}: {e}")


def _word(automaton, text: str, what: str):
    try:
        return automaton.alphabet.parse_word(text)
    except ValueError as e:
        raise InputError(f"bad {what}: {e}")


def cmd_member(args) -> int:
    a = _load(args.automaton)
    prefix = _word(a, args.prefix, "prefix")
    period = _word(a, args.period, "period")
    if not period:
        raise InputError("period must be non-empty")
    print(int(member(a, Decomposition(prefix, period))))
    return 0


def cmd_equiv(args) -> int:
    a, b = _load(args.a), _load(args.b)
    if a.alphabet.symbols != b.alphabet.symbols:
        raise InputError("automata have different alphabets")
    witness = product_witness(a, b)
    if witness is None:
        print("equivalent")
    else:
        print(f"cex {witness.format(a.alphabet)}")
    return 0


def cmd_minimize(args) -> int:
    a = _load(args.input)
    save_automaton(minimize(a), args.output)
    return 0


def cmd_gen(args) -> int:
    cfg = GenConfig(args.states, args.alphabet, args.scc_min, args.scc_max, args.seed)
    a = gen_random_minimal_wdba(cfg)
    save_automaton(a, args.out)
    return 0


def cmd_learn(args) -> int:
    target = _load(args.target)
    trace_lines: list[str] = []
    trace = trace_lines.append if args.trace else None
    teacher = Teacher(target)
    if args.backend == "mp":
        result = mp_learn(teacher, trace=trace)
    else:
        result = learn(teacher, backend=args.backend, search_mode=args.search, trace=trace)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("\n".join(trace_lines) + "\n")
    if args.out:
        save_automaton(result.automaton, args.out)
    if not equivalent(result.automaton, target):
        print("learned automaton failed the final equivalence check", file=sys.stderr)
        return 1
    print(f"states={result.automaton.state_count} eq={result.eq_count} mq={result.mq_count}")
    return 0


def cmd_bench(args) -> int:
    try:
        sizes = parse_sizes(args.sizes)
    except ValueError as e:
        raise InputError(str(e))
    algorithms = tuple(args.algorithms.split(","))
    for algo in algorithms:
        if algo not in ALGORITHMS:
            raise InputError(f"unknown algorithm {algo!r}; choose from {','.join(ALGORITHMS)}")
    cfg = BenchConfig(
        sizes=sizes,
        per_size=args.per_size,
        algorithms=algorithms,
        alphabet_size=args.alphabet,
        scc_min=args.scc_min,
        scc_max=args.scc_max,
        seed=args.seed,
        measure_time=not args.no_timing,
    )

    def progress(done, total):
        print(f"\r{done}/{total} instances", end="", file=sys.stderr, flush=True)

    records = run_benchmark(cfg, jobs=args.jobs, progress=progress if not args.quiet else None)
    if not args.quiet:
        print(file=sys.stderr)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(records_to_csv(records))
    summary = summarize(records)
    summary_path = args.summary or (args.out + ".summary.csv")
    with open(summary_path, "w", encoding="utf-8") as fh:
        fh.write(summary_to_csv(summary))
    if not args.quiet:
        for row in summary:
            print(f"size={row['size']:>4} {row['algorithm']:<6} mean_total={row['mean_total']:.2f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wdbalearn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", help="decide membership of prefix.period^w")
    p.add_argument("--automaton", required=True)
    p.add_argument("--prefix", default="")
    p.add_argument("--period", required=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("equiv", help="check language equivalence of two automata")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("minimize", help="write the canonical minimal automaton")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("gen", help="generate a random minimal weak DBA")
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--scc-min", type=int, default=1)
    p.add_argument("--scc-max", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("learn", help="learn a target automaton through queries")
    p.add_argument("--target", required=True)
    p.add_argument("--backend", choices=["table", "tree", "mp"], default="tree")
    p.add_argument("--search", choices=["binary", "linear"], default="binary")
    p.add_argument("--trace")
    p.add_argument("--out")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("bench", help="run the benchmark protocol and write CSV")
    p.add_argument("--sizes", default="10:100:10")
    p.add_argument("--per-size", type=int, default=50)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--scc-min", type=int, default=2)
    p.add_argument("--scc-max", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algorithms", default=",".join(ALGORITHMS))
    p.add_argument("--out", required=True)
    p.add_argument("--summary")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="zero wall_ms for byte-reproducible CSV")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # internal failure
        print(f"internal error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
