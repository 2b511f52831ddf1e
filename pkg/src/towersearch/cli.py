"""Batch command line: generate fixtures, run searches, verify, benchmark.

Exit codes: 0 success (for ``search``: key found), 1 key not found or a
verification property failed, 2 bad flags or malformed inputs, 3 I/O failure,
4 tensor file not sorted.  All randomness flows from ``--seed``; no command
reads the clock, so identical invocations produce identical outputs.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .generators import GenSpec, Kind, generate
from .measure import (
    ALGORITHMS,
    UnknownAlgorithm,
    default_corpus,
    emit_csv,
    measure_worst_case,
    run_algorithm,
    verify_shapes,
)
from .tensor import (
    NotSorted,
    TensorFormatError,
    read_tensor_text,
    write_tensor_text,
)

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_BAD_ARGS = 2
EXIT_IO = 3
EXIT_NOT_SORTED = 4


def _dims_arg(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"dims must be n1,n2,n3, got {text!r}")
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must be integers, got {text!r}") from None
    if any(n < 1 for n in dims):
        raise argparse.ArgumentTypeError(f"extents must be >= 1, got {text!r}")
    return dims


def _key_arg(text: str) -> object:
    try:
        return Fraction(text)  # exact for "5", "1/2" and "2.5" alike
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad key {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="towersearch",
        description="Probe-counted membership search in sorted 3D arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a generated tensor file")
    gen.add_argument("--dims", type=_dims_arg, required=True)
    gen.add_argument("--kind", choices=["prefix", "threshold"], required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--alphabet", type=int, default=4)
    gen.add_argument("--out", required=True)

    search = sub.add_parser("search", help="search one tensor file for a key")
    search.add_argument("--tensor", required=True)
    search.add_argument("--key", type=_key_arg, required=True)
    search.add_argument("--algo", choices=sorted(ALGORITHMS), default="mahl")

    verify = sub.add_parser("verify", help="oracle/budget sweep over small shapes")
    verify.add_argument("--dims-max", type=int, required=True)
    verify.add_argument("--corpus", choices=["threshold", "prefix"], default="threshold")
    verify.add_argument("--count", type=int, default=50)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--no-budget", action="store_true",
                        help="check oracle equivalence only")

    bench = sub.add_parser("bench", help="worst-case measurements to CSV")
    bench.add_argument("--shapes", required=True,
                       help="file with one 'n1 n2 n3' triple per line")
    bench.add_argument("--algos", required=True,
                       help="comma-separated algorithm list")
    bench.add_argument("--prefix-count", type=int, default=25)
    bench.add_argument("--out", required=True)
    return parser


def cmd_gen(args) -> int:
    kind = Kind.PREFIX_SUM if args.kind == "prefix" else Kind.THRESHOLD
    spec = GenSpec(args.dims, kind, args.seed, args.alphabet)
    tensor = generate(spec)
    try:
        write_tensor_text(tensor, args.out)
    except OSError as e:
        print(f"error: cannot write {args.out}: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        tensor = read_tensor_text(args.tensor)
    except OSError as e:
        print(f"error: cannot read {args.tensor}: {e}", file=sys.stderr)
        return EXIT_IO
    except TensorFormatError as e:
        print(f"error: {args.tensor}: {e}", file=sys.stderr)
        return EXIT_IO
    except NotSorted as e:
        print(f"error: {args.tensor} is not sorted: {e}", file=sys.stderr)
        return EXIT_NOT_SORTED
    key = args.key
    if key.denominator == 1:
        key = key.numerator  # integer keys compare faster and print cleanly
    try:
        out = run_algorithm(args.algo, tensor, key)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_ARGS
    index = ",".join(str(i) for i in out.index) if out.found else "-"
    print(f"found={'true' if out.found else 'false'} index={index} probes={out.probes}")
    return EXIT_OK if out.found else EXIT_NOT_FOUND


def cmd_verify(args) -> int:
    if args.dims_max < 1:
        print("error: --dims-max must be >= 1", file=sys.stderr)
        return EXIT_BAD_ARGS
    result = verify_shapes(
        args.dims_max,
        corpus_kind=args.corpus,
        count=args.count,
        base_seed=args.seed,
        check_budget=not args.no_budget,
    )
    if result.ok:
        print(
            f"VERIFY PASS: {result.shapes} shapes, {result.tensors} tensors, "
            f"{result.searches} searches"
        )
        return EXIT_OK
    f = result.failures[0]
    spec = "enumerated" if f.spec is None else (
        f"kind={f.spec.kind.value} seed={f.spec.seed} alphabet={f.spec.alphabet_size}"
    )
    print(
        f"VERIFY FAIL: dims={f.dims[0]}x{f.dims[1]}x{f.dims[2]} {spec} "
        f"key={f.key}: {f.detail}"
    )
    return EXIT_NOT_FOUND


def _parse_shapes_file(path: str) -> list[tuple[int, int, int]]:
    with open(path, "r", encoding="ascii") as f:
        lines = f.read().splitlines()
    shapes = []
    for ln, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {ln}: expected 'n1 n2 n3', got {line!r}")
        dims = tuple(int(p) for p in parts)
        if any(n < 1 for n in dims):
            raise ValueError(f"line {ln}: extents must be >= 1")
        shapes.append(dims)
    return shapes


def cmd_bench(args) -> int:
    try:
        shapes = _parse_shapes_file(args.shapes)
    except OSError as e:
        print(f"error: cannot read {args.shapes}: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"error: {args.shapes}: {e}", file=sys.stderr)
        return EXIT_BAD_ARGS
    algos = [a for a in args.algos.split(",") if a]
    for a in algos:
        if a not in ALGORITHMS:
            print(f"error: unknown algorithm {a!r}", file=sys.stderr)
            return EXIT_BAD_ARGS
    reports = []
    for dims in shapes:
        corpus = default_corpus(dims, prefix_count=args.prefix_count)
        for algo in algos:
            try:
                reports.append(measure_worst_case(algo, dims, corpus))
            except (ValueError, UnknownAlgorithm) as e:
                print(f"error: {algo} on {dims}: {e}", file=sys.stderr)
                return EXIT_BAD_ARGS
    try:
        emit_csv(reports, args.out)
    except OSError as e:
        print(f"error: cannot write {args.out}: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "gen": cmd_gen,
        "search": cmd_search,
        "verify": cmd_verify,
        "bench": cmd_bench,
    }[args.command]
    return handler(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
