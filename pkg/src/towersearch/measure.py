"""Worst-case measurement over tensor corpora, verification drivers, CSV output.

A measurement runs one algorithm over every (tensor, key) pair of a corpus,
where keys come from the tensor's key universe, and records the maximum probe
count together with the instance that achieved it.  Runs are deterministic:
corpora are built in a fixed order, keys ascend, and the argmax is the first
pair reaching the maximum.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .bounds import recurrence_bound
from .generators import (
    GenSpec,
    Kind,
    enumerate_threshold_tensors,
    generate,
    key_universe,
)
from .search import (
    SearchOutcome,
    bird_search_2d,
    linear_scan_oracle,
    mahl_e_search,
    row_slab_baseline,
    saddleback_2d,
)
from .tensor import Extents, ProbeCounter, SortedTensor3, full_view


class UnknownAlgorithm(ValueError):
    """Algorithm id not in the registry."""


def _run_mahl(tensor, key):
    counter = ProbeCounter()
    return mahl_e_search(tensor, full_view(tensor), key, counter)


def _run_bird(tensor, key):
    counter = ProbeCounter()
    return bird_search_2d(tensor, full_view(tensor), key, counter)


def _run_saddleback(tensor, key):
    counter = ProbeCounter()
    return saddleback_2d(tensor, full_view(tensor), key, counter)


def _run_rows(tensor, key):
    counter = ProbeCounter()
    return row_slab_baseline(tensor, key, counter)


def _run_scan(tensor, key):
    return linear_scan_oracle(tensor, key)


ALGORITHMS: dict[str, Callable[[SortedTensor3, object], SearchOutcome]] = {
    "mahl": _run_mahl,
    "bird": _run_bird,
    "saddleback": _run_saddleback,
    "rows": _run_rows,
    "scan": _run_scan,
}

# 2D-only algorithms need a flat axis; run_algorithm surfaces that as ValueError.
PLANE_ALGORITHMS = frozenset({"bird", "saddleback"})


def run_algorithm(name: str, tensor: SortedTensor3, key) -> SearchOutcome:
    """Run a registered algorithm on the whole tensor with a fresh counter."""
    try:
        runner = ALGORITHMS[name]
    except KeyError:
        raise UnknownAlgorithm(
            f"unknown algorithm {name!r}; choose from {sorted(ALGORITHMS)}"
        ) from None
    if name in PLANE_ALGORITHMS and min(tensor.dims) > 1:
        raise ValueError(f"{name} requires a tensor with some extent equal to 1")
    return runner(tensor, key)


CorpusItem = tuple[GenSpec, SortedTensor3]


def threshold_corpus(dims: Extents, limit: int = 64) -> list[CorpusItem]:
    """Enumerated 0/1 threshold tensors; the seed records enumeration order."""
    out = []
    for i, tensor in enumerate(enumerate_threshold_tensors(dims, limit)):
        out.append((GenSpec(dims, Kind.THRESHOLD, seed=i), tensor))
    return out


def prefix_corpus(
    dims: Extents, count: int, base_seed: int = 0, alphabet_size: int = 2
) -> list[CorpusItem]:
    """Seeded prefix-sum tensors with seeds base_seed..base_seed+count-1."""
    out = []
    for s in range(base_seed, base_seed + count):
        spec = GenSpec(dims, Kind.PREFIX_SUM, seed=s, alphabet_size=alphabet_size)
        out.append((spec, generate(spec)))
    return out


def ranks_corpus(dims: Extents, count: int = 1, base_seed: int = 0) -> list[CorpusItem]:
    """All-distinct rank tensors (deepest key universes for their volume)."""
    out = []
    for s in range(base_seed, base_seed + count):
        spec = GenSpec(dims, Kind.DISTINCT_RANKS, seed=s)
        out.append((spec, generate(spec)))
    return out


@dataclass(frozen=True)
class WorstCaseReport:
    """Max probes of one algorithm on one shape over a corpus, vs the budget."""

    algorithm: str
    dims: Extents
    max_probes: int
    budget: int
    passed: bool
    argmax_spec: Optional[GenSpec]
    argmax_key: object
    searches: int


def measure_worst_case(
    algorithm: str,
    dims: Extents,
    corpus: Sequence[CorpusItem],
    keys_for: Callable[[SortedTensor3], Iterable] = key_universe,
) -> WorstCaseReport:
    """Maximize probe count over corpus x key-universe; compare to the budget."""
    if not corpus:
        raise ValueError("corpus must be non-empty")
    if algorithm not in ALGORITHMS:
        raise UnknownAlgorithm(
            f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}"
        )
    best = -1
    arg_spec = None
    arg_key = None
    searches = 0
    for spec, tensor in corpus:
        for key in keys_for(tensor):
            out = run_algorithm(algorithm, tensor, key)
            searches += 1
            if out.probes > best:
                best = out.probes
                arg_spec = spec
                arg_key = key
    budget = recurrence_bound(*dims)
    return WorstCaseReport(
        algorithm=algorithm,
        dims=dims,
        max_probes=best,
        budget=budget,
        passed=best <= budget,
        argmax_spec=arg_spec,
        argmax_key=arg_key,
        searches=searches,
    )


def default_corpus(dims: Extents, prefix_count: int = 25) -> list[CorpusItem]:
    """Corpus used by the CLI bench/verify commands: enumerated threshold
    tensors plus seeded prefix-sum tensors (alphabet 2 keeps universes small).
    """
    return threshold_corpus(dims, limit=64) + prefix_corpus(dims, prefix_count)


@dataclass(frozen=True)
class GrowthRow:
    size: int
    dims: Extents
    max_probes: int
    ratio: Optional[float]


GROWTH_FAMILIES = {
    "cube": lambda n: (n, n, n),
    "slab4": lambda n: (n, n, 4),
    "vector": lambda n: (1, 1, n),
}


def growth_table(
    algorithm: str,
    family: str,
    sizes: Sequence[int],
    corpus_for: Callable[[Extents], Sequence[CorpusItem]] = default_corpus,
) -> list[GrowthRow]:
    """Measured worst case per size plus the ratio to the previous size."""
    if family not in GROWTH_FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(GROWTH_FAMILIES)}")
    if list(sizes) != sorted(sizes):
        raise ValueError("sizes must be ascending")
    shape_of = GROWTH_FAMILIES[family]
    rows: list[GrowthRow] = []
    prev: Optional[int] = None
    for n in sizes:
        dims = shape_of(n)
        report = measure_worst_case(algorithm, dims, corpus_for(dims))
        ratio = None if prev is None else report.max_probes / prev
        rows.append(GrowthRow(n, dims, report.max_probes, ratio))
        prev = report.max_probes
    return rows


CSV_HEADER = "algorithm,n1,n2,n3,max_probes,budget,pass,argmax_seed,argmax_key"


def emit_csv(reports: Iterable[WorstCaseReport], dest: Union[str, io.TextIOBase]) -> None:
    """Write reports as CSV with a fixed header and deterministic row order
    (lexicographic on algorithm, then dims)."""
    rows = sorted(reports, key=lambda r: (r.algorithm, r.dims))
    lines = [CSV_HEADER]
    for r in rows:
        seed = "" if r.argmax_spec is None else str(r.argmax_spec.seed)
        key = "" if r.argmax_key is None else str(r.argmax_key)
        lines.append(
            f"{r.algorithm},{r.dims[0]},{r.dims[1]},{r.dims[2]},"
            f"{r.max_probes},{r.budget},{'true' if r.passed else 'false'},{seed},{key}"
        )
    payload = "\n".join(lines) + "\n"
    if isinstance(dest, str):
        with open(dest, "w", encoding="ascii", newline="\n") as f:
            f.write(payload)
    else:
        dest.write(payload)


# --- verification driver ----------------------------------------------------


@dataclass(frozen=True)
class VerifyFailure:
    dims: Extents
    spec: Optional[GenSpec]
    key: object
    detail: str


@dataclass(frozen=True)
class VerifyResult:
    shapes: int
    tensors: int
    searches: int
    failures: tuple[VerifyFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _all_shapes(max_extent: int) -> list[Extents]:
    shapes = [
        (a, b, c)
        for a in range(1, max_extent + 1)
        for b in range(1, max_extent + 1)
        for c in range(1, max_extent + 1)
    ]
    shapes.sort(key=lambda d: (d[0] * d[1] * d[2], d))
    return shapes


def verify_shapes(
    max_extent: int,
    corpus_kind: str = "threshold",
    count: int = 50,
    base_seed: int = 0,
    check_budget: bool = True,
    max_failures: int = 1,
) -> VerifyResult:
    """Oracle-equivalence and budget-soundness sweep over all shapes with
    extents <= max_extent, in ascending volume order.

    Stops after max_failures failures so the first (minimal) counterexample
    is reported quickly.
    """
    if max_extent < 1:
        raise ValueError("max_extent must be >= 1")
    if corpus_kind not in ("threshold", "prefix"):
        raise ValueError("corpus must be 'threshold' or 'prefix'")
    failures: list[VerifyFailure] = []
    tensors = 0
    searches = 0
    shapes = _all_shapes(max_extent)
    for dims in shapes:
        if corpus_kind == "threshold":
            corpus = threshold_corpus(dims, limit=count)
        else:
            corpus = prefix_corpus(dims, count, base_seed)
        budget = recurrence_bound(*dims)
        for spec, tensor in corpus:
            tensors += 1
            for key in key_universe(tensor):
                searches += 1
                got = _run_mahl(tensor, key)
                want = linear_scan_oracle(tensor, key)
                if got.found != want.found:
                    failures.append(VerifyFailure(
                        dims, spec, key,
                        f"membership mismatch: search={got.found} oracle={want.found}",
                    ))
                elif got.found and tensor.at(*got.index) != key:
                    failures.append(VerifyFailure(
                        dims, spec, key,
                        f"found index {got.index} does not hold the key",
                    ))
                elif check_budget and got.probes > budget:
                    failures.append(VerifyFailure(
                        dims, spec, key,
                        f"probes {got.probes} exceed budget {budget}",
                    ))
                if len(failures) >= max_failures:
                    return VerifyResult(len(shapes), tensors, searches, tuple(failures))
    return VerifyResult(len(shapes), tensors, searches, tuple(failures))


def exhaustive_01_worst(algorithm: str, dims: Extents) -> int:
    """Exact worst case over every monotone 0/1 tensor with a key strictly
    between the two values.

    Any run on any tensor is replayed exactly by the 0/1 tensor marking which
    cells exceed the key, so this equals the worst case over all instances.
    Cost grows like the number of up-sets of the grid; small dims only.
    """
    from .generators import enumerate_monotone_01_tensors

    key = Fraction(1, 2)
    worst = 0
    for tensor in enumerate_monotone_01_tensors(dims):
        out = run_algorithm(algorithm, tensor, key)
        if out.probes > worst:
            worst = out.probes
    return worst
