"""Deterministic construction of sorted tensors and exhaustive key universes.

All randomness flows through SplitMix64 (Steele/Lea/Vigna constants), a
64-bit mix generator with defined integer semantics, so identical GenSpecs
produce bit-identical tensors on every platform.  Values are integers so the
equality leg of the three-way probe is exact; key universes fill the gaps
between distinct values with midpoints that stay exact (integer when the gap
is even, else a half-integer Fraction, i.e. the midpoint on a doubled scale).
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .tensor import Extents, SortedTensor3, tensor_from_values

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Splittable 64-bit mix PRNG; next() advances state by the golden gamma."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Uniform-ish draw in [0, bound); modulo bias is irrelevant here."""
        return self.next_u64() % bound

    def split(self) -> "SplitMix64":
        """Independent child stream seeded from this stream's next output."""
        return SplitMix64(self.next_u64())


class Kind(Enum):
    PREFIX_SUM = "prefix"
    THRESHOLD = "threshold"
    ALL_EQUAL = "all-equal"
    DISTINCT_RANKS = "ranks"


@dataclass(frozen=True, slots=True)
class GenSpec:
    """Recipe for one deterministic tensor.

    ``alphabet_size`` bounds the per-cell increment for prefix-sum tensors
    (small alphabets mean long plateaus of equal values), the weight range
    for threshold tensors, and the constant for all-equal tensors.
    """

    dims: Extents
    kind: Kind
    seed: int
    alphabet_size: int = 4


def prefix_sum_tensor(dims: Extents, increments: Sequence[int]) -> SortedTensor3:
    """Tensor whose entry at i is the sum of increments over all cells <= i.

    Nonnegative increments make the result monotone by construction.
    """
    if any(g < 0 for g in increments):
        raise ValueError("increments must be nonnegative")
    a = np.asarray(increments, dtype=np.int64).reshape(dims)
    for axis in range(3):
        a = np.cumsum(a, axis=axis)
    return tensor_from_values(dims, [int(v) for v in a.reshape(-1)])


def threshold_tensor(dims: Extents, weights: tuple[int, int, int], t: int) -> SortedTensor3:
    """0/1 tensor: cell (i,j,k) is 1 iff w1*i + w2*j + w3*k >= t.

    Nonnegative weights make the 1-region an up-set, hence monotone.
    """
    w1, w2, w3 = weights
    if w1 < 0 or w2 < 0 or w3 < 0:
        raise ValueError("weights must be nonnegative")
    n1, n2, n3 = dims
    values = [
        1 if w1 * i1 + w2 * i2 + w3 * i3 >= t else 0
        for i1 in range(n1)
        for i2 in range(n2)
        for i3 in range(n3)
    ]
    return tensor_from_values(dims, values)


def gen_prefix_sum_tensor(spec: GenSpec) -> SortedTensor3:
    if spec.kind is not Kind.PREFIX_SUM:
        raise ValueError(f"spec kind is {spec.kind}, expected PREFIX_SUM")
    rng = SplitMix64(spec.seed)
    n = spec.dims[0] * spec.dims[1] * spec.dims[2]
    increments = [rng.next_below(spec.alphabet_size) for _ in range(n)]
    return prefix_sum_tensor(spec.dims, increments)


def gen_threshold_tensor(spec: GenSpec) -> SortedTensor3:
    if spec.kind is not Kind.THRESHOLD:
        raise ValueError(f"spec kind is {spec.kind}, expected THRESHOLD")
    rng = SplitMix64(spec.seed)
    w = (
        rng.next_below(spec.alphabet_size),
        rng.next_below(spec.alphabet_size),
        rng.next_below(spec.alphabet_size),
    )
    n1, n2, n3 = spec.dims
    max_dot = w[0] * (n1 - 1) + w[1] * (n2 - 1) + w[2] * (n3 - 1)
    # t ranges over 0 (all ones) .. max_dot+1 (all zeros).
    t = rng.next_below(max_dot + 2)
    return threshold_tensor(spec.dims, w, t)


def gen_all_equal_tensor(spec: GenSpec) -> SortedTensor3:
    if spec.kind is not Kind.ALL_EQUAL:
        raise ValueError(f"spec kind is {spec.kind}, expected ALL_EQUAL")
    c = SplitMix64(spec.seed).next_below(spec.alphabet_size)
    n = spec.dims[0] * spec.dims[1] * spec.dims[2]
    return tensor_from_values(spec.dims, [c] * n)


def gen_distinct_ranks_tensor(spec: GenSpec) -> SortedTensor3:
    """All-distinct monotone tensor: ranks 0..n-1 along a seeded linear
    extension of the grid order (greedy minimal-cell draws)."""
    if spec.kind is not Kind.DISTINCT_RANKS:
        raise ValueError(f"spec kind is {spec.kind}, expected DISTINCT_RANKS")
    rng = SplitMix64(spec.seed)
    n1, n2, n3 = spec.dims
    cells = [(i1, i2, i3) for i1 in range(n1) for i2 in range(n2) for i3 in range(n3)]
    # Priority order is a random key per cell; a cell may be emitted once all
    # its backward neighbors are out, which keeps the ranks monotone.
    prio = {c: (rng.next_u64(), c) for c in cells}
    indegree = {}
    for c in cells:
        indegree[c] = sum(1 for k in range(3) if c[k] > 0)
    ready = [(prio[c], c) for c in cells if indegree[c] == 0]
    heapq.heapify(ready)
    values = {}
    rank = 0
    while ready:
        _, c = heapq.heappop(ready)
        values[c] = rank
        rank += 1
        for k in range(3):
            nxt = list(c)
            nxt[k] += 1
            if nxt[k] < spec.dims[k]:
                nc = (nxt[0], nxt[1], nxt[2])
                indegree[nc] -= 1
                if indegree[nc] == 0:
                    heapq.heappush(ready, (prio[nc], nc))
    flat = [values[c] for c in cells]
    return tensor_from_values(spec.dims, flat)


_GENERATORS = {
    Kind.PREFIX_SUM: gen_prefix_sum_tensor,
    Kind.THRESHOLD: gen_threshold_tensor,
    Kind.ALL_EQUAL: gen_all_equal_tensor,
    Kind.DISTINCT_RANKS: gen_distinct_ranks_tensor,
}


def generate(spec: GenSpec) -> SortedTensor3:
    """Build the tensor a GenSpec describes; always validator-clean."""
    return _GENERATORS[spec.kind](spec)


def key_universe(tensor: SortedTensor3) -> list:
    """All outcome classes of keys for this tensor.

    Sorted distinct values, one representative strictly inside every gap
    between consecutive distinct values, one key below the minimum and one
    above the maximum.  A search's behavior depends on the key only through
    its position relative to the distinct values, so maximizing probes over
    this universe maximizes over all real keys.  Size is 2*(#distinct)+1.
    """
    distinct = sorted(set(tensor.values))
    first = distinct[0]
    below = first - 1 if isinstance(first, int) else first - 1.0
    universe = [below]
    for v, w in zip(distinct, distinct[1:]):
        universe.append(v)
        if isinstance(v, int) and isinstance(w, int):
            s = v + w
            universe.append(s // 2 if s % 2 == 0 else Fraction(s, 2))
        else:
            universe.append((v + w) / 2)
    universe.append(distinct[-1])
    last = distinct[-1]
    universe.append(last + 1 if isinstance(last, int) else last + 1.0)
    return universe


def enumerate_threshold_tensors(
    dims: Extents, limit: int, weight_range: int = 4
) -> Iterator[SortedTensor3]:
    """Distinct 0/1 monotone tensors from threshold sweeps over a fixed
    integer weight grid, in deterministic first-seen order, capped at limit.

    Weights run over {0..weight_range-1}^3 in lexicographic order and the
    threshold over every level of the weight function plus one above the
    maximum, so both constant tensors always appear.
    """
    n1, n2, n3 = dims
    seen = set()
    emitted = 0
    for w1, w2, w3 in itertools.product(range(weight_range), repeat=3):
        dots = {
            w1 * i1 + w2 * i2 + w3 * i3
            for i1 in range(n1)
            for i2 in range(n2)
            for i3 in range(n3)
        }
        levels = sorted(dots)
        levels.append(levels[-1] + 1)
        for t in levels:
            values = tuple(
                1 if w1 * i1 + w2 * i2 + w3 * i3 >= t else 0
                for i1 in range(n1)
                for i2 in range(n2)
                for i3 in range(n3)
            )
            if values in seen:
                continue
            seen.add(values)
            yield SortedTensor3(dims, values)  # monotone by construction
            emitted += 1
            if emitted >= limit:
                return


def enumerate_monotone_01_tensors(dims: Extents) -> Iterator[SortedTensor3]:
    """Every 0/1 monotone tensor of the given shape (exhaustive up-sets).

    A monotone 0/1 tensor is determined by per-fiber switch positions
    theta(i1, i2) in 0..n3 that are nonincreasing in both arguments
    (cell (i1,i2,k) is 1 iff k >= theta(i1,i2)).  The count is the box
    product formula, so keep the volume small.
    """
    n1, n2, n3 = dims

    def fiber_rows(prev):
        # Nonincreasing rows bounded cellwise by the previous row.
        def rec(j, last, acc):
            if j == n2:
                yield tuple(acc)
                return
            ub = min(last, prev[j])
            for v in range(ub, -1, -1):
                acc.append(v)
                yield from rec(j + 1, v, acc)
                acc.pop()

        yield from rec(0, n3, [])

    def build(i, prev, thetas):
        if i == n1:
            values = []
            for row in thetas:
                for t in row:
                    values.extend([0] * t + [1] * (n3 - t))
            yield SortedTensor3(dims, tuple(values))
            return
        for row in fiber_rows(prev):
            thetas.append(row)
            yield from build(i + 1, row, thetas)
            thetas.pop()

    yield from build(0, (n3,) * n2, [])


def enumerate_monotone_01_matrices(m: int, n: int) -> Iterator[SortedTensor3]:
    """Every 0/1 monotone m-by-n matrix as a (1, m, n) tensor.

    Such a matrix is a row-threshold staircase: row i is 0^t[i] 1^(n-t[i])
    with t nonincreasing, so there are C(m+n, m) of them.
    """
    for cuts in itertools.combinations_with_replacement(range(n + 1), m):
        # cuts is nondecreasing; reverse it so later rows switch on earlier.
        thresholds = cuts[::-1]
        values = []
        for i in range(m):
            t = thresholds[i]
            values.extend([0] * t + [1] * (n - t))
        yield SortedTensor3((1, m, n), tuple(values))


def invert_forward_pair(tensor: SortedTensor3, seed: int) -> Optional[list]:
    """Copy of the values with one strictly increasing forward-neighbor pair
    swapped (a guaranteed sortedness violation), or None when the tensor has
    no strict pair (all values equal)."""
    n1, n2, n3 = tensor.dims
    s1, s2 = n2 * n3, n3
    vals = tensor.values
    pairs = []
    for i1 in range(n1):
        for i2 in range(n2):
            base = i1 * s1 + i2 * s2
            for i3 in range(n3):
                flat = base + i3
                v = vals[flat]
                if i1 + 1 < n1 and v < vals[flat + s1]:
                    pairs.append((flat, flat + s1))
                if i2 + 1 < n2 and v < vals[flat + s2]:
                    pairs.append((flat, flat + s2))
                if i3 + 1 < n3 and v < vals[flat + 1]:
                    pairs.append((flat, flat + 1))
    if not pairs:
        return None
    a, b = pairs[SplitMix64(seed).next_below(len(pairs))]
    mutated = list(vals)
    mutated[a], mutated[b] = mutated[b], mutated[a]
    return mutated
