"""Sorted 3D arrays ("towers"), subtower views, and the counted three-way probe.

A tower is a box-shaped array whose entries never decrease along any of the
three axes.  Every search algorithm in this package reads entries exclusively
through :func:`probe`, which compares the key against one entry, reports
less / equal / greater, and charges exactly one unit to a :class:`ProbeCounter`.
The probe outcome licenses discarding a dominated corner region:

* key < entry at i  =>  the key is nowhere in { j : j >= i componentwise },
* key > entry at i  =>  the key is nowhere in { j : j <= i componentwise }.

Storage is a flat row-major tuple (last axis fastest).  Tensors are immutable
after construction and safe to share across concurrent readers; counters are
per-search-run and never shared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

Scalar = Union[int, float, Fraction]
Index3 = tuple[int, int, int]
Extents = tuple[int, int, int]


class DimensionMismatch(ValueError):
    """Value count does not equal the product of the extents."""


class NotSorted(ValueError):
    """Monotonicity violated; carries the first offending forward-neighbor pair."""

    def __init__(self, lower: Index3, upper: Index3, lower_value, upper_value):
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"value {lower_value!r} at {lower} exceeds {upper_value!r} at {upper}"
        )


class IndexOutOfBounds(IndexError):
    """Index triple outside the tensor extents."""


class TensorFormatError(ValueError):
    """Malformed tensor text file."""


class Ordering(Enum):
    """Result of one three-way comparison of the key against an entry."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


_LESS = Ordering.LESS
_EQUAL = Ordering.EQUAL
_GREATER = Ordering.GREATER


class ProbeCounter:
    """Tally of three-way probes spent by one search run.

    With ``record=True`` every probe also appends ``(index, ordering)`` to
    ``events``, which the coverage and trace tests inspect.
    """

    __slots__ = ("count", "events")

    def __init__(self, record: bool = False):
        self.count = 0
        self.events: Optional[list[tuple[Index3, Ordering]]] = [] if record else None

    def __repr__(self):
        return f"ProbeCounter(count={self.count})"


@dataclass(frozen=True, slots=True)
class SortedTensor3:
    """Validated monotone 3D array.  Construct through :func:`tensor_from_values`."""

    dims: Extents
    values: tuple

    @property
    def volume(self) -> int:
        n1, n2, n3 = self.dims
        return n1 * n2 * n3

    def at(self, i1: int, i2: int, i3: int):
        """Raw entry access; does not count as a probe (oracle/test use only)."""
        n1, n2, n3 = self.dims
        if not (0 <= i1 < n1 and 0 <= i2 < n2 and 0 <= i3 < n3):
            raise IndexOutOfBounds(f"({i1},{i2},{i3}) outside dims {self.dims}")
        return self.values[(i1 * n2 + i2) * n3 + i3]


@dataclass(frozen=True, slots=True)
class SubtowerView:
    """Axis-aligned subtower given by inclusive corners ``lo`` and ``hi``.

    The view is empty iff lo[k] > hi[k] on some axis; empty views may carry
    out-of-range corners (the pivot search legitimately drives pointers one
    step past the range).  Non-empty views must lie inside ``dims``.
    """

    lo: Index3
    hi: Index3
    dims: Extents

    def __post_init__(self):
        if not self.is_empty:
            for k in range(3):
                if not (0 <= self.lo[k] <= self.hi[k] <= self.dims[k] - 1):
                    raise IndexOutOfBounds(
                        f"non-empty view lo={self.lo} hi={self.hi} "
                        f"outside dims {self.dims}"
                    )

    @property
    def is_empty(self) -> bool:
        l, h = self.lo, self.hi
        return l[0] > h[0] or l[1] > h[1] or l[2] > h[2]

    @property
    def extents(self) -> Extents:
        l, h = self.lo, self.hi
        return (
            max(0, h[0] - l[0] + 1),
            max(0, h[1] - l[1] + 1),
            max(0, h[2] - l[2] + 1),
        )

    @property
    def volume(self) -> int:
        e = self.extents
        return e[0] * e[1] * e[2]


def full_view(tensor: SortedTensor3) -> SubtowerView:
    """View spanning the whole tensor."""
    n1, n2, n3 = tensor.dims
    return SubtowerView((0, 0, 0), (n1 - 1, n2 - 1, n3 - 1), tensor.dims)


def _first_violation_numpy(dims: Extents, arr: np.ndarray):
    """First forward-neighbor violation, ordered by (flat cell index, axis)."""
    a = arr.reshape(dims)
    n2, n3 = dims[1], dims[2]
    best = None
    for axis in range(3):
        if dims[axis] < 2:
            continue
        bad = np.argwhere(np.diff(a, axis=axis) < 0)
        if bad.size:
            i1, i2, i3 = (int(x) for x in bad[0])  # argwhere is C-ordered
            flat = (i1 * n2 + i2) * n3 + i3
            if best is None or (flat, axis) < best[:2]:
                best = (flat, axis, (i1, i2, i3))
    if best is None:
        return None
    _, axis, lower = best
    upper = tuple(lower[k] + (1 if k == axis else 0) for k in range(3))
    return lower, upper


def _first_violation_python(dims: Extents, values: Sequence):
    n1, n2, n3 = dims
    s1, s2 = n2 * n3, n3
    for i1 in range(n1):
        for i2 in range(n2):
            base = i1 * s1 + i2 * s2
            for i3 in range(n3):
                flat = base + i3
                v = values[flat]
                if isinstance(v, float) and not math.isfinite(v):
                    raise ValueError(f"non-finite value {v!r} at ({i1},{i2},{i3})")
                if i1 + 1 < n1 and values[flat + s1] < v:
                    return (i1, i2, i3), (i1 + 1, i2, i3)
                if i2 + 1 < n2 and values[flat + s2] < v:
                    return (i1, i2, i3), (i1, i2 + 1, i3)
                if i3 + 1 < n3 and values[flat + 1] < v:
                    return (i1, i2, i3), (i1, i2, i3 + 1)
    return None


def first_violation(dims: Extents, values: Sequence):
    """Return the first forward-neighbor pair (lower, upper) with
    values[lower] > values[upper], or None when the sequence is monotone.

    Order: ascending flat index of the lower cell, then axis 1, 2, 3.
    """
    try:
        arr = np.asarray(values)
    except (ValueError, OverflowError):
        arr = np.asarray([None])  # force the object fallback
    if arr.dtype.kind == "u":
        # reject-by-diff needs signed arithmetic; fall back when it won't fit
        if arr.size and int(arr.max()) <= np.iinfo(np.int64).max:
            arr = arr.astype(np.int64)
        else:
            return _first_violation_python(dims, values)
    if arr.dtype.kind == "i":
        return _first_violation_numpy(dims, arr)
    if arr.dtype.kind == "f":
        if not np.isfinite(arr).all():
            raise ValueError("tensor values must be finite")
        return _first_violation_numpy(dims, arr)
    return _first_violation_python(dims, values)


def tensor_from_values(dims: Iterable[int], values: Sequence) -> SortedTensor3:
    """Validate extents, length and monotonicity, and build the tensor.

    Raises DimensionMismatch when ``len(values) != n1*n2*n3`` and NotSorted
    (with the first offending pair) when any cell exceeds a forward neighbor.
    """
    d = tuple(dims)
    if len(d) != 3 or any(not isinstance(n, int) or n < 1 for n in d):
        raise DimensionMismatch(f"extents must be three positive integers, got {d!r}")
    n1, n2, n3 = d
    if len(values) != n1 * n2 * n3:
        raise DimensionMismatch(
            f"expected {n1 * n2 * n3} values for dims {d}, got {len(values)}"
        )
    bad = first_violation(d, values)
    if bad is not None:
        lower, upper = bad
        lo_flat = (lower[0] * n2 + lower[1]) * n3 + lower[2]
        hi_flat = (upper[0] * n2 + upper[1]) * n3 + upper[2]
        raise NotSorted(lower, upper, values[lo_flat], values[hi_flat])
    return SortedTensor3(d, tuple(values))


def probe(tensor: SortedTensor3, index: Index3, key, counter: ProbeCounter) -> Ordering:
    """Compare the key against one entry; the only counted read primitive.

    Increments ``counter`` by exactly one and returns the trichotomy outcome.
    """
    n1, n2, n3 = tensor.dims
    i1, i2, i3 = index
    if not (0 <= i1 < n1 and 0 <= i2 < n2 and 0 <= i3 < n3):
        raise IndexOutOfBounds(f"probe at {index} outside dims {tensor.dims}")
    v = tensor.values[(i1 * n2 + i2) * n3 + i3]
    if key < v:
        out = _LESS
    elif key == v:
        out = _EQUAL
    else:
        out = _GREATER
    counter.count += 1
    if counter.events is not None:
        counter.events.append((index, out))
    return out


# --- text format -----------------------------------------------------------
#
# Line 1: "n1 n2 n3".  Then n1*n2*n3 whitespace-separated values in row-major
# order (axis-3 fastest).  The writer emits one axis-3 fiber per line.


def _parse_scalar(token: str):
    try:
        return int(token)
    except ValueError:
        try:
            return float(token)
        except ValueError:
            raise TensorFormatError(f"bad value token {token!r}") from None


def read_tensor_text(source: Union[str, IO[str]]) -> SortedTensor3:
    """Parse and validate a tensor text file (path or open text handle)."""
    if isinstance(source, str):
        with open(source, "r", encoding="ascii") as f:
            text = f.read()
    else:
        text = source.read()
    lines = text.splitlines()
    if not lines:
        raise TensorFormatError("empty tensor file")
    header = lines[0].split()
    if len(header) != 3:
        raise TensorFormatError(f"header must be three extents, got {lines[0]!r}")
    try:
        dims = tuple(int(t) for t in header)
    except ValueError:
        raise TensorFormatError(f"bad header {lines[0]!r}") from None
    if any(n < 1 for n in dims):
        raise TensorFormatError(f"extents must be positive, got {dims}")
    tokens = " ".join(lines[1:]).split()
    n = dims[0] * dims[1] * dims[2]
    if len(tokens) != n:
        raise TensorFormatError(f"expected {n} values, found {len(tokens)}")
    return tensor_from_values(dims, [_parse_scalar(t) for t in tokens])


def write_tensor_text(tensor: SortedTensor3, dest: Union[str, IO[str]]) -> None:
    """Write the tensor in the text format; deterministic byte-for-byte."""
    n1, n2, n3 = tensor.dims
    out_lines = [f"{n1} {n2} {n3}"]
    vals = tensor.values
    for start in range(0, len(vals), n3):
        out_lines.append(" ".join(repr(v) if isinstance(v, float) else str(v)
                                  for v in vals[start:start + n3]))
    payload = "\n".join(out_lines) + "\n"
    if isinstance(dest, str):
        with open(dest, "w", encoding="ascii", newline="\n") as f:
            f.write(payload)
    else:
        dest.write(payload)
