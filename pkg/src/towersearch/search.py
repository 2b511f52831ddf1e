"""Membership search in a tower by counted three-way probes.

The main algorithm works on a subtower view.  While all three axes of the
view have length >= 2, it binary-searches the corner-to-corner diagonal
(per-axis floor midpoints of a low pointer p1 and a high pointer p2, all
three coordinates updated together).  If the key is not hit, the probed
outcomes leave three residual subtowers to search in order::

    A1 = (l1..r1,  p1_2..r2,  l3..p2_3)
    A2 = (l1..p2_1,  l2..r2,  p1_3..r3)
    A3 = (p1_1..r1,  l2..p2_2,  l3..r3)

Empty residuals are skipped at zero probe cost; a hit anywhere short-circuits
the remaining calls.  Once some axis of the view is a single layer, the
search drops to a 2D divide-and-conquer on the remaining plane, or to plain
binary search on a single fiber, or to one probe for a single cell.

Everything here is pure with respect to (immutable tensor, per-call counter):
many searches may run concurrently over one shared tensor.

The residual ranges A1/A2/A3 may overlap on boundary slabs and may each be
empty; neither affects correctness, only the (measured) probe counts.  The
recursion terminates because every non-empty residual lost at least one
layer on some axis: the diagonal loop always performs a probe, so p1 moved
up on every axis or p2 moved down on every axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .tensor import (
    Index3,
    Ordering,
    ProbeCounter,
    SortedTensor3,
    SubtowerView,
    probe as _probe,
)

_LESS = Ordering.LESS
_EQUAL = Ordering.EQUAL
_GREATER = Ordering.GREATER


@dataclass(frozen=True, slots=True)
class SearchOutcome:
    """Found-at-index (or not) plus the final probe tally of the run."""

    index: Optional[Index3]
    probes: int

    @property
    def found(self) -> bool:
        return self.index is not None


@dataclass(frozen=True, slots=True)
class PivotState:
    """Exit state of the diagonal binary search.

    Either ``found_at`` is set, or the pointers crossed on some axis
    (min_k (p2[k] - p1[k]) < 0).  Both pointers receive the same number of
    update steps on every axis since each loop iteration moves all three
    coordinates together; on cube-shaped views the per-axis displacements
    are therefore equal as well.
    """

    p1: Index3
    p2: Index3
    found_at: Optional[Index3]


def _diagonal(tensor, l1, r1, l2, r2, l3, r3, key, counter):
    """Literal diagonal loop; returns (p1, p2, found_index_or_None)."""
    p11, p12, p13 = l1, l2, l3
    p21, p22, p23 = r1, r2, r3
    while p11 <= p21 and p12 <= p22 and p13 <= p23:
        c = ((p11 + p21) >> 1, (p12 + p22) >> 1, (p13 + p23) >> 1)
        out = _probe(tensor, c, key, counter)
        if out is _GREATER:
            p11, p12, p13 = c[0] + 1, c[1] + 1, c[2] + 1
        elif out is _LESS:
            p21, p22, p23 = c[0] - 1, c[1] - 1, c[2] - 1
        else:
            return (p11, p12, p13), (p21, p22, p23), c
    return (p11, p12, p13), (p21, p22, p23), None


def diagonal_pivot_search(
    tensor: SortedTensor3, view: SubtowerView, key, counter: ProbeCounter
) -> PivotState:
    """Binary search of the view's low-to-high diagonal.

    Uses at most ceil(lg(d+1)) probes where d is the smallest view extent
    (the loop stops as soon as the pointers cross on any axis).
    """
    if view.is_empty:
        raise ValueError("diagonal_pivot_search requires a non-empty view")
    l1, l2, l3 = view.lo
    r1, r2, r3 = view.hi
    p1, p2, found = _diagonal(tensor, l1, r1, l2, r2, l3, r3, key, counter)
    return PivotState(p1, p2, found)


def _binary_axis(tensor, i1, i2, i3, axis, lo, hi, key, counter):
    """Three-way binary search along one axis of the line through (i1,i2,i3).

    Returns (found_index_or_None, crossing); on a miss the crossing c means
    entries at positions < c on the line are < key and positions >= c are
    > key.
    """
    idx = [i1, i2, i3]
    while lo <= hi:
        mid = (lo + hi) >> 1
        idx[axis] = mid
        out = _probe(tensor, (idx[0], idx[1], idx[2]), key, counter)
        if out is _GREATER:
            lo = mid + 1
        elif out is _LESS:
            hi = mid - 1
        else:
            return (idx[0], idx[1], idx[2]), lo
    return None, lo


def _bird(tensor, base, ar, ac, rlo, rhi, clo, chi, key, counter):
    """2D divide and conquer on the plane spanned by axes (ar, ac).

    Splits the longer side at its floor midpoint, binary-searches that line,
    and recurses on the two rectangles not dominated by the crossing.
    """
    m = rhi - rlo + 1
    n = chi - clo + 1
    if m <= 0 or n <= 0:
        return None
    idx = list(base)
    if m == 1:
        idx[ar] = rlo
        found, _ = _binary_axis(tensor, idx[0], idx[1], idx[2], ac, clo, chi, key, counter)
        return found
    if n == 1:
        idx[ac] = clo
        found, _ = _binary_axis(tensor, idx[0], idx[1], idx[2], ar, rlo, rhi, key, counter)
        return found
    if m >= n:
        # Fix the middle row; the crossing splits the columns.
        imid = (rlo + rhi) >> 1
        idx[ar] = imid
        found, cross = _binary_axis(tensor, idx[0], idx[1], idx[2], ac, clo, chi, key, counter)
        if found is not None:
            return found
        hit = _bird(tensor, base, ar, ac, imid + 1, rhi, clo, cross - 1, key, counter)
        if hit is not None:
            return hit
        return _bird(tensor, base, ar, ac, rlo, imid - 1, cross, chi, key, counter)
    # Fix the middle column; the crossing splits the rows.
    jmid = (clo + chi) >> 1
    idx[ac] = jmid
    found, cross = _binary_axis(tensor, idx[0], idx[1], idx[2], ar, rlo, rhi, key, counter)
    if found is not None:
        return found
    hit = _bird(tensor, base, ar, ac, rlo, cross - 1, jmid + 1, chi, key, counter)
    if hit is not None:
        return hit
    return _bird(tensor, base, ar, ac, cross, rhi, clo, jmid - 1, key, counter)


def _plane_axes(view: SubtowerView) -> tuple[int, int]:
    """The two axes spanning a view's search plane: largest extents first,
    ties toward lower axis index, returned in ascending axis order."""
    ext = view.extents
    picked = sorted(range(3), key=lambda k: (-ext[k], k))[:2]
    return (min(picked), max(picked))


def _require_plane_view(view: SubtowerView, name: str) -> tuple[int, int, int]:
    if view.is_empty:
        raise ValueError(f"{name} requires a non-empty view")
    ar, ac = _plane_axes(view)
    af = 3 - ar - ac
    if view.lo[af] != view.hi[af]:
        raise ValueError(f"{name} requires a view that is flat on some axis")
    return ar, ac, af


def bird_search_2d(
    tensor: SortedTensor3, view: SubtowerView, key, counter: ProbeCounter
) -> SearchOutcome:
    """Divide-and-conquer search of a matrix-shaped view (one flat axis).

    Worst case stays within :func:`towersearch.bounds.bird_budget`, which is
    O(m*lg(n/m+1)) probes for an m-by-n plane with m <= n (and is met with
    equality on most small shapes).  A single-line view degenerates to
    binary search.
    """
    ar, ac, af = _require_plane_view(view, "bird_search_2d")
    base = [0, 0, 0]
    base[af] = view.lo[af]
    hit = _bird(
        tensor, tuple(base), ar, ac,
        view.lo[ar], view.hi[ar], view.lo[ac], view.hi[ac],
        key, counter,
    )
    return SearchOutcome(hit, counter.count)


def saddleback_2d(
    tensor: SortedTensor3, view: SubtowerView, key, counter: ProbeCounter
) -> SearchOutcome:
    """Staircase walk baseline on a matrix-shaped view.

    Starts at the corner that is maximal on the row axis and minimal on the
    column axis; each probe discards one full row or column, so at most
    m + n - 1 probes.
    """
    ar, ac, af = _require_plane_view(view, "saddleback_2d")
    idx = [0, 0, 0]
    idx[af] = view.lo[af]
    i = view.hi[ar]
    j = view.lo[ac]
    while i >= view.lo[ar] and j <= view.hi[ac]:
        idx[ar] = i
        idx[ac] = j
        out = _probe(tensor, (idx[0], idx[1], idx[2]), key, counter)
        if out is _EQUAL:
            return SearchOutcome((idx[0], idx[1], idx[2]), counter.count)
        if out is _LESS:
            i -= 1
        else:
            j += 1
    return SearchOutcome(None, counter.count)


def binary_search_1d(
    tensor: SortedTensor3, view: SubtowerView, key, counter: ProbeCounter
) -> SearchOutcome:
    """Three-way binary search of a fiber-shaped view (at most one live axis).

    Worst case over all keys on a length-n fiber is exactly ceil(lg(n+1))
    probes.
    """
    if view.is_empty:
        raise ValueError("binary_search_1d requires a non-empty view")
    ext = view.extents
    live = [k for k in range(3) if ext[k] > 1]
    if len(live) > 1:
        raise ValueError("binary_search_1d requires a view with one live axis")
    axis = live[0] if live else 2
    found, _ = _binary_axis(
        tensor,
        view.lo[0], view.lo[1], view.lo[2],
        axis, view.lo[axis], view.hi[axis],
        key, counter,
    )
    return SearchOutcome(found, counter.count)


def _flat_search(tensor, l1, r1, l2, r2, l3, r3, key, counter):
    """Search of a view with at least one single-layer axis (non-empty)."""
    live = []
    if l1 < r1:
        live.append((0, l1, r1))
    if l2 < r2:
        live.append((1, l2, r2))
    if l3 < r3:
        live.append((2, l3, r3))
    if not live:
        out = _probe(tensor, (l1, l2, l3), key, counter)
        return (l1, l2, l3) if out is _EQUAL else None
    if len(live) == 1:
        axis, lo, hi = live[0]
        found, _ = _binary_axis(tensor, l1, l2, l3, axis, lo, hi, key, counter)
        return found
    if len(live) == 2:
        (ar, rl, rh), (ac, cl, ch) = live
        return _bird(tensor, (l1, l2, l3), ar, ac, rl, rh, cl, ch, key, counter)
    raise ValueError("1d/2d stage requires a view flat on some axis")


def one_two_d_dispatch(
    tensor: SortedTensor3, view: SubtowerView, key, counter: ProbeCounter
) -> SearchOutcome:
    """Drop single-layer axes and search what remains.

    No live axis left: one probe.  One live axis: binary search.  Two:
    2D divide and conquer.  Indices in the outcome stay in 3D coordinates.
    """
    if view.is_empty:
        raise ValueError("one_two_d_dispatch requires a non-empty view")
    l1, l2, l3 = view.lo
    r1, r2, r3 = view.hi
    hit = _flat_search(tensor, l1, r1, l2, r2, l3, r3, key, counter)
    return SearchOutcome(hit, counter.count)


def _mahl(tensor, l1, r1, l2, r2, l3, r3, key, counter):
    if l1 > r1 or l2 > r2 or l3 > r3:
        return None
    if l1 < r1 and l2 < r2 and l3 < r3:
        (p11, p12, p13), (p21, p22, p23), found = _diagonal(
            tensor, l1, r1, l2, r2, l3, r3, key, counter
        )
        if found is not None:
            return found
        hit = _mahl(tensor, l1, r1, p12, r2, l3, p23, key, counter)
        if hit is not None:
            return hit
        hit = _mahl(tensor, l1, p21, l2, r2, p13, r3, key, counter)
        if hit is not None:
            return hit
        return _mahl(tensor, p11, r1, l2, p22, l3, r3, key, counter)
    return _flat_search(tensor, l1, r1, l2, r2, l3, r3, key, counter)


def mahl_e_search(
    tensor: SortedTensor3, view: SubtowerView, key, counter: ProbeCounter
) -> SearchOutcome:
    """Full tower search: diagonal pivot step plus three-way recursion.

    Accepts empty views (NotFound at zero probes).  The exact worst-case
    probe count per shape is :func:`towersearch.bounds.mahl_adversary_worst`;
    the balanced-split budget :func:`towersearch.bounds.recurrence_bound`
    matches it on cubes but undercounts some unbalanced shapes (see the
    worst-case notes in the README).
    """
    l1, l2, l3 = view.lo
    r1, r2, r3 = view.hi
    hit = _mahl(tensor, l1, r1, l2, r2, l3, r3, key, counter)
    return SearchOutcome(hit, counter.count)


def search_tensor(
    tensor: SortedTensor3, key, counter: Optional[ProbeCounter] = None
) -> SearchOutcome:
    """Convenience wrapper: run the main search over the whole tensor."""
    if counter is None:
        counter = ProbeCounter()
    n1, n2, n3 = tensor.dims
    hit = _mahl(tensor, 0, n1 - 1, 0, n2 - 1, 0, n3 - 1, key, counter)
    return SearchOutcome(hit, counter.count)


def row_slab_baseline(
    tensor: SortedTensor3, key, counter: ProbeCounter
) -> SearchOutcome:
    """Baseline: binary-search every axis-3 fiber in row-major fiber order.

    At most n1*n2*ceil(lg(n3+1)) probes; stops at the first hit.
    """
    n1, n2, n3 = tensor.dims
    for i1 in range(n1):
        for i2 in range(n2):
            found, _ = _binary_axis(tensor, i1, i2, 0, 2, 0, n3 - 1, key, counter)
            if found is not None:
                return SearchOutcome(found, counter.count)
    return SearchOutcome(None, counter.count)


def linear_scan_oracle(tensor: SortedTensor3, key) -> SearchOutcome:
    """Ground-truth membership by full scan; never used inside measured runs.

    Reports the smallest row-major index holding the key.  The probes field
    counts scanned cells (the oracle does not use the counting comparator).
    """
    n2, n3 = tensor.dims[1], tensor.dims[2]
    for flat, v in enumerate(tensor.values):
        if v == key:
            i1, rest = divmod(flat, n2 * n3)
            i2, i3 = divmod(rest, n3)
            return SearchOutcome((i1, i2, i3), flat + 1)
    return SearchOutcome(None, tensor.volume)
