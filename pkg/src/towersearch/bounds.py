"""Probe budgets: the cost recurrence made concrete, plus adversary oracles.

The asymptotic cost cases of the search recurrence are replaced by the exact
worst cases of the concrete subroutines:

* fiber of length n           ->  ceil(lg(n+1))  ==  n.bit_length()
* m-by-n plane                ->  bird_budget(m, n), the exact recurrence of
                                  the implemented 2D divide and conquer
* single cell                 ->  1
* all extents >= 2            ->  ceil(lg(min+1))
                                  + tau(n1, ceil(n2/2), floor(n3/2))
                                  + tau(floor(n1/2), n2, ceil(n3/2))
                                  + tau(ceil(n1/2), floor(n2/2), n3)

Budgets use ceilings throughout so they are integer probe counts.

The *_adversary_worst functions compute the exact maximum probe count against
an unconstrained adversary that answers every probe less/greater freely (an
upper bound on any realizable tensor/key pair, since answering equal only
stops the run earlier).  For the 2D search the adversary optimum is realized
by an explicit 0/1 staircase matrix, which bird_worst_instance constructs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .tensor import SortedTensor3, tensor_from_values


class ExtentZero(ValueError):
    """Budget requested for a shape with a nonpositive extent."""


def binary_budget(n: int) -> int:
    """ceil(lg(n+1)): exact worst case of three-way binary search on n cells."""
    if n < 1:
        raise ExtentZero(f"fiber length must be >= 1, got {n}")
    return n.bit_length()


@lru_cache(maxsize=None)
def _b2(m: int, n: int) -> int:
    if m > n:
        m, n = n, m
    if m == 0:
        return 0
    if m == 1:
        return binary_budget(n)
    # Split the longer side n: the searched line has length m, charged at its
    # full ceil(lg(m+1)); the crossing splits the line adversarially.
    c_hi = n // 2  # ceil((n-1)/2)
    c_lo = (n - 1) // 2
    best = 0
    for a in range(m + 1):
        sub = _b2(a, c_hi) + _b2(m - a, c_lo)
        if sub > best:
            best = sub
    return binary_budget(m) + best


def bird_budget(m: int, n: int) -> int:
    """Worst-case cost recurrence of the implemented 2D search with every
    line search charged at full depth; symmetric, O(m*lg(n/m+1)) for m <= n.

    A sound upper bound (checked against the exact adversary for all
    m, n <= 32), met with equality on most small shapes."""
    if m < 1 or n < 1:
        raise ExtentZero(f"plane extents must be >= 1, got {(m, n)}")
    return _b2(m, n)


@lru_cache(maxsize=None)
def _tau(n1: int, n2: int, n3: int) -> int:
    live = (n1 > 1) + (n2 > 1) + (n3 > 1)
    if live == 0:
        return 1
    if live == 1:
        return binary_budget(max(n1, n2, n3))
    if live == 2:
        if n1 == 1:
            return _b2(n2, n3)
        if n2 == 1:
            return _b2(n1, n3)
        return _b2(n1, n2)
    return (
        binary_budget(min(n1, n2, n3))
        + _tau(n1, (n2 + 1) // 2, n3 // 2)
        + _tau(n1 // 2, n2, (n3 + 1) // 2)
        + _tau((n1 + 1) // 2, n2 // 2, n3)
    )


def recurrence_bound(n1: int, n2: int, n3: int) -> int:
    """Balanced-split probe budget tau(n1,n2,n3) for the full tower search.

    tau(1,1,1) = 1 and tau is monotone nondecreasing in each extent.  The
    model assumes the pivot loop halves every axis; on cubes it bounds the
    exact worst case on every checked size, but on some unbalanced shapes
    the implemented recursion exceeds it (first at 2x4x3: worst 17 vs budget
    16).  Use mahl_adversary_worst for a per-shape exact value.
    """
    if n1 < 1 or n2 < 1 or n3 < 1:
        raise ExtentZero(f"extents must be >= 1, got {(n1, n2, n3)}")
    return _tau(n1, n2, n3)


# --- adversary oracles ------------------------------------------------------


def failed_binary_probes(a: int, n: int) -> int:
    """Probes of a three-way binary search over n cells that misses with
    exactly a cells below the key (crossing position a)."""
    lo, hi = 0, n - 1
    probes = 0
    while lo <= hi:
        mid = (lo + hi) >> 1
        probes += 1
        if mid < a:
            lo = mid + 1
        else:
            hi = mid - 1
    return probes


@lru_cache(maxsize=None)
def _bird_adv(m: int, n: int) -> int:
    if m > n:
        m, n = n, m
    if m == 0:
        return 0
    if m == 1:
        # Delegated plain binary search; the deepest crossing costs the full
        # ceil(lg(n+1)).
        return max(failed_binary_probes(a, n) for a in range(n + 1))
    c_hi = n // 2  # ceil((n-1)/2)
    c_lo = (n - 1) // 2
    best = 0
    for a in range(m + 1):
        total = failed_binary_probes(a, m) + _bird_adv(a, c_hi) + _bird_adv(m - a, c_lo)
        if total > best:
            best = total
    return best


def bird_adversary_worst(m: int, n: int) -> int:
    """Exact worst case of the implemented 2D search over all inputs.

    Equals the measured maximum over 0/1 staircase matrices with a key
    between the two values; at most bird_budget(m, n).
    """
    if m < 1 or n < 1:
        raise ExtentZero(f"plane extents must be >= 1, got {(m, n)}")
    return _bird_adv(m, n)


def _w3(n1: int, n2: int, n3: int) -> int:
    if n1 <= 0 or n2 <= 0 or n3 <= 0:
        return 0
    return mahl_adversary_worst(n1, n2, n3)


@lru_cache(maxsize=None)
def mahl_adversary_worst(n1: int, n2: int, n3: int) -> int:
    """Worst case of the tower search against an unconstrained adversary.

    A sound upper bound on every (tensor, key) pair; on every exhaustively
    checked shape it is attained by a concrete 0/1 tensor, so it serves as
    the exact per-shape worst case.  Exceeds recurrence_bound on some
    unbalanced shapes (the budget-gap tests freeze the minimal examples).
    """
    if n1 < 1 or n2 < 1 or n3 < 1:
        raise ExtentZero(f"extents must be >= 1, got {(n1, n2, n3)}")
    live = (n1 > 1) + (n2 > 1) + (n3 > 1)
    if live == 0:
        return 1
    if live == 1:
        return binary_budget(max(n1, n2, n3))
    if live == 2:
        if n1 == 1:
            return _bird_adv(n2, n3)
        if n2 == 1:
            return _bird_adv(n1, n3)
        return _bird_adv(n1, n2)

    best = 0
    # Walk every less/greater answer sequence of the diagonal loop.  State is
    # the pointer window per axis, as offsets into the view.
    stack = [((0, n1 - 1), (0, n2 - 1), (0, n3 - 1), 0)]
    while stack:
        (lo1, hi1), (lo2, hi2), (lo3, hi3), probes = stack.pop()
        if lo1 > hi1 or lo2 > hi2 or lo3 > hi3:
            total = (
                probes
                + _w3(n1, n2 - lo2, hi3 + 1)
                + _w3(hi1 + 1, n2, n3 - lo3)
                + _w3(n1 - lo1, hi2 + 1, n3)
            )
            if total > best:
                best = total
            continue
        c1 = (lo1 + hi1) >> 1
        c2 = (lo2 + hi2) >> 1
        c3 = (lo3 + hi3) >> 1
        stack.append(((c1 + 1, hi1), (c2 + 1, hi2), (c3 + 1, hi3), probes + 1))
        stack.append(((lo1, c1 - 1), (lo2, c2 - 1), (lo3, c3 - 1), probes + 1))
    return best


def bird_worst_instance(m: int, n: int) -> tuple[SortedTensor3, Fraction]:
    """A (1, m, n) 0/1 matrix and key realizing bird_adversary_worst(m, n).

    Built by replaying the adversary recursion: at every rectangle the
    boundary on the searched line is placed at the crossing that maximizes
    probes-now plus worst cases of the two residual rectangles.
    """
    if m < 1 or n < 1:
        raise ExtentZero(f"plane extents must be >= 1, got {(m, n)}")
    grid = [[0] * n for _ in range(m)]

    def fill(rlo, rhi, clo, chi):
        rows = rhi - rlo + 1
        cols = chi - clo + 1
        if rows <= 0 or cols <= 0:
            return
        if rows == 1 or cols == 1:
            length = max(rows, cols)
            a = max(range(length + 1), key=lambda x: failed_binary_probes(x, length))
            for off in range(length):
                v = 0 if off < a else 1
                if rows == 1:
                    grid[rlo][clo + off] = v
                else:
                    grid[rlo + off][clo] = v
            return
        if rows >= cols:
            imid = (rlo + rhi) >> 1
            below_cnt = rhi - imid  # rows past the fixed line, pair with the "< key" side
            above_cnt = imid - rlo
            best_a, best_val = 0, -1
            for a in range(cols + 1):
                val = (
                    failed_binary_probes(a, cols)
                    + (_bird_adv(below_cnt, a) if below_cnt and a else 0)
                    + (_bird_adv(above_cnt, cols - a) if above_cnt and cols - a else 0)
                )
                if val > best_val:
                    best_a, best_val = a, val
            ca = clo + best_a
            for j in range(clo, chi + 1):
                grid[imid][j] = 0 if j < ca else 1
            for i in range(rlo, imid):  # dominated by a 0 on the line
                for j in range(clo, ca):
                    grid[i][j] = 0
            for i in range(imid + 1, rhi + 1):  # dominate a 1 on the line
                for j in range(ca, chi + 1):
                    grid[i][j] = 1
            fill(imid + 1, rhi, clo, ca - 1)
            fill(rlo, imid - 1, ca, chi)
        else:
            jmid = (clo + chi) >> 1
            right_cnt = chi - jmid  # columns past the fixed line, pair with the "< key" side
            left_cnt = jmid - clo
            best_a, best_val = 0, -1
            for a in range(rows + 1):
                val = (
                    failed_binary_probes(a, rows)
                    + (_bird_adv(a, right_cnt) if a and right_cnt else 0)
                    + (_bird_adv(rows - a, left_cnt) if rows - a and left_cnt else 0)
                )
                if val > best_val:
                    best_a, best_val = a, val
            ra = rlo + best_a
            for i in range(rlo, rhi + 1):
                grid[i][jmid] = 0 if i < ra else 1
            for i in range(rlo, ra):  # dominated by a 0 on the line
                for j in range(clo, jmid):
                    grid[i][j] = 0
            for i in range(ra, rhi + 1):  # dominate a 1 on the line
                for j in range(jmid + 1, chi + 1):
                    grid[i][j] = 1
            fill(rlo, ra - 1, jmid + 1, chi)
            fill(ra, rhi, clo, jmid - 1)

    fill(0, m - 1, 0, n - 1)
    values = [grid[i][j] for i in range(m) for j in range(n)]
    return tensor_from_values((1, m, n), values), Fraction(1, 2)
