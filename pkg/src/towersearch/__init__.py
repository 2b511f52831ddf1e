"""Probe-counted membership search in sorted 3D arrays.

Core objects: validated monotone tensors, subtower views, the counting
three-way probe, the diagonal-pivot divide-and-conquer search with its 1D/2D
subroutines and baselines, deterministic corpus generators, and a worst-case
measurement harness with an explicit probe budget.
"""

from .tensor import (
    DimensionMismatch,
    IndexOutOfBounds,
    NotSorted,
    Ordering,
    ProbeCounter,
    SortedTensor3,
    SubtowerView,
    TensorFormatError,
    full_view,
    probe,
    read_tensor_text,
    tensor_from_values,
    write_tensor_text,
)
from .search import (
    PivotState,
    SearchOutcome,
    binary_search_1d,
    bird_search_2d,
    diagonal_pivot_search,
    linear_scan_oracle,
    mahl_e_search,
    one_two_d_dispatch,
    row_slab_baseline,
    saddleback_2d,
    search_tensor,
)
from .generators import (
    GenSpec,
    Kind,
    SplitMix64,
    enumerate_monotone_01_matrices,
    enumerate_monotone_01_tensors,
    enumerate_threshold_tensors,
    gen_prefix_sum_tensor,
    gen_threshold_tensor,
    generate,
    invert_forward_pair,
    key_universe,
    prefix_sum_tensor,
    threshold_tensor,
)
from .bounds import (
    ExtentZero,
    binary_budget,
    bird_adversary_worst,
    bird_budget,
    bird_worst_instance,
    mahl_adversary_worst,
    recurrence_bound,
)
from .measure import (
    ALGORITHMS,
    UnknownAlgorithm,
    WorstCaseReport,
    emit_csv,
    exhaustive_01_worst,
    growth_table,
    measure_worst_case,
    prefix_corpus,
    ranks_corpus,
    run_algorithm,
    threshold_corpus,
    verify_shapes,
)

__version__ = "0.1.0"
