import itertools

from hypothesis import settings

from towersearch.generators import GenSpec, Kind, generate
from towersearch.tensor import SortedTensor3, tensor_from_values

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def small_dims():
    """Every shape with extents in 1..3 (27 shapes), ascending volume."""
    dims = list(itertools.product(range(1, 4), repeat=3))
    dims.sort(key=lambda d: (d[0] * d[1] * d[2], d))
    return dims


def prefix_tensor(dims, seed, alphabet=3) -> SortedTensor3:
    return generate(GenSpec(dims, Kind.PREFIX_SUM, seed, alphabet))


def ranks_tensor(dims, seed=0) -> SortedTensor3:
    return generate(GenSpec(dims, Kind.DISTINCT_RANKS, seed))


def cells(dims):
    return itertools.product(range(dims[0]), range(dims[1]), range(dims[2]))


def brute_force_monotone(dims, values) -> bool:
    """Pairwise definition of sortedness; independent of the validator."""
    n1, n2, n3 = dims

    def at(i):
        return values[(i[0] * n2 + i[1]) * n3 + i[2]]

    for a in cells(dims):
        for b in cells(dims):
            if a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2]:
                if at(a) > at(b):
                    return False
    return True


def vector_tensor(values) -> SortedTensor3:
    return tensor_from_values((1, 1, len(values)), list(values))
