"""Tutte connectivity, vertical connectivity and roundedness by exhaustive scan of the subsets of the ground set."""

from dataclasses import dataclass

import numpy as np

from pyintertwine.matroid import CyclicFlatPresentation, full_rank_table
from pyintertwine.utils import get_logger, subset_sizes, check_exhaustive

LOGGER = get_logger()

CONNECTIVITY_LIMIT = 18


@dataclass(frozen=True)
class Connectivity:
    """Connectivity invariants of a matroid.

    :ivar tutte: least j such that the matroid has a j-separation, None if it has no separation at all
    :vartype tutte: int | None
    :ivar vertical: least j such that the matroid has a vertical j-separation, r(M) if there is none
    :vartype vertical: int
    :ivar rounded: True if the ground set is not the union of two proper flats
    :vartype rounded: bool"""
    tutte: int | None
    vertical: int
    rounded: bool

    def __str__(self):
        tutte = 'none' if self.tutte is None else self.tutte
        return f'lambda={tutte} kappa={self.vertical} rounded={str(self.rounded).lower()}'


def hyperplanes(matroid: CyclicFlatPresentation, table: np.ndarray | None = None) -> np.ndarray:
    """Masks of the flats of rank r(M) - 1"""
    n = matroid.ground_size
    table = full_rank_table(matroid) if table is None else table
    indices = np.arange(1 << n, dtype=np.int64)
    is_flat = np.ones(1 << n, dtype=bool)
    for j in range(n):
        bit = 1 << j
        absent = (indices & bit) == 0
        is_flat &= ~absent | (table[indices | bit] > table)
    return indices[is_flat & (table == matroid.rank - 1)]


def is_rounded(matroid: CyclicFlatPresentation, table: np.ndarray | None = None) -> bool:
    """True if no two proper flats cover the ground set. Every proper flat lies in a hyperplane, so only pairs of
    hyperplanes are checked."""
    planes = hyperplanes(matroid, table)
    if len(planes) == 0:
        return True
    covers = (planes[:, None] | planes[None, :]) == matroid.full_mask
    return not bool(covers.any())


def connectivity(matroid: CyclicFlatPresentation) -> Connectivity:
    """Compute the Tutte connectivity, the vertical connectivity and roundedness.

    The connectivity function of a set A is r(A) + r(E - A) - r(M). A gives a j-separation for every j between its
    connectivity plus one and min(|A|, |E - A|), and a vertical separation when both sides are non-spanning.

    :param matroid: the matroid, at most 18 elements
    :type matroid: CyclicFlatPresentation

    :return: the connectivity invariants
    :rtype: Connectivity"""
    n = matroid.ground_size
    check_exhaustive(n, 'connectivity', CONNECTIVITY_LIMIT)
    table = full_rank_table(matroid)
    total = matroid.rank
    indices = np.arange(1 << n, dtype=np.int64)
    complement = table[matroid.full_mask ^ indices]
    order = table + complement - total + 1
    sizes = subset_sizes(n)

    separating = order <= np.minimum(sizes, n - sizes)
    tutte = int(order[separating].min()) if separating.any() else None

    vertical_sides = (table < total) & (complement < total)
    vertical = int(order[vertical_sides].min()) if vertical_sides.any() else total

    rounded = is_rounded(matroid, table)
    if rounded != (vertical == total):
        LOGGER.warning(f'{matroid.name or "matroid"}: roundedness ({rounded}) disagrees with the vertical connectivity '
                       f'{vertical} of a rank {total} matroid')
    return Connectivity(tutte, vertical, rounded)
