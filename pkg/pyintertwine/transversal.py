"""Transversality of matroids given by their cyclic flats.

A matroid is transversal exactly when, for every antichain A of cyclic flats, the rank of the intersection of A is at
most the alternating sum over the nonempty subfamilies F of A of (-1)^(|F|+1) r(u F). Singletons and pairs always
satisfy it, so only antichains of at least three flats are scanned. An independent search for a presenting set system,
confirmed by bipartite matching, is provided for very small matroids."""

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from pyintertwine.constructions import dual
from pyintertwine.elements import ElementSet
from pyintertwine.matroid import CyclicFlatPresentation, TableOracle, recompute_cyclic_flats, full_rank_table
from pyintertwine.utils import get_logger, iter_bits, subset_sizes, full_mask

LOGGER = get_logger()

ANTICHAIN_FLAT_LIMIT = 24
# (ground set size, rank)
TRANSVERSAL_ORACLE_LIMIT = (7, 4)


@dataclass(frozen=True)
class TransversalVerdict:
    """Outcome of the antichain inequality scan.

    :ivar transversal: True if no antichain violates the inequality
    :vartype transversal: bool
    :ivar antichain: the first violating antichain in canonical order, empty if transversal
    :vartype antichain: tuple[ElementSet, ...]
    :ivar deficit: alternating sum minus the rank of the intersection, for the violating antichain (negative), 0 if
        transversal
    :vartype deficit: int
    :ivar checked: number of antichains scanned
    :vartype checked: int"""
    transversal: bool
    antichain: tuple[ElementSet, ...] = ()
    deficit: int = 0
    checked: int = 0

    def __bool__(self):
        return self.transversal

    def __str__(self):
        if self.transversal:
            return f'transversal ({self.checked} antichains checked)'
        return f'not transversal: antichain {" ".join(str(f) for f in self.antichain)} has deficit {self.deficit}'


def _antichains(masks: list[int]):
    """Antichains of at least three flats, by size then lexicographically on flat positions"""
    nb = len(masks)
    comparable = [[(masks[i] & ~masks[j] == 0) or (masks[j] & ~masks[i] == 0) for j in range(nb)] for i in range(nb)]
    level = [(i, j) for i, j in combinations(range(nb), 2) if not comparable[i][j]]
    while level:
        grown = []
        for chain in level:
            for k in range(chain[-1] + 1, nb):
                if not any(comparable[i][k] for i in chain):
                    grown.append(chain + (k,))
        for chain in grown:
            yield chain
        level = grown


def alternating_union_sum(matroid: CyclicFlatPresentation, masks: list[int]) -> int:
    """Sum over the nonempty subfamilies F of (-1)^(|F|+1) r(u F)"""
    total = 0
    for size in range(1, len(masks) + 1):
        sign = 1 if size % 2 == 1 else -1
        for family in combinations(masks, size):
            union = 0
            for mask in family:
                union |= mask
            total += sign * matroid.rank_of(union)
    return total


def is_transversal_mi(matroid: CyclicFlatPresentation) -> TransversalVerdict:
    """Scan the antichains of cyclic flats of size at least three for a violation of the transversality inequality.

    :param matroid: the matroid, with at most 24 cyclic flats
    :type matroid: CyclicFlatPresentation

    :return: the verdict, with the first violating antichain and its deficit if the matroid is not transversal
    :rtype: TransversalVerdict"""
    if matroid.nb_flats > ANTICHAIN_FLAT_LIMIT:
        raise ValueError(f'antichain scan is limited to {ANTICHAIN_FLAT_LIMIT} cyclic flats, '
                         f'{matroid.name or "matroid"} has {matroid.nb_flats}')
    masks = [mask for mask, _ in matroid.pairs]
    checked = 0
    for chain in _antichains(masks):
        checked += 1
        family = [masks[i] for i in chain]
        common = matroid.full_mask
        for mask in family:
            common &= mask
        deficit = alternating_union_sum(matroid, family) - matroid.rank_of(common)
        if deficit < 0:
            LOGGER.debug(f'antichain {chain} violates the transversality inequality by {-deficit}')
            return TransversalVerdict(False, tuple(ElementSet(m, matroid.ground_size) for m in family), deficit,
                                      checked)
    return TransversalVerdict(True, checked=checked)


def is_cotransversal(matroid: CyclicFlatPresentation) -> TransversalVerdict:
    """Transversality of the dual"""
    return is_transversal_mi(dual(matroid))


def is_bitransversal(matroid: CyclicFlatPresentation) -> bool:
    """True if the matroid is both transversal and cotransversal"""
    return bool(is_transversal_mi(matroid)) and bool(is_cotransversal(matroid))


########################################################################################################################
# Presentation search
########################################################################################################################

def _add_set(matchable: np.ndarray, set_mask: int, indices: np.ndarray) -> np.ndarray:
    """Partial transversals of the system extended by one set: X is matchable if X is, or if X - e is for some e of X in
    the new set"""
    extended = matchable.copy()
    for e in iter_bits(set_mask):
        bit = 1 << e
        with_bit = indices[(indices & bit) != 0]
        extended[with_bit] |= matchable[with_bit ^ bit]
    return extended


def _largest_subset(values: np.ndarray, n: int, indices: np.ndarray) -> np.ndarray:
    """For each X, the largest size of a matchable subset of X"""
    best = np.where(values, subset_sizes(n), 0)
    for j in range(n):
        bit = 1 << j
        with_bit = indices[(indices & bit) != 0]
        best[with_bit] = np.maximum(best[with_bit], best[with_bit ^ bit])
    return best


def matching_rank_table(system: list[int], n: int) -> np.ndarray:
    """Rank table of the partial transversal matroid of a set system: the size of a maximum matching between the subset
    and the sets.

    :param system: masks of the sets
    :type system: list[int]
    :param n: number of elements
    :type n: int

    :return: ranks of all the 2^n subsets, indexed by mask
    :rtype: numpy.ndarray"""
    table = np.zeros(1 << n, dtype=np.int64)
    for subset in range(1, 1 << n):
        rows, cols = [], []
        members = list(iter_bits(subset))
        for row, e in enumerate(members):
            for col, set_mask in enumerate(system):
                if set_mask >> e & 1:
                    rows.append(row)
                    cols.append(col)
        if len(rows) == 0:
            continue
        graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(members), len(system)))
        matches = maximum_bipartite_matching(graph, perm_type='column')
        table[subset] = int(np.sum(matches >= 0))
    return table


def transversal_presentation_oracle(matroid: CyclicFlatPresentation) -> tuple[ElementSet, ...] | None:
    """Search for r(M) sets whose partial transversals are exactly the independent sets of M.

    Sets are picked in non-decreasing mask order among the subsets of the non-loop elements that meet every basis. A
    prefix of the system is abandoned as soon as it matches a dependent set, or as soon as some independent set could
    not be completed with the remaining sets. A system found this way is confirmed by rebuilding the matroid from the
    maximum matching ranks.

    :param matroid: the matroid, at most 7 elements and rank at most 4
    :type matroid: CyclicFlatPresentation

    :return: the presenting sets, or None if the matroid is not transversal
    :rtype: tuple[ElementSet, ...] | None"""
    n, r = matroid.ground_size, matroid.rank
    max_size, max_rank = TRANSVERSAL_ORACLE_LIMIT
    if n > max_size or r > max_rank:
        raise ValueError(f'presentation search is limited to {max_size} elements and rank {max_rank}, got {n} '
                         f'elements and rank {r}')
    if r == 0:
        return ()
    table = full_rank_table(matroid)
    sizes = subset_sizes(n)
    independent = table == sizes
    indices = np.arange(1 << n, dtype=np.int64)
    loops = matroid.pairs[0][0]
    full = full_mask(n)
    # each set of a presentation meets every basis
    pool = [mask for mask in range(1, 1 << n) if mask & loops == 0 and matroid.rank_of(full & ~mask) < r]
    LOGGER.debug(f'presentation search over {len(pool)} candidate sets for rank {r}')

    empty = np.zeros(1 << n, dtype=bool)
    empty[0] = True

    def search(start: int, chosen: list[int], matchable: np.ndarray) -> list[int] | None:
        if len(chosen) == r:
            return list(chosen) if np.array_equal(matchable, independent) else None
        remaining = r - len(chosen) - 1
        for position in range(start, len(pool)):
            extended = _add_set(matchable, pool[position], indices)
            if np.any(extended & ~independent):
                continue
            reach = _largest_subset(extended, n, indices)
            if np.any(independent & (reach < sizes - remaining)):
                continue
            found = search(position, chosen + [pool[position]], extended)
            if found is not None:
                return found
        return None

    system = search(0, [], empty)
    if system is None:
        return None
    rebuilt = recompute_cyclic_flats(TableOracle(matroid.labels, matching_rank_table(system, n)))
    if rebuilt != matroid:
        raise ValueError(f'presentation {system} does not reproduce {matroid.name or "the matroid"} by matching')
    return tuple(ElementSet(mask, n) for mask in system)
