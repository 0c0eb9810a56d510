"""Cyclic-flat presentations of matroids: axiom validation, rank and closure oracles, the lattice of cyclic flats and the
exhaustive scans (bases, circuits, recomputation of the cyclic flats from a rank oracle)."""

from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import pandas as pd

from pyintertwine.elements import ElementSet
from pyintertwine.utils import (get_logger, save_object, load_object, mask_of, iter_bits, bits_of, full_mask,
                                canonical_order_key, check_exhaustive, popcount, subset_masks, subset_sizes,
                                MAX_GROUND_SIZE)

LOGGER = get_logger()


@dataclass(frozen=True)
class RankedFlat:
    """A cyclic flat and its rank.

    :ivar elements: the members of the flat
    :vartype elements: ElementSet
    :ivar rank: the rank of the flat
    :vartype rank: int"""
    elements: ElementSet
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError(f'flat {self.elements} has a negative rank ({self.rank})')
        if self.rank > len(self.elements):
            raise ValueError(f'rank {self.rank} of flat {self.elements} exceeds its size {len(self.elements)}')

    def __str__(self):
        return f'{self.elements}:{self.rank}'


@dataclass(frozen=True)
class AxiomVerdict:
    """Outcome of the cyclic-flat axiom check.

    :ivar valid: True if the family satisfies the four axioms
    :vartype valid: bool
    :ivar axiom: first violated axiom (Z0, Z1, Z2 or Z3), None if valid
    :vartype axiom: str | None
    :ivar flats: the flats witnessing the violation
    :vartype flats: tuple[ElementSet, ...]
    :ivar message: human readable description of the violation
    :vartype message: str"""
    valid: bool
    axiom: str | None = None
    flats: tuple[ElementSet, ...] = ()
    message: str = ''

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return 'valid cyclic-flat presentation'
        return f'({self.axiom}) violated: {self.message}'


def _normalize_pairs(flats: Iterable, n: int, labels: Sequence[str] | None = None) -> list[tuple[int, int]]:
    """Convert flats given as RankedFlat, (ElementSet, rank), (mask, rank) or (labels, rank) into (mask, rank) pairs"""
    index = {label: i for i, label in enumerate(labels)} if labels is not None else None
    pairs = []
    for flat in flats:
        if isinstance(flat, RankedFlat):
            elements, rank = flat.elements, flat.rank
        else:
            elements, rank = flat
        if isinstance(elements, ElementSet):
            if elements.ground_size != n:
                raise ValueError(f'flat {elements} is defined over {elements.ground_size} elements instead of {n}')
            mask = elements.mask
        elif isinstance(elements, int):
            mask = elements
        else:
            members = list(elements)
            if any(isinstance(e, str) for e in members):
                if index is None:
                    raise ValueError('flats given by labels need the ground labels')
                unknown = [e for e in members if e not in index]
                if len(unknown) > 0:
                    raise ValueError(f'unknown labels in flat: {", ".join(unknown)}')
                members = [index[e] for e in members]
            mask = mask_of(members)
        if mask < 0 or mask >> n:
            raise ValueError(f'flat {bits_of(mask)} is not a subset of the {n} ground elements')
        rank = int(rank)
        if rank < 0 or rank > mask.bit_count():
            raise ValueError(f'rank {rank} of flat {{{",".join(map(str, bits_of(mask)))}}} is not between 0 and its '
                             f'size {mask.bit_count()}')
        pairs.append((mask, rank))
    if len({mask for mask, _ in pairs}) != len(pairs):
        raise ValueError('duplicate flats in the presentation')
    return sorted(pairs, key=lambda pair: canonical_order_key(pair[0]))


def _check_axioms(pairs: list[tuple[int, int]], n: int) -> AxiomVerdict:
    """Check (Z0) to (Z3) on canonically sorted (mask, rank) pairs"""

    def element_sets(*masks):
        return tuple(ElementSet(m, n) for m in masks)

    if len(pairs) == 0:
        return AxiomVerdict(False, 'Z0', (), 'the family of cyclic flats is empty')

    masks = [m for m, _ in pairs]
    ranks = dict(pairs)
    joins, meets = {}, {}

    # (Z0) every pair has a least upper bound and a greatest lower bound
    for i, x in enumerate(masks):
        for y in masks[i + 1:]:
            upper = [z for z in masks if x & ~z == 0 and y & ~z == 0]
            least_upper = [z for z in upper if not any(w != z and w & ~z == 0 for w in upper)]
            if len(least_upper) != 1:
                return AxiomVerdict(False, 'Z0', element_sets(x, y),
                                    f'flats {ElementSet(x, n)} and {ElementSet(y, n)} have {len(least_upper)} minimal '
                                    f'upper bounds')
            lower = [z for z in masks if z & ~x == 0 and z & ~y == 0]
            greatest_lower = [z for z in lower if not any(w != z and z & ~w == 0 for w in lower)]
            if len(greatest_lower) != 1:
                return AxiomVerdict(False, 'Z0', element_sets(x, y),
                                    f'flats {ElementSet(x, n)} and {ElementSet(y, n)} have {len(greatest_lower)} '
                                    f'maximal lower bounds')
            joins[(x, y)] = least_upper[0]
            meets[(x, y)] = greatest_lower[0]

    # (Z1) the least cyclic flat has rank 0
    least = [z for z in masks if all(z & ~w == 0 for w in masks)]
    if len(least) != 1:
        return AxiomVerdict(False, 'Z0', (), 'the family has no least element')
    if ranks[least[0]] != 0:
        return AxiomVerdict(False, 'Z1', element_sets(least[0]),
                            f'the least flat {ElementSet(least[0], n)} has rank {ranks[least[0]]}')

    # (Z2) strict rank increase, strictly smaller than the size increase
    for x in masks:
        for y in masks:
            if x != y and x & ~y == 0:
                rank_gap, size_gap = ranks[y] - ranks[x], (y & ~x).bit_count()
                if not 0 < rank_gap < size_gap:
                    return AxiomVerdict(False, 'Z2', element_sets(x, y),
                                        f'r({ElementSet(y, n)}) - r({ElementSet(x, n)}) = {rank_gap} is not strictly '
                                        f'between 0 and {size_gap}')

    # (Z3) submodularity corrected by the elements of X n Y outside the meet
    for i, x in enumerate(masks):
        for y in masks[i + 1:]:
            if x & ~y == 0 or y & ~x == 0:
                continue
            join, meet = joins[(x, y)], meets[(x, y)]
            rhs = ranks[join] + ranks[meet] + ((x & y) & ~meet).bit_count()
            if ranks[x] + ranks[y] < rhs:
                return AxiomVerdict(False, 'Z3', element_sets(x, y),
                                    f'r({ElementSet(x, n)}) + r({ElementSet(y, n)}) = {ranks[x] + ranks[y]} is below '
                                    f'{rhs}')
    return AxiomVerdict(True)


def validate_presentation(flats: Iterable, n: int, labels: Sequence[str] | None = None) -> AxiomVerdict:
    """Check whether ranked sets form the cyclic flats of a matroid, returning the first violated axiom otherwise.

    :param flats: the ranked flats, as RankedFlat, or pairs (ElementSet | mask | labels, rank)
    :type flats: Iterable
    :param n: size of the ground set, at most 64
    :type n: int
    :param labels: ground labels, needed only when flats are given by labels. Default: None
    :type labels: Sequence[str] | None

    :return: the verdict, naming the axiom and the witnessing flats on failure
    :rtype: AxiomVerdict"""
    if n > MAX_GROUND_SIZE:
        raise ValueError(f'ground set of {n} elements exceeds the {MAX_GROUND_SIZE} elements limit')
    verdict = _check_axioms(_normalize_pairs(flats, n, labels), n)
    if not verdict.valid:
        LOGGER.debug(f'invalid presentation: {verdict}')
    return verdict


class CyclicFlatPresentation:
    """A matroid given by its ground labels and its cyclic flats with their ranks.

    The rank of any set Y is the minimum over the cyclic flats F of r(F) + |Y - F|. Flats are kept in canonical order:
    by cardinality, then lexicographically on their sorted indices.

    :ivar name: optional display name
    :vartype name: str | None
    """

    def __init__(self, labels: Sequence[str], flats: Iterable, name: str | None = None, validate: bool = True):
        """Create a presentation.

        :param labels: the ground labels, in index order. Labels must be unique non-empty strings
        :type labels: Sequence[str]
        :param flats: the cyclic flats, as RankedFlat, or pairs (ElementSet | mask | labels, rank)
        :type flats: Iterable
        :param name: display name. Default: None
        :type name: str | None
        :param validate: check the cyclic-flat axioms and raise a ValueError if one fails. Default: True
        :type validate: bool"""
        labels = tuple(str(label) for label in labels)
        if len(labels) > MAX_GROUND_SIZE:
            raise ValueError(f'ground set of {len(labels)} elements exceeds the {MAX_GROUND_SIZE} elements limit')
        if len(set(labels)) != len(labels):
            duplicates = sorted({label for label in labels if labels.count(label) > 1})
            raise ValueError(f'duplicate labels: {", ".join(duplicates)}')
        if any(label == '' for label in labels):
            raise ValueError('labels must be non-empty strings')
        self.name = name
        self._labels = labels
        self._index = {label: i for i, label in enumerate(labels)}
        self._pairs = tuple(_normalize_pairs(flats, len(labels), labels))
        self._label_key = None
        if validate:
            verdict = _check_axioms(list(self._pairs), len(labels))
            if not verdict.valid:
                raise ValueError(f'invalid presentation{" " + name if name else ""}: {verdict}')
        elif len(self._pairs) == 0:
            raise ValueError('a presentation needs at least one flat')

    ####################################################################################################################
    # Properties
    ####################################################################################################################

    @property
    def labels(self) -> tuple[str, ...]:
        """Ground labels in index order"""
        return self._labels

    @property
    def ground_size(self) -> int:
        """Number of elements of the ground set"""
        return len(self._labels)

    @property
    def ground(self) -> ElementSet:
        """The whole ground set"""
        return ElementSet.full(self.ground_size)

    @property
    def full_mask(self) -> int:
        return full_mask(self.ground_size)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Cyclic flats as (mask, rank) pairs, in canonical order"""
        return self._pairs

    @property
    def flats(self) -> list[RankedFlat]:
        """Cyclic flats in canonical order"""
        return [RankedFlat(ElementSet(m, self.ground_size), r) for m, r in self._pairs]

    @property
    def nb_flats(self) -> int:
        """Number of cyclic flats"""
        return len(self._pairs)

    @property
    def rank(self) -> int:
        """Rank of the matroid"""
        return self.rank_of(self.full_mask)

    @property
    def corank(self) -> int:
        """Rank of the dual matroid"""
        return self.ground_size - self.rank

    def proper_pairs(self) -> list[tuple[int, int]]:
        """Nonempty proper cyclic flats as (mask, rank) pairs"""
        full = self.full_mask
        return [(m, r) for m, r in self._pairs if m != 0 and m != full]

    ####################################################################################################################
    # Elements
    ####################################################################################################################

    def index_of(self, label: str) -> int:
        """Index of the element with the given label"""
        if label not in self._index:
            raise ValueError(f'unknown label {label}')
        return self._index[label]

    def element_set(self, items: ElementSet | Iterable[str | int] | None) -> ElementSet:
        """Convert labels, indices or an ElementSet into an ElementSet of this ground set.

        :param items: the members. None is the empty set
        :type items: ElementSet | Iterable[str | int] | None

        :return: the element set
        :rtype: ElementSet"""
        if items is None:
            return ElementSet.empty(self.ground_size)
        if isinstance(items, ElementSet):
            if items.ground_size != self.ground_size:
                raise ValueError(f'element set over {items.ground_size} elements used with a matroid on '
                                 f'{self.ground_size} elements')
            return items
        if isinstance(items, str):
            items = [items]
        mask = 0
        for item in items:
            if isinstance(item, str):
                mask |= 1 << self.index_of(item)
            else:
                if not 0 <= item < self.ground_size:
                    raise ValueError(f'element index {item} out of range [0, {self.ground_size})')
                mask |= 1 << item
        return ElementSet(mask, self.ground_size)

    def labels_of(self, elements: ElementSet | int) -> tuple[str, ...]:
        """Labels of the members of a set, in index order"""
        mask = elements.mask if isinstance(elements, ElementSet) else elements
        return tuple(self._labels[i] for i in iter_bits(mask))

    ####################################################################################################################
    # Rank
    ####################################################################################################################

    def rank_of(self, mask: int) -> int:
        """Rank of the set given by its mask"""
        return min(r + (mask & ~f).bit_count() for f, r in self._pairs)

    def rank_table(self, masks: np.ndarray) -> np.ndarray:
        """Vectorized rank of an array of masks.

        :param masks: the sets to evaluate
        :type masks: numpy.ndarray

        :return: ranks, as int64
        :rtype: numpy.ndarray"""
        masks = np.asarray(masks, dtype=np.uint64)
        full = self.full_mask
        ranks = None
        for f, r in self._pairs:
            candidate = popcount(masks & np.uint64(full & ~f)) + r
            ranks = candidate if ranks is None else np.minimum(ranks, candidate)
        return ranks

    ####################################################################################################################
    # Comparison and display
    ####################################################################################################################

    def label_key(self) -> frozenset:
        """Label-level description of the presentation: the ranked flats as sets of labels"""
        if self._label_key is None:
            self._label_key = frozenset((frozenset(self.labels_of(m)), r) for m, r in self._pairs)
        return self._label_key

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicFlatPresentation):
            return NotImplemented
        if self._labels == other._labels:
            return self._pairs == other._pairs
        if set(self._labels) != set(other._labels):
            return False
        return self.label_key() == other.label_key()

    def __hash__(self) -> int:
        return hash((frozenset(self._labels), self.label_key()))

    def __getitem__(self, item: int) -> RankedFlat:
        mask, rank = self._pairs[item]
        return RankedFlat(ElementSet(mask, self.ground_size), rank)

    def format_flat(self, mask: int) -> str:
        """Display a flat by its labels"""
        return '{' + ','.join(self.labels_of(mask)) + '}'

    def __str__(self):
        name = f'{self.name}, ' if self.name else ''
        flats = ', '.join(f'{self.format_flat(m)}:{r}' for m, r in self._pairs)
        return f'CyclicFlatPresentation({name}n={self.ground_size}, rank={self.rank}, flats=[{flats}])'

    def __repr__(self):
        return self.__str__()

    def copy(self):
        """Creates a copy of the presentation."""
        return CyclicFlatPresentation(self._labels, self._pairs, self.name, validate=False)

    def with_name(self, name: str | None):
        """Copy of the presentation under another display name"""
        presentation = self.copy()
        presentation.name = name
        return presentation

    def save(self, filepath: str) -> None:
        """Save the presentation as a pickle file

        :param filepath: path to the output file
        :type filepath: str

        :return: None"""
        save_object(self, filepath)

    @staticmethod
    def load(filepath: str):
        """Load a pickled presentation

        :param filepath: path to the pickle file
        :type filepath: str

        :return: the presentation, or None if loading failed
        :rtype: CyclicFlatPresentation | None"""
        return load_object(filepath, CyclicFlatPresentation)


########################################################################################################################
# Rank oracles
########################################################################################################################

class RankOracle(ABC):
    """Evaluator of a matroid rank function on the subsets of a labelled ground set.

    :ivar labels: labels of the ground elements, in local index order
    :vartype labels: tuple[str, ...]"""

    def __init__(self, labels: Sequence[str]):
        self.labels = tuple(labels)

    @property
    def ground_size(self) -> int:
        return len(self.labels)

    @abstractmethod
    def rank(self, mask: int) -> int:
        """Rank of a set given by its local mask"""

    def table(self) -> np.ndarray:
        """Ranks of all the 2^n local masks, indexed by mask"""
        check_exhaustive(self.ground_size, 'rank table')
        return np.array([self.rank(mask) for mask in range(1 << self.ground_size)], dtype=np.int64)


class PresentationOracle(RankOracle):
    """Rank oracle of the minor M \\ X / Y of a presentation: r(A) = r_M(A u Y) - r_M(Y), on the surviving elements kept
    in host order."""

    def __init__(self, matroid: CyclicFlatPresentation, delete: int = 0, contract: int = 0):
        """
        :param matroid: the host matroid
        :type matroid: CyclicFlatPresentation
        :param delete: mask of the deleted elements. Default: 0
        :type delete: int
        :param contract: mask of the contracted elements. Default: 0
        :type contract: int"""
        if delete & contract:
            raise ValueError(f'deleted and contracted sets overlap on {matroid.labels_of(delete & contract)}')
        self.matroid = matroid
        self.contract = contract
        self.survivors = bits_of(matroid.full_mask & ~(delete | contract))
        self._base = matroid.rank_of(contract)
        super().__init__(tuple(matroid.labels[i] for i in self.survivors))

    def host_mask(self, mask: int) -> int:
        """Host mask of a local mask"""
        return mask_of(self.survivors[j] for j in iter_bits(mask))

    def local_mask(self, host_mask: int) -> int:
        """Local mask of the surviving part of a host mask"""
        return mask_of(j for j, i in enumerate(self.survivors) if host_mask >> i & 1)

    def rank(self, mask: int) -> int:
        return self.matroid.rank_of(self.host_mask(mask) | self.contract) - self._base

    def table(self) -> np.ndarray:
        check_exhaustive(self.ground_size, 'rank table')
        masks = subset_masks(self.survivors) | np.uint64(self.contract)
        return self.matroid.rank_table(masks) - self._base


class TableOracle(RankOracle):
    """Rank oracle given by an explicit table of the ranks of all the subsets"""

    def __init__(self, labels: Sequence[str], table: np.ndarray):
        super().__init__(labels)
        table = np.asarray(table, dtype=np.int64)
        if len(table) != 1 << self.ground_size:
            raise ValueError(f'rank table of length {len(table)} does not match {self.ground_size} elements')
        self._table = table

    def rank(self, mask: int) -> int:
        return int(self._table[mask])

    def table(self) -> np.ndarray:
        return self._table

    @staticmethod
    def from_bases(labels: Sequence[str], bases: Iterable[int]):
        """Rank oracle of the set system whose maximal members are the given bases: the rank of a set is the size of
        its largest subset contained in a basis.

        :param labels: ground labels
        :type labels: Sequence[str]
        :param bases: masks of the bases
        :type bases: Iterable[int]

        :return: the oracle
        :rtype: TableOracle"""
        n = len(labels)
        check_exhaustive(n, 'rank table from bases')
        size = 1 << n
        bases = list(bases)
        if len(bases) == 0:
            raise ValueError('a basis family cannot be empty')
        indices = np.arange(size, dtype=np.int64)
        independent = np.zeros(size, dtype=bool)
        independent[np.asarray(bases, dtype=np.int64)] = True
        # every subset of a basis is independent
        for j in range(n):
            bit = 1 << j
            with_bit = indices[(indices & bit) != 0]
            independent[with_bit ^ bit] |= independent[with_bit]
        ranks = np.where(independent, subset_sizes(n), -1)
        # rank = size of the largest independent subset
        for j in range(n):
            bit = 1 << j
            with_bit = indices[(indices & bit) != 0]
            ranks[with_bit] = np.maximum(ranks[with_bit], ranks[with_bit ^ bit])
        return TableOracle(labels, ranks)


def _check_rank_table(table: np.ndarray, n: int, strict: bool) -> None:
    """Raise a ValueError if the table is not a matroid rank function"""
    if table[0] != 0:
        raise ValueError(f'bad rank oracle: the empty set has rank {table[0]}')
    indices = np.arange(1 << n, dtype=np.int64)
    for j in range(n):
        bit = 1 << j
        without = indices[(indices & bit) == 0]
        increase = table[without | bit] - table[without]
        bad = (increase < 0) | (increase > 1)
        if bad.any():
            mask = int(without[np.argmax(bad)])
            raise ValueError(f'bad rank oracle: adding element {j} to {bits_of(mask)} changes the rank by '
                             f'{int(increase[np.argmax(bad)])}')
    if not strict:
        return
    for j in range(n):
        for k in range(j + 1, n):
            both = (1 << j) | (1 << k)
            base = indices[(indices & both) == 0]
            lhs = table[base | (1 << j)] + table[base | (1 << k)]
            rhs = table[base | both] + table[base]
            bad = lhs < rhs
            if bad.any():
                mask = int(base[np.argmax(bad)])
                raise ValueError(f'bad rank oracle: submodularity fails on {bits_of(mask)} with elements {j} and {k}')


def recompute_cyclic_flats(oracle: RankOracle, strict: bool = True, candidates: Iterable[int] | None = None,
                           validate: bool = True, name: str | None = None) -> CyclicFlatPresentation:
    """Rebuild the cyclic-flat presentation of the matroid whose rank function is given by an oracle: the cyclic flats
    are the sets F with r(F + e) > r(F) for every e outside F and r(F - e) = r(F) for every e in F.

    :param oracle: the rank oracle
    :type oracle: RankOracle
    :param strict: also check submodularity on every scanned triple (S, e, f). Default: True
    :type strict: bool
    :param candidates: local masks of a family known to contain every cyclic flat. When given, only these sets are
        tested and no exhaustive scan is run. Default: None
    :type candidates: Iterable[int] | None
    :param validate: check the axioms of the result. Default: True
    :type validate: bool
    :param name: display name of the result. Default: None
    :type name: str | None

    :return: the presentation
    :rtype: CyclicFlatPresentation"""
    n = oracle.ground_size
    if candidates is not None:
        pairs = []
        full = full_mask(n)
        for mask in set(candidates):
            rank = oracle.rank(mask)
            if any(oracle.rank(mask | 1 << e) == rank for e in iter_bits(full & ~mask)):
                continue
            if any(oracle.rank(mask & ~(1 << e)) != rank for e in iter_bits(mask)):
                continue
            pairs.append((mask, rank))
        return CyclicFlatPresentation(oracle.labels, pairs, name, validate=validate)

    check_exhaustive(n, 'recompute_cyclic_flats')
    table = np.asarray(oracle.table(), dtype=np.int64)
    _check_rank_table(table, n, strict)
    indices = np.arange(1 << n, dtype=np.int64)
    is_flat = np.ones(1 << n, dtype=bool)
    is_cyclic = np.ones(1 << n, dtype=bool)
    for j in range(n):
        bit = 1 << j
        absent = (indices & bit) == 0
        is_flat &= ~absent | (table[indices | bit] > table)
        is_cyclic &= absent | (table[indices ^ bit] == table)
    found = indices[is_flat & is_cyclic]
    pairs = [(int(mask), int(table[mask])) for mask in found]
    LOGGER.debug(f'recomputed {len(pairs)} cyclic flats on {n} elements')
    return CyclicFlatPresentation(oracle.labels, pairs, name, validate=validate)


########################################################################################################################
# Oracles on a presentation
########################################################################################################################

def rank(matroid: CyclicFlatPresentation, elements) -> int:
    """Rank of a set: minimum over the cyclic flats F of r(F) + |Y - F|.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation
    :param elements: the set, as an ElementSet or labels
    :type elements: ElementSet | Iterable[str]

    :return: the rank
    :rtype: int"""
    return matroid.rank_of(matroid.element_set(elements).mask)


def is_independent(matroid: CyclicFlatPresentation, elements) -> bool:
    """True if the rank of the set equals its size"""
    elements = matroid.element_set(elements)
    return matroid.rank_of(elements.mask) == len(elements)


def nullity(matroid: CyclicFlatPresentation, elements) -> int:
    """Nullity |Y| - r(Y) of a set"""
    elements = matroid.element_set(elements)
    return len(elements) - matroid.rank_of(elements.mask)


def closure_mask(matroid: CyclicFlatPresentation, mask: int) -> int:
    """Closure of a set given by its mask"""
    rank_y = matroid.rank_of(mask)
    closed = mask
    for e in iter_bits(matroid.full_mask & ~mask):
        if matroid.rank_of(mask | 1 << e) == rank_y:
            closed |= 1 << e
    return closed


def closure(matroid: CyclicFlatPresentation, elements) -> ElementSet:
    """Closure of a set: the elements whose addition does not raise the rank.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation
    :param elements: the set, as an ElementSet or labels
    :type elements: ElementSet | Iterable[str]

    :return: the closure
    :rtype: ElementSet"""
    return ElementSet(closure_mask(matroid, matroid.element_set(elements).mask), matroid.ground_size)


def full_rank_table(matroid: CyclicFlatPresentation) -> np.ndarray:
    """Ranks of all the 2^n subsets, indexed by mask"""
    check_exhaustive(matroid.ground_size, 'full rank table')
    return matroid.rank_table(np.arange(1 << matroid.ground_size, dtype=np.uint64))


def enumerate_bases(matroid: CyclicFlatPresentation) -> list[ElementSet]:
    """All the bases of the matroid, in canonical order.

    :param matroid: the matroid, at most 20 elements
    :type matroid: CyclicFlatPresentation

    :return: the bases
    :rtype: list[ElementSet]"""
    n = matroid.ground_size
    check_exhaustive(n, 'enumerate_bases')
    table = full_rank_table(matroid)
    r = matroid.rank
    masks = np.flatnonzero((subset_sizes(n) == r) & (table == r))
    return sorted((ElementSet(int(m), n) for m in masks), key=ElementSet.sort_key)


def enumerate_circuits(matroid: CyclicFlatPresentation) -> list[ElementSet]:
    """All the circuits (minimal dependent sets) of the matroid, in canonical order.

    :param matroid: the matroid, at most 20 elements
    :type matroid: CyclicFlatPresentation

    :return: the circuits
    :rtype: list[ElementSet]"""
    n = matroid.ground_size
    check_exhaustive(n, 'enumerate_circuits')
    table = full_rank_table(matroid)
    sizes = subset_sizes(n)
    indices = np.arange(1 << n, dtype=np.int64)
    is_circuit = table < sizes
    for j in range(n):
        bit = 1 << j
        present = (indices & bit) != 0
        is_circuit &= ~present | (table[indices ^ bit] == sizes - 1)
    return sorted((ElementSet(int(m), n) for m in np.flatnonzero(is_circuit)), key=ElementSet.sort_key)


def cyclic_part(matroid: CyclicFlatPresentation, mask: int) -> int:
    """Union of the circuits contained in a set: the set minus the coloops of the restriction"""
    rank_y = matroid.rank_of(mask)
    return mask & ~mask_of(e for e in iter_bits(mask) if matroid.rank_of(mask & ~(1 << e)) < rank_y)


def cyclic_flat_lattice(matroid: CyclicFlatPresentation) -> tuple[pd.DataFrame, pd.DataFrame]:
    """Join and meet tables of the lattice of cyclic flats. Entry (i, j) is the position, in canonical order, of the
    join (closure of the union) or the meet (union of the circuits in the intersection) of flats i and j.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation

    :return: the join table and the meet table
    :rtype: tuple[pandas.DataFrame, pandas.DataFrame]"""
    masks = [m for m, _ in matroid.pairs]
    position = {m: i for i, m in enumerate(masks)}
    size = len(masks)
    join, meet = np.zeros((size, size), dtype=int), np.zeros((size, size), dtype=int)
    for i, x in enumerate(masks):
        for j in range(i, size):
            y = masks[j]
            joined = closure_mask(matroid, x | y)
            met = cyclic_part(matroid, x & y)
            if joined not in position or met not in position:
                raise ValueError(f'lattice of {matroid.name or "matroid"} is not closed on flats {i} and {j}')
            join[i, j] = join[j, i] = position[joined]
            meet[i, j] = meet[j, i] = position[met]
    names = [matroid.format_flat(m) for m in masks]
    index = pd.Index(names, name='flat')
    return pd.DataFrame(join, index=index, columns=names), pd.DataFrame(meet, index=index, columns=names)


########################################################################################################################
# Free and cofree elements
########################################################################################################################

def eta_zprime(matroid: CyclicFlatPresentation) -> int:
    """Total nullity of the nonempty proper cyclic flats"""
    return sum(m.bit_count() - r for m, r in matroid.proper_pairs())


def fi_set(matroid: CyclicFlatPresentation) -> ElementSet:
    """Elements in no proper cyclic flat: the free elements and the isthmuses.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation

    :return: the set FI(M)
    :rtype: ElementSet"""
    full = matroid.full_mask
    covered = 0
    for m, _ in matroid.pairs:
        if m != full:
            covered |= m
    return ElementSet(full & ~covered, matroid.ground_size)


def fi_dual_set(matroid: CyclicFlatPresentation) -> ElementSet:
    """FI of the dual matroid: the cofree elements and the loops. The proper cyclic flats of the dual are the complements
    of the nonempty cyclic flats, so this is the intersection of the nonempty cyclic flats.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation

    :return: the set FI(M*)
    :rtype: ElementSet"""
    common = matroid.full_mask
    for m, _ in matroid.pairs:
        if m != 0:
            common &= m
    return ElementSet(common, matroid.ground_size)


def is_uniform(matroid: CyclicFlatPresentation) -> bool:
    """True if every cyclic flat is empty or the whole ground set"""
    return all(m in (0, matroid.full_mask) for m, _ in matroid.pairs)


def circuit_hyperplanes(matroid: CyclicFlatPresentation) -> list[ElementSet]:
    """Circuits that are also hyperplanes: the cyclic flats of rank r(M) - 1 and nullity 1, in canonical order.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation

    :return: the circuit-hyperplanes
    :rtype: list[ElementSet]"""
    top = matroid.rank - 1
    return [ElementSet(m, matroid.ground_size) for m, r in matroid.pairs if r == top and m.bit_count() == r + 1]
