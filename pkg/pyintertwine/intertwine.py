"""The intertwine construction M_k(M1, S1', T1; M2, S2', T2) and its relatives: parameter derivation, the ranked
cyclic flats of the construction, the circuit-hyperplane variant, the factor matroids whose common bases are the bases
of the construction, the truncation / lift descriptions of the extreme cases, size bounds and uniform restrictions."""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum, unique
from itertools import combinations, product

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from pyintertwine.constructions import (dual, direct_sum, free_extension, free_coextension, truncate, lift, restrict,
                                        delete)
from pyintertwine.elements import ElementSet
from pyintertwine.isomorphism import canonical_key
from pyintertwine.matroid import (CyclicFlatPresentation, TableOracle, recompute_cyclic_flats, enumerate_bases,
                                  nullity, fi_set, fi_dual_set, is_uniform, circuit_hyperplanes)
from pyintertwine.utils import get_logger, mask_of, full_mask, subset_masks, popcount, check_exhaustive

LOGGER = get_logger()


@unique
class Mode(Enum):
    """How the minors of the construction are compared with the input matroids.

    Possible values are: LABELLED, UNLABELLED"""
    LABELLED = 'labelled'  #: minors must be equal to the inputs, labels included
    UNLABELLED = 'unlabelled'  #: minors must be isomorphic to the inputs

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class IntertwineParams:
    """Parameters of one instance of the construction.

    :ivar m1: first matroid, on S1
    :vartype m1: CyclicFlatPresentation
    :ivar s1p: the chosen subset S1' of S1
    :vartype s1p: ElementSet
    :ivar m2: second matroid, on S2, disjoint from S1
    :vartype m2: CyclicFlatPresentation
    :ivar s2p: the chosen subset S2' of S2
    :vartype s2p: ElementSet
    :ivar k: rank of the construction
    :vartype k: int
    :ivar t1: labels of the block T1, of size k - r(M1) - |S2'|
    :vartype t1: tuple[str, ...]
    :ivar t2: labels of the block T2, of size k - r(M2) - |S1'|
    :vartype t2: tuple[str, ...]
    :ivar mode: labelled or unlabelled intertwine target
    :vartype mode: Mode
    :ivar hypotheses: named flags telling which hypotheses of the intertwine results hold
    :vartype hypotheses: dict[str, bool]"""
    m1: CyclicFlatPresentation
    s1p: ElementSet
    m2: CyclicFlatPresentation
    s2p: ElementSet
    k: int
    t1: tuple[str, ...]
    t2: tuple[str, ...]
    mode: Mode = Mode.LABELLED
    hypotheses: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def r1(self) -> int:
        return self.m1.rank

    @property
    def r2(self) -> int:
        return self.m2.rank

    @property
    def s1p_labels(self) -> tuple[str, ...]:
        return self.m1.labels_of(self.s1p)

    @property
    def s2p_labels(self) -> tuple[str, ...]:
        return self.m2.labels_of(self.s2p)

    @property
    def s1_rest_labels(self) -> tuple[str, ...]:
        """Labels of S1 - S1'"""
        return self.m1.labels_of(self.s1p.complement())

    @property
    def s2_rest_labels(self) -> tuple[str, ...]:
        """Labels of S2 - S2'"""
        return self.m2.labels_of(self.s2p.complement())

    @property
    def labels(self) -> tuple[str, ...]:
        """Ground labels of the construction: S1, S2, T1 then T2"""
        return self.m1.labels + self.m2.labels + self.t1 + self.t2

    @property
    def ground_size(self) -> int:
        return len(self.labels)

    @property
    def dual_rank(self) -> int:
        """Rank j of the dual of the construction"""
        return self.ground_size - self.k

    def __str__(self):
        m1, m2 = self.m1.name or 'M1', self.m2.name or 'M2'
        return (f'IntertwineParams({m1}, S1\'={{{",".join(self.s1p_labels)}}}, {m2}, '
                f'S2\'={{{",".join(self.s2p_labels)}}}, k={self.k}, |T1|={len(self.t1)}, |T2|={len(self.t2)}, '
                f'mode={self.mode})')

    def __repr__(self):
        return self.__str__()


def eq2_holds(m1: CyclicFlatPresentation, s1p, m2: CyclicFlatPresentation, s2p, k: int) -> bool:
    """True if k >= r(M1) + nullity1(S1') + r(M2) + nullity2(S2')"""
    return k >= m1.rank + nullity(m1, s1p) + m2.rank + nullity(m2, s2p)


def _block_labels(stem: str, size: int, taken: set[str]) -> tuple[str, ...]:
    labels, i = [], 0
    while len(labels) < size:
        if f'{stem}_{i}' not in taken:
            labels.append(f'{stem}_{i}')
        i += 1
    return tuple(labels)


def derive_params(m1: CyclicFlatPresentation, s1p, m2: CyclicFlatPresentation, s2p, k: int,
                  mode: Mode = Mode.LABELLED, t1: Sequence[str] | None = None,
                  t2: Sequence[str] | None = None) -> IntertwineParams:
    """Check the inputs of the construction and compute the sizes and labels of the T blocks.

    Only the rank inequality on k is required to build the matroid. The hypotheses of the intertwine results are
    reported as flags in `hypotheses`, except the FI sandwich FI(Mi) <= Si' <= Si - FI(Mi*) that is enforced in
    unlabelled mode.

    :param m1: first matroid, positive rank
    :type m1: CyclicFlatPresentation
    :param s1p: S1', as labels of m1 or an ElementSet of m1
    :type s1p: ElementSet | Iterable[str]
    :param m2: second matroid, positive rank, labels disjoint from m1
    :type m2: CyclicFlatPresentation
    :param s2p: S2', as labels of m2 or an ElementSet of m2
    :type s2p: ElementSet | Iterable[str]
    :param k: rank of the construction
    :type k: int
    :param mode: target of the verification. Default: Mode.LABELLED
    :type mode: Mode
    :param t1: explicit labels for T1. Default: None, which generates t1_0, t1_1...
    :type t1: Sequence[str] | None
    :param t2: explicit labels for T2. Default: None, which generates t2_0, t2_1...
    :type t2: Sequence[str] | None

    :return: the parameters
    :rtype: IntertwineParams"""
    if m1.rank <= 0 or m2.rank <= 0:
        raise ValueError(f'both matroids need a positive rank (got {m1.rank} and {m2.rank})')
    shared = sorted(set(m1.labels) & set(m2.labels))
    if len(shared) > 0:
        raise ValueError(f'the ground sets of the two matroids overlap on {", ".join(shared)}')
    s1p, s2p = m1.element_set(s1p), m2.element_set(s2p)
    bound = m1.rank + nullity(m1, s1p) + m2.rank + nullity(m2, s2p)
    if k < bound:
        raise ValueError(f'k={k} is below the required bound r(M1) + nullity(S1\') + r(M2) + nullity(S2\') = {bound}')
    size_t1, size_t2 = k - m1.rank - len(s2p), k - m2.rank - len(s1p)
    if size_t1 <= 0 or size_t2 <= 0:
        raise ValueError(f'k={k} gives empty T blocks (|T1|={size_t1}, |T2|={size_t2})')

    taken = set(m1.labels) | set(m2.labels)
    t1 = _block_labels('t1', size_t1, taken) if t1 is None else tuple(str(t) for t in t1)
    t2 = _block_labels('t2', size_t2, taken | set(t1)) if t2 is None else tuple(str(t) for t in t2)
    if len(t1) != size_t1 or len(t2) != size_t2:
        raise ValueError(f'T blocks of sizes {len(t1)} and {len(t2)} given, k={k} requires {size_t1} and {size_t2}')
    new_labels = t1 + t2
    if len(set(new_labels)) != len(new_labels) or len(taken & set(new_labels)) > 0:
        raise ValueError('T labels must be distinct and disjoint from the ground sets of both matroids')

    sandwich = all(fi_set(m).issubset(sp) and sp.isdisjoint(fi_dual_set(m)) for m, sp in ((m1, s1p), (m2, s2p)))
    if mode == Mode.UNLABELLED and not sandwich:
        raise ValueError('the chosen S1\', S2\' are not between FI(Mi) and Si - FI(Mi*)')
    hypotheses = {
        'eq2': True,
        'fi_sandwich': sandwich,
        'k_bound': k >= 4 * max(m1.ground_size, m2.ground_size),
        'neither_uniform': not is_uniform(m1) and not is_uniform(m2),
        'zprime1_not_s1p': [m for m, _ in m1.proper_pairs()] != [s1p.mask],
        'zprime2_not_s2p': [m for m, _ in m2.proper_pairs()] != [s2p.mask],
    }
    params = IntertwineParams(m1, s1p, m2, s2p, k, t1, t2, mode, hypotheses)
    failing = [name for name, holds in hypotheses.items() if not holds]
    if len(failing) > 0:
        LOGGER.debug(f'{params}: hypotheses not satisfied: {", ".join(failing)}')
    return params


def labelled_hypotheses_hold(params: IntertwineParams) -> bool:
    """True if the hypotheses guaranteeing a labelled intertwine hold"""
    return all(params.hypotheses.get(name, False)
               for name in ('eq2', 'neither_uniform', 'zprime1_not_s1p', 'zprime2_not_s2p'))


def unlabelled_hypotheses_hold(params: IntertwineParams) -> bool:
    """True if the hypotheses guaranteeing an intertwine up to isomorphism hold, the non-obtainability of each matroid
    from the other excepted"""
    return all(params.hypotheses.get(name, False) for name in ('eq2', 'fi_sandwich', 'k_bound'))


def dual_params(params: IntertwineParams) -> IntertwineParams:
    """Parameters of the construction whose result is the dual: the duals of M1 and M2 with S1 - S1' and S2 - S2', the
    T blocks swapped, and rank j = |S1| + |S2| + |T1| + |T2| - k.

    :param params: the parameters
    :type params: IntertwineParams

    :return: the dual parameters
    :rtype: IntertwineParams"""
    return derive_params(dual(params.m1), params.s1p.complement(), dual(params.m2), params.s2p.complement(),
                         params.dual_rank, params.mode, t1=params.t2, t2=params.t1)


########################################################################################################################
# The construction
########################################################################################################################

def _block_masks(params: IntertwineParams) -> dict[str, int]:
    """Masks, over the ground set of the construction, of S1, S2, S1', S2', T1 and T2"""
    n1, n2, size_t1 = params.m1.ground_size, params.m2.ground_size, len(params.t1)
    return {
        's1': full_mask(n1),
        's2': full_mask(n2) << n1,
        's1p': params.s1p.mask,
        's2p': params.s2p.mask << n1,
        't1': full_mask(size_t1) << (n1 + n2),
        't2': full_mask(len(params.t2)) << (n1 + n2 + size_t1),
    }


def construct_intertwine(params: IntertwineParams, validate: bool = True) -> CyclicFlatPresentation:
    """Build M_k(M1, S1', T1; M2, S2', T2). Its cyclic flats are the empty set (rank 0), the ground set (rank k), the
    sets F u T1 u S2' of rank r1(F) + |T1| + |S2'| and the sets F u T2 u S1' of rank r2(F) + |T2| + |S1'|, F ranging
    over the nonempty proper cyclic flats of M1 and M2.

    :param params: the parameters
    :type params: IntertwineParams
    :param validate: check the axioms of the result. Default: True
    :type validate: bool

    :return: the construction, on S1, S2, T1, T2 in that order
    :rtype: CyclicFlatPresentation"""
    blocks = _block_masks(params)
    n1 = params.m1.ground_size
    side1, side1_rank = blocks['t1'] | blocks['s2p'], len(params.t1) + len(params.s2p)
    side2, side2_rank = blocks['t2'] | blocks['s1p'], len(params.t2) + len(params.s1p)
    pairs = [(0, 0), (full_mask(params.ground_size), params.k)]
    pairs += [(mask | side1, rank + side1_rank) for mask, rank in params.m1.proper_pairs()]
    pairs += [(mask << n1 | side2, rank + side2_rank) for mask, rank in params.m2.proper_pairs()]
    name = f'M{params.k}({params.m1.name or "M1"},{params.m2.name or "M2"})'
    LOGGER.debug(f'constructing {name} on {params.ground_size} elements with {len(pairs)} cyclic flats')
    return CyclicFlatPresentation(params.labels, pairs, name, validate=validate)


def amalgam_check(matroid: CyclicFlatPresentation, params: IntertwineParams) -> bool:
    """True if the restrictions of the construction to S1 u T1 u S2' and to S2 u T2 u S1' are M1 x (T1 u S2') and
    M2 x (T2 u S1')"""
    first = free_coextension(params.m1, params.t1 + params.s2p_labels)
    second = free_coextension(params.m2, params.t2 + params.s1p_labels)
    return restrict(matroid, first.labels) == first and restrict(matroid, second.labels) == second


def nullity_check(matroid: CyclicFlatPresentation, params: IntertwineParams) -> bool:
    """True if each nonempty proper cyclic flat F of Mi keeps its nullity in F u Ti u Sj' of the construction"""
    for m, side in ((params.m1, params.t1 + params.s2p_labels), (params.m2, params.t2 + params.s1p_labels)):
        for mask, rank in m.proper_pairs():
            labels = m.labels_of(mask) + side
            if nullity(matroid, labels) != mask.bit_count() - rank:
                LOGGER.warning(f'nullity of {m.format_flat(mask)} changes in the construction')
                return False
    return True


########################################################################################################################
# Circuit-hyperplane variant
########################################################################################################################

@dataclass(frozen=True)
class CHFamily:
    """Sets of k elements of T1 u T2, pairwise meeting in at most k - 2 elements, installed as circuit-hyperplanes.

    :ivar sets: the sets, as label sets
    :vartype sets: tuple[frozenset[str], ...]
    :ivar k: size of the sets
    :vartype k: int"""
    sets: tuple[frozenset[str], ...]
    k: int

    def __post_init__(self):
        for h in self.sets:
            if len(h) != self.k:
                raise ValueError(f'set {{{",".join(sorted(h))}}} has {len(h)} elements instead of {self.k}')
        for h, g in combinations(self.sets, 2):
            if len(h & g) > self.k - 2:
                raise ValueError(f'sets {{{",".join(sorted(h))}}} and {{{",".join(sorted(g))}}} share {len(h & g)} '
                                 f'elements, more than k - 2 = {self.k - 2}')

    def __len__(self):
        return len(self.sets)

    def __str__(self):
        return f'CHFamily(k={self.k}, {len(self.sets)} sets)'


def pairing_family(params: IntertwineParams, count: int) -> CHFamily:
    """Family of `count` sets built by pairing off consecutive elements of T1 u T2 and taking unions of k/2 pairs,
    in lexicographic order of the chosen pairs.

    :param params: the parameters, with k even
    :type params: IntertwineParams
    :param count: number of sets
    :type count: int

    :return: the family
    :rtype: CHFamily"""
    if params.k % 2 != 0:
        raise ValueError(f'the pairing scheme needs an even k, got {params.k}')
    if count < 0:
        raise ValueError(f'the number of sets must be non-negative, got {count}')
    pool = params.t1 + params.t2
    pairs = [pool[i:i + 2] for i in range(0, len(pool) - 1, 2)]
    sets = []
    for chosen in combinations(pairs, params.k // 2):
        if len(sets) == count:
            break
        sets.append(frozenset(label for pair in chosen for label in pair))
    if len(sets) < count:
        raise ValueError(f'only {len(sets)} sets can be formed from {len(pairs)} pairs, {count} requested')
    return CHFamily(tuple(sets), params.k)


def construct_ch_variant(matroid: CyclicFlatPresentation, params: IntertwineParams,
                         family: CHFamily) -> CyclicFlatPresentation:
    """Add the sets of a family to the cyclic flats of the construction, with rank k - 1.

    :param matroid: the construction for `params`
    :type matroid: CyclicFlatPresentation
    :param params: the parameters
    :type params: IntertwineParams
    :param family: the sets to install as circuit-hyperplanes
    :type family: CHFamily

    :return: the variant
    :rtype: CyclicFlatPresentation"""
    if family.k != params.k:
        raise ValueError(f'family of {family.k}-sets used with k={params.k}')
    for m in (params.m1, params.m2):
        if len(circuit_hyperplanes(m)) > 0:
            raise ValueError(f'{m.name or "input matroid"} has circuit-hyperplanes')
    if len(family) == 0:
        return matroid.copy()
    pool = set(params.t1) | set(params.t2)
    pairs = list(matroid.pairs)
    for h in family.sets:
        outside = sorted(h - pool)
        if len(outside) > 0:
            raise ValueError(f'labels {", ".join(outside)} of a circuit-hyperplane are not in T1 u T2')
        pairs.append((matroid.element_set(h).mask, params.k - 1))
    return CyclicFlatPresentation(matroid.labels, pairs, f'{matroid.name}+{len(family)}CH')


########################################################################################################################
# Factor matroids
########################################################################################################################

def vertigan_factors(params: IntertwineParams) -> tuple[CyclicFlatPresentation, CyclicFlatPresentation]:
    """Rank k factors M1'' = (M1 x (T1 u S2')) + (T2 u (S2 - S2')) and M2'' = (M2 x (T2 u S1')) + (T1 u (S1 - S1')),
    both on the ground set of the construction.

    :param params: the parameters
    :type params: IntertwineParams

    :return: the two factors
    :rtype: tuple[CyclicFlatPresentation, CyclicFlatPresentation]"""
    first = free_extension(free_coextension(params.m1, params.t1 + params.s2p_labels),
                           params.t2 + params.s2_rest_labels, name='M1\'\'')
    second = free_extension(free_coextension(params.m2, params.t2 + params.s1p_labels),
                            params.t1 + params.s1_rest_labels, name='M2\'\'')
    return first, second


def _label_bases(matroid: CyclicFlatPresentation) -> set[frozenset[str]]:
    return {frozenset(matroid.labels_of(b)) for b in enumerate_bases(matroid)}


def basis_equality_check(params: IntertwineParams) -> bool:
    """True if the bases of the construction are the common bases of the two factors, and its cyclic flats the union of
    theirs. Exhaustive, at most 20 elements."""
    check_exhaustive(params.ground_size, 'basis_equality_check')
    matroid = construct_intertwine(params)
    first, second = vertigan_factors(params)
    LOGGER.info(f'>> start basis comparison on {params.ground_size} elements')
    bases_equal = _label_bases(matroid) == _label_bases(first) & _label_bases(second)
    flats_equal = matroid.label_key() == first.label_key() | second.label_key()
    if not bases_equal:
        LOGGER.warning('the bases of the construction differ from the common bases of the factors')
    if not flats_equal:
        LOGGER.warning('the cyclic flats of the construction differ from the union of those of the factors')
    return bases_equal and flats_equal


def _grow(matroid: CyclicFlatPresentation, operation, labels: Sequence[str]) -> CyclicFlatPresentation:
    """Apply a free extension or coextension by the labels not yet in the ground set, if any"""
    new_labels = [label for label in labels if label not in matroid.labels]
    return operation(matroid, new_labels) if len(new_labels) > 0 else matroid


def basis_intersection_construction(m1: CyclicFlatPresentation, m2: CyclicFlatPresentation, x_part: Sequence[str],
                                    y_part: Sequence[str], k: int):
    """Factor construction on two disjoint k-sets X and Y covering S1 u S2: M1' = (M1 + (Y - S1)) x (X - S1) and
    M2' = (M2 + (X - S2)) x (Y - S2), and the matroid of their common bases when those form a matroid.

    :param m1: first matroid
    :type m1: CyclicFlatPresentation
    :param m2: second matroid
    :type m2: CyclicFlatPresentation
    :param x_part: labels of X, with |X n S1| = r(M1) and X n S1 dependent in M1
    :type x_part: Sequence[str]
    :param y_part: labels of Y, with |Y n S2| = r(M2) and Y n S2 dependent in M2
    :type y_part: Sequence[str]
    :param k: size of X and Y
    :type k: int

    :return: the two factors and the common-bases matroid, None if the common bases are not the bases of a matroid
    :rtype: tuple[CyclicFlatPresentation, CyclicFlatPresentation, CyclicFlatPresentation | None]"""
    x_part, y_part = tuple(x_part), tuple(y_part)
    if len(set(x_part)) != k or len(set(y_part)) != k or len(x_part) != k or len(y_part) != k:
        raise ValueError(f'X and Y must both have {k} distinct elements')
    if set(x_part) & set(y_part):
        raise ValueError('X and Y must be disjoint')
    ground = set(x_part) | set(y_part)
    for m in (m1, m2):
        missing = sorted(set(m.labels) - ground)
        if len(missing) > 0:
            raise ValueError(f'labels {", ".join(missing)} are neither in X nor in Y')
    for m, part in ((m1, x_part), (m2, y_part)):
        common = [label for label in part if label in m.labels]
        if len(common) != m.rank or nullity(m, common) == 0:
            raise ValueError(f'{m.name or "matroid"} must meet its part in a dependent set of {m.rank} elements')
    labels = x_part + y_part
    first = _grow(_grow(m1, free_extension, y_part), free_coextension, x_part).with_name('M1\'')
    second = _grow(_grow(m2, free_extension, x_part), free_coextension, y_part).with_name('M2\'')
    common_bases = _label_bases(first) & _label_bases(second)
    if len(common_bases) == 0:
        return first, second, None
    index = {label: i for i, label in enumerate(labels)}
    masks = [mask_of(index[label] for label in basis) for basis in common_bases]
    try:
        result = recompute_cyclic_flats(TableOracle.from_bases(labels, masks), name='common bases')
    except ValueError as error:
        LOGGER.info(f'common bases do not form a matroid: {error}')
        return first, second, None
    if _label_bases(result) != common_bases:
        LOGGER.info('common bases do not form a matroid')
        return first, second, None
    return first, second, result


########################################################################################################################
# Special cases and identities
########################################################################################################################

def special_case_identities(params: IntertwineParams) -> bool:
    """Compare the construction with its description as a truncation or a lift:
    with S1' = S2' = empty set, M = T^k((M1 x T1) + (M2 x T2)), the sum being direct;
    with Si' = Si and k >= r(M1) + |S1| + r(M2) + |S2|, M = L^j((M1 + T2) + (M2 + T1)) with j = k - r(M1) - r(M2).

    :param params: parameters in one of the two cases
    :type params: IntertwineParams

    :return: True if both sides are equal
    :rtype: bool"""
    m1, m2 = params.m1, params.m2
    matroid = construct_intertwine(params)
    if not params.s1p and not params.s2p:
        summed = direct_sum(free_coextension(m1, params.t1), free_coextension(m2, params.t2))
        other = truncate(summed, params.k)
    elif params.s1p == m1.ground and params.s2p == m2.ground:
        threshold = m1.rank + m1.ground_size + m2.rank + m2.ground_size
        if params.k < threshold:
            raise ValueError(f'the lift description needs k >= {threshold}, got {params.k}')
        summed = direct_sum(free_extension(m1, params.t2), free_extension(m2, params.t1))
        other = lift(summed, params.k - m1.rank - m2.rank)
    else:
        raise ValueError('special case identities need S1\' = S2\' = empty set or Si\' = Si')
    return other == matroid


def deletion_identity(params: IntertwineParams, deleted: Iterable[str]) -> bool:
    """Delete a set D inside T1 (resp. T2) with |D| >= r(M1*) (resp. r(M2*)) and compare the result with
    (M2 x (T2 u S1')) + ((T1 - D) u (S1 - S1')) (resp. the symmetric free extension).

    :param params: the parameters
    :type params: IntertwineParams
    :param deleted: labels of D
    :type deleted: Iterable[str]

    :return: True if both sides are equal
    :rtype: bool"""
    deleted = set(deleted)
    if deleted <= set(params.t1):
        block, kept_m, kept_t, kept_sp, other_rest, corank = (params.t1, params.m2, params.t2, params.s1p_labels,
                                                              params.s1_rest_labels, params.m1.corank)
    elif deleted <= set(params.t2):
        block, kept_m, kept_t, kept_sp, other_rest, corank = (params.t2, params.m1, params.t1, params.s2p_labels,
                                                              params.s2_rest_labels, params.m2.corank)
    else:
        raise ValueError('the deleted set must lie inside T1 or inside T2')
    if len(deleted) < corank:
        raise ValueError(f'the deleted set needs at least {corank} elements, got {len(deleted)}')
    matroid = construct_intertwine(params)
    remaining = tuple(t for t in block if t not in deleted)
    expected = free_extension(free_coextension(kept_m, kept_t + kept_sp), remaining + other_rest)
    return delete(matroid, sorted(deleted)) == expected


def size_bounds(m1: CyclicFlatPresentation, m2: CyclicFlatPresentation, k: int) -> tuple[int, int]:
    """Bounds 2k - r(M1) - r(M2) <= |E| <= 2k + r(M1*) + r(M2*) on the size of a rank k intertwine"""
    return 2 * k - m1.rank - m2.rank, 2 * k + m1.corank + m2.corank


def size_sweep(m1: CyclicFlatPresentation, m2: CyclicFlatPresentation, k: int) -> pd.DataFrame:
    """Build the construction for every pair (S1', S2') allowed at rank k and tabulate the sizes.

    :param m1: first matroid
    :type m1: CyclicFlatPresentation
    :param m2: second matroid
    :type m2: CyclicFlatPresentation
    :param k: rank of the constructions
    :type k: int

    :return: one row per valid pair, with the chosen sets, the block sizes and the ground set size
    :rtype: pandas.DataFrame"""
    rows = []
    for mask1, mask2 in product(range(1 << m1.ground_size), range(1 << m2.ground_size)):
        s1p, s2p = ElementSet(mask1, m1.ground_size), ElementSet(mask2, m2.ground_size)
        if not eq2_holds(m1, s1p, m2, s2p, k):
            continue
        try:
            params = derive_params(m1, s1p, m2, s2p, k)
        except ValueError:
            continue
        matroid = construct_intertwine(params)
        rows.append({'s1p': ','.join(params.s1p_labels), 's2p': ','.join(params.s2p_labels),
                     'size_s1p': len(s1p), 'size_s2p': len(s2p), 'size_t1': len(params.t1),
                     'size_t2': len(params.t2), 'ground_size': matroid.ground_size})
    LOGGER.info(f'{len(rows)} valid selections at k={k}')
    return pd.DataFrame(rows, columns=['s1p', 's2p', 'size_s1p', 'size_s2p', 'size_t1', 'size_t2', 'ground_size'])


def _first_basis(matroid: CyclicFlatPresentation) -> tuple[str, ...]:
    """Lexicographically first basis, built greedily in index order"""
    basis = 0
    for e in range(matroid.ground_size):
        if matroid.rank_of(basis | 1 << e) == basis.bit_count() + 1:
            basis |= 1 << e
    return matroid.labels_of(basis)


def uniform_restriction_check(matroid: CyclicFlatPresentation, params: IntertwineParams,
                              b1: Sequence[str] | None = None, b2: Sequence[str] | None = None) -> bool:
    """True if the restriction of the construction to B1 u B2 u T1 u T2 is the uniform matroid of rank k on
    2k - |S1'| - |S2'| elements, checked on every subset.

    :param matroid: the construction for `params`
    :type matroid: CyclicFlatPresentation
    :param params: the parameters
    :type params: IntertwineParams
    :param b1: a basis of M1. Default: None, the first basis in index order
    :type b1: Sequence[str] | None
    :param b2: a basis of M2. Default: None, the first basis in index order
    :type b2: Sequence[str] | None

    :return: True if the restriction is uniform of the expected rank and size
    :rtype: bool"""
    b1 = _first_basis(params.m1) if b1 is None else tuple(b1)
    b2 = _first_basis(params.m2) if b2 is None else tuple(b2)
    for m, b in ((params.m1, b1), (params.m2, b2)):
        if len(b) != m.rank or nullity(m, b) != 0:
            raise ValueError(f'{{{",".join(b)}}} is not a basis of {m.name or "the input matroid"}')
    chosen = matroid.element_set(b1 + b2 + params.t1 + params.t2)
    expected_size = 2 * params.k - len(params.s1p) - len(params.s2p)
    if len(chosen) != expected_size:
        LOGGER.warning(f'restriction has {len(chosen)} elements, {expected_size} expected')
        return False
    check_exhaustive(len(chosen), 'uniform_restriction_check')
    masks = subset_masks(chosen.indices())
    ranks = matroid.rank_table(masks)
    return bool(np.array_equal(ranks, np.minimum(popcount(masks), params.k)))


def _family_row(m1: CyclicFlatPresentation, s1p, m2: CyclicFlatPresentation, s2p, k: int) -> dict:
    params = derive_params(m1, s1p, m2, s2p, k)
    matroid = construct_intertwine(params)
    return {'s1p': ','.join(params.s1p_labels), 's2p': ','.join(params.s2p_labels),
            'ground_size': matroid.ground_size, 'nb_flats': matroid.nb_flats, 'canonical_key': canonical_key(matroid)}


def intertwine_family(m1: CyclicFlatPresentation, m2: CyclicFlatPresentation, k: int,
                      selections: Iterable[tuple[Iterable[str], Iterable[str]]], n_jobs: int = 1) -> pd.DataFrame:
    """Build the construction for several choices of (S1', S2') and sort the results into isomorphism classes.

    :param m1: first matroid
    :type m1: CyclicFlatPresentation
    :param m2: second matroid
    :type m2: CyclicFlatPresentation
    :param k: rank of the constructions
    :type k: int
    :param selections: pairs (S1', S2') given by labels
    :type selections: Iterable[tuple[Iterable[str], Iterable[str]]]
    :param n_jobs: number of parallel jobs, joblib semantics. Default: 1
    :type n_jobs: int

    :return: one row per selection, with its canonical key and the index of its isomorphism class (classes are numbered
        by first appearance)
    :rtype: pandas.DataFrame"""
    selections = [(list(s1p), list(s2p)) for s1p, s2p in selections]
    LOGGER.info(f'>> start building {len(selections)} constructions at k={k}')
    rows = Parallel(n_jobs=n_jobs)(delayed(_family_row)(m1, s1p, m2, s2p, k) for s1p, s2p in selections)
    classes = {}
    for row in rows:
        row['iso_class'] = classes.setdefault(row['canonical_key'], len(classes))
    LOGGER.info(f'{len(classes)} isomorphism classes among {len(rows)} constructions')
    return pd.DataFrame(rows, columns=['s1p', 's2p', 'ground_size', 'nb_flats', 'canonical_key', 'iso_class'])
