"""Standard matroid constructions on cyclic-flat presentations: relabeling, dual, direct sum, free extension and
coextension, iterated truncation and lift, minors."""

from collections.abc import Iterable, Mapping

from pyintertwine.matroid import CyclicFlatPresentation, PresentationOracle, recompute_cyclic_flats
from pyintertwine.utils import get_logger, full_mask

LOGGER = get_logger()

# minors with more surviving elements only scan the traces of the host cyclic flats
SEEDED_MINOR_THRESHOLD = 16


def relabel(matroid: CyclicFlatPresentation, mapping: Mapping[str, str] | None = None, prefix: str | None = None,
            name: str | None = None) -> CyclicFlatPresentation:
    """Rename the elements of a matroid, either through a mapping (labels missing from it are kept) or by prepending a
    prefix to every label.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation
    :param mapping: old label -> new label. Default: None
    :type mapping: Mapping[str, str] | None
    :param prefix: string prepended to every label. Default: None
    :type prefix: str | None
    :param name: display name of the result. Default: the name of `matroid`
    :type name: str | None

    :return: the relabeled matroid, with the same flats on the same indices
    :rtype: CyclicFlatPresentation"""
    if (mapping is None) == (prefix is None):
        raise ValueError('relabel needs exactly one of mapping and prefix')
    if mapping is not None:
        unknown = [label for label in mapping if label not in matroid.labels]
        if len(unknown) > 0:
            raise ValueError(f'cannot relabel unknown labels {", ".join(unknown)}')
        labels = [mapping.get(label, label) for label in matroid.labels]
    else:
        labels = [f'{prefix}{label}' for label in matroid.labels]
    return CyclicFlatPresentation(labels, matroid.pairs, name if name is not None else matroid.name, validate=False)


def _fresh_labels(matroid: CyclicFlatPresentation, labels: Iterable[str]) -> list[str]:
    labels = [str(label) for label in labels]
    if len(labels) == 0:
        raise ValueError('the set of new elements must be nonempty')
    collisions = sorted(set(labels) & set(matroid.labels))
    if len(collisions) > 0:
        raise ValueError(f'label collision: {", ".join(collisions)} already in the ground set')
    if len(set(labels)) != len(labels):
        raise ValueError(f'duplicate new labels in {", ".join(labels)}')
    return labels


def auxiliary_labels(matroid: CyclicFlatPresentation, count: int, stem: str = '_aux') -> list[str]:
    """`count` labels of the form `_aux0`, `_aux1`... that are not in the ground set"""
    labels, i = [], 0
    taken = set(matroid.labels)
    while len(labels) < count:
        if f'{stem}{i}' not in taken:
            labels.append(f'{stem}{i}')
        i += 1
    return labels


def dual(matroid: CyclicFlatPresentation) -> CyclicFlatPresentation:
    """Dual matroid: the cyclic flats are the complements S - F, with rank |S - F| - r(M) + r(F).

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation

    :return: the dual
    :rtype: CyclicFlatPresentation"""
    full, total = matroid.full_mask, matroid.rank
    pairs = [(full & ~mask, (full & ~mask).bit_count() - total + rank) for mask, rank in matroid.pairs]
    return CyclicFlatPresentation(matroid.labels, pairs, matroid.name, validate=False)


def direct_sum(m1: CyclicFlatPresentation, m2: CyclicFlatPresentation,
               name: str | None = None) -> CyclicFlatPresentation:
    """Direct sum of two matroids on disjoint label sets: the cyclic flats are the unions F1 u F2, with summed ranks.

    :param m1: first matroid, its elements come first
    :type m1: CyclicFlatPresentation
    :param m2: second matroid
    :type m2: CyclicFlatPresentation
    :param name: display name. Default: None
    :type name: str | None

    :return: the direct sum
    :rtype: CyclicFlatPresentation"""
    common = sorted(set(m1.labels) & set(m2.labels))
    if len(common) > 0:
        raise ValueError(f'direct sum needs disjoint ground sets, shared labels: {", ".join(common)}')
    shift = m1.ground_size
    pairs = [(f1 | f2 << shift, r1 + r2) for f1, r1 in m1.pairs for f2, r2 in m2.pairs]
    return CyclicFlatPresentation(m1.labels + m2.labels, pairs, name, validate=False)


def free_extension(matroid: CyclicFlatPresentation, new_labels: Iterable[str],
                   name: str | None = None) -> CyclicFlatPresentation:
    """Add new elements in general position: the cyclic flats other than the ground set are kept and the new top flat
    is S u X, of rank r(M).

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation
    :param new_labels: labels of the added elements, nonempty and not in the ground set
    :type new_labels: Iterable[str]
    :param name: display name. Default: None
    :type name: str | None

    :return: M + X
    :rtype: CyclicFlatPresentation"""
    new_labels = _fresh_labels(matroid, new_labels)
    full = matroid.full_mask
    pairs = [(mask, rank) for mask, rank in matroid.pairs if mask != full]
    pairs.append((full_mask(matroid.ground_size + len(new_labels)), matroid.rank))
    return CyclicFlatPresentation(matroid.labels + tuple(new_labels), pairs, name, validate=False)


def free_coextension(matroid: CyclicFlatPresentation, new_labels: Iterable[str],
                     name: str | None = None) -> CyclicFlatPresentation:
    """Dual of the free extension of the dual: the cyclic flats are the sets F u X of rank r(F) + |X| for the nonempty
    cyclic flats F, plus the empty set.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation
    :param new_labels: labels of the added elements, nonempty and not in the ground set
    :type new_labels: Iterable[str]
    :param name: display name. Default: None
    :type name: str | None

    :return: M x X
    :rtype: CyclicFlatPresentation"""
    new_labels = _fresh_labels(matroid, new_labels)
    added = full_mask(len(new_labels)) << matroid.ground_size
    pairs = [(mask | added, rank + len(new_labels)) for mask, rank in matroid.pairs if mask != 0]
    pairs.append((0, 0))
    return CyclicFlatPresentation(matroid.labels + tuple(new_labels), pairs, name, validate=False)


########################################################################################################################
# Minors
########################################################################################################################

def minor(matroid: CyclicFlatPresentation, delete=None, contract=None, name: str | None = None,
          seeded: bool | None = None, validate: bool = False) -> CyclicFlatPresentation:
    """Minor M \\ X / Y, computed through the rank oracle r(A u Y) - r(Y) of the surviving elements. Labels survive and
    keep their relative order.

    Every cyclic flat of a minor is the trace on the surviving set R of a cyclic flat of M, so large minors only test
    the sets Z n R for Z in Z(M) instead of scanning all the subsets of R.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation
    :param delete: deleted elements X, as labels or ElementSet. Default: None
    :type delete: ElementSet | Iterable[str] | None
    :param contract: contracted elements Y, as labels or ElementSet. Default: None
    :type contract: ElementSet | Iterable[str] | None
    :param name: display name. Default: None
    :type name: str | None
    :param seeded: force (True) or forbid (False) the scan restricted to traces of cyclic flats. Default: None, which
        uses it above SEEDED_MINOR_THRESHOLD surviving elements
    :type seeded: bool | None
    :param validate: check the axioms of the result. Default: False
    :type validate: bool

    :return: the minor
    :rtype: CyclicFlatPresentation"""
    deleted = matroid.element_set(delete)
    contracted = matroid.element_set(contract)
    if not deleted.isdisjoint(contracted):
        raise ValueError(f'deleted and contracted sets share {matroid.labels_of(deleted & contracted)}')
    if not deleted and not contracted:
        return matroid.with_name(name)
    oracle = PresentationOracle(matroid, deleted.mask, contracted.mask)
    if seeded is None:
        seeded = oracle.ground_size > SEEDED_MINOR_THRESHOLD
    candidates = None
    if seeded:
        survivors = matroid.full_mask & ~(deleted.mask | contracted.mask)
        candidates = {oracle.local_mask(mask & survivors) for mask, _ in matroid.pairs}
    return recompute_cyclic_flats(oracle, strict=False, candidates=candidates, validate=validate, name=name)


def delete(matroid: CyclicFlatPresentation, elements, name: str | None = None) -> CyclicFlatPresentation:
    """Deletion M \\ X"""
    return minor(matroid, delete=elements, name=name)


def contract(matroid: CyclicFlatPresentation, elements, name: str | None = None) -> CyclicFlatPresentation:
    """Contraction M / Y"""
    return minor(matroid, contract=elements, name=name)


def restrict(matroid: CyclicFlatPresentation, elements, name: str | None = None) -> CyclicFlatPresentation:
    """Restriction M | A, the deletion of the complement of A"""
    return minor(matroid, delete=matroid.element_set(elements).complement(), name=name)


########################################################################################################################
# Truncation and lift
########################################################################################################################

def truncate(matroid: CyclicFlatPresentation, i: int, name: str | None = None) -> CyclicFlatPresentation:
    """i-fold truncation (M + X) / X with |X| = i.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation
    :param i: number of rank units removed, between 0 and r(M)
    :type i: int
    :param name: display name. Default: None
    :type name: str | None

    :return: T^i(M)
    :rtype: CyclicFlatPresentation"""
    if not 0 <= i <= matroid.rank:
        raise ValueError(f'truncation order {i} is not between 0 and the rank {matroid.rank}')
    if i == 0:
        return matroid.with_name(name)
    auxiliary = auxiliary_labels(matroid, i)
    return contract(free_extension(matroid, auxiliary), auxiliary, name=name)


def lift(matroid: CyclicFlatPresentation, i: int, name: str | None = None) -> CyclicFlatPresentation:
    """i-fold lift (M x X) \\ X with |X| = i.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation
    :param i: number of rank units added, at least 0
    :type i: int
    :param name: display name. Default: None
    :type name: str | None

    :return: L^i(M)
    :rtype: CyclicFlatPresentation"""
    if i < 0:
        raise ValueError(f'lift order {i} must be non-negative')
    if i == 0:
        return matroid.with_name(name)
    auxiliary = auxiliary_labels(matroid, i)
    return delete(free_coextension(matroid, auxiliary), auxiliary, name=name)


def is_free(matroid: CyclicFlatPresentation, label: str) -> bool:
    """True if the element is free: M equals the free extension of M \\ x by x"""
    matroid.index_of(label)
    return free_extension(delete(matroid, [label]), [label]) == matroid


def is_cofree(matroid: CyclicFlatPresentation, label: str) -> bool:
    """True if the element is cofree: M equals the free coextension of M / y by y"""
    matroid.index_of(label)
    return free_coextension(contract(matroid, [label]), [label]) == matroid
