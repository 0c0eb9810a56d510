from itertools import product

import numpy as np
import pytest

from pyintertwine.constructions import (relabel, dual, direct_sum, free_extension, free_coextension, minor, delete,
                                        contract, restrict, truncate, lift, is_free, is_cofree, auxiliary_labels)
from pyintertwine.fixtures import uniform, mk4, whirl3, pairsum, free_spike, catalog
from pyintertwine.matroid import CyclicFlatPresentation, validate_presentation, eta_zprime, closure


def test_relabel():
    m = relabel(uniform(2, 3), prefix='q')
    assert m.labels == ('qe0', 'qe1', 'qe2')
    m = relabel(uniform(2, 3), mapping={'e0': 'x'})
    assert m.labels == ('x', 'e1', 'e2')
    with pytest.raises(ValueError):
        relabel(uniform(2, 3), mapping={'zz': 'x'})
    with pytest.raises(ValueError):
        relabel(uniform(2, 3))


def test_dual():
    assert dual(uniform(2, 4)) == uniform(2, 4)
    assert dual(uniform(1, 3)) == uniform(2, 3)
    for identifier, matroid in catalog().items():
        d = dual(matroid)
        assert validate_presentation(d.pairs, d.ground_size).valid, identifier
        assert d.rank == matroid.corank


def test_direct_sum():
    m = direct_sum(uniform(1, 2, 'a'), uniform(2, 3, 'b'))
    assert m.ground_size == 5
    assert m.rank == 3
    assert m.nb_flats == 4
    assert m == direct_sum(uniform(2, 3, 'b'), uniform(1, 2, 'a'))
    with pytest.raises(ValueError, match='disjoint'):
        direct_sum(uniform(1, 2), uniform(1, 2))


def test_free_extension_and_coextension():
    assert free_extension(uniform(2, 3), ['e3']) == uniform(2, 4)
    assert free_coextension(uniform(1, 3), ['e3']) == uniform(2, 4)
    # a free element added to a parallel pair
    m = free_extension(pairsum(1), ['x'])
    assert m.labels == ('p0', 'p1', 'x')
    assert m.pairs == ((0, 0), (0b111, 1))
    # a free element added to two parallel pairs keeps both pairs
    m = free_extension(pairsum(2), ['x'])
    assert m.pairs == ((0, 0), (0b00011, 1), (0b01100, 1), (0b11111, 2))
    with pytest.raises(ValueError, match='collision'):
        free_extension(uniform(2, 3), ['e1'])
    with pytest.raises(ValueError):
        free_coextension(uniform(2, 3), [])


@pytest.mark.parametrize('matroid', [mk4(), whirl3(), pairsum(2), uniform(1, 3)])
def test_iterated_free_extension_ignores_order(matroid):
    both = free_extension(matroid, ['x', 'y'])
    assert both == free_extension(free_extension(matroid, ['y']), ['x'])
    assert both == free_extension(free_extension(matroid, ['x']), ['y'])
    both = free_coextension(matroid, ['x', 'y'])
    assert both == free_coextension(free_coextension(matroid, ['y']), ['x'])


def test_minors_of_mk4():
    m = mk4()
    contracted = contract(m, ['ab'])
    assert contracted == CyclicFlatPresentation(['ac', 'ad', 'bc', 'bd', 'cd'], [
        ([], 0), (['ac', 'bc'], 1), (['ad', 'bd'], 1), (['ac', 'ad', 'bc', 'bd', 'cd'], 2)])
    deleted = delete(m, ['ab'])
    assert deleted.rank == 3
    assert deleted.nb_flats == 4
    assert restrict(m, ['ab', 'ac', 'bc']) == CyclicFlatPresentation(['ab', 'ac', 'bc'], [([], 0), (['ab', 'ac', 'bc'], 2)])
    assert minor(m) == m
    with pytest.raises(ValueError, match='share'):
        minor(m, delete=['ab'], contract=['ab'])


def test_seeded_minor_agrees_with_exhaustive_scan(flagship):
    for label in ['a0', 'b2', 't1_0', 't2_1']:
        exhaustive = minor(flagship, delete=[label], seeded=False)
        assert minor(flagship, delete=[label], seeded=True) == exhaustive
        exhaustive = minor(flagship, contract=[label], seeded=False)
        assert minor(flagship, contract=[label], seeded=True) == exhaustive


def test_truncation_and_lift():
    assert truncate(uniform(3, 6), 1) == uniform(2, 6)
    assert lift(uniform(2, 4), 1) == uniform(3, 4)
    assert truncate(lift(uniform(2, 4), 2), 2) == uniform(2, 4)
    assert truncate(mk4(), 0) == mk4()
    # truncating M(K4) once gives U(2,6)
    assert truncate(mk4(), 1).nb_flats == 2
    with pytest.raises(ValueError):
        truncate(uniform(2, 4), 3)
    with pytest.raises(ValueError):
        lift(uniform(2, 4), -1)


def test_free_and_cofree_elements():
    assert all(is_free(uniform(2, 4), label) for label in uniform(2, 4).labels)
    assert all(is_cofree(uniform(2, 4), label) for label in uniform(2, 4).labels)
    assert not any(is_free(mk4(), label) for label in mk4().labels)
    assert not is_free(pairsum(2), 'p0')
    assert not is_cofree(whirl3(), 'w0')
    with pytest.raises(ValueError):
        is_free(mk4(), 'zz')


def test_auxiliary_labels():
    m = CyclicFlatPresentation(['_aux0', 'b'], [(0, 0), (0b11, 1)])
    assert auxiliary_labels(m, 2) == ['_aux1', '_aux2']


def test_duality_laws():
    for identifier, matroid in catalog().items():
        assert dual(dual(matroid)) == matroid, identifier
        d = dual(matroid)
        for mask, rank in matroid.pairs:
            complement = matroid.full_mask & ~mask
            assert d.rank_of(complement) == complement.bit_count() - matroid.rank + rank, identifier
        assert free_coextension(matroid, ['x']) == dual(free_extension(dual(matroid), ['x'])), identifier


@pytest.mark.parametrize('identifier', [identifier for identifier, matroid in catalog().items()
                                        if matroid.ground_size <= 8])
def test_minors_keep_the_nullity_bound(identifier):
    matroid = catalog()[identifier]
    eta = eta_zprime(matroid)
    for choice in product((0, 1, 2), repeat=matroid.ground_size):
        deleted = [label for label, c in zip(matroid.labels, choice) if c == 1]
        contracted = [label for label, c in zip(matroid.labels, choice) if c == 2]
        if len(deleted) + len(contracted) < matroid.ground_size:
            assert eta_zprime(minor(matroid, delete=deleted, contract=contracted)) <= eta, (deleted, contracted)


def test_closures_of_cyclic_flats_of_a_deletion():
    for matroid in [mk4(), whirl3(), free_spike(4)]:
        flats = {frozenset(matroid.labels_of(mask)): r for mask, r in matroid.pairs}
        for label in matroid.labels:
            deleted = delete(matroid, [label])
            for mask, r in deleted.pairs:
                members = deleted.labels_of(mask)
                spanned = frozenset(matroid.labels_of(closure(matroid, list(members))))
                assert spanned in flats
                assert spanned - set(members) <= {label}
                assert flats[spanned] == r


@pytest.mark.parametrize('identifier', list(catalog()))
def test_minors_commute(identifier):
    matroid = catalog()[identifier]
    rng = np.random.default_rng(3)
    for _ in range(20):
        # 0 keep, 1 delete now, 2 contract now, 3 delete later, 4 contract later
        choice = rng.integers(0, 5, matroid.ground_size)
        choice[rng.integers(matroid.ground_size)] = 0
        parts = [[label for label, c in zip(matroid.labels, choice) if c == part] for part in range(5)]
        both = minor(matroid, delete=parts[1] + parts[3], contract=parts[2] + parts[4])
        first = minor(matroid, delete=parts[1], contract=parts[2])
        assert minor(first, delete=parts[3], contract=parts[4]) == both, parts
        assert contract(delete(matroid, parts[1] + parts[3]), parts[2] + parts[4]) == both, parts
        assert delete(contract(matroid, parts[2] + parts[4]), parts[1] + parts[3]) == both, parts
