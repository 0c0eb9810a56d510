from itertools import combinations

import pytest
import numpy as np

from pyintertwine.elements import ElementSet
from pyintertwine.fixtures import uniform, mk4, whirl3, pairsum, free_spike, catalog
from pyintertwine.matroid import (CyclicFlatPresentation, PresentationOracle, TableOracle, validate_presentation,
                                  recompute_cyclic_flats, rank, closure, nullity, is_independent, enumerate_bases,
                                  enumerate_circuits, cyclic_flat_lattice, eta_zprime, fi_set, fi_dual_set, is_uniform,
                                  circuit_hyperplanes, full_rank_table)
from pyintertwine.utils import bits_of


def test_element_set_algebra():
    a = ElementSet.from_indices([0, 2], 4)
    b = ElementSet.from_indices([2, 3], 4)
    assert (a | b).indices() == (0, 2, 3)
    assert (a & b).indices() == (2,)
    assert (a - b).indices() == (0,)
    assert a.complement().indices() == (1, 3)
    assert len(a) == 2 and 2 in a and 1 not in a
    assert ElementSet.empty(4) < a
    assert str(a) == '{0,2}'

    with pytest.raises(ValueError):
        ElementSet(1 << 4, 4)
    with pytest.raises(ValueError):
        _ = a | ElementSet(1, 5)


@pytest.mark.parametrize('flats, n, axiom', [
    ([(0b1111, 4), (0, 0)], 4, 'Z2'),
    ([(0b0011, 1)], 4, 'Z1'),
    ([(0, 0), (0b0011, 1), (0b1100, 1)], 4, 'Z0'),
    ([(0, 0), (0b0011, 1), (0b0111, 1), (0b1111, 2)], 4, 'Z2'),
    # two rank-2 flats of size 4 meeting in 2 elements under a rank-3 top
    ([(0, 0), (0b001111, 2), (0b111100, 2), (0b111111, 3)], 6, 'Z3'),
])
def test_invalid_presentations(flats, n, axiom):
    verdict = validate_presentation(flats, n)
    assert not verdict.valid
    assert verdict.axiom == axiom
    with pytest.raises(ValueError, match=axiom):
        CyclicFlatPresentation([f'e{i}' for i in range(n)], flats)


def test_spike_with_overlapping_circuit_hyperplanes_fails_submodularity():
    spike = free_spike(4)
    flats = list(spike.pairs)
    flats.append((['x0', 'x1', 'x2', 'x3'], 3))
    flats.append((['y0', 'x1', 'x2', 'x3'], 3))
    verdict = validate_presentation(flats, spike.ground_size, spike.labels)
    assert verdict.axiom == 'Z3'
    assert len(verdict.flats) == 2


def test_presentation_checks():
    with pytest.raises(ValueError, match='duplicate labels'):
        CyclicFlatPresentation(['a', 'a'], [(0, 0), (0b11, 1)])
    with pytest.raises(ValueError):
        CyclicFlatPresentation(['a', 'b'], [(0b11, 3)])
    with pytest.raises(ValueError, match='unknown labels'):
        CyclicFlatPresentation(['a', 'b'], [([], 0), (['a', 'z'], 1)])
    # flats given by labels
    m = CyclicFlatPresentation(['a', 'b', 'c'], [([], 0), (['a', 'b', 'c'], 2)])
    assert m == CyclicFlatPresentation(['a', 'b', 'c'], [(0, 0), (0b111, 2)])
    assert m != uniform(2, 3)


def test_rank_and_closure():
    m = mk4()
    assert m.rank == 3
    assert m.corank == 3
    assert rank(m, ['ab', 'ac', 'bc']) == 2
    assert rank(m, ['ab', 'cd']) == 2
    assert nullity(m, ['ab', 'ac', 'bc']) == 1
    assert is_independent(m, ['ab', 'ac', 'ad'])
    assert not is_independent(m, ['ab', 'ac', 'bc'])
    assert m.labels_of(closure(m, ['ab', 'ac'])) == ('ab', 'ac', 'bc')

    u24 = uniform(2, 4)
    assert rank(u24, ['e0', 'e1', 'e2']) == 2
    assert rank(u24, ['e3']) == 1
    ranks = u24.rank_table(np.arange(16, dtype=np.uint64))
    assert ranks.tolist() == [min(bin(i).count('1'), 2) for i in range(16)]


def test_bases_and_circuits():
    assert len(enumerate_bases(uniform(2, 4))) == 6
    assert len(enumerate_circuits(uniform(2, 4))) == 4
    assert len(enumerate_bases(mk4())) == 16
    circuits = enumerate_circuits(mk4())
    assert len(circuits) == 7
    assert sorted(len(c) for c in circuits) == [3, 3, 3, 3, 4, 4, 4]


def test_recompute_from_oracles():
    for matroid in [mk4(), whirl3(), pairsum(3), uniform(3, 6)]:
        assert recompute_cyclic_flats(PresentationOracle(matroid)) == matroid

    loops = recompute_cyclic_flats(TableOracle(['e0', 'e1', 'e2'], np.zeros(8, dtype=np.int64)))
    assert loops == uniform(0, 3)
    assert loops.pairs == ((0b111, 0),)

    bad = np.array([min(bin(i).count('1'), 2) for i in range(16)])
    bad[0b0011] = 0
    with pytest.raises(ValueError, match='bad rank oracle'):
        recompute_cyclic_flats(TableOracle(['a', 'b', 'c', 'd'], bad))


def test_contraction_oracle():
    m = mk4()
    oracle = PresentationOracle(m, contract=m.element_set(['ab']).mask)
    contracted = recompute_cyclic_flats(oracle)
    expected = CyclicFlatPresentation(['ac', 'ad', 'bc', 'bd', 'cd'], [
        ([], 0), (['ac', 'bc'], 1), (['ad', 'bd'], 1), (['ac', 'ad', 'bc', 'bd', 'cd'], 2)])
    assert contracted == expected


def test_lattice_of_mk4():
    join, meet = cyclic_flat_lattice(mk4())
    assert join.shape == (6, 6)
    # two triangles join to the ground set (last) and meet in the empty flat (first)
    assert join.iloc[1, 2] == 5
    assert meet.iloc[1, 2] == 0
    assert (np.diag(join.values) == np.arange(6)).all()


def test_free_elements_and_nullities():
    assert eta_zprime(uniform(2, 4)) == 0
    assert eta_zprime(mk4()) == 4
    assert eta_zprime(pairsum(2)) == 2

    u24 = uniform(2, 4)
    assert fi_set(u24) == u24.ground
    assert fi_dual_set(u24) == u24.ground
    assert not fi_set(mk4())
    assert not fi_dual_set(mk4())
    assert is_uniform(u24) and not is_uniform(mk4())


def test_circuit_hyperplanes():
    m = mk4()
    found = circuit_hyperplanes(m)
    assert [m.labels_of(h) for h in found] == [('ab', 'ac', 'bc'), ('ab', 'ad', 'bd'), ('ac', 'ad', 'cd'),
                                              ('bc', 'bd', 'cd')]
    assert len(circuit_hyperplanes(whirl3())) == 3
    # in rank 4 the unions of two legs are circuit-hyperplanes
    assert len(circuit_hyperplanes(free_spike(4))) == 6


def test_save_and_load(tmp_path):
    filepath = str(tmp_path / 'mk4.pkl')
    mk4().save(filepath)
    loaded = CyclicFlatPresentation.load(filepath)
    assert loaded == mk4()
    assert loaded.name == 'mk4'


def test_rank_agrees_with_bases():
    for identifier, matroid in catalog().items():
        bases = [basis.mask for basis in enumerate_bases(matroid)]
        from_bases = TableOracle.from_bases(matroid.labels, bases).table()
        assert np.array_equal(from_bases, full_rank_table(matroid)), identifier


def test_recompute_round_trip_on_the_catalog():
    for identifier, matroid in catalog().items():
        assert recompute_cyclic_flats(PresentationOracle(matroid)) == matroid, identifier


def test_lattice_operations_stay_in_the_lattice():
    for matroid in [mk4(), whirl3(), free_spike(4)]:
        join, meet = cyclic_flat_lattice(matroid)
        masks = [mask for mask, _ in matroid.pairs]
        for i, j in combinations(range(matroid.nb_flats), 2):
            upper, lower = masks[join.iloc[i, j]], masks[meet.iloc[i, j]]
            assert masks[i] | masks[j] == (masks[i] | masks[j]) & upper
            assert lower & ~(masks[i] & masks[j]) == 0


def test_flat_minus_common_part_is_independent():
    for identifier, matroid in catalog().items():
        for mask, flat_rank in matroid.pairs:
            if mask == 0:
                continue
            common = mask
            for inner, _ in matroid.pairs:
                if inner != 0 and inner & ~mask == 0:
                    common &= inner
            eta = mask.bit_count() - flat_rank
            if common.bit_count() < eta:
                continue
            removed = bits_of(common)[:eta]
            rest = [label for e, label in enumerate(matroid.labels) if mask >> e & 1 and e not in removed]
            assert is_independent(matroid, rest), identifier
