from itertools import permutations

import pytest
import numpy as np

from pyintertwine.constructions import relabel
from pyintertwine.fixtures import uniform, mk4, whirl3, pairsum, free_spike, spike_ch, catalog
from pyintertwine.isomorphism import (is_isomorphic, canonical_form, canonical_key, automorphism_count, twin_classes,
                                      element_invariants)
from pyintertwine.matroid import CyclicFlatPresentation
from pyintertwine.utils import bits_of, mask_of


def shuffled(matroid: CyclicFlatPresentation, seed: int) -> CyclicFlatPresentation:
    """Same matroid with its elements permuted and renamed z0, z1..."""
    permutation = np.random.default_rng(seed).permutation(matroid.ground_size)
    flats = [(mask_of(int(permutation[e]) for e in bits_of(mask)), rank) for mask, rank in matroid.pairs]
    return CyclicFlatPresentation([f'z{i}' for i in range(matroid.ground_size)], flats)


@pytest.mark.parametrize('matroid, expected', [
    (uniform(2, 4), 24),
    (mk4(), 24),
    (whirl3(), 6),
    (pairsum(2), 8),
])
def test_automorphism_count(matroid, expected):
    assert automorphism_count(matroid) == expected


def test_isomorphism_map_is_a_relabeling():
    for seed in range(5):
        target = shuffled(mk4(), seed)
        mapping = is_isomorphic(mk4(), target)
        assert mapping is not None
        assert relabel(mk4(), mapping=mapping) == target


def test_non_isomorphic_pairs():
    assert is_isomorphic(mk4(), whirl3()) is None
    assert is_isomorphic(uniform(2, 4), uniform(1, 4)) is None
    assert is_isomorphic(free_spike(4), spike_ch(4, ['0000'])) is None
    assert canonical_key(free_spike(4)) != canonical_key(spike_ch(4, ['0000']))


@pytest.mark.parametrize('identifier', list(catalog()))
def test_canonical_key_is_invariant(identifier):
    matroid = catalog()[identifier]
    key = canonical_key(matroid)
    for seed in range(100):
        assert canonical_key(shuffled(matroid, seed)) == key, seed


def test_canonical_form():
    form, relabeling = canonical_form(whirl3())
    assert form.labels == tuple(f'e{i}' for i in range(6))
    assert sorted(relabeling) == sorted(whirl3().labels)
    assert relabel(whirl3(), mapping=relabeling) == form
    assert canonical_form(shuffled(whirl3(), 7))[0] == form


def test_twin_classes():
    assert twin_classes(uniform(2, 4)) == [0b1111]
    assert twin_classes(pairsum(2)) == [0b0011, 0b1100]
    assert len(twin_classes(mk4())) == 6
    invariants = element_invariants(mk4())
    assert len(set(invariants)) == 1


def brute_force_isomorphic(first: CyclicFlatPresentation, second: CyclicFlatPresentation) -> bool:
    if first.ground_size != second.ground_size:
        return False
    return any(relabel(first, mapping=dict(zip(first.labels, image))) == second
               for image in permutations(second.labels))


@pytest.mark.parametrize('first, second', [
    (mk4(), shuffled(mk4(), 11)),
    (whirl3(), shuffled(whirl3(), 12)),
    (whirl3(), mk4()),
    (pairsum(3), uniform(3, 6)),
    (pairsum(2), shuffled(pairsum(2), 13)),
    (uniform(2, 5), uniform(3, 5)),
])
def test_isomorphism_agrees_with_brute_force(first, second):
    assert (is_isomorphic(first, second) is not None) == brute_force_isomorphic(first, second)
    assert (is_isomorphic(second, first) is not None) == (is_isomorphic(first, second) is not None)
    assert is_isomorphic(first, first) is not None
