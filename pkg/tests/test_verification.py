from collections import Counter
from itertools import combinations, product

import pytest

from pyintertwine.constructions import minor, delete, contract, free_extension
from pyintertwine.fixtures import uniform, mk4, whirl3, pairsum, catalog, u_pair as fixture_u_pair
from pyintertwine.isomorphism import is_isomorphic, canonical_key
from pyintertwine.verification import (has_minor, verify_intertwine, verify_construction, obtainability_closure,
                                       is_obtainable)


def brute_force_minor(host, target) -> bool:
    """Try every way of keeping |E(N)| elements and splitting the others between deletion and contraction"""
    for kept in combinations(host.labels, target.ground_size):
        rest = [label for label in host.labels if label not in kept]
        for choice in product((True, False), repeat=len(rest)):
            deleted = [label for label, is_deleted in zip(rest, choice) if is_deleted]
            contracted = [label for label, is_deleted in zip(rest, choice) if not is_deleted]
            if is_isomorphic(minor(host, delete=deleted, contract=contracted), target) is not None:
                return True
    return False


@pytest.mark.parametrize('host', [mk4(), whirl3(), uniform(3, 6), pairsum(3), uniform(2, 5)])
def test_minor_search_agrees_with_brute_force(host):
    for target in [uniform(2, 4), uniform(1, 2), uniform(2, 3), pairsum(2), uniform(1, 3)]:
        expected = brute_force_minor(host, target)
        for prune in (True, False):
            witness = has_minor(host, target, prune=prune)
            assert (witness is not None) == expected, (host.name, target.name, prune)
            if witness is not None:
                assert witness.replay(host, target)


def test_minor_search_counters():
    counters = Counter()
    assert has_minor(uniform(2, 5), mk4(), counters=counters) is None
    assert counters['pruned_size'] == 1
    counters = Counter()
    assert has_minor(uniform(3, 6), pairsum(2), counters=counters) is None
    assert counters['pruned_eta'] == 1
    assert has_minor(uniform(3, 6), pairsum(2), prune=False) is None


def test_minor_search_limits():
    with pytest.raises(ValueError, match='not in the host'):
        has_minor(mk4(), uniform(1, 2), labelled=True)
    with pytest.raises(ValueError, match='limited to 16'):
        has_minor(uniform(2, 17), uniform(1, 2))
    with pytest.raises(ValueError, match='at most 10'):
        has_minor(uniform(2, 14), uniform(1, 2))


def test_labelled_minor(u_pair, flagship):
    m1, m2 = u_pair
    witness = has_minor(flagship, m1, labelled=True)
    assert witness is not None
    assert len(witness.contracted) == flagship.rank - m1.rank
    assert witness.replay(flagship, m1)
    assert has_minor(flagship, m2, labelled=True).replay(flagship, m2)


def test_small_unlabelled_intertwines():
    report = verify_intertwine(uniform(2, 3), uniform(1, 2), uniform(2, 3))
    assert report.verdict
    assert set(report.witnesses) == {'m1', 'm2'}
    assert report.counters['single_element_minors'] == 6

    # deleting one edge of K4 still leaves a triangle and a U(1,2) minor
    report = verify_intertwine(mk4(), uniform(2, 3), uniform(1, 2))
    assert not report.verdict
    assert report.details['counterexample'] == 'delete ab'
    assert report.counters['single_element_minors'] == 1
    assert report.witnesses['proper_m1'].replay(mk4(), uniform(2, 3))
    assert report.witnesses['proper_m2'].replay(mk4(), uniform(1, 2))

    report = verify_intertwine(uniform(1, 3), uniform(2, 3), uniform(1, 2))
    assert not report.verdict
    assert report.details['missing'] == 'm1'


def test_parallel_verification_finds_the_same_counterexample():
    report = verify_intertwine(mk4(), uniform(2, 3), uniform(1, 2), n_jobs=2)
    assert not report.verdict
    assert report.details['counterexample'] == 'delete ab'
    assert report.counters['single_element_minors'] == 12


def test_report_frame():
    report = verify_intertwine(uniform(2, 3), uniform(1, 2), uniform(2, 3))
    frame = report.to_frame()
    assert list(frame.columns) == ['section', 'key', 'value']
    assert frame.iloc[0].tolist() == ['verdict', 'intertwine', 'true']
    assert (frame['section'] == 'witness').sum() == 6
    assert 'counter' in set(frame['section'])


def test_labelled_construction_is_an_intertwine(u_pair, flagship_params, flagship):
    m1, m2 = u_pair
    report = verify_construction(flagship_params)
    assert report.check == 'labelled-intertwine'
    assert report.verdict
    assert report.details['k'] == '5'
    assert report.details['ground_size'] == '14'
    assert report.notes == ['theorem predicts true']
    assert report.counters['single_element_minors'] == 28
    assert report.witnesses['m1'].replay(flagship, m1)
    assert report.witnesses['m2'].replay(flagship, m2)


def test_free_element_breaks_minimality(u_pair, flagship):
    m1, m2 = u_pair
    report = verify_intertwine(free_extension(flagship, ['z']), m1, m2, labelled=True)
    assert not report.verdict
    assert 'counterexample' in report.details
    host = free_extension(flagship, ['z'])
    assert report.witnesses['proper_m1'].replay(host, m1)
    assert report.witnesses['proper_m2'].replay(host, m2)


def test_obtainability(u_pair):
    reached = obtainability_closure(uniform(1, 2), 3)
    assert canonical_key(uniform(2, 3)) in reached
    assert canonical_key(uniform(1, 3)) in reached
    assert all(matroid.ground_size <= 3 for matroid in reached.values())

    m1, m2 = u_pair
    # contracting an element of the U(2,3) part gives U(1,2) + U(1,2)
    assert is_obtainable(m2, m1, 7)

    with pytest.raises(ValueError, match='exceeds'):
        obtainability_closure(uniform(1, 2), 13)
    with pytest.raises(ValueError, match='above the cap'):
        obtainability_closure(mk4(), 5)


def has_both(matroid, first, second, cache) -> bool:
    """Prune-free minor search for both targets, shared between isomorphic matroids"""
    key = canonical_key(matroid)
    if key not in cache:
        cache[key] = (has_minor(matroid, first, prune=False) is not None
                      and has_minor(matroid, second, prune=False) is not None)
    return cache[key]


def brute_force_intertwine(host, first, second) -> bool:
    """Intertwine test over every proper minor M \\ X / Y with X u Y nonempty"""
    cache = {}
    if not has_both(host, first, second, cache):
        return False
    smallest = max(first.ground_size, second.ground_size)
    for choice in product((0, 1, 2), repeat=host.ground_size):
        removed = sum(1 for c in choice if c > 0)
        if removed == 0 or host.ground_size - removed < smallest:
            continue
        deleted = [label for label, c in zip(host.labels, choice) if c == 1]
        contracted = [label for label, c in zip(host.labels, choice) if c == 2]
        if has_both(minor(host, delete=deleted, contract=contracted), first, second, cache):
            return False
    return True


def small_hosts() -> list:
    """Catalog fixtures with at most 7 elements and their single-element minors, one per isomorphism class"""
    hosts = {}
    for identifier, matroid in catalog().items():
        if matroid.ground_size > 7:
            continue
        hosts.setdefault(canonical_key(matroid), (identifier, matroid))
        for label in matroid.labels:
            for operation, proper in (('delete', delete(matroid, [label])), ('contract', contract(matroid, [label]))):
                if proper.ground_size >= 3:
                    hosts.setdefault(canonical_key(proper), (f'{identifier} {operation} {label}', proper))
    return list(hosts.values())


TARGET_PAIRS = {
    'U23-U12': (uniform(2, 3), uniform(1, 2)),
    'U13-U23': (uniform(1, 3), uniform(2, 3)),
    'U12+U12-U23': (pairsum(2), uniform(2, 3)),
    'u_pair': fixture_u_pair(),
}


@pytest.mark.parametrize('host_id, host', small_hosts(), ids=lambda value: value if isinstance(value, str) else None)
@pytest.mark.parametrize('pair', list(TARGET_PAIRS), ids=str)
def test_verification_agrees_with_proper_minor_enumeration(host_id, host, pair):
    first, second = TARGET_PAIRS[pair]
    expected = brute_force_intertwine(host, first, second)
    assert verify_intertwine(host, first, second).verdict == expected, host_id
    assert verify_intertwine(host, first, second, prune=False).verdict == expected, host_id


def test_unlabelled_check_of_the_labelled_construction(u_pair, flagship):
    m1, m2 = u_pair
    # below the threshold of the unlabelled statement: recorded outcome
    report = verify_intertwine(flagship, m1, m2, labelled=False)
    assert not report.verdict
    assert report.details['counterexample'] == 'delete a0'
    assert report.witnesses['m1'].replay(flagship, m1)
    assert report.witnesses['proper_m1'].replay(flagship, m1)
    assert report.witnesses['proper_m2'].replay(flagship, m2)


def test_labelled_check_needs_the_target_labels(u_pair):
    m1, m2 = u_pair
    with pytest.raises(ValueError, match='of m1 are not in the ground set'):
        verify_intertwine(mk4(), m1, m2, labelled=True)
    with pytest.raises(ValueError, match='of m2 are not in the ground set'):
        verify_intertwine(m1, m1, m2, labelled=True)
