"""Certification engine: minor containment (labelled and up to isomorphism) with replayable witnesses, intertwine
verification and the bounded closure of a matroid under minors, free extensions and free coextensions."""

import time
from collections import Counter, deque
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from pyintertwine.constructions import minor, relabel, free_extension, free_coextension
from pyintertwine.elements import ElementSet
from pyintertwine.intertwine import (IntertwineParams, Mode, construct_intertwine, labelled_hypotheses_hold,
                                     unlabelled_hypotheses_hold)
from pyintertwine.isomorphism import is_isomorphic, flat_statistics, twin_classes, canonical_form, canonical_key
from pyintertwine.matroid import CyclicFlatPresentation, eta_zprime, full_rank_table
from pyintertwine.utils import get_logger, bits_of, subsets_of_size, subset_sizes

LOGGER = get_logger()

# unlabelled minor search gates: size of the host, and number of removed elements
UNLABELLED_MINOR_LIMIT = 16
UNLABELLED_MINOR_GAP = 10
CLOSURE_CAP_LIMIT = 12


@dataclass
class MinorWitness:
    """Certificate that M \\ X / Y, relabeled by `mapping`, equals a target matroid.

    :ivar deleted: labels of X
    :vartype deleted: tuple[str, ...]
    :ivar contracted: labels of Y
    :vartype contracted: tuple[str, ...]
    :ivar mapping: label of the minor -> label of the target, the identity in labelled mode
    :vartype mapping: dict[str, str]"""
    deleted: tuple[str, ...]
    contracted: tuple[str, ...]
    mapping: dict[str, str]

    def replay(self, matroid: CyclicFlatPresentation, target: CyclicFlatPresentation) -> bool:
        """Recompute the minor and check that it equals the target under the mapping"""
        try:
            candidate = minor(matroid, delete=list(self.deleted), contract=list(self.contracted))
            return relabel(candidate, mapping=self.mapping) == target
        except ValueError as error:
            LOGGER.error(f'witness cannot be replayed: {error}')
            return False

    def __str__(self):
        return f'MinorWitness(X={{{",".join(self.deleted)}}}, Y={{{",".join(self.contracted)}}})'


@dataclass
class VerificationReport:
    """Outcome of a check, with its witnesses, details, search counters and notes.

    :ivar check: name of the check
    :vartype check: str
    :ivar verdict: result of the check
    :vartype verdict: bool
    :ivar witnesses: minor witnesses, by target name
    :vartype witnesses: dict[str, MinorWitness]
    :ivar details: additional named values, such as a counterexample
    :vartype details: dict[str, str]
    :ivar counters: search-size counters
    :vartype counters: dict[str, int]
    :ivar notes: free text remarks
    :vartype notes: list[str]
    :ivar elapsed: running time in seconds
    :vartype elapsed: float"""
    check: str
    verdict: bool
    witnesses: dict[str, MinorWitness] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)
    counters: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def to_frame(self) -> pd.DataFrame:
        """Flatten the report into a (section, key, value) table"""
        rows = [('verdict', self.check, str(self.verdict).lower())]
        for target, witness in self.witnesses.items():
            rows.append(('witness', f'{target}.deleted', ' '.join(witness.deleted)))
            rows.append(('witness', f'{target}.contracted', ' '.join(witness.contracted)))
            rows.append(('witness', f'{target}.map', ' '.join(f'{a}={b}' for a, b in witness.mapping.items())))
        rows += [('detail', key, value) for key, value in self.details.items()]
        rows += [('counter', key, value) for key, value in self.counters.items()]
        rows += [('note', str(i), note) for i, note in enumerate(self.notes)]
        return pd.DataFrame(rows, columns=['section', 'key', 'value'])

    def __str__(self):
        return f'VerificationReport({self.check}: {str(self.verdict).lower()}, {len(self.witnesses)} witnesses)'


########################################################################################################################
# Minor search
########################################################################################################################

def _lowest(mask: int, count: int) -> int:
    chosen = 0
    for e in bits_of(mask)[:count]:
        chosen |= 1 << e
    return chosen


def _class_choices(classes: list[int], available: int, size: int) -> list[int]:
    """One subset of `available` with `size` elements per way of spreading them over the classes, each class giving its
    lowest available elements. Sorted lexicographically."""
    pools = [c & available for c in classes]
    choices = []

    def spread(i: int, remaining: int, mask: int):
        if i == len(pools):
            if remaining == 0:
                choices.append(mask)
            return
        for take in range(min(remaining, pools[i].bit_count()) + 1):
            spread(i + 1, remaining - take, mask | _lowest(pools[i], take))

    spread(0, size, 0)
    return sorted(choices, key=bits_of)


def rank_profile(matroid: CyclicFlatPresentation) -> np.ndarray:
    """Number of subsets of each (size, rank), flattened as size * (n + 1) + rank"""
    n = matroid.ground_size
    codes = subset_sizes(n) * (n + 1) + full_rank_table(matroid)
    return np.bincount(codes, minlength=(n + 1) * (n + 1))


@dataclass
class _TargetReference:
    """Invariants of the target matroid compared before any isomorphism test"""
    eta: int
    stats: Counter
    profile: np.ndarray


def _witness(matroid: CyclicFlatPresentation, deleted: int, contracted: int, mapping: dict[str, str]) -> MinorWitness:
    return MinorWitness(matroid.labels_of(deleted), matroid.labels_of(contracted), mapping)


def _unlabelled_for_contraction(matroid: CyclicFlatPresentation, target: CyclicFlatPresentation, contracted: int,
                                prune: bool, classes: list[int],
                                reference: _TargetReference) -> tuple[MinorWitness | None, Counter]:
    """Search the deletions X for a fixed contracted set Y, in lexicographic order"""
    counters = Counter()
    n, full = matroid.ground_size, matroid.full_mask
    nb_deleted = n - target.ground_size - contracted.bit_count()
    if prune:
        contraction = minor(matroid, contract=ElementSet(contracted, n))
        if eta_zprime(contraction) < reference.eta:
            counters['pruned_eta'] += 1
            return None, counters
        deletions = _class_choices(classes, full & ~contracted, nb_deleted)
    else:
        deletions = subsets_of_size(full & ~contracted, nb_deleted)
    for deleted in deletions:
        if matroid.rank_of(full & ~deleted) != matroid.rank:
            continue
        counters['candidates'] += 1
        candidate = minor(matroid, delete=ElementSet(deleted, n), contract=ElementSet(contracted, n))
        if prune:
            if not np.array_equal(rank_profile(candidate), reference.profile):
                counters['pruned_profile'] += 1
                continue
            if flat_statistics(candidate) != reference.stats:
                counters['pruned_flats'] += 1
                continue
        counters['isomorphism_tests'] += 1
        mapping = is_isomorphic(candidate, target)
        if mapping is not None:
            return _witness(matroid, deleted, contracted, mapping), counters
    return None, counters


def _labelled_search(matroid: CyclicFlatPresentation, target: CyclicFlatPresentation, prune: bool,
                     counters: Counter) -> MinorWitness | None:
    kept = matroid.element_set(list(target.labels)).mask
    rest = matroid.full_mask & ~kept
    nb_contracted = matroid.rank - target.rank
    if nb_contracted < 0 or nb_contracted > rest.bit_count():
        return None
    target_flats = [(matroid.element_set(list(target.labels_of(mask))).mask, rank) for mask, rank in target.pairs]
    for contracted in subsets_of_size(rest, nb_contracted):
        if matroid.rank_of(contracted) != nb_contracted or matroid.rank_of(kept | contracted) != matroid.rank:
            continue
        counters['candidates'] += 1
        if prune and any(matroid.rank_of(mask | contracted) - nb_contracted != rank for mask, rank in target_flats):
            counters['pruned_flat_ranks'] += 1
            continue
        deleted = rest & ~contracted
        candidate = minor(matroid, delete=ElementSet(deleted, matroid.ground_size),
                          contract=ElementSet(contracted, matroid.ground_size))
        if candidate == target:
            return _witness(matroid, deleted, contracted, {label: label for label in target.labels})
    return None


def has_minor(matroid: CyclicFlatPresentation, target: CyclicFlatPresentation, labelled: bool = False,
              prune: bool = True, n_jobs: int = 1, counters: Counter | None = None) -> MinorWitness | None:
    """Look for a minor of `matroid` equal (labelled) or isomorphic (unlabelled) to `target`.

    Contracted sets Y range over the independent sets of size r(M) - r(N) in lexicographic order, deleted sets X over
    the remaining sets whose complement spans. In labelled mode the surviving set is the ground set of N. In unlabelled
    mode with pruning, elements lying in the same cyclic flats are interchangeable, so only the lowest elements of each
    such class are chosen; candidates are then filtered by total nullity of the proper cyclic flats, rank profile and
    flat statistics before the isomorphism test.

    :param matroid: the host matroid M
    :type matroid: CyclicFlatPresentation
    :param target: the matroid N to find
    :type target: CyclicFlatPresentation
    :param labelled: require equality, labels included. Default: False
    :type labelled: bool
    :param prune: use the pruning rules. Default: True
    :type prune: bool
    :param n_jobs: number of parallel jobs over the contracted sets, joblib semantics. Default: 1
    :type n_jobs: int
    :param counters: counter updated with the search statistics. Default: None
    :type counters: collections.Counter | None

    :return: the lexicographically least witness, or None if N is not a minor of M
    :rtype: MinorWitness | None"""
    counters = Counter() if counters is None else counters
    counters['searches'] += 1
    if labelled:
        missing = sorted(set(target.labels) - set(matroid.labels))
        if len(missing) > 0:
            raise ValueError(f'labelled minor search: labels {", ".join(missing)} are not in the host ground set')
    else:
        if matroid.ground_size > UNLABELLED_MINOR_LIMIT:
            raise ValueError(f'unlabelled minor search is limited to {UNLABELLED_MINOR_LIMIT} elements, host has '
                             f'{matroid.ground_size}')
        if matroid.ground_size - target.ground_size > UNLABELLED_MINOR_GAP:
            raise ValueError(f'unlabelled minor search removes at most {UNLABELLED_MINOR_GAP} elements, '
                             f'{matroid.ground_size - target.ground_size} requested')

    if (target.ground_size > matroid.ground_size or target.rank > matroid.rank
            or target.corank > matroid.corank):
        counters['pruned_size'] += 1
        return None
    if prune and eta_zprime(target) > eta_zprime(matroid):
        counters['pruned_eta'] += 1
        return None
    if labelled:
        return _labelled_search(matroid, target, prune, counters)

    nb_contracted = matroid.rank - target.rank
    full = matroid.full_mask
    classes = twin_classes(matroid)
    contractions = _class_choices(classes, full, nb_contracted) if prune else subsets_of_size(full, nb_contracted)
    contractions = [y for y in contractions if matroid.rank_of(y) == nb_contracted]
    reference = _TargetReference(eta_zprime(target), flat_statistics(target), rank_profile(target))

    if n_jobs == 1:
        for contracted in contractions:
            witness, found = _unlabelled_for_contraction(matroid, target, contracted, prune, classes, reference)
            counters.update(found)
            if witness is not None:
                return witness
        return None

    results = Parallel(n_jobs=n_jobs)(delayed(_unlabelled_for_contraction)(matroid, target, y, prune, classes,
                                                                           reference) for y in contractions)
    witness = None
    for found_witness, found in results:
        counters.update(found)
        if witness is None and found_witness is not None:
            witness = found_witness
    return witness


########################################################################################################################
# Intertwines
########################################################################################################################

def _safe_has_minor(matroid, target, labelled, prune, counters) -> MinorWitness | None:
    if labelled and not set(target.labels) <= set(matroid.labels):
        return None
    return has_minor(matroid, target, labelled, prune, counters=counters)


def _proper_minor_check(matroid: CyclicFlatPresentation, index: int, operation: str, m1: CyclicFlatPresentation,
                        m2: CyclicFlatPresentation, labelled: bool, prune: bool):
    """Check whether one single-element deletion or contraction has both minors"""
    counters = Counter()
    label = matroid.labels[index]
    if operation == 'delete':
        proper = minor(matroid, delete=[label])
    else:
        proper = minor(matroid, contract=[label])
    first = _safe_has_minor(proper, m1, labelled, prune, counters)
    second = _safe_has_minor(proper, m2, labelled, prune, counters) if first is not None else None
    if first is None or second is None:
        return None, counters
    # fold the removed element into the witnesses so that they replay on the host
    witnesses = {}
    for target, witness in (('proper_m1', first), ('proper_m2', second)):
        if operation == 'delete':
            witnesses[target] = MinorWitness((label,) + witness.deleted, witness.contracted, witness.mapping)
        else:
            witnesses[target] = MinorWitness(witness.deleted, (label,) + witness.contracted, witness.mapping)
    return (f'{operation} {label}', witnesses), counters


def verify_intertwine(matroid: CyclicFlatPresentation, m1: CyclicFlatPresentation, m2: CyclicFlatPresentation,
                      labelled: bool = False, prune: bool = True, n_jobs: int = 1) -> VerificationReport:
    """Check that a matroid has minors equal (labelled) or isomorphic to both M1 and M2, and that no single-element
    deletion or contraction has both. A proper minor with both would make some single-element minor have both, so this
    decides whether the matroid is an intertwine.

    :param matroid: the candidate intertwine
    :type matroid: CyclicFlatPresentation
    :param m1: first target
    :type m1: CyclicFlatPresentation
    :param m2: second target
    :type m2: CyclicFlatPresentation
    :param labelled: labelled intertwine check. Default: False
    :type labelled: bool
    :param prune: use the pruning rules of the minor search. Default: True
    :type prune: bool
    :param n_jobs: number of parallel jobs over the single-element minors, joblib semantics. Default: 1
    :type n_jobs: int

    :return: the report, with the two witnesses when positive, or the proper minor having both when negative
    :rtype: VerificationReport"""
    if labelled:
        for name, target in (('m1', m1), ('m2', m2)):
            missing = sorted(set(target.labels) - set(matroid.labels))
            if len(missing) > 0:
                raise ValueError(f'labelled intertwine check: labels {", ".join(missing)} of {name} are not in the '
                                 f'ground set of the candidate')
    start = time.perf_counter()
    check = 'labelled-intertwine' if labelled else 'intertwine'
    report = VerificationReport(check, False)
    counters = Counter()
    LOGGER.info(f'>> start {check} verification on {matroid.ground_size} elements')

    first = _safe_has_minor(matroid, m1, labelled, prune, counters)
    second = _safe_has_minor(matroid, m2, labelled, prune, counters) if first is not None else None
    if first is None or second is None:
        missing = 'm1' if first is None else 'm2'
        report.details['missing'] = missing
        report.notes.append(f'no minor {"equal" if labelled else "isomorphic"} to {missing}')
    else:
        report.witnesses = {'m1': first, 'm2': second}
        tasks = [(e, operation) for e in range(matroid.ground_size) for operation in ('delete', 'contract')]
        if n_jobs == 1:
            results = []
            for e, operation in tasks:
                results.append(_proper_minor_check(matroid, e, operation, m1, m2, labelled, prune))
                if results[-1][0] is not None:
                    break
        else:
            results = Parallel(n_jobs=n_jobs)(delayed(_proper_minor_check)(matroid, e, operation, m1, m2, labelled,
                                                                           prune) for e, operation in tasks)
        counterexample = None
        for found, found_counters in results:
            counters.update(found_counters)
            if counterexample is None and found is not None:
                counterexample = found
        counters['single_element_minors'] = len(results)
        if counterexample is None:
            report.verdict = True
        else:
            report.details['counterexample'] = counterexample[0]
            report.witnesses.update(counterexample[1])
            report.notes.append(f'the proper minor after {counterexample[0]} has both minors')

    report.counters = dict(counters)
    report.elapsed = time.perf_counter() - start
    LOGGER.info(f'{check} verification done in {report.elapsed:.2f}s: {report.verdict}')
    return report


def verify_construction(params: IntertwineParams, prune: bool = True, n_jobs: int = 1) -> VerificationReport:
    """Build the construction for `params`, verify it in the mode of `params` and note what the theory predicts.

    :param params: the parameters
    :type params: IntertwineParams
    :param prune: use the pruning rules of the minor search. Default: True
    :type prune: bool
    :param n_jobs: number of parallel jobs. Default: 1
    :type n_jobs: int

    :return: the annotated report
    :rtype: VerificationReport"""
    matroid = construct_intertwine(params)
    labelled = params.mode == Mode.LABELLED
    report = verify_intertwine(matroid, params.m1, params.m2, labelled, prune, n_jobs)
    report.details['k'] = str(params.k)
    report.details['ground_size'] = str(matroid.ground_size)
    predicted = labelled_hypotheses_hold(params) if labelled else unlabelled_hypotheses_hold(params)
    if predicted:
        report.notes.append('theorem predicts true')
        if not report.verdict:
            LOGGER.warning(f'{params}: verification disagrees with the predicted outcome')
    else:
        report.notes.append('verified empirically, theorem silent')
    return report


########################################################################################################################
# Obtainability
########################################################################################################################

def obtainability_closure(matroid: CyclicFlatPresentation, size_cap: int,
                          target: CyclicFlatPresentation | None = None) -> dict[tuple, CyclicFlatPresentation]:
    """Isomorphism classes reachable from a matroid by single free extensions, single free coextensions, single-element
    deletions and single-element contractions, never exceeding `size_cap` elements. Every class returned is reachable;
    classes only reachable through larger intermediate matroids are missed.

    :param matroid: the seed
    :type matroid: CyclicFlatPresentation
    :param size_cap: maximum number of elements of the intermediate matroids, at most 12
    :type size_cap: int
    :param target: stop as soon as this matroid is reached. Default: None
    :type target: CyclicFlatPresentation | None

    :return: canonical forms of the reached classes, by canonical key
    :rtype: dict[tuple, CyclicFlatPresentation]"""
    if size_cap > CLOSURE_CAP_LIMIT:
        raise ValueError(f'closure cap {size_cap} exceeds the limit {CLOSURE_CAP_LIMIT}')
    if matroid.ground_size > size_cap:
        raise ValueError(f'seed has {matroid.ground_size} elements, above the cap {size_cap}')
    target_key = canonical_key(target) if target is not None else None
    seed, _ = canonical_form(matroid)
    reached = {canonical_key(seed): seed}
    queue = deque([seed])
    LOGGER.info(f'>> start closure from {matroid.name or "seed"} with cap {size_cap}')
    while queue:
        if target_key is not None and target_key in reached:
            break
        current = queue.popleft()
        n = current.ground_size
        neighbours = []
        if n + 1 <= size_cap:
            fresh = [f'e{n}']
            neighbours += [free_extension(current, fresh), free_coextension(current, fresh)]
        for twins in twin_classes(current):
            label = current.labels[bits_of(twins)[0]]
            neighbours += [minor(current, delete=[label]), minor(current, contract=[label])]
        for neighbour in neighbours:
            key = canonical_key(neighbour)
            if key not in reached:
                reached[key], _ = canonical_form(neighbour)
                queue.append(reached[key])
    LOGGER.info(f'closure reached {len(reached)} isomorphism classes')
    return reached


def is_obtainable(source: CyclicFlatPresentation, target: CyclicFlatPresentation, size_cap: int) -> bool:
    """True if the target is reached by the closure of the source under the cap"""
    return canonical_key(target) in obtainability_closure(source, size_cap, target)
