"""Isomorphism of matroids given by their cyclic flats: backtracking test, canonical form and automorphism count.

A bijection of ground sets is an isomorphism exactly when it maps the ranked cyclic flats of one matroid onto the ranked
cyclic flats of the other, so everything here works on the flat incidence structure only."""

from collections import Counter
from math import factorial

from pyintertwine.matroid import CyclicFlatPresentation
from pyintertwine.utils import get_logger, iter_bits, mask_of

LOGGER = get_logger()


def element_invariants(matroid: CyclicFlatPresentation) -> list[tuple[tuple[int, int], ...]]:
    """Per element, the sorted multiset of (size, rank) of the cyclic flats containing it"""
    invariants = [[] for _ in range(matroid.ground_size)]
    for mask, rank in matroid.pairs:
        for e in iter_bits(mask):
            invariants[e].append((mask.bit_count(), rank))
    return [tuple(sorted(inv)) for inv in invariants]


def flat_statistics(matroid: CyclicFlatPresentation) -> Counter:
    """Multiset of (size, rank) over the cyclic flats"""
    return Counter((mask.bit_count(), rank) for mask, rank in matroid.pairs)


def is_isomorphic(m: CyclicFlatPresentation, n: CyclicFlatPresentation) -> dict[str, str] | None:
    """Look for an isomorphism from m to n.

    Elements of m are mapped in index order, each trying the elements of n with the same invariant in increasing order,
    so the first complete map found is the lexicographically least isomorphism.

    :param m: source matroid
    :type m: CyclicFlatPresentation
    :param n: target matroid
    :type n: CyclicFlatPresentation

    :return: the bijection from the labels of m to the labels of n, or None if the matroids are not isomorphic
    :rtype: dict[str, str] | None"""
    if m.ground_size != n.ground_size or m.nb_flats != n.nb_flats or flat_statistics(m) != flat_statistics(n):
        return None
    inv_m, inv_n = element_invariants(m), element_invariants(n)
    if sorted(inv_m) != sorted(inv_n):
        return None

    size = m.ground_size
    candidates = [[j for j in range(size) if inv_n[j] == inv_m[i]] for i in range(size)]
    m_flats = [(mask, mask.bit_count(), rank) for mask, rank in m.pairs]
    n_by_stat = {}
    for mask, rank in n.pairs:
        n_by_stat.setdefault((mask.bit_count(), rank), []).append(mask)
    target_flats = set(n.pairs)
    image = [0] * size

    def consistent(assigned: int) -> bool:
        # some flat of n with the same statistics must contain the image of F n A and avoid the image of A - F
        for mask, flat_size, rank in m_flats:
            inside = mask_of(image[e] for e in iter_bits(mask & assigned))
            outside = mask_of(image[e] for e in iter_bits(assigned & ~mask))
            if not any(inside & ~g == 0 and outside & g == 0 for g in n_by_stat[(flat_size, rank)]):
                return False
        return True

    def extend(i: int, used: int) -> bool:
        if i == size:
            mapped = {(mask_of(image[e] for e in iter_bits(mask)), rank) for mask, rank in m.pairs}
            return mapped == target_flats
        for j in candidates[i]:
            if used >> j & 1:
                continue
            image[i] = j
            if consistent((1 << (i + 1)) - 1) and extend(i + 1, used | 1 << j):
                return True
        return False

    if not extend(0, 0):
        return None
    return {m.labels[i]: n.labels[image[i]] for i in range(size)}


########################################################################################################################
# Canonical form
########################################################################################################################

def twin_classes(matroid: CyclicFlatPresentation) -> list[int]:
    """Masks of the classes of elements lying in exactly the same cyclic flats, ordered by their least element"""
    membership = {}
    for e in range(matroid.ground_size):
        key = tuple(i for i, (mask, _) in enumerate(matroid.pairs) if mask >> e & 1)
        membership[key] = membership.get(key, 0) | 1 << e
    return sorted(membership.values(), key=lambda mask: (mask & -mask))


class _UnitStructure:
    """Twin classes (units) and the flats written over units"""

    def __init__(self, matroid: CyclicFlatPresentation):
        self.classes = twin_classes(matroid)
        self.weights = [c.bit_count() for c in self.classes]
        unit_of = {}
        for u, c in enumerate(self.classes):
            for e in iter_bits(c):
                unit_of[e] = u
        self.flats = [(mask_of(unit_of[e] for e in iter_bits(mask)), mask.bit_count(), rank)
                      for mask, rank in matroid.pairs]
        self.units_in = [[u for u in range(len(self.classes)) if flat >> u & 1] for flat, _, _ in self.flats]

    def initial_colours(self) -> list[int]:
        signatures = []
        for u in range(len(self.classes)):
            stats = sorted((size, rank) for flat, size, rank in self.flats if flat >> u & 1)
            signatures.append((self.weights[u], tuple(stats)))
        return _rank_signatures(signatures)

    def refine(self, colours: list[int]) -> list[int]:
        """Colour refinement on the unit / flat incidence until the partition is stable"""
        while True:
            flat_colours = [(size, rank, tuple(sorted(colours[u] for u in units)))
                            for (_, size, rank), units in zip(self.flats, self.units_in)]
            signatures = []
            for u in range(len(colours)):
                around = sorted(flat_colours[i] for i, (flat, _, _) in enumerate(self.flats) if flat >> u & 1)
                signatures.append((colours[u], tuple(around)))
            refined = _rank_signatures(signatures)
            if len(set(refined)) == len(set(colours)):
                return refined
            colours = refined

    def encode(self, colours: list[int]) -> tuple[tuple, list[int]]:
        """Encoding of a discrete colouring: units ordered by colour, expanded into consecutive element positions"""
        order = sorted(range(len(colours)), key=lambda u: colours[u])
        positions, start = {}, 0
        for u in order:
            positions[u] = range(start, start + self.weights[u])
            start += self.weights[u]
        encoded = []
        for flat, size, rank in self.flats:
            elements = tuple(sorted(p for u in iter_bits(flat) for p in positions[u]))
            encoded.append((size, elements, rank))
        return tuple(sorted(encoded)), order


def _rank_signatures(signatures: list) -> list[int]:
    distinct = sorted(set(signatures))
    index = {s: i for i, s in enumerate(distinct)}
    return [index[s] for s in signatures]


def _search_leaves(structure: _UnitStructure) -> tuple[tuple, list[int], int]:
    """Explore the individualisation-refinement tree and return the least leaf encoding, its unit order and the number of
    leaves reaching it"""
    best = [None, None, 0]

    def visit(colours: list[int]):
        colours = structure.refine(colours)
        counts = Counter(colours)
        ambiguous = [c for c in sorted(counts) if counts[c] > 1]
        if len(ambiguous) == 0:
            encoding, order = structure.encode(colours)
            if best[0] is None or encoding < best[0]:
                best[0], best[1], best[2] = encoding, order, 1
            elif encoding == best[0]:
                best[2] += 1
            return
        cell = ambiguous[0]
        for u in range(len(colours)):
            if colours[u] == cell:
                visit([2 * c + (0 if v == u or c != cell else 1) for v, c in enumerate(colours)])

    visit(structure.initial_colours())
    return best[0], best[1], best[2]


def canonical_form(matroid: CyclicFlatPresentation) -> tuple[CyclicFlatPresentation, dict[str, str]]:
    """Canonical representative of the isomorphism class of a matroid, on labels e0, e1, ...

    Elements lying in exactly the same cyclic flats are interchangeable and are handled as one unit. Units are coloured by
    refinement on the unit / flat incidence, the first ambiguous cell is individualised in turn, and the least encoding
    over all the leaves of that search is kept.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation

    :return: the canonical presentation and the relabeling from the labels of `matroid` to the canonical labels
    :rtype: tuple[CyclicFlatPresentation, dict[str, str]]"""
    structure = _UnitStructure(matroid)
    encoding, order, _ = _search_leaves(structure)
    relabeling, position = {}, 0
    for u in order:
        for e in iter_bits(structure.classes[u]):
            relabeling[matroid.labels[e]] = f'e{position}'
            position += 1
    labels = [f'e{i}' for i in range(matroid.ground_size)]
    flats = [(mask_of(elements), rank) for _, elements, rank in encoding]
    return CyclicFlatPresentation(labels, flats, matroid.name, validate=False), relabeling


def canonical_key(matroid: CyclicFlatPresentation) -> tuple:
    """Hashable key equal for two matroids exactly when they are isomorphic"""
    encoding, _, _ = _search_leaves(_UnitStructure(matroid))
    return matroid.ground_size, encoding


def automorphism_count(matroid: CyclicFlatPresentation) -> int:
    """Order of the automorphism group: permutations inside twin classes times the symmetries between classes.

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation

    :return: the number of automorphisms
    :rtype: int"""
    structure = _UnitStructure(matroid)
    _, _, leaves = _search_leaves(structure)
    count = leaves
    for weight in structure.weights:
        count *= factorial(weight)
    return count
