"""Named small matroids used as inputs and test fixtures: uniform matroids, M(K4), the rank-3 whirl, sums of U(1,2),
free spikes and spikes with circuit-hyperplanes."""

import re
from dataclasses import dataclass
from enum import Enum, unique
from itertools import combinations

from pyintertwine.constructions import direct_sum
from pyintertwine.matroid import CyclicFlatPresentation
from pyintertwine.utils import get_logger, mask_of, full_mask

LOGGER = get_logger()


@unique
class Family(Enum):
    """Fixture families.

    Possible values are: UNIFORM, MK4, WHIRL3, PAIRSUM, FREE_SPIKE, SPIKE_CH"""
    UNIFORM = 'uniform'  #: U(k,n), parameters k and n
    MK4 = 'mk4'  #: cycle matroid of K4, no parameter
    WHIRL3 = 'whirl3'  #: rank-3 whirl, no parameter
    PAIRSUM = 'pairsum'  #: direct sum of m copies of U(1,2), parameter m
    FREE_SPIKE = 'free_spike'  #: free spike of rank n without tip, parameter n
    SPIKE_CH = 'spike_ch'  #: free spike with some transversals made circuit-hyperplanes

    def __str__(self):
        return self.value


_ID_PATTERN = re.compile(r'^\s*([a-z_0-9]+)\s*(?:\((.*)\))?\s*$')


@dataclass(frozen=True)
class FixtureId:
    """Identifier of a fixture, written like `uniform(3,6)`, `mk4` or `spike_ch(4,0000;1100)`.

    :ivar family: the fixture family
    :vartype family: Family
    :ivar params: integer parameters (k and n, m, or n)
    :vartype params: tuple[int, ...]
    :ivar transversals: for spike_ch, one string of 0 (x side) and 1 (y side) per circuit-hyperplane, one character per
        leg
    :vartype transversals: tuple[str, ...]"""
    family: Family
    params: tuple[int, ...] = ()
    transversals: tuple[str, ...] = ()

    @staticmethod
    def parse(text: str):
        """Parse an identifier string.

        :param text: the identifier
        :type text: str

        :return: the fixture identifier
        :rtype: FixtureId"""
        match = _ID_PATTERN.match(text)
        if match is None:
            raise ValueError(f'malformed fixture identifier {text!r}')
        try:
            family = Family(match.group(1))
        except ValueError:
            raise ValueError(f'unknown fixture family {match.group(1)!r}, expected one of '
                             f'{", ".join(str(f) for f in Family)}') from None
        args = [a.strip() for a in match.group(2).split(',')] if match.group(2) else []
        expected = {Family.UNIFORM: 2, Family.MK4: 0, Family.WHIRL3: 0, Family.PAIRSUM: 1, Family.FREE_SPIKE: 1,
                    Family.SPIKE_CH: 2}[family]
        if len(args) != expected:
            raise ValueError(f'fixture {family} takes {expected} parameters, got {len(args)} in {text!r}')
        if family == Family.SPIKE_CH:
            transversals = tuple(t for t in args[1].split(';') if t != '')
            return FixtureId(family, (_parse_int(args[0], text),), transversals)
        return FixtureId(family, tuple(_parse_int(a, text) for a in args))

    def __str__(self):
        if self.family == Family.SPIKE_CH:
            return f'{self.family}({self.params[0]},{";".join(self.transversals)})'
        if len(self.params) == 0:
            return str(self.family)
        return f'{self.family}({",".join(str(p) for p in self.params)})'

    def __repr__(self):
        return self.__str__()


def _parse_int(value: str, text: str) -> int:
    if not re.fullmatch(r'\d+', value):
        raise ValueError(f'fixture parameter {value!r} in {text!r} is not a non-negative integer')
    return int(value)


########################################################################################################################
# Families
########################################################################################################################

def uniform(k: int, n: int, prefix: str = 'e', start: int = 0, name: str | None = None) -> CyclicFlatPresentation:
    """Uniform matroid U(k,n) on labels `{prefix}{start}`, `{prefix}{start + 1}`...

    :param k: rank, between 0 and n
    :type k: int
    :param n: number of elements
    :type n: int
    :param prefix: label stem. Default: 'e'
    :type prefix: str
    :param start: first label number. Default: 0
    :type start: int
    :param name: display name. Default: U(k,n)
    :type name: str | None

    :return: the uniform matroid
    :rtype: CyclicFlatPresentation"""
    if not 0 <= k <= n:
        raise ValueError(f'uniform matroid needs 0 <= k <= n, got k={k} n={n}')
    labels = [f'{prefix}{start + i}' for i in range(n)]
    if k == 0:
        flats = [(full_mask(n), 0)]
    elif k == n:
        flats = [(0, 0)]
    else:
        flats = [(0, 0), (full_mask(n), k)]
    return CyclicFlatPresentation(labels, flats, name if name is not None else f'U({k},{n})')


def mk4() -> CyclicFlatPresentation:
    """Cycle matroid of K4, elements named by the edges of K4 on vertices a, b, c, d"""
    labels = ['ab', 'ac', 'ad', 'bc', 'bd', 'cd']
    triangles = [(0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5)]
    flats = [(0, 0)] + [(mask_of(t), 2) for t in triangles] + [(full_mask(6), 3)]
    return CyclicFlatPresentation(labels, flats, 'mk4')


def whirl3() -> CyclicFlatPresentation:
    """Rank-3 whirl: M(K4) with the triangle {3,4,5} relaxed"""
    triangles = [(0, 1, 3), (1, 2, 4), (0, 2, 5)]
    flats = [(0, 0)] + [(mask_of(t), 2) for t in triangles] + [(full_mask(6), 3)]
    return CyclicFlatPresentation([f'w{i}' for i in range(6)], flats, 'whirl3')


def pairsum(m: int, prefix: str = 'p', name: str | None = None) -> CyclicFlatPresentation:
    """Direct sum of m copies of U(1,2), copy i on `{prefix}{2i}` and `{prefix}{2i + 1}`"""
    if m < 1:
        raise ValueError(f'pairsum needs at least one summand, got {m}')
    result = uniform(1, 2, prefix, 0)
    for i in range(1, m):
        result = direct_sum(result, uniform(1, 2, prefix, 2 * i))
    return result.with_name(name if name is not None else f'pairsum({m})')


def _spike_labels(n: int) -> list[str]:
    return [label for i in range(n) for label in (f'x{i}', f'y{i}')]


def _spike_flats(n: int) -> list[tuple[int, int]]:
    """Flats of the free spike: unions of t legs of rank t + 1 for 2 <= t <= n - 2, any n - 1 legs spanning"""
    flats = [(0, 0), (full_mask(2 * n), n)]
    for t in range(2, n - 1):
        for legs in combinations(range(n), t):
            flats.append((mask_of(e for leg in legs for e in (2 * leg, 2 * leg + 1)), t + 1))
    return flats


def free_spike(n: int) -> CyclicFlatPresentation:
    """Free spike of rank n without tip, legs (x_i, y_i) for i < n.

    :param n: rank, at least 4
    :type n: int

    :return: the free spike on 2n elements
    :rtype: CyclicFlatPresentation"""
    if n < 4:
        raise ValueError(f'spikes need rank at least 4, got {n}')
    return CyclicFlatPresentation(_spike_labels(n), _spike_flats(n), f'free_spike({n})')


def spike_ch(n: int, transversals) -> CyclicFlatPresentation:
    """Free spike of rank n in which the given transversals of the legs are circuit-hyperplanes (flats of rank n - 1).

    :param n: rank, at least 4
    :type n: int
    :param transversals: one string per transversal, character i is 0 to pick x_i and 1 to pick y_i
    :type transversals: Iterable[str]

    :return: the spike
    :rtype: CyclicFlatPresentation"""
    if n < 4:
        raise ValueError(f'spikes need rank at least 4, got {n}')
    transversals = tuple(transversals)
    masks = []
    for transversal in transversals:
        if len(transversal) != n or set(transversal) - {'0', '1'}:
            raise ValueError(f'transversal {transversal!r} must pick one element per leg with {n} characters 0 or 1')
        masks.append(mask_of(2 * leg + int(side) for leg, side in enumerate(transversal)))
    if len(set(masks)) != len(masks):
        raise ValueError(f'duplicate transversals in {";".join(transversals)}')
    for (t1, m1), (t2, m2) in combinations(zip(transversals, masks), 2):
        if (m1 & m2).bit_count() > n - 2:
            raise ValueError(f'transversals {t1} and {t2} differ on a single leg, two circuit-hyperplanes share at '
                             f'most {n - 2} elements')
    flats = _spike_flats(n) + [(mask, n - 1) for mask in masks]
    return CyclicFlatPresentation(_spike_labels(n), flats, str(FixtureId(Family.SPIKE_CH, (n,), transversals)))


def u_pair() -> tuple[CyclicFlatPresentation, CyclicFlatPresentation]:
    """The pair U(1,2) + U(1,2) on a0..a3 and U(1,2) + U(2,3) on b0..b4"""
    m1 = pairsum(2, prefix='a', name='U12+U12')
    m2 = direct_sum(uniform(1, 2, 'b', 0), uniform(2, 3, 'b', 2), name='U12+U23')
    return m1, m2


########################################################################################################################
# Lookup
########################################################################################################################

def fixture(identifier: FixtureId | str) -> CyclicFlatPresentation:
    """Build the fixture named by an identifier.

    :param identifier: the identifier, or its string form such as `uniform(2,4)`
    :type identifier: FixtureId | str

    :return: the fixture, named by its identifier
    :rtype: CyclicFlatPresentation"""
    if isinstance(identifier, str):
        identifier = FixtureId.parse(identifier)
    family, params = identifier.family, identifier.params
    if family == Family.UNIFORM:
        matroid = uniform(params[0], params[1])
    elif family == Family.MK4:
        matroid = mk4()
    elif family == Family.WHIRL3:
        matroid = whirl3()
    elif family == Family.PAIRSUM:
        matroid = pairsum(params[0])
    elif family == Family.FREE_SPIKE:
        matroid = free_spike(params[0])
    else:
        matroid = spike_ch(params[0], identifier.transversals)
    return matroid.with_name(str(identifier))


CATALOG_IDS = ('uniform(1,2)', 'uniform(2,3)', 'uniform(2,4)', 'uniform(3,6)', 'mk4', 'whirl3', 'pairsum(2)',
               'pairsum(3)', 'free_spike(4)', 'spike_ch(4,0000)', 'spike_ch(4,0000;1100)')


def catalog() -> dict[str, CyclicFlatPresentation]:
    """All the catalog fixtures by identifier"""
    return {identifier: fixture(identifier) for identifier in CATALOG_IDS}
