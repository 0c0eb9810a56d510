"""
Functions to give an insight on a single matroid by calculating and printing some reference statistics.
"""
from math import comb

import numpy as np

from pyintertwine.connectivity import connectivity, CONNECTIVITY_LIMIT
from pyintertwine.isomorphism import automorphism_count
from pyintertwine.matroid import (CyclicFlatPresentation, eta_zprime, fi_set, fi_dual_set, circuit_hyperplanes,
                                  enumerate_bases, is_uniform)
from pyintertwine.transversal import is_transversal_mi, is_cotransversal, ANTICHAIN_FLAT_LIMIT
from pyintertwine.utils import get_logger, EXHAUSTIVE_LIMIT

LOGGER = get_logger()


def print_header(title: str) -> None:
    """Format and print a summary section header

    :param title: title of the section header
    :type title: str

    :return: None"""
    print('\n===================================================================')
    print(f'|  {title}')
    print('===================================================================\n')


def print_value(name: str, value) -> None:
    """Format and print a summary value

    :param name: name (description) of the value to display
    :type name: str
    :param value: value to display. Can be anything printable.

    :return: None"""
    if isinstance(value, bool):
        print(f'{name:<55} {str(value).lower()}')
    elif isinstance(value, (float, np.float32, np.float64)):
        print(f'{name:<55} {value:.2f}')
    elif isinstance(value, (int, np.int32, np.int64)):
        print(f'{name:<55} {value:,}')
    else:
        print(f'{name:<55} {value}')


def print_pct(name: str, value) -> None:
    """Format and print a percentage (x100 will be applied to the input value)"""
    print(f'{name:<55} {100 * value:.2f} %')


def structure_stats(matroid: CyclicFlatPresentation) -> None:
    """Print the size, rank and cyclic flat statistics of the matroid"""
    print_header('Structure')
    print_value('Number of elements', matroid.ground_size)
    print_value('Rank', matroid.rank)
    print_value('Corank', matroid.corank)
    print_value('Number of cyclic flats', matroid.nb_flats)
    print_value('Total nullity of the proper cyclic flats', eta_zprime(matroid))
    print_value('Uniform', is_uniform(matroid))
    print_value('Free elements and isthmuses', ' '.join(matroid.labels_of(fi_set(matroid))) or '-')
    print_value('Cofree elements and loops', ' '.join(matroid.labels_of(fi_dual_set(matroid))) or '-')
    print_value('Number of circuit-hyperplanes', len(circuit_hyperplanes(matroid)))


def bases_stats(matroid: CyclicFlatPresentation) -> None:
    """Print the number of bases and the automorphism count. Skipped above the exhaustive scan limit."""
    print_header('Bases and symmetries')
    if matroid.ground_size > EXHAUSTIVE_LIMIT:
        print(f'skipped: more than {EXHAUSTIVE_LIMIT} elements')
        return
    nb_bases = len(enumerate_bases(matroid))
    print_value('Number of bases', nb_bases)
    print_pct('Bases among the subsets of size r', nb_bases / comb(matroid.ground_size, matroid.rank))
    print_value('Number of automorphisms', automorphism_count(matroid))


def transversality_stats(matroid: CyclicFlatPresentation) -> None:
    """Print the transversality verdicts of the matroid and of its dual"""
    print_header('Transversality')
    if matroid.nb_flats > ANTICHAIN_FLAT_LIMIT:
        print(f'skipped: more than {ANTICHAIN_FLAT_LIMIT} cyclic flats')
        return
    print_value('Transversal', str(is_transversal_mi(matroid)))
    print_value('Cotransversal', str(is_cotransversal(matroid)))


def connectivity_stats(matroid: CyclicFlatPresentation) -> None:
    """Print the Tutte connectivity, the vertical connectivity and roundedness"""
    print_header('Connectivity')
    if matroid.ground_size > CONNECTIVITY_LIMIT:
        print(f'skipped: more than {CONNECTIVITY_LIMIT} elements')
        return
    result = connectivity(matroid)
    print_value('Tutte connectivity', 'none' if result.tutte is None else result.tutte)
    print_value('Vertical connectivity', result.vertical)
    print_value('Rounded', result.rounded)


def matroid_summary(matroid: CyclicFlatPresentation) -> None:
    """Print all the summary sections of a matroid

    :param matroid: the matroid
    :type matroid: CyclicFlatPresentation

    :return: None"""
    LOGGER.info(f'summary of {matroid.name or "matroid"}')
    structure_stats(matroid)
    bases_stats(matroid)
    transversality_stats(matroid)
    connectivity_stats(matroid)
