"""Tools for logger parametrization, object persistence and the integer / numpy bit-mask kernels used by every
exhaustive scan of the package."""

import os
import pickle
import logging
from collections.abc import Iterable, Iterator
from itertools import combinations

import numpy as np

# exhaustive 2^n scans are refused above this ground set size
EXHAUSTIVE_LIMIT = 20
# one machine word per element set
MAX_GROUND_SIZE = 64


def set_logger(level: str | int) -> None:
    """Set the logger verbosity level

    :param level: NOTSET (0), DEBUG (10), INFO (20), WARNING (30), ERROR (40), CRITICAL (50)
    :type level: str | int

    :return: None"""
    logging.getLogger().setLevel(level)


def get_logger(level: str | int = None) -> logging.Logger:
    """Get the current logger and sets its level if the parameter level is defined

    :param level: optional : NOTSET (0), DEBUG (10), INFO (20), WARNING (30), ERROR (40), CRITICAL (50)
    :type level: str | int

    :return: Logger object
    :rtype: logging.Logger"""

    if level is not None:
        set_logger(level)
    return logging.getLogger(__name__)


def get_logger_level() -> int:
    """return the current logger level

    :return: int, NOTSET (0), DEBUG (10), INFO (20), WARNING (30), ERROR (40), CRITICAL (50)
    :rtype: int"""

    return logging.getLogger().level


LOGGER = get_logger()


def save_object(object_to_save, filepath: str) -> None:
    """Save any object as a pickle file

    :param object_to_save: any object to save as a pickle file
    :type object_to_save: Any
    :param filepath: path describing where to save the file
    :type filepath: str

    :return: None"""
    filepath = os.path.expanduser(filepath)
    LOGGER.info(f'Saving {type(object_to_save)} object in {filepath}')
    with open(filepath, 'wb') as f:
        pickle.dump(object_to_save, f)


def load_object(filepath: str, object_type=None):
    """Load any object from a pickle file.

    :param filepath: full path to the object to load. The file *MUST* be in pickle format
    :type filepath: str
    :param object_type: type of the object, so that the function checks that it has the right type. Default: None
    :type object_type: type

    :return: loaded object, or None if the file doesn't exist or holds an object of the wrong type
    :rtype: Any"""
    filepath = os.path.expanduser(filepath)

    if not os.path.exists(filepath):
        LOGGER.error(f'File {filepath} doesn\'t exist')
        return None

    LOGGER.info(f'Loading {object_type if object_type is not None else ""} object from {filepath}')
    with open(filepath, 'rb') as f:
        loaded_object = pickle.load(f)

    if object_type is not None and not isinstance(loaded_object, object_type):
        LOGGER.error(f'The saved object type {type(loaded_object)} doesnt match the requested type ({object_type})')
        return None

    return loaded_object


########################################################################################################################
# Integer masks
########################################################################################################################

def mask_of(indices: Iterable[int]) -> int:
    """Build an integer mask from element indices.

    :param indices: indices of the elements to set
    :type indices: Iterable[int]

    :return: the mask
    :rtype: int"""
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Iterate over the indices of the bits set in `mask`, in increasing order.

    :param mask: the mask to read
    :type mask: int

    :return: an iterator over the set indices
    :rtype: Iterator[int]"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(mask: int) -> tuple[int, ...]:
    """Indices of the bits set in `mask` as a sorted tuple"""
    return tuple(iter_bits(mask))


def full_mask(n: int) -> int:
    """Mask with the n lowest bits set"""
    return (1 << n) - 1


def canonical_order_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key of the canonical set order: by cardinality, then lexicographically on the sorted indices.

    :param mask: the set to sort
    :type mask: int

    :return: the sort key
    :rtype: tuple[int, tuple[int, ...]]"""
    return mask.bit_count(), bits_of(mask)


def subsets_of_size(mask: int, size: int) -> Iterator[int]:
    """Enumerate the subsets of `mask` with `size` elements, in lexicographic order of their sorted indices.

    :param mask: the set to pick elements from
    :type mask: int
    :param size: number of elements of the subsets
    :type size: int

    :return: iterator over the subset masks
    :rtype: Iterator[int]"""
    for indices in combinations(bits_of(mask), size):
        yield mask_of(indices)


def check_exhaustive(n: int, operation: str, limit: int = EXHAUSTIVE_LIMIT) -> None:
    """Raise a ValueError if a 2^n scan over `n` elements is above the allowed limit.

    :param n: number of elements scanned
    :type n: int
    :param operation: name of the operation, for the error message
    :type operation: str
    :param limit: maximum number of elements. Default: EXHAUSTIVE_LIMIT
    :type limit: int

    :return: None"""
    if n > limit:
        raise ValueError(f'{operation}: ground set of {n} elements is too large for an exhaustive scan (limit {limit})')


########################################################################################################################
# Numpy kernels
########################################################################################################################

_POPCOUNT_8 = np.array([bin(i).count('1') for i in range(256)], dtype=np.int64)


def popcount(values: np.ndarray) -> np.ndarray:
    """Vectorized number of set bits of unsigned 64 bits masks.

    :param values: masks
    :type values: numpy.ndarray

    :return: the number of set bits of each mask
    :rtype: numpy.ndarray"""
    values = np.ascontiguousarray(np.atleast_1d(values), dtype=np.uint64)
    return _POPCOUNT_8[values.view(np.uint8)].reshape(-1, 8).sum(axis=1)


def subset_masks(indices: Iterable[int]) -> np.ndarray:
    """Masks of all the subsets of the given elements. Position `s` of the returned array holds the subset whose j-th
    element is `indices[j]` exactly when bit j of `s` is set, so that a table indexed by local masks can be filled
    from host masks.

    :param indices: host indices of the elements, in local order
    :type indices: Iterable[int]

    :return: array of 2^len(indices) host masks
    :rtype: numpy.ndarray"""
    masks = np.zeros(1, dtype=np.uint64)
    for index in indices:
        masks = np.concatenate([masks, masks | np.uint64(1 << index)])
    return masks


def subset_sizes(n: int) -> np.ndarray:
    """Cardinality of every local mask in [0, 2^n)"""
    return popcount(np.arange(1 << n, dtype=np.uint64))
