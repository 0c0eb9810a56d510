"""Class that handles subsets of a matroid ground set, stored as a single integer mask"""

from collections.abc import Iterable, Iterator

from pyintertwine.utils import get_logger, mask_of, iter_bits, full_mask, canonical_order_key, MAX_GROUND_SIZE

LOGGER = get_logger()


class ElementSet:
    """
    A subset of a ground set of `ground_size` elements indexed from 0 to ground_size - 1.

    :var mask: integer whose bit i is set when element i belongs to the set
    :vartype mask: int
    :var ground_size: number of elements of the host ground set
    :vartype ground_size: int
    """
    __slots__ = ('mask', 'ground_size')

    def __init__(self, mask: int, ground_size: int):
        """Create a new ElementSet.

        :param mask: membership mask
        :type mask: int
        :param ground_size: size of the host ground set, at most 64
        :type ground_size: int"""
        if ground_size < 0 or ground_size > MAX_GROUND_SIZE:
            raise ValueError(f'ground set size must be between 0 and {MAX_GROUND_SIZE}, got {ground_size}')
        if mask < 0 or mask >> ground_size:
            raise ValueError(f'mask {mask:#x} is not a subset of a ground set of size {ground_size}')
        self.mask = mask
        self.ground_size = ground_size

    @staticmethod
    def from_indices(indices: Iterable[int], ground_size: int):
        """Build a set from element indices.

        :param indices: indices of the members
        :type indices: Iterable[int]
        :param ground_size: size of the host ground set
        :type ground_size: int

        :return: the element set
        :rtype: ElementSet"""
        return ElementSet(mask_of(indices), ground_size)

    @staticmethod
    def empty(ground_size: int):
        """The empty subset of a ground set of size `ground_size`"""
        return ElementSet(0, ground_size)

    @staticmethod
    def full(ground_size: int):
        """The whole ground set of size `ground_size`"""
        return ElementSet(full_mask(ground_size), ground_size)

    def _check_other(self, other) -> int:
        if not isinstance(other, ElementSet):
            raise ValueError(f'expected an ElementSet, got {type(other)}')
        if other.ground_size != self.ground_size:
            raise ValueError(f'element sets over ground sets of different sizes ({self.ground_size} and '
                             f'{other.ground_size})')
        return other.mask

    ####################################################################################################################
    # Set algebra
    ####################################################################################################################

    def __or__(self, other):
        return ElementSet(self.mask | self._check_other(other), self.ground_size)

    def __and__(self, other):
        return ElementSet(self.mask & self._check_other(other), self.ground_size)

    def __sub__(self, other):
        return ElementSet(self.mask & ~self._check_other(other), self.ground_size)

    def __xor__(self, other):
        return ElementSet(self.mask ^ self._check_other(other), self.ground_size)

    def complement(self):
        """Elements of the ground set that are not in this set"""
        return ElementSet(full_mask(self.ground_size) & ~self.mask, self.ground_size)

    def issubset(self, other) -> bool:
        """True if every element of this set belongs to `other`"""
        return self.mask & ~self._check_other(other) == 0

    def isdisjoint(self, other) -> bool:
        """True if this set and `other` share no element"""
        return self.mask & self._check_other(other) == 0

    def __le__(self, other) -> bool:
        return self.issubset(other)

    def __lt__(self, other) -> bool:
        return self.issubset(other) and self.mask != other.mask

    def add(self, index: int):
        """Copy of this set with element `index` added"""
        return ElementSet(self.mask | (1 << index), self.ground_size)

    def remove(self, index: int):
        """Copy of this set with element `index` removed"""
        return ElementSet(self.mask & ~(1 << index), self.ground_size)

    ####################################################################################################################
    # Container protocol
    ####################################################################################################################

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.ground_size and bool(self.mask >> index & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.mask == other.mask and self.ground_size == other.ground_size

    def __hash__(self) -> int:
        return hash((self.mask, self.ground_size))

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Key of the canonical order: cardinality, then the sorted indices"""
        return canonical_order_key(self.mask)

    def indices(self) -> tuple[int, ...]:
        """Members as a sorted tuple of indices"""
        return tuple(iter_bits(self.mask))

    def __str__(self):
        return '{' + ','.join(str(i) for i in self) + '}'

    def __repr__(self):
        return f'ElementSet({self}, n={self.ground_size})'

    def copy(self):
        """Creates a copy of the ElementSet object."""
        return ElementSet(self.mask, self.ground_size)
