"""
bit strings for questions and answers.

A :py:class:`BitString` is immutable and hashable so it can key the observable tables of a
strategy.  Its text form lists bits left to right with position 0 first, e.g. ``"0110"``;
ordering is lexicographic on that text, which for equal lengths is the order of
:py:meth:`BitString.to_int`.
"""
import itertools
from typing import Iterator, Sequence, Tuple, Union

import numpy as np

from .exceptions import BitStringError

__all__ = [ 'BitString', 'all_bitstrings', 'as_bitstring' ]

class BitString(object):
    """
    an ordered, immutable sequence of bits
    """
    __slots__ = ('_bits',)

    def __init__(self, bits: Union[str, Sequence[int]]=()):
        if isinstance(bits, str):
            if any(c not in "01" for c in bits):
                raise BitStringError("Not a bit string: '%s'" % bits)
            bits = tuple(int(c) for c in bits)
        else:
            bits = tuple(int(b) for b in bits)
            if any(b not in (0, 1) for b in bits):
                raise BitStringError("Bit values must be 0 or 1: %s" % str(bits))
        object.__setattr__(self, '_bits', bits)

    def __setattr__(self, name, value):
        raise AttributeError("BitString is immutable")

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls((0,) * n)

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls((1,) * n)

    @classmethod
    def unit(cls, n: int, k: int) -> "BitString":
        """
        return the n-bit string with a single 1 at (0-based) position k
        """
        return cls.zeros(n).flip(k)

    @classmethod
    def from_int(cls, value: int, n: int) -> "BitString":
        """
        return the n-bit string whose binary value (position 0 most significant) is ``value``
        """
        if value < 0 or value >= (1 << n):
            raise BitStringError("%d does not fit in %d bits" % (value, n))
        return cls(tuple((value >> (n - 1 - j)) & 1 for j in range(n)))

    @property
    def bits(self) -> Tuple[int, ...]:
        return self._bits

    def to_int(self) -> int:
        out = 0
        for b in self._bits:
            out = (out << 1) | b
        return out

    def __len__(self):
        return len(self._bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self._bits)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return BitString(self._bits[k])
        return self._bits[k]

    def __str__(self):
        return "".join(str(b) for b in self._bits)

    def __repr__(self):
        return "BitString('%s')" % str(self)

    def __eq__(self, other):
        if not isinstance(other, BitString):
            return NotImplemented
        return self._bits == other._bits

    def __hash__(self):
        return hash(self._bits)

    def __lt__(self, other):
        return str(self) < str(as_bitstring(other))

    def __le__(self, other):
        return str(self) <= str(as_bitstring(other))

    def _check_len(self, other: "BitString"):
        if len(other) != len(self):
            raise BitStringError("Bit string length mismatch: %d vs %d" % (len(self), len(other)))

    def _check_index(self, k: int):
        if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 0 <= k < len(self):
            raise BitStringError("Bit index %s out of range for length %d" % (str(k), len(self)))

    def __xor__(self, other) -> "BitString":
        other = as_bitstring(other)
        self._check_len(other)
        return BitString(tuple(a ^ b for a, b in zip(self._bits, other._bits)))

    def __add__(self, other) -> "BitString":
        """
        concatenate
        """
        return BitString(self._bits + as_bitstring(other)._bits)

    def halves(self) -> Tuple["BitString", "BitString"]:
        """
        return (x_a, x_b), the first and last halves of this string
        :raises BitStringError:  if the length is odd
        """
        if len(self) % 2:
            raise BitStringError("Cannot split odd-length bit string: " + str(self))
        h = len(self) // 2
        return BitString(self._bits[:h]), BitString(self._bits[h:])

    @property
    def a(self) -> "BitString":
        return self.halves()[0]

    @property
    def b(self) -> "BitString":
        return self.halves()[1]

    def dot(self, other) -> int:
        """
        return the inner product sum_j x_j y_j (not reduced modulo 2)
        """
        other = as_bitstring(other)
        self._check_len(other)
        return sum(a & b for a, b in zip(self._bits, other._bits))

    @property
    def weight(self) -> int:
        """
        the Hamming weight
        """
        return sum(self._bits)

    def flip(self, k: int) -> "BitString":
        """
        return this string with bit k (0-based) inverted, i.e. x ⊕ 1_k
        """
        self._check_index(k)
        bits = list(self._bits)
        bits[k] ^= 1
        return BitString(bits)

    def complement(self) -> "BitString":
        return BitString(tuple(1 - b for b in self._bits))

    def support(self) -> Tuple[int, ...]:
        """
        the positions holding a 1
        """
        return tuple(j for j, b in enumerate(self._bits) if b)

def as_bitstring(value) -> BitString:
    if isinstance(value, BitString):
        return value
    return BitString(value)

def all_bitstrings(n: int) -> Iterator[BitString]:
    """
    iterate through all n-bit strings in lexicographic order
    """
    for bits in itertools.product((0, 1), repeat=n):
        yield BitString(bits)
