# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Polynomial rolling hashes for square and palindrome detection.

Two independent hashes are kept side by side. Both moduli are below 2**31 so a
residue times a power always fits a signed 64-bit lane, which lets the word
scanners evaluate every window of a given length in one numpy expression.
A hash match is only ever a candidate: callers confirm it symbol by symbol.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

MODULI = (2147483647, 2147483629)
BASES = (1000003, 999983)


class PrefixHashes:
    """Prefix hash tables of a fixed symbol sequence, one per modulus."""

    def __init__(self, symbols: Sequence[int]):
        self.length = len(symbols)
        self._prefix: List[np.ndarray] = []
        self._powers: List[np.ndarray] = []
        for modulus, base in zip(MODULI, BASES):
            prefix = np.zeros(self.length + 1, dtype=np.int64)
            powers = np.ones(self.length + 1, dtype=np.int64)
            acc, power = 0, 1
            for i, symbol in enumerate(symbols):
                # shift by one so symbol 0 still moves the hash
                acc = (acc * base + symbol + 1) % modulus
                power = power * base % modulus
                prefix[i + 1] = acc
                powers[i + 1] = power
            self._prefix.append(prefix)
            self._powers.append(powers)

    def windows(self, size: int) -> Tuple[np.ndarray, ...]:
        """Hashes of every window of `size` symbols, indexed by window start."""
        count = self.length - size + 1
        if size < 1 or count < 1:
            return tuple(np.zeros(0, dtype=np.int64) for _ in MODULI)
        out = []
        for modulus, prefix, powers in zip(MODULI, self._prefix, self._powers):
            head = prefix[:count]
            tail = prefix[size : size + count]
            out.append((tail - (head * powers[size]) % modulus) % modulus)
        return tuple(out)


class PathHash:
    """Incremental prefix hash of a growing and shrinking symbol stack.

    Used by the path search: `push` on every extension, `pop` on backtrack,
    and `halves_match` to test whether the whole stack may be a square.
    """

    __slots__ = ("_capacity", "_size", "_prefix", "_powers")

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self._capacity = capacity
        self._size = 0
        self._prefix = [[0] * (capacity + 1) for _ in MODULI]
        self._powers = []
        for modulus, base in zip(MODULI, BASES):
            powers = [1] * (capacity + 1)
            for i in range(1, capacity + 1):
                powers[i] = powers[i - 1] * base % modulus
            self._powers.append(powers)

    def __len__(self) -> int:
        return self._size

    def push(self, symbol: int) -> None:
        """Append a symbol to the path."""
        size = self._size
        if size >= self._capacity:
            raise IndexError("path hash is full")
        for j, (modulus, base) in enumerate(zip(MODULI, BASES)):
            prefix = self._prefix[j]
            prefix[size + 1] = (prefix[size] * base + symbol + 1) % modulus
        self._size = size + 1

    def pop(self) -> None:
        """Drop the last symbol."""
        if not self._size:
            raise IndexError("pop from empty path hash")
        self._size -= 1

    def halves_match(self) -> bool:
        """Whether both hashes of the first half equal those of the second half."""
        size = self._size
        if not size or size % 2:
            return False
        half = size // 2
        for modulus, prefix, powers in zip(MODULI, self._prefix, self._powers):
            if (prefix[size] - prefix[half] * powers[half]) % modulus != prefix[half]:
                return False
        return True
