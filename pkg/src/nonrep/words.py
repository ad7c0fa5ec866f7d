# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Square-free and palindrome-free words, and factor detection.

The ternary word T is the fixed point of the morphism a->abc, b->ac, c->b.
The quaternary word T* inserts a fourth letter at every index divisible by 3:

    T*(n) = d                  if n % 3 == 0
    T*(n) = T(n - n // 3)      otherwise

T* has no square factor and no palindrome factor of length at least 2.
Words are indexed from 0; constructions that need negative indices shift them
with an offset instead.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from nonrep.errors import WordError
from nonrep.hashing import PrefixHashes

logger = logging.getLogger(__name__)

THUE_ALPHABET = ("a", "b", "c")
THUE_STAR_ALPHABET = ("a", "b", "c", "d")

# a -> abc, b -> ac, c -> b
_MORPHISM = ((0, 1, 2), (0, 2), (1,))


@dataclass(frozen=True)
class Word:
    """A finite symbol sequence over an ordered alphabet of display labels."""

    symbols: Tuple[int, ...]
    alphabet: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise WordError(f"alphabet labels must be distinct: {self.alphabet}")
        size = len(self.alphabet)
        for symbol in self.symbols:
            if not 0 <= symbol < size:
                raise WordError(f"symbol {symbol} outside alphabet of size {size}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, index: int) -> str:
        return self.alphabet[self.symbols[index]]

    def __str__(self) -> str:
        return "".join(self.alphabet[s] for s in self.symbols)

    @classmethod
    def parse(cls, text: str, alphabet: Optional[Sequence[str]] = None) -> "Word":
        """Read the plain-text form: one single-character label per symbol."""
        text = "".join(text.split())
        labels = tuple(alphabet) if alphabet is not None else tuple(sorted(set(text)))
        index = {label: i for i, label in enumerate(labels)}
        try:
            symbols = tuple(index[ch] for ch in text)
        except KeyError as e:
            raise WordError(f"label {e.args[0]!r} not in alphabet {labels}") from e
        return cls(symbols, labels)


@dataclass(frozen=True)
class FactorLocation:
    """Position of a square or palindrome factor inside a word."""

    start: int
    length: int
    kind: str

    def to_dict(self) -> dict:
        """Plain-dict form for reports."""
        return {"start": self.start, "length": self.length, "kind": self.kind}


def _thue_symbols(length: int) -> List[int]:
    word = [0]
    while len(word) < length:
        word = [image for symbol in word for image in _MORPHISM[symbol]]
    return word[:length]


def generate_thue(length: int, alphabet: Sequence[str] = THUE_ALPHABET) -> Word:
    """Return the first `length` symbols of the square-free ternary word T."""
    if length < 0:
        raise WordError(f"length must be non-negative, got {length}")
    if len(alphabet) != 3:
        raise WordError(f"T needs exactly 3 labels, got {len(alphabet)}")
    return Word(tuple(_thue_symbols(length)), tuple(alphabet))


def generate_thue_star(length: int, alphabet: Sequence[str] = THUE_STAR_ALPHABET) -> Word:
    """Return the first `length` symbols of the palindrome-free word T*.

    The fourth label plays the inserted letter.
    """
    if length < 0:
        raise WordError(f"length must be non-negative, got {length}")
    if len(alphabet) != 4:
        raise WordError(f"T* needs exactly 4 labels, got {len(alphabet)}")
    if not length:
        return Word((), tuple(alphabet))
    base = _thue_symbols(length - (length - 1) // 3)
    symbols = tuple(3 if n % 3 == 0 else base[n - n // 3] for n in range(length))
    return Word(symbols, tuple(alphabet))


def relabel(word: Word, alphabet: Sequence[str]) -> Word:
    """Keep the symbol ids of `word`, display them with new labels."""
    if len(alphabet) != len(word.alphabet):
        raise WordError(
            f"alphabet size mismatch: word has {len(word.alphabet)}, got {len(alphabet)}"
        )
    return Word(word.symbols, tuple(alphabet))


def find_square(word: Word) -> Optional[FactorLocation]:
    """Return the square factor with smallest start, then smallest length."""
    symbols = word.symbols
    size = len(symbols)
    if size < 2:
        return None
    hashes = PrefixHashes(symbols)
    best: Optional[Tuple[int, int]] = None
    for half in range(1, size // 2 + 1):
        windows = hashes.windows(half)
        last = size - 2 * half + 1
        match = np.ones(last, dtype=bool)
        for table in windows:
            match &= table[:last] == table[half : half + last]
        for start in np.flatnonzero(match).tolist():
            if best is not None and start >= best[0]:
                break
            if symbols[start : start + half] == symbols[start + half : start + 2 * half]:
                best = (start, 2 * half)
                break
        if best is not None and best[0] == 0:
            break
    if best is None:
        return None
    logger.debug("square at %s of length %s", *best)
    return FactorLocation(best[0], best[1], "square")


def find_palindrome(word: Word, min_length: int = 2) -> Optional[FactorLocation]:
    """Return the palindrome of length >= `min_length` with smallest start, then length."""
    if min_length < 2:
        raise WordError(f"min_length must be at least 2, got {min_length}")
    symbols = word.symbols
    size = len(symbols)
    forward = PrefixHashes(symbols)
    backward = PrefixHashes(symbols[::-1])
    best: Optional[Tuple[int, int]] = None
    for length in range(min_length, size + 1):
        match = np.ones(size - length + 1, dtype=bool)
        for fwd, bwd in zip(forward.windows(length), backward.windows(length)):
            # window [i, i+length) reversed starts at size-length-i in the reversed word
            match &= fwd == bwd[::-1]
        for start in np.flatnonzero(match).tolist():
            if best is not None and start >= best[0]:
                break
            factor = symbols[start : start + length]
            if factor == factor[::-1]:
                best = (start, length)
                break
        if best is not None and best[0] == 0:
            break
    if best is None:
        return None
    return FactorLocation(best[0], best[1], "palindrome")
