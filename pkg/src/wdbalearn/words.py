"""Alphabets, finite words and lasso decompositions of ultimately periodic words.

Words are tuples of letter indices into an :class:`Alphabet`, so alphabets with
multi-character tokens (or more than 26 letters) work everywhere.  The empty
tuple is the empty word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

Word = tuple[int, ...]

EPSILON: Word = ()


@dataclass(frozen=True)
class Alphabet:
    """An ordered, duplicate-free set of letter tokens."""

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if any(not s for s in self.symbols):
            raise ValueError("alphabet tokens must be non-empty strings")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet tokens must be distinct")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(range(len(self.symbols)))

    def index(self, token: str) -> int:
        try:
            return self._index[token]
        except KeyError:
            raise ValueError(f"unknown letter {token!r}") from None

    def word(self, tokens: Iterable[str]) -> Word:
        """Build a word from an iterable of letter tokens."""
        return tuple(self.index(t) for t in tokens)

    def parse_word(self, text: str) -> Word:
        """Parse a word written as tokens joined by '.'.

        An empty string is the empty word.  For alphabets whose tokens are all
        single characters, an unseparated string like ``"abba"`` is accepted
        as well.
        """
        if text == "":
            return EPSILON
        parts = text.split(".")
        if all(p in self._index for p in parts):
            return tuple(self._index[p] for p in parts)
        if all(len(s) == 1 for s in self.symbols):
            flat = [c for p in parts for c in p]
            if all(c in self._index for c in flat):
                return tuple(self._index[c] for c in flat)
        bad = next(p for p in parts if p not in self._index)
        raise ValueError(f"unknown letter {bad!r} in word {text!r}")

    def format_word(self, word: Word) -> str:
        return ".".join(self.symbols[i] for i in word)


def alphabet(*symbols: str) -> Alphabet:
    return Alphabet(tuple(symbols))


class Decomposition(NamedTuple):
    """A pair (prefix, period) denoting the ultimately periodic word prefix.period^w."""

    prefix: Word
    period: Word

    def check(self) -> "Decomposition":
        if not self.period:
            raise ValueError("decomposition period must be non-empty")
        return self

    def format(self, sigma: Alphabet) -> str:
        return f"{sigma.format_word(self.prefix)}|{sigma.format_word(self.period)}"


def primitive_root(word: Word) -> Word:
    """Shortest w such that word = w^k."""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def canonical_decomposition(d: Decomposition) -> Decomposition:
    """Canonical representative of the ultimately periodic word of d.

    Reduces the period to its primitive root, then folds trailing period
    letters out of the prefix (rotating the period in step), yielding the
    unique shortest-prefix form.  Two decompositions denote the same
    ultimately periodic word iff their canonical forms are equal.
    """
    u, v = d
    v = primitive_root(v)
    while u and u[-1] == v[-1]:
        u = u[:-1]
        v = (v[-1],) + v[:-1]
    return Decomposition(u, v)


def rotations(word: Word) -> list[Word]:
    """All cyclic rotations of a non-empty word, starting with the word itself."""
    return [word[i:] + word[:i] for i in range(len(word))]


def up_word_prefix(d: Decomposition, length: int) -> Word:
    """The first `length` letters of prefix.period^w (used by test oracles)."""
    u, v = d
    if length <= len(u):
        return u[:length]
    need = length - len(u)
    reps = need // len(v) + 1
    return u + (v * reps)[:need]
