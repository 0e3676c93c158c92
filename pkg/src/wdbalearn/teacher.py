"""The oracle: answers membership queries about x.y^w and equivalence queries.

Every query is counted; the counters are what the benchmark harness reports.
Answer caching exists as a measured configuration but is off by default, so
counts match the convention that every query reaches the oracle.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .automata import Wdba, is_weak, run
from .equivalence import Witness, product_witness
from .words import Decomposition, Word, canonical_decomposition


@dataclass
class QueryCounters:
    mq_count: int = 0
    eq_count: int = 0

    @property
    def total(self) -> int:
        return self.mq_count + self.eq_count

    def copy(self) -> "QueryCounters":
        return QueryCounters(self.mq_count, self.eq_count)


class Oracle(ABC):
    """Interface the learner talks to; lets a remote or black-box teacher drop in."""

    @abstractmethod
    def mq(self, x: Word, y: Word) -> bool:
        """Membership of x.y^w in the hidden language."""

    @abstractmethod
    def eq(self, conjecture: Wdba) -> Witness:
        """None if the conjecture is correct, else a differing decomposition."""


class Teacher(Oracle):
    """Oracle wrapping a concrete weak DBA that defines the hidden language.

    One teacher per learning session: the counters are session-scoped
    mutable state.
    """

    def __init__(self, target: Wdba, cache: bool = False,
                 trace: Optional[Callable[[str], None]] = None):
        if not is_weak(target):
            raise ValueError("teacher target must be a weak automaton")
        self.target = target
        self.alphabet = target.alphabet
        self.counters = QueryCounters()
        self.trace = trace
        self._cache: Optional[dict[Decomposition, bool]] = {} if cache else None

    # -- membership -----------------------------------------------------------

    def mq(self, x: Word, y: Word) -> bool:
        if not y:
            raise ValueError("membership query needs a non-empty period")
        if self._cache is not None:
            key = canonical_decomposition(Decomposition(x, y))
            hit = self._cache.get(key)
            if hit is not None:
                return hit  # cache hits are free by configuration
            answer = self._answer(x, y)
            self._cache[key] = answer
        else:
            answer = self._answer(x, y)
        self.counters.mq_count += 1
        if self.trace is not None:
            self.trace(f"MQ {self.alphabet.format_word(x)}|{self.alphabet.format_word(y)} -> {int(answer)}")
        return answer

    def mq_chunks(self, parts: Sequence[Word], y: Word) -> bool:
        """One membership query whose prefix is given in pieces.

        Counts exactly like mq(concat(parts), y); per-piece transition maps
        are memoised on the target, which matters for table-style learners
        that combine a few hundred rows with a few hundred experiment
        prefixes.
        """
        if self._cache is not None or self.trace is not None:
            return self.mq(tuple(c for part in parts for c in part), y)
        if not y:
            raise ValueError("membership query needs a non-empty period")
        q = self.target.ts.initial
        for part in parts:
            if part:
                q = self.target.chunk_map(part)[q]
        answer = self.target.trap_acceptance(y)[q]
        self.counters.mq_count += 1
        return answer

    def _answer(self, x: Word, y: Word) -> bool:
        q = run(self.target.ts, self.target.ts.initial, x)
        return self.target.trap_acceptance(y)[q]

    def peek(self, x: Word, y: Word) -> bool:
        """Uncounted membership check for assertions and tests only."""
        if not y:
            raise ValueError("membership query needs a non-empty period")
        return self._answer(x, y)

    # -- equivalence -----------------------------------------------------------

    def eq(self, conjecture: Wdba) -> Witness:
        if conjecture.alphabet.symbols != self.alphabet.symbols:
            raise ValueError("conjecture alphabet differs from the target's")
        if not is_weak(conjecture):
            raise ValueError("equivalence query requires a weak conjecture")
        self.counters.eq_count += 1
        witness = product_witness(self.target, conjecture)
        if self.trace is not None:
            if witness is None:
                self.trace("EQ -> ok")
            else:
                self.trace(f"EQ -> cex {witness.format(self.alphabet)}")
        return witness

    def snapshot(self) -> QueryCounters:
        return self.counters.copy()
