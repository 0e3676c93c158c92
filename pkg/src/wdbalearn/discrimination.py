"""Backend interface shared by the observation table and the classification tree.

A discrimination structure maintains the representative set S (always
containing the empty word), the experiment set E of lasso-shaped words, and
the classification function f(u, (x, y)) = MQ(u.x, y).  Any two stored
representatives are separated by some experiment.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import NamedTuple

from .words import Alphabet, Word


class Experiment(NamedTuple):
    """An omega-experiment: the word x.y^w used to distinguish representatives."""

    x: Word
    y: Word

    def format(self, sigma: Alphabet) -> str:
        return f"{sigma.format_word(self.x)}|{sigma.format_word(self.y)}"


class DiscriminationStructure(ABC):
    """Houses S, E and f; realized by ObservationTable and ClassificationTree."""

    alphabet: Alphabet

    @abstractmethod
    def states(self) -> list[Word]:
        """The representative words S, in insertion order; S[0] is the empty word."""

    @abstractmethod
    def experiments(self) -> list[Experiment]:
        """The experiments E, in insertion order."""

    @abstractmethod
    def classify(self, u: Word) -> Word:
        """The member of S equivalent to u under the current experiments.

        May ask membership queries.  Total on S and S.Sigma once
        ensure_closed() has run.
        """

    @abstractmethod
    def ensure_closed(self) -> None:
        """Ask queries (and possibly promote representatives) until classify
        is total on S.Sigma."""

    @abstractmethod
    def refine_with(self, old: Word, new_state: Word, exp: Experiment,
                    f_new: bool, f_old: bool) -> None:
        """Add `new_state` to S and `exp` to E.

        `exp` separates the new representative from `old`, the member of S
        that previously absorbed it: f(new_state, exp) = f_new differs from
        f(old, exp) = f_old.
        """

    @abstractmethod
    def separating_experiment(self, u1: Word, u2: Word) -> Experiment:
        """A stored experiment on which the two representatives differ."""

    def state_count(self) -> int:
        return len(self.states())
