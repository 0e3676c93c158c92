"""Observation-table backend: rows S and S.Sigma, omega-experiment columns.

Row contents are bit-packed integers, so "two rows are equal" is an integer
comparison.  Filling is deduplicated within the table at the cell level: a
(row, column) entry is queried once and never refilled.
"""

from __future__ import annotations

from .discrimination import DiscriminationStructure, Experiment
from .teacher import Oracle, Teacher
from .words import EPSILON, Alphabet, Word


class ObservationTable(DiscriminationStructure):
    def __init__(self, teacher: Oracle, sigma: Alphabet):
        self.teacher = teacher
        self.alphabet = sigma
        self._s: list[Word] = [EPSILON]
        self._exps: list[Experiment] = []
        self._rows: dict[Word, int] = {}  # bit i set <=> f(row, E[i])
        self._filled: dict[Word, int] = {}  # how many columns of the row are filled
        self._add_row(EPSILON)
        for a in sigma:
            self._add_row((a,))

    # -- plumbing ---------------------------------------------------------------

    def _ask(self, u: Word, e: Experiment) -> bool:
        if isinstance(self.teacher, Teacher):
            return self.teacher.mq_chunks((u, e.x), e.y)
        return self.teacher.mq(u + e.x, e.y)

    def _add_row(self, u: Word) -> None:
        if u not in self._rows:
            self._rows[u] = 0
            self._filled[u] = 0
        self._fill_row(u)

    def _fill_row(self, u: Word) -> None:
        start = self._filled[u]
        if start == len(self._exps):
            return
        bits = self._rows[u]
        for i in range(start, len(self._exps)):
            if self._ask(u, self._exps[i]):
                bits |= 1 << i
        self._rows[u] = bits
        self._filled[u] = len(self._exps)

    def row(self, u: Word) -> int:
        self._add_row(u)
        return self._rows[u]

    def entry(self, u: Word, e: Experiment) -> bool:
        return bool(self.row(u) >> self._exps.index(e) & 1)

    # -- DiscriminationStructure ------------------------------------------------

    def states(self) -> list[Word]:
        return list(self._s)

    def experiments(self) -> list[Experiment]:
        return list(self._exps)

    def classify(self, u: Word) -> Word:
        bits = self.row(u)
        for s in self._s:
            if self._rows[s] == bits:
                return s
        raise LookupError(f"word has no matching representative; table not closed for it")

    def add_state(self, u: Word) -> None:
        """Append u to S together with its one-letter extension rows."""
        if u in self._s:
            raise ValueError("representative already present")
        self._s.append(u)
        self._add_row(u)
        for a in self.alphabet:
            self._add_row(u + (a,))

    def add_experiment(self, e: Experiment) -> None:
        """Append a column and fill it for every existing row."""
        if e in self._exps:
            raise ValueError("experiment already present")
        self._exps.append(e)
        for u in list(self._rows):
            self._fill_row(u)

    def ensure_closed(self) -> None:
        """Promote unmatched S.Sigma rows (first in row order) until closed."""
        while True:
            s_rows = {self._rows[s] for s in self._s}
            promoted = False
            for u in list(self._s):
                for a in self.alphabet:
                    ua = u + (a,)
                    bits = self.row(ua)
                    if bits not in s_rows:
                        self.add_state(ua)
                        promoted = True
                        break
                if promoted:
                    break
            if not promoted:
                return

    def refine_with(self, old: Word, new_state: Word, exp: Experiment,
                    f_new: bool, f_old: bool) -> None:
        self.add_state(new_state)
        self.add_experiment(exp)
        assert self.entry(new_state, exp) == f_new and self.entry(old, exp) == f_old, \
            "stored refinement entries disagree with the split that produced them"

    def separating_experiment(self, u1: Word, u2: Word) -> Experiment:
        diff = self.row(u1) ^ self.row(u2)
        if not diff:
            raise ValueError("representatives are not separated by any column")
        return self._exps[(diff & -diff).bit_length() - 1]

    # -- diagnostics --------------------------------------------------------------

    def dump(self) -> str:
        """Fixed text layout of the table for golden-file tests."""
        sigma = self.alphabet
        header = "row\\exp | " + " ".join(e.format(sigma) for e in self._exps)
        lines = [header]
        suffix_rows = [u + (a,) for u in self._s for a in sigma if u + (a,) not in self._s]
        for section in (self._s, suffix_rows):
            lines.append("-" * len(header))
            for u in section:
                bits = self.row(u)
                cells = " ".join(str(bits >> i & 1) for i in range(len(self._exps)))
                lines.append(f"{sigma.format_word(u) or 'e'} | {cells}")
        return "\n".join(lines) + "\n"
