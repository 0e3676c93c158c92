"""Observation-table learner in the style of the classic L^omega algorithm,
used as a query-count baseline.

Differences from the main learner: no per-state loop words are kept.  The
table starts with one column per letter, acceptance is marked by replaying
every (row, column) lasso through the conjectured transition system, SCCs no
table word touches default to rejecting, and each teacher counterexample
contributes its whole suffix closure (prefix suffixes plus period rotations)
as new columns.  Marking conflicts are reduced to the same conflict
resolution procedures as the main learner; the resulting counterexample is
then treated exactly like a teacher one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .automata import TransitionSystem, Wdba, run, scc_decompose
from .discrimination import Experiment
from .learner import (
    Conjecture,
    LearnResult,
    LearnerSession,
    resolve_conflict,
    resolve_conflict_state,
)
from .teacher import Teacher
from .words import EPSILON, Alphabet, Decomposition, Word, canonical_decomposition, rotations


def suffixes(d: Decomposition) -> list[Decomposition]:
    """Suffix closure of an ultimately periodic word, as canonical decompositions.

    Dropping letters inside the prefix yields (u[i..], v); dropping into the
    period yields the rotations (eps, v').  Canonicalization folds trailing
    period copies out of prefixes and reduces periods to their primitive
    roots, so e.g. the chain member (aa, a) collapses to (eps, a).
    """
    d.check()
    u, v = d
    out: list[Decomposition] = []
    seen = set()
    for i in range(len(u) + 1):
        c = canonical_decomposition(Decomposition(u[i:], v))
        if c not in seen:
            seen.add(c)
            out.append(c)
    for rot in rotations(v):
        c = canonical_decomposition(Decomposition(EPSILON, rot))
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


class MpTable:
    """Rows S and S.Sigma, entries (u, (x, y)) = MQ(u.x, y), no deduplication:
    each cell fill is one oracle query, as in the original table discipline."""

    def __init__(self, teacher: Teacher, sigma: Alphabet):
        self.teacher = teacher
        self.alphabet = sigma
        self._s: list[Word] = [EPSILON]
        self._exps: list[Experiment] = []
        self._rows: dict[Word, int] = {EPSILON: 0}
        self._filled: dict[Word, int] = {EPSILON: 0}
        for a in sigma:
            self._rows[(a,)] = 0
            self._filled[(a,)] = 0
        for a in sigma:
            self.add_column(Experiment(EPSILON, (a,)))

    def states(self) -> list[Word]:
        return list(self._s)

    def experiments(self) -> list[Experiment]:
        return list(self._exps)

    def _fill_row(self, u: Word) -> None:
        bits = self._rows[u]
        for i in range(self._filled[u], len(self._exps)):
            x, y = self._exps[i]
            if self.teacher.mq_chunks((u, x), y):
                bits |= 1 << i
        self._rows[u] = bits
        self._filled[u] = len(self._exps)

    def row(self, u: Word) -> int:
        if u not in self._rows:
            self._rows[u] = 0
            self._filled[u] = 0
        self._fill_row(u)
        return self._rows[u]

    def entry_bit(self, u: Word, col_index: int) -> bool:
        return bool(self.row(u) >> col_index & 1)

    def add_column(self, e: Experiment) -> bool:
        if e in self._exps:
            return False
        self._exps.append(e)
        for u in list(self._rows):
            self._fill_row(u)
        return True

    def add_suffix_columns(self, d: Decomposition) -> int:
        added = 0
        for c in suffixes(d):
            if self.add_column(Experiment(c.prefix, c.period)):
                added += 1
        return added

    def promote(self, u: Word) -> None:
        self._s.append(u)
        self.row(u)
        for a in self.alphabet:
            self.row(u + (a,))

    def make_closed_consistent(self) -> None:
        while True:
            s_rows = {self.row(s) for s in self._s}
            promoted = False
            for u in list(self._s):
                for a in self.alphabet:
                    if self.row(u + (a,)) not in s_rows:
                        self.promote(u + (a,))
                        promoted = True
                        break
                if promoted:
                    break
            if promoted:
                continue
            if self._repair_consistency():
                continue
            return

    def _repair_consistency(self) -> bool:
        # S rows stay pairwise distinct under promotion-only growth, so this
        # Angluin-style repair is a safety net rather than a working path.
        for i, u1 in enumerate(self._s):
            for u2 in self._s[i + 1:]:
                if self.row(u1) != self.row(u2):
                    continue
                for a in self.alphabet:
                    diff = self.row(u1 + (a,)) ^ self.row(u2 + (a,))
                    if diff:
                        idx = (diff & -diff).bit_length() - 1
                        x, y = self._exps[idx]
                        self.add_column(
                            Experiment(*canonical_decomposition(Decomposition((a,) + x, y)))
                        )
                        return True
        return False

    def build_conjecture(self) -> Conjecture:
        ids = {self.row(s): i for i, s in enumerate(self._s)}
        delta = tuple(
            tuple(ids[self.row(s + (a,))] for a in self.alphabet)
            for s in self._s
        )
        ts = TransitionSystem(0, delta)
        conj = Conjecture(ts, tuple(self._s), {s: i for i, s in enumerate(self._s)})
        for i, s in enumerate(self._s):
            if run(ts, 0, s) != i:
                raise AssertionError("table representative drifted from its state")
        return conj


@dataclass
class _LassoInfo:
    entry_state: int  # first state on the period-power cycle
    steps: int        # periods consumed before entering the cycle
    length: int       # cycle length in periods


def _period_analysis(delta_np: np.ndarray, y: Word) -> list[_LassoInfo]:
    """Per start state: where the run on y^w falls into a cycle."""
    n = delta_np.shape[0]
    f = np.arange(n)
    for a in y:
        f = delta_np[f, a]
    f_list = f.tolist()
    info: list[Optional[_LassoInfo]] = [None] * n
    for start in range(n):
        if info[start] is not None:
            continue
        path: list[int] = []
        pos: dict[int, int] = {}
        q = start
        while info[q] is None and q not in pos:
            pos[q] = len(path)
            path.append(q)
            q = f_list[q]
        if info[q] is not None:
            known = info[q]
            for i, p in enumerate(path):
                info[p] = _LassoInfo(known.entry_state, known.steps + len(path) - i, known.length)
        else:
            cycle_start = pos[q]
            length = len(path) - cycle_start
            for i, p in enumerate(path):
                if i >= cycle_start:
                    info[p] = _LassoInfo(p, 0, length)
                else:
                    info[p] = _LassoInfo(q, cycle_start - i, length)
    assert all(x is not None for x in info)
    return info  # type: ignore[return-value]


def mp_learn(teacher: Teacher, trace: Optional[Callable[[str], None]] = None,
             debug: bool = False, max_rounds: int = 100000) -> LearnResult:
    """Learn the target language with the suffix-column table method."""
    sigma = teacher.alphabet
    table = MpTable(teacher, sigma)
    session = LearnerSession(teacher, table, "linear", trace, debug)  # type: ignore[arg-type]
    session.emit("ALGO mp")

    last_fingerprint = None
    for _ in range(max_rounds):
        table.make_closed_consistent()
        conj = table.build_conjecture()
        session.current = conj
        n = conj.ts.state_count
        scc = scc_decompose(conj.ts, frozenset())
        delta_np = np.array(conj.ts.delta, dtype=np.int64)

        # Replay every (row, column) lasso; S.Sigma rows match an S row
        # vector and land on the same state, so S rows cover all marks.
        marks: dict[int, dict[bool, tuple[Word, Word, int]]] = {}
        for ci, (x, y) in enumerate(table.experiments()):
            vec = np.arange(n)
            for a in x:
                vec = delta_np[vec, a]
            after_x = vec.tolist()
            lasso = _period_analysis(delta_np, y)
            for si, s_word in enumerate(table.states()):
                p = after_x[si]
                li = lasso[p]
                cid = scc.component_of[li.entry_state]
                bit = table.entry_bit(s_word, ci)
                per_scc = marks.setdefault(cid, {})
                if bit not in per_scc:
                    prefix = s_word + x + y * li.steps
                    per_scc[bit] = (prefix, y * max(li.length, 1), li.entry_state)

        conflict_cid = None
        for cid in range(len(scc.components)):
            if len(marks.get(cid, {})) == 2:
                conflict_cid = cid
                break

        if conflict_cid is not None:
            cex = _resolve_mark_conflict(session, conj, marks[conflict_cid])
            table.add_suffix_columns(cex)
            continue

        accepting = set()
        for cid, comp in enumerate(scc.components):
            if marks.get(cid, {}).get(True) is not None and not scc.trivial[cid]:
                accepting.update(comp)
        hypothesis = Wdba(sigma, conj.ts, frozenset(accepting))
        witness = teacher.eq(hypothesis)
        if witness is None:
            counters = teacher.snapshot()
            return LearnResult(
                automaton=hypothesis,
                reps=conj.reps,
                loop_words={},
                mq_count=counters.mq_count,
                eq_count=counters.eq_count,
                stats=session.stats,
            )
        fingerprint = (len(table.states()), len(table.experiments()), conj.ts.delta, frozenset(accepting))
        added = table.add_suffix_columns(witness)
        if fingerprint == last_fingerprint and added == 0:
            raise RuntimeError("table learner stalled: counterexample added no information")
        last_fingerprint = fingerprint
    raise RuntimeError("table learner exceeded the round budget")


def _resolve_mark_conflict(session: LearnerSession, conj: Conjecture,
                           pair: dict[bool, tuple[Word, Word, int]]) -> Decomposition:
    """Reduce an SCC with both marks to a counterexample for the suffix treatment.

    Each witness is first re-anchored at its state's representative word; if
    the representative answers differently, the witness prefix itself refutes
    the classification and already is the counterexample.
    """
    anchored = {}
    for bit in (True, False):
        prefix, loop, state = pair[bit]
        rep = conj.reps[state]
        if session.mq(rep, loop) != bit:
            return Decomposition(prefix, loop)
        anchored[bit] = (rep, loop, state)
    rep1, v1, s1 = anchored[True]
    rep2, v2, s2 = anchored[False]
    if s1 == s2:
        return resolve_conflict(session, rep1, v1, v2)
    return resolve_conflict_state(session, rep1, rep2, v1, v2)
