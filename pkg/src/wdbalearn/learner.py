"""The weak-DBA learner: transition-system construction from a discrimination
structure, acceptance marking with per-state loop words, conflict resolution,
counterexample analysis and the main loop.

The learner keeps, besides the backend's representative set S and experiment
set E, a loop word g(u) for every state u that lies in a nontrivial SCC of the
current conjecture.  Acceptance of u is decided by the single membership query
MQ(u, g(u)); the same loop words later let counterexample analysis localise
which state a teacher counterexample refutes, which is what guarantees one new
state per failed equivalence query.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal, Optional

from .automata import (
    TransitionSystem,
    Wdba,
    is_weak,
    normalize,
    run,
    scc_decompose,
    shortest_connecting_word,
    shortest_loop_word,
)
from .discrimination import DiscriminationStructure, Experiment
from .table import ObservationTable
from .teacher import Oracle, Teacher
from .tree import ClassificationTree
from .words import EPSILON, Alphabet, Decomposition, Word

BackendKind = Literal["table", "tree"]
SearchMode = Literal["linear", "binary"]


class InvalidCounterexample(ValueError):
    """The prefix chain does not flip: the counterexample violates validity."""


@dataclass
class ConflictReport:
    """Two same-SCC states whose loop words classify oppositely (C1), or one
    state with an accepting and a rejecting loop word (C2)."""

    kind: Literal["C1", "C2"]
    u1: Word
    u2: Optional[Word]
    x: Word
    y: Word


@dataclass
class Conjecture:
    """A built transition system with representative metadata and, once
    marked, the accepting set and loop-word map."""

    ts: TransitionSystem
    reps: tuple[Word, ...]
    state_ids: dict[Word, int]
    accepting: Optional[frozenset[int]] = None
    g: Optional[dict[int, Word]] = None

    def state_of(self, u: Word) -> int:
        return self.state_ids[u]

    def loop_words_by_rep(self) -> dict[Word, Word]:
        assert self.g is not None
        return {self.reps[q]: v for q, v in sorted(self.g.items())}

    def wdba(self, sigma: Alphabet) -> Wdba:
        assert self.accepting is not None, "conjecture not marked yet"
        return Wdba(sigma, self.ts, self.accepting)


@dataclass
class SessionStats:
    states_after_eq: list[int] = field(default_factory=list)
    max_global_k: int = 1
    consistency_fixes: int = 0
    conflicts: int = 0


class LearnerSession:
    """Owns the teacher handle, the backend, the current conjecture and the
    persistent counter of the conflict-resolution loop.  Single-threaded."""

    def __init__(self, teacher: Oracle, backend: DiscriminationStructure,
                 search_mode: SearchMode = "binary",
                 trace: Optional[Callable[[str], None]] = None,
                 debug: bool = False):
        self.teacher = teacher
        self.backend = backend
        self.search_mode: SearchMode = search_mode
        self.trace = trace
        self.debug = debug
        self.global_k = 1
        self.current: Optional[Conjecture] = None
        self.stats = SessionStats()
        if trace is not None and isinstance(teacher, Teacher):
            teacher.trace = trace

    def mq(self, x: Word, y: Word) -> bool:
        return self.teacher.mq(x, y)

    def emit(self, line: str) -> None:
        if self.trace is not None:
            self.trace(line)

    def fmt(self, w: Word) -> str:
        return self.backend.alphabet.format_word(w)

    def _peek(self, x: Word, y: Word) -> bool:
        assert isinstance(self.teacher, Teacher), "debug checks need a concrete teacher"
        return self.teacher.peek(x, y)


def build_ts(backend: DiscriminationStructure) -> Conjecture:
    """One state per member of S, initial state epsilon, successors by
    classifying the one-letter extensions.  Requires a closed backend."""
    states = backend.states()
    ids = {u: i for i, u in enumerate(states)}
    delta = []
    for u in states:
        row = []
        for a in backend.alphabet:
            succ = backend.classify(u + (a,))
            row.append(ids[succ])
        delta.append(tuple(row))
    ts = TransitionSystem(ids[EPSILON], tuple(delta))
    return Conjecture(ts, tuple(states), ids)


def _self_consistency_cex(session: LearnerSession, conj: Conjecture) -> Optional[tuple[Decomposition, int]]:
    """Check state(run(T, q0, u)) = state(u) for every u in S.

    Observation tables with prefix-closed S satisfy this by construction;
    sifted trees may not.  On a mismatch u -> u', the experiment at their
    lowest common ancestor yields the repair counterexample (u.x, y), whose
    refinement chain is guaranteed to flip within the first |u| positions.
    """
    for u in conj.reps:
        reached = conj.reps[run(conj.ts, conj.ts.initial, u)]
        if reached == u:
            continue
        exp = session.backend.separating_experiment(u, reached)
        session.stats.consistency_fixes += 1
        session.emit(f"FIX {session.fmt(u)} classified-as {session.fmt(reached)} exp={exp.format(session.backend.alphabet)}")
        return Decomposition(u + exp.x, exp.y), len(u)
    return None


def _stable_conjecture(session: LearnerSession) -> Conjecture:
    """Close the backend and rebuild until the self-consistency check passes."""
    while True:
        session.backend.ensure_closed()
        conj = build_ts(session.backend)
        fix = _self_consistency_cex(session, conj)
        if fix is None:
            session.current = conj
            return conj
        cex, bound = fix
        refine(session, cex, flip_bound=bound, conjecture=conj)


def mark_acceptance(session: LearnerSession, conj: Conjecture) -> Optional[ConflictReport]:
    """Mark every state of the conjecture, filling accepting/g in place.

    Transient states are rejecting and get no loop word.  Each SCC state u
    gets the shortest (lex-least) return cycle as g(u) and is marked by the
    single query MQ(u, g(u)).  Returns the first conflict found in
    SCC-topological order, if any nontrivial SCC received mixed marks.
    """
    ts = conj.ts
    scc = scc_decompose(ts, frozenset())
    marks: dict[int, bool] = {}
    g: dict[int, Word] = {}
    for q, u in enumerate(conj.reps):
        cid = scc.component_of[q]
        if scc.trivial[cid]:
            session.emit(f"MARK {session.fmt(u)} rej transient")
            continue
        loop = shortest_loop_word(ts, scc.components[cid], q)
        g[q] = loop
        marks[q] = session.mq(u, loop)
        session.emit(f"MARK {session.fmt(u)} {'acc' if marks[q] else 'rej'} loop={session.fmt(loop)}")
    conj.accepting = frozenset(q for q, m in marks.items() if m)
    conj.g = g
    if __debug__:
        for q, loop in g.items():
            assert run(ts, q, loop) == q, "loop word does not return to its state"

    for cid, comp in enumerate(scc.components):
        if scc.trivial[cid]:
            continue
        acc = [q for q in comp if marks[q]]
        rej = [q for q in comp if not marks[q]]
        if acc and rej:
            u1, u2 = conj.reps[acc[0]], conj.reps[rej[0]]
            report = ConflictReport("C1", u1, u2, g[acc[0]], g[rej[0]])
            session.stats.conflicts += 1
            session.emit(
                f"CONFLICT C1 u1={session.fmt(u1)} u2={session.fmt(u2)} "
                f"x={session.fmt(report.x)} y={session.fmt(report.y)}"
            )
            return report
    return None


def resolve_conflict(session: LearnerSession, u: Word, x: Word, y: Word) -> Decomposition:
    """Resolve a same-state conflict: u has loop words x (accepting) and y
    (rejecting).

    Pumps z = y^k.x^k with the session-global counter k: both u.z^(h-1).y^k
    and u.z^h are classified as u by the conjecture, while for large enough k
    one of them provably disagrees with u on x^w resp. y^w.  The counter is
    global across calls, so unsuccessful inner loops amortise over the whole
    session.
    """
    if session.debug:
        assert session._peek(u, x), "precondition: u.x^w must be in the language"
        assert not session._peek(u, y), "precondition: u.y^w must not be in the language"
    while True:
        h = 1
        k = session.global_k
        while h <= k:
            z = y * k + x * k
            m = u + z * (h - 1) + y * k
            if not session.mq(m, x):
                return Decomposition(m, x)
            if session.mq(u + z * h, y):
                return Decomposition(u + z * h, y)
            h += 1
        session.global_k = k = k + 1
        session.stats.max_global_k = max(session.stats.max_global_k, k)


def resolve_conflict_state(session: LearnerSession, u1: Word, u2: Word, x: Word, y: Word) -> Decomposition:
    """Resolve a same-SCC conflict between u1 (accepting via x) and u2
    (rejecting via y).

    Connects u1 -> u2 by z and u2 -> u1 by w (shortest, lex tie-break inside
    the SCC).  If u1.(zw)^w leaves the language we found a rejecting loop at
    u1; if u2.(wz)^w is in the language we found an accepting loop at u2;
    both cases reduce to the single-state conflict.  Otherwise (wz)^w itself
    distinguishes u2 from u1.z and (u1.z, wz) is already a valid
    counterexample.
    """
    conj = session.current
    assert conj is not None
    s1, s2 = conj.state_of(u1), conj.state_of(u2)
    scc = scc_decompose(conj.ts, frozenset())
    cid = scc.component_of[s1]
    assert scc.component_of[s2] == cid, "conflict states must share an SCC"
    if session.debug:
        assert run(conj.ts, s1, x) == s1 and run(conj.ts, s2, y) == s2
        assert session._peek(u1, x) and not session._peek(u2, y), \
            "precondition: u1.x^w in L and u2.y^w not in L"
    comp = scc.components[cid]
    z = shortest_connecting_word(conj.ts, comp, s1, s2)
    w = shortest_connecting_word(conj.ts, comp, s2, s1)
    if not session.mq(u1, z + w):
        session.emit(f"CONFLICT C2 u={session.fmt(u1)} x={session.fmt(x)} y={session.fmt(z + w)}")
        return resolve_conflict(session, u1, x, z + w)
    if session.mq(u2, w + z):
        session.emit(f"CONFLICT C2 u={session.fmt(u2)} x={session.fmt(w + z)} y={session.fmt(y)}")
        return resolve_conflict(session, u2, w + z, y)
    return Decomposition(u1 + z, w + z)


def analyze_cex(session: LearnerSession, witness: Decomposition) -> Decomposition:
    """Turn a teacher counterexample into a valid one.

    Normalizes the witness against the conjecture, so the prefix lands on a
    state u inside the SCC that traps the run.  If u's own answer on the
    period already disagrees with the counterexample's, the normalized pair is
    valid as is; otherwise u carries two loop words with opposite membership,
    a single-state conflict.
    """
    conj = session.current
    assert conj is not None and conj.accepting is not None and conj.g is not None
    x, y = normalize(conj.ts, witness)
    q = run(conj.ts, conj.ts.initial, x)
    u = conj.reps[q]
    assert q in conj.g, "normalized counterexample loops on a transient state"
    v = conj.g[q]
    conjectured = q in conj.accepting  # = member(conjecture, witness)
    if conjectured:
        # negative counterexample: the word is not in L but the conjecture accepts
        if session.mq(u, y):
            return Decomposition(x, y)
        session.emit(f"CONFLICT C2 u={session.fmt(u)} x={session.fmt(v)} y={session.fmt(y)}")
        return resolve_conflict(session, u, v, y)
    else:
        # positive counterexample: the word is in L but the conjecture rejects
        if not session.mq(u, y):
            return Decomposition(x, y)
        session.emit(f"CONFLICT C2 u={session.fmt(u)} x={session.fmt(y)} y={session.fmt(v)}")
        return resolve_conflict(session, u, y, v)


@dataclass
class RefineOutcome:
    new_state: Word
    experiment: Experiment
    split_index: int


def refine(session: LearnerSession, cex: Decomposition, flip_bound: Optional[int] = None,
           conjecture: Optional[Conjecture] = None) -> RefineOutcome:
    """Split one state using a valid counterexample (u, v).

    With x_i the representative of the state reached on u's length-i prefix,
    the answer chain p(i) = MQ(x_i . u[i..], v) starts and ends differently
    (for repair counterexamples the flip is already within `flip_bound`), so
    an adjacent flip p(l) != p(l+1) exists.  The new representative is
    x_l . u[l], separated from x_(l+1) by the new experiment (u[l+1..], v).
    """
    conj = conjecture if conjecture is not None else session.current
    assert conj is not None
    u, v = cex
    k = len(u)
    if k == 0:
        raise InvalidCounterexample("counterexample prefix is empty")
    end = k if flip_bound is None else flip_bound

    xs: list[Word] = []
    q = conj.ts.initial
    xs.append(conj.reps[q])
    for a in u:
        q = conj.ts.delta[q][a]
        xs.append(conj.reps[q])

    answers: dict[int, bool] = {}

    def p(i: int) -> bool:
        if i not in answers:
            answers[i] = session.mq(xs[i] + u[i:], v)
        return answers[i]

    if session.search_mode == "linear":
        first = p(0)
        split = None
        for i in range(1, end + 1):
            if p(i) != first:
                split = i - 1
                break
        if split is None:
            raise InvalidCounterexample("no flip in the refinement chain; counterexample is invalid")
    else:
        if p(0) == p(end):
            raise InvalidCounterexample("chain endpoints agree; counterexample is invalid")
        lo, hi = 0, end
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if p(mid) == p(0):
                lo = mid
            else:
                hi = mid
        split = lo

    new_state = xs[split] + (u[split],)
    old = xs[split + 1]
    exp = Experiment(u[split + 1:], v)
    f_new, f_old = p(split), p(split + 1)
    session.backend.refine_with(old, new_state, exp, f_new, f_old)
    session.emit(f"ADD-STATE {session.fmt(new_state)}")
    session.emit(f"ADD-EXP {exp.format(session.backend.alphabet)}")
    session.emit(f"SPLIT l={split} old={session.fmt(old)} new={session.fmt(new_state)}")
    return RefineOutcome(new_state, exp, split)


@dataclass
class LearnResult:
    automaton: Wdba
    reps: tuple[Word, ...]
    loop_words: dict[Word, Word]
    mq_count: int
    eq_count: int
    stats: SessionStats


def make_backend(kind: BackendKind, teacher: Oracle, sigma: Alphabet) -> DiscriminationStructure:
    if kind == "table":
        return ObservationTable(teacher, sigma)
    if kind == "tree":
        return ClassificationTree(teacher, sigma)
    raise ValueError(f"unknown backend {kind!r}")


def learn(teacher: Oracle, backend: BackendKind = "tree", search_mode: SearchMode = "binary",
          trace: Optional[Callable[[str], None]] = None, debug: bool = False,
          sigma: Optional[Alphabet] = None) -> LearnResult:
    """Learn the minimal weak DBA of the teacher's language.

    Repeats: close the backend, build the transition system (repairing
    classification drift for trees), mark acceptance, resolve conflicts, then
    ask an equivalence query.  Failed queries are analysed into valid
    counterexamples, each of which adds exactly one state, so at most n
    equivalence queries are spent on an n-state target.
    """
    if sigma is None:
        if not isinstance(teacher, Teacher):
            raise ValueError("pass sigma= explicitly for non-automaton oracles")
        sigma = teacher.alphabet
    session = LearnerSession(teacher, make_backend(backend, teacher, sigma), search_mode, trace, debug)
    session.emit(f"ALGO {backend} search={search_mode}")

    while True:
        conj = _stable_conjecture(session)
        conflict = mark_acceptance(session, conj)
        while conflict is not None:
            cex = resolve_conflict_state(session, conflict.u1, conflict.u2, conflict.x, conflict.y)
            refine(session, cex)
            conj = _stable_conjecture(session)
            conflict = mark_acceptance(session, conj)

        hypothesis = conj.wdba(sigma)
        if session.debug:
            _check_conjecture_invariants(session, hypothesis, conj)
        witness = teacher.eq(hypothesis)
        if witness is None:
            counters = teacher.snapshot() if isinstance(teacher, Teacher) else None
            return LearnResult(
                automaton=hypothesis,
                reps=conj.reps,
                loop_words=conj.loop_words_by_rep(),
                mq_count=counters.mq_count if counters else -1,
                eq_count=counters.eq_count if counters else -1,
                stats=session.stats,
            )
        before = session.backend.state_count()
        cex = analyze_cex(session, witness)
        if session.debug:
            tilde = conj.reps[run(conj.ts, conj.ts.initial, cex.prefix)]
            assert session._peek(cex.prefix, cex.period) != session._peek(tilde, cex.period), \
                "refinement input is not a valid counterexample"
        refine(session, cex)
        after = session.backend.state_count()
        if after != before + 1:
            raise AssertionError("refinement must add exactly one state")
        session.stats.states_after_eq.append(after)


def _check_conjecture_invariants(session: LearnerSession, hypothesis: Wdba, conj: Conjecture) -> None:
    assert is_weak(hypothesis), "conjecture is not weak"
    assert conj.g is not None and conj.accepting is not None
    for q, loop in conj.g.items():
        assert session._peek(conj.reps[q], loop) == (q in conj.accepting), \
            "marking disagrees with a fresh oracle answer"
