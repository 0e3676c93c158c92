"""Deterministic transition systems, weak Buchi automata and lasso membership.

States are dense integer ids; word representatives, when automata come out of
the learner, live in separate metadata and never affect identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .words import Alphabet, Decomposition, Word


class WeaknessError(ValueError):
    """A nontrivial SCC mixes accepting and rejecting states."""


@dataclass(frozen=True)
class TransitionSystem:
    """Complete deterministic transition function over integer states."""

    initial: int
    delta: tuple[tuple[int, ...], ...]  # delta[state][letter] -> state

    def __post_init__(self) -> None:
        n = len(self.delta)
        if n == 0:
            raise ValueError("transition system needs at least one state")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        width = len(self.delta[0])
        for q, row in enumerate(self.delta):
            if len(row) != width:
                raise ValueError(f"state {q}: ragged transition row")
            for a, t in enumerate(row):
                if not 0 <= t < n:
                    raise ValueError(f"transition ({q},{a}) -> {t} out of range")

    @property
    def state_count(self) -> int:
        return len(self.delta)

    @property
    def letter_count(self) -> int:
        return len(self.delta[0])


def run(ts: TransitionSystem, state: int, word: Word) -> int:
    """delta extended to words; run(ts, q, epsilon) = q."""
    delta = ts.delta
    for a in word:
        state = delta[state][a]
    return state


@dataclass
class SccDecomposition:
    """SCCs of a transition system, ids in topological order.

    `accepting[c]` is None for trivial SCCs (no internal cycle) and for
    nontrivial SCCs with mixed acceptance; `mixed` lists the offenders.
    """

    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    trivial: tuple[bool, ...]
    accepting: tuple[Optional[bool], ...]
    mixed: tuple[int, ...]

    @property
    def is_weak(self) -> bool:
        return not self.mixed


def _tarjan(n: int, succ) -> list[list[int]]:
    """Iterative Tarjan; SCCs returned in reverse topological order."""
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 1
    for root in range(n):
        if visited[root]:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                visited[v] = True
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            targets = succ(v)
            for i in range(pi, len(targets)):
                w = targets[i]
                if not visited[w]:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
    return comps


def scc_decompose(ts: TransitionSystem, accepting: frozenset[int] | set[int]) -> SccDecomposition:
    """SCC-decompose and classify every component against an accepting set.

    Nontrivial SCCs are labelled accepting iff they contain an accepting
    state; components mixing accepting and rejecting states are reported in
    `mixed` (a weakness violation).
    """
    n = ts.state_count
    delta = ts.delta
    raw = _tarjan(n, lambda v: delta[v])
    # Tarjan emits sinks first; renumber so component ids are topologically sorted.
    comps = tuple(tuple(sorted(c)) for c in reversed(raw))
    component_of = [0] * n
    for cid, comp in enumerate(comps):
        for q in comp:
            component_of[q] = cid
    trivial = []
    flags: list[Optional[bool]] = []
    mixed = []
    for cid, comp in enumerate(comps):
        is_trivial = len(comp) == 1 and all(delta[comp[0]][a] != comp[0] for a in range(ts.letter_count))
        trivial.append(is_trivial)
        if is_trivial:
            flags.append(None)
            continue
        marks = {q in accepting for q in comp}
        if len(marks) > 1:
            flags.append(None)
            mixed.append(cid)
        else:
            flags.append(marks.pop())
    return SccDecomposition(tuple(component_of), comps, tuple(trivial), tuple(flags), tuple(mixed))


class Wdba:
    """A weak deterministic Buchi automaton: transition system plus accepting set.

    Instances are immutable after construction and safe to share read-only;
    the membership caches below are internal memoisation only.
    """

    __slots__ = ("alphabet", "ts", "accepting", "_scc", "_trap_cache", "_chunk_cache")

    def __init__(self, sigma: Alphabet, ts: TransitionSystem, accepting: frozenset[int]):
        if ts.letter_count != len(sigma):
            raise ValueError("transition arity does not match alphabet size")
        if any(not 0 <= q < ts.state_count for q in accepting):
            raise ValueError("accepting state out of range")
        self.alphabet = sigma
        self.ts = ts
        self.accepting = frozenset(accepting)
        self._scc: Optional[SccDecomposition] = None
        self._trap_cache: dict[Word, list[bool]] = {}
        self._chunk_cache: dict[Word, list[int]] = {}

    @property
    def state_count(self) -> int:
        return self.ts.state_count

    def scc(self) -> SccDecomposition:
        if self._scc is None:
            self._scc = scc_decompose(self.ts, self.accepting)
        return self._scc

    # -- fast membership machinery ------------------------------------------

    def chunk_map(self, word: Word) -> list[int]:
        """state -> run(state, word), cached per word."""
        m = self._chunk_cache.get(word)
        if m is None:
            delta = self.ts.delta
            m = list(range(self.ts.state_count))
            for a in word:
                m = [delta[q][a] for q in m]
            self._chunk_cache[word] = m
        return m

    def trap_acceptance(self, period: Word) -> list[bool]:
        """state -> acceptance of the cycle the run on period^w falls into.

        Sound for weak automata: the period-power cycle stays inside one SCC,
        whose states share a single acceptance flag.
        """
        acc = self._trap_cache.get(period)
        if acc is not None:
            return acc
        f = self.chunk_map(period)
        n = self.ts.state_count
        result: list[Optional[bool]] = [None] * n
        accepting = self.accepting
        for start in range(n):
            if result[start] is not None:
                continue
            path = []
            pos: dict[int, int] = {}
            q = start
            while result[q] is None and q not in pos:
                pos[q] = len(path)
                path.append(q)
                q = f[q]
            if result[q] is not None:
                value = result[q]
            else:
                value = q in accepting  # first repeated state on the cycle
            for p in path:
                result[p] = value
        acc = [bool(v) for v in result]
        self._trap_cache[period] = acc
        return acc


def is_weak(a: Wdba) -> bool:
    """True iff every nontrivial SCC is uniformly accepting or rejecting."""
    return a.scc().is_weak


def member(a: Wdba, d: Decomposition) -> bool:
    """Whether prefix.period^w is in L(a).

    Runs the prefix, then iterates the period map; within state_count+1
    iterations a state repeats, and the run loops inside that state's SCC,
    so the first repeated state's acceptance decides.
    """
    d.check()
    q = run(a.ts, a.ts.initial, d.prefix)
    seen = {q: 0}
    for _ in range(a.state_count + 1):
        q = run(a.ts, q, d.period)
        if q in seen:
            return q in a.accepting
        seen[q] = len(seen)
    raise AssertionError("unreachable: state repeat within state_count+1 period steps")


def member_from(a: Wdba, state: int, d: Decomposition) -> bool:
    """member() for the automaton re-rooted at `state`."""
    d.check()
    q = run(a.ts, state, d.prefix)
    return a.trap_acceptance(d.period)[q]


def normalize(ts: TransitionSystem, d: Decomposition) -> Decomposition:
    """Equivalent decomposition (u', v') with run(q0, u') = run(q0, u'v').

    Pumps the period to the first repeat among the states after u.v^0,
    u.v^1, ...: with the first repeat pair i < j, u' = u.v^i and v' = v^(j-i).
    """
    d.check()
    u, v = d
    q = run(ts, ts.initial, u)
    seen = {q: 0}
    k = 0
    while True:
        q = run(ts, q, v)
        k += 1
        if q in seen:
            i, j = seen[q], k
            return Decomposition(u + v * i, v * (j - i))
        seen[q] = k


def reachable_states(ts: TransitionSystem) -> list[int]:
    """States reachable from the initial state, in BFS discovery order."""
    seen = [False] * ts.state_count
    seen[ts.initial] = True
    order = [ts.initial]
    for q in order:
        for t in ts.delta[q]:
            if not seen[t]:
                seen[t] = True
                order.append(t)
    return order


def shortest_loop_word(ts: TransitionSystem, scc_states: Sequence[int], state: int) -> Word:
    """Shortest (lex-least) non-empty word returning `state` to itself.

    The search is restricted to the given SCC, which any return cycle stays
    inside anyway.
    """
    inside = set(scc_states)
    delta = ts.delta
    letters = range(ts.letter_count)
    parent: dict[int, tuple[int, int]] = {}
    queue: list[int] = []
    for a in letters:
        t = delta[state][a]
        if t == state:
            return (a,)
        if t in inside and t not in parent:
            parent[t] = (-1, a)
            queue.append(t)
    for q in queue:
        for a in letters:
            t = delta[q][a]
            if t == state:
                word = [a]
                p = q
                while p != -1:
                    prev, letter = parent[p]
                    word.append(letter)
                    p = prev
                return tuple(reversed(word))
            if t in inside and t not in parent:
                parent[t] = (q, a)
                queue.append(t)
    raise ValueError(f"state {state} lies on no cycle")


def shortest_connecting_word(ts: TransitionSystem, scc_states: Sequence[int], source: int, target: int) -> Word:
    """Shortest (lex-least) non-empty word from source to target inside one SCC."""
    if source == target:
        return shortest_loop_word(ts, scc_states, source)
    inside = set(scc_states)
    delta = ts.delta
    letters = range(ts.letter_count)
    parent: dict[int, tuple[int, int]] = {source: (-1, -1)}
    queue = [source]
    for q in queue:
        for a in letters:
            t = delta[q][a]
            if t == target:
                word = [a]
                p = q
                while p != source:
                    prev, letter = parent[p]
                    word.append(letter)
                    p = prev
                return tuple(reversed(word))
            if t in inside and t not in parent:
                parent[t] = (q, a)
                queue.append(t)
    raise ValueError(f"no path from {source} to {target} inside the SCC")
