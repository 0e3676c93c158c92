"""Language equivalence of weak DBAs, counterexample extraction, minimization.

Two weak automata differ iff their synchronized product reaches a nontrivial
SCC whose sides disagree on acceptance: any run trapped there is accepted by
exactly one of the two.  This makes equivalence, witness extraction and
residual-state partitioning all reachability problems on the pair graph.
"""

from __future__ import annotations

from typing import Optional

from .automata import (
    TransitionSystem,
    Wdba,
    WeaknessError,
    _tarjan,
    member,
    member_from,
    reachable_states,
    scc_decompose,
    shortest_loop_word,
)
from .words import Decomposition, Word

Witness = Optional[Decomposition]


def _check_compatible(a: Wdba, b: Wdba) -> None:
    if a.alphabet.symbols != b.alphabet.symbols:
        raise ValueError("automata have different alphabets")
    if not a.scc().is_weak or not b.scc().is_weak:
        raise WeaknessError("equivalence checking requires weak automata")


def product_witness(a: Wdba, b: Wdba) -> Witness:
    """A decomposition on which a and b disagree, or None if equivalent.

    Explores reachable state pairs breadth-first, SCC-decomposes the pair
    graph and looks for a nontrivial pair SCC whose a-side acceptance differs
    from its b-side acceptance.  Sound and complete for weak automata: a pair
    cycle projects into a single SCC on each side.
    """
    _check_compatible(a, b)
    letters = range(len(a.alphabet))
    da, db = a.ts.delta, b.ts.delta

    # depth-first exploration of reachable pairs; the first qualifying pair in
    # discovery order is the witness anchor (no shortest-cex guarantee: the
    # learner tolerates long counterexamples, its baselines pay for them)
    start = (a.ts.initial, b.ts.initial)
    ids: dict[tuple[int, int], int] = {start: 0}
    pairs = [start]
    parent: list[tuple[int, int]] = [(-1, -1)]  # (pair id, letter) DFS tree
    stack = [0]
    succ_map: dict[int, list[int]] = {}
    while stack:
        pid = stack.pop()
        if pid in succ_map:
            continue
        p, q = pairs[pid]
        row = []
        children = []
        for x in letters:
            t = (da[p][x], db[q][x])
            tid = ids.get(t)
            if tid is None:
                tid = len(pairs)
                ids[t] = tid
                pairs.append(t)
                parent.append((pid, x))
                children.append(tid)
            row.append(tid)
        succ_map[pid] = row
        stack.extend(reversed(children))  # explore the first letter deepest-first
    succ = [succ_map[pid] for pid in range(len(pairs))]

    comps = _tarjan(len(pairs), lambda v: succ[v])
    comp_of = [0] * len(pairs)
    for cid, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = cid
    nontrivial = [len(c) > 1 or c[0] in succ[c[0]] for c in comps]

    acc_a, acc_b = a.accepting, b.accepting
    depth = [0] * len(pairs)
    for pid in range(1, len(pairs)):
        depth[pid] = depth[parent[pid][0]] + 1
    mismatch: Optional[int] = None
    for pid in range(len(pairs)):
        cid = comp_of[pid]
        if not nontrivial[cid]:
            continue
        p, q = pairs[pid]
        if (p in acc_a) != (q in acc_b):
            if mismatch is None or depth[pid] > depth[mismatch]:
                mismatch = pid  # deepest qualifying pair, earliest on ties
    if mismatch is None:
        return None

    prefix_rev = []
    v = mismatch
    while parent[v][0] != -1:
        pv, x = parent[v]
        prefix_rev.append(x)
        v = pv
    prefix: Word = tuple(reversed(prefix_rev))

    comp_pairs = [pid for pid in range(len(pairs)) if comp_of[pid] == comp_of[mismatch]]
    period = _pair_loop_word(succ, comp_pairs, mismatch, len(a.alphabet))

    witness = Decomposition(prefix, period)
    assert member(a, witness) != member(b, witness), "product witness failed soundness re-check"
    return witness


def _pair_loop_word(succ: list[list[int]], comp: list[int], start: int, letter_count: int) -> Word:
    """Shortest (lex-least) cycle word through `start` inside its pair SCC."""
    inside = set(comp)
    letters = range(letter_count)
    parent: dict[int, tuple[int, int]] = {}
    queue: list[int] = []
    for x in letters:
        t = succ[start][x]
        if t == start:
            return (x,)
        if t in inside and t not in parent:
            parent[t] = (-1, x)
            queue.append(t)
    for v in queue:
        for x in letters:
            t = succ[v][x]
            if t == start:
                word = [x]
                p = v
                while p != -1:
                    prev, letter = parent[p]
                    word.append(letter)
                    p = prev
                return tuple(reversed(word))
            if t in inside and t not in parent:
                parent[t] = (v, x)
                queue.append(t)
    raise AssertionError("nontrivial SCC without a return cycle")


def equivalent(a: Wdba, b: Wdba) -> bool:
    return product_witness(a, b) is None


def residual_partition(a: Wdba, states: list[int]) -> list[list[int]]:
    """Partition `states` by language equivalence of the re-rooted automata.

    States p, q land in one class iff product_witness(a@p, a@q) would be
    absent.  Computed in one sweep over the self-pair graph: a pair (p, q) is
    inequivalent iff it can reach a nontrivial pair SCC whose sides disagree.
    """
    n = a.state_count
    delta = a.ts.delta
    letters = range(len(a.alphabet))
    total = n * n
    succ = [0] * (total * len(a.alphabet))
    k = len(a.alphabet)
    for p in range(n):
        dp = delta[p]
        base = p * n
        for q in range(n):
            dq = delta[q]
            pid = base + q
            off = pid * k
            for x in letters:
                succ[off + x] = dp[x] * n + dq[x]

    comps = _tarjan(total, lambda v: succ[v * k : v * k + k])
    comp_of = [0] * total
    for cid, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = cid

    acc = [q in a.accepting for q in range(n)]
    bad = [False] * len(comps)
    for cid, comp in enumerate(comps):
        if len(comp) == 1:
            v = comp[0]
            if all(succ[v * k + x] != v for x in letters):
                continue
        p, q = divmod(comp[0], n)
        if acc[p] != acc[q]:
            bad[cid] = True

    # comps come sinks-first, so successors are already resolved when we
    # propagate "can reach a bad SCC" in emission order.
    reach_bad = list(bad)
    for cid, comp in enumerate(comps):
        if reach_bad[cid]:
            continue
        for v in comp:
            off = v * k
            for x in letters:
                if reach_bad[comp_of[succ[off + x]]]:
                    reach_bad[cid] = True
                    break
            if reach_bad[cid]:
                break

    classes: list[list[int]] = []
    for p in states:
        placed = False
        for cls in classes:
            rep = cls[0]
            if not reach_bad[comp_of[rep * n + p]]:
                cls.append(p)
                placed = True
                break
        if not placed:
            classes.append([p])
    return classes


def minimize(a: Wdba) -> Wdba:
    """The canonical minimal weak DBA recognizing L(a).

    Unreachable states are dropped, the rest are merged by residual
    equivalence, and the quotient is re-marked: a quotient state in a
    nontrivial SCC takes the membership of its loop word, transient states
    are rejecting (their acceptance never affects the language).
    """
    if not a.scc().is_weak:
        raise WeaknessError("cannot minimize a non-weak automaton")
    reachable = reachable_states(a.ts)
    classes = residual_partition(a, reachable)
    class_of = {}
    for cid, cls in enumerate(classes):
        for q in cls:
            class_of[q] = cid
    delta = tuple(
        tuple(class_of[a.ts.delta[cls[0]][x]] for x in range(len(a.alphabet)))
        for cls in classes
    )
    ts = TransitionSystem(class_of[a.ts.initial], delta)
    scc = scc_decompose(ts, frozenset())
    accepting = set()
    for cid, comp in enumerate(scc.components):
        if scc.trivial[cid]:
            continue
        state = comp[0]
        loop = shortest_loop_word(ts, comp, state)
        if member_from(a, classes[state][0], Decomposition((), loop)):
            accepting.update(comp)
    return Wdba(a.alphabet, ts, frozenset(accepting))


def isomorphic(a: Wdba, b: Wdba) -> bool:
    """Transition- and acceptance-preserving bijection found by joint BFS."""
    if a.alphabet.symbols != b.alphabet.symbols:
        raise ValueError("automata have different alphabets")
    if a.state_count != b.state_count:
        return False
    fwd: dict[int, int] = {a.ts.initial: b.ts.initial}
    bwd: dict[int, int] = {b.ts.initial: a.ts.initial}
    queue = [(a.ts.initial, b.ts.initial)]
    for p, q in queue:
        if (p in a.accepting) != (q in b.accepting):
            return False
        for x in range(len(a.alphabet)):
            tp, tq = a.ts.delta[p][x], b.ts.delta[q][x]
            mp, mq = fwd.get(tp), bwd.get(tq)
            if mp is None and mq is None:
                fwd[tp] = tq
                bwd[tq] = tp
                queue.append((tp, tq))
            elif mp != tq or mq != tp:
                return False
    return len(fwd) == a.state_count
