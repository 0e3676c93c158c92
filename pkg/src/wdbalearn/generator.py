"""Seeded random generation of minimal weak DBAs for the benchmark harness.

The construction samples a DAG of strongly connected blocks, wires each block
into a cycle plus random chords, points the remaining transitions forward,
and rejection-samples until the minimized automaton has exactly the requested
state count.  Seeded runs are reproducible bit for bit.
"""

from __future__ import annotations

import hashlib
import random
import string
from dataclasses import dataclass

from .automata import TransitionSystem, Wdba, scc_decompose
from .equivalence import isomorphic, minimize
from .words import Alphabet


def derive_seed(*parts) -> int:
    """Stable 64-bit seed derived from arbitrary labelled parts."""
    text = ":".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def default_alphabet(size: int) -> Alphabet:
    if size < 1:
        raise ValueError("alphabet size must be positive")
    names = []
    letters = string.ascii_lowercase
    for i in range(size):
        name = ""
        j = i
        while True:
            name = letters[j % 26] + name
            j = j // 26 - 1
            if j < 0:
                break
        names.append(name)
    return Alphabet(tuple(names))


@dataclass(frozen=True)
class GenConfig:
    target_states: int
    alphabet_size: int = 2
    scc_min: int = 1
    scc_max: int = 1
    seed: int = 0
    max_attempts: int = 10000

    def __post_init__(self) -> None:
        if self.target_states < 1:
            raise ValueError("target_states must be >= 1")
        if not 1 <= self.scc_min <= self.scc_max:
            raise ValueError("need 1 <= scc_min <= scc_max")


def nontrivial_scc_count(a: Wdba) -> int:
    """Number of SCCs with at least two states.

    A single self-looping state counts only when it is the whole automaton:
    in a minimal weak DBA every multi-state SCC must have an exit (a terminal
    SCC is all-accepting or all-rejecting and collapses to one state), so
    1-state automata are their own loop component.
    """
    if a.state_count == 1:
        return 1
    scc = a.scc()
    return sum(1 for comp in scc.components if len(comp) >= 2)


def random_weak_wdba(rng: random.Random, states: int, sigma: Alphabet) -> Wdba:
    """A random complete weak automaton (not necessarily minimal): random
    transitions, one random acceptance flag per nontrivial SCC."""
    delta = tuple(
        tuple(rng.randrange(states) for _ in sigma) for _ in range(states)
    )
    ts = TransitionSystem(0, delta)
    scc = scc_decompose(ts, frozenset())
    accepting: set[int] = set()
    for cid, comp in enumerate(scc.components):
        if not scc.trivial[cid] and rng.random() < 0.5:
            accepting.update(comp)
    return Wdba(sigma, ts, frozenset(accepting))


def _attempt(rng: random.Random, cfg: GenConfig, sigma: Alphabet) -> Wdba:
    """One candidate: a DAG chain of strongly connected blocks ending in
    self-loop sinks.

    Multi-state blocks must not be terminal (a terminal SCC collapses under
    minimization), so every block gets an escape edge and the DAG ends in one
    accepting and/or one rejecting singleton sink.
    """
    n = cfg.target_states
    letters = list(range(cfg.alphabet_size))
    if n == 1:
        delta = ((0,) * cfg.alphabet_size,)
        accepting = frozenset({0} if rng.random() < 0.5 else set())
        return Wdba(sigma, TransitionSystem(0, delta), accepting)

    k_hi = min(cfg.scc_max, (n - 1) // 2)
    if k_hi < 1:
        raise ValueError(f"no {n}-state minimal weak DBA has a multi-state SCC")
    k_lo = max(1, min(cfg.scc_min, k_hi))
    k = rng.randint(k_lo, k_hi)
    sink_count = 1 if n - 2 * k < 2 else rng.randint(1, 2)

    sizes = [2] * k
    for _ in range(n - 2 * k - sink_count):
        sizes[rng.randrange(k)] += 1
    blocks: list[list[int]] = []
    next_id = 0
    for size in sizes:
        blocks.append(list(range(next_id, next_id + size)))
        next_id += size
    sinks = list(range(next_id, next_id + sink_count))

    # alternating-biased acceptance along the block DAG
    flags = [rng.random() < 0.5]
    for _ in range(k - 1):
        flags.append(not flags[-1] if rng.random() < 0.75 else flags[-1])
    if sink_count == 2:
        sink_flags = [True, False] if rng.random() < 0.5 else [False, True]
    else:
        sink_flags = [rng.random() < 0.5]

    delta: list[list[int]] = [[-1] * cfg.alphabet_size for _ in range(n)]
    for s, flag in zip(sinks, sink_flags):
        for a in letters:
            delta[s][a] = s

    # cycle cover inside each block guarantees strong connectivity
    for block in blocks:
        order = block[:]
        rng.shuffle(order)
        for i, q in enumerate(order):
            delta[q][rng.choice(letters)] = order[(i + 1) % len(order)]

    def free_slots(block):
        return [(q, a) for q in block for a in letters if delta[q][a] == -1]

    # chain edges keep every block reachable; sink edges keep sinks reachable
    # and make every block non-terminal
    for bi in range(k - 1):
        free = free_slots(blocks[bi])
        q, a = free[rng.randrange(len(free))]
        delta[q][a] = rng.choice(blocks[bi + 1])
    for s in sinks:
        free = free_slots(blocks[-1]) or free_slots(blocks[rng.randrange(k)])
        if not free:
            free = [slot for block in blocks for slot in free_slots(block)]
        if not free:
            break  # no room; minimization will reject the candidate
        q, a = free[rng.randrange(len(free))]
        delta[q][a] = s

    # remaining slots: forward-biased chords respecting the DAG order
    for bi, block in enumerate(blocks):
        later = [q for b in blocks[bi + 1:] for q in b] + sinks
        for q in block:
            for a in letters:
                if delta[q][a] != -1:
                    continue
                if rng.random() < 0.4:
                    delta[q][a] = later[rng.randrange(len(later))]
                else:
                    delta[q][a] = block[rng.randrange(len(block))]

    accepting = set()
    for bi, block in enumerate(blocks):
        if flags[bi]:
            accepting.update(block)
    for s, flag in zip(sinks, sink_flags):
        if flag:
            accepting.add(s)
    ts = TransitionSystem(blocks[0][0], tuple(tuple(row) for row in delta))
    return Wdba(sigma, ts, frozenset(accepting))


def gen_random_minimal_wdba(cfg: GenConfig, sigma: Alphabet | None = None) -> Wdba:
    """A minimal weak DBA with exactly cfg.target_states states whose
    cycle-containing SCC count lies in the configured range.

    Rejection sampling: candidates whose minimized form loses states are
    retried with the next derived seed, so the minimality claim is exact
    rather than probabilistic.
    """
    if sigma is None:
        sigma = default_alphabet(cfg.alphabet_size)
    for attempt in range(cfg.max_attempts):
        rng = random.Random(derive_seed(cfg.seed, cfg.target_states, attempt, "gen"))
        try:
            candidate = _attempt(rng, cfg, sigma)
        except ValueError as e:
            raise RuntimeError(f"cannot generate: {e} (config {cfg})") from None
        minimal = minimize(candidate)
        if minimal.state_count != cfg.target_states:
            continue
        count = nontrivial_scc_count(minimal)
        if not cfg.scc_min <= count <= cfg.scc_max:
            continue
        assert isomorphic(minimal, minimize(minimal))
        return minimal
    raise RuntimeError(
        f"gave up generating a minimal wDBA after {cfg.max_attempts} attempts "
        f"(states={cfg.target_states}, alphabet={cfg.alphabet_size}, "
        f"scc range [{cfg.scc_min}, {cfg.scc_max}], seed={cfg.seed})"
    )
