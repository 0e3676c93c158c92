"""Independent oracles the implementation is checked against.

Everything here recomputes results from first principles (letter-by-letter
simulation, exhaustive enumeration) without touching the SCC machinery or the
product construction under test.
"""

from __future__ import annotations

import random
from itertools import product

from wdbalearn.automata import Wdba
from wdbalearn.words import Alphabet, Decomposition, Word


def member_bruteforce(a: Wdba, d: Decomposition) -> bool:
    """Buchi acceptance by unrolling the lasso.

    Runs the prefix, then walks letters of period^w while recording
    (state, offset-in-period) pairs; the first repeated pair closes the
    cycle, and the word is accepted iff the cycle visits an accepting state.
    """
    assert d.period
    q = a.ts.initial
    for c in d.prefix:
        q = a.ts.delta[q][c]
    seen: dict[tuple[int, int], int] = {}
    visited: list[int] = []
    offset = 0
    limit = 2 * a.state_count * len(d.period) + len(d.period) + 1
    for _ in range(limit):
        key = (q, offset)
        if key in seen:
            cycle = visited[seen[key]:]
            return any(s in a.accepting for s in cycle)
        seen[key] = len(visited)
        visited.append(q)
        q = a.ts.delta[q][d.period[offset]]
        offset = (offset + 1) % len(d.period)
    raise AssertionError("no (state, offset) repeat within the unrolling bound")


def blocks_language_member(d: Decomposition) -> bool:
    """Direct decision procedure for (a*.bbb.(a|b))^w + (a*.bbb.(a|b))*.a^w.

    Parses greedily with an explicit block-position tracker; the parse
    position is finite-state, so cycling over (position, period offset)
    decides the infinite word.
    """
    A, B = 0, 1
    pos = "boundary"  # boundary | b1 | b2 | b3 | dead

    def step(pos: str, letter: int) -> str:
        if pos == "dead":
            return "dead"
        if pos == "boundary":
            return "boundary" if letter == A else "b1"
        if pos == "b1":
            return "b2" if letter == B else "dead"
        if pos == "b2":
            return "b3" if letter == B else "dead"
        return "boundary"  # b3: any letter closes the block

    for c in d.prefix:
        pos = step(pos, c)
    seen: dict[tuple[str, int], None] = {}
    trace: list[tuple[str, int]] = []
    offset = 0
    while (pos, offset) not in seen:
        seen[(pos, offset)] = None
        trace.append((pos, offset))
        pos = step(pos, d.period[offset])
        offset = (offset + 1) % len(d.period)
    cycle = trace[trace.index((pos, offset)):]
    positions = {p for p, _ in cycle}
    if "dead" in positions:
        return False
    if positions == {"boundary"}:
        # no block ever completes on the cycle: accepted iff the tail is a^w
        return all(d.period[o] == A for _, o in cycle)
    return True


def all_decompositions(sigma: Alphabet, max_prefix: int, max_period: int) -> list[Decomposition]:
    letters = list(range(len(sigma)))
    prefixes: list[Word] = [()]
    for n in range(1, max_prefix + 1):
        prefixes.extend(tuple(p) for p in product(letters, repeat=n))
    periods: list[Word] = []
    for n in range(1, max_period + 1):
        periods.extend(tuple(p) for p in product(letters, repeat=n))
    return [Decomposition(u, v) for u in prefixes for v in periods]


def language_vector(a: Wdba, decomps: list[Decomposition]) -> tuple[bool, ...]:
    from wdbalearn.automata import member

    return tuple(member(a, d) for d in decomps)


def random_decomposition(rng: random.Random, sigma: Alphabet, max_prefix: int, max_period: int) -> Decomposition:
    letters = len(sigma)
    u = tuple(rng.randrange(letters) for _ in range(rng.randint(0, max_prefix)))
    v = tuple(rng.randrange(letters) for _ in range(rng.randint(1, max_period)))
    return Decomposition(u, v)


def residuals_pairwise_distinct(a: Wdba, decomps: list[Decomposition]) -> bool:
    """Brute-force minimality witness: all states differ on some bounded lasso."""
    from wdbalearn.automata import member_from

    vectors = [tuple(member_from(a, q, d) for d in decomps) for q in range(a.state_count)]
    return len(set(vectors)) == a.state_count
