"""Line-oriented text format for weak DBAs.

::

    wdba v1
    alphabet a b
    states 5
    initial 0
    accepting 0 1 2 3
    trans 0 a 0
    ...

'#' starts a comment, blank lines are ignored, and exactly one `trans` line
per (state, letter) pair is required.
"""

from __future__ import annotations

from .automata import TransitionSystem, Wdba
from .words import Alphabet


class AutomatonFormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_automaton(text: str) -> Wdba:
    """Parse the text format; errors carry the offending line number."""
    items = _tokens(text)

    def next_line(expected: str):
        for lineno, parts in items:
            return lineno, parts
        raise AutomatonFormatError(0, f"unexpected end of file, expected {expected}")

    lineno, parts = next_line("header")
    if parts != ["wdba", "v1"]:
        raise AutomatonFormatError(lineno, "expected header 'wdba v1'")

    lineno, parts = next_line("alphabet")
    if parts[0] != "alphabet" or len(parts) < 2:
        raise AutomatonFormatError(lineno, "expected 'alphabet <tok> ...'")
    try:
        sigma = Alphabet(tuple(parts[1:]))
    except ValueError as e:
        raise AutomatonFormatError(lineno, str(e)) from None

    lineno, parts = next_line("states")
    if parts[0] != "states" or len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
        raise AutomatonFormatError(lineno, "expected 'states <N>' with N >= 1")
    n = int(parts[1])

    def state_id(token: str, lineno: int) -> int:
        if not token.isdigit() or int(token) >= n:
            raise AutomatonFormatError(lineno, f"state id {token!r} out of range (states {n})")
        return int(token)

    lineno, parts = next_line("initial")
    if parts[0] != "initial" or len(parts) != 2:
        raise AutomatonFormatError(lineno, "expected 'initial <id>'")
    initial = state_id(parts[1], lineno)

    lineno, parts = next_line("accepting")
    if parts[0] != "accepting":
        raise AutomatonFormatError(lineno, "expected 'accepting <id> ...' (list may be empty)")
    accepting = frozenset(state_id(t, lineno) for t in parts[1:])

    table: dict[tuple[int, int], int] = {}
    last = lineno
    for lineno, parts in items:
        last = lineno
        if parts[0] != "trans" or len(parts) != 4:
            raise AutomatonFormatError(lineno, "expected 'trans <src> <letter> <dst>'")
        src = state_id(parts[1], lineno)
        try:
            letter = sigma.index(parts[2])
        except ValueError as e:
            raise AutomatonFormatError(lineno, str(e)) from None
        dst = state_id(parts[3], lineno)
        if (src, letter) in table:
            raise AutomatonFormatError(lineno, f"duplicate transition for state {src} letter {parts[2]!r}")
        table[(src, letter)] = dst
    for q in range(n):
        for a in range(len(sigma)):
            if (q, a) not in table:
                raise AutomatonFormatError(last, f"missing transition for state {q} letter {sigma.symbols[a]!r}")

    delta = tuple(tuple(table[(q, a)] for a in range(len(sigma))) for q in range(n))
    return Wdba(sigma, TransitionSystem(initial, delta), accepting)


def serialize_automaton(a: Wdba) -> str:
    """Inverse of parse_automaton (round-trips up to comments and spacing)."""
    sigma = a.alphabet
    lines = [
        "wdba v1",
        "alphabet " + " ".join(sigma.symbols),
        f"states {a.state_count}",
        f"initial {a.ts.initial}",
        ("accepting " + " ".join(str(q) for q in sorted(a.accepting))).rstrip(),
    ]
    for q in range(a.state_count):
        for i, sym in enumerate(sigma.symbols):
            lines.append(f"trans {q} {sym} {a.ts.delta[q][i]}")
    return "\n".join(lines) + "\n"


def load_automaton(path: str) -> Wdba:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_automaton(fh.read())


def save_automaton(a: Wdba, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_automaton(a))
