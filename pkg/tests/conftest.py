import pytest

from wdbalearn.automata import TransitionSystem, Wdba
from wdbalearn.words import Alphabet

AB = Alphabet(("a", "b"))
A, B = 0, 1


def bbb_blocks_wdba() -> Wdba:
    """Reference automaton for (a*.bbb.(a|b))^w + (a*.bbb.(a|b))*.a^w.

    A word is accepted iff it is an infinite concatenation of blocks, each
    "some a's, then bbb, then one arbitrary letter", or finitely many such
    blocks followed by a^w.  States: 0 block boundary, 1 after b, 2 after bb,
    3 after bbb (awaiting the free letter), 4 dead.
    """
    delta = (
        (0, 1),  # boundary: a stays, b starts a block
        (4, 2),  # "b" seen: a kills the block pattern
        (4, 3),  # "bb" seen
        (0, 0),  # "bbb" seen: any letter closes the block
        (4, 4),  # dead
    )
    return Wdba(AB, TransitionSystem(0, delta), frozenset({0, 1, 2, 3}))


def four_state_conjecture() -> tuple[Wdba, tuple, dict]:
    """The conflict-free four-state stage reached while learning bbb-blocks.

    Representatives in insertion order: e, b, ba, bb.  The loop words found
    by the shortest-cycle search are {e: a, b: bbb, ba: a, bb: bbb} and the
    accepting set is {e, b, bb}.
    """
    w = AB.parse_word
    reps = (w(""), w("b"), w("ba"), w("bb"))
    delta = (
        (0, 1),  # e:  a -> e,  b -> b
        (2, 3),  # b:  a -> ba, b -> bb
        (2, 2),  # ba: sink
        (2, 0),  # bb: a -> ba, b -> e  (bbb still classified as e)
    )
    wdba = Wdba(AB, TransitionSystem(0, delta), frozenset({0, 1, 3}))
    g = {0: w("a"), 1: w("bbb"), 2: w("a"), 3: w("bbb")}
    return wdba, reps, g


def conflicted_ts() -> tuple[TransitionSystem, tuple]:
    """A four-state transition system whose loop-word marking conflicts.

    Representatives e, b, bb, bbb; the shortest loop words come out as
    {e: a, b: a, bb: ab, bbb: abbb}, marking e and bbb accepting but b and
    bb rejecting inside a single SCC.
    """
    w = AB.parse_word
    reps = (w(""), w("b"), w("bb"), w("bbb"))
    delta = (
        (0, 1),  # e
        (1, 2),  # b: a self-loop
        (1, 3),  # bb
        (0, 0),  # bbb
    )
    return TransitionSystem(0, delta), reps


@pytest.fixture
def ab() -> Alphabet:
    return AB


@pytest.fixture
def blocks() -> Wdba:
    return bbb_blocks_wdba()


@pytest.fixture
def blocks_teacher(blocks):
    from wdbalearn.teacher import Teacher

    return Teacher(blocks)
