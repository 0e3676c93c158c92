"""Classification-tree backend.

Internal nodes hold experiments, leaves hold representatives; classifying a
word means sifting it from the root, answering one membership query per
level.  Unlike the table, sift answers are not memoised globally, which keeps
the query discipline comparable between backends.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .discrimination import DiscriminationStructure, Experiment
from .teacher import Oracle, Teacher
from .words import EPSILON, Alphabet, Word


@dataclass
class Leaf:
    word: Word
    parent: Optional["Internal"] = None


@dataclass
class Internal:
    exp: Experiment
    low: Union["Leaf", "Internal", None] = None   # membership answer 0
    high: Union["Leaf", "Internal", None] = None  # membership answer 1
    parent: Optional["Internal"] = None

    def child(self, outcome: bool):
        return self.high if outcome else self.low

    def set_child(self, outcome: bool, node) -> None:
        if outcome:
            self.high = node
        else:
            self.low = node
        node.parent = self


Node = Union[Leaf, Internal]


class ClassificationTree(DiscriminationStructure):
    def __init__(self, teacher: Oracle, sigma: Alphabet):
        self.teacher = teacher
        self.alphabet = sigma
        self.root: Node = Leaf(EPSILON)
        self._order: list[Word] = [EPSILON]  # S in insertion order
        self._leaves: dict[Word, Leaf] = {EPSILON: self.root}
        self._exps: list[Experiment] = []
        # sift outcomes are deterministic, so classifications stay valid until
        # the leaf they landed on is split; then one query at the split node
        # re-places each affected word
        self._classified: dict[Word, Leaf] = {}
        self._at_leaf: dict[int, set[Word]] = {}

    # -- DiscriminationStructure ------------------------------------------------

    def states(self) -> list[Word]:
        return list(self._order)

    def experiments(self) -> list[Experiment]:
        return list(self._exps)

    def classify(self, u: Word) -> Word:
        cached = self._classified.get(u)
        if cached is not None:
            return cached.word
        leaf = self._sift_from(self.root, u)
        self._remember(u, leaf)
        return leaf.word

    def sift(self, u: Word) -> Word:
        """Descend from the root, at each node asking MQ(u.x, y)."""
        return self._sift_from(self.root, u).word

    def _sift_from(self, node: Node, u: Word) -> Leaf:
        while isinstance(node, Internal):
            x, y = node.exp
            if isinstance(self.teacher, Teacher):
                outcome = self.teacher.mq_chunks((u, x), y)
            else:
                outcome = self.teacher.mq(u + x, y)
            node = node.child(outcome)
        return node

    def _remember(self, u: Word, leaf: Leaf) -> None:
        self._classified[u] = leaf
        self._at_leaf.setdefault(id(leaf), set()).add(u)

    def ensure_closed(self) -> None:
        """Sifting always lands on a leaf, so a tree is closed by construction."""

    def refine_with(self, old: Word, new_state: Word, exp: Experiment,
                    f_new: bool, f_old: bool) -> None:
        self.split_leaf(old, new_state, exp, f_new, f_old)

    def split_leaf(self, old: Word, new_state: Word, exp: Experiment,
                   f_new: bool, f_old: bool) -> None:
        """Replace old's leaf by an internal `exp` node over {old, new_state}."""
        if f_new == f_old:
            raise ValueError("experiment does not separate the split pair")
        if new_state in self._leaves:
            raise ValueError("new representative is already a leaf")
        leaf = self._leaves[old]
        parent = leaf.parent
        node = Internal(exp)
        new_leaf = Leaf(new_state)
        node.set_child(f_old, leaf)
        node.set_child(f_new, new_leaf)
        if parent is None:
            self.root = node
            node.parent = None
        else:
            parent.set_child(parent.high is leaf, node)
        self._leaves[new_state] = new_leaf
        self._order.append(new_state)
        if exp not in self._exps:
            self._exps.append(exp)
        # words previously classified at the split leaf take one query at the
        # new node to land on the correct side
        affected = sorted(self._at_leaf.pop(id(leaf), ()))
        for w in affected:
            target = self._sift_from(node, w)
            self._remember(w, target)

    def separating_experiment(self, u1: Word, u2: Word) -> Experiment:
        """The experiment at the lowest common ancestor of the two leaves."""
        anc1 = self._path_nodes(u1)
        node = self._leaves[u2].parent
        while node is not None:
            if id(node) in anc1:
                return node.exp
            node = node.parent
        raise ValueError("representatives share no ancestor; malformed tree")

    def _path_nodes(self, u: Word) -> set[int]:
        ids = set()
        node = self._leaves[u].parent
        while node is not None:
            ids.add(id(node))
            node = node.parent
        return ids

    def path_outcome(self, u: Word, exp: Experiment) -> bool:
        """Stored outcome of `exp` on u's root path (no query)."""
        node: Node = self._leaves[u]
        while node.parent is not None:
            parent = node.parent
            if parent.exp == exp:
                return parent.high is node
            node = parent
        raise ValueError("experiment does not occur on the representative's path")

    # -- diagnostics --------------------------------------------------------------

    def depth(self) -> int:
        def rec_depth(node: Node) -> int:
            if isinstance(node, Leaf):
                return 0
            return 1 + max(rec_depth(node.low), rec_depth(node.high))

        return rec_depth(self.root)

    def to_dot(self) -> str:
        """DOT dump: solid edges for positive answers, dashed for negative."""
        sigma = self.alphabet
        lines = ["digraph classification_tree {"]
        counter = 0
        names: dict[int, str] = {}

        def name(node: Node) -> str:
            nonlocal counter
            if id(node) not in names:
                names[id(node)] = f"n{counter}"
                counter += 1
            return names[id(node)]

        stack: list[Node] = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Leaf):
                label = sigma.format_word(node.word) or "eps"
                lines.append(f'  {name(node)} [shape=box, label="{label}"];')
            else:
                x, y = node.exp
                label = f"({sigma.format_word(x) or 'eps'}, {sigma.format_word(y)})"
                lines.append(f'  {name(node)} [shape=ellipse, label="{label}"];')
                lines.append(f"  {name(node)} -> {name(node.high)};")
                lines.append(f'  {name(node)} -> {name(node.low)} [style=dashed];')
                stack.append(node.low)
                stack.append(node.high)
        lines.append("}")
        return "\n".join(lines) + "\n"
