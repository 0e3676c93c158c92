"""Active learning of weak deterministic Buchi automata.

Learns the canonical minimal weak DBA of an unknown weak omega-regular
language from membership queries about ultimately periodic words and
equivalence queries, with interchangeable observation-table and
classification-tree backends, plus a suffix-column table baseline and a
benchmark harness.
"""

from .automata import (
    SccDecomposition,
    TransitionSystem,
    Wdba,
    WeaknessError,
    is_weak,
    member,
    normalize,
    run,
    scc_decompose,
)
from .discrimination import DiscriminationStructure, Experiment
from .equivalence import equivalent, isomorphic, minimize, product_witness
from .fileformat import AutomatonFormatError, load_automaton, parse_automaton, save_automaton, serialize_automaton
from .generator import GenConfig, gen_random_minimal_wdba, random_weak_wdba
from .learner import LearnResult, LearnerSession, learn
from .mp import mp_learn, suffixes
from .table import ObservationTable
from .teacher import Oracle, QueryCounters, Teacher
from .tree import ClassificationTree
from .words import Alphabet, Decomposition, Word, alphabet, canonical_decomposition

__all__ = [
    "Alphabet",
    "AutomatonFormatError",
    "ClassificationTree",
    "Decomposition",
    "DiscriminationStructure",
    "Experiment",
    "GenConfig",
    "LearnResult",
    "LearnerSession",
    "ObservationTable",
    "Oracle",
    "QueryCounters",
    "SccDecomposition",
    "Teacher",
    "TransitionSystem",
    "Wdba",
    "WeaknessError",
    "Word",
    "alphabet",
    "canonical_decomposition",
    "equivalent",
    "gen_random_minimal_wdba",
    "is_weak",
    "isomorphic",
    "learn",
    "load_automaton",
    "member",
    "minimize",
    "mp_learn",
    "normalize",
    "parse_automaton",
    "product_witness",
    "random_weak_wdba",
    "run",
    "save_automaton",
    "scc_decompose",
    "serialize_automaton",
    "suffixes",
]
