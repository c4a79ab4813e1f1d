"""Learning regular winning sets for safety games on infinite graphs.

Vertices are finite words, vertex sets are regular languages, and the edge
relation is given by a transducer.  A teacher refutes wrong conjectures with
counterexamples; two learners (a minimal-DFA SAT learner and a state-merging
heuristic) grow consistent hypotheses until one is a winning set.
"""

from .automata import Alphabet, Dfa, Nfa
from .benchmarks import BenchmarkSpec, generate_benchmark
from .errors import WinsetError
from .game import RationalSafetyGame, parse_game, serialize_game
from .learning import LearnOptions, LearnResult
from .relations import Transducer
from .rpni import learn_rpni
from .sample import Sample, empty_sample
from .satlearn import learn as learn_sat
from .teacher import Existential, Negative, Positive, Universal, query

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BenchmarkSpec",
    "Dfa",
    "Existential",
    "LearnOptions",
    "LearnResult",
    "Negative",
    "Nfa",
    "Positive",
    "RationalSafetyGame",
    "Sample",
    "Transducer",
    "Universal",
    "WinsetError",
    "empty_sample",
    "generate_benchmark",
    "learn_rpni",
    "learn_sat",
    "parse_game",
    "query",
    "serialize_game",
    "__version__",
]
