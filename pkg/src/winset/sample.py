"""ICE samples: positive/negative words plus implication counterexamples.

A sample is the learner's accumulated knowledge.  A DFA B is consistent with
it iff Pos ⊆ L(B), Neg ∩ L(B) = ∅, and for every implication (u, A):
existential — u ∈ L(B) implies L(B) ∩ L(A) ≠ ∅; universal — u ∈ L(B)
implies L(A) ⊆ L(B).
"""

from dataclasses import dataclass
from functools import lru_cache

from .automata import (
    accepts,
    complement,
    enumerate_finite,
    intersect,
    is_finite,
    shortest_word,
    shortlex_key,
)
from .errors import InternalConsistencyError
from .prop import conj, disj, imp, solve_internal, to_cnf
from .teacher import Existential, Negative, Positive, Universal


@dataclass(frozen=True)
class Sample:
    alphabet: object
    pos: tuple = ()
    neg: tuple = ()
    ex: tuple = ()  # of (word, consequent Nfa)
    uni: tuple = ()

    def size(self):
        return len(self.pos) + len(self.neg) + len(self.ex) + len(self.uni)


def empty_sample(alphabet):
    return Sample(alphabet)


def add(s, cex):
    """Append a counterexample to its set; duplicates leave s unchanged."""
    if isinstance(cex, Positive):
        if cex.word in s.pos:
            return s
        return Sample(s.alphabet, s.pos + (cex.word,), s.neg, s.ex, s.uni)
    if isinstance(cex, Negative):
        if cex.word in s.neg:
            return s
        return Sample(s.alphabet, s.pos, s.neg + (cex.word,), s.ex, s.uni)
    if isinstance(cex, Existential):
        item = (cex.word, cex.consequent)
        if item in s.ex:
            return s
        return Sample(s.alphabet, s.pos, s.neg, s.ex + (item,), s.uni)
    if isinstance(cex, Universal):
        item = (cex.word, cex.consequent)
        if item in s.uni:
            return s
        return Sample(s.alphabet, s.pos, s.neg, s.ex, s.uni + (item,))
    raise InternalConsistencyError(f"not a counterexample: {cex!r}")


@lru_cache(maxsize=None)
def finite_words(a):
    """Enumerated language of a consequent if finite, else None (cached)."""
    if not is_finite(a):
        return None
    return tuple(enumerate_finite(a))


def is_consistent(d, s):
    """(True, None) or (False, (kind, offending item))."""
    for u in s.pos:
        if not accepts(d, u):
            return False, ("pos", u)
    for u in s.neg:
        if accepts(d, u):
            return False, ("neg", u)
    dbar = None
    for (u, a) in s.ex:
        if not accepts(d, u):
            continue
        words = finite_words(a)
        if words is not None:
            if not any(accepts(d, v) for v in words):
                return False, ("ex", (u, a))
        elif shortest_word(intersect(d, a)) is None:
            return False, ("ex", (u, a))
    for (u, a) in s.uni:
        if not accepts(d, u):
            continue
        words = finite_words(a)
        if words is not None:
            if not all(accepts(d, v) for v in words):
                return False, ("uni", (u, a))
        else:
            if dbar is None:
                dbar = complement(d)
            if shortest_word(intersect(a, dbar)) is not None:
                return False, ("uni", (u, a))
    return True, None


def chi(s):
    """The membership formula over the sample's word universe, or None.

    One variable per word; a model is exactly a consistent assignment of
    "in the target language" to every word the sample mentions.  None when
    some consequent language is infinite (the universe would be too).
    """
    consequents = {}
    for (_u, a) in s.ex + s.uni:
        if a not in consequents:
            words = finite_words(a)
            if words is None:
                return None
            consequents[a] = words
    universe = set(s.pos) | set(s.neg)
    universe.update(u for (u, _a) in s.ex)
    universe.update(u for (u, _a) in s.uni)
    for words in consequents.values():
        universe.update(words)
    var = {w: i + 1 for i, w in enumerate(sorted(universe, key=shortlex_key))}
    parts = [var[w] for w in s.pos]
    parts += [-var[w] for w in s.neg]
    for (u, a) in s.ex:
        parts.append(imp(var[u], disj([var[v] for v in consequents[a]])))
    for (u, a) in s.uni:
        parts.append(imp(var[u], conj([var[v] for v in consequents[a]])))
    return conj(parts), var


def check_contradiction(s, solver=None, deadline=None):
    """'consistent' | 'contradictory' | 'unknown' (infinite consequents)."""
    built = chi(s)
    if built is None:
        return "unknown"
    formula, _var = built
    solver = solver or solve_internal
    model = solver(to_cnf(formula), deadline)
    return "consistent" if model is not None else "contradictory"


def dump_sample(s):
    """One line per item: `+ w`, `- w`, `E w -> v1, v2`, `U w -> ...`."""
    text = s.alphabet.text
    lines = [f"+ {text(w)}" for w in s.pos]
    lines += [f"- {text(w)}" for w in s.neg]
    for tag, items in (("E", s.ex), ("U", s.uni)):
        for (u, a) in items:
            words = finite_words(a)
            if words is None:
                rhs = f"<automaton: {a.state_count} states>"
            else:
                rhs = ", ".join(text(v) for v in words)
            lines.append(f"{tag} {text(u)} -> {rhs}")
    return "\n".join(lines)
