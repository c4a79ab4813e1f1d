"""Safety games on automaton-represented graphs: model, file format, finite cuts.

File format (UTF-8, `#` starts a comment):

    [alphabet]
    s e l

    [v0] / [v1] / [safe] / [initial]   -- NFA sections:
    states: 2
    initial: 0
    accepting: 1
    0 s 1
    1 l 1

    [edges]                            -- transducer section, `_` is epsilon:
    states: 5
    initial: 0
    accepting: 1 2 3 4
    0 s/e 1
    1 l/l 1
    1 _/l 2
"""

from dataclasses import dataclass

from .automata import (
    Alphabet,
    EPSILON_MARK,
    Nfa,
    accepts,
    difference,
    enumerate_upto,
    intersect,
    shortest_word,
    shortlex_key,
)
from .errors import GameFormatError, InvalidWordError, InvariantViolation
from .relations import Transducer, successors

SECTIONS = ("alphabet", "v0", "v1", "edges", "safe", "initial")
DFA_SECTIONS = ("alphabet", "dfa")


@dataclass(frozen=True)
class RationalSafetyGame:
    alphabet: Alphabet
    v0: Nfa
    v1: Nfa
    edges: Transducer
    safe: Nfa
    initial: Nfa

    def __post_init__(self):
        for part in (self.v0, self.v1, self.edges, self.safe, self.initial):
            if part.alphabet != self.alphabet:
                raise ValueError("all game components must share one alphabet")


def validate_game(g):
    """Enforce the game invariants, naming the violated one with a witness word."""
    w = shortest_word(intersect(g.v0, g.v1))
    if w is not None:
        raise InvariantViolation("L(v0) and L(v1) disjoint", witness=g.alphabet.text(w))
    w = shortest_word(difference(g.initial, g.safe))
    if w is not None:
        raise InvariantViolation("I included in F", witness=g.alphabet.text(w))
    if shortest_word(g.v0) is None:
        raise InvariantViolation("L(v0) non-empty")
    if shortest_word(g.v1) is None:
        raise InvariantViolation("L(v1) non-empty")
    return g


# ---------------------------------------------------------------- parsing

def _format_error(msg, lineno=None):
    return GameFormatError(msg, line=lineno)


def _split_sections(text, wanted=SECTIONS):
    """Map section name -> list of (lineno, stripped payload line)."""
    found = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in wanted:
                raise _format_error(f"unknown section [{name}]", lineno)
            if name in found:
                raise _format_error(f"duplicate section [{name}]", lineno)
            found[name] = []
            current = name
            continue
        if current is None:
            raise _format_error("content before the first section header", lineno)
        found[current].append((lineno, line))
    for name in wanted:
        if name not in found:
            raise _format_error(f"missing section [{name}]")
    return found


def _parse_header(lines, key, pos):
    if pos >= len(lines):
        raise _format_error(f"expected '{key}:' line")
    lineno, line = lines[pos]
    if not line.startswith(key + ":"):
        raise _format_error(f"expected '{key}:' line, got {line!r}", lineno)
    return lineno, line[len(key) + 1 :].split()


def _parse_int(tok, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise _format_error(f"bad {what} {tok!r}", lineno) from None


def _parse_automaton_body(lines):
    lineno, toks = _parse_header(lines, "states", 0)
    if len(toks) != 1:
        raise _format_error("'states:' takes one number", lineno)
    n = _parse_int(toks[0], lineno, "state count")
    lineno, toks = _parse_header(lines, "initial", 1)
    if len(toks) != 1:
        raise _format_error("'initial:' takes one state", lineno)
    initial = _parse_int(toks[0], lineno, "initial state")
    lineno, toks = _parse_header(lines, "accepting", 2)
    accepting = frozenset(_parse_int(t, lineno, "accepting state") for t in toks)
    return n, initial, accepting, lines[3:]


def _parse_nfa(lines, alphabet):
    n, initial, accepting, rest = _parse_automaton_body(lines)
    trans = set()
    for lineno, line in rest:
        toks = line.split()
        if len(toks) != 3:
            raise _format_error(f"transition needs 'src sym dst', got {line!r}", lineno)
        src = _parse_int(toks[0], lineno, "state")
        dst = _parse_int(toks[2], lineno, "state")
        try:
            sym = alphabet.index(toks[1])
        except InvalidWordError:
            raise _format_error(f"unknown symbol {toks[1]!r}", lineno) from None
        trans.add((src, sym, dst))
    try:
        return Nfa(alphabet, n, initial, frozenset(trans), accepting)
    except ValueError as e:
        raise _format_error(str(e)) from None


def _parse_label(tok, alphabet, lineno):
    if tok == EPSILON_MARK:
        return None
    try:
        return alphabet.index(tok)
    except InvalidWordError:
        raise _format_error(f"unknown symbol {tok!r}", lineno) from None


def _parse_transducer(lines, alphabet):
    n, initial, accepting, rest = _parse_automaton_body(lines)
    trans = set()
    for lineno, line in rest:
        toks = line.split()
        if len(toks) != 3 or toks[1].count("/") != 1:
            raise _format_error(f"edge needs 'src in/out dst', got {line!r}", lineno)
        src = _parse_int(toks[0], lineno, "state")
        dst = _parse_int(toks[2], lineno, "state")
        left, right = toks[1].split("/")
        a = _parse_label(left, alphabet, lineno)
        b = _parse_label(right, alphabet, lineno)
        trans.add((src, a, b, dst))
    try:
        return Transducer(alphabet, n, initial, frozenset(trans), accepting)
    except ValueError as e:
        raise _format_error(str(e)) from None


def parse_game(text):
    """Parse and validate a game file; raises GameFormatError / InvariantViolation."""
    sections = _split_sections(text)
    alphabet = _parse_alphabet_section(sections)
    v0 = _parse_nfa(sections["v0"], alphabet)
    v1 = _parse_nfa(sections["v1"], alphabet)
    edges = _parse_transducer(sections["edges"], alphabet)
    safe = _parse_nfa(sections["safe"], alphabet)
    initial = _parse_nfa(sections["initial"], alphabet)
    return validate_game(RationalSafetyGame(alphabet, v0, v1, edges, safe, initial))


# ------------------------------------------------------------- serializing

def _dump_nfa(out, name, a):
    out.append(f"[{name}]")
    out.append(f"states: {a.state_count}")
    out.append(f"initial: {a.initial}")
    out.append("accepting: " + " ".join(str(q) for q in sorted(a.accepting)))
    for (p, sym, q) in sorted(a.transitions):
        out.append(f"{p} {a.alphabet.symbols[sym]} {q}")
    out.append("")


def _label_text(alphabet, x):
    return EPSILON_MARK if x is None else alphabet.symbols[x]


def serialize_game(g):
    out = ["[alphabet]", " ".join(g.alphabet.symbols), ""]
    _dump_nfa(out, "v0", g.v0)
    _dump_nfa(out, "v1", g.v1)
    out.append("[edges]")
    out.append(f"states: {g.edges.state_count}")
    out.append(f"initial: {g.edges.initial}")
    out.append("accepting: " + " ".join(str(q) for q in sorted(g.edges.accepting)))
    key = lambda tr: (tr[0], -1 if tr[1] is None else tr[1], -1 if tr[2] is None else tr[2], tr[3])
    for (p, a, b, q) in sorted(g.edges.transitions, key=key):
        out.append(f"{p} {_label_text(g.alphabet, a)}/{_label_text(g.alphabet, b)} {q}")
    out.append("")
    _dump_nfa(out, "safe", g.safe)
    _dump_nfa(out, "initial", g.initial)
    return "\n".join(out)


def _parse_alphabet_section(sections):
    tokens = [tok for _lineno, line in sections["alphabet"] for tok in line.split()]
    if not tokens:
        raise _format_error("[alphabet] section is empty")
    try:
        return Alphabet(tuple(tokens))
    except ValueError as e:
        raise _format_error(str(e), sections["alphabet"][0][0]) from None


def serialize_dfa(d):
    """DFA file: an [alphabet] section plus one [dfa] automaton section."""
    out = ["[alphabet]", " ".join(d.alphabet.symbols), ""]
    out.append("[dfa]")
    out.append(f"states: {d.state_count}")
    out.append("initial: 0")
    out.append("accepting: " + " ".join(str(q) for q in sorted(d.accepting)))
    for p, row in enumerate(d.delta):
        for sym, q in enumerate(row):
            out.append(f"{p} {d.alphabet.symbols[sym]} {q}")
    return "\n".join(out)


def parse_dfa(text):
    """Read a [dfa] file back; the automaton must be deterministic and total."""
    from .automata import Dfa

    sections = _split_sections(text, DFA_SECTIONS)
    alphabet = _parse_alphabet_section(sections)
    nfa = _parse_nfa(sections["dfa"], alphabet)
    if nfa.initial != 0:
        raise _format_error("[dfa] initial state must be 0")
    rows = [[None] * len(alphabet) for _ in range(nfa.state_count)]
    for (p, sym, q) in nfa.transitions:
        if rows[p][sym] is not None:
            raise _format_error(
                f"[dfa] is nondeterministic at state {p} on {alphabet.symbols[sym]!r}"
            )
        rows[p][sym] = q
    for p, row in enumerate(rows):
        for sym, q in enumerate(row):
            if q is None:
                raise _format_error(
                    f"[dfa] is missing the transition from state {p} on "
                    f"{alphabet.symbols[sym]!r}"
                )
    return Dfa(alphabet, nfa.state_count, tuple(tuple(r) for r in rows), nfa.accepting)


# ------------------------------------------------------ finite restriction

@dataclass(frozen=True)
class FiniteGame:
    """Explicit cut of a game: all vertex words of bounded length."""

    alphabet: Alphabet
    vertices: tuple  # shortlex-sorted words
    v0: frozenset
    edges: tuple  # sorted (u, v) pairs
    safe: frozenset
    initial: frozenset

    @property
    def v1(self):
        return frozenset(self.vertices) - self.v0


def finite_restriction(g, max_len):
    """Explicit game on the words of length <= max_len in L(v0) ∪ L(v1)."""
    words0 = enumerate_upto(g.v0, max_len)
    words1 = enumerate_upto(g.v1, max_len)
    vertices = sorted(set(words0) | set(words1), key=shortlex_key)
    vset = set(vertices)
    edge_list = []
    for u in vertices:
        for v in enumerate_upto(successors(g.edges, u), max_len):
            if v in vset:
                edge_list.append((u, v))
    safe = frozenset(u for u in vertices if accepts(g.safe, u))
    initial = frozenset(u for u in vertices if accepts(g.initial, u))
    return FiniteGame(
        g.alphabet, tuple(vertices), frozenset(words0), tuple(sorted(edge_list)), safe, initial
    )


def finite_game_dot(fg, name="game"):
    """DOT rendering: circles = Player 0, boxes = Player 1, shading = unsafe."""
    def node_id(u):
        return "v_" + "_".join(str(i) for i in u) if u else "v_eps"

    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for u in fg.vertices:
        shape = "circle" if u in fg.v0 else "box"
        style = ', style=filled, fillcolor="gray80"' if u not in fg.safe else ""
        peri = ", peripheries=2" if u in fg.initial else ""
        label = fg.alphabet.text(u)
        lines.append(f'  {node_id(u)} [shape={shape}, label="{label}"{peri}{style}];')
    for (u, v) in fg.edges:
        lines.append(f"  {node_id(u)} -> {node_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
