"""Exact learner: encode "an n-state DFA consistent with the sample exists"
as a propositional formula, solve for increasing n, extract the model DFA.

Variable families (all housed in a VarBook, one per (sample, n) build):

    d_{p,a,q}       transition p --a--> q is chosen
    f_q             state q is accepting
    x_{u,q}         the run on prefix u can sit in q (u in Pref(W), where
                    W = Pos ∪ Neg ∪ antecedents)
    y^i_{q,q'}      joint reachability with the i-th universal consequent
                    automaton (one-directional: reachable implies set)
    z^i_{q,q',l}    exact joint reachability in l steps with the i-th
                    existential consequent, l ≤ k = n·|Q_A| − 1; any word in
                    the intersection is witnessed by one of length ≤ k

All four constraint families share the one x-universe, so a word's run is
encoded once no matter how many sample items mention it.
"""

from .automata import Dfa, shortlex_key
from .errors import CapExceededError, InternalConsistencyError
from .learning import LearnOptions, run_cegis
from .prop import conj, disj, imp, solve_internal, to_cnf


class VarBook:
    """Dense, stable variable numbering for one encoding; ids start at 1.

    Block layout: d-block, f-block, x-block, then per-implication y/z blocks.
    Auxiliary Tseitin variables are allocated above var_count by to_cnf.
    """

    def __init__(self, sample, n):
        self.sample = sample
        self.n = n
        self.alphabet = sample.alphabet
        self.nsym = len(sample.alphabet)
        words = set(sample.pos) | set(sample.neg)
        words.update(u for (u, _a) in sample.ex)
        words.update(u for (u, _a) in sample.uni)
        prefixes = {()}
        for w in words:
            for i in range(len(w) + 1):
                prefixes.add(w[:i])
        self.prefixes = tuple(sorted(prefixes, key=shortlex_key))
        self._pref = {u: i for i, u in enumerate(self.prefixes)}
        self._d0 = 0
        self._f0 = self._d0 + n * self.nsym * n
        self._x0 = self._f0 + n
        cursor = self._x0 + len(self.prefixes) * n
        self._y0 = []
        for (_u, a) in sample.uni:
            self._y0.append(cursor)
            cursor += n * a.state_count
        self._z0 = []
        self._zk = []
        for (_u, a) in sample.ex:
            k = n * a.state_count - 1
            self._z0.append(cursor)
            self._zk.append(k)
            cursor += n * a.state_count * (k + 1)
        self.var_count = cursor

    def d(self, p, a, q):
        return 1 + self._d0 + (p * self.nsym + a) * self.n + q

    def f(self, q):
        return 1 + self._f0 + q

    def x(self, u, q):
        return 1 + self._x0 + self._pref[u] * self.n + q

    def y(self, i, q, qa):
        na = self.sample.uni[i][1].state_count
        return 1 + self._y0[i] + q * na + qa

    def z(self, i, q, qa, l):
        a = self.sample.ex[i][1]
        na = a.state_count
        return 1 + self._z0[i] + (l * self.n + q) * na + qa

    def k(self, i):
        return self._zk[i]


def build_dfa_constraints(book):
    """Determinism (pairwise exclusion) and totality of the d-variables."""
    n, nsym = book.n, book.nsym
    parts = []
    for p in range(n):
        for a in range(nsym):
            for q1 in range(n):
                for q2 in range(n):
                    if q1 != q2:
                        parts.append(disj([-book.d(p, a, q1), -book.d(p, a, q2)]))
            parts.append(disj([book.d(p, a, q) for q in range(n)]))
    return conj(parts)


def build_run_constraints(book):
    """x-variables track the run: rooted at (ε, q0), at most one state per
    prefix, and propagated along chosen transitions."""
    n = book.n
    parts = [book.x((), 0)]
    for u in book.prefixes:
        for q1 in range(n):
            for q2 in range(n):
                if q1 != q2:
                    parts.append(disj([-book.x(u, q1), -book.x(u, q2)]))
    for u in book.prefixes:
        for a in range(book.nsym):
            ua = u + (a,)
            if ua not in book._pref:
                continue
            for p in range(n):
                for q in range(n):
                    parts.append(imp(conj([book.x(u, p), book.d(p, a, q)]), book.x(ua, q)))
    return conj(parts)


def build_pos(book):
    return conj(
        [imp(book.x(u, q), book.f(q)) for u in book.sample.pos for q in range(book.n)]
    )


def build_neg(book):
    return conj(
        [imp(book.x(u, q), -book.f(q)) for u in book.sample.neg for q in range(book.n)]
    )


def _accepts_u(book, u):
    """Gate antecedent: the conjectured DFA accepts u."""
    return disj([conj([book.x(u, q), book.f(q)]) for q in range(book.n)])


def build_uni(book):
    """Universal implications: if u is accepted, every word of the consequent
    automaton must be accepted; y over-approximates joint reachability."""
    n = book.n
    parts = []
    for i, (u, a) in enumerate(book.sample.uni):
        parts.append(book.y(i, 0, a.initial))
        for (pa, sym, qa) in a.transitions:
            for p in range(n):
                for q in range(n):
                    parts.append(
                        imp(conj([book.y(i, p, pa), book.d(p, sym, q)]), book.y(i, q, qa))
                    )
        rhs = conj(
            [imp(book.y(i, q, qa), book.f(q)) for q in range(n) for qa in sorted(a.accepting)]
        )
        parts.append(imp(_accepts_u(book, u), rhs))
    return conj(parts)


def build_ex(book):
    """Existential implications: if u is accepted, the DFA must accept some
    consequent word; z is exact layered joint reachability up to length k."""
    n = book.n
    parts = []
    for i, (u, a) in enumerate(book.sample.ex):
        na = a.state_count
        k = book.k(i)
        for q in range(n):
            for qa in range(na):
                lit = book.z(i, q, qa, 0)
                parts.append(lit if (q == 0 and qa == a.initial) else -lit)
        for l in range(k):
            for (pa, sym, qa) in a.transitions:
                for p in range(n):
                    for q in range(n):
                        parts.append(
                            imp(
                                conj([book.z(i, p, pa, l), book.d(p, sym, q)]),
                                book.z(i, q, qa, l + 1),
                            )
                        )
        into = {}
        for (pa, sym, qa) in a.transitions:
            into.setdefault(qa, []).append((pa, sym))
        for l in range(1, k + 1):
            for q in range(n):
                for qa in range(na):
                    support = [
                        conj([book.d(p, sym, q), book.z(i, p, pa, l - 1)])
                        for (pa, sym) in into.get(qa, ())
                        for p in range(n)
                    ]
                    parts.append(imp(book.z(i, q, qa, l), disj(support)))
        witness = disj(
            [
                conj([book.z(i, q, qa, l), book.f(q)])
                for l in range(k + 1)
                for q in range(n)
                for qa in sorted(a.accepting)
            ]
        )
        parts.append(imp(_accepts_u(book, u), witness))
    return conj(parts)


def build_formula(sample, n):
    """φ_n for the sample; returns (formula, VarBook) for extraction."""
    book = VarBook(sample, n)
    formula = conj(
        [
            build_dfa_constraints(book),
            build_run_constraints(book),
            build_pos(book),
            build_neg(book),
            build_uni(book),
            build_ex(book),
        ]
    )
    return formula, book


def extract_dfa(model, book):
    """Definition-5 readout: delta from d-variables, accepting from f."""
    n = book.n
    delta = []
    for p in range(n):
        row = []
        for a in range(book.nsym):
            hits = [q for q in range(n) if model.get(book.d(p, a, q))]
            if len(hits) != 1:
                raise InternalConsistencyError(
                    f"model picks {len(hits)} targets for delta({p},{a})"
                )
            row.append(hits[0])
        delta.append(tuple(row))
    accepting = frozenset(q for q in range(n) if model.get(book.f(q)))
    return Dfa(book.alphabet, n, tuple(delta), accepting)


def minimal_consistent_dfa(sample, n_cap=32, solver=None, deadline=None, n_start=1):
    """Smallest consistent DFA, by solving φ_1, φ_2, ... until satisfiable."""
    solver = solver or solve_internal
    for n in range(n_start, n_cap + 1):
        formula, book = build_formula(sample, n)
        model = solver(to_cnf(formula, reserve=book.var_count), deadline)
        if model is not None:
            return extract_dfa(model, book)
    raise CapExceededError(n_cap)


def learn(game, opts=None):
    """CEGIS with the exact learner; conjectures are minimal at every step."""
    opts = opts or LearnOptions()
    # A growing sample only adds constraints, so the least satisfiable size
    # never shrinks; resuming the scan there skips settled unsat checks.
    floor = [1]

    def conjecture(s, solver, deadline):
        d = minimal_consistent_dfa(
            s, n_cap=opts.max_states, solver=solver, deadline=deadline,
            n_start=floor[0],
        )
        floor[0] = d.state_count
        return d

    return run_cegis(game, conjecture, "sat", opts)
