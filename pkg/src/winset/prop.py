"""Propositional formulas, CNF conversion, and satisfiability backends.

A formula is a nested structure over positive integer variables:

    5                  variable (a negative int is its negation)
    ("and", (f, ...))  conjunction   -- empty means true
    ("or", (f, ...))   disjunction   -- empty means false
    ("not", f)
    ("imp", f, g)

`to_cnf` keeps original variable ids and introduces auxiliary variables above
them (polarity-aware Tseitin); structurally equal subformulas share one
auxiliary variable.  The default backend is a small CDCL solver (two-watched
literals, VSIDS, first-UIP learning, phase saving, Luby restarts); it is
fully deterministic.  An external solver can be plugged in through the
DIMACS text format.
"""

import heapq
import subprocess
import tempfile
import time
from dataclasses import dataclass, field

from .errors import ExternalSolverError, SolveTimeout

TRUE = ("true",)
FALSE = ("false",)


def conj(parts):
    return ("and", tuple(parts))


def disj(parts):
    return ("or", tuple(parts))


def imp(a, b):
    return ("imp", a, b)


def neg(f):
    return ("not", f)


def normalize(f):
    """Constant-fold, flatten nested and/or, dedup children, tuple-ize."""
    if isinstance(f, int):
        if f == 0:
            raise ValueError("0 is not a variable")
        return f
    tag = f[0]
    if tag in ("true", "false"):
        return (tag,)
    if tag == "not":
        sub = normalize(f[1])
        if sub == TRUE:
            return FALSE
        if sub == FALSE:
            return TRUE
        if isinstance(sub, int):
            return -sub
        if sub[0] == "not":
            return sub[1]
        return ("not", sub)
    if tag == "imp":
        a, b = normalize(f[1]), normalize(f[2])
        if a == FALSE or b == TRUE:
            return TRUE
        if a == TRUE:
            return b
        if b == FALSE:
            return normalize(("not", a))
        return ("imp", a, b)
    if tag in ("and", "or"):
        absorbing, neutral = (FALSE, TRUE) if tag == "and" else (TRUE, FALSE)
        kids = []
        for g in f[1]:
            gn = normalize(g)
            if gn == neutral:
                continue
            if gn == absorbing:
                return absorbing
            if isinstance(gn, tuple) and gn[0] == tag:
                kids.extend(gn[1])
            else:
                kids.append(gn)
        kids = tuple(dict.fromkeys(kids))
        if not kids:
            return neutral
        if len(kids) == 1:
            return kids[0]
        return (tag, kids)
    raise ValueError(f"bad formula node {f!r}")


def eval_formula(f, model):
    """Evaluate under `model` (dict var -> bool; missing vars are false)."""
    if isinstance(f, int):
        v = model.get(abs(f), False)
        return v if f > 0 else not v
    tag = f[0]
    if tag == "true":
        return True
    if tag == "false":
        return False
    if tag == "not":
        return not eval_formula(f[1], model)
    if tag == "imp":
        return (not eval_formula(f[1], model)) or eval_formula(f[2], model)
    if tag == "and":
        return all(eval_formula(g, model) for g in f[1])
    if tag == "or":
        return any(eval_formula(g, model) for g in f[1])
    raise ValueError(f"bad formula node {f!r}")


def formula_vars(f, out=None):
    if out is None:
        out = set()
    if isinstance(f, int):
        out.add(abs(f))
    elif f[0] == "not":
        formula_vars(f[1], out)
    elif f[0] == "imp":
        formula_vars(f[1], out)
        formula_vars(f[2], out)
    elif f[0] in ("and", "or"):
        for g in f[1]:
            formula_vars(g, out)
    return out


@dataclass
class CnfInstance:
    var_count: int
    clauses: list = field(default_factory=list)


def _clause_fast_path(node):
    """Return the clause for nodes that already are one, else None."""
    if isinstance(node, int):
        return [node]
    tag = node[0]
    if tag == "or" and all(isinstance(k, int) for k in node[1]):
        return list(node[1])
    if tag == "imp":
        lhs, rhs = node[1], node[2]
        if isinstance(lhs, int):
            left = [-lhs]
        elif lhs[0] == "and" and all(isinstance(k, int) for k in lhs[1]):
            left = [-k for k in lhs[1]]
        else:
            return None
        if isinstance(rhs, int):
            right = [rhs]
        elif rhs[0] == "or" and all(isinstance(k, int) for k in rhs[1]):
            right = list(rhs[1])
        else:
            return None
        return left + right
    return None


def to_cnf(f, reserve=0):
    """Equisatisfiable CNF; source variables keep their ids, auxiliaries go above.

    `reserve` bumps the variable count floor so callers can pre-allocate ids.
    """
    nf = normalize(f)
    nv = max(reserve, max(formula_vars(nf), default=0))
    cnf = CnfInstance(nv)
    if nf == TRUE:
        return cnf
    if nf == FALSE:
        cnf.clauses.append([])
        return cnf
    aux_of = {}
    emitted = set()

    def lit_for(node, pol):
        if isinstance(node, int):
            return node
        if node[0] == "not":
            return -lit_for(node[1], -pol)
        if node not in aux_of:
            cnf.var_count += 1
            aux_of[node] = cnf.var_count
        v = aux_of[node]
        if (node, pol) in emitted:
            return v
        emitted.add((node, pol))
        if node[0] == "and":
            signed = [(1, k) for k in node[1]]
            is_and = True
        elif node[0] == "or":
            signed = [(1, k) for k in node[1]]
            is_and = False
        else:  # imp a b  ==  or(not a, b)
            signed = [(-1, node[1]), (1, node[2])]
            is_and = False
        if pol > 0:
            if is_and:
                for (s, k) in signed:
                    cnf.clauses.append([-v, s * lit_for(k, s)])
            else:
                cnf.clauses.append([-v] + [s * lit_for(k, s) for (s, k) in signed])
        else:
            if is_and:
                cnf.clauses.append([v] + [-(s * lit_for(k, -s)) for (s, k) in signed])
            else:
                for (s, k) in signed:
                    cnf.clauses.append([v, -(s * lit_for(k, -s))])
        return v

    conjuncts = nf[1] if isinstance(nf, tuple) and nf[0] == "and" else (nf,)
    for c in conjuncts:
        clause = _clause_fast_path(c)
        if clause is not None:
            cnf.clauses.append(clause)
        elif isinstance(c, tuple) and c[0] == "imp":
            # assert the implication as one clause over gate literals
            cnf.clauses.append([-lit_for(c[1], -1), lit_for(c[2], 1)])
        else:
            cnf.clauses.append([lit_for(c, 1)])
    return cnf


# ------------------------------------------------------------ CDCL solver

def _luby(i):
    """The reluctant-doubling sequence 1 1 2 1 1 2 4 ... at 0-based index i."""
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i %= size
    return 1 << seq


class _Cdcl:
    def __init__(self, cnf, deadline):
        self.nv = cnf.var_count
        self.deadline = deadline
        self.assign = [None] * (self.nv + 1)
        self.phase = [False] * (self.nv + 1)
        self.level = [0] * (self.nv + 1)
        self.reason = [None] * (self.nv + 1)
        self.activity = [0.0] * (self.nv + 1)
        self.act_inc = 1.0
        self.clauses = []
        self.watches = {}
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.heap = [(0.0, v) for v in range(1, self.nv + 1)]
        self.units = []
        self.ok = True
        for raw in cnf.clauses:
            lits = list(dict.fromkeys(raw))
            if any(-l in lits for l in lits):
                continue  # tautology
            if not lits:
                self.ok = False
                return
            if len(lits) == 1:
                self.units.append(lits[0])
            else:
                self._attach(lits)

    def _attach(self, lits):
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.watches.setdefault(lits[0], []).append(ci)
        self.watches.setdefault(lits[1], []).append(ci)
        return ci

    def _value(self, lit):
        va = self.assign[abs(lit)]
        if va is None:
            return None
        return va if lit > 0 else not va

    def _enqueue(self, lit, reason):
        v = abs(lit)
        self.assign[v] = lit > 0
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self):
        # hot loop: literal values computed inline on a locally-bound array
        trail = self.trail
        watches = self.watches
        clauses = self.clauses
        assign = self.assign
        level = self.level
        reason = self.reason
        level_now = len(self.trail_lim)
        while self.qhead < len(trail):
            falsified = -trail[self.qhead]
            self.qhead += 1
            wl = watches.get(falsified)
            if not wl:
                continue
            i = 0
            end = len(wl)
            while i < end:
                ci = wl[i]
                cl = clauses[ci]
                if cl[0] == falsified:
                    cl[0], cl[1] = cl[1], cl[0]
                lit0 = cl[0]
                va = assign[lit0] if lit0 > 0 else assign[-lit0]
                first = va if (va is None or lit0 > 0) else not va
                if first is True:
                    i += 1
                    continue
                for j in range(2, len(cl)):
                    lj = cl[j]
                    vj = assign[lj] if lj > 0 else assign[-lj]
                    if vj is None or (vj if lj > 0 else not vj):
                        cl[1], cl[j] = cl[j], cl[1]
                        watches.setdefault(cl[1], []).append(ci)
                        end -= 1
                        wl[i] = wl[end]
                        wl.pop()
                        break
                else:
                    if first is False:
                        return ci
                    v = lit0 if lit0 > 0 else -lit0
                    assign[v] = lit0 > 0
                    level[v] = level_now
                    reason[v] = ci
                    trail.append(lit0)
                    i += 1
        return None

    def _bump(self, v):
        self.activity[v] += self.act_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.nv + 1):
                self.activity[u] *= 1e-100
            self.act_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.nv + 1)
                         if self.assign[u] is None]
            heapq.heapify(self.heap)
            return
        heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, ci):
        learned = []
        seen = [False] * (self.nv + 1)
        counter = 0
        confl = self.clauses[ci]
        p = None
        trail = self.trail
        level = self.level
        idx = len(trail) - 1
        cur = len(self.trail_lim)
        while True:
            for lit in confl:
                if p is not None and lit == p:
                    continue
                v = lit if lit > 0 else -lit
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if level[v] == cur:
                        counter += 1
                    else:
                        learned.append(lit)
            while True:
                p = trail[idx]
                idx -= 1
                pv = p if p > 0 else -p
                if seen[pv]:
                    break
            seen[pv] = False
            counter -= 1
            if counter == 0:
                break
            confl = self.clauses[self.reason[pv]]
        learned.append(-p)
        if len(learned) == 1:
            return learned, 0
        back = max(self.level[abs(l)] for l in learned[:-1])
        return learned, back

    def _backtrack(self, blevel):
        target = self.trail_lim[blevel]
        trail = self.trail
        phase = self.phase
        assign = self.assign
        activity = self.activity
        heap = self.heap
        push = heapq.heappush
        while len(trail) > target:
            lit = trail.pop()
            v = lit if lit > 0 else -lit
            phase[v] = lit > 0
            assign[v] = None
            push(heap, (-activity[v], v))
        del self.trail_lim[blevel:]
        self.qhead = target

    def _pick(self):
        while self.heap:
            _act, v = heapq.heappop(self.heap)
            if self.assign[v] is None:
                return v
        for v in range(1, self.nv + 1):
            if self.assign[v] is None:
                return v
        return None

    def solve(self):
        if not self.ok:
            return None
        for lit in self.units:
            if self._value(lit) is False:
                return None
            if self._value(lit) is None:
                self._enqueue(lit, None)
        conflicts = 0
        restart_round = 0
        ceiling = 64 * _luby(restart_round)
        steps = 0
        while True:
            steps += 1
            if self.deadline is not None and steps % 256 == 0:
                if time.monotonic() > self.deadline:
                    raise SolveTimeout("satisfiability check hit the deadline")
            ci = self._propagate()
            if ci is not None:
                if not self.trail_lim:
                    return None
                learned, back = self._analyze(ci)
                self._backtrack(back)
                if len(learned) == 1:
                    self._enqueue(learned[0], None)
                else:
                    lits = [learned[-1]] + learned[:-1]
                    self._enqueue(lits[0], self._attach(lits))
                conflicts += 1
                self.act_inc *= 1.0 / 0.95
                if conflicts >= ceiling:
                    conflicts = 0
                    restart_round += 1
                    ceiling = 64 * _luby(restart_round)
                    if self.trail_lim:
                        self._backtrack(0)
            else:
                v = self._pick()
                if v is None:
                    return {u: self.assign[u] for u in range(1, self.nv + 1)}
                self.trail_lim.append(len(self.trail))
                self._enqueue(v if self.phase[v] else -v, None)


def solve_internal(cnf, deadline=None):
    """Model as dict var -> bool, or None when unsatisfiable."""
    return _Cdcl(cnf, deadline).solve()


# ---------------------------------------------------------------- DIMACS

def to_dimacs(cnf):
    lines = [f"p cnf {cnf.var_count} {len(cnf.clauses)}"]
    for cl in cnf.clauses:
        lines.append(" ".join(str(l) for l in cl) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text):
    var_count = None
    clauses = []
    current = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header {line!r}")
            var_count = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if var_count is None:
        var_count = max((abs(l) for cl in clauses for l in cl), default=0)
    return CnfInstance(var_count, clauses)


def _parse_solver_output(text, var_count):
    tokens = text.split()
    ints = []
    for tok in tokens:
        upper = tok.upper()
        if upper in ("UNSAT", "UNSATISFIABLE", "S", "V", "C"):
            if upper.startswith("UNSAT"):
                return None
            continue
        if upper in ("SAT", "SATISFIABLE"):
            continue
        try:
            lit = int(tok)
        except ValueError:
            raise ExternalSolverError(f"unexpected token {tok!r} in solver output") from None
        if lit == 0:
            break
        ints.append(lit)
    if not ints:
        raise ExternalSolverError("solver output contained no model and no UNSAT verdict")
    model = {v: False for v in range(1, var_count + 1)}
    for lit in ints:
        if abs(lit) <= var_count:
            model[abs(lit)] = lit > 0
    return model


def external_solver(command):
    """Backend that shells out: `command <file.cnf>`, DIMACS in, model out."""

    def run(cnf, deadline=None):
        budget = None
        if deadline is not None:
            budget = max(0.1, deadline - time.monotonic())
        with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as fh:
            fh.write(to_dimacs(cnf))
            path = fh.name
        try:
            proc = subprocess.run(
                [command, path], capture_output=True, text=True, timeout=budget
            )
        except subprocess.TimeoutExpired:
            raise SolveTimeout(f"external solver exceeded {budget:.1f}s") from None
        except OSError as e:
            raise ExternalSolverError(f"cannot run {command!r}: {e}") from None
        # exit codes follow no convention worth trusting; parse the output
        return _parse_solver_output(proc.stdout, cnf.var_count)

    return run


def make_solver(name):
    """ "internal" or "exec:<path>" -> callable (cnf, deadline) -> model | None."""
    if name == "internal":
        return solve_internal
    if name.startswith("exec:"):
        return external_solver(name[len("exec:"):])
    raise ValueError(f"unknown solver backend {name!r} (use internal or exec:<path>)")
