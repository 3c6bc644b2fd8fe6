"""Ground validity modulo equality.

A sequent of quantifier-free formulas is valid in all structures iff its
refutation clause set has no model in which the equations behave as a
congruence.  The decision procedure here is the classic lazy loop: a DPLL
search enumerates propositional models of the clause skeleton, a
congruence closure over the ground subterm universe checks each model,
and a conflict core is turned into a blocking clause before the search
resumes.  Free variables are treated as uninterpreted constants.

All entry points return a three-valued Verdict; resource exhaustion is
reported as UNKNOWN, never as a silent "invalid".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from .cnf import (
    CNF,
    CnfBlowup,
    DEFAULT_CNF_CAP,
    Literal,
    cnf_of_formulas,
    literal_key,
    simplify_clauses,
)
from .formulas import Atom, Eq, Not, formula_key, is_quantifier_free
from .sequents import Sequent
from .terms import Term, Var


class Verdict(enum.Enum):
    VALID = "valid"
    INVALID = "invalid"
    UNKNOWN = "unknown"


class OracleLimit(Exception):
    """The decision procedure ran out of its step budget."""


DEFAULT_STEP_CAP = 5_000_000


# ---------------------------------------------------------------------------
# congruence closure


class CongruenceClosure:
    """Union-find over interned ground terms with congruence propagation."""

    def __init__(self) -> None:
        self._ids: dict[Term, int] = {}
        self._node: list[tuple[str, tuple[int, ...]]] = []
        self._parent: list[int] = []
        self._members: list[list[int]] = []
        self._use: list[list[int]] = []  # apps that mention a representative
        self._sig: dict[tuple[str, tuple[int, ...]], int] = {}

    def intern(self, t: Term) -> int:
        known = self._ids.get(t)
        if known is not None:
            return known
        if isinstance(t, Var):
            head, args = t.name, ()
        else:
            head, args = t.head, tuple(self.intern(a) for a in t.args)
        i = len(self._node)
        self._ids[t] = i
        self._node.append((head, args))
        self._parent.append(i)
        self._members.append([i])
        self._use.append([])
        roots = tuple(self.find(a) for a in args)
        twin = self._sig.get((head, roots))
        if twin is None:
            self._sig[(head, roots)] = i
        for a in roots:
            self._use[a].append(i)
        if twin is not None and self.find(twin) != i:
            self._merge(i, twin)
        return i

    def find(self, i: int) -> int:
        parent = self._parent
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    def merge_terms(self, s: Term, t: Term) -> None:
        self._merge(self.intern(s), self.intern(t))

    def equal(self, s: Term, t: Term) -> bool:
        return self.find(self.intern(s)) == self.find(self.intern(t))

    def _merge(self, i: int, j: int) -> None:
        queue = [(i, j)]
        while queue:
            a, b = queue.pop()
            ra, rb = self.find(a), self.find(b)
            if ra == rb:
                continue
            if len(self._members[ra]) > len(self._members[rb]):
                ra, rb = rb, ra
            self._parent[ra] = rb
            self._members[rb].extend(self._members[ra])
            for app in self._use[ra]:
                head, args = self._node[app]
                roots = tuple(self.find(x) for x in args)
                twin = self._sig.get((head, roots))
                if twin is None:
                    self._sig[(head, roots)] = app
                elif self.find(twin) != self.find(app):
                    queue.append((app, twin))
            self._use[rb].extend(self._use[ra])
            self._use[ra] = []


def _model_conflict(
    true_eqs: list[Eq], others: list[Literal]
) -> Optional[tuple[list[Eq], list[Literal]]]:
    """Check a full assignment against congruence; return a conflict core.

    ``others`` holds the remaining literals: negative equations and signed
    predicate atoms.  The returned core is (equation premises, clashing
    literals); None means the assignment is a genuine countermodel.
    """
    cc = CongruenceClosure()
    for eq in true_eqs:
        cc.merge_terms(eq.lhs, eq.rhs)

    clash: Optional[list[Literal]] = None
    for sign, atom in others:
        if isinstance(atom, Eq) and not sign:
            if cc.equal(atom.lhs, atom.rhs):
                clash = [(False, atom)]
                break
    if clash is None:
        by_pred: dict[tuple[str, int], list[tuple[bool, Atom]]] = {}
        for sign, atom in others:
            if isinstance(atom, Atom):
                by_pred.setdefault((atom.pred, len(atom.args)), []).append(
                    (sign, atom)
                )
        for lits in by_pred.values():
            pos = [a for s, a in lits if s]
            neg = [a for s, a in lits if not s]
            for p in pos:
                for n in neg:
                    if all(cc.equal(x, y) for x, y in zip(p.args, n.args)):
                        clash = [(True, p), (False, n)]
                        break
                if clash:
                    break
            if clash:
                break
    if clash is None:
        return None

    def still_conflicts(eqs: list[Eq]) -> bool:
        cc2 = CongruenceClosure()
        for eq in eqs:
            cc2.merge_terms(eq.lhs, eq.rhs)
        if len(clash) == 1:
            a = clash[0][1]
            return cc2.equal(a.lhs, a.rhs)
        p, n = clash[0][1], clash[1][1]
        return all(cc2.equal(x, y) for x, y in zip(p.args, n.args))

    core = list(true_eqs)
    for eq in list(core):
        trial = [e for e in core if e is not eq]
        if still_conflicts(trial):
            core = trial
    return core, clash


# ---------------------------------------------------------------------------
# DPLL over the propositional skeleton


@dataclass
class _Budget:
    steps: int

    def spend(self, n: int = 1) -> None:
        self.steps -= n
        if self.steps < 0:
            raise OracleLimit("step budget exhausted")


def _propagate(
    clauses: list[frozenset[int]], assign: dict[int, bool], budget: _Budget
) -> bool:
    """Unit propagation; returns False on an empty clause."""
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            budget.spend()
            unassigned = None
            satisfied = False
            count = 0
            for lit in clause:
                v = assign.get(abs(lit))
                if v is None:
                    unassigned = lit
                    count += 1
                    if count > 1:
                        break
                elif v == (lit > 0):
                    satisfied = True
                    break
            if satisfied or count > 1:
                continue
            if count == 0:
                return False
            assert unassigned is not None
            assign[abs(unassigned)] = unassigned > 0
            changed = True
    return True


def _next_model(
    clauses: list[frozenset[int]],
    n_vars: int,
    budget: _Budget,
    cancel: Optional[Callable[[], None]],
) -> Optional[dict[int, bool]]:
    """Find one satisfying total assignment, or None."""
    order = sorted(
        range(1, n_vars + 1),
        key=lambda v: -sum(1 for c in clauses if v in c or -v in c),
    )

    def search(assign: dict[int, bool]) -> Optional[dict[int, bool]]:
        if cancel is not None:
            cancel()
        budget.spend()
        if not _propagate(clauses, assign, budget):
            return None
        pick = next((v for v in order if v not in assign), None)
        if pick is None:
            return assign
        for value in (True, False):
            trial = dict(assign)
            trial[pick] = value
            found = search(trial)
            if found is not None:
                return found
        return None

    return search({})


def _decide_clauses(
    cnf: CNF,
    *,
    theory: bool,
    budget: _Budget,
    cancel: Optional[Callable[[], None]] = None,
) -> Verdict:
    """VALID iff the clause set is unsatisfiable (modulo equality)."""
    atoms = sorted({atom for c in cnf for _, atom in c}, key=formula_key)
    index = {atom: i + 1 for i, atom in enumerate(atoms)}
    clauses = [
        frozenset((index[a] if s else -index[a]) for s, a in c) for c in cnf
    ]
    if any(not c for c in clauses):
        return Verdict.VALID

    while True:
        model = _next_model(clauses, len(atoms), budget, cancel)
        if model is None:
            return Verdict.VALID
        if not theory:
            return Verdict.INVALID
        true_eqs = [
            a
            for a, i in index.items()
            if isinstance(a, Eq) and model.get(i, False)
        ]
        others: list[Literal] = [
            (model.get(i, False), a)
            for a, i in index.items()
            if not (isinstance(a, Eq) and model.get(i, False))
        ]
        conflict = _model_conflict(true_eqs, others)
        if conflict is None:
            return Verdict.INVALID
        core_eqs, clash = conflict
        blocking = frozenset(
            [-index[e] for e in core_eqs]
            + [(-index[a] if s else index[a]) for s, a in clash]
        )
        clauses.append(blocking)
        budget.spend(len(blocking))


def _refutation_cnf(seq: Sequent, cap: int) -> CNF:
    for f in tuple(seq.ante) + tuple(seq.succ):
        if not is_quantifier_free(f):
            raise ValueError(f"sequent is not quantifier-free: {f!r}")
    return cnf_of_formulas(seq.ante, seq.succ, cap)


def decide_validity(
    seq: Sequent,
    *,
    step_cap: int = DEFAULT_STEP_CAP,
    cnf_cap: int = DEFAULT_CNF_CAP,
    cancel: Optional[Callable[[], None]] = None,
) -> Verdict:
    """Three-valued validity of a ground sequent modulo equality."""
    try:
        cnf = _refutation_cnf(seq, cap=cnf_cap)
        return _decide_clauses(
            cnf, theory=True, budget=_Budget(step_cap), cancel=cancel
        )
    except (CnfBlowup, OracleLimit):
        return Verdict.UNKNOWN


def decide_tautology(
    seq: Sequent,
    *,
    step_cap: int = DEFAULT_STEP_CAP,
    cnf_cap: int = DEFAULT_CNF_CAP,
    cancel: Optional[Callable[[], None]] = None,
) -> Verdict:
    """Propositional validity; equations are opaque atoms."""
    try:
        cnf = _refutation_cnf(seq, cap=cnf_cap)
        return _decide_clauses(
            cnf, theory=False, budget=_Budget(step_cap), cancel=cancel
        )
    except (CnfBlowup, OracleLimit):
        return Verdict.UNKNOWN


def is_quasi_tautology(seq: Sequent, **kw) -> bool:
    """True iff provably valid modulo equality; UNKNOWN maps to False."""
    return decide_validity(seq, **kw) is Verdict.VALID


def is_tautology(seq: Sequent, **kw) -> bool:
    """True iff propositionally valid; UNKNOWN maps to False."""
    return decide_tautology(seq, **kw) is Verdict.VALID


class Oracle:
    """Decision backend for validity modulo equality."""

    def validity(self, seq: Sequent) -> Verdict:
        raise NotImplementedError

    def refutation(self, clauses: CNF) -> Verdict:
        """VALID iff the clause set is unsatisfiable modulo equality."""
        from .cnf import formula_of_cnf

        return self.validity(Sequent((), (Not(formula_of_cnf(clauses)),)))

    def close(self) -> None:
        pass


@dataclass
class InternalOracle(Oracle):
    step_cap: int = DEFAULT_STEP_CAP
    cnf_cap: int = DEFAULT_CNF_CAP
    cancel: Optional[Callable[[], None]] = None
    calls: int = 0
    _memo: dict = field(default_factory=dict)

    def validity(self, seq: Sequent) -> Verdict:
        key = (tuple(seq.ante), tuple(seq.succ))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        v = decide_validity(
            seq, step_cap=self.step_cap, cnf_cap=self.cnf_cap,
            cancel=self.cancel,
        )
        self._memo[key] = v
        return v

    def refutation(self, clauses: CNF) -> Verdict:
        hit = self._memo.get(clauses)
        if hit is not None:
            return hit
        self.calls += 1
        try:
            v = _decide_clauses(
                simplify_clauses(clauses),
                theory=True,
                budget=_Budget(self.step_cap),
                cancel=self.cancel,
            )
        except OracleLimit:
            v = Verdict.UNKNOWN
        self._memo[clauses] = v
        return v
