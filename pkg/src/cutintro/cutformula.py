"""Cut-formula synthesis over a schematic extended Herbrand sequent.

A structure decomposition (U₁..U_q, W) of the instance term set induces
a schematic sequent: the quantified formulas are instantiated with the
pattern tuples from the Uᵢ (which mention the variables α₁..α_m), and a
formula A(ᾱ) solves the schema when

    A(ᾱ) → ⋀_{w̄ ∈ W} A(w̄),  Γ'  ⊢  Δ'

is valid modulo equality, where Γ'/Δ' are the instantiated sides.  Any
solution can serve as the matrix of a single quantified cut ∀x̄.A whose
proof reproduces the original Herbrand sequent.

The canonical solution ⋀Γ' ∧ ¬⋁Δ' always works and is a least element
of the solution space under entailment; ``sf_improve`` then searches for
smaller solutions by forgetful inference: replacing two clauses of the
clause form by one of their resolvents or paramodulants and keeping the
results that still solve the schema.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .cnf import (
    CNF,
    Clause,
    cnf_of_formulas,
    clause_formula,
    formula_of_cnf,
    literal_key,
    simplify_clauses,
    to_cnf,
)
from .decomposition import StructureDecomposition
from .euf import Oracle, Verdict
from .formulas import (
    Atom,
    Eq,
    Formula,
    Imp,
    Not,
    Top,
    apply_subst,
    conj,
    disj,
    formula_size,
    formula_vars,
    render_formula,
)
from .sequents import Sequent, Sigma1Sequent
from .terms import (
    Term,
    alpha,
    alpha_index,
    is_alpha,
    positions_of,
    render_term,
    replace_at,
    subst_term,
    term_vars,
    tuple_key,
)


class SchemaError(ValueError):
    """The decomposition does not fit the sequent."""


@dataclass(frozen=True)
class SchematicEHS:
    """Schematic extended Herbrand sequent for one quantified cut."""

    base: Sigma1Sequent
    u: tuple  # per-formula frozensets of instantiation tuples (over ᾱ)
    w: tuple  # of ground rows, sorted
    gamma: tuple  # instantiated antecedent formulas, fixed order
    delta: tuple  # instantiated succedent formulas, fixed order

    @property
    def arity(self) -> int:
        return len(self.w[0]) if self.w else 0

    @property
    def size(self) -> int:
        return len(self.w) + sum(len(ui) for ui in self.u)

    def instance_sequent(self) -> Sequent:
        return Sequent(self.gamma, self.delta)


def _subst_for_row(row: tuple) -> dict:
    return {alpha(i + 1).name: row[i] for i in range(len(row))}


def build_schematic_ehs(
    s: Sigma1Sequent, d: StructureDecomposition
) -> SchematicEHS:
    """Instantiate the sequent's matrices with the decomposition tuples."""
    if len(d.u) != s.q:
        raise SchemaError(
            f"decomposition has {len(d.u)} instance sets, "
            f"sequent has {s.q} formulas"
        )
    m = d.arity
    if m == 0:
        raise SchemaError("decomposition must bind at least one variable")
    for row in d.w:
        for x in row:
            if term_vars(x):
                raise SchemaError(
                    f"instantiation vector {render_term(x)} is not ground"
                )
    gamma: list[Formula] = []
    delta: list[Formula] = []
    for i in range(1, s.q + 1):
        pf = s.formula(i)
        ui = d.u[i - 1]
        side = gamma if i <= s.p else delta
        if pf.k == 0:
            if ui:
                raise SchemaError(
                    f"formula {i} has no quantifier prefix but "
                    f"{len(ui)} instance tuples"
                )
            side.append(pf.matrix)
            continue
        for tup in ui:
            if len(tup) != pf.k:
                raise SchemaError(
                    f"formula {i} expects {pf.k}-tuples, got {len(tup)}"
                )
            for x in tup:
                bad = [v for v in term_vars(x) if not is_alpha(v)]
                if bad:
                    raise SchemaError(
                        f"instance tuple mentions non-schema variable "
                        f"{bad[0].name}"
                    )
        for tup in sorted(ui, key=tuple_key):
            side.append(
                apply_subst(
                    pf.matrix,
                    {v: t for v, t in zip(pf.vars, tup)},
                )
            )
    rows = tuple(sorted(d.w, key=tuple_key))
    return SchematicEHS(
        base=s, u=d.u, w=rows, gamma=tuple(gamma), delta=tuple(delta)
    )


@dataclass(frozen=True)
class SolutionCandidate:
    """A cut-formula matrix together with its clause form and ancestry."""

    formula: Formula
    clauses: CNF
    provenance: tuple  # of str

    @property
    def size(self) -> int:
        return formula_size(self.formula)

    def sort_key(self) -> tuple:
        return (self.size, render_formula(self.formula))


def canonical_solution(e: SchematicEHS) -> SolutionCandidate:
    """⋀Γ' ∧ ¬⋁Δ'; empty sides contribute no conjunct."""
    parts: list[Formula] = []
    if e.gamma:
        parts.append(conj(list(e.gamma)))
    if e.delta:
        parts.append(Not(disj(list(e.delta))))
    f: Formula = conj(parts) if parts else Top()
    return SolutionCandidate(
        formula=f, clauses=to_cnf(f), provenance=("canonical",)
    )


def solution_sequent(e: SchematicEHS, a: Formula) -> Sequent:
    """The validity query that defines solutionhood."""
    stepped = conj(
        [apply_subst(a, _subst_for_row(row)) for row in e.w]
    )
    return Sequent((Imp(a, stepped),) + e.gamma, e.delta)


def check_solution(
    e: SchematicEHS, a: Formula, oracle: Oracle
) -> bool:
    """True iff A(ᾱ) solves the schema; UNKNOWN counts as failure."""
    return check_solution_verdict(e, a, oracle) is Verdict.VALID


def check_solution_verdict(
    e: SchematicEHS, a: Formula, oracle: Oracle
) -> Verdict:
    bad = [
        v
        for v in formula_vars(a)
        if not is_alpha(v) or alpha_index(v) > e.arity
    ]
    if bad:
        raise SchemaError(
            f"candidate mentions variable {sorted(bad)[0]} outside α₁..α_{e.arity}"
        )
    return oracle.validity(solution_sequent(e, a))


def guard_sequent(e: SchematicEHS, a: Formula) -> Sequent:
    """A(w̄₁), .., A(w̄_k), Γ' ⊢ Δ' — the step part of solutionhood."""
    steps = tuple(
        apply_subst(a, _subst_for_row(row)) for row in e.w
    )
    return Sequent(steps + e.gamma, e.delta)


def _subst_atom(atom, mapping: dict):
    if isinstance(atom, Eq):
        return Eq(subst_term(atom.lhs, mapping), subst_term(atom.rhs, mapping))
    return Atom(atom.pred, tuple(subst_term(t, mapping) for t in atom.args))


def subst_clauses(cnf: CNF, mapping: dict) -> CNF:
    return frozenset(
        frozenset((sign, _subst_atom(a, mapping)) for sign, a in c)
        for c in cnf
    )


# ---------------------------------------------------------------------------
# forgetful inference


def _clause_eqs(c: Clause) -> list[Eq]:
    return [a for sign, a in c if sign and isinstance(a, Eq)]


def _rewrite_literal(lit, lhs: Term, rhs: Term):
    """All single-occurrence rewrites of lhs to rhs inside the literal."""
    sign, atom = lit
    out = []
    if isinstance(atom, Eq):
        sides = (atom.lhs, atom.rhs)
    else:
        sides = atom.args
    for i, t in enumerate(sides):
        for pos in positions_of(t, lhs):
            new_t = replace_at(t, pos, rhs)
            if isinstance(atom, Eq):
                new_atom = (
                    Eq(new_t, atom.rhs) if i == 0 else Eq(atom.lhs, new_t)
                )
            else:
                args = list(atom.args)
                args[i] = new_t
                new_atom = Atom(atom.pred, tuple(args))
            out.append((sign, new_atom))
    return out


def _pair_successors(ci: Clause, cj: Clause) -> list[Clause]:
    """Resolvents and ground paramodulants of an unordered clause pair."""
    out: list[Clause] = []
    for sign, atom in ci:
        if (not sign, atom) in cj:
            out.append(
                (ci - {(sign, atom)}) | (cj - {(not sign, atom)})
            )
    for src, dst in ((ci, cj), (cj, ci)):
        for eq in _clause_eqs(src):
            rest = src - {(True, eq)}
            for lhs, rhs in ((eq.lhs, eq.rhs), (eq.rhs, eq.lhs)):
                for lit in dst:
                    for new_lit in _rewrite_literal(lit, lhs, rhs):
                        if new_lit == lit:
                            continue
                        out.append(rest | (dst - {lit}) | {new_lit})
    return out


def _normalize(clauses: Iterable[Clause]) -> CNF:
    """Deduplicate and drop tautological clauses (no subsumption)."""
    out = set()
    for c in clauses:
        if any((not s, a) in c for s, a in c):
            continue
        out.add(c)
    return frozenset(out)


def forget(cnf: CNF) -> list[CNF]:
    """Every clause set reachable by one forgetful inference step.

    One step picks two clauses, replaces both by a single resolvent or
    ground paramodulant, and normalizes.  The result is strictly less
    general in the entailment order, which is what lets the improvement
    loop shrink solutions.
    """
    return [succ for succ, _ in forget_steps(cnf)]


def forget_steps(cnf: CNF) -> list[tuple[CNF, str]]:
    clauses = sorted(
        cnf, key=lambda c: tuple(sorted(literal_key(l) for l in c))
    )
    seen: set[CNF] = set()
    out: list[tuple[CNF, str]] = []
    for i in range(len(clauses)):
        for j in range(i + 1, len(clauses)):
            rest = frozenset(clauses) - {clauses[i], clauses[j]}
            for new in _pair_successors(clauses[i], clauses[j]):
                succ = _normalize(rest | {new})
                if succ in seen:
                    continue
                seen.add(succ)
                step = (
                    f"[{render_formula(clause_formula(clauses[i]))}] + "
                    f"[{render_formula(clause_formula(clauses[j]))}] => "
                    f"[{render_formula(clause_formula(new))}]"
                )
                out.append((succ, step))
    return out


def _prune_alpha_free(cnf: CNF) -> CNF:
    """Drop clauses with no schema variable.

    Such clauses follow from Γ' (they were instantiated from it), so
    removing them preserves solutionhood while shrinking the formula.
    """
    kept = [
        c
        for c in cnf
        if any(
            any(is_alpha(v) for v in _literal_vars(lit)) for lit in c
        )
    ]
    return frozenset(kept)


def _literal_vars(lit):
    _, atom = lit
    if isinstance(atom, Eq):
        return term_vars(atom.lhs) | term_vars(atom.rhs)
    vs = set()
    for t in atom.args:
        vs |= term_vars(t)
    return vs


@dataclass
class SFResult:
    candidates: list  # of SolutionCandidate, minimal ones found
    visited: int
    capped: bool


def sf_improve(
    e: SchematicEHS,
    cand: SolutionCandidate,
    oracle: Oracle,
    node_cap: int = 10_000,
    cancel: Optional[Callable[[], None]] = None,
) -> SFResult:
    """Greedy-complete search over forgetful successors of a solution.

    Maintains a stack of clause-set nodes known to solve the schema
    (validated via the step guard A(w̄₁)..A(w̄_k), Γ' ⊢ Δ', which the
    successors of a solution inherit).  α-free clauses are pruned at
    every node.  Nodes whose every successor fails the guard are leaves;
    the minimal candidates over all visited nodes are returned.
    """
    side_clauses = cnf_of_formulas(e.gamma, e.delta)
    row_substs = [_subst_for_row(row) for row in e.w]

    def guard_holds(node: CNF) -> bool:
        clauses = set(side_clauses)
        for mapping in row_substs:
            clauses |= subst_clauses(node, mapping)
        return oracle.refutation(frozenset(clauses)) is Verdict.VALID

    entry = _prune_alpha_free(simplify_clauses(cand.clauses))
    seen: set[CNF] = {entry}
    stack: list[tuple[CNF, tuple]] = [(entry, cand.provenance)]
    results: list[SolutionCandidate] = []
    visited = 0
    capped = False
    while stack:
        if cancel is not None:
            cancel()
        node, prov = stack.pop()
        visited += 1
        results.append(
            SolutionCandidate(
                formula=formula_of_cnf(node), clauses=node, provenance=prov
            )
        )
        if visited >= node_cap:
            capped = True
            break
        for succ, step in forget_steps(node):
            succ = _prune_alpha_free(succ)
            if succ in seen:
                continue
            seen.add(succ)
            if guard_holds(succ):
                stack.append((succ, prov + (step,)))
    return SFResult(candidates=results, visited=visited, capped=capped)


def select_best(cands: Iterable[SolutionCandidate]) -> SolutionCandidate:
    """Smallest candidate by formula size, ties by rendering."""
    pool = list(cands)
    if not pool:
        raise ValueError("no candidates to select from")
    return min(pool, key=SolutionCandidate.sort_key)
