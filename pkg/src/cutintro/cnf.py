"""Clause normal form over the original atom set.

Literals are (sign, atom) pairs where the atom is a predicate application
or an equation; no definitional atoms are ever introduced, so clause sets
stay in the signature of the input formula (the solution-improvement
search depends on that).  Conversion is negation normal form followed by
distribution, guarded by a literal-count cap.
"""

from __future__ import annotations

from typing import Iterable, Union

from .formulas import (
    And,
    Atom,
    Bottom,
    Eq,
    Formula,
    Imp,
    Not,
    Or,
    Top,
    conj,
    disj,
    formula_key,
)

Literal = tuple[bool, Union[Atom, Eq]]
Clause = frozenset  # of Literal
CNF = frozenset  # of Clause

DEFAULT_CNF_CAP = 10_000


class CnfBlowup(Exception):
    """Distribution exceeded the configured literal budget."""


def _nnf(f: Formula, positive: bool) -> Formula:
    if isinstance(f, (Atom, Eq)):
        return f if positive else Not(f)
    if isinstance(f, Top):
        return TOP_ if positive else BOT_
    if isinstance(f, Bottom):
        return BOT_ if positive else TOP_
    if isinstance(f, Not):
        return _nnf(f.body, not positive)
    if isinstance(f, And):
        cls = And if positive else Or
        return cls(_nnf(f.lhs, positive), _nnf(f.rhs, positive))
    if isinstance(f, Or):
        cls = Or if positive else And
        return cls(_nnf(f.lhs, positive), _nnf(f.rhs, positive))
    if isinstance(f, Imp):
        if positive:
            return Or(_nnf(f.lhs, False), _nnf(f.rhs, True))
        return And(_nnf(f.lhs, True), _nnf(f.rhs, False))
    raise TypeError(f"not quantifier-free: {f!r}")


TOP_ = Top()
BOT_ = Bottom()


def _distribute(f: Formula, cap: int) -> set[Clause]:
    """NNF formula to a set of clauses; raises CnfBlowup past the cap."""
    budget = [cap]

    def go(g: Formula) -> set[Clause]:
        if isinstance(g, (Atom, Eq)):
            return {frozenset([(True, g)])}
        if isinstance(g, Not):
            return {frozenset([(False, g.body)])}
        if isinstance(g, Top):
            return set()
        if isinstance(g, Bottom):
            return {frozenset()}
        if isinstance(g, And):
            return go(g.lhs) | go(g.rhs)
        if isinstance(g, Or):
            left, right = go(g.lhs), go(g.rhs)
            if not left or not right:  # one side is Top
                return set()
            out: set[Clause] = set()
            for c in left:
                for d in right:
                    e = c | d
                    budget[0] -= len(e)
                    if budget[0] < 0:
                        raise CnfBlowup(
                            f"clause form exceeds {cap} literals"
                        )
                    out.add(e)
            return out
        raise TypeError(f"unexpected connective in NNF: {g!r}")

    return go(f)


def _is_tautological(c: Clause) -> bool:
    return any((not sign, atom) in c for sign, atom in c)


def simplify_clauses(clauses: Iterable[Clause]) -> CNF:
    """Drop tautological and strictly subsumed clauses."""
    kept = [c for c in set(clauses) if not _is_tautological(c)]
    kept.sort(key=len)
    out: list[Clause] = []
    for c in kept:
        if not any(d <= c for d in out):
            out.append(c)
    return frozenset(out)


def to_cnf(f: Formula, cap: int = DEFAULT_CNF_CAP) -> CNF:
    return simplify_clauses(_distribute(_nnf(f, True), cap))


def cnf_of_formulas(
    asserted: Iterable[Formula],
    denied: Iterable[Formula],
    cap: int = DEFAULT_CNF_CAP,
) -> CNF:
    """Clauses equivalent to (all asserted true and all denied false)."""
    clauses: set[Clause] = set()
    for f in asserted:
        clauses |= _distribute(_nnf(f, True), cap)
    for f in denied:
        clauses |= _distribute(_nnf(f, False), cap)
    return simplify_clauses(clauses)


def literal_key(lit: Literal) -> tuple:
    return (formula_key(lit[1]), lit[0])


def clause_formula(c: Clause) -> Formula:
    lits = sorted(c, key=literal_key)
    return disj([a if sign else Not(a) for sign, a in lits])


def formula_of_cnf(cnf: CNF) -> Formula:
    clauses = sorted(cnf, key=lambda c: tuple(sorted(literal_key(l) for l in c)))
    return conj([clause_formula(c) for c in clauses])
