"""Clausification: equivalence, simplification, and the blowup cap."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from cutintro.cnf import (
    CnfBlowup,
    clause_formula,
    cnf_of_formulas,
    formula_of_cnf,
    simplify_clauses,
    to_cnf,
)
from cutintro.formulas import (
    And,
    Atom,
    Bottom,
    Eq,
    Imp,
    Not,
    Or,
    Top,
)
from cutintro.terms import const

from oracles import _collect_atoms, _eval
from test_formulas import formulas_strategy


def _models_agree(f, g) -> bool:
    """Propositional equivalence by truth table (equations opaque)."""
    atoms: list = []
    _collect_atoms(f, atoms)
    _collect_atoms(g, atoms)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        asg = dict(zip(atoms, bits))
        if _eval(f, asg) != _eval(g, asg):
            return False
    return True


P = Atom("P", ())
Q = Atom("Q", ())
R = Atom("R", ())


class TestToCnf:
    def test_literal(self):
        assert to_cnf(P) == frozenset({frozenset({(True, P)})})
        assert to_cnf(Not(P)) == frozenset({frozenset({(False, P)})})

    def test_implication(self):
        got = to_cnf(Imp(P, Q))
        assert got == frozenset({frozenset({(False, P), (True, Q)})})

    def test_distribution(self):
        got = to_cnf(Or(And(P, Q), R))
        assert got == frozenset(
            {
                frozenset({(True, P), (True, R)}),
                frozenset({(True, Q), (True, R)}),
            }
        )

    def test_top_produces_no_clauses(self):
        assert to_cnf(Top()) == frozenset()

    def test_bottom_produces_empty_clause(self):
        assert frozenset() in to_cnf(Bottom())

    def test_tautologous_clauses_removed(self):
        assert to_cnf(Or(P, Not(P))) == frozenset()

    def test_subsumed_clauses_removed(self):
        got = to_cnf(And(P, Or(P, Q)))
        assert got == frozenset({frozenset({(True, P)})})

    @settings(max_examples=150)
    @given(formulas_strategy())
    def test_equivalent_to_input(self, f):
        cnf = to_cnf(f)
        assert _models_agree(f, formula_of_cnf(cnf))

    @settings(max_examples=100)
    @given(formulas_strategy())
    def test_round_trip_is_fixpoint(self, f):
        cnf = to_cnf(f)
        assert to_cnf(formula_of_cnf(cnf)) == cnf


class TestCap:
    def test_blowup_raises(self):
        # (p1&q1) | (p2&q2) | ... distributes to 2^n clauses.
        n = 16
        parts = [
            And(Atom(f"P{i}", ()), Atom(f"Q{i}", ())) for i in range(n)
        ]
        f = parts[0]
        for p in parts[1:]:
            f = Or(f, p)
        with pytest.raises(CnfBlowup):
            to_cnf(f, cap=1000)

    def test_cap_allows_formulas_at_the_limit(self):
        # Distributes to {P,R} and {Q,R}: four literals exactly.
        assert len(to_cnf(Or(And(P, Q), R), cap=4)) == 2
        with pytest.raises(CnfBlowup):
            to_cnf(Or(And(P, Q), R), cap=3)


class TestSimplify:
    def test_removes_duplicates_and_supersets(self):
        c1 = frozenset({(True, P)})
        c2 = frozenset({(True, P), (True, Q)})
        assert simplify_clauses(frozenset({c1, c2})) == frozenset({c1})

    def test_removes_tautologies(self):
        taut = frozenset({(True, P), (False, P)})
        keep = frozenset({(True, Q)})
        assert simplify_clauses(frozenset({taut, keep})) == frozenset({keep})

    def test_keeps_incomparable_clauses(self):
        c1 = frozenset({(True, P), (True, Q)})
        c2 = frozenset({(True, P), (True, R)})
        assert simplify_clauses(frozenset({c1, c2})) == frozenset({c1, c2})


class TestRefutationClauses:
    def test_denied_formulas_are_negated(self):
        got = cnf_of_formulas([P], [Q])
        assert got == frozenset(
            {frozenset({(True, P)}), frozenset({(False, Q)})}
        )

    def test_unsatisfiable_pair_gives_complementary_units(self):
        got = cnf_of_formulas([P], [P])
        assert frozenset({(True, P)}) in got
        assert frozenset({(False, P)}) in got

    @settings(max_examples=60)
    @given(formulas_strategy(), formulas_strategy())
    def test_matches_direct_cnf_of_conjunction(self, f, g):
        combined = cnf_of_formulas([f], [g])
        direct = to_cnf(And(f, Not(g)))
        assert _models_agree(
            formula_of_cnf(combined), formula_of_cnf(direct)
        )


class TestClauseFormula:
    def test_clause_renders_as_disjunction(self):
        c = frozenset({(True, P), (False, Q)})
        f = clause_formula(c)
        assert _models_agree(f, Or(P, Not(Q)))

    def test_empty_clause_is_false(self):
        assert clause_formula(frozenset()) == Bottom()

    def test_empty_cnf_is_true(self):
        assert formula_of_cnf(frozenset()) == Top()

    def test_formula_of_cnf_deterministic(self):
        c1 = frozenset({(True, P), (False, Q)})
        c2 = frozenset({(True, R)})
        cnf = frozenset({c1, c2})
        assert formula_of_cnf(cnf) == formula_of_cnf(
            frozenset({c2, c1})
        )
