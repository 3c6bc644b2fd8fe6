"""Anti-unification, the decomposition table, and minimal covers."""

from __future__ import annotations

import random

import pytest

from cutintro.decomposition import (
    DEFAULT_TERMSET_LIMIT,
    Decomposition,
    TermSetTooLarge,
    build_delta_table,
    delta_g,
    fold_delta_table,
    restrict_ci1,
    to_structure_decomposition,
    validate_decomposition,
)
from cutintro.terms import (
    App,
    alpha,
    const,
    is_ground,
    render_term,
    subst_term,
    term_key,
    term_vars,
)

import gen
import oracles

a, b = const("a"), const("b")


def f(t):
    return App("f", (t,))


def s(t):
    return App("s", (t,))


def _expand(u, rows):
    """{u} applied to every row, for checking decompositions by hand."""
    out = set()
    for row in rows:
        out.add(subst_term(u, {alpha(i + 1).name: row[i] for i in range(len(row))}))
    return out


class TestDeltaG:
    def test_identical_terms_give_ground_pattern(self):
        g = delta_g([f(a), f(a)])
        assert g.u == f(a)
        assert g.rows == ((), ())
        assert g.arity == 0

    def test_same_head_recurses(self):
        g = delta_g([f(a), f(b)])
        assert g.u == f(alpha(1))
        assert g.rows == ((a,), (b,))

    def test_head_clash_generalizes_whole_column(self):
        g = delta_g([f(a), s(a)])
        assert g.u == alpha(1)
        assert g.rows == ((f(a),), (s(a),))

    def test_equal_columns_share_a_variable(self):
        t1 = App("g", (f(a), f(a)))
        t2 = App("g", (f(b), f(b)))
        g = delta_g([t1, t2])
        assert g.u == App("g", (f(alpha(1)), f(alpha(1))))
        assert g.rows == ((a,), (b,))

    def test_distinct_columns_get_distinct_variables(self):
        t1 = App("g", (a, b))
        t2 = App("g", (b, a))
        g = delta_g([t1, t2])
        assert g.u == App("g", (alpha(1), alpha(2)))
        assert g.rows == ((a, b), (b, a))

    def test_variables_numbered_by_first_occurrence(self):
        t1 = App("#f3", (s(s(s(f(f(a))))), a))
        t2 = App("#f3", (s(s(f(f(a)))), s(a)))
        g = delta_g([t1, t2])
        assert render_term(g.u) == "#f3(s(s(α1)), α2)"
        assert g.rows == ((s(f(f(a))), a), (f(f(a)), s(a)))

    def test_matches_independent_antiunifier(self):
        for seed in range(120):
            rng = random.Random(seed)
            n = rng.randint(2, 5)
            ts = [
                gen.random_ground_term(
                    rng, [("f", 1), ("g", 2), ("h", 1)], ["a", "b"], 3
                )
                for _ in range(n)
            ]
            g = delta_g(ts)
            u2, rows2 = oracles.antiunify(ts)
            assert g.u == u2, f"seed {seed}"
            assert g.rows == rows2, f"seed {seed}"

    def test_expansion_reproduces_input(self):
        for seed in range(200):
            rng = random.Random(seed)
            n = rng.randint(2, 6)
            ts = [
                gen.random_ground_term(
                    rng, [("f", 1), ("g", 2)], ["a", "b"], 3
                )
                for _ in range(n)
            ]
            g = delta_g(ts)
            for t, row in zip(ts, g.rows):
                mapping = {
                    alpha(i + 1).name: row[i] for i in range(len(row))
                }
                assert subst_term(g.u, mapping) == t, f"seed {seed}"
            assert len(set(g.rows)) <= len(ts)
            assert term_vars(g.u) == {
                alpha(i + 1).name for i in range(g.arity)
            }


class TestDeltaTable:
    def test_golden_key_count(self, golden_table):
        assert len(golden_table.entries) == 4023

    def test_every_pair_expands_to_its_cover(self, golden_table):
        checked = 0
        for key, pairs in golden_table.entries.items():
            for u, covered in pairs:
                assert _expand(u, key) >= set(covered)
                checked += 1
                if checked >= 500:
                    return

    def test_keys_are_row_sets_of_their_pairs(self, golden_table):
        for key, pairs in list(golden_table.entries.items())[:200]:
            assert isinstance(key, frozenset)
            assert all(isinstance(row, tuple) for row in key)
            assert pairs

    def test_lifting_adds_higher_arity_patterns(self):
        # {f(a), f(b)} anti-unifies natively at arity 1; the lifted pair
        # embeds those rows into two-column keys that project onto them.
        ts = frozenset({f(a), f(b), App("g", (a, b)), App("g", (b, a))})
        dt = build_delta_table(ts)
        two_col = frozenset({(a, b), (b, a)})
        assert two_col in dt.entries
        lifted = {u for u, _ in dt.entries[two_col]}
        assert f(alpha(1)) in lifted or f(alpha(2)) in lifted

    def test_max_subset_limits_native_subsets(self, golden_termset):
        small = build_delta_table(golden_termset, max_subset=2)
        full = build_delta_table(golden_termset)
        assert len(small.entries) <= len(full.entries)
        assert small.max_subset == 2

    def test_termset_limit(self):
        ts = frozenset(
            App("c%d" % i, ()) for i in range(DEFAULT_TERMSET_LIMIT + 1)
        )
        with pytest.raises(TermSetTooLarge) as exc:
            build_delta_table(ts)
        assert exc.value.size == DEFAULT_TERMSET_LIMIT + 1
        assert exc.value.limit == DEFAULT_TERMSET_LIMIT

    def test_cancel_hook_runs(self, golden_termset):
        class Stop(Exception):
            pass

        calls = [0]

        def cancel():
            calls[0] += 1
            if calls[0] > 50:
                raise Stop()

        with pytest.raises(Stop):
            build_delta_table(golden_termset, cancel=cancel)


class TestFold:
    def test_golden_minimum_is_unique_and_size_ten(
        self, golden_decompositions
    ):
        assert len(golden_decompositions) == 1
        d = golden_decompositions[0]
        assert d.size == 10
        assert len(d.u) == 8
        assert len(d.w) == 2
        assert d.arity == 2

    def test_golden_witness_rows(self, golden_decompositions):
        d = golden_decompositions[0]
        ffa = f(f(a))
        assert d.w == frozenset({(a, ffa), (ffa, a)})

    def test_golden_validates(self, golden_decompositions, golden_termset):
        assert validate_decomposition(
            golden_decompositions[0], golden_termset
        )

    def test_golden_pattern_shapes(self, golden_decompositions):
        rendered = sorted(
            render_term(u) for u in golden_decompositions[0].u
        )
        assert rendered == [
            "#f2(f(α1))",
            "#f2(f(α2))",
            "#f2(α1)",
            "#f2(α2)",
            "#f3(s(s(s(α1))), α2)",
            "#f3(s(s(α1)), s(α2))",
            "#f3(s(α1), s(s(α2)))",
            "#f3(α1, s(s(s(α2))))",
        ]

    def test_results_sorted_and_deterministic(self, golden_termset):
        once = fold_delta_table(
            build_delta_table(golden_termset), golden_termset
        )
        twice = fold_delta_table(
            build_delta_table(golden_termset), golden_termset
        )
        assert once == twice

    def test_matches_exhaustive_search(self):
        for seed in range(60):
            rng = random.Random(seed)
            ts = gen.random_term_set(rng)
            dt = build_delta_table(ts)
            decs = fold_delta_table(dt, ts)
            bmin, bbest = oracles.brute_min_decompositions(ts)
            got_min = decs[0].size if decs else None
            assert got_min == bmin, f"seed {seed}"
            if decs:
                assert {(d.u, d.w) for d in decs} == set(bbest), f"seed {seed}"

    def test_all_results_validate(self):
        for seed in range(40):
            rng = random.Random(500 + seed)
            ts = gen.random_term_set(rng)
            dt = build_delta_table(ts)
            for d in fold_delta_table(dt, ts):
                assert validate_decomposition(d, ts), f"seed {seed}"

    def test_singleton_set_has_no_decomposition(self):
        ts = frozenset({App("#f1", (a,))})
        dt = build_delta_table(ts)
        assert fold_delta_table(dt, ts) == []


class TestValidate:
    def test_rejects_wrong_expansion(self, golden_termset):
        bogus = Decomposition(
            u=frozenset({App("#f2", (alpha(1),))}),
            w=frozenset({(a,)}),
        )
        assert not validate_decomposition(bogus, golden_termset)

    def test_rejects_nonground_rows(self, golden_termset):
        d = Decomposition(
            u=frozenset({App("#f2", (alpha(1),))}),
            w=frozenset({(alpha(1),)}),
        )
        assert not validate_decomposition(d, golden_termset)

    def test_rejects_variable_index_out_of_range(self, golden_termset):
        d = Decomposition(
            u=frozenset({App("#f2", (alpha(3),))}),
            w=frozenset({(a,)}),
        )
        assert not validate_decomposition(d, golden_termset)

    def test_random_perturbations_rejected(self):
        rejected = 0
        for seed in range(60):
            rng = random.Random(seed)
            ts = gen.random_term_set(rng)
            dt = build_delta_table(ts)
            decs = fold_delta_table(dt, ts)
            if not decs:
                continue
            d = decs[0]
            # Drop one pattern: the expansion loses terms unless another
            # pattern still generates them.
            u_list = sorted(d.u, key=term_key)
            smaller = Decomposition(
                u=frozenset(u_list[1:]), w=d.w
            )
            if not validate_decomposition(smaller, ts):
                rejected += 1
        assert rejected > 10


class TestRestrictAndSplit:
    def test_golden_single_variable_mode_is_empty(
        self, golden_table, golden_termset
    ):
        narrowed = restrict_ci1(golden_table)
        assert all(
            len(next(iter(key))) == 1 for key in narrowed.entries
        )
        assert fold_delta_table(narrowed, golden_termset) == []

    def test_single_variable_set_still_folds(self):
        ts = frozenset(
            {App("#f1", (t,)) for t in (a, f(a), f(f(a)), f(f(f(a))))}
        )
        dt = build_delta_table(ts)
        full = fold_delta_table(dt, ts)
        narrowed = fold_delta_table(restrict_ci1(dt), ts)
        assert narrowed
        assert all(d.arity == 1 for d in narrowed)
        assert min(d.size for d in full) <= min(d.size for d in narrowed)

    def test_structure_split_by_tag(self, golden, golden_decompositions):
        seq, _ = golden
        sd = to_structure_decomposition(golden_decompositions[0], seq.q)
        assert [len(x) for x in sd.u] == [0, 4, 4, 0]
        assert len(sd.w) == 2
        # Tag heads are stripped: the split rows are bare argument tuples.
        for i, patterns in enumerate(sd.u, start=1):
            for args in patterns:
                assert isinstance(args, tuple)
