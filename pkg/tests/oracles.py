"""Independent reference implementations used to cross-check the package.

These are deliberately naive: truth-table enumeration plus fixpoint
congruence saturation for validity, a two-pass anti-unifier, and an
exhaustive cover search for minimal decompositions.  They share no code
with the implementations under test.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from cutintro.formulas import And, Atom, Bottom, Eq, Formula, Imp, Not, Or, Top
from cutintro.sequents import Sequent
from cutintro.terms import App, Term, Var, is_tag_head, term_key


# --------------------------------------------------------------------------
# Validity with equality, by brute force
# --------------------------------------------------------------------------


def _collect_atoms(f: Formula, out: list) -> None:
    if isinstance(f, (Atom, Eq)):
        if f not in out:
            out.append(f)
    elif isinstance(f, Not):
        _collect_atoms(f.body, out)
    elif isinstance(f, (And, Or, Imp)):
        _collect_atoms(f.lhs, out)
        _collect_atoms(f.rhs, out)


def _eval(f: Formula, asg: dict) -> bool:
    if isinstance(f, (Atom, Eq)):
        return asg[f]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _eval(f.body, asg)
    if isinstance(f, And):
        return _eval(f.lhs, asg) and _eval(f.rhs, asg)
    if isinstance(f, Or):
        return _eval(f.lhs, asg) or _eval(f.rhs, asg)
    if isinstance(f, Imp):
        return (not _eval(f.lhs, asg)) or _eval(f.rhs, asg)
    raise TypeError(f"not quantifier-free: {f!r}")


def _all_subterms(atoms: Iterable) -> list[Term]:
    seen: list[Term] = []

    def walk(t: Term) -> None:
        if t not in seen:
            seen.append(t)
            if isinstance(t, App):
                for a in t.args:
                    walk(a)

    for a in atoms:
        for t in a.args if isinstance(a, Atom) else (a.lhs, a.rhs):
            walk(t)
    return seen


def _saturate(universe: list[Term], equations: list[tuple[Term, Term]]) -> set:
    """Reflexive/symmetric/transitive/congruent closure over the universe,
    as a set of frozen pairs, by plain fixpoint iteration."""
    rel = {frozenset((t, t)) for t in universe}
    rel |= {frozenset((l, r)) for l, r in equations}

    def related(a: Term, b: Term) -> bool:
        return frozenset((a, b)) in rel

    changed = True
    while changed:
        changed = False
        # transitivity
        for a, b, c in itertools.product(universe, repeat=3):
            if related(a, b) and related(b, c) and not related(a, c):
                rel.add(frozenset((a, c)))
                changed = True
        # congruence
        for s, t in itertools.combinations(universe, 2):
            if (
                isinstance(s, App)
                and isinstance(t, App)
                and s.head == t.head
                and len(s.args) == len(t.args)
                and not related(s, t)
                and all(related(x, y) for x, y in zip(s.args, t.args))
            ):
                rel.add(frozenset((s, t)))
                changed = True
    return rel


def naive_evalid(seq: Sequent) -> bool:
    """True iff the sequent holds in every model of the equality axioms.
    Free variables are read as fresh constants (universal closure)."""
    atoms: list = []
    for f in seq.ante + seq.succ:
        _collect_atoms(f, atoms)
    universe = _all_subterms(atoms)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        asg = dict(zip(atoms, bits))
        if not all(_eval(f, asg) for f in seq.ante):
            continue
        if any(_eval(f, asg) for f in seq.succ):
            continue
        # Candidate countermodel; check it extends to a model of equality.
        eqs = [(a.lhs, a.rhs) for a, v in asg.items() if isinstance(a, Eq) and v]
        rel = _saturate(universe, eqs)

        def related(a: Term, b: Term) -> bool:
            return frozenset((a, b)) in rel

        consistent = True
        for a, v in asg.items():
            if isinstance(a, Eq) and not v and related(a.lhs, a.rhs):
                consistent = False
                break
        if consistent:
            pos = [a for a, v in asg.items() if isinstance(a, Atom) and v]
            neg = [a for a, v in asg.items() if isinstance(a, Atom) and not v]
            for ap, an in itertools.product(pos, neg):
                if (
                    ap.pred == an.pred
                    and len(ap.args) == len(an.args)
                    and all(related(x, y) for x, y in zip(ap.args, an.args))
                ):
                    consistent = False
                    break
        if consistent:
            return False
    return True


def naive_tautology(seq: Sequent) -> bool:
    """Propositional validity; equations are opaque atoms."""
    atoms: list = []
    for f in seq.ante + seq.succ:
        _collect_atoms(f, atoms)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        asg = dict(zip(atoms, bits))
        if all(_eval(f, asg) for f in seq.ante) and not any(
            _eval(f, asg) for f in seq.succ
        ):
            return False
    return True


# --------------------------------------------------------------------------
# Anti-unification (two-pass: raw generalization, then column merging)
# --------------------------------------------------------------------------


def antiunify(terms: Sequence[Term]) -> tuple[Term, tuple[tuple[Term, ...], ...]]:
    """Least general generalization of a term list.  Returns the pattern and
    the substitution rows (one row per input term).  Variables are numbered
    by first occurrence in the pattern; equal columns share one variable."""
    n = len(terms)
    columns: list[tuple[Term, ...]] = []

    def gen(ts: tuple[Term, ...]) -> Term:
        if all(t == ts[0] for t in ts):
            return ts[0]
        if all(
            isinstance(t, App)
            and isinstance(ts[0], App)
            and t.head == ts[0].head
            and len(t.args) == len(ts[0].args)
            for t in ts
        ):
            return App(
                ts[0].head,
                tuple(
                    gen(tuple(t.args[i] for t in ts))
                    for i in range(len(ts[0].args))
                ),
            )
        columns.append(ts)
        return Var(f"?{len(columns) - 1}")

    raw = gen(tuple(terms))

    # Merge equal columns, then rename by first occurrence in the pattern.
    canon: dict[tuple[Term, ...], int] = {}
    remap: dict[str, int] = {}
    for i, col in enumerate(columns):
        canon.setdefault(col, len(canon))
        remap[f"?{i}"] = canon[col]

    from cutintro.terms import alpha

    def rename(t: Term) -> Term:
        if isinstance(t, Var):
            return alpha(remap[t.name] + 1)
        if not t.args:
            return t
        return App(t.head, tuple(rename(a) for a in t.args))

    pattern = rename(raw)
    merged = list(canon)
    rows = tuple(
        tuple(merged[j][i] for j in range(len(merged))) for i in range(n)
    )
    return pattern, rows


# --------------------------------------------------------------------------
# Exhaustive minimal-decomposition search
# --------------------------------------------------------------------------


def _row_is_clean(row: tuple[Term, ...]) -> bool:
    def clean(t: Term) -> bool:
        if isinstance(t, Var):
            return True
        return not is_tag_head(t.head) and all(clean(a) for a in t.args)

    return all(clean(t) for t in row)


def _pattern_vars(t: Term) -> set[int]:
    from cutintro.terms import alpha_index, is_alpha

    if isinstance(t, Var):
        return {alpha_index(t.name)} if is_alpha(t.name) else set()
    out: set[int] = set()
    for a in t.args:
        out |= _pattern_vars(a)
    return out


def brute_min_decompositions(terms: Iterable[Term]):
    """Minimal decompositions over the normalized search space:

    - candidate keys are anti-unification keys of subsets (arity >= 1,
      rows free of reserved tag heads);
    - usable pairs under a key are the native ones plus pairs lifted from
      strictly smaller arity via a coordinate injection whose row
      projection is a bijection;
    - a cover selects whole groups (all patterns sharing a covered subset)
      whose subsets union to the full term set, using every coordinate.

    Returns (min_size, decompositions) where each decomposition is
    (frozenset of patterns, frozenset of rows); (None, []) if the space is
    empty.
    """
    from cutintro.terms import alpha

    tset = frozenset(terms)
    tlist = sorted(tset, key=term_key)
    native: dict[frozenset, list[tuple[Term, frozenset]]] = {}
    for r in range(2, len(tlist) + 1):
        for combo in itertools.combinations(tlist, r):
            u, rows = antiunify(combo)
            key = frozenset(rows)
            if len(key) == 0:
                continue  # all-identical subset; impossible for distinct terms
            native.setdefault(key, []).append((u, frozenset(combo)))

    best_size: int | None = None
    best: list[tuple[frozenset, frozenset]] = []
    for key in native:
        rows = sorted(key, key=lambda row: tuple(term_key(t) for t in row))
        m = len(rows[0])
        if not all(_row_is_clean(row) for row in rows):
            continue
        # Collect all usable pairs: native plus lifted.
        pairs: list[tuple[Term, frozenset]] = list(native[key])
        for m0 in range(1, m):
            for inj in itertools.permutations(range(m), m0):
                proj = [tuple(row[c] for c in inj) for row in rows]
                if len(set(proj)) != len(rows):
                    continue
                src = frozenset(proj)
                for u0, covered in native.get(src, []):

                    def lift(t: Term) -> Term:
                        if isinstance(t, Var):
                            from cutintro.terms import alpha_index, is_alpha

                            assert is_alpha(t.name)
                            return alpha(inj[alpha_index(t.name) - 1] + 1)
                        if not t.args:
                            return t
                        return App(t.head, tuple(lift(a) for a in t.args))

                    pairs.append((lift(u0), covered))
        groups: dict[frozenset, set[Term]] = {}
        for u, covered in pairs:
            groups.setdefault(covered, set()).add(u)
        group_list = sorted(
            groups.items(), key=lambda kv: sorted(term_key(t) for t in kv[0])
        )
        if frozenset().union(*groups) != tset:
            continue
        # Exhaustive search over group subsets.
        for picks in itertools.chain.from_iterable(
            itertools.combinations(range(len(group_list)), k)
            for k in range(1, len(group_list) + 1)
        ):
            covered = frozenset().union(*(group_list[i][0] for i in picks))
            if covered != tset:
                continue
            patterns = frozenset().union(
                *(frozenset(group_list[i][1]) for i in picks)
            )
            used = set()
            for u in patterns:
                used |= _pattern_vars(u)
            if used != set(range(1, m + 1)):
                continue
            size = len(patterns) + len(key)
            if best_size is None or size < best_size:
                best_size = size
                best = [(patterns, key)]
            elif size == best_size:
                entry = (patterns, key)
                if entry not in best:
                    best.append(entry)
    return best_size, best
