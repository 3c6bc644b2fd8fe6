"""Herbrand structures, instance sequents, and the term-set encoding.

A Herbrand structure assigns each formula of the input sequent a set of
ground instantiation tuples (empty for formulas without a prefix).  It is
flattened into a single set of ground terms by wrapping each tuple of H_i
in a reserved head symbol tagging the formula position i; those heads
cannot appear in input files, so they never collide with user symbols.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import Formula, apply_subst
from .sequents import Sequent, Sigma1Sequent
from .terms import (
    App,
    Term,
    is_ground,
    is_tag_head,
    tag_head,
    tag_index,
    tuple_key,
)


@dataclass(frozen=True)
class HerbrandStructure:
    """instances[i-1] is the set of ground tuples for formula i (1-based)."""

    instances: tuple[frozenset[tuple[Term, ...]], ...]

    @property
    def size(self) -> int:
        return sum(len(h) for h in self.instances)

    def validate(self, seq: Sigma1Sequent) -> None:
        if len(self.instances) != seq.q:
            raise ValueError(
                f"structure has {len(self.instances)} components,"
                f" sequent has {seq.q} formulas"
            )
        for i in range(1, seq.q + 1):
            k = seq.k(i)
            for tup in self.instances[i - 1]:
                if k == 0:
                    raise ValueError(f"formula {i} admits no instances")
                if len(tup) != k:
                    raise ValueError(
                        f"formula {i}: instance arity {len(tup)} != {k}"
                    )
                if not all(is_ground(t) for t in tup):
                    raise ValueError(f"formula {i}: non-ground instance")


@dataclass(frozen=True)
class TermSet:
    """The flattened form: every term is tag-headed; q is the number of
    formula positions (needed to reconstruct empty components)."""

    terms: frozenset[App]
    q: int

    def __len__(self) -> int:
        return len(self.terms)


def encode_termset(h: HerbrandStructure) -> TermSet:
    terms = frozenset(
        App(tag_head(i + 1), tup)
        for i, component in enumerate(h.instances)
        for tup in component
    )
    return TermSet(terms, len(h.instances))


def decode_termset(ts: TermSet) -> HerbrandStructure:
    out: list[set[tuple[Term, ...]]] = [set() for _ in range(ts.q)]
    for t in ts.terms:
        if not is_tag_head(t.head):
            raise ValueError(f"foreign head symbol {t.head!r} in term set")
        i = tag_index(t.head)
        if not 1 <= i <= ts.q:
            raise ValueError(f"tag index {i} out of range 1..{ts.q}")
        out[i - 1].add(t.args)
    return HerbrandStructure(tuple(frozenset(s) for s in out))


def instance_formulas(seq: Sigma1Sequent, h: HerbrandStructure, i: int) -> tuple[Formula, ...]:
    """The instances of formula i: the matrix under each tuple of H_i if the
    formula is quantified, else the matrix itself.  Deterministic order."""
    pf = seq.formula(i)
    if pf.k == 0:
        return (pf.matrix,)
    tuples = sorted(h.instances[i - 1], key=tuple_key)
    return tuple(
        apply_subst(pf.matrix, dict(zip(pf.vars, tup))) for tup in tuples
    )


def herbrand_sequent(seq: Sigma1Sequent, h: HerbrandStructure) -> Sequent:
    """The quantifier-free instance sequent.  Its size (for compression
    bookkeeping) is the structure size: only instantiated formulas count."""
    ante: list[Formula] = []
    succ: list[Formula] = []
    for i in range(1, seq.q + 1):
        target = ante if i <= seq.p else succ
        target.extend(instance_formulas(seq, h, i))
    return Sequent(tuple(ante), tuple(succ))
