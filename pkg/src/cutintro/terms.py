"""First-order terms: variables and applications, substitution, ordering.

Terms are immutable values with structural equality, so they can serve as
dictionary keys and set members throughout the decomposition machinery.
Constants are zero-argument applications.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

# Names starting with this prefix are the generated cut variables alpha_1,
# alpha_2, ...; the input parser rejects them so user symbols never collide.
ALPHA_PREFIX = "α"

# Reserved head symbols tagging which end-sequent formula an instance tuple
# belongs to.  '#' is not a token character, so they are unparseable.
TAG_PREFIX = "#f"


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True)
class App:
    head: str
    args: tuple["Term", ...] = ()

    def __repr__(self) -> str:
        if not self.args:
            return f"App({self.head!r})"
        return f"App({self.head!r}, {self.args!r})"


Term = Union[Var, App]


def const(name: str) -> App:
    return App(name, ())


def alpha(i: int) -> Var:
    """The i-th generated variable (1-based)."""
    return Var(f"{ALPHA_PREFIX}{i}")


def is_alpha(name: str) -> bool:
    return name.startswith(ALPHA_PREFIX)


def alpha_index(name: str) -> int:
    return int(name[len(ALPHA_PREFIX):])


def tag_head(i: int) -> str:
    """Reserved head symbol for formula position i (1-based)."""
    return f"{TAG_PREFIX}{i}"


def is_tag_head(head: str) -> bool:
    return head.startswith(TAG_PREFIX)


def tag_index(head: str) -> int:
    return int(head[len(TAG_PREFIX):])


def is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    return all(is_ground(a) for a in t.args)


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    out: set[str] = set()
    for a in t.args:
        out |= term_vars(a)
    return out


def subterms(t: Term) -> Iterator[Term]:
    """All subterms including t itself, pre-order."""
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def subst_term(t: Term, sub: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return sub.get(t.name, t)
    if not t.args:
        return t
    return App(t.head, tuple(subst_term(a, sub) for a in t.args))


def contains_subterm(t: Term, s: Term) -> bool:
    return any(x == s for x in subterms(t))


def replace_at(t: Term, pos: tuple[int, ...], repl: Term) -> Term:
    """Replace the subterm at position pos (child indices from the root)."""
    if not pos:
        return repl
    assert isinstance(t, App)
    i = pos[0]
    args = list(t.args)
    args[i] = replace_at(args[i], pos[1:], repl)
    return App(t.head, tuple(args))


def positions_of(t: Term, s: Term) -> list[tuple[int, ...]]:
    """All positions where s occurs as a subterm of t."""
    out: list[tuple[int, ...]] = []

    def walk(x: Term, pos: tuple[int, ...]) -> None:
        if x == s:
            out.append(pos)
        if isinstance(x, App):
            for i, a in enumerate(x.args):
                walk(a, pos + (i,))

    walk(t, ())
    return out


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.head
    return f"{t.head}({', '.join(render_term(a) for a in t.args)})"


def _name_key(name: str) -> tuple:
    # Generated variables sort by their index so that alpha_2 < alpha_10.
    if is_alpha(name):
        return (0, alpha_index(name), "")
    return (1, 0, name)


def term_key(t: Term) -> tuple:
    """Total structural order: variables before applications, then by name
    and arguments.  Used everywhere a deterministic term order is needed."""
    if isinstance(t, Var):
        return (0, _name_key(t.name))
    return (1, _name_key(t.head), tuple(term_key(a) for a in t.args))


def tuple_key(ts: tuple[Term, ...]) -> tuple:
    return tuple(term_key(t) for t in ts)


def render_tuple(ts: tuple[Term, ...]) -> str:
    return "(" + ", ".join(render_term(t) for t in ts) + ")"
