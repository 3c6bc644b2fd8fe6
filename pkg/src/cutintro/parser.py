"""Parser for the `.cis` input format.

A file is a sequence of declarations, each terminated by a period:

    ante <formula> .        antecedent formula (universal prefix allowed)
    succ <formula> .        succedent formula (existential prefix allowed)
    inst <N>: <tuples> .    instance tuples for formula number N

    formula := "all" v+ ":" qf | "ex" v+ ":" qf | qf
    qf      := precedence  ~  >  &  >  |  >  ->   (binary ops right-assoc)
    atom    := p | p(t, ...) | t = t
    term    := x | f(t, ...)
    tuples  := tuple (";" tuple)* ; tuple := term | "(" term ("," term)* ")"

`%` starts a line comment.  Formula numbers are 1-based in
antecedent-then-succedent order.  Identifiers bound in a prefix are
variables inside that formula's matrix; everything else is a function
symbol or constant.  Names in the generated-variable namespace are
rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .formulas import And, Atom, Eq, Formula, Imp, Not, Or, render_formula
from .herbrand import HerbrandStructure
from .sequents import PrenexFormula, Sigma1Sequent
from .terms import App, Term, Var, is_alpha, render_term, render_tuple


class InputError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.msg = msg
        self.line = line
        self.col = col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{msg}{where}")


@dataclass(frozen=True)
class _Tok:
    kind: str  # IDENT NAT PUNCT EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>%[^\n]*)
    | (?P<ident>[^\W\d]\w*'*)
    | (?P<nat>\d+)
    | (?P<punct>->|[().,:;=~&|])
    """,
    re.VERBOSE | re.UNICODE,
)


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col, i = 1, 1, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise InputError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "ident":
            if is_alpha(s):
                raise InputError(
                    f"identifier {s!r} is in the reserved variable namespace",
                    line,
                    col,
                )
            toks.append(_Tok("IDENT", s, line, col))
        elif kind == "nat":
            toks.append(_Tok("NAT", s, line, col))
        elif kind == "punct":
            toks.append(_Tok("PUNCT", s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        i = m.end()
    toks.append(_Tok("EOF", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def err(self, msg: str) -> InputError:
        t = self.peek()
        return InputError(msg, t.line, t.col)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text or t.kind == "EOF":
            raise self.err(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.next()

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind != "EOF" and t.text == text

    # --- declarations -------------------------------------------------

    def parse_file(self):
        ante: list[PrenexFormula] = []
        succ: list[PrenexFormula] = []
        # (formula number, tuples, position) resolved after all formulas.
        insts: list[tuple[int, list[tuple[Term, ...]], _Tok]] = []
        while self.peek().kind != "EOF":
            t = self.peek()
            if t.text == "ante":
                self.next()
                ante.append(self.parse_prenex("all"))
            elif t.text == "succ":
                self.next()
                succ.append(self.parse_prenex("ex"))
            elif t.text == "inst":
                self.next()
                at = self.peek()
                if at.kind != "NAT":
                    raise self.err("expected a formula number after 'inst'")
                n = int(self.next().text)
                self.expect(":")
                insts.append((n, self.parse_instlist(), at))
            else:
                raise self.err(
                    f"expected 'ante', 'succ' or 'inst', found {t.text!r}"
                )
            self.expect(".")
        return ante, succ, insts

    def parse_prenex(self, kind: str) -> PrenexFormula:
        t = self.peek()
        if t.text in ("all", "ex"):
            if t.text != kind:
                side = "antecedent" if kind == "all" else "succedent"
                raise self.err(
                    f"{t.text!r} prefix is a strong quantifier in the {side}"
                )
            self.next()
            names: list[str] = []
            while self.peek().kind == "IDENT" and not self.at(":"):
                names.append(self.next().text)
            if not names:
                raise self.err("expected at least one bound variable")
            if len(set(names)) != len(names):
                raise self.err("repeated bound variable in prefix")
            self.expect(":")
            matrix = self.parse_imp(frozenset(names))
            return PrenexFormula(tuple(names), matrix)
        return PrenexFormula((), self.parse_imp(frozenset()))

    # --- formulas -----------------------------------------------------

    def parse_imp(self, bound: frozenset[str]) -> Formula:
        lhs = self.parse_or(bound)
        if self.at("->"):
            self.next()
            return Imp(lhs, self.parse_imp(bound))
        return lhs

    def parse_or(self, bound: frozenset[str]) -> Formula:
        lhs = self.parse_and(bound)
        if self.at("|"):
            self.next()
            return Or(lhs, self.parse_or(bound))
        return lhs

    def parse_and(self, bound: frozenset[str]) -> Formula:
        lhs = self.parse_unary(bound)
        if self.at("&"):
            self.next()
            return And(lhs, self.parse_and(bound))
        return lhs

    def parse_unary(self, bound: frozenset[str]) -> Formula:
        if self.at("~"):
            self.next()
            return Not(self.parse_unary(bound))
        if self.at("("):
            self.next()
            f = self.parse_imp(bound)
            self.expect(")")
            return f
        if self.peek().text in ("all", "ex"):
            raise self.err("quantifiers are only allowed as a top-level prefix")
        return self.parse_atom(bound)

    def parse_atom(self, bound: frozenset[str]) -> Formula:
        t = self.parse_term(bound)
        if self.at("="):
            self.next()
            return Eq(t, self.parse_term(bound))
        # Not an equation: reinterpret the application as a predicate atom.
        if isinstance(t, Var):
            raise self.err(
                f"bound variable {t.name!r} cannot stand alone as an atom"
            )
        return Atom(t.head, t.args)

    # --- terms ----------------------------------------------------------

    def parse_term(self, bound: frozenset[str]) -> Term:
        t = self.peek()
        if t.kind != "IDENT":
            raise self.err(f"expected a term, found {t.text or 'end of input'!r}")
        name = self.next().text
        if self.at("("):
            if name in bound:
                raise self.err(
                    f"quantified variable {name!r} used as a function symbol"
                )
            self.next()
            args = [self.parse_term(bound)]
            while self.at(","):
                self.next()
                args.append(self.parse_term(bound))
            self.expect(")")
            return App(name, tuple(args))
        if name in bound:
            return Var(name)
        return App(name, ())

    # --- instance tuples ----------------------------------------------

    def parse_instlist(self) -> list[tuple[Term, ...]]:
        if self.at("."):
            return []
        tuples = [self.parse_tuple()]
        while self.at(";"):
            self.next()
            tuples.append(self.parse_tuple())
        return tuples

    def parse_tuple(self) -> tuple[Term, ...]:
        if self.at("("):
            self.next()
            ts = [self.parse_term(frozenset())]
            while self.at(","):
                self.next()
                ts.append(self.parse_term(frozenset()))
            self.expect(")")
            return tuple(ts)
        return (self.parse_term(frozenset()),)


def _check_signature(seq: Sigma1Sequent, structure: HerbrandStructure) -> None:
    """Arity consistency for functions and predicates across the input."""
    fun_arity: dict[str, int] = {}
    pred_arity: dict[str, int] = {}

    def see_term(t: Term) -> None:
        if isinstance(t, Var):
            return
        old = fun_arity.setdefault(t.head, len(t.args))
        if old != len(t.args):
            raise InputError(
                f"function symbol {t.head!r} used with arity {len(t.args)}"
                f" and {old}"
            )
        for a in t.args:
            see_term(a)

    def see_formula(f: Formula) -> None:
        if isinstance(f, Atom):
            old = pred_arity.setdefault(f.pred, len(f.args))
            if old != len(f.args):
                raise InputError(
                    f"predicate {f.pred!r} used with arity {len(f.args)}"
                    f" and {old}"
                )
            for a in f.args:
                see_term(a)
        elif isinstance(f, Eq):
            see_term(f.lhs)
            see_term(f.rhs)
        elif isinstance(f, Not):
            see_formula(f.body)
        elif isinstance(f, (And, Or, Imp)):
            see_formula(f.lhs)
            see_formula(f.rhs)

    for i in range(1, seq.q + 1):
        see_formula(seq.formula(i).matrix)
    for h in structure.instances:
        for tup in h:
            for t in tup:
                see_term(t)
    clash = set(fun_arity) & set(pred_arity)
    if clash:
        raise InputError(
            f"symbols used both as function and predicate: {sorted(clash)}"
        )


def parse_input(text: str) -> tuple[Sigma1Sequent, HerbrandStructure]:
    ante, succ, insts = _Parser(text).parse_file()
    seq = Sigma1Sequent(tuple(ante), tuple(succ))
    try:
        seq.validate()
    except ValueError as e:
        raise InputError(str(e)) from None
    collected: list[set[tuple[Term, ...]]] = [set() for _ in range(seq.q)]
    for n, tuples, tok in insts:
        if not 1 <= n <= seq.q:
            raise InputError(
                f"inst refers to formula {n}, but there are only {seq.q}",
                tok.line,
                tok.col,
            )
        k = seq.k(n)
        if k == 0:
            raise InputError(
                f"formula {n} has no quantifier prefix, instances not allowed",
                tok.line,
                tok.col,
            )
        for tup in tuples:
            if len(tup) != k:
                raise InputError(
                    f"instance {render_tuple(tup)} for formula {n} has arity"
                    f" {len(tup)}, expected {k}",
                    tok.line,
                    tok.col,
                )
        collected[n - 1].update(tuples)
    structure = HerbrandStructure(tuple(frozenset(s) for s in collected))
    _check_signature(seq, structure)
    return seq, structure


def render_input(seq: Sigma1Sequent, structure: HerbrandStructure) -> str:
    """Inverse of parse_input, up to declaration order and whitespace."""
    from .terms import tuple_key

    lines: list[str] = []
    for pf in seq.ante:
        lines.append(f"ante {render_formula(pf.to_formula('all'))}.")
    for pf in seq.succ:
        lines.append(f"succ {render_formula(pf.to_formula('ex'))}.")
    for i in range(1, seq.q + 1):
        h = structure.instances[i - 1]
        if not h:
            continue
        rendered = []
        for tup in sorted(h, key=tuple_key):
            if len(tup) == 1:
                rendered.append(render_term(tup[0]))
            else:
                rendered.append(render_tuple(tup))
        lines.append(f"inst {i}: {'; '.join(rendered)}.")
    return "\n".join(lines) + "\n"
