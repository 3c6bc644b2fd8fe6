"""SMT-LIB export and an external-solver oracle.

Ground validity modulo equality maps to QF_UF: declare one uninterpreted
sort, assert the antecedent and the negated succedent, and ask for
satisfiability — unsat means the sequent is valid.  Any solver speaking
SMT-LIB 2 on files works as a drop-in oracle backend.
"""

from __future__ import annotations

import re
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .euf import Oracle, Verdict
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
    is_quantifier_free,
)
from .sequents import Sequent
from .terms import App, Term, Var

_PLAIN = re.compile(r"[A-Za-z~!@$%^&*_\-+=<>.?/][A-Za-z0-9~!@$%^&*_\-+=<>.?/]*\Z")


def _sym(name: str) -> str:
    if _PLAIN.match(name):
        return name
    escaped = name.replace("\\", "").replace("|", "")
    return f"|{escaped}|"


def _term_sexp(t: Term) -> str:
    if isinstance(t, Var):
        return _sym(t.name)
    if not t.args:
        return _sym(t.head)
    return "(" + " ".join([_sym(t.head)] + [_term_sexp(a) for a in t.args]) + ")"


def _formula_sexp(f: Formula) -> str:
    if isinstance(f, Atom):
        if not f.args:
            return _sym(f.pred)
        return (
            "(" + " ".join([_sym(f.pred)] + [_term_sexp(a) for a in f.args]) + ")"
        )
    if isinstance(f, Eq):
        return f"(= {_term_sexp(f.lhs)} {_term_sexp(f.rhs)})"
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Not):
        return f"(not {_formula_sexp(f.body)})"
    if isinstance(f, And):
        return f"(and {_formula_sexp(f.lhs)} {_formula_sexp(f.rhs)})"
    if isinstance(f, Or):
        return f"(or {_formula_sexp(f.lhs)} {_formula_sexp(f.rhs)})"
    if isinstance(f, Imp):
        return f"(=> {_formula_sexp(f.lhs)} {_formula_sexp(f.rhs)})"
    raise TypeError(f"cannot export quantified formula: {f!r}")


def _signature(seq: Sequent) -> tuple[dict[str, int], dict[str, int]]:
    funcs: dict[str, int] = {}
    preds: dict[str, int] = {}

    def walk_term(t: Term) -> None:
        if isinstance(t, Var):
            funcs.setdefault(t.name, 0)
            return
        funcs.setdefault(t.head, len(t.args))
        for a in t.args:
            walk_term(a)

    def walk(f: Formula) -> None:
        if isinstance(f, Atom):
            preds.setdefault(f.pred, len(f.args))
            for a in f.args:
                walk_term(a)
        elif isinstance(f, Eq):
            walk_term(f.lhs)
            walk_term(f.rhs)
        elif isinstance(f, Not):
            walk(f.body)
        elif isinstance(f, (And, Or, Imp)):
            walk(f.lhs)
            walk(f.rhs)

    for f in tuple(seq.ante) + tuple(seq.succ):
        walk(f)
    return funcs, preds


def export_smt2(seq: Sequent, logic: str = "QF_UF") -> str:
    """SMT-LIB 2 script that is unsat iff the sequent is valid."""
    for f in tuple(seq.ante) + tuple(seq.succ):
        if not is_quantifier_free(f):
            raise ValueError(f"sequent is not quantifier-free: {f!r}")
    funcs, preds = _signature(seq)
    lines = [f"(set-logic {logic})", "(declare-sort U 0)"]
    for name in sorted(funcs):
        arity = funcs[name]
        dom = " ".join(["U"] * arity)
        lines.append(f"(declare-fun {_sym(name)} ({dom}) U)")
    for name in sorted(preds):
        arity = preds[name]
        dom = " ".join(["U"] * arity)
        lines.append(f"(declare-fun {_sym(name)} ({dom}) Bool)")
    for f in seq.ante:
        lines.append(f"(assert {_formula_sexp(f)})")
    for f in seq.succ:
        lines.append(f"(assert (not {_formula_sexp(f)}))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


@dataclass
class CommandOracle(Oracle):
    """Runs an external SMT solver per query.

    ``template`` is a shell-free command line with a ``{file}``
    placeholder, e.g. ``z3 -smt2 {file}`` or ``veriT {file}``.  The
    first stdout line containing ``unsat`` or ``sat`` decides; anything
    else (including solver errors and timeouts) is UNKNOWN.
    """

    template: str
    timeout: float = 30.0
    calls: int = 0
    _memo: dict = field(default_factory=dict)

    def validity(self, seq: Sequent) -> Verdict:
        key = (tuple(seq.ante), tuple(seq.succ))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        v = self._run(export_smt2(seq))
        self._memo[key] = v
        return v

    def _run(self, script: str) -> Verdict:
        with tempfile.NamedTemporaryFile(
            "w", suffix=".smt2", delete=False
        ) as fh:
            fh.write(script)
            path = fh.name
        try:
            argv = [
                part.replace("{file}", path)
                for part in self.template.split()
            ]
            done = subprocess.run(
                argv,
                capture_output=True,
                text=True,
                timeout=self.timeout,
            )
        except (subprocess.TimeoutExpired, OSError):
            return Verdict.UNKNOWN
        finally:
            Path(path).unlink(missing_ok=True)
        for line in done.stdout.splitlines():
            word = line.strip()
            if word == "unsat":
                return Verdict.VALID
            if word == "sat":
                return Verdict.INVALID
        return Verdict.UNKNOWN
