"""End-to-end cut introduction on one input file.

The stages: parse the sequent and its instance lists, encode the term
set, search for a minimal decomposition, synthesize the canonical cut
formula, improve it by forgetful inference, and assemble and recheck the
proof with cut.  Every stage respects a cooperative wall-clock deadline;
the report carries one of five statuses:

- ``compressed``      a decomposition no larger than the term set was
                      found and turned into a checked proof
- ``uncompressible``  the search found nothing that small
- ``too_large``       the term set exceeds the subset-table limit
- ``timeout``         the deadline struck mid-search
- ``error``           bad input or no certifiable solution
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .cnf import DEFAULT_CNF_CAP
from .cutformula import (
    SchematicEHS,
    SolutionCandidate,
    build_schematic_ehs,
    canonical_solution,
    check_solution,
    select_best,
    sf_improve,
)
from .decomposition import (
    DEFAULT_TERMSET_LIMIT,
    Decomposition,
    TermSetTooLarge,
    build_delta_table,
    fold_delta_table,
    restrict_ci1,
    to_structure_decomposition,
)
from .euf import DEFAULT_STEP_CAP, InternalOracle, Oracle, Verdict
from .formulas import formula_size, render_formula
from .herbrand import encode_termset, herbrand_sequent
from .parser import InputError, parse_input
from .proofs import (
    ProofBuildError,
    build_proof_with_cut,
    check_proof_report,
    metrics,
    proof_to_json,
    render_proof,
)
from .serialize import term_to_json
from .terms import tuple_key


class PipelineTimeout(Exception):
    pass


@dataclass
class RunConfig:
    mode: str = "cistar"  # "cistar": any arity; "ci1": one variable
    timeout: Optional[float] = 60.0
    max_subset: Optional[int] = None
    termset_limit: int = DEFAULT_TERMSET_LIMIT
    sf_cap: int = 10_000
    step_cap: int = DEFAULT_STEP_CAP
    cnf_cap: int = DEFAULT_CNF_CAP
    oracle_spec: str = "internal"  # or "cmd:<template with {file}>"
    out_dir: Optional[str] = None

    def __post_init__(self) -> None:
        if self.mode not in ("cistar", "ci1"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.timeout is not None and self.timeout <= 0:
            raise ValueError("timeout must be positive (or None for no limit)")
        if self.termset_limit < 1:
            raise ValueError("termset_limit must be at least 1")
        if self.oracle_spec != "internal" and not self.oracle_spec.startswith(
            "cmd:"
        ):
            raise ValueError(f"unknown oracle {self.oracle_spec!r}")


@dataclass
class RunReport:
    input: str
    mode: str
    status: str
    termset_size: Optional[int] = None
    decomposition: Optional[dict] = None
    canonical_size: Optional[int] = None
    improved_size: Optional[int] = None
    comq: Optional[int] = None
    wall_time: float = 0.0
    strictly_compressed: bool = False
    cut_formula: Optional[str] = None
    sf_visited: Optional[int] = None
    sf_capped: bool = False
    messages: list = field(default_factory=list)

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


def _make_oracle(cfg: RunConfig, cancel) -> Oracle:
    if cfg.oracle_spec == "internal":
        return InternalOracle(
            step_cap=cfg.step_cap, cnf_cap=cfg.cnf_cap, cancel=cancel
        )
    from .smt import CommandOracle

    return CommandOracle(template=cfg.oracle_spec[len("cmd:"):])


def run_pipeline(path: str | Path, cfg: Optional[RunConfig] = None) -> RunReport:
    cfg = cfg or RunConfig()
    start = time.monotonic()
    deadline = start + cfg.timeout if cfg.timeout else None

    def cancel() -> None:
        if deadline is not None and time.monotonic() > deadline:
            raise PipelineTimeout()

    report = RunReport(input=str(path), mode=cfg.mode, status="error")
    oracle = _make_oracle(cfg, cancel)
    try:
        _run(path, cfg, oracle, cancel, report)
    except PipelineTimeout:
        report.status = "timeout"
        report.messages.append(
            f"deadline of {cfg.timeout:.0f}s struck during the search"
        )
    except TermSetTooLarge as err:
        report.status = "too_large"
        report.termset_size = err.size
        report.messages.append(str(err))
    except (InputError, OSError) as err:
        report.status = "error"
        report.messages.append(str(err))
    report.wall_time = time.monotonic() - start
    if cfg.out_dir:
        _write_report(report, cfg.out_dir)
    return report


def _run(path, cfg: RunConfig, oracle: Oracle, cancel, report: RunReport):
    text = Path(path).read_text(encoding="utf-8")
    seq, hs = parse_input(text)

    hseq = herbrand_sequent(seq, hs)
    verdict = oracle.validity(hseq)
    if verdict is Verdict.INVALID:
        raise InputError(
            "the instance lists do not witness the sequent: the "
            "instantiated sequent is falsifiable"
        )
    if verdict is Verdict.UNKNOWN:
        report.messages.append(
            "could not certify the instantiated sequent (resource cap); "
            "continuing"
        )

    termset = encode_termset(hs)
    report.termset_size = len(termset)

    table = build_delta_table(
        termset,
        max_subset=cfg.max_subset,
        limit=cfg.termset_limit,
        cancel=cancel,
    )
    if cfg.mode == "ci1":
        table = restrict_ci1(table)
    decs = fold_delta_table(table, termset, cancel=cancel)
    if not decs:
        report.status = "uncompressible"
        report.messages.append(
            "no single-variable decomposition exists for this term set"
            if cfg.mode == "ci1"
            else "no decomposition exists for this term set"
        )
        return
    report.decomposition = _decomposition_json(decs[0], seq.q)
    if decs[0].size > len(termset):
        report.status = "uncompressible"
        report.messages.append(
            f"minimal decomposition has size {decs[0].size} > "
            f"{len(termset)} instances"
        )
        return

    failures: list[str] = []
    for dec in decs:
        cancel()
        outcome = _try_decomposition(dec, seq, cfg, oracle, cancel, failures)
        if outcome is None:
            continue
        ehs, best, proof, sf = outcome
        ok, msg = check_proof_report(proof, oracle)
        if not ok:
            failures.append(f"constructed proof failed its recheck: {msg}")
            continue
        report.decomposition = _decomposition_json(dec, seq.q)
        report.canonical_size = formula_size(canonical_solution(ehs).formula)
        report.improved_size = formula_size(best.formula)
        report.comq = metrics(proof)["comq"]
        report.cut_formula = render_formula(best.formula)
        report.sf_visited = sf.visited
        report.sf_capped = sf.capped
        report.status = "compressed"
        report.strictly_compressed = dec.size < len(termset)
        if cfg.out_dir:
            _write_artifacts(cfg.out_dir, ehs, best, proof, sf)
        return
    report.status = "error"
    report.messages.extend(
        failures or ["no decomposition yielded a certifiable proof"]
    )


def _try_decomposition(
    dec: Decomposition, seq, cfg: RunConfig, oracle, cancel, failures: list
):
    try:
        sd = to_structure_decomposition(dec, seq.q)
        ehs = build_schematic_ehs(seq, sd)
    except ValueError as err:
        failures.append(str(err))
        return None
    cand = canonical_solution(ehs)
    if not check_solution(ehs, cand.formula, oracle):
        failures.append(
            "canonical solution could not be certified for "
            f"{dec.render()}"
        )
        return None
    sf = sf_improve(ehs, cand, oracle, node_cap=cfg.sf_cap, cancel=cancel)
    for candidate in sorted(sf.candidates, key=SolutionCandidate.sort_key):
        cancel()
        try:
            proof = build_proof_with_cut(ehs, candidate.formula, oracle)
        except ProofBuildError as err:
            failures.append(str(err))
            continue
        return ehs, candidate, proof, sf
    return None


def _decomposition_json(dec: Decomposition, q: int) -> dict:
    sd = to_structure_decomposition(dec, q)
    return {
        "u_sizes": [len(ui) for ui in sd.u],
        "w_size": len(dec.w),
        "size": dec.size,
        "arity": dec.arity,
        "rendered": dec.render(),
    }


def _write_report(report: RunReport, out_dir: str) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(
        json.dumps(report.to_json(), indent=2) + "\n", encoding="utf-8"
    )


def _write_artifacts(
    out_dir: str,
    ehs: SchematicEHS,
    best: SolutionCandidate,
    proof,
    sf,
) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    canonical = canonical_solution(ehs)
    lines = [
        "canonical solution:",
        "  " + render_formula(canonical.formula),
        "",
        f"selected solution (of {len(sf.candidates)} found):",
        "  " + render_formula(best.formula),
        "",
        "derivation:",
    ]
    lines += [f"  {step}" for step in best.provenance]
    (out / "solution.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    (out / "proof.txt").write_text(render_proof(proof) + "\n", encoding="utf-8")
    (out / "proof.json").write_text(
        json.dumps(proof_to_json(proof), indent=2) + "\n", encoding="utf-8"
    )
    dec_json = {
        "w": [[term_to_json(t) for t in row] for row in ehs.w],
        "u": [
            [
                [term_to_json(t) for t in tup]
                for tup in sorted(ui, key=tuple_key)
            ]
            for ui in ehs.u
        ],
    }
    (out / "decomposition.json").write_text(
        json.dumps(dec_json, indent=2) + "\n", encoding="utf-8"
    )
