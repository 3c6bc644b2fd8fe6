"""Cut introduction: compress cut-free proofs with one quantified cut.

The pipeline takes a sequent of prenex formulas together with the term
lists a cut-free proof instantiates them with, finds a small
decomposition of that term set, synthesizes a quantified cut formula
from it, and rebuilds a checkable proof whose quantifier complexity is
the decomposition size.
"""

from .cnf import CnfBlowup, formula_of_cnf, simplify_clauses, to_cnf
from .corpus import emit_stats, run_corpus, write_corpus_outputs
from .cutformula import (
    SchematicEHS,
    SchemaError,
    SFResult,
    SolutionCandidate,
    build_schematic_ehs,
    canonical_solution,
    check_solution,
    check_solution_verdict,
    forget,
    forget_steps,
    guard_sequent,
    select_best,
    sf_improve,
    solution_sequent,
)
from .decomposition import (
    Decomposition,
    DeltaTable,
    SimpleDecomposition,
    StructureDecomposition,
    TermSetTooLarge,
    build_delta_table,
    delta_g,
    fold_delta_table,
    restrict_ci1,
    to_structure_decomposition,
    validate_decomposition,
)
from .euf import (
    CongruenceClosure,
    InternalOracle,
    Oracle,
    OracleLimit,
    Verdict,
    decide_tautology,
    decide_validity,
    is_quasi_tautology,
    is_tautology,
)
from .formulas import (
    And,
    Atom,
    Bottom,
    Eq,
    Formula,
    Imp,
    Not,
    Or,
    QuantBlock,
    Top,
    apply_subst,
    formula_size,
    formula_vars,
    is_quantifier_free,
    render_formula,
)
from .herbrand import (
    HerbrandStructure,
    TermSet,
    decode_termset,
    encode_termset,
    herbrand_sequent,
    instance_formulas,
)
from .parser import InputError, parse_input, render_input
from .pipeline import PipelineTimeout, RunConfig, RunReport, run_pipeline
from .proofs import (
    ProofBuildError,
    ProofCheckError,
    build_proof_with_cut,
    check_proof,
    check_proof_report,
    metrics,
    proof_from_json,
    proof_to_json,
    render_proof,
)
from .sequents import PrenexFormula, Sequent, Sigma1Sequent
from .smt import CommandOracle, export_smt2
from .terms import App, Term, Var, render_term, subst_term

__version__ = "1.0.0"

__all__ = [
    "And",
    "App",
    "Atom",
    "Bottom",
    "CnfBlowup",
    "CommandOracle",
    "CongruenceClosure",
    "Decomposition",
    "DeltaTable",
    "Eq",
    "Formula",
    "HerbrandStructure",
    "Imp",
    "InputError",
    "InternalOracle",
    "Not",
    "Or",
    "Oracle",
    "OracleLimit",
    "PipelineTimeout",
    "PrenexFormula",
    "ProofBuildError",
    "ProofCheckError",
    "QuantBlock",
    "RunConfig",
    "RunReport",
    "SFResult",
    "SchemaError",
    "SchematicEHS",
    "Sequent",
    "Sigma1Sequent",
    "SimpleDecomposition",
    "SolutionCandidate",
    "StructureDecomposition",
    "Term",
    "TermSet",
    "TermSetTooLarge",
    "Top",
    "Var",
    "Verdict",
    "apply_subst",
    "build_delta_table",
    "build_proof_with_cut",
    "build_schematic_ehs",
    "canonical_solution",
    "check_proof",
    "check_proof_report",
    "check_solution",
    "check_solution_verdict",
    "decide_tautology",
    "decide_validity",
    "decode_termset",
    "delta_g",
    "emit_stats",
    "encode_termset",
    "export_smt2",
    "fold_delta_table",
    "forget",
    "forget_steps",
    "formula_of_cnf",
    "formula_size",
    "formula_vars",
    "guard_sequent",
    "herbrand_sequent",
    "instance_formulas",
    "is_quantifier_free",
    "is_quasi_tautology",
    "is_tautology",
    "metrics",
    "parse_input",
    "proof_from_json",
    "proof_to_json",
    "render_formula",
    "render_input",
    "render_proof",
    "render_term",
    "restrict_ci1",
    "run_corpus",
    "run_pipeline",
    "select_best",
    "sf_improve",
    "simplify_clauses",
    "solution_sequent",
    "subst_term",
    "to_cnf",
    "to_structure_decomposition",
    "validate_decomposition",
    "write_corpus_outputs",
]
