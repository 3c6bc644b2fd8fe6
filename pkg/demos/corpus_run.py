"""Batch-running a directory of inputs and reading the aggregate output.

The batch driver walks a directory of .cis files, runs the full
pipeline on each, and aggregates the results into status counts, size
buckets, and a (term-set size, decomposition size) scatter — the same
data the `cutintro corpus` command emits.

The inputs here are one scalable family: a chain lemma
    P(c), all x: P(x) -> P(f(x))  |-  P(f^n(c))
whose cut-free proof instantiates the step formula n times.  Chains
factor like integers: n = a * b compresses to a patterns + b vectors,
so composite lengths compress strictly, short or prime-ish ones only
break even, and one flat input shows a genuinely uncompressible case.

Run with:  python3 demos/corpus_run.py
"""

import json
import tempfile
from pathlib import Path

from cutintro import RunConfig, emit_stats, run_corpus, write_corpus_outputs


def chain_input(n: int) -> str:
    def fk(i: int) -> str:
        return "f(" * i + "c" + ")" * i

    insts = "; ".join(fk(i) for i in range(n))
    return (
        f"% chain of {n} modus-ponens steps\n"
        "ante P(c).\n"
        "ante all x: P(x) -> P(f(x)).\n"
        f"succ P({fk(n)}).\n\n"
        f"inst 2: {insts}.\n"
    )


FLAT = """% two unrelated instances: nothing to share
ante all x: P(x).
succ P(a) & P(b).

inst 1: a; b.
"""

with tempfile.TemporaryDirectory() as tmp:
    root = Path(tmp)
    corpus = root / "corpus"
    corpus.mkdir()
    for n in (4, 6, 9, 12, 25):
        (corpus / f"chain_{n:02}.cis").write_text(chain_input(n))
    (corpus / "flat.cis").write_text(FLAT)

    print(f"running {len(list(corpus.iterdir()))} inputs ...\n")
    reports = run_corpus(corpus, RunConfig(timeout=60))

    header = f"{'input':<14} {'status':<14} {'terms':>5} {'dec':>4} {'comq':>4}"
    print(header)
    print("-" * len(header))
    for r in reports:
        dec = r.decomposition["size"] if r.decomposition else "-"
        print(
            f"{Path(r.input).name:<14} {r.status:<14} "
            f"{r.termset_size if r.termset_size is not None else '-':>5} "
            f"{dec:>4} {r.comq if r.comq is not None else '-':>4}"
        )

    print()
    print("aggregate (stats.json):")
    print(json.dumps(emit_stats(reports), indent=2))

    out = root / "summary"
    write_corpus_outputs(reports, out)
    print(f"\nwrote {sorted(p.name for p in out.iterdir())} "
          f"(under a temporary directory for this demo)")
