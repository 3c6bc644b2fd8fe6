"""Shared fixtures: the bundled running example at each pipeline stage."""

from __future__ import annotations

from importlib.resources import files

import pytest

from cutintro.cutformula import canonical_solution, sf_improve
from cutintro.decomposition import (
    build_delta_table,
    fold_delta_table,
    to_structure_decomposition,
)
from cutintro.cutformula import build_schematic_ehs
from cutintro.euf import InternalOracle
from cutintro.herbrand import encode_termset
from cutintro.parser import parse_input


@pytest.fixture(scope="session")
def golden_text() -> str:
    return (
        files("cutintro").joinpath("data/running_example.cis").read_text()
    )


@pytest.fixture(scope="session")
def golden(golden_text):
    return parse_input(golden_text)


@pytest.fixture(scope="session")
def golden_termset(golden):
    _, hs = golden
    return encode_termset(hs)


@pytest.fixture(scope="session")
def golden_table(golden_termset):
    return build_delta_table(golden_termset)


@pytest.fixture(scope="session")
def golden_decompositions(golden_table, golden_termset):
    return fold_delta_table(golden_table, golden_termset)


@pytest.fixture(scope="session")
def golden_ehs(golden, golden_decompositions):
    seq, _ = golden
    sd = to_structure_decomposition(golden_decompositions[0], seq.q)
    return build_schematic_ehs(seq, sd)


@pytest.fixture(scope="session")
def golden_oracle():
    return InternalOracle()


@pytest.fixture(scope="session")
def golden_sf(golden_ehs, golden_oracle):
    return sf_improve(
        golden_ehs, canonical_solution(golden_ehs), golden_oracle
    )


@pytest.fixture
def oracle():
    return InternalOracle()
