"""Acceptance gate: every deliverable property, one test per criterion.

Each test runs the corresponding verification suite (the same code path
as ``linkforms verify <name>``), prints its one-line verdict, and
enforces the wall-clock limit.  Run with ``pytest -s`` to see the lines.
"""

import pytest

from linkforms import verify

CRITERIA = [
    ("split-injectivity", 5),
    ("classification", 60),
    ("aut-orbit", 30),
    ("rank-reduction", 60),
    ("stable-rank-reduction", 120),
    ("base-case", 600),
    ("link-iso", 300),
    ("transitivity", 120),
    ("cancellation", 60),
    ("bordism-tables", 1),
    ("ak-calculus", 1),
    ("homology-engine", 60),
    ("harnesses", 300),
]


@pytest.mark.parametrize("name,limit", CRITERIA, ids=[n for n, _ in CRITERIA])
def test_criterion(name, limit):
    result = verify.run_suite(name)
    print(result.line())
    assert result.passed, f"{name} failed: {result.detail} | {result.stats}"
    assert result.seconds < limit, (
        f"{name} took {result.seconds:.1f}s, over the {limit}s limit"
    )


def test_gate_covers_every_suite():
    assert [n for n, _ in CRITERIA] == list(verify.SUITES)
