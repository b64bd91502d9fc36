"""Acceptance suite: one test per shipped guarantee, each printing a labeled
pass line with its runtime. Run with `pytest tests/test_acceptance.py -v -s`.
"""

from __future__ import annotations

import os
import time
from fractions import Fraction

import pytest

from closefact.cli import run
from closefact.family import family_instance, family_threshold_scan
from closefact.model import (
    CaseTag,
    classify,
    decompose,
    quad_from_triple,
    sharp_bound,
)
from closefact.search import cross_check, enumerate_quads, max_ab, scan_gaps

_WORKERS = min(8, os.cpu_count() or 1)


@pytest.fixture(scope="module")
def quads_c40():
    return list(enumerate_quads(40))


def _done(num: int, started: float, text: str) -> None:
    print(f"criterion {num}: PASS ({time.perf_counter() - started:.2f}s) - {text}")


def test_criterion_1_family_reproduction():
    t0 = time.perf_counter()
    for N in (1, 2, 5, 100):
        inst = family_instance(N)
        assert inst.n == N * (N + 1) ** 2 * (N + 2) * (2 * N + 1) * (2 * N + 3)
        pairs = inst.triple.factor_pairs()
        for x, y in pairs:
            assert x * y == inst.n
        if N == 1:
            assert pairs == ((9, 20), (10, 18), (12, 15))
            assert inst.n == 180
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _done(1, t0, "family instances N in {1,2,5,100} re-multiply exactly")


def test_criterion_2_sharp_bound_attained():
    t0 = time.perf_counter()
    report13 = max_ab(13)
    entry13 = report13.maxima[0]
    assert entry13.max_ab == 468
    assert sharp_bound(13) == 468
    assert entry13.max_b_quad.as_tuple() == (5, 6, 11, 13)
    for c in range(10, 25):
        report = max_ab(c)
        assert report.violations == [], c
        entry = report.maxima[0]
        assert entry.max_ab is not None
        assert Fraction(entry.max_ab) <= sharp_bound(c), c
        if c % 2 == 1 and c >= 11:
            assert Fraction(entry.max_ab) == sharp_bound(c), c
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _done(2, t0, "max(A,B) meets the sharp bound exactly at odd C in [11,23], "
                 "never exceeds it on [10,24]")


def test_criterion_3_cube_bound_strict():
    t0 = time.perf_counter()
    for c in range(2, 31):
        report = max_ab(c)
        assert [v for v in report.violations if v["check"] == "cube_bound"] == [], c
        entry = report.maxima[0]
        if entry.max_a is not None:
            assert entry.max_a < c**3 and entry.max_b < c**3, c
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0
    _done(3, t0, "A, B < C^3 strictly for every solvable quad, C in [2,30]")


def test_criterion_4_gap_scan_to_1e6():
    t0 = time.perf_counter()
    report = scan_gaps(2, 10**6, workers=_WORKERS)
    assert report.stats["violations"] == 0
    assert report.violations == []
    assert report.stats["numbers"] == 10**6 - 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 600.0
    _done(4, t0, "zero violations of the exact gap and spread lower bounds "
                 f"for n <= 1e6 (min margin at n={report.min_margin['n']})")


def test_criterion_5_family_margin_threshold():
    t0 = time.perf_counter()
    scan = family_threshold_scan(1000)
    assert scan.threshold == 2
    assert scan.failures == (1,)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _done(5, t0, "family upper-margin test holds for all N in [2,1000], "
                 "N=1 the sole failure")


def test_criterion_6_solver_round_trip(quads_c40):
    t0 = time.perf_counter()
    assert quads_c40, "expected solvable quads at ceiling 40"
    for quad, triple in quads_c40:
        assert triple.verify()
        assert quad_from_triple(*triple.factor_pairs()) == quad
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _done(6, t0, f"round trip holds for all {len(quads_c40)} solvable quads, C <= 40")


def test_criterion_7_case_decomposition(quads_c40):
    t0 = time.perf_counter()
    counts = {tag: 0 for tag in CaseTag}
    midpoint_absent = 0
    for quad, triple in quads_c40:
        c = classify(triple)  # raises DecompositionError on any failed identity
        w = decompose(triple, c)
        counts[c.tag] += 1
        if c.tag is CaseTag.CASE1:
            if c.midpoint_absent:
                midpoint_absent += 1
            else:
                assert w["M"] * w["M"] == triple.n
        elif c.tag in (CaseTag.CASE2A, CaseTag.CASE2B):
            assert triple.A == quad.a2 * w["A_prime"]
            assert triple.B == quad.b2 * (w["A_prime"] + 1)
        elif c.tag in (CaseTag.CASE3, CaseTag.CASE4):
            assert 2 * triple.A == quad.a2 * w["A_prime"]
            assert 2 * triple.B == quad.b2 * (w["A_prime"] + 2)
        else:
            assert w["d"] >= 1
    assert all(counts[tag] > 0 for tag in CaseTag)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _done(7, t0, f"witnesses reconstruct (A,B) for every quad, C <= 40 "
                 f"({midpoint_absent} flagged Case-1 triples without midpoint)")


def test_criterion_8_two_oracle_agreement():
    t0 = time.perf_counter()
    report = cross_check(10**4, 10)
    assert report.violations == []
    assert report.stats["quad_route"] == report.stats["divisor_route"]
    assert report.stats["quad_route"] == report.stats["common"] > 0
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _done(8, t0, "quad enumeration and divisor enumeration find identical "
                 f"triple sets ({report.stats['common']} triples)")


def test_criterion_9_deterministic_jsonl(tmp_path):
    t0 = time.perf_counter()
    outputs = []
    for workers in (1, 2, 8):
        path = tmp_path / f"gaps-w{workers}.jsonl"
        code = run(
            ["scan-gaps", "--from", "2", "--to", "100000",
             "--workers", str(workers), "--format", "jsonl",
             "--output", str(path)]
        )
        assert code == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    assert len(outputs[0].splitlines()) > 90_000
    _done(9, t0, "scan-gaps jsonl byte-identical with 1, 2 and 8 workers")
