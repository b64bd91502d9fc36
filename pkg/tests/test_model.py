"""Solver, round trips, bound polynomials, case classification and the
structural witness decomposition."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closefact.model import (
    CaseTag,
    FactorizationTriple,
    LatticeTriple,
    OffsetQuad,
    classify,
    cube_bound,
    decompose,
    gap,
    gap_lower_holds,
    gap_lower_test,
    quad_from_triple,
    sharp_bound,
    solve_quad,
    spread_lower_holds,
    triple_from_points,
)


def brute_force_solutions(quad: tuple[int, int, int, int], bound: int):
    """Independent oracle: try every (A, B) up to `bound` directly."""
    a1, b1, a2, b2 = quad
    out = []
    for A in range(1, bound + 1):
        for B in range(b2 + 1, bound + 1):
            n = A * B
            if (A + a1) * (B - b1) == n and (A + a2) * (B - b2) == n:
                out.append((A, B, n))
    return out


def all_solvable_quads(cmax: int):
    for a1 in range(1, cmax):
        for a2 in range(a1 + 1, cmax + 1):
            for b1 in range(1, cmax):
                for b2 in range(b1 + 1, cmax + 1):
                    q = OffsetQuad(a1, b1, a2, b2)
                    t = solve_quad(q)
                    if t is not None:
                        yield q, t


def test_quad_ordering_validation():
    with pytest.raises(ValueError):
        OffsetQuad(2, 1, 2, 3)  # a1 == a2
    with pytest.raises(ValueError):
        OffsetQuad(1, 3, 2, 3)  # b1 == b2
    with pytest.raises(ValueError):
        OffsetQuad(0, 1, 2, 3)


def test_quad_derived_fields():
    q = OffsetQuad(1, 2, 3, 5)
    assert q.d == (3 - 1) * 2 - (5 - 2) * 1 == 1
    assert q.C == 5
    assert q.phi == Fraction(2, 1)
    assert q.theta == Fraction(3, 2)


def test_solve_examples():
    t = solve_quad(OffsetQuad(1, 2, 2, 3))
    assert (t.A, t.B, t.n) == (2, 6, 12)
    assert brute_force_solutions((1, 2, 2, 3), 50) == [(2, 6, 12)]

    t = solve_quad(OffsetQuad(1, 2, 3, 5))
    assert (t.A, t.B, t.n) == (9, 20, 180)

    assert solve_quad(OffsetQuad(1, 1, 2, 3)) is None  # d = -1

    t = solve_quad(OffsetQuad(2, 1, 6, 2))
    assert (t.A, t.B, t.n) == (6, 4, 24)
    assert 6 * 4 == 8 * 3 == 12 * 2 == 24


def test_solve_rejects_zero_discriminant():
    assert OffsetQuad(1, 1, 2, 2).d == 0
    assert solve_quad(OffsetQuad(1, 1, 2, 2)) is None


def test_solver_matches_brute_force_oracle():
    # every solvable quad with small ceiling, against the direct search
    for q, t in all_solvable_quads(6):
        if t.A <= 300 and t.B <= 300:
            assert (t.A, t.B, t.n) in brute_force_solutions(q.as_tuple(), 300)


def test_quad_from_triple_examples():
    assert quad_from_triple((9, 20), (10, 18), (12, 15)) == OffsetQuad(1, 2, 3, 5)
    assert quad_from_triple((2, 6), (3, 4), (4, 3)) == OffsetQuad(1, 2, 2, 3)
    assert quad_from_triple((6, 4), (8, 3), (12, 2)) == OffsetQuad(2, 1, 6, 2)


def test_quad_from_triple_rejects_bad_input():
    with pytest.raises(ValueError):
        quad_from_triple((9, 20), (10, 18), (12, 16))  # products differ
    with pytest.raises(ValueError):
        quad_from_triple((10, 18), (9, 20), (12, 15))  # x not increasing
    with pytest.raises(ValueError):
        quad_from_triple((0, 1), (1, 0), (2, 0))


def test_roundtrip_exhaustive_small():
    for q, t in all_solvable_quads(12):
        assert t.verify()
        assert quad_from_triple(*t.factor_pairs()) == q


@settings(max_examples=400, deadline=None)
@given(
    a1=st.integers(1, 39),
    a2=st.integers(2, 40),
    b1=st.integers(1, 39),
    b2=st.integers(2, 40),
)
def test_roundtrip_property(a1, a2, b1, b2):
    if not (a1 < a2 and b1 < b2):
        return
    q = OffsetQuad(a1, b1, a2, b2)
    t = solve_quad(q)
    if t is None:
        return
    assert q.d >= 1
    assert q.phi > q.theta
    assert t.verify()
    assert quad_from_triple(*t.factor_pairs()) == q


def test_bounds():
    assert cube_bound(2) == 8
    assert cube_bound(5) == 125
    assert cube_bound(13) == 2197
    assert sharp_bound(5) == 20
    assert sharp_bound(10) == Fraction(405, 2)
    assert sharp_bound(13) == 468
    # closed form equals the displayed polynomial C^3/4 - C^2/2 + C/4
    for c in range(2, 200):
        assert sharp_bound(c) == Fraction(c**3, 4) - Fraction(c**2, 2) + Fraction(c, 4)


def test_bound_consistency_small_ceilings():
    for q, t in all_solvable_quads(24):
        c = q.C
        assert t.A < c**3 and t.B < c**3
        if c >= 10:
            assert 4 * t.A <= c * (c - 1) ** 2
            assert 4 * t.B <= c * (c - 1) ** 2


def test_family_bound_identity():
    for N in range(1, 10_001):
        c = 2 * N + 3
        assert 4 * (2 * N + 3) * (N + 1) ** 2 == c * (c - 1) ** 2


def test_classify_examples():
    t = solve_quad(OffsetQuad(2, 3, 5, 5))
    assert (t.A, t.B, t.n) == (4, 9, 36)
    c = classify(t)
    assert c.tag is CaseTag.CASE1 and c.witnesses["M"] == 6

    t = solve_quad(OffsetQuad(2, 3, 3, 4))
    assert (t.A, t.B, t.n) == (6, 12, 72)
    c = classify(t)
    assert c.tag is CaseTag.CASE2B
    assert c.witnesses["A_prime"] == 2
    assert t.A == 3 * 2 and t.B == 4 * (2 + 1)

    t = solve_quad(OffsetQuad(3, 2, 5, 3))
    assert (t.A, t.B, t.n) == (15, 12, 180)
    c = classify(t)
    assert c.tag is CaseTag.CASE3
    assert c.witnesses["A_prime"] == 6
    assert 2 * t.A == 5 * 6 and 2 * t.B == 3 * (6 + 2)

    t = solve_quad(OffsetQuad(2, 1, 6, 2))
    assert classify(t).tag is CaseTag.CASE5


def test_classification_total_and_exclusive():
    seen = set()
    for q, t in all_solvable_quads(12):
        tag = classify(t).tag
        seen.add(tag)
        diff = q.a2 - q.b2
        expected = {
            0: CaseTag.CASE1,
            1: CaseTag.CASE2A,
            -1: CaseTag.CASE2B,
            2: CaseTag.CASE3,
            -2: CaseTag.CASE4,
        }.get(diff, CaseTag.CASE5)
        assert tag is expected
    assert seen == set(CaseTag)


def exhaustive_witness_search(t: FactorizationTriple, s: int):
    """Oracle for the middle-factorization witnesses: scan every (h, k)."""
    q = t.quad
    a_prime = s * t.A // q.a2
    hits = []
    for h in range(1, q.C):
        for k in range(1, q.C):
            if (q.a2 - h) * (q.b2 - k) * a_prime == h * k * (a_prime + s):
                if (s * t.A + s * h) * (
                    s * t.B - s * q.b2 + s * k
                ) == s * s * t.n:  # middle product, scaled by s^2
                    hits.append((h, k))
    return hits


def test_decompose_case1_midpoint():
    t = solve_quad(OffsetQuad(2, 3, 5, 5))
    w = decompose(t)
    assert w == {"M": 6}
    assert (5 - 2) * (5 - 3) == ((5 - 2) - (5 - 3)) * 6


def test_decompose_case1_midpoint_absent_is_flagged():
    # valid Case-1 triple whose middle factorization is not the square root:
    # 24 = 3*8 = 4*6 = 8*3 with offsets (1, 2, 5, 5)
    t = solve_quad(OffsetQuad(1, 2, 5, 5))
    assert (t.A, t.B, t.n) == (3, 8, 24)
    c = classify(t)
    assert c.tag is CaseTag.CASE1
    assert c.midpoint_absent
    assert "M" not in c.witnesses
    assert t.B - t.A == 5
    assert decompose(t) == {}


def test_decompose_case3_witnesses():
    t = solve_quad(OffsetQuad(3, 2, 5, 3))
    w = decompose(t)
    assert w["A_prime"] == 6 and w["h"] == 3 and w["k"] == 1
    # middle factorization 18*10: x = A + h, y = (B - b2) + k
    assert (15 + w["h"]) * (12 - 3 + w["k"]) == 180
    assert (w["h"], w["k"]) in exhaustive_witness_search(t, 2)


def test_decompose_case2b_witnesses():
    t = solve_quad(OffsetQuad(2, 3, 3, 4))
    w = decompose(t)
    assert w["A_prime"] == 2 and w["B_prime"] == 3
    assert w["h"] == 2 and w["k"] == 1
    assert (3 - w["h"]) * (4 - w["k"]) * 2 == w["h"] * w["k"] * 3
    assert (w["h"], w["k"]) in exhaustive_witness_search(t, 1)


def test_decompose_case5_certificate():
    t = solve_quad(OffsetQuad(2, 1, 6, 2))
    assert decompose(t) == {"d": 2}


def test_decompose_reconstructs_exhaustively():
    for q, t in all_solvable_quads(24):
        c = classify(t)
        w = decompose(t, c)
        if c.tag is CaseTag.CASE1:
            assert t.B - t.A == q.a2
            if not c.midpoint_absent:
                m = w["M"]
                assert m * m == t.n
        elif c.tag in (CaseTag.CASE2A, CaseTag.CASE2B):
            assert t.A == q.a2 * w["A_prime"]
            assert t.B == q.b2 * (w["A_prime"] + 1)
        elif c.tag in (CaseTag.CASE3, CaseTag.CASE4):
            assert 2 * t.A == q.a2 * w["A_prime"]
            assert 2 * t.B == q.b2 * (w["A_prime"] + 2)
        else:
            assert w["d"] >= 1


def test_decompose_mismatched_classification():
    t1 = solve_quad(OffsetQuad(2, 3, 5, 5))
    t2 = solve_quad(OffsetQuad(2, 1, 6, 2))
    with pytest.raises(ValueError):
        decompose(t2, classify(t1))


def test_gap_examples():
    t = LatticeTriple(12, (2, 3, 4), (6, 4, 3))
    assert gap(t) == 3
    t = LatticeTriple(180, (9, 10, 12), (20, 18, 15))
    assert gap(t) == 5
    t = LatticeTriple(36, (4, 6, 9), (9, 6, 4))
    assert gap(t) == 5


def test_gap_lower_examples():
    ok, cert = gap_lower_holds(LatticeTriple(12, (2, 3, 4), (6, 4, 3)))
    assert ok and (cert.lhs, cert.rhs) == (15625, 12288)
    ok, cert = gap_lower_holds(LatticeTriple(180, (9, 10, 12), (20, 18, 15)))
    assert ok and cert.lhs == 9**6 == 531441 and cert.rhs == 184320
    # degenerate hypothetical: gap 0 fails the test for every positive n
    ok, cert = gap_lower_test(0, 12)
    assert not ok and cert.lhs == 1


def test_spread_lower_examples():
    assert spread_lower_holds(LatticeTriple(12, (2, 3, 4), (6, 4, 3)))
    assert spread_lower_holds(LatticeTriple(180, (9, 10, 12), (20, 18, 15)))
    assert spread_lower_holds(LatticeTriple(36, (4, 6, 9), (9, 6, 4)))


def test_triple_from_points_verifies():
    t = triple_from_points((9, 20), (10, 18), (12, 15))
    assert t.verify()
    assert t.lattice().verify()
    assert solve_quad(t.quad) == t
