"""Exhaustive oracles: quad enumeration up to a ceiling, per-n divisor-triple
enumeration, minimal-gap search, the range gap scan, and the two-oracle
cross-check. Scan results are deterministic for a fixed range regardless of
worker count."""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple

from .arith import (
    DEFAULT_SIEVE_CEILING,
    SieveBudgetError,
    _divisors_via_spf,
    divisors,
    factorize,
    smallest_prime_factors,
)
from .model import (
    CaseTag,
    FactorizationTriple,
    LatticeTriple,
    OffsetQuad,
    classify,
    solve_quad,
    triple_from_points,
)

#: Scan ranges are split into chunks of this fixed size; chunk boundaries
#: depend only on the range, never on the worker count.
CHUNK_SIZE = 1 << 14


@dataclass(frozen=True)
class MaxEntry:
    """Maxima of A and B over all solvable quads at one ceiling C, with the
    first attaining quad in lexicographic (a1, a2, b1, b2) order."""

    C: int
    solvable: int
    max_a: int | None = None
    max_a_quad: OffsetQuad | None = None
    max_a_n: int | None = None
    max_b: int | None = None
    max_b_quad: OffsetQuad | None = None
    max_b_n: int | None = None
    case1_no_midpoint: int = 0

    @property
    def max_ab(self) -> int | None:
        if self.max_a is None or self.max_b is None:
            return None if self.max_a is None and self.max_b is None else (
                self.max_a if self.max_b is None else self.max_b
            )
        return max(self.max_a, self.max_b)


class GapRecord(NamedTuple):
    """Per-n result of a gap scan: the minimal-gap consecutive divisor triple
    and the outcomes of the exact bound tests."""

    n: int
    x1: int
    x2: int
    x3: int
    y1: int
    y2: int
    y3: int
    gap: int
    margin: int
    gap_ok: bool
    spread_ok: bool
    windows: int


@dataclass
class ScanReport:
    """Aggregated outcome of an exhaustive scan.

    elapsed is wall-clock bookkeeping and is excluded from equality and from
    serialization so that identical ranges compare (and serialize) identically
    across runs and worker counts.
    """

    kind: str
    params: dict[str, int]
    stats: dict[str, int] = field(default_factory=dict)
    violations: list[dict[str, str]] = field(default_factory=list)
    maxima: list[MaxEntry] = field(default_factory=list)
    min_margin: dict[str, int] | None = None
    elapsed: float = field(default=0.0, compare=False)


def enumerate_quads(C: int) -> Iterator[tuple[OffsetQuad, FactorizationTriple]]:
    """Yield every solvable quad with a2 <= C and b2 <= C, paired with its
    solved triple, in lexicographic (a1, a2, b1, b2) order."""
    if C < 2:
        raise ValueError("need C >= 2")
    for a1 in range(1, C):
        for a2 in range(a1 + 1, C + 1):
            for b1 in range(1, C):
                for b2 in range(b1 + 1, C + 1):
                    quad = OffsetQuad(a1, b1, a2, b2)
                    triple = solve_quad(quad)
                    if triple is not None:
                        yield quad, triple


def max_ab(C: int) -> ScanReport:
    """Maxima of A and B over all solvable quads at ceiling C.

    Any A or B at or above C^3 is recorded as a cube-bound violation; for
    C >= 10 any value above C(C-1)^2/4 is recorded as a sharp-bound
    violation. Violations are report entries, never aborts: for C <= 9 no
    sharp bound is claimed, so the maxima are reported without assertion.
    """
    t0 = time.perf_counter()
    cube = C**3
    sharp4 = C * (C - 1) ** 2  # compare via 4*value <= sharp4
    solvable = 0
    case1_no_midpoint = 0
    best_a: tuple[int, OffsetQuad, int] | None = None
    best_b: tuple[int, OffsetQuad, int] | None = None
    violations: list[dict[str, str]] = []
    for quad, triple in enumerate_quads(C):
        solvable += 1
        if classify(triple).midpoint_absent:
            case1_no_midpoint += 1
        if best_a is None or triple.A > best_a[0]:
            best_a = (triple.A, quad, triple.n)
        if best_b is None or triple.B > best_b[0]:
            best_b = (triple.B, quad, triple.n)
        for name, value in (("A", triple.A), ("B", triple.B)):
            if value >= cube:
                violations.append(_quad_violation("cube_bound", name, quad, triple))
            if C >= 10 and 4 * value > sharp4:
                violations.append(_quad_violation("sharp_bound", name, quad, triple))
    entry = MaxEntry(
        C=C,
        solvable=solvable,
        max_a=best_a[0] if best_a else None,
        max_a_quad=best_a[1] if best_a else None,
        max_a_n=best_a[2] if best_a else None,
        max_b=best_b[0] if best_b else None,
        max_b_quad=best_b[1] if best_b else None,
        max_b_n=best_b[2] if best_b else None,
        case1_no_midpoint=case1_no_midpoint,
    )
    return ScanReport(
        kind="quad_scan",
        params={"c_lo": C, "c_hi": C},
        stats={
            "solvable": solvable,
            "case1_no_midpoint": case1_no_midpoint,
            "violations": len(violations),
        },
        violations=violations,
        maxima=[entry],
        elapsed=time.perf_counter() - t0,
    )


def _quad_violation(
    check: str, side: str, quad: OffsetQuad, triple: FactorizationTriple
) -> dict[str, str]:
    return {
        "check": check,
        "side": side,
        "n": str(triple.n),
        "A": str(triple.A),
        "B": str(triple.B),
        "a1": str(quad.a1),
        "b1": str(quad.b1),
        "a2": str(quad.a2),
        "b2": str(quad.b2),
        "C": str(quad.C),
    }


def _triples_from_divisors(
    n: int,
    divs: tuple[int, ...] | list[int],
    cap: int | None,
    consecutive_only: bool,
) -> list[FactorizationTriple]:
    tau = len(divs)
    if tau < 3:
        return []
    out: list[FactorizationTriple] = []
    if consecutive_only:
        index_triples = ((i, i + 1, i + 2) for i in range(tau - 2))
    else:

        def _all_triples() -> Iterator[tuple[int, int, int]]:
            for i in range(tau - 2):
                for j in range(i + 1, tau - 1):
                    if cap is not None and divs[j] - divs[i] > cap:
                        break
                    for k in range(j + 1, tau):
                        if cap is not None and divs[k] - divs[i] > cap:
                            break
                        yield i, j, k

        index_triples = _all_triples()
    for i, j, k in index_triples:
        x = (divs[i], divs[j], divs[k])
        y = (n // x[0], n // x[1], n // x[2])
        if cap is not None and (x[2] - x[0] > cap or y[0] - y[2] > cap):
            continue
        out.append(triple_from_points((x[0], y[0]), (x[1], y[1]), (x[2], y[2])))
    return out


def triples_for_n(
    n: int, cap: int | None = None, consecutive_only: bool = False
) -> list[FactorizationTriple]:
    """All close-factorization triples of one n, from its divisor list.

    Enumerates divisor triples d1 < d2 < d3 (adjacent in the sorted divisor
    list when consecutive_only is set) and keeps those with a2 <= cap and
    b2 <= cap when a cap is given. Empty when n has fewer than 3 divisors.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    divs = divisors(factorize(n)).divisors
    return _triples_from_divisors(n, divs, cap, consecutive_only)


def min_gap_triple(n: int) -> LatticeTriple | None:
    """A lattice triple of n minimizing the gap, or None if tau(n) < 3.

    Only consecutive divisor triples are inspected: shrinking any triple to
    consecutive divisors inside [x1, x3] can only decrease both x3 - x1 and
    y1 - y3, so the minimum over windows is the global minimum. Ties go to
    the smallest x1.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    divs = divisors(factorize(n)).divisors
    if len(divs) < 3:
        return None
    best = None
    best_i = 0
    for i in range(len(divs) - 2):
        g = max(divs[i + 2] - divs[i], n // divs[i] - n // divs[i + 2])
        if best is None or g < best:
            best, best_i = g, i
    xs = (divs[best_i], divs[best_i + 1], divs[best_i + 2])
    return LatticeTriple(n, xs, (n // xs[0], n // xs[1], n // xs[2]))


class _ChunkResult(NamedTuple):
    records: list[tuple] | None
    numbers: int
    with_triples: int
    windows: int
    best: tuple[int, int, int, int, int, int] | None  # margin, n, gap, x1, x2, x3
    violations: list[dict[str, str]]


def _scan_gap_chunk(args: tuple[int, int, bool]) -> _ChunkResult:
    """Scan one contiguous chunk [lo, hi] of a gap scan.

    For each n with at least three divisors: find the minimal-gap window,
    run the exact sixth-power test on it (sufficient: if the minimal gap
    clears the strict bound, every triple does), and run the exact cubic
    spread test on every consecutive window.
    """
    lo, hi, collect = args
    spf = smallest_prime_factors(hi)
    records: list[tuple] | None = [] if collect else None
    with_triples = 0
    windows_total = 0
    best: tuple[int, int, int, int, int, int] | None = None
    violations: list[dict[str, str]] = []
    for n in range(lo, hi + 1):
        divs = _divisors_via_spf(n, spf)
        tau = len(divs)
        if tau < 3:
            continue
        with_triples += 1
        windows = tau - 2
        windows_total += windows
        spread_ok = True
        best_gap = None
        best_i = 0
        for i in range(windows):
            x1 = divs[i]
            dx = divs[i + 2] - x1
            dy = n // x1 - n // divs[i + 2]
            g = dx if dx >= dy else dy
            if best_gap is None or g < best_gap:
                best_gap, best_i = g, i
            if n * dx * dx * dx < 4 * x1 * x1 * x1:
                spread_ok = False
                violations.append(
                    {
                        "check": "spread_lower",
                        "n": str(n),
                        "x1": str(x1),
                        "x3": str(divs[i + 2]),
                    }
                )
        g = best_gap
        lhs = (2 * g - 1) ** 6
        rhs = 1024 * n
        margin = lhs - rhs
        gap_ok = lhs > rhs
        if not gap_ok:
            violations.append(
                {
                    "check": "gap_lower",
                    "n": str(n),
                    "gap": str(g),
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                }
            )
        if best is None or margin < best[0]:
            best = (margin, n, g, divs[best_i], divs[best_i + 1], divs[best_i + 2])
        if collect:
            x1, x2, x3 = divs[best_i], divs[best_i + 1], divs[best_i + 2]
            records.append(
                (n, x1, x2, x3, n // x1, n // x2, n // x3, g, margin, gap_ok,
                 spread_ok, windows)
            )
    return _ChunkResult(
        records, hi - lo + 1, with_triples, windows_total, best, violations
    )


def _chunk_bounds(n_lo: int, n_hi: int, collect: bool) -> list[tuple[int, int, bool]]:
    return [
        (lo, min(lo + CHUNK_SIZE - 1, n_hi), collect)
        for lo in range(n_lo, n_hi + 1, CHUNK_SIZE)
    ]


def scan_gaps(
    n_lo: int,
    n_hi: int,
    workers: int = 1,
    record_sink: Callable[[GapRecord], None] | None = None,
    ceiling: int = DEFAULT_SIEVE_CEILING,
) -> ScanReport:
    """Verify the exact gap and spread lower bounds for every n in range.

    The range is split into fixed-size chunks processed by up to `workers`
    processes sharing the read-only factor table; partial results merge in
    ascending range order, so the report (and the record stream fed to
    record_sink, in ascending n) is identical for any worker count.
    """
    if n_lo < 2 or n_lo > n_hi:
        raise ValueError("need 2 <= n_lo <= n_hi")
    if n_hi > ceiling:
        raise SieveBudgetError(f"n_hi={n_hi} exceeds the sieve ceiling {ceiling}")
    if workers < 1:
        raise ValueError("need workers >= 1")
    t0 = time.perf_counter()
    collect = record_sink is not None
    chunks = _chunk_bounds(n_lo, n_hi, collect)
    smallest_prime_factors(n_hi)  # build once; forked workers inherit it

    numbers = with_triples = windows = 0
    best: tuple[int, int, int, int, int, int] | None = None
    violations: list[dict[str, str]] = []

    def _absorb(result: _ChunkResult) -> None:
        nonlocal numbers, with_triples, windows, best
        numbers += result.numbers
        with_triples += result.with_triples
        windows += result.windows
        if result.best is not None and (best is None or result.best < best):
            best = result.best
        violations.extend(result.violations)
        if collect and result.records:
            for row in result.records:
                record_sink(GapRecord._make(row))

    if workers == 1 or len(chunks) == 1:
        for chunk in chunks:
            _absorb(_scan_gap_chunk(chunk))
    else:
        ctx = multiprocessing.get_context()
        with ctx.Pool(
            processes=min(workers, len(chunks)),
            initializer=smallest_prime_factors,
            initargs=(n_hi,),
        ) as pool:
            for result in pool.imap(_scan_gap_chunk, chunks):
                _absorb(result)

    min_margin = None
    if best is not None:
        margin, n, g, x1, x2, x3 = best
        min_margin = {
            "n": n,
            "gap": g,
            "lhs": (2 * g - 1) ** 6,
            "rhs": 1024 * n,
            "margin": margin,
            "x1": x1,
            "x2": x2,
            "x3": x3,
        }
    return ScanReport(
        kind="gap_scan",
        params={"n_lo": n_lo, "n_hi": n_hi},
        stats={
            "numbers": numbers,
            "with_triples": with_triples,
            "windows": windows,
            "violations": len(violations),
        },
        violations=violations,
        min_margin=min_margin,
        elapsed=time.perf_counter() - t0,
    )


def _triple_key(t: FactorizationTriple) -> tuple[int, int, int, int, int, int, int]:
    q = t.quad
    return (t.n, t.A, t.B, q.a1, q.b1, q.a2, q.b2)


def cross_check(n_max: int, cap: int, ceiling: int = DEFAULT_SIEVE_CEILING) -> ScanReport:
    """Two-oracle consistency: the triples found by quad enumeration at
    ceiling `cap` (restricted to n <= n_max) must coincide with those found
    by per-n divisor enumeration capped at `cap`."""
    if n_max < 2:
        raise ValueError("need n_max >= 2")
    if cap < 2:
        raise ValueError("need cap >= 2")
    if n_max > ceiling:
        raise SieveBudgetError(f"n_max={n_max} exceeds the sieve ceiling {ceiling}")
    t0 = time.perf_counter()
    quad_route = {
        _triple_key(t) for _, t in enumerate_quads(cap) if t.n <= n_max
    }
    divisor_route: set[tuple[int, int, int, int, int, int, int]] = set()
    spf = smallest_prime_factors(n_max)
    for n in range(2, n_max + 1):
        divs = _divisors_via_spf(n, spf)
        for t in _triples_from_divisors(n, divs, cap, consecutive_only=False):
            divisor_route.add(_triple_key(t))
    violations: list[dict[str, str]] = []
    for key in sorted(quad_route - divisor_route):
        violations.append(_discrepancy("missing_in_divisor_route", key))
    for key in sorted(divisor_route - quad_route):
        violations.append(_discrepancy("missing_in_quad_route", key))
    return ScanReport(
        kind="cross_check",
        params={"n_max": n_max, "cap": cap},
        stats={
            "quad_route": len(quad_route),
            "divisor_route": len(divisor_route),
            "common": len(quad_route & divisor_route),
            "violations": len(violations),
        },
        violations=violations,
        elapsed=time.perf_counter() - t0,
    )


def _discrepancy(check: str, key: tuple[int, ...]) -> dict[str, str]:
    n, A, B, a1, b1, a2, b2 = key
    return {
        "check": check,
        "n": str(n),
        "A": str(A),
        "B": str(B),
        "a1": str(a1),
        "b1": str(b1),
        "a2": str(a2),
        "b2": str(b2),
    }
