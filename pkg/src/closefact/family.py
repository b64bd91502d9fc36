"""The extremal family n = N(N+1)^2(N+2)(2N+1)(2N+3).

Each member admits the three factorizations

    n = [(2N+1)N(N+2)] * [(2N+3)(N+1)^2]
      = [(2N+1)N(N+2) + N] * [(2N+3)(N+1)^2 - (N+1)]
      = [(2N+1)N(N+2) + (2N+1)] * [(2N+3)(N+1)^2 - (2N+3)]

with offsets (N, N+1, 2N+1, 2N+3), ceiling C = 2N+3 and gap 2N+3, and
attains the sharp bound: (2N+3)(N+1)^2 = C(C-1)^2/4 exactly."""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    FactorizationTriple,
    LatticeTriple,
    MarginCertificate,
    OffsetQuad,
    gap,
    solve_quad,
)


@dataclass(frozen=True)
class FamilyInstance:
    N: int
    n: int
    C: int
    triple: FactorizationTriple
    lattice: LatticeTriple


@dataclass(frozen=True)
class ThresholdScan:
    """Result of scanning the family's upper-margin test over 1..N_max."""

    N_max: int
    threshold: int
    failures: tuple[int, ...]


def family_quad(N: int) -> OffsetQuad:
    if N < 1:
        raise ValueError("need N >= 1")
    return OffsetQuad(a1=N, b1=N + 1, a2=2 * N + 1, b2=2 * N + 3)


def family_instance(N: int) -> FamilyInstance:
    """Construct and fully re-verify the family member at index N.

    All three products are re-multiplied, the solver round-trip is checked,
    and the gap must equal 2N+3; any mismatch is a library bug and raises.
    """
    quad = family_quad(N)
    n = N * (N + 1) ** 2 * (N + 2) * (2 * N + 1) * (2 * N + 3)
    A = (2 * N + 1) * N * (N + 2)
    B = (2 * N + 3) * (N + 1) ** 2
    triple = FactorizationTriple(A, B, n, quad)
    if not triple.verify() or A * B != n:
        raise AssertionError(f"family instance N={N} failed product verification")
    solved = solve_quad(quad)
    if solved != triple:
        raise AssertionError(f"family instance N={N} failed the solver round-trip")
    lattice = triple.lattice()
    if gap(lattice) != 2 * N + 3:
        raise AssertionError(f"family instance N={N} has unexpected gap")
    return FamilyInstance(N=N, n=n, C=2 * N + 3, triple=triple, lattice=lattice)


def family_attains_bound(N: int) -> bool:
    """max(A, B) equals the sharp bound C(C-1)^2/4 at C = 2N+3, exactly."""
    inst = family_instance(N)
    c = inst.C
    return 4 * max(inst.triple.A, inst.triple.B) == c * (c - 1) ** 2


def family_margin_holds(N: int) -> tuple[bool, MarginCertificate]:
    """Exact form of gap < 2^(2/3)*n^(1/6) + 6/5: (5g-6)^6 < 250000n.

    With g = 2N+3 the left side is (10N+9)^6, never divisible by 5, so
    equality cannot occur and the strict test is exact. Fails for N = 1;
    holds for every larger N checked.
    """
    inst = family_instance(N)
    g = 2 * N + 3
    cert = MarginCertificate((5 * g - 6) ** 6, 250_000 * inst.n)
    return cert.lhs < cert.rhs, cert


def family_threshold_scan(N_max: int) -> ThresholdScan:
    """Smallest N0 with the margin test passing for every N in [N0, N_max],
    plus the list of failing N below it."""
    if N_max < 2:
        raise ValueError("need N_max >= 2")
    failures = tuple(N for N in range(1, N_max + 1) if not family_margin_holds(N)[0])
    threshold = failures[-1] + 1 if failures else 1
    return ThresholdScan(N_max=N_max, threshold=threshold, failures=failures)
