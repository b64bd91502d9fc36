"""Core objects for integers with three close factorizations
n = A*B = (A+a1)(B-b1) = (A+a2)(B-b2): offset quads, the exact solver,
lattice triples on x*y = n, bound polynomials, and the structural case
decomposition driven by the difference a2 - b2."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction


class CaseTag(str, Enum):
    """Structural classification of a triple by a2 - b2."""

    CASE1 = "Case1"  # a2 == b2
    CASE2A = "Case2a"  # a2 == b2 + 1
    CASE2B = "Case2b"  # b2 == a2 + 1
    CASE3 = "Case3"  # a2 - b2 == 2
    CASE4 = "Case4"  # b2 - a2 == 2
    CASE5 = "Case5"  # |a2 - b2| >= 3


class DecompositionError(Exception):
    """A structural witness failed its reconstruction identity.

    Never raised for a triple produced by the solver; raising it signals a
    bug or a hand-built invalid triple.
    """


@dataclass(frozen=True)
class MarginCertificate:
    """Both sides of an exact integer comparison, kept for reporting."""

    lhs: int
    rhs: int

    @property
    def margin(self) -> int:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class OffsetQuad:
    """Offsets (a1, b1, a2, b2) of the two extra factorizations.

    Requires 1 <= a1 < a2 and 1 <= b1 < b2; solvability is decided by
    solve_quad.
    """

    a1: int
    b1: int
    a2: int
    b2: int

    def __post_init__(self) -> None:
        if not (1 <= self.a1 < self.a2):
            raise ValueError(f"need 1 <= a1 < a2, got a1={self.a1}, a2={self.a2}")
        if not (1 <= self.b1 < self.b2):
            raise ValueError(f"need 1 <= b1 < b2, got b1={self.b1}, b2={self.b2}")

    @property
    def d(self) -> int:
        """Discriminant (a2-a1)*b1 - (b2-b1)*a1; positivity is necessary for
        a solution, and d divides b1*b2*(a2-a1)."""
        return (self.a2 - self.a1) * self.b1 - (self.b2 - self.b1) * self.a1

    @property
    def C(self) -> int:
        """Ceiling max(a2, b2), the size parameter of the bounds."""
        return max(self.a2, self.b2)

    @property
    def phi(self) -> Fraction:
        """Relative growth (a2 - a1) / a1 of the x-side offsets."""
        return Fraction(self.a2 - self.a1, self.a1)

    @property
    def theta(self) -> Fraction:
        """Relative growth (b2 - b1) / b1 of the y-side offsets."""
        return Fraction(self.b2 - self.b1, self.b1)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a1, self.b1, self.a2, self.b2)


@dataclass(frozen=True)
class FactorizationTriple:
    """A certified witness: n = A*B = (A+a1)(B-b1) = (A+a2)(B-b2)."""

    A: int
    B: int
    n: int
    quad: OffsetQuad

    def factor_pairs(
        self,
    ) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
        q = self.quad
        return (
            (self.A, self.B),
            (self.A + q.a1, self.B - q.b1),
            (self.A + q.a2, self.B - q.b2),
        )

    def verify(self) -> bool:
        q = self.quad
        if self.A < 1 or self.B - q.b2 < 1:
            return False
        return all(x * y == self.n for x, y in self.factor_pairs())

    def lattice(self) -> LatticeTriple:
        pairs = self.factor_pairs()
        xs = tuple(x for x, _ in pairs)
        ys = tuple(y for _, y in pairs)
        return LatticeTriple(self.n, xs, ys)


@dataclass(frozen=True)
class LatticeTriple:
    """Three integer lattice points on x*y = n with x1 < x2 < x3."""

    n: int
    xs: tuple[int, int, int]
    ys: tuple[int, int, int]

    def verify(self) -> bool:
        x1, x2, x3 = self.xs
        y1, y2, y3 = self.ys
        if not (0 < x1 < x2 < x3 and y1 > y2 > y3 > 0):
            return False
        return all(x * y == self.n for x, y in zip(self.xs, self.ys))


@dataclass(frozen=True)
class CaseDecomposition:
    """Case tag plus the verified structural witnesses of that case.

    midpoint_absent marks Case-1 triples whose middle factorization is not
    the square root of n (possible when the three x-divisors are not
    consecutive divisors); such triples carry no M witness and reports flag
    them instead of assuming the midpoint.
    """

    tag: CaseTag
    witnesses: dict[str, int] = field(default_factory=dict)
    midpoint_absent: bool = False


def solve_quad(q: OffsetQuad) -> FactorizationTriple | None:
    """Solve a1*B - b1*A = a1*b1, a2*B - b2*A = a2*b2 for positive integers.

    Eliminating A gives B = b1*b2*(a2-a1)/d, then A = a1*(B-b1)/b1. Returns
    None when d <= 0, when either value is non-integral or non-positive, or
    when B - b2 < 1. The returned triple re-verifies all three products.
    """
    d = q.d
    if d <= 0:
        return None
    b_num = q.b1 * q.b2 * (q.a2 - q.a1)
    if b_num % d:
        return None
    B = b_num // d
    if B - q.b2 < 1:
        return None
    a_num = q.a1 * (B - q.b1)
    if a_num <= 0 or a_num % q.b1:
        return None
    A = a_num // q.b1
    n = A * B
    if (A + q.a1) * (B - q.b1) != n or (A + q.a2) * (B - q.b2) != n:
        return None
    return FactorizationTriple(A, B, n, q)


def quad_from_triple(
    p1: tuple[int, int], p2: tuple[int, int], p3: tuple[int, int]
) -> OffsetQuad:
    """Recover the offset quad from three factorizations of a common n.

    The first components must be strictly increasing and the three products
    equal; solve_quad on the result reproduces (A, B, n) exactly.
    """
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    if min(x1, y1, x2, y2, x3, y3) < 1:
        raise ValueError("factor components must be positive")
    if not x1 < x2 < x3:
        raise ValueError("first components must be strictly increasing")
    n = x1 * y1
    if x2 * y2 != n or x3 * y3 != n:
        raise ValueError("the three products differ")
    return OffsetQuad(a1=x2 - x1, b1=y1 - y2, a2=x3 - x1, b2=y1 - y3)


def triple_from_points(
    p1: tuple[int, int], p2: tuple[int, int], p3: tuple[int, int]
) -> FactorizationTriple:
    """Build the certified triple whose base factorization is p1."""
    quad = quad_from_triple(p1, p2, p3)
    return FactorizationTriple(A=p1[0], B=p1[1], n=p1[0] * p1[1], quad=quad)


def cube_bound(C: int) -> int:
    """Strict bound C**3: every solvable quad at ceiling C has A, B < C**3."""
    if C < 2:
        raise ValueError("need C >= 2")
    return C**3


def sharp_bound(C: int) -> Fraction:
    """Sharp bound C(C-1)^2/4 on max(A, B), exact for ceilings C >= 10.

    Returned as an exact rational: the value is non-integral for some C
    (405/2 at C = 10), so callers compare via 4*A <= C*(C-1)**2.
    """
    if C < 2:
        raise ValueError("need C >= 2")
    return Fraction(C * (C - 1) ** 2, 4)


def _tag_of(q: OffsetQuad) -> CaseTag:
    diff = q.a2 - q.b2
    if diff == 0:
        return CaseTag.CASE1
    if diff == 1:
        return CaseTag.CASE2A
    if diff == -1:
        return CaseTag.CASE2B
    if diff == 2:
        return CaseTag.CASE3
    if diff == -2:
        return CaseTag.CASE4
    return CaseTag.CASE5


def _fail(t: FactorizationTriple, why: str) -> DecompositionError:
    return DecompositionError(f"{why} for triple (A={t.A}, B={t.B}, n={t.n})")


def _derive_witnesses(
    t: FactorizationTriple, tag: CaseTag
) -> tuple[dict[str, int], bool]:
    """Compute and verify the structural witnesses for a classified triple.

    Case 1 (a2 == b2) forces B = A + a2. When the middle factorization is
    the square root M of n, the identity
    (a2-a1)(b2-b1) = ((a2-a1)-(b2-b1))*M must hold; otherwise the midpoint
    is absent and only the B - A = a2 certificate is returned (flagged).

    Cases 2-4 share one shape. With s = |a2 - b2| in {1, 2}:
        s*A = ...   Case 2: A = a2*A',  B = b2*(A'+1)
                    Cases 3-4: 2A = a2*A',  2B = b2*(A'+2)
    and the middle factorization offsets h = a1, k = b2 - b1 satisfy
        (a2-h)(b2-k)*A' = h*k*(A'+s).
    Since A' is coprime to A'+1 (and, when odd, to A'+2), A' | h*k and the
    quotient l is returned as well; for even A' in cases 3-4 the halved
    witness A'' = A'/2 divides h*k instead.
    """
    q = t.quad
    a1, b1, a2, b2 = q.a1, q.b1, q.a2, q.b2

    if tag is CaseTag.CASE1:
        if t.B - t.A != a2:
            raise _fail(t, "expected B - A == a2 when a2 == b2")
        mid_x, mid_y = t.A + a1, t.B - b1
        if mid_x != mid_y:
            return {}, True
        m = mid_x
        if m * m != t.n:
            raise _fail(t, "midpoint squared does not reproduce n")
        if (a2 - a1) * (b2 - b1) != ((a2 - a1) - (b2 - b1)) * m:
            raise _fail(t, "midpoint identity failed")
        return {"M": m}, False

    if tag is CaseTag.CASE5:
        if q.d < 1:
            raise _fail(t, "discriminant not positive")
        return {"d": q.d}, False

    s = 1 if tag in (CaseTag.CASE2A, CaseTag.CASE2B) else 2
    scaled_a = s * t.A
    if scaled_a % a2:
        raise _fail(t, f"{s}*A not divisible by a2")
    a_prime = scaled_a // a2
    b_prime = a_prime + s
    if s * t.B != b2 * b_prime:
        raise _fail(t, f"{s}*B != b2*(A'+{s})")
    h = a1
    k = b2 - b1
    if (a2 - h) * (b2 - k) * a_prime != h * k * (a_prime + s):
        raise _fail(t, "middle-factorization identity failed")
    out = {"A_prime": a_prime, "B_prime": b_prime, "h": h, "k": k}
    if s == 2 and a_prime % 2 == 0:
        a_dprime = a_prime // 2
        if h * k % a_dprime:
            raise _fail(t, "A'' does not divide h*k")
        out["A_dprime"] = a_dprime
        out["l"] = h * k // a_dprime
    else:
        if h * k % a_prime:
            raise _fail(t, "A' does not divide h*k")
        out["l"] = h * k // a_prime
    return out, False


def classify(t: FactorizationTriple) -> CaseDecomposition:
    """Classify a triple by a2 - b2 and attach its verified witnesses."""
    tag = _tag_of(t.quad)
    witnesses, midpoint_absent = _derive_witnesses(t, tag)
    return CaseDecomposition(tag, witnesses, midpoint_absent)


def decompose(
    t: FactorizationTriple, c: CaseDecomposition | None = None
) -> dict[str, int]:
    """Re-derive and verify the witness set for a (possibly pre-classified)
    triple. Raises DecompositionError when any identity fails."""
    if c is not None and c.tag is not _tag_of(t.quad):
        raise ValueError(f"classification {c.tag.value} does not match the triple")
    witnesses, _ = _derive_witnesses(t, _tag_of(t.quad))
    return witnesses


def gap(t: LatticeTriple) -> int:
    """max(x3 - x1, y1 - y3), the spread bounded from both sides."""
    return max(t.xs[2] - t.xs[0], t.ys[0] - t.ys[2])


def gap_lower_test(gap_value: int, n: int) -> tuple[bool, MarginCertificate]:
    """Exact form of gap > 2^(2/3)*n^(1/6) + 1/2: (2g-1)^6 > 1024n.

    Equality is impossible (the left side is odd), so the strict integer
    comparison is equivalent to the strict real one.
    """
    cert = MarginCertificate((2 * gap_value - 1) ** 6, 1024 * n)
    return cert.lhs > cert.rhs, cert


def gap_lower_holds(t: LatticeTriple) -> tuple[bool, MarginCertificate]:
    """Whether the triple's gap clears the sixth-root lower bound, with the
    two compared integers as a certificate."""
    return gap_lower_test(gap(t), t.n)


def spread_lower_holds(t: LatticeTriple) -> bool:
    """Exact form of x3 - x1 >= 2^(2/3)*x1/n^(1/3): n*(x3-x1)^3 >= 4*x1^3."""
    dx = t.xs[2] - t.xs[0]
    return t.n * dx**3 >= 4 * t.xs[0] ** 3
