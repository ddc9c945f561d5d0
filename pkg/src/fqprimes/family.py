"""Short intervals and admissible quadratic families F(A, t) = f + g*(p + l)^2.

An interval I(p, m) holds the q^(m+1) monic polynomials p + sum_{j<=m} A_j t^j.
Enumeration is in odometer order with A_0 moving fastest, and splits into q
disjoint blocks by the top coordinate A_m, which is the contract parallel
sweeps rely on for deterministic concatenation.
"""

from dataclasses import dataclass

from .poly import Poly, gcd, is_square

ADMISSIBILITY_LABELS = (
    "f_zero",
    "g_zero",
    "not_coprime",
    "g_not_monic",
    "deg_order",
    "fg_square",
    "p_degree",
    "q_even",
)


def check_admissible(f, g, center, m):
    """Every violated admissibility condition, empty when constructible.

    Labels: f_zero, g_zero, not_coprime (gcd(f,g) nonconstant), g_not_monic,
    deg_order (deg f >= deg g), fg_square (f*g an exact square), p_degree
    (deg center <= m), q_even. Violations are data, not errors.
    """
    out = []
    if f.is_zero:
        out.append("f_zero")
    if g.is_zero:
        out.append("g_zero")
    if not f.is_zero and not g.is_zero:
        if gcd(f, g).degree != 0:
            out.append("not_coprime")
    if not g.is_zero and not g.is_monic:
        out.append("g_not_monic")
    if f.degree >= g.degree:
        out.append("deg_order")
    if not f.is_zero and not g.is_zero and is_square(f * g):
        out.append("fg_square")
    if center.degree <= m:
        out.append("p_degree")
    if f.field.q % 2 == 0:
        out.append("q_even")
    return out


@dataclass(frozen=True)
class ShortInterval:
    """I(center, m): all monic h with deg(center - h) <= m, deg center > m."""

    center: Poly
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("interval radius must be >= 0")
        if not self.center.is_monic:
            raise ValueError("interval center must be monic")
        if self.center.degree <= self.m:
            raise ValueError("interval center degree must exceed the radius")

    @property
    def field(self):
        return self.center.field

    @property
    def size(self):
        return self.field.q ** (self.m + 1)

    def tuples(self, block=None):
        """All A tuples in odometer order (A_0 fastest).

        With block=b in [0, q), only the tuples with top coordinate A_m = b,
        in the same relative order; the concatenation over b = 0..q-1 equals
        the full enumeration.
        """
        q = self.field.q
        width = self.m + 1
        if block is None:
            lo, hi = 0, q**width
        else:
            if not 0 <= block < q:
                raise ValueError(f"block must lie in [0, {q})")
            step = q**self.m
            lo, hi = block * step, (block + 1) * step
        for index in range(lo, hi):
            digits = []
            for _ in range(width):
                digits.append(index % q)
                index //= q
            yield tuple(digits)

    def member(self, A):
        """center + sum A_j t^j for one coordinate tuple."""
        A = tuple(A)
        if len(A) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} coordinates, got {len(A)}")
        F = self.field
        codes = list(self.center.codes)
        for j, a in enumerate(A):
            codes[j] = F.add(codes[j], F.element(a).code)
        return Poly(F, codes)

    def members(self):
        """All q^(m+1) member polynomials in enumeration order."""
        for A in self.tuples():
            yield self.member(A)


def enumerate_interval(interval):
    """Ordered member polynomials of the interval (odometer, A_0 fastest)."""
    return interval.members()


@dataclass(frozen=True)
class QuadraticFamily:
    """f + g*(center + l)^2 with l ranging over I(center, m) offsets."""

    f: Poly
    g: Poly
    interval: ShortInterval

    def __post_init__(self):
        if not (self.f.field == self.g.field == self.interval.field):
            raise TypeError("family parts belong to different fields")
        violations = check_admissible(
            self.f, self.g, self.interval.center, self.interval.m
        )
        if violations:
            raise ValueError(
                "family is not admissible: " + ", ".join(violations)
            )

    @property
    def field(self):
        return self.f.field

    @property
    def center(self):
        return self.interval.center

    @property
    def m(self):
        return self.interval.m

    @property
    def n(self):
        """Common degree of every specialization: deg g + 2 deg center."""
        return self.g.degree + 2 * self.center.degree

    def f_tilde(self):
        """f + g * center**2, the A = 0 specialization."""
        return self.f + self.g * self.center * self.center

    def specialize(self, A):
        """f + g*h^2 for h = center + sum A_j t^j; degree is exactly n."""
        h = self.interval.member(A)
        return self.f + self.g * h * h

    def specializations(self):
        """(A, specialize(A)) pairs in enumeration order."""
        for A in self.interval.tuples():
            yield A, self.specialize(A)


def specialize(family, A):
    return family.specialize(A)


def verify_discriminant_identity(family, partial_A=()):
    """Check B^2 - 4AC = -4 f g for the quadratic in the free coordinate a_0.

    With a_1..a_m specialized to partial_A and a_0 left symbolic, the family
    member is A(t) a_0^2 + B(t) a_0 + C(t) with A = g, B = 2g(l1 + center),
    C = f_tilde + g(l1^2 + 2*center*l1), l1 = sum_{j>=1} A_j t^j. Exact
    polynomial arithmetic on both sides; m = 0 degenerates to l1 = 0.
    """
    partial_A = tuple(partial_A)
    if len(partial_A) != family.m:
        raise ValueError(f"expected {family.m} fixed coordinates")
    F = family.field
    f, g, center = family.f, family.g, family.center
    ell1 = Poly(F, [0] + [F.element(a).code for a in partial_A])
    two = Poly.constant(F, F.scalar(2))
    four = two * two
    a_coef = g
    b_coef = two * g * (ell1 + center)
    c_coef = family.f_tilde() + g * (ell1 * ell1 + two * center * ell1)
    lhs = b_coef * b_coef - four * a_coef * c_coef
    rhs = -(four * f * g)
    return lhs == rhs
