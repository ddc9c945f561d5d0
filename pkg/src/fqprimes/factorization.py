"""Factorization over F_q[t] and the arithmetic functions built on it.

The pipeline is squarefree decomposition, then distinct-degree splitting by
repeated q-power Frobenius maps, then equal-degree splitting (Cantor and
Zassenhaus for odd q, trace splitting in characteristic 2). Randomness in the
equal-degree stage comes from a generator seeded by the caller's seed XOR a
stable hash of the input coefficients, and the factor list is sorted into a
canonical order, so output is identical for every seed and platform.

Two independent Mobius routes are kept deliberately separate: mobius() walks
the factorization, mobius_via_discriminant() evaluates the quadratic character
of the discriminant. Their agreement is a theorem and a test, not a shortcut.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .field import FieldElement
from .ntheory import prime_factors
from .poly import Poly, discriminant, gcd, pow_mod


def _stable_hash(f):
    # FNV-1a over the field parameters and coefficient codes
    h = 0xCBF29CE484222325
    items = [f.field.p, f.field.nu]
    items.extend(f.field.modulus or ())
    items.extend(f.codes)
    for v in items:
        v = int(v)
        while True:
            h ^= v & 0xFF
            h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
            v >>= 8
            if not v:
                break
    return h


def squarefree_decomposition(f):
    """Yun-style decomposition of monic f into coprime squarefree parts.

    Returns [(g_i, m_i)] with every g_i monic squarefree, the g_i pairwise
    coprime, and f = prod g_i**m_i; sorted by multiplicity, then degree, then
    coefficient codes. In characteristic p a vanishing derivative routes
    through exact p-th roots (coefficient c goes to c**(p**(nu-1))).
    """
    if f.is_zero or not f.is_monic:
        raise ValueError("squarefree decomposition needs a monic polynomial")
    return sorted(_sff(f), key=_factor_key)


def _factor_key(pair):
    g, m = pair
    return (m, g.degree, g.codes)


def _sff(f):
    if f.degree == 0:
        return []
    p = f.field.p
    out = []
    deriv = f.derivative()
    if deriv.is_zero:
        return [(g, m * p) for g, m in _sff(_pth_root(f))]
    c = gcd(f, deriv)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        out.extend((g, m * p) for g, m in _sff(_pth_root(c)))
    return out


def _pth_root(f):
    # f has zero derivative, hence only exponents divisible by p
    F = f.field
    p = F.p
    exp = p ** (F.nu - 1)
    codes = []
    for i, c in enumerate(f.codes):
        if i % p == 0:
            codes.append(F.pow(c, exp))
        else:
            assert c == 0, "nonzero coefficient at exponent not divisible by p"
    return Poly(F, codes)


def is_irreducible(f):
    """Rabin's test: x**(q**n) = x mod f and coprimality at n/ell stages."""
    if f.is_zero:
        raise ValueError("the zero polynomial is not irreducible")
    n = f.degree
    if n == 0:
        return False
    if n == 1:
        return True
    f = f.monic()
    q = f.field.q
    x = Poly.gen(f.field)
    checkpoints = {n // ell for ell in prime_factors(n)}
    u = x
    for i in range(1, n + 1):
        u = pow_mod(u, q, f)
        if i in checkpoints and gcd(f, u - x).degree != 0:
            return False
    return u == x


def _ddf(g):
    # distinct-degree split of monic squarefree g: [(product, degree)]
    parts = []
    F = g.field
    q = F.q
    x = Poly.gen(F)
    u = x % g
    d = 0
    while g.degree >= 2 * (d + 1):
        d += 1
        u = pow_mod(u, q, g)
        h = gcd(g, u - x)
        if h.degree > 0:
            parts.append((h, d))
            g = g // h
            u = u % g
    if g.degree > 0:
        parts.append((g, g.degree))
    return parts


def _edf(h, d, rng):
    # split monic squarefree h, all of whose factors have degree d
    if h.degree == d:
        return [h]
    F = h.field
    q = F.q
    x_codes_len = h.degree
    while True:
        r = Poly(F, [rng.randrange(q) for _ in range(x_codes_len)])
        if r.is_zero or r.degree == 0:
            continue
        if q % 2 == 1:
            s = pow_mod(r, (q**d - 1) // 2, h) - Poly.one(F)
        else:
            # trace map over GF(2) splits in characteristic 2
            s = r
            acc = r
            for _ in range(F.nu * d - 1):
                acc = acc * acc % h
                s = s + acc
        w = gcd(h, s)
        if 0 < w.degree < h.degree:
            return _edf(w, d, rng) + _edf(h // w, d, rng)


@dataclass(frozen=True)
class FactorizationType:
    """A partition of deg f by irreducible factor degrees, with multiplicity."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 1 for x in parts):
            raise ValueError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("partition parts must be non-increasing")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self):
        return sum(self.parts)

    def counts(self):
        """Map part size j to its count c_j."""
        out = {}
        for x in self.parts:
            out[x] = out.get(x, 0) + 1
        return out

    def __str__(self):
        return ",".join(str(x) for x in self.parts)


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factors**multiplicities), factors monic irreducible."""

    unit: FieldElement
    factors: tuple  # ((Poly, int), ...) canonically ordered

    def value(self):
        field = self.unit.field
        out = Poly(field, (self.unit.code,))
        for g, m in self.factors:
            out = out * g**m
        return out

    def type(self):
        parts = []
        for g, m in self.factors:
            parts.extend([g.degree] * m)
        return FactorizationType(tuple(sorted(parts, reverse=True)))

    @property
    def is_squarefree(self):
        return all(m == 1 for _, m in self.factors)

    def to_json_dict(self):
        return {
            "unit": self.unit.code,
            "factors": [[g.literal(), m] for g, m in self.factors],
        }


def factor(f, seed=0):
    """Complete factorization of nonzero f into monic irreducibles.

    The factor list is sorted by (degree, coefficient codes), so the result is
    independent of the seed; the seed only steers the internal equal-degree
    splitting draws.
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    field = f.field
    unit = f.lc()
    monic = f.monic()
    rng = random.Random((seed & 0xFFFFFFFFFFFFFFFF) ^ _stable_hash(f))
    found = []
    for g, mult in squarefree_decomposition(monic):
        for prod, d in _ddf(g):
            for irr in _edf(prod, d, rng):
                found.append((irr, mult))
    found.sort(key=lambda pair: (pair[0].degree, pair[0].codes))
    return Factorization(unit=unit, factors=tuple(found))


def factorization_type(f, seed=0):
    """The multiplicity-expanded partition of deg f by factor degrees."""
    return factor(f, seed).type()


def frobenius_class(f, seed=0):
    """Factorization type for squarefree f, None as the not-squarefree marker."""
    fac = factor(f, seed)
    if not fac.is_squarefree:
        return None
    return fac.type()


def mobius(f, seed=0):
    """mu(f): 0 unless squarefree, else (-1)**(number of distinct factors)."""
    if f.is_zero:
        raise ValueError("mu of the zero polynomial is not defined")
    if f.degree == 0:
        return 1
    fac = factor(f, seed)
    if not fac.is_squarefree:
        return 0
    return -1 if len(fac.factors) % 2 else 1


def mobius_via_discriminant(f):
    """mu(f) = (-1)**deg(f) * chi2(disc(f)), for odd q and nonzero f'."""
    if f.field.q % 2 == 0:
        raise ValueError("the discriminant route needs odd q")
    if f.is_zero or f.degree < 1:
        raise ValueError("the discriminant route needs degree >= 1")
    if f.derivative().is_zero:
        raise ValueError("the discriminant route needs a nonzero derivative")
    chi = f.field.chi2(discriminant(f).code)
    return -chi if f.degree % 2 else chi


def euler_phi(modulus, seed=0):
    """Number of units in F_q[t]/(modulus): prod(q**(d e) - q**(d (e-1)))."""
    if modulus.is_zero:
        raise ValueError("euler_phi needs a nonzero modulus")
    q = modulus.field.q
    total = 1
    for g, e in factor(modulus, seed).factors:
        d = g.degree
        total *= q ** (d * e) - q ** (d * (e - 1))
    return total


def cauchy_probability(tau, n):
    """Probability that a uniform S_n permutation has cycle type tau.

    tau may be a FactorizationType or a plain partition tuple; its total must
    be n. The value is the exact Fraction 1 / prod(j**c_j * c_j!).
    """
    if not isinstance(tau, FactorizationType):
        tau = FactorizationType(tuple(sorted(tau, reverse=True)))
    if tau.total != n:
        raise ValueError(f"partition of {tau.total} is not a partition of {n}")
    denom = 1
    for j, c in tau.counts().items():
        denom *= j**c
        for k in range(2, c + 1):
            denom *= k
    return Fraction(1, denom)
