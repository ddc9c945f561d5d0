"""Dense univariate polynomials over a finite field.

Coefficients are stored ascending by degree as integer element codes with no
trailing zeros, so the zero polynomial is the empty tuple and every value has
exactly one representation. The degree of the zero polynomial is the float
minus-infinity sentinel (never an integer), which keeps degree comparisons
natural in division and gcd loops.

The text literal for a polynomial is its comma-separated code sequence,
ascending by degree: "1,0,2" over F_3 is 2t^2 + 1, the empty string is 0.
"""

from .field import Field, FieldElement

NEG_INF = float("-inf")


class Poly:
    """Immutable polynomial over a Field, coefficients as element codes."""

    __slots__ = ("field", "codes")

    def __init__(self, field, codes=()):
        if not isinstance(field, Field):
            raise TypeError("first argument must be a Field")
        codes = list(codes)
        for c in codes:
            field._check_code(c)
        while codes and codes[-1] == 0:
            codes.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "codes", tuple(codes))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def gen(cls, field):
        """The variable t."""
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field, value):
        return cls(field, (field.element(value).code,))

    @classmethod
    def monomial(cls, field, degree, coeff=1):
        if degree < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls(field, [0] * degree + [field.element(coeff).code])

    @classmethod
    def from_elements(cls, field, elements):
        return cls(field, [field.element(e).code for e in elements])

    @classmethod
    def from_literal(cls, field, text):
        """Parse a comma-separated ascending code list; empty means zero."""
        text = text.strip()
        if not text:
            return cls.zero(field)
        codes = []
        for pos, token in enumerate(text.split(",")):
            token = token.strip()
            try:
                code = int(token)
            except ValueError:
                raise ValueError(
                    f"token {pos + 1} ({token!r}) is not an integer"
                ) from None
            if not 0 <= code < field.q:
                raise ValueError(
                    f"token {pos + 1} ({token!r}) is out of range [0, {field.q})"
                )
            codes.append(code)
        return cls(field, codes)

    def literal(self):
        """Inverse of from_literal."""
        return ",".join(str(c) for c in self.codes)

    # -- structure -----------------------------------------------------------

    @property
    def degree(self):
        """Degree, or the minus-infinity sentinel for the zero polynomial."""
        return len(self.codes) - 1 if self.codes else NEG_INF

    @property
    def is_zero(self):
        return not self.codes

    @property
    def is_monic(self):
        return bool(self.codes) and self.codes[-1] == 1

    def lc(self):
        """Leading coefficient as a FieldElement; zero for the zero poly."""
        return self.field.element(self.codes[-1] if self.codes else 0)

    def coefficients(self):
        """All coefficients ascending, as FieldElements."""
        return tuple(self.field.element(c) for c in self.codes)

    def __getitem__(self, i):
        if i < 0:
            raise IndexError("no negative degrees")
        code = self.codes[i] if i < len(self.codes) else 0
        return self.field.element(code)

    def norm(self):
        """q**deg(f); the zero polynomial has norm 0."""
        return self.field.q ** (len(self.codes) - 1) if self.codes else 0

    def __bool__(self):
        return bool(self.codes)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.codes == other.codes

    def __hash__(self):
        return hash((self.field, self.codes))

    def __repr__(self):
        return f"Poly({self.literal()!r} over GF({self.field.q}))"

    def __str__(self):
        if not self.codes:
            return "0"
        terms = []
        for i in range(len(self.codes) - 1, -1, -1):
            c = self.codes[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "t" if i == 1 else f"t^{i}"
                terms.append(var if c == 1 else f"{c}*{var}")
        return " + ".join(terms)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise TypeError("operands belong to different fields")
            return other
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("operands belong to different fields")
            return Poly(self.field, (other.code,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        F = self.field
        a, b = self.codes, other.codes
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.codes])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        F = self.field
        a, b = self.codes, other.codes
        if not a or not b:
            return Poly.zero(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        b = other.codes
        inv_lead = F.inv(b[-1])
        rem = list(self.codes)
        if len(rem) < len(b):
            return Poly.zero(F), self
        quo = [0] * (len(rem) - len(b) + 1)
        for shift in range(len(rem) - len(b), -1, -1):
            c = rem[shift + len(b) - 1]
            if c == 0:
                continue
            c = F.mul(c, inv_lead)
            quo[shift] = c
            for j, y in enumerate(b):
                if y:
                    rem[shift + j] = F.sub(rem[shift + j], F.mul(c, y))
        return Poly(F, quo), Poly(F, rem[: len(b) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers take non-negative integers")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def monic(self):
        """Divide by the leading coefficient; zero stays zero."""
        if not self.codes or self.codes[-1] == 1:
            return self
        F = self.field
        inv = F.inv(self.codes[-1])
        return Poly(F, [F.mul(c, inv) for c in self.codes])

    def scaled(self, value):
        """Multiply by a field element (accepts a code or FieldElement)."""
        k = self.field.element(value).code
        F = self.field
        return Poly(F, [F.mul(c, k) for c in self.codes])

    def shifted(self, degree):
        """Multiply by t**degree."""
        if degree < 0:
            raise ValueError("shift degree must be >= 0")
        if not self.codes:
            return self
        return Poly(self.field, (0,) * degree + self.codes)

    # -- calculus and evaluation ------------------------------------------------

    def derivative(self):
        """Formal derivative (characteristic-aware)."""
        F = self.field
        out = []
        for i in range(1, len(self.codes)):
            out.append(F.mul(self.codes[i], F.scalar(i)))
        return Poly(F, out)

    def __call__(self, x):
        """Horner evaluation at a FieldElement (or code)."""
        x = self.field.element(x).code
        F = self.field
        acc = 0
        for c in reversed(self.codes):
            acc = F.add(F.mul(acc, x), c)
        return F.element(acc)


def gcd(a, b):
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    if a.field != b.field:
        raise TypeError("operands belong to different fields")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def pow_mod(base, e, modulus):
    """base**e mod modulus by square and multiply, e >= 0."""
    if e < 0:
        raise ValueError("exponent must be >= 0")
    if modulus.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    result = Poly.one(base.field)
    base = base % modulus
    while e:
        if e & 1:
            result = result * base % modulus
        base = base * base % modulus
        e >>= 1
    return result


def resultant(f, g):
    """Res(f, g) as a FieldElement, via the Euclidean remainder chain.

    Convention: Res(f, g) = lc(f)**deg(g) * prod g(alpha) over the roots of f
    with multiplicity, so Res(f, g) = 0 exactly when f and g share a root in
    the algebraic closure. Never expands a Sylvester determinant.
    """
    if f.field != g.field:
        raise TypeError("operands belong to different fields")
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined here")
    F = f.field
    acc = 1
    negate = False
    a, b = f, g
    while b.degree > 0:
        if a.degree > 0 and (a.degree * b.degree) % 2 == 1:
            negate = not negate
        r = a % b
        if r.is_zero:
            return F.zero()
        drop = a.degree - r.degree
        acc = F.mul(acc, F.pow(b.codes[-1], drop))
        a, b = b, r
    # b is a nonzero constant
    acc = F.mul(acc, F.pow(b.codes[0], a.degree if a.degree > 0 else 0))
    if negate:
        acc = F.neg(acc)
    return F.element(acc)


def discriminant(f):
    """disc(f) = (-1)**(n(n-1)/2) Res(f, f') / lc(f); 0 when f' vanishes."""
    if f.degree < 1:
        raise ValueError("discriminant needs degree >= 1")
    F = f.field
    fp = f.derivative()
    if fp.is_zero:
        return F.zero()
    n = f.degree
    res = resultant(f, fp)
    d = F.div(res.code, f.codes[-1])
    if (n * (n - 1) // 2) % 2 == 1:
        d = F.neg(d)
    return F.element(d)


def is_square(f, up_to_constant=False):
    """Whether f is h**2 exactly, or c*h**2 when up_to_constant is set."""
    if f.is_zero:
        raise ValueError("squareness of the zero polynomial is not defined")
    from .factorization import squarefree_decomposition

    F = f.field
    if any(m % 2 for _, m in squarefree_decomposition(f.monic())):
        return False
    if up_to_constant:
        return True
    lead = f.codes[-1]
    if F.q % 2 == 0:
        return True  # squaring is a bijection in characteristic 2
    return F.chi2(lead) == 1
