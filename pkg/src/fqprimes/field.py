"""Finite fields F_q with q = p**nu, exact and table-friendly.

Elements are stored as integer codes in [0, q): the code of the element with
polynomial-basis coordinates (c_0, ..., c_{nu-1}) is sum(c_i * p**i), i.e. the
base-p digits of the code, least significant first, are the coordinates. For
prime fields the code is simply the residue. This makes enumeration, text
serialization, and kernel tables all share one canonical integer encoding.
"""

from .ntheory import is_prime

MAX_Q = 2**62  # element codes stay native-width


class Field:
    """A finite field F_{p**nu}, with arithmetic on integer element codes.

    For nu > 1 the field is F_p[u]/(modulus). The default modulus is the
    lexicographically smallest monic irreducible of degree nu over F_p,
    comparing coefficient tuples from the highest degree down. A custom
    modulus (ascending coefficient list over F_p, monic, irreducible) may be
    supplied instead; fields agree only if p, nu, and modulus all agree.
    """

    __slots__ = ("p", "nu", "q", "modulus", "_kernel_tables")

    def __init__(self, p, nu=1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if nu < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**nu
        if q > MAX_Q:
            raise ValueError(f"q = {q} exceeds the supported native range")
        self.p = p
        self.nu = nu
        self.q = q
        self._kernel_tables = None
        if nu == 1:
            if modulus is not None:
                raise ValueError("a modulus only applies to proper extensions")
            self.modulus = None
        elif modulus is None:
            self.modulus = _default_modulus(p, nu)
        else:
            self.modulus = _validated_modulus(p, nu, modulus)

    def __repr__(self):
        if self.nu == 1:
            return f"Field({self.p})"
        return f"Field({self.p}, {self.nu}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.nu, self.modulus) == (other.p, other.nu, other.modulus)

    def __hash__(self):
        return hash((self.p, self.nu, self.modulus))

    # -- codecs ------------------------------------------------------------

    def coords(self, code):
        """Base-p digits of a code, least significant first, length nu."""
        self._check_code(code)
        out = []
        for _ in range(self.nu):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def code_from_coords(self, coords):
        coords = tuple(coords)
        if len(coords) != self.nu:
            raise ValueError(f"expected {self.nu} coordinates, got {len(coords)}")
        code = 0
        for c in reversed(coords):
            if not 0 <= c < self.p:
                raise ValueError(f"coordinate {c} out of range [0, {self.p})")
            code = code * self.p + c
        return code

    def element(self, value):
        """Coerce an int code, coordinate sequence, or FieldElement."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise TypeError("element belongs to a different field")
            return value
        if isinstance(value, int):
            self._check_code(value)
            return FieldElement(self, value)
        return FieldElement(self, self.code_from_coords(value))

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        """All q elements, ascending code order (0 and 1 first)."""
        return (FieldElement(self, code) for code in range(self.q))

    def _check_code(self, code):
        if not isinstance(code, int):
            raise TypeError(f"element code must be an int, got {type(code).__name__}")
        if not 0 <= code < self.q:
            raise ValueError(f"element code {code} out of range [0, {self.q})")

    # -- arithmetic on codes -----------------------------------------------

    def add(self, a, b):
        if self.nu == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        shift = 1
        for _ in range(self.nu):
            out += ((a + b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def neg(self, a):
        if self.nu == 1:
            return -a % self.p
        p = self.p
        out = 0
        shift = 1
        for _ in range(self.nu):
            out += (-a % p) * shift
            a //= p
            shift *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.nu == 1:
            return a * b % self.p
        return self._mul_ext(a, b)

    def _mul_ext(self, a, b):
        p = self.p
        da = self.coords(a)
        db = self.coords(b)
        prod = [0] * (2 * self.nu - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the defining polynomial (monic)
        mod = self.modulus
        for i in range(len(prod) - 1, self.nu - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.nu):
                    prod[i - self.nu + j] = (prod[i - self.nu + j] - c * mod[j]) % p
        code = 0
        for c in reversed(prod[: self.nu]):
            code = code * p + c
        return code

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.nu == 1:
            return pow(a, e, self.p)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.nu == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def scalar(self, k):
        """Code of the prime-subfield element k mod p."""
        return k % self.p

    def chi2(self, a):
        """Quadratic character on codes: 0 at 0, else +-1. Odd q only."""
        if self.q % 2 == 0:
            raise ValueError("the quadratic character needs odd q")
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1


class FieldElement:
    """An element of a Field, identified by its integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    @property
    def coords(self):
        return self.field.coords(self.code)

    def __repr__(self):
        return f"FieldElement({self.code} in GF({self.field.q}))"

    def __int__(self):
        return self.code

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.code == other.code

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("operands belong to different fields")
            return other.code
        return NotImplemented

    def __add__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.code, code))

    def __sub__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.code, code))

    def __mul__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.code, code))

    def __truediv__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.code, code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.code, e))


def quadratic_character(element):
    """chi2(a) in {-1, 0, 1} for a FieldElement over odd q."""
    return element.field.chi2(element.code)


def _poly_mulmod_modp(a, b, mod, p):
    # helper over F_p coefficient lists, used only for modulus selection
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    deg_m = len(mod) - 1
    for i in range(len(prod) - 1, deg_m - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(deg_m):
                prod[i - deg_m + j] = (prod[i - deg_m + j] - c * mod[j]) % p
    out = prod[:deg_m]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_gcd_is_one_modp(a, b, p):
    while b:
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) >= len(b) and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) < len(b):
                break
            c = r[-1] * inv % p
            shift = len(r) - len(b)
            for j, y in enumerate(b):
                r[shift + j] = (r[shift + j] - c * y) % p
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r
    return len(a) == 1


def _is_irreducible_modp(coeffs, p):
    # Rabin test on an F_p coefficient list (ascending, monic)
    n = len(coeffs) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    u = x
    checkpoints = {n // ell for ell in _prime_divisors(n)}
    for i in range(1, n + 1):
        u = _poly_powq_modp(u, p, coeffs)
        if i in checkpoints:
            # gcd(u - x, f) must be 1
            diff = list(u) + [0] * max(0, 2 - len(u))
            diff[1] = (diff[1] - 1) % p
            while diff and diff[-1] == 0:
                diff.pop()
            if not diff or not _poly_gcd_is_one_modp(coeffs, diff, p):
                return False
    u_minus_x = list(u) + [0] * max(0, 2 - len(u))
    u_minus_x[1] = (u_minus_x[1] - 1) % p
    return not any(u_minus_x)


def _poly_powq_modp(base, p, mod):
    result = base
    e = p
    acc = None
    while e:
        if e & 1:
            acc = result if acc is None else _poly_mulmod_modp(acc, result, mod, p)
        e >>= 1
        if e:
            result = _poly_mulmod_modp(result, result, mod, p)
    return acc if acc is not None else [1]


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _default_modulus(p, nu):
    """Smallest monic irreducible of degree nu over F_p, high-degree-first order."""
    for high in _tuples_ascending(p, nu):
        coeffs = list(reversed(high)) + [1]
        if _is_irreducible_modp(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def _tuples_ascending(p, nu):
    # all (c_{nu-1}, ..., c_0) in lexicographic order
    total = p**nu
    for k in range(total):
        digits = []
        for _ in range(nu):
            digits.append(k % p)
            k //= p
        yield tuple(reversed(digits))


def _validated_modulus(p, nu, modulus):
    coeffs = tuple(int(c) for c in modulus)
    if len(coeffs) != nu + 1:
        raise ValueError(f"modulus must have degree {nu}")
    if any(not 0 <= c < p for c in coeffs):
        raise ValueError(f"modulus coefficients must lie in [0, {p})")
    if coeffs[-1] != 1:
        raise ValueError("modulus must be monic")
    if not _is_irreducible_modp(list(coeffs), p):
        raise ValueError("modulus is reducible over the prime field")
    return coeffs
