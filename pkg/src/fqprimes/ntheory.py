"""Small integer number-theory helpers used across the package."""

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n):
    """Sorted distinct prime factors of n >= 1, by trial division."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def mobius_int(n):
    """Integer Mobius function for n >= 1."""
    if n < 1:
        raise ValueError("mobius_int needs n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


def divisors(n):
    """Sorted positive divisors of n >= 1."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_power_split(q):
    """Write q as p**nu with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in prime_factors(q):
        nu = 0
        m = q
        while m % p == 0:
            m //= p
            nu += 1
        if m == 1:
            return p, nu
    raise ValueError(f"{q} is not a prime power")


def irreducible_count(q, n):
    """Number of monic irreducibles of degree n over F_q (necklace formula)."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    total = sum(mobius_int(d) * q ** (n // d) for d in divisors(n))
    assert total % n == 0
    return total // n


def partitions(n):
    """All partitions of n as non-increasing tuples, in a fixed order."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, cap), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out
