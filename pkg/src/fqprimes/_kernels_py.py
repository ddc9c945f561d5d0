"""Pure-Python sweep kernels over flat field tables.

Operates on polynomials as plain lists of element codes (ascending degree,
no trailing zeros) and on field arithmetic as flat lookup tables:
mul/add are row-major q*q lists, inv/neg are length-q lists, chi maps a code
to the quadratic character value in {-1, 0, 1} (all zeros when q is even).

The compiled backend implements the same three entry points with identical
argument and result layouts; parity between the two is test-enforced.

Mode codes (shared protocol):
  0 PRIME    1 FROB    2 TYPE    3 MOBIUS    4 CHOWLA    5 BATEMAN    6 AP

Result layouts, always a list of ints:
  interval PRIME   [irreducible_count, count_via_factorization_type]
  interval FROB    per-key counts aligned with `keys`, then not-squarefree
  interval MOBIUS  [mobius_sum]
  interval CHOWLA  [correlation_sum]
  interval BATEMAN [simultaneous_count, individual_0, ..., individual_{r-1}]
  Mn PRIME         [irreducible_count]
  Mn TYPE          per-key counts aligned with `keys`
  Mn MOBIUS        [mobius_sum]
  Mn CHOWLA        [correlation_sum]
  Mn AP            [residue_match_count]
"""

MODE_PRIME = 0
MODE_FROB = 1
MODE_TYPE = 2
MODE_MOBIUS = 3
MODE_CHOWLA = 4
MODE_BATEMAN = 5
MODE_AP = 6


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, q, mul, add):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            base = x * q
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j] * q + mul[base + y]]
    return out


def _poly_add(a, b, q, add):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for j, y in enumerate(b):
        if y:
            out[j] = add[out[j] * q + y]
    return _trim(out)


def _poly_mod(r, b, q, mul, add, neg, inv):
    """Remainder of r by nonzero b; r is consumed in place."""
    db = len(b) - 1
    if db == 0:
        return []
    binv = inv[b[-1]]
    _trim(r)
    while len(r) - 1 >= db:
        c = mul[r[-1] * q + binv]
        nc = neg[c]
        shift = len(r) - 1 - db
        base = nc * q
        for j in range(db):
            y = b[j]
            if y:
                r[shift + j] = add[r[shift + j] * q + mul[base + y]]
        r.pop()
        _trim(r)
    return r


def _poly_div(a, b, q, mul, add, neg, inv):
    """Quotient of a by nonzero b; a is consumed in place."""
    db = len(b) - 1
    binv = inv[b[-1]]
    if db == 0:
        return _trim([mul[x * q + binv] for x in a])
    _trim(a)
    if len(a) - 1 < db:
        return []
    out = [0] * (len(a) - db)
    while len(a) - 1 >= db:
        c = mul[a[-1] * q + binv]
        shift = len(a) - 1 - db
        out[shift] = c
        nc = neg[c]
        base = nc * q
        for j in range(db):
            y = b[j]
            if y:
                a[shift + j] = add[a[shift + j] * q + mul[base + y]]
        a.pop()
        _trim(a)
    return out


def _poly_gcd(a, b, q, mul, add, neg, inv):
    """Monic gcd; both arguments are consumed."""
    _trim(a)
    _trim(b)
    while b:
        a = _poly_mod(a, b, q, mul, add, neg, inv)
        a, b = b, a
    if a and a[-1] != 1:
        ilc = inv[a[-1]]
        a = [mul[x * q + ilc] for x in a]
    return a


def _deriv(f, q, p, mul):
    out = []
    for i in range(1, len(f)):
        s = i % p
        out.append(mul[f[i] * q + s] if s else 0)
    return _trim(out)


def _pow_code(c, e, q, mul):
    r = 1
    while e:
        if e & 1:
            r = mul[r * q + c]
        c = mul[c * q + c]
        e >>= 1
    return r


def _powq_mod(u, f, q, mul, add, neg, inv):
    """u**q mod f for u already reduced mod f."""
    result = None
    base = u
    e = q
    while e:
        if e & 1:
            if result is None:
                result = list(base)
            else:
                result = _poly_mod(
                    _poly_mul(result, base, q, mul, add), f, q, mul, add, neg, inv
                )
        e >>= 1
        if e:
            base = _poly_mod(
                _poly_mul(base, base, q, mul, add), f, q, mul, add, neg, inv
            )
    return result


def _sub_x(u, q, add, neg):
    """u - t as a fresh trimmed list."""
    d = list(u)
    while len(d) < 2:
        d.append(0)
    d[1] = add[d[1] * q + neg[1]]
    return _trim(d)


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


def _is_irreducible(f, q, mul, add, neg, inv):
    """Rabin test for monic f of degree >= 1."""
    n = len(f) - 1
    if n == 1:
        return True
    checkpoints = {n // ell for ell in _prime_divisors(n)}
    u = [0, 1]
    for i in range(1, n + 1):
        u = _powq_mod(u, f, q, mul, add, neg, inv)
        if i in checkpoints:
            g = _poly_gcd(list(f), _sub_x(u, q, add, neg), q, mul, add, neg, inv)
            if len(g) != 1:
                return False
    return u == [0, 1]


def _pth_root(f, q, p, nu, mul):
    """p-th root of f with zero derivative (all exponents divisible by p)."""
    e = q // p
    out = []
    for i in range(0, len(f), p):
        c = f[i]
        out.append(_pow_code(c, e, q, mul) if c else 0)
    return out


def _squarefree_parts(f, q, p, nu, mul, add, neg, inv):
    """Yun decomposition of monic nonconstant f: list of (part, multiplicity)."""
    out = []
    fp = _deriv(f, q, p, mul)
    if not fp:
        root = _pth_root(f, q, p, nu, mul)
        for g, m in _squarefree_parts(root, q, p, nu, mul, add, neg, inv):
            out.append((g, m * p))
        return out
    c = _poly_gcd(list(f), fp, q, mul, add, neg, inv)
    w = _poly_div(list(f), c, q, mul, add, neg, inv)
    i = 1
    while w != [1]:
        y = _poly_gcd(list(w), list(c), q, mul, add, neg, inv)
        z = _poly_div(w, y, q, mul, add, neg, inv)
        if z != [1]:
            out.append((z, i))
        w = y
        c = _poly_div(c, y, q, mul, add, neg, inv)
        i += 1
    if c != [1]:
        root = _pth_root(c, q, p, nu, mul)
        for g, m in _squarefree_parts(root, q, p, nu, mul, add, neg, inv):
            out.append((g, m * p))
    return out


def _ddf_degrees(g, q, mul, add, neg, inv):
    """(degree d, number of degree-d irreducible factors) for squarefree monic g."""
    out = []
    f = list(g)
    n = len(f) - 1
    if n == 0:
        return out
    if n == 1:
        return [(1, 1)]
    u = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        u = _powq_mod(u, f, q, mul, add, neg, inv)
        h = _poly_gcd(list(f), _sub_x(u, q, add, neg), q, mul, add, neg, inv)
        if len(h) != 1:
            out.append((d, (len(h) - 1) // d))
            f = _poly_div(f, h, q, mul, add, neg, inv)
            if len(f) - 1 == 0:
                return out
            u = _poly_mod(u, f, q, mul, add, neg, inv)
    if len(f) - 1 > 0:
        out.append((len(f) - 1, 1))
    return out


def _type_key(f, radixpow, q, p, nu, mul, add, neg, inv):
    """(partition key, squarefree flag) for monic f of degree >= 1.

    Key encodes the multiset of irreducible-factor degrees, multiplicities
    expanded, as sum over degrees d of (count of d) * (n+1)**(d-1).
    """
    key = 0
    squarefree = True
    for g, m in _squarefree_parts(f, q, p, nu, mul, add, neg, inv):
        if m > 1:
            squarefree = False
        for d, cnt in _ddf_degrees(g, q, mul, add, neg, inv):
            key += m * cnt * radixpow[d - 1]
    return key, squarefree


def _resultant_code(a, b, q, mul, add, neg, inv):
    """Resultant of nonzero a, b with deg a >= 1; both consumed."""
    acc = 1
    negate = False
    while len(b) - 1 > 0:
        da = len(a) - 1
        db = len(b) - 1
        r = _poly_mod(a, b, q, mul, add, neg, inv)
        if not r:
            return 0
        if da > 0 and (da * db) & 1:
            negate = not negate
        acc = mul[acc * q + _pow_code(b[-1], da - (len(r) - 1), q, mul)]
        a, b = b, r
    acc = mul[acc * q + _pow_code(b[0], len(a) - 1, q, mul)]
    if negate:
        acc = neg[acc]
    return acc


def _mobius(f, q, p, nu, mul, add, neg, inv, chi, chi_valid):
    """Mobius value of monic f with deg f >= 1."""
    fp = _deriv(f, q, p, mul)
    if not fp:
        return 0
    if chi_valid:
        n = len(f) - 1
        r = _resultant_code(list(f), fp, q, mul, add, neg, inv)
        if r == 0:
            return 0
        if (n * (n - 1) // 2) & 1:
            r = neg[r]
        v = chi[r]
        return v if n % 2 == 0 else -v
    g = _poly_gcd(list(f), fp, q, mul, add, neg, inv)
    if len(g) != 1:
        return 0
    total = 0
    for d, cnt in _ddf_degrees(f, q, mul, add, neg, inv):
        total += cnt
    return -1 if total & 1 else 1


def _digits_of(index, q, width):
    out = []
    for _ in range(width):
        out.append(index % q)
        index //= q
    return out


def interval_sweep(mode, q, p, nu, mul, add, inv, neg, chi, chi_valid,
                   center, m, fs, gs, eps, n, lo, hi, keys):
    """Sweep specializations f_i + g_i*(center + l)^2 for indices [lo, hi)."""
    mul = list(mul)
    add = list(add)
    inv = list(inv)
    neg = list(neg)
    chi = list(chi)
    center = list(center)
    fs = [list(x) for x in fs]
    gs = [list(x) for x in gs]
    eps = list(eps)
    keys = list(keys)
    r = len(fs)
    width = m + 1
    digits = _digits_of(lo, q, width)
    radixpow = [(n + 1) ** k for k in range(max(n, 1))]
    full_key = radixpow[n - 1] if n >= 1 else 0

    irr = 0
    irr_by_type = 0
    type_counts = {}
    nsf = 0
    acc_sum = 0
    conj = 0
    ind = [0] * r

    for _ in range(hi - lo):
        h = list(center)
        for j in range(width):
            d = digits[j]
            if d:
                h[j] = add[h[j] * q + d]
        hh = _poly_mul(h, h, q, mul, add)

        if mode == MODE_PRIME:
            F = _poly_add(fs[0], _poly_mul(gs[0], hh, q, mul, add), q, add)
            if _is_irreducible(F, q, mul, add, neg, inv):
                irr += 1
            key, _sf = _type_key(F, radixpow, q, p, nu, mul, add, neg, inv)
            if key == full_key:
                irr_by_type += 1
        elif mode == MODE_FROB:
            F = _poly_add(fs[0], _poly_mul(gs[0], hh, q, mul, add), q, add)
            key, sf = _type_key(F, radixpow, q, p, nu, mul, add, neg, inv)
            if sf:
                type_counts[key] = type_counts.get(key, 0) + 1
            else:
                nsf += 1
        elif mode == MODE_MOBIUS:
            F = _poly_add(fs[0], _poly_mul(gs[0], hh, q, mul, add), q, add)
            acc_sum += _mobius(F, q, p, nu, mul, add, neg, inv, chi, chi_valid)
        elif mode == MODE_CHOWLA:
            prod = 1
            for i in range(r):
                F = _poly_add(fs[i], _poly_mul(gs[i], hh, q, mul, add), q, add)
                v = _mobius(F, q, p, nu, mul, add, neg, inv, chi, chi_valid)
                if eps[i] == 2:
                    v *= v
                prod *= v
                if prod == 0:
                    break
            acc_sum += prod
        elif mode == MODE_BATEMAN:
            allp = True
            for i in range(r):
                F = _poly_add(fs[i], _poly_mul(gs[i], hh, q, mul, add), q, add)
                if _is_irreducible(F, q, mul, add, neg, inv):
                    ind[i] += 1
                else:
                    allp = False
            if allp:
                conj += 1
        else:
            raise ValueError(f"unsupported interval mode {mode}")

        j = 0
        while j < width:
            digits[j] += 1
            if digits[j] < q:
                break
            digits[j] = 0
            j += 1

    if mode == MODE_PRIME:
        return [irr, irr_by_type]
    if mode == MODE_FROB:
        return [type_counts.get(k, 0) for k in keys] + [nsf]
    if mode in (MODE_MOBIUS, MODE_CHOWLA):
        return [acc_sum]
    return [conj] + ind


def mn_sweep(mode, q, p, nu, mul, add, inv, neg, chi, chi_valid,
             n, shifts, eps, ap_mod, ap_res, lo, hi, keys):
    """Sweep all monic degree-n polynomials with coefficient index in [lo, hi)."""
    mul = list(mul)
    add = list(add)
    inv = list(inv)
    neg = list(neg)
    chi = list(chi)
    shifts = [list(s) for s in shifts]
    eps = list(eps)
    ap_mod = list(ap_mod) if ap_mod is not None else None
    ap_res = list(ap_res) if ap_res is not None else None
    keys = list(keys)
    r = len(shifts)
    digits = _digits_of(lo, q, n)
    radixpow = [(n + 1) ** k for k in range(max(n, 1))]

    irr = 0
    type_counts = {}
    acc_sum = 0
    matches = 0

    for _ in range(hi - lo):
        f = digits + [1]

        if mode == MODE_PRIME:
            if _is_irreducible(f, q, mul, add, neg, inv):
                irr += 1
        elif mode == MODE_TYPE:
            key, _sf = _type_key(f, radixpow, q, p, nu, mul, add, neg, inv)
            type_counts[key] = type_counts.get(key, 0) + 1
        elif mode == MODE_MOBIUS:
            acc_sum += _mobius(f, q, p, nu, mul, add, neg, inv, chi, chi_valid)
        elif mode == MODE_CHOWLA:
            prod = 1
            for i in range(r):
                F = _poly_add(f, shifts[i], q, add)
                v = _mobius(F, q, p, nu, mul, add, neg, inv, chi, chi_valid)
                if eps[i] == 2:
                    v *= v
                prod *= v
                if prod == 0:
                    break
            acc_sum += prod
        elif mode == MODE_AP:
            rem = _poly_mod(list(f), ap_mod, q, mul, add, neg, inv)
            if rem == ap_res and _is_irreducible(f, q, mul, add, neg, inv):
                matches += 1
        else:
            raise ValueError(f"unsupported Mn mode {mode}")

        j = 0
        while j < n:
            digits[j] += 1
            if digits[j] < q:
                break
            digits[j] = 0
            j += 1

    if mode == MODE_PRIME:
        return [irr]
    if mode == MODE_TYPE:
        return [type_counts.get(k, 0) for k in keys]
    if mode in (MODE_MOBIUS, MODE_CHOWLA):
        return [acc_sum]
    return [matches]


def weil_sum(q, mul, add, chi, pcodes):
    """Sum of chi over the values of the polynomial at every field element."""
    mul = list(mul)
    add = list(add)
    chi = list(chi)
    pcodes = list(pcodes)
    total = 0
    for b in range(q):
        acc = 0
        for c in reversed(pcodes):
            acc = add[mul[acc * q + b] * q + c]
        total += chi[acc]
    return total
