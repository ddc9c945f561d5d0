"""Sweep backend: flat field tables plus kernel selection and routing.

Two interchangeable kernel implementations exist: a compiled extension
(fqprimes._kernels) and a pure-Python twin (fqprimes._kernels_py). The
compiled one is preferred when importable; setting FQPRIMES_PURE=1 in the
environment forces the pure kernels. Both share one integer protocol, so
results are identical bit for bit.

Fields larger than TABLE_CAP get no lookup tables; sweeps for them fall
back to the object layer (Poly/factorization), which is slower but has no
size ceiling below the enumeration budget.
"""

import os
from array import array
from dataclasses import dataclass

from .ntheory import partitions
from . import _kernels_py

MODE_PRIME = _kernels_py.MODE_PRIME
MODE_FROB = _kernels_py.MODE_FROB
MODE_TYPE = _kernels_py.MODE_TYPE
MODE_MOBIUS = _kernels_py.MODE_MOBIUS
MODE_CHOWLA = _kernels_py.MODE_CHOWLA
MODE_BATEMAN = _kernels_py.MODE_BATEMAN
MODE_AP = _kernels_py.MODE_AP

TABLE_CAP = 1024

if os.environ.get("FQPRIMES_PURE"):
    _impl = _kernels_py
    _BACKEND_NAME = "pure"
else:
    try:
        from . import _kernels as _impl
        _BACKEND_NAME = "compiled"
    except ImportError:
        _impl = _kernels_py
        _BACKEND_NAME = "pure"


def backend_name():
    """Which kernel set is active: "compiled" or "pure"."""
    return _BACKEND_NAME


@dataclass(frozen=True)
class Tables:
    """Flat arithmetic tables for one field, int typecode for buffer access."""

    q: int
    p: int
    nu: int
    mul: array
    add: array
    inv: array
    neg: array
    chi: array
    chi_valid: bool


def tables_for(field):
    """Build (and cache on the field) the flat tables used by kernels."""
    cached = field._kernel_tables
    if cached is not None:
        return cached
    q = field.q
    if q > TABLE_CAP:
        raise ValueError(f"kernel tables need q <= {TABLE_CAP}, got q = {q}")
    if field.nu == 1:
        p = field.p
        mul = array("i", (a * b % p for a in range(p) for b in range(p)))
        add = array("i", ((a + b) % p for a in range(p) for b in range(p)))
        inv = array("i", (pow(a, -1, p) if a else 0 for a in range(p)))
        neg = array("i", ((-a) % p for a in range(p)))
    else:
        mul = array("i", (field.mul(a, b) for a in range(q) for b in range(q)))
        add = array("i", (field.add(a, b) for a in range(q) for b in range(q)))
        inv = array("i", (field.inv(a) if a else 0 for a in range(q)))
        neg = array("i", (field.neg(a) for a in range(q)))
    chi_valid = q % 2 == 1
    if chi_valid:
        chi = array("i", (field.chi2(a) for a in range(q)))
    else:
        chi = array("i", [0] * q)
    tables = Tables(q, field.p, field.nu, mul, add, inv, neg, chi, chi_valid)
    field._kernel_tables = tables
    return tables


def partition_keys(n):
    """Sorted kernel keys for the partitions of n, plus key -> partition.

    A partition with c_d parts of size d encodes as sum c_d * (n+1)**(d-1);
    c_d <= n < n+1 makes the encoding injective.
    """
    radix = n + 1
    pairs = []
    for part in partitions(n):
        key = 0
        for d in part:
            key += radix ** (d - 1)
        pairs.append((key, part))
    pairs.sort()
    return [k for k, _ in pairs], {k: part for k, part in pairs}


def _interval_object_route(field, mode, center, m, fs, gs, eps, n, lo, hi, keys):
    """Object-layer twin of the interval kernel, for q above TABLE_CAP."""
    from .poly import Poly
    from .family import ShortInterval
    from .factorization import factorization_type, is_irreducible, mobius

    interval = ShortInterval(Poly(field, center), m)
    fps = [Poly(field, c) for c in fs]
    gps = [Poly(field, c) for c in gs]
    r = len(fps)
    irr = 0
    irr_by_type = 0
    type_counts = {}
    nsf = 0
    acc = 0
    conj = 0
    ind = [0] * r

    q = field.q
    width = m + 1
    for index in range(lo, hi):
        digits = []
        v = index
        for _ in range(width):
            digits.append(v % q)
            v //= q
        h = interval.member(tuple(digits))
        hh = h * h
        if mode == MODE_PRIME:
            F = fps[0] + gps[0] * hh
            if is_irreducible(F):
                irr += 1
            if factorization_type(F).parts == (n,):
                irr_by_type += 1
        elif mode == MODE_FROB:
            F = fps[0] + gps[0] * hh
            key, sf = _object_type_key(F, n)
            if sf:
                type_counts[key] = type_counts.get(key, 0) + 1
            else:
                nsf += 1
        elif mode == MODE_MOBIUS:
            acc += mobius(fps[0] + gps[0] * hh)
        elif mode == MODE_CHOWLA:
            prod = 1
            for i in range(r):
                val = mobius(fps[i] + gps[i] * hh)
                if eps[i] == 2:
                    val *= val
                prod *= val
                if prod == 0:
                    break
            acc += prod
        elif mode == MODE_BATEMAN:
            allp = True
            for i in range(r):
                if is_irreducible(fps[i] + gps[i] * hh):
                    ind[i] += 1
                else:
                    allp = False
            if allp:
                conj += 1
        else:
            raise ValueError(f"unsupported interval mode {mode}")

    if mode == MODE_PRIME:
        return [irr, irr_by_type]
    if mode == MODE_FROB:
        return [type_counts.get(k, 0) for k in keys] + [nsf]
    if mode in (MODE_MOBIUS, MODE_CHOWLA):
        return [acc]
    return [conj] + ind


def _object_type_key(f, n):
    from .factorization import factor

    fact = factor(f)
    key = 0
    squarefree = True
    for g, mult in fact.factors:
        if mult > 1:
            squarefree = False
        key += mult * (n + 1) ** (g.degree - 1)
    return key, squarefree


def _mn_object_route(field, mode, n, shifts, eps, ap_mod, ap_res, lo, hi, keys):
    """Object-layer twin of the Mn kernel."""
    from .poly import Poly
    from .factorization import is_irreducible, mobius

    q = field.q
    shift_polys = [Poly(field, s) for s in shifts]
    mod_poly = Poly(field, ap_mod) if ap_mod is not None else None
    res_poly = Poly(field, ap_res) if ap_res is not None else None
    r = len(shift_polys)
    irr = 0
    type_counts = {}
    acc = 0
    matches = 0
    for index in range(lo, hi):
        digits = []
        v = index
        for _ in range(n):
            digits.append(v % q)
            v //= q
        f = Poly(field, digits + [1])
        if mode == MODE_PRIME:
            if is_irreducible(f):
                irr += 1
        elif mode == MODE_TYPE:
            key, _sf = _object_type_key(f, n)
            type_counts[key] = type_counts.get(key, 0) + 1
        elif mode == MODE_MOBIUS:
            acc += mobius(f)
        elif mode == MODE_CHOWLA:
            prod = 1
            for i in range(r):
                val = mobius(f + shift_polys[i])
                if eps[i] == 2:
                    val *= val
                prod *= val
                if prod == 0:
                    break
            acc += prod
        elif mode == MODE_AP:
            if f % mod_poly == res_poly and is_irreducible(f):
                matches += 1
        else:
            raise ValueError(f"unsupported Mn mode {mode}")

    if mode == MODE_PRIME:
        return [irr]
    if mode == MODE_TYPE:
        return [type_counts.get(k, 0) for k in keys]
    if mode in (MODE_MOBIUS, MODE_CHOWLA):
        return [acc]
    return [matches]


# Factorization-type keys for degree n use radix n+1 and must fit the
# compiled kernels' 64-bit accumulators; (n+1)**(n-1) overflows past this.
MAX_KEY_DEGREE = 16


def _needs_object_route(field, mode, n, interval):
    if field.q > TABLE_CAP:
        return True
    uses_keys = mode in (MODE_FROB, MODE_TYPE) or (interval and mode == MODE_PRIME)
    return uses_keys and n > MAX_KEY_DEGREE


def interval_sweep(field, mode, center, m, fs, gs, eps, n, lo=0, hi=None, keys=()):
    """Run the interval kernel (or object fallback) over indices [lo, hi).

    center/fs/gs are code sequences (ascending, trimmed); see _kernels_py
    for mode codes and result layouts.
    """
    if hi is None:
        hi = field.q ** (m + 1)
    if _needs_object_route(field, mode, n, interval=True):
        return _interval_object_route(
            field, mode, list(center), m,
            [list(c) for c in fs], [list(c) for c in gs],
            list(eps), n, lo, hi, list(keys),
        )
    t = tables_for(field)
    return list(_impl.interval_sweep(
        mode, t.q, t.p, t.nu, t.mul, t.add, t.inv, t.neg, t.chi, t.chi_valid,
        list(center), m, [list(c) for c in fs], [list(c) for c in gs],
        list(eps), n, lo, hi, list(keys),
    ))


def mn_sweep(field, mode, n, shifts=(), eps=(), ap_mod=None, ap_res=None,
             lo=0, hi=None, keys=()):
    """Run the monic-degree-n kernel (or object fallback) over [lo, hi)."""
    if hi is None:
        hi = field.q ** n
    if _needs_object_route(field, mode, n, interval=False):
        return _mn_object_route(
            field, mode, n, [list(s) for s in shifts], list(eps),
            list(ap_mod) if ap_mod is not None else None,
            list(ap_res) if ap_res is not None else None,
            lo, hi, list(keys),
        )
    t = tables_for(field)
    return list(_impl.mn_sweep(
        mode, t.q, t.p, t.nu, t.mul, t.add, t.inv, t.neg, t.chi, t.chi_valid,
        n, [list(s) for s in shifts], list(eps),
        list(ap_mod) if ap_mod is not None else None,
        list(ap_res) if ap_res is not None else None,
        lo, hi, list(keys),
    ))


def weil_sum(field, pcodes):
    """Character sum over all field elements of the polynomial's values."""
    if field.q > TABLE_CAP:
        from .poly import Poly

        P = Poly(field, list(pcodes))
        return sum(field.chi2(P(field.element(b)).code) for b in range(field.q))
    t = tables_for(field)
    return int(_impl.weil_sum(t.q, t.mul, t.add, t.chi, list(pcodes)))
