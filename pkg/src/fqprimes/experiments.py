"""Exhaustive verification experiments with exact-arithmetic reports.

Every experiment enumerates a finite space completely (budget-guarded),
reports an exact integer observation against an exact rational main term,
and hard-asserts any theorem bound whose constant is explicit. Bounds
involving sqrt(q) are asserted in squared integer form; floating point
appears only in display-only extras.

Raising BoundViolationError means a proved, explicit-constant statement
failed on exhaustive data (or an internal exact cross-check disagreed);
the CLI maps it to a distinct exit code.
"""

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from . import backend
from .backend import (
    MODE_AP, MODE_BATEMAN, MODE_CHOWLA, MODE_FROB, MODE_MOBIUS, MODE_PRIME,
    MODE_TYPE, partition_keys,
)
from .factorization import cauchy_probability, euler_phi
from .family import QuadraticFamily, ShortInterval
from .field import Field
from .ntheory import irreducible_count
from .poly import Poly, gcd as poly_gcd, is_square

DEFAULT_BUDGET = 10 ** 7
DEFAULT_SEED = 0

CSV_HEADER = "experiment,q,observed,main_term_num,main_term_den,bound,deviation,elapsed_ms"


class BudgetError(RuntimeError):
    """Enumeration size exceeds the configured cap; refused up front."""

    def __init__(self, experiment, required, budget):
        super().__init__(
            f"{experiment}: enumeration needs {required} specializations, "
            f"budget is {budget}"
        )
        self.experiment = experiment
        self.required = required
        self.budget = budget


class BoundViolationError(Exception):
    """A hard-asserted explicit bound or exact cross-check failed."""

    def __init__(self, experiment, message, observed=None, bound_squared=None):
        super().__init__(f"{experiment}: {message}")
        self.experiment = experiment
        self.observed = observed
        self.bound_squared = bound_squared


@dataclass
class ExperimentReport:
    """One experiment's exact outcome plus provenance.

    observed and bound_squared are exact integers, main_term and the
    deviations exact rationals. table carries per-class rows for the
    distribution experiments and is dropped in the CSV projection.
    """

    experiment: str
    field: dict
    params: dict
    observed: int
    main_term: Fraction
    bound_squared: int | None
    deviation: Fraction
    normalized_deviation: Fraction | None
    enumerated: int
    seed: int
    elapsed_ms: float
    table: list | None = None
    extra: dict = dataclass_field(default_factory=dict)

    def to_json_dict(self, timing=False):
        out = {
            "experiment": self.experiment,
            "field": self.field,
            "params": _jsonify(self.params),
            "observed": self.observed,
            "main_term": _jsonify(self.main_term),
            "bound_squared": self.bound_squared,
            "deviation": _jsonify(self.deviation),
            "normalized_deviation": _jsonify(self.normalized_deviation),
            "enumerated": self.enumerated,
            "seed": self.seed,
        }
        if self.table is not None:
            out["table"] = _jsonify(self.table)
        if self.extra:
            out["extra"] = _jsonify(self.extra)
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def json_line(self, timing=False):
        return json.dumps(self.to_json_dict(timing=timing))

    def csv_row(self, timing=False):
        bound = "" if self.bound_squared is None else str(self.bound_squared)
        elapsed = f"{self.elapsed_ms:.3f}" if timing else ""
        return (
            f"{self.experiment},{self.field['q']},{self.observed},"
            f"{self.main_term.numerator},{self.main_term.denominator},"
            f"{bound},{self.deviation},{elapsed}"
        )


def _jsonify(value):
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    return value


def _field_info(field):
    info = {"p": field.p, "nu": field.nu, "q": field.q}
    info["modulus"] = (
        ",".join(str(c) for c in field.modulus) if field.nu > 1 else None
    )
    return info


def _check_budget(experiment, required, budget):
    if required > budget:
        raise BudgetError(experiment, required, budget)


def _run_blocks(fn, blocks, threads):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, blocks))
    return [fn(block) for block in blocks]


def _sum_columns(rows):
    return [sum(col) for col in zip(*rows)]


def _top_digit_blocks(q, width):
    stride = q ** (width - 1)
    return [(b * stride, (b + 1) * stride) for b in range(q)]


def _report(experiment, field, params, observed, main_term, bound_squared,
            enumerated, seed, elapsed_ms, table=None, extra=None):
    main_term = Fraction(main_term)
    deviation = Fraction(observed) - main_term
    normalized = None
    if main_term != 0:
        normalized = Fraction(observed) / main_term - 1
    return ExperimentReport(
        experiment=experiment,
        field=_field_info(field),
        params=params,
        observed=observed,
        main_term=main_term,
        bound_squared=bound_squared,
        deviation=deviation,
        normalized_deviation=normalized,
        enumerated=enumerated,
        seed=seed,
        elapsed_ms=elapsed_ms,
        table=table,
        extra=extra or {},
    )


def _family_params(family):
    return {
        "f": family.f.literal(),
        "g": family.g.literal(),
        "center": family.center.literal(),
        "m": family.m,
        "n": family.n,
    }


def _families_params(families, eps=None):
    shared = families[0]
    out = {
        "families": [
            {"f": fam.f.literal(), "g": fam.g.literal()} for fam in families
        ],
        "center": shared.center.literal(),
        "m": shared.m,
        "n": [fam.n for fam in families],
    }
    if eps is not None:
        out["eps"] = list(eps)
    return out


def _interval_codes(family):
    return (
        list(family.center.codes),
        [list(family.f.codes)],
        [list(family.g.codes)],
    )


def _validate_family_list(experiment, families):
    if not families:
        raise ValueError(f"{experiment}: need at least one family")
    interval = families[0].interval
    for fam in families[1:]:
        if fam.interval != interval:
            raise ValueError(f"{experiment}: families must share one interval")
    for i in range(len(families)):
        for j in range(i + 1, len(families)):
            if families[i].f * families[j].g == families[j].f * families[i].g:
                raise ValueError(
                    f"{experiment}: families {i} and {j} are associate "
                    "(f_i*g_j = f_j*g_i)"
                )


def _validate_eps(experiment, eps, count):
    eps = [int(e) for e in eps]
    if len(eps) != count:
        raise ValueError(f"{experiment}: need {count} eps entries, got {len(eps)}")
    if any(e not in (1, 2) for e in eps):
        raise ValueError(f"{experiment}: eps entries must be 1 or 2")
    if all(e == 2 for e in eps):
        raise ValueError(f"{experiment}: bound requires not all even eps")
    return eps


def prime_count_total(field, n, *, seed=DEFAULT_SEED, threads=1,
                      budget=DEFAULT_BUDGET):
    """Count monic irreducibles of degree n exhaustively; necklace-checked."""
    name = "count-primes"
    if n < 1:
        raise ValueError(f"{name}: need n >= 1")
    q = field.q
    size = q ** n
    _check_budget(name, size, budget)
    start = time.perf_counter()
    rows = _run_blocks(
        lambda blk: backend.mn_sweep(field, MODE_PRIME, n, lo=blk[0], hi=blk[1]),
        _top_digit_blocks(q, n), threads,
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    observed = _sum_columns(rows)[0]
    necklace = irreducible_count(q, n)
    if observed != necklace:
        raise BoundViolationError(
            name,
            f"exhaustive count {observed} != necklace formula {necklace} "
            f"(q={q}, n={n})",
            observed=observed,
        )
    return _report(
        name, field, {"n": n}, observed, Fraction(size, n), None, size, seed,
        elapsed, extra={"necklace": necklace},
    )


def prime_count_ap(field, n, modulus, residue, *, seed=DEFAULT_SEED, threads=1,
                   budget=DEFAULT_BUDGET):
    """Count monic irreducibles of degree n in one residue class mod Q."""
    name = "count-primes-ap"
    if n < 1:
        raise ValueError(f"{name}: need n >= 1")
    if modulus.degree < 1:
        raise ValueError(f"{name}: modulus must have degree >= 1")
    reduced = residue % modulus
    if poly_gcd(reduced if not reduced.is_zero else modulus, modulus).degree != 0:
        raise ValueError(f"{name}: residue and modulus are not coprime")
    q = field.q
    size = q ** n
    _check_budget(name, size, budget)
    start = time.perf_counter()
    rows = _run_blocks(
        lambda blk: backend.mn_sweep(
            field, MODE_AP, n, ap_mod=list(modulus.codes),
            ap_res=list(reduced.codes), lo=blk[0], hi=blk[1],
        ),
        _top_digit_blocks(q, n), threads,
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    observed = _sum_columns(rows)[0]
    phi = euler_phi(modulus, seed=seed)
    main = Fraction(irreducible_count(q, n), phi)
    return _report(
        name, field,
        {"n": n, "modulus": modulus.literal(), "residue": reduced.literal()},
        observed, main, None, size, seed, elapsed,
        extra={"totient": phi},
    )


def count_primes_interval(family, *, seed=DEFAULT_SEED, threads=1,
                          budget=DEFAULT_BUDGET):
    """Count irreducible specializations over the family's interval.

    The count is computed twice per specialization, by irreducibility test
    and by full factorization type, and the two totals must agree exactly.
    """
    name = "interval-primes"
    field = family.field
    q = field.q
    m = family.m
    n = family.n
    size = q ** (m + 1)
    _check_budget(name, size, budget)
    center, fs, gs = _interval_codes(family)
    start = time.perf_counter()
    rows = _run_blocks(
        lambda blk: backend.interval_sweep(
            field, MODE_PRIME, center, m, fs, gs, [], n, blk[0], blk[1],
        ),
        _top_digit_blocks(q, m + 1), threads,
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    observed, via_type = _sum_columns(rows)
    if observed != via_type:
        raise BoundViolationError(
            name,
            f"irreducibility count {observed} disagrees with factorization "
            f"route {via_type}",
            observed=observed,
        )
    return _report(
        name, field, _family_params(family), observed, Fraction(size, n),
        None, size, seed, elapsed,
        extra={"observed_via_factorization": via_type},
    )


def frobenius_distribution(family, *, seed=DEFAULT_SEED, threads=1,
                           budget=DEFAULT_BUDGET):
    """Exact factorization-type counts over the interval, against Cauchy.

    The headline observed value is the full-cycle (irreducible) count; the
    table holds one row per partition of n plus a not-squarefree bucket.
    """
    name = "frobenius-dist"
    field = family.field
    q = field.q
    m = family.m
    n = family.n
    size = q ** (m + 1)
    _check_budget(name, size, budget)
    keys, key_to_partition = partition_keys(n)
    center, fs, gs = _interval_codes(family)
    start = time.perf_counter()
    rows = _run_blocks(
        lambda blk: backend.interval_sweep(
            field, MODE_FROB, center, m, fs, gs, [], n, blk[0], blk[1], keys,
        ),
        _top_digit_blocks(q, m + 1), threads,
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    summed = _sum_columns(rows)
    counts = summed[:-1]
    not_squarefree = summed[-1]
    if sum(counts) + not_squarefree != size:
        raise BoundViolationError(
            name,
            f"class counts {sum(counts)} + not-squarefree {not_squarefree} "
            f"!= interval size {size}",
        )
    table, full_cycle = _type_table(keys, key_to_partition, counts, n, size)
    table.append({"type": "not_squarefree", "count": not_squarefree})
    return _report(
        name, field, _family_params(family), full_cycle, Fraction(size, n),
        None, size, seed, elapsed, table=table,
        extra={"not_squarefree": not_squarefree},
    )


def _type_table(keys, key_to_partition, counts, n, size):
    """Per-partition rows, largest partition first; returns (rows, (n,)-count)."""
    by_partition = {key_to_partition[k]: c for k, c in zip(keys, counts)}
    rows = []
    full_cycle = 0
    for partition in sorted(by_partition, reverse=True):
        count = by_partition[partition]
        expected = cauchy_probability(partition, n)
        rows.append({
            "type": ",".join(str(part) for part in partition),
            "count": count,
            "expected": expected,
            "deviation": Fraction(count, size) - expected,
        })
        if partition == (n,):
            full_cycle = count
    return rows, full_cycle


def type_distribution_mn(field, n, *, seed=DEFAULT_SEED, threads=1,
                         budget=DEFAULT_BUDGET):
    """Exact factorization-type counts over all monic degree-n polynomials."""
    name = "type-dist"
    if n < 1:
        raise ValueError(f"{name}: need n >= 1")
    q = field.q
    size = q ** n
    _check_budget(name, size, budget)
    keys, key_to_partition = partition_keys(n)
    start = time.perf_counter()
    rows = _run_blocks(
        lambda blk: backend.mn_sweep(
            field, MODE_TYPE, n, lo=blk[0], hi=blk[1], keys=keys,
        ),
        _top_digit_blocks(q, n), threads,
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    counts = _sum_columns(rows)
    if sum(counts) != size:
        raise BoundViolationError(
            name, f"type counts {sum(counts)} != q**n = {size}",
        )
    table, full_cycle = _type_table(keys, key_to_partition, counts, n, size)
    return _report(
        name, field, {"n": n}, full_cycle, Fraction(size, n), None, size,
        seed, elapsed, table=table,
    )


def mobius_full_sum(field, n, *, seed=DEFAULT_SEED, threads=1,
                    budget=DEFAULT_BUDGET):
    """Mobius sum over all monic degree-n polynomials; must be 1, -q, or 0."""
    name = "mobius-full-sum"
    if n < 0:
        raise ValueError(f"{name}: need n >= 0")
    q = field.q
    size = q ** n
    _check_budget(name, size, budget)
    start = time.perf_counter()
    if n == 0:
        observed = 1
    else:
        rows = _run_blocks(
            lambda blk: backend.mn_sweep(
                field, MODE_MOBIUS, n, lo=blk[0], hi=blk[1],
            ),
            _top_digit_blocks(q, n), threads,
        )
        observed = _sum_columns(rows)[0]
    elapsed = (time.perf_counter() - start) * 1000.0
    expected = 1 if n == 0 else (-q if n == 1 else 0)
    if observed != expected:
        raise BoundViolationError(
            name,
            f"sum over M_{n} is {observed}, closed form says {expected}",
            observed=observed,
        )
    return _report(
        name, field, {"n": n}, observed, Fraction(expected), None, size,
        seed, elapsed,
    )


def mobius_interval_sum(family, *, seed=DEFAULT_SEED, threads=1,
                        budget=DEFAULT_BUDGET):
    """Mobius sum over the interval; asserts the explicit (n-2) bound squared."""
    name = "mobius-sum"
    field = family.field
    q = field.q
    m = family.m
    n = family.n
    size = q ** (m + 1)
    _check_budget(name, size, budget)
    center, fs, gs = _interval_codes(family)
    start = time.perf_counter()
    rows = _run_blocks(
        lambda blk: backend.interval_sweep(
            field, MODE_MOBIUS, center, m, fs, gs, [], n, blk[0], blk[1],
        ),
        _top_digit_blocks(q, m + 1), threads,
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    observed = _sum_columns(rows)[0]
    bound_squared = (n - 2) ** 2 * q ** (2 * m + 1)
    if observed * observed > bound_squared:
        raise BoundViolationError(
            name,
            f"|S|^2 = {observed * observed} exceeds (n-2)^2 q^(2m+1) = "
            f"{bound_squared}",
            observed=observed, bound_squared=bound_squared,
        )
    return _report(
        name, field, _family_params(family), observed, Fraction(0),
        bound_squared, size, seed, elapsed,
    )


def chowla_interval(families, eps, *, seed=DEFAULT_SEED, threads=1,
                    budget=DEFAULT_BUDGET):
    """Mobius correlation over a shared interval with the explicit bound."""
    name = "chowla"
    _validate_family_list(name, families)
    eps = _validate_eps(name, eps, len(families))
    field = families[0].field
    q = field.q
    m = families[0].m
    size = q ** (m + 1)
    _check_budget(name, size, budget)
    ns = [fam.n for fam in families]
    center = list(families[0].center.codes)
    fs = [list(fam.f.codes) for fam in families]
    gs = [list(fam.g.codes) for fam in families]
    start = time.perf_counter()
    rows = _run_blocks(
        lambda blk: backend.interval_sweep(
            field, MODE_CHOWLA, center, m, fs, gs, eps, max(ns), blk[0], blk[1],
        ),
        _top_digit_blocks(q, m + 1), threads,
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    observed = _sum_columns(rows)[0]
    base = 2 * sum(n_i - 1 for n_i in ns) - 1
    bound_squared = base ** 2 * q ** (2 * m + 1)
    if observed * observed > bound_squared:
        raise BoundViolationError(
            name,
            f"|S|^2 = {observed * observed} exceeds "
            f"(2*sum(n_i - 1) - 1)^2 q^(2m+1) = {bound_squared}",
            observed=observed, bound_squared=bound_squared,
        )
    return _report(
        name, field, _families_params(families, eps), observed, Fraction(0),
        bound_squared, size, seed, elapsed,
    )


def chowla_classical(field, n, shifts, eps, *, seed=DEFAULT_SEED, threads=1,
                     budget=DEFAULT_BUDGET):
    """Shifted Mobius correlation over all monic degree-n polynomials.

    The implied constant is not explicit, so no bound is asserted; the
    report carries |S| / (r n q^(n - 1/2)) as a display decimal.
    """
    name = "chowla-classical"
    if n < 2:
        raise ValueError(f"{name}: need n >= 2")
    shifts = list(shifts)
    if not shifts:
        raise ValueError(f"{name}: need at least one shift")
    seen = set()
    for s in shifts:
        if s.degree >= n:
            raise ValueError(f"{name}: shift {s.literal()!r} has degree >= n")
        if s.codes in seen:
            raise ValueError(f"{name}: duplicate shift {s.literal()!r}")
        seen.add(s.codes)
    eps = _validate_eps(name, eps, len(shifts))
    q = field.q
    size = q ** n
    _check_budget(name, size, budget)
    start = time.perf_counter()
    rows = _run_blocks(
        lambda blk: backend.mn_sweep(
            field, MODE_CHOWLA, n, shifts=[list(s.codes) for s in shifts],
            eps=eps, lo=blk[0], hi=blk[1],
        ),
        _top_digit_blocks(q, n), threads,
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    observed = _sum_columns(rows)[0]
    r = len(shifts)
    ratio = abs(observed) / (r * n * q ** (n - 1) * math.sqrt(q))
    return _report(
        name, field,
        {"n": n, "shifts": [s.literal() for s in shifts], "eps": eps},
        observed, Fraction(0), None, size, seed, elapsed,
        extra={"ratio_display": ratio},
    )


def bateman_horn_count(families, *, seed=DEFAULT_SEED, threads=1,
                       budget=DEFAULT_BUDGET):
    """Count tuples making every family's specialization irreducible at once."""
    name = "bateman-horn"
    _validate_family_list(name, families)
    field = families[0].field
    q = field.q
    m = families[0].m
    size = q ** (m + 1)
    _check_budget(name, size, budget)
    ns = [fam.n for fam in families]
    center = list(families[0].center.codes)
    fs = [list(fam.f.codes) for fam in families]
    gs = [list(fam.g.codes) for fam in families]
    start = time.perf_counter()
    rows = _run_blocks(
        lambda blk: backend.interval_sweep(
            field, MODE_BATEMAN, center, m, fs, gs, [], max(ns), blk[0], blk[1],
        ),
        _top_digit_blocks(q, m + 1), threads,
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    summed = _sum_columns(rows)
    observed = summed[0]
    individual = summed[1:]
    if observed > min(individual):
        raise BoundViolationError(
            name,
            f"simultaneous count {observed} exceeds an individual count "
            f"{min(individual)}",
            observed=observed,
        )
    main = Fraction(size)
    for n_i in ns:
        main /= n_i
    return _report(
        name, field, _families_params(families), observed, main, None, size,
        seed, elapsed, extra={"individual_counts": individual},
    )


def weil_character_sum(field, poly, *, seed=DEFAULT_SEED, threads=1,
                       budget=DEFAULT_BUDGET):
    """Quadratic-character sum of a polynomial's values over the field."""
    name = "weil-sum"
    if field.q % 2 == 0:
        raise ValueError(f"{name}: quadratic character needs odd q")
    if poly.degree < 1:
        raise ValueError(f"{name}: need deg >= 1")
    if is_square(poly, up_to_constant=True):
        raise ValueError(
            f"{name}: bound inapplicable, polynomial is a square up to a "
            "constant"
        )
    q = field.q
    _check_budget(name, q, budget)
    start = time.perf_counter()
    observed = backend.weil_sum(field, list(poly.codes))
    elapsed = (time.perf_counter() - start) * 1000.0
    bound_squared = (poly.degree - 1) ** 2 * q
    if observed * observed > bound_squared:
        raise BoundViolationError(
            name,
            f"sum^2 = {observed * observed} exceeds (deg-1)^2 q = "
            f"{bound_squared}",
            observed=observed, bound_squared=bound_squared,
        )
    return _report(
        name, field, {"poly": poly.literal()}, observed, Fraction(0),
        bound_squared, q, seed, elapsed,
    )


def _build_family(field, raw):
    f = Poly.from_literal(field, raw["f"])
    g = Poly.from_literal(field, raw["g"])
    center = Poly.from_literal(field, raw["center"])
    return QuadraticFamily(f, g, ShortInterval(center, int(raw["m"])))


def _build_families(field, raw):
    center = Poly.from_literal(field, raw["center"])
    interval = ShortInterval(center, int(raw["m"]))
    out = []
    for f_lit, g_lit in raw["families"]:
        out.append(QuadraticFamily(
            Poly.from_literal(field, f_lit),
            Poly.from_literal(field, g_lit),
            interval,
        ))
    return out


def run_experiment(name, field, raw, *, seed=DEFAULT_SEED, threads=1,
                   budget=DEFAULT_BUDGET):
    """Run one experiment from literal-level parameters.

    raw keys by experiment: n (count-primes, type-dist, mobius-full-sum);
    n/modulus/residue (count-primes-ap); f/g/center/m (the single-family
    interval experiments); families/center/m [+ eps] (chowla, bateman-horn);
    n/shifts/eps (chowla-classical); poly (weil-sum).
    """
    kwargs = {"seed": seed, "threads": threads, "budget": budget}
    if name == "count-primes":
        return prime_count_total(field, int(raw["n"]), **kwargs)
    if name == "count-primes-ap":
        return prime_count_ap(
            field, int(raw["n"]),
            Poly.from_literal(field, raw["modulus"]),
            Poly.from_literal(field, raw["residue"]),
            **kwargs,
        )
    if name == "interval-primes":
        return count_primes_interval(_build_family(field, raw), **kwargs)
    if name == "frobenius-dist":
        return frobenius_distribution(_build_family(field, raw), **kwargs)
    if name == "type-dist":
        return type_distribution_mn(field, int(raw["n"]), **kwargs)
    if name == "mobius-sum":
        return mobius_interval_sum(_build_family(field, raw), **kwargs)
    if name == "mobius-full-sum":
        return mobius_full_sum(field, int(raw["n"]), **kwargs)
    if name == "chowla":
        return chowla_interval(
            _build_families(field, raw), list(raw["eps"]), **kwargs,
        )
    if name == "chowla-classical":
        return chowla_classical(
            field, int(raw["n"]),
            [Poly.from_literal(field, lit) for lit in raw["shifts"]],
            list(raw["eps"]),
            **kwargs,
        )
    if name == "bateman-horn":
        return bateman_horn_count(_build_families(field, raw), **kwargs)
    if name == "weil-sum":
        return weil_character_sum(
            field, Poly.from_literal(field, raw["poly"]), **kwargs,
        )
    raise ValueError(f"unknown experiment {name!r}")


def sweep(name, raw, q_grid, *, seed=DEFAULT_SEED, threads=1,
          budget=DEFAULT_BUDGET):
    """Yield one report per (p, nu) grid point, in grid order.

    Output is bitwise independent of thread count: blocks are aggregated
    in enumeration order and reports are assembled single-threaded. The
    first failing grid point raises after earlier reports were yielded.
    """
    for p, nu in q_grid:
        field = Field(p, nu)
        yield run_experiment(
            name, field, raw, seed=seed, threads=threads, budget=budget,
        )
