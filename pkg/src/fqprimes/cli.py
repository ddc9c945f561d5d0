"""Command-line interface: field/polynomial operations and sweep experiments.

Exit codes: 0 success; 1 parse or precondition error; 2 hard bound violation
(an explicit theorem bound or exact cross-check failed — never expected in a
correct build).

Polynomial literals everywhere are comma-separated element codes ascending by
degree ("1,0,2" is 2t^2 + 1 over F_3; "" is the zero polynomial). Lists of
polynomials (shift sets, multi-family f/g) separate entries with ';'.

A config file (--config) holds flat key=value lines mirroring the long flags
(e.g. "p=3", "q-grid=3,5,7,9"); values given as flags win over the file.
'#' starts a comment. Repeated keys keep the last value.
"""

import argparse
import json
import random
import sys

from .experiments import (
    BoundViolationError,
    BudgetError,
    CSV_HEADER,
    DEFAULT_BUDGET,
    DEFAULT_SEED,
    run_experiment,
    sweep,
)
from .factorization import factor, mobius
from .family import QuadraticFamily, ShortInterval, check_admissible, \
    verify_discriminant_identity
from .field import Field
from .ntheory import prime_power_split
from .poly import Poly, discriminant, is_square

EXPERIMENTS = (
    "count-primes", "count-primes-ap", "interval-primes", "frobenius-dist",
    "type-dist", "mobius-sum", "mobius-full-sum", "chowla",
    "chowla-classical", "bateman-horn", "weil-sum",
)

def _parse_bool(value):
    return value.strip().lower() in ("1", "true", "yes", "on")


# flag spelling -> (namespace attribute, value parser); shared by the flag
# definitions and the config-file reader so the two never drift
_CONFIG_KEYS = {
    "p": ("p", int),
    "ext": ("ext", int),
    "modulus": ("modulus", str),
    "f": ("f", str),
    "g": ("g", str),
    "center": ("center", str),
    "m": ("m", int),
    "n": ("n", int),
    "poly": ("poly", str),
    "q-grid": ("q_grid", str),
    "shifts": ("shifts", str),
    "eps": ("eps", str),
    "ap-mod": ("ap_mod", str),
    "ap-res": ("ap_res", str),
    "seed": ("seed", int),
    "threads": ("threads", int),
    "output": ("output", str),
    "budget": ("budget", int),
    "timing": ("timing", _parse_bool),
    "trials": ("trials", int),
}


class _Parser(argparse.ArgumentParser):
    """argparse subclass that exits 1 (not 2) on usage errors.

    Exit code 2 is reserved for bound violations.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_field_flags(sub):
    sub.add_argument("--p", type=int, default=None,
                     help="field characteristic (prime)")
    sub.add_argument("--ext", type=int, default=None,
                     help="extension degree nu (default 1); q = p**nu")
    sub.add_argument("--modulus", default=None,
                     help="extension modulus literal over F_p (ascending, "
                          "monic irreducible of degree nu); default is the "
                          "lexicographically smallest")


def _add_run_flags(sub):
    sub.add_argument("--seed", type=int, default=None,
                     help=f"RNG seed (default {DEFAULT_SEED}); results do "
                          "not depend on it, only internal draws")
    sub.add_argument("--threads", type=int, default=None,
                     help="worker threads (default 1); output is identical "
                          "for every thread count")
    sub.add_argument("--output", choices=("json", "csv"), default=None,
                     help="report format (default json)")
    sub.add_argument("--budget", type=int, default=None,
                     help=f"max enumerated specializations "
                          f"(default {DEFAULT_BUDGET})")
    sub.add_argument("--config", default=None,
                     help="key=value file supplying defaults for any flag")
    sub.add_argument("--timing", action="store_true", default=None,
                     help="include elapsed_ms in reports (breaks "
                          "byte-for-byte determinism)")


def _add_family_flags(sub, multi=False):
    many = "; multiple families separated by ';'" if multi else ""
    sub.add_argument("--f", default=None, help="family f literal" + many)
    sub.add_argument("--g", default=None, help="family g literal" + many)
    sub.add_argument("--center", default=None,
                     help="interval center literal (monic, degree > m)")
    sub.add_argument("--m", type=int, default=None,
                     help="interval radius m >= 0")


def build_parser():
    parser = _Parser(
        prog="fqprimes",
        description="Exact arithmetic over F_q[t]: factorization, Mobius "
                    "sums, and exhaustive prime-counting experiments.",
    )
    subs = parser.add_subparsers(dest="command", metavar="command")

    sub = subs.add_parser("field-info", parents=[], help="print field "
                          "parameters as JSON")
    _add_field_flags(sub)
    _add_run_flags(sub)

    for name, extra in (
        ("factor", "complete canonical factorization as JSON"),
        ("mobius", "Mobius value in {-1, 0, 1}"),
        ("disc", "discriminant element code"),
    ):
        sub = subs.add_parser(name, help=extra)
        _add_field_flags(sub)
        _add_run_flags(sub)
        sub.add_argument("--poly", default=None, help="polynomial literal")

    for name in EXPERIMENTS:
        sub = subs.add_parser(name, help=f"run the {name} experiment")
        _add_field_flags(sub)
        _add_run_flags(sub)
        if name in ("count-primes", "count-primes-ap", "type-dist",
                    "mobius-full-sum", "chowla-classical"):
            sub.add_argument("--n", type=int, default=None,
                             help="polynomial degree n")
        if name == "count-primes-ap":
            sub.add_argument("--ap-mod", default=None,
                             help="modulus Q literal (degree >= 1)")
            sub.add_argument("--ap-res", default=None,
                             help="residue literal, coprime to Q")
        if name in ("interval-primes", "frobenius-dist", "mobius-sum"):
            _add_family_flags(sub)
        if name in ("chowla", "bateman-horn"):
            _add_family_flags(sub, multi=True)
        if name in ("chowla", "chowla-classical"):
            sub.add_argument("--eps", default=None,
                             help="comma list of exponents in {1,2}, one per "
                                  "family/shift, not all 2")
        if name == "chowla-classical":
            sub.add_argument("--shifts", default=None,
                             help="';'-separated distinct shift literals of "
                                  "degree < n")
        if name == "weil-sum":
            sub.add_argument("--poly", default=None,
                             help="character-sum argument literal")

    sub = subs.add_parser("verify-identity",
                          help="check admissibility and the discriminant "
                               "identity disc = -4fg on sampled "
                               "specializations")
    _add_field_flags(sub)
    _add_run_flags(sub)
    _add_family_flags(sub)
    sub.add_argument("--trials", type=int, default=None,
                     help="random partial specializations to check "
                          "(default 100), plus the all-zero one")

    sub = subs.add_parser("sweep", help="run one experiment over a grid of "
                                        "fields, one report per q")
    sub.add_argument("experiment", choices=EXPERIMENTS,
                     help="experiment to sweep")
    _add_field_flags(sub)
    _add_run_flags(sub)
    _add_family_flags(sub, multi=True)
    sub.add_argument("--n", type=int, default=None, help="polynomial degree")
    sub.add_argument("--poly", default=None, help="polynomial literal")
    sub.add_argument("--ap-mod", default=None, help="modulus Q literal")
    sub.add_argument("--ap-res", default=None, help="residue literal")
    sub.add_argument("--eps", default=None, help="comma list of exponents")
    sub.add_argument("--shifts", default=None, help="';'-separated shifts")
    sub.add_argument("--q-grid", default=None,
                     help="comma list of prime powers, e.g. 3,5,7,9")

    return parser


# ---------------------------------------------------------------------------
# config file handling
# ---------------------------------------------------------------------------

def _load_config(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(
                    f"{path}:{lineno}: expected key=value, got {line!r}"
                )
            key, _, value = line.partition("=")
            values[key.strip().lower().replace("_", "-")] = value.strip()
    return values


def _merge_config(args):
    if getattr(args, "config", None) is None:
        return
    for key, value in _load_config(args.config).items():
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r}")
        attr, cast = _CONFIG_KEYS[key]
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, cast(value))


def _fill_defaults(args):
    for attr, default in (("ext", 1), ("seed", DEFAULT_SEED), ("threads", 1),
                          ("output", "json"), ("budget", DEFAULT_BUDGET),
                          ("timing", False)):
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, default)


# ---------------------------------------------------------------------------
# argument -> domain object helpers
# ---------------------------------------------------------------------------

def _require(args, attr, flag):
    value = getattr(args, attr, None)
    if value is None:
        raise ValueError(f"{flag} is required for this command")
    return value


def _field_from_args(args):
    p = _require(args, "p", "--p")
    modulus = None
    if args.modulus is not None:
        modulus = [int(tok) for tok in args.modulus.split(",")]
    return Field(p, args.ext, modulus=modulus)


def _split_list(text):
    return [part.strip() for part in text.split(";")]


def _parse_eps(text):
    text = text.strip()
    if not text:
        return []
    return [int(tok) for tok in text.split(",")]


def _parse_q_grid(text):
    grid = []
    for tok in text.split(","):
        q = int(tok.strip())
        grid.append(prime_power_split(q))
    if not grid:
        raise ValueError("--q-grid must list at least one prime power")
    return grid


def _single_family_raw(args):
    f = _require(args, "f", "--f")
    g = _require(args, "g", "--g")
    if ";" in f or ";" in g:
        raise ValueError("this command takes exactly one family")
    return {
        "f": f,
        "g": g,
        "center": _require(args, "center", "--center"),
        "m": _require(args, "m", "--m"),
    }


def _multi_family_raw(args):
    fs = _split_list(_require(args, "f", "--f"))
    gs = _split_list(_require(args, "g", "--g"))
    if len(fs) != len(gs):
        raise ValueError(
            f"--f lists {len(fs)} families but --g lists {len(gs)}"
        )
    return {
        "families": list(zip(fs, gs)),
        "center": _require(args, "center", "--center"),
        "m": _require(args, "m", "--m"),
    }


def _experiment_raw(name, args):
    if name in ("count-primes", "type-dist", "mobius-full-sum"):
        return {"n": _require(args, "n", "--n")}
    if name == "count-primes-ap":
        return {
            "n": _require(args, "n", "--n"),
            "modulus": _require(args, "ap_mod", "--ap-mod"),
            "residue": _require(args, "ap_res", "--ap-res"),
        }
    if name in ("interval-primes", "frobenius-dist", "mobius-sum"):
        return _single_family_raw(args)
    if name == "chowla":
        raw = _multi_family_raw(args)
        raw["eps"] = _parse_eps(_require(args, "eps", "--eps"))
        return raw
    if name == "chowla-classical":
        return {
            "n": _require(args, "n", "--n"),
            "shifts": _split_list(_require(args, "shifts", "--shifts")),
            "eps": _parse_eps(_require(args, "eps", "--eps")),
        }
    if name == "bateman-horn":
        return _multi_family_raw(args)
    if name == "weil-sum":
        return {"poly": _require(args, "poly", "--poly")}
    raise ValueError(f"unknown experiment {name!r}")


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------

def _emit_report(report, args, header=True):
    if args.output == "csv":
        if header:
            print(CSV_HEADER)
        print(report.csv_row(timing=args.timing))
    else:
        print(report.json_line(timing=args.timing))


def _cmd_field_info(args):
    field = _field_from_args(args)
    info = {
        "p": field.p,
        "nu": field.nu,
        "q": field.q,
        "modulus": (",".join(str(c) for c in field.modulus)
                    if field.nu > 1 else None),
    }
    print(json.dumps(info))
    return 0


def _cmd_factor(args):
    field = _field_from_args(args)
    poly = Poly.from_literal(field, _require(args, "poly", "--poly"))
    print(json.dumps(factor(poly, seed=args.seed).to_json_dict()))
    return 0


def _cmd_mobius(args):
    field = _field_from_args(args)
    poly = Poly.from_literal(field, _require(args, "poly", "--poly"))
    print(mobius(poly, seed=args.seed))
    return 0


def _cmd_disc(args):
    field = _field_from_args(args)
    poly = Poly.from_literal(field, _require(args, "poly", "--poly"))
    print(discriminant(poly).code)
    return 0


def _cmd_verify_identity(args):
    field = _field_from_args(args)
    raw = _single_family_raw(args)
    f = Poly.from_literal(field, raw["f"])
    g = Poly.from_literal(field, raw["g"])
    center = Poly.from_literal(field, raw["center"])
    m = raw["m"]

    violations = list(check_admissible(f, g, center, m))
    report = {
        "f": raw["f"], "g": raw["g"], "center": raw["center"], "m": m,
        "field": {"p": field.p, "nu": field.nu, "q": field.q},
        "admissible": not violations,
        "violations": violations,
        "fg_square_up_to_constant": (
            None if f.is_zero or g.is_zero
            else is_square(f * g, up_to_constant=True)
        ),
    }
    if violations:
        print(json.dumps(report))
        print(f"error: family is not admissible: {', '.join(violations)}",
              file=sys.stderr)
        return 1

    family = QuadraticFamily(f, g, ShortInterval(center, m))
    trials = args.trials if args.trials is not None else 100
    if trials < 0:
        raise ValueError("--trials must be >= 0")
    rng = random.Random(args.seed)
    partials = [tuple([0] * m)]
    if m > 0:
        partials += [tuple(rng.randrange(field.q) for _ in range(m))
                     for _ in range(trials)]
    holds = all(verify_discriminant_identity(family, A) for A in partials)
    report["n"] = family.n
    report["identity_checked"] = len(partials)
    report["identity_holds"] = holds
    print(json.dumps(report))
    if not holds:
        print("bound violation: discriminant identity disc = -4fg failed",
              file=sys.stderr)
        return 2
    return 0


def _cmd_experiment(name, args):
    field = _field_from_args(args)
    raw = _experiment_raw(name, args)
    report = run_experiment(name, field, raw, seed=args.seed,
                            threads=args.threads, budget=args.budget)
    _emit_report(report, args)
    return 0


def _cmd_sweep(args):
    name = args.experiment
    raw = _experiment_raw(name, args)
    grid = _parse_q_grid(_require(args, "q_grid", "--q-grid"))
    reports = sweep(name, raw, grid, seed=args.seed, threads=args.threads,
                    budget=args.budget)
    emitted = 0
    try:
        for report in reports:
            _emit_report(report, args, header=emitted == 0)
            emitted += 1
    except (BoundViolationError, BudgetError, ValueError):
        if emitted:
            print(f"note: {emitted} of {len(grid)} grid reports were "
                  "emitted before the failure", file=sys.stderr)
        raise
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("fqprimes: error: a command is required", file=sys.stderr)
        return 1
    try:
        _merge_config(args)
        _fill_defaults(args)
        if args.command == "field-info":
            return _cmd_field_info(args)
        if args.command == "factor":
            return _cmd_factor(args)
        if args.command == "mobius":
            return _cmd_mobius(args)
        if args.command == "disc":
            return _cmd_disc(args)
        if args.command == "verify-identity":
            return _cmd_verify_identity(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_experiment(args.command, args)
    except BoundViolationError as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return 2
    except (BudgetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
