"""CLI contract: exit codes, worked examples, config merge, determinism."""

import json
import subprocess
import sys

import pytest

from fqprimes.cli import main
from fqprimes.experiments import CSV_HEADER


def run_cli(capsys, *argv):
    try:
        rc = main(list(argv))
    except SystemExit as exc:  # argparse usage errors exit directly
        rc = exc.code
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# -- documented worked examples ---------------------------------------------------

def test_worked_example_interval_primes(capsys):
    rc, out, err = run_cli(
        capsys, "interval-primes", "--p", "3", "--f", "1", "--g", "0,1",
        "--center", "0,0,1", "--m", "0",
    )
    assert rc == 0 and err == ""
    report = json.loads(out)
    assert report["observed"] == 1
    assert report["main_term"] == {"num": 3, "den": 5}


def test_worked_example_mobius(capsys):
    rc, out, err = run_cli(capsys, "mobius", "--p", "3",
                           "--poly", "1,0,0,0,0,1")
    assert rc == 0
    assert out.strip() == "1"


def test_worked_example_mobius_full_sum(capsys):
    rc, out, err = run_cli(capsys, "mobius-full-sum", "--p", "5", "--n", "1")
    assert rc == 0
    assert json.loads(out)["observed"] == -5


# -- scalar commands ------------------------------------------------------------------

def test_field_info(capsys):
    rc, out, _ = run_cli(capsys, "field-info", "--p", "3", "--ext", "2")
    assert rc == 0
    assert json.loads(out) == {"p": 3, "nu": 2, "q": 9, "modulus": "1,0,1"}
    rc, out, _ = run_cli(capsys, "field-info", "--p", "7")
    assert json.loads(out) == {"p": 7, "nu": 1, "q": 7, "modulus": None}


def test_field_info_custom_modulus(capsys):
    rc, out, _ = run_cli(capsys, "field-info", "--p", "3", "--ext", "2",
                         "--modulus", "2,1,1")
    assert rc == 0
    assert json.loads(out)["modulus"] == "2,1,1"


def test_factor_json_contract(capsys):
    rc, out, _ = run_cli(capsys, "factor", "--p", "3", "--poly", "0,0,1,1")
    assert rc == 0
    assert json.loads(out) == {
        "unit": 1, "factors": [["0,1", 2], ["1,1", 1]]
    }


def test_disc_prints_bare_code(capsys):
    rc, out, _ = run_cli(capsys, "disc", "--p", "5", "--poly", "1,2,3")
    assert rc == 0
    # disc(3t^2 + 2t + 1) = 4 - 12 = -8 = 2 mod 5
    assert out.strip() == "2"


def test_round_trip_parse_format(capsys):
    """Factor output literals parse back to the same polynomials."""
    from fqprimes.field import Field
    from fqprimes.poly import Poly

    rc, out, _ = run_cli(capsys, "factor", "--p", "5",
                         "--poly", "0,4,3,2,1")
    F = Field(5)
    product = Poly.constant(F, json.loads(out)["unit"])
    for lit, mult in json.loads(out)["factors"]:
        product = product * Poly.from_literal(F, lit) ** mult
    assert product == Poly.from_literal(F, "0,4,3,2,1")


# -- exit codes -------------------------------------------------------------------------

@pytest.mark.parametrize(
    "argv",
    [
        (),  # no command
        ("no-such-command",),
        ("mobius", "--p", "3"),  # missing --poly
        ("mobius", "--poly", "1"),  # missing --p
        ("mobius", "--p", "3", "--poly", "1,x"),
        ("mobius", "--p", "3", "--poly", "9"),
        ("mobius", "--p", "4", "--poly", "1"),  # 4 is not prime
        ("mobius", "--p", "3", "--poly", "1", "--nosuch"),
        ("count-primes", "--p", "3"),  # missing --n
        ("weil-sum", "--p", "5", "--poly", "1,2,1"),  # square: inapplicable
        ("sweep", "interval-primes", "--f", "1", "--g", "0,1",
         "--center", "0,0,1", "--m", "0", "--q-grid", "3,6"),
        ("interval-primes", "--p", "3", "--f", "1;2", "--g", "0,1",
         "--center", "0,0,1", "--m", "0"),  # multi-family where one expected
        ("chowla", "--p", "3", "--f", "1;2", "--g", "0,1",
         "--center", "0,0,1", "--m", "0", "--eps", "1,1"),  # list mismatch
        ("count-primes", "--p", "3", "--n", "5", "--budget", "10"),
    ],
)
def test_exit_code_1_on_parse_and_precondition_errors(capsys, argv):
    rc, out, err = run_cli(capsys, *argv)
    assert rc == 1, f"{argv}: rc={rc} err={err!r}"
    assert err != ""


def test_exit_code_2_on_bound_violation(capsys):
    rc, out, err = run_cli(
        capsys, "mobius-sum", "--p", "11", "--f", "1", "--g", "0,1",
        "--center", "0,0,1", "--m", "0",
    )
    assert rc == 2
    assert "bound violation" in err
    assert "121" in err


def test_exit_code_0_on_success(capsys):
    rc, _, err = run_cli(capsys, "count-primes", "--p", "3", "--n", "3")
    assert rc == 0 and err == ""


# -- verify-identity -----------------------------------------------------------------------

def test_verify_identity_admissible(capsys):
    rc, out, err = run_cli(
        capsys, "verify-identity", "--p", "5", "--f", "1", "--g", "0,1",
        "--center", "0,0,0,1", "--m", "1", "--trials", "7",
    )
    assert rc == 0
    report = json.loads(out)
    assert report["admissible"] is True
    assert report["identity_checked"] == 8  # all-zeros + 7 random
    assert report["identity_holds"] is True
    assert report["fg_square_up_to_constant"] is False
    assert report["n"] == 7


def test_verify_identity_reports_violations_and_exits_1(capsys):
    rc, out, err = run_cli(
        capsys, "verify-identity", "--p", "3", "--f", "0,1", "--g", "0,1",
        "--center", "0,0,1", "--m", "0",
    )
    assert rc == 1
    report = json.loads(out)
    assert report["admissible"] is False
    assert "not_coprime" in report["violations"]
    assert "fg_square" in report["violations"]
    assert report["fg_square_up_to_constant"] is True
    assert "not admissible" in err


def test_verify_identity_m_zero_checks_single_point(capsys):
    rc, out, _ = run_cli(
        capsys, "verify-identity", "--p", "3", "--f", "1", "--g", "0,1",
        "--center", "0,0,1", "--m", "0",
    )
    assert rc == 0
    assert json.loads(out)["identity_checked"] == 1


# -- output formats --------------------------------------------------------------------------

def test_csv_output_single_experiment(capsys):
    rc, out, _ = run_cli(capsys, "interval-primes", "--p", "3", "--f", "1",
                         "--g", "0,1", "--center", "0,0,1", "--m", "0",
                         "--output", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[1] == "interval-primes,3,1,3,5,,2/5,"


def test_timing_flag_adds_elapsed(capsys):
    rc, out, _ = run_cli(capsys, "count-primes", "--p", "3", "--n", "2",
                         "--timing")
    assert "elapsed_ms" in json.loads(out)
    rc, out, _ = run_cli(capsys, "count-primes", "--p", "3", "--n", "2")
    assert "elapsed_ms" not in json.loads(out)
    rc, out, _ = run_cli(capsys, "count-primes", "--p", "3", "--n", "2",
                         "--output", "csv", "--timing")
    assert out.strip().splitlines()[1].rsplit(",", 1)[1] != ""


# -- sweep ------------------------------------------------------------------------------------

def test_sweep_csv_header_once_and_grid_order(capsys):
    rc, out, _ = run_cli(
        capsys, "sweep", "interval-primes", "--f", "1", "--g", "0,1",
        "--center", "0,0,1", "--m", "0", "--q-grid", "3,5,7,9,11",
        "--output", "csv",
    )
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 6
    qs = [int(line.split(",")[1]) for line in lines[1:]]
    observed = [int(line.split(",")[2]) for line in lines[1:]]
    assert qs == [3, 5, 7, 9, 11]
    assert observed == [1, 1, 2, 1, 5]


def test_sweep_json_lines(capsys):
    rc, out, _ = run_cli(capsys, "sweep", "mobius-full-sum", "--n", "1",
                         "--q-grid", "3,9")
    reports = [json.loads(line) for line in out.strip().splitlines()]
    assert [r["observed"] for r in reports] == [-3, -9]
    assert reports[1]["field"]["modulus"] == "1,0,1"


def test_sweep_partial_failure_reports_progress(capsys):
    rc, out, err = run_cli(
        capsys, "sweep", "mobius-sum", "--f", "1", "--g", "0,1",
        "--center", "0,0,1", "--m", "0", "--q-grid", "3,11",
    )
    assert rc == 2
    assert len(out.strip().splitlines()) == 1  # q=3 emitted before the raise
    assert "1 of 2" in err
    assert "bound violation" in err


def test_sweep_threads_byte_identical(capsys):
    argv = ["sweep", "frobenius-dist", "--f", "1", "--g", "0,1",
            "--center", "0,0,1", "--m", "0", "--q-grid", "3,5,7,9"]
    outputs = []
    for threads in ("1", "4", "8"):
        rc, out, _ = run_cli(capsys, *argv, "--threads", threads)
        assert rc == 0
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]


# -- config files ----------------------------------------------------------------------------

def test_config_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text(
        "# worked example\n"
        "p = 3\n"
        "f = 1\n"
        "g = 0,1  # the family multiplier\n"
        "center = 0,0,1\n"
        "m = 0\n"
        "output = csv\n"
    )
    rc, out, _ = run_cli(capsys, "interval-primes", "--config", str(cfg))
    assert rc == 0
    assert out.strip().splitlines()[0] == CSV_HEADER


def test_flags_override_config(capsys, tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text("p=3\nf=1\ng=0,1\ncenter=0,0,1\nm=0\noutput=csv\n")
    rc, out, _ = run_cli(capsys, "interval-primes", "--config", str(cfg),
                         "--output", "json")
    assert rc == 0
    assert json.loads(out)["observed"] == 1  # json, not csv


def test_config_key_normalization(capsys, tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text("q_grid=3,5\nn=1\n")  # underscore spelling accepted
    rc, out, _ = run_cli(capsys, "sweep", "mobius-full-sum",
                         "--config", str(cfg))
    assert rc == 0
    assert len(out.strip().splitlines()) == 2


@pytest.mark.parametrize("body, fragment", [
    ("nonsense\n", "key=value"),
    ("no-such-key=3\n", "unknown config key"),
])
def test_config_errors_exit_1(capsys, tmp_path, body, fragment):
    cfg = tmp_path / "bad.conf"
    cfg.write_text(body)
    rc, _, err = run_cli(capsys, "field-info", "--p", "3",
                         "--config", str(cfg))
    assert rc == 1
    assert fragment in err


def test_missing_config_file_exits_1(capsys):
    rc, _, err = run_cli(capsys, "field-info", "--p", "3",
                         "--config", "/nonexistent/path.conf")
    assert rc == 1


# -- process-level entry points ----------------------------------------------------------------

def test_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "fqprimes", "mobius", "--p", "3",
         "--poly", "1,0,0,0,0,1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1"


def test_console_script_exit_codes():
    ok = subprocess.run(
        ["fqprimes", "field-info", "--p", "3"], capture_output=True,
    )
    bad = subprocess.run(
        ["fqprimes", "field-info", "--p", "nope"], capture_output=True,
    )
    assert ok.returncode == 0
    assert bad.returncode == 1
