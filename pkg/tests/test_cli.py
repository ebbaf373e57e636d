import json
import subprocess
import sys

import pytest

import _goldens as G

RUN = [sys.executable, "-m", "fraclap.cli"]


def run_cli(*args):
    proc = subprocess.run(
        RUN + list(args), capture_output=True, text=True, timeout=600
    )
    return proc


def parse_report(proc):
    return json.loads(proc.stdout)


class TestConstants:
    def test_alpha_one_kappa_vanishes(self):
        proc = run_cli("constants", "--n", "1", "--alpha", "1.0")
        assert proc.returncode == 0
        rep = parse_report(proc)
        assert abs(rep["results"]["kappa_n_alpha"]) < 1e-12
        assert rep["schema"] == 1
        assert rep["pass"] is True

    def test_golden_twelve_digits(self):
        proc = run_cli("constants", "--n", "1", "--alpha", "1.5")
        rep = parse_report(proc)
        assert rep["results"]["kappa_n_alpha"] == pytest.approx(G.KAPPA_1__1_5, rel=1e-12)
        assert rep["results"]["beta_term"] == pytest.approx(G.BETA_1_25__0_25, rel=1e-12)

    def test_two_dimensional(self):
        proc = run_cli("constants", "--n", "2", "--alpha", "1.25")
        rep = parse_report(proc)
        assert rep["results"]["kappa_n_alpha"] == pytest.approx(G.KAPPA_2__1_25, rel=1e-12)

    def test_usage_error_on_bad_range(self):
        proc = run_cli("constants", "--n", "1", "--alpha", "2.5")
        assert proc.returncode == 64

    def test_usage_error_on_unknown_command(self):
        proc = run_cli("frobnicate")
        assert proc.returncode == 64


class TestLaplacian:
    def test_constant_function_is_zero(self):
        proc = run_cli("laplacian", "--p", "0", "--x", "0.2", "--alpha", "1.5",
                       "--method", "both")
        rep = parse_report(proc)
        assert proc.returncode == 0
        assert abs(rep["results"]["pv"]) < 1e-10
        assert abs(rep["results"]["closed"]) < 1e-10

    def test_cross_path_agreement(self):
        proc = run_cli("laplacian", "--p", "1", "--x", "0.3", "--alpha", "0.5",
                       "--method", "both")
        rep = parse_report(proc)
        assert proc.returncode == 0
        assert rep["pass"] is True
        assert rep["results"]["discrepancy"] <= 1e-6 * abs(rep["results"]["closed"]) + 1e-9

    def test_special_value_zero(self):
        proc = run_cli("laplacian", "--p", "0.25", "--x", "0.4", "--alpha", "1.5",
                       "--method", "both")
        rep = parse_report(proc)
        assert rep["pass"] is True


class TestReports:
    def test_byte_identical_reports(self):
        args = ("verify-identity", "--u", "bump:c=0.1,w=0.4", "--alpha", "1.5")
        r1 = parse_report(run_cli(*args))
        r2 = parse_report(run_cli(*args))
        r1.pop("wall_time_ms")
        r2.pop("wall_time_ms")
        assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)

    def test_round_trip_lossless(self):
        proc = run_cli("constants", "--n", "1", "--alpha", "1.5")
        rep = parse_report(proc)
        assert json.loads(json.dumps(rep)) == rep

    def test_identity_passes(self):
        proc = run_cli("verify-identity", "--u", "hat:-0.4,0.0,0.3", "--alpha", "0.5")
        rep = parse_report(proc)
        assert proc.returncode == 0 and rep["pass"] is True

    def test_hardy(self):
        proc = run_cli("hardy", "--u", "bump:c=0.5,w=1.0", "--a", "-1", "--b", "2",
                       "--alpha", "1.5")
        rep = parse_report(proc)
        assert proc.returncode == 0
        assert rep["results"]["slack"] > 0

    def test_killed(self):
        proc = run_cli("killed", "--u", "bump:c=0.0,w=0.5", "--alpha", "0.5")
        rep = parse_report(proc)
        assert proc.returncode == 0
        assert rep["results"]["ineq_slack"] > 0

    def test_gsn_spec(self):
        proc = run_cli("killed", "--u", "gsn:n=8", "--alpha", "1.25")
        assert proc.returncode == 0

    def test_gsn_transported_for_hardy_interval(self):
        proc = run_cli("hardy", "--u", "gsn:n=8", "--a", "0", "--b", "3",
                       "--alpha", "1.5")
        rep = parse_report(proc)
        assert proc.returncode == 0
        assert rep["results"]["slack"] > 0

    def test_bad_u_spec(self):
        proc = run_cli("verify-identity", "--u", "wedge:1,2", "--alpha", "1.5")
        assert proc.returncode == 64


class TestSharpness:
    def test_sweep_with_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        proc = run_cli("sharpness", "--form", "killed", "--alpha", "1.5",
                       "--n-list", "4,16", "--out", str(out))
        rep = parse_report(proc)
        assert proc.returncode == 0 and rep["pass"] is True
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "n,quotient,limit_constant,gap"
        assert len(lines) == 3
        n, q, c, g = lines[1].split(",")
        assert int(n) == 4
        assert float(q) > float(c)
        assert float(g) == pytest.approx(float(q) - float(c), rel=1e-12)

    def test_bad_n_list(self):
        proc = run_cli("sharpness", "--form", "killed", "--alpha", "1.5",
                       "--n-list", "a,b")
        assert proc.returncode == 64

    def test_rayleigh_option(self):
        proc = run_cli("sharpness", "--form", "killed", "--alpha", "1.5",
                       "--n-list", "4,16", "--rayleigh-nodes", "32")
        rep = parse_report(proc)
        assert proc.returncode == 0 and rep["pass"] is True
        ray = rep["results"]["rayleigh"]
        assert ray["min_quotient"] >= rep["results"]["limit_constant"] * (1 - 1e-3)
        assert ray["residual_norm"] <= 1e-10


class TestNonConvergenceExit:
    def test_exit_code_2(self):
        # an impossible budget forces the quadrature to give up
        proc = run_cli("laplacian", "--p", "0.25", "--x", "0.3", "--alpha", "1.9",
                       "--method", "pv", "--rel-tol", "1e-15", "--abs-tol", "1e-300",
                       "--max-subdivisions", "2")
        assert proc.returncode == 2


class TestConvex:
    def test_disk_run_with_seed(self):
        args = ("convex", "--shape", "disk", "--alpha", "1.25",
                "--samples", "20000", "--seed", "7", "--stratification", "radial")
        p1 = run_cli(*args)
        rep1 = parse_report(p1)
        assert p1.returncode == 0 and rep1["pass"] is True
        assert rep1["seed"] == 7
        rep2 = parse_report(run_cli(*args))
        rep1.pop("wall_time_ms")
        rep2.pop("wall_time_ms")
        assert rep1 == rep2

    def test_rejects_alpha(self):
        proc = run_cli("convex", "--shape", "disk", "--alpha", "0.5",
                       "--samples", "20000")
        assert proc.returncode == 64

    def test_rejects_tiny_sample_count(self):
        proc = run_cli("convex", "--shape", "disk", "--alpha", "1.25",
                       "--samples", "1000")
        assert proc.returncode == 64
