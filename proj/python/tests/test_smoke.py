import csv
import io
import math
import os
import subprocess

import numpy as np
import pytest

bk = pytest.importorskip("bekenstein")


def test_kernel_log():
    for lam in (0.1, 1.0, 3.7, 10.0):
        assert abs(bk.kernel_log(lam) - math.log(lam)) < 1e-10


def test_log_form_routes_agree():
    scipy_linalg = pytest.importorskip("scipy.linalg")
    rng = np.random.default_rng(3)
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    a = x @ x.conj().T + 0.1 * np.eye(4)
    xi = rng.normal(size=4) + 1j * rng.normal(size=4)
    ref = np.vdot(xi, scipy_linalg.logm(a) @ xi).real
    assert bk.log_form(xi, a) == pytest.approx(ref, rel=1e-10)
    assert bk.log_form_kernel(xi, a) == pytest.approx(ref, rel=1e-8)
    assert bk.log_form_limit(xi, a) == pytest.approx(ref, rel=1e-6)


def test_log_form_kernel_vector():
    a = np.diag([1.0, 0.0]).astype(complex)
    assert bk.log_form(np.array([0, 1], dtype=complex), a) == -math.inf


def test_modular_data_symmetry():
    basis = np.array([[1.0, 0.5j], [0.3, 1.0]])
    md = bk.modular_data(basis)
    sp = md["spectrum"]
    assert sp[0] == pytest.approx(0.38576878506811907, rel=1e-12)
    assert sp[0] * sp[1] == pytest.approx(1.0)
    j = md["j"]
    assert np.allclose(j @ j.conj(), np.eye(2), atol=1e-12)


def test_relative_entropy_classical():
    phi = np.diag([0.7, 0.3]).astype(complex)
    omega = np.diag([0.5, 0.5]).astype(complex)
    kl = 0.7 * math.log(0.7 / 0.5) + 0.3 * math.log(0.3 / 0.5)
    assert bk.relative_entropy(phi, omega) == pytest.approx(kl, rel=1e-12)


def test_run_and_errors():
    rows = bk.run("verify", "bound-sweep", n=[64], r=[0.5], alpha=[0.1], samples=3)
    assert len(rows) == 3 and all(r["pass"] for r in rows)
    with pytest.raises(ValueError):
        bk.run("verify", "nope")
    assert bk.dilation_residual(128) < bk.dilation_residual(64)


def test_cli_csv_schema():
    cli = os.environ.get("BEKENSTEIN_CLI")
    if not cli:
        pytest.skip("BEKENSTEIN_CLI not set")
    out = subprocess.run([cli, "verify", "--suite", "entropy", "--samples", "3"], capture_output=True, text=True)
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert lines[0].endswith(f"schema {bk.csv_schema_version}")
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert rows and all(r["pass"] == "true" for r in rows)
    assert list(rows[0].keys()) == ["suite", "N", "R", "alpha", "sample_id", "quantity", "lhs", "rhs", "margin",
                                    "tol", "pass", "wall_time_ms"]
