"""Acceptance criteria 1-8, one test each.

Every test prints a single ``criterion k: PASS|FAIL`` line.  The lines are
also gathered in ``RESULTS`` and repeated in the pytest terminal summary, so
they show up without ``-s``.  Running this file directly prints them too.
"""

import json
import subprocess
import sys
from math import comb

import numpy as np

from twistfock.cli import main
from twistfock.fock import DeformedFock
from twistfock.levels import build_Pn
from twistfock.operators import basis_vector, flip, kernel_basis
from twistfock.quotient import WickQuotient, induced_gram
from twistfock.report import emit_json, parse_config, run_diagnostics
from twistfock.twist import check_consistency, check_norm_bound, check_yang_baxter
from twistfock.zoo import EpsilonSpec, clifford_grassmann_check, diagonal_braid, epsilon_matrix, lambda_dims, preset_twist

from oracles import deformed_factorial, word_expansion_P

RESULTS = []


def record(k, title, ok, detail):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_free_statistics():
    model = DeformedFock(n_max=4).fit(preset_twist("free", 3))
    gram_dev = max(np.max(np.abs(model.gram(n) - np.eye(3**n))) for n in range(5))
    wick_dev = 0.0
    for n in range(5):
        for i in range(1, 4):
            for j in range(1, 4):
                prod = model.annihilation(i, n + 1) @ model.creation(j, n)
                wick_dev = max(wick_dev, np.max(np.abs(prod - (i == j) * np.eye(3**n))))
    record(1, "free statistics N=3", gram_dev <= 1e-12 and wick_dev <= 1e-12,
           f"Gram deviation {gram_dev:.1e}, a a+ - delta {wick_dev:.1e}")


def test_criterion_2_q_statistics():
    worst = 0.0
    for q in (0.5, -0.5):
        for n in range(7):
            value = build_Pn(np.array([[q]]), n)[0, 0].real if n else 1.0
            exact = deformed_factorial(n, q)
            worst = max(worst, abs(value - exact) / abs(exact))
    sample = build_Pn(np.array([[0.5]]), 3)[0, 0].real
    record(2, "q-statistics N=1 vs inversion oracle", worst <= 1e-10 and abs(sample - 2.625) <= 1e-12,
           f"max relative error {worst:.1e}, q=0.5 n=3 -> {sample}")


def test_criterion_3_fermion_and_boson_quotients():
    fermion = preset_twist("fermion", 2)
    ker_f = kernel_basis(np.eye(4) + fermion.braid).shape[1]
    model = DeformedFock(n_max=3, quotient="full-kernel").fit(fermion)
    dims_f = model.quotient_.dims_[:4]
    min_eig = min(
        np.linalg.eigvalsh(induced_gram(model, model.quotient_, n)).min()
        for n in range(4) if dims_f[n]
    )
    boson = preset_twist("boson", 2)
    ker_b = kernel_basis(np.eye(4) + boson.braid).shape[1]
    dims_b = WickQuotient(n_max=4).fit(boson).dims_
    ok = (
        ker_f == 3 and dims_f == [1, 2, 1, 0] and min_eig > 0
        and ker_b == 1 and dims_b == [comb(2 + n - 1, n) for n in range(5)]
    )
    record(3, "fermion/boson quotients N=2", ok,
           f"fermion ker {ker_f}, dims {dims_f}, min induced eig {min_eig:.3g}; boson ker {ker_b}, dims {dims_b}")


def test_criterion_4_lambda_eps_2():
    spec = EpsilonSpec(np.eye(2, dtype=int), np.zeros((2, 2), dtype=int))
    dims = lambda_dims(spec, 3)
    quo = WickQuotient(n_max=2).fit(preset_twist("epsilon", 2, epsilon=spec))
    commute = np.max(np.abs(quo.projections_[2] @ (basis_vector((1, 2), 2) - basis_vector((2, 1), 2))))
    S = diagonal_braid(epsilon_matrix(spec))
    consistency = max(v.residual for v in check_consistency(S, S))
    ok = dims == [1, 2, 1, 0] and commute <= 1e-12 and consistency == 0
    record(4, "Lambda_eps(2)", ok, f"dims {dims}, x1x2 - x2x1 {commute:.1e}, consistency residual {consistency}")


def test_criterion_5_clifford_grassmann():
    verdicts, _ = clifford_grassmann_check()
    ok = all(v.residual == 0 for v in verdicts)
    record(5, "Clifford/Grassmann", ok, ", ".join(f"{v.name} {v.residual}" for v in verdicts))


def test_criterion_6_negative_controls(tmp_path, capsys):
    F = flip(2)
    e12 = np.zeros(4)
    e12[1] = 1
    yb = check_yang_baxter(F + 0.1 * np.outer(e12, e12)).residual
    norm = check_norm_bound(1.5 * F)
    min_eig = np.linalg.eigvalsh(build_Pn(1.5 * F, 2)).min()
    path = tmp_path / "fermion.json"
    path.write_text(json.dumps({"dim": 2, "preset": "fermion", "format": "json"}))
    code = main(["check", str(path)])
    verdict = json.loads(capsys.readouterr().out)["verdict"]
    ok = (
        yb > 1e-3
        and not norm.passed and abs(norm.residual - 0.5) <= 1e-12
        and abs(min_eig + 0.5) <= 1e-12
        and code == 1 and verdict == "degenerate-needs-quotient"
    )
    record(6, "negative controls", ok,
           f"YB residual {yb:.3g}, norm residual {norm.residual:.3g}, min eig {min_eig:.12g}, exit {code} {verdict}")


def test_criterion_7_word_expansion_oracle():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        N = int(rng.integers(2, 4))
        sigma = rng.integers(0, 3, size=(N, N))
        sigma = sigma + sigma.T
        omega = rng.integers(-3, 4, size=(N, N))
        omega = omega - omega.T
        q = np.exp(1j * rng.uniform(0, 2 * np.pi))
        S = preset_twist("epsilon", N, epsilon=EpsilonSpec(sigma, omega, q)).braid
        assert np.max(np.abs(S - S.conj().T)) <= 1e-15 and check_yang_baxter(S).residual <= 1e-12
        for n in range(1, 5):
            worst = max(worst, np.max(np.abs(build_Pn(S, n) - word_expansion_P(S, n, N))))
    record(7, "20 random epsilon twists vs word expansion, n <= 4", worst <= 1e-10, f"max residual {worst:.1e}")


def test_criterion_8_determinism(tmp_path):
    cfg = {"dim": 2, "preset": "qflip", "q": [0.3, 0.4], "quotient": "full-kernel", "format": "json"}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    outputs = [
        subprocess.run([sys.executable, "-m", "twistfock", "check", str(path)], capture_output=True, check=False).stdout
        for _ in range(2)
    ]
    in_process = emit_json(run_diagnostics(parse_config(cfg))).encode()
    ok = outputs[0] == outputs[1] == in_process and len(outputs[0]) > 0
    record(8, "byte-identical JSON reports", ok, f"{len(outputs[0])} bytes per run")


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q", "-s"]))
