"""Acceptance gates at their pinned tolerances; each prints one PASS/FAIL line."""

import numpy as np
import pytest

from lightcone import cli, suite

pytestmark = pytest.mark.acceptance

SEED = 20240611


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {number} ({title}): {detail}")
        assert ok, detail

    return emit


def test_criterion_1_unitarity(report):
    worst = suite.unitarity(np.random.default_rng(SEED), n=16, box_length=10.0, trials=100)
    assert len(worst) == 10
    value = max(worst.values())
    report(1, "unitarity", value <= 1e-12, f"max relative norm change {value:.2e} over {sorted(worst)}")


def test_criterion_2_evolution_fidelity(report):
    dev = suite.evolution_fidelity(n=32)["max_pointwise_deviation"]
    report(2, "evolution fidelity", dev <= 1e-8, f"exact vs RK4 max deviation {dev:.2e}")


def test_criterion_3_position_operator(report):
    res = suite.position_operator(np.random.default_rng(SEED))
    ratio, diff = res["richardson_ratio"], res["expectation_max_difference"]
    ok = 3.5 <= ratio <= 4.5 and diff <= 1e-10
    report(3, "position operator", ok, f"error ratio {ratio:.3f}, expectation difference {diff:.2e}")


def test_criterion_4_velocity(report):
    res = suite.velocity(n=32, box_length=20.0)
    ok = (res["modulus_max_deviation"] <= 1e-15
          and res["slope_relative_error"] <= res["slope_tolerance"]
          and res["velocity_drift"] <= 1e-10)
    report(4, "velocity", ok,
           f"modulus {res['modulus_max_deviation']:.1e}, slope rel err {res['slope_relative_error']:.1e}"
           f" (bound {res['slope_tolerance']:.3g}), drift {res['velocity_drift']:.1e}")


def test_criterion_5_localization_axioms(report):
    res = suite.axioms(np.random.default_rng(SEED), n=16, box_length=10.0, trials=50)
    exact = {k: v for k, v in res.items() if k != "axiom_V"}
    ok = all(v == 0.0 for v in exact.values()) and res["axiom_V"] <= 1e-10
    report(5, "localization axioms", ok, f"I-IV max {max(exact.values()):.1e}, V residual {res['axiom_V']:.2e}")


def test_criterion_6_weyl(report):
    res = suite.weyl(np.random.default_rng(SEED), n=16, box_length=10.0)
    ok = (res["eigenvalue_max_deviation"] <= 1e-12
          and res["diagonalization_max_residual"] <= 1e-12
          and res["south_gauge_modes"] > 0
          and res["fw_conjugation_max_residual"] <= 1e-10
          and res["scalar_equivalence_max_deviation"] <= 1e-10)
    report(6, "Weyl sector", ok,
           f"eig {res['eigenvalue_max_deviation']:.1e}, diag {res['diagonalization_max_residual']:.1e}"
           f" ({res['south_gauge_modes']} fallback modes), FW {res['fw_conjugation_max_residual']:.1e},"
           f" scalar {res['scalar_equivalence_max_deviation']:.1e}")


def test_criterion_7_superluminal_tail(report):
    res = suite.superluminal_tail(n=64, box_length=20.0)
    tail = res["tail_probability"][0]
    ok = res["initial_max_amplitude_outside"] < 1e-13 and tail > 1e-10
    report(7, "superluminal tail", ok,
           f"mass beyond r0+t at t=0.1L is {tail:.3e} (periodic images ignored at this time)")


def test_criterion_8_determinism(report, tmp_path):
    codes = [cli.main(["verify", f"seed={SEED}", f"output_dir={tmp_path / d}"]) for d in ("a", "b")]
    a = (tmp_path / "a" / "verify.json").read_bytes()
    b = (tmp_path / "b" / "verify.json").read_bytes()
    ok = codes == [0, 0] and a == b
    report(8, "determinism", ok, f"exit codes {codes}, {len(a)} bytes, identical={a == b}")
