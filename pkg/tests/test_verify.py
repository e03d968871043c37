import json
import math
import os
import subprocess
import sys

import pytest

from swb import verify as vf
from swb.borcherds import WeaklyHolomorphicInput, delta_input, phi01_input
from swb.specfun import ERF_HALF_PI, zeta_prime


def one(c0="1", *more):
    return WeaklyHolomorphicInput({"mu0": [("0", c0), *more]})


def test_report_refuses_same_provenance():
    with pytest.raises(AssertionError):
        vf._report("zagier", "", vf.Tagged(1.0, "contour"), vf.Tagged(1.0, "contour"), vf.VerifyConfig(), {})


def test_report_serialisation_fields():
    d = vf.verify_lemma212(2.0).to_dict()
    assert set(d) >= {"identity_id", "lhs", "rhs", "abs_err", "rel_err", "pass", "hard", "provenance", "notes",
                      "config"}
    assert d["pass"] is True and d["hard"] is True
    assert d["config"]["seed"] == vf.VerifyConfig().seed


def test_unknown_tolerance_key_is_rejected():
    with pytest.raises((KeyError, ValueError)):
        vf.VerifyConfig(tolerances={"nonsense": 1.0})


def test_unknown_verifier_name():
    with pytest.raises(KeyError):
        vf.run_verifiers(["nope"])


@pytest.mark.parametrize("T", [2.0, 10.0])
def test_printed_constant_terms_are_flagged(T):
    for rep in (vf.verify_lemma221(T), vf.verify_derivadaeis(T)):
        assert not rep.passed
        assert any("printed-form discrepancy" in n for n in rep.notes)


def test_affine_structure_of_log_weighted_constant_term():
    vals = []
    for T in (2.0, 10.0, 100.0):
        lt = math.log(T)
        vals.append(vf.verify_derivadaeis(T).lhs.real + (lt + 1) / T + (math.pi / 3) * lt)
    assert max(vals) - min(vals) < 1e-11


@pytest.mark.parametrize("T", [10.0, 100.0])
def test_constant_term_at_one_minus_log_is_bounded(T):
    assert abs(vf.verify_lemma221(T).lhs.real - math.log(T)) < 1.0


def test_half_region_constant(oracle):
    assert abs(vf.true_lemma184_constant() - oracle["half_region_constant"]) < 1e-15
    assert abs(vf.printed_lemma184_constant() - oracle["half_region_constant"]) > 0.29


def test_half_region_quadrature_confirms_true_constant():
    rep = vf.verify_lemma184(1j, "mu0")
    from swb.theta import div_part
    from swb.hdomain import HPoint

    d0 = div_part(1j, HPoint(0, 1), "mu0", "closed")
    assert abs(rep.lhs - 2 * d0 * vf.true_lemma184_constant()) < 1e-12
    assert not rep.passed and rep.hard


def test_zeta_constant_term_sign():
    rep = vf.verify_eq244()
    assert abs(rep.lhs.real - 0.5772156649015329) < 1e-12
    assert not rep.passed


def test_limit_case_decomposition_against_oracle(oracle):
    for kappa, key in ((1.0, "limit_case[2,1]"), (4.0, "limit_case[2,4]")):
        reps = vf.verify_limit_case(2.0, kappa)
        dec = reps[0]
        assert dec.passed
        assert abs(dec.rhs.real - oracle[key]) < 1e-10 * oracle[key]
        assert abs(dec.lhs.real - oracle[key]) < 1e-10 * oracle[key]
        assert {r.config_snapshot.get("A_variant") for r in reps[1:]} == {"A", "A_alt"}


def test_limit_case_profile_branches_meet():
    import numpy as np

    y = np.array([1.0 - 1e-12, 1.0 + 1e-12])
    a, b = vf.limit_case_profile(y)
    assert abs(a - b) < 1e-12


def test_exact_laurent_check_is_zero():
    rep = vf.verify_lemma243()
    assert rep.lhs == 0 and rep.passed


@pytest.mark.parametrize("T", [100.0, 1e4])
def test_cusp_box_pairing(T):
    for f in (one(), one("1", ("1", "5"))):
        rep = vf.verify_integralsola(f, T)
        assert rep.passed and rep.rel_err < 1e-12


def test_pairing_identity_fails_for_a_modular_input():
    f = phi01_input()
    assert vf.modularity_defect(f) < 1e-10
    rep = vf.verify_prop215(f, 400.0)
    assert not rep.passed
    assert abs(rep.lhs.real - 23.354) < 0.01


def test_delta_input_fails_modularity_precondition():
    rep = vf.verify_prop215(delta_input(), 400.0)
    assert any("precondition" in n for n in rep.notes)
    assert not rep.passed


def test_printed_cusp_closed_form_scales_like_inverse_root():
    vals = [vf.verify_prop226(one(), T, 2.0).rhs.real * math.sqrt(T) for T in (1e4, 1e6)]
    assert abs(vals[0] - vals[1]) < 1e-12 * abs(vals[0])


def test_cusp_term_tends_to_twice_region_mass():
    # the T -> oo limit is 2 c (mass of the truncated domain under y dmu), not zero
    rep = vf.verify_lemma232(one(), 1e6, 2.0)
    mass = math.log(2.0) + 2 * vf.true_lemma184_constant()
    assert abs(rep.lhs.real - 2 * mass) < 3e-3
    assert abs(mass - 0.738375928) < 1e-9


def test_divergence_integrals_against_oracle(oracle):
    K = oracle["delta_compact"]
    for T in (2.0, 8.0, 32.0):
        lt = math.log(T)
        expect = K - 2 * math.pi * lt + 6 * (1 - (lt + 1) / T)
        assert abs(vf._delta_integral(T, 1e-10).value.real - expect) < 1e-8


def test_divergence_fit_is_reproducible_across_tolerances():
    _, a1, r1, _ = vf.divergence_fit((8.0, 16.0, 32.0, 64.0), tol=1e-9)
    _, a2, r2, rep = vf.divergence_fit((8.0, 16.0, 32.0, 64.0), tol=1e-11)
    assert abs(a1 - a2) < 1e-6
    assert abs(r1 - r2) < 1e-6
    assert any("6 (log T_hat + 1)/T_hat" in n for n in rep.notes)


def test_divergence_fit_needs_enough_heights():
    with pytest.raises(ValueError):
        vf.divergence_fit((8.0, 16.0))


def test_assembly_log_coefficient_for_unit_constant_term():
    out = vf.assemble_main_theorem(vf.OrdinaryCaseInputs(one(), {}, T_hat=2.0))
    assert out["log_T_hat_coefficient"] == pytest.approx(-(4 * zeta_prime(-1.0) * ERF_HALF_PI + 0.25), abs=1e-15)
    assert out["symbolic"] == []


def test_assembly_decaying_terms_vanish_at_large_height():
    out = vf.assemble_main_theorem(vf.OrdinaryCaseInputs(one(), {}, T_hat=1e6))
    decaying = [t["value"] for t in out["terms"] if "/T_hat" in t["label"]]
    assert len(decaying) == 2
    assert all(abs(v) < 1e-4 for v in decaying)


def test_assembly_needs_b_values_for_the_principal_part():
    f = one("1", ("-1", "1"))
    with pytest.raises(vf.MissingBValueError):
        vf.assemble_main_theorem(vf.OrdinaryCaseInputs(f, {}))
    out = vf.assemble_main_theorem(vf.OrdinaryCaseInputs(f, {"1": None}))
    assert out["symbolic"][0]["unknown"] == "b(1)"
    out = vf.assemble_main_theorem(vf.OrdinaryCaseInputs(f, {"1": 2.5}))
    assert any(t["label"].startswith("b(1)") for t in out["terms"])


def test_theta_invariance_uses_the_seed():
    a = vf.verify_theta_invariance(vf.VerifyConfig(seed=1))
    b = vf.verify_theta_invariance(vf.VerifyConfig(seed=2))
    assert all(r.passed for r in a + b)
    assert a[0].config_snapshot["tau"] != b[0].config_snapshot["tau"]


def test_parallel_run_matches_serial():
    names = ["lemma212", "eq244", "A_assembly"]
    s = [r.to_dict() for r in vf.run_verifiers(names)]
    p = [r.to_dict() for r in vf.run_verifiers(names, workers=2)]
    assert s == p


def test_numpy_fallback_gives_the_same_numbers():
    code = ("import json, swb.kernels as k; from swb import verify as v;"
            "r = v.verify_zagier(2.0, 2.0); t = v.verify_prop185(0.3+0.7j);"
            "print(json.dumps([k.BACKEND, r.lhs.real, t.lhs.real]))")
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, SWB_PURE_PYTHON=flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        out[flag] = json.loads(res.stdout)
    assert out["1"][0] == "python"
    assert out["0"][1] == pytest.approx(out["1"][1], rel=1e-12)
    assert out["0"][2] == pytest.approx(out["1"][2], rel=1e-12)
