import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from swb import borcherds as bc
from swb.hdomain import HPoint, apply_matrix
from swb.theta import jacobi_theta


def log_abs_delta_product(z):
    q = mpmath.exp(2j * mpmath.pi * z)
    s = mpmath.log(abs(q))
    qn = q
    for _ in range(400):
        s += 24 * mpmath.log(abs(1 - qn))
        qn *= q
    return float(s)


@pytest.mark.parametrize("z", [0.1 + 1.2j, 0.2 + 0.3j, -0.45 + 0.6j])
def test_log_abs_delta_at_unreduced_points(z):
    val = bc.delta_log(HPoint.from_complex(z))
    assert abs(val.log_abs - log_abs_delta_product(z)) < 1e-11
    assert val.log_pet == pytest.approx(val.log_abs + 6 * math.log(z.imag), abs=1e-11)


@given(st.sampled_from([((0, -1), (1, 0)), ((1, 1), (0, 1)), ((3, 1), (2, 1))]),
       st.floats(-0.5, 0.5), st.floats(0.9, 4.0))
def test_petersson_log_norm_is_invariant(g, x, y):
    z = complex(x, y)
    a = bc.delta_log(HPoint.from_complex(z)).log_pet
    b = bc.delta_log(HPoint.from_complex(apply_matrix(g, z))).log_pet
    assert abs(a - b) < 1e-10 * max(1.0, abs(a))


def test_log_abs_delta_cusp_behaviour():
    y = 9.0
    assert bc.delta_log(HPoint(0.0, y)).log_abs == pytest.approx(-2 * math.pi * y, abs=1e-20)


def test_shipped_delta_input():
    f = bc.delta_input()
    assert f.c00 == 24
    assert f.weight == Fraction(-1, 2)


def test_input_json_round_trip():
    f = bc.WeaklyHolomorphicInput({"mu0": [("-1", 1), ("0", 10)], "mu1": [("-1/4", 1), ("3/4", -64)]})
    g = bc.WeaklyHolomorphicInput.from_json(f.to_json())
    assert g == f
    assert g.c("mu1", Fraction(3, 4)) == -64
    assert g.principal_part()[bc.CosetId.MU0] == ((Fraction(-1), 1 + 0j),)


def test_input_validation():
    with pytest.raises(bc.InputFormError):
        bc.WeaklyHolomorphicInput({"mu0": [("1/2", 1)]})
    with pytest.raises(bc.InputFormError):
        bc.WeaklyHolomorphicInput({"mu1": [("1", 1)]})
    with pytest.raises(bc.InputFormError):
        bc.WeaklyHolomorphicInput.from_dict({"weight": "-1/2"})
    with pytest.raises(bc.InputFormError):
        bc.WeaklyHolomorphicInput.from_dict({"cosets": {"mu0": [["0", {"bad": 1}]]}})


def test_phi01_leading_coefficients():
    f = bc.phi01_input(8)
    assert [f.c("mu0", n).real for n in range(4)] == [10, 108, 808, 4016]
    assert [f.c("mu1", Fraction(4 * m - 1, 4)).real for m in range(4)] == [1, -64, -513, -2752]


@pytest.mark.parametrize("tau", [1j, 0.3 + 0.9j, -0.2 + 1.6j, 0.5 + 0.87j])
def test_phi01_theta_contraction_is_constant(tau):
    f = bc.phi01_input(40)
    total = sum(f.evaluate(c, tau) * jacobi_theta(tau, c) for c in ("mu0", "mu1"))
    assert abs(total - 12) < 1e-12


def test_relation_right_hand_side():
    f = bc.delta_input()
    y = 1.7
    expect = -0.3 / 4 - 12 * (math.log(y) - 0.5772156649015329 / 2 + 0.5 * math.log(2 * math.pi))
    assert bc.borcherds_relation_rhs(f, 0.3, y) == pytest.approx(expect, abs=1e-13)


def test_array_version_matches_scalar():
    x = np.array([0.1, -0.3, 0.7])
    y = np.array([1.1, 0.5, 2.2])
    la, lp = bc.delta_log_array(x, y)
    for i in range(3):
        v = bc.delta_log(HPoint(x[i], y[i]))
        assert la[i] == pytest.approx(v.log_abs, abs=1e-12)
        assert lp[i] == pytest.approx(v.log_pet, abs=1e-12)
