from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from drycert.errors import ParityError
from drycert.picard import BaseSurface, DivClass
from drycert.spectral import (
    BPF_CERTIFIED,
    BPF_FAILED,
    BPF_UNVERIFIED,
    SpectralData,
    bpf_status,
    c2_W,
    line_class_coeffs,
    spectral_check,
    spectral_valid,
)
from strategies import bases, classes

F0, F1 = BaseSurface.parse("F0"), BaseSurface.parse("F1")
DP3, DP8 = BaseSurface.parse("dP3"), BaseSurface.parse("dP8")


def S(n, eta, two_lambda):
    return SpectralData(n, DivClass(eta), two_lambda)


def test_line_class():
    lc = line_class_coeffs(S(3, (7, 8), 1), F0)
    assert (lc.sigma_coeff, lc.eta_coeff, lc.c1_coeff, lc.is_integral) == (3, 0, 2, True)
    lc = line_class_coeffs(S(2, (4, 6), 0), F0)
    assert (lc.sigma_coeff, lc.eta_coeff, lc.c1_coeff, lc.is_integral) == (1, Fraction(1, 2), Fraction(1, 2), True)
    lc = line_class_coeffs(S(2, (9, -3, -3, -3), 1), DP3)
    assert (lc.sigma_coeff, lc.eta_coeff, lc.c1_coeff, lc.is_integral) == (2, 0, Fraction(3, 2), False)


def test_validity_examples():
    assert spectral_valid(S(3, (7, 8), 1), F0)
    assert not spectral_valid(S(3, (2, 2), 1), F0)
    assert spectral_valid(SpectralData(3, 3 * DP3.c1, 1), DP3)
    check = spectral_check(S(3, (2, 2), 1), F0)
    assert check.failure_codes() == ["not_effective"]
    assert spectral_check(S(3, (7, 8), 0), F0).failure_codes() == ["parity"]


def test_bpf_policy():
    assert bpf_status(F0, DivClass((1, 0))) == BPF_CERTIFIED  # nef on a toric base
    assert bpf_status(F1, DivClass((1, 0))) == BPF_FAILED  # C0.C0 = -1
    assert bpf_status(DP3, DP3.c1) == BPF_CERTIFIED
    assert bpf_status(DP3, DivClass((1, 0, 0, 0))) == BPF_UNVERIFIED  # Reider fails on A.E1 = 1
    assert bpf_status(DP3, DivClass((0, 1, 0, 0))) == BPF_FAILED
    # |-K| on dP8 has a base point: never certified
    assert bpf_status(DP8, DP8.c1) == BPF_UNVERIFIED
    assert bpf_status(DP8, 2 * DP8.c1) == BPF_CERTIFIED
    assert bpf_status(DP3, DivClass.zero(4)) == BPF_CERTIFIED


def test_c2_W_examples():
    assert c2_W(S(3, (7, 8), 1), F0) == (DivClass((7, 8)), -8)
    assert c2_W(S(2, (4, 6), 0), F0)[1] == -4
    for eta in ((9, -3, -3, -3), (12, -4, -3, -3), (10, -2, -3, -4)):
        assert c2_W(S(3, eta, 1), DP3)[1] == -6
    assert c2_W(S(1, (5, 5), 1), F0)[1] == 0
    with pytest.raises(ParityError):
        c2_W(S(3, (7, 8), 0), F0)
    with pytest.raises(ValueError):
        S(0, (1, 1), 1)


def test_json():
    s = S(2, (4, 6), 0)
    assert SpectralData.from_json(s.to_json()) == s


@given(bases(), st.integers(1, 7), st.integers(-5, 5), st.data())
def test_c2_W_fiber_integral(base, n, two_lambda, data):
    eta = data.draw(classes(base))
    assume(base.parity_admissible(n, eta, two_lambda))
    _, fiber = c2_W(SpectralData(n, eta, two_lambda), base)
    assert fiber.denominator == 1
    assert line_class_coeffs(SpectralData(n, eta, two_lambda), base).is_integral


@given(bases(), st.integers(1, 7), st.data())
def test_half_integral_lambda_kills_eta_term(base, n, data):
    eta = data.draw(classes(base))
    assume(n % 2 == 1 or all(c % 2 == 0 for c in base.c1))
    plus = c2_W(SpectralData(n, eta, 1), base)
    minus = c2_W(SpectralData(n, eta, -1), base)
    assert plus == minus
    assert plus[1] == -Fraction(n**3 - n, 24) * base.square(base.c1)


@given(bases(), st.integers(1, 6), st.integers(0, 4), st.data())
def test_lambda_sign_symmetry(base, n, two_lambda, data):
    eta = data.draw(classes(base))
    assume(base.parity_admissible(n, eta, two_lambda))
    assert c2_W(SpectralData(n, eta, two_lambda), base) == c2_W(SpectralData(n, eta, -two_lambda), base)


@given(bases(("dP2", "dP3", "dP5", "dP7", "dP8")), st.data())
def test_certified_bpf_is_nef(base, data):
    eta = data.draw(classes(base, -3, 12))
    status = bpf_status(base, eta)
    assert (status == BPF_FAILED) == (not base.is_nef(eta))
