from bpsinv.exactq import qq
from bpsinv.blocks import (
    eta_series, theta_hat, rank1_genfun, fibre_product_genfun,
    total_set_curve, blowup_factor,
)
from bpsinv.geometry import Surface
from bpsinv.series import QSeries, VPoly, WRat

P2 = Surface.p2()
S1 = Surface.hirzebruch(1)


def wpoly(d):
    return WRat(VPoly({2 * j: c for j, c in d.items()}))


def pentagonal_coeffs(nmax):
    """Independent oracle for prod(1-q^n): Euler's pentagonal number theorem."""
    out = {}
    k = 0
    while True:
        for kk in {k, -k}:
            e = kk * (3 * kk - 1) // 2
            if e <= nmax:
                out[e] = out.get(e, 0) + (-1) ** (kk % 2)
        if k * (3 * k - 1) // 2 > nmax and k * (3 * k + 1) // 2 > nmax:
            break
        k += 1
    return out


def test_eta_pentagonal():
    eta = eta_series(qq(8))
    oracle = pentagonal_coeffs(7)
    for n, v in oracle.items():
        assert eta.coeff(n + qq(1, 24)) == WRat.from_rational(v)
    assert eta.coeff(qq(1, 24)) == WRat.from_rational(1)
    assert eta.coeff(1 + qq(1, 24)) == WRat.from_rational(-1)
    assert eta.coeff(5 + qq(1, 24)) == WRat.from_rational(1)
    assert eta.coeff(2 + qq(1, 24)) == WRat.from_rational(-1)
    assert eta.coeff(3 + qq(1, 24)).is_zero()


def test_theta_hat_leading_and_next():
    th = theta_hat(1, qq(4))
    assert th.series.coeff(qq(1, 8)) == wpoly({1: 1, -1: -1})
    # order q: -(w^3 - w^-3)
    assert th.series.coeff(1 + qq(1, 8)) == wpoly({3: -1, -3: 1})
    thk = theta_hat(3, qq(2))
    assert thk.series.coeff(qq(1, 8)) == wpoly({3: 1, -3: -1})


def test_theta_hat_odd_under_w_inversion():
    th = theta_hat(1, qq(6))
    for e, c in th.series.terms.items():
        assert c.conjugate() == -c


def test_eta_times_inverse_is_one():
    eta = eta_series(qq(5))
    assert (eta * eta.invert()).eq_to_cutoff(QSeries.one())


def test_rank1_p2_hilbert_scheme():
    h = rank1_genfun(P2, qq(3))
    inv_w = wpoly({1: 1, -1: -1}).inverse()
    assert h.series.coeff(qq(-1, 8)) == inv_w
    # Hilb^1(P^2) = P^2: Poincare polynomial (1 + w^2 + w^4) shifted by w^-2
    assert h.series.coeff(1 - qq(1, 8)) == wpoly({-2: 1, 0: 1, 2: 1}) * inv_w


def test_rank1_hirzebruch_leading():
    h = rank1_genfun(S1, qq(2))
    assert h.series.leading_exponent() == qq(-4, 24)
    assert h.series.leading_coeff() == wpoly({1: 1, -1: -1}).inverse()


def test_fibre_product_vanishing_and_leading():
    z = fibre_product_genfun(2, (1, 0), 1, qq(3))
    assert z.series.is_zero()
    h = fibre_product_genfun(2, (0, 0), 1, qq(2))
    assert h.series.leading_exponent() == qq(-1, 3)
    assert h.series.leading_coeff() == total_set_curve(2, 0)


def test_total_set_curve_values():
    assert total_set_curve(1, 0) == wpoly({1: 1, -1: -1}).inverse()
    expect = WRat.w_power(4).scale(-1) / (
        WRat.one_minus_w(4) * WRat.one_minus_w(2) ** 2)
    assert total_set_curve(2, 0) == expect


def test_fibre_leading_equals_total_set_all_ranks():
    for r in range(1, 5):
        h = fibre_product_genfun(r, (0, 0), 0, qq(-qq(r, 6) + 2))
        assert h.series.leading_exponent() == -qq(r, 6)
        assert h.series.leading_coeff() == total_set_curve(r, 0)


def test_blowup_factor_rank2():
    b0 = blowup_factor(2, 0, qq(2))
    assert b0.coeff(qq(-1, 12)) == WRat.from_rational(1)
    # eta^-2 contributes 2 at order q; lattice points n = +-1 give w^(+-2)
    assert b0.coeff(1 - qq(1, 12)) == wpoly({0: 2, 2: 1, -2: 1})
    b1 = blowup_factor(2, 1, qq(2))
    assert b1.leading_exponent() == qq(1, 4) - qq(1, 12)
    assert b1.leading_coeff() == wpoly({1: 1, -1: 1})


def test_blowup_factor_rank3_integer_support():
    b = blowup_factor(3, 1, qq(2))
    for c in b.terms.values():
        assert c.is_even_support()
    assert b.leading_exponent() == qq(1, 3) - qq(1, 8)
    # (m, n) in {(1/3,1/3), (1/3,-2/3), (-2/3,1/3)}: w-exponents 2, 0, -2
    assert b.leading_coeff() == wpoly({2: 1, 0: 1, -2: 1})


def test_blowup_factor_palindromic():
    for (r, k) in [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]:
        b = blowup_factor(r, k, qq(2))
        for c in b.terms.values():
            assert c.conjugate() == c


def test_blowup_inverse_roundtrip():
    b = blowup_factor(2, 1, qq(3))
    assert (b * b.invert()).eq_to_cutoff(QSeries.one(), qq(3))
