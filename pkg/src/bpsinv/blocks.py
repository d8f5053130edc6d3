"""Named modular building blocks as exact q-series.

theta_hat(k) is the phase-stripped theta factor:

    theta_hat(k) = q^(1/8) (w^k - w^-k) prod_{n>=1} (1-q^n)(1-w^{2k}q^n)(1-w^{-2k}q^n)

so that the odd Jacobi theta at even multiples of the refinement parameter is
i * theta_hat(k).  Every displayed formula downstream resolves to theta_hat
and eta with total phase +1; coefficients stay rational throughout, which the
constructors assert implicitly by living in WRat.
"""

from functools import lru_cache

from .exactq import qq, is_integral
from .geometry import Surface
from .invariants import GenFun, Flavor
from .series import QSeries, VPoly, WRat, SeriesError

__all__ = [
    "eta_series", "theta_hat", "ThetaHat", "rank1_genfun",
    "fibre_product_genfun", "total_set_curve", "blowup_factor",
]


@lru_cache(maxsize=None)
def eta_series(cutoff) -> QSeries:
    """Dedekind eta: q^(1/24) prod (1 - q^n), expanded below the cutoff."""
    cutoff = qq(cutoff)
    if cutoff <= qq(1, 24):
        raise SeriesError("eta cutoff must exceed 1/24")
    prod = QSeries.one(cutoff - qq(1, 24))
    n = 1
    while n < cutoff - qq(1, 24):
        prod = prod * QSeries({0: 1, n: -1})
        n += 1
    return prod.shift_q(qq(1, 24))


class ThetaHat:
    """Factor theta_hat(k) together with its label k."""

    def __init__(self, k: int, series: QSeries):
        self.k = k
        self.series = series


@lru_cache(maxsize=None)
def _theta_hat_series(k, cutoff) -> QSeries:
    cutoff = qq(cutoff)
    body_cut = cutoff - qq(1, 8)
    out = QSeries({0: WRat(VPoly({2 * k: 1, -2 * k: -1}))}, body_cut)
    n = 1
    while n < body_cut:
        for vexp in (0, 4 * k, -4 * k):
            out = out * QSeries({0: 1, n: -WRat(VPoly({vexp: 1}))})
        n += 1
    return out.shift_q(qq(1, 8))


def theta_hat(k, cutoff) -> ThetaHat:
    k = int(k)
    if k < 1:
        raise SeriesError("theta_hat requires k >= 1")
    return ThetaHat(k, _theta_hat_series(k, qq(cutoff)))


@lru_cache(maxsize=None)
def rank1_genfun(surface: Surface, cutoff) -> GenFun:
    """h_{1,c1} = 1/(theta_hat(1) eta^(b2-1)); independent of c1 and J."""
    cutoff = qq(cutoff)
    den = _theta_hat_series(1, cutoff + 2)
    if surface.b2 > 1:
        den = den * eta_series(cutoff + 2) ** (surface.b2 - 1)
    series = den.invert().truncate(cutoff)
    return GenFun(surface=surface, r=1, c1=surface.zero_class(), J=None,
                  flavor=Flavor.OMEGA_BAR, series=series)


@lru_cache(maxsize=None)
def fibre_product_genfun(r, c1, ell, cutoff) -> GenFun:
    """Stack generating function for sheaves with semi-stable fibre
    restriction: eta^(2r-3) / (theta_hat(1)^2 ... theta_hat(r-1)^2 theta_hat(r)),
    and 0 when c1.f is nonzero mod r (r > 1)."""
    r = int(r)
    if r < 1:
        raise SeriesError("fibre product requires r >= 1")
    surface = Surface.hirzebruch(ell)
    c1 = tuple(int(x) for x in c1)
    cutoff = qq(cutoff)
    if r > 1 and c1[0] % r != 0:
        return GenFun(surface=surface, r=r, c1=c1, J=None,
                      flavor=Flavor.STACK, series=QSeries.zero(cutoff))
    pad = qq(2 * r)  # generous slack for the negative leading exponent
    den = _theta_hat_series(r, cutoff + pad)
    for j in range(1, r):
        den = den * _theta_hat_series(j, cutoff + pad) ** 2
    num = eta_series(cutoff + pad) ** (2 * r - 3) if r >= 2 else \
        eta_series(cutoff + pad).invert()
    series = (num * den.invert()).truncate(cutoff)
    return GenFun(surface=surface, r=r, c1=c1, J=None,
                  flavor=Flavor.STACK, series=series)


def total_set_curve(r, g) -> WRat:
    """Virtual count of the stack of rank-r bundles on a genus-g curve:
    -w^(r^2(1-g)) (1+w^(2r-1))^(2g) / (1-w^(2r)) *
    prod_{j<r} (1+w^(2j-1))^(2g) / (1-w^(2j))^2."""
    r, g = int(r), int(g)
    if r < 1 or g < 0:
        raise SeriesError("total_set_curve requires r >= 1, g >= 0")
    one = WRat.from_rational(1)
    out = WRat.w_power(r * r * (1 - g)).scale(-1)
    if g:
        out = out * (one + WRat.w_power(2 * r - 1)) ** (2 * g)
    out = out / WRat.one_minus_w(2 * r)
    for j in range(1, r):
        if g:
            out = out * (one + WRat.w_power(2 * j - 1)) ** (2 * g)
        out = out / WRat.one_minus_w(2 * j) ** 2
    return out


@lru_cache(maxsize=None)
def blowup_factor(r, k, cutoff) -> QSeries:
    """B_{r,k} = eta^-r sum over (a_1..a_r), sum a_i = 0, a_i in Z + k/r, of
    q^(-sum_{i<j} a_i a_j) w^(sum_{i<j} (a_i - a_j)).

    The w-exponent sum_{i<j}(a_i - a_j) = sum_i (r+1-2i) a_i is always an
    integer, so every coefficient has integer w-support.  Truncation: the
    quadratic form -sum_{i<j} a_i a_j = (1/2) sum a_i^2 is positive definite
    on the sum-zero lattice, so points outside a finite ball exceed the
    cutoff."""
    r, k = int(r), int(k) % int(r)
    cutoff = qq(cutoff)
    eta_inv = (eta_series(cutoff + r + 2) ** r).invert()
    lead = eta_inv.leading_exponent()
    theta_cut = cutoff - lead
    shift = qq(k, r)
    acc = {}

    def rec(prefix, remaining, acc_sq, acc_sum):
        if remaining == 1:
            a_last = -acc_sum
            if not is_integral(a_last - shift):
                return
            tup = prefix + (a_last,)
            qexp = (acc_sq + a_last * a_last) / 2
            if qexp >= theta_cut:
                return
            wexp = sum((r + 1 - 2 * (i + 1)) * a for i, a in enumerate(tup))
            acc[qexp] = acc.get(qexp, WRat.from_rational(0)) \
                + WRat.w_power(wexp)
            return
        m = 0
        while True:
            hit = False
            for a in ({shift + m, shift - m} if m else {shift}):
                if acc_sq + a * a < 2 * theta_cut:
                    hit = True
                    rec(prefix + (a,), remaining - 1, acc_sq + a * a,
                        acc_sum + a)
            if not hit:
                break
            m += 1

    rec((), r, qq(0), qq(0))
    lattice = QSeries(acc, theta_cut)
    return (eta_inv * lattice).truncate(cutoff)
