"""The three-step pipeline from the once-blown-up plane to the plane.

Step (1) passes from Gieseker invariants in the chamber J_{1,eps} to the
virtual count of the mu-semi-stable stack at the boundary polarization
J_{1,0} = pullback of the hyperplane class.  The stack sum and the stacky
factorials combine into a single sum over tuples of pieces with equal
mu-slope (equal f-degree per rank) ordered by the J_{1,eps} refinement;
equal-slope runs contribute Boltzmann factors 1/g!.

Step (2) divides by the blow-up factor, landing on the plane.

Step (3) reverses step (1) on the plane, where equal-slope splittings are the
only corrections (b2 = 1).
"""

from functools import lru_cache
from math import gcd, isqrt

from .exactq import qq
from .blocks import blowup_factor, rank1_genfun
from .geometry import (
    NEAR_PULLBACK, PULLBACK_H, Surface, filtration_qshift,
)
from .invariants import Flavor, GenFun, InvariantError, omegabar_to_omega
from .series import QSeries, WRat
from .wallcross import _weight_of_sequence, genfun_at_polarization

__all__ = [
    "BlowupError", "gieseker_to_mu", "blowup_divide", "mu_to_gieseker",
    "p2_genfun", "p2_omega_genfun", "p2_table",
]

P2 = Surface.p2()
SIGMA1 = Surface.hirzebruch(1)


class BlowupError(InvariantError):
    pass


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _compositions(n):
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def gieseker_to_mu(r, c1, cutoff):
    """H^mu_{r,c1}(J_{1,0}) on the blown-up plane from the J_{1,eps} chamber
    functions: sum over tuples of pieces (r_i, x_i C + y_i f) with all
    y_i/r_i = y/r, ordered by weakly decreasing x_i/r_i, weighted by
    1/prod(run)!, w^(-sum r_i r_j (mu_j - mu_i).K) and the filtration
    q-shift."""
    r = int(r)
    cutoff = qq(cutoff)
    X, Y = int(c1[0]), int(c1[1])
    if r > 3:
        raise BlowupError("mu-stack conversion covers r <= 3 only")
    pad = qq(1)
    bound = cutoff + pad + qq(r, 6)
    total = QSeries.zero(None)
    S = isqrt(int(2 * r * bound)) + 2
    for ranks in _compositions(r):
        if any((ri * Y) % r for ri in ranks):
            continue
        ys = [ri * Y // r for ri in ranks]
        for xs in _slope_tuples(ranks, X, S):
            slots = [(ri, (qq(x, ri), qq(y, ri)))
                     for ri, x, y in zip(ranks, xs, ys)]
            shift = filtration_qshift(slots, SIGMA1)
            if shift > bound:
                continue
            aut = qq(1)
            run = 1
            for i in range(1, len(ranks)):
                if qq(xs[i], ranks[i]) == qq(xs[i - 1], ranks[i - 1]):
                    run += 1
                else:
                    aut /= _factorial(run)
                    run = 1
            aut /= _factorial(run)
            prod = QSeries(
                {shift: _weight_of_sequence(slots, SIGMA1).scale(aut)})
            for ri, x, y in zip(ranks, xs, ys):
                prod = prod * genfun_at_polarization(
                    ri, (x % ri, y % ri), 1, NEAR_PULLBACK,
                    cutoff + pad).series
            total = total + prod
    return GenFun(surface=SIGMA1, r=r, c1=(X, Y), J=PULLBACK_H,
                  flavor=Flavor.STACK_MU, series=total.truncate(cutoff))


def _slope_tuples(ranks, X, S):
    """Integer tuples (x_i) with sum X and x_i/r_i weakly decreasing, every
    slope within S of the mean (pairs further apart exceed the q-shift bound
    that produced S)."""
    mean = qq(X, sum(ranks))

    def rec(prefix, remaining_ranks, remaining_X, prev_slope):
        if not remaining_ranks:
            if remaining_X == 0:
                yield tuple(prefix)
            return
        ri = remaining_ranks[0]
        lo = (mean - S) * ri
        hi = (mean + S) * ri
        x = int(lo.numerator // lo.denominator)
        while qq(x) <= hi:
            s = qq(x, ri)
            if prev_slope is None or s <= prev_slope:
                if len(remaining_ranks) > 1:
                    yield from rec(prefix + [x], remaining_ranks[1:],
                                   remaining_X - x, s)
                elif x == remaining_X:
                    yield tuple(prefix + [x])
            x += 1

    yield from rec([], list(ranks), X, None)


def blowup_divide(hmu, r, k, cutoff=None):
    """Divide a mu-stack series on the blown-up plane by B_{r,k}; the result
    lives on the plane.  All coefficients must keep integer w-support."""
    if hmu.flavor != Flavor.STACK_MU:
        raise BlowupError("blow-up division needs a STACK_MU input")
    if cutoff is None:
        cutoff = hmu.series.cutoff
    r = int(r)
    k = int(k) % r
    B = blowup_factor(r, k, qq(cutoff) + 1)
    quotient = hmu.series * B.invert()
    for c in quotient.terms.values():
        if not c.is_even_support():
            raise BlowupError("blow-up parity violation")
    x = hmu.c1[1]
    return GenFun(surface=P2, r=r, c1=(x % r,), J=None,
                  flavor=Flavor.STACK_MU, series=quotient.truncate(cutoff))


def mu_to_gieseker(hmu_p2, r, x, cutoff=None):
    """Reverse step (1) on the plane: subtract the equal-slope stacky
    products of lower-rank plane functions (1/prod k!) h^k...; the identity
    for classes with gcd(r, c1.H) = 1."""
    if hmu_p2.surface != P2:
        raise BlowupError("step (3) applies on the plane")
    if cutoff is None:
        cutoff = hmu_p2.series.cutoff
    cutoff = qq(cutoff)
    r = int(r)
    x = int(x)
    series = hmu_p2.series
    for ranks in _multisets(r):
        if len(ranks) < 2:
            continue
        if any((ri * x) % r for ri in ranks):
            continue
        counts = {}
        for ri in ranks:
            counts[ri] = counts.get(ri, 0) + 1
        coeff = qq(1)
        for c in counts.values():
            coeff /= _factorial(c)
        prod = QSeries({0: WRat.from_rational(coeff)})
        for ri in ranks:
            prod = prod * p2_genfun(ri, (ri * x // r) % ri, cutoff + 1).series
        series = series - prod
    return GenFun(surface=P2, r=r, c1=(x % r,), J=None,
                  flavor=Flavor.OMEGA_BAR, series=series.truncate(cutoff))


def _multisets(n):
    """Weakly decreasing rank tuples summing to n."""
    out = []

    def rec(prefix, remaining, maxpart):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(maxpart, remaining), 0, -1):
            rec(prefix + [p], remaining - p, p)

    rec([], n, n)
    return out


@lru_cache(maxsize=None)
def p2_genfun(r, x, cutoff, route_k=None):
    """h_{r,xH}(z,tau; P^2), rational multi-cover flavor, by wall-crossing to
    the J_{1,eps} chamber, the mu-stack conversion, blow-up division, and the
    reverse conversion.  route_k selects the exceptional-class residue of the
    blown-up-plane route; the default makes the Sigma_1 class (x-k)C + xf
    carry C-coefficient x-1."""
    r = int(r)
    cutoff = qq(cutoff)
    x = int(x) % r
    if r == 1:
        return GenFun(surface=P2, r=1, c1=(0,), J=None,
                      flavor=Flavor.OMEGA_BAR,
                      series=rank1_genfun(P2, cutoff).series)
    if r > 3:
        raise BlowupError("plane pipeline covers r <= 3 only")
    k = (x - 1) % r if route_k is None else int(route_k) % r
    c1_sigma = (x - k, x)
    hmu = gieseker_to_mu(r, c1_sigma, cutoff + 1)
    hmu_p2 = blowup_divide(hmu, r, k, cutoff + qq(1, 2))
    return mu_to_gieseker(hmu_p2, r, x, cutoff)


def p2_omega_genfun(r, x, cutoff, route_k=None):
    """Integer BPS flavor on the plane: invert the multi-cover sum."""
    h = p2_genfun(r, x, cutoff, route_k)
    lower = {}
    g = gcd(r, x)
    for m in range(2, g + 1):
        if g % m:
            continue
        low = p2_omega_genfun(r // m, (x // m) % (r // m), cutoff)
        lower[(r // m, low.c1)] = low
    return omegabar_to_omega(h, lower)


def p2_table(r, x, cutoff, route_k=None):
    from .invariants import extract_table
    return extract_table(p2_omega_genfun(r, x, cutoff, route_k))
