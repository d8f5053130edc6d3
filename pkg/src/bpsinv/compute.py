"""Top-level dispatch: generating functions and tables per surface, class
and polarization."""

from math import gcd

from .exactq import qq
from .blowup import p2_genfun, p2_omega_genfun, p2_table
from .geometry import SUITABLE
from .hn import suitable_genfun_recursive
from .invariants import extract_table, omegabar_to_omega
from .wallcross import WallError, genfun_at_polarization

__all__ = [
    "sigma_genfun", "sigma_omega_genfun", "sigma_table",
    "p2_genfun", "p2_omega_genfun", "p2_table", "default_cutoff",
]


def default_cutoff(r, surface, qorders):
    """qorders q-levels above the baseline exponent -r chi(S)/24."""
    return qq(int(qorders)) - qq(r * surface.chi_top, 24)


def sigma_genfun(r, c1, ell, J, cutoff):
    """Rational-invariant generating function on Sigma_ell at J; the suitable
    chamber supports r <= 4, generic polarizations r <= 3."""
    if J == SUITABLE:
        return suitable_genfun_recursive(r, tuple(c1), ell, qq(cutoff))
    if r > 3:
        raise WallError("generic polarizations support r <= 3")
    return genfun_at_polarization(r, tuple(c1), ell, J, qq(cutoff))


def sigma_omega_genfun(r, c1, ell, J, cutoff):
    """Integer BPS flavor on Sigma_ell: invert the multi-cover sum using
    lower-rank results at the same polarization."""
    h = sigma_genfun(r, c1, ell, J, cutoff)
    g = gcd(gcd(r, abs(c1[0])), abs(c1[1]))
    lower = {}
    for m in range(2, g + 1):
        if g % m:
            continue
        low = sigma_omega_genfun(r // m, (c1[0] // m, c1[1] // m), ell, J,
                                 cutoff)
        lower[(r // m, low.c1)] = low
    return omegabar_to_omega(h, lower)


def sigma_table(r, c1, ell, J, cutoff):
    return extract_table(sigma_omega_genfun(r, c1, ell, J, cutoff))
