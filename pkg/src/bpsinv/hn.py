"""Generating functions at a suitable polarization, two independent ways.

Route (a), ``suitable_genfun_recursive``: subtract from the fibre-restriction
product formula the invariants of all extended HN filtrations of length > 1.
At the suitable polarization every contributing filtration has pieces whose
slopes differ along the fibre only, so the infinite towers of fibre-degree
assignments are geometric series in w that we sum in closed form (assuming
|w| > 1, as the source formulas do), while the q-content is carried entirely
by the lower-rank generating functions of the pieces.

Route (b), ``suitable_genfun_closed``: the solved recursion, a finite sum
over rank compositions with explicit w-weights built from the sawtooth sum M.

Both return the rational multi-cover flavor; they must agree identically.
"""

from functools import lru_cache
from itertools import product as iproduct
from math import gcd

from .exactq import qq, qfrac, is_integral
from .blocks import fibre_product_genfun
from .geometry import Surface, SUITABLE, GeometryError, slope_order
from .invariants import Flavor, GenFun
from .series import QSeries, WRat

__all__ = [
    "M", "filtration_weight", "suitable_genfun_recursive",
    "suitable_genfun_closed", "subtraction_terms",
    "rank2_equal_slope_combination",
]


def M(r_list, lam):
    """sum_{j<l} (r_j + r_{j+1}) {(r_1+...+r_j) lam}, {x} = x - floor(x)."""
    if not r_list:
        raise GeometryError("M requires a nonempty rank list")
    lam = qq(lam)
    total = qq(0)
    partial = 0
    for j in range(len(r_list) - 1):
        partial += r_list[j]
        total += qq(r_list[j] + r_list[j + 1]) * qfrac(partial * lam)
    return total


def filtration_weight(pieces, J, surface):
    """(w-power weight, 1/|Aut| factor) of an extended HN filtration with the
    given ordered quotient classes: weight w^(-sum_{i<j} r_i r_j (mu_j-mu_i).K)
    and 1/prod m_a! over groups of equal reduced Hilbert polynomial."""
    if not pieces:
        raise GeometryError("empty filtration")
    for a, b in zip(pieces, pieces[1:]):
        if slope_order(a, b, J, "gieseker", surface) < 0:
            raise GeometryError("pieces not ordered by decreasing p_J")
    K = surface.canonical_class()
    wexp = qq(0)
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            d = tuple(mj - mi for mi, mj in zip(pieces[i].mu(), pieces[j].mu()))
            wexp -= qq(pieces[i].r * pieces[j].r) * surface.intersect(K, d)
    aut = qq(1)
    run = 1
    for a, b in zip(pieces, pieces[1:]):
        if slope_order(a, b, J, "gieseker", surface) == 0:
            run += 1
        else:
            aut *= _factorial(run)
            run = 1
    aut *= _factorial(run)
    return WRat.w_power(wexp), qq(1) / aut


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _compositions(n):
    """Ordered compositions of n."""
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            out.append((first,) + rest)
    return out


# ---------------------------------------------------------------------------
# Route (a): extended-HN subtraction
# ---------------------------------------------------------------------------

def _lattice_sum(block_ranks, phis, alpha):
    """Closed form of the sum over fibre-slope assignments for one shape.

    Blocks carry strictly decreasing slopes s_1 > ... > s_B with fractional
    parts phis; slots within a block share the block slope.  Writing
    u_c = s_c - s_{c+1} > 0 and eliminating s_B through
    alpha = R s_B + sum_c P_c u_c, the w-weight w^(2 sum_{i<j} r_i r_j
    (s_j - s_i)) factors into geometric series with ratio w^(-2 P_c (R-P_c) R)
    per difference variable, split over residues of u_c mod R."""
    B = len(block_ranks)
    R_blocks = [sum(b) for b in block_ranks]
    R = sum(R_blocks)
    if B == 1:
        s = qq(alpha, R)
        return WRat.from_rational(1 if qfrac(s) == phis[0] else 0)
    P = []
    acc = 0
    for Rb in R_blocks[:-1]:
        acc += Rb
        P.append(acc)
    delta0 = []
    for c in range(B - 1):
        d = qfrac(phis[c] - phis[c + 1])
        delta0.append(d if d else qq(1))
    T = qq(alpha) - qq(R) * phis[-1] - sum(
        (qq(P[c]) * delta0[c] for c in range(B - 1)), qq(0))
    if not is_integral(T):
        return WRat.from_rational(0)
    T = int(T) % R
    total = WRat.from_rational(0)
    geo = WRat.from_rational(1)
    for c in range(B - 1):
        geo = geo * (WRat.from_rational(1)
                     - WRat.w_power(-2 * P[c] * (R - P[c]) * R)).inverse()
    for rhos in iproduct(range(R), repeat=B - 1):
        if sum(P[c] * rhos[c] for c in range(B - 1)) % R != T:
            continue
        wexp = sum((-2 * qq(P[c] * (R - P[c])) * (delta0[c] + rhos[c])
                    for c in range(B - 1)), qq(0))
        total = total + WRat.w_power(wexp)
    return total * geo


def _phi_choices(block):
    g = 0
    for r in block:
        g = gcd(g, r)
    return [qq(c, g) for c in range(g)]


@lru_cache(maxsize=None)
def subtraction_terms(r, alpha):
    """Aggregated extended-HN subtraction weights at the suitable chamber for
    target c1 = alpha f, keyed by the multiset of pieces (rank, f-residue).

    Each ordered rank composition with a pattern of equal-slope blocks and a
    fractional slope per block contributes its lattice sum times
    1/prod(block size)!; these are exactly the term lists written out case by
    case in low rank."""
    out = {}
    for ranks in _compositions(r):
        ell = len(ranks)
        if ell < 2:
            continue
        for pattern in _compositions(ell):
            blocks = []
            pos = 0
            for size in pattern:
                blocks.append(tuple(ranks[pos:pos + size]))
                pos += size
            for phis in iproduct(*[_phi_choices(b) for b in blocks]):
                lam = _lattice_sum(blocks, phis, alpha)
                if lam.is_zero():
                    continue
                aut = qq(1)
                for b in blocks:
                    aut /= _factorial(len(b))
                weight = lam.scale(aut)
                pieces = []
                for b, phi in zip(blocks, phis):
                    for ri in b:
                        pieces.append((ri, int(qq(ri) * phi) % ri))
                key = tuple(sorted(pieces))
                out[key] = out.get(key, WRat.from_rational(0)) + weight
    return {k: v for k, v in out.items() if not v.is_zero()}


def _reduce_to_fibre_class(r, c1):
    """(beta, alpha) residues of c1 mod r on a Hirzebruch surface."""
    return (c1[0] % r, c1[1] % r)


@lru_cache(maxsize=None)
def suitable_genfun_recursive(r, c1, ell, cutoff):
    """h_{r,c1}(J_{eps,1}) on Sigma_ell by extended-HN subtraction from the
    fibre product formula; zero when c1.f is nonzero mod r."""
    r = int(r)
    cutoff = qq(cutoff)
    surface = Surface.hirzebruch(ell)
    beta, alpha = _reduce_to_fibre_class(r, tuple(c1))
    tag = dict(surface=surface, r=r, c1=(beta, alpha), J=SUITABLE,
               flavor=Flavor.OMEGA_BAR)
    if beta != 0:
        return GenFun(series=QSeries.zero(cutoff), **tag)
    pad = qq(1)
    total = fibre_product_genfun(r, (0, alpha), ell, cutoff + pad).series
    for pieces, weight in subtraction_terms(r, alpha).items():
        prod = QSeries({0: weight})
        for (ri, ai) in pieces:
            prod = prod * suitable_genfun_recursive(
                ri, (0, ai), ell, cutoff + pad).series
        total = total - prod
    return GenFun(series=total.truncate(cutoff), **tag)


# ---------------------------------------------------------------------------
# Route (b): solved recursion
# ---------------------------------------------------------------------------

def _inner_tower(R, lam, ell, cutoff):
    """sum over compositions rho of R of w^(2 M(rho, lam)) /
    prod_j (1 - w^(2(rho_j + rho_{j+1}))) * prod_j H_{rho_j, 0}."""
    out = QSeries.zero(cutoff)
    for rho in _compositions(R):
        weight = WRat.w_power(2 * M(rho, lam))
        for a, b in zip(rho, rho[1:]):
            weight = weight / (WRat.from_rational(1)
                               - WRat.w_power(2 * (a + b)))
        prod = QSeries({0: weight})
        for rj in rho:
            prod = prod * fibre_product_genfun(rj, (0, 0), ell, cutoff).series
        out = out + prod
    return out


@lru_cache(maxsize=None)
def suitable_genfun_closed(r, a, ell, cutoff):
    """h_{r,-af}(J_{eps,1}) by the solved recursion: a sum over splittings
    into equal-slope parts (r_i, a_i = r_i a/r) with coefficients
    (-1)^(m-1)/m of products of strict-slope towers."""
    r = int(r)
    a = int(a) % r
    cutoff = qq(cutoff)
    surface = Surface.hirzebruch(ell)
    lam = qq(a, r)
    pad = qq(1)
    total = QSeries.zero(cutoff + pad)
    for ranks in _compositions(r):
        if any((ri * a) % r for ri in ranks):
            continue
        m = len(ranks)
        prod = QSeries({0: WRat.from_rational(qq((-1) ** (m - 1), m))})
        for ri in ranks:
            prod = prod * _inner_tower(ri, lam, ell, cutoff + pad)
        total = total + prod
    alpha = (-a) % r
    return GenFun(surface=surface, r=r, c1=(0, alpha), J=SUITABLE,
                  flavor=Flavor.OMEGA_BAR, series=total.truncate(cutoff))


def rank2_equal_slope_combination():
    """H_2(C_0) + (1/(1-w^4) - 1/2) H_1(C_0)^2: the equal-slope rank-2
    combination of curve stack counts; its genus-g analogue carries the
    intersection-cohomology Betti numbers of moduli of bundles on a curve."""
    from .blocks import total_set_curve
    c = WRat.one_minus_w(4).inverse() - WRat.from_rational(qq(1, 2))
    return total_set_curve(2, 0) + c * total_set_curve(1, 0) ** 2
