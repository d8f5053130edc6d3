"""Moving generating functions through the ample cone of a Hirzebruch
surface.

Two independent routes:

* ``genfun_at_polarization``: the explicit closed forms for rank 2 and 3, a
  sum over the sign window of lattice points between the target chamber and
  the suitable chamber.  The rank-3 sum evaluates rank-2 functions at the
  wall-adjacent polarizations J_{|x|,|y|}; when such a point lies on a rank-2
  wall, sgn(0) = 0, so on-wall terms enter with half weight and the rank-2
  function on its wall is the average of the two adjacent chambers.

* ``genfun_by_wall_march``: iterate the two-sided filtration delta wall by
  wall.  Rank-2 piece functions are carried along the path and updated at
  their own walls; equal-slope runs carry Boltzmann factors 1/run!, and the
  run containing a rank-2 piece is what transports that piece's own jump
  into the rank-3 delta.
"""

from functools import lru_cache
from math import isqrt

from .exactq import qq, qfloor, is_integral
from .blocks import rank1_genfun
from .geometry import (
    ChernVector, EpsRational, GeometryError, Polarization, SUITABLE, Surface,
    filtration_qshift, twist_reduce, walls_between,
)
from .hn import suitable_genfun_recursive
from .invariants import Flavor, GenFun
from .series import QSeries, WRat

__all__ = [
    "WallError", "genfun_at_polarization", "genfun_by_wall_march",
    "wallcross_delta", "chamber_path", "ChamberPath",
]


class WallError(GeometryError):
    pass


def _h1(ell, cutoff):
    return rank1_genfun(Surface.hirzebruch(ell), qq(cutoff)).series


# ---------------------------------------------------------------------------
# Closed-form route
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def genfun_at_polarization(r, c1, ell, J, cutoff, _tiebreak_suitable=False):
    """h_{r,c1}(z,tau; Sigma_ell, J) for r <= 3 via the closed window sums.

    J must lie off every wall active below the cutoff; an exact sign tie
    raises WallError unless the internal suitable-side tiebreak is on."""
    r = int(r)
    cutoff = qq(cutoff)
    surface = Surface.hirzebruch(ell)
    beta, alpha = (c1[0] % r, c1[1] % r)
    tag = dict(surface=surface, r=r, c1=(beta, alpha), J=J,
               flavor=Flavor.OMEGA_BAR)
    if r == 1:
        return GenFun(series=_h1(ell, cutoff), **tag)
    if r > 3:
        raise WallError("closed wall-crossing forms cover r <= 3 only")
    base = suitable_genfun_recursive(r, (beta, alpha), ell, cutoff + 1).series
    if J == SUITABLE:
        return GenFun(series=base.truncate(cutoff), **tag)
    if J.is_boundary:
        raise WallError("polarization on wall")
    total = base
    Ebound = cutoff + qq(1, 2)
    # the displayed sums are written for the class beta C - alpha_f f
    af = (-alpha) % r
    if r == 2:
        h1sq = _h1(ell, cutoff + 1) ** 2
        for x, y, s1, s2 in _window(2, beta, af, ell, J, Ebound,
                                    _tiebreak_suitable):
            X = (ell - 2) * x + 2 * y
            E = qq(ell * x * x, 4) + qq(x * y, 2)
            coeff = (WRat.w_power(-X) - WRat.w_power(X)).scale(qq(s1 - s2, 4))
            total = total + (h1sq * QSeries({E: coeff}))
    else:
        h1 = _h1(ell, cutoff + 1)
        for x, y, s1, s2 in _window(3, beta, af, ell, J, Ebound,
                                    _tiebreak_suitable):
            X = (ell - 2) * x + 2 * y
            E = qq(ell * x * x, 12) + qq(x * y, 6)
            b = (x + 2 * beta) // 3
            a = (y + 2 * af) // 3
            h2 = genfun_at_polarization(
                2, (b % 2, (-a) % 2), ell,
                Polarization.generic(abs(x), abs(y)), cutoff + 1,
                _tiebreak_suitable=True).series
            coeff = (WRat.w_power(-X) - WRat.w_power(X)).scale(qq(s1 - s2, 2))
            total = total + (h2 * h1 * QSeries({E: coeff}))
    return GenFun(series=total.truncate(cutoff), **tag)


def _window(r, beta, alpha, ell, J, Ebound, tiebreak):
    """Active lattice points (x, y) with x = beta, y = alpha mod r whose
    target-side ordering sign sgn(x n - y m) differs from the suitable-side
    sign sgn(x - y eps); yields (x, y, sgn1, sgn2)."""
    m, n = J.m, J.n
    qden = qq(4) if r == 2 else qq(12)
    qcross = qq(2) if r == 2 else qq(6)
    out = []
    for sx in (1, -1):
        k = 0
        while True:
            k += 1
            x = sx * k
            if (x - beta) % r:
                continue
            boundary = qq(k * k) * n.a / m.a
            if qq(ell * k * k) / qden + max(boundary, qq(k)) / qcross > Ebound:
                break
            y = _scan_start(x, alpha, r, m, n)
            while True:
                E = qq(ell * x * x) / qden + qq(x * y) / qcross
                if E > Ebound:
                    break
                s1 = (n.scale(x) - m.scale(y)).sign()
                s2 = EpsRational(x, -y).sign()
                if s1 == 0 and not tiebreak:
                    raise WallError("polarization on wall")
                # on a wall (internal rank-2 evaluations only) sgn(0) = 0:
                # the term enters with half weight, the chamber average
                if s1 != s2:
                    out.append((x, y, s1, s2))
                y += r * sx
    return out


def _scan_start(x, alpha, r, m, n):
    """First y = alpha (mod r) safely on the inactive side of the boundary
    x n = y m; the scan then moves in the direction of increasing q-shift."""
    base = qfloor(qq(x) * n.a / m.a)
    if x > 0:
        start = base - 4 * r
        return start + (alpha - start) % r
    start = base + 4 * r
    return start - (start - alpha) % r


# ---------------------------------------------------------------------------
# Iterated wall-by-wall route
# ---------------------------------------------------------------------------

def _weight_of_sequence(slots, surface):
    """w^( -sum_{i<j} r_i r_j (mu_j - mu_i).K ) for slots [(rank, mu)]."""
    K = surface.canonical_class()
    wexp = qq(0)
    for i in range(len(slots)):
        for j in range(i + 1, len(slots)):
            d = tuple(b - a for a, b in zip(slots[i][1], slots[j][1]))
            wexp -= qq(slots[i][0] * slots[j][0]) * surface.intersect(K, d)
    return WRat.w_power(wexp)


def _integral_class(vec):
    return all(is_integral(v) for v in vec)


def _wall_delta_rank2(c1, omega, surface, h1, bound):
    """Series delta of h_{2,c1} across the wall with primitive direction
    omega, from the high-slope side to the low-slope side:
    sum_{s>0} (w^(s omega.K) - w^(-s omega.K)) q^(s^2(-omega^2)/4) h1^2."""
    mw2 = -(surface.intersect(omega, omega))
    K = surface.canonical_class()
    wK = surface.intersect(omega, K)
    delta = QSeries.zero(None)
    h1sq = h1 * h1
    s = 0
    while True:
        s += 1
        shift = qq(s * s) * mw2 / 4
        if shift > bound:
            break
        c1a = tuple(qq(c + s * o, 2) for c, o in zip(c1, omega))
        if not _integral_class(c1a):
            continue
        coeff = WRat.w_power(s * wK) - WRat.w_power(-s * wK)
        delta = delta + (h1sq * QSeries({shift: coeff}))
    return delta


def _wall_delta_rank3(c1, omega, surface, h1, h2_before, h2_after, bound):
    """Series delta of h_{3,c1} across one wall: the filtration sum over
    tuples of pieces with slopes on the wall line, weakly ordered per side
    with Boltzmann factors 1/run! on equal-slope runs, evaluated with the
    side's piece functions; the difference of the two sides is the jump.
    h2_before/h2_after map reduced rank-2 classes to series per side."""
    mw2 = -(surface.intersect(omega, omega))
    mu = tuple(qq(x, 3) for x in c1)

    def h2_of(c1_vec, table):
        return table[(int(c1_vec[0]) % 2, int(c1_vec[1]) % 2)]

    def side_sum(sigma, h2_table):
        total = QSeries.zero(None)
        # (1)+(2) strict pairs: c1_1 = (c1 + s omega)/3, slopes t1 = s/3,
        # t2 = -s/6; q-shift s^2 (-omega^2)/12
        smax = isqrt(int(12 * bound / mw2)) + 2
        for s in range(-smax, smax + 1):
            if s == 0:
                continue
            c1a = tuple(qq(c + s * o, 3) for c, o in zip(c1, omega))
            if not _integral_class(c1a):
                continue
            c1b = tuple(c - a for c, a in zip(c1, c1a))
            slots = [(1, c1a), (2, tuple(v / 2 for v in c1b))]
            if sigma * s < 0:
                slots.reverse()
            shift = filtration_qshift(slots, surface)
            if shift > bound:
                continue
            total = total + (h2_of(c1b, h2_table) * h1 * QSeries(
                {shift: _weight_of_sequence(slots, surface)}))
        # (1)+(1)+(1) strict triples: c1_i = (c1 + s_i omega)/3, sum s_i = 0
        smax3 = isqrt(int(36 * bound / mw2)) + 6
        for s1 in range(1, smax3 + 1):
            for s2 in range(-smax3, s1):
                s3 = -s1 - s2
                if not s2 > s3:
                    continue
                cs = [tuple(qq(c + s * o, 3) for c, o in zip(c1, omega))
                      for s in (s1, s2, s3)]
                if not all(_integral_class(cv) for cv in cs):
                    continue
                slots = [(1, cv) for cv in cs]
                if sigma < 0:
                    slots.reverse()
                shift = filtration_qshift(slots, surface)
                if shift > bound:
                    continue
                total = total + (h1 * h1 * h1 * QSeries(
                    {shift: _weight_of_sequence(slots, surface)}))
        # (1,1)+(1): identical pair tied at t = sa/3, single at -2 sa/3;
        # the equal-slope run carries the Boltzmann factor 1/2!
        smax2 = isqrt(int(3 * bound / mw2)) + 2
        for sa in range(-smax2, smax2 + 1):
            if sa == 0:
                continue
            c1a = tuple(qq(c + sa * o, 3) for c, o in zip(c1, omega))
            c1b = tuple(qq(c - 2 * sa * o, 3) for c, o in zip(c1, omega))
            if not (_integral_class(c1a) and _integral_class(c1b)):
                continue
            slots = [(1, c1a), (1, c1a), (1, c1b)]
            if sigma * sa < 0:
                slots = [(1, c1b), (1, c1a), (1, c1a)]
            shift = filtration_qshift(slots, surface)
            if shift > bound:
                continue
            total = total + (h1 * h1 * h1 * QSeries(
                {shift: _weight_of_sequence(slots, surface).scale(qq(1, 2))}))
        # equal-slope (1)+(2) run at t = 0: both orders with 1/2! collapse to
        # the full product, which jumps with the rank-2 factor
        if _integral_class(mu):
            c1b = tuple(2 * v for v in mu)
            total = total + (h1 * h2_of(c1b, h2_table))
        return total

    return side_sum(1, h2_before) - side_sum(-1, h2_after)


class ChamberPath:
    """Ordered walls between two polarizations for a fixed class."""

    def __init__(self, start, end, walls):
        self.start = start
        self.end = end
        self.walls = walls  # [(slope, primitive direction)]

    def __repr__(self):
        return "ChamberPath(%s -> %s, %d walls)" % (
            self.start, self.end, len(self.walls))


def _slope_key(J):
    """(rational, eps) part of n/m; the suitable chamber sits above every
    wall slope."""
    if J == SUITABLE or J.m.a == 0:
        return (qq(10 ** 9), qq(0))
    return (J.n.a / J.m.a, J.n.b / J.m.a)


def chamber_path(gamma, J_start, J_end, surface, qshift_bound=qq(6)):
    """Walls strictly between the chambers of J_start and J_end relevant for
    gamma below the q-shift bound; empty on the plane (b2 = 1) and within a
    single chamber."""
    if not surface.rank2:
        return ChamberPath(J_start, J_end, [])
    hi = _slope_key(J_start)
    lo = _slope_key(J_end)
    if hi < lo:
        hi, lo = lo, hi
    walls = []
    for s, prim in walls_between(gamma, surface, qq(10 ** 9), qq(0),
                                 qshift_bound):
        if lo < (s, qq(0)) < hi:
            walls.append((s, prim))
    return ChamberPath(J_start, J_end, walls)


def _wall_is_crossed(slope, J_target):
    if J_target == SUITABLE:
        return False
    d = J_target.n - J_target.m.scale(slope)
    s = d.sign()
    if s == 0:
        raise WallError("target polarization lies on wall at slope %s"
                        % (slope,))
    return s < 0


def genfun_by_wall_march(r, c1, ell, J_target, cutoff):
    """h_{r,c1}(Sigma_ell, J_target) by iterating the two-sided filtration
    delta across every wall between the suitable chamber and the target."""
    r = int(r)
    cutoff = qq(cutoff)
    surface = Surface.hirzebruch(ell)
    beta, alpha = (c1[0] % r, c1[1] % r)
    tag = dict(surface=surface, r=r, c1=(beta, alpha), J=J_target,
               flavor=Flavor.OMEGA_BAR)
    if r == 1:
        return GenFun(series=_h1(ell, cutoff), **tag)
    if r > 3:
        raise WallError("wall marching covers r <= 3 only")
    pad = qq(1)
    h1 = _h1(ell, cutoff + pad)
    bound = cutoff + pad
    dummy = ChernVector.from_c2(r, (beta, alpha), 0, surface)
    wall_list = walls_between(dummy, surface, qq(10 ** 9), qq(0), bound + 1)
    state2 = {key: suitable_genfun_recursive(2, key, ell, cutoff + pad).series
              for key in [(0, 0), (0, 1), (1, 0), (1, 1)]}
    target = suitable_genfun_recursive(r, (beta, alpha), ell,
                                       cutoff + pad).series
    for slope, omega in wall_list:
        if not _wall_is_crossed(slope, J_target):
            continue
        h2_before = dict(state2)
        for key in state2:
            state2[key] = state2[key] + _wall_delta_rank2(
                key, omega, surface, h1, bound)
        if r == 2:
            target = target + _wall_delta_rank2(
                (beta, alpha), omega, surface, h1, bound)
        else:
            target = target + _wall_delta_rank3(
                (beta, alpha), omega, surface, h1, h2_before, state2, bound)
    return GenFun(series=target.truncate(cutoff), **tag)


# ---------------------------------------------------------------------------
# Per-class delta across one wall
# ---------------------------------------------------------------------------

def wallcross_delta(gamma, J, J2, surface, tables=None, cutoff=None):
    """Delta Omegabar(gamma, J -> J2) for adjacent chambers; the two-sided
    filtration sum evaluated at the single wall between them.

    ``tables`` optionally maps "before"/"after" to dicts of reduced rank-2
    classes -> series on the corresponding side of the wall (required for
    r = 3 when a rank-2 piece function is not in the suitable chamber)."""
    if cutoff is None:
        from .geometry import discriminant
        cutoff = gamma.r * discriminant(gamma, surface) + 1
    cutoff = qq(cutoff)
    path = chamber_path(gamma, J, J2, surface, qshift_bound=cutoff + 2)
    if len(path.walls) > 1:
        raise WallError("polarizations are not in adjacent chambers")
    red, _ = twist_reduce(gamma, surface)
    if not path.walls:
        return WRat.from_rational(0)
    slope, omega = path.walls[0]
    forward = _slope_key(J) > _slope_key(J2)
    h1 = _h1(surface.ell, cutoff + 1)
    if gamma.r == 2:
        dser = _wall_delta_rank2(red.c1, omega, surface, h1, cutoff + 1)
    elif gamma.r == 3:
        if tables is None:
            before = _rank2_states_above(slope, surface, h1, cutoff + 1)
            after = {key: before[key] + _wall_delta_rank2(
                key, omega, surface, h1, cutoff + 1) for key in before}
        else:
            before, after = tables["before"], tables["after"]
        dser = _wall_delta_rank3(red.c1, omega, surface, h1, before, after,
                                 cutoff + 1)
    else:
        raise WallError("per-class crossing covers r <= 3 only")
    if not forward:
        dser = -dser
    from .geometry import discriminant
    e = red.r * discriminant(red, surface) - qq(red.r * surface.chi_top, 24)
    return dser.coeff(e)


def _rank2_states_above(slope, surface, h1, bound):
    """Rank-2 series marched from the suitable chamber down to just above the
    given wall slope."""
    ell = surface.ell
    states = {key: suitable_genfun_recursive(2, key, ell, bound).series
              for key in [(0, 0), (0, 1), (1, 0), (1, 1)]}
    dummy = ChernVector.from_c2(2, (0, 0), 0, surface)
    for s, omega in walls_between(dummy, surface, qq(10 ** 9), qq(0),
                                  bound + 1):
        if s <= slope:
            continue
        for key in states:
            states[key] = states[key] + _wall_delta_rank2(
                key, omega, surface, h1, bound)
    return states
