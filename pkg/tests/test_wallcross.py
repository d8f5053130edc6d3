import pytest

from bpsinv.exactq import qq
from bpsinv.geometry import (
    ChernVector, Polarization, SUITABLE, NEAR_PULLBACK, Surface,
)
from bpsinv.hn import suitable_genfun_recursive
from bpsinv.series import QSeries, WRat
from bpsinv.wallcross import (
    WallError, chamber_path, genfun_at_polarization, genfun_by_wall_march,
    wallcross_delta,
)

S0 = Surface.hirzebruch(0)
S1 = Surface.hirzebruch(1)


def far_chamber(ell):
    # suitable side of every wall active at small cutoff
    return Polarization.generic(1, 100)


def test_suitable_chamber_reproduces_base():
    for ell in (0, 1, 2):
        for (beta, alpha) in [(0, 0), (0, 1), (1, 0), (1, 1)]:
            h = genfun_at_polarization(2, (beta, alpha), ell,
                                       far_chamber(ell), qq(2))
            base = suitable_genfun_recursive(2, (beta, alpha), ell, qq(2))
            assert h.series.eq_to_cutoff(base.series, qq(2)), (ell, beta, alpha)


def test_on_wall_polarization_rejected():
    # J_{1,1} is on the slope-1 wall for (2, C+f)-type classes on Sigma_0
    with pytest.raises(WallError):
        genfun_at_polarization(2, (1, 1), 0, Polarization.generic(1, 1), qq(3))


def test_window_terms_nonzero_off_suitable():
    h = genfun_at_polarization(2, (1, 0), 1, NEAR_PULLBACK, qq(2))
    base = suitable_genfun_recursive(2, (1, 0), 1, qq(2))
    assert base.series.is_zero()
    assert not h.series.is_zero()


def test_two_routes_rank2():
    targets = [Polarization.generic(13, 9), Polarization.generic(9, 13),
               Polarization.generic(21, 8), NEAR_PULLBACK]
    for ell in (0, 1, 2):
        for (beta, alpha) in [(0, 0), (1, 0), (0, 1), (1, 1)]:
            for J in targets:
                closed = genfun_at_polarization(2, (beta, alpha), ell, J, qq(2))
                marched = genfun_by_wall_march(2, (beta, alpha), ell, J, qq(2))
                assert closed.series.eq_to_cutoff(marched.series, qq(2)), \
                    (ell, beta, alpha, J)


def test_two_routes_rank3():
    targets = [Polarization.generic(13, 9), Polarization.generic(9, 13),
               Polarization.generic(21, 8)]
    for ell in (0, 1, 2):
        for (beta, alpha) in [(0, 0), (1, 0)]:
            for J in targets:
                closed = genfun_at_polarization(3, (beta, alpha), ell, J,
                                                qq(3, 2))
                marched = genfun_by_wall_march(3, (beta, alpha), ell, J,
                                               qq(3, 2))
                assert closed.series.eq_to_cutoff(marched.series, qq(3, 2)), \
                    (ell, beta, alpha, J)


def test_chamber_path_p2_empty():
    g = ChernVector.from_c2(2, (0,), 2, Surface.p2())
    assert chamber_path(g, None, None, Surface.p2()).walls == []


def test_chamber_path_same_chamber_empty():
    g = ChernVector.from_c2(2, (0, 1), 1, S0)
    J1 = Polarization.generic(100, 1)
    J2 = Polarization.generic(200, 1)
    assert chamber_path(g, J1, J2, S0, qq(2)).walls == []


def test_chamber_path_collects_walls():
    g = ChernVector.from_c2(2, (0, 1), 2, S0)
    path = chamber_path(g, SUITABLE, Polarization.generic(1, 1), S0, qq(4))
    slopes = [s for s, _ in path.walls]
    assert slopes == sorted(slopes, reverse=True)
    assert all(s > 1 for s in slopes)
    assert len(slopes) >= 1


def test_wallcross_delta_zero_within_chamber():
    g = ChernVector.from_c2(2, (0, 1), 1, S0)
    J1 = Polarization.generic(100, 1)
    J2 = Polarization.generic(90, 1)
    assert wallcross_delta(g, J1, J2, S0, cutoff=qq(2)).is_zero()


def test_wallcross_delta_antisymmetry():
    g = ChernVector.from_c2(2, (1, 1), 1, S1)
    # chambers adjacent to the slope-1 wall of the (1,-1) direction
    J_hi = Polarization.generic(10, 13)
    J_lo = Polarization.generic(13, 10)
    d1 = wallcross_delta(g, J_hi, J_lo, S1, cutoff=qq(3))
    d2 = wallcross_delta(g, J_lo, J_hi, S1, cutoff=qq(3))
    assert (d1 + d2).is_zero()
    assert not d1.is_zero()


def test_wallcross_delta_matches_closed_route():
    # crossing the single wall changes the class coefficient by the window
    g = ChernVector.from_c2(2, (1, 1), 1, S1)
    J_hi = Polarization.generic(10, 13)
    J_lo = Polarization.generic(13, 10)
    before = genfun_at_polarization(2, (1, 1), 1, J_hi, qq(3))
    after = genfun_at_polarization(2, (1, 1), 1, J_lo, qq(3))
    e = before.exponent_of(ChernVector.from_c2(2, (1, 1), 1, S1))
    jump = after.series.coeff(e) - before.series.coeff(e)
    assert jump == wallcross_delta(g, J_hi, J_lo, S1, cutoff=qq(3))
