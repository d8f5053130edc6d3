"""Surface data, Chern vectors, stability orderings, walls and suitability.

Surfaces are the Hirzebruch surfaces S_ell (basis C, f of H^2 with
C^2 = -ell, f^2 = 0, C.f = 1) and the projective plane (basis H, H^2 = 1).
Classes are integer tuples in the surface basis; slopes are rational tuples.
"""

from dataclasses import dataclass

from .exactq import qq, is_integral

__all__ = [
    "Surface", "ChernVector", "EpsRational", "Polarization", "GeometryError",
    "discriminant", "discriminant_of_filtration", "expected_dimension",
    "twist_reduce", "gieseker_constant", "slope_order", "wall_locus",
    "is_suitable", "walls_between",
]

LESS, EQUAL, GREATER = -1, 0, 1


class GeometryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Surfaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Surface:
    """'hirzebruch' with parameter ell, or 'p2' (ell ignored)."""

    kind: str
    ell: int = 0

    @staticmethod
    def hirzebruch(ell):
        if ell < 0:
            raise GeometryError("Hirzebruch parameter must be >= 0")
        return Surface("hirzebruch", int(ell))

    @staticmethod
    def p2():
        return Surface("p2")

    @property
    def rank2(self):
        return self.kind == "hirzebruch"

    @property
    def b2(self):
        return 2 if self.rank2 else 1

    @property
    def chi_top(self):
        return 4 if self.rank2 else 3

    chi_O = 1

    def intersect(self, u, v):
        """Intersection pairing of two H^2 classes (rational entries allowed)."""
        if self.rank2:
            (x1, y1), (x2, y2) = u, v
            return -self.ell * qq(x1) * qq(x2) + qq(x1) * qq(y2) + qq(y1) * qq(x2)
        return qq(u[0]) * qq(v[0])

    def canonical_class(self):
        if self.rank2:
            return (-2, -2 - self.ell)
        return (-3,)

    def zero_class(self):
        return (0, 0) if self.rank2 else (0,)

    def __str__(self):
        return "hirzebruch:%d" % self.ell if self.rank2 else "p2"


def _vec(u):
    return tuple(qq(x) for x in u)


def _vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vscale(k, u):
    return tuple(qq(k) * a for a in u)


# ---------------------------------------------------------------------------
# Chern vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChernVector:
    """(rank, first Chern class in the surface basis, ch2)."""

    r: int
    c1: tuple
    ch2: object  # rational

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(int(x) for x in self.c1))
        object.__setattr__(self, "ch2", qq(self.ch2))
        if self.r < 1:
            raise GeometryError("rank must be positive")

    @staticmethod
    def from_c2(r, c1, c2, surface):
        c1 = tuple(int(x) for x in c1)
        ch2 = qq(surface.intersect(c1, c1), 2) - qq(c2)
        return ChernVector(r, c1, ch2)

    def c2(self, surface):
        c2 = qq(surface.intersect(self.c1, self.c1), 2) - self.ch2
        if not is_integral(c2):
            raise GeometryError("non-integral c2 for %s" % (self,))
        return int(c2)

    def mu(self):
        return tuple(qq(x, self.r) for x in self.c1)


def discriminant(gamma, surface):
    """Delta = (c2 - (r-1)/(2r) c1^2) / r = mu^2/2 - ch2/r."""
    mu = gamma.mu()
    return qq(surface.intersect(mu, mu), 2) - gamma.ch2 / qq(gamma.r)


def discriminant_of_filtration(pieces, surface):
    """Discriminant of the total class, evaluated through the subobjects of a
    filtration with the given ordered quotients."""
    if not pieces:
        raise GeometryError("empty filtration")
    r = sum(p.r for p in pieces)
    out = sum((qq(p.r, r) * discriminant(p, surface) for p in pieces), qq(0))
    out += filtration_qshift(
        [(p.r, p.mu()) for p in pieces], surface) / qq(r)
    return out


def filtration_qshift(rank_mu_seq, surface):
    """r*Delta(total) - sum_i r_i*Delta_i for an ordered quotient sequence,
    i.e. the cross-term -(1/2) sum_i R_i R_{i-1}/r_i (mu(F_i)-mu(F_{i-1}))^2.

    Depends only on the ranks and slopes.  Nonnegative whenever consecutive
    slope differences pair to zero against an ample class (Hodge index)."""
    shift = qq(0)
    R_prev = 0
    c1_prev = None
    for r_i, mu_i in rank_mu_seq:
        c1_i = _vscale(r_i, mu_i)
        if c1_prev is not None:
            R_i = R_prev + r_i
            d = _vsub(_vscale(qq(1, R_i), _vadd(c1_prev, c1_i)),
                      _vscale(qq(1, R_prev), c1_prev))
            shift -= qq(R_i * R_prev, 2 * r_i) * surface.intersect(d, d)
            c1_prev = _vadd(c1_prev, c1_i)
        else:
            c1_prev = c1_i
        R_prev += r_i
    return shift


def expected_dimension(gamma, surface):
    """2 r^2 Delta - r^2 chi(O) + 1; may be negative (expected-empty)."""
    d = 2 * qq(gamma.r) ** 2 * discriminant(gamma, surface) \
        - qq(gamma.r) ** 2 * surface.chi_O + 1
    if not is_integral(d):
        raise GeometryError("non-integral expected dimension: inconsistent %s"
                            % (gamma,))
    return int(d)


def twist_reduce(gamma, surface=None):
    """Reduce c1 into the fundamental domain {0..r-1} per basis class.

    Returns (reduced ChernVector, twisting line-bundle class L) so that the
    input equals the reduction twisted by L.  The discriminant is unchanged;
    ch2 of the reduced vector is adjusted accordingly."""
    r = gamma.r
    red = tuple(x % r for x in gamma.c1)
    L = tuple((x - y) // r for x, y in zip(gamma.c1, red))
    if surface is None:
        surface = Surface.hirzebruch(0) if len(gamma.c1) == 2 else Surface.p2()
    # ch2(E (x) L^-1) = ch2 - c1.L + r L^2/2, derived from the twist rule
    ch2 = gamma.ch2 - surface.intersect(gamma.c1, L) \
        + qq(r) * qq(surface.intersect(L, L), 2)
    return ChernVector(r, red, ch2), L


def gieseker_constant(gamma, surface):
    """Rank-normalized constant term of the reduced Hilbert polynomial,
    dropping the Gamma-independent parts: ch2/r - K.mu/2."""
    K = surface.canonical_class()
    return gamma.ch2 / qq(gamma.r) - qq(surface.intersect(K, gamma.mu()), 2)


# ---------------------------------------------------------------------------
# Polarizations (with exact infinitesimal parts)
# ---------------------------------------------------------------------------

class EpsRational:
    """a + b*eps with eps an infinitesimal positive; ordered lexicographically."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = qq(a)
        self.b = qq(b)

    def __add__(self, o):
        o = _eps(o)
        return EpsRational(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        o = _eps(o)
        return EpsRational(self.a - o.a, self.b - o.b)

    def __neg__(self):
        return EpsRational(-self.a, -self.b)

    def scale(self, k):
        return EpsRational(self.a * qq(k), self.b * qq(k))

    def sign(self):
        if self.a:
            return 1 if self.a > 0 else -1
        if self.b:
            return 1 if self.b > 0 else -1
        return 0

    def __eq__(self, o):
        o = _eps(o)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return "(%s + %s*eps)" % (self.a, self.b) if self.b else str(self.a)


def _eps(x):
    return x if isinstance(x, EpsRational) else EpsRational(x)


@dataclass(frozen=True)
class Polarization:
    """J_{m,n} = m(C + ell f) + n f with exact (possibly infinitesimal) m, n.

    J_{eps,1} is the suitable chamber near the fibre; J_{1,eps} is the
    chamber adjacent to the pullback J_{1,0} of the hyperplane class of the
    plane; J_{1,0} itself is a boundary point used only for mu-stability."""

    m: EpsRational
    n: EpsRational

    @staticmethod
    def of(m, n):
        m, n = _eps(m), _eps(n)
        if m.sign() <= 0 or n.sign() < 0:
            raise GeometryError("polarization requires m > 0, n >= 0")
        return Polarization(m, n)

    @staticmethod
    def generic(m, n):
        if qq(m) <= 0 or qq(n) <= 0:
            raise GeometryError("J_{m,n} requires m, n > 0")
        return Polarization(EpsRational(m), EpsRational(n))

    def pair(self, u):
        """(x C + y f) . J_{m,n} = x n + y m, as an EpsRational."""
        x, y = u
        return self.n.scale(x) + self.m.scale(y)

    @property
    def is_boundary(self):
        return self.n.sign() == 0

    def slope_key(self):
        return (self.n.a, self.n.b, self.m.a, self.m.b)

    def __str__(self):
        return "J_{%s,%s}" % (self.m, self.n)


SUITABLE = Polarization(EpsRational(0, 1), EpsRational(1))       # J_{eps,1}
NEAR_PULLBACK = Polarization(EpsRational(1), EpsRational(0, 1))  # J_{1,eps}
PULLBACK_H = Polarization(EpsRational(1), EpsRational(0))        # J_{1,0}


# ---------------------------------------------------------------------------
# Stability orderings
# ---------------------------------------------------------------------------

def _mu_J(gamma, J):
    return J.pair(gamma.mu())


def slope_order(g1, g2, J, flavor="gieseker", surface=None):
    """-1/0/+1 comparison of g1 against g2 for mu- or Gieseker stability.

    The Gieseker flavor compares the reduced Hilbert polynomial
    lexicographically: first the slope mu.J, then the rank-normalized
    constant term."""
    if surface is None:
        surface = Surface.hirzebruch(0) if len(g1.c1) == 2 else Surface.p2()
    if surface.rank2:
        s = (_mu_J(g1, J) - _mu_J(g2, J)).sign()
    else:
        d = qq(g1.c1[0], g1.r) - qq(g2.c1[0], g2.r)
        s = 1 if d > 0 else (-1 if d < 0 else 0)
    if s or flavor == "mu":
        return s
    d = gieseker_constant(g1, surface) - gieseker_constant(g2, surface)
    return 1 if d > 0 else (-1 if d < 0 else 0)


def wall_locus(g_sub, g_tot, surface):
    """Slope n/m > 0 where (mu(sub) - mu(tot)).J_{m,n} vanishes, or None.

    Classes proportional to f never produce a wall (f.J = m > 0)."""
    if not surface.rank2:
        return None
    xi = _vsub(g_sub.mu(), g_tot.mu())
    x, y = xi
    if x == 0:
        return None
    s = -y / x
    return s if s > 0 else None


# ---------------------------------------------------------------------------
# Wall enumeration and suitability
# ---------------------------------------------------------------------------

def _direction_ball(max_minus_sq, ell):
    """Integer directions zeta = (x, y), x >= 1, y <= -1, with
    0 < -zeta^2 = ell x^2 + 2x|y| <= max_minus_sq.  Only such directions can
    host a wall of marginal stability (positive slope |y|/x) or violate the
    suitability sign condition; the minimal -zeta^2 at fixed x is >= 2x, so
    the enumeration is finite."""
    out = []
    x = 1
    while qq(ell) * x * x + 2 * x <= max_minus_sq:
        y = -1
        while qq(ell) * x * x - 2 * x * y <= max_minus_sq:
            out.append((x, y))
            y -= 1
        x += 1
    return out


def _primitive(x, y):
    from math import gcd
    g = gcd(abs(x), abs(y))
    return (x // g, y // g)


def is_suitable(J, gamma, surface=None):
    """Def-style test: J lies on no wall for gamma and every numerically
    allowed subsheaf class has (mu' - mu).f = 0 or matching signs of
    (mu' - mu).f and (mu' - mu).J.  The symbolic near-fibre polarization is
    suitable by construction.  Only numerical classes are tested (rank, c1
    and the Bogomolov bound), a superset of actual subsheaves, so False may
    be conservative."""
    if surface is None:
        surface = Surface.hirzebruch(0)
    if not surface.rank2:
        raise GeometryError("suitability is a Hirzebruch-surface notion")
    if J == SUITABLE:
        return True
    delta = discriminant(gamma, surface)
    if delta < 0:
        return True
    r = gamma.r
    for rp in range(1, r):
        rq = r - rp
        # zeta = rp c1'' - rq c1' = rp c1 - r c1' is integral with
        # zeta = rp c1 mod r; Bogomolov plus the wall term of the filtration
        # discriminant give -zeta^2 <= 2 r rp rq Delta
        bound = 2 * qq(r) * qq(rp * rq) * delta
        res = tuple((rp * x) % r for x in gamma.c1)
        for (x, y) in _direction_ball(bound, surface.ell):
            for sgn in (1, -1):
                if ((sgn * x) % r, (sgn * y) % r) != res:
                    continue
                if J.pair((sgn * x, sgn * y)).sign() != sgn:
                    return False
    return True


def walls_between(gamma, surface, slope_hi, slope_lo, qshift_bound):
    """Walls with slope in the open interval (slope_lo, slope_hi) that can
    carry a crossing term for gamma with q-shift below qshift_bound, sorted
    by decreasing slope.  Returns [(slope, primitive direction)].

    A two-step splitting with slope difference zeta/(rp rq) shifts q by
    (-zeta^2)/(2 r rp rq); longer filtrations shift by at least as much per
    primitive step, so -zeta_prim^2 <= 2 r rp rq qshift_bound is a superset
    bound."""
    r = gamma.r
    if qshift_bound <= 0:
        return []
    bound = max(2 * qq(r) * qq(rp * (r - rp)) * qq(qshift_bound)
                for rp in range(1, r))
    walls = {}
    for (x, y) in _direction_ball(bound, surface.ell):
        s = qq(-y, x)
        if slope_lo < s < slope_hi:
            walls.setdefault(s, _primitive(x, y))
    return sorted(walls.items(), key=lambda t: t[0], reverse=True)
