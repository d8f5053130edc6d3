"""Conversions among invariant flavors and extraction of Betti/Euler tables.

Flavors: OMEGA_BAR is the rational multi-cover invariant carried by all
modular generating functions; OMEGA is the integer refined invariant obtained
by inverting the multi-cover sum; STACK / STACK_MU are virtual counts of the
Gieseker / mu semi-stable stacks (stacky coefficients, never tabulated
directly)."""

from dataclasses import dataclass, replace
from enum import Enum
from math import gcd

from .exactq import qq, is_integral
from .geometry import (
    ChernVector, Surface, discriminant, expected_dimension, gieseker_constant,
    twist_reduce,
)
from .series import QSeries, VPoly, WRat

__all__ = [
    "Flavor", "GenFun", "InvariantTable", "TableRow", "InvariantError",
    "omegabar_to_omega", "stack_conversion", "extract_table",
]


class InvariantError(ValueError):
    pass


class Flavor(Enum):
    OMEGA_BAR = "omegabar"
    OMEGA = "omega"
    OMEGA_BAR_MU = "omegabar_mu"
    STACK = "stack"
    STACK_MU = "stack_mu"


@dataclass(frozen=True)
class GenFun:
    """A q-series tagged with its geometric meaning.

    Exponents are r*Delta - r*chi_top(S)/24 over realizable discriminants."""

    surface: Surface
    r: int
    c1: tuple
    J: object          # Polarization or None (P^2, or J-independent data)
    flavor: Flavor
    series: QSeries

    def exponent_of(self, gamma):
        return self.r * discriminant(gamma, self.surface) \
            - qq(self.r * self.surface.chi_top, 24)

    def gamma_of_exponent(self, e):
        """ChernVector at a stored exponent (c1 taken from the tag):
        ch2 = c1^2/(2r) - r*Delta."""
        delta = (qq(e) + qq(self.r * self.surface.chi_top, 24)) / qq(self.r)
        c1sq = self.surface.intersect(self.c1, self.c1)
        ch2 = qq(c1sq) / qq(2 * self.r) - delta * qq(self.r)
        return ChernVector(self.r, self.c1, ch2)

    def coefficient(self, gamma):
        return self.series.coeff(self.exponent_of(gamma))


# ---------------------------------------------------------------------------
# Multi-cover conversion (rational -> integer invariants)
# ---------------------------------------------------------------------------

def _class_divisors(r, c1):
    g = r
    for x in c1:
        g = gcd(g, abs(int(x)))
    return [m for m in range(2, g + 1) if g % m == 0]


def omegabar_to_omega(h: GenFun, lower) -> GenFun:
    """Invert the multi-cover sum: subtract (1/m) * (lower Omega series at
    q -> q^m, w -> -(-w)^m) for every m > 1 dividing (r, c1).

    ``lower`` maps (r', c1'-tuple) to OMEGA-flavor GenFuns on the same
    surface and polarization.  The exponent bookkeeping is exact because the
    discriminant is invariant under scaling the whole Chern vector."""
    if h.flavor != Flavor.OMEGA_BAR:
        raise InvariantError("omegabar_to_omega requires an OMEGA_BAR input")
    series = h.series
    for m in _class_divisors(h.r, h.c1):
        key = (h.r // m, tuple(x // m for x in h.c1))
        red = _reduced_key(key, h.surface)
        if red not in lower:
            raise InvariantError("missing lower-rank Omega input %s" % (red,))
        low = lower[red]
        if low.flavor != Flavor.OMEGA:
            raise InvariantError("lower inputs must be OMEGA flavor")
        series = series - low.series.substitute(m, multicover=True).scale(qq(1, m))
    return replace(h, flavor=Flavor.OMEGA, series=series)


def _reduced_key(key, surface):
    r, c1 = key
    red, _ = twist_reduce(ChernVector(r, c1, 0), surface)
    return (r, red.c1)


# ---------------------------------------------------------------------------
# Stack (virtual Poincare) conversion, per class
# ---------------------------------------------------------------------------

def _p_equal_decompositions(gamma, surface):
    """Ordered tuples of classes with equal reduced Hilbert polynomial
    summing to gamma.  Off walls, p-equality forces equal slopes mu_i = mu,
    so each piece is determined by its rank: mu_i = r_i mu integral and
    ch2_i fixed by the constant term.  Finite because ranks are bounded."""
    r, c1 = gamma.r, gamma.c1
    g = r
    for x in c1:
        g = gcd(g, abs(int(x)))
    step = r // g  # smallest rank with integral slope multiple
    const = gieseker_constant(gamma, surface)
    K = surface.canonical_class()
    mu = gamma.mu()

    def piece(rp):
        c1p = tuple(int(rp * m) for m in mu)
        ch2p = qq(rp) * (const + qq(surface.intersect(K, mu), 2))
        cand = ChernVector(rp, c1p, ch2p)
        # a genuine sheaf class needs integral c2
        try:
            cand.c2(surface)
        except Exception:
            return None
        return cand

    out = []

    def rec(tup, remaining):
        if remaining == 0:
            out.append(tuple(tup))
            return
        rp = step
        while rp <= remaining:
            p = piece(rp)
            if p is not None:
                rec(tup + [p], remaining - rp)
            rp += step
        return

    rec([], r)
    return [t for t in out if len(t) >= 1]


def stack_conversion(inputs, direction, gamma, J, surface) -> WRat:
    """I(Gamma) = sum (1/l!) prod Omegabar(Gamma_i) over p_J-equal ordered
    decompositions (toStack), or the inverse log-type sum with coefficients
    (-1)^(l+1)/l (fromStack).

    ``inputs`` maps ChernVector -> WRat of the source flavor.  Requires every
    decomposition piece to be present."""
    if direction not in ("toStack", "fromStack"):
        raise InvariantError("unknown direction %r" % (direction,))
    total = WRat.from_rational(0)
    for tup in _p_equal_decompositions(gamma, surface):
        ell = len(tup)
        coeff = qq(1)
        for p in tup:
            if p not in inputs:
                if p == gamma:
                    break
                raise InvariantError(
                    "missing decomposition piece %s (unbounded or incomplete "
                    "input table)" % (p,))
        else:
            term = WRat.from_rational(
                qq(1, _factorial(ell)) if direction == "toStack"
                else qq((-1) ** (ell + 1), ell))
            for p in tup:
                term = term * inputs[p]
            total = total + term
            continue
        # gamma itself missing from inputs: only legal if nothing decomposes
        raise InvariantError("inputs lack the class %s itself" % (gamma,))
    return total


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# Betti / Euler tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    c2: int
    delta: object      # rational
    dim: int
    poincare: VPoly    # (w - w^-1) * Omega, a palindromic Laurent polynomial
    betti: tuple       # b_0, b_2, ..., b_{2 dim}
    euler: int


@dataclass(frozen=True)
class InvariantTable:
    surface: Surface
    r: int
    c1: tuple
    rows: tuple


def extract_table(h: GenFun) -> InvariantTable:
    """Per q-exponent of an OMEGA-flavor series: multiply by (w - w^-1),
    demand an integer palindromic Laurent polynomial with nonnegative
    coefficients whose w-span is twice the expected dimension, and read off
    Betti and Euler numbers.  Violations raise InvariantError."""
    if h.flavor != Flavor.OMEGA:
        raise InvariantError("extract_table requires an OMEGA-flavor series")
    wminus = WRat(VPoly({2: 1, -2: -1}))  # w - w^-1
    rows = []
    for e in h.series.support():
        coeff = h.series.terms[e]
        gamma = h.gamma_of_exponent(e)
        c2 = gamma.c2(h.surface)
        dim = expected_dimension(gamma, h.surface)
        poly = coeff * wminus
        if not poly.is_polynomial():
            raise InvariantError(
                "integrality violation at c2=%s: coefficient times (w-w^-1) "
                "is not a Laurent polynomial" % (c2,))
        p = poly.as_vpoly()
        if p.is_zero():
            continue
        if dim < 0:
            raise InvariantError(
                "nonzero invariant at expected-empty class c2=%s (dim %d)"
                % (c2, dim))
        if p.conjugate() != p:
            raise InvariantError("non-palindromic invariant at c2=%s" % (c2,))
        if not p.is_even_support():
            raise InvariantError("half-integer w-support at c2=%s" % (c2,))
        if p.min_exp != -2 * dim or p.max_exp != 2 * dim:
            raise InvariantError(
                "w-span %s..%s does not match dimension %d at c2=%s"
                % (p.min_exp, p.max_exp, dim, c2))
        betti = []
        for i in range(dim + 1):
            b = p.coeff(-2 * dim + 4 * i)
            if not is_integral(b) or b < 0:
                raise InvariantError(
                    "negative or non-integer Betti number at c2=%s" % (c2,))
            betti.append(int(b))
        if any(p.coeff(-2 * dim + 4 * i + 2) for i in range(dim)):
            raise InvariantError("odd Betti number present at c2=%s" % (c2,))
        euler = int(p.eval_w_one())
        rows.append(TableRow(c2=c2, delta=discriminant(gamma, h.surface),
                             dim=dim, poincare=p, betti=tuple(betti),
                             euler=euler))
    rows.sort(key=lambda row: row.c2)
    return InvariantTable(surface=h.surface, r=h.r, c1=h.c1, rows=tuple(rows))
