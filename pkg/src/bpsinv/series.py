"""Exact series substrate: Laurent polynomials and rational functions in the
refinement variable v (v^2 = w), and sparse truncated q-series over that field.

Everything here is exact; no floating point enters anywhere.  Values are
immutable after construction and safe to share across threads.
"""

from .exactq import qq, is_integral

__all__ = ["VPoly", "WRat", "QSeries", "SeriesError", "NonInvertibleError"]


class SeriesError(ValueError):
    pass


class NonInvertibleError(SeriesError):
    pass


# Stored q-exponent denominators must divide this (1/24 from eta, 1/8 from
# theta, 1/3 and 1/4 from the blow-up lattice sums and wall q-shifts).
QEXP_DENOMINATOR_BOUND = 24


# ---------------------------------------------------------------------------
# Laurent polynomials in v
# ---------------------------------------------------------------------------

class VPoly:
    """Laurent polynomial in v with rational coefficients, v^2 = w.

    Integer powers of w sit on even v-exponents; half-integer powers of w on
    odd ones.  Zero coefficients are never stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = qq(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def term(coeff, vexp=0):
        return VPoly({int(vexp): qq(coeff)})

    @staticmethod
    def w_power(j):
        """w^j as a Laurent polynomial; j may be a half-integer."""
        e = qq(2) * qq(j)
        if not is_integral(e):
            raise SeriesError("w-power %s is not a half-integer" % (j,))
        return VPoly({int(e): qq(1)})

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def items(self):
        return self._c.items()

    def coeff(self, vexp):
        return self._c.get(int(vexp), qq(0))

    @property
    def min_exp(self):
        return min(self._c)

    @property
    def max_exp(self):
        return max(self._c)

    def is_even_support(self):
        """True iff supported on integer w-powers only."""
        return all(e % 2 == 0 for e in self._c)

    def is_one(self):
        return len(self._c) == 1 and self._c.get(0) == 1

    def is_monomial(self):
        return len(self._c) == 1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return VPoly(c)

    def __neg__(self):
        return VPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, VPoly):
            if not self._c or not other._c:
                return VPoly()
            a, b = self._c, other._c
            if len(a) > len(b):
                a, b = b, a
            c = {}
            for ea, va in a.items():
                for eb, vb in b.items():
                    e = ea + eb
                    s = c.get(e, 0) + va * vb
                    if s:
                        c[e] = s
                    else:
                        c.pop(e, None)
            return VPoly(c)
        return self.scale(other)

    def scale(self, k):
        k = qq(k)
        if not k:
            return VPoly()
        return VPoly({e: v * k for e, v in self._c.items()})

    def shift(self, vexp):
        """Multiply by v^vexp."""
        if not vexp:
            return self
        return VPoly({e + vexp: v for e, v in self._c.items()})

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            raise SeriesError("negative VPoly power; use WRat")
        out = VPoly.term(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- maps ----------------------------------------------------------------

    def conjugate(self):
        """v -> v^-1 (w -> w^-1)."""
        return VPoly({-e: v for e, v in self._c.items()})

    def subs_plain(self, m):
        """q-free part of (w -> w^m): v -> v^m."""
        return VPoly({e * m: v for e, v in self._c.items()})

    def subs_multicover(self, m):
        """w -> -(-w)^m on integer-w support (w^j -> (-1)^(j(m+1)) w^(jm))."""
        if not self.is_even_support():
            raise SeriesError("multicover substitution on half-integer w-support")
        sign = -1 if m % 2 == 0 else 1
        c = {}
        for e, v in self._c.items():
            j = e // 2
            c[e * m] = v if (sign == 1 or j % 2 == 0) else -v
        return VPoly(c)

    def eval_w_one(self):
        """Value at w = 1 (v = 1)."""
        return sum(self._c.values(), qq(0))

    # -- exact division / gcd -----------------------------------------------

    def _dense(self):
        """(min_exp, [coeffs...]) dense view; poly must be nonzero."""
        lo, hi = self.min_exp, self.max_exp
        out = [qq(0)] * (hi - lo + 1)
        for e, v in self._c.items():
            out[e - lo] = v
        return lo, out

    def div_exact(self, other):
        """Exact division; raises SeriesError when the division is inexact."""
        if other.is_zero():
            raise ZeroDivisionError("VPoly division by zero")
        if self.is_zero():
            return VPoly()
        if other.is_monomial():
            ((e, v),) = other._c.items()
            inv = 1 / v
            return VPoly({k - e: x * inv for k, x in self._c.items()})
        alo, a = self._dense()
        blo, b = other._dense()
        if len(a) < len(b):
            raise SeriesError("inexact VPoly division")
        q = [qq(0)] * (len(a) - len(b) + 1)
        lead = b[-1]
        for i in range(len(a) - len(b), -1, -1):
            coef = a[i + len(b) - 1] / lead
            q[i] = coef
            if coef:
                for j, bj in enumerate(b):
                    a[i + j] -= coef * bj
        if any(a):
            raise SeriesError("inexact VPoly division")
        return VPoly({alo - blo + i: v for i, v in enumerate(q) if v})

    @staticmethod
    def gcd(a, b):
        """Monic-by-leading gcd of the polynomial parts; v-power content is
        stripped, so the result always has trailing exponent 0."""
        if a.is_zero():
            return b._strip_monic()
        if b.is_zero():
            return a._strip_monic()
        fa = _to_primitive_int(a)
        fb = _to_primitive_int(b)
        g = _int_poly_gcd(fa, fb)
        return VPoly({i: qq(v) for i, v in enumerate(g) if v})._strip_monic()

    def _strip_monic(self):
        if self.is_zero():
            return self
        p = self.shift(-self.min_exp)
        return p.scale(1 / p._c[p.max_exp])

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, VPoly) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def __repr__(self):
        if not self._c:
            return "0"
        bits = []
        for e in sorted(self._c):
            v = self._c[e]
            if e == 0:
                bits.append(str(v))
            elif e % 2 == 0:
                bits.append("%s*w^%d" % (v, e // 2))
            else:
                bits.append("%s*w^(%d/2)" % (v, e))
        return " + ".join(bits)


def _to_primitive_int(p):
    """Dense primitive integer coefficient list of the polynomial part."""
    lo, dense = p._dense()
    den = 1
    for v in dense:
        if v:
            d = v.denominator
            den = den * d // _int_gcd(den, d)
    ints = [int(v * den) for v in dense]
    g = 0
    for v in ints:
        g = _int_gcd(g, abs(v))
    return [v // g for v in ints]


def _int_gcd(a, b):
    a, b = int(a), int(b)
    while b:
        a, b = b, a % b
    return a


def _int_poly_gcd(a, b):
    """Primitive PRS gcd for dense integer coefficient lists."""
    a = _trim(a)
    b = _trim(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        r = _trim(r)
        if r:
            g = 0
            for v in r:
                g = _int_gcd(g, abs(v))
            r = [v // g for v in r]
        a, b = b, r
    if a and a[-1] < 0:
        a = [-v for v in a]
    return a


def _trim(p):
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return p[:n]


def _pseudo_rem(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        a = _trim(a)
        if len(a) - 1 < db:
            break
        la = a[-1]
        shift = len(a) - 1 - db
        a = [v * lb for v in a]
        for j in range(db + 1):
            a[shift + j] -= la * b[j]
        a = _trim(a)
        if not a:
            break
    return a


# ---------------------------------------------------------------------------
# Rational functions of v
# ---------------------------------------------------------------------------

_VP_ONE = VPoly({0: 1})


class WRat:
    """Element of the fraction field Q(v), v^2 = w.

    Canonical form: gcd(num, den) = 1, den is a genuine polynomial with
    nonzero constant term and leading coefficient +1 (any v-monomial content
    lives in the numerator).  Equal values therefore have equal
    representations, making hashing and caching deterministic.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = _VP_ONE
        if den.is_zero():
            raise ZeroDivisionError("WRat with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rational(x):
        x = qq(x)
        if not x:
            return WRAT_ZERO
        return WRat(VPoly.term(x), _VP_ONE, _reduced=True)

    @staticmethod
    def w_power(j):
        return WRat(VPoly.w_power(j), _VP_ONE, _reduced=True)

    @staticmethod
    def one_minus_w(j):
        """1 - w^j (j integer, possibly negative)."""
        return WRat.from_rational(1) - WRat.w_power(j)

    # -- structure -----------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def as_vpoly(self):
        if not self.den.is_one():
            raise SeriesError("WRat is not a Laurent polynomial")
        return self.num

    def is_even_support(self):
        return self.num.is_even_support() and self.den.is_even_support()

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return WRat(self.num + other.num, self.den)
        g = VPoly.gcd(self.den, other.den)
        if g.is_one():
            return WRat(self.num * other.den + other.num * self.den,
                        self.den * other.den)
        d1 = self.den.div_exact(g)
        d2 = other.den.div_exact(g)
        num = self.num * d2 + other.num * d1
        return WRat(num, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return WRat(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return WRAT_ZERO
        if self.den.is_one() and other.den.is_one():
            return WRat(self.num * other.num, _VP_ONE, _reduced=True)
        g1 = VPoly.gcd(self.num, other.den)
        g2 = VPoly.gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else self.num.div_exact(g1)
        d2 = other.den if g1.is_one() else other.den.div_exact(g1)
        n2 = other.num if g2.is_one() else other.num.div_exact(g2)
        d1 = self.den if g2.is_one() else self.den.div_exact(g2)
        return WRat(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero WRat")
        return WRat(self.den, self.num)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        out = WRAT_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, k):
        k = qq(k)
        if not k:
            return WRAT_ZERO
        return WRat(self.num.scale(k), self.den)

    # -- maps -----------------------------------------------------------------

    def conjugate(self):
        return WRat(self.num.conjugate(), self.den.conjugate())

    def substitute(self, m, multicover=False):
        if multicover:
            return WRat(self.num.subs_multicover(m), self.den.subs_multicover(m))
        return WRat(self.num.subs_plain(m), self.den.subs_plain(m))

    def is_palindromic(self):
        return self.conjugate() == self

    def eval_w_one(self):
        dv = self.den.eval_w_one()
        if not dv:
            raise ZeroDivisionError("pole at w = 1")
        return self.num.eval_w_one() / dv

    # -- comparisons -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, WRat):
            try:
                other = _coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        # canonical form makes structural equality sound; cross-multiplication
        # would decide it too but is never needed
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        if self.den.is_one():
            return "(%s)" % (self.num,)
        return "(%s)/(%s)" % (self.num, self.den)


def _coerce(x):
    if isinstance(x, WRat):
        return x
    if isinstance(x, VPoly):
        return WRat(x)
    return WRat.from_rational(x)


def _reduce(num, den):
    if num.is_zero():
        return VPoly(), _VP_ONE
    shift = -den.min_exp
    num = num.shift(shift)
    den = den.shift(shift)
    if not den.is_one():
        g = VPoly.gcd(num, den)
        if not g.is_one():
            num = num.div_exact(g)
            den = den.div_exact(g)
    lc = den.coeff(den.max_exp)
    if lc != 1:
        inv = 1 / lc
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


WRAT_ZERO = WRat(VPoly(), _VP_ONE, _reduced=True)
WRAT_ONE = WRat(_VP_ONE, _VP_ONE, _reduced=True)


# ---------------------------------------------------------------------------
# Sparse truncated q-series
# ---------------------------------------------------------------------------

class QSeries:
    """Sparse series in q with rational exponents and WRat coefficients.

    ``cutoff`` is an exclusive upper bound on stored exponents; ``None`` means
    the series is exact (a finite q-Laurent polynomial).  Arithmetic
    propagates cutoffs pessimistically and never fabricates precision.
    """

    __slots__ = ("terms", "cutoff")

    def __init__(self, terms=None, cutoff=None):
        self.cutoff = None if cutoff is None else qq(cutoff)
        t = {}
        if terms:
            for e, c in terms.items():
                e = qq(e)
                if not isinstance(c, WRat):
                    c = _coerce(c)
                if c.is_zero():
                    continue
                if self.cutoff is not None and e >= self.cutoff:
                    continue
                if QEXP_DENOMINATOR_BOUND % int(e.denominator):
                    raise SeriesError(
                        "q-exponent denominator %s outside tracked bound"
                        % (e.denominator,))
                t[e] = c
        self.terms = t

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def zero(cutoff=None):
        return QSeries({}, cutoff)

    @staticmethod
    def one(cutoff=None):
        return QSeries({qq(0): WRAT_ONE}, cutoff)

    @staticmethod
    def monomial(exp, coeff=1, cutoff=None):
        return QSeries({qq(exp): _coerce(coeff)}, cutoff)

    # -- structure ---------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def coeff(self, e):
        return self.terms.get(qq(e), WRAT_ZERO)

    def leading_exponent(self):
        if not self.terms:
            return self.cutoff
        return min(self.terms)

    def leading_coeff(self):
        return self.terms[min(self.terms)]

    # -- arithmetic ----------------------------------------------------------------

    def _merge_cut(self, other):
        if self.cutoff is None:
            return other.cutoff
        if other.cutoff is None:
            return self.cutoff
        return min(self.cutoff, other.cutoff)

    def __add__(self, other):
        cut = self._merge_cut(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, WRAT_ZERO) + c
            if s.is_zero():
                t.pop(e, None)
            else:
                t[e] = s
        return QSeries(t, cut)

    def __neg__(self):
        return QSeries({e: -c for e, c in self.terms.items()}, self.cutoff)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        cut = self._mul_cut(other)
        if not self.terms or not other.terms:
            return QSeries({}, cut)
        t = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                if cut is not None and e >= cut:
                    continue
                p = ca * cb
                if p.is_zero():
                    continue
                s = t.get(e, WRAT_ZERO) + p
                if s.is_zero():
                    t.pop(e, None)
                else:
                    t[e] = s
        return QSeries(t, cut)

    def _mul_cut(self, other):
        # a factor that is exactly zero gives an exact zero product
        if not self.terms and self.cutoff is None:
            return None
        if not other.terms and other.cutoff is None:
            return None
        cands = []
        if self.cutoff is not None:
            cands.append(self.cutoff + other.leading_exponent())
        if other.cutoff is not None:
            cands.append(other.cutoff + self.leading_exponent())
        return min(cands) if cands else None

    def scale(self, k):
        k = _coerce(k)
        if k.is_zero():
            return QSeries({}, self.cutoff)
        return QSeries({e: c * k for e, c in self.terms.items()}, self.cutoff)

    def shift_q(self, de):
        de = qq(de)
        cut = None if self.cutoff is None else self.cutoff + de
        return QSeries({e + de: c for e, c in self.terms.items()}, cut)

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.invert() ** (-n)
        out = QSeries.one(None)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def invert(self, cutoff=None):
        """Multiplicative inverse up to the cutoff; the leading exponent is
        negated.  A zero series is not invertible."""
        if not self.terms:
            raise NonInvertibleError("non-invertible zero series")
        e0 = min(self.terms)
        c0 = self.terms[e0]
        if len(self.terms) == 1 and self.cutoff is None:
            return QSeries({-e0: c0.inverse()}, cutoff)
        if self.cutoff is not None:
            tcut = self.cutoff - 2 * e0
            if cutoff is not None:
                tcut = min(tcut, qq(cutoff))
        elif cutoff is not None:
            tcut = qq(cutoff)
        else:
            raise NonInvertibleError(
                "cannot invert a non-monomial exact series without a cutoff")
        inv0 = c0.inverse()
        # u = self / (c0 q^e0) - 1 has positive leading exponent
        ucut = None if self.cutoff is None else self.cutoff - e0
        u = QSeries({e - e0: c * inv0 for e, c in self.terms.items() if e != e0},
                    ucut)
        p = tcut + e0  # precision of the geometric sum
        out = QSeries.one(p)
        term = QSeries.one(None)
        while u.terms:
            term = (term * (-u)).truncate(p)
            if not term.terms:
                break
            out = out + term
        return QSeries({e - e0: c * inv0 for e, c in out.terms.items()}, tcut)

    def divide(self, other):
        return self * other.invert()

    def truncate(self, cutoff):
        if cutoff is None:
            return self
        cutoff = qq(cutoff)
        cut = cutoff if self.cutoff is None else min(self.cutoff, cutoff)
        return QSeries({e: c for e, c in self.terms.items() if e < cut}, cut)

    # -- maps -------------------------------------------------------------------

    def substitute(self, m, multicover=False):
        """q -> q^m together with w -> w^m (plain) or w -> -(-w)^m (multicover)."""
        m = int(m)
        if m < 1:
            raise SeriesError("substitution requires m >= 1")
        cut = None if self.cutoff is None else self.cutoff * m
        return QSeries(
            {e * m: c.substitute(m, multicover) for e, c in self.terms.items()},
            cut)

    def map_coeffs(self, f):
        return QSeries({e: f(c) for e, c in self.terms.items()}, self.cutoff)

    # -- comparisons ---------------------------------------------------------------

    def eq_to_cutoff(self, other, cutoff=None):
        """Equality of all coefficients below the tightest available cutoff."""
        cuts = [c for c in (self.cutoff, other.cutoff, cutoff) if c is not None]
        cut = min(cuts) if cuts else None
        exps = set(self.terms) | set(other.terms)
        for e in exps:
            if cut is not None and e >= cut:
                continue
            if self.coeff(e) != other.coeff(e):
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, QSeries) and self.terms == other.terms
                and self.cutoff == other.cutoff)

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.cutoff))

    def __repr__(self):
        bits = ["q^(%s)*%r" % (e, self.terms[e]) for e in sorted(self.terms)[:6]]
        if len(self.terms) > 6:
            bits.append("...")
        return "QSeries[%s | cutoff=%s]" % (" + ".join(bits) or "0", self.cutoff)
