"""Exact arithmetic in Z[A, A^-1] and its fraction field.

Everything downstream (projector coefficients, bracket state sums, theta
and tetrahedral network values) lives in this ring.  Coefficients are
Python integers, so there is no overflow; floating point enters only in
:func:`RationalFunc.eval_complex`, which uses mpmath at a configurable
precision.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _int_gcd

import mpmath

from .errors import ParseError, SingularEvaluation


class LaurentPoly:
    """Integer Laurent polynomial in the variable A.

    Stored as a sparse map ``exponent -> coefficient`` with no zero
    coefficients.  Instances are immutable by convention; every operation
    returns a fresh object.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    clean[int(e)] = int(c)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *args):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero():
        return LaurentPoly()

    @staticmethod
    def one():
        return LaurentPoly({0: 1})

    @staticmethod
    def monomial(coeff, exp=0):
        return LaurentPoly({exp: coeff})

    @staticmethod
    def var():
        """The variable A itself."""
        return LaurentPoly({1: 1})

    # -- structure ---------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == {0: 1}

    def is_monomial(self):
        return len(self.coeffs) == 1

    def is_unit(self):
        """True for +-A^k."""
        return len(self.coeffs) == 1 and abs(next(iter(self.coeffs.values()))) == 1

    def degree(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    def valuation(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(self.coeffs)

    def trailing(self):
        """(exponent, coefficient) of the lowest-degree term."""
        v = self.valuation()
        return v, self.coeffs[v]

    def leading(self):
        d = self.degree()
        return d, self.coeffs[d]

    def content(self):
        """gcd of the integer coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.coeffs.values():
            g = _int_gcd(g, abs(c))
            if g == 1:
                return 1
        return g

    def term_count(self):
        return len(self.coeffs)

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LaurentPoly()
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if self.is_unit():
                e, c = self.leading()
                return LaurentPoly({n * e: 1 if (c == 1 or n % 2 == 0) else -1})
            raise ValueError("negative powers only for units; use RationalFunc")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by A^k."""
        return _raw({e + k: c for e, c in self.coeffs.items()})

    def mirror(self):
        """Substitute A -> A^-1."""
        return _raw({-e: c for e, c in self.coeffs.items()})

    def scale(self, k):
        k = int(k)
        if k == 0:
            return LaurentPoly()
        return _raw({e: c * k for e, c in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    # -- evaluation ---------------------------------------------------

    def __call__(self, x):
        """Evaluate at x (int, Fraction, complex, mpmath types)."""
        total = 0
        for e, c in self.coeffs.items():
            total = total + c * x ** e
        return total

    def eval_mp(self, z):
        """Evaluate at an mpmath complex number under the current precision."""
        total = mpmath.mpc(0)
        for e in sorted(self.coeffs):
            total += self.coeffs[e] * z ** e
        return total

    # -- exact division ----------------------------------------------

    def divides(self, other):
        try:
            other.exact_div(self)
            return True
        except ValueError:
            return False

    def exact_div(self, other):
        """Exact quotient self / other; raises ValueError if not divisible."""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        v_s, v_o = self.valuation(), other.valuation()
        num = _dense(self)
        den = _dense(other)
        q, r = _dense_divmod(num, den)
        if any(r):
            raise ValueError("not divisible")
        return _from_dense(q, v_s - v_o)

    # -- text form ----------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            parts.append("%d*A^%d" % (self.coeffs[e], e))
        return " + ".join(parts)

    def __repr__(self):
        return "LaurentPoly(%s)" % str(self)


def _raw(coeffs):
    """Build a LaurentPoly from an already-clean dict (no zero values)."""
    p = LaurentPoly.__new__(LaurentPoly)
    object.__setattr__(p, "coeffs", coeffs)
    return p


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    raise TypeError("cannot coerce %r to LaurentPoly" % (x,))


_TERM_RE = re.compile(r"^(-?\d+)\*A\^(-?\d+)$")


def parse_poly(text):
    """Parse the textual form produced by str(LaurentPoly).

    Terms look like ``c*A^e`` joined by `` + ``; the zero polynomial is
    ``0``.  Parsing and printing round-trip exactly.
    """
    text = text.strip()
    if text == "0":
        return LaurentPoly()
    out = {}
    for part in text.split("+"):
        part = part.strip()
        m = _TERM_RE.match(part)
        if not m:
            raise ParseError("bad polynomial term: %r" % part)
        c, e = int(m.group(1)), int(m.group(2))
        out[e] = out.get(e, 0) + c
    return LaurentPoly(out)


# -- dense helpers for gcd / division (ordinary polynomials in A) -----


def _dense(p):
    """Coefficient list of A^-valuation * p, constant term first."""
    v = p.valuation()
    d = p.degree()
    out = [0] * (d - v + 1)
    for e, c in p.coeffs.items():
        out[e - v] = c
    return out


def _from_dense(lst, shift=0):
    return LaurentPoly({i + shift: c for i, c in enumerate(lst) if c})


def _dense_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_divmod(num, den):
    """Exact-integer polynomial division with remainder (den leading != 0)."""
    num = list(num)
    den = _dense_trim(list(den))
    q = [0] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c == 0:
            continue
        if c % lead:
            # not divisible over Z at this step; signal via remainder
            break
        f = c // lead
        q[i] = f
        for j, dc in enumerate(den):
            num[i + j] -= f * dc
    return q, _dense_trim(num)


def _dense_content(a):
    g = 0
    for c in a:
        g = _int_gcd(g, abs(c))
    return g or 1


def _dense_primitive(a):
    g = _dense_content(a)
    return [c // g for c in a], g


def _dense_pseudo_rem(a, b):
    """Pseudo-remainder of a by b (b nonzero), over Z."""
    a = _dense_trim(list(a))
    b = _dense_trim(list(b))
    if not b:
        raise ZeroDivisionError
    d = b[-1]
    while len(a) >= len(b) and a:
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1]
        shift = len(a) - len(b)
        a = [c * d for c in a]
        for j, bc in enumerate(b):
            a[shift + j] -= factor * bc
        a = _dense_trim(a)
    return a


def poly_gcd(p, q):
    """gcd in Z[A, A^-1], canonicalized to valuation 0, positive trailing
    coefficient.  Computed by a primitive pseudo-remainder sequence on the
    monomial-shifted representatives."""
    if p.is_zero():
        return _canon_gcd(q)
    if q.is_zero():
        return _canon_gcd(p)
    a, ca = _dense_primitive(_dense(p))
    b, cb = _dense_primitive(_dense(q))
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = _dense_pseudo_rem(a, b)
        if not r:
            break
        r, _ = _dense_primitive(r)
        a, b = b, r
    g = _from_dense(b)
    g = g.scale(_int_gcd(ca, cb))
    return _canon_gcd(g)


def _canon_gcd(p):
    if p.is_zero():
        return p
    v, t = p.trailing()
    p = p.shift(-v)
    if p.coeffs[0] < 0:
        p = -p
    return p


# -- quantum integers ------------------------------------------------


def qint(n):
    """Quantum integer [n] = (A^2n - A^-2n)/(A^2 - A^-2) as a Laurent
    polynomial: sum of A^(2(n-1-2t)) for t = 0..n-1.  qint(0) = 0."""
    if n < 0:
        raise ValueError("qint needs n >= 0")
    return LaurentPoly({2 * (n - 1 - 2 * t): 1 for t in range(n)})


def loop_value():
    """Value of a null-homotopic loop: -A^2 - A^-2."""
    return LaurentPoly({2: -1, -2: -1})


def unknot_colored(n):
    """Bracket of the n-colored unknot: (-1)^n [n+1]."""
    if n < 0:
        raise ValueError("color must be >= 0")
    p = qint(n + 1)
    return p if n % 2 == 0 else -p


def qfact(n):
    """Quantum factorial [n]! = [1][2]...[n]."""
    out = LaurentPoly.one()
    for k in range(2, n + 1):
        out = out * qint(k)
    return out


# -- fraction field --------------------------------------------------


class RationalFunc:
    """Quotient of integer Laurent polynomials, kept in reduced form.

    Reduced means gcd(num, den) is a unit and den is normalized to
    valuation 0 with a positive lowest-degree coefficient (and positive
    integer content pulled out).  Equality is structural, which the
    normalization makes equivalent to cross-multiplication equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        num = _coerce(num)
        den = LaurentPoly.one() if den is None else _coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *args):
        raise AttributeError("RationalFunc is immutable")

    @staticmethod
    def zero():
        return RationalFunc(LaurentPoly.zero())

    @staticmethod
    def one():
        return RationalFunc(LaurentPoly.one())

    @staticmethod
    def from_fraction(fr):
        return RationalFunc(LaurentPoly.monomial(fr.numerator),
                            LaurentPoly.monomial(fr.denominator))

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_laurent(self):
        return self.den.is_one()

    def as_laurent(self):
        """The underlying LaurentPoly; raises if the denominator is not 1."""
        if not self.den.is_one():
            raise ValueError("not a Laurent polynomial: %s" % self)
        return self.num

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce_rf(other)
        if self.den == other.den:
            return RationalFunc(self.num + other.num, self.den)
        return RationalFunc(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-_coerce_rf(other))

    def __rsub__(self, other):
        return _coerce_rf(other) + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def __pow__(self, n):
        if n < 0:
            return RationalFunc.one() / self ** (-n)
        out = RationalFunc.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = _coerce_rf(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def mirror(self):
        return RationalFunc(self.num.mirror(), self.den.mirror())

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return "(%s) / (%s)" % (self.num, self.den)

    def __repr__(self):
        return "RationalFunc(%s)" % str(self)

    # -- evaluation ---------------------------------------------------

    def eval_complex(self, z, digits=60):
        """Evaluate at the complex number z to `digits` significant digits.

        The (already reduced) numerator and denominator are evaluated
        separately with guard precision, then divided.  Raises
        :class:`SingularEvaluation` if the reduced denominator vanishes at
        z within working precision.
        """
        return eval_complex(self, z, digits)

    def series_truncate(self, order):
        return series_truncate(self, order)


def _coerce_rf(x):
    if isinstance(x, RationalFunc):
        return x
    if isinstance(x, (LaurentPoly, int)):
        return RationalFunc(_coerce(x), LaurentPoly.one())
    if isinstance(x, Fraction):
        return RationalFunc.from_fraction(x)
    raise TypeError("cannot coerce %r to RationalFunc" % (x,))


def _reduce(num, den):
    if num.is_zero():
        return num, LaurentPoly.one()
    # unit denominators need no gcd
    if not den.is_unit():
        g = poly_gcd(num, den)
        if not g.is_one():
            num = num.exact_div(g)
            den = den.exact_div(g)
    # integer content
    cg = _int_gcd(num.content(), den.content())
    if cg > 1:
        num = _raw({e: c // cg for e, c in num.coeffs.items()})
        den = _raw({e: c // cg for e, c in den.coeffs.items()})
    # canonical unit: den valuation 0, positive trailing coefficient
    v, t = den.trailing()
    if v:
        den = den.shift(-v)
        num = num.shift(-v)
    if den.coeffs[0] < 0:
        den = -den
        num = -num
    return num, den


def _mp_guard(f, digits):
    """Working precision for evaluating f to `digits` significant digits."""
    bits = 0
    for p in (f.num, f.den):
        for c in p.coeffs.values():
            bits = max(bits, abs(c).bit_length())
    # decimal digits of the largest coefficient plus slack for cancellation
    return digits + bits // 3 + 15


def eval_complex(f, z, digits=60):
    """High-precision evaluation of a RationalFunc at a complex point."""
    f = _coerce_rf(f)
    with mpmath.workdps(_mp_guard(f, digits)):
        zz = mpmath.mpc(z)
        if f.num.is_zero():
            return mpmath.mpc(0)
        den_val = f.den.eval_mp(zz)
        den_scale = sum(abs(c) * abs(zz) ** e for e, c in f.den.coeffs.items())
        if abs(den_val) <= den_scale * mpmath.mpf(10) ** (-(digits + 5)):
            raise SingularEvaluation(
                "denominator %s vanishes at %s within working precision"
                % (f.den, zz))
        num_val = f.num.eval_mp(zz)
        result = num_val / den_val
    with mpmath.workdps(digits):
        return +result


def series_truncate(f, order):
    """Laurent expansion of f around A -> 0, exact through exponent `order`.

    Requires the denominator to have a nonzero lowest-degree term (always
    true after reduction).  Returns the truncation as a LaurentPoly.
    """
    f = _coerce_rf(f)
    if f.num.is_zero():
        return LaurentPoly.zero()
    v_num = f.num.valuation()
    v_den = f.den.valuation()
    lead = v_num - v_den
    n_terms = order - lead + 1
    if n_terms <= 0:
        return LaurentPoly.zero()
    num = _dense(f.num)
    den = _dense(f.den)
    # power-series division: den[0] is the trailing coefficient, nonzero
    out = []
    acc = list(num) + [0] * max(0, n_terms - len(num))
    d0 = den[0]
    for k in range(n_terms):
        c = Fraction(acc[k], d0)
        out.append(c)
        for j in range(1, len(den)):
            if k + j < len(acc):
                acc[k + j] -= c * den[j]
    coeffs = {}
    for k, c in enumerate(out):
        if c:
            if c.denominator != 1:
                raise ValueError("series coefficients not integral; "
                                 "clear content first")
            coeffs[lead + k] = int(c)
    return LaurentPoly(coeffs)
