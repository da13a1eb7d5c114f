"""Exact truncated power series in one and two variables.

Two-variable series are graded by a weighted degree: the monomial
x^i y^j weighs p1*i + p2*j for a fixed pair of positive integer weights
(p1, p2).  A series carries a truncation bound ``trunc``: its coefficients
are exact and complete for every weighted degree <= trunc, and unknown
beyond.  One-variable series are truncated by the plain exponent.

Coefficients are exact rationals (``fractions.Fraction``) for the symbolic
pipeline, or complex floats for the numeric one.  The two kinds are never
mixed silently; convert with :meth:`map_scalars`.

Truncation bookkeeping.  Sums keep the minimum of the operand bounds.  A
product is valid to ``min(f.trunc + ord(g), g.trunc + ord(f))`` where
``ord`` is the smallest degree present (products against a factor of
positive order lose nothing, which is what makes repeated application of a
positive-degree derivation exact).  A partial derivative lowers the bound
by the weight of its variable.
"""

import math
from fractions import Fraction

from .errors import (
    CompositionError,
    ScalarKindError,
    SeriesOrderError,
    WeightMismatchError,
)

#: Truncation bound of an exact polynomial (no unknown tail).
INF = math.inf


def as_scalar(c):
    """Normalize a coefficient: ints become Fractions, floats complexes."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        return complex(c)
    if isinstance(c, complex):
        return c
    raise ScalarKindError("unsupported coefficient type %r" % type(c).__name__)


def scalar_kind(c):
    return "exact" if isinstance(c, Fraction) else "complex"


def _check_kinds(a, b, what):
    ka, kb = a.scalar_kind, b.scalar_kind
    if ka is not None and kb is not None and ka != kb:
        raise ScalarKindError("%s mixes %s and %s coefficients" % (what, ka, kb))


class Series2:
    """Truncated bivariate series with weighted grading.

    coeffs maps exponent pairs (i, j) to nonzero scalars; weights is the
    pair (p1, p2); trunc is the maximum weighted degree retained (INF for
    exact polynomials).
    """

    __slots__ = ("coeffs", "weights", "trunc")

    def __init__(self, coeffs, weights, trunc=INF):
        p1, p2 = weights
        if p1 <= 0 or p2 <= 0:
            raise WeightMismatchError("weights must be positive integers")
        clean = {}
        for (i, j), c in coeffs.items():
            c = as_scalar(c)
            if c == 0:
                continue
            if i < 0 or j < 0:
                raise SeriesOrderError("negative exponent (%d, %d)" % (i, j))
            if p1 * i + p2 * j <= trunc:
                clean[(i, j)] = c
        self.coeffs = clean
        self.weights = (p1, p2)
        self.trunc = trunc

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, weights, trunc=INF):
        return cls({}, weights, trunc)

    @classmethod
    def constant(cls, c, weights, trunc=INF):
        return cls({(0, 0): c}, weights, trunc)

    @classmethod
    def monomial(cls, c, i, j, weights, trunc=INF):
        return cls({(i, j): c}, weights, trunc)

    @classmethod
    def variable(cls, name, weights, trunc=INF):
        if name == "x":
            return cls({(1, 0): 1}, weights, trunc)
        if name == "y":
            return cls({(0, 1): 1}, weights, trunc)
        raise ValueError("unknown variable %r" % name)

    # -- structure ----------------------------------------------------

    @property
    def scalar_kind(self):
        for c in self.coeffs.values():
            return scalar_kind(c)
        return None

    def wdeg(self, key):
        i, j = key
        return self.weights[0] * i + self.weights[1] * j

    def is_zero(self):
        return not self.coeffs

    def order_floor(self):
        """Smallest weighted degree present; trunc + 1 if nothing stored.

        For a series with stored terms this is the exact order; for an
        empty one it is a valid lower bound for the order of the tail.
        """
        if self.coeffs:
            return min(self.wdeg(k) for k in self.coeffs)
        return self.trunc + 1 if self.trunc != INF else INF

    def items(self):
        """Terms in canonical order: ascending weighted degree, then x-exponent."""
        return sorted(self.coeffs.items(), key=lambda kv: (self.wdeg(kv[0]), kv[0][0]))

    def coefficient(self, i, j):
        if self.trunc != INF and self.weights[0] * i + self.weights[1] * j > self.trunc:
            raise SeriesOrderError("coefficient (%d, %d) beyond truncation" % (i, j))
        return self.coeffs.get((i, j), Fraction(0))

    def constant_term(self):
        return self.coeffs.get((0, 0), Fraction(0))

    def _like(self, coeffs, trunc):
        return Series2(coeffs, self.weights, trunc)

    def truncate(self, n):
        return self._like(dict(self.coeffs), min(self.trunc, n))

    def map_scalars(self, fn):
        return self._like({k: fn(c) for k, c in self.coeffs.items()}, self.trunc)

    # -- ring operations ----------------------------------------------

    def _check_compat(self, other):
        if not isinstance(other, Series2):
            raise TypeError("expected Series2")
        if self.weights != other.weights:
            raise WeightMismatchError(
                "weights %r and %r differ" % (self.weights, other.weights))
        _check_kinds(self, other, "Series2 arithmetic")

    def __add__(self, other):
        if not isinstance(other, Series2):
            return self + Series2.constant(other, self.weights)
        self._check_compat(other)
        trunc = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return self._like(out, trunc)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return self._like({k: -c for k, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, Series2):
            return self + Series2.constant(-as_scalar(other), self.weights)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _mul_trunc(self, other, sharp):
        """Validity of a product.

        The error of f enters fg as err_f * g, of weighted degree above
        f.trunc + ord(g), and symmetrically; the sharp bound is the min of
        the two.  The default product only credits the shift of an exact
        polynomial factor and otherwise keeps min of the bounds, so that a
        product of two series truncated at N is valid to N while applying
        an exact derivation like X_h raises the bound by its degree.
        """
        if sharp:
            return min(self.trunc + other.order_floor(),
                       other.trunc + self.order_floor())
        t1 = self.trunc + (other.order_floor() if other.trunc == INF else 0)
        t2 = other.trunc + (self.order_floor() if self.trunc == INF else 0)
        return min(t1, t2)

    def _mul(self, other, sharp=False):
        self._check_compat(other)
        trunc = self._mul_trunc(other, sharp)
        out = {}
        for k1, c1 in self.items():
            w1 = self.wdeg(k1)
            for k2, c2 in other.items():
                if w1 + other.wdeg(k2) > trunc:
                    continue
                k = (k1[0] + k2[0], k1[1] + k2[1])
                s = out.get(k, 0) + c1 * c2
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        return self._like(out, trunc)

    def __mul__(self, other):
        if not isinstance(other, Series2):
            c = as_scalar(other)
            if c == 0:
                return self._like({}, self.trunc)
            return self._like({k: v * c for k, v in self.coeffs.items()}, self.trunc)
        return self._mul(other, sharp=False)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("power must be a nonnegative integer")
        result = Series2.constant(1, self.weights, self.trunc if n == 0 else INF)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Series2):
            if self.coeffs == {} and as_scalar(other) == 0:
                return True
            return self.coeffs == {(0, 0): as_scalar(other)}
        return self.weights == other.weights and self.coeffs == other.coeffs

    __hash__ = None

    def agree_to(self, other, n):
        """Exact equality of all coefficients of weighted degree <= n."""
        self._check_compat(other)
        if self.trunc < n or other.trunc < n:
            raise SeriesOrderError(
                "cannot compare to degree %s: truncations %s, %s"
                % (n, self.trunc, other.trunc))
        for k in set(self.coeffs) | set(other.coeffs):
            if self.wdeg(k) <= n and self.coeffs.get(k, 0) != other.coeffs.get(k, 0):
                return False
        return True

    # -- calculus -----------------------------------------------------

    def diff_x(self):
        out = {}
        for (i, j), c in self.coeffs.items():
            if i > 0:
                out[(i - 1, j)] = c * i
        return self._like(out, self.trunc - self.weights[0])

    def diff_y(self):
        out = {}
        for (i, j), c in self.coeffs.items():
            if j > 0:
                out[(i, j - 1)] = c * j
        return self._like(out, self.trunc - self.weights[1])

    def graded_parts(self):
        """Ordered list of (weighted degree, homogeneous part)."""
        parts = {}
        for k, c in self.coeffs.items():
            parts.setdefault(self.wdeg(k), {})[k] = c
        return [(m, self._like(parts[m], self.trunc)) for m in sorted(parts)]

    def graded_part(self, m):
        out = {k: c for k, c in self.coeffs.items() if self.wdeg(k) == m}
        return self._like(out, self.trunc)

    def weighted_order(self):
        """Exact order of the stored part; raises on the zero series."""
        if not self.coeffs:
            raise SeriesOrderError("zero series has no weighted order")
        return min(self.wdeg(k) for k in self.coeffs)

    # -- substitution and evaluation ----------------------------------

    def substitute2(self, g1, g2, order=None):
        """Composition f(x, y) -> f(g1, g2).

        Both images must have weighted order at least the weight of the
        variable they replace, so substitution never lowers degrees.
        """
        self._check_compat(g1)
        self._check_compat(g2)
        p1, p2 = self.weights
        if not g1.is_zero() and g1.weighted_order() < p1:
            raise CompositionError("x-image has weighted order below %d" % p1)
        if not g2.is_zero() and g2.weighted_order() < p2:
            raise CompositionError("y-image has weighted order below %d" % p2)
        trunc = min(self.trunc, g1.trunc, g2.trunc)
        if order is not None:
            trunc = min(trunc, order)
        one = Series2.constant(1, self.weights)
        maxi = max((k[0] for k in self.coeffs), default=0)
        maxj = max((k[1] for k in self.coeffs), default=0)
        pow1 = [one]
        for _ in range(maxi):
            pow1.append((pow1[-1] * g1).truncate(trunc))
        pow2 = [one]
        for _ in range(maxj):
            pow2.append((pow2[-1] * g2).truncate(trunc))
        acc = Series2.zero(self.weights, trunc)
        for (i, j), c in self.items():
            acc = acc + (pow1[i] * pow2[j]) * c
        return acc.truncate(trunc)

    def eval(self, x, y):
        """Numeric evaluation of the stored (polynomial) part."""
        total = 0j
        for (i, j), c in self.items():
            total += complex(c) * x ** i * y ** j
        return total

    # -- rendering ------------------------------------------------------

    def __str__(self):
        return render_terms(
            [(("x", i), ("y", j), c) for (i, j), c in self.items()])

    def __repr__(self):
        return "Series2(%s; weights=%r, trunc=%r)" % (self, self.weights, self.trunc)


class Series1:
    """Truncated one-variable series: sparse exponent -> scalar mapping."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs, trunc=INF):
        clean = {}
        for e, c in coeffs.items():
            c = as_scalar(c)
            if c == 0:
                continue
            if e < 0:
                raise SeriesOrderError("negative exponent %d" % e)
            if e <= trunc:
                clean[e] = c
        self.coeffs = clean
        self.trunc = trunc

    @classmethod
    def zero(cls, trunc=INF):
        return cls({}, trunc)

    @classmethod
    def constant(cls, c, trunc=INF):
        return cls({0: c}, trunc)

    @classmethod
    def monomial(cls, c, e, trunc=INF):
        return cls({e: c}, trunc)

    @classmethod
    def identity(cls, trunc=INF):
        return cls({1: 1}, trunc)

    @property
    def scalar_kind(self):
        for c in self.coeffs.values():
            return scalar_kind(c)
        return None

    def is_zero(self):
        return not self.coeffs

    def order_floor(self):
        if self.coeffs:
            return min(self.coeffs)
        return self.trunc + 1 if self.trunc != INF else INF

    def order(self):
        if not self.coeffs:
            raise SeriesOrderError("zero series has no order")
        return min(self.coeffs)

    def items(self):
        return sorted(self.coeffs.items())

    def coefficient(self, e):
        if e > self.trunc:
            raise SeriesOrderError("coefficient %d beyond truncation" % e)
        return self.coeffs.get(e, Fraction(0))

    def leading(self):
        e = self.order()
        return e, self.coeffs[e]

    def truncate(self, n):
        return Series1(dict(self.coeffs), min(self.trunc, n))

    def map_scalars(self, fn):
        return Series1({e: fn(c) for e, c in self.coeffs.items()}, self.trunc)

    def _check_compat(self, other):
        if not isinstance(other, Series1):
            raise TypeError("expected Series1")
        _check_kinds(self, other, "Series1 arithmetic")

    def __add__(self, other):
        if not isinstance(other, Series1):
            return self + Series1.constant(other)
        self._check_compat(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Series1(out, min(self.trunc, other.trunc))

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Series1({e: -c for e, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, Series1):
            return self + Series1.constant(-as_scalar(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series1):
            c = as_scalar(other)
            if c == 0:
                return Series1({}, self.trunc)
            return Series1({e: v * c for e, v in self.coeffs.items()}, self.trunc)
        self._check_compat(other)
        trunc = min(self.trunc + other.order_floor(), other.trunc + self.order_floor())
        out = {}
        for e1, c1 in self.items():
            for e2, c2 in other.items():
                e = e1 + e2
                if e > trunc:
                    continue
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Series1(out, trunc)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, Series1):
            if self.coeffs == {} and as_scalar(other) == 0:
                return True
            return self.coeffs == {0: as_scalar(other)}
        return self.coeffs == other.coeffs

    __hash__ = None

    def agree_to(self, other, n):
        self._check_compat(other)
        if self.trunc < n or other.trunc < n:
            raise SeriesOrderError(
                "cannot compare to order %s: truncations %s, %s"
                % (n, self.trunc, other.trunc))
        for e in set(self.coeffs) | set(other.coeffs):
            if e <= n and self.coeffs.get(e, 0) != other.coeffs.get(e, 0):
                return False
        return True

    def derivative(self):
        return Series1({e - 1: c * e for e, c in self.coeffs.items() if e > 0},
                       self.trunc - 1)

    def shift(self, s):
        """Multiply by z^s; s may be negative if every exponent allows it."""
        if s < 0 and any(e + s < 0 for e in self.coeffs):
            raise SeriesOrderError("shift by %d makes an exponent negative" % s)
        return Series1({e + s: c for e, c in self.coeffs.items()}, self.trunc + s)

    def stretch(self, k):
        """Substitute z -> z^k for a positive integer k."""
        if k <= 0:
            raise ValueError("stretch factor must be positive")
        trunc = self.trunc if self.trunc == INF else (self.trunc + 1) * k - 1
        return Series1({e * k: c for e, c in self.coeffs.items()}, trunc)

    def compose(self, g):
        """Composition self(g) for g with zero constant term."""
        self._check_compat(g)
        if g.coeffs.get(0, 0) != 0:
            raise CompositionError("inner series has a nonzero constant term")
        trunc = min(self.trunc, g.trunc)
        acc = Series1.zero(trunc)
        exps = sorted(self.coeffs, reverse=True)
        if not exps:
            return acc
        prev = None
        for e in exps:
            if prev is None:
                acc = Series1.constant(self.coeffs[e], trunc)
            else:
                for _ in range(prev - e):
                    acc = (acc * g).truncate(trunc)
                acc = acc + self.coeffs[e]
            prev = e
        for _ in range(prev):
            acc = (acc * g).truncate(trunc)
        return acc

    def eval(self, z):
        total = 0j
        for e, c in self.items():
            total += complex(c) * z ** e
        return total

    def to_str(self, var="z"):
        return render_terms([((var, e), c) for e, c in self.items()])

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return "Series1(%s; trunc=%r)" % (self.to_str(), self.trunc)


def render_scalar(c):
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return "%d/%d" % (c.numerator, c.denominator)
    return repr(c)


def render_terms(terms):
    """Deterministic rendering of [(factors..., coefficient)] term lists."""
    if not terms:
        return "0"
    pieces = []
    for term in terms:
        *factors, c = term
        names = [
            ("%s^%d" % (v, e)) if e > 1 else v
            for v, e in factors if e > 0
        ]
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        if not names:
            body = render_scalar(mag)
        elif isinstance(mag, Fraction) and mag == 1:
            body = "*".join(names)
        else:
            body = "*".join([render_scalar(mag)] + names)
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# module-level operations


def mul_ord(f, g):
    """Order-aware product of Series2.

    Valid to min(f.trunc + ord(g), g.trunc + ord(f)): the unknown tail of
    either factor only pollutes degrees above its own bound plus the order
    of the other factor.  Used where a positive-order factor must not cost
    validity (prenormalization bookkeeping, round-trip contracts).
    """
    return f._mul(g, sharp=True)


def series_arith(lhs, rhs, kind):
    """Dispatch table form of the ring operations (used by the CLI layer)."""
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    if kind == "partial-derivative-x":
        return lhs.diff_x()
    if kind == "partial-derivative-y":
        return lhs.diff_y()
    raise ValueError("unknown operation kind %r" % kind)


def substitute(f, g):
    """Composition f(g) of one-variable series (g without constant term)."""
    return f.compose(g)


def reciprocal1(f, order=None):
    """Inverse 1/f of a one-variable series with f(0) != 0.

    Geometric expansion 1/f = (1/c0) * sum (-w)^s with w = f/c0 - 1;
    exact, valid to min(f.trunc, order).
    """
    c0 = f.coeffs.get(0, 0)
    if c0 == 0:
        raise SeriesOrderError("series is not a unit (zero constant term)")
    trunc = f.trunc if order is None else min(f.trunc, order)
    if trunc == INF:
        raise SeriesOrderError("reciprocal of an exact polynomial needs an order")
    one = 1 if isinstance(c0, Fraction) else 1.0 + 0j
    w = (f.truncate(trunc) * (one / c0) - 1).truncate(trunc)
    acc = Series1.constant(one, trunc)
    term = Series1.constant(one, trunc)
    while not w.is_zero():
        term = (term * (-w)).truncate(trunc)
        if term.is_zero():
            break
        acc = acc + term
    return (acc * (one / c0)).truncate(trunc)


def divide1(num, den, order=None):
    """Series quotient num/den where ord(den) <= ord(num)."""
    if den.is_zero():
        raise SeriesOrderError("division by the zero series")
    v = den.order()
    if not num.is_zero() and num.order() < v:
        raise SeriesOrderError("quotient is not a power series")
    den_u = den.shift(-v)
    num_s = num.shift(-v) if not num.is_zero() else Series1.zero(num.trunc - v)
    ord_cap = None if order is None else order
    inv = reciprocal1(den_u, order=min(num_s.trunc, den_u.trunc)
                      if ord_cap is None else ord_cap)
    out = num_s * inv
    return out if order is None else out.truncate(order)


def compose_inverse(phi):
    """Compositional inverse of phi = a1*z + ... with a1 != 0.

    Newton iteration psi <- psi - (phi(psi) - z)/phi'(psi), doubling the
    number of correct coefficients each round.
    """
    if phi.coeffs.get(0, 0) != 0:
        raise CompositionError("series to invert has a constant term")
    a1 = phi.coeffs.get(1, 0)
    if a1 == 0:
        raise SeriesOrderError("series to invert has zero linear part")
    trunc = phi.trunc
    if trunc == INF:
        raise SeriesOrderError("inverse of an exact polynomial needs a truncation")
    one = 1 if isinstance(a1, Fraction) else 1.0 + 0j
    z = Series1.identity(trunc)
    psi = Series1.monomial(one / a1, 1, 1)
    known = 1
    dphi = phi.derivative()
    while known < trunc:
        known = min(2 * known, trunc)
        # Newton doubles the number of exact coefficients; the validity
        # claim outruns the generic product bookkeeping, so re-tag.
        psi = Series1(dict(psi.coeffs), known)
        err = (phi.compose(psi) - z).truncate(known)
        slope = dphi.compose(psi)
        psi = psi - (err * reciprocal1(slope, order=known)).truncate(known)
        psi = Series1(dict(psi.coeffs), known)
    return psi.truncate(trunc)


def pow_fractional(f, e):
    """Power f^e for exact exponent e (Fraction or int) and f(0) = 1."""
    if f.coeffs.get(0, 0) != 1:
        raise SeriesOrderError("fractional power needs constant term 1")
    e = Fraction(e)
    trunc = f.trunc
    if trunc == INF:
        raise SeriesOrderError("fractional power of an exact polynomial needs an order")
    w = f - 1
    acc = Series1.constant(1, trunc)
    term = Series1.constant(1, trunc)
    s = 0
    while True:
        term = (term * w).truncate(trunc) * Fraction(e - s, s + 1)
        s += 1
        if term.is_zero():
            break
        acc = acc + term
        if not w.is_zero() and s * w.order() > trunc:
            break
    return acc


def pushforward1(f, phi):
    """Image of the field f(z) d/dz under the coordinate change phi.

    The transported coefficient is ((phi' * f) o phi^{-1}).
    """
    psi = compose_inverse(phi)
    return (phi.derivative() * f).compose(psi)


def residue1(f, v):
    """Coefficient of z^{-1} in the Laurent expansion of 1/f.

    f must have order exactly v >= 1; for v >= 2 this is the conjugacy
    invariant of the one-variable field f d/dz.
    """
    if f.is_zero():
        raise SeriesOrderError("residue of the zero series")
    if f.order() != v:
        raise SeriesOrderError(
            "order %d does not match the declared valuation %d" % (f.order(), v))
    if v < 1:
        raise SeriesOrderError("valuation must be at least 1")
    if f.trunc < 2 * v - 1:
        raise SeriesOrderError(
            "truncation %s too small to read the residue (need %d)"
            % (f.trunc, 2 * v - 1))
    unit = f.shift(-v)
    inv = reciprocal1(unit, order=v - 1)
    return inv.coefficient(v - 1)
