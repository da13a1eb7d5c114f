"""Quasi-homogeneous geometry of a plane curve germ h = 0.

For positive integer weights (p1, p2) let R = p1*x d/dx + p2*y d/dy be the
weighted radial field.  A polynomial h is quasi-homogeneous of weighted
degree delta when R(h) = delta*h.  Its hamiltonian field
X_h = h_y d/dx - h_x d/dy is then quasi-homogeneous of degree
delta0 = delta - p1 - p2, and every vector field tangent to h = 0 splits
uniquely as a*X_h + b*R with series coefficients a, b (the logarithmic
basis).  The local algebra O_2/J(h), with J(h) the ideal of the partials,
has a monomial cobasis of size mu (the Milnor number); its top weighted
degree is 2*delta0 for an isolated singularity.
"""

from fractions import Fraction

from . import linalg
from .errors import (
    NonIsolatedSingularityError,
    NotLogarithmicError,
    NotQuasiHomogeneousError,
    PreconditionError,
)
from .series import INF, Series2


def monomials_of_wdeg(p1, p2, m):
    """Exponent pairs (i, j) with p1*i + p2*j = m, ascending x-exponent."""
    out = []
    for i in range(m // p1 + 1):
        rem = m - p1 * i
        if rem >= 0 and rem % p2 == 0:
            out.append((i, rem // p2))
    return out


class QuasiData:
    """Weights, curve polynomial, graded bookkeeping and Milnor cobasis.

    Immutable; shared read-only by all downstream layers.  The cobasis is
    a tuple of ((i, j), weighted degree) pairs once computed.
    """

    def __init__(self, p1, p2, h, delta, mu=None, cobasis=None):
        self.p1 = p1
        self.p2 = p2
        self.h = h
        self.delta = delta
        self.delta0 = delta - p1 - p2
        self.hx = h.diff_x()
        self.hy = h.diff_y()
        self.mu = mu
        self.cobasis = cobasis

    @property
    def weights(self):
        return (self.p1, self.p2)

    def with_cobasis(self, cobasis, mu):
        return QuasiData(self.p1, self.p2, self.h, self.delta, mu, cobasis)

    # -- derivations ----------------------------------------------------

    def apply_r(self, f):
        """R(f) = p1*x*f_x + p2*y*f_y; exact, no degree loss."""
        x = Series2.variable("x", self.weights)
        y = Series2.variable("y", self.weights)
        return x * f.diff_x() * self.p1 + y * f.diff_y() * self.p2

    def apply_xh(self, f):
        """X_h(f) = h_y*f_x - h_x*f_y; raises weighted degree by delta0."""
        return self.hy * f.diff_x() - self.hx * f.diff_y()

    def xh_components(self):
        return (self.hy, -self.hx)

    def r_components(self):
        x = Series2.variable("x", self.weights)
        y = Series2.variable("y", self.weights)
        return (x * self.p1, y * self.p2)

    def cobasis_monomials(self, trunc=INF):
        return [Series2.monomial(1, i, j, self.weights, trunc)
                for (i, j), _ in self.cobasis]

    def __repr__(self):
        return "QuasiData(h=%s, weights=(%d, %d), delta=%d, mu=%r)" % (
            self.h, self.p1, self.p2, self.delta, self.mu)


def check_quasi_homogeneous(h, p1, p2):
    """Validate R(h) = delta*h and return the graded bookkeeping.

    h must be an exact polynomial (infinite truncation) vanishing at the
    origin.  The returned QuasiData has no cobasis yet.
    """
    if p1 <= 0 or p2 <= 0:
        raise NotQuasiHomogeneousError("weights must be positive")
    if h.trunc != INF:
        raise NotQuasiHomogeneousError("h must be an exact polynomial")
    if h.is_zero():
        raise NotQuasiHomogeneousError("h = 0 defines no curve")
    if h.weights != (p1, p2):
        raise NotQuasiHomogeneousError("h carries different weights")
    if h.constant_term() != 0:
        raise NotQuasiHomogeneousError("h(0) must vanish")
    degrees = {p1 * i + p2 * j for (i, j) in h.coeffs}
    if len(degrees) != 1:
        raise NotQuasiHomogeneousError(
            "h is not weighted-homogeneous for weights (%d, %d): degrees %s"
            % (p1, p2, sorted(degrees)))
    delta = degrees.pop()
    if delta <= 0:
        raise NotQuasiHomogeneousError("weighted degree must be positive")
    return QuasiData(p1, p2, h, delta)


def jacobian_cobasis(qd):
    """Monomial cobasis of O_2/J(h) and the Milnor number mu.

    Degree by degree up to (delta - p1) + (delta - p2): the span of
    {monomial*h_x, monomial*h_y} is row-reduced inside each graded slice
    and the complement monomials are chosen greedily with the smallest
    x-exponent preferred.  For an isolated singularity the local algebra
    is concentrated in degrees <= 2*delta0; any complement beyond that
    certifies a non-isolated singularity.
    """
    p1, p2, delta = qd.p1, qd.p2, qd.delta
    bound = (delta - p1) + (delta - p2)
    socle = 2 * qd.delta0
    cobasis = []
    for m in range(0, bound + 1):
        monos = monomials_of_wdeg(p1, p2, m)
        if not monos:
            continue
        index = {k: n for n, k in enumerate(monos)}
        rows = []
        for gen, gdeg in ((qd.hx, delta - p1), (qd.hy, delta - p2)):
            if gen.is_zero():
                continue
            for (i, j) in monomials_of_wdeg(p1, p2, m - gdeg):
                row = {}
                for (gi, gj), c in gen.coeffs.items():
                    row[index[(gi + i, gj + j)]] = c
                rows.append(row)
        pivots, _ = linalg._echelon(rows, [None] * len(rows))
        for k in monos:
            # independent of the current span iff reducing e_k leaves a remainder
            reduced = _reduce_against({index[k]: Fraction(1)}, pivots)
            if reduced:
                if m > socle:
                    raise NonIsolatedSingularityError(
                        "local algebra does not stabilize: cobasis monomial of "
                        "weighted degree %d exceeds the bound %d" % (m, socle))
                cobasis.append((k, m))
                _insert_row(reduced, pivots)
    mu = len(cobasis)
    expected = (Fraction(delta, p1) - 1) * (Fraction(delta, p2) - 1)
    if expected.denominator != 1 or mu != expected:
        raise NonIsolatedSingularityError(
            "cobasis count %d disagrees with (delta/p1 - 1)(delta/p2 - 1) = %s"
            % (mu, expected))
    return qd.with_cobasis(tuple(cobasis), mu)


def _reduce_against(row, pivots):
    row = dict(row)
    while row:
        col = min(row)
        hit = pivots.get(col)
        if hit is None:
            return row
        prow, _ = hit
        factor = row[col]
        for c, v in prow.items():
            s = row.get(c, 0) - factor * v
            if s == 0:
                row.pop(c, None)
            else:
                row[c] = s
    return None


def _insert_row(reduced, pivots):
    col = min(reduced)
    inv = Fraction(1) / reduced[col]
    pivots[col] = ({c: v * inv for c, v in reduced.items()}, None)


class LogVectorField:
    """A field a*X_h + b*R tangent to h = 0, in the Saito basis."""

    __slots__ = ("a", "b", "qd")

    def __init__(self, a, b, qd):
        if a.weights != qd.weights or b.weights != qd.weights:
            raise PreconditionError("coefficients carry wrong weights",
                                    module="quasihomog")
        self.a = a
        self.b = b
        self.qd = qd

    def components(self):
        """Raw coordinate components (P, Q) with V = P d/dx + Q d/dy."""
        qd = self.qd
        x = Series2.variable("x", qd.weights)
        y = Series2.variable("y", qd.weights)
        p = self.a * qd.hy + self.b * x * qd.p1
        q = -(self.a * qd.hx) + self.b * y * qd.p2
        return p, q

    def field_trunc(self):
        """Weighted field degree through which the field is known."""
        return min(self.a.trunc + self.qd.delta0, self.b.trunc)

    def __add__(self, other):
        return LogVectorField(self.a + other.a, self.b + other.b, self.qd)

    def __sub__(self, other):
        return LogVectorField(self.a - other.a, self.b - other.b, self.qd)

    def __neg__(self):
        return LogVectorField(-self.a, -self.b, self.qd)

    def scale(self, f):
        """Multiply by a scalar or a series coefficient."""
        return LogVectorField(self.a * f, self.b * f, self.qd)

    def truncate_field(self, n):
        return LogVectorField(self.a.truncate(n - self.qd.delta0),
                              self.b.truncate(n), self.qd)

    def agree_to(self, other, n):
        return (self.a.agree_to(other.a, n - self.qd.delta0)
                and self.b.agree_to(other.b, n))

    def __repr__(self):
        return "LogVectorField(a=%s, b=%s)" % (self.a, self.b)


def xh_field(qd, trunc=INF):
    one = Series2.constant(1, qd.weights, trunc)
    zero = Series2.zero(qd.weights, trunc)
    return LogVectorField(one, zero, qd)


def r_field(qd, trunc=INF):
    one = Series2.constant(1, qd.weights, trunc)
    zero = Series2.zero(qd.weights, trunc)
    return LogVectorField(zero, one, qd)


def saito_decompose(p, q, qd, order=None):
    """Split V = P d/dx + Q d/dy as a*X_h + b*R, degree by degree.

    The graded slices give exact linear systems P_m = a*h_y + b*p1*x,
    Q_m = -a*h_x + b*p2*y whose solution is unique; infeasibility at some
    degree certifies that V is not tangent to h = 0.
    """
    p1, p2, delta0 = qd.p1, qd.p2, qd.delta0
    out_trunc = min(p.trunc - p1, q.trunc - p2)
    if order is not None:
        out_trunc = min(out_trunc, order)
    degrees = []
    if not p.is_zero():
        degrees.append(p.weighted_order() - p1)
    if not q.is_zero():
        degrees.append(q.weighted_order() - p2)
    if not degrees:
        return LogVectorField(Series2.zero(qd.weights, out_trunc - delta0),
                              Series2.zero(qd.weights, out_trunc), qd)
    lo = min(degrees)
    if out_trunc == INF:
        # exact polynomial input: beyond the top supported degree the
        # graded systems are homogeneous with unique zero solution
        tops = []
        if not p.is_zero():
            tops.append(max(p1 * i + p2 * j for i, j in p.coeffs) - p1)
        if not q.is_zero():
            tops.append(max(p1 * i + p2 * j for i, j in q.coeffs) - p2)
        hi = max(tops)
    else:
        hi = out_trunc
    a_coeffs, b_coeffs = {}, {}
    for m in range(lo, hi + 1):
        a_mon = monomials_of_wdeg(p1, p2, m - delta0) if m >= delta0 else []
        b_mon = monomials_of_wdeg(p1, p2, m)
        cols = {}
        for n, k in enumerate(a_mon):
            cols[("a", k)] = n
        for n, k in enumerate(b_mon):
            cols[("b", k)] = len(a_mon) + n
        # equations indexed by target monomials of P (tag 0) and Q (tag 1)
        rows = {}

        def put(tag, key, col, val):
            rows.setdefault((tag, key), {})
            s = rows[(tag, key)].get(col, 0) + val
            if s == 0:
                rows[(tag, key)].pop(col, None)
            else:
                rows[(tag, key)][col] = s

        for k in a_mon:
            col = cols[("a", k)]
            for (gi, gj), c in qd.hy.coeffs.items():
                put(0, (k[0] + gi, k[1] + gj), col, c)
            for (gi, gj), c in qd.hx.coeffs.items():
                put(1, (k[0] + gi, k[1] + gj), col, -c)
        for k in b_mon:
            col = cols[("b", k)]
            put(0, (k[0] + 1, k[1]), col, Fraction(p1))
            put(1, (k[0], k[1] + 1), col, Fraction(p2))
        keys = sorted(set(rows)
                      | {(0, k) for k in p.graded_part(m + p1).coeffs}
                      | {(1, k) for k in q.graded_part(m + p2).coeffs})
        mat, rhs = [], []
        for tag, k in keys:
            mat.append(rows.get((tag, k), {}))
            src = p if tag == 0 else q
            rhs.append(src.coeffs.get(k, Fraction(0)))
        sol = linalg.solve(mat, rhs)
        if sol is None:
            raise NotLogarithmicError(
                "field is not tangent to h = 0 (no solution at weighted "
                "field degree %d)" % m)
        for key, col in cols.items():
            val = sol.get(col, 0)
            if val:
                kind, mono = key
                (a_coeffs if kind == "a" else b_coeffs)[mono] = val
    a = Series2(a_coeffs, qd.weights,
                out_trunc if out_trunc == INF else out_trunc - delta0)
    b = Series2(b_coeffs, qd.weights, out_trunc)
    return LogVectorField(a, b, qd)


def lie_bracket_log(v, w):
    """Lie bracket of logarithmic fields, closed in the (X_h, R) basis.

    With v = a*X_h + b*R and w = c*X_h + d*R:

        [v, w] = (a*X_h(c) - c*X_h(a) - delta0*(a*d - b*c)
                  - d*R(a) + b*R(c)) * X_h
               + (a*X_h(d) - c*X_h(b) + b*R(d) - d*R(b)) * R

    using [R, X_h] = delta0*X_h from quasi-homogeneity.
    """
    if v.qd is not w.qd and v.qd.h != w.qd.h:
        raise PreconditionError("bracket of fields over different curves",
                                module="quasihomog")
    qd = v.qd
    a, b, c, d = v.a, v.b, w.a, w.b
    d0 = qd.delta0
    acoef = (a * qd.apply_xh(c) - c * qd.apply_xh(a)
             - (a * d - b * c) * d0 - d * qd.apply_r(a) + b * qd.apply_r(c))
    bcoef = a * qd.apply_xh(d) - c * qd.apply_xh(b) + b * qd.apply_r(d) - d * qd.apply_r(b)
    return LogVectorField(acoef, bcoef, qd)
