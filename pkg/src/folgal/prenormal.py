"""Degree-by-degree prenormalization of perturbed quasi-homogeneous fields.

A field X = a*X_h + b*R with a(0) = 1 and ord(b) > delta0 is reduced, one
weighted degree at a time, to the shape

    u * (X_h + sum_k d_k(h) * a_k * R)

by transforms exp(z*R) fibered with respect to R.  At each degree m the
obstruction in the R-component is split by the cokernel decomposition

    c = X_h(g) + sum_{k,j} lambda_{k,j} * a_k * h^j

(the a_k are the Milnor cobasis monomials); the lambda part is recorded in
the coefficients d_k, the X_h(g) part is removed by the factor exp(-g*R)
using [X_h, z*R] = -delta0*z*X_h + X_h(z)*R, and whatever lands on the
X_h side accumulates in the unit u.  Each step pollutes only strictly
higher degrees, so the sweep terminates structurally.
"""

from fractions import Fraction

from . import linalg
from .errors import NonIsolatedSingularityError, PreconditionError
from .quasihomog import (
    LogVectorField,
    lie_bracket_log,
    monomials_of_wdeg,
    r_field,
)
from .series import INF, Series1, Series2, mul_ord


class PrenormalForm:
    """Coefficients d_k(h) of the reduced field, as series in z = h."""

    def __init__(self, qd, d, order):
        self.qd = qd
        self.d = tuple(d)
        self.order = order
        for dk, (mono, wdeg) in zip(self.d, qd.cobasis):
            for j in dk.coeffs:
                if qd.delta * j + wdeg - qd.delta0 < 1:
                    raise PreconditionError(
                        "coefficient violates the degree hypothesis: "
                        "h^%d * %s falls at or below the initial degree" % (j, mono),
                        module="prenormal")

    def radial_coefficient(self):
        """The series sum_k d_k(h) * a_k as a Series2 valid to self.order."""
        return sum_of_h_series(self.qd, self.d, self.order)

    def field(self):
        """The represented field X_h + sum_k d_k(h) a_k R."""
        one = Series2.constant(1, self.qd.weights, self.order - self.qd.delta0)
        return LogVectorField(one, self.radial_coefficient(), self.qd)

    def __repr__(self):
        body = ", ".join("d_%d=%s" % (k + 1, dk.to_str("h"))
                         for k, dk in enumerate(self.d))
        return "PrenormalForm(%s; order=%d)" % (body, self.order)


class FiberedTransform:
    """Composition of factors exp(z*R), one generator per reduction degree.

    Generators are exact weighted-homogeneous polynomials; u is the unit
    absorbed on the X_h side, with u(0) = 1.
    """

    def __init__(self, generators, unit):
        for _, z in generators:
            if not z.is_zero() and len({z.wdeg(k) for k in z.coeffs}) != 1:
                raise PreconditionError("generator is not homogeneous",
                                        module="prenormal")
        self.generators = tuple(generators)
        self.unit = unit

    def is_identity(self):
        return not self.generators

    def __repr__(self):
        return "FiberedTransform(degrees=%r)" % [m for m, _ in self.generators]


def h_power_table(qd, jmax, trunc=INF):
    powers = [Series2.constant(1, qd.weights, trunc)]
    for _ in range(jmax):
        powers.append(mul_ord(powers[-1], qd.h).truncate(trunc))
    return powers


def series_in_h(qd, s, order):
    """Evaluate a one-variable series at z = h, valid to weighted order."""
    if s.is_zero():
        return Series2.zero(qd.weights, order)
    jmax = max(s.coeffs)
    powers = h_power_table(qd, jmax, order)
    acc = Series2.zero(qd.weights, order)
    for j, c in s.items():
        acc = acc + powers[j] * c
    tail = qd.delta * (s.trunc + 1) - 1
    return acc.truncate(min(order, tail))


def sum_of_h_series(qd, d, order):
    """sum_k d_k(h) * a_k for the cobasis monomials a_k."""
    acc = Series2.zero(qd.weights, order)
    for dk, ((i, j), _) in zip(d, qd.cobasis):
        if dk.is_zero():
            continue
        mono = Series2.monomial(1, i, j, qd.weights)
        acc = acc + mul_ord(series_in_h(qd, dk, order), mono).truncate(order)
    return acc


def _decompose_degree(qd, part, m):
    """Split a homogeneous degree-m series as X_h(g) + sum lambda a_k h^j.

    Returns (g, {(k, j): lambda}); raises when the graded system is
    inconsistent, which for valid QuasiData cannot happen.
    """
    p1, p2 = qd.weights
    g_mon = monomials_of_wdeg(p1, p2, m - qd.delta0) if m >= qd.delta0 else []
    pairs = []
    for k, (_, wdeg) in enumerate(qd.cobasis):
        rem = m - wdeg
        if rem >= 0 and rem % qd.delta == 0:
            pairs.append((k, rem // qd.delta))
    cols = {}
    for n, mono in enumerate(g_mon):
        cols[("g", mono)] = n
    for n, kj in enumerate(pairs):
        cols[("l", kj)] = len(g_mon) + n
    rows = {}

    def put(key, col, val):
        row = rows.setdefault(key, {})
        s = row.get(col, 0) + val
        if s == 0:
            row.pop(col, None)
        else:
            row[col] = s

    for mono in g_mon:
        image = qd.apply_xh(Series2.monomial(1, mono[0], mono[1], qd.weights))
        col = cols[("g", mono)]
        for key, c in image.coeffs.items():
            put(key, col, c)
    hpow = h_power_table(qd, max((j for _, j in pairs), default=0))
    for (k, j) in pairs:
        (i0, j0), _ = qd.cobasis[k]
        col = cols[("l", (k, j))]
        for (hi, hj), c in hpow[j].coeffs.items():
            put((hi + i0, hj + j0), col, c)
    keys = sorted(set(rows) | set(part.coeffs))
    mat = [rows.get(key, {}) for key in keys]
    rhs = [part.coeffs.get(key, Fraction(0)) for key in keys]
    sol = linalg.solve(mat, rhs)
    if sol is None:
        raise NonIsolatedSingularityError(
            "cokernel system inconsistent at weighted degree %d "
            "(invalid cobasis or non-isolated singularity)" % m)
    g = Series2({mono: sol[cols[("g", mono)]]
                 for mono in g_mon if cols[("g", mono)] in sol},
                qd.weights)
    lambdas = {kj: sol[cols[("l", kj)]]
               for kj in pairs if cols[("l", kj)] in sol}
    return g, lambdas


def cokernel_decompose(c, qd):
    """c = X_h(g) + sum_{k,j} lambda_{k,j} a_k h^j, degree by degree."""
    if qd.cobasis is None:
        raise PreconditionError("QuasiData lacks a cobasis", module="prenormal")
    g_total = Series2.zero(qd.weights, c.trunc - qd.delta0)
    lambdas = {}
    for m, part in c.graded_parts():
        g, lam = _decompose_degree(qd, part, m)
        g_total = g_total + g.truncate(c.trunc - qd.delta0)
        for kj, val in lam.items():
            lambdas[kj] = lambdas.get(kj, 0) + val
    return g_total, lambdas


def _push_exp_zr(z, field, order):
    """Pushforward of a logarithmic field by the time-1 flow of z*R.

    Adjoint series sum_s (-1)^s/s! ad_{zR}^s; each bracket against the
    exact homogeneous generator raises the field degree by deg(z) >= 1, so
    the sum is finite at any truncation.
    """
    qd = field.qd
    zr = r_field(qd).scale(z)
    acc = field
    term = field
    s = 0
    while True:
        s += 1
        term = lie_bracket_log(zr, term).scale(Fraction(-1, s))
        ta = term.a.truncate(order - qd.delta0)
        tb = term.b.truncate(order)
        term = LogVectorField(ta, tb, qd)
        if ta.is_zero() and tb.is_zero():
            break
        acc = acc + term
    return acc.truncate_field(order)


def prenormalize(x_field, order):
    """Reduce a*X_h + b*R to the prenormal shape, recording the transform.

    Round-trip contract: pushing the input through the returned transform
    equals unit * (X_h + sum d_k(h) a_k R) to the requested order.
    """
    qd = x_field.qd
    d0 = qd.delta0
    if qd.cobasis is None:
        raise PreconditionError("QuasiData lacks a cobasis", module="prenormal")
    if order < d0 + 1:
        raise PreconditionError("order %d below delta0 + 1 = %d" % (order, d0 + 1),
                                module="prenormal")
    if x_field.field_trunc() < order:
        raise PreconditionError(
            "field only known to degree %s, order %d requested"
            % (x_field.field_trunc(), order), module="prenormal")
    a = x_field.a.truncate(order - d0)
    b = x_field.b.truncate(order)
    if a.constant_term() != 1:
        raise PreconditionError("a(0) must be 1", module="prenormal")
    if not b.is_zero() and b.weighted_order() <= d0:
        raise PreconditionError(
            "radial part has weighted order %d, need > delta0 = %d"
            % (b.weighted_order(), d0), module="prenormal")
    cur = LogVectorField(a, b, qd)
    lam_acc = [dict() for _ in qd.cobasis]
    s_series = Series2.zero(qd.weights, order)
    hpow = h_power_table(qd, order // qd.delta + 1)
    generators = []
    for m in range(d0 + 1, order + 1):
        gap = cur.b - mul_ord(cur.a, s_series)
        part = gap.graded_part(m)
        if part.is_zero():
            continue
        g, lambdas = _decompose_degree(qd, part, m)
        for (k, j), val in lambdas.items():
            lam_acc[k][j] = lam_acc[k].get(j, 0) + val
            (i0, j0), _ = qd.cobasis[k]
            mono = Series2.monomial(val, i0, j0, qd.weights)
            s_series = s_series + mul_ord(hpow[j], mono).truncate(order)
        if not g.is_zero():
            z = -g
            generators.append((m, z))
            cur = _push_exp_zr(z, cur, order)
    d = []
    for k, (_, wdeg) in enumerate(qd.cobasis):
        trunc_z = (order - wdeg) // qd.delta
        d.append(Series1(lam_acc[k], trunc_z))
    pf = PrenormalForm(qd, d, order)
    transform = FiberedTransform(generators, cur.a)
    gap = cur.b - mul_ord(cur.a, s_series)
    if not gap.truncate(order).is_zero():
        raise NonIsolatedSingularityError(
            "prenormalization failed to close at order %d" % order)
    return pf, transform


def apply_fibered(transform, x_field, order, inverse=False):
    """Pushforward of a field through the transform's exp(z*R) factors."""
    cur = x_field.truncate_field(order)
    gens = transform.generators
    if inverse:
        gens = tuple((m, -z) for m, z in reversed(gens))
    for _, z in gens:
        cur = _push_exp_zr(z, cur, order)
    return cur
