"""One-forms in the logarithmic basis dual to (X_h, R).

The basis used internally is

    omega_h = delta^{-1} dh/h
    omega_r = (p2*y dx - p1*x dy) / (delta * h)

so that the pairing is exactly dual: omega_h(R) = 1, omega_h(X_h) = 0,
omega_r(X_h) = 1, omega_r(R) = 0, and df = R(f) omega_h + X_h(f) omega_r
for every function f.  The radial covector carries an internal factor
delta^{-1} relative to the raw (p2*y dx - p1*x dy)/h; this calibration
constant is exposed as :func:`calibration` and quoted in reports.

Exterior calculus is closed in this basis: d(omega_h) = 0 and
d(omega_r) = -delta0 * omega_h ^ omega_r, whence

    d(A omega_h + B omega_r) = (R(B) - delta0*B - X_h(A)) omega_h ^ omega_r.

As an explicit 2-form, omega_h ^ omega_r = -dx^dy/(delta*h).
"""

from fractions import Fraction
from math import comb

from . import linalg
from .errors import PreconditionError
from .quasihomog import monomials_of_wdeg
from .series import INF, Series2


def calibration(qd):
    """Internal rescaling of the raw radial covector: the factor 1/delta."""
    return Fraction(1, qd.delta)


class LogOneForm:
    """A*omega_h + B*omega_r with regular series coefficients A, B."""

    __slots__ = ("a", "b", "qd")

    def __init__(self, a, b, qd):
        if a.weights != qd.weights or b.weights != qd.weights:
            raise PreconditionError("coefficients carry wrong weights",
                                    module="logforms")
        self.a = a
        self.b = b
        self.qd = qd

    @classmethod
    def zero(cls, qd, trunc=INF):
        z = Series2.zero(qd.weights, trunc)
        return cls(z, z, qd)

    @classmethod
    def omega_h(cls, qd, trunc=INF):
        return cls(Series2.constant(1, qd.weights, trunc),
                   Series2.zero(qd.weights, trunc), qd)

    @classmethod
    def omega_r(cls, qd, trunc=INF):
        return cls(Series2.zero(qd.weights, trunc),
                   Series2.constant(1, qd.weights, trunc), qd)

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __add__(self, other):
        return LogOneForm(self.a + other.a, self.b + other.b, self.qd)

    def __sub__(self, other):
        return LogOneForm(self.a - other.a, self.b - other.b, self.qd)

    def __neg__(self):
        return LogOneForm(-self.a, -self.b, self.qd)

    def scale(self, f):
        return LogOneForm(self.a * f, self.b * f, self.qd)

    def dx_dy_values(self, x, y):
        """Numeric (dx, dy) components at a point off h = 0."""
        qd = self.qd
        hval = qd.h.eval(x, y)
        if hval == 0:
            raise PreconditionError("evaluation point lies on h = 0",
                                    module="logforms")
        d = qd.delta
        wa = self.a.eval(x, y)
        wb = self.b.eval(x, y)
        cdx = wa * qd.hx.eval(x, y) / (d * hval) + wb * qd.p2 * y / (d * hval)
        cdy = wa * qd.hy.eval(x, y) / (d * hval) - wb * qd.p1 * x / (d * hval)
        return cdx, cdy

    def __repr__(self):
        return "LogOneForm(A=%s, B=%s)" % (self.a, self.b)


def dual_form(v):
    """The one-form a*omega_h - b*omega_r annihilating a*X_h + b*R."""
    return LogOneForm(v.a, -v.b, v.qd)


def eval_pairing(omega, v):
    """omega(V) as a series: (A omega_h + B omega_r)(a X_h + b R) = A*b + B*a."""
    if omega.qd.h != v.qd.h:
        raise PreconditionError("form and field over different curves",
                                module="logforms")
    return omega.a * v.b + omega.b * v.a


def eval_pairing_numeric(omega, v, x, y):
    """Numeric spot check of the pairing from the explicit rational forms."""
    cdx, cdy = omega.dx_dy_values(x, y)
    p, q = v.components()
    return cdx * p.eval(x, y) + cdy * q.eval(x, y)


def exterior_d(omega):
    """Coefficient F with d(omega) = F * omega_h ^ omega_r."""
    qd = omega.qd
    return qd.apply_r(omega.b) - omega.b * qd.delta0 - qd.apply_xh(omega.a)


def wedge(w1, w2):
    """Coefficient of omega_h ^ omega_r in w1 ^ w2: A1*B2 - A2*B1."""
    return w1.a * w2.b - w2.a * w1.b


def two_form_factor_numeric(qd, x, y):
    """Numeric value of the basis 2-form against dx^dy: -1/(delta*h)."""
    return -1.0 / (qd.delta * qd.h.eval(x, y))


def exterior_d_numeric(omega, x, y, step=1e-3):
    """dx^dy-coefficient of d(omega) by fourth-order central differences."""
    def wdx(u, v):
        return omega.dx_dy_values(u, v)[0]

    def wdy(u, v):
        return omega.dx_dy_values(u, v)[1]

    def d4(f, u, v, du, dv):
        return (-f(u + 2 * du, v + 2 * dv) + 8 * f(u + du, v + dv)
                - 8 * f(u - du, v - dv) + f(u - 2 * du, v - 2 * dv)) / (12 * (du + dv))

    return d4(wdy, x, y, step, 0) - d4(wdx, x, y, 0, step)


class GVSequence:
    """Finite sequence of one-forms subject to the structure equations."""

    def __init__(self, forms):
        self.forms = tuple(forms)
        if not self.forms:
            raise PreconditionError("empty sequence", module="logforms")
        qd = self.forms[0].qd
        for f in self.forms:
            if f.qd.h != qd.h:
                raise PreconditionError("forms over different curves",
                                        module="logforms")
        self.qd = qd

    def __len__(self):
        return len(self.forms)

    def form(self, i):
        if i < len(self.forms):
            return self.forms[i]
        return LogOneForm.zero(self.qd)


class GVReport:
    """Outcome of a structure-equation verification."""

    def __init__(self, passed, failed_index=None, residual_order=None):
        self.passed = passed
        self.failed_index = failed_index
        self.residual_order = residual_order

    def __bool__(self):
        return self.passed

    def __repr__(self):
        if self.passed:
            return "GVReport(pass)"
        return "GVReport(fail at relation %d, residual order %s)" % (
            self.failed_index, self.residual_order)


def gv_verify(seq, order):
    """Check the defining relations of the sequence to the given order.

    Relation i (i = 0, 1, ...):

        d(w_i) = w_0 ^ w_{i+1} + sum_{j=1..i} C(i, j) w_j ^ w_{i-j+1}

    with w_k = 0 beyond the declared length l; relations with index above
    2l - 3 are identically trivial and are skipped.
    """
    if not isinstance(seq, GVSequence):
        seq = GVSequence(seq)
    top = max(2 * len(seq) - 3, 1)
    w0 = seq.form(0)
    for i in range(0, top + 1):
        lhs = exterior_d(seq.form(i))
        rhs = wedge(w0, seq.form(i + 1))
        for j in range(1, i + 1):
            rhs = rhs + wedge(seq.form(j), seq.form(i - j + 1)) * comb(i, j)
        diff = lhs - rhs
        cap = min(order, diff.trunc)
        bad = [diff.wdeg(k) for k in diff.coeffs if diff.wdeg(k) <= cap]
        if bad:
            return GVReport(False, i, min(bad))
    return GVReport(True)


class GVSearchResult:
    """Witness or bounded infeasibility certificate of the length-2 search."""

    def __init__(self, feasible, omega1, degree_bound, order):
        self.feasible = feasible
        self.omega1 = omega1
        self.degree_bound = degree_bound
        self.order = order

    def __bool__(self):
        return self.feasible

    def __repr__(self):
        tag = "feasible" if self.feasible else "infeasible"
        return "GVSearchResult(%s at D=%d, N=%d)" % (
            tag, self.degree_bound, self.order)


def gv_search_length2(x_field, degree_bound, order):
    """Search a closed w_1 with d(w_0) = w_0 ^ w_1 for the dual form of X.

    w_1 = A omega_h + B omega_r with polynomial coefficients of weighted
    degree <= degree_bound; the two relations, truncated at the given
    order, form a finite exact linear system.  A witness certifies a
    length-2 sequence; infeasibility is certified only at these bounds.
    This search is independent of the invariant-family criterion and
    serves as its oracle.
    """
    qd = x_field.qd
    a, b = x_field.a, x_field.b
    if a.constant_term() == 0:
        raise PreconditionError("X is degenerate: a is not a unit",
                                module="logforms")
    if min(a.trunc + qd.delta0, b.trunc) < order:
        raise PreconditionError(
            "field not known to the requested order", module="logforms")
    p1, p2, d0 = qd.p1, qd.p2, qd.delta0
    unknown_monos = []
    for m in range(0, degree_bound + 1):
        unknown_monos.extend(monomials_of_wdeg(p1, p2, m))
    cols = {}
    for n, k in enumerate(unknown_monos):
        cols[("A", k)] = 2 * n
        cols[("B", k)] = 2 * n + 1
    # relation 1: a*B + b*A = -R(b) + delta0*b - X_h(a)
    f0 = -qd.apply_r(b) + b * d0 - qd.apply_xh(a)
    rows = {}

    def put(tag, key, col, val):
        row = rows.setdefault((tag, key), {})
        s = row.get(col, 0) + val
        if s == 0:
            row.pop(col, None)
        else:
            row[col] = s

    def add_product(tag, series, var, k, sign=1):
        col = cols[(var, k)]
        for (i, j), c in series.coeffs.items():
            key = (i + k[0], j + k[1])
            if p1 * key[0] + p2 * key[1] <= order:
                put(tag, key, col, sign * c)

    for k in unknown_monos:
        add_product(1, a, "B", k)
        add_product(1, b, "A", k)
        # relation 2: R(B) - delta0*B - X_h(A) = 0
        wk = p1 * k[0] + p2 * k[1]
        if wk <= order:
            put(2, k, cols[("B", k)], Fraction(wk - d0))
        image = qd.apply_xh(Series2.monomial(1, k[0], k[1], qd.weights))
        for key, c in image.coeffs.items():
            if p1 * key[0] + p2 * key[1] <= order:
                put(2, key, cols[("A", k)], -c)
    keys = sorted(set(rows) | {(1, k) for k in f0.coeffs if f0.wdeg(k) <= order})
    mat = [rows.get(key, {}) for key in keys]
    rhs = [f0.coeffs.get(key[1], Fraction(0)) if key[0] == 1 else Fraction(0)
           for key in keys]
    sol = linalg.solve(mat, rhs)
    if sol is None:
        return GVSearchResult(False, None, degree_bound, order)
    acoef, bcoef = {}, {}
    for k in unknown_monos:
        va = sol.get(cols[("A", k)], 0)
        vb = sol.get(cols[("B", k)], 0)
        if va:
            acoef[k] = va
        if vb:
            bcoef[k] = vb
    omega1 = LogOneForm(Series2(acoef, qd.weights), Series2(bcoef, qd.weights), qd)
    return GVSearchResult(True, omega1, degree_bound, order)
