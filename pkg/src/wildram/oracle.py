"""Formula-free verification of lower jumps by explicit series construction.

For a wild reduced datum f with pole order n0 over K = k((t)), the degree-p
extension M = K(a) with a^p - a = f is identified with k((y)) through
a = y^(-n0) exactly.  The image x(y) of the K-uniformizer then solves

    x = y^p * (1 - y^(n0(p-1)))^(-1/n0) * u0(x)^(1/n0),      u0 = f * t^n0,

a contracting fixpoint equation solved by iteration, with every unit tracked
rather than assumed trivial.  The construction is validated by re-expanding f
at x(y) and comparing against y^(-n0 p) - y^(-n0) coefficient by coefficient;
a mismatch is surfaced as OracleCheckError, never patched.

The generator sigma: a -> a + 1 acts by sigma(y) = y * (1 + y^n0)^(-1/n0)
(principal branch), so the p-cyclic jump is read off v(sigma(y) - y) - 1.
The second jump of a p^2-cyclic datum (alpha0, alpha1) is the unique jump of
L/M, measured by rewriting the Witt relation

    a1^p - a1 = alpha1(x(y)) - sum_j c_j * alpha0(x(y))^(p-j) * y^(-n0 j)

as a series over k((y)) and reducing it there: the reduced pole order is the
jump.  All valuation reads sit strictly above the tracked precision floor,
else InsufficientPrecision propagates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LaurentSeries
from .asreduce import ASKind, ReducedAS, ReducedWitt2, reduce_as, require_fully_wild
from .errors import NotReduced, OracleCheckError
from .witt import bracket_coeffs


def margin(p, pole_orders):
    """Precision margin past the deepest pole: p^2 * (sum of poles) + 2p^2 + 4."""
    return p * p * sum(pole_orders) + 2 * p * p + 4


@dataclass(frozen=True)
class Transition:
    """Uniformizer data for M = K(a) = k((y)): x(y) and the pole order n0."""

    x: LaurentSeries
    n0: int

    @property
    def ctx(self):
        return self.x.ctx


def build_transition(f: ReducedAS, yprec: int) -> Transition:
    """Construct x(y) for the reduced wild datum f, to precision O(y^yprec).

    Newton iteration on H(x) = x^n0 * q - u0(x) with q = y^(-n0 p) (1 - y^m):
    a root of H satisfies f(x(y)) = y^(-n0 p) - y^(-n0) by construction, and
    v(H') = -p with invertible leading term, so convergence is quadratic.
    """
    if f.kind is not ASKind.WILD:
        raise NotReduced("transition construction needs a wild reduced datum")
    series = f.f_red
    ctx = series.ctx
    p = ctx.p
    n0 = f.pole_order
    u0 = series.shift(n0)  # unit series in t
    m = n0 * (p - 1)
    q = LaurentSeries(ctx, {-n0 * p: 1, -n0 * p + m: -ctx.one()})
    u0prime = u0.derivative()
    x = LaurentSeries(ctx, {p: u0[0].nth_root(n0)}, yprec)  # RootNotInField propagates
    for _ in range(2 * yprec.bit_length() + 12):
        h = x ** n0 * q - u0.substitute(x)
        hp = (x ** (n0 - 1) * q).scalar_mul(n0) - u0prime.substitute(x)
        nxt = (x - h * hp.invert()).truncate(yprec)
        if nxt == x:
            break
        x = nxt
    else:
        raise OracleCheckError("uniformizer iteration did not stabilize")
    _check_residual(series, x, n0)
    return Transition(x, n0)


def _check_residual(series, x, n0):
    """f(x(y)) must reproduce y^(-n0 p) - y^(-n0) on the known region."""
    ctx = series.ctx
    lhs = series.substitute(x)
    rhs = _phi_pole(ctx, n0)
    if lhs.prec is not None and lhs.prec < 2:
        raise OracleCheckError(
            f"residual check region O(t^{lhs.prec}) too shallow to be meaningful"
        )
    if not lhs.same_known(rhs):
        raise OracleCheckError(
            "constructed uniformizer fails the defining relation: "
            f"f(x(y)) = {lhs!r} but a^p - a = {rhs!r}"
        )


def _phi_pole(ctx, n0):
    """a^p - a for a = y^(-n0), exactly."""
    return LaurentSeries(ctx, {-n0 * ctx.p: 1, -n0: -ctx.one()})


def oracle_p_cyclic_jump(f: ReducedAS, prec=None) -> int:
    """Measured lower jump of K(a)/K: v(sigma(y) - y) - 1."""
    p = f.f_red.ctx.p
    n0 = f.pole_order
    yprec = prec if prec is not None else margin(p, [n0]) - n0 * p
    tr = build_transition(f, yprec)
    ctx = tr.ctx
    one_plus = LaurentSeries(ctx, {0: 1, n0: 1})
    sigma_y = LaurentSeries.t_pow(ctx, 1) * one_plus.nth_root(n0, prec=yprec, principal=True)
    diff = sigma_y - LaurentSeries.t_pow(ctx, 1)
    return int(diff.val) - 1


def _second_component_image(v: ReducedWitt2, yprec: int):
    """a1^p - a1 as a series over k((y)), plus the transition used."""
    require_fully_wild(v)
    ctx = v.vec_red.ctx
    p = ctx.p
    n0, n1 = v.n0, v.n1
    alpha1 = v.vec_red.a1
    r0 = ReducedAS(v.vec_red.a0, LaurentSeries.zero(ctx), ASKind.WILD, pole_order=n0)
    # x(y) needs headroom: it is inverted and raised to the n1-th power
    xprec = yprec + (n1 + 2) * p
    tr = build_transition(r0, xprec)
    a0_img = _phi_pole(ctx, n0)  # alpha0(x(y)), exact by the residual check
    w = alpha1.substitute(tr.x)
    cs = bracket_coeffs(p)
    bracket = None
    for j in range(1, p):
        term = (a0_img ** (p - j) * LaurentSeries.t_pow(ctx, -n0 * j)).scalar_mul(cs[j - 1])
        bracket = term if bracket is None else bracket + term
    rhs = (w - bracket).truncate(yprec)
    return rhs, tr


def oracle_p2_second_jump(v: ReducedWitt2, prec=None) -> int:
    """Second lower jump of the p^2-cyclic extension, from the series over M."""
    p = v.vec_red.ctx.p
    n0, n1 = v.n0, v.n1
    yprec = prec if prec is not None else margin(p, [n0, n1]) - n0 * p * p
    rhs, _ = _second_component_image(v, yprec)
    r = reduce_as(rhs)
    if r.kind is not ASKind.WILD:
        raise OracleCheckError(
            f"second-component image reduced to a {r.kind.value} class; "
            "it must be wild for a totally ramified p^2-cyclic extension"
        )
    return r.pole_order


@dataclass(frozen=True)
class DerivativeCheck:
    dx_dy_valuation: int
    dimage_dy_valuation: int


def oracle_derivative_check(v: ReducedWitt2, prec=None) -> DerivativeCheck:
    """Valuations of dx/dy and d(alpha1(x))/dy against their predicted values.

    Predicted: v(dx/dy) = p*n0 - n0 + p - 1 and
    v(d(alpha1(x))/dy) = (n0 - n1)*p - n0 - 1; a sanity layer beneath the
    second-jump measurement (the latter pins the decisive coprime exponent).
    """
    p = v.vec_red.ctx.p
    n0, n1 = v.n0, v.n1
    yprec = prec if prec is not None else margin(p, [n0, n1]) - n0 * p * p
    xprec = yprec + (n1 + 2) * p
    r0 = ReducedAS(v.vec_red.a0, LaurentSeries.zero(v.vec_red.ctx), ASKind.WILD, pole_order=n0)
    tr = build_transition(r0, xprec)
    vdx = int(tr.x.derivative().val)
    want_dx = p * n0 - n0 + p - 1
    if vdx != want_dx:
        raise OracleCheckError(f"v(dx/dy) = {vdx}, expected {want_dx}")
    w = v.vec_red.a1.substitute(tr.x)
    vdw = int(w.derivative().val)
    want_dw = (n0 - n1) * p - n0 - 1
    if vdw != want_dw:
        raise OracleCheckError(f"v(d(alpha1(x))/dy) = {vdw}, expected {want_dw}")
    return DerivativeCheck(vdx, vdw)
