"""Length-2 Witt vectors over k((t)): ring operations and the F-1 operator.

The second-component correction polynomial is generated from the closed form
binom(p, j)/p reduced mod p, never transcribed by hand.  An independent
ghost-component oracle recomputes addition and subtraction through integer
lifts modulo p^2 (Galois ring GR(p^2, e)) with an exact division by p, and is
the arbiter of correctness for the universal polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import FieldCtx, FieldElem, LaurentSeries, _pmin, _padd
from .errors import ContextMismatch

INF = math.inf


def bracket_coeffs(p):
    """c_j = binom(p, j)/p mod p for j = 1..p-1 (exact integer division)."""
    out = []
    for j in range(1, p):
        b = math.comb(p, j)
        assert b % p == 0
        out.append((b // p) % p)
    return out


@dataclass(frozen=True)
class WittVec2:
    """Element (a0, a1) of W_2(k((t))); components share the coefficient field."""

    a0: LaurentSeries
    a1: LaurentSeries

    def __post_init__(self):
        if self.a0.ctx != self.a1.ctx:
            raise ContextMismatch("Witt vector components over different fields")

    @property
    def ctx(self):
        return self.a0.ctx

    @classmethod
    def zero(cls, ctx, prec=None):
        return cls(LaurentSeries.zero(ctx, prec), LaurentSeries.zero(ctx, prec))

    def same_known(self, other):
        return self.a0.same_known(other.a0) and self.a1.same_known(other.a1)

    def __repr__(self):
        return f"W2( {self.a0!r} ; {self.a1!r} )"


def _check_pair(a, b):
    if a.ctx != b.ctx:
        raise ContextMismatch("Witt vectors over different coefficient fields")


def _bracket(x0, y0):
    """sum_j c_j x0^(p-j) y0^j, the universal second-component correction."""
    p = x0.ctx.p
    cs = bracket_coeffs(p)
    xp = [None, x0]
    yp = [None, y0]
    for i in range(2, p):
        xp.append(xp[-1] * x0)
        yp.append(yp[-1] * y0)
    acc = None
    for j in range(1, p):
        term = (xp[p - j] * yp[j]).scalar_mul(cs[j - 1])
        acc = term if acc is None else acc + term
    return acc


def witt_add(a: WittVec2, b: WittVec2) -> WittVec2:
    _check_pair(a, b)
    return WittVec2(a.a0 + b.a0, a.a1 + b.a1 - _bracket(a.a0, b.a0))


def witt_sub(a: WittVec2, b: WittVec2) -> WittVec2:
    """a -_w b, defined so that witt_add(witt_sub(a, b), b) == a exactly."""
    _check_pair(a, b)
    d0 = a.a0 - b.a0
    return WittVec2(d0, a.a1 - b.a1 + _bracket(d0, b.a0))


def witt_neg(a: WittVec2) -> WittVec2:
    return witt_sub(WittVec2.zero(a.ctx), a)


def witt_scalar(m: int, a: WittVec2) -> WittVec2:
    """m-fold Witt sum of a (m >= 0)."""
    if m < 0:
        return witt_neg(witt_scalar(-m, a))
    acc = WittVec2.zero(a.ctx)
    for _ in range(m):
        acc = witt_add(acc, a)
    return acc


def frobenius_minus_id(x: WittVec2) -> WittVec2:
    """(x0^p, x1^p) -_w (x0, x1); kernel on constants is W_2(F_p)."""
    fx = WittVec2(x.a0.pth_power(), x.a1.pth_power())
    return witt_sub(fx, x)


# ---------------------------------------------------------------------------
# ghost-component oracle over the Galois ring GR(p^2, e)
#
# Coefficients lift coordinate-wise to Z/p^2 and multiply modulo the lifted
# modulus.  Ghost components (w0, w1) = (x0, x0^p + p*x1) are additive, and the
# inverse ghost map divides by p exactly; an inexact division is a hard
# assertion failure, never a rounding.
# ---------------------------------------------------------------------------

class _GaloisRing:
    """Z/p^2[X]/(modulus lifted with coefficients in {0..p-1})."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.p = ctx.p
        self.p2 = ctx.p * ctx.p
        self.e = ctx.e
        mod = list(ctx.modulus)
        rows = []
        cur = [(-m) % self.p2 for m in mod[:-1]]
        rows.append(tuple(cur))
        for _ in range(self.e - 2):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for k in range(self.e):
                    nxt[k] = (nxt[k] + top * rows[0][k]) % self.p2
            cur = nxt
            rows.append(tuple(cur))
        self._rows = tuple(rows)

    def lift(self, x: FieldElem):
        return x.coords  # canonical integer lift in {0..p-1}

    def zero(self):
        return (0,) * self.e

    def add(self, a, b):
        return tuple((x + y) % self.p2 for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p2 for x, y in zip(a, b))

    def mul(self, a, b):
        if self.e == 1:
            return ((a[0] * b[0]) % self.p2,)
        e = self.e
        full = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    full[i + j] = (full[i + j] + ai * bj) % self.p2
        out = full[:e]
        for i in range(e, 2 * e - 1):
            c = full[i]
            if c:
                row = self._rows[i - e]
                for k in range(e):
                    out[k] = (out[k] + c * row[k]) % self.p2
        return tuple(out)

    def reduce_mod_p(self, a):
        return self.ctx.elem(tuple(x % self.p for x in a))

    def exact_div_p(self, a):
        for x in a:
            assert x % self.p == 0, "ghost inversion: division by p is not exact"
        return tuple((x // self.p) % self.p2 for x in a)


def _lift_series(R, s):
    return {k: R.lift(v) for k, v in s.coeffs.items()}


def _series_add(R, a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = R.add(out[k], v) if k in out else v
    return {k: v for k, v in out.items() if any(v)}


def _series_sub(R, a, b):
    nb = {k: R.sub(R.zero(), v) for k, v in b.items()}
    return _series_add(R, a, nb)


def _series_mul(R, a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            prod = R.mul(va, vb)
            out[k] = R.add(out[k], prod) if k in out else prod
    return {k: v for k, v in out.items() if any(v)}


def _series_pow(R, a, n):
    result = None
    base = a
    while n:
        if n & 1:
            result = dict(base) if result is None else _series_mul(R, result, base)
        n >>= 1
        if n:
            base = _series_mul(R, base, base)
    return result if result is not None else {0: (1,) + (0,) * (R.e - 1)}


def _series_scale_p(R, a):
    return {k: tuple((x * R.p) % R.p2 for x in v) for k, v in a.items()}


def _ghost_combine(a: WittVec2, b: WittVec2, sign: int) -> WittVec2:
    _check_pair(a, b)
    ctx = a.ctx
    p = ctx.p
    R = _GaloisRing(ctx)
    A0, A1 = _lift_series(R, a.a0), _lift_series(R, a.a1)
    B0, B1 = _lift_series(R, b.a0), _lift_series(R, b.a1)
    # ghost components w1 = x0^p + p*x1, well defined mod p^2
    WA1 = _series_add(R, _series_pow(R, A0, p), _series_scale_p(R, A1))
    WB1 = _series_add(R, _series_pow(R, B0, p), _series_scale_p(R, B1))
    if sign > 0:
        S0 = _series_add(R, A0, B0)
        W1 = _series_add(R, WA1, WB1)
    else:
        S0 = _series_sub(R, A0, B0)
        W1 = _series_sub(R, WA1, WB1)
    # re-lift the mod-p reduction of S0 before inverting the ghost map
    s0_modp = {k: R.reduce_mod_p(v) for k, v in S0.items()}
    S0c = {k: R.lift(v) for k, v in s0_modp.items() if not v.is_zero()}
    num = _series_sub(R, W1, _series_pow(R, S0c, p))
    S1 = {k: R.exact_div_p(v) for k, v in num.items()}

    # Precision the lift can justify: an unknown tail eps of a first component
    # enters x0^p mod p^2 through the cross term p*x0^(p-1)*eps, which survives
    # the exact division by p at valuation >= (p-1)*val(x0) + prec(x0).
    def cross(prec, vfloor):
        if prec is None:
            return None
        return (p - 1) * int(min(vfloor, prec)) + prec

    prec0 = _pmin(a.a0.prec, b.a0.prec)
    vmin = min(a.a0.val_floor(), b.a0.val_floor())
    prec1 = _pmin(
        a.a1.prec,
        b.a1.prec,
        cross(a.a0.prec, a.a0.val_floor()),
        cross(b.a0.prec, b.a0.val_floor()),
        cross(prec0, vmin),
    )

    out0 = LaurentSeries(ctx, {k: v for k, v in s0_modp.items()}, prec0)
    out1 = LaurentSeries(ctx, {k: R.reduce_mod_p(v) for k, v in S1.items()}, prec1)
    return WittVec2(out0, out1)


def ghost_oracle_add(a: WittVec2, b: WittVec2) -> WittVec2:
    return _ghost_combine(a, b, +1)


def ghost_oracle_sub(a: WittVec2, b: WittVec2) -> WittVec2:
    return _ghost_combine(a, b, -1)
