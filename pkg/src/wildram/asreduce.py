"""Reduction of Artin-Schreier elements and length-2 Witt vectors.

An element f of K = k((t)) is reduced when its pole order is coprime to p;
every class of K modulo the image of x -> x^p - x has such a representative,
found by repeatedly cancelling a leading pole c*t^(-pm) against
(c^(1/p) t^(-m))^p - c^(1/p) t^(-m).  Witt vectors are reduced component by
component, propagating the first-component correction through the genuine
Witt subtraction so the certificate original -_w reduced = (F-1)(shift) stays
exact.

Over a finite residue field (the paper's algebraically closed k is
approximated here) a poleless class is not automatically trivial: the
constant term survives modulo the Artin-Schreier image of k, detected by the
trace.  The classification is surfaced instead of rejected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .algebra import LaurentSeries
from .errors import EqualInputs, InsufficientPrecision, NotReduced
from .witt import WittVec2, frobenius_minus_id, witt_scalar, witt_sub


class ASKind(enum.Enum):
    WILD = "wild"              # pole order coprime to p
    UNRAMIFIED = "unramified"  # no pole; constant class with nonzero trace
    TRIVIAL = "trivial"        # in the image of x -> x^p - x


@dataclass(frozen=True)
class ReducedAS:
    """Reduced form of an AS datum: f - f_red = shift^p - shift exactly."""

    f_red: LaurentSeries
    shift: LaurentSeries
    kind: ASKind
    pole_order: int | None = None   # set iff kind is WILD
    residue_trace: int | None = None  # GF(p)-trace of the constant class otherwise

    def artin_schreier_image(self):
        return self.shift.pth_power() - self.shift


@dataclass(frozen=True)
class ReducedWitt2:
    """Reduced form of a Witt datum: original -_w vec_red = (F-1)(shift)."""

    vec_red: WittVec2
    shift: WittVec2
    kind0: ASKind
    kind1: ASKind
    n0: int | None = None
    n1: int | None = None

    @property
    def fully_wild(self):
        return self.kind0 is ASKind.WILD and self.kind1 is ASKind.WILD


def _strip_p_power_poles(f):
    """Cancel leading poles with p-divisible order; returns (g, shift)."""
    ctx = f.ctx
    p = ctx.p
    g = f
    shift = LaurentSeries.zero(ctx)
    while g.coeffs:
        v = min(g.coeffs)
        if v >= 0 or (-v) % p != 0:
            break
        m = -((-v) // p)
        s = LaurentSeries.t_pow(ctx, m, g.coeffs[v].pth_root())
        shift = shift + s
        g = g - (s.pth_power() - s)
    return g, shift


def reduce_as(f: LaurentSeries) -> ReducedAS:
    """Reduced representative of f modulo the Artin-Schreier image of K."""
    ctx = f.ctx
    p = ctx.p
    g, shift = _strip_p_power_poles(f)
    if g.coeffs and min(g.coeffs) < 0:
        n = -min(g.coeffs)
        f_red = f - (shift.pth_power() - shift)
        return ReducedAS(f_red, shift, ASKind.WILD, pole_order=n)
    # poleless: classify the constant term, absorb the positive tail
    if g.prec is not None and g.prec < 1:
        raise InsufficientPrecision(
            f"cannot classify a poleless class known only modulo O(t^{g.prec})"
        )
    c = g.coeffs.get(0, ctx.zero())
    tail = g - LaurentSeries.constant(ctx, c, g.prec)
    shift = shift + _tail_shift(tail)
    tr = c.trace()
    if tr != 0:
        f_red = f - (shift.pth_power() - shift)
        return ReducedAS(f_red, shift, ASKind.UNRAMIFIED, residue_trace=tr)
    xc = ctx.artin_schreier_solve(c)
    shift = shift + LaurentSeries.constant(ctx, xc)
    f_red = f - (shift.pth_power() - shift)
    return ReducedAS(f_red, shift, ASKind.TRIVIAL, residue_trace=0)


def _tail_shift(tail):
    """x with x^p - x = tail for val(tail) >= 1: x = -(tail + tail^p + ...)."""
    if tail.is_exact_zero():
        return tail
    if tail.prec is None:
        # the certificate would be an infinite series
        raise InsufficientPrecision(
            "absorbing a positive-valuation tail of an exact series needs a "
            "precision bound; truncate the input first"
        )
    acc = tail
    term = tail
    bound = acc.prec
    while True:
        term = term.pth_power()
        if term.val_floor() >= bound:
            break
        acc = acc + term
    return -acc


def reduce_witt2(v: WittVec2) -> ReducedWitt2:
    """Reduce both components; the extension class is unchanged."""
    r0 = reduce_as(v.a0)
    zero = LaurentSeries.zero(v.ctx)
    w = witt_sub(v, frobenius_minus_id(WittVec2(r0.shift, zero)))
    r1 = reduce_as(w.a1)
    vec_red = witt_sub(w, frobenius_minus_id(WittVec2(zero, r1.shift)))
    shift = WittVec2(r0.shift, r1.shift)
    n0 = r0.pole_order
    n1 = r1.pole_order
    return ReducedWitt2(vec_red, shift, r0.kind, r1.kind, n0=n0, n1=n1)


# ---------------------------------------------------------------------------
# equivalence of Witt data
# ---------------------------------------------------------------------------

class Relation(enum.Enum):
    EQUAL = "equal"
    SHARED_SUBFIELD = "shared-subfield"
    UNRAMIFIED_TWIST = "unramified-twist"
    DISJOINT = "disjoint"


@dataclass(frozen=True)
class EquivResult:
    relation: Relation
    c: int | None = None  # unit mod p^2 for EQUAL, mod p otherwise


def equivalence_class_test(v: WittVec2, w: WittVec2) -> EquivResult:
    """Classify the pair of p^2-cyclic extension data v, w (both reduced).

    EQUAL: v -_w c.w lies in (F-1)W_2(K) for a unit c of Z/p^2 (c.w is the
    c-fold Witt sum).  SHARED_SUBFIELD(c): only the first components satisfy
    v0 - c*w0 in (x^p - x)(K), c a unit of Z/p.  UNRAMIFIED_TWIST(c): the
    first components differ by a nonzero-trace constant, a case the source
    theory (algebraically closed residue field) cannot see.  DISJOINT
    otherwise.
    """
    p = v.ctx.p
    for c in range(1, p * p):
        if c % p == 0:
            continue
        d = witt_sub(v, witt_scalar(c, w))
        rd = reduce_witt2(d)
        if rd.kind0 is ASKind.TRIVIAL and rd.kind1 is ASKind.TRIVIAL:
            return EquivResult(Relation.EQUAL, c)
    twist = None
    for c in range(1, p):
        r = reduce_as(v.a0 - w.a0.scalar_mul(c))
        if r.kind is ASKind.TRIVIAL:
            return EquivResult(Relation.SHARED_SUBFIELD, c)
        if r.kind is ASKind.UNRAMIFIED and twist is None:
            twist = c
    if twist is not None:
        return EquivResult(Relation.UNRAMIFIED_TWIST, twist)
    return EquivResult(Relation.DISJOINT)


def require_fully_wild(r: ReducedWitt2, what="Witt vector"):
    if not r.fully_wild:
        raise NotReduced(
            f"{what} is degenerate: component kinds ({r.kind0.value}, {r.kind1.value})"
        )
    return r


def require_distinct(res: EquivResult):
    if res.relation is Relation.EQUAL:
        raise EqualInputs(
            f"inputs define the same extension (unit multiplier c={res.c} mod p^2)"
        )
    return res
