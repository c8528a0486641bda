"""Ramification jump profiles: cyclic formulas, composita, Herbrand conversion.

Lower/upper conversion uses the index sums
    u_i = sum_j (l_j - l_{j-1}) / s_j,    l_i = sum_j (u_j - u_{j-1}) * s_j,
with s_j = [G : G_{l_j}], valid whenever G_0 is a p-group (s_1 = 1).  The
p^2-cyclic lower jumps are (n0, n0(p^2-p+1)) when n1 <= p*n0 and
(n0, p(n1-n0)+n0) otherwise; converted upper jumps are (n0, max(p*n0, n1)).
That conversion route is the source of truth for factor jumps inside the
compositum logic; where the source text's printed formulas for those jumps
disagree with it, a note is attached to the report instead of silently
correcting either side.  Hypotheses the theory leaves open produce status
"undetermined" naming the failed hypothesis, never an extrapolated profile.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LaurentSeries
from .asreduce import (
    ASKind,
    ReducedAS,
    ReducedWitt2,
    Relation,
    equivalence_class_test,
    reduce_as,
    require_distinct,
    require_fully_wild,
)
from .errors import DomainError, EqualInputs, NotReduced
from .report import RamReport, Status
from .witt import WittVec2, frobenius_minus_id, witt_add


@dataclass(frozen=True)
class JumpProfile:
    """Jumps with the filtration-group order on each segment.

    orders[0] = |G_0|, orders[k] = order after the k-th jump, last entry 1.
    """

    numbering: str  # "lower" or "upper"
    jumps: tuple
    orders: tuple
    group: str = ""

    def __post_init__(self):
        if self.numbering not in ("lower", "upper"):
            raise DomainError(f"bad numbering {self.numbering!r}")
        jumps = tuple(Fraction(j) for j in self.jumps)
        object.__setattr__(self, "jumps", jumps)
        object.__setattr__(self, "orders", tuple(int(o) for o in self.orders))
        if len(self.orders) != len(jumps) + 1:
            raise DomainError("orders must have one more entry than jumps")
        if any(j <= 0 for j in jumps) or any(a >= b for a, b in zip(jumps, jumps[1:])):
            raise DomainError(f"jumps must be strictly increasing and positive: {jumps}")
        if self.numbering == "lower" and any(j.denominator != 1 for j in jumps):
            raise DomainError(f"lower jumps must be integers: {jumps}")
        o = self.orders
        if o[-1] != 1 or any(a <= b for a, b in zip(o, o[1:])) or any(
            a % b for a, b in zip(o, o[1:])
        ):
            raise DomainError(f"orders must be a strictly decreasing divisor chain to 1: {o}")

    def indices(self):
        """s_j = [G : G at the j-th jump], j = 1..r."""
        return tuple(self.orders[0] // self.orders[j - 1] for j in range(1, len(self.jumps) + 1))


def lower_to_upper(profile: JumpProfile) -> JumpProfile:
    if profile.numbering != "lower":
        raise DomainError("lower_to_upper needs a lower-numbered profile")
    s = profile.indices()
    uppers = []
    acc = Fraction(0)
    prev = Fraction(0)
    for j, l in enumerate(profile.jumps):
        acc += Fraction(l - prev, s[j])
        uppers.append(acc)
        prev = l
    return JumpProfile("upper", tuple(uppers), profile.orders, profile.group)


def upper_to_lower(profile: JumpProfile) -> JumpProfile:
    if profile.numbering != "upper":
        raise DomainError("upper_to_lower needs an upper-numbered profile")
    s = profile.indices()
    lowers = []
    acc = Fraction(0)
    prev = Fraction(0)
    for j, u in enumerate(profile.jumps):
        acc += (u - prev) * s[j]
        lowers.append(acc)
        prev = u
    return JumpProfile("lower", tuple(lowers), profile.orders, profile.group)


def herbrand_phi(profile: JumpProfile, v) -> Fraction:
    """phi(v) = integral_0^v du / [G:G_u], exact piecewise-linear evaluation."""
    if profile.numbering != "lower":
        raise DomainError("herbrand_phi needs a lower-numbered profile")
    v = Fraction(v)
    if v < 0:
        raise DomainError("herbrand_phi needs v >= 0")
    acc = Fraction(0)
    prev = Fraction(0)
    g0 = profile.orders[0]
    for l, o in zip(profile.jumps, profile.orders):
        top = min(v, Fraction(l))
        if top > prev:
            acc += (top - prev) * Fraction(o, g0)
        if v <= l:
            return acc
        prev = Fraction(l)
    acc += (v - prev) * Fraction(profile.orders[-1], g0)
    return acc


def herbrand_psi(profile: JumpProfile, u) -> Fraction:
    """Inverse of phi for the same lower-numbered profile."""
    if profile.numbering != "lower":
        raise DomainError("herbrand_psi needs a lower-numbered profile")
    u = Fraction(u)
    if u < 0:
        raise DomainError("herbrand_psi needs u >= 0")
    g0 = profile.orders[0]
    prev_l = Fraction(0)
    prev_u = Fraction(0)
    for l, o in zip(profile.jumps, profile.orders):
        slope = Fraction(o, g0)
        seg_u = prev_u + (Fraction(l) - prev_l) * slope
        if u <= seg_u:
            return prev_l + (u - prev_u) / slope
        prev_l, prev_u = Fraction(l), seg_u
    slope = Fraction(profile.orders[-1], g0)
    return prev_l + (u - prev_u) / slope


def different_degree(profile: JumpProfile) -> int:
    """Hilbert's formula sum_{i>=0} (|G_i| - 1) over integer i, segment-wise."""
    if profile.numbering != "lower":
        raise DomainError("different_degree needs a lower-numbered profile")
    if not profile.jumps:
        return 0
    ls = [int(j) for j in profile.jumps]
    deg = (ls[0] + 1) * (profile.orders[0] - 1)
    for j in range(1, len(ls)):
        deg += (ls[j] - ls[j - 1]) * (profile.orders[j] - 1)
    return deg


# ---------------------------------------------------------------------------
# cyclic building blocks
# ---------------------------------------------------------------------------

def jumps_p_cyclic(r: ReducedAS) -> JumpProfile:
    """Single jump of a totally ramified p-cyclic extension: the pole order."""
    if r.kind is not ASKind.WILD:
        raise NotReduced(f"not a wildly ramified datum (kind {r.kind.value})")
    p = r.f_red.ctx.p
    return JumpProfile("lower", (r.pole_order,), (p, 1), group=f"Z/{p}")


def jumps_p2_cyclic(r: ReducedWitt2) -> JumpProfile:
    """Lower jumps of a p^2-cyclic extension from the reduced pole orders."""
    require_fully_wild(r)
    p = r.vec_red.ctx.p
    n0, n1 = r.n0, r.n1
    if n1 <= n0 * p:
        second = n0 * (p * p - p + 1)
        case = "n1<=p*n0"
    else:
        second = p * (n1 - n0) + n0
        case = "n1>p*n0"
    prof = JumpProfile("lower", (n0, second), (p * p, p, 1), group=f"Z/{p * p}")
    return prof


def p2_case_label(r: ReducedWitt2) -> str:
    p = r.vec_red.ctx.p
    return "n1<=p*n0" if r.n1 <= r.n0 * p else "n1>p*n0"


def profile_report(lower: JumpProfile, group=None, case="", status=Status.FORMULA_ONLY,
                   notes=()) -> RamReport:
    upper = lower_to_upper(lower)
    return RamReport(
        group=group if group is not None else lower.group,
        case=case,
        upper_jumps=upper.jumps,
        lower_jumps=lower.jumps,
        orders=lower.orders,
        different_degree=different_degree(lower),
        status=status,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# compositum of two p-cyclic extensions
# ---------------------------------------------------------------------------

def _chain_orders(total, njumps):
    """Divisor chain dropping by p at each of njumps jumps, from total = p^njumps."""
    p = 1
    while p ** njumps < total:
        p += 1
    assert p ** njumps == total
    return tuple(total // p ** k for k in range(njumps + 1))


def compositum_p_cyclic(f: LaurentSeries, g: LaurentSeries) -> RamReport:
    """Filtration of the compositum of the two AS extensions given by f, g."""
    p = f.ctx.p
    rf, rg = reduce_as(f), reduce_as(g)
    for r, name in ((rf, "f"), (rg, "g")):
        if r.kind is not ASKind.WILD:
            raise NotReduced(f"{name} does not define a totally ramified p-cyclic extension")
    i, j = rf.pole_order, rg.pole_order
    group = f"(Z/{p})^2"
    if i == j:
        for c in range(1, p):
            if reduce_as(f - g.scalar_mul(c)).kind is ASKind.TRIVIAL:
                raise EqualInputs(f"f and g are Artin-Schreier equivalent (f = {c}*g mod im(x^p-x))")
    if i != j:
        lo, hi = min(i, j), max(i, j)
        prof = upper_to_lower(
            JumpProfile("upper", (lo, hi), (p * p, p, 1), group=group)
        )
        return profile_report(prof, case="compositum distinct-jumps")
    # i == j: search the mixed classes f + a*g, a in F_p (a = 0 is f itself)
    drop = None
    unram = None
    for a in range(1, p):
        r = reduce_as(f + g.scalar_mul(a))
        if r.kind is ASKind.TRIVIAL:
            raise AssertionError("trivial mixed class must have been caught as equivalence")
        if r.kind is ASKind.UNRAMIFIED:
            unram = (a, r)
        elif r.pole_order < i:
            assert drop is None, "at most one mixed class can drop below the common jump"
            drop = (a, r)
    if unram is not None:
        a, r = unram
        prof = JumpProfile("lower", (i,), (p, 1), group=f"Z/{p}")
        rep = profile_report(
            prof,
            group=group,
            case="compositum unramified-piece",
            notes=(
                f"not totally ramified: f + {a}*g reduces to a constant of trace "
                f"{r.residue_trace}; inertia Z/{p}, profile describes the inertia group",
            ),
        )
        return rep
    if drop is not None:
        a, r = drop
        l = r.pole_order
        prof = upper_to_lower(JumpProfile("upper", (l, i), (p * p, p, 1), group=group))
        return profile_report(
            prof,
            case="compositum equal-jumps drop",
            notes=(f"mixed class f + {a}*g reduces to pole order {l} < {i}",),
        )
    prof = JumpProfile("lower", (i,), (p * p, 1), group=group)
    return profile_report(prof, case="compositum equal-jumps no-drop")


# ---------------------------------------------------------------------------
# compositum of two p^2-cyclic extensions
# ---------------------------------------------------------------------------

def _factor_jump_notes(r: ReducedWitt2, name):
    """Divergence of the printed linearly-disjoint statement from the conversion."""
    p = r.vec_red.ctx.p
    n0, n1 = r.n0, r.n1
    if n1 <= p * n0:
        return (
            f"{name}: upper jumps ({n0}, {p * n0}) via conversion; the printed "
            f"statement's ({n0}, {n0 * (p - 1)}) is inconsistent with it",
        )
    return (
        f"{name}: upper jumps ({n0}, {n1}) via conversion; the printed statement's "
        f"second entry has the sign of the valuation flipped",
    )


def _undetermined(group, case, hypothesis, known_upper=()):
    return RamReport(
        group=group,
        case=case,
        upper_jumps=tuple(sorted(known_upper)),
        status=Status.UNDETERMINED,
        notes=(f"undetermined: {hypothesis}",),
    )


def compositum_p2(v: ReducedWitt2, w: ReducedWitt2) -> RamReport:
    """Filtration of the compositum of two p^2-cyclic extensions."""
    require_fully_wild(v, "first Witt vector")
    require_fully_wild(w, "second Witt vector")
    p = v.vec_red.ctx.p
    rel = require_distinct(equivalence_class_test(v.vec_red, w.vec_red))

    uv = lower_to_upper(jumps_p2_cyclic(v)).jumps
    uw = lower_to_upper(jumps_p2_cyclic(w)).jumps
    u0, u1 = uv
    v0, v1 = uw

    if rel.relation is Relation.UNRAMIFIED_TWIST:
        return _undetermined(
            f"Z/{p * p} x Z/{p * p} / unknown intersection",
            "compositum-p2 unramified-twist",
            "first components differ by a nonzero-trace constant; the source theory "
            "assumes an algebraically closed residue field and cannot classify this",
            known_upper=set(),
        )

    if rel.relation is Relation.DISJOINT:
        group = f"(Z/{p * p})^2"
        notes = _factor_jump_notes(v, "factor 1") + _factor_jump_notes(w, "factor 2")
        if u0 != v0:
            all_jumps = {u0, u1, v0, v1}
            if len(all_jumps) == 4:
                prof = upper_to_lower(
                    JumpProfile("upper", tuple(sorted(all_jumps)), _chain_orders(p ** 4, 4),
                                group=group)
                )
                return profile_report(
                    prof, case="compositum-p2 disjoint distinct-first", notes=notes
                )
            return _undetermined(
                group,
                "compositum-p2 disjoint distinct-first",
                f"upper jump sets {{{u0}, {u1}}} and {{{v0}, {v1}}} overlap; the "
                "union-cardinality argument does not determine the full profile",
                known_upper={min(u0, v0)},
            )
        # u0 == v0: search for a first-component drop
        drop = None
        for c in range(1, p):
            r = reduce_as(v.vec_red.a0 + w.vec_red.a0.scalar_mul(c))
            if r.kind is ASKind.TRIVIAL:
                raise AssertionError("disjoint classes cannot share the first component")
            if r.kind is ASKind.UNRAMIFIED:
                return _undetermined(
                    group,
                    "compositum-p2 disjoint",
                    "the compositum of the two p-cyclic subextensions is not totally "
                    "ramified over the finite residue field; outside the source theory",
                    known_upper=set(),
                )
            if r.pole_order < u0:
                assert drop is None
                drop = (c, r.pole_order)
        if drop is not None:
            c, l = drop
            if u1 != v1:
                jumps = tuple(sorted({Fraction(l), u0, u1, v1}))
                assert len(jumps) == 4
                prof = upper_to_lower(
                    JumpProfile("upper", jumps, _chain_orders(p ** 4, 4), group=group)
                )
                return profile_report(
                    prof,
                    case="compositum-p2 disjoint drop",
                    notes=notes + (f"first components mix to pole order {l} at c={c}",),
                )
            return _undetermined(
                group,
                "compositum-p2 disjoint drop",
                f"second upper jumps coincide (u1 = v1 = {u1}); not covered",
                known_upper={Fraction(l), u0, u1},
            )
        if u1 != v1:
            jumps = tuple(sorted({u0, u1, v1}))
            orders = (p ** 4, p * p, p, 1)
            prof = upper_to_lower(JumpProfile("upper", jumps, orders, group=group))
            return profile_report(
                prof, case="compositum-p2 disjoint no-drop", notes=notes
            )
        return _undetermined(
            group,
            "compositum-p2 disjoint no-drop",
            f"second upper jumps coincide (u1 = v1 = {u1}); not covered",
            known_upper={u0, u1},
        )

    # shared p-cyclic subfield: G = Z/p^2 x Z/p
    assert rel.relation is Relation.SHARED_SUBFIELD
    c = rel.c
    group = f"Z/{p * p} x Z/{p}"
    assert u0 == v0, "scalar-related first components must share the first jump"
    if u1 != v1:
        jumps = tuple(sorted({u0, u1, v1}))
        prof = upper_to_lower(JumpProfile("upper", jumps, _chain_orders(p ** 3, 3), group=group))
        return profile_report(
            prof,
            case="compositum-p2 shared-subfield distinct-second",
            notes=(f"shared p-cyclic subfield with multiplier c={c}",),
        )
    # u1 == v1: normalize the second vector so the first components agree exactly
    r0 = reduce_as(v.vec_red.a0 - w.vec_red.a0.scalar_mul(c))
    assert r0.kind is ASKind.TRIVIAL
    cinv = pow(c, -1, p)
    adjust = frobenius_minus_id(
        WittVec2(r0.shift.scalar_mul(cinv), LaurentSeries.zero(v.vec_red.ctx))
    )
    w_adj = witt_add(w.vec_red, adjust)
    if not w_adj.a0.scalar_mul(c).same_known(v.vec_red.a0):
        raise AssertionError("first-component normalization failed")
    delta = v.vec_red.a1 - w_adj.a1.scalar_mul(c)
    rd = reduce_as(delta)
    if rd.kind is ASKind.WILD and Fraction(rd.pole_order) not in (u0, u1):
        m = Fraction(rd.pole_order)
        jumps = tuple(sorted({u0, u1, m}))
        prof = upper_to_lower(JumpProfile("upper", jumps, _chain_orders(p ** 3, 3), group=group))
        return profile_report(
            prof,
            case="compositum-p2 shared-subfield equal-second",
            notes=(
                f"shared p-cyclic subfield with multiplier c={c}; "
                f"difference class has pole order {rd.pole_order}",
            ),
        )
    if rd.kind is ASKind.WILD:
        hyp = (
            f"difference of second components reduces to pole order {rd.pole_order}, "
            f"colliding with an existing upper jump ({u0}, {u1}); not covered"
        )
    else:
        hyp = (
            f"difference of second components reduces to a {rd.kind.value} class; "
            "the covered case needs a wild pole order distinct from the jumps"
        )
    return _undetermined(
        group, "compositum-p2 shared-subfield equal-second", hyp, known_upper={u0, u1}
    )
