"""Jump profiles: conversions, Herbrand functions, cyclic and compositum cases."""

import random
from fractions import Fraction

import pytest

from conftest import F2, F3, F5, F9
from wildram.algebra import FieldCtx, LaurentSeries, parse_series
from wildram.asreduce import reduce_as, reduce_witt2
from wildram.errors import DomainError, EqualInputs, NotReduced
from wildram.ramfilt import (
    JumpProfile,
    compositum_p2,
    compositum_p_cyclic,
    different_degree,
    herbrand_phi,
    herbrand_psi,
    jumps_p2_cyclic,
    jumps_p_cyclic,
    lower_to_upper,
    upper_to_lower,
)
from wildram.report import Status
from wildram.witt import WittVec2


def S(text, ctx):
    return parse_series(text, ctx=ctx)


def witt(ctx, s0, s1):
    return reduce_witt2(WittVec2(S(s0, ctx), S(s1, ctx)))


# ---------------------------------------------------------------------------
# profile validation and conversion
# ---------------------------------------------------------------------------

def test_profile_validation():
    with pytest.raises(DomainError):
        JumpProfile("lower", (3, 2), (4, 2, 1))  # not increasing
    with pytest.raises(DomainError):
        JumpProfile("lower", (1, 2), (4, 3, 1))  # not a divisor chain
    with pytest.raises(DomainError):
        JumpProfile("lower", (1,), (4, 2))  # does not end at 1
    with pytest.raises(DomainError):
        JumpProfile("lower", (Fraction(3, 2),), (2, 1))  # lower jumps integral


def test_single_jump_unchanged():
    prof = JumpProfile("lower", (7,), (8, 1))
    up = lower_to_upper(prof)
    assert up.jumps == (Fraction(7),)


def test_conversion_examples():
    low = JumpProfile("lower", (1, 7), (9, 3, 1))
    up = lower_to_upper(low)
    assert up.jumps == (Fraction(1), Fraction(3))
    assert upper_to_lower(up) == low

    up2 = JumpProfile("upper", (1, 3), (4, 2, 1))
    low2 = upper_to_lower(up2)
    assert low2.jumps == (Fraction(1), Fraction(5))
    assert lower_to_upper(low2) == up2


def test_herbrand_examples():
    prof = JumpProfile("lower", (1, 7), (9, 3, 1))
    assert herbrand_phi(prof, 0) == 0
    assert herbrand_phi(prof, Fraction(1, 2)) == Fraction(1, 2)  # phi(v) = v below 1st jump
    assert herbrand_phi(prof, 1) == 1
    assert herbrand_phi(prof, 7) == 3  # matches lower_to_upper
    assert herbrand_phi(prof, 10) == 3 + Fraction(3, 9)


def test_herbrand_round_trip(rng):
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        r = rng.randrange(1, 5)
        exps = sorted(rng.sample(range(1, 8), r), reverse=True) + [0]
        orders = tuple(p ** k for k in exps)
        jumps = sorted(rng.sample(range(1, 60), r))
        prof = JumpProfile("lower", tuple(jumps), orders)
        up = lower_to_upper(prof)
        assert upper_to_lower(up) == prof
        for _ in range(5):
            v = Fraction(rng.randrange(0, 200), rng.randrange(1, 8))
            assert herbrand_psi(prof, herbrand_phi(prof, v)) == v
        # jump values line up with phi
        for l, u in zip(prof.jumps, up.jumps):
            assert herbrand_phi(prof, l) == u


def test_different_degree_examples():
    assert different_degree(JumpProfile("lower", (1,), (2, 1))) == 2
    assert different_degree(JumpProfile("lower", (1, 3), (4, 2, 1))) == 8
    assert different_degree(JumpProfile("lower", (), (1,))) == 0


# ---------------------------------------------------------------------------
# cyclic profiles
# ---------------------------------------------------------------------------

def test_jumps_p_cyclic_examples():
    assert jumps_p_cyclic(reduce_as(S("t^-1 + O(t^9)", F3))).jumps == (1,)
    assert jumps_p_cyclic(reduce_as(S("t^-5 + O(t^9)", F2))).jumps == (5,)
    prof = jumps_p_cyclic(reduce_as(S("t^-3 + t^-1 + O(t^9)", F5)))
    assert prof.jumps == (3,) and prof.orders == (5, 1)
    with pytest.raises(NotReduced):
        jumps_p_cyclic(reduce_as(S("1 + O(t^9)", F3)))


def test_jumps_p2_cyclic_examples():
    prof = jumps_p2_cyclic(witt(F3, "t^-1 + O(t^30)", "t^-2 + O(t^30)"))
    assert [int(j) for j in prof.jumps] == [1, 7]
    prof = jumps_p2_cyclic(witt(F3, "t^-1 + O(t^30)", "t^-5 + O(t^30)"))
    assert [int(j) for j in prof.jumps] == [1, 13]
    prof = jumps_p2_cyclic(witt(F2, "t^-3 + O(t^30)", "t^-7 + O(t^30)"))
    assert [int(j) for j in prof.jumps] == [3, 11]
    assert [int(j) for j in lower_to_upper(prof).jumps] == [3, 7]
    with pytest.raises(NotReduced):
        jumps_p2_cyclic(witt(F3, "t^-1 + O(t^30)", "0 + O(t^30)"))


def test_p2_upper_jump_is_max_rule():
    # upper second jump equals max(p*n0, n1) across the grid
    for ctx in (F2, F3, F5):
        p = ctx.p
        for n0 in range(1, 21):
            if n0 % p == 0:
                continue
            for n1 in range(1, 21):
                if n1 % p == 0:
                    continue
                r = witt(ctx, f"t^-{n0} + O(t^40)", f"t^-{n1} + O(t^40)")
                up = lower_to_upper(jumps_p2_cyclic(r))
                assert up.jumps == (Fraction(n0), Fraction(max(p * n0, n1)))


# ---------------------------------------------------------------------------
# compositum of p-cyclic extensions
# ---------------------------------------------------------------------------

def test_compositum_distinct_jumps():
    rep = compositum_p_cyclic(S("t^-1 + O(t^20)", F3), S("t^-2 + O(t^20)", F3))
    assert rep.case == "compositum distinct-jumps"
    assert [int(j) for j in rep.upper_jumps] == [1, 2]
    assert [int(j) for j in rep.lower_jumps] == [1, 4]
    assert rep.orders == (9, 3, 1)
    assert rep.group == "(Z/3)^2"


def test_compositum_scalar_equivalent_inputs_error():
    # t^-1 and 2*t^-1 generate the same field (c = 2); not a (Z/p)^2 compositum
    with pytest.raises(EqualInputs):
        compositum_p_cyclic(S("t^-1 + O(t^20)", F3), S("2*t^-1 + O(t^20)", F3))


def test_compositum_unramified_piece():
    # f + 1*g = 1, a nonzero-trace constant: inertia Z/3, single jump
    rep = compositum_p_cyclic(S("t^-1 + 1 + O(t^20)", F3), S("2*t^-1 + O(t^20)", F3))
    assert rep.case == "compositum unramified-piece"
    assert [int(j) for j in rep.upper_jumps] == [1]
    assert rep.orders == (3, 1)
    assert rep.group == "(Z/3)^2"
    assert any("inertia" in n for n in rep.notes)


def test_compositum_equal_jumps_drop():
    rep = compositum_p_cyclic(S("t^-2 + O(t^20)", F3), S("t^-2 + t^-1 + O(t^20)", F3))
    assert rep.case == "compositum equal-jumps drop"
    assert [int(j) for j in rep.upper_jumps] == [1, 2]
    assert [int(j) for j in rep.lower_jumps] == [1, 4]


def test_compositum_equal_jumps_no_drop():
    # needs F_p-independent leading coefficients, hence e = 2
    w = S("[0,1]*t^-2 + O(t^20)", F9)
    rep = compositum_p_cyclic(S("t^-2 + O(t^20)", F9), w)
    assert rep.case == "compositum equal-jumps no-drop"
    assert [int(j) for j in rep.upper_jumps] == [2]
    assert rep.orders == (9, 1)
    assert rep.different_degree == 3 * 8


def test_compositum_jump_count_bounded_by_group_order(rng):
    # number of upper jumps <= log_p |G| on random wild pairs
    for ctx in (F2, F3, F5):
        p = ctx.p
        for _ in range(15):
            n1 = rng.choice([n for n in range(2, 9) if n % p])
            n2 = rng.choice([n for n in range(2, 9) if n % p])
            f = LaurentSeries(ctx, {-n1: 1, -1: ctx.random_elem(rng)}, 20)
            g = LaurentSeries(ctx, {-n2: 1, 0: ctx.random_elem(rng)}, 20)
            try:
                rep = compositum_p_cyclic(f, g)
            except EqualInputs:
                continue
            assert len(rep.upper_jumps) <= 2


# ---------------------------------------------------------------------------
# compositum of p^2-cyclic extensions
# ---------------------------------------------------------------------------

def test_compositum_p2_disjoint_distinct_first():
    # u-sets {1,3} and {2,6}: four distinct upper jumps (union rule applies)
    v = witt(F3, "t^-1 + O(t^60)", "t^-2 + O(t^60)")
    w = witt(F3, "t^-2 + O(t^60)", "t^-5 + O(t^60)")
    rep = compositum_p2(v, w)
    assert rep.case == "compositum-p2 disjoint distinct-first"
    assert [int(j) for j in rep.upper_jumps] == [1, 2, 3, 6]
    assert rep.orders == (81, 27, 9, 3, 1)
    assert rep.group == "(Z/9)^2"
    assert rep.status is Status.FORMULA_ONLY


def test_compositum_p2_shared_subfield_distinct_second():
    v = witt(F3, "t^-1 + O(t^60)", "t^-2 + O(t^60)")
    w = witt(F3, "2*t^-1 + O(t^60)", "t^-5 + O(t^60)")
    rep = compositum_p2(v, w)
    assert rep.case == "compositum-p2 shared-subfield distinct-second"
    assert [int(j) for j in rep.upper_jumps] == [1, 3, 5]
    assert rep.orders == (27, 9, 3, 1)
    assert rep.group == "Z/9 x Z/3"


def test_compositum_p2_equal_inputs_error():
    v = witt(F3, "t^-1 + O(t^60)", "t^-2 + O(t^60)")
    with pytest.raises(EqualInputs):
        compositum_p2(v, v)


def test_compositum_p2_disjoint_drop():
    # shared first upper jump 2; mixing first components drops to pole order 1
    v = witt(F3, "t^-2 + O(t^80)", "t^-1 + O(t^80)")
    w = witt(F3, "t^-2 + t^-1 + O(t^80)", "t^-7 + O(t^80)")
    rep = compositum_p2(v, w)
    assert rep.case == "compositum-p2 disjoint drop"
    assert [int(j) for j in rep.upper_jumps] == [1, 2, 6, 7]
    assert rep.orders == (81, 27, 9, 3, 1)


def test_compositum_p2_disjoint_no_drop():
    v = reduce_witt2(WittVec2(S("t^-2 + O(t^80)", F9), S("t^-1 + O(t^80)", F9)))
    w = reduce_witt2(WittVec2(S("[0,1]*t^-2 + O(t^80)", F9), S("t^-7 + O(t^80)", F9)))
    rep = compositum_p2(v, w)
    assert rep.case == "compositum-p2 disjoint no-drop"
    assert [int(j) for j in rep.upper_jumps] == [2, 6, 7]
    assert rep.orders == (81, 9, 3, 1)


def test_compositum_p2_shared_equal_second():
    v = witt(F3, "t^-1 + O(t^60)", "t^-2 + O(t^60)")
    w = witt(F3, "2*t^-1 + O(t^60)", "t^-2 + O(t^60)")
    rep = compositum_p2(v, w)
    assert rep.case == "compositum-p2 shared-subfield equal-second"
    assert [int(j) for j in rep.upper_jumps] == [1, 2, 3]
    assert rep.group == "Z/9 x Z/3"


def test_compositum_p2_undetermined_cases():
    # collision of the difference-class pole order with an existing jump:
    # u = v = (2, 6), delta = t^-1 - 2*t^-2 reduces to pole order 2 = u0
    v = witt(F3, "t^-2 + O(t^60)", "t^-1 + O(t^60)")
    w = witt(F3, "2*t^-2 + O(t^60)", "t^-2 + O(t^60)")
    rep = compositum_p2(v, w)
    assert rep.status is Status.UNDETERMINED
    assert any("undetermined" in n for n in rep.notes)

    # disjoint with equal second upper jumps
    v = witt(F3, "t^-2 + O(t^80)", "t^-1 + O(t^80)")
    w = witt(F3, "t^-2 + t^-1 + O(t^80)", "t^-5 + O(t^80)")
    rep = compositum_p2(v, w)
    assert rep.status is Status.UNDETERMINED

    # unramified twist of the first components (finite-field-only phenomenon)
    v = witt(F3, "t^-1 + 1 + O(t^60)", "t^-2 + O(t^60)")
    w = witt(F3, "t^-1 + O(t^60)", "t^-2 + O(t^60)")
    rep = compositum_p2(v, w)
    assert rep.status is Status.UNDETERMINED
    assert any("residue field" in n for n in rep.notes)


def test_compositum_p2_jump_count_invariant():
    # |upper jumps| <= log_p |G| and the union rule only fires at full cardinality
    v = witt(F3, "t^-1 + O(t^60)", "t^-2 + O(t^60)")
    w = witt(F3, "t^-2 + O(t^60)", "t^-5 + O(t^60)")
    rep = compositum_p2(v, w)
    import math

    assert len(rep.upper_jumps) <= round(math.log(81, 3))
