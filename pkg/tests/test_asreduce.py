"""Reduction to pole orders coprime to p, with exact shift certificates."""

import pytest

from conftest import F2, F3, F5, F9, random_series
from wildram.algebra import LaurentSeries, parse_series
from wildram.asreduce import (
    ASKind,
    Relation,
    equivalence_class_test,
    reduce_as,
    reduce_witt2,
)
from wildram.errors import InsufficientPrecision
from wildram.witt import WittVec2, frobenius_minus_id, witt_sub


def S(text, ctx):
    return parse_series(text, ctx=ctx)


def check_certificate(f, r):
    assert (f - r.f_red).same_known(r.artin_schreier_image())


def test_reduce_single_cancellation_p2():
    f = S("t^-2 + O(t^5)", F2)
    r = reduce_as(f)
    assert r.kind is ASKind.WILD and r.pole_order == 1
    assert r.f_red.same_known(S("t^-1 + O(t^5)", F2))
    assert r.shift.same_known(LaurentSeries.t_pow(F2, -1))
    check_certificate(f, r)


def test_reduce_two_rounds_p2():
    f = S("t^-4 + O(t^5)", F2)
    r = reduce_as(f)
    assert r.kind is ASKind.WILD and r.pole_order == 1
    assert r.f_red.same_known(S("t^-1 + O(t^5)", F2))
    check_certificate(f, r)


def test_reduce_already_reduced():
    f = S("t^-1 + O(t^5)", F3)
    r = reduce_as(f)
    assert r.kind is ASKind.WILD and r.pole_order == 1
    assert r.f_red == f and r.shift.is_exact_zero()


def test_reduce_idempotent(rng):
    for ctx in (F2, F3, F5):
        for _ in range(25):
            f = random_series(ctx, rng, lo=-12, hi=4, prec=25)
            r = reduce_as(f)
            again = reduce_as(r.f_red)
            assert again.shift.is_zero_to_prec() or again.shift.is_exact_zero()
            assert again.kind == r.kind and again.pole_order == r.pole_order


def test_reduce_certificates_random(rng):
    for ctx in (F2, F3, F5, F9):
        for _ in range(25):
            f = random_series(ctx, rng, lo=-12, hi=4, prec=25)
            r = reduce_as(f)
            check_certificate(f, r)
            if r.kind is ASKind.WILD:
                assert r.pole_order % ctx.p != 0


def test_pole_orders_coprime_enumeration():
    # all monomials t^-m, m <= 30: reduced pole order is m / p^(v_p(m))
    for ctx in (F2, F3, F5):
        p = ctx.p
        for m in range(1, 31):
            r = reduce_as(LaurentSeries(ctx, {-m: 1}, 2))
            n = m
            while n % p == 0:
                n //= p
            assert r.kind is ASKind.WILD and r.pole_order == n


def test_reduce_constant_classes():
    # trace-zero constant is trivial; nonzero trace survives as unramified class
    r = reduce_as(S("0 + O(t^6)", F3))
    assert r.kind is ASKind.TRIVIAL
    r = reduce_as(S("1 + O(t^6)", F3))
    assert r.kind is ASKind.UNRAMIFIED and r.residue_trace == 1
    check_certificate(S("1 + O(t^6)", F3), r)
    # x^2 - x = 1 has a solution in GF(4), so the class is trivial there
    F4 = __import__("conftest").F4
    r = reduce_as(S("1 + O(t^6)", F4))
    assert r.kind is ASKind.TRIVIAL
    check_certificate(S("1 + O(t^6)", F4), r)


def test_reduce_positive_tail_absorbed():
    f = S("t^1 + t^3 + O(t^40)", F2)
    r = reduce_as(f)
    assert r.kind is ASKind.TRIVIAL
    check_certificate(f, r)
    assert r.f_red.is_zero_to_prec()


def test_reduce_insufficient_precision():
    # the p-power pole cancellation cascades below the precision floor
    with pytest.raises(InsufficientPrecision):
        reduce_as(S("t^-4 + O(t^-2)", F2))


def test_reduce_witt2_example_p2():
    v = WittVec2(S("t^-1 + O(t^20)", F2), S("t^-4 + O(t^20)", F2))
    r = reduce_witt2(v)
    assert r.kind0 is ASKind.WILD and r.n0 == 1
    assert r.kind1 is ASKind.WILD and r.n1 in (1, 3)
    # certificate: original -_w reduced = (F-1)(shift)
    lhs = witt_sub(v, r.vec_red)
    rhs = frobenius_minus_id(r.shift)
    assert lhs.same_known(rhs)


def test_reduce_witt2_already_reduced():
    v = WittVec2(S("t^-1 + O(t^20)", F3), S("t^-2 + O(t^20)", F3))
    r = reduce_witt2(v)
    assert r.vec_red.same_known(v)
    assert r.shift.a0.is_exact_zero() and r.shift.a1.is_exact_zero()
    assert (r.n0, r.n1) == (1, 2)


def test_reduce_witt2_of_coboundary(rng):
    # (F-1)(x) reduces to a vector with no wild part
    for ctx in (F2, F3):
        for _ in range(10):
            x = WittVec2(
                random_series(ctx, rng, lo=-5, hi=5, prec=90),
                random_series(ctx, rng, lo=-5, hi=5, prec=90),
            )
            r = reduce_witt2(frobenius_minus_id(x))
            assert r.kind0 is not ASKind.WILD and r.kind1 is not ASKind.WILD
            assert r.vec_red.a0.val_floor() >= 0 and r.vec_red.a1.val_floor() >= 0


def test_reduce_witt2_certificate_random(rng):
    for ctx in (F2, F3, F5):
        for _ in range(15):
            v = WittVec2(
                random_series(ctx, rng, lo=-9, hi=3, prec=150),
                random_series(ctx, rng, lo=-9, hi=3, prec=150),
            )
            r = reduce_witt2(v)
            assert witt_sub(v, r.vec_red).same_known(frobenius_minus_id(r.shift))
            if r.kind0 is ASKind.WILD:
                assert r.n0 % ctx.p != 0
            if r.kind1 is ASKind.WILD:
                assert r.n1 % ctx.p != 0


# ---------------------------------------------------------------------------
# equivalence classes
# ---------------------------------------------------------------------------

def test_equivalence_reflexive():
    v = WittVec2(S("t^-1 + O(t^30)", F3), S("t^-2 + O(t^30)", F3))
    res = equivalence_class_test(v, v)
    assert res.relation is Relation.EQUAL and res.c == 1


def test_equivalence_scalar_multiple_is_equal():
    from wildram.witt import witt_scalar

    v = WittVec2(S("t^-1 + O(t^30)", F3), S("t^-2 + O(t^30)", F3))
    w = witt_scalar(5, v)  # 5 is a unit mod 9
    res = equivalence_class_test(w, v)
    assert res.relation is Relation.EQUAL and res.c == 5


def test_equivalence_shared_subfield_example():
    v = WittVec2(S("t^-1 + O(t^30)", F3), S("t^-2 + O(t^30)", F3))
    w = WittVec2(S("2*t^-1 + O(t^30)", F3), S("t^-5 + O(t^30)", F3))
    res = equivalence_class_test(v, w)
    assert res.relation is Relation.SHARED_SUBFIELD and res.c == 2


def test_equivalence_disjoint_example():
    v = WittVec2(S("t^-1 + O(t^30)", F3), S("0 + O(t^30)", F3))
    w = WittVec2(S("t^-2 + O(t^30)", F3), S("0 + O(t^30)", F3))
    res = equivalence_class_test(v, w)
    assert res.relation is Relation.DISJOINT


def test_equivalence_unramified_twist():
    v = WittVec2(S("t^-1 + 1 + O(t^30)", F3), S("t^-2 + O(t^30)", F3))
    w = WittVec2(S("t^-1 + O(t^30)", F3), S("t^-2 + O(t^30)", F3))
    res = equivalence_class_test(v, w)
    assert res.relation is Relation.UNRAMIFIED_TWIST


def test_equivalence_symmetry(rng):
    # symmetric up to inversion of the multiplier
    pairs = [
        (WittVec2(S("t^-1 + O(t^30)", F3), S("t^-2 + O(t^30)", F3)),
         WittVec2(S("2*t^-1 + O(t^30)", F3), S("t^-5 + O(t^30)", F3))),
        (WittVec2(S("t^-1 + O(t^30)", F3), S("0 + O(t^30)", F3)),
         WittVec2(S("t^-2 + O(t^30)", F3), S("0 + O(t^30)", F3))),
    ]
    for v, w in pairs:
        r1 = equivalence_class_test(v, w)
        r2 = equivalence_class_test(w, v)
        assert r1.relation == r2.relation
        if r1.relation is Relation.SHARED_SUBFIELD:
            p = v.ctx.p
            assert (r1.c * r2.c) % p == 1
