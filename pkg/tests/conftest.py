"""Shared helpers for the test suite: contexts and random data generators."""

import random

import pytest

from wildram.algebra import FieldCtx, LaurentSeries


F2 = FieldCtx(2)
F3 = FieldCtx(3)
F5 = FieldCtx(5)
F7 = FieldCtx(7)
F4 = FieldCtx(2, 2)
F9 = FieldCtx(3, 2)
F25 = FieldCtx(5, 2)


def ctx_for(p, e=1):
    return FieldCtx(p, e)


def random_series(ctx, rng, lo=-8, hi=8, terms=3, prec=40, ensure_nonzero=False):
    """Sparse random Laurent series with support in [lo, hi)."""
    coeffs = {}
    for _ in range(rng.randrange(1, terms + 1) if not ensure_nonzero else terms):
        coeffs[rng.randrange(lo, hi)] = ctx.random_elem(rng)
    s = LaurentSeries(ctx, coeffs, prec)
    if ensure_nonzero and s.is_zero_to_prec():
        coeffs[rng.randrange(lo, hi)] = ctx.one()
        s = LaurentSeries(ctx, coeffs, prec)
    return s


def random_unit(ctx, rng, terms=3, prec=30):
    """Random unit series (valuation 0, nonzero constant term)."""
    coeffs = {0: _nonzero(ctx, rng)}
    for _ in range(terms):
        coeffs[rng.randrange(1, prec)] = ctx.random_elem(rng)
    return LaurentSeries(ctx, coeffs, prec)


def _nonzero(ctx, rng):
    while True:
        c = ctx.random_elem(rng)
        if not c.is_zero():
            return c


def nonzero_elem(ctx, rng):
    return _nonzero(ctx, rng)


@pytest.fixture
def rng():
    return random.Random(20260809)
