"""Exact arithmetic over GF(p^e) and truncated Laurent series k((t)).

Field elements are coordinate vectors over GF(p) w.r.t. the power basis of a
monic irreducible modulus.  Laurent series carry an explicit precision bound:
``prec = N`` means the series is known modulo O(t^N), ``prec = None`` means the
series is exact (a Laurent polynomial).  Arithmetic propagates the bound
conservatively and never reports a coefficient it cannot justify; reading the
valuation of a series that is zero to its precision raises
InsufficientPrecision rather than silently returning a sentinel.

Series literal syntax (also used by the CLI)::

    p=3 e=1; 2*t^-5 + t^-1 + 1 + O(t^20)

Terms are ``c*t^k`` with ``c`` an integer for e=1 or a coordinate list
``[c0,c1,...]`` for e>1; the trailing ``O(t^N)`` is mandatory.  The field
prefix is optional when a context is supplied by the caller.
"""

from __future__ import annotations

import itertools
import math
import re

from .errors import (
    ContextMismatch,
    DomainError,
    InsufficientPrecision,
    ParseError,
    RootNotInField,
)

INF = math.inf

# Enumerative searches (n-th roots, Artin-Schreier solving) stay desk scale.
_ENUM_LIMIT = 4096


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), coefficient lists constant-first
# ---------------------------------------------------------------------------

def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(out, mod, p)


def _poly_rem(a, mod, p):
    a = list(a)
    d = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(a) > d:
        c = (a[-1] * inv_lead) % p
        if c:
            off = len(a) - 1 - d
            for i, mi in enumerate(mod):
                a[off + i] = (a[off + i] - c * mi) % p
        a.pop()
    return _poly_trim(a)


def _poly_powmod(a, n, mod, p):
    result = [1]
    base = _poly_rem(a, mod, p)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        n >>= 1
    return result


def _is_irreducible(coeffs, p):
    """Trial root/factor test, adequate at desk scale."""
    coeffs = list(coeffs)
    e = len(coeffs) - 1
    if e < 1 or coeffs[-1] % p == 0:
        return False
    if e == 1:
        return True
    if coeffs[0] % p == 0:  # divisible by X
        return False
    for r in range(p):  # linear factors
        if sum(c * pow(r, i, p) for i, c in enumerate(coeffs)) % p == 0:
            return False
    # trial division by monic polynomials of degree 2 .. e//2
    for d in range(2, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            if not _poly_rem(coeffs, div, p):
                return False
    return True


def _find_irreducible(p, e):
    if e == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        cand = list(tail) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise DomainError(f"no irreducible polynomial of degree {e} over GF({p}) found")


# ---------------------------------------------------------------------------
# finite field
# ---------------------------------------------------------------------------

class FieldCtx:
    """The coefficient field GF(p^e) = GF(p)[X]/(modulus), modulus monic irreducible."""

    __slots__ = ("p", "e", "modulus", "_rows")

    def __init__(self, p, e=1, modulus=None):
        if not isinstance(p, int) or not _is_prime(p):
            raise DomainError(f"p must be prime, got {p}")
        if not isinstance(e, int) or e < 1:
            raise DomainError(f"extension degree must be >= 1, got {e}")
        if modulus is None:
            modulus = _find_irreducible(p, e)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise DomainError(f"modulus must be monic of degree {e}, got {modulus}")
        if e > 1 and not _is_irreducible(modulus, p):
            raise DomainError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.modulus = modulus
        # reduction rows: X^(e+i) expressed in the power basis, i = 0..e-2
        rows = []
        cur = [(-m) % p for m in modulus[:-1]]  # X^e
        rows.append(tuple(cur))
        for _ in range(e - 2):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for k in range(e):
                    nxt[k] = (nxt[k] + top * rows[0][k]) % p
            cur = nxt
            rows.append(tuple(cur))
        self._rows = tuple(rows)

    @property
    def order(self):
        return self.p ** self.e

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"FieldCtx(p={self.p})"
        return f"FieldCtx(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    # -- element construction ------------------------------------------------

    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise ContextMismatch(f"element of {value.ctx!r} used in {self!r}")
            return value
        if isinstance(value, int):
            coords = (value % self.p,) + (0,) * (self.e - 1)
            return FieldElem(self, coords)
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) > self.e:
            raise DomainError(f"coordinate vector {coords} too long for e={self.e}")
        coords = coords + (0,) * (self.e - len(coords))
        return FieldElem(self, coords)

    def zero(self):
        return FieldElem(self, (0,) * self.e)

    def one(self):
        return self.elem(1)

    def elements(self):
        """All field elements in lexicographic coordinate order."""
        for coords in itertools.product(range(self.p), repeat=self.e):
            yield FieldElem(self, coords)

    def random_elem(self, rng):
        return FieldElem(self, tuple(rng.randrange(self.p) for _ in range(self.e)))

    # -- field-level searches --------------------------------------------------

    def artin_schreier_solve(self, c):
        """Return x with x^p - x = c, or None (exists iff the trace vanishes)."""
        c = self.elem(c)
        if self.order > _ENUM_LIMIT:
            raise DomainError(f"field of order {self.order} too large for enumeration")
        for x in self.elements():
            if x ** self.p - x == c:
                return x
        return None

    # -- internal coordinate arithmetic ---------------------------------------

    def _mul(self, a, b):
        p = self.p
        if self.e == 1:
            return ((a[0] * b[0]) % p,)
        e = self.e
        full = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    full[i + j] = (full[i + j] + ai * bj) % p
        out = full[:e]
        for i in range(e, 2 * e - 1):
            c = full[i]
            if c:
                row = self._rows[i - e]
                for k in range(e):
                    out[k] = (out[k] + c * row[k]) % p
        return tuple(out)


class FieldElem:
    """Element of GF(p^e), immutable coordinate vector over GF(p)."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        self.ctx = ctx
        self.coords = coords

    def __eq__(self, other):
        return (
            isinstance(other, FieldElem)
            and self.coords == other.coords
            and self.ctx == other.ctx
        )

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def __add__(self, other):
        other = self.ctx.elem(other)
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((x + y) % p for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self.ctx.elem(other)
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((x - y) % p for x, y in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self.ctx.elem(other) - self

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-x) % p for x in self.coords))

    def __mul__(self, other):
        other = self.ctx.elem(other)
        return FieldElem(self.ctx, self.ctx._mul(self.coords, other.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self.ctx.elem(other).inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.ctx.order - 2)

    def frobenius(self):
        return self ** self.ctx.p

    def pth_root(self):
        """Inverse Frobenius; always exists and is unique in a finite field."""
        return self ** (self.ctx.p ** (self.ctx.e - 1))

    def nth_root(self, n):
        """Smallest n-th root in coordinate-lexicographic order; errors if none."""
        if self.is_zero():
            return self
        if self.ctx.order > _ENUM_LIMIT:
            raise DomainError(f"field of order {self.ctx.order} too large for root search")
        for y in self.ctx.elements():
            if y ** n == self:
                return y
        raise RootNotInField(self, n)

    def trace(self):
        """Trace to GF(p), returned as an integer in [0, p)."""
        acc = self
        x = self
        for _ in range(self.ctx.e - 1):
            x = x.frobenius()
            acc = acc + x
        if any(acc.coords[1:]):
            raise AssertionError("trace landed outside the prime field")
        return acc.coords[0]

    def __repr__(self):
        if self.ctx.e == 1:
            return str(self.coords[0])
        return "[" + ",".join(str(c) for c in self.coords) + "]"


# ---------------------------------------------------------------------------
# precision bookkeeping helpers (prec = None means exact)
# ---------------------------------------------------------------------------

def _pmin(*precs):
    vals = [q for q in precs if q is not None]
    return min(vals) if vals else None


def _padd(prec, k):
    """prec + k where prec may be None (exact) and k may be +inf."""
    if prec is None or k == INF:
        return None
    return prec + int(k)


def _ceil_div(a, b):
    return -((-a) // b)


class LaurentSeries:
    """Truncated Laurent series over GF(p^e) with explicit precision.

    coeffs maps exponent -> nonzero FieldElem; every stored exponent is < prec.
    """

    __slots__ = ("ctx", "coeffs", "prec")

    def __init__(self, ctx, coeffs=None, prec=None):
        self.ctx = ctx
        self.prec = prec
        clean = {}
        if coeffs:
            for k, v in coeffs.items():
                if prec is not None and k >= prec:
                    continue
                v = ctx.elem(v)
                if not v.is_zero():
                    clean[k] = v
        self.coeffs = clean

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, ctx, prec=None):
        return cls(ctx, {}, prec)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, {0: 1})

    @classmethod
    def t_pow(cls, ctx, k, coeff=1, prec=None):
        return cls(ctx, {k: coeff}, prec)

    @classmethod
    def constant(cls, ctx, c, prec=None):
        return cls(ctx, {0: c}, prec)

    # -- structure -------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            raise TypeError(f"expected LaurentSeries, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch("series over different coefficient fields")

    def is_exact_zero(self):
        return not self.coeffs and self.prec is None

    def is_zero_to_prec(self):
        return not self.coeffs

    @property
    def val(self):
        """Valuation.  +inf only for the exact zero; raises on zero-to-precision."""
        if self.coeffs:
            return min(self.coeffs)
        if self.prec is None:
            return INF
        raise InsufficientPrecision(
            f"series is zero modulo O(t^{self.prec}); valuation unknown"
        )

    def val_floor(self):
        """Lower bound for the valuation; never raises."""
        if self.coeffs:
            return min(self.coeffs)
        return INF if self.prec is None else self.prec

    def __getitem__(self, k):
        if self.prec is not None and k >= self.prec:
            raise InsufficientPrecision(f"coefficient at t^{k} is beyond O(t^{self.prec})")
        return self.coeffs.get(k, self.ctx.zero())

    def leading(self):
        v = self.val
        if v == INF:
            raise DomainError("exact zero series has no leading term")
        return v, self.coeffs[v]

    def support(self):
        return sorted(self.coeffs)

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        prec = _pmin(self.prec, other.prec)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return LaurentSeries(self.ctx, out, prec)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentSeries(self.ctx, {k: -v for k, v in self.coeffs.items()}, self.prec)

    def scalar_mul(self, c):
        c = self.ctx.elem(c)
        return LaurentSeries(self.ctx, {k: v * c for k, v in self.coeffs.items()}, self.prec)

    def __mul__(self, other):
        self._check(other)
        prec = _pmin(_padd(self.prec, other.val_floor()), _padd(other.prec, self.val_floor()))
        ctx = self.ctx
        if ctx.e == 1:
            # int fast path: defer the reduction mod p to the very end
            av = sorted((k, v.coords[0]) for k, v in self.coeffs.items())
            bv = sorted((k, v.coords[0]) for k, v in other.coeffs.items())
            out = {}
            for ka, ca in av:
                for kb, cb in bv:
                    k = ka + kb
                    if prec is not None and k >= prec:
                        break
                    out[k] = out.get(k, 0) + ca * cb
            return LaurentSeries(ctx, out, prec)
        out = {}
        bitems = sorted(other.coeffs.items())
        for ka, va in sorted(self.coeffs.items()):
            for kb, vb in bitems:
                k = ka + kb
                if prec is not None and k >= prec:
                    break
                cur = out.get(k)
                prod = va * vb
                out[k] = prod if cur is None else cur + prod
        return LaurentSeries(ctx, out, prec)

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentSeries(
            self.ctx, {e + k: v for e, v in self.coeffs.items()}, _padd(self.prec, k)
        )

    def truncate(self, prec):
        return LaurentSeries(self.ctx, self.coeffs, _pmin(self.prec, prec))

    def __pow__(self, n):
        if n == 0:
            return LaurentSeries.one(self.ctx)
        if n < 0:
            return self.invert() ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pth_power(self):
        """Freshman's-dream p-th power: coefficient Frobenius + exponent scaling."""
        p = self.ctx.p
        return LaurentSeries(
            self.ctx,
            {e * p: v.frobenius() for e, v in self.coeffs.items()},
            _padd(None, 0) if self.prec is None else self.prec * p,
        )

    def invert(self, prec=None):
        """Multiplicative inverse, to absolute precision `prec` of the result.

        Defaults to the honest maximum self.prec - 2*val; an explicit request is
        capped there.  Exact non-monomial input needs an explicit prec.
        """
        v = self.val  # raises on zero-to-precision
        if v == INF:
            raise ZeroDivisionError("inverse of zero series")
        honest = None if self.prec is None else self.prec - 2 * v
        if len(self.coeffs) == 1 and self.prec is None:
            c = self.coeffs[v]
            out = LaurentSeries(self.ctx, {-v: c.inverse()})
            return out if prec is None else out.truncate(prec)
        target = _pmin(honest, prec)
        if target is None:
            raise DomainError("inverse of an exact non-monomial series needs an explicit prec")
        rel = target + v  # number of known coefficients of the result beyond -v
        if rel <= 0:
            return LaurentSeries.zero(self.ctx, target)
        if self.ctx.e == 1:
            p = self.ctx.p
            c0inv = pow(self.coeffs[v].coords[0], -1, p)
            u = {e - v: c.coords[0] for e, c in self.coeffs.items() if e - v < rel}
            usup = sorted(u)[1:]
            x = [0] * rel
            x[0] = c0inv
            for k in range(1, rel):
                acc = 0
                for m in usup:
                    if m > k:
                        break
                    acc += u[m] * x[k - m]
                if acc:
                    x[k] = (-c0inv * acc) % p
            return LaurentSeries(self.ctx, {i - v: c for i, c in enumerate(x)}, target)
        c0inv = self.coeffs[v].inverse()
        # u = self shifted to valuation 0; solve u * x = 1 term by term
        u = {e - v: c for e, c in self.coeffs.items() if e - v < rel}
        usup = sorted(u)[1:]
        x = [self.ctx.zero()] * rel
        x[0] = c0inv
        for k in range(1, rel):
            acc = self.ctx.zero()
            for m in usup:
                if m > k:
                    break
                acc = acc + u[m] * x[k - m]
            if not acc.is_zero():
                x[k] = -c0inv * acc
        return LaurentSeries(self.ctx, {i - v: c for i, c in enumerate(x)}, target)

    def nth_root(self, n, prec=None, principal=False):
        """n-th root (gcd(n, p) = 1) of a unit, or of valuation divisible by n.

        The leading coefficient's root is chosen minimal in coordinate-lex
        order, so the result is deterministic; `principal=True` instead forces
        the 1-unit branch (leading coefficient 1 -> root 1), which the Galois
        action construction needs.  `prec` is the absolute target precision of
        the result, capped at what the input supports.
        """
        p = self.ctx.p
        if n <= 0 or n % p == 0:
            raise DomainError(f"n-th root needs n positive and coprime to p, got n={n}")
        v = self.val
        if v == INF:
            raise ZeroDivisionError("n-th root of zero series")
        if v % n != 0:
            raise DomainError(f"valuation {v} not divisible by {n}")
        c0 = self.coeffs[v]
        if principal:
            if c0 != self.ctx.one():
                raise DomainError("principal n-th root needs leading coefficient 1")
            r0 = c0
        else:
            r0 = c0.nth_root(n)  # RootNotInField propagates
        w = v // n
        honest = None if self.prec is None else (self.prec - v) + w
        if len(self.coeffs) == 1 and self.prec is None:
            out = LaurentSeries(self.ctx, {w: r0})
            return out if prec is None else out.truncate(prec)
        target = _pmin(honest, prec)
        if target is None:
            raise DomainError("n-th root of an exact non-monomial series needs an explicit prec")
        rel = target - w
        # Newton iteration for r^n = u on the valuation-0 part u = t^-v * self,
        # quadratically convergent since n * r0^(n-1) is a unit.
        u = self.shift(-v).truncate(rel)
        ninv = self.ctx.elem(n).inverse()
        r = LaurentSeries.constant(self.ctx, r0, 1)
        reached = 1
        while reached < rel:
            reached = min(2 * reached, rel)
            rt = LaurentSeries(self.ctx, r.coeffs, reached)
            err = rt ** n - u.truncate(reached)
            deriv_inv = (rt ** (n - 1)).scalar_mul(n).invert(prec=reached)
            r = (rt - err * deriv_inv).truncate(reached)
        return r.shift(w).truncate(target)

    def pth_root(self):
        """Exact p-th root on the stored support; every exponent must be divisible by p."""
        p = self.ctx.p
        out = {}
        for e, c in self.coeffs.items():
            if e % p != 0:
                raise DomainError(f"exponent {e} not divisible by p={p}; no p-th root")
            out[e // p] = c.pth_root()
        prec = None if self.prec is None else _ceil_div(self.prec, p)
        return LaurentSeries(self.ctx, out, prec)

    def derivative(self):
        out = {}
        for e, c in self.coeffs.items():
            m = e % self.ctx.p
            if m:
                out[e - 1] = c * m
        return LaurentSeries(self.ctx, out, _padd(self.prec, -1))

    def substitute(self, s):
        """Evaluate self at t = s.

        Requires val(s) >= 1, or val(s) <= -1 with self exact (a Laurent
        polynomial); otherwise infinitely many terms could contribute below any
        precision bound.
        """
        self._check(s)
        sv = s.val  # raises on zero-to-precision
        if sv == INF:
            raise DomainError("cannot substitute the zero series")
        if sv == 0:
            raise DomainError("substitution target must have nonzero valuation")
        if sv < 0 and self.prec is not None:
            raise DomainError(
                "substitution with val(s) <= -1 requires an exact polynomial input"
            )
        floor = None if self.prec is None else self.prec * sv
        out = LaurentSeries.zero(self.ctx, floor)
        pos = sorted(e for e in self.coeffs if e > 0)
        neg = sorted((e for e in self.coeffs if e < 0), reverse=True)
        if 0 in self.coeffs:
            out = out + LaurentSeries.constant(self.ctx, self.coeffs[0], floor)
        cur, cur_e = None, 0
        for e in pos:
            cur = s ** e if cur is None else cur * s ** (e - cur_e)
            cur_e = e
            out = out + cur.scalar_mul(self.coeffs[e])
        if neg:
            sinv = s.invert()
            cur, cur_e = None, 0
            for e in neg:
                cur = sinv ** (-e) if cur is None else cur * sinv ** (cur_e - e)
                cur_e = e
                out = out + cur.scalar_mul(self.coeffs[e])
        return out

    # -- comparisons -------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeries)
            and self.ctx == other.ctx
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def same_known(self, other):
        """Equality of all coefficients on the common known region."""
        self._check(other)
        bound = _pmin(self.prec, other.prec)
        if bound is None:
            return self.coeffs == other.coeffs
        for k, v in self.coeffs.items():
            if k < bound and other.coeffs.get(k) != v:
                return False
        for k, v in other.coeffs.items():
            if k < bound and self.coeffs.get(k) != v:
                return False
        return True

    def __repr__(self):
        return render_series(self)


# ---------------------------------------------------------------------------
# series literal parsing / rendering
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>-?\d+)|(?P<name>[a-zA-Z]\w*)|(?P<punct>[\^\*\+\-\(\)\[\],;=]))"
)


class _Tokens:
    def __init__(self, text, line=None, col_base=0):
        self.text = text
        self.line = line
        self.col_base = col_base
        self.pos = 0

    def error(self, msg, pos=None):
        col = self.col_base + (self.pos if pos is None else pos) + 1
        raise ParseError(msg, line=self.line, col=col)

    def peek(self):
        m = _TOKEN_RE.match(self.text, self.pos)
        if m is None:
            rest = self.text[self.pos:].strip()
            if rest:
                self.error(f"unexpected input {rest[:10]!r}")
            return None, None, self.pos
        kind = m.lastgroup
        return kind, m.group(kind), m.start(kind)

    def next(self):
        kind, value, start = self.peek()
        if kind is not None:
            m = _TOKEN_RE.match(self.text, self.pos)
            self.pos = m.end()
        return kind, value, start

    def expect(self, want, what=None):
        kind, value, start = self.next()
        if value != want:
            self.error(f"expected {what or want!r}, got {value!r}", pos=start)
        return value

    def at_end(self):
        kind, _, _ = self.peek()
        return kind is None


def _parse_coeff(tok, ctx):
    kind, value, start = tok.peek()
    if value == "[":
        tok.next()
        coords = []
        while True:
            kind, value, start = tok.next()
            if kind != "int":
                tok.error("expected integer coordinate", pos=start)
            coords.append(int(value))
            kind, value, start = tok.next()
            if value == "]":
                break
            if value != ",":
                tok.error("expected ',' or ']' in coordinate list", pos=start)
        return ctx.elem(coords)
    if kind == "int":
        tok.next()
        if ctx.e > 1 and abs(int(value)) >= ctx.p:
            tok.error(
                f"integer literal {value} invalid for e={ctx.e}; "
                "use a coordinate list [c0,c1,...]",
                pos=start,
            )
        return ctx.elem(int(value))
    tok.error("expected a coefficient", pos=start)


def _parse_exponent(tok):
    kind, value, start = tok.peek()
    if value == "^":
        tok.next()
        kind, value, start = tok.next()
        if kind != "int":
            tok.error("expected integer exponent", pos=start)
        return int(value)
    return 1


def _parse_term(tok, ctx, var="t"):
    """One term: c, c*t^k, t^k, t.  Returns (exponent, coefficient)."""
    kind, value, start = tok.peek()
    if kind == "name" and value == var:
        tok.next()
        return _parse_exponent(tok), ctx.one()
    coeff = _parse_coeff(tok, ctx)
    kind, value, start = tok.peek()
    if value == "*":
        tok.next()
        kind, value, start = tok.next()
        if kind != "name" or value != var:
            tok.error(f"expected {var!r} after '*'", pos=start)
        return _parse_exponent(tok), coeff
    return 0, coeff


def parse_field_prefix(tok):
    """Parse 'p=<int> e=<int> [modulus=[...]]' and build the FieldCtx."""
    p = e = None
    modulus = None
    while True:
        kind, value, start = tok.peek()
        if kind != "name" or value not in ("p", "e", "modulus"):
            break
        tok.next()
        tok.expect("=")
        if value == "modulus":
            kind, v2, s2 = tok.peek()
            if v2 != "[":
                tok.error("expected coordinate list for modulus", pos=s2)
            tok.next()
            modulus = []
            while True:
                kind, v2, s2 = tok.next()
                if kind != "int":
                    tok.error("expected integer modulus coefficient", pos=s2)
                modulus.append(int(v2))
                kind, v2, s2 = tok.next()
                if v2 == "]":
                    break
                if v2 != ",":
                    tok.error("expected ',' or ']' in modulus", pos=s2)
        else:
            kind, v2, s2 = tok.next()
            if kind != "int":
                tok.error(f"expected integer after {value}=", pos=s2)
            if value == "p":
                p = int(v2)
            else:
                e = int(v2)
    if p is None:
        tok.error("field prefix must set p")
    if not _is_prime(p):
        tok.error(f"p must be prime, got {p}")
    e = 1 if e is None else e
    try:
        return FieldCtx(p, e, modulus)
    except DomainError as exc:
        tok.error(str(exc))


def parse_series(text, ctx=None, line=None, col_base=0, var="t"):
    """Parse a series literal; the mandatory O(t^N) fixes the precision."""
    tok = _Tokens(text, line=line, col_base=col_base)
    kind, value, _ = tok.peek()
    if value == "p":  # optional field prefix "p=.. e=..;"
        prefix_ctx = parse_field_prefix(tok)
        tok.expect(";")
        if ctx is not None and prefix_ctx != ctx:
            tok.error("series field prefix disagrees with the declared field block")
        ctx = prefix_ctx
    if ctx is None:
        tok.error("no field context: supply one or use a 'p=.. e=..;' prefix")
    series, prec = _parse_sum(tok, ctx, var=var, require_O=True)
    if not tok.at_end():
        kind, value, start = tok.peek()
        tok.error(f"trailing input {value!r}", pos=start)
    return series


def _parse_sum(tok, ctx, var="t", require_O=True):
    terms = {}
    prec = None
    sign = 1
    kind, value, start = tok.peek()
    if value == "-":
        tok.next()
        sign = -1
    while True:
        kind, value, start = tok.peek()
        if kind == "name" and value == "O":
            tok.next()
            tok.expect("(")
            kind, value, s2 = tok.next()
            if kind != "name" or value != var:
                tok.error(f"expected {var!r} inside O(...)", pos=s2)
            prec = _parse_exponent(tok)
            tok.expect(")")
            break
        exp, coeff = _parse_term(tok, ctx, var=var)
        if sign < 0:
            coeff = -coeff
        if exp in terms:
            terms[exp] = terms[exp] + coeff
        else:
            terms[exp] = coeff
        kind, value, start = tok.peek()
        if value == "+":
            tok.next()
            sign = 1
        elif value == "-":
            tok.next()
            sign = -1
        else:
            break
    if require_O and prec is None:
        tok.error(f"missing mandatory O({var}^N) precision term")
    if prec is not None:
        for exp in terms:
            if exp >= prec and not terms[exp].is_zero():
                tok.error(f"term exponent {exp} is at or beyond the declared O({var}^{prec})")
    return LaurentSeries(ctx, terms, prec), prec


def render_coeff(c):
    return repr(c)


def render_series(s, var="t"):
    parts = []
    for e in s.support():
        c = s.coeffs[e]
        if e == 0:
            parts.append(render_coeff(c))
        elif c == s.ctx.one():
            parts.append(f"{var}^{e}")
        else:
            parts.append(f"{render_coeff(c)}*{var}^{e}")
    body = " + ".join(parts) if parts else "0"
    if s.prec is None:
        return body
    return f"{body} + O({var}^{s.prec})"
