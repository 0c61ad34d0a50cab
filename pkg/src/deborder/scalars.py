"""Exact scalars: rationals, cyclotomic fields Q(zeta_N), and rational functions in eps.

A ``Scalar`` stores an element of Q(zeta_N) = Q[x]/Phi_N(x) as an integer
coordinate vector in the power basis together with one positive common
denominator. Keeping the numerators integral makes multiplication a plain
integer convolution followed by reduction with the monic integer polynomial
Phi_N, which is much cheaper than carrying a vector of ``Fraction`` objects.

Elements of the N = 1 context are the plain rationals; they embed into every
other context automatically, so ``2 * zeta`` and ``Fraction(1, 2) + zeta`` work.
Mixing two different nontrivial contexts raises ``ContextMismatch``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

from . import upoly
from .errors import ContextMismatch, DivisionByZero, PoleAtZero, ZeroValuation


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d of n
    p = tuple([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = _int_exact_div(p, cyclotomic_poly(d))
    return p


def _int_exact_div(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    # q is monic, so integer long division is exact
    rem = list(p)
    dq = len(q) - 1
    quo = [0] * (len(p) - dq)
    for k in range(len(p) - 1, dq - 1, -1):
        t = rem[k]
        quo[k - dq] = t
        if t:
            for j, b in enumerate(q):
                rem[k - dq + j] -= t * b
    assert not any(rem[:dq]), "cyclotomic division not exact"
    return tuple(quo)


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


class FieldContext:
    """The field Q(zeta_N), presented as Q[x]/Phi_N."""

    __slots__ = ("N", "phi", "modulus", "_tail", "_zeta_vecs")

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("conductor must be positive")
        self.N = N
        self.modulus = cyclotomic_poly(N)
        self.phi = len(self.modulus) - 1
        # x^phi = -sum(tail)
        self._tail = tuple((j, c) for j, c in enumerate(self.modulus[:-1]) if c)
        self._zeta_vecs = None

    def __repr__(self):
        return f"FieldContext(N={self.N})"

    def __eq__(self, other):
        return isinstance(other, FieldContext) and other.N == self.N

    def __hash__(self):
        return hash(("FieldContext", self.N))

    def __reduce__(self):
        return (make_context, (self.N,))

    @property
    def is_rational(self) -> bool:
        return self.phi == 1

    def reduce(self, conv: list[int]) -> tuple[int, ...]:
        phi = self.phi
        for k in range(len(conv) - 1, phi - 1, -1):
            t = conv[k]
            if t:
                base = k - phi
                for j, c in self._tail:
                    conv[base + j] -= t * c
        if len(conv) < phi:
            conv = conv + [0] * (phi - len(conv))
        return tuple(conv[:phi])

    def zeta_vector(self, k: int) -> tuple[int, ...]:
        if self._zeta_vecs is None:
            vecs = []
            for e in range(self.N):
                conv = [0] * max(self.phi, e + 1)
                conv[e] = 1
                vecs.append(self.reduce(conv))
            self._zeta_vecs = vecs
        return self._zeta_vecs[k % self.N]

    def __call__(self, value) -> "Scalar":
        """Coerce an int, Fraction or compatible Scalar into this field."""
        if isinstance(value, Scalar):
            if value.ctx is self:
                return value
            return self.embed(value)
        return Scalar.rational(value, self)

    @property
    def zero(self) -> "Scalar":
        return Scalar._raw(self, (0,) * self.phi, 1)

    @property
    def one(self) -> "Scalar":
        return Scalar._raw(self, (1,) + (0,) * (self.phi - 1), 1)

    @property
    def zeta(self) -> "Scalar":
        return self.zeta_power(1)

    def zeta_power(self, k: int) -> "Scalar":
        return Scalar._raw(self, self.zeta_vector(k), 1)

    def embed(self, x: "Scalar") -> "Scalar":
        """Map x from Q(zeta_M) into this field; requires M | N."""
        src = x.ctx
        if src is self:
            return x
        if self.N % src.N:
            raise ContextMismatch(f"cannot embed Q(zeta_{src.N}) into Q(zeta_{self.N})")
        step = self.N // src.N
        acc = [0] * self.phi
        for i, a in enumerate(x.nums):
            if a:
                for j, v in enumerate(self.zeta_vector(i * step)):
                    if v:
                        acc[j] += a * v
        return Scalar._make(self, acc, x.den)


@lru_cache(maxsize=None)
def make_context(N: int) -> FieldContext:
    """Return the (shared) context for Q(zeta_N)."""
    return FieldContext(N)


QQ = make_context(1)


def common_context(*ctxs: FieldContext) -> FieldContext:
    """The single nontrivial context among ``ctxs`` (QQ if all are rational)."""
    out = QQ
    for c in ctxs:
        if c.N == 1 or c is out:
            continue
        if out.N == 1:
            out = c
        else:
            raise ContextMismatch(f"Q(zeta_{out.N}) vs Q(zeta_{c.N})")
    return out


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


class Scalar:
    """An element of Q(zeta_N)."""

    __slots__ = ("ctx", "nums", "den")

    def __init__(self, ctx: FieldContext, coeffs: Iterable):
        fr = [_fraction(c) for c in coeffs]
        if len(fr) != ctx.phi:
            raise ValueError(f"expected {ctx.phi} coordinates, got {len(fr)}")
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        nums = [f.numerator * (den // f.denominator) for f in fr]
        s = Scalar._make(ctx, nums, den)
        self.ctx, self.nums, self.den = s.ctx, s.nums, s.den

    @classmethod
    def _raw(cls, ctx, nums, den):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.nums = nums
        obj.den = den
        return obj

    @classmethod
    def _make(cls, ctx, nums, den):
        if den < 0:
            nums = [-a for a in nums]
            den = -den
        g = math.gcd(den, *nums)
        if g != 1:
            nums = [a // g for a in nums]
            den //= g
        return cls._raw(ctx, tuple(nums), den)

    @classmethod
    def rational(cls, value, ctx: FieldContext = QQ) -> "Scalar":
        f = _fraction(value)
        return cls._raw(ctx, (f.numerator,) + (0,) * (ctx.phi - 1), f.denominator)

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def __bool__(self):
        return any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def sort_key(self) -> tuple:
        return tuple(Fraction(a, self.den) for a in self.nums)

    # -- coercion -----------------------------------------------------------

    def _align(self, other):
        """Return (a, b) in a common context, or None if other is foreign."""
        if isinstance(other, Scalar):
            if other.ctx is self.ctx:
                return self, other
            if other.ctx.N == 1:
                return self, self.ctx.embed(other)
            if self.ctx.N == 1:
                return other.ctx.embed(self), other
            raise ContextMismatch(f"Q(zeta_{self.ctx.N}) vs Q(zeta_{other.ctx.N})")
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return self, Scalar.rational(other, self.ctx)
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.den == b.den:
            return Scalar._make(a.ctx, [x + y for x, y in zip(a.nums, b.nums)], a.den)
        return Scalar._make(
            a.ctx, [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.ctx, tuple(-a for a in self.nums), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        ctx = a.ctx
        if ctx.phi == 1:
            return Scalar._make(ctx, [a.nums[0] * b.nums[0]], a.den * b.den)
        if b.is_rational():
            c = b.nums[0]
            return Scalar._make(ctx, [x * c for x in a.nums], a.den * b.den)
        if a.is_rational():
            c = a.nums[0]
            return Scalar._make(ctx, [x * c for x in b.nums], a.den * b.den)
        conv = [0] * (2 * ctx.phi - 1)
        for i, x in enumerate(a.nums):
            if x:
                for j, y in enumerate(b.nums):
                    if y:
                        conv[i + j] += x * y
        return Scalar._make(ctx, list(ctx.reduce(conv)), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise DivisionByZero("inverse of zero")
        ctx = self.ctx
        if self.is_rational():
            return Scalar._make(ctx, [self.den] + [0] * (ctx.phi - 1), self.nums[0])
        # extended Euclid in Q[x]: s*a + t*Phi = 1
        a = upoly.trim([Fraction(x, self.den) for x in self.nums])
        m = tuple(Fraction(c) for c in ctx.modulus)
        r0, r1 = m, a
        s0, s1 = (), (Fraction(1),)
        while len(r1) > 1:
            q, r = upoly.divmod_(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, upoly.sub(s0, upoly.mul(q, s1))
        inv = upoly.scale(s1, 1 / r1[0])
        coeffs = list(inv) + [Fraction(0)] * (ctx.phi - len(inv))
        return Scalar(ctx, coeffs)

    def __truediv__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.ctx is self.ctx:
                return self.den == other.den and self.nums == other.nums
            if self.is_rational() and other.is_rational():
                return self.nums[0] * other.den == other.nums[0] * self.den
            pair = self._align(other)
            a, b = pair
            return a.den == b.den and a.nums == b.nums
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            if not self.is_rational():
                return False
            f = _fraction(other)
            return self.nums[0] * f.denominator == f.numerator * self.den
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.nums[0], self.den))
        return hash((self.ctx.N, self.nums, self.den))

    # -- printing -----------------------------------------------------------

    def to_literal(self) -> str:
        """Canonical text form, e.g. ``1/2-3*zeta(5)^2``."""
        parts = []
        N = self.ctx.N
        for k, a in enumerate(self.nums):
            if not a:
                continue
            c = Fraction(a, self.den)
            mag = abs(c)
            if k == 0:
                body = _frac_str(mag)
            else:
                z = f"zeta({N})" if k == 1 else f"zeta({N})^{k}"
                body = z if mag == 1 else f"{_frac_str(mag)}*{z}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __str__(self):
        return self.to_literal()

    def __repr__(self):
        if self.ctx.N == 1:
            return f"Scalar({self.to_literal()!r})"
        return f"Scalar({self.to_literal()!r}, N={self.ctx.N})"


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def to_scalar(value, ctx: FieldContext = QQ) -> Scalar:
    if isinstance(value, Scalar):
        return ctx(value) if value.ctx is not ctx else value
    return Scalar.rational(value, ctx)


# ---------------------------------------------------------------------------
# rational functions in eps


class EpsScalar:
    """A rational function num(eps)/den(eps) with Scalar coefficients.

    Always stored reduced: gcd(num, den) = 1 and den monic (leading
    coefficient 1), so structural equality is mathematical equality.
    """

    __slots__ = ("ctx", "num", "den")

    def __init__(self, num: Sequence = (), den: Sequence | None = None, ctx: FieldContext | None = None):
        num = tuple(num)
        den = tuple(den) if den is not None else None
        if ctx is None:
            ctx = common_context(*(c.ctx for c in (num + (den or ())) if isinstance(c, Scalar)))
        num = upoly.trim([to_scalar(c, ctx) for c in num])
        if den is None:
            den = (ctx.one,)
        else:
            den = upoly.trim([to_scalar(c, ctx) for c in den])
        if not den:
            raise DivisionByZero("eps-rational function with zero denominator")
        self.ctx = ctx
        self.num, self.den = _normalize(num, den, ctx)

    @classmethod
    def _raw(cls, ctx, num, den):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def from_polys(cls, ctx, num: tuple, den: tuple) -> "EpsScalar":
        """Build from already-trimmed coefficient tuples in ``ctx``."""
        if not den:
            raise DivisionByZero("eps-rational function with zero denominator")
        n, d = _normalize(num, den, ctx)
        return cls._raw(ctx, n, d)

    @classmethod
    def const(cls, value, ctx: FieldContext = QQ) -> "EpsScalar":
        s = to_scalar(value, ctx)
        return cls._raw(ctx, (s,) if s else (), (ctx.one,))

    @classmethod
    def eps(cls, ctx: FieldContext = QQ) -> "EpsScalar":
        return cls._raw(ctx, (ctx.zero, ctx.one), (ctx.one,))

    def embed(self, ctx: FieldContext) -> "EpsScalar":
        if ctx is self.ctx:
            return self
        return EpsScalar._raw(
            ctx, tuple(ctx.embed(c) for c in self.num), tuple(ctx.embed(c) for c in self.den)
        )

    def _align(self, other):
        if isinstance(other, EpsScalar):
            ctx = common_context(self.ctx, other.ctx)
            return self.embed(ctx), other.embed(ctx)
        if isinstance(other, Scalar):
            ctx = common_context(self.ctx, other.ctx)
            return self.embed(ctx), EpsScalar.const(other, ctx)
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return self, EpsScalar.const(other, self.ctx)
        return None

    # -- arithmetic ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.den == b.den:
            return EpsScalar.from_polys(a.ctx, upoly.add(a.num, b.num), a.den)
        num = upoly.add(upoly.mul(a.num, b.den), upoly.mul(b.num, a.den))
        return EpsScalar.from_polys(a.ctx, num, upoly.mul(a.den, b.den))

    __radd__ = __add__

    def __neg__(self):
        return EpsScalar._raw(self.ctx, upoly.neg(self.num), self.den)

    def __sub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return EpsScalar.from_polys(a.ctx, upoly.mul(a.num, b.num), upoly.mul(a.den, b.den))

    __rmul__ = __mul__

    def inverse(self) -> "EpsScalar":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return EpsScalar.from_polys(self.ctx, self.den, self.num)

    def __truediv__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        one = self.ctx.one
        return EpsScalar._raw(self.ctx, upoly.power(self.num, k, one), upoly.power(self.den, k, one))

    def __eq__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        if len(self.den) == 1 and len(self.num) <= 1:
            return hash(self.num[0]) if self.num else hash(0)
        return hash((self.num, self.den))

    # -- limits -------------------------------------------------------------

    def valuation(self) -> tuple[int, Scalar]:
        """(q, lead): x = lead * eps^q + higher order terms."""
        if not self.num:
            raise ZeroValuation("valuation of zero")
        i = upoly.order(self.num)
        j = upoly.order(self.den)
        return i - j, self.num[i] / self.den[j]

    def eval0(self) -> Scalar:
        if not self.num:
            return self.ctx.zero
        q, lead = self.valuation()
        if q < 0:
            raise PoleAtZero(f"{self} has a pole of order {-q} at eps = 0")
        return lead if q == 0 else self.ctx.zero

    def rescale_eps(self, u) -> "EpsScalar":
        """Substitute eps -> u * eps."""
        u = to_scalar(u, self.ctx)
        return EpsScalar.from_polys(self.ctx, _rescale(self.num, u), _rescale(self.den, u))

    # -- printing -----------------------------------------------------------

    def to_literal(self) -> str:
        if len(self.den) == 1:
            return _epoly_str(self.num)
        return f"({_epoly_str(self.num)})/({_epoly_str(self.den)})"

    def __str__(self):
        return self.to_literal()

    def __repr__(self):
        return f"EpsScalar({self.to_literal()!r})"


def _rescale(p: tuple, u: Scalar) -> tuple:
    out, f = [], None
    for c in p:
        f = u.ctx.one if f is None else f * u
        out.append(c * f)
    return upoly.trim(out)


def _normalize(num: tuple, den: tuple, ctx: FieldContext) -> tuple[tuple, tuple]:
    if not num:
        return (), (ctx.one,)
    if len(den) > 1:
        g = upoly.gcd(num, den)
        if len(g) > 1:
            num = upoly.exact_div(num, g)
            den = upoly.exact_div(den, g)
    lc = den[-1]
    if lc != 1:
        inv = lc.inverse()
        num = tuple(c * inv for c in num)
        den = tuple(c * inv for c in den)
    return num, den


def _needs_parens(c: Scalar) -> bool:
    return sum(1 for a in c.nums if a) > 1


def _epoly_str(p: tuple) -> str:
    if not p:
        return "0"
    out = ""
    for k, c in enumerate(p):
        if not c:
            continue
        lit = c.to_literal()
        if k == 0:
            term = lit
        else:
            mono = "e" if k == 1 else f"e^{k}"
            if lit == "1":
                term = mono
            elif lit == "-1":
                term = "-" + mono
            elif _needs_parens(c):
                term = f"({lit})*{mono}"
            else:
                term = f"{lit}*{mono}"
        if out and not term.startswith("-"):
            out += "+"
        out += term
    return out
