"""Border decompositions: eps-parametric linear forms, exact limits and local classes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import linalg, upoly
from .errors import ArityMismatch, LimitDoesNotExist, NotLocal, ZeroValuation
from .polynomials import LinForm, Poly, _compositions, basis_change_to, multinomial
from .scalars import QQ, EpsScalar, FieldContext, Scalar, common_context, to_scalar


def to_eps(value, ctx: FieldContext) -> EpsScalar:
    if isinstance(value, EpsScalar):
        return value.embed(ctx) if value.ctx is not ctx else value
    return EpsScalar.const(to_scalar(value, ctx), ctx)


class EpsLinForm:
    """A linear form whose coefficients are rational functions of eps."""

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs: Iterable, ctx: FieldContext | None = None):
        coeffs = list(coeffs)
        if ctx is None:
            ctx = common_context(*(c.ctx for c in coeffs if isinstance(c, (Scalar, EpsScalar))))
        self.coeffs = tuple(to_eps(c, ctx) for c in coeffs)
        self.ctx = ctx

    @classmethod
    def constant(cls, form: LinForm) -> "EpsLinForm":
        return cls(form.coeffs, form.ctx)

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def embed(self, ctx: FieldContext) -> "EpsLinForm":
        return EpsLinForm([c.embed(ctx) for c in self.coeffs], ctx)

    def transform(self, A: Sequence[Sequence]) -> "EpsLinForm":
        """Coefficient vector A c (A may hold Scalar or EpsScalar entries)."""
        if any(len(row) != self.nvars for row in A):
            raise ArityMismatch("substitution matrix does not match the form")
        out = []
        for row in A:
            acc = EpsScalar.const(0, self.ctx)
            for a, c in zip(row, self.coeffs):
                if a and c:
                    acc = acc + c * a
            out.append(acc)
        return EpsLinForm(out)

    def __mul__(self, c):
        return EpsLinForm([x * c for x in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, EpsLinForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def valuation(self) -> int:
        vals = [c.valuation()[0] for c in self.coeffs if c]
        if not vals:
            raise ZeroValuation("zero linear form")
        return min(vals)

    def leading(self) -> tuple[int, LinForm]:
        """(q, v) with form = eps^q v + O(eps^(q+1))."""
        q = self.valuation()
        lead = []
        for c in self.coeffs:
            if c:
                v, a = c.valuation()
                lead.append(a if v == q else self.ctx.zero)
            else:
                lead.append(self.ctx.zero)
        return q, LinForm(lead, self.ctx)

    def at_zero(self) -> LinForm:
        return LinForm([c.eval0() for c in self.coeffs], self.ctx)

    def to_literals(self) -> list[str]:
        return [c.to_literal() for c in self.coeffs]

    def __repr__(self):
        return f"EpsLinForm({' '.join(self.to_literals())})"


class BorderDecomposition:
    """The claim f = lim_{eps -> 0} sum_k c_k(eps) * l_k(eps)^d."""

    __slots__ = ("nvars", "degree", "ctx", "summands")

    def __init__(self, nvars: int, degree: int, summands: Iterable = (), ctx: FieldContext | None = None):
        summands = [(w, f if isinstance(f, EpsLinForm) else EpsLinForm(f)) for w, f in summands]
        if ctx is None:
            ctx = common_context(
                *(f.ctx for _, f in summands),
                *(w.ctx for w, _ in summands if isinstance(w, (Scalar, EpsScalar))),
            )
        clean = []
        for w, f in summands:
            if f.nvars != nvars:
                raise ArityMismatch(f"summand form has {f.nvars} variables, expected {nvars}")
            clean.append((to_eps(w, ctx), f.embed(ctx) if f.ctx is not ctx else f))
        self.nvars = nvars
        self.degree = degree
        self.ctx = ctx
        self.summands = clean

    @property
    def r(self) -> int:
        return len(self.summands)

    def __len__(self):
        return len(self.summands)

    def subset(self, indices: Iterable[int]) -> "BorderDecomposition":
        return BorderDecomposition(self.nvars, self.degree, [self.summands[i] for i in indices], self.ctx)

    def embed(self, ctx: FieldContext) -> "BorderDecomposition":
        return BorderDecomposition(
            self.nvars, self.degree, [(w.embed(ctx), f.embed(ctx)) for w, f in self.summands], ctx
        )

    def rescale_eps(self, u) -> "BorderDecomposition":
        """Reparametrize eps -> u * eps."""
        return BorderDecomposition(
            self.nvars,
            self.degree,
            [(w.rescale_eps(u), EpsLinForm([c.rescale_eps(u) for c in f.coeffs], self.ctx)) for w, f in self.summands],
            self.ctx,
        )

    def expand(self) -> "EpsExpansion":
        return expand_summands(self.summands, self.nvars, self.degree, self.ctx)

    def limit(self) -> Poly:
        return limit_of_decomposition(self)

    def __repr__(self):
        return f"BorderDecomposition(n={self.nvars}, d={self.degree}, r={self.r})"


# ---------------------------------------------------------------------------
# exact expansion


def _lcm(p: tuple, q: tuple) -> tuple:
    g = upoly.gcd(p, q)
    return upoly.monic(upoly.exact_div(upoly.mul(p, q), g))


class EpsExpansion:
    """sum_k c_k l_k^d as {monomial: numerator(eps)} over one common denominator."""

    __slots__ = ("nvars", "degree", "ctx", "nums", "den")

    def __init__(self, nvars, degree, ctx, nums, den):
        self.nvars = nvars
        self.degree = degree
        self.ctx = ctx
        self.nums = nums
        self.den = den

    def is_zero(self) -> bool:
        return not self.nums

    def coefficient(self, exps) -> EpsScalar:
        num = self.nums.get(tuple(exps), ())
        return EpsScalar.from_polys(self.ctx, num, self.den)

    def coefficients(self) -> dict:
        return {m: EpsScalar.from_polys(self.ctx, p, self.den) for m, p in self.nums.items()}

    def valuation(self) -> int:
        """Lowest power of eps over all monomials."""
        if not self.nums:
            raise ZeroValuation("expansion is identically zero")
        shift = upoly.order(self.den)
        return min(upoly.order(p) for p in self.nums.values()) - shift

    def leading(self) -> tuple[int, Poly]:
        """(q, f) with the expansion equal to eps^q f + higher order terms."""
        q = self.valuation()
        j = upoly.order(self.den)
        inv = self.den[j].inverse()
        terms = {}
        for m, p in self.nums.items():
            i = q + j
            if i < len(p) and p[i] and upoly.order(p) == i:
                terms[m] = p[i] * inv
        return q, Poly._raw(self.nvars, self.degree, terms, self.ctx)


def _expand_one(weight: EpsScalar, form: EpsLinForm, d: int, ctx: FieldContext):
    """Numerators {monomial: poly} and denominator of weight * form^d."""
    one = ctx.one
    D = (one,)
    for c in form.coeffs:
        if c and len(c.den) > 1:
            D = _lcm(D, c.den)
    support = []
    for i, c in enumerate(form.coeffs):
        if c:
            P = c.num if c.den == D else upoly.exact_div(upoly.mul(c.num, D), c.den)
            support.append((i, P))
    den = upoly.mul(weight.den, upoly.power(D, d, one))
    if not support or not weight:
        return {}, den
    pows = []
    for _, P in support:
        row = [(one,)]
        for _ in range(d):
            row.append(upoly.mul(row[-1], P))
        pows.append(row)
    idx = [i for i, _ in support]
    out = {}
    for comp in _compositions(d, len(support)):
        p = pows[0][comp[0]]
        for j in range(1, len(comp)):
            if comp[j]:
                p = upoly.mul(p, pows[j][comp[j]])
        p = upoly.scale(upoly.mul(p, weight.num), ctx(multinomial(comp)))
        if p:
            exps = [0] * form.nvars
            for i, k in zip(idx, comp):
                exps[i] = k
            out[tuple(exps)] = p
    return out, den


def expand_summands(summands: Sequence, nvars: int, d: int, ctx: FieldContext) -> EpsExpansion:
    parts = [_expand_one(w, f, d, ctx) for w, f in summands]
    L = (ctx.one,)
    for _, den in parts:
        L = _lcm(L, den)
    total: dict = {}
    for nums, den in parts:
        mult = upoly.exact_div(L, den)
        for m, p in nums.items():
            p = upoly.mul(p, mult)
            total[m] = upoly.add(total[m], p) if m in total else p
    total = {m: p for m, p in total.items() if p}
    return EpsExpansion(nvars, d, ctx, total, L)


# ---------------------------------------------------------------------------
# operations


def limit_of_decomposition(B: BorderDecomposition) -> Poly:
    """The exact polynomial lim_{eps -> 0} of the decomposition."""
    E = B.expand()
    if E.is_zero():
        return Poly.zero(B.nvars, B.degree, B.ctx)
    q = E.valuation()
    if q < 0:
        raise LimitDoesNotExist(f"the expansion has a pole of order {-q} at eps = 0")
    if q > 0:
        return Poly.zero(B.nvars, B.degree, B.ctx)
    return E.leading()[1]


def projective_limit(form: EpsLinForm) -> LinForm:
    """Normalized direction of the form as eps -> 0."""
    return form.leading()[1].normalized()


@dataclass
class LocalClass:
    """Summands sharing one projective limit.

    The class sum equals eps^q * leading + higher order terms. ``dropped``
    marks classes whose sum vanishes in the limit (q > 0 or identically zero);
    those contribute nothing and are discarded downstream.
    """

    indices: list[int]
    base: LinForm
    q: int | None
    leading: Poly | None
    dropped: bool = False
    members: list = field(default_factory=list, repr=False)

    @property
    def size(self) -> int:
        return len(self.indices)


def group_local_classes(B: BorderDecomposition) -> list[LocalClass]:
    limit_of_decomposition(B)
    groups: dict[LinForm, list[int]] = {}
    for i, (_, f) in enumerate(B.summands):
        groups.setdefault(projective_limit(f), []).append(i)
    classes = []
    for base, idx in groups.items():
        members = [B.summands[i] for i in idx]
        E = expand_summands(members, B.nvars, B.degree, B.ctx)
        if E.is_zero():
            classes.append(LocalClass(idx, base, None, None, True, members))
            continue
        q, lead = E.leading()
        classes.append(LocalClass(idx, base, q, lead, q > 0, members))
    return classes


def standardize_local(members: Sequence, base: LinForm) -> list:
    """Equivalent local family whose first form is exactly gamma * eps^q * base.

    The coordinate change used tends to the identity as eps -> 0, so the
    valuation and leading term of the class sum are unchanged.
    """
    if not members:
        return []
    target = base.normalized()
    for _, f in members:
        if f.is_zero() or projective_limit(f) != target:
            raise NotLocal(f"member {f!r} does not tend to the base {base!r}")
    ctx = members[0][1].ctx
    A, Binv = basis_change_to(target)
    rotated = [(w, f.transform(A)) for w, f in members]
    alpha = rotated[0][1].coeffs
    q, gamma = alpha[0].valuation()
    n = len(alpha)
    lead = EpsScalar.from_polys(ctx, (ctx.zero,) * q + (gamma,), (ctx.one,)) if q >= 0 else (
        EpsScalar.from_polys(ctx, (gamma,), (ctx.zero,) * (-q) + (ctx.one,))
    )
    zero, one = EpsScalar.const(0, ctx), EpsScalar.const(1, ctx)
    T = [[lead / alpha[0]] + [zero] * (n - 1)]
    for i in range(1, n):
        row = [-(alpha[i] / alpha[0])] + [one if j == i else zero for j in range(1, n)]
        T.append(row)
    return [(w, f.transform(T).transform(Binv)) for w, f in rotated]


def class_leading(members: Sequence, nvars: int, d: int, ctx: FieldContext) -> tuple[int, Poly] | None:
    E = expand_summands(members, nvars, d, ctx)
    return None if E.is_zero() else E.leading()
