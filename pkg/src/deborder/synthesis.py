"""From generalized additive decompositions to explicit Waring decompositions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .border import BorderDecomposition
from .errors import ConductorTooLarge, SynthesisError
from .gad import GAD, extract_gad
from .polynomials import LinForm, Poly, essential_vars, monomials, power_of_linform, substitute_linear
from .scalars import QQ, FieldContext, Scalar, common_context, make_context, to_scalar

DEFAULT_MAX_CONDUCTOR = 512


class WaringDecomposition:
    """f = sum_i c_i * l_i^d with nonzero scalar weights."""

    __slots__ = ("nvars", "degree", "ctx", "summands")

    def __init__(self, nvars: int, degree: int, summands: Iterable = (), ctx: FieldContext | None = None):
        summands = [(w, f if isinstance(f, LinForm) else LinForm(f)) for w, f in summands]
        if ctx is None:
            ctx = common_context(
                *(f.ctx for _, f in summands), *(w.ctx for w, _ in summands if isinstance(w, Scalar))
            )
        clean = []
        for w, f in summands:
            if f.nvars != nvars:
                raise ValueError(f"summand form has {f.nvars} variables, expected {nvars}")
            w = to_scalar(w, ctx)
            if w:
                clean.append((w, f.embed(ctx)))
        self.nvars = nvars
        self.degree = degree
        self.ctx = ctx
        self.summands = clean

    def __len__(self):
        return len(self.summands)

    @property
    def rank(self) -> int:
        return len(self.summands)

    def embed(self, ctx: FieldContext) -> "WaringDecomposition":
        return WaringDecomposition(self.nvars, self.degree, [(ctx(w), f.embed(ctx)) for w, f in self.summands], ctx)

    def expand(self) -> Poly:
        out = Poly.zero(self.nvars, self.degree, self.ctx)
        for w, f in self.summands:
            out = out + power_of_linform(f, self.degree).scale(w)
        return out

    def verify(self, f: Poly) -> bool:
        if f.nvars != self.nvars:
            return False
        if f.degree != self.degree and (f or self.summands):
            return False
        return self.expand() == f

    def __repr__(self):
        return f"WaringDecomposition(n={self.nvars}, d={self.degree}, r={len(self)})"


# ---------------------------------------------------------------------------
# roots of unity


def field_for_root(m: int) -> int:
    """Smallest conductor whose field contains a primitive m-th root of unity."""
    return m // 2 if m % 4 == 2 else m


def primitive_root(m: int) -> Scalar:
    """A primitive m-th root of unity inside Q(zeta_field_for_root(m))."""
    if m % 4 == 2:
        o = m // 2
        ctx = make_context(o)
        return -ctx.zeta_power((o + 1) // 2)
    return make_context(m).zeta


def monomial_two_form(a: int, b: int, ctx: FieldContext | None = None) -> WaringDecomposition:
    """max(a, b) + 1 powers summing to y1^a y2^b.

    With z a primitive (a+1)-th root of unity and a >= b,
    (a+1) C(a+b, a) y1^a y2^b = sum_k z^k (z^k y1 + y2)^(a+b).
    """
    if a < 0 or b < 0:
        raise ValueError("exponents must be non-negative")
    swap = a < b
    if swap:
        a, b = b, a
    z = primitive_root(a + 1)
    if ctx is None:
        ctx = z.ctx
    z = ctx.embed(z) if z.ctx is not ctx else z
    const = Scalar.rational((a + 1) * math.comb(a + b, a), ctx).inverse()
    summands = []
    zk = ctx.one
    for _ in range(a + 1):
        form = [ctx.one, zk] if swap else [zk, ctx.one]
        summands.append((zk * const, LinForm(form, ctx)))
        zk = zk * z
    return WaringDecomposition(2, a + b, summands, ctx)


# ---------------------------------------------------------------------------
# power bases


def _candidates(n: int):
    """Integer vectors ordered by max-norm, then support size, then entrywise with positives first."""
    k = 1
    while True:
        batch = []
        for v in itertools.product(range(-k, k + 1), repeat=n):
            if max(abs(x) for x in v) != k:
                continue
            first = next(x for x in v if x)
            if first < 0:
                continue
            batch.append(v)
        batch.sort(key=lambda v: (sum(1 for x in v if x), tuple((x == 0, abs(x), x < 0) for x in v)))
        yield from batch
        k += 1


@lru_cache(maxsize=None)
def _power_basis_data(n: int, e: int):
    need = math.comb(n + e - 1, e)
    basis = linalg.IncrementalBasis()
    forms = []
    for v in _candidates(n):
        p = power_of_linform(LinForm(v, QQ), e)
        if basis.add(dict(p.terms)):
            forms.append(LinForm(v, QQ))
            if len(forms) == need:
                break
    mons = monomials(n, e)
    P = [power_of_linform(f, e).to_vector(mons) for f in forms]
    return tuple(forms), linalg.inverse(P)


def power_basis(n: int, e: int) -> list[LinForm]:
    """C(n+e-1, e) small integer forms whose e-th powers are a basis of S_e."""
    if n < 1 or e < 0:
        raise ValueError("need n >= 1 and e >= 0")
    return list(_power_basis_data(n, e)[0])


def decompose_in_power_basis(g: Poly) -> WaringDecomposition:
    n, e = g.nvars, g.degree
    if not g:
        return WaringDecomposition(n, e, [], g.ctx)
    forms, Pinv = _power_basis_data(n, e)
    vec = g.to_vector(monomials(n, e))
    weights = linalg.matvec(linalg.transpose(Pinv), vec)
    return WaringDecomposition(n, e, [(w, f.embed(g.ctx)) for w, f in zip(weights, forms) if w], g.ctx)


def _decompose_essential(g: Poly) -> list[tuple[Scalar, LinForm]]:
    """Power-basis decomposition of g after reducing it to its essential variables."""
    n = g.nvars
    if g.degree == 0:
        # a constant is a single zeroth power of any nonzero form
        return [(g.coefficient((0,) * n), LinForm.unit(0, n, g.ctx))]
    m, A = essential_vars(g)
    h = substitute_linear(g, A).restrict(m)
    Ainv = linalg.inverse(A)
    out = []
    for w, L in decompose_in_power_basis(h).summands:
        padded = list(L.embed(g.ctx).coeffs) + [g.ctx.zero] * (n - m)
        out.append((w, LinForm(padded, g.ctx).transform(Ainv)))
    return out


# ---------------------------------------------------------------------------
# synthesis


def conductor_for(G: GAD) -> int:
    N = G.ctx.N
    for p in G.parts:
        if p.r >= 2:
            a, b = G.degree - p.r + 1, p.r - 1
            if a and b:
                N = math.lcm(N, field_for_root(max(a, b) + 1))
    return N


def synthesize(G: GAD, max_conductor: int = DEFAULT_MAX_CONDUCTOR) -> WaringDecomposition:
    d, n = G.degree, G.nvars
    N = conductor_for(G)
    if N > max_conductor:
        raise ConductorTooLarge(f"needs Q(zeta_{N}), above the limit {max_conductor}")
    ctx = make_context(N)
    out: list[tuple[Scalar, LinForm]] = []
    for part in G.parts:
        ell = part.form.embed(ctx)
        g = part.g.embed(ctx)
        if not g:
            continue
        if part.r == 1:
            out.append((g.coefficient((0,) * n), ell))
            continue
        a, e = d - part.r + 1, part.r - 1
        two = monomial_two_form(a, e, ctx) if a else None
        for c, L in _decompose_essential(g):
            L = L.embed(ctx)
            if a == 0:
                out.append((c, L))
            elif L.is_proportional(ell):
                lam = L.ratio_to(ell)
                out.append((c * lam ** e, ell))
            else:
                for w, uv in two.summands:
                    u, v = uv.coeffs
                    out.append((c * w, ell * u + L * v))
    W = WaringDecomposition(n, d, out, ctx)
    if W.expand() != G.polynomial():
        raise SynthesisError("synthesized decomposition does not re-expand to the GAD")
    return W


def deborder(B: BorderDecomposition, max_conductor: int = DEFAULT_MAX_CONDUCTOR) -> WaringDecomposition:
    """Explicit Waring decomposition of the limit of B."""
    from .border import limit_of_decomposition

    n, d, r = B.nvars, B.degree, B.r
    if r == 0:
        return WaringDecomposition(n, d, [], B.ctx)
    if d >= r - 1:
        G = extract_gad(B)
        W = synthesize(G, max_conductor)
        f = G.polynomial()
    else:
        f = limit_of_decomposition(B)
        if not f:
            return WaringDecomposition(n, d, [], B.ctx)
        W = WaringDecomposition(n, d, _decompose_essential(f), f.ctx)
        if W.expand() != f:
            raise SynthesisError("fallback decomposition does not re-expand to the limit")
    if len(W) > 4 ** r * d:
        raise SynthesisError(f"{len(W)} summands exceed the bound 4^{r}*{d}")
    return W


# ---------------------------------------------------------------------------
# bounds


def central_binomial(r: int) -> int:
    return math.comb(2 * r - 2, r - 1)


@dataclass(frozen=True)
class BoundReport:
    r: int
    d: int
    n: int
    binom_bound: int
    bt_bound: int
    fp_bound: int
    generic_rank: int

    def as_dict(self) -> dict:
        return dict(
            r=self.r,
            d=self.d,
            n=self.n,
            binom_bound=self.binom_bound,
            bt_bound=self.bt_bound,
            fp_bound=self.fp_bound,
            generic_rank=self.generic_rank,
        )

    def lines(self) -> list[str]:
        return [f"{k}={v}" for k, v in self.as_dict().items()]


def bounds(r: int, d: int, n: int) -> BoundReport:
    if r < 1 or d < 1 or n < 1:
        raise ValueError("r, d and n must be positive")
    binom = central_binomial(r)
    return BoundReport(
        r=r,
        d=d,
        n=n,
        binom_bound=binom,
        bt_bound=2 * -(-binom // r),
        fp_bound=4**r * d,
        generic_rank=-(-math.comb(n + d - 1, d) // n),
    )


def partition_bound(G: GAD) -> int:
    """d * sum_k C(2 r_k - 2, r_k - 1), the size guaranteed for the GAD path."""
    return G.degree * sum(central_binomial(p.r) for p in G.parts)
