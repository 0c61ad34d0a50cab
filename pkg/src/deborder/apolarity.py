"""Apolar ideals, Hilbert functions, compression and GAD size."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import OrderOutOfRange, ZeroInput
from .gad import GAD
from .polynomials import LinForm, Poly, apply_operator, catalecticant, substitute_linear
from .scalars import Scalar


@dataclass(frozen=True)
class GradedSubspace:
    """A subspace of degree-p differential operators, given by a basis."""

    degree: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class HilbertProfile:
    values: tuple

    def __getitem__(self, p):
        return self.values[p]

    def __len__(self):
        return len(self.values)

    def is_symmetric(self) -> bool:
        return self.values == self.values[::-1]

    def __str__(self):
        return " ".join(map(str, self.values))


def ann_graded(f: Poly, p: int) -> GradedSubspace:
    """Degree-p operators annihilating f."""
    cat = catalecticant(f, p)
    if cat.cols:
        vecs = linalg.left_kernel(cat.entries, zero=f.ctx.zero)
    else:
        vecs = []
    basis = tuple(Poly(f.nvars, p, {m: c for m, c in zip(cat.rows, v) if c}, f.ctx) for v in vecs)
    return GradedSubspace(p, basis)


def hilbert_function(f: Poly) -> HilbertProfile:
    if not f:
        raise ZeroInput("Hilbert function of the zero polynomial")
    return HilbertProfile(tuple(catalecticant(f, p).rank() for p in range(f.degree + 1)))


def apolarity_check(f: Poly, D: GradedSubspace) -> bool:
    """True iff every operator of D (of degree deg f) kills f."""
    if D.degree != f.degree:
        raise OrderOutOfRange(f"subspace degree {D.degree} differs from deg f = {f.degree}")
    return all(not apply_operator(op, f) for op in D.basis)


# ---------------------------------------------------------------------------
# compression


def _derivative(g: dict, i: int) -> dict:
    out = {}
    for exps, c in g.items():
        e = exps[i]
        if e:
            out[exps[:i] + (e - 1,) + exps[i + 1:]] = c * e
    return out


def derivative_closure_dim(g: dict, nvars: int) -> int:
    """dim of the span of g and all of its iterated partial derivatives."""
    basis = linalg.IncrementalBasis()
    queue = deque([g])
    while queue:
        p = queue.popleft()
        if not p or not basis.add(p):
            continue
        for i in range(nvars):
            dp = _derivative(p, i)
            if dp:
                queue.append(dp)
    return len(basis)


def compression(f: Poly, form: LinForm, complement: Sequence[LinForm] | None = None) -> tuple[dict, int]:
    """Dehomogenize f along ``form``: returns (g, compressed size).

    After a coordinate change making ``form`` the first variable (the other new
    variables are ``complement``, unit vectors by default), write
    f = sum_i x1^i / i! * f_i and return g = sum_i f_i as a map from exponent
    tuples in the remaining variables to coefficients.
    """
    if not f:
        raise ZeroInput("compression of the zero polynomial")
    if form.is_zero():
        raise ZeroInput("compression along the zero form")
    n = f.nvars
    ctx = f.ctx
    form = form.embed(ctx) if form.ctx is not ctx else form
    if complement is None:
        p = form.leading_index()
        complement = [LinForm.unit(i, n, ctx) for i in range(n) if i != p]
    cols = [list(form.coeffs)] + [list(c.embed(ctx).coeffs) for c in complement]
    A = linalg.inverse(linalg.transpose(cols))
    h = substitute_linear(f, A)
    g: dict = {}
    for exps, c in h.terms.items():
        key = exps[1:]
        val = c * math.factorial(exps[0])
        g[key] = g[key] + val if key in g else val
    g = {k: v for k, v in g.items() if v}
    return g, derivative_closure_dim(g, n - 1)


def compressed_size(f: Poly, form: LinForm) -> int:
    return compression(f, form)[1]


def gad_size(G: GAD) -> int:
    """Sum of the compressed sizes of the parts along their linear forms."""
    return sum(compressed_size(p.term(G.degree), p.form) for p in G.parts if p.g)


def format_inhomogeneous(g: dict) -> str:
    if not g:
        return "0"
    out = ""
    for exps, c in sorted(g.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
        mono = "*".join(f"x{i + 2}" if e == 1 else f"x{i + 2}^{e}" for i, e in enumerate(exps) if e)
        lit = c.to_literal() if isinstance(c, Scalar) else str(c)
        term = lit if not mono else (mono if lit == "1" else f"-{mono}" if lit == "-1" else f"{lit}*{mono}")
        if out and not term.startswith("-"):
            out += "+"
        out += term
    return out
