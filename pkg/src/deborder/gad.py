"""Generalized additive decompositions f = sum_k l_k^(d - r_k + 1) g_k."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .border import BorderDecomposition, group_local_classes
from .errors import (
    ArityMismatch,
    CrossClassCancellation,
    DegreeTooLow,
    LocalStructureViolation,
    ProportionalForms,
)
from .polynomials import LinForm, Poly, basis_change_to, monomials, substitute_linear
from .scalars import EpsScalar, FieldContext, common_context


@dataclass
class GADPart:
    form: LinForm
    r: int
    g: Poly
    witness: BorderDecomposition | None = None

    def term(self, d: int) -> Poly:
        return (self.form ** (d - self.r + 1)) * self.g


class GAD:
    __slots__ = ("nvars", "degree", "ctx", "parts")

    def __init__(self, nvars: int, degree: int, parts: Sequence = (), ctx: FieldContext | None = None):
        parts = [p if isinstance(p, GADPart) else GADPart(*p) for p in parts]
        if ctx is None:
            ctx = common_context(*(p.form.ctx for p in parts), *(p.g.ctx for p in parts))
        for p in parts:
            if p.form.nvars != nvars or p.g.nvars != nvars:
                raise ArityMismatch(f"GAD part has the wrong number of variables (expected {nvars})")
            p.form = p.form.embed(ctx)
            p.g = p.g.embed(ctx)
        self.nvars = nvars
        self.degree = degree
        self.ctx = ctx
        self.parts = parts

    def __len__(self):
        return len(self.parts)

    @property
    def total_r(self) -> int:
        return sum(p.r for p in self.parts)

    def polynomial(self) -> Poly:
        out = Poly.zero(self.nvars, self.degree, self.ctx)
        for p in self.parts:
            out = out + p.term(self.degree)
        return out

    def __repr__(self):
        return f"GAD(n={self.nvars}, d={self.degree}, r={[p.r for p in self.parts]})"


def _base_key(form: LinForm):
    return form.sort_key()


def extract_gad(B: BorderDecomposition) -> GAD:
    """Group B into local classes and read one GAD part off each class limit."""
    d, n, r = B.degree, B.nvars, B.r
    if r == 0:
        return GAD(n, d, [], B.ctx)
    if d < r - 1:
        raise DegreeTooLow(f"degree {d} is below r - 1 = {r - 1}; classes need not converge separately")
    classes = [c for c in group_local_classes(B) if not c.dropped]
    for c in classes:
        if c.q < 0:
            raise CrossClassCancellation(
                f"class with base {c.base!r} has valuation {c.q} < 0 although d >= r - 1"
            )
    classes.sort(key=lambda c: _base_key(c.base))
    parts = []
    eps = EpsScalar.eps(B.ctx)
    for c in classes:
        rk = c.size
        A, Binv = basis_change_to(c.base)
        # substituting with A turns the base into x1, and Binv undoes it
        h = substitute_linear(c.leading, A)
        power = d - rk + 1
        divided = {}
        for exps, coef in h.terms.items():
            if exps[0] < power:
                raise LocalStructureViolation(
                    f"class limit is not divisible by {c.base!r}^{power}"
                )
            divided[(exps[0] - power,) + exps[1:]] = coef
        hg = Poly(n, rk - 1, divided, B.ctx)
        g = substitute_linear(hg, Binv)
        witness = BorderDecomposition(n, d, [(w * eps ** (-c.q), f) for w, f in c.members], B.ctx)
        parts.append(GADPart(c.base, rk, g, witness))
    return GAD(n, d, parts, B.ctx)


def check_gad(G: GAD, f: Poly) -> str | None:
    """None when G is a valid GAD of f, otherwise a short reason."""
    if G.nvars != f.nvars:
        return f"variable count {G.nvars} != {f.nvars}"
    if G.degree != f.degree and (G.parts or f):
        return f"degree {G.degree} != {f.degree}"
    d = G.degree
    normals = []
    for k, p in enumerate(G.parts):
        if p.form.is_zero():
            return f"part {k + 1} has a zero linear form"
        if p.r < 1 or p.r - 1 > d:
            return f"part {k + 1} has invalid r = {p.r}"
        if p.g.degree != p.r - 1 and p.g:
            return f"part {k + 1}: deg g = {p.g.degree} but r - 1 = {p.r - 1}"
        normals.append(p.form.normalized())
    if len(set(normals)) != len(normals):
        return "two parts have proportional linear forms"
    try:
        total = G.polynomial()
    except ArityMismatch as exc:
        return str(exc)
    if total != f:
        return "sum of parts differs from the polynomial"
    return None


def verify_gad(G: GAD, f: Poly) -> bool:
    return check_gad(G, f) is None


def jordan_independence_dim(parts: Sequence, d: int) -> int:
    """dim of sum_k l_k^(d - r_k + 1) * S_(r_k - 1) inside S_d."""
    parts = list(parts)
    if not parts:
        return 0
    normals = [LinForm(l.coeffs).normalized() for l, _ in parts]
    if len(set(normals)) != len(normals):
        raise ProportionalForms("parts contain proportional linear forms")
    n = parts[0][0].nvars
    basis = linalg.IncrementalBasis()
    for l, rk in parts:
        if rk - 1 > d:
            raise ValueError(f"r_k = {rk} exceeds d + 1")
        lp = l ** (d - rk + 1)
        for m in monomials(n, rk - 1):
            basis.add(dict((lp * Poly.monomial(m, 1, l.ctx)).terms))
    return len(basis)
