"""Worked border decompositions and random generators for tests and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from . import linalg
from .border import BorderDecomposition, EpsLinForm
from .polynomials import LinForm, Poly
from .scalars import QQ, EpsScalar, FieldContext

EPS = EpsScalar.eps(QQ)


def _eps_form(*coeffs) -> EpsLinForm:
    return EpsLinForm(coeffs, QQ)


def tangent_border(d: int) -> BorderDecomposition:
    """x^(d-1) y as the limit of ((x + eps y)^d - x^d) / (d eps)."""
    if d < 1:
        raise ValueError("degree must be positive")
    w = (d * EPS).inverse()
    return BorderDecomposition(2, d, [(w, _eps_form(1, EPS)), (-w, _eps_form(1, 0))], QQ)


def tangent_poly(d: int) -> Poly:
    return Poly.monomial((d - 1, 1))


def three_tangents(d: int) -> BorderDecomposition:
    """Six summands in three tangent pairs, variables (x0, x1, y0, y1, y2).

    The limit is x0^(d-1) y0 + x1^(d-1) y1 + 2 (x0 + x1)^(d-1) y2.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    w = (d * EPS).inverse()
    return BorderDecomposition(
        5,
        d,
        [
            (w, _eps_form(1, 0, EPS, 0, 0)),
            (-w, _eps_form(1, 0, 0, 0, 0)),
            (w, _eps_form(0, 1, 0, EPS, 0)),
            (-w, _eps_form(0, 1, 0, 0, 0)),
            (2 * w, _eps_form(1, 1, 0, 0, EPS)),
            (-2 * w, _eps_form(1, 1, 0, 0, 0)),
        ],
        QQ,
    )


def fd_poly(d: int) -> Poly:
    x0, x1 = LinForm([1, 0, 0, 0, 0]), LinForm([0, 1, 0, 0, 0])
    y = [LinForm.unit(i, 5) for i in (2, 3, 4)]
    s = LinForm([1, 1, 0, 0, 0])
    return (x0 ** (d - 1)) * y[0].to_poly() + (x1 ** (d - 1)) * y[1].to_poly() + ((s ** (d - 1)) * y[2].to_poly()).scale(2)


def wild_cubic() -> BorderDecomposition:
    """Five summands with pairwise distinct limit directions whose sum still converges (to fd_poly(3))."""
    w = (9 * EPS).inverse()
    return BorderDecomposition(
        5,
        3,
        [
            (3 * w, _eps_form(1, 0, EPS, 0, 0)),
            (3 * w, _eps_form(0, 1, 0, EPS, 0)),
            (6 * w, _eps_form(1, 1, 0, 0, EPS)),
            (-w, _eps_form(1, 2, 0, 0, 0)),
            (-w, _eps_form(2, 1, 0, 0, 0)),
        ],
        QQ,
    )


# ---------------------------------------------------------------------------
# random generators


def random_linform(rng: random.Random, n: int, lo: int = -3, hi: int = 3, ctx: FieldContext = QQ) -> LinForm:
    while True:
        v = [rng.randint(lo, hi) for _ in range(n)]
        if any(v):
            return LinForm(v, ctx)


def random_poly(rng: random.Random, n: int, d: int, density: float = 0.6, lo: int = -5, hi: int = 5) -> Poly:
    from .polynomials import monomials

    while True:
        terms = {m: rng.randint(lo, hi) for m in monomials(n, d) if rng.random() < density}
        p = Poly(n, d, terms, QQ)
        if p:
            return p


def random_directions(rng: random.Random, n: int, m: int, lo: int = -3, hi: int = 3) -> list[LinForm]:
    """m pairwise non-proportional nonzero forms."""
    out: list[LinForm] = []
    seen = set()
    while len(out) < m:
        f = random_linform(rng, n, lo, hi)
        key = f.normalized()
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


def _local_weights(points: Sequence[int], r: int) -> list[Fraction]:
    """lambda with sum_j lambda_j t_j^i = [i == r-1] for i < r."""
    V = [[Fraction(t) ** i for t in points] for i in range(r)]
    rhs = [Fraction(int(i == r - 1)) for i in range(r)]
    return linalg.solve(V, rhs)


def random_local_family(rng: random.Random, base: LinForm, r: int, d: int, lo: int = -2, hi: int = 2) -> list:
    """r summands all tending to ``base`` whose sum converges to a nonzero limit.

    Each member is c_j (l + sum_s (eps t_j)^s M_s + eps^r N_j)^d with
    c_j = lambda_j / eps^(r-1). Every eps^i coefficient of the sum carries the
    factor sum_j lambda_j t_j^i, so orders below r-1 cancel. A random unit u(eps)
    rescales each form (and u^-d its weight) to hide the structure.
    """
    n = base.nvars
    points = list(range(r))
    lam = _local_weights(points, r)
    Ms = [random_linform(rng, n, lo, hi) for _ in range(r - 1)]
    members = []
    for j, t in enumerate(points):
        coeffs = [EpsScalar.const(b) for b in base.coeffs]
        for s, M in enumerate(Ms, start=1):
            step = (EPS * t) ** s
            coeffs = [c + step * m for c, m in zip(coeffs, M.coeffs)]
        N = [rng.randint(lo, hi) for _ in range(n)]
        coeffs = [c + EPS ** r * x for c, x in zip(coeffs, N)]
        u = EpsScalar([rng.choice([1, 2, -1]), rng.randint(-2, 2)], ctx=QQ)
        weight = EpsScalar.const(lam[j]) * EPS ** (-(r - 1)) * u ** (-d)
        members.append((weight, EpsLinForm([u * c for c in coeffs], QQ)))
    return members


def random_border(rng: random.Random, n: int, d: int, sizes: Sequence[int]) -> BorderDecomposition:
    """Sum of random local families with distinct bases, one per entry of ``sizes``."""
    bases = random_directions(rng, n, len(sizes))
    summands = []
    for base, r in zip(bases, sizes):
        summands.extend(random_local_family(rng, base, r, d))
    return BorderDecomposition(n, d, summands, QQ)
