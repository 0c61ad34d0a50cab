"""Rank oracles: catalecticant bounds, Sylvester's algorithm for binary forms, and
classification of forms of border rank at most three."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg, upoly
from .errors import ArityMismatch, InvalidFamily, ZeroInput
from .polynomials import (
    LinForm,
    Poly,
    apply_operator,
    catalecticant,
    essential_vars,
    monomials,
    power_of_linform,
    substitute_linear,
)
from .scalars import QQ, Scalar


class Tag(str, enum.Enum):
    POWER = "POWER"
    SUM2 = "SUM2"
    TANGENT = "TANGENT"
    SUM3 = "SUM3"
    SUM1_TANGENT = "SUM1_TANGENT"
    BWR3_LOCAL = "BWR3_LOCAL"
    UNKNOWN = "UNKNOWN"

    def __str__(self):
        return self.value


@dataclass
class RankCertificate:
    kind: str
    value: int
    tag: Tag | None = None
    witness: dict = field(default_factory=dict)

    def __str__(self):
        head = f"{self.kind} value={self.value}"
        return head if self.tag is None else f"{head} tag={self.tag}"


def catalecticant_lower_bound(f: Poly) -> int:
    """max_e rank Cat_e(f), a lower bound for the rank and the border rank."""
    if not f:
        raise ZeroInput("lower bound of the zero polynomial")
    return max(catalecticant(f, e).rank() for e in range(f.degree // 2 + 1))


def hilbert_values(f: Poly) -> list[int]:
    d = f.degree
    half = [catalecticant(f, e).rank() for e in range(d // 2 + 1)]
    return [half[min(e, d - e)] for e in range(d + 1)]


# ---------------------------------------------------------------------------
# binary forms


def _dehomogenize(vec: Sequence) -> tuple:
    """Coefficient vector over monomials(2, r) as a polynomial in t = d_y / d_x."""
    return upoly.trim(list(vec))


def _multiplicities(p: tuple) -> list[int]:
    """Root multiplicities of p over the algebraic closure (square-free decomposition)."""
    if len(p) <= 1:
        return []
    c = upoly.gcd(p, upoly.deriv(p))
    w = upoly.exact_div(p, c)
    out = []
    i = 1
    while len(w) > 1:
        y = upoly.gcd(w, c)
        z = upoly.exact_div(w, y)
        out += [i] * (len(z) - 1)
        w = y
        c = upoly.exact_div(c, y)
        i += 1
    return out


def binary_root_pattern(vec: Sequence, r: int) -> tuple[int, ...]:
    """Multiplicities of the roots of a degree-r binary form on the projective line."""
    p = _dehomogenize(vec)
    if not p:
        raise ZeroInput("zero binary form")
    mult = _multiplicities(p)
    inf = r - (len(p) - 1)
    if inf:
        mult.append(inf)
    return tuple(sorted(mult, reverse=True))


def _binary_gcd(basis: Sequence[Sequence], r: int) -> tuple[tuple, int]:
    polys = [_dehomogenize(b) for b in basis]
    g = ()
    for p in polys:
        g = upoly.gcd(g, p) if g else upoly.monic(p)
    inf = min(r - (len(p) - 1) for p in polys)
    return g, inf


def generic_pattern(basis: Sequence[Sequence], r: int) -> tuple[int, ...]:
    """Root pattern of a general element of the span of ``basis`` (degree-r binary forms).

    A pencil or larger system is the fixed part times a base-point-free moving
    part, and the general moving member has simple roots away from the fixed
    ones, so only the gcd matters.
    """
    if len(basis) == 1:
        return binary_root_pattern(basis[0], r)
    g, inf = _binary_gcd(basis, r)
    mult = _multiplicities(g) + ([inf] if inf else [])
    moving = r - (len(g) - 1) - inf
    return tuple(sorted(mult + [1] * moving, reverse=True))


def _combination(basis: Sequence[Sequence], t: int) -> list:
    out = list(basis[0])
    for i, b in enumerate(basis[1:], start=1):
        k = t**i
        out = [x + k * y for x, y in zip(out, b)]
    return out


def squarefree_member(basis: Sequence[Sequence], r: int) -> list | None:
    """A member with simple roots, or None if the span has none."""
    if not basis or any(m > 1 for m in generic_pattern(basis, r)):
        return None
    t = 0
    while True:
        v = _combination(basis, t)
        if any(v) and all(m == 1 for m in binary_root_pattern(v, r)):
            return v
        t += 1


def annihilator_vectors(f: Poly, e: int) -> list[list]:
    cat = catalecticant(f, e)
    if not cat.cols:
        return []
    return linalg.left_kernel(cat.entries, zero=f.ctx.zero)


def _binary_kernel(f: Poly, r: int) -> list[list]:
    if r > f.degree:
        one, zero = f.ctx.one, f.ctx.zero
        return [[one if i == j else zero for j in range(r + 1)] for i in range(r + 1)]
    return annihilator_vectors(f, r)


def binary_exact_ranks(f: Poly) -> tuple[int, int]:
    """(Waring rank, border rank) of a binary form."""
    if f.nvars != 2:
        raise ArityMismatch(f"binary form expected, got {f.nvars} variables")
    if not f:
        raise ZeroInput("rank of the zero polynomial")
    d = f.degree
    bwr = catalecticant(f, d // 2).rank()
    r = bwr
    while True:
        K = _binary_kernel(f, r)
        if K and all(m == 1 for m in generic_pattern(K, r)):
            return r, bwr
        r += 1


def binary_rank_certificates(f: Poly) -> tuple[RankCertificate, RankCertificate]:
    wr, bwr = binary_exact_ranks(f)
    witness = squarefree_member(_binary_kernel(f, wr), wr)
    return (
        RankCertificate("exact_binary_waring", wr, None, {"operator": Poly.from_vector(witness, 2, wr, f.ctx)}),
        RankCertificate("exact_binary_border", bwr),
    )


# ---------------------------------------------------------------------------
# classification


def _point_forms(vec: Sequence, r: int) -> list[LinForm] | None:
    """Linear forms l with q(l) = 0 for the binary operator q, when its roots are rational."""
    p = _dehomogenize(vec)
    ctx = p[0].ctx if p else QQ
    forms = []
    inf = r - (len(p) - 1)
    if inf:
        forms.append(LinForm([0, 1], ctx))
    if len(p) == 2:
        forms.append(LinForm([ctx.one, -p[0] / p[1]], ctx))
    elif len(p) == 3:
        c0, c1, c2 = p
        disc = c1 * c1 - 4 * c0 * c2
        root = _rational_sqrt(disc)
        if root is None:
            return None
        for s in (root, -root) if root else (root,):
            forms.append(LinForm([ctx.one, (-c1 + s) / (2 * c2)], ctx))
    elif len(p) > 3:
        return None
    return forms


def _rational_sqrt(x: Scalar) -> Scalar | None:
    from math import isqrt

    if not x.is_rational():
        return None
    q = x.to_fraction()
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Scalar.rational(q.__class__(a, b), x.ctx)
    return None


def _fit(f: Poly, terms: Sequence[Poly]) -> list | None:
    mons = monomials(f.nvars, f.degree)
    M = linalg.transpose([t.to_vector(mons) for t in terms])
    return linalg.solve(M, f.to_vector(mons))


def _lift(form: LinForm, n: int, Ainv) -> LinForm:
    padded = list(form.coeffs) + [form.ctx.zero] * (n - form.nvars)
    return LinForm(padded, form.ctx).transform(Ainv)


def _classify_binary(h: Poly) -> tuple[int, Tag, dict]:
    d = h.degree
    bwr = catalecticant(h, d // 2).rank()
    if bwr == 2:
        K = annihilator_vectors(h, 2)
        pattern = generic_pattern(K, 2)
        witness: dict = {"pattern": pattern}
        if pattern == (1, 1):
            q = squarefree_member(K, 2)
            witness["operator"] = Poly.from_vector(q, 2, 2, h.ctx)
            forms = _point_forms(q, 2)
            if forms:
                coef = _fit(h, [power_of_linform(l, d) for l in forms])
                if coef is not None:
                    witness["forms"] = forms
                    witness["weights"] = coef
            return 2, Tag.SUM2, witness
        q = K[0]
        witness["operator"] = Poly.from_vector(q, 2, 2, h.ctx)
        l1 = _point_forms(q, 2)[0]
        base = power_of_linform(l1, d - 1)
        coef = _fit(h, [base * Poly.variable(0, 2, h.ctx), base * Poly.variable(1, 2, h.ctx)])
        witness["forms"] = [l1, LinForm(coef, h.ctx)]
        return 2, Tag.TANGENT, witness
    if bwr == 3:
        K = annihilator_vectors(h, 3)
        pattern = generic_pattern(K, 3)
        tag = {(1, 1, 1): Tag.SUM3, (2, 1): Tag.SUM1_TANGENT, (3,): Tag.BWR3_LOCAL}[pattern]
        return 3, tag, {"pattern": pattern}
    return bwr, Tag.UNKNOWN, {}


def _moment(t: int, n: int) -> LinForm:
    return LinForm([t**i for i in range(n)], QQ)


def _ideal_hilbert(gens: Sequence[Poly], p: int) -> int:
    """dim (T / (gens))_p for homogeneous generators of one degree."""
    n = gens[0].nvars
    basis = linalg.IncrementalBasis()
    for g in gens:
        for m in monomials(n, p - g.degree):
            basis.add(dict((g * Poly.monomial(m, 1, g.ctx)).terms))
    return len(monomials(n, p)) - len(basis)


def _scheme_pattern(h: Poly) -> tuple[int, ...] | None:
    """Multiplicity pattern of a length-3 scheme apolar to a ternary form, if one exists.

    The quadrics annihilating h cut out such a scheme exactly when the ideal
    they generate has Hilbert function 3 in degrees 3 and 4 (Gotzmann
    persistence). The lengths at the support points are the multiplicities of
    the eigenvalues of multiplication by L / L0 on the degree-one part of the
    apolar algebra of a cubic derivative of h.
    """
    d = h.degree
    ctx = h.ctx
    ann2 = [Poly.from_vector(v, 3, 2, ctx) for v in annihilator_vectors(h, 2)]
    if len(ann2) != 3:
        return None
    if _ideal_hilbert(ann2, 3) != 3 or _ideal_hilbert(ann2, 4) != 3:
        return None
    cubic = None
    for t in range(7):
        delta = power_of_linform(_moment(t, 3).embed(ctx), d - 3)
        c = apply_operator(delta, h)
        if c and catalecticant(c, 1).rank() == 3:
            cubic = c
            break
    if cubic is None:
        return None
    xs = [Poly.variable(i, 3, ctx) for i in range(3)]

    def hessian(L: LinForm) -> list[list[Scalar]]:
        lp = L.embed(ctx).to_poly()
        return [
            [apply_operator(lp * xs[i] * xs[j], cubic).coefficient((0, 0, 0)) for j in range(3)]
            for i in range(3)
        ]

    H0inv = None
    for t in range(7):
        try:
            H0inv = linalg.inverse(hessian(_moment(t, 3)))
            break
        except ArithmeticError:
            continue
    if H0inv is None:
        return None
    best = None
    for t in range(7):
        M = linalg.matmul(H0inv, hessian(_moment(t, 3)))
        pattern = tuple(sorted(_multiplicities(_charpoly3(M)), reverse=True))
        if best is None or len(pattern) > len(best):
            best = pattern
    return best


def _charpoly3(M) -> tuple:
    tr = M[0][0] + M[1][1] + M[2][2]
    minors = (
        M[0][0] * M[1][1] - M[0][1] * M[1][0]
        + M[0][0] * M[2][2] - M[0][2] * M[2][0]
        + M[1][1] * M[2][2] - M[1][2] * M[2][1]
    )
    det = (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )
    one = tr - tr + 1
    return upoly.trim([-det, minors, -tr, one])


_PATTERN_TAGS = {(1, 1, 1): Tag.SUM3, (2, 1): Tag.SUM1_TANGENT, (3,): Tag.BWR3_LOCAL}


def classify_small_border(f: Poly) -> RankCertificate:
    """Border rank and normal form of f when its border rank is at most three."""
    if not f:
        raise ZeroInput("classification of the zero polynomial")
    n, d = f.nvars, f.degree
    m, A = essential_vars(f)
    if m <= 1:
        if m == 0:
            return RankCertificate("classification", 1, Tag.POWER, {"forms": [LinForm.unit(0, n, f.ctx)]})
        h = substitute_linear(f, A).restrict(1)
        Ainv = linalg.inverse(A)
        form = _lift(LinForm([1], f.ctx), n, Ainv)
        return RankCertificate(
            "classification", 1, Tag.POWER, {"forms": [form], "weights": [h.coefficient((d,))]}
        )
    Ainv = linalg.inverse(A)
    h = substitute_linear(f, A).restrict(m)
    if d == 2:
        tag = {2: Tag.SUM2, 3: Tag.SUM3}.get(m, Tag.UNKNOWN)
        return RankCertificate("classification", m, tag, {})
    if m == 2:
        value, tag, witness = _classify_binary(h)
        if "forms" in witness:
            witness["forms"] = [_lift(l, n, Ainv) for l in witness["forms"]]
        if tag is Tag.UNKNOWN:
            return RankCertificate("exact_binary_border", value, tag, witness)
        return RankCertificate("classification", value, tag, witness)
    lower = catalecticant_lower_bound(f)
    if m == 3 and lower == 3:
        pattern = _scheme_pattern(h)
        if pattern in _PATTERN_TAGS:
            return RankCertificate("classification", 3, _PATTERN_TAGS[pattern], {"pattern": pattern})
    return RankCertificate("lower_bound_catalecticant", lower, Tag.UNKNOWN, {})


# ---------------------------------------------------------------------------
# normal forms

_MIN_DEGREE = {
    Tag.POWER: 1,
    Tag.SUM2: 2,
    Tag.TANGENT: 2,
    Tag.SUM3: 2,
    Tag.SUM1_TANGENT: 3,
    Tag.BWR3_LOCAL: 3,
}


def _independent_forms(rng: random.Random, n: int, k: int) -> list[LinForm]:
    while True:
        forms = [LinForm([rng.randint(-3, 3) for _ in range(n)], QQ) for _ in range(k)]
        rows = [list(f.coeffs) for f in forms]
        if linalg.rank(rows) == k:
            return forms


def normal_form_sample(tag, d: int, seed: int = 0) -> Poly:
    """A deterministic pseudo-random member of the normal-form family ``tag``."""
    try:
        tag = Tag(str(tag).upper())
    except ValueError:
        raise InvalidFamily(f"unknown family {tag!r}") from None
    if tag is Tag.UNKNOWN:
        raise InvalidFamily("UNKNOWN is not a family")
    if d < _MIN_DEGREE[tag]:
        raise InvalidFamily(f"{tag} needs degree at least {_MIN_DEGREE[tag]}")
    rng = random.Random(f"{tag}-{d}-{seed}")
    if tag is Tag.POWER:
        (l1,) = _independent_forms(rng, 2, 1)
        return l1**d
    if tag is Tag.SUM2:
        l1, l2 = _independent_forms(rng, 2, 2)
        return l1**d + l2**d
    if tag is Tag.TANGENT:
        l1, l2 = _independent_forms(rng, 2, 2)
        return (l1 ** (d - 1)) * l2.to_poly()
    l1, l2, l3 = _independent_forms(rng, 3, 3)
    if tag is Tag.SUM3:
        return l1**d + l2**d + l3**d
    if tag is Tag.SUM1_TANGENT:
        return l1**d + (l2 ** (d - 1)) * l3.to_poly()
    return (l1 ** (d - 1)) * l2.to_poly() + (l1 ** (d - 2)) * (l3**2)
