import random
from fractions import Fraction

import pytest

from deborder.border import (
    BorderDecomposition,
    EpsLinForm,
    group_local_classes,
    limit_of_decomposition,
    projective_limit,
    standardize_local,
    class_leading,
)
from deborder.errors import LimitDoesNotExist, NotLocal
from deborder.fixtures import (
    EPS,
    three_tangents,
    wild_cubic,
    fd_poly,
    tangent_border,
    random_border,
    random_local_family,
    tangent_poly,
)
from deborder.polynomials import LinForm, Poly
from deborder.scalars import QQ, EpsScalar

sympy = pytest.importorskip("sympy")


def _sym_eps(a: EpsScalar, e):
    num = sum((sympy.Rational(c.to_fraction().numerator, c.to_fraction().denominator) * e**k for k, c in enumerate(a.num)), sympy.Integer(0))
    den = sum((sympy.Rational(c.to_fraction().numerator, c.to_fraction().denominator) * e**k for k, c in enumerate(a.den)), sympy.Integer(0))
    return num / den


def sympy_limit(B: BorderDecomposition):
    """Independent limit: build the rational function in sympy and let it take the limit."""
    e = sympy.Symbol("e")
    xs = sympy.symbols(f"x1:{B.nvars + 1}")
    total = sympy.Integer(0)
    for w, f in B.summands:
        form = sum((_sym_eps(c, e) * x for c, x in zip(f.coeffs, xs)), sympy.Integer(0))
        total += _sym_eps(w, e) * form**B.degree
    total = sympy.together(sympy.expand(total))
    num, den = sympy.fraction(total)
    num = sympy.Poly(sympy.expand(num), e, *xs)
    den = sympy.Poly(sympy.expand(den), e)
    # lowest order in e of the numerator vs the denominator
    qd = min(m[0] for m in den.monoms())
    dconst = den.coeff_monomial(e**qd)
    low = {}
    for m, c in num.terms():
        low.setdefault(m[0], sympy.Integer(0))
        low[m[0]] += c * sympy.prod([x**k for x, k in zip(xs, m[1:])])
    low = {k: v for k, v in low.items() if sympy.expand(v) != 0}
    if not low:
        return sympy.Integer(0), xs
    qn = min(low)
    if qn < qd:
        return None, xs
    if qn > qd:
        return sympy.Integer(0), xs
    return sympy.expand(low[qn] / dconst), xs


def to_sympy(f: Poly, xs):
    out = sympy.Integer(0)
    for exps, c in f.terms.items():
        q = c.to_fraction()
        out += sympy.Rational(q.numerator, q.denominator) * sympy.prod([x**k for x, k in zip(xs, exps)])
    return sympy.expand(out)


@pytest.mark.parametrize("d", range(2, 8))
def test_tangent_limit(d):
    assert limit_of_decomposition(tangent_border(d)) == tangent_poly(d)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_three_tangent_limit(d):
    assert limit_of_decomposition(three_tangents(d)) == fd_poly(d)


def test_wild_cubic_limit():
    assert limit_of_decomposition(wild_cubic()) == fd_poly(3)


def test_pole_raises():
    B = BorderDecomposition(1, 2, [(EPS.inverse(), EpsLinForm([1], QQ))], QQ)
    with pytest.raises(LimitDoesNotExist):
        limit_of_decomposition(B)


def test_vanishing_limit_is_zero():
    B = BorderDecomposition(2, 3, [(EPS, EpsLinForm([1, 1], QQ))], QQ)
    assert limit_of_decomposition(B).is_zero()


@pytest.mark.parametrize("seed", range(12))
def test_limit_matches_sympy(seed):
    rng = random.Random(seed)
    n, d = rng.randint(1, 3), rng.randint(2, 4)
    sizes = [rng.randint(1, 3) for _ in range(rng.randint(1, 2 if n > 1 else 1))]
    B = random_border(rng, n, d, sizes)
    expected, xs = sympy_limit(B)
    assert expected is not None
    assert sympy.expand(to_sympy(limit_of_decomposition(B), xs) - expected) == 0


@pytest.mark.parametrize("seed", range(10))
def test_limit_invariant_under_permutation_and_rescaling(seed):
    rng = random.Random(seed)
    B = random_border(rng, 2, 4, [2, 1, 2])
    f = limit_of_decomposition(B)
    perm = list(range(B.r))
    rng.shuffle(perm)
    assert limit_of_decomposition(B.subset(perm)) == f
    assert limit_of_decomposition(B.rescale_eps(rng.choice([2, 3, -1, 5]))) == f


def test_projective_limit_normalizes():
    f = EpsLinForm([2 * EPS + 4, 6, 6 * EPS], QQ)
    assert projective_limit(f) == LinForm([1, Fraction(3, 2), 0])


def test_local_classes_of_three_tangents():
    classes = group_local_classes(three_tangents(5))
    assert sorted(c.size for c in classes) == [2, 2, 2]
    bases = {c.base for c in classes}
    assert bases == {LinForm([1, 0, 0, 0, 0]), LinForm([0, 1, 0, 0, 0]), LinForm([1, 1, 0, 0, 0])}
    assert all(c.q == 0 for c in classes)


def test_wild_classes_diverge():
    classes = group_local_classes(wild_cubic())
    assert len(classes) == 5
    assert any(c.q < 0 for c in classes)


@pytest.mark.parametrize("seed", range(8))
def test_standardization_keeps_class_limit(seed):
    rng = random.Random(seed)
    base = LinForm([rng.randint(1, 3), rng.randint(-2, 2), rng.randint(-2, 2)])
    r, d = rng.randint(1, 3), 4
    members = random_local_family(rng, base, r, d)
    before = class_leading(members, 3, d, QQ)
    std = standardize_local(members, base)
    assert class_leading(std, 3, d, QQ) == before
    q, lead = std[0][1].leading()
    # first form is exactly a multiple of eps^q * base
    assert lead.is_proportional(base)
    assert all(c.is_zero() or c.valuation()[0] == q for c in std[0][1].coeffs)
    assert all(projective_limit(f) == base.normalized() for _, f in std)


def test_standardize_rejects_foreign_member():
    members = [(EpsScalar.const(1), EpsLinForm([1, 0], QQ)), (EpsScalar.const(1), EpsLinForm([0, 1], QQ))]
    with pytest.raises(NotLocal):
        standardize_local(members, LinForm([1, 0]))
