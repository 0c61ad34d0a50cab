import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deborder import linalg
from deborder.errors import ArityMismatch, OrderOutOfRange, ZeroInput
from deborder.fixtures import fd_poly, random_directions, random_poly
from deborder.polynomials import (
    LinForm,
    Poly,
    apply_operator,
    catalecticant,
    essential_vars,
    exact_kernel,
    exact_rank,
    monomials,
    partial_derivative,
    power_of_linform,
    substitute_linear,
)
from deborder.scalars import QQ, make_context

from strategies import linforms, polys

sympy = pytest.importorskip("sympy")

x, y = LinForm([1, 0]), LinForm([0, 1])
X, Y = x.to_poly(), y.to_poly()


def to_sympy(f: Poly):
    syms = sympy.symbols(f"x1:{f.nvars + 1}")
    out = sympy.Integer(0)
    for exps, c in f.terms.items():
        q = c.to_fraction()
        term = sympy.Rational(q.numerator, q.denominator)
        for s, e in zip(syms, exps):
            term *= s**e
        out += term
    return sympy.expand(out), syms


def test_arith_examples():
    assert (X**2) + (-(X**2)) == 0
    assert (X + Y) * (X - Y) == X**2 - Y**2
    assert (X * Y).scale(3) == Poly.monomial((1, 1), 3)


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        X + LinForm([1, 0, 0]).to_poly()


def test_power_examples():
    assert (x + y) ** 2 == X**2 + (X * Y).scale(2) + Y**2
    assert x**7 == Poly.monomial((7, 0))
    assert (x + y) ** 3 == X**3 + (X**2 * Y).scale(3) + (X * Y**2).scale(3) + Y**3


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(linforms(n), st.integers(0, 6))))
def test_power_matches_sympy(args):
    form, d = args
    expected, syms = to_sympy(form.to_poly())
    got, _ = to_sympy(power_of_linform(form, d))
    assert sympy.expand(expected**d - got) == 0


def test_derivative_examples():
    d = 6
    f = Poly.monomial((d - 1, 1))
    assert partial_derivative(f, 0) == Poly.monomial((d - 2, 1), d - 1)
    assert partial_derivative(f, 1) == Poly.monomial((d - 1, 0))
    c = Poly.constant(5, 2)
    assert partial_derivative(c, 0).is_zero()


@given(polys(min_d=1))
def test_euler_identity(f):
    n = f.nvars
    total = Poly.zero(n, f.degree)
    for i in range(n):
        total = total + Poly.variable(i, n) * partial_derivative(f, i)
    assert total == f.scale(f.degree)


@given(polys())
def test_derivative_matches_sympy(f):
    expr, syms = to_sympy(f)
    for i in range(f.nvars):
        got, _ = to_sympy(partial_derivative(f, i))
        assert sympy.expand(sympy.diff(expr, syms[i]) - got) == 0


def test_substitution_examples():
    f = Poly.monomial((2,))
    # x -> u + v
    assert substitute_linear(f, [[1], [1]]) == (x + y) ** 2
    g = random_poly(random.Random(1), 3, 4)
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert substitute_linear(g, I) == g
    assert substitute_linear(X * Y, [[0, 1], [1, 0]]) == X * Y
    with pytest.raises(ArityMismatch):
        substitute_linear(g, [[1, 0], [0, 1]])


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(linforms(n), st.integers(1, 4), st.randoms())))
def test_substitution_transforms_forms(args):
    form, d, r = args
    n = form.nvars
    A = [[r.randint(-2, 2) for _ in range(n)] for _ in range(r.randint(1, 3))]
    assert substitute_linear(form**d, A) == form.transform(A) ** d


def test_catalecticant_examples():
    d = 5
    assert catalecticant(Poly.monomial((d - 1, 1)), 1).rank() == 2
    for e in range(d + 1):
        assert catalecticant(Poly.monomial((d, 0)), e).rank() == 1
    assert catalecticant(fd_poly(5), 2).rank() == 6
    with pytest.raises(OrderOutOfRange):
        catalecticant(X, 2)


def test_catalecticant_entries_are_contractions(rng):
    f = random_poly(rng, 3, 4)
    cat = catalecticant(f, 2)
    for r, alpha in enumerate(cat.rows):
        image = apply_operator(Poly.monomial(alpha), f)
        assert [image.coefficient(m) for m in cat.cols] == cat.entries[r]


def test_rank_and_kernel_examples():
    I = [[QQ(int(i == j)) for j in range(3)] for i in range(3)]
    assert exact_rank(I) == 3
    Z = [[QQ.zero] * 3 for _ in range(2)]
    assert exact_rank(Z) == 0
    assert len(exact_kernel(Z)) == 3
    K = make_context(4)
    i = K.zeta
    assert exact_rank([[K.one, i], [i, K(-1)]]) == 1


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_sympy(rows):
    M = [[QQ(v) for v in row] for row in rows]
    assert exact_rank(M) == sympy.Matrix(rows).rank()
    for v in exact_kernel(M):
        assert all(x == 0 for x in linalg.matvec(M, v))
    assert len(exact_kernel(M)) == 4 - exact_rank(M)


@pytest.mark.parametrize("d", [3, 5])
def test_essential_variable_examples(d):
    m, _ = essential_vars((x + y) ** d)
    assert m == 1
    m, _ = essential_vars(fd_poly(d))
    assert m == 5
    m, _ = essential_vars(X**2 + X * Y)
    assert m == 2
    with pytest.raises(ZeroInput):
        essential_vars(Poly.zero(2, 3))


@pytest.mark.parametrize("seed", range(25))
def test_essential_variables_of_power_sums(seed):
    rnd = random.Random(seed)
    n, r, d = rnd.randint(1, 4), rnd.randint(1, 3), rnd.randint(2, 5)
    forms = random_directions(rnd, n, r if n > 1 else 1)
    f = forms[0] ** d
    for l in forms[1:]:
        f = f + l**d
    if not f:
        return
    m, A = essential_vars(f)
    assert m <= min(n, len(forms))
    g = substitute_linear(f, A)
    assert all(not any(e[m:]) for e in g.terms)
    assert linalg.rank(A) == n


@given(polys(max_n=3, max_d=4), st.integers(0, 10**6))
def test_invertible_substitution_preserves_catalecticant_ranks(f, seed):
    rnd = random.Random(seed)
    n = f.nvars
    while True:
        A = [[rnd.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if sympy.Matrix(A).det() != 0:
            break
    g = substitute_linear(f, A)
    for e in range(f.degree + 1):
        assert catalecticant(f, e).rank() == catalecticant(g, e).rank()


@given(polys(max_n=3, max_d=6, min_d=1))
def test_catalecticant_symmetry(f):
    d = f.degree
    for e in range(d + 1):
        assert catalecticant(f, e).rank() == catalecticant(f, d - e).rank()


def test_printing_is_graded_lex():
    f = Poly(2, 2, {(0, 2): 1, (2, 0): 3, (1, 1): -1})
    assert str(f) == "3*x1^2-x1*x2+x2^2"
    assert [e for e, _ in f.sorted_terms()] == monomials(2, 2)
