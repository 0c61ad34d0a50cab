import math
import random

import pytest

from deborder.border import BorderDecomposition, limit_of_decomposition
from deborder.errors import ConductorTooLarge
from deborder.fixtures import three_tangents, wild_cubic, fd_poly, tangent_border, random_border, random_poly, tangent_poly
from deborder.gad import GAD, GADPart, extract_gad
from deborder.oracles import binary_exact_ranks
from deborder.polynomials import LinForm, Poly, monomials, partial_derivative
from deborder.scalars import QQ
from deborder.synthesis import (
    WaringDecomposition,
    bounds,
    central_binomial,
    decompose_in_power_basis,
    deborder,
    field_for_root,
    monomial_two_form,
    partition_bound,
    power_basis,
    primitive_root,
    synthesize,
)

x, y = LinForm([1, 0]), LinForm([0, 1])


def test_difference_of_squares():
    W = monomial_two_form(1, 1)
    assert len(W) == 2
    assert W.expand() == Poly.monomial((1, 1))


def test_cubic_monomial_uses_cube_roots():
    W = monomial_two_form(2, 1)
    assert len(W) == 3
    assert W.ctx.N == 3
    assert W.summands[0][0] == QQ(1) / 9
    assert W.expand() == Poly.monomial((2, 1), 1, W.ctx)


@pytest.mark.parametrize("a", range(0, 9))
@pytest.mark.parametrize("b", range(0, 5))
def test_monomial_identity(a, b):
    W = monomial_two_form(a, b)
    assert len(W) == max(a, b) + 1
    assert W.expand() == Poly.monomial((a, b), 1, W.ctx)


@pytest.mark.parametrize("m", range(1, 40))
def test_primitive_roots(m):
    z = primitive_root(m)
    assert z.ctx.N == field_for_root(m)
    assert z**m == 1
    assert all(z**k != 1 for k in range(1, m))


def test_power_basis_examples():
    assert power_basis(2, 2) == [x, y, x + y]
    assert power_basis(1, 5) == [LinForm([1])]
    assert power_basis(3, 1) == [LinForm.unit(i, 3) for i in range(3)]


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("e", range(0, 6))
def test_power_basis_is_a_basis(n, e):
    forms = power_basis(n, e)
    assert len(forms) == math.comb(n + e - 1, e)
    assert power_basis(n, e) == forms


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("e", range(0, 6))
def test_power_basis_decomposition_is_identity(n, e):
    rng = random.Random(n * 10 + e)
    for _ in range(3):
        g = random_poly(rng, n, e)
        W = decompose_in_power_basis(g)
        assert W.expand() == g
        assert len(W) <= math.comb(n + e - 1, e)
    for m in monomials(n, e):
        assert decompose_in_power_basis(Poly.monomial(m, 1)).expand() == Poly.monomial(m, 1)


def test_power_basis_decomposition_examples():
    assert len(decompose_in_power_basis(x**2)) == 1
    W = decompose_in_power_basis(Poly.monomial((1, 1)))
    assert len(W) <= 3 and W.expand() == Poly.monomial((1, 1))
    assert len(decompose_in_power_basis(Poly.zero(2, 3))) == 0


@pytest.mark.parametrize("d", range(2, 9))
def test_tangent_has_d_summands(d):
    W = deborder(tangent_border(d))
    assert len(W) == d
    assert W.verify(tangent_poly(d))


@pytest.mark.parametrize("d", [5, 6])
def test_three_tangents(d):
    W = deborder(three_tangents(d))
    assert len(W) <= 3 * d
    assert W.verify(fd_poly(d))


def test_wild_cubic_fallback():
    W = deborder(wild_cubic())
    assert len(W) <= 35
    assert W.verify(fd_poly(3))


def test_empty_and_pure_power():
    assert len(deborder(BorderDecomposition(2, 3, [], QQ))) == 0
    G = GAD(2, 4, [GADPart(x + y, 1, Poly.constant(3, 2))], QQ)
    W = synthesize(G)
    assert len(W) == 1 and W.verify(((x + y) ** 4).scale(3))


def test_conductor_limit():
    with pytest.raises(ConductorTooLarge):
        deborder(tangent_border(9), max_conductor=4)


@pytest.mark.parametrize("seed", range(15))
def test_random_borders_deborder_exactly(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 3)
    sizes = [rng.randint(1, 3) for _ in range(rng.randint(1, 2))]
    d = max(sum(sizes) - 1, 2) + rng.randint(0, 1)
    B = random_border(rng, n, d, sizes)
    f = limit_of_decomposition(B)
    W = deborder(B)
    assert W.verify(f)
    G = extract_gad(B)
    assert len(W) <= partition_bound(G) <= central_binomial(B.r) * d
    assert len(W) <= 4**B.r * d


def test_bounds_examples():
    assert bounds(2, 3, 2).binom_bound == 2
    assert bounds(6, 5, 5).fp_bound == 20480
    assert bounds(1, 3, 2).generic_rank == 2
    R = bounds(4, 3, 2)
    assert R.bt_bound == 2 * math.ceil(20 / 4)
    with pytest.raises(ValueError):
        bounds(0, 1, 1)


@pytest.mark.parametrize("r", range(2, 13))
def test_binomial_superadditivity(r):
    for p in range(1, r):
        assert central_binomial(r) >= central_binomial(p) + central_binomial(r - p)


@pytest.mark.parametrize("seed", range(15))
def test_rank_does_not_grow_under_differentiation(seed):
    rng = random.Random(seed)
    g = random_poly(rng, 2, rng.randint(2, 6))
    i = rng.randint(0, 1)
    dg = partial_derivative(g, i)
    if dg:
        assert binary_exact_ranks(dg)[0] <= binary_exact_ranks(g)[0]


def test_waring_drops_zero_weights():
    W = WaringDecomposition(2, 2, [(0, x), (1, y)], QQ)
    assert len(W) == 1
