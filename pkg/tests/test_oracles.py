import random

import pytest

from deborder.border import limit_of_decomposition
from deborder.errors import InvalidFamily, ZeroInput
from deborder.fixtures import fd_poly, random_border, random_directions, random_poly, tangent_poly
from deborder.oracles import (
    Tag,
    binary_exact_ranks,
    catalecticant_lower_bound,
    classify_small_border,
    normal_form_sample,
)
from deborder.polynomials import LinForm, Poly, essential_vars
from deborder.synthesis import deborder

x, y = LinForm([1, 0]), LinForm([0, 1])

sympy = pytest.importorskip("sympy")


def test_lower_bound_examples():
    assert catalecticant_lower_bound(fd_poly(5)) == 6
    assert catalecticant_lower_bound(x**6) == 1
    assert catalecticant_lower_bound(tangent_poly(6)) == 2
    with pytest.raises(ZeroInput):
        catalecticant_lower_bound(Poly.zero(2, 3))


@pytest.mark.parametrize("d", range(2, 9))
def test_binary_rank_examples(d):
    assert binary_exact_ranks(tangent_poly(d)) == (d, 2)
    assert binary_exact_ranks(x**d + y**d) == (2, 2)
    assert binary_exact_ranks((x + y) ** d) == (1, 1)


def _brute_binary_rank(f: Poly) -> int:
    """Waring rank via sympy: smallest r with a square-free kernel element of Cat_r (Sylvester)."""
    d = f.degree
    coeff = [f.coefficient((d - i, i)).to_fraction() for i in range(d + 1)]
    # apolar coefficients a_i = coeff_i / C(d, i)
    a = [sympy.Rational(c.numerator, c.denominator) / sympy.binomial(d, i) for i, c in enumerate(coeff)]
    t = sympy.Symbol("t")
    for r in range(1, d + 2):
        if r > d:
            return d + 1
        H = sympy.Matrix(d - r + 1, r + 1, lambda i, j: a[i + j])
        ker = H.nullspace()
        if not ker:
            continue
        # a generic member of the kernel: try small integer combinations
        combos = [[1] + [0] * (len(ker) - 1)]
        rng = random.Random(0)
        combos += [[rng.randint(-5, 5) for _ in ker] for _ in range(12)]
        for c in combos:
            v = sum((ci * k for ci, k in zip(c, ker)), sympy.zeros(r + 1, 1))
            if not any(v):
                continue
            p = sympy.Poly(sum(v[j] * t**j for j in range(r + 1)), t)
            if p.degree() < r - 1:
                continue
            if sympy.degree(sympy.gcd(p, p.diff(t)), t) == 0:
                return r
    return d + 1


@pytest.mark.parametrize("seed", range(25))
def test_binary_ranks_against_sympy(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 6)
    k = rng.randint(1, 3)
    forms = random_directions(rng, 2, k)
    f = forms[0] ** d
    for l in forms[1:]:
        f = f + (l**d).scale(rng.choice([1, -1, 2]))
    if rng.random() < 0.5:
        f = f + random_poly(rng, 2, d, density=0.3)
    if not f:
        return
    wr, bwr = binary_exact_ranks(f)
    assert bwr <= wr
    assert wr == _brute_binary_rank(f)


@pytest.mark.parametrize("d", range(3, 8))
def test_tangent_classification(d):
    cert = classify_small_border(tangent_poly(d))
    assert cert.tag == Tag.TANGENT and cert.value == 2
    l1, l2 = cert.witness["forms"]
    assert (l1 ** (d - 1)) * l2.to_poly() == tangent_poly(d)
    assert l1.is_proportional(x)


def test_three_powers_is_rank_three():
    d = 5
    cert = classify_small_border(x**d + y**d + (x + y) ** d)
    assert cert.value == 3
    assert cert.tag == Tag.SUM3


def test_sum_of_two_powers_witness():
    d = 5
    f = x**d + ((x + y) ** d).scale(2)
    cert = classify_small_border(f)
    assert cert.tag == Tag.SUM2
    total = Poly.zero(2, d)
    for w, l in zip(cert.witness["weights"], cert.witness["forms"]):
        total = total + (l**d).scale(w)
    assert total == f


def test_quaternary_cubic_unknown():
    f = random_poly(random.Random(3), 4, 3, density=1.0)
    cert = classify_small_border(f)
    assert cert.tag == Tag.UNKNOWN
    assert cert.value >= 4


@pytest.mark.parametrize("tag", [t for t in Tag if t is not Tag.UNKNOWN])
@pytest.mark.parametrize("d", range(3, 9))
def test_classification_round_trip(tag, d):
    for seed in range(4):
        f = normal_form_sample(tag, d, seed)
        assert classify_small_border(f).tag == tag


def test_normal_form_examples():
    f = normal_form_sample(Tag.SUM2, 4, 0)
    assert essential_vars(f)[0] == 2
    g = normal_form_sample(Tag.BWR3_LOCAL, 4, 1)
    assert g.nvars == 3 and g.degree == 4
    assert normal_form_sample("TANGENT", 5, 2) == normal_form_sample(Tag.TANGENT, 5, 2)
    with pytest.raises(InvalidFamily):
        normal_form_sample(Tag.BWR3_LOCAL, 2, 0)
    with pytest.raises(InvalidFamily):
        normal_form_sample("NOPE", 4, 0)


@pytest.mark.parametrize("d", [4, 5, 6])
def test_excluded_quadric_case_has_large_rank(d):
    # l1^(d-2) (a l1^2 + l2 l3) with independent l2, l3
    l1, l2, l3 = (LinForm.unit(i, 3) for i in range(3))
    f = (l1 ** (d - 2)) * ((l1**2).scale(3) + l2.to_poly() * l3.to_poly())
    assert catalecticant_lower_bound(f) >= 4


@pytest.mark.parametrize("seed", range(15))
def test_binary_border_consistency(seed):
    rng = random.Random(seed)
    sizes = [rng.randint(1, 2) for _ in range(rng.randint(1, 2))]
    r = sum(sizes)
    d = max(r - 1, 2) + rng.randint(0, 2)
    B = random_border(rng, 2, d, sizes)
    f = limit_of_decomposition(B)
    wr, bwr = binary_exact_ranks(f)
    W = deborder(B)
    assert bwr <= r
    assert len(W) >= wr
    assert catalecticant_lower_bound(f) <= len(W)
