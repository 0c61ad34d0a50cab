"""End-to-end acceptance criteria. Each test prints one PASS/FAIL line."""

import contextlib
import math
import random
import time

import pytest

from deborder import textio
from deborder.apolarity import gad_size, hilbert_function
from deborder.border import group_local_classes, limit_of_decomposition
from deborder.cli import main
from deborder.errors import DegreeTooLow
from deborder.fixtures import three_tangents, wild_cubic, fd_poly, random_border, random_directions, random_poly, tangent_poly
from deborder.gad import extract_gad, jordan_independence_dim, verify_gad
from deborder.oracles import Tag, binary_exact_ranks, catalecticant_lower_bound, classify_small_border, normal_form_sample
from deborder.polynomials import LinForm, Poly, num_monomials
from deborder.synthesis import central_binomial, deborder, monomial_two_form


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        status, note = "FAIL", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if elapsed >= limit:
                note = f" (time limit {limit}s exceeded)"
                raise AssertionError(f"criterion {number} took {elapsed:.2f}s, limit {limit}s")
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n{status} criterion {number:>2}: {title} [{elapsed:.2f}s]{note}")

    return run


def _cli(capsys, *argv, stdin=None):
    import io
    import sys

    old = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        code = main(list(argv))
    finally:
        sys.stdin = old
    out, err = capsys.readouterr()
    return code, out, err


def test_tangent_family(criterion, capsys):
    with criterion(1, "tangent-line family x^(d-1) y has d summands, ranks (d, 2)", 10):
        for d in range(3, 11):
            start = time.perf_counter()
            code, border, _ = _cli(capsys, "fixtures", "intro-tangent", "--d", str(d))
            assert code == 0
            code, out, _ = _cli(capsys, "deborder", stdin=border)
            assert code == 0
            W = textio.parse_waring(out)
            assert W.verify(tangent_poly(d).embed(W.ctx))
            assert len(W) == d
            assert binary_exact_ranks(tangent_poly(d)) == (d, 2)
            assert time.perf_counter() - start < 1


def test_three_tangents(criterion):
    x0, x1 = LinForm.unit(0, 5), LinForm.unit(1, 5)
    expected_bases = {x0.normalized(), x1.normalized(), (x0 + x1).normalized()}
    with criterion(2, "three tangent pairs: classes, GAD, lower bound 6, size bounds", 20):
        for d in range(5, 9):
            start = time.perf_counter()
            B = three_tangents(d)
            f = fd_poly(d)
            classes = group_local_classes(B)
            assert len(classes) == 3
            assert all(c.size == 2 and c.q == 0 for c in classes)
            assert {c.base for c in classes} == expected_bases
            G = extract_gad(B)
            assert G.polynomial() == f and verify_gad(G, f)
            assert catalecticant_lower_bound(f) == 6
            W = deborder(B)
            assert W.verify(f)
            assert len(W) <= 3 * d and len(W) <= 4**6 * d
            assert time.perf_counter() - start < 5


def test_wild_cubic(criterion, capsys):
    with criterion(3, "wild cubic: DegreeTooLow, fallback <= 35 summands, lower bound >= 4", 5):
        B = wild_cubic()
        f = fd_poly(3)
        assert limit_of_decomposition(B) == f
        with pytest.raises(DegreeTooLow):
            extract_gad(B)
        code, border, _ = _cli(capsys, "fixtures", "eq2-wild")
        code, _, err = _cli(capsys, "gad", stdin=border)
        assert code == 3 and "DegreeTooLow" in err
        code, out, _ = _cli(capsys, "deborder", stdin=border)
        assert code == 0
        W = textio.parse_waring(out)
        assert W.verify(f.embed(W.ctx))
        assert len(W) <= 35
        assert catalecticant_lower_bound(f) >= 4


def test_monomial_identity(criterion):
    with criterion(4, "monomial identity y1^a y2^b with a+1 summands", 2):
        for a in range(1, 9):
            for b in range(1, a + 1):
                W = monomial_two_form(a, b)
                assert W.expand() == Poly.monomial((a, b), 1, W.ctx)
                assert len(W) == a + 1
                # the first summand is (y1 + y2)^(a+b) weighted by the inverse constant
                w0, l0 = W.summands[0]
                assert l0 == LinForm([1, 1], W.ctx)
                assert w0 * ((a + 1) * math.comb(a + b, a)) == 1


def _independence_instance(rng, drop):
    while True:
        n = rng.randint(1, 3)
        m = 1 if n == 1 else rng.randint(1, 3)
        rs = [rng.randint(1, 3) for _ in range(m)]
        d = sum(rs) - (2 if drop else 1)
        if d >= max(rs) - 1 and d >= 0:
            return n, rs, d, random_directions(rng, n, m)


def test_power_multiple_sums(criterion):
    with criterion(5, "sums of power-multiple spaces are direct at d = sum r - 1, drop at sum r - 2", 30):
        rng = random.Random(5)
        for _ in range(200):
            n, rs, d, forms = _independence_instance(rng, drop=False)
            expected = sum(num_monomials(n, r - 1) for r in rs)
            assert jordan_independence_dim(list(zip(forms, rs)), d) == expected
        drops = 0
        for _ in range(50):
            n, rs, d, forms = _independence_instance(rng, drop=True)
            expected = sum(num_monomials(n, r - 1) for r in rs)
            got = jordan_independence_dim(list(zip(forms, rs)), d)
            assert got <= expected
            drops += got < expected
        assert drops >= 1


def test_hilbert_symmetry(criterion):
    with criterion(6, "Hilbert function symmetry on 100 random forms", 10):
        rng = random.Random(6)
        for _ in range(100):
            f = random_poly(rng, rng.randint(1, 3), rng.randint(0, 6))
            h = hilbert_function(f)
            assert all(h[p] == h[f.degree - p] for p in range(f.degree + 1))


def test_superadditivity(criterion):
    with criterion(7, "central binomial superadditivity for r <= 12", 1):
        for r in range(2, 13):
            for p in range(1, r):
                assert central_binomial(r) >= central_binomial(p) + central_binomial(r - p)


def _partition(rng, r):
    sizes = []
    while r:
        k = rng.randint(1, r)
        sizes.append(k)
        r -= k
    return sizes


def test_binary_differential(criterion):
    with criterion(8, "100 random binary borders: exact, wr <= size <= 4^r d, bwr <= r", 60):
        rng = random.Random(8)
        for _ in range(100):
            r = rng.randint(1, 4)
            d = rng.randint(max(r - 1, 1), 6)
            B = random_border(rng, 2, d, _partition(rng, r))
            f = limit_of_decomposition(B)
            W = deborder(B)
            assert W.verify(f.embed(W.ctx))
            wr, bwr = binary_exact_ranks(f)
            assert wr <= len(W) <= 4**r * d
            assert bwr <= r


def test_classification_round_trip(criterion):
    binary = {Tag.POWER, Tag.SUM2, Tag.TANGENT}
    with criterion(9, "normal-form round trip: no UNKNOWN for binary tags, never a wrong tag", 30):
        for tag in Tag:
            if tag is Tag.UNKNOWN:
                continue
            for d in range(3, 9):
                for seed in range(10):
                    got = classify_small_border(normal_form_sample(tag, d, seed)).tag
                    if tag in binary:
                        assert got == tag
                    else:
                        assert got in (tag, Tag.UNKNOWN)


def test_gad_size(criterion):
    with criterion(10, "GAD size of the three-tangent family <= 6 at d = 11, 13", 10):
        for d in (11, 13):
            assert gad_size(extract_gad(three_tangents(d))) <= 6
