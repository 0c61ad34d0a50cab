"""Homogeneous multivariate polynomials with exact coefficients.

A ``Poly`` is a sparse map from exponent tuples to nonzero ``Scalar``
coefficients, all of one total degree. Variables are positional and print as
``x1..xn``. The same class doubles as the ring of constant-coefficient
differential operators (the dual variables act by differentiation, see
``apply_operator``).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from . import linalg
from .errors import ArityMismatch, OrderOutOfRange, ZeroInput
from .scalars import QQ, FieldContext, Scalar, common_context, to_scalar

Monomial = tuple[int, ...]


def monomials(n: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree d in n variables, graded-lex order."""
    return list(_monomials(n, d))


@lru_cache(maxsize=None)
def _monomials(n: int, d: int) -> tuple[Monomial, ...]:
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out = []
    for k in range(d, -1, -1):
        for rest in _monomials(n - 1, d - k):
            out.append((k,) + rest)
    return tuple(out)


def num_monomials(n: int, d: int) -> int:
    return math.comb(n + d - 1, d) if n else int(d == 0)


def multinomial(exps: Sequence[int]) -> int:
    out = math.factorial(sum(exps))
    for e in exps:
        out //= math.factorial(e)
    return out


def _falling(b: int, a: int) -> int:
    """b! / (b - a)!"""
    out = 1
    for k in range(b - a + 1, b + 1):
        out *= k
    return out


class Poly:
    __slots__ = ("nvars", "degree", "ctx", "terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping | None = None, ctx: FieldContext | None = None):
        terms = dict(terms or {})
        if ctx is None:
            ctx = common_context(*(c.ctx for c in terms.values() if isinstance(c, Scalar)))
        clean = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ArityMismatch(f"monomial {exps} has {len(exps)} exponents, expected {nvars}")
            if sum(exps) != degree or min(exps, default=0) < 0:
                raise ValueError(f"monomial {exps} is not of degree {degree}")
            c = to_scalar(c, ctx)
            if c:
                clean[exps] = c
        self.nvars = nvars
        self.degree = degree
        self.ctx = ctx
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, degree, terms, ctx):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.degree = degree
        obj.ctx = ctx
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int, degree: int, ctx: FieldContext = QQ) -> "Poly":
        return cls._raw(nvars, degree, {}, ctx)

    @classmethod
    def constant(cls, value, nvars: int, ctx: FieldContext = QQ) -> "Poly":
        return cls(nvars, 0, {(0,) * nvars: value}, ctx)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1, ctx: FieldContext = QQ) -> "Poly":
        exps = tuple(exps)
        return cls(len(exps), sum(exps), {exps: coeff}, ctx)

    @classmethod
    def variable(cls, i: int, nvars: int, ctx: FieldContext = QQ) -> "Poly":
        return cls.monomial(tuple(int(j == i) for j in range(nvars)), 1, ctx)

    # -- basic protocol -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exps: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(exps), self.ctx.zero)

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def embed(self, ctx: FieldContext) -> "Poly":
        if ctx is self.ctx:
            return self
        return Poly._raw(self.nvars, self.degree, {m: ctx(c) for m, c in self.terms.items()}, ctx)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, int) and other == 0:
                return not self.terms
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def _check(self, other: "Poly", same_degree: bool = True):
        if self.nvars != other.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
        if same_degree and self.degree != other.degree and self.terms and other.terms:
            raise ArityMismatch(f"degree {self.degree} vs {other.degree}")
        return common_context(self.ctx, other.ctx)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        ctx = self._check(other)
        a, b = self.embed(ctx), other.embed(ctx)
        if not a.terms:
            return b
        out = dict(a.terms)
        for m, c in b.terms.items():
            s = out[m] + c if m in out else c
            if s:
                out[m] = s
            else:
                del out[m]
        return Poly._raw(self.nvars, a.degree, out, ctx)

    def __neg__(self):
        return Poly._raw(self.nvars, self.degree, {m: -c for m, c in self.terms.items()}, self.ctx)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Poly":
        if isinstance(c, Scalar):
            ctx = common_context(self.ctx, c.ctx)
        else:
            ctx = self.ctx
        c = to_scalar(c, ctx)
        if not c:
            return Poly.zero(self.nvars, self.degree, ctx)
        src = self.embed(ctx)
        return Poly._raw(self.nvars, self.degree, {m: v * c for m, v in src.terms.items()}, ctx)

    def __mul__(self, other):
        if isinstance(other, Poly):
            ctx = self._check(other, same_degree=False)
            a, b = self.embed(ctx), other.embed(ctx)
            out: dict = {}
            for m1, c1 in a.terms.items():
                for m2, c2 in b.terms.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    t = c1 * c2
                    out[m] = out[m] + t if m in out else t
            out = {m: c for m, c in out.items() if c}
            return Poly._raw(self.nvars, self.degree + other.degree, out, ctx)
        if isinstance(other, (int, Scalar)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Poly):
            return NotImplemented
        return self.__mul__(other)

    def __pow__(self, k: int) -> "Poly":
        result = Poly.constant(1, self.nvars, self.ctx)
        for _ in range(k):
            result = result * self
        return result

    # -- calculus and substitution -----------------------------------------

    def derivative(self, i: int) -> "Poly":
        return partial_derivative(self, i)

    def substitute(self, A: Sequence[Sequence]) -> "Poly":
        return substitute_linear(self, A)

    def restrict(self, m: int) -> "Poly":
        """Drop the trailing variables m+1..n, which must not occur."""
        out = {}
        for exps, c in self.terms.items():
            if any(exps[m:]):
                raise ValueError(f"variable x{m + 1 + next(i for i, e in enumerate(exps[m:]) if e)} occurs")
            out[exps[:m]] = c
        return Poly._raw(m, self.degree, out, self.ctx)

    def extend(self, n: int) -> "Poly":
        """View as a polynomial in n >= nvars variables."""
        pad = (0,) * (n - self.nvars)
        return Poly._raw(n, self.degree, {m + pad: c for m, c in self.terms.items()}, self.ctx)

    def to_vector(self, basis: Sequence[Monomial] | None = None) -> list[Scalar]:
        if basis is None:
            basis = monomials(self.nvars, self.degree)
        zero = self.ctx.zero
        return [self.terms.get(m, zero) for m in basis]

    @classmethod
    def from_vector(cls, vec: Sequence, nvars: int, degree: int, ctx: FieldContext | None = None) -> "Poly":
        basis = monomials(nvars, degree)
        return cls(nvars, degree, {m: c for m, c in zip(basis, vec) if c}, ctx)

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for exps, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            lit = c.to_literal()
            if sum(1 for a in c.nums if a) > 1:
                lit = f"({lit})"
            if not mono:
                term = lit
            elif lit == "1":
                term = mono
            elif lit == "-1":
                term = "-" + mono
            else:
                term = f"{lit}*{mono}"
            if out and not term.startswith("-"):
                out += "+"
            out += term
        return out

    def __repr__(self):
        return f"Poly(n={self.nvars}, d={self.degree}, {self})"


class LinForm:
    """A linear form sum(c_i * x_i)."""

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs: Iterable, ctx: FieldContext | None = None):
        coeffs = list(coeffs)
        if ctx is None:
            ctx = common_context(*(c.ctx for c in coeffs if isinstance(c, Scalar)))
        self.coeffs = tuple(to_scalar(c, ctx) for c in coeffs)
        self.ctx = ctx

    @classmethod
    def unit(cls, i: int, nvars: int, ctx: FieldContext = QQ) -> "LinForm":
        return cls([int(j == i) for j in range(nvars)], ctx)

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def embed(self, ctx: FieldContext) -> "LinForm":
        if ctx is self.ctx:
            return self
        return LinForm([ctx(c) for c in self.coeffs], ctx)

    def to_poly(self) -> Poly:
        return power_of_linform(self, 1)

    def __pow__(self, d: int) -> Poly:
        return power_of_linform(self, d)

    def __add__(self, other):
        if not isinstance(other, LinForm):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
        return LinForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return LinForm([-a for a in self.coeffs], self.ctx)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (LinForm, Poly)):
            return NotImplemented
        return LinForm([a * c for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LinForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def leading_index(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ZeroInput("zero linear form")

    def normalized(self) -> "LinForm":
        """Projective representative: first nonzero coordinate equal to 1."""
        lead = self.coeffs[self.leading_index()]
        inv = lead.inverse()
        return LinForm([c * inv for c in self.coeffs], self.ctx)

    def is_proportional(self, other: "LinForm") -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.normalized() == other.normalized()

    def ratio_to(self, other: "LinForm") -> Scalar:
        """lambda with self == lambda * other (forms must be proportional)."""
        i = other.leading_index()
        lam = self.coeffs[i] / other.coeffs[i]
        if LinForm([lam * c for c in other.coeffs]) != self:
            raise ValueError("forms are not proportional")
        return lam

    def transform(self, A: Sequence[Sequence]) -> "LinForm":
        """The form composed with the substitution A (see substitute_linear)."""
        if any(len(row) != self.nvars for row in A):
            raise ArityMismatch("substitution matrix does not match the form")
        return LinForm(linalg.matvec(A, self.coeffs))

    def sort_key(self) -> tuple:
        nnz = sum(1 for c in self.coeffs if c)
        return (nnz, tuple((not c, c.sort_key()) for c in self.coeffs))

    def to_literals(self) -> list[str]:
        return [c.to_literal() for c in self.coeffs]

    def __str__(self):
        return str(self.to_poly())

    def __repr__(self):
        return f"LinForm({' '.join(self.to_literals())})"


# ---------------------------------------------------------------------------
# operations


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for k in range(total, -1, -1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def power_of_linform(form: LinForm, d: int) -> Poly:
    """Multinomial expansion of form^d."""
    if d < 0:
        raise ValueError("negative power")
    n, ctx = form.nvars, form.ctx
    support = [(i, c) for i, c in enumerate(form.coeffs) if c]
    if d == 0:
        return Poly.constant(1, n, ctx)
    if not support:
        return Poly.zero(n, d, ctx)
    pows = []
    for _, c in support:
        row = [ctx.one]
        for _ in range(d):
            row.append(row[-1] * c)
        pows.append(row)
    idx = [i for i, _ in support]
    terms = {}
    for comp in _compositions(d, len(support)):
        coef = pows[0][comp[0]]
        for j in range(1, len(comp)):
            if comp[j]:
                coef = coef * pows[j][comp[j]]
        exps = [0] * n
        for i, k in zip(idx, comp):
            exps[i] = k
        coef = coef * multinomial(comp)
        if coef:
            terms[tuple(exps)] = coef
    return Poly._raw(n, d, terms, ctx)


def partial_derivative(f: Poly, i: int) -> Poly:
    if not 0 <= i < f.nvars:
        raise ArityMismatch(f"no variable x{i + 1} in {f.nvars} variables")
    if f.degree == 0:
        return Poly.zero(f.nvars, 0, f.ctx)
    out = {}
    for exps, c in f.terms.items():
        e = exps[i]
        if e:
            m = exps[:i] + (e - 1,) + exps[i + 1:]
            out[m] = c * e
    return Poly._raw(f.nvars, f.degree - 1, out, f.ctx)


def apply_operator(op: Poly, f: Poly) -> Poly:
    """Contract f by the differential operator op (dual variables act as d/dx_i)."""
    if op.nvars != f.nvars:
        raise ArityMismatch(f"{op.nvars} vs {f.nvars} variables")
    ctx = common_context(op.ctx, f.ctx)
    deg = f.degree - op.degree
    if deg < 0:
        return Poly.zero(f.nvars, 0, ctx)
    out: dict = {}
    for a, ca in op.terms.items():
        for b, cb in f.terms.items():
            if all(x <= y for x, y in zip(a, b)):
                k = 1
                for x, y in zip(a, b):
                    if x:
                        k *= _falling(y, x)
                m = tuple(y - x for x, y in zip(a, b))
                t = ca * cb * k
                out[m] = out[m] + t if m in out else t
    out = {m: c for m, c in out.items() if c}
    return Poly._raw(f.nvars, deg, out, ctx)


def substitute_linear(f: Poly, A: Sequence[Sequence]) -> Poly:
    """Compose f with a linear change of variables.

    ``A`` has one row per new variable y_j, each of length f.nvars, and the
    old variables become x_i = sum_j A[j][i] * y_j. The result is f(A^T y) in
    len(A) variables. A linear form with coefficient vector c becomes the form
    with coefficient vector A c.
    """
    n_new = len(A)
    if any(len(row) != f.nvars for row in A):
        raise ArityMismatch(f"substitution rows must have length {f.nvars}")
    ctx = common_context(f.ctx, *(x.ctx for row in A for x in row if isinstance(x, Scalar)))
    images = [LinForm([to_scalar(A[j][i], ctx) for j in range(n_new)], ctx) for i in range(f.nvars)]
    cache: dict = {}

    def img_pow(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = power_of_linform(images[i], k)
        return cache[key]

    result = Poly.zero(n_new, f.degree, ctx)
    for exps, c in f.terms.items():
        term = Poly.constant(ctx(c), n_new, ctx)
        for i, e in enumerate(exps):
            if e:
                term = term * img_pow(i, e)
        result = result + term
    return result


class CatMatrix:
    """Catalecticant of f at order e: rows are degree-e operators, columns degree-(d-e) monomials.

    ``entries[r][c]`` is the coefficient of ``cols[c]`` in ``rows[r]`` applied to f.
    """

    __slots__ = ("e", "rows", "cols", "entries", "ctx")

    def __init__(self, e, rows, cols, entries, ctx):
        self.e = e
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.ctx = ctx

    def rank(self) -> int:
        if not self.rows or not self.cols:
            return 0
        return linalg.rank(self.entries)

    def __repr__(self):
        return f"CatMatrix(e={self.e}, {len(self.rows)}x{len(self.cols)})"


def catalecticant(f: Poly, e: int) -> CatMatrix:
    d = f.degree
    if not 0 <= e <= d:
        raise OrderOutOfRange(f"order {e} outside 0..{d}")
    rows = monomials(f.nvars, e)
    cols = monomials(f.nvars, d - e)
    zero = f.ctx.zero
    entries = []
    for a in rows:
        row = []
        for m in cols:
            b = tuple(x + y for x, y in zip(a, m))
            c = f.terms.get(b)
            if c is None:
                row.append(zero)
            else:
                k = 1
                for x, y in zip(a, b):
                    if x:
                        k *= _falling(y, x)
                row.append(c * k)
        entries.append(row)
    return CatMatrix(e, rows, cols, entries, f.ctx)


def exact_rank(M: Sequence[Sequence]) -> int:
    if not M or not M[0]:
        return 0
    return linalg.rank(M)


def exact_kernel(M: Sequence[Sequence], ncols: int | None = None, ctx: FieldContext = QQ) -> list[list]:
    return linalg.kernel(M, ncols=ncols, zero=ctx.zero)


def essential_vars(f: Poly) -> tuple[int, list[list[Scalar]]]:
    """Number m of essential variables and an invertible A with f∘A in y1..ym only.

    The rows of A are the images of the new variables (see substitute_linear):
    first m unit vectors completing the annihilating operators, then a basis
    of the linear operators that kill f.
    """
    if f.is_zero():
        raise ZeroInput("essential variables of the zero polynomial")
    n, ctx = f.nvars, f.ctx
    if f.degree == 0:
        return 0, _identity(n, ctx)
    cat = catalecticant(f, 1)
    killers = linalg.left_kernel(cat.entries, zero=ctx.zero) if cat.cols else []
    basis = linalg.IncrementalBasis()
    for v in killers:
        basis.add({i: x for i, x in enumerate(v) if x})
    completion = []
    for i in range(n):
        if basis.add({i: ctx.one}):
            completion.append([ctx.one if j == i else ctx.zero for j in range(n)])
    A = completion + [list(v) for v in killers]
    return len(completion), A


def _identity(n: int, ctx: FieldContext) -> list[list[Scalar]]:
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def identity_matrix(n: int, ctx: FieldContext = QQ) -> list[list[Scalar]]:
    return _identity(n, ctx)


def basis_change_to(form: LinForm) -> tuple[list[list[Scalar]], list[list[Scalar]]]:
    """(A, A_inv) with form.transform(A) == x1, completing with unit vectors.

    Substituting with A turns ``form`` into the first coordinate; substituting
    the result with A_inv goes back.
    """
    n, ctx = form.nvars, form.ctx
    p = form.leading_index()
    # B sends e1 -> form and the remaining basis vectors to unit vectors
    cols = [list(form.coeffs)] + [
        [ctx.one if j == i else ctx.zero for j in range(n)] for i in range(n) if i != p
    ]
    B = linalg.transpose(cols)
    # a form c goes to A c, and we need A form = e1, so A = B^{-1}
    A = linalg.inverse(B)
    return A, B
