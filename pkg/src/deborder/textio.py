"""Plain-text and JSON serialization of polynomials and decompositions.

Every format starts with a header line ``<kind> key=value ...`` and lists one
item per line. Blank lines and text after ``#`` are ignored.
Scalars are written as expressions in integers, ``zeta(M)`` (a primitive
M-th root of unity, M dividing the header's N) and, for border weights and
forms, the limit parameter ``e``; ``^`` denotes powers.
"""

from __future__ import annotations

import ast
import json
from typing import Iterable

from .border import BorderDecomposition, EpsLinForm
from .errors import DeborderError, ParseError
from .gad import GAD, GADPart
from .polynomials import LinForm, Poly
from .scalars import EpsScalar, FieldContext, Scalar, make_context
from .synthesis import WaringDecomposition

# ---------------------------------------------------------------------------
# literals


class _Evaluator:
    def __init__(self, ctx: FieldContext, allow_eps: bool, line: int, col: int):
        self.ctx = ctx
        self.allow_eps = allow_eps
        self.line = line
        self.col = col

    def fail(self, node, msg):
        raise ParseError(msg, self.line, self.col + getattr(node, "col_offset", 0) + 1)

    def lift(self, x):
        if self.allow_eps and not isinstance(x, EpsScalar):
            return EpsScalar.const(x, self.ctx)
        return x

    def eval(self, node):
        if isinstance(node, ast.Expression):
            return self.lift(self.eval(node.body))
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                self.fail(node, f"unexpected literal {node.value!r}")
            return self.ctx(node.value)
        if isinstance(node, ast.Name):
            if node.id == "e" and self.allow_eps:
                return EpsScalar.eps(self.ctx)
            self.fail(node, f"unknown name {node.id!r}")
        if isinstance(node, ast.Call):
            if not (isinstance(node.func, ast.Name) and node.func.id == "zeta") or node.keywords:
                self.fail(node, "only zeta(M) calls are allowed")
            if len(node.args) != 1 or not isinstance(node.args[0], ast.Constant) or type(node.args[0].value) is not int:
                self.fail(node, "zeta expects one integer argument")
            M = node.args[0].value
            if M < 1 or self.ctx.N % M:
                self.fail(node, f"zeta({M}) is not available for N={self.ctx.N}")
            return self.ctx.zeta_power(self.ctx.N // M)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            v = self.eval(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = node.right
                sign = 1
                if isinstance(k, ast.UnaryOp) and isinstance(k.op, ast.USub):
                    sign, k = -1, k.operand
                if not (isinstance(k, ast.Constant) and type(k.value) is int):
                    self.fail(node.right, "exponents must be integers")
                base = self.eval(node.left)
                try:
                    return base ** (sign * k.value)
                except ZeroDivisionError:
                    self.fail(node, "division by zero")
            left, right = self.eval(node.left), self.eval(node.right)
            try:
                if isinstance(node.op, ast.Add):
                    return left + right
                if isinstance(node.op, ast.Sub):
                    return left - right
                if isinstance(node.op, ast.Mult):
                    return left * right
                if isinstance(node.op, ast.Div):
                    return left / right
            except ZeroDivisionError:
                self.fail(node, "division by zero")
            self.fail(node, "unsupported operator")
        self.fail(node, "unsupported expression")


def parse_literal(text: str, ctx: FieldContext, allow_eps: bool = False, line: int | None = None, col: int = 0):
    """Evaluate a scalar (or, with allow_eps, an eps-rational) expression."""
    src = text.strip()
    lead = len(text) - len(text.lstrip())
    if not src:
        raise ParseError("empty expression", line, col + 1)
    try:
        tree = ast.parse(src.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"malformed expression {src!r}", line, col + lead + (exc.offset or 1)) from None
    return _Evaluator(ctx, allow_eps, line, col + lead).eval(tree)


# ---------------------------------------------------------------------------
# line handling


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        # '#' starts a comment anywhere on a line
        s = raw.split("#", 1)[0].rstrip()
        if not s.strip():
            continue
        out.append((i, s))
    return out


def _header(lineno: int, line: str, kind: str, keys: Iterable[str]) -> dict:
    tokens = line.split()
    if not tokens or tokens[0] != kind:
        raise ParseError(f"expected a '{kind}' header", lineno, 1)
    vals = {}
    for tok in tokens[1:]:
        col = line.index(tok) + 1
        if "=" not in tok:
            raise ParseError(f"malformed header field {tok!r}", lineno, col)
        k, v = tok.split("=", 1)
        if k not in keys or k in vals:
            raise ParseError(f"unexpected header field {k!r}", lineno, col)
        try:
            vals[k] = int(v)
        except ValueError:
            raise ParseError(f"header field {k} must be an integer", lineno, col) from None
    missing = [k for k in keys if k not in vals]
    if missing:
        raise ParseError(f"header is missing {', '.join(missing)}", lineno, len(line) + 1)
    if vals.get("n", 1) < 1 or vals.get("N", 1) < 1 or vals.get("d", 0) < 0:
        raise ParseError("header values out of range", lineno, 1)
    return vals


def _split_semicolon(lineno: int, line: str) -> tuple[str, str, int]:
    if line.count(";") != 1:
        raise ParseError("expected exactly one ';'", lineno, 1)
    i = line.index(";")
    return line[:i], line[i + 1:], i + 1


def _fields(text: str, offset: int) -> list[tuple[str, int]]:
    out = []
    pos = 0
    for tok in text.split():
        pos = text.index(tok, pos)
        out.append((tok, offset + pos))
        pos += len(tok)
    return out


def _parse_terms(rows, n: int, d: int, ctx: FieldContext) -> Poly:
    terms: dict = {}
    for lineno, line in rows:
        left, right, off = _split_semicolon(lineno, line)
        coef = parse_literal(left, ctx, line=lineno)
        exps = []
        for tok, col in _fields(right, off):
            try:
                e = int(tok)
            except ValueError:
                raise ParseError(f"exponent {tok!r} is not an integer", lineno, col + 1) from None
            if e < 0:
                raise ParseError("negative exponent", lineno, col + 1)
            exps.append(e)
        if len(exps) != n:
            raise ParseError(f"expected {n} exponents, got {len(exps)}", lineno, off + 1)
        if sum(exps) != d:
            raise ParseError(f"monomial has degree {sum(exps)}, expected {d}", lineno, off + 1)
        key = tuple(exps)
        terms[key] = terms[key] + coef if key in terms else coef
    return Poly(n, d, terms, ctx)


# ---------------------------------------------------------------------------
# polynomials


def format_poly(f: Poly) -> str:
    out = [f"poly n={f.nvars} d={f.degree} N={f.ctx.N}"]
    for exps, c in f.sorted_terms():
        out.append(f"{c.to_literal()} ; {' '.join(map(str, exps))}")
    return "\n".join(out) + "\n"


def parse_poly(text: str) -> Poly:
    rows = _lines(text)
    if not rows:
        raise ParseError("empty input", 1, 1)
    h = _header(*rows[0], "poly", ("n", "d", "N"))
    return _parse_terms(rows[1:], h["n"], h["d"], make_context(h["N"]))


# ---------------------------------------------------------------------------
# border decompositions


def format_border(B: BorderDecomposition) -> str:
    out = [f"border n={B.nvars} d={B.degree} N={B.ctx.N} r={B.r}"]
    for w, f in B.summands:
        out.append(f"weight={w.to_literal()} ; {' '.join(f.to_literals())}")
    return "\n".join(out) + "\n"


def _weighted_row(lineno, line, n, ctx, allow_eps):
    left, right, off = _split_semicolon(lineno, line)
    stripped = left.lstrip()
    if not stripped.startswith("weight="):
        raise ParseError("expected 'weight=<expression>'", lineno, len(left) - len(stripped) + 1)
    start = len(left) - len(stripped) + len("weight=")
    weight = parse_literal(left[start:], ctx, allow_eps, lineno, start)
    coeffs = [parse_literal(tok, ctx, allow_eps, lineno, col) for tok, col in _fields(right, off)]
    if len(coeffs) != n:
        raise ParseError(f"expected {n} coefficients, got {len(coeffs)}", lineno, off + 1)
    return weight, coeffs


def parse_border(text: str) -> BorderDecomposition:
    rows = _lines(text)
    if not rows:
        raise ParseError("empty input", 1, 1)
    h = _header(*rows[0], "border", ("n", "d", "N", "r"))
    ctx = make_context(h["N"])
    summands = []
    for lineno, line in rows[1:]:
        w, coeffs = _weighted_row(lineno, line, h["n"], ctx, True)
        form = EpsLinForm(coeffs, ctx)
        if form.is_zero():
            raise ParseError("summand form is identically zero", lineno, 1)
        summands.append((w, form))
    if len(summands) != h["r"]:
        raise ParseError(f"header says r={h['r']} but {len(summands)} summands follow", rows[0][0], 1)
    return BorderDecomposition(h["n"], h["d"], summands, ctx)


# ---------------------------------------------------------------------------
# Waring decompositions


def format_waring(W: WaringDecomposition) -> str:
    out = [f"waring n={W.nvars} d={W.degree} N={W.ctx.N} r={len(W)}"]
    for w, f in W.summands:
        out.append(f"weight={w.to_literal()} ; {' '.join(f.to_literals())}")
    return "\n".join(out) + "\n"


def parse_waring(text: str) -> WaringDecomposition:
    rows = _lines(text)
    if not rows:
        raise ParseError("empty input", 1, 1)
    h = _header(*rows[0], "waring", ("n", "d", "N", "r"))
    ctx = make_context(h["N"])
    summands = []
    for lineno, line in rows[1:]:
        w, coeffs = _weighted_row(lineno, line, h["n"], ctx, False)
        summands.append((w, LinForm(coeffs, ctx)))
    if len(summands) != h["r"]:
        raise ParseError(f"header says r={h['r']} but {len(summands)} summands follow", rows[0][0], 1)
    return WaringDecomposition(h["n"], h["d"], summands, ctx)


# ---------------------------------------------------------------------------
# GADs


def format_gad(G: GAD) -> str:
    out = [f"gad n={G.nvars} d={G.degree} N={G.ctx.N} m={len(G.parts)}"]
    for p in G.parts:
        out.append(" ".join(p.form.to_literals()))
        out.append(str(p.r))
        out.append(f"poly n={G.nvars} d={p.r - 1} N={G.ctx.N}")
        for exps, c in p.g.sorted_terms():
            out.append(f"{c.to_literal()} ; {' '.join(map(str, exps))}")
    return "\n".join(out) + "\n"


def parse_gad(text: str) -> GAD:
    rows = _lines(text)
    if not rows:
        raise ParseError("empty input", 1, 1)
    h = _header(*rows[0], "gad", ("n", "d", "N", "m"))
    n, ctx = h["n"], make_context(h["N"])
    parts = []
    i = 1
    while i < len(rows):
        lineno, line = rows[i]
        if ";" in line:
            raise ParseError("expected a linear form line", lineno, 1)
        coeffs = [parse_literal(tok, ctx, False, lineno, col) for tok, col in _fields(line, 0)]
        if len(coeffs) != n:
            raise ParseError(f"expected {n} coefficients, got {len(coeffs)}", lineno, 1)
        if i + 2 >= len(rows):
            raise ParseError("incomplete part: expected r and a poly block", lineno, len(line) + 1)
        rl, rline = rows[i + 1]
        try:
            r = int(rline.strip())
        except ValueError:
            raise ParseError("expected an integer r", rl, 1) from None
        if r < 1:
            raise ParseError("r must be positive", rl, 1)
        pl, pline = rows[i + 2]
        ph = _header(pl, pline, "poly", ("n", "d", "N"))
        if ph["n"] != n or ph["N"] != h["N"]:
            raise ParseError("embedded polynomial does not match the gad header", pl, 1)
        if ph["d"] != r - 1:
            raise ParseError(f"embedded polynomial has degree {ph['d']}, expected r-1 = {r - 1}", pl, 1)
        j = i + 3
        while j < len(rows) and ";" in rows[j][1]:
            j += 1
        g = _parse_terms(rows[i + 3:j], n, r - 1, ctx)
        parts.append(GADPart(LinForm(coeffs, ctx), r, g))
        i = j
    if len(parts) != h["m"]:
        raise ParseError(f"header says m={h['m']} but {len(parts)} parts follow", rows[0][0], 1)
    return GAD(n, h["d"], parts, ctx)


# ---------------------------------------------------------------------------
# JSON mirrors


def poly_to_json(f: Poly) -> dict:
    return {
        "type": "poly",
        "n": f.nvars,
        "d": f.degree,
        "N": f.ctx.N,
        "terms": [{"coeff": c.to_literal(), "exps": list(e)} for e, c in f.sorted_terms()],
    }


def border_to_json(B: BorderDecomposition) -> dict:
    return {
        "type": "border",
        "n": B.nvars,
        "d": B.degree,
        "N": B.ctx.N,
        "r": B.r,
        "summands": [{"weight": w.to_literal(), "form": f.to_literals()} for w, f in B.summands],
    }


def waring_to_json(W: WaringDecomposition) -> dict:
    return {
        "type": "waring",
        "n": W.nvars,
        "d": W.degree,
        "N": W.ctx.N,
        "r": len(W),
        "summands": [{"weight": w.to_literal(), "form": f.to_literals()} for w, f in W.summands],
    }


def gad_to_json(G: GAD) -> dict:
    return {
        "type": "gad",
        "n": G.nvars,
        "d": G.degree,
        "N": G.ctx.N,
        "m": len(G.parts),
        "parts": [
            {"form": p.form.to_literals(), "r": p.r, "g": poly_to_json(p.g)["terms"]} for p in G.parts
        ],
    }


def to_json(obj) -> str:
    if isinstance(obj, Poly):
        data = poly_to_json(obj)
    elif isinstance(obj, BorderDecomposition):
        data = border_to_json(obj)
    elif isinstance(obj, WaringDecomposition):
        data = waring_to_json(obj)
    elif isinstance(obj, GAD):
        data = gad_to_json(obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(data, sort_keys=False)


def format_any(obj) -> str:
    if isinstance(obj, Poly):
        return format_poly(obj)
    if isinstance(obj, BorderDecomposition):
        return format_border(obj)
    if isinstance(obj, WaringDecomposition):
        return format_waring(obj)
    if isinstance(obj, GAD):
        return format_gad(obj)
    raise TypeError(f"cannot format {type(obj).__name__}")


def parse_any(text: str):
    """Dispatch on the header keyword."""
    rows = _lines(text)
    if not rows:
        raise ParseError("empty input", 1, 1)
    kind = rows[0][1].split()[0]
    parsers = {"poly": parse_poly, "border": parse_border, "waring": parse_waring, "gad": parse_gad}
    if kind not in parsers:
        raise ParseError(f"unknown header {kind!r}", rows[0][0], 1)
    return parsers[kind](text)
