"""Dense univariate polynomials over an exact field.

A polynomial is a tuple of coefficients, lowest degree first, with no trailing
zeros (the zero polynomial is ``()``). The helpers only use field operations
and truthiness, so they work for ``Fraction`` as well as ``Scalar``.
"""

from __future__ import annotations

from typing import Sequence


def trim(p: Sequence) -> tuple:
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def degree(p: tuple) -> int:
    return len(p) - 1


def order(p: tuple) -> int:
    """Index of the lowest nonzero coefficient; ``p`` must be nonzero."""
    for i, c in enumerate(p):
        if c:
            return i
    raise ValueError("order of the zero polynomial")


def add(p: tuple, q: tuple) -> tuple:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return trim(out)


def neg(p: tuple) -> tuple:
    return tuple(-c for c in p)


def sub(p: tuple, q: tuple) -> tuple:
    return add(p, neg(q))


def scale(p: tuple, c) -> tuple:
    if not c:
        return ()
    return trim([a * c for a in p])


def mul(p: tuple, q: tuple) -> tuple:
    if not p or not q:
        return ()
    out = [None] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if not b:
                continue
            t = a * b
            k = i + j
            out[k] = t if out[k] is None else out[k] + t
    zero = p[0] - p[0]
    return trim([zero if c is None else c for c in out])


def power(p: tuple, k: int, one) -> tuple:
    result = (one,)
    base = p
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def shift(p: tuple, k: int) -> tuple:
    """Multiply by t^k."""
    if not p:
        return ()
    zero = p[0] - p[0]
    return (zero,) * k + tuple(p)


def divmod_(p: tuple, q: tuple) -> tuple[tuple, tuple]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return (), p
    inv_lc = 1 / q[-1]
    rem = list(p)
    quo = [None] * (len(p) - len(q) + 1)
    dq = len(q) - 1
    for k in range(len(p) - 1, dq - 1, -1):
        c = rem[k]
        if not c:
            quo[k - dq] = c
            continue
        t = c * inv_lc
        quo[k - dq] = t
        for j, b in enumerate(q):
            if b:
                rem[k - dq + j] = rem[k - dq + j] - t * b
    return trim(quo), trim(rem[:dq])


def exact_div(p: tuple, q: tuple) -> tuple:
    quo, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return quo


def monic(p: tuple) -> tuple:
    if not p:
        return p
    inv = 1 / p[-1]
    return tuple(c * inv for c in p)


def gcd(p: tuple, q: tuple) -> tuple:
    """Monic gcd (``()`` only when both inputs are zero)."""
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def deriv(p: tuple) -> tuple:
    return trim([c * i for i, c in enumerate(p)][1:])


def evaluate(p: tuple, x):
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * x + c
    return acc


def is_squarefree(p: tuple) -> bool:
    """True when ``p`` has no repeated root (characteristic zero)."""
    if len(p) <= 2:
        return bool(p)
    return len(gcd(p, deriv(p))) == 1
