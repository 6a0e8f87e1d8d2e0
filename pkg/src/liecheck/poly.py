"""Dense integer polynomials and cyclotomic polynomials.

A polynomial is a tuple of int coefficients, constant term first, with no
trailing zeros.  The zero polynomial is the empty tuple.
"""
from __future__ import annotations

import functools
from fractions import Fraction
from typing import Sequence

Poly = tuple  # tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


def poly(coeffs: Sequence[int]) -> Poly:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def deg(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return poly([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def neg(f: Poly) -> Poly:
    return tuple(-c for c in f)


def sub(f: Poly, g: Poly) -> Poly:
    return add(f, neg(g))


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ZERO
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly(out)


def scale(f: Poly, c: int) -> Poly:
    return poly([c * a for a in f])


def pow_(f: Poly, n: int) -> Poly:
    out = ONE
    for _ in range(n):
        out = mul(out, f)
    return out


def divmod_exact(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Polynomial division over Q, results must have integer coefficients."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    rem = [Fraction(c) for c in f]
    q = [Fraction(0)] * max(1, len(f) - len(g) + 1)
    lead = Fraction(g[-1])
    while len(rem) >= len(g) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(g):
            break
        c = rem[-1] / lead
        k = len(rem) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            rem[k + i] -= c * b
        rem.pop()
    for c in q + rem:
        if c.denominator != 1:
            raise ValueError("non-exact polynomial division")
    return poly([int(c) for c in q]), poly([int(c) for c in rem])


def divides(g: Poly, f: Poly) -> bool:
    try:
        _, r = divmod_exact(f, g)
    except ValueError:
        return False
    return r == ZERO


def evaluate(f: Poly, x: int) -> int:
    out = 0
    for c in reversed(f):
        out = out * x + c
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic(d: int) -> Poly:
    """The d-th cyclotomic polynomial, via Phi_d = (x^d - 1) / prod_{e|d, e<d} Phi_e."""
    if d < 1:
        raise ValueError("d must be >= 1")
    num = poly([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            num, r = divmod_exact(num, cyclotomic(e))
            assert r == ZERO
    return num


def cyclotomic_factor(f: Poly) -> dict[int, int]:
    """Factor a +-product of cyclotomics into {d: multiplicity}.

    Raises ValueError if a non-cyclotomic factor of positive degree remains.
    """
    out: dict[int, int] = {}
    rem = f
    if rem and rem[-1] < 0:
        rem = neg(rem)
    d = 1
    # phi(d) <= deg possible only for finitely many d; 3*deg^2+10 is a safe scan bound
    bound = 3 * max(1, deg(f)) ** 2 + 10
    while deg(rem) > 0 and d <= bound:
        phi = cyclotomic(d)
        while divides(phi, rem):
            out[d] = out.get(d, 0) + 1
            rem, _ = divmod_exact(rem, phi)
        d += 1
    if deg(rem) > 0:
        raise ValueError(f"non-cyclotomic factor remains: {rem}")
    return out


def expand_cyclotomic(mults: dict[int, int]) -> Poly:
    out = ONE
    for d, m in sorted(mults.items()):
        out = mul(out, pow_(cyclotomic(d), m))
    return out


def to_string(f: Poly, var: str = "q") -> str:
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(f"{c:+d}")
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if c == 1:
                parts.append(f"+{mono}")
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c:+d}{mono}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s
