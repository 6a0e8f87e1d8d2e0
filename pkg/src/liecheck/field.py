"""Small finite fields F_{p^k} with exact table-driven arithmetic.

Elements are encoded as integers in [0, q): the code sum(c_i * p^i) stands for
the residue sum(c_i * x^i) modulo the field's defining polynomial.  The
modulus is the lexicographically least irreducible monic polynomial of degree
k (lex order on the non-leading coefficient vector (c_0, ..., c_{k-1}), i.e.
on the integer c_0 + c_1 p + ...), so serialized elements are portable.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

MAX_Q = 1 << 20
TABLE_Q = 2048  # full mul/inv tables below this size


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2^20."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def least_prime_in_progression(mod: int, start: int) -> int:
    """Least prime ell ≡ 1 (mod `mod`) with ell > start."""
    ell = (max(start, 2) // mod) * mod + 1
    while ell <= start or not is_prime(ell):
        ell += mod
    return ell


def _poly_mulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    k = len(modulus) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    for i in range(len(out) - 1, k - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(k):
                out[i - k + j] = (out[i - k + j] - c * modulus[j]) % p
    return [c % p for c in out[:k]] + [0] * max(0, k - len(out))


def _poly_powmod(a: list[int], n: int, modulus: list[int], p: int) -> list[int]:
    k = len(modulus) - 1
    out = [1] + [0] * (k - 1)
    base = list(a)
    while n:
        if n & 1:
            out = _poly_mulmod(out, base, modulus, p)
        base = _poly_mulmod(base, base, modulus, p)
        n >>= 1
    return out


def _is_irreducible(modulus: list[int], p: int) -> bool:
    """x^{p^k} == x mod f, and x^{p^{k/r}} - x coprime to f for primes r | k."""
    k = len(modulus) - 1
    if k == 1:
        return True
    x = [0, 1] + [0] * (k - 2)
    xp = _poly_powmod(x, p ** k, modulus, p)
    if xp != x[:k]:
        return False
    for r in range(2, k + 1):
        if k % r == 0 and _is_irreducible_prime_factor(r):
            xq = _poly_powmod(x, p ** (k // r), modulus, p)
            diff = [(a - b) % p for a, b in zip(xq, x[:k])]
            if _poly_gcd_is_one(diff, modulus, p):
                continue
            return False
    return True


def _is_irreducible_prime_factor(r: int) -> bool:
    return all(r % i for i in range(2, r))


def _poly_gcd_is_one(a: list[int], b: list[int], p: int) -> bool:
    def trim(f):
        while f and f[-1] == 0:
            f.pop()
        return f

    a, b = trim(list(a)), trim(list(b))
    while a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
        while len(b) >= len(a):
            c = b[-1]
            for i in range(len(a)):
                b[len(b) - len(a) + i] = (b[len(b) - len(a) + i] - c * a[i]) % p
            trim(b)
            if not b:
                return len(a) == 1
        a, b = b, a
    return len(b) == 1


@functools.lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> "FieldSpec":
    return FieldSpec(p, k)


class FieldSpec:
    """F_{p^k} with element codes in [0, q); deterministic modulus choice."""

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** k
        if q > MAX_Q:
            raise ValueError(f"field size {q} exceeds desk-scale cap {MAX_Q}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = self._least_irreducible()
        self._build_linear_maps()
        if q <= TABLE_Q:
            self._build_tables()
        else:
            self._mul_table = None

    # -- modulus ---------------------------------------------------------
    def _least_irreducible(self) -> tuple[int, ...]:
        p, k = self.p, self.k
        if k == 1:
            return (0, 1)
        for code in range(p ** k):
            coeffs = self._decode_raw(code) + [1]
            if _is_irreducible(coeffs, p):
                return tuple(coeffs)
        raise AssertionError("no irreducible polynomial found")

    def _decode_raw(self, code: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return out

    def _encode_raw(self, coeffs: list[int]) -> int:
        out = 0
        for c in reversed(coeffs[: self.k]):
            out = out * self.p + (c % self.p)
        return out

    # -- tables ----------------------------------------------------------
    def _build_tables(self) -> None:
        q, p = self.q, self.p
        mod = list(self.modulus)
        add = np.zeros((q, q), dtype=np.int32)
        mul = np.zeros((q, q), dtype=np.int32)
        for a in range(q):
            ca = self._decode_raw(a)
            for b in range(a, q):
                cb = self._decode_raw(b)
                s = self._encode_raw([(x + y) % p for x, y in zip(ca, cb)])
                add[a, b] = add[b, a] = s
                m = self._encode_raw(_poly_mulmod(ca, cb, mod, p))
                mul[a, b] = mul[b, a] = m
        self._add_table = add
        self._mul_table = mul
        inv = np.zeros(q, dtype=np.int32)
        for a in range(1, q):
            row = mul[a]
            inv[a] = int(np.nonzero(row == 1)[0][0])
        self._inv_table = inv
        neg = np.zeros(q, dtype=np.int32)
        for a in range(q):
            neg[a] = self._encode_raw([(-c) % p for c in self._decode_raw(a)])
        self._neg_table = neg
        frob = np.zeros(q, dtype=np.int32)
        for a in range(q):
            frob[a] = self.pw(a, p)
        self._frob_table = frob

    def _build_linear_maps(self) -> None:
        """x -> x^p is F_p-linear; store its k x k matrix, plus the reduction
        rows expressing x^m (m = k .. 2k-2) in the power basis."""
        p, k = self.p, self.k
        mod = list(self.modulus)
        fr = np.zeros((k, k), dtype=np.int64)
        for i in range(k):
            basis = [0] * k
            basis[i] = 1
            img = _poly_powmod(basis, p, mod, p)
            fr[:, i] = img
        self.frob_matrix = fr
        red = np.zeros((2 * k - 1, k), dtype=np.int64)
        for m in range(2 * k - 1):
            mono = [0] * (m + 1)
            mono[m] = 1
            red[m, :] = _poly_mulmod(mono, [1] + [0] * (k - 1), mod, p)
        self.reduce_rows = red

    # -- arithmetic on codes ----------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._mul_table is not None:
            return int(self._add_table[a, b])
        p = self.p
        return self._encode_raw([(x + y) % p for x, y in zip(self._decode_raw(a), self._decode_raw(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self._mul_table is not None:
            return int(self._neg_table[a])
        return self._encode_raw([(-c) % self.p for c in self._decode_raw(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return int(self._mul_table[a, b])
        return self._encode_raw(_poly_mulmod(self._decode_raw(a), self._decode_raw(b), list(self.modulus), self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._mul_table is not None:
            return int(self._inv_table[a])
        return self.pw(a, self.q - 2)

    def pw(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n else 1
        n %= self.q - 1
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def frobenius(self, a: int, iterations: int = 1) -> int:
        out = a
        for _ in range(iterations % self.k):
            if self.k > 1 and self._mul_table is not None:
                out = int(self._frob_table[out])
            else:
                out = self.pw(out, self.p)
        return out

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def root_of_unity(self, n: int) -> int:
        """Least element code of multiplicative order exactly n."""
        if (self.q - 1) % n != 0:
            raise ValueError(f"no root of unity of order {n} in F_{self.q}")
        for a in range(1, self.q):
            if self.element_order(a) == n:
                return a
        raise AssertionError("unreachable")

    def elements(self):
        return range(self.q)

    def element(self, code: int) -> "FieldElt":
        return FieldElt(self, code % self.q if code >= 0 else self._encode_raw(self._decode_raw(code % self.q)))

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(self._decode_raw(a))

    def from_coeffs(self, coeffs) -> int:
        return self._encode_raw(list(coeffs))

    def __repr__(self):
        return f"F{self.q}" if self.k > 1 else f"F{self.p}"

    def __hash__(self):
        return hash((self.p, self.k))

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)


@dataclass(frozen=True)
class FieldElt:
    """Thin wrapper for ergonomic field arithmetic in user code and tests."""

    field: FieldSpec
    code: int

    def __add__(self, other):
        return FieldElt(self.field, self.field.add(self.code, other.code))

    def __sub__(self, other):
        return FieldElt(self.field, self.field.sub(self.code, other.code))

    def __mul__(self, other):
        return FieldElt(self.field, self.field.mul(self.code, other.code))

    def __neg__(self):
        return FieldElt(self.field, self.field.neg(self.code))

    def __pow__(self, n: int):
        if n < 0:
            return FieldElt(self.field, self.field.pw(self.field.inv(self.code), -n))
        return FieldElt(self.field, self.field.pw(self.code, n))

    def inverse(self):
        return FieldElt(self.field, self.field.inv(self.code))

    def frobenius(self, iterations: int = 1):
        return FieldElt(self.field, self.field.frobenius(self.code, iterations))

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)
