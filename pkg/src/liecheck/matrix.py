"""Dense matrices over a FieldSpec, plus exact integer matrices and SNF.

Field matrices are stored as numpy arrays of shape (n, n, k) mod p: entry
(i, j) is the coefficient vector of a field element in the power basis.
Multiplication is k^2 integer matmuls followed by modulus reduction, and an
element's canonical byte string (array.tobytes) doubles as its hash key in
the group engine.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .field import FieldSpec


class MatSpace:
    """n x n matrices over a fixed field; works on byte keys and arrays."""

    def __init__(self, field: FieldSpec, n: int):
        self.field = field
        self.n = n
        self.k = field.k
        self.p = field.p
        self.key_size = n * n * self.k
        self.identity = self.encode(self.from_scalar(1))
        self._reduce = field.reduce_rows  # (2k-1, k)

    # -- array <-> key ----------------------------------------------------
    def encode(self, arr: np.ndarray) -> bytes:
        return np.ascontiguousarray(arr % self.p, dtype=np.int8).tobytes()

    def decode(self, key: bytes) -> np.ndarray:
        return np.frombuffer(key, dtype=np.int8).reshape(self.n, self.n, self.k).astype(np.int64)

    def from_scalar(self, code: int) -> np.ndarray:
        arr = np.zeros((self.n, self.n, self.k), dtype=np.int64)
        cf = self.field.coeffs(code)
        for i in range(self.n):
            arr[i, i, :] = cf
        return arr

    def from_codes(self, rows) -> np.ndarray:
        """Build from an n x n array of field-element codes."""
        arr = np.zeros((self.n, self.n, self.k), dtype=np.int64)
        for i in range(self.n):
            for j in range(self.n):
                arr[i, j, :] = self.field.coeffs(int(rows[i][j]))
        return arr

    def to_codes(self, arr: np.ndarray):
        return [[self.field.from_coeffs(arr[i, j, :]) for j in range(self.n)] for i in range(self.n)]

    def key_from_codes(self, rows) -> bytes:
        return self.encode(self.from_codes(rows))

    # -- arithmetic --------------------------------------------------------
    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        k, p = self.k, self.p
        if k == 1:
            return (a[:, :, 0] @ b[:, :, 0] % p)[:, :, None]
        conv = np.zeros((self.n, self.n, 2 * k - 1), dtype=np.int64)
        for r in range(k):
            for s in range(k):
                conv[:, :, r + s] += a[:, :, r] @ b[:, :, s]
        out = conv % p @ self._reduce % p
        return out

    def mul(self, ka: bytes, kb: bytes) -> bytes:
        return self.encode(self.mul_arrays(self.decode(ka), self.decode(kb)))

    def blowup(self, arr: np.ndarray) -> np.ndarray:
        """Image under F_{p^k} -> M_k(F_p) applied entrywise: (nk) x (nk) mod p."""
        n, k, p = self.n, self.k, self.p
        if k == 1:
            return arr[:, :, 0] % p
        xmat = np.zeros((k, k), dtype=np.int64)  # multiplication-by-x matrix
        for i in range(k):
            if i + 1 < k:
                xmat[i + 1, i] = 1
            else:
                xmat[:, i] = self._reduce[k]  # x^k mod modulus
        big = np.zeros((n * k, n * k), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                blk = np.zeros((k, k), dtype=np.int64)
                col = arr[i, j, :].copy()
                for c in range(k):
                    blk[:, c] = col
                    col = xmat @ col % p
                big[i * k:(i + 1) * k, j * k:(j + 1) * k] = blk % p
        return big

    def project(self, big: np.ndarray) -> np.ndarray:
        """Inverse of blowup for matrices in the image (first column of each block)."""
        n, k = self.n, self.k
        if k == 1:
            return big[:, :, None] % self.p
        arr = np.zeros((n, n, k), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                arr[i, j, :] = big[i * k:(i + 1) * k, j * k]
        return arr % self.p

    def inv_arrays(self, a: np.ndarray) -> np.ndarray:
        big = self.blowup(a)
        return self.project(inv_mod_prime(big, self.p))

    def inv(self, key: bytes) -> bytes:
        return self.encode(self.inv_arrays(self.decode(key)))

    def transpose(self, key: bytes) -> bytes:
        return self.encode(np.swapaxes(self.decode(key), 0, 1))

    def frobenius(self, key: bytes, iterations: int = 1) -> bytes:
        """Entrywise x -> x^(p^iterations); the identity when k == 1."""
        if self.k == 1:
            return key
        arr = self.decode(key)
        fr = np.linalg.matrix_power(self.field.frob_matrix, iterations % self.k) % self.p
        return self.encode(arr @ fr.T % self.p)

    def det_code(self, key: bytes) -> int:
        """Determinant as a field-element code (Gaussian elimination on blowup
        is wrong for det; do elimination in the field itself)."""
        f = self.field
        m = [row[:] for row in self.to_codes(self.decode(key))]
        n = self.n
        det = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] != 0), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = f.neg(det)
            det = f.mul(det, m[c][c])
            ic = f.inv(m[c][c])
            for r in range(c + 1, n):
                if m[r][c]:
                    fac = f.mul(m[r][c], ic)
                    for j in range(c, n):
                        m[r][j] = f.sub(m[r][j], f.mul(fac, m[c][j]))
        return det

    def is_invertible(self, key: bytes) -> bool:
        return self.det_code(key) != 0

    def describe(self) -> str:
        return f"mat({self.field!r},{self.n})"


def inv_mod_prime(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square integer matrix mod p via Gauss-Jordan."""
    n = a.shape[0]
    m = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if m[r, c] % p:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("matrix not invertible mod p")
        if piv != c:
            m[[c, piv]] = m[[piv, c]]
        m[c] = m[c] * pow(int(m[c, c]), -1, p) % p
        for r in range(n):
            if r != c and m[r, c]:
                m[r] = (m[r] - m[r, c] * m[c]) % p
    return m[:, n:]


# ---------------------------------------------------------------------------
# Exact integer matrices
# ---------------------------------------------------------------------------

MAX_LATTICE_DIM = 64


def imat_identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def imat_mul(a, b) -> list[list[int]]:
    n, m, r = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(m)) for j in range(r)] for i in range(n)]


def imat_det(a) -> int:
    """Fraction-free Bareiss determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if m[c][c] == 0:
            piv = next((r for r in range(c + 1, n) if m[r][c] != 0), None)
            if piv is None:
                return 0
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                m[r][j] = (m[r][j] * m[c][c] - m[r][c] * m[c][j]) // prev
            m[r][c] = 0
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def imat_charpoly(a) -> tuple:
    """Monic characteristic polynomial det(xI - A), exact, by interpolation."""
    from . import poly as P

    n = len(a)
    if n > MAX_LATTICE_DIM:
        raise ValueError(f"lattice dimension {n} exceeds cap {MAX_LATTICE_DIM}")
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        m = [[(x if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)]
        ys.append(imat_det(m))
    # Lagrange interpolation over Q
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(xs):
        num = [Fraction(1)]  # prod_{j != i} (x - x_j)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if i == j:
                continue
            num = [Fraction(0)] + num
            for t in range(len(num) - 1):
                num[t] -= xj * num[t + 1]
            denom *= xi - xj
        for t in range(len(num)):
            coeffs[t] += ys[i] * num[t] / denom
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("characteristic polynomial not integral")
    out = P.poly([int(c) for c in coeffs])
    assert out[-1] == 1, "characteristic polynomial must be monic"
    return out


def imat_inv_unimodular(a) -> list[list[int]]:
    """Exact inverse of an integer matrix with det +-1 (adjugate method)."""
    n = len(a)
    d = imat_det(a)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[a[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * imat_det(minor)
    return [[adj[i][j] * d for j in range(n)] for i in range(n)]


@dataclass
class SnfResult:
    diagonal: list[int]
    left: list[list[int]]
    right: list[list[int]]


def smith_normal_form(a) -> SnfResult:
    """Smith normal form with unimodular transforms: left @ A @ right = diag.

    Diagonal entries are nonnegative and form a divisibility chain; zero
    entries (infinite quotients) are pushed to the end.
    """
    n = len(a)
    m = len(a[0]) if n else 0
    if max(n, m, 1) > MAX_LATTICE_DIM:
        raise ValueError("matrix dimension exceeds lattice cap")
    mat = [row[:] for row in a]
    left = imat_identity(n)
    right = imat_identity(m)

    def row_op(i, j, c):  # row_i -= c*row_j
        for t in range(m):
            mat[i][t] -= c * mat[j][t]
        for t in range(n):
            left[i][t] -= c * left[j][t]

    def col_op(i, j, c):  # col_i -= c*col_j
        for t in range(n):
            mat[t][i] -= c * mat[t][j]
        for t in range(m):
            right[t][i] -= c * right[t][j]

    def row_swap(i, j):
        mat[i], mat[j] = mat[j], mat[i]
        left[i], left[j] = left[j], left[i]

    def col_swap(i, j):
        for t in range(n):
            mat[t][i], mat[t][j] = mat[t][j], mat[t][i]
        for t in range(m):
            right[t][i], right[t][j] = right[t][j], right[t][i]

    s = 0
    while s < min(n, m):
        # find a nonzero pivot of least absolute value
        best = None
        for i in range(s, n):
            for j in range(s, m):
                if mat[i][j] != 0 and (best is None or abs(mat[i][j]) < abs(mat[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(s, best[0])
        col_swap(s, best[1])
        dirty = False
        for i in range(s + 1, n):
            if mat[i][s]:
                q = mat[i][s] // mat[s][s]
                row_op(i, s, q)
                if mat[i][s]:
                    dirty = True
        for j in range(s + 1, m):
            if mat[s][j]:
                q = mat[s][j] // mat[s][s]
                col_op(j, s, q)
                if mat[s][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide every remaining entry for the divisibility chain
        piv = mat[s][s]
        bad = None
        for i in range(s + 1, n):
            for j in range(s + 1, m):
                if mat[i][j] % piv:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(s, bad, -1)  # fold the offending row in and redo
            continue
        s += 1

    diag = [abs(mat[i][i]) if i < m else 0 for i in range(min(n, m))]
    # normalize signs so left*A*right has the nonnegative diagonal
    for i in range(min(n, m)):
        if i < n and mat[i][i] < 0:
            for t in range(m):
                mat[i][t] = -mat[i][t]
            for t in range(n):
                left[i][t] = -left[i][t]
    res = SnfResult(diag, left, right)
    check = imat_mul(imat_mul(left, a), right)
    for i in range(n):
        for j in range(m):
            expect = diag[i] if i == j and i < len(diag) else 0
            assert check[i][j] == expect, "SNF transform verification failed"
    for i in range(len(diag) - 1):
        if diag[i] and diag[i + 1] % diag[i]:
            raise AssertionError("SNF divisibility chain violated")
        if diag[i] == 0 and diag[i + 1] != 0:
            raise AssertionError("SNF zero ordering violated")
    return res
