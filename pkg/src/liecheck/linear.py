"""Stock matrix groups: SL_n / GL_n over small fields, permutation matrices."""
from __future__ import annotations

import functools

from .field import FieldSpec, field_make
from .groups import FinGroup, GroupAutomorphism, MatrixKind
from .matrix import MatSpace


@functools.lru_cache(maxsize=None)
def mat_space(p: int, k: int, n: int) -> MatSpace:
    return MatSpace(field_make(p, k), n)


def _field_basis_codes(f: FieldSpec) -> list[int]:
    return [f.from_coeffs([1 if i == j else 0 for i in range(f.k)]) for j in range(f.k)]


def sl_group(n: int, p: int, k: int = 1) -> FinGroup:
    """SL_n(q) generated by elementary transvections over a field basis."""
    sp = mat_space(p, k, n)
    f = sp.field
    gens = []
    for c in _field_basis_codes(f):
        for (i, j) in [(a, b) for a in range(n) for b in range(n) if a != b]:
            rows = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
            rows[i][j] = c
            gens.append(sp.key_from_codes(rows))
    return FinGroup.generate(MatrixKind(sp), gens)


def gl_group(n: int, p: int, k: int = 1) -> FinGroup:
    """GL_n(q) = SL_n(q) plus diag(g, 1, ..., 1) for g a generator of F_q^x."""
    sp = mat_space(p, k, n)
    f = sp.field
    sl = sl_group(n, p, k)
    g = f.root_of_unity(f.q - 1) if f.q > 2 else 1
    rows = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
    rows[0][0] = g
    return FinGroup.generate(MatrixKind(sp), sl.gens + [sp.key_from_codes(rows)])


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def sl_order(n: int, q: int) -> int:
    return gl_order(n, q) // (q - 1)


def perm_matrix_group(perms: list[tuple[int, ...]], p: int = 2) -> FinGroup:
    """Group generated by permutation matrices (images given 0-based)."""
    n = len(perms[0])
    sp = mat_space(p, 1, n)
    gens = []
    for perm in perms:
        rows = [[0] * n for _ in range(n)]
        for i, j in enumerate(perm):
            rows[j][i] = 1
        gens.append(sp.key_from_codes(rows))
    return FinGroup.generate(MatrixKind(sp), gens)


def symmetric_matrix_group(n: int, p: int = 2) -> FinGroup:
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return perm_matrix_group(gens, p)


def frobenius_auto(group: FinGroup, iterations: int = 1) -> GroupAutomorphism:
    """Entrywise x -> x^(p^iterations)."""
    sp = group.kind.space
    return GroupAutomorphism(lambda key: sp.frobenius(key, iterations),
                             f"frob^{iterations}")


def power_frobenius_auto(group: FinGroup, q1: int) -> GroupAutomorphism:
    """Entrywise x -> x^q1 for q1 = p^j a power of the characteristic."""
    sp = group.kind.space
    p = sp.field.p
    j = 0
    qq = 1
    while qq < q1:
        qq *= p
        j += 1
    if qq != q1:
        raise ValueError("q1 must be a power of the field characteristic")
    return GroupAutomorphism(lambda key: sp.frobenius(key, j), f"frob_q{q1}")


def transpose_inverse_auto(group: FinGroup) -> GroupAutomorphism:
    sp = group.kind.space
    return GroupAutomorphism(lambda key: sp.transpose(sp.inv(key)), "transpose-inverse")


def diag_key(sp: MatSpace, codes: list[int]) -> bytes:
    rows = [[codes[i] if i == j else 0 for j in range(sp.n)] for i in range(sp.n)]
    return sp.key_from_codes(rows)
