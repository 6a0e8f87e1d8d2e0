"""Exact character tables (Dixon's modular method) and Clifford theory.

Character values are stored in F_ell for a verification prime
ell ≡ 1 (mod exp G), ell > 2*sqrt(|G|); degrees are recovered exactly.
Within one table, distinct irreducibles stay distinct mod ell (ell does not
divide |G|), so inertia groups, fixed counts and extension existence
computed mod ell agree with the complex values.  Cross-group comparisons
(restriction, descent counts) always put both tables over a common ell;
row matching is then stable under the Galois ambiguity of the embedding.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .field import least_prime_in_progression
from .groups import (
    ClassData,
    FinGroup,
    GroupAutomorphism,
    cyclic_extension,
    orbits_under_conjugation,
)

CHAR_TABLE_CAP = 200_000
CLASS_CAP = 200

_table_lock = threading.Lock()


# ---------------------------------------------------------------------------
# Linear algebra mod ell
# ---------------------------------------------------------------------------

def _rref_mod(m: np.ndarray, ell: int):
    m = m % ell
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i, c] % ell:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, ell) % ell
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % ell
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def _nullspace_mod(m: np.ndarray, ell: int) -> np.ndarray:
    """Columns form a basis of ker(m) mod ell."""
    rows, cols = m.shape
    rref, pivots = _rref_mod(m.copy(), ell)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[fc, bi] = 1
        for ri, pc in enumerate(pivots):
            basis[pc, bi] = (-rref[ri, fc]) % ell
    return basis


def _charpoly_mod(m: np.ndarray, ell: int) -> np.ndarray:
    """Characteristic polynomial mod ell via Hessenberg reduction."""
    h = m.copy() % ell
    n = h.shape[0]
    for c in range(n - 2):
        piv = None
        for r in range(c + 1, n):
            if h[r, c] % ell:
                piv = r
                break
        if piv is None:
            continue
        if piv != c + 1:
            h[[c + 1, piv]] = h[[piv, c + 1]]
            h[:, [c + 1, piv]] = h[:, [piv, c + 1]]
        inv = pow(int(h[c + 1, c]), -1, ell)
        for r in range(c + 2, n):
            if h[r, c]:
                f = h[r, c] * inv % ell
                h[r] = (h[r] - f * h[c + 1]) % ell
                h[:, c + 1] = (h[:, c + 1] + f * h[:, r]) % ell
    # p_k(x) = charpoly of leading k x k Hessenberg block
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        # p_k = (x - h[k-1,k-1]) p_{k-1} - sum_{i} h[i-1,k-1] (prod b) p_{i-1}
        pk = np.zeros(k + 1, dtype=np.int64)
        prev = polys[k - 1]
        pk[1:1 + len(prev)] = prev
        pk[: len(prev)] = (pk[: len(prev)] - h[k - 1, k - 1] * prev) % ell
        run = 1
        for i in range(k - 1, 0, -1):
            run = run * h[i, i - 1] % ell
            coeff = h[i - 1, k - 1] * run % ell
            if coeff:
                pi = polys[i - 1]
                pk[: len(pi)] = (pk[: len(pi)] - coeff * pi) % ell
        polys.append(pk % ell)
    return polys[n]


def _roots_mod(coeffs: np.ndarray, ell: int) -> list[int]:
    xs = np.arange(ell, dtype=np.int64)
    acc = np.zeros(ell, dtype=np.int64)
    for c in reversed(coeffs.tolist()):
        acc = (acc * xs + c) % ell
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def _restrict_action(a: np.ndarray, basis: np.ndarray, ell: int) -> np.ndarray:
    """d x d matrix of the action of `a` on the column span of `basis`."""
    image = a @ basis % ell
    _, pivots = _rref_mod(basis.T.copy(), ell)
    rows = pivots  # independent coordinate rows
    sq = basis[rows, :] % ell
    n = sq.shape[0]
    aug = np.concatenate([sq, image[rows, :]], axis=1)
    rref, piv = _rref_mod(aug, ell)
    assert piv[: n] == list(range(n)), "basis rows not independent"
    return rref[:, n:] % ell


# ---------------------------------------------------------------------------
# CharTable
# ---------------------------------------------------------------------------

@dataclass
class CharTable:
    group: FinGroup
    ell: int
    classes: ClassData
    values: np.ndarray  # (n_irr, n_classes) mod ell
    degrees: list[int]

    @property
    def n_irr(self) -> int:
        return len(self.degrees)

    def row(self, t: int) -> np.ndarray:
        return self.values[t]

    def inner_product(self, u: np.ndarray, v: np.ndarray) -> int:
        """<u, v> = |G|^{-1} sum |C| u(C) v(C^{-1}) in F_ell."""
        ell = self.ell
        sizes = np.array(self.classes.sizes, dtype=np.int64)
        vc = v[self.classes.inverse_class]
        s = int((sizes * u % ell * vc).sum() % ell)
        return s * pow(self.group.order % ell, -1, ell) % ell

    def row_index(self, vec: np.ndarray) -> Optional[int]:
        for t in range(self.n_irr):
            if np.array_equal(self.values[t] % self.ell, vec % self.ell):
                return t
        return None

    def fixed_rows(self, class_perms: Sequence[Sequence[int]]) -> list[int]:
        out = []
        for t in range(self.n_irr):
            if all(np.array_equal(self.values[t], self.values[t][list(p)])
                   for p in class_perms):
                out.append(t)
        return out

    def verify_orthogonality(self) -> None:
        ell = self.ell
        x = self.values % ell
        sizes = np.array(self.classes.sizes, dtype=np.int64)
        xs = x[:, self.classes.inverse_class]
        gram = (x * sizes) @ xs.T % ell
        expect = (self.group.order % ell) * np.eye(self.n_irr, dtype=np.int64) % ell
        assert np.array_equal(gram, expect), "row orthogonality fails"
        # column orthogonality: sum_t X[t,m] X[t,m'^*] = delta |centralizer|
        col = x.T @ xs % ell
        cent = np.array([self.group.order // s % ell for s in self.classes.sizes],
                        dtype=np.int64)
        expect2 = np.diag(cent) % ell
        assert np.array_equal(col % ell, expect2), "column orthogonality fails"


def _class_elements(g: FinGroup, ci: int) -> list[bytes]:
    cls = g.conjugacy_classes()
    rep = cls.reps[ci]
    gens = g.ensure_gens()
    pairs = [(g.inv(x), x) for x in gens]
    mul = g.kind.mul
    orbit = [rep]
    seen = {rep}
    qi = 0
    while qi < len(orbit):
        x = orbit[qi]
        qi += 1
        for gi, gg in pairs:
            y = mul(mul(gi, x), gg)
            if y not in seen:
                seen.add(y)
                orbit.append(y)
    assert len(orbit) == cls.sizes[ci]
    return orbit


def _class_matrix(g: FinGroup, ci: int) -> np.ndarray:
    """(A_i)[j, m] = #{x in C_i : x^{-1} z_m in C_j}."""
    cls = g.conjugacy_classes()
    k = cls.n
    a = np.zeros((k, k), dtype=np.int64)
    mul = g.kind.mul
    class_of = cls.class_of
    reps = cls.reps
    for x in _class_elements(g, ci):
        xi = g.inv(x)
        for m in range(k):
            j = class_of[mul(xi, reps[m])]
            a[j, m] += 1
    return a


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def canonical_ell(*groups: FinGroup) -> int:
    e = 1
    size = 0
    for g in groups:
        eg = g.exponent()
        e = e * eg // math.gcd(e, eg)
        size = max(size, g.order)
    return least_prime_in_progression(e, 2 * math.isqrt(size) + 1)


def character_table(g: FinGroup, ell: Optional[int] = None,
                    cap: int = CHAR_TABLE_CAP, class_cap: int = CLASS_CAP) -> CharTable:
    if g.order > cap:
        raise ValueError(f"group order {g.order} exceeds character-table cap {cap}")
    if ell is None:
        ell = canonical_ell(g)
    with _table_lock:
        if ell in g._tables:
            return g._tables[ell]
    cls = g.conjugacy_classes()
    k = cls.n
    if k > class_cap:
        raise ValueError(f"class count {k} exceeds cap {class_cap}")

    spaces = [np.eye(k, dtype=np.int64)]
    order_by_size = sorted(range(1, k), key=lambda i: cls.sizes[i])
    for ci in order_by_size:
        if all(s.shape[1] == 1 for s in spaces):
            break
        a = _class_matrix(g, ci)
        new_spaces = []
        for basis in spaces:
            if basis.shape[1] == 1:
                new_spaces.append(basis)
                continue
            m = _restrict_action(a, basis, ell)
            cp = _charpoly_mod(m, ell)
            for root in _roots_mod(cp, ell):
                d = m.shape[0]
                ker = _nullspace_mod((m - root * np.eye(d, dtype=np.int64)) % ell, ell)
                if ker.shape[1]:
                    new_spaces.append(basis @ ker % ell)
        assert sum(s.shape[1] for s in new_spaces) == k, "eigen splitting lost dimensions"
        spaces = new_spaces
    assert all(s.shape[1] == 1 for s in spaces), "class algebra failed to split"

    sizes = np.array(cls.sizes, dtype=np.int64)
    inv_sizes = np.array([pow(int(s % ell), -1, ell) for s in cls.sizes], dtype=np.int64)
    omegas = []
    for s in spaces:
        v = s[:, 0] % ell
        assert v[0] % ell != 0, "eigenvector vanishes at the identity class"
        v = v * pow(int(v[0]), -1, ell) % ell
        omegas.append(v)

    divisors = _divisors(g.order)
    root_bound = math.isqrt(g.order)
    values = np.zeros((k, k), dtype=np.int64)
    degrees = []
    for t, v in enumerate(omegas):
        vi = v[cls.inverse_class]
        s = int((v * vi % ell * inv_sizes).sum() % ell)
        deg_sq = g.order % ell * pow(s, -1, ell) % ell
        cands = [d for d in divisors if d <= root_bound and d * d % ell == deg_sq]
        assert len(cands) == 1, f"ambiguous degree recovery: {cands}"
        deg = cands[0]
        degrees.append(deg)
        values[t] = v * deg % ell * inv_sizes % ell
    assert sum(d * d for d in degrees) == g.order, "sum of squared degrees mismatch"
    assert all(g.order % d == 0 for d in degrees), "degree does not divide group order"

    order = sorted(range(k), key=lambda t: (degrees[t], [int(x) for x in values[t]]))
    table = CharTable(g, ell, cls, values[order] % ell, [degrees[t] for t in order])
    table.verify_orthogonality()
    with _table_lock:
        g._tables[ell] = table
    return table


# ---------------------------------------------------------------------------
# Clifford-theory toolkit
# ---------------------------------------------------------------------------

def _check_normal(x: FinGroup, y: FinGroup) -> None:
    if not x.is_subgroup(y):
        raise ValueError("Y is not contained in X")
    if not x.is_normal(y):
        raise ValueError("Y is not normal in X")


def conjugate_row(table_y: CharTable, row: np.ndarray, x_key: bytes) -> np.ndarray:
    """Row of theta^x, theta^x(y) = theta(x y x^{-1})."""
    y = table_y.group
    cls = table_y.classes
    perm = [cls.class_of[y.mul(y.mul(x_key, r), y.inv(x_key))] for r in cls.reps]
    return row[perm]


def inertia_group(x: FinGroup, y: FinGroup, theta_idx: int,
                  ell: Optional[int] = None) -> FinGroup:
    """X_theta = {x in X : theta^x = theta} for theta in Irr(Y), Y normal in X."""
    _check_normal(x, y)
    ell = ell or canonical_ell(x)
    ty = character_table(y, ell)
    row = ty.row(theta_idx)
    reps = x.left_transversal(y)
    stab = [r for r in reps if np.array_equal(conjugate_row(ty, row, r), row)]
    elems = [x.mul(r, s) for r in stab for s in y.elements]
    return FinGroup.from_elements(x.kind, elems)


def quotient_is_cyclic(x: FinGroup, y: FinGroup) -> bool:
    n = x.order // y.order
    if n == 1:
        return True
    for r in x.left_transversal(y):
        j, p = 1, r
        while p not in y.index:
            p = x.mul(p, r)
            j += 1
        if j == n:
            return True
    return False


def restriction_row(table_x: CharTable, table_y: CharTable, t: int) -> np.ndarray:
    """Values of row t of X's table on Y's classes."""
    cx = table_x.classes
    return np.array([table_x.values[t][cx.class_of[rep]]
                     for rep in table_y.classes.reps], dtype=np.int64)


def extension_exists(x: FinGroup, y: FinGroup, theta_idx: int,
                     ell: Optional[int] = None, cap: int = CHAR_TABLE_CAP):
    """Does theta in Irr(Y) extend to its inertia group in X?

    Returns (bool, witness_row_index_in_table(X_theta)).  For cyclic
    X_theta/Y the extension theorem guarantees True; asserted.
    """
    _check_normal(x, y)
    ell = ell or canonical_ell(x)
    ty = character_table(y, ell, cap=cap)
    deg = ty.degrees[theta_idx]
    if deg == 1 and np.all(ty.row(theta_idx) % ell == 1):
        return True, "trivial"  # inflation along X -> X/Y
    xt = inertia_group(x, y, theta_idx, ell)
    if xt.order == y.order:
        return True, theta_idx
    txt = character_table(xt, ell, cap=cap)
    row = ty.row(theta_idx)
    witness = None
    for t in range(txt.n_irr):
        if txt.degrees[t] != deg:
            continue
        if np.array_equal(restriction_row(txt, ty, t), row):
            witness = t
            break
    found = witness is not None
    if quotient_is_cyclic(xt, y):
        assert found, "cyclic-quotient extension must exist"
    return found, witness


def fixed_irr_count(g: FinGroup, autos: Sequence[GroupAutomorphism],
                    ell: Optional[int] = None, cap: int = CHAR_TABLE_CAP,
                    class_cap: int = CLASS_CAP) -> int:
    """Number of irreducibles fixed by every automorphism in the list."""
    table = character_table(g, ell, cap=cap, class_cap=class_cap)
    perms = [a.class_perm(g) for a in autos]
    return len(table.fixed_rows(perms))


def irr_count(g: FinGroup, ell: Optional[int] = None) -> int:
    return character_table(g, ell).n_irr


def coset_basis_check(x: FinGroup, y: FinGroup, x_key: bytes,
                      ell: Optional[int] = None):
    """|xY/~_X| = |xY/~_Y| = |Irr(Y)^X| for Y normal, X/Y cyclic = <xY>.

    Returns the triple; the caller asserts equality.
    """
    _check_normal(x, y)
    gen = x.subgroup(y.ensure_gens() + [x_key])
    if gen.order != x.order:
        raise ValueError("<Y, x> is not all of X")
    n = x.order // y.order
    p, j = x_key, 1
    while p not in y.index:
        p = x.mul(p, x_key)
        j += 1
    if j != n:
        raise ValueError("X/Y is not cyclic generated by xY")
    coset = [x.mul(x_key, s) for s in y.elements]
    n_x = len(orbits_under_conjugation(x.kind, coset, x.ensure_gens()))
    n_y = len(orbits_under_conjugation(x.kind, coset, y.ensure_gens()))
    n_irr = fixed_irr_count(y, [GroupAutomorphism.inner(x, x_key)], ell)
    return n_x, n_y, n_irr


def brauer_permutation_check(a: FinGroup, sigma: GroupAutomorphism,
                             ell: Optional[int] = None) -> bool:
    """|Irr(A)^sigma| == |A^sigma| for abelian A (Brauer permutation lemma)."""
    if not a.is_abelian():
        raise ValueError("group must be abelian")
    fixed_elts = sum(1 for k in a.elements if sigma(k) == k)
    return fixed_irr_count(a, [sigma], ell) == fixed_elts


# ---------------------------------------------------------------------------
# Wreath-product maximal extendibility (abelian base)
# ---------------------------------------------------------------------------

def wreath_extension_check(m: int, n: int, base_orders: Sequence[int],
                           blocks: Sequence[Sequence[int]],
                           ell: Optional[int] = None) -> bool:
    """Every chi in Irr(X_0 x| K) extends to its inertia group in
    N_{C_m wr S_n}(X_0 x| K); X_0 the product of cyclic base subgroups,
    K the Young subgroup on `blocks`."""
    from .groups import wreath_group, wreath_product_subgroup

    if n > 4:
        raise ValueError("wreath check capped at n <= 4")
    seen = set()
    for block in blocks:
        for i in block:
            if i in seen:
                raise ValueError("blocks must be disjoint")
            seen.add(i)
        if len({base_orders[i] for i in block}) > 1:
            raise ValueError("hypothesis not met: block mixes base subgroups")
    w = wreath_group(m, n)
    x = wreath_product_subgroup(m, n, base_orders, blocks)
    if x.order == 1:
        return True
    nx = w.normalizer_of(x)
    ell = ell or canonical_ell(w)
    tx = character_table(x, ell)
    for t in range(tx.n_irr):
        ok, _ = extension_exists(nx, x, t, ell)
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# Graph-automorphism trace argument (extension count check)
# ---------------------------------------------------------------------------

def gamma_trace_check(gbig: FinGroup, f1: GroupAutomorphism, f1_order: int,
                      gamma: GroupAutomorphism, gsmall: FinGroup,
                      cap: int = 600_000) -> dict:
    """Verify the counting hypothesis |Irr(G)^<F1,gamma>| = |Irr(G^F1)^gamma|
    by enumeration, then verify m_c = 0: every jointly invariant character
    has a gamma-invariant extension to G x| <F1> (explicit search)."""
    for g in gbig.ensure_gens():
        if f1(gamma(g)) != gamma(f1(g)):
            raise ValueError("F1 and gamma do not commute")
    big_ell = canonical_ell(gbig, gsmall)
    n_big = fixed_irr_count(gbig, [f1, gamma], big_ell, cap=cap)
    n_small = fixed_irr_count(gsmall, [gamma])
    counts_equal = n_big == n_small

    ext = cyclic_extension(gbig, f1, f1_order)
    kind = ext.kind
    gamma_ext = GroupAutomorphism(
        lambda k: kind.join(gamma(kind.split(k)[0]), kind.split(k)[1]), "gamma-ext")
    ell = canonical_ell(ext, gbig)
    t_ext = character_table(ext, ell, cap=cap)
    t_big = character_table(gbig, ell, cap=cap)
    perm_f1 = f1.class_perm(gbig)
    perm_gamma = gamma.class_perm(gbig)
    joint = t_big.fixed_rows([perm_f1, perm_gamma])
    ext_cls = ext.conjugacy_classes()
    big_rep_class = [ext_cls.class_of[kind.join(rep, kind.top.identity)]
                     for rep in t_big.classes.reps]
    perm_gamma_ext = gamma_ext.class_perm(ext)
    m_c = 0
    for t in joint:
        row = t_big.row(t)
        deg = t_big.degrees[t]
        has_invariant_ext = False
        found_ext = False
        for s in range(t_ext.n_irr):
            if t_ext.degrees[s] != deg:
                continue
            if np.array_equal(t_ext.values[s][big_rep_class], row):
                found_ext = True
                if np.array_equal(t_ext.values[s], t_ext.values[s][perm_gamma_ext]):
                    has_invariant_ext = True
                    break
        assert found_ext, "F1-invariant character must extend to the cyclic extension"
        if not has_invariant_ext:
            m_c += 1
    return {
        "count_big": n_big,
        "count_small": n_small,
        "counts_equal": counts_equal,
        "m_c": m_c,
        "ok": counts_equal and m_c == 0,
    }
