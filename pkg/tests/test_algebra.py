"""Fields, polynomials, matrices, SNF, characteristic polynomials."""
import random

import pytest

from liecheck import poly as P
from liecheck.field import FieldSpec, field_make, is_prime, least_prime_in_progression
from liecheck.matrix import (
    MatSpace,
    imat_charpoly,
    imat_det,
    imat_inv_unimodular,
    imat_mul,
    smith_normal_form,
)


def test_prime_field():
    f = field_make(3, 1)
    assert f.q == 3
    assert f.add(2, 2) == 1
    assert f.mul(2, 2) == 1
    assert f.inv(2) == 2


def test_field_of_size_9_frobenius_order_2():
    f = field_make(3, 2)
    assert f.q == 9
    for a in range(9):
        assert f.frobenius(a) == f.pw(a, 3)
        assert f.frobenius(f.frobenius(a)) == a
    # some element must move under Frobenius
    assert any(f.frobenius(a) != a for a in range(9))


def test_fourth_root_of_unity_in_f17():
    """Exhaustive-scan oracle: 4 | 17-1 so a 4th root of unity exists."""
    f = field_make(17, 1)
    roots = [a for a in range(1, 17) if f.mul(a, a) == 16]  # w^2 = -1
    assert roots, "expected an element with square -1"
    w = f.root_of_unity(4)
    assert f.mul(w, w) == f.neg(1)
    assert w == min(roots)


def test_field_rejects_bad_input():
    with pytest.raises(ValueError):
        FieldSpec(4, 1)
    with pytest.raises(ValueError):
        FieldSpec(2, 21)  # 2^21 over the cap


def test_nonzero_elements_have_order_dividing_q_minus_1():
    for (p, k) in [(2, 2), (3, 2), (5, 1), (2, 3)]:
        f = field_make(p, k)
        for a in range(1, f.q):
            assert f.pw(a, f.q - 1) == 1
            assert (f.q - 1) % f.element_order(a) == 0


def test_modulus_deterministic_and_irreducible():
    f1 = FieldSpec(2, 2)
    f2 = FieldSpec(2, 2)
    assert f1.modulus == f2.modulus
    # x^2+x+1 is the only irreducible quadratic over F2
    assert f1.modulus == (1, 1, 1)


def test_prime_helpers():
    assert is_prime(2521)
    assert not is_prime(2520)
    assert least_prime_in_progression(4, 10) == 13


def test_cyclotomic_small():
    assert P.cyclotomic(1) == (-1, 1)
    assert P.cyclotomic(2) == (1, 1)
    assert P.cyclotomic(4) == (1, 0, 1)
    assert P.cyclotomic(6) == (1, -1, 1)
    assert P.cyclotomic(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_product_is_x_n_minus_1():
    for n in (6, 8, 12):
        prod = P.ONE
        for d in range(1, n + 1):
            if n % d == 0:
                prod = P.mul(prod, P.cyclotomic(d))
        assert prod == P.poly([-1] + [0] * (n - 1) + [1])


def test_cyclotomic_factor_roundtrip():
    mults = {1: 2, 2: 3, 4: 1, 6: 2}
    f = P.expand_cyclotomic(mults)
    assert P.cyclotomic_factor(f) == mults
    with pytest.raises(ValueError):
        P.cyclotomic_factor((2, 1))  # x+2 is not cyclotomic


def test_matspace_mul_inverse_f4():
    f = field_make(2, 2)
    sp = MatSpace(f, 3)
    rng = random.Random(7)
    for _ in range(25):
        rows = [[rng.randrange(4) for _ in range(3)] for _ in range(3)]
        key = sp.key_from_codes(rows)
        if not sp.is_invertible(key):
            continue
        ki = sp.inv(key)
        assert sp.mul(key, ki) == sp.identity
        assert sp.mul(ki, key) == sp.identity


def test_matspace_frobenius_is_ring_hom():
    f = field_make(2, 2)
    sp = MatSpace(f, 2)
    rng = random.Random(3)
    for _ in range(20):
        a = sp.key_from_codes([[rng.randrange(4) for _ in range(2)] for _ in range(2)])
        b = sp.key_from_codes([[rng.randrange(4) for _ in range(2)] for _ in range(2)])
        assert sp.frobenius(sp.mul(a, b)) == sp.mul(sp.frobenius(a), sp.frobenius(b))
        assert sp.frobenius(sp.frobenius(a)) == a


def test_matspace_det_multiplicative_f9():
    f = field_make(3, 2)
    sp = MatSpace(f, 2)
    rng = random.Random(11)
    for _ in range(20):
        a = sp.key_from_codes([[rng.randrange(9) for _ in range(2)] for _ in range(2)])
        b = sp.key_from_codes([[rng.randrange(9) for _ in range(2)] for _ in range(2)])
        assert sp.det_code(sp.mul(a, b)) == f.mul(sp.det_code(a), sp.det_code(b))


def test_snf_identity():
    r = smith_normal_form([[1, 0], [0, 1]])
    assert r.diagonal == [1, 1]


def test_snf_already_diagonal():
    r = smith_normal_form([[2, 0], [0, 4]])
    assert r.diagonal == [2, 4]


def test_snf_3113():
    """Oracle: det = 8, and gcd of entries is 1, so invariant factors (1, 8)."""
    r = smith_normal_form([[3, 1], [1, 3]])
    assert r.diagonal == [1, 8]


def test_snf_zero_rows_and_product_matches_det():
    r = smith_normal_form([[2, 4], [1, 2]])
    assert r.diagonal == [1, 0]
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(1, 5)
        a = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)]
        res = smith_normal_form(a)
        prod = 1
        for d in res.diagonal:
            prod *= d
        assert prod == abs(imat_det(a))
        assert imat_det(res.left) in (1, -1)
        assert imat_det(res.right) in (1, -1)


def test_charpoly_identity_and_rotation():
    assert imat_charpoly([[1, 0], [0, 1]]) == (1, -2, 1)  # (x-1)^2
    assert imat_charpoly([[0, -1], [1, 0]]) == (1, 0, 1)  # x^2+1 = Phi_4


def test_cayley_hamilton_random_4x4():
    rng = random.Random(2024)
    for _ in range(12):
        a = [[rng.randrange(-3, 4) for _ in range(4)] for _ in range(4)]
        cp = imat_charpoly(a)
        acc = [[0] * 4 for _ in range(4)]
        power = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
        for c in cp:
            for i in range(4):
                for j in range(4):
                    acc[i][j] += c * power[i][j]
            power = imat_mul(power, a)
        assert all(all(v == 0 for v in row) for row in acc)


def test_unimodular_inverse():
    a = [[1, 2], [1, 3]]
    ai = imat_inv_unimodular(a)
    assert imat_mul(a, ai) == [[1, 0], [0, 1]]
