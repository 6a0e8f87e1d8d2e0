"""Group engine: closure, classes, twisted conjugacy, normalizers, CD lemma."""
import pytest

from liecheck.field import field_make
from liecheck.groups import (
    FinGroup,
    GroupAutomorphism,
    GroupTooLarge,
    MatrixKind,
    abelian_group,
    all_subgroups,
    cdr_decomposition_check,
    cyclic_extension,
    cyclic_group,
    direct_product,
    elementary_abelian_subgroups,
    index_p_subgroups,
    semidirect_product,
    twisted_classes,
    wreath_group,
)
from liecheck.linear import (
    gl_group,
    gl_order,
    mat_space,
    perm_matrix_group,
    sl_group,
    sl_order,
    symmetric_matrix_group,
)
from liecheck.matrix import MatSpace


def test_order_two_matrix_group():
    sp = mat_space(3, 1, 2)
    g = FinGroup.generate(MatrixKind(sp), [sp.key_from_codes([[0, 1], [1, 0]])])
    assert g.order == 2


def test_gl2_3_order_48():
    g = gl_group(2, 3)
    assert g.order == (9 - 1) * (9 - 3) == gl_order(2, 3) == 48


def test_sl2_orders():
    assert sl_group(2, 3).order == 24
    assert sl_group(2, 2, 2).order == sl_order(2, 4) == 60
    assert sl_group(2, 3, 2).order == sl_order(2, 9) == 720


def test_closure_bound_failure():
    with pytest.raises(GroupTooLarge):
        sl_group_big = sl_group(2, 5)
        FinGroup.generate(sl_group_big.kind, sl_group_big.gens, bound=10)


def test_s3_classes_as_permutation_matrices():
    g = symmetric_matrix_group(3)
    assert g.order == 6
    cls = g.conjugacy_classes()
    assert sorted(cls.sizes) == [1, 2, 3]


def test_quaternion_classes():
    # Q8 inside SL2(3): generated by [[0,-1],[1,0]] and [[1,1],[1,-1]]/sqrt... use
    # the standard matrix model over F_3: i = [[0,-1],[1,0]], j = [[1,1],[1,-1]]
    sp = mat_space(3, 1, 2)
    i = sp.key_from_codes([[0, 2], [1, 0]])
    j = sp.key_from_codes([[1, 1], [1, 2]])
    g = FinGroup.generate(MatrixKind(sp), [i, j])
    assert g.order == 8
    assert g.conjugacy_classes().n == 5


def test_gl3_2_six_classes():
    g = sl_group(3, 2)  # SL3(2) = GL3(2), order 168
    assert g.order == 168
    assert g.conjugacy_classes().n == 6


def test_class_equation_various():
    for g in (symmetric_matrix_group(4), sl_group(2, 5), wreath_group(2, 3)):
        cls = g.conjugacy_classes()
        assert sum(cls.sizes) == g.order


def test_twisted_classes_identity_is_conjugacy():
    g = symmetric_matrix_group(3)
    t = twisted_classes(g, GroupAutomorphism.identity())
    assert t.count == g.conjugacy_classes().n


def test_twisted_classes_c3_by_transposition():
    # C3 <= S3, twisted by conjugation with a transposition: one class
    s3 = symmetric_matrix_group(3)
    c3 = s3.subgroup([k for k in s3.elements if s3.element_order(k) == 3][:1])
    assert c3.order == 3
    transp = next(k for k in s3.elements if s3.element_order(k) == 2)
    sigma = GroupAutomorphism.inner(s3, transp)
    assert twisted_classes(c3, sigma).count == 1


def test_twisted_classes_abelian_frobenius():
    # F_9^x cyclic of order 8 under the cube map: classes = fixed points = 2
    c8 = cyclic_group(8)
    kind = c8.kind
    sigma = GroupAutomorphism(lambda k: kind.encode((kind.decode(k)[0] * 3,)), "cube")
    assert twisted_classes(c8, sigma).count == 2


def test_coset_reformulation_on_small_groups():
    """h -> hc carries ~_sigma classes to H-conjugacy classes of the coset Hc."""
    from liecheck.groups import orbits_under_conjugation

    cases = []
    s3 = symmetric_matrix_group(3)
    transp = next(k for k in s3.elements if s3.element_order(k) == 2)
    c3 = s3.subgroup([k for k in s3.elements if s3.element_order(k) == 3][:1])
    cases.append((c3, GroupAutomorphism.inner(s3, transp), 2))
    g48 = gl_group(2, 3)
    sl = sl_group(2, 3)
    t = next(k for k in g48.elements if k not in sl.index)
    cases.append((sl, GroupAutomorphism.inner(g48, t), 2))
    for h, sigma, r in cases:
        ext = cyclic_extension(h, sigma, r)
        assert ext.order == h.order * r
        tw = twisted_classes(h, sigma)
        kind = ext.kind
        coset = [kind.join(x, kind.top.encode((1,))) for x in h.elements]
        h_in_ext = [kind.join(x, kind.top.encode((0,))) for x in h.ensure_gens()]
        orbits = orbits_under_conjugation(kind, coset, h_in_ext)
        assert len(orbits) == tw.count


def test_normalizer_basics():
    s3 = symmetric_matrix_group(3)
    assert s3.normalizer_of(s3).order == 6
    c3 = s3.subgroup([k for k in s3.elements if s3.element_order(k) == 3][:1])
    assert s3.normalizer_of(c3).order == 6  # N_S3(C3) = S3
    s4 = symmetric_matrix_group(4)
    # N_S4(<(12)>) has order 4
    transp = perm_matrix_group([(1, 0, 2, 3)]).elements[1]
    sub = s4.subgroup([transp])
    assert s4.normalizer_of(sub).order == 4


def test_centralizer_and_center():
    q8_sp = mat_space(3, 1, 2)
    i = q8_sp.key_from_codes([[0, 2], [1, 0]])
    j = q8_sp.key_from_codes([[1, 1], [1, 2]])
    q8 = FinGroup.generate(MatrixKind(q8_sp), [i, j])
    assert q8.center().order == 2


def test_automorphism_from_gen_images_and_class_perm():
    c4 = cyclic_group(4)
    kind = c4.kind
    inv_map = GroupAutomorphism.from_gen_images(
        c4, {c4.gens[0]: kind.encode((3,))}, "inv")
    assert inv_map.validate(c4)
    perm = inv_map.class_perm(c4)
    assert sorted(perm) == [0, 1, 2, 3]
    assert perm[1] == 3 or perm[3] == 1


def test_direct_and_semidirect_products():
    a = cyclic_group(3)
    b = cyclic_group(4)
    assert direct_product(a, b).order == 12
    # S3 as C3 x| C2 with inversion
    c3, c2 = cyclic_group(3), cyclic_group(2)

    def act(h_key, n_key):
        (i,) = c2.kind.decode(h_key)
        (v,) = c3.kind.decode(n_key)
        return c3.kind.encode((-v if i else v,))

    s3 = semidirect_product(c3, c2, act)
    assert s3.order == 6
    assert not s3.is_abelian()
    assert s3.conjugacy_classes().n == 3


def test_wreath_group_orders():
    assert wreath_group(2, 2).order == 8
    assert wreath_group(4, 3).order == 4 ** 3 * 6 == 384
    assert wreath_group(3, 3).order == 162


def test_cyclic_extension_and_element_orders():
    sl = sl_group(2, 2, 2)  # SL2(4)
    from liecheck.linear import frobenius_auto

    fr = frobenius_auto(sl)
    ext = cyclic_extension(sl, fr, 2)
    assert ext.order == 120
    assert ext.conjugacy_classes().n > 0


def test_sylow_and_elementary_abelian():
    s4 = symmetric_matrix_group(4)
    syl2 = s4.sylow_subgroup(2)
    assert syl2.order == 8
    syl3 = s4.sylow_subgroup(3)
    assert syl3.order == 3
    v4s = elementary_abelian_subgroups(s4, 2, 2)
    assert len(v4s) == 4  # the normal V4 plus three <(ab),(cd)>
    assert sum(1 for v in v4s if s4.is_normal(v)) == 1


def test_index_p_subgroups():
    s4 = symmetric_matrix_group(4)
    idx2 = index_p_subgroups(s4, 2)
    assert len(idx2) == 1 and idx2[0].order == 12  # A4 only
    c6 = cyclic_group(6)
    assert len(index_p_subgroups(c6, 2)) == 1
    assert len(index_p_subgroups(c6, 3)) == 1


def test_all_subgroups_s3():
    s3 = symmetric_matrix_group(3)
    subs = all_subgroups(s3)
    assert sorted(s.order for s in subs) == [1, 2, 2, 2, 3, 6]


def test_cdr_trivial_and_exhaustive():
    # C = C3, D = C2 trivial action: CD = C6, every subgroup splits
    c3, c2 = cyclic_group(3), cyclic_group(2)

    def trivial_act(h_key, n_key):
        return n_key

    cd = semidirect_product(c3, c2, trivial_act)
    kind = cd.kind
    c_sub = cd.subgroup([kind.join(c3.gens[0], c2.kind.identity)])
    d_sub = cd.subgroup([kind.join(c3.kind.identity, c2.gens[0])])
    for x in all_subgroups(cd):
        assert cdr_decomposition_check(cd, c_sub, d_sub, x) is True

    # X = D itself (trivial C-part)
    assert cdr_decomposition_check(cd, c_sub, d_sub, d_sub) is True


def test_cdr_sweep_with_inversion_action():
    # C = C3, D = C3 x C2, the C2 factor acting on C by inversion
    c3 = cyclic_group(3)
    d = abelian_group((3, 2))

    def act(h_key, n_key):
        v = d.kind.decode(h_key)
        (x,) = c3.kind.decode(n_key)
        return c3.kind.encode((-x if v[1] % 2 else x,))

    cd = semidirect_product(c3, d, act)
    assert cd.order == 18
    kind = cd.kind
    c_sub = cd.subgroup([kind.join(c3.gens[0], d.kind.identity)])
    d_sub = FinGroup.from_elements(kind, [kind.join(c3.kind.identity, y) for y in d.elements])
    for x in all_subgroups(cd):
        try:
            assert cdr_decomposition_check(cd, c_sub, d_sub, x) is True
        except ValueError as e:
            assert str(e) == "hypothesis not met"
