import json

import numpy as np
import pytest

from conftest import get_table
from oracles import (
    brute_classes,
    brute_normal_subgroups,
    brute_product,
    brute_sl_elements,
)

from classcover.engine import (
    ElementSet,
    automorphism_from_images,
    build_group,
    central_product,
    generated_subgroup,
    inner_automorphism,
    quotient,
    validate_table,
)
from classcover.errors import CapExceededError, PreconditionError
from classcover.lattice import normal_subgroups, residuals
from classcover.specs import parse_spec


def test_build_orders():
    assert get_table("A_5").order == 60
    assert get_table("C_1").order == 1
    assert get_table("tau()").order == 2


def test_sl23_order_vs_brute_count():
    # independent oracle: count 2x2 determinant-1 matrices over F_3
    assert get_table("SL(2,3)").order == len(brute_sl_elements(2, 3))


def test_enumeration_cap():
    with pytest.raises(CapExceededError):
        build_group("A_8", cap=10_000)


def test_group_axioms_sampled():
    for name in ("A_5", "SL(2,3)", "S_4", "prod(S_3,C_2)"):
        validate_table(get_table(name), seed=0, triples=10_000)


def test_classes_against_brute_oracle():
    for name in ("S_4", "SL(2,3)", "D_5", "A_4"):
        table = get_table(name)
        ours = {frozenset(int(i) for i in c.members.indices())
                for c in table.classes()}
        assert ours == set(brute_classes(table))


def test_class_partition_properties():
    for name in ("A_5", "SL(2,5)", "PSL(2,7)"):
        table = get_table(name)
        classes = table.classes()
        assert sum(c.size for c in classes) == table.order
        assert all(table.order % c.size == 0 for c in classes)
        assert classes[0].rep == 0 and classes[0].size == 1
        for c in classes:
            for g in table.gens:
                conj = table.conjugation_by(g)
                assert np.array_equal(np.sort(conj[c.members.indices()]),
                                      c.members.indices())


def test_a5_class_sizes():
    sizes = sorted(c.size for c in get_table("A_5").classes())
    assert sizes == [1, 12, 12, 15, 20]


def test_cyclic_group_classes_singletons():
    assert [c.size for c in get_table("C_5").classes()] == [1] * 5


def test_sl23_unipotent_class_size():
    table = get_table("SL(2,3)")
    i = table.element_by_render("1,1;0,1")
    assert table.classes()[table.class_of(i)].size == 4


def test_normal_subgroups_s4_a5_c4():
    s4 = get_table("S_4")
    assert [n.card for n in normal_subgroups(s4)] == [1, 4, 12, 24]
    assert [n.card for n in normal_subgroups(get_table("A_5"))] == [1, 60]
    assert [n.card for n in normal_subgroups(get_table("C_4"))] == [1, 2, 4]


def test_normal_subgroups_against_brute():
    for name in ("S_4", "A_4", "D_6", "SL(2,3)"):
        table = get_table(name)
        ours = {frozenset(int(i) for i in n.indices())
                for n in normal_subgroups(table)}
        assert ours == set(brute_normal_subgroups(table))


def test_normal_lattice_closure_properties():
    table = get_table("D_12")
    norms = normal_subgroups(table)
    sets = {frozenset(int(i) for i in n.indices()) for n in norms}
    class_ids = table.class_ids()
    for a in sets:
        for b in sets:
            assert (a & b) in sets
        # union of classes
        ids = {int(class_ids[i]) for i in a}
        assert sum(table.classes()[c].size for c in ids) == len(a)


def test_quotient_sl23_center_is_a4_fingerprint():
    table = get_table("SL(2,3)")
    q, proj = quotient(table, table.center_set())
    assert q.order == 12
    assert sorted(c.size for c in q.classes()) == [1, 3, 4, 4]
    # projection is a homomorphism, exhaustively
    for a in range(table.order):
        for b in range(table.order):
            assert proj[table.mul(a, b)] == q.mul(int(proj[a]), int(proj[b]))


def test_quotient_s4_v4_is_s3_fingerprint():
    s4 = get_table("S_4")
    v4 = [n for n in normal_subgroups(s4) if n.card == 4][0]
    q, _ = quotient(s4, v4)
    assert q.order == 6
    assert not q.is_abelian()
    assert s4.order == v4.card * q.order


def test_quotient_by_whole_group_is_trivial():
    s4 = get_table("S_4")
    q, proj = quotient(s4, ElementSet.full(24))
    assert q.order == 1
    assert set(proj.tolist()) == {0}


def test_normal_subgroups_elementary_abelian():
    # C_2^3 has 16 subgroups (1 + 7 + 7 + 1 subspaces), all normal
    t = get_table("prod(C_2,C_2,C_2)")
    assert len(normal_subgroups(t)) == 16


def test_quotient_by_trivial_is_same_group():
    g = get_table("S_3")
    q, proj = quotient(g, ElementSet.from_indices(g.order, [0]))
    assert q.order == g.order
    assert np.array_equal(proj, np.arange(g.order))


def test_quotient_rejects_bad_inputs():
    s4 = get_table("S_4")
    not_sub = ElementSet.from_indices(24, [0, 3])
    with pytest.raises(PreconditionError):
        quotient(s4, not_sub)
    # <(12)> is a subgroup but not normal in S_4
    t = s4.element_by_render("(12)")
    sub = ElementSet(generated_subgroup(s4, [t]))
    with pytest.raises(PreconditionError):
        quotient(s4, sub)


def test_central_products():
    cp = central_product([build_group("SL(2,3)"), build_group("SL(2,3)")])
    assert cp.order == 288
    cp5 = central_product([build_group("SL(2,5)"), build_group("SL(2,5)")])
    assert cp5.order == 7200
    direct = central_product([build_group("S_3"), build_group("C_4")],
                             identification="trivial")
    assert direct.order == 24


def test_central_product_rejects_mismatched_centers():
    with pytest.raises(PreconditionError):
        central_product([build_group("SL(2,3)"), build_group("C_4")])


def test_three_factor_products():
    assert build_group("prod(C_2,C_2,C_2)").order == 8
    cp = central_product([build_group("SL(2,3)")] * 3)
    assert cp.order == 24**3 // 4
    assert len(cp.factor_images) == 3


def test_central_product_factors_commute():
    cp = central_product([build_group("SL(2,3)"), build_group("SL(2,3)")])
    e0, e1 = cp.factor_embeddings
    for a in e0[cp.factor_tables[0].gens]:
        for b in e1[cp.factor_tables[1].gens]:
            assert cp.mul(int(a), int(b)) == cp.mul(int(b), int(a))


def test_central_product_central_quotient_matches_direct_product():
    # central quotient fingerprint = product of the factors' central quotients
    cp = central_product([build_group("SL(2,3)"), build_group("SL(2,3)")])
    q, _ = quotient(cp, cp.center_set())
    sl = build_group("SL(2,3)")
    qa, _ = quotient(sl, sl.center_set())
    expect = sorted(x.size * y.size for x in qa.classes() for y in qa.classes())
    assert sorted(c.size for c in q.classes()) == expect


def test_automorphism_from_images_s3():
    s3 = get_table("S_3")
    g1 = s3.element_by_render("(12)")
    g2 = s3.element_by_render("(123)")
    phi = automorphism_from_images(
        s3, [g1, g2],
        [s3.element_by_render("(23)"), s3.element_by_render("(132)")])
    conj13 = inner_automorphism(s3, s3.element_by_render("(13)"))
    assert np.array_equal(phi.perm, conj13.perm)


def test_automorphism_identity_images():
    s3 = get_table("S_3")
    phi = automorphism_from_images(s3, list(s3.gens), list(s3.gens))
    assert phi.is_identity()


def test_automorphism_rejects_non_bijective():
    c4 = get_table("C_4")
    g = c4.gens[0]
    with pytest.raises(PreconditionError):
        automorphism_from_images(c4, [g], [c4.mul(g, g)])


def test_automorphism_multiplicative_on_all_pairs():
    # the per-generator verification implies this; check it exhaustively once
    s3 = get_table("S_3")
    phi = inner_automorphism(s3, s3.element_by_render("(13)"))
    sl = get_table("SL(2,3)")
    psi = inner_automorphism(sl, sl.element_by_render("1,1;0,1"))
    for table, f in ((s3, phi), (sl, psi)):
        for a in range(table.order):
            for b in range(table.order):
                assert f(table.mul(a, b)) == table.mul(f(a), f(b))


def test_quotient_tables_satisfy_group_axioms():
    sl = get_table("SL(2,7)")
    q, _ = quotient(sl, sl.center_set())
    assert q.order == 168
    validate_table(q, seed=0, triples=5000)


def test_product_set_associative():
    table = get_table("SL(2,3)")
    rng = np.random.default_rng(11)
    for _ in range(4):
        a = ElementSet.from_indices(24, rng.choice(24, 5, replace=False))
        b = ElementSet.from_indices(24, rng.choice(24, 6, replace=False))
        c = ElementSet.from_indices(24, rng.choice(24, 4, replace=False))
        left = table.product_set(table.product_set(a, b), c)
        right = table.product_set(a, table.product_set(b, c))
        assert left == right


def test_automorphism_preserves_class_sizes():
    # outer automorphism of A_5: conjugation by the transposition (1 2),
    # realized through generator images on the permutation forms
    a5 = get_table("A_5")
    tf = (1, 0, 2, 3, 4)
    inv_tf = tf  # involution
    images = []
    for g in a5.gens:
        form = a5.elements[g]
        conj_form = tuple(tf[form[inv_tf[k]]] for k in range(5))
        images.append(a5.index[conj_form])
    phi = automorphism_from_images(a5, list(a5.gens), images)
    assert not phi.is_identity()
    for c in a5.classes():
        image_class = a5.class_of(int(phi.perm[c.rep]))
        assert a5.classes()[image_class].size == c.size


def test_residuals_examples():
    g1, g2, g3 = residuals(get_table("S_4"))
    assert (g1.card, g2.card, g3.card) == (1, 1, 1)
    g1, g2, g3 = residuals(get_table("A_5"))
    assert (g1.card, g2.card, g3.card) == (60, 1, 1)
    g1, g2, g3 = residuals(get_table("SL(2,5)"))
    assert (g1.card, g2.card, g3.card) == (120, 2, 1)
    sl25 = get_table("SL(2,5)")
    assert g2 == sl25.center_set()


def test_residuals_composite():
    # soluble residual cuts away the abelian direct factor
    g1, g2, g3 = residuals(get_table("prod(SL(2,5),C_6)"))
    assert (g1.card, g2.card, g3.card) == (120, 2, 1)
    g1, g2, g3 = residuals(get_table("prod(A_5,C_2)"))
    assert (g1.card, g2.card, g3.card) == (60, 1, 1)


def test_product_set_monotone_with_identity():
    # A is contained in A*B whenever B contains the identity
    table = get_table("S_4")
    rng = np.random.default_rng(3)
    for _ in range(5):
        a = ElementSet.from_indices(24, rng.choice(24, size=6, replace=False))
        b_idx = set(map(int, rng.choice(24, size=4, replace=False))) | {0}
        b = ElementSet.from_indices(24, sorted(b_idx))
        prod = table.product_set(a, b)
        assert a.issubset(prod)


def test_product_set_against_brute():
    table = get_table("S_4")
    rng = np.random.default_rng(1)
    for _ in range(5):
        a = rng.choice(table.order, size=5, replace=False)
        b = rng.choice(table.order, size=7, replace=False)
        got = table.product_bits(
            ElementSet.from_indices(table.order, a).bits,
            ElementSet.from_indices(table.order, b).bits)
        expect = brute_product(table, set(map(int, a)), set(map(int, b)))
        assert set(np.flatnonzero(got)) == expect


def test_generator_file_round_trip(tmp_path):
    path = tmp_path / "gens.json"
    path.write_text(json.dumps({
        "degree": 4,
        "generators": [[1, 0, 2, 3], [1, 2, 3, 0]],
    }))
    table = build_group(parse_spec(f"file:{path}"))
    assert table.order == 24
    mpath = tmp_path / "mat.json"
    mpath.write_text(json.dumps({
        "p": 3, "n": 2,
        "generators": [[[1, 1], [0, 1]], [[0, 2], [1, 0]]],
    }))
    table = build_group(parse_spec(f"file:{mpath}"))
    assert table.order == 24


def test_element_render_parse_round_trip():
    for name in ("S_4", "SL(2,3)"):
        table = get_table(name)
        for i in range(table.order):
            assert table.element_by_render(table.render_element(i)) == i
