import math

import numpy as np
import pytest

from conftest import get_table
from oracles import brute_covering, brute_product

from classcover.cover import (
    corpus_cover_report,
    covering_number,
    group_cover_rows,
    product_covers,
)
from classcover.engine import ElementSet, automorphism_from_images
from classcover.errors import PreconditionError


def test_a5_three_cycles_cover_in_two():
    a5 = get_table("A_5")
    c = a5.classes()[a5.class_of(a5.element_by_render("(123)"))]
    assert c.size == 20
    assert covering_number(a5, c).value == 2


def test_identity_class_never_covers():
    for name in ("A_5", "S_4", "C_6"):
        table = get_table(name)
        out = covering_number(table, table.classes()[0])
        assert out.never
        assert out.achieved.card == 1


def test_a5_five_cycle_class():
    # oracle-recorded before pinning: both 5-cycle classes need exactly 3
    a5 = get_table("A_5")
    c = a5.classes()[a5.class_of(a5.element_by_render("(12345)"))]
    assert c.size == 12
    out = covering_number(a5, c)
    assert out.value == brute_covering(a5, set(map(int, c.members.indices()))) == 3


@pytest.mark.parametrize("name", ["A_5", "A_6", "PSL(2,7)", "SL(2,5)", "S_4"])
def test_covering_matches_brute_oracle(name):
    table = get_table(name)
    for c in table.classes():
        fast = covering_number(table, c).value
        slow = brute_covering(table, set(map(int, c.members.indices())))
        assert fast == slow


def test_never_reports_generated_structure():
    # a single odd class in S_4 alternates between cosets; the cycle union
    # reported is the subgroup the class generates (all of S_4 here)
    s4 = get_table("S_4")
    c = s4.classes()[s4.class_of(s4.element_by_render("(12)"))]
    out = covering_number(s4, c)
    assert out.never and out.achieved.card == 24
    c6 = get_table("C_6")
    two = next(i for i in range(6) if c6.element_order(i) == 2)
    out = covering_number(c6, c6.classes()[c6.class_of(two)])
    assert out.never and out.achieved.card == 2


def test_product_covers_examples():
    a5 = get_table("A_5")
    c = a5.classes()[a5.class_of(a5.element_by_render("(123)"))]
    ok, ach = product_covers(a5, [c.members], 2)
    assert ok and ach.card == 60
    s4 = get_table("S_4")
    c = s4.classes()[s4.class_of(s4.element_by_render("(12)"))]
    ok, ach = product_covers(s4, [c.members], 1)
    assert not ok
    assert set(ach.indices()) == set(c.members.indices())
    triv = get_table("C_1")
    ok, _ = product_covers(triv, [ElementSet.from_indices(1, [0])], 3)
    assert ok


def test_product_covers_matches_brute():
    s4 = get_table("S_4")
    rng = np.random.default_rng(7)
    for t in (1, 2, 3):
        idx = rng.choice(24, size=4, replace=False)
        sets = [ElementSet.from_indices(24, idx)]
        ok, ach = product_covers(s4, sets, t)
        cur = set(map(int, idx))
        for _ in range(t - 1):
            cur = brute_product(s4, cur, set(map(int, idx)))
        assert set(map(int, ach.indices())) == cur
        assert ok == (len(cur) == 24)


def test_product_covers_exact_powers_on_periodic_sets():
    # a singleton set of an order-3 element cycles without stabilizing;
    # exact powers must follow the cycle for every t
    c6 = get_table("C_6")
    g = next(i for i in range(6) if c6.element_order(i) == 3)
    single = ElementSet.from_indices(6, [g])
    cur = {g}
    for t in range(1, 10):
        ok, ach = product_covers(c6, [single], t)
        assert set(map(int, ach.indices())) == cur
        assert not ok
        cur = brute_product(c6, cur, {g})
    s4 = get_table("S_4")
    c = s4.classes()[s4.class_of(s4.element_by_render("(12)"))]
    cur = set(map(int, c.members.indices()))
    for t in range(1, 8):
        _, ach = product_covers(s4, [c.members], t)
        assert set(map(int, ach.indices())) == cur
        cur = brute_product(s4, cur, set(map(int, c.members.indices())))


def test_class_products_commute():
    for name in ("A_5", "S_4", "SL(2,3)", "A_6"):
        table = get_table(name)
        classes = table.classes()
        for x in classes:
            for y in classes:
                xy = table.product_bits(x.members.bits, y.members.bits)
                yx = table.product_bits(y.members.bits, x.members.bits)
                assert np.array_equal(xy, yx)


def test_covering_constant_on_automorphism_orbits():
    # the outer automorphism of A_5 swaps the two 5-cycle classes
    a5 = get_table("A_5")
    tf = (1, 0, 2, 3, 4)
    images = []
    for g in a5.gens:
        form = a5.elements[g]
        images.append(a5.index[tuple(tf[form[tf[k]]] for k in range(5))])
    phi = automorphism_from_images(a5, list(a5.gens), images)
    for c in a5.classes():
        image_cls = a5.classes()[a5.class_of(int(phi.perm[c.rep]))]
        assert covering_number(a5, c).value == covering_number(a5, image_cls).value


def test_corpus_rejects_non_simple():
    with pytest.raises(PreconditionError):
        corpus_cover_report(["C_5"])
    with pytest.raises(PreconditionError):
        corpus_cover_report(["S_4"])


def test_corpus_report_a5():
    report = corpus_cover_report(["A_5"])
    assert len(report.rows) == 4
    assert all(r.cn is not None for r in report.rows)
    assert report.c_alpha == {5: 3}


def test_cover_ratio_shape_on_corpus_members():
    # regression invariant: cn <= ceil(pinned * log|G| / log|C|)
    from pinned import PINNED_COVER_RATIO

    for name in ("A_5", "A_6", "PSL(2,7)"):
        table = get_table(name)
        for row in group_cover_rows(table, name, noncentral_only=True):
            bound = math.ceil(PINNED_COVER_RATIO * math.log(table.order)
                              / math.log(row.class_size))
            assert row.cn <= bound
