import pytest

from conftest import get_table

from classcover import lattice
from classcover.density import (
    abelian_quotient_check,
    build_tau_product,
    dense_closure_check,
    g_star,
    tau_factor_projection_whole,
)
from classcover.engine import ElementSet
from classcover.errors import InvalidSpecError, PreconditionError


def test_g_star_s4():
    s4 = get_table("S_4")
    dec = g_star(s4)
    a4 = next(n for n in lattice.normal_subgroups(s4) if n.card == 12)
    assert dec.g_star == a4
    assert dec.abelian_part["order"] == 2
    assert dec.simple_factors == []


def test_g_star_a5_trivial():
    dec = g_star(get_table("A_5"))
    assert dec.g_star.card == 1
    assert [f["name"] for f in dec.simple_factors] == ["A_5"]


def test_g_star_product():
    dec = g_star(get_table("prod(A_5,C_6)"))
    assert dec.g_star.card == 1
    assert dec.abelian_part["order"] == 6
    assert [f["order"] for f in dec.simple_factors] == [60]


def test_g_star_equals_derived_meet_simple_kernels():
    for name in ("S_4", "A_5", "prod(A_5,C_6)", "SL(2,3)", "D_6"):
        table = get_table(name)
        dec = g_star(table)
        inter = dec.kernels[0].bits.copy()
        for k in dec.kernels[1:]:
            inter &= k.bits
        assert dec.g_star == ElementSet(inter)
        assert dec.g_star.issubset(lattice.derived_subgroup_set(table))


def test_tau_product_single_factor_is_symmetric_like():
    t5 = build_tau_product([5])
    assert t5.order == 120
    s5 = get_table("S_5")
    assert sorted(c.size for c in t5.classes()) == \
        sorted(c.size for c in s5.classes())


def test_tau_product_two_factors():
    t = build_tau_product([5, 6])
    assert t.order == 43200
    whole, closure = dense_closure_check(t, t.tau)
    assert whole and closure.card == 43200
    derived = lattice.derived_subgroup_set(t)
    assert t.order // derived.card == 2


def test_tau_product_group_axioms():
    from classcover.engine import validate_table

    validate_table(build_tau_product([5, 6]), seed=0, triples=10_000)


def test_tau_product_empty_is_c2():
    t = build_tau_product([])
    assert t.order == 2


def test_tau_product_rejects_bad_degrees():
    with pytest.raises(InvalidSpecError):
        build_tau_product([5, 5])
    with pytest.raises(InvalidSpecError):
        build_tau_product([4])


def test_tau_per_factor_projection():
    assert tau_factor_projection_whole(5)
    assert tau_factor_projection_whole(6)
    assert tau_factor_projection_whole(7)


def test_dense_closure_examples():
    s4 = get_table("S_4")
    whole, _ = dense_closure_check(s4, s4.element_by_render("(12)"))
    assert whole
    c6 = get_table("C_6")
    whole, closure = dense_closure_check(c6, c6.gens[0])
    assert whole  # abelian: the closure is the generated cyclic subgroup
    two = next(i for i in range(6) if c6.element_order(i) == 2)
    whole, closure = dense_closure_check(c6, two)
    assert not whole and closure.card == 2


def test_abelian_quotient_check():
    s4 = get_table("S_4")
    a4 = next(n for n in lattice.normal_subgroups(s4) if n.card == 12)
    v4 = next(n for n in lattice.normal_subgroups(s4) if n.card == 4)
    assert abelian_quotient_check(s4, a4)
    assert not abelian_quotient_check(s4, v4)
    assert abelian_quotient_check(s4, ElementSet.full(24))
    with pytest.raises(PreconditionError):
        sub = ElementSet.from_indices(24, [0, s4.element_by_render("(12)")])
        abelian_quotient_check(s4, sub)
