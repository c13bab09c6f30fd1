import pytest

from conftest import get_table
from oracles import brute_sl_centralizer_order

from classcover import fp
from classcover.errors import CapExceededError, PreconditionError
from classcover.linear import (
    MatrixElement,
    build_block_element,
    centralizer_order_sl,
    commutant_basis,
    companion,
    spectrum_element_sl,
    stabilizer_block_order,
    structured_centralizer_order,
)

BETA_GRID = [round(0.1 * i, 1) for i in range(11)]


def test_centralizer_spec_examples():
    assert centralizer_order_sl(MatrixElement(2, 3, ((1, 0), (0, 1)))) == 24
    assert centralizer_order_sl(MatrixElement(2, 3, ((1, 1), (0, 1)))) == 6
    assert centralizer_order_sl(MatrixElement(2, 3, ((2, 0), (0, 2)))) == 24


@pytest.mark.parametrize("name,n,p", [
    ("SL(2,3)", 2, 3), ("SL(2,5)", 2, 5), ("SL(3,2)", 3, 2), ("SL(2,7)", 2, 7),
])
def test_centralizers_match_exhaustive_enumeration(name, n, p):
    table = get_table(name)
    for c in table.classes():
        g = MatrixElement(n, p, table.elements[c.rep])
        cent = centralizer_order_sl(g)
        # table route: |C| = |G| / |class|
        assert cent == table.order // c.size
        assert table.order % cent == 0


def test_centralizers_match_matrix_commute_oracle():
    table = get_table("SL(2,3)")
    for c in table.classes():
        cent = centralizer_order_sl(MatrixElement(2, 3, table.elements[c.rep]))
        assert cent == brute_sl_centralizer_order(2, 3, table.elements[c.rep])


def test_structured_matches_enumeration_across_grid():
    for n, p in [(4, 3), (6, 3), (4, 5), (6, 2), (3, 3), (5, 3), (3, 7)]:
        for beta in BETA_GRID:
            try:
                g, _, c = spectrum_element_sl(n, p, beta, alg_cap=100_000)
            except PreconditionError:
                continue
            if p ** len(commutant_basis(g)) <= 100_000:
                assert centralizer_order_sl(g) == structured_centralizer_order(c), (n, p, beta)


def test_block_elements_have_no_fixed_vectors_off_v0():
    for n, p, beta in [(4, 3, 0.5), (6, 3, 0.9), (6, 2, 1.0), (8, 3, 0.3)]:
        g, _, c = spectrum_element_sl(n, p, beta)
        assert fp.poly_eval(c.f1, 1, p) != 0
        assert fp.poly_eval(c.f2, 1, p) != 0
        assert g.in_sl()
        assert c.dim_v0 + 2 * c.dim_v1 == n


def test_monotone_in_beta():
    for n, p in [(4, 3), (6, 3), (8, 3)]:
        hs = [spectrum_element_sl(n, p, b)[1].h for b in BETA_GRID]
        assert all(hs[i] <= hs[i + 1] + 1e-12 for i in range(len(hs) - 1))
        assert all(0.0 <= h <= 1.0 for h in hs)


def test_beta_edges():
    # beta = 0 on (4,3): clamped to the smallest admissible nonidentity,
    # two scalar-2 blocks around a 2-dim identity block
    g, r, c = spectrum_element_sl(4, 3, 0.0)
    assert c.dim_v0 == 2 and c.dim_v1 == 1
    assert g.entries[2][2] == 2 and g.entries[3][3] == 2
    # beta = 1: no identity block, two 2x2 cyclic blocks, ratio near the top
    g, r, c = spectrum_element_sl(4, 3, 1.0)
    assert c.dim_v0 == 0 and c.dim_v1 == 2
    assert r.h > 0.7


def test_p2_single_scalar_block_errors():
    with pytest.raises(PreconditionError):
        build_block_element(4, 2, 0.0)  # needs 1x1 fixed-point-free blocks over F_2


def test_sandwich_bound():
    # |L| <= |C(g)| <= p^(1+2n) |L| with L the stabilizer block on V0
    for n, p in [(4, 3), (6, 3), (4, 5), (6, 2)]:
        for beta in (0.0, 0.5, 1.0):
            try:
                g, _, c = spectrum_element_sl(n, p, beta)
            except PreconditionError:
                continue
            cent = (centralizer_order_sl(g)
                    if p ** len(commutant_basis(g)) <= 2_000_000
                    else structured_centralizer_order(c))
            low = stabilizer_block_order(c)
            assert low <= cent <= p ** (1 + 2 * n) * low


def test_algebra_cap_raises():
    g = MatrixElement(6, 3, fp.mat_identity(6))
    with pytest.raises(CapExceededError):
        centralizer_order_sl(g)


def test_companion_det_balances():
    for k, p in [(1, 3), (2, 3), (3, 3), (2, 2), (1, 5), (2, 5)]:
        try:
            g, _, c = spectrum_element_sl(2 * k, p, 1.0)
        except PreconditionError:
            continue
        d1 = fp.mat_det(companion(c.f1, p), p)
        d2 = fp.mat_det(companion(c.f2, p), p)
        assert d1 * d2 % p == 1


def test_diagonal_family_trend():
    # measured endpoints of the (n, 3) family move toward their targets as
    # the dimension grows; no claim is made beyond these grid points
    top = [spectrum_element_sl(n, 3, 1.0)[1].h for n in (4, 6, 8)]
    assert top[0] < top[1] < top[2] < 1.0
    bottom = [spectrum_element_sl(n, 3, 0.0)[1].h for n in (4, 6, 8)]
    assert bottom[0] > bottom[1] > bottom[2] > 0.0


def test_central_quotient_ratio_bounds():
    import math

    from classcover.linear import central_quotient_ratio_bounds

    table = get_table("SL(2,5)")
    psl = get_table("PSL(2,5)")
    for c in table.classes():
        if c.size == 1:
            continue
        cent = table.order // c.size
        lo, hi = central_quotient_ratio_bounds(2, 5, cent)
        assert 0.0 <= lo <= hi <= 1.0
        # the projective image of the class has some size s with
        # sl_size/2 <= s <= sl_size; its ratio must land in [lo, hi]
        sizes = {cl.size for cl in psl.classes()}
        compatible = [s for s in sizes if c.size // 2 <= s <= c.size]
        assert any(
            lo - 1e-12 <= math.log(s) / math.log(60) <= hi + 1e-12
            for s in compatible
        )


def test_group_order_formulas():
    assert fp.sl_order(2, 3) == 24
    assert fp.sl_order(2, 5) == 120
    assert fp.sl_order(3, 2) == 168
    assert fp.gl_order(2, 3) == 48
    assert fp.psl_order(2, 7) == 168
    assert fp.psl_order(2, 13) == 1092


def test_unit_counts():
    # irreducible quadratic over F_3: field with 9 elements
    assert fp.unit_count((1, 0, 1), 3) == 8
    # (x-1)^2 = x^2 + x + 1 over F_3: local ring, 9 - 3 units
    assert fp.poly_mul((2, 1), (2, 1), 3) == (1, 1, 1)
    assert fp.unit_count((1, 1, 1), 3) == 6
    # x^2 - x = x(x-1): CRT of two copies of F_3
    assert fp.unit_count((0, 2, 1), 3) == 4
