"""Dense-normal-subgroup checks at finite truncations.

The intersection of all kernels of abelian or simple quotients, normal
closures of single elements, and the alternating-product example extended
by a coordinatewise transposition conjugation.  Finite truncations of that
example necessarily give the whole group back from the closure of the
involution; that surjectivity onto every finite quotient is the phenomenon
being demonstrated, and the per-factor projection check covers products
too large to enumerate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import (
    ElementSet,
    GroupTable,
    build_group,
    is_normal,
    is_subgroup,
    quotient,
)
from .errors import PreconditionError
from .lattice import (
    abelian_fingerprint,
    derived_subgroup_set,
    is_simple_nonabelian,
    maximal_normal_subgroups,
    normal_closure,
)
from .specs import GroupSpec


@dataclass
class GStarDecomposition:
    g_star: ElementSet
    abelian_part: dict
    simple_factors: list
    kernels: list = field(default_factory=list)


_NAME_CATALOG: dict = {}


def _simple_name(order: int, sizes: tuple) -> str:
    """Display name for a simple-quotient fingerprint, when we know one."""
    if not _NAME_CATALOG:
        for name in ("A_5", "A_6", "A_7", "PSL(2,7)", "PSL(2,11)", "PSL(2,13)"):
            t = build_group(name)
            _NAME_CATALOG[(t.order, tuple(sorted(c.size for c in t.classes())))] = name
    return _NAME_CATALOG.get((order, sizes), f"simple-of-order-{order}")


def g_star(table: GroupTable) -> GStarDecomposition:
    """Intersection of the kernels of all abelian or simple quotients.

    The abelian kernels all contain the derived subgroup, so that single
    kernel stands in for them; the rest are the maximal normal subgroups
    with nonabelian (hence simple) quotient.
    """
    derived = derived_subgroup_set(table)
    kernels = [derived]
    factors = []
    for m in maximal_normal_subgroups(table):
        q, _ = quotient(table, m)
        if q.is_abelian():
            continue
        assert is_simple_nonabelian(q)
        sizes = tuple(sorted(c.size for c in q.classes()))
        factors.append({
            "order": q.order,
            "class_sizes": sizes,
            "name": _simple_name(q.order, sizes),
        })
        kernels.append(m)
    bits = kernels[0].bits.copy()
    for k in kernels[1:]:
        bits &= k.bits
    if derived.card == table.order:
        abelian = {"order": 1, "element_orders": [1]}
    else:
        q, _ = quotient(table, derived)
        abelian = abelian_fingerprint(q)
    return GStarDecomposition(ElementSet(bits), abelian, factors, kernels)


def build_tau_product(ns, cap=None) -> GroupTable:
    """(prod A_n) extended by the involution conjugating each factor by (1 2).

    Realized as a permutation group on the disjoint blocks; the involution
    is exposed as ``table.tau``.  Degrees must be distinct and >= 5.
    """
    spec = GroupSpec("tau_product", parts=tuple(ns))
    from .specs import validate_spec

    validate_spec(spec)
    return build_group(spec, cap=cap)


def dense_closure_check(table: GroupTable, x: int):
    """(is_whole, closure): normal closure of one element."""
    closure = normal_closure(table, [int(x)])
    return closure.card == table.order, closure


def abelian_quotient_check(table: GroupTable, n_set: ElementSet) -> bool:
    """G/N abelian, tested as: derived subgroup contained in N."""
    if not (is_subgroup(table, n_set.bits) and is_normal(table, n_set.bits)):
        raise PreconditionError("not-normal", "N must be a normal subgroup")
    return derived_subgroup_set(table).issubset(n_set)


def tau_factor_projection_whole(n: int) -> bool:
    """Closure of the involution surjects onto the single-factor extension.

    The image of the closure in each coordinate factor is the closure of the
    image, so per-factor checks certify products beyond the enumeration cap.
    """
    t = build_tau_product([n])
    whole, _ = dense_closure_check(t, t.tau)
    return whole
