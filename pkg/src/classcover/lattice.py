"""Normal-subgroup machinery built on conjugacy classes.

Every normal subgroup is a union of conjugacy classes, so normal closures
and the full normal-subgroup lattice are computed at class granularity:
a subgroup is a frozenset of class ids, and products of class unions are
resolved through single-representative translations.
"""

from __future__ import annotations

import numpy as np

from .engine import ElementSet, GroupTable, subtable
from .errors import CapExceededError

LATTICE_CAP = 200


def class_product_ids(table: GroupTable, x_class: int, y_class: int):
    """Ids of the classes meeting X*Y.

    Because X*Y is invariant under conjugation, the classes it meets are
    exactly the classes meeting rep(X)*Y.
    """
    classes = table.classes()
    rep = classes[x_class].rep
    prods = table.apply_word_left(classes[y_class].members.indices(), rep)
    return np.unique(table.class_ids()[prods])


def class_closure(table: GroupTable, seed_ids) -> frozenset:
    """Smallest product-closed union of classes containing the seed classes.

    This is the normal closure of the seed elements: a product-closed class
    union containing the identity is a normal subgroup.
    """
    ident = table.class_of(0)
    ids = {ident} | {int(c) for c in seed_ids}
    work = list(ids)
    while work:
        x = work.pop()
        for y in list(ids):
            for z in class_product_ids(table, x, y):
                z = int(z)
                if z not in ids:
                    ids.add(z)
                    work.append(z)
    return frozenset(ids)


def members_of_class_ids(table: GroupTable, ids) -> ElementSet:
    mask = np.isin(table.class_ids(), np.fromiter(ids, dtype=np.int64))
    return ElementSet(mask)


def normal_closure(table: GroupTable, seed_idxs) -> ElementSet:
    seed_ids = {table.class_of(int(i)) for i in seed_idxs}
    return members_of_class_ids(table, class_closure(table, seed_ids))


def normal_subgroups(table: GroupTable, cap: int = LATTICE_CAP) -> list:
    """All normal subgroups, as the join-closure of single-class closures."""
    classes = table.classes()
    if len(classes) > cap:
        raise CapExceededError(
            "lattice-cap-exceeded",
            f"{len(classes)} classes exceed the lattice cap {cap}",
        )
    atoms = {class_closure(table, {ci}) for ci in range(len(classes))}
    known = set(atoms)
    work = list(atoms)
    while work:
        a = work.pop()
        for b in list(known):
            j = a | b
            if j in known:
                continue
            j = class_closure(table, j)
            if j not in known:
                known.add(j)
                work.append(j)
    # closed under intersection automatically, but verify cheaply
    for a in known:
        for b in known:
            assert (a & b) in known
    out = [members_of_class_ids(table, ids) for ids in sorted(known, key=sorted)]
    out.sort(key=lambda s: (s.card, tuple(s.indices()[:4])))
    return out


def derived_subgroup_set(table: GroupTable) -> ElementSet:
    """Derived subgroup: normal closure of the generator commutators."""
    seeds = [table.commutator(a, b) for a in table.gens for b in table.gens if a != b]
    if not seeds:
        return ElementSet.from_indices(table.order, [0])
    return normal_closure(table, seeds)


def derived_series(table: GroupTable) -> list:
    """Derived series as ElementSets in the coordinates of ``table``."""
    series = [ElementSet.full(table.order)]
    cur_table = table
    to_parent = np.arange(table.order)
    while True:
        d = derived_subgroup_set(cur_table)
        if d.card == cur_table.order:
            break
        series.append(ElementSet.from_indices(table.order, to_parent[d.indices()]))
        if d.card == 1:
            break
        sub, sub_map = subtable(cur_table, d.bits)
        to_parent = to_parent[sub_map]
        cur_table = sub
    return series


def is_soluble(table: GroupTable) -> bool:
    return derived_series(table)[-1].card == 1


def is_perfect(table: GroupTable) -> bool:
    return derived_subgroup_set(table).card == table.order


def is_simple_nonabelian(table: GroupTable) -> bool:
    """No proper nontrivial normal subgroup, and nonabelian."""
    if table.order == 1 or table.is_abelian():
        return False
    for ci in range(len(table.classes())):
        if table.classes()[ci].rep == 0:
            continue
        if len(class_closure(table, {ci})) != len(table.classes()):
            return False
    return True


def is_quasisimple(table: GroupTable) -> bool:
    """Perfect with simple central quotient."""
    from .engine import quotient  # local import to avoid a cycle

    if table.order == 1 or not is_perfect(table):
        return False
    z = table.center_set()
    if z.card == table.order:
        return False
    q, _ = quotient(table, z)
    return is_simple_nonabelian(q)


def maximal_normal_subgroups(table: GroupTable, cap: int = LATTICE_CAP) -> list:
    norms = [n for n in normal_subgroups(table, cap=cap) if n.card < table.order]
    out = []
    for n in norms:
        if not any(m.card > n.card and n.issubset(m) for m in norms):
            out.append(n)
    return out


def residuals(table: GroupTable, cap: int = LATTICE_CAP):
    """(G1, G2, G3): soluble residual, semisimple residual inside it, and the
    stable term of the iterated bracket of G2 with the whole group."""
    g1 = derived_series(table)[-1]
    if g1.card == 1:
        triv = ElementSet.from_indices(table.order, [0])
        return g1, triv, triv
    if g1.card == table.order:
        sub, to_parent = table, np.arange(table.order)
    else:
        sub, to_parent = subtable(table, g1.bits)
    maxes = maximal_normal_subgroups(sub, cap=cap)
    if maxes:
        inter = maxes[0].bits.copy()
        for m in maxes[1:]:
            inter &= m.bits
    else:
        inter = np.ones(sub.order, dtype=bool)
    g2 = ElementSet.from_indices(table.order, to_parent[np.flatnonzero(inter)])
    g3 = stable_bracket(table, g2)
    return g1, g2, g3


def bracket_with_group(table: GroupTable, m_set: ElementSet) -> ElementSet:
    """[M, G]: normal closure of {m^-1 m^g} over the group's generators."""
    seeds = []
    for g in table.gens:
        conj = table.conjugation_by(g)
        for m in m_set.indices():
            s = table.mul(int(table.inv[m]), int(conj[m]))
            if s:
                seeds.append(s)
    if not seeds:
        return ElementSet.from_indices(table.order, [0])
    return normal_closure(table, seeds)


def stable_bracket(table: GroupTable, m_set: ElementSet) -> ElementSet:
    cur = m_set
    while True:
        nxt = bracket_with_group(table, cur)
        if nxt == cur:
            return cur
        cur = nxt


def abelian_fingerprint(table: GroupTable, bits=None) -> dict:
    """Order plus element-order multiset of a subgroup (abelian invariant)."""
    idxs = np.flatnonzero(bits) if bits is not None else np.arange(table.order)
    orders = sorted(table.element_order(int(i)) for i in idxs)
    return {"order": len(idxs), "element_orders": orders}
