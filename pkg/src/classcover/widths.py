"""Twisted-commutator width decompositions and related subgroup checks.

Everything here revolves around sets [G,a] = {g^-1 a^-1 g a} (or {g^-1 g^f}
for an automorphism f) and the least t with a product of such sets, raised
to the t-th power, covering a target subgroup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import (
    Automorphism,
    ElementSet,
    GroupTable,
    generated_subgroup,
    is_normal,
    is_subgroup,
    quotient,
    subtable,
)
from .errors import PreconditionError
from .lattice import (
    bracket_with_group,
    derived_subgroup_set,
    is_simple_nonabelian,
    is_soluble,
    normal_subgroups,
)

def soluble_width_bound(d: int) -> int:
    return 72 * d + 46


@dataclass
class TwistedSet:
    """members = {g^-1 g^a} over a subgroup, for an element or automorphism twist."""

    twist: object
    members: ElementSet

    def __post_init__(self):
        assert 0 in self.members, "twisted sets always contain the identity"


def twisted_commutator_set(table: GroupTable, a, domain: ElementSet | None = None) -> TwistedSet:
    """[D, a] = {g^-1 g^a : g in D}; D defaults to the whole group.

    For an element twist over the full group this is the class of a^-1 times
    a, so it costs one translation; otherwise a pass over D.
    """
    if isinstance(a, Automorphism):
        idxs = domain.indices() if domain is not None else np.arange(table.order)
        members = {table.mul(int(table.inv[g]), int(a.perm[g])) for g in idxs}
        return TwistedSet(a, ElementSet.from_indices(table.order, sorted(members)))
    a = int(a)
    if domain is None:
        ainv = int(table.inv[a])
        cls = table.classes()[table.class_of(ainv)]
        idx = table.apply_word_right(cls.members.indices(), a)
        return TwistedSet(a, ElementSet.from_indices(table.order, idx))
    conj = table.conjugation_by(a)
    members = {table.mul(int(table.inv[g]), int(conj[g])) for g in domain.indices()}
    return TwistedSet(a, ElementSet.from_indices(table.order, sorted(members)))


@dataclass
class WidthReport:
    target_card: int
    minimal_t: int | None
    paper_bound: int | None
    achieved: ElementSet
    d: int = 0
    alpha: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def unreachable(self) -> bool:
        return self.minimal_t is None

    def to_json(self) -> dict:
        return {
            "target_order": self.target_card,
            "minimalT": self.minimal_t,
            "paperBound": self.paper_bound,
            "d": self.d,
            "alpha": self.alpha,
            **self.meta,
        }


def minimal_width(table: GroupTable, target: ElementSet, factors,
                  modulo: ElementSet | None = None,
                  paper_bound: int | None = None) -> WidthReport:
    """Least t with (factor_1 ... factor_k)^{*t} * modulo covering the target.

    Twisted-set factors all contain the identity, so the power sequence is
    nondecreasing and stabilization detection is exact.  t = 0 covers the
    empty-product convention: {e} * modulo.
    """
    if not is_subgroup(table, target.bits):
        raise PreconditionError("target-not-subgroup", "target must be a subgroup")
    if modulo is not None and not (
        is_subgroup(table, modulo.bits) and is_normal(table, modulo.bits)
    ):
        raise PreconditionError("modulo-not-normal", "modulo must be a normal subgroup")
    fac_bits = []
    for f in factors:
        bits = f.members.bits if isinstance(f, TwistedSet) else f.bits
        assert bits[0], "width factors must contain the identity"
        fac_bits.append(bits)
    base = None
    for bits in fac_bits:
        base = bits if base is None else table.product_bits(base, bits)

    def saturate(bits):
        return table.product_bits(bits, modulo.bits) if modulo is not None else bits

    cur = np.zeros(table.order, dtype=bool)
    cur[0] = True
    cur = saturate(cur)
    t = 0
    while True:
        if bool(np.all(cur[target.bits])):
            return WidthReport(target.card, t, paper_bound, ElementSet(cur),
                               d=len(fac_bits))
        nxt = saturate(table.product_bits(cur, base)) if base is not None else cur
        t += 1
        if np.array_equal(nxt, cur):
            return WidthReport(target.card, None, paper_bound, ElementSet(cur),
                               d=len(fac_bits))
        cur = nxt


def soluble_width_check(table: GroupTable, a_idxs) -> WidthReport:
    """Derived-subgroup width in a soluble group: target G', factors [G, a_i].

    The reported bound 72d + 46 uses d = len(a_idxs); preconditions are
    solubility and that the a_i generate the abelianization.
    """
    if not is_soluble(table):
        raise PreconditionError("not-soluble", "group is not soluble")
    derived = derived_subgroup_set(table)
    q, proj = quotient(table, derived)
    images = [int(proj[a]) for a in a_idxs]
    if not np.all(generated_subgroup(q, images)):
        raise PreconditionError(
            "images-do-not-generate-abelianization",
            "the given elements do not generate G modulo G'",
        )
    d = len(a_idxs)
    factors = [twisted_commutator_set(table, a) for a in a_idxs]
    report = minimal_width(table, derived, factors,
                           paper_bound=soluble_width_bound(d))
    report.d = d
    report.meta["mode"] = "segal"
    return report


def lemma_useful_check(table: GroupTable, f: Automorphism) -> list:
    """Exhaustively verify a^G <= [G,f][G,f^-1] for every a in [G,f^-1].

    The inclusion always holds; any returned class representative signals
    an implementation bug.
    """
    s1 = twisted_commutator_set(table, f).members
    s2 = twisted_commutator_set(table, f.inverse()).members
    prod = table.product_bits(s1.bits, s2.bits)
    violations = []
    for cid in np.unique(table.class_ids()[s2.bits]):
        members = table.classes()[int(cid)].members
        if not bool(np.all(prod[members.bits])):
            violations.append(table.classes()[int(cid)].rep)
    return violations


def factor_centralizer(table: GroupTable, factor_idx: int) -> ElementSet:
    """C_T(S_j) for a retained central-product factor."""
    emb = table.factor_embeddings[factor_idx]
    sub = table.factor_tables[factor_idx]
    bits = np.ones(table.order, dtype=bool)
    for g in sub.gens:
        y = int(emb[g])
        bits &= table.conjugation_by(y) == np.arange(table.order)
    return ElementSet(bits)


@dataclass
class QsimpleReport:
    eligible: bool
    minimal_c: int | None
    witnesses: dict
    achieved: ElementSet | None = None


def qsimple_check(table: GroupTable, autos) -> QsimpleReport:
    """Eligibility and width for automorphism twists on a central product.

    Eligible means the common fixed-point set of the automorphisms contains
    no retained factor; the width is then the least c with
    (prod_i [T,a_i][T,a_i^-1])^{*c} = T.  Also locates witness elements t_i
    whose twisted commutators project nontrivially to each factor.
    """
    if not hasattr(table, "factor_images"):
        raise PreconditionError("factor-data-missing",
                                "table was not built as a central product")
    fixed = np.ones(table.order, dtype=bool)
    for a in autos:
        fixed &= a.perm == np.arange(table.order)
    eligible = not any(
        bool(np.all(fixed[img.bits])) for img in table.factor_images
    )
    if not eligible:
        return QsimpleReport(False, None, {})
    factors = []
    for a in autos:
        factors.append(twisted_commutator_set(table, a))
        factors.append(twisted_commutator_set(table, a.inverse()))
    report = minimal_width(table, ElementSet.full(table.order), factors)
    witnesses = {}
    cents = [factor_centralizer(table, j) for j in range(len(table.factor_images))]
    for j, cent in enumerate(cents):
        found = None
        for i, a in enumerate(autos):
            inv_perm = a.inverse().perm
            for t in range(table.order):
                v = table.mul(int(table.inv[t]), int(inv_perm[t]))
                if v not in cent:
                    found = {"auto": i, "t": t, "v": v}
                    break
            if found:
                break
        witnesses[j] = found
    return QsimpleReport(True, report.minimal_t, witnesses, report.achieved)


def inner_width_check(table: GroupTable, a_idxs) -> WidthReport:
    """Least c with (prod_i [T,a_i])^{*c} = T, for a_i generating modulo Z(T)."""
    z = table.center_set()
    if z.card == table.order:
        raise PreconditionError("no-quasisimple-factor",
                                "abelian group has no inner width")
    q, proj = quotient(table, z)
    if not np.all(generated_subgroup(q, [int(proj[a]) for a in a_idxs])):
        raise PreconditionError("not-generating-mod-center",
                                "elements do not generate modulo the center")
    factors = [twisted_commutator_set(table, a) for a in a_idxs]
    report = minimal_width(table, ElementSet.full(table.order), factors)
    report.meta["mode"] = "inner"
    return report


def gaschutz_lift(table: GroupTable, m_set: ElementSet, g_idxs, k: int):
    """Replace generators-modulo-M by true generators inside the same cosets.

    Backtracking over the coset tuples; existence is guaranteed when the
    preconditions hold, so None signals a violated precondition (or a bug).
    """
    if not (is_subgroup(table, m_set.bits) and is_normal(table, m_set.bits)):
        raise PreconditionError("not-normal", "M must be a normal subgroup")
    if len(g_idxs) != k:
        raise PreconditionError("precondition-violated", "need exactly k coset elements")
    span = generated_subgroup(table, g_idxs)
    if not np.all(table.product_bits(span, m_set.bits)):
        raise PreconditionError("not-generating-mod-M",
                                "elements do not generate G modulo M")
    m_idx = m_set.indices()
    cosets = []
    for g in g_idxs:
        cos = [int(x) for x in table.apply_word_left(m_idx, int(g))]
        cos.sort(key=lambda x: (x != g, x))
        cosets.append(cos)

    chosen = []

    def dfs(pos):
        if pos == k:
            return bool(np.all(generated_subgroup(table, chosen)))
        for cand in cosets[pos]:
            chosen.append(cand)
            if dfs(pos + 1):
                return True
            chosen.pop()
        return False

    return list(chosen) if dfs(0) else None


def _fingerprint(table: GroupTable) -> tuple:
    return (table.order, tuple(sorted(c.size for c in table.classes())))


def _is_simple_squared(q: GroupTable) -> bool:
    """Does q decompose as S x S with S simple nonabelian?

    Matches two normal subgroups with trivial intersection, full product,
    equal (order, class-size multiset) fingerprints, each simple nonabelian.
    """
    r = math.isqrt(q.order)
    if r * r != q.order or r < 60:
        return False
    norms = [n for n in normal_subgroups(q) if n.card == r]
    for i, n1 in enumerate(norms):
        for n2 in norms[i + 1:]:
            if (n1 & n2).card != 1:
                continue
            if q.product_set(n1, n2).card != q.order:
                continue
            s1, _ = subtable(q, n1.bits)
            s2, _ = subtable(q, n2.bits)
            if (is_simple_nonabelian(s1) and is_simple_nonabelian(s2)
                    and _fingerprint(s1) == _fingerprint(s2)):
                return True
    return False


def acceptable_check(table: GroupTable, n_set: ElementSet):
    """The two defining conditions for an acceptable normal subgroup.

    1. [N, G] = N.
    2. No section B/A of normal-in-G subgroups A <= B <= N is simple
       nonabelian or a square S x S of one.  Simplicity of sections is
       decided directly on the section's normal lattice; the S x S match
       uses order plus class-size-multiset fingerprints and so shares the
       usual fingerprint-collision caveat.

    Returns (bool, reason).
    """
    if not (is_subgroup(table, n_set.bits) and is_normal(table, n_set.bits)):
        raise PreconditionError("not-normal", "N must be a normal subgroup")
    if bracket_with_group(table, n_set) != n_set:
        return False, "bracket-with-group-proper"
    norms = [n for n in normal_subgroups(table) if n.issubset(n_set)]
    for b in norms:
        if b.card < 60:
            continue
        sub_b, _ = subtable(table, b.bits)
        for a in norms:
            if a.card >= b.card or not a.issubset(b):
                continue
            if (b.card // a.card) < 60:
                continue
            a_in_b = np.array([i for i, f in enumerate(sub_b.elements)
                               if table.index[f] in set(a.indices().tolist())],
                              dtype=np.int64)
            sec, _ = quotient(sub_b, ElementSet.from_indices(sub_b.order, a_in_b))
            if is_simple_nonabelian(sec):
                return False, f"simple-section-of-order-{sec.order}"
            if _is_simple_squared(sec):
                return False, f"simple-squared-section-of-order-{sec.order}"
    return True, "acceptable"


def acceptable_width_check(table: GroupTable, h_set: ElementSet, g_idxs,
                           alpha_value: int | None = None) -> WidthReport:
    """Width of an acceptable normal subgroup H against factors [H, g_i].

    Preconditions: H acceptable and <g>H = G.  The report carries d and
    alpha for empirical t(d, alpha) tables; no closed-form bound exists.
    """
    ok, reason = acceptable_check(table, h_set)
    if not ok:
        raise PreconditionError("not-acceptable", f"H is not acceptable: {reason}")
    span = generated_subgroup(table, g_idxs)
    if not np.all(table.product_bits(span, h_set.bits)):
        raise PreconditionError("not-generating-mod-H",
                                "elements do not generate G modulo H")
    factors = [twisted_commutator_set(table, a, domain=h_set) for a in g_idxs]
    report = minimal_width(table, h_set, factors)
    report.d = len(g_idxs)
    report.alpha = alpha_value if alpha_value is not None else alpha(table)
    report.meta["mode"] = "keyc"
    return report


# -- largest alternating section --

ALPHA_CAP = 2000
_ALT_FINGERPRINTS: dict = {}


def _alt_fingerprint(k: int) -> tuple:
    from .engine import build_group

    if k not in _ALT_FINGERPRINTS:
        _ALT_FINGERPRINTS[k] = _fingerprint(build_group(f"A_{k}"))
    return _ALT_FINGERPRINTS[k]


def _cyclic_subgroup_reps(table: GroupTable) -> list:
    """One generator per distinct cyclic subgroup (including nested ones)."""
    seen = set()
    reps = []
    for i in range(1, table.order):
        powers = {0}
        j = i
        while j != 0:
            powers.add(j)
            j = table.mul(j, i)
        key = frozenset(powers)
        if key not in seen:
            seen.add(key)
            reps.append(i)
    return reps


def alpha(table: GroupTable, spec=None, k_max: int = 8, cap: int = ALPHA_CAP) -> int:
    """Largest k <= k_max with an A_k section (subgroup quotient).

    Named alternating/symmetric specs short-circuit to their degree (the
    order bound rules out any larger alternating section).  Otherwise every
    2-generated subgroup is scanned: any A_k section of any subgroup forces
    one on a 2-generated subgroup because A_k is 2-generated.  Returns 3
    only for a genuine C_3 section, which exists exactly when 3 | |G|.
    """
    if spec is not None and spec.kind in ("alternating", "symmetric"):
        return spec.n if spec.n >= 3 else 0
    if table.order > cap:
        raise PreconditionError(
            "cap-exceeded", f"alpha scan capped at order {cap}; pass spec for named families"
        )
    best = 3 if table.order % 3 == 0 else 0
    alt_orders = {k: math.factorial(k) // 2 for k in range(4, k_max + 1)}
    feasible = {k for k, o in alt_orders.items() if table.order % o == 0}
    if not feasible:
        return best
    seen_subgroups = set()
    candidates = []
    class_reps = [c.rep for c in table.classes() if c.rep != 0]
    cyc = _cyclic_subgroup_reps(table)
    for x in class_reps:
        for y in cyc:
            bits = generated_subgroup(table, [x, y])
            key = bits.tobytes()
            if key not in seen_subgroups:
                seen_subgroups.add(key)
                candidates.append(bits)
    for bits in candidates:
        size = int(bits.sum())
        usable = {k for k in feasible if size % alt_orders[k] == 0}
        if not usable or max(usable) <= best:
            continue
        sub, _ = subtable(table, bits)
        for n in normal_subgroups(sub):
            qorder = sub.order // n.card
            for k in sorted(usable, reverse=True):
                if k <= best or qorder != alt_orders[k]:
                    continue
                q, _ = quotient(sub, n)
                if _fingerprint(q) == _alt_fingerprint(k) and not q.is_abelian():
                    best = max(best, k)
                    break
    return best
