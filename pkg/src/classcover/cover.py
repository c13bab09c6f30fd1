"""Class-product covering: least n with C^{*n} = G, and corpus sweeps.

Powers of a conjugacy class are conjugation-invariant, so the BFS runs at
class granularity: a state is the set of class ids present in C^{*n}, and
one representative-translation per class resolves each product step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import ConjClass, ElementSet, GroupTable, build_group
from .errors import PreconditionError
from .lattice import (
    class_product_ids,
    is_quasisimple,
    is_simple_nonabelian,
    members_of_class_ids,
)
from .specs import parse_spec, render_spec


@dataclass
class CoveringOutcome:
    """value is the covering number, or None when C never covers G."""

    value: int | None
    achieved: ElementSet

    @property
    def never(self) -> bool:
        return self.value is None

    def __str__(self):
        return "never" if self.never else str(self.value)


def covering_number(table: GroupTable, cls) -> CoveringOutcome:
    """Least n with C^{*n} = G, by exact class-level powering.

    The sequence of class-id states is eventually periodic; a repeated state
    before full coverage means "never", and the achieved set reported is the
    union over the limit cycle (the subgroup or coset structure C generates).
    """
    cid = table.class_of(cls.rep) if isinstance(cls, ConjClass) else int(cls)
    nclasses = len(table.classes())
    cache = {}

    def step(state):
        out = set()
        for x in state:
            key = x
            got = cache.get(key)
            if got is None:
                got = {int(z) for z in class_product_ids(table, x, cid)}
                cache[key] = got
            out |= got
        return frozenset(out)

    state = frozenset({cid})
    seen = {state: 1}
    n = 1
    while True:
        if len(state) == nclasses:
            return CoveringOutcome(n, ElementSet.full(table.order))
        nxt = step(state)
        n += 1
        if nxt in seen:
            first = seen[nxt]
            cycle = set()
            s, m = nxt, first
            while True:
                cycle |= s
                s = step(s)
                m += 1
                if s == nxt:
                    break
            return CoveringOutcome(None, members_of_class_ids(table, cycle))
        seen[nxt] = n
        state = nxt


def _is_class_closed(table: GroupTable, bits) -> bool:
    ids = np.unique(table.class_ids()[bits])
    return int(sum(table.classes()[int(i)].size for i in ids)) == int(bits.sum())


def product_covers(table: GroupTable, sets, t: int):
    """Whether (set_1 ... set_k)^{*t} = G; returns (bool, achieved ElementSet).

    Exact power, not a cumulative union: stabilization or state repetition
    short-circuits the remaining factors.
    """
    if t < 1 or not sets:
        raise PreconditionError("precondition-violated", "need t >= 1 and nonempty sets")
    base = None
    for s in sets:
        bits = s.bits if isinstance(s, ElementSet) else np.asarray(s, bool)
        if not bits.any():
            raise PreconditionError("precondition-violated", "empty factor set")
        base = bits if base is None else table.product_bits(base, bits)
    power = base
    seen = {power.tobytes(): 1}
    k = 1
    while k < t:
        nxt = table.product_bits(power, base)
        k += 1
        key = nxt.tobytes()
        if np.array_equal(nxt, power):
            power = nxt
            break
        if key in seen:
            # periodic without stabilizing; replay the remainder of the cycle
            first = seen[key]
            period_states = []
            s = nxt
            while True:
                period_states.append(s)
                s = table.product_bits(s, base)
                if np.array_equal(s, nxt):
                    break
            power = period_states[(t - first) % len(period_states)]
            k = t
            break
        seen[key] = k
        power = nxt
    covers = bool(power.all())
    return covers, ElementSet(power)


@dataclass
class CoverRow:
    group: str
    class_rep: str
    class_size: int
    cn: int | None
    ratio: float | None


@dataclass
class CoverReport:
    rows: list = field(default_factory=list)
    c_ls: float = 0.0
    c_alpha: dict = field(default_factory=dict)

    def max_ratio(self) -> float:
        return max((r.ratio for r in self.rows if r.ratio is not None), default=0.0)


def group_cover_rows(table: GroupTable, name: str, noncentral_only=False) -> list:
    rows = []
    log_g = math.log(table.order)
    for c in table.classes():
        if noncentral_only and c.size == 1:
            continue
        out = covering_number(table, c)
        ratio = None
        if out.value is not None and c.size > 1:
            ratio = out.value * math.log(c.size) / log_g
        rows.append(CoverRow(name, table.render_element(c.rep), c.size, out.value, ratio))
    return rows


def corpus_cover_report(specs, alpha_fn=None, jobs: int = 1) -> CoverReport:
    """Per-class covering table over simple or quasisimple corpus members.

    c_ls is the largest cn * log|C| / log|G| over noncentral classes; the
    c_alpha table keys the largest covering number by each member's largest
    alternating section.
    """
    from .widths import alpha as default_alpha

    alpha_fn = alpha_fn or default_alpha
    report = CoverReport()
    tables = []
    for spec in specs:
        spec = parse_spec(spec) if isinstance(spec, str) else spec
        table = build_group(spec)
        if not (is_simple_nonabelian(table) or is_quasisimple(table)):
            raise PreconditionError(
                "not-simple",
                f"{render_spec(spec)} is neither simple nonabelian nor quasisimple",
            )
        tables.append((spec, table))

    def run(item):
        spec, table = item
        return spec, table, group_cover_rows(table, render_spec(spec), noncentral_only=True)

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, tables))
    else:
        results = [run(item) for item in tables]
    for spec, table, rows in results:
        report.rows.extend(rows)
        a = alpha_fn(table, spec=spec)
        worst = max((r.cn for r in rows if r.cn is not None), default=0)
        report.c_alpha[a] = max(report.c_alpha.get(a, 0), worst)
    report.c_ls = report.max_ratio()
    return report
