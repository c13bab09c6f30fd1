"""Truncated families of simple groups and their filter-base mechanics.

A family is a finite list of coordinates, each either an enumerated group
or a symbolic alternating group A_n (class sizes by formula, no
enumeration).  For a tuple of per-coordinate elements, A(t, eps) collects
the coordinates where the class-size ratio h falls below eps; finite
intersections of such sets either stay nonempty or certify that every
coordinate holds a large class, which is exactly what the per-coordinate
covering certificate consumes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .alternating import CycleType, an_class_ratio
from .cover import covering_number, product_covers
from .engine import GroupTable, build_group
from .errors import InvalidSpecError, PreconditionError
from .lattice import is_simple_nonabelian
from .specs import GroupSpec, parse_spec, render_spec


@dataclass
class Coordinate:
    """One family member: symbolic A_n (degree only) or an enumerated group."""

    spec: GroupSpec
    symbolic: bool
    _table: GroupTable | None = None

    @property
    def table(self) -> GroupTable:
        if self.symbolic:
            raise PreconditionError("precondition-violated",
                                    f"{render_spec(self.spec)} is symbolic-only here")
        if self._table is None:
            self._table = build_group(self.spec)
        return self._table

    def name(self) -> str:
        return render_spec(self.spec)


SYMBOLIC_LIMIT = 2000  # alternating degrees above the enumeration comfort zone


@dataclass
class Family:
    coords: list

    def __len__(self):
        return len(self.coords)

    @classmethod
    def from_members(cls, members, symbolic_from: int = 9):
        """members: rendered specs and {"range": "A_n", "from": a, "to": b} blocks.

        Alternating degrees at or above ``symbolic_from`` stay symbolic.
        """
        coords = []
        for m in members:
            if isinstance(m, dict):
                if m.get("range") != "A_n":
                    raise InvalidSpecError("invalid-spec", f"unknown range block {m}")
                lo, hi = int(m["from"]), int(m["to"])
                if lo < 5:
                    raise InvalidSpecError("invalid-spec", "alternating range must start at 5")
                for n in range(lo, hi + 1):
                    coords.append(Coordinate(GroupSpec("alternating", n=n),
                                             symbolic=n >= symbolic_from))
                continue
            spec = parse_spec(m) if isinstance(m, str) else m
            if spec.kind == "alternating" and spec.n >= symbolic_from:
                coords.append(Coordinate(spec, symbolic=True))
            else:
                table = build_group(spec)
                if not is_simple_nonabelian(table):
                    raise InvalidSpecError(
                        "invalid-spec",
                        f"{render_spec(spec)} is not simple nonabelian",
                    )
                coords.append(Coordinate(spec, symbolic=False, _table=table))
        return cls(coords)

    @classmethod
    def from_file(cls, path, symbolic_from: int = 9):
        data = json.loads(Path(path).read_text())
        return cls.from_members(data["members"], symbolic_from=symbolic_from)


def coordinate_h(coord: Coordinate, datum) -> float:
    """Class-size ratio of one coordinate's element.

    Symbolic coordinates take a CycleType; enumerated ones an element index.
    """
    if coord.symbolic:
        assert isinstance(datum, CycleType)
        return an_class_ratio(datum).h
    table = coord.table
    i = int(datum)
    if i == 0:
        return 0.0
    size = table.classes()[table.class_of(i)].size
    return math.log(size) / math.log(table.order)


def make_tuple(family: Family, kind: str) -> list:
    """Uniform named tuples: identity, three-cycle, or long-cycle coordinates."""
    out = []
    for coord in family.coords:
        if kind == "identity":
            out.append(CycleType.of((), coord.spec.n) if coord.symbolic else 0)
        elif kind == "three-cycle":
            if coord.symbolic:
                out.append(CycleType.of((3,), coord.spec.n))
            else:
                out.append(_smallest_nonidentity(coord.table))
        elif kind == "long-cycle":
            if coord.symbolic:
                n = coord.spec.n
                ln = n if n % 2 == 1 else n - 1
                out.append(CycleType.of((ln,), n))
            else:
                out.append(_largest_class_rep(coord.table))
        else:
            raise InvalidSpecError("invalid-spec", f"unknown tuple kind {kind!r}")
    return out


def _smallest_nonidentity(table: GroupTable) -> int:
    return min((c for c in table.classes() if c.rep != 0),
               key=lambda c: (c.size, c.rep)).rep

def _largest_class_rep(table: GroupTable) -> int:
    return max(table.classes(), key=lambda c: (c.size, -c.rep)).rep


@dataclass
class IndexSet:
    """1-based coordinate positions within a truncation of length n."""

    indices: frozenset
    n: int

    def __post_init__(self):
        assert all(1 <= i <= self.n for i in self.indices)

    @property
    def is_cofinite_like(self) -> bool:
        return len(self.indices) > self.n // 2

    def __and__(self, other):
        assert self.n == other.n
        return IndexSet(self.indices & other.indices, self.n)

    def __len__(self):
        return len(self.indices)


def a_set(family: Family, tup, eps: float) -> IndexSet:
    """{j : h_j(t_j) < eps}, 1-based over the truncation."""
    if eps <= 0:
        raise PreconditionError("precondition-violated", "eps must be positive")
    if len(tup) != len(family):
        raise PreconditionError("length-mismatch", "tuple length != family length")
    hit = {
        j + 1
        for j, (coord, datum) in enumerate(zip(family.coords, tup))
        if coordinate_h(coord, datum) < eps
    }
    return IndexSet(frozenset(hit), len(family))


@dataclass
class FipReport:
    has_fip: bool
    witness_index: int | None
    certificate: list = field(default_factory=list)
    eps_min: float = 0.0


def fip_check(family: Family, pairs) -> FipReport:
    """Intersect the A(t, eps) sets of the given (tuple, eps) pairs.

    Nonempty intersection: reports a common index.  Empty: reports, for each
    coordinate, a pair index whose element has h >= min eps there - the
    per-coordinate large-class certificate.
    """
    if not pairs:
        raise PreconditionError("precondition-violated", "need at least one pair")
    sets = [a_set(family, tup, eps) for tup, eps in pairs]
    inter = sets[0]
    for s in sets[1:]:
        inter = inter & s
    eps_min = min(eps for _, eps in pairs)
    if inter.indices:
        return FipReport(True, min(inter.indices), [], eps_min)
    certificate = []
    for j, coord in enumerate(family.coords):
        best = None
        for i, (tup, _) in enumerate(pairs):
            h = coordinate_h(coord, tup[j])
            if h >= eps_min and (best is None or h > best[2]):
                best = (j + 1, i, h)
        assert best is not None, "empty intersection must certify every coordinate"
        certificate.append(best)
    return FipReport(False, None, certificate, eps_min)


def certificate_preconditions_hold(family: Family, tuples, eps: float) -> bool:
    """Every coordinate has some tuple with h >= eps (symbolic coordinates ok)."""
    for j, coord in enumerate(family.coords):
        if not any(coordinate_h(coord, tup[j]) >= eps for tup in tuples):
            return False
    return True


def cover_certificate(family: Family, tuples, eps: float):
    """(N, verified): max per-coordinate covering exponent of the large classes.

    Enumerable coordinates only.  For each coordinate the tuple with the
    largest ratio >= eps supplies the class; its covering exponent comes
    from the class-product BFS, and the final N is re-verified coordinate by
    coordinate.
    """
    for coord in family.coords:
        if coord.symbolic:
            raise PreconditionError(
                "precondition-violated",
                f"coordinate {coord.name()} is symbolic; certificates need enumeration",
            )
    exponents = []
    picks = []
    for j, coord in enumerate(family.coords):
        best = None
        for i, tup in enumerate(tuples):
            h = coordinate_h(coord, tup[j])
            if h >= eps and (best is None or h > best[1]):
                best = (i, h)
        if best is None:
            raise PreconditionError(
                "precondition-violated",
                f"coordinate {j + 1} has no tuple with ratio >= {eps}",
            )
        table = coord.table
        rep = int(tuples[best[0]][j])
        cls = table.classes()[table.class_of(rep)]
        out = covering_number(table, cls)
        assert out.value is not None, "nonidentity class of a simple group must cover"
        exponents.append(out.value)
        picks.append((j, best[0], rep))
    big_n = max(exponents)
    verified = True
    for j, i, rep in picks:
        table = family.coords[j].table
        cls = table.classes()[table.class_of(rep)]
        ok, _ = product_covers(table, [cls.members], big_n)
        verified &= ok
    return big_n, verified


def principal_quotient(family: Family, j: int):
    """Coordinate group at 1-based position j, with kernel-membership checks.

    For an enumerable coordinate, verifies that h vanishes exactly on the
    identity, so the kernel of the j-th projection meets the truncation in
    the tuples with trivial j-th entry.
    """
    if not 1 <= j <= len(family):
        raise PreconditionError("out-of-range", f"index {j} outside 1..{len(family)}")
    coord = family.coords[j - 1]
    checks = {"verified": None}
    if not coord.symbolic:
        table = coord.table
        checks["verified"] = all(
            c.size > 1 for c in table.classes() if c.rep != 0
        )

    def in_kernel(tup) -> bool:
        return coordinate_h(coord, tup[j - 1]) == 0.0

    return coord.spec, in_kernel, checks


def family_h_sequence(family: Family, tup, tolerance: float = 0.05):
    """Per-coordinate h values of one tuple plus a tail-limit report."""
    from .alternating import h_sequence

    if len(tup) != len(family):
        raise PreconditionError("length-mismatch", "tuple length != family length")
    hs = [coordinate_h(coord, datum) for coord, datum in zip(family.coords, tup)]
    return h_sequence(hs, tolerance=tolerance)


def min_nonidentity_ratio(table: GroupTable) -> float:
    """min over nonidentity classes of log|C| / log|G| (bounded-rank floor)."""
    sizes = [c.size for c in table.classes() if c.rep != 0]
    return math.log(min(sizes)) / math.log(table.order)


def subadditivity_violations(table: GroupTable) -> list:
    """Pairs of classes violating |class(ab)| <= |a^G| * |b^G| (expect none)."""
    from .lattice import class_product_ids

    out = []
    classes = table.classes()
    for x in range(len(classes)):
        for y in range(len(classes)):
            bound = classes[x].size * classes[y].size
            for z in class_product_ids(table, x, y):
                if classes[int(z)].size > bound:
                    out.append((x, y, int(z)))
    return out
