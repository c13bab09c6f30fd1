"""Finite group tables with indexed elements and vectorized index kernels.

A ``GroupTable`` stores every element in a canonical hashable form plus the
right/left translation arrays of its generators.  All other operations work
on integer indices: a product ``x * y`` is the generator word of ``y``
replayed through the right-translation arrays, so no order^2 multiplication
table is ever materialized.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fp
from .errors import CapExceededError, InvalidSpecError, PreconditionError
from .specs import GroupSpec, expected_order, parse_spec, render_spec

ENUMERATION_CAP = 2_000_000
_TRANSLATION_CACHE = 512


class ElementSet:
    """Dense bit-vector subset of a group, indexed like the table."""

    __slots__ = ("bits", "_card")

    def __init__(self, bits):
        self.bits = np.asarray(bits, dtype=bool)
        self._card = None

    @classmethod
    def from_indices(cls, order, indices):
        bits = np.zeros(order, dtype=bool)
        bits[np.asarray(indices, dtype=np.int64)] = True
        return cls(bits)

    @classmethod
    def empty(cls, order):
        return cls(np.zeros(order, dtype=bool))

    @classmethod
    def full(cls, order):
        return cls(np.ones(order, dtype=bool))

    @property
    def card(self) -> int:
        if self._card is None:
            self._card = int(np.count_nonzero(self.bits))
        return self._card

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __contains__(self, i) -> bool:
        return bool(self.bits[i])

    def __len__(self) -> int:
        return self.card

    def __eq__(self, other) -> bool:
        return isinstance(other, ElementSet) and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())

    def __or__(self, other):
        return ElementSet(self.bits | other.bits)

    def __and__(self, other):
        return ElementSet(self.bits & other.bits)

    def issubset(self, other) -> bool:
        return bool(np.all(other.bits[self.bits]))

    def __repr__(self):
        return f"ElementSet(card={self.card} of {self.bits.size})"


@dataclass
class ConjClass:
    rep: int
    size: int
    members: ElementSet


@dataclass
class Automorphism:
    """Bijective multiplicative self-map, stored as an index permutation."""

    perm: np.ndarray
    source: tuple = ()

    def __call__(self, i: int) -> int:
        return int(self.perm[i])

    def inverse(self) -> "Automorphism":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.perm.size)
        return Automorphism(inv, self.source)

    def is_identity(self) -> bool:
        return bool(np.all(self.perm == np.arange(self.perm.size)))


# -- canonical element forms, one strategy per group kind --


class PermOps:
    def __init__(self, degree):
        self.degree = degree

    def identity(self):
        return tuple(range(self.degree))

    def mul(self, a, b):
        # act left-to-right: (a*b)(k) = b[a[k]]
        return tuple(b[x] for x in a)

    def inv(self, a):
        out = [0] * len(a)
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    def render(self, a):
        return perm_to_cycles(a)


class MatOps:
    def __init__(self, n, p):
        self.n = n
        self.p = p

    def identity(self):
        return fp.mat_identity(self.n)

    def mul(self, a, b):
        return fp.mat_mul(a, b, self.p)

    def inv(self, a):
        return fp.mat_inv(a, self.p)

    def render(self, a):
        return ";".join(",".join(str(x) for x in row) for row in a)


class TupleOps:
    def __init__(self, factors):
        self.factors = factors

    def identity(self):
        return tuple(f.identity() for f in self.factors)

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        return tuple(f.inv(x) for f, x in zip(self.factors, a))

    def render(self, a):
        return "(" + " x ".join(f.render(x) for f, x in zip(self.factors, a)) + ")"


class CosetOps:
    """Forms of a quotient group: parent forms of minimal coset members."""

    def __init__(self, parent, coset_min):
        self.parent = parent
        self.coset_min = coset_min

    def identity(self):
        return self.parent.elements[int(self.coset_min[0])]

    def mul(self, a, b):
        pa = self.parent.index[a]
        pb = self.parent.index[b]
        return self.parent.elements[int(self.coset_min[self.parent.mul(pa, pb)])]

    def inv(self, a):
        pa = self.parent.index[a]
        return self.parent.elements[int(self.coset_min[int(self.parent.inv[pa])])]

    def render(self, a):
        return self.parent.ops.render(a) + "*N"


def perm_to_cycles(a) -> str:
    """1-based cycle notation; digits are space-separated above degree 9."""
    n = len(a)
    sep = " " if n > 9 else ""
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i] or a[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = a[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = a[j]
        out.append("(" + sep.join(str(k + 1) for k in cyc) + ")")
    return "".join(out) if out else "()"


def cycles_to_perm(text: str, degree: int):
    """Parse 1-based cycle notation like ``(12)(34)`` or ``(1 2 11)``."""
    text = text.strip()
    if text in ("()", "e", "id", ""):
        return tuple(range(degree))
    perm = list(range(degree))
    for body in _cycle_bodies(text):
        pts = _cycle_points(body)
        for k in pts:
            if not 1 <= k <= degree:
                raise InvalidSpecError(
                    "invalid-spec", f"point {k} outside degree {degree}"
                )
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


def _cycle_bodies(text):
    bodies = re.findall(r"\(([^()]*)\)", text)
    if "".join(f"({b})" for b in bodies).replace(" ", "") != text.replace(" ", ""):
        raise InvalidSpecError("invalid-spec", f"bad cycle notation {text!r}")
    return bodies


def _cycle_points(body):
    body = body.strip()
    if not body:
        return []
    if "," in body or " " in body:
        return [int(t) for t in re.split(r"[,\s]+", body) if t]
    return [int(ch) for ch in body]


class GroupTable:
    """A fully enumerated finite group.

    Elements are indexed 0..order-1 with the identity at index 0.  The table
    keeps, per generator, the right and left translation arrays plus a BFS
    spanning tree; everything else (full translations, conjugation maps,
    conjugacy classes) is derived lazily and cached.
    """

    def __init__(self, ops, elements, index, gens, gen_right, gen_left, inv,
                 tree_parent, tree_gen, spec=None):
        self.ops = ops
        self.elements = elements
        self.index = index
        self.order = len(elements)
        self.gens = gens
        self.spec = spec
        self.inv = inv
        self._gen_right = gen_right
        self._gen_left = gen_left
        self._tree_parent = tree_parent
        self._tree_gen = tree_gen
        self._rt_cache = {}
        self._lt_cache = {}
        self._conj_cache = {}
        self._classes = None
        self._class_ids = None

    # -- single-element arithmetic --

    def word(self, i: int) -> list:
        out = []
        while i != 0:
            out.append(int(self._tree_gen[i]))
            i = int(self._tree_parent[i])
        out.reverse()
        return out

    def mul(self, i: int, j: int) -> int:
        k = i
        for g in self.word(j):
            k = int(self._gen_right[g][k])
        return k

    def element_order(self, i: int) -> int:
        n, k = 1, i
        while k != 0:
            k = self.mul(k, i)
            n += 1
        return n

    def power(self, i: int, e: int) -> int:
        e %= self.element_order(i)
        k = 0
        for _ in range(e):
            k = self.mul(k, i)
        return k

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(int(self.inv[a]), int(self.inv[b])), self.mul(a, b))

    def conjugate(self, x: int, g: int) -> int:
        return self.mul(self.mul(int(self.inv[g]), x), g)

    # -- vectorized index kernels --

    def apply_word_right(self, idx, j):
        """idx -> idx * element_j, elementwise on an index array."""
        out = np.asarray(idx)
        for g in self.word(j):
            out = self._gen_right[g][out]
        return out

    def apply_word_left(self, idx, j):
        """idx -> element_j * idx, elementwise on an index array."""
        out = np.asarray(idx)
        for g in reversed(self.word(j)):
            out = self._gen_left[g][out]
        return out

    def right_translation(self, i: int) -> np.ndarray:
        t = self._rt_cache.get(i)
        if t is None:
            t = self.apply_word_right(np.arange(self.order), i)
            if len(self._rt_cache) < _TRANSLATION_CACHE:
                self._rt_cache[i] = t
        return t

    def left_translation(self, i: int) -> np.ndarray:
        t = self._lt_cache.get(i)
        if t is None:
            t = self.apply_word_left(np.arange(self.order), i)
            if len(self._lt_cache) < _TRANSLATION_CACHE:
                self._lt_cache[i] = t
        return t

    def conjugation_by(self, g: int) -> np.ndarray:
        """Array c with c[x] = g^-1 x g."""
        c = self._conj_cache.get(g)
        if c is None:
            c = self.right_translation(g)[self.left_translation(int(self.inv[g]))]
            if len(self._conj_cache) < _TRANSLATION_CACHE:
                self._conj_cache[g] = c
        return c

    # -- conjugacy classes --

    def classes(self) -> list:
        """Full class partition sorted by (size, rep index); identity first."""
        if self._classes is None:
            conj = [self.conjugation_by(g) for g in self.gens]
            assigned = np.zeros(self.order, dtype=bool)
            raw = []
            for start in range(self.order):
                if assigned[start]:
                    continue
                members = np.zeros(self.order, dtype=bool)
                members[start] = True
                assigned[start] = True
                frontier = np.array([start])
                while frontier.size:
                    imgs = np.concatenate([c[frontier] for c in conj]) if conj else frontier[:0]
                    imgs = np.unique(imgs)
                    fresh = imgs[~members[imgs]]
                    members[fresh] = True
                    assigned[fresh] = True
                    frontier = fresh
                raw.append(ConjClass(start, int(members.sum()), ElementSet(members)))
            raw.sort(key=lambda c: (c.size, c.rep))
            ids = np.empty(self.order, dtype=np.int32)
            for ci, c in enumerate(raw):
                ids[c.members.bits] = ci
            self._classes = raw
            self._class_ids = ids
        return self._classes

    def class_ids(self) -> np.ndarray:
        self.classes()
        return self._class_ids

    def class_of(self, i: int) -> int:
        return int(self.class_ids()[i])

    def center_set(self) -> ElementSet:
        bits = np.zeros(self.order, dtype=bool)
        for c in self.classes():
            if c.size == 1:
                bits[c.rep] = True
        return ElementSet(bits)

    def is_abelian(self) -> bool:
        return len(self.classes()) == self.order

    # -- product-set kernel --

    def product_bits(self, a_bits, b_bits) -> np.ndarray:
        """Exact product set {x*y} as a bit vector; iterates the smaller side."""
        ia = np.flatnonzero(a_bits)
        ib = np.flatnonzero(b_bits)
        out = np.zeros(self.order, dtype=bool)
        if ia.size == 0 or ib.size == 0:
            return out
        if ib.size <= ia.size:
            for b in ib:
                out[self.apply_word_right(ia, int(b))] = True
        else:
            for a in ia:
                out[self.apply_word_left(ib, int(a))] = True
        return out

    def product_set(self, a: ElementSet, b: ElementSet) -> ElementSet:
        return ElementSet(self.product_bits(a.bits, b.bits))

    def render_element(self, i: int) -> str:
        return self.ops.render(self.elements[i])

    def element_by_render(self, text: str) -> int:
        """Inverse of render_element for permutation and matrix forms."""
        form = parse_form(self, text)
        try:
            return self.index[form]
        except KeyError:
            raise PreconditionError(
                "element-not-in-group", f"{text!r} is not an element of this group"
            ) from None

    def __repr__(self):
        name = render_spec(self.spec) if self.spec else "group"
        return f"GroupTable({name}, order={self.order})"


def parse_form(table: GroupTable, text: str):
    ops = table.ops
    if isinstance(ops, PermOps):
        return cycles_to_perm(text, ops.degree)
    if isinstance(ops, MatOps):
        rows = tuple(
            tuple(int(x) % ops.p for x in row.split(","))
            for row in text.strip().split(";")
        )
        if len(rows) != ops.n or any(len(r) != ops.n for r in rows):
            raise InvalidSpecError("invalid-spec", f"bad {ops.n}x{ops.n} matrix {text!r}")
        return rows
    raise InvalidSpecError(
        "invalid-spec", "only permutation and matrix elements can be parsed"
    )


# -- table construction --


def bfs_build(ops, gen_forms, cap=None, spec=None, expect=None) -> GroupTable:
    """Enumerate the group generated by ``gen_forms`` by breadth-first closure."""
    cap = cap or ENUMERATION_CAP
    if expect is not None and expect > cap:
        raise CapExceededError(
            "cap-exceeded", f"projected order {expect} above cap {cap}"
        )
    ident = ops.identity()
    gen_forms = [g for g in gen_forms if g != ident]
    if not gen_forms:
        gen_forms = []
    elements = [ident]
    index = {ident: 0}
    tree_parent = [0]
    tree_gen = [0]
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            fi = elements[i]
            for s, g in enumerate(gen_forms):
                prod = ops.mul(fi, g)
                if prod not in index:
                    index[prod] = len(elements)
                    elements.append(prod)
                    tree_parent.append(i)
                    tree_gen.append(s)
                    nxt.append(index[prod])
                    if len(elements) > cap:
                        raise CapExceededError(
                            "cap-exceeded", f"enumeration exceeded cap {cap}"
                        )
        frontier = nxt
    order = len(elements)
    if expect is not None and order != expect:
        raise InvalidSpecError(
            "invalid-spec",
            f"generators produced order {order}, expected {expect}",
        )
    gen_right = []
    gen_left = []
    for g in gen_forms:
        gr = np.empty(order, dtype=np.int32)
        gl = np.empty(order, dtype=np.int32)
        for i, f in enumerate(elements):
            gr[i] = index[ops.mul(f, g)]
            gl[i] = index[ops.mul(g, f)]
        gen_right.append(gr)
        gen_left.append(gl)
    inv = np.empty(order, dtype=np.int32)
    for i, f in enumerate(elements):
        inv[i] = index[ops.inv(f)]
    gens = [index[g] for g in gen_forms]
    return GroupTable(
        ops, elements, index, gens, gen_right, gen_left, inv,
        np.asarray(tree_parent, dtype=np.int32),
        np.asarray(tree_gen, dtype=np.int32),
        spec=spec,
    )


def _alternating_gen_perms(n):
    if n < 3:
        return []
    three = list(range(n))
    three[0], three[1], three[2] = 1, 2, 0
    gens = [tuple(three)]
    if n > 3:
        cyc = list(range(n))
        if n % 2 == 1:
            for i in range(n):
                cyc[i] = (i + 1) % n
        else:
            cyc[0] = 0
            for i in range(1, n):
                cyc[i] = i % (n - 1) + 1
        gens.append(tuple(cyc))
    return gens


def _symmetric_gen_perms(n):
    if n < 2:
        return []
    swap = list(range(n))
    swap[0], swap[1] = 1, 0
    gens = [tuple(swap)]
    if n > 2:
        gens.append(tuple((i + 1) % n for i in range(n)))
    return gens


def _sl_gen_mats(n, p):
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n >= 2:
        t[0][1] = 1
    trans = tuple(tuple(r) for r in t)
    if n == 1:
        return [trans] if p > 1 else []
    c = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        c[i + 1][i] = 1
    c[0][n - 1] = (-1) ** (n - 1) % p
    return [trans, tuple(tuple(r) for r in c)]


def _gl_gen_mats(n, p):
    gens = _sl_gen_mats(n, p)
    if p == 2:
        return gens
    r = _primitive_root(p)
    d = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    d[0][0] = r
    return gens + [tuple(tuple(row) for row in d)]


def _primitive_root(p):
    phi = p - 1
    factors = set()
    m, d = phi, 2
    while d * d <= m:
        while m % d == 0:
            factors.add(d)
            m //= d
        d += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in factors):
            return g
    return 1


def _tau_gen_perms(ns):
    degree = max(2, sum(ns))
    gens = []
    base = 0
    for n in ns:
        for g in _alternating_gen_perms(n):
            full = list(range(degree))
            for i, v in enumerate(g):
                full[base + i] = base + v
            gens.append(tuple(full))
        base += n
    tau = list(range(degree))
    base = 0
    if ns:
        for n in ns:
            tau[base], tau[base + 1] = tau[base + 1], tau[base]
            base += n
    else:
        tau[0], tau[1] = 1, 0
    gens.append(tuple(tau))
    return degree, gens, tuple(tau)


def build_group(spec, cap=None) -> GroupTable:
    """Build a complete GroupTable from a GroupSpec or its rendered string."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    k = spec.kind
    expect = expected_order(spec)
    if k in ("alternating", "symmetric", "dihedral", "cyclic"):
        n = spec.n
        if k == "alternating":
            gens = _alternating_gen_perms(n)
            degree = max(n, 1)
        elif k == "symmetric":
            gens = _symmetric_gen_perms(n)
            degree = max(n, 1)
        elif k == "cyclic":
            degree = max(n, 1)
            gens = [tuple((i + 1) % n for i in range(n))] if n > 1 else []
        else:  # dihedral
            if n == 1:
                return build_group(GroupSpec("cyclic", n=2), cap=cap)
            if n == 2:
                return build_group(
                    GroupSpec("product", parts=(GroupSpec("cyclic", n=2),) * 2), cap=cap
                )
            degree = n
            rot = tuple((i + 1) % n for i in range(n))
            ref = tuple(n - 1 - i for i in range(n))
            gens = [rot, ref]
        table = bfs_build(PermOps(degree), gens, cap=cap, spec=spec, expect=expect)
    elif k in ("SL", "GL"):
        gens = _sl_gen_mats(spec.n, spec.p) if k == "SL" else _gl_gen_mats(spec.n, spec.p)
        table = bfs_build(MatOps(spec.n, spec.p), gens, cap=cap, spec=spec, expect=expect)
    elif k == "PSL":
        sl = build_group(GroupSpec("SL", n=spec.n, p=spec.p), cap=cap)
        table, _ = quotient(sl, center_subgroup(sl))
        table.spec = spec
        assert table.order == expect
    elif k == "file":
        table = build_from_file(spec.path, cap=cap, spec=spec)
    elif k == "product":
        factors = [build_group(s, cap=cap) for s in spec.parts]
        table = direct_product(factors, cap=cap, spec=spec)
    elif k == "central_product":
        factors = [build_group(s, cap=cap) for s in spec.parts]
        table = central_product(factors, cap=cap, spec=spec)
    elif k == "tau_product":
        degree, gens, tau = _tau_gen_perms(spec.parts)
        table = bfs_build(PermOps(degree), gens, cap=cap, spec=spec, expect=expect)
        table.tau = table.index[tau]
    else:
        raise InvalidSpecError("invalid-spec", f"unknown kind {k!r}")
    return table


def build_from_file(path, cap=None, spec=None) -> GroupTable:
    data = json.loads(Path(path).read_text())
    if "degree" in data:
        degree = int(data["degree"])
        gens = [tuple(int(x) for x in g) for g in data["generators"]]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise InvalidSpecError("invalid-spec", f"{g} is not a permutation")
        return bfs_build(PermOps(degree), gens, cap=cap, spec=spec)
    if "p" in data:
        p, n = int(data["p"]), int(data["n"])
        if not fp.is_prime(p):
            raise InvalidSpecError("invalid-spec", f"{p} is not prime")
        gens = [tuple(tuple(int(x) % p for x in row) for row in g)
                for g in data["generators"]]
        for g in gens:
            if fp.mat_det(g, p) == 0:
                raise InvalidSpecError("invalid-spec", "singular generator")
        return bfs_build(MatOps(n, p), gens, cap=cap, spec=spec)
    raise InvalidSpecError("invalid-spec", f"unrecognized generator file {path}")


def direct_product(factors, cap=None, spec=None) -> GroupTable:
    ops = TupleOps([t.ops for t in factors])
    expect = math.prod(t.order for t in factors)
    gen_forms = []
    for fi, t in enumerate(factors):
        for g in t.gens:
            form = tuple(
                factors[fj].elements[g] if fj == fi else factors[fj].elements[0]
                for fj in range(len(factors))
            )
            gen_forms.append(form)
    table = bfs_build(ops, gen_forms, cap=cap, spec=spec, expect=expect)
    table.factor_tables = list(factors)
    table.factor_embeddings = _product_embeddings(table, factors)
    return table


def _product_embeddings(table, factors):
    embeds = []
    for fi, t in enumerate(factors):
        emb = np.empty(t.order, dtype=np.int64)
        for i in range(t.order):
            form = tuple(
                t.elements[i] if fj == fi else factors[fj].elements[0]
                for fj in range(len(factors))
            )
            emb[i] = table.index[form]
        embeds.append(emb)
    return embeds


# -- subgroup / quotient machinery --


def generated_subgroup(table: GroupTable, gen_idxs) -> np.ndarray:
    """Bit vector of the subgroup generated by the given element indices."""
    visited = np.zeros(table.order, dtype=bool)
    visited[0] = True
    gens = sorted({int(g) for g in gen_idxs} - {0})
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        parts = []
        for g in gens:
            img = table.apply_word_right(frontier, g)
            fresh = np.unique(img[~visited[img]])
            if fresh.size:
                visited[fresh] = True
                parts.append(fresh)
        frontier = np.unique(np.concatenate(parts)) if parts else frontier[:0]
    return visited


def greedy_generators(table: GroupTable, bits) -> list:
    """A small generating list for the subgroup given as a bit vector."""
    idxs = np.flatnonzero(bits)
    gens = []
    have = np.zeros(table.order, dtype=bool)
    have[0] = True
    for i in idxs:
        if not have[i]:
            gens.append(int(i))
            have = generated_subgroup(table, gens)
    return gens


def is_subgroup(table: GroupTable, bits) -> bool:
    if not bits[0]:
        return False
    prod = table.product_bits(bits, bits)
    return bool(np.all(bits[prod]))


def is_normal(table: GroupTable, bits) -> bool:
    for g in table.gens:
        if not np.array_equal(bits[table.conjugation_by(g)], bits):
            return False
    return True


def subtable(table: GroupTable, bits):
    """Build the subgroup as its own GroupTable.

    Returns (sub, to_parent) where to_parent maps sub indices to parent
    indices.
    """
    gens = greedy_generators(table, bits)
    gen_forms = [table.elements[g] for g in gens]
    sub = bfs_build(table.ops, gen_forms, spec=None,
                    expect=int(np.count_nonzero(bits)))
    to_parent = np.array([table.index[f] for f in sub.elements], dtype=np.int64)
    return sub, to_parent


def center_subgroup(table: GroupTable) -> ElementSet:
    return table.center_set()


def quotient(table: GroupTable, n_set):
    """Quotient by a normal subgroup; returns (GroupTable, projection array).

    Coset representatives are the minimal elements of each coset in the
    construction enumeration order.
    """
    bits = n_set.bits if isinstance(n_set, ElementSet) else np.asarray(n_set, bool)
    if not is_subgroup(table, bits):
        raise PreconditionError("not-subgroup", "N is not a subgroup")
    if not is_normal(table, bits):
        raise PreconditionError("not-normal", "N is not normal")
    coset_min = np.arange(table.order)
    for n in np.flatnonzero(bits):
        coset_min = np.minimum(coset_min, table.right_translation(int(n)))
    # right_translation(n)[i] = i*n, so coset_min[i] = min of the coset i*N
    reps = np.unique(coset_min)
    ops = CosetOps(table, coset_min)
    gen_forms = []
    for g in table.gens:
        rep = int(coset_min[g])
        if rep != int(coset_min[0]):
            gen_forms.append(table.elements[rep])
    q = bfs_build(ops, gen_forms, expect=len(reps))
    qid = {table.index[f]: i for i, f in enumerate(q.elements)}
    projection = np.array([qid[int(coset_min[i])] for i in range(table.order)],
                          dtype=np.int64)
    return q, projection


def central_product(factors, identification="centers", cap=None, spec=None):
    """Direct product glued along identified central subgroups.

    With identification="centers" the full centers (which must be cyclic of
    one common order) are identified via generator matching; "trivial" gives
    the plain direct product.
    """
    prod = direct_product(factors, cap=cap, spec=spec)
    if identification == "trivial":
        table = prod
        table.factor_images = [
            ElementSet.from_indices(table.order, emb)
            for emb in table.factor_embeddings
        ]
        return table
    if identification != "centers":
        raise InvalidSpecError("invalid-spec", f"unknown identification {identification!r}")
    centers = [t.center_set() for t in factors]
    zgens = []
    zorder = None
    for t, z in zip(factors, centers):
        gen = None
        for i in z.indices():
            if t.element_order(int(i)) == z.card:
                gen = int(i)
                break
        if gen is None:
            raise PreconditionError(
                "identification-not-isomorphism", "factor center is not cyclic"
            )
        if zorder is None:
            zorder = z.card
        elif z.card != zorder:
            raise PreconditionError(
                "identification-not-isomorphism",
                "factor centers have different orders",
            )
        zgens.append(gen)
    for t, g in zip(factors, zgens):
        if t.classes()[t.class_of(g)].size != 1:
            raise PreconditionError("identification-not-central", "gluing element not central")
    # pairwise glue elements {(... z^k, z^-k ...)} on adjacent factors;
    # their closure identifies every center with the first
    glue = []
    for fi in range(len(factors) - 1):
        for k in range(zorder):
            form = []
            for fj, (t, g) in enumerate(zip(factors, zgens)):
                if fj == fi:
                    e = t.power(g, k)
                elif fj == fi + 1:
                    e = int(t.inv[t.power(g, k)])
                else:
                    e = 0
                form.append(t.elements[e])
            glue.append(prod.index[tuple(form)])
    kbits = generated_subgroup(prod, glue)
    q, projection = quotient(prod, ElementSet(kbits))
    q.spec = spec
    q.factor_tables = list(factors)
    q.factor_embeddings = [projection[emb] for emb in prod.factor_embeddings]
    q.factor_images = [
        ElementSet.from_indices(q.order, emb) for emb in q.factor_embeddings
    ]
    return q


def automorphism_from_images(table: GroupTable, gens, images) -> Automorphism:
    """The unique homomorphism extending gens -> images, verified."""
    if len(gens) != len(images):
        raise PreconditionError("length-mismatch", "gens and images differ in length")
    gens = [int(g) for g in gens]
    images = [int(m) for m in images]
    reach = generated_subgroup(table, gens)
    if not np.all(reach):
        raise PreconditionError("gens-do-not-generate", "gens do not generate the group")
    phi = np.full(table.order, -1, dtype=np.int64)
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for g, m in zip(gens, images):
                j = table.mul(i, g)
                if phi[j] < 0:
                    phi[j] = table.mul(int(phi[i]), m)
                    nxt.append(j)
        frontier = nxt
    if sorted(phi.tolist()) != list(range(table.order)):
        raise PreconditionError("not-bijective", "generator images induce a non-bijection")
    for g, m in zip(gens, images):
        lhs = phi[table.right_translation(g)]
        rhs = table.apply_word_right(phi, m)
        if not np.array_equal(lhs, rhs):
            raise PreconditionError("not-a-homomorphism", "images do not extend to a homomorphism")
    return Automorphism(phi, source=tuple(zip(gens, images)))


def inner_automorphism(table: GroupTable, g: int) -> Automorphism:
    return Automorphism(table.conjugation_by(g).astype(np.int64),
                        source=(("conj", g),))


def validate_table(table: GroupTable, seed=0, triples=10_000) -> None:
    """Spot-check group axioms: exact identity/inverses, sampled associativity."""
    rng = np.random.default_rng(seed)
    for i in range(table.order):
        assert table.mul(i, int(table.inv[i])) == 0
        assert table.mul(int(table.inv[i]), i) == 0
    n = table.order
    xs = rng.integers(0, n, size=triples)
    ys = rng.integers(0, n, size=triples)
    zs = rng.integers(0, n, size=triples)
    for x, y, z in zip(xs, ys, zs):
        assert table.mul(table.mul(int(x), int(y)), int(z)) == \
            table.mul(int(x), table.mul(int(y), int(z)))
