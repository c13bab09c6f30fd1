"""SL(n, p) class-size ratios via block elements and exact centralizer orders.

The block constructor produces det-1 matrices that are the identity on a
subspace V0 and act on two complementary blocks as cyclic transformations
without eigenvalue 1 (companion matrices of polynomials f with f(1) != 0).
Centralizer orders are exact: either by enumerating the commutant algebra
and counting det-1 members, or, for constructed block elements whose
commutant structure is known, by a closed product formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fp
from .alternating import ClassRatio
from .errors import CapExceededError, PreconditionError

ALGEBRA_CAP = 10_000_000
_BATCH = 1 << 15


@dataclass(frozen=True)
class MatrixElement:
    n: int
    p: int
    entries: tuple

    def __post_init__(self):
        assert fp.mat_det(self.entries, self.p) != 0, "matrix must be invertible"

    @property
    def det(self) -> int:
        return fp.mat_det(self.entries, self.p)

    def in_sl(self) -> bool:
        return self.det == 1

    def __str__(self):
        return ";".join(",".join(str(x) for x in row) for row in self.entries)


@dataclass(frozen=True)
class BlockConstruction:
    """Shape metadata of a constructed block element.

    dim_v0 identity block; two cyclic blocks of dim_v1 = dim_v2 with
    characteristic polynomials f1, f2 (coefficient tuples, low first).
    cyclic_vectors holds the starting basis index of each cyclic block.
    """

    n: int
    p: int
    dim_v0: int
    dim_v1: int
    f1: tuple
    f2: tuple
    cyclic_vectors: tuple

    def __post_init__(self):
        assert self.dim_v0 + 2 * self.dim_v1 == self.n


def companion(f, p):
    """Companion matrix of monic f (coefficients low-first, f[-1] == 1)."""
    k = len(f) - 1
    m = [[0] * k for _ in range(k)]
    for i in range(k - 1):
        m[i + 1][i] = 1
    for i in range(k):
        m[i][k - 1] = (-f[i]) % p
    return tuple(tuple(r) for r in m)


def _pick_block_polys(k: int, p: int):
    """Two monic degree-k polynomials with f(0) != 0, f(1) != 0 and
    f1(0)*f2(0) = 1 so the two companion blocks multiply to determinant 1."""
    if k == 1 and p == 2:
        raise PreconditionError(
            "no-fixed-point-free-scalar",
            "F_2 has no scalar that avoids both 0 and 1; retry with larger blocks",
        )
    f1 = None
    for cand in fp.monic_polys(k, p):
        if cand[0] != 0 and fp.poly_eval(cand, 1, p) != 0:
            f1 = cand
            break
    assert f1 is not None
    want = pow(f1[0], p - 2, p)
    f2 = None
    for cand in fp.monic_polys(k, p):
        if cand[0] != want or fp.poly_eval(cand, 1, p) == 0:
            continue
        if cand != f1 and fp.poly_gcd(f1, cand, p) == (1,):
            f2 = cand
            break
        if f2 is None and cand == f1:
            f2 = cand  # equal blocks; allowed when no coprime partner exists
    # prefer a coprime partner when one exists
    if f2 == f1:
        for cand in fp.monic_polys(k, p):
            if (cand[0] == want and fp.poly_eval(cand, 1, p) != 0
                    and cand != f1 and fp.poly_gcd(f1, cand, p) == (1,)):
                f2 = cand
                break
    assert f2 is not None
    return f1, f2


def build_block_element(n: int, p: int, beta: float):
    """Identity on V0, fixed-point-free cyclic blocks on V1 and V2.

    dim V0 targets sqrt(1-beta)*n, adjusted so the remainder splits evenly,
    and is clamped to n-2 so the element is never central.
    """
    if n < 3:
        raise PreconditionError("infeasible-decomposition", "need n >= 3")
    if not 0.0 <= beta <= 1.0:
        raise PreconditionError("beta-out-of-range", "beta must lie in [0, 1]")
    alpha = 1.0 - beta
    target = math.sqrt(alpha) * n
    cands = sorted(
        (d for d in range(0, n - 1) if (n - d) % 2 == 0),
        key=lambda d: (abs(d - target), d),
    )
    if not cands:
        raise PreconditionError("infeasible-decomposition", f"no block split for n={n}")
    d0 = cands[0]
    k = (n - d0) // 2
    f1, f2 = _pick_block_polys(k, p)
    ent = [[0] * n for _ in range(n)]
    for i in range(d0):
        ent[i][i] = 1
    for off, f in ((d0, f1), (d0 + k, f2)):
        blk = companion(f, p)
        for i in range(k):
            for j in range(k):
                ent[off + i][off + j] = blk[i][j]
    g = MatrixElement(n, p, tuple(tuple(r) for r in ent))
    construction = BlockConstruction(n, p, d0, k, f1, f2, (d0, d0 + k))
    assert g.in_sl(), "block determinants must balance to 1"
    return g, construction


# -- exact centralizer orders --


def commutant_basis(g: MatrixElement):
    """Basis of {X : gX = Xg} over F_p, via the Kronecker commutation system."""
    n, p = g.n, g.p
    a = np.array(g.entries, dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    m = (np.kron(a, eye) - np.kron(eye, a.T)) % p
    basis = _nullspace_mod_p(m, p)
    return [vec.reshape(n, n) for vec in basis]


def _nullspace_mod_p(m, p):
    m = m.copy() % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for rr in range(r, rows):
            if m[rr, c] % p:
                piv = rr
                break
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = m[r] * inv % p
        for rr in range(rows):
            if rr != r and m[rr, c]:
                m[rr] = (m[rr] - m[rr, c] * m[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = np.zeros(cols, dtype=np.int64)
        vec[fc] = 1
        for ri, pc in enumerate(pivots):
            vec[pc] = (-m[ri, fc]) % p
        basis.append(vec % p)
    return basis


def _batched_det_mod_p(mats, p):
    """Determinants mod p of a (B, n, n) stack, by lockstep elimination."""
    m = mats.copy() % p
    b, n, _ = m.shape
    det = np.ones(b, dtype=np.int64)
    inv_table = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)
    bidx = np.arange(b)
    for col in range(n):
        sub = m[:, col:, col] != 0
        piv_rel = sub.argmax(axis=1)
        has = sub[bidx, piv_rel]
        det[~has] = 0
        rows = col + piv_rel
        swapped = (piv_rel > 0) & has
        det[swapped] = (p - det[swapped]) % p
        tmp = m[bidx, rows].copy()
        m[bidx, rows] = m[bidx, col]
        m[bidx, col] = tmp
        pivot = m[:, col, col]
        det = det * pivot % p
        if col + 1 < n:
            factors = m[:, col + 1:, col] * inv_table[pivot][:, None] % p
            m[:, col + 1:, col:] = (
                m[:, col + 1:, col:] - factors[:, :, None] * m[:, None, col, col:]
            ) % p
    return det


def centralizer_order_sl(g: MatrixElement, alg_cap: int = ALGEBRA_CAP) -> int:
    """|C_{SL(n,p)}(g)| by enumerating the commutant algebra.

    Counts invertible det-1 members of the solution space of gX = Xg.
    """
    basis = commutant_basis(g)
    m = len(basis)
    p = g.p
    total = p**m
    if total > alg_cap:
        raise CapExceededError(
            "algebra-too-large", f"commutant algebra has {p}^{m} members"
        )
    stack = np.stack(basis).astype(np.int64)
    count = 0
    for start in range(0, total, _BATCH):
        codes = np.arange(start, min(start + _BATCH, total), dtype=np.int64)
        coeffs = np.empty((codes.size, m), dtype=np.int64)
        v = codes.copy()
        for i in range(m):
            coeffs[:, i] = v % p
            v //= p
        mats = np.tensordot(coeffs, stack, axes=(1, 0)) % p
        dets = _batched_det_mod_p(mats, p)
        count += int(np.count_nonzero(dets == 1))
    return count


def structured_centralizer_order(c: BlockConstruction) -> int:
    """Centralizer order of a constructed block element, in closed form.

    The commutant splits along the coprime characteristic-polynomial pieces:
    full matrices on the identity block, the polynomial algebra F_p[x]/(f)
    on each cyclic block (a 2x2 matrix algebra over the common residue ring
    when the two blocks are equal).
    """
    p = c.p
    if c.f1 != c.f2:
        assert fp.poly_gcd(c.f1, c.f2, p) == (1,), "blocks must be coprime"
        part = fp.unit_count(c.f1, p) * fp.unit_count(c.f2, p)
    elif c.dim_v1 == 1:
        part = fp.gl_order(2, p)  # two equal scalar blocks: GL_2 on the eigenspace
    else:
        fac = fp.factor_poly(c.f1, p)
        if len(fac) != 1 or fac[0][1] != 1:
            raise CapExceededError(
                "algebra-too-large", "equal reducible blocks need enumeration"
            )
        q = p ** (len(c.f1) - 1)
        part = (q**2 - 1) * (q**2 - q)  # GL(2, F_q) on the isotypic piece
    gl_part = fp.gl_order(c.dim_v0, p) if c.dim_v0 else 1
    total_gl = gl_part * part
    if p == 2:
        return total_gl
    if c.dim_v0 >= 1:
        # det is onto F_p^* already on the GL(dim V0) factor
        return total_gl // (p - 1)
    # no identity block: count det-1 members directly
    g, _ = _rebuild(c)
    return centralizer_order_sl(g)


def _rebuild(c: BlockConstruction):
    ent = [[0] * c.n for _ in range(c.n)]
    for i in range(c.dim_v0):
        ent[i][i] = 1
    k = c.dim_v1
    for off, f in ((c.dim_v0, c.f1), (c.dim_v0 + k, c.f2)):
        blk = companion(f, c.p)
        for i in range(k):
            for j in range(k):
                ent[off + i][off + j] = blk[i][j]
    return MatrixElement(c.n, c.p, tuple(tuple(r) for r in ent)), c


def sl_class_ratio(n: int, p: int, centralizer: int) -> ClassRatio:
    group = fp.sl_order(n, p)
    size = group // centralizer
    return ClassRatio(math.log(size), math.log(group))


def spectrum_element_sl(n: int, p: int, beta: float, alg_cap: int = ALGEBRA_CAP):
    """Block element plus its class-size ratio in SL(n, p).

    Returns (MatrixElement, ClassRatio, BlockConstruction).  The exact
    centralizer order comes from algebra enumeration when it fits under the
    cap and from the closed block formula otherwise.
    """
    g, construction = build_block_element(n, p, beta)
    m = len(commutant_basis(g))
    if p**m <= alg_cap:
        cent = centralizer_order_sl(g, alg_cap=alg_cap)
    else:
        cent = structured_centralizer_order(construction)
    return g, sl_class_ratio(n, p, cent), construction


def stabilizer_block_order(c: BlockConstruction) -> int:
    """|SL(dim V0, p)|: the pointwise stabilizer acting only on V0."""
    if c.dim_v0 == 0:
        return 1
    return fp.sl_order(c.dim_v0, c.p)


def central_quotient_ratio_bounds(n: int, p: int, centralizer: int):
    """h-interval for the image of an SL class in the central quotient.

    The projective class size sits between sl_class/|Z| and sl_class, so the
    quotient ratio is pinned to this interval (upper end clamped to 1).
    """
    z = math.gcd(n, p - 1)
    sl_class = fp.sl_order(n, p) // centralizer
    log_q = math.log(fp.psl_order(n, p))
    lo = math.log(max(1, sl_class // z)) / log_q
    hi = min(1.0, math.log(sl_class) / log_q)
    return lo, hi
