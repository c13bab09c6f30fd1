"""Arithmetic over prime fields F_p: matrices, polynomials, group orders.

Matrices are tuples of row tuples with entries reduced mod p.  Polynomials
are tuples of coefficients, lowest degree first, with no trailing zeros.
"""

from __future__ import annotations

import math


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def mat_mul(a, b, p):
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
    )


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_det(a, p):
    """Determinant mod p by Gaussian elimination."""
    n = len(a)
    m = [list(row) for row in a]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col] % p
        inv = pow(m[col][col], p - 2, p)
        for r in range(col + 1, n):
            f = m[r][col] * inv % p
            if f:
                for c in range(col, n):
                    m[r][c] = (m[r][c] - f * m[col][c]) % p
    return det % p


def mat_inv(a, p):
    """Inverse mod p; raises ZeroDivisionError when singular."""
    n = len(a)
    m = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] % p), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = pow(m[col][col], p - 2, p)
        m[col] = [x * inv % p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def gl_order(n: int, p: int) -> int:
    q = p**n
    out = 1
    for i in range(n):
        out *= q - p**i
    return out


def sl_order(n: int, p: int) -> int:
    return gl_order(n, p) // (p - 1)


def psl_order(n: int, p: int) -> int:
    return sl_order(n, p) // math.gcd(n, p - 1)


# -- polynomials over F_p (coefficient tuples, low degree first) --


def poly_trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def poly_divmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if db == 0 and lb == 0:
        raise ZeroDivisionError("division by zero polynomial")
    inv = pow(lb, p - 2, p)
    q = [0] * max(1, len(a) - db)
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        while da > 0 and a[da] == 0:
            da -= 1
        if da < db:
            break
        f = a[da] * inv % p
        q[da - db] = f
        for i, y in enumerate(b):
            a[da - db + i] = (a[da - db + i] - f * y) % p
    return poly_trim(q), poly_trim(a)


def poly_gcd(a, b, p):
    a, b = poly_trim(a), poly_trim(b)
    while b != (0,):
        a, b = b, poly_divmod(a, b, p)[1]
    if a[-1] != 1 and a != (0,):
        inv = pow(a[-1], p - 2, p)
        a = poly_trim([x * inv % p for x in a])
    return a


def poly_eval(c, x, p):
    out = 0
    for coef in reversed(c):
        out = (out * x + coef) % p
    return out


def monic_polys(deg, p):
    """All monic polynomials of the given degree, low coefficients first."""
    if deg == 0:
        yield (1,)
        return
    total = p**deg
    for code in range(total):
        coeffs = []
        v = code
        for _ in range(deg):
            coeffs.append(v % p)
            v //= p
        yield tuple(coeffs) + (1,)


def factor_poly(f, p):
    """Factor a monic polynomial into irreducibles by trial division.

    Returns a list of (irreducible, multiplicity).  Fine for the small
    degrees this package needs.
    """
    f = poly_trim(f)
    out = []
    deg = len(f) - 1
    d = 1
    while len(f) - 1 >= 2 * d:
        for cand in monic_polys(d, p):
            if len(cand) == 1:
                continue
            mult = 0
            while True:
                q, r = poly_divmod(f, cand, p)
                if r == (0,):
                    f, mult = q, mult + 1
                else:
                    break
            if mult:
                # cand may be reducible only if smaller factors were missed,
                # which trial order by degree rules out.
                out.append((cand, mult))
            if len(f) - 1 < 2 * d:
                break
        d += 1
    if len(f) > 1:
        out.append((f, 1))
    assert sum((len(q) - 1) * m for q, m in out) == deg
    return out


def unit_count(f, p):
    """Number of units in F_p[x]/(f) for monic f with f(0) != 0."""
    total = p ** (len(f) - 1)
    for q, m in factor_poly(f, p):
        dq = len(q) - 1
        total = total // p ** (dq * m) * (p ** (dq * m) - p ** (dq * (m - 1)))
    return total
