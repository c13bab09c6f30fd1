"""Symbolic class-size arithmetic in alternating groups.

Class sizes in A_n come from the cycle-type formula n!/z with the standard
splitting criterion (all parts odd and distinct), so no enumeration is
needed; log values go through lgamma and stay accurate up to n ~ 1e5.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .errors import PreconditionError

LN2 = math.log(2.0)


@dataclass(frozen=True)
class CycleType:
    """Integer partition of n; parts sorted descending, fixed points included."""

    parts: tuple
    n: int

    def __post_init__(self):
        assert sum(self.parts) == self.n, "parts must sum to the degree"
        assert tuple(sorted(self.parts, reverse=True)) == self.parts

    @classmethod
    def of(cls, parts, n=None):
        parts = tuple(sorted((p for p in parts if p > 0), reverse=True))
        if n is None:
            n = sum(parts)
        elif n > sum(parts):
            parts = parts + (1,) * (n - sum(parts))
            parts = tuple(sorted(parts, reverse=True))
        return cls(parts, n)

    @classmethod
    def from_permutation(cls, perm):
        n = len(perm)
        seen = [False] * n
        parts = []
        for i in range(n):
            if seen[i]:
                continue
            ln, j = 1, perm[i]
            seen[i] = True
            while j != i:
                seen[j] = True
                j = perm[j]
                ln += 1
            parts.append(ln)
        return cls.of(parts, n)

    @property
    def is_even(self) -> bool:
        return (self.n - len(self.parts)) % 2 == 0

    @property
    def splits(self) -> bool:
        """The S_n class of this type splits into two A_n classes."""
        return (
            self.is_even
            and all(p % 2 == 1 for p in self.parts)
            and len(set(self.parts)) == len(self.parts)
        )

    def __str__(self):
        return "+".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class ClassRatio:
    """log|class| / log|group|, the class-size growth ratio in [0, 1]."""

    log_class_size: float
    log_group_size: float

    @property
    def h(self) -> float:
        if self.log_group_size == 0.0:
            return 0.0
        return self.log_class_size / self.log_group_size


def log_centralizer_sn(t: CycleType) -> float:
    total = 0.0
    for k, m in Counter(t.parts).items():
        total += math.lgamma(m + 1) + m * math.log(k)
    return total


def an_class_log(t: CycleType) -> float:
    """log of the class size in A_n, via lgamma (usable up to n ~ 1e5)."""
    if not t.is_even:
        raise PreconditionError("odd-parity-type", f"type {t} is odd")
    log_size = math.lgamma(t.n + 1) - log_centralizer_sn(t)
    return log_size - LN2 if t.splits else log_size


def an_class_size(t: CycleType):
    """(exact class size in A_n, its natural log).

    The exact value goes through big integers, so reserve it for degrees
    where n! is affordable; the log stays cheap at any degree.
    """
    log_size = an_class_log(t)
    z = 1
    for k, m in Counter(t.parts).items():
        z *= math.factorial(m) * k**m
    size = math.factorial(t.n) // z
    if t.splits:
        size //= 2
    return size, log_size


def log_an_order(n: int) -> float:
    return math.lgamma(n + 1) - LN2


def an_class_ratio(t: CycleType) -> ClassRatio:
    return ClassRatio(an_class_log(t), log_an_order(t.n))


def _nearest_odd(x: float, lo: int, hi: int) -> int:
    """Odd integer nearest to x; ties resolved downward; clamped to [lo, hi]."""
    base = math.floor(x)
    lower = base if base % 2 == 1 else base - 1
    upper = lower + 2
    pick = lower if (x - lower) <= (upper - x) else upper
    return max(lo, min(hi, pick))


def spectrum_element_an(n: int, beta: float, literal_alpha: bool = False):
    """Single odd cycle in A_n whose class ratio approaches beta.

    The normative length is the odd integer nearest beta*n (the centralizer
    of an m-cycle has order m*(n-m)!, so the ratio tends to m/n).  With
    ``literal_alpha`` the length targets (1-beta)*n instead, which makes the
    ratio approach 1-beta; both variants are measurable for comparison.

    Returns (CycleType, ClassRatio).
    """
    if n < 5:
        raise PreconditionError("degree-too-small", "need n >= 5")
    if not 0.0 <= beta <= 1.0:
        raise PreconditionError("beta-out-of-range", "beta must lie in [0, 1]")
    target = (1.0 - beta) * n if literal_alpha else beta * n
    hi = n if n % 2 == 1 else n - 1
    length = _nearest_odd(target, 3, hi)
    t = CycleType.of((length,), n)
    ratio = an_class_ratio(t)
    if n <= 20:  # exact big-integer cross-validation at small degrees
        exact, _ = an_class_size(t)
        assert math.isclose(ratio.log_class_size, math.log(exact), rel_tol=1e-12)
    return t, ratio


@dataclass
class LimitReport:
    values: list
    tolerance: float
    converged: bool
    limit: float | None
    oscillation: float

    def __str__(self):
        if self.converged:
            return f"converged to {self.limit:.6f} (tail oscillation {self.oscillation:.2e})"
        return f"no cofinite limit (tail oscillation {self.oscillation:.2e})"


def h_sequence(ratios, tolerance: float = 0.05, tail_fraction: float = 0.25):
    """Per-index h values plus a tail-convergence report.

    ``ratios`` is a list of ClassRatio (or raw floats).  The limit is
    declared when the last quarter of the sequence oscillates less than the
    tolerance.
    """
    hs = [r.h if isinstance(r, ClassRatio) else float(r) for r in ratios]
    if not hs:
        raise PreconditionError("length-mismatch", "empty sequence")
    tail = hs[int(len(hs) * (1.0 - tail_fraction)):] or hs
    osc = max(tail) - min(tail)
    converged = osc < tolerance
    limit = tail[-1] if converged else None
    return hs, LimitReport(hs, tolerance, converged, limit, osc)
