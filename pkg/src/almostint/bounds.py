"""Exact binomial arithmetic, closed-form family sizes, and inequality checkers.

Everything here is integer arithmetic. Ratio statements are compared by
cross-multiplication and irrational thresholds such as ``n >= 2k + 2*sqrt(k)
+ 4`` are squared into integer comparisons, so no tolerance ever appears.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb, isqrt
from typing import Iterable, Optional, Sequence

from .errors import DomainError, ParameterError


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient; 0 when k < 0, k > n or n < 0."""
    if k < 0 or n < 0:
        return 0
    return comb(n, k)


def ekr_bound(n: int, k: int) -> int:
    """Largest intersecting k-uniform family on [n] when n >= 2k."""
    if n < 2 * k:
        raise DomainError(f"intersecting bound needs n >= 2k, got n={n}, k={k}")
    return binom(n - 1, k - 1)


def _check_r(k: int, r: int) -> None:
    if not 3 <= r <= k + 1:
        raise DomainError(f"need 3 <= r <= k+1, got r={r}, k={k}")


def size_b_r(n: int, k: int, r: int) -> int:
    _check_r(k, r)
    return binom(n - 1, k - 1) - binom(n - r, k - 1) + binom(n - r, k - r + 1)


def delta_b_r(n: int, k: int, r: int) -> int:
    """Degree of element 1 (the maximum degree) in B_r(n, k)."""
    _check_r(k, r)
    return binom(n - 1, k - 1) - binom(n - r, k - 1)


def delta_b_r_telescoped(n: int, k: int, r: int) -> int:
    """Same value as :func:`delta_b_r`, summed as C(n-2,k-2) + ... + C(n-r,k-2)."""
    _check_r(k, r)
    return sum(binom(n - j, k - 2) for j in range(2, r + 1))


def size_b_plus(n: int, k: int) -> int:
    """Size of the Hilton-Milner family plus one extra set."""
    if n < k + 2:
        raise DomainError(f"need n >= k+2, got n={n}, k={k}")
    return binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 2


def ell_upper_bound(k: int) -> int:
    """Maximum number of disjoint pairs in an almost-intersecting family."""
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    return binom(2 * k - 1, k - 1)


def cor25_bound(n: int, k: int, r: int) -> tuple[int, int]:
    """(threshold on |A|, resulting cap on |B|) for cross-intersecting A, B on [2, n].

    A is (k-1)-uniform and B is k-uniform; if |A| reaches the threshold then
    |B| is at most the cap.
    """
    if not (n > 2 * k and k >= r >= 3):
        raise DomainError(f"need n > 2k and k >= r >= 3, got n={n}, k={k}, r={r}")
    return binom(n - 1, k - 1) - binom(n - r, k - 1), binom(n - r, k - r + 1)


def cor26_bound(n: int, k: int) -> int:
    """Cap on |A| for cross-intersecting A ((k-1)-sets), B (k-sets) on [2, n] once |B| >= k."""
    if not n > 2 * k > 2:
        raise DomainError(f"need n > 2k > 2, got n={n}, k={k}")
    return binom(n - 1, k - 1) - binom(n - k, k - 1)


def theorem_case(n: int, k: int) -> str:
    """Which range of the main bound applies: 'i', 'ii', 'iii' or 'outside'.

    Range (iii), ``n > 2k + 2*sqrt(k) + 4``, is tested as
    ``n - 2k - 4 > 0 and (n - 2k - 4)**2 > 4k``.
    """
    if k == 3 and n >= 13:
        return "i"
    if k >= 4 and n >= 3 * k + 3:
        return "ii"
    d = n - 2 * k - 4
    if k >= 10 and d > 0 and d * d > 4 * k:
        return "iii"
    return "outside"


# -- set-pair systems -------------------------------------------------------


@dataclass(frozen=True)
class SetPairSystem:
    """Pairs (A_i, B_i) of bitmasks over [n] with |A_i| = a, |B_i| = b, A_i, B_i disjoint."""

    pairs: tuple[tuple[int, int], ...]
    a: int
    b: int

    def __post_init__(self):
        for A, B in self.pairs:
            if A.bit_count() != self.a or B.bit_count() != self.b:
                raise ParameterError(f"pair sizes ({A.bit_count()}, {B.bit_count()}) != ({self.a}, {self.b})")
            if A & B:
                raise ParameterError("A_i and B_i must be disjoint")


@dataclass(frozen=True)
class BollobasVerdict:
    hypothesis_holds: bool
    m: int
    bound: int
    # None when the cross hypothesis fails and the bound is not asserted
    within_bound: Optional[bool]


def bollobas_check(s: SetPairSystem) -> BollobasVerdict:
    pairs = s.pairs
    holds = all(
        pairs[i][0] & pairs[j][1]
        for i in range(len(pairs))
        for j in range(len(pairs))
        if i != j
    )
    bound = binom(s.a + s.b, s.a)
    m = len(pairs)
    return BollobasVerdict(holds, m, bound, (m <= bound) if holds else None)


def doubled_pair_system(pairs: Sequence[tuple[int, int]], k: int) -> SetPairSystem:
    """Set-pair system (P_1..P_l, Q_1..Q_l) against (Q_1..Q_l, P_1..P_l) built from disjoint pairs."""
    forward = tuple((p, q) for p, q in pairs)
    backward = tuple((q, p) for p, q in pairs)
    return SetPairSystem(forward + backward, k, k)


# -- inequality checkers ----------------------------------------------------

LEMMAS = ("3.1", "3.2", "3.3", "3.5")


@dataclass(frozen=True)
class InequalityVerdict:
    lemma: str
    equation: str
    point: tuple[int, ...]
    lhs: int
    rhs: int
    # "pass", "fail" or "out-of-domain"
    status: str


def _verdict(lemma, eq, point, lhs, rhs, holds, in_domain) -> InequalityVerdict:
    if not in_domain:
        status = "out-of-domain"
    else:
        status = "pass" if holds else "fail"
    return InequalityVerdict(lemma, eq, tuple(point), lhs, rhs, status)


def _central_ratio(ks: Iterable[int]) -> list[InequalityVerdict]:
    """C(2k, k-2) >= C(2k-1, k-1) for k >= 6 and C(2k+1, k-2) >= C(2k-1, k-1) for k >= 4."""
    out = []
    for k in ks:
        mid = binom(2 * k - 1, k - 1)
        lhs = binom(2 * k, k - 2)
        out.append(_verdict("3.1", "a", (k,), lhs, mid, lhs >= mid, k >= 6))
        lhs = binom(2 * k + 1, k - 2)
        out.append(_verdict("3.1", "b", (k,), lhs, mid, lhs >= mid, k >= 4))
    return out


def _consecutive_ratio(ks: Iterable[int]) -> list[InequalityVerdict]:
    """Ratio C(m, k-2)/C(m-1, k-2) in [4/3, 2] and the geometric tail sum.

    For every k >= 10, 2k-4 <= m <= 3k+2 and 0 <= s <= m-(2k-4):
    ``2**s * sum_{i<=s} C(m-i, k-2) >= (2**(s+1) - 1) * C(m, k-2)``.
    """
    out = []
    for k in ks:
        in_domain = k >= 10
        for m in range(max(2 * k - 4, 1), 3 * k + 3):
            cm, cm1 = binom(m, k - 2), binom(m - 1, k - 2)
            out.append(_verdict("3.2", "upper", (k, m), cm, 2 * cm1, cm <= 2 * cm1, in_domain))
            out.append(_verdict("3.2", "lower", (k, m), 3 * cm, 4 * cm1, 3 * cm >= 4 * cm1, in_domain))
            total = 0
            for s in range(0, m - (2 * k - 4) + 1):
                total += binom(m - s, k - 2)
                lhs = total << s
                rhs = ((1 << (s + 1)) - 1) * cm
                out.append(_verdict("3.2", "tail", (k, m, s), lhs, rhs, lhs >= rhs, in_domain))
    return out


def tail_core_boundary_n(k: int) -> int:
    """Smallest integer n with n >= 2(k + sqrt(k) + 2)."""
    # n - 2k - 4 >= 2 sqrt(k)  <=>  (n - 2k - 4)^2 >= 4k with n - 2k - 4 >= 0
    d = isqrt(4 * k)
    if d * d < 4 * k:
        d += 1
    return 2 * k + 4 + d


def tail_core_min_r(k: int) -> int:
    """Smallest integer r with r >= sqrt(k) + 5."""
    d = isqrt(k)
    if d * d < k:
        d += 1
    return d + 5


def _tail_vs_core(ks: Iterable[int], n_span: int = 0) -> list[InequalityVerdict]:
    """C(n-r+1, k-r+2) < C(n-r-1, k-2) at the threshold n (plus n_span more values of n).

    r runs from the smallest integer >= sqrt(k) + 5 up to k + 2, the last r with
    a non-zero left side.

    Also checks, per k, that g(n) = C(n-t, k-t+1)/C(n-t-2, k-2) with
    t = floor(sqrt k) + 4 strictly decreases on the same n range extended
    down to n = 2k.
    """
    out = []
    for k in ks:
        in_domain = k >= 9
        n0 = tail_core_boundary_n(k)
        for n in range(n0, n0 + n_span + 1):
            for r in range(tail_core_min_r(k), k + 3):
                lhs, rhs = binom(n - r + 1, k - r + 2), binom(n - r - 1, k - 2)
                out.append(_verdict("3.3", "main", (n, k, r), lhs, rhs, lhs < rhs, in_domain))
        t = isqrt(k) + 4
        for n in range(2 * k, n0 + n_span + 1):
            # g(n+1) < g(n), cross-multiplied
            lhs = binom(n + 1 - t, k - t + 1) * binom(n - t - 2, k - 2)
            rhs = binom(n - t, k - t + 1) * binom(n - t - 1, k - 2)
            out.append(_verdict("3.3", "monotone", (n, k), lhs, rhs, lhs < rhs, in_domain))
    return out


def _tail_absorption(ks: Iterable[int], n_extra: int = 47) -> list[InequalityVerdict]:
    """C(n-4, k-3) + C(2k-1, k-1) <= C(n-5, k-2) + C(n-5, k-4) for n >= 3k+3, k >= 4."""
    out = []
    for k in ks:
        mid = binom(2 * k - 1, k - 1)
        for n in range(3 * k + 3, 3 * k + 4 + n_extra):
            lhs = binom(n - 4, k - 3) + mid
            rhs = binom(n - 5, k - 2) + binom(n - 5, k - 4)
            out.append(_verdict("3.5", "main", (n, k), lhs, rhs, lhs <= rhs, k >= 4))
    return out


_CHECKERS = {
    "3.1": (_central_ratio, 6),
    "3.2": (_consecutive_ratio, 10),
    "3.3": (_tail_vs_core, 9),
    "3.5": (_tail_absorption, 4),
}

DEFAULT_KMAX = {"3.1": 200, "3.2": 100, "3.3": 100, "3.5": 100}


def check_lemma(lemma: str, kmin: Optional[int] = None, kmax: Optional[int] = None,
                jobs: int = 1, **extra) -> list[InequalityVerdict]:
    """Evaluate one inequality family over k in [kmin, kmax].

    ``kmin`` defaults to the smallest k inside the hypothesis; points below
    it are reported as out-of-domain rather than failed. ``jobs > 1`` splits
    the k range across worker processes; the verdict list is the same.
    """
    if lemma not in _CHECKERS:
        raise ParameterError(f"unknown lemma {lemma!r}; choose from {LEMMAS}")
    fn, k_lo = _CHECKERS[lemma]
    kmin = k_lo if kmin is None else kmin
    kmax = DEFAULT_KMAX[lemma] if kmax is None else kmax
    ks = list(range(max(kmin, 2), kmax + 1))
    if jobs <= 1 or len(ks) < 2:
        return fn(ks, **extra)
    chunks = [ks[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_run_chunk, [(lemma, c, extra) for c in chunks if c]))
    merged = [v for part in parts for v in part]
    order = {k: i for i, k in enumerate(ks)}
    merged.sort(key=lambda v: order[_k_of(v)])
    return merged


def _k_of(v: InequalityVerdict) -> int:
    # point layouts: (k,), (k, m[, s]), (n, k, r), (n, k)
    if v.lemma in ("3.1", "3.2"):
        return v.point[0]
    return v.point[1]


def _run_chunk(args):
    lemma, ks, extra = args
    return _CHECKERS[lemma][0](ks, **extra)


def summarize(verdicts: Iterable[InequalityVerdict]) -> dict[str, int]:
    c = Counter(v.status for v in verdicts)
    return {"pass": c["pass"], "fail": c["fail"], "out-of-domain": c["out-of-domain"]}
