"""Formula-versus-construction checks and the bound table."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Optional

from .bounds import (
    delta_b_r,
    delta_b_r_telescoped,
    ekr_bound,
    ell_upper_bound,
    size_b_plus,
    size_b_r,
    theorem_case,
)
from .constructions import b_plus, b_r, full_star
from .errors import ParameterError
from .family import MAX_N, max_degree

ENUMERATION_NMAX = 14
MAX_ROWS = 5000


@dataclass(frozen=True)
class FormulaMismatch:
    quantity: str
    n: int
    k: int
    r: Optional[int]
    formula: int
    enumerated: int


def formula_grid(ks: Iterable[int] = range(3, 7), nmax: int = ENUMERATION_NMAX):
    """(n, k) points with 2k+1 <= n <= nmax."""
    return [(n, k) for k in ks for n in range(2 * k + 1, nmax + 1)]


def formula_check(ks: Iterable[int] = range(3, 7), nmax: int = ENUMERATION_NMAX,
                  points: Optional[Iterable[tuple[int, int]]] = None) -> tuple[int, list[FormulaMismatch]]:
    """Compare every closed form against the built family; returns (checks, mismatches).

    ``points`` overrides the (n, k) grid built from ``ks`` and ``nmax``.
    """
    checks = 0
    bad: list[FormulaMismatch] = []

    def cmp(q, n, k, r, formula, got):
        nonlocal checks
        checks += 1
        if formula != got:
            bad.append(FormulaMismatch(q, n, k, r, formula, got))

    for n, k in (formula_grid(ks, nmax) if points is None else points):
        cmp("full_star", n, k, None, ekr_bound(n, k), len(full_star(n, k, 1)))
        cmp("b_plus", n, k, None, size_b_plus(n, k), len(b_plus(n, k)))
        for r in range(3, k + 2):
            fam = b_r(n, k, r)
            x, deg = max_degree(fam)
            cmp("b_r_size", n, k, r, size_b_r(n, k, r), len(fam))
            cmp("b_r_delta", n, k, r, delta_b_r(n, k, r), deg)
            cmp("b_r_delta_at_1", n, k, r, 1, x)
            cmp("b_r_delta_sum", n, k, r, delta_b_r_telescoped(n, k, r), deg)
    return checks, bad


def parse_grid(spec: str) -> tuple[list[int], Optional[tuple[int, int]]]:
    """Parse 'k=3..6' or 'k=3..6,n=7..20' into (k values, n range or None)."""
    ks, nr = None, None
    for part in spec.split(","):
        key, _, rng = part.strip().partition("=")
        lo, _, hi = rng.partition("..")
        try:
            lo_i, hi_i = int(lo), int(hi or lo)
        except ValueError:
            raise ParameterError(f"bad grid component {part!r}") from None
        if key == "k":
            ks = list(range(lo_i, hi_i + 1))
        elif key == "n":
            nr = (lo_i, hi_i)
        else:
            raise ParameterError(f"unknown grid key {key!r}")
    if not ks:
        raise ParameterError("grid needs a k range")
    return ks, nr


def bound_table(ks: list[int], n_range: Optional[tuple[int, int]] = None) -> list[dict]:
    """One row per (n, k): EKR, |B_3|, |HM|, degree of HM, |B+|, pair cap, theorem range.

    Rows with n <= 14 also rebuild the families and record whether every
    closed form matched.
    """
    rows = []
    spans = [(n_range if n_range else (2 * k + 1, 3 * k + 6)) for k in ks]
    if sum(max(0, hi - max(lo, 2 * k + 1) + 1) for k, (lo, hi) in zip(ks, spans)) > MAX_ROWS:
        raise ParameterError(f"grid has more than {MAX_ROWS} rows")
    for k in ks:
        lo, hi = n_range if n_range else (2 * k + 1, 3 * k + 6)
        if hi > MAX_N or k < 2 or lo <= k:
            raise ParameterError(f"grid point outside 2 <= k < n <= {MAX_N}")
        for n in range(max(lo, 2 * k + 1), hi + 1):
            row = {
                "n": n, "k": k,
                "ekr": ekr_bound(n, k),
                "b3": size_b_r(n, k, 3),
                "hm": size_b_r(n, k, k + 1),
                "hm_degree": delta_b_r(n, k, k + 1),
                "b_plus": size_b_plus(n, k),
                "ell_max": ell_upper_bound(k),
                "case": theorem_case(n, k),
                "enumerated": None,
            }
            if n <= ENUMERATION_NMAX:
                row["enumerated"] = not formula_check(points=[(n, k)])[1]
            rows.append(row)
    return rows


def format_table(rows: list[dict]) -> str:
    cols = ["n", "k", "ekr", "b3", "hm", "hm_degree", "b_plus", "ell_max", "case", "enumerated"]
    cells = [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def mismatch_json(m: FormulaMismatch) -> dict:
    return asdict(m)
