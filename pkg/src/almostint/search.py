"""Exact maximum almost-intersecting families by branch and bound.

An almost-intersecting family is an induced subgraph of the Kneser graph
K(n, k) (vertices: k-sets, edges: disjoint pairs) with maximum degree at most
one and at least one edge. The search branches include/exclude over
candidate k-sets, all held as bits of Python integers.

Symmetry mode commits one disjoint pair ([1, k], [k+1, 2k]); every disjoint
pair is equivalent to it, and every other member must then meet both sets of
the pair. When all remaining candidates have at most one element outside
[2k] (always the case for k <= 3) the outside elements are interchangeable,
and the search only visits families whose per-element "columns" are
non-increasing, which keeps one representative per relabelling.

Propagation: a candidate is dead once it is disjoint from a committed set
that already has its partner, or disjoint from two committed sets. The
bound is the committed size plus the live candidates, less (group size - 1)
for each group of live candidates disjoint from the same unpartnered
committed set, since at most one of them can join.
"""
from __future__ import annotations

import multiprocessing as mp
import sys
import threading
import time
from concurrent.futures import ProcessPoolExecutor
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import k3
from .bounds import binom, delta_b_r, size_b_plus, theorem_case
from .errors import ParameterError, ResourceError
from .family import (
    Params,
    SetFamily,
    degrees,
    disjoint_partner_counts,
    elements_of,
    family_isomorphic,
    interval_mask,
    is_almost_intersecting,
    mask_of,
    max_degree,
)
from .partition import canonical_partition

MAX_VERTICES = 10_000
ORACLE_MAX_VERTICES = 40
DEDUPE_LIMIT = 100
STORE_LIMIT = 10_000
_CHECK_EVERY = 2048


@dataclass(frozen=True)
class SearchProblem:
    params: Params
    mode: str = "almost_intersecting"
    symmetry: bool = True
    k3_rules: bool = True
    node_limit: int = 10 ** 9
    time_limit: float = 3600.0
    workers: int = 1

    def __post_init__(self):
        if self.mode != "almost_intersecting":
            raise ParameterError(f"unknown mode {self.mode!r}")
        if self.node_limit <= 0 or self.time_limit <= 0:
            raise ParameterError("budget must be positive")
        if self.workers < 1:
            raise ParameterError("workers must be >= 1")


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: Counter = field(default_factory=Counter)
    wall_time: float = 0.0

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "prunes": dict(sorted(self.prunes.items())),
                "wall_time": round(self.wall_time, 3)}


@dataclass(frozen=True)
class SearchOutcome:
    """Result of :func:`max_almost_intersecting`.

    ``optimum`` is exact when ``exhausted``; otherwise it is the best size
    found and only a lower bound. ``witnesses`` holds one family per
    isomorphism class when ``deduplicated``, else the raw optimal families
    found (at most :data:`STORE_LIMIT`). ``witness_count`` is the raw count.
    """

    params: Params
    optimum: int
    exhausted: bool
    witnesses: tuple[SetFamily, ...]
    witness_count: int
    deduplicated: bool
    stats: SearchStats
    intersecting_max: Optional[int]

    @property
    def lower_bound_only(self) -> bool:
        return not self.exhausted

    def to_json(self) -> dict:
        return {
            "n": self.params.n,
            "k": self.params.k,
            "optimum": self.optimum,
            "exhausted": self.exhausted,
            "lower_bound_only": self.lower_bound_only,
            "witness_count": self.witness_count,
            "witness_classes": len(self.witnesses) if self.deduplicated else None,
            "intersecting_max": self.intersecting_max,
            "stats": self.stats.to_json(),
        }


class _Budget(Exception):
    pass


class _Engine:
    """Static data for one (n, k, mode) search plus the recursive branch step."""

    def __init__(self, problem: SearchProblem):
        self.problem = problem
        p = problem.params
        n, k = p.n, p.k
        self.params = p
        self.base: list[int] = []
        every = sorted(mask_of(c) for c in combinations(range(1, n + 1), k))
        if problem.symmetry:
            if n < 2 * k:
                cands = []
            else:
                P, Q = interval_mask(1, k), interval_mask(k + 1, 2 * k)
                self.base = [P, Q]
                cands = [m for m in every if m not in (P, Q) and m & P and m & Q]
        else:
            cands = every
        if len(every) > MAX_VERTICES:
            raise ResourceError(f"C({n},{k}) = {len(every)} exceeds {MAX_VERTICES} vertices")
        self.initial_prunes = Counter()
        if problem.symmetry and self.base:
            self.initial_prunes["pair_meeting"] = len(every) - 2 - len(cands)

        # column layout for the outside-element symmetry
        self.columns = None
        inner = interval_mask(1, 2 * k)
        if problem.symmetry and self.base and all((m & ~inner).bit_count() <= 1 for m in cands):
            inside = [m for m in cands if not m & ~inner]
            cols = []
            for c in range(2 * k + 1, n + 1):
                bit = 1 << (c - 1)
                cols.append(sorted((m for m in cands if m & bit), key=lambda m: m & inner))
            if cols and len({len(col) for col in cols}) == 1 and len(cols[0]) > 0:
                cands = [m for col in cols for m in col] + inside
                self.columns = (0, len(cols[0]), len(cols))
        self.cands = cands
        N = self.N = len(cands)
        self.adj = [0] * N
        for i in range(N):
            a = cands[i]
            row = 0
            for j in range(N):
                if not a & cands[j]:
                    row |= 1 << j
            self.adj[i] = row

        self.use_k3 = bool(problem.k3_rules and problem.symmetry and k == 3 and self.base)
        if self.use_k3:
            self._prepare_k3()

    # -- k = 3 structural exclusions ------------------------------------

    def _prepare_k3(self) -> None:
        index = {m: i for i, m in enumerate(self.cands)}
        n = self.params.n
        self.cell_straddle = {}
        self.cell_col = {}
        self.cell_avoid = {}
        self.cell_inside = {}
        self.outside_of = {}
        for cell in k3.CELLS:
            a, b = cell
            s = 0
            for c in range(7, n + 1):
                j = index[mask_of((a, b, c))]
                s |= 1 << j
                self.cell_col[(cell, c)] = 1 << j
                self.outside_of[j] = c
            self.cell_straddle[cell] = s
            ab = mask_of(cell)
            self.cell_avoid[cell] = sum(1 << i for i, m in enumerate(self.cands) if not m & ab)
            rest = [e for e in range(1, 7) if e not in cell]
            self.cell_inside[cell] = sum(1 << index[mask_of(e)] for e in combinations(rest, 3))
        self.straddle_all = 0
        for s in self.cell_straddle.values():
            self.straddle_all |= s
        self.crossing_pairs = [(x, y, k3._third(x, y)) for x, y in combinations(k3.CELLS, 2)
                               if k3._crossing(x, y)]

    def k3_exclusions(self, chosen: int) -> dict[str, int]:
        """Candidate-index masks excluded by each structural rule, given the committed bits."""
        d = {cell: chosen & s for cell, s in self.cell_straddle.items()}
        out = dict.fromkeys(k3.RULES, 0)
        for x, y, z in self.crossing_pairs:
            dx, dy = d[x], d[y]
            if not (dx and dy):
                continue
            if dx == dx & -dx and dy == dy & -dy and \
                    self.outside_of[dx.bit_length() - 1] == self.outside_of[dy.bit_length() - 1]:
                c = self.outside_of[dx.bit_length() - 1]
                out["same_singleton"] |= self.cell_straddle[z] & ~self.cell_col[(z, c)]
            else:
                out["same_singleton"] |= self.cell_straddle[z]
        for x in k3.CELLS:
            size = d[x].bit_count()
            if size >= 3:
                for y in k3.CELLS:
                    if k3._crossing(x, y):
                        out["heavy_cell_matching"] |= self.cell_straddle[y]
                out["heavy_cell_cover"] |= self.cell_avoid[x]
            if size >= 2:
                out["double_cell_inside"] |= self.cell_inside[x]
        return out

    # -- branch and bound -----------------------------------------------

    def bound(self, chosen: int, sat: int, alive: int) -> int:
        adj = self.adj
        reduction = 0
        covered = 0
        loose = chosen & ~sat
        while loose:
            low = loose & -loose
            loose ^= low
            group = alive & adj[low.bit_length() - 1] & ~covered
            c = group.bit_count()
            if c > 1:
                reduction += c - 1
            covered |= group
        return len(self.base) + chosen.bit_count() + alive.bit_count() - reduction

    def root(self):
        return (0, 0, (1 << self.N) - 1, 0)

    def run(self, state, ctx: "_Context") -> None:
        """Depth-first search below ``state``, reporting into ``ctx``."""
        chosen, sat, alive, nbr1 = state
        adj = self.adj
        cols = self.columns
        use_k3 = self.use_k3
        need_edge = not self.base
        base = len(self.base)
        prunes = ctx.prunes

        def rec(chosen, sat, alive, nbr1):
            ctx.nodes += 1
            if ctx.nodes & (_CHECK_EVERY - 1) == 0 or ctx.nodes >= ctx.node_limit:
                ctx.checkpoint()
            if self.bound(chosen, sat, alive) < ctx.best():
                prunes["bound"] += 1
                return
            if not alive:
                if need_edge and not sat:
                    return
                ctx.record(base + chosen.bit_count(), chosen)
                return
            low = alive & -alive
            j = low.bit_length() - 1
            rest = alive ^ low
            if cols is not None and cols[0] + cols[1] <= j < cols[0] + cols[1] * cols[2]:
                start, width, _ = cols
                pos = (j - start) % width
                here = j - pos
                prev = here - width
                prefix = (1 << pos) - 1
                if (chosen >> here) & prefix == (chosen >> prev) & prefix and not chosen >> (prev + pos) & 1:
                    prunes["column_order"] += 1
                    rec(chosen, sat, rest, nbr1)
                    return
            # include j
            hit = adj[j] & chosen
            if hit:
                partner = hit.bit_length() - 1
                kill = rest & (adj[j] | adj[partner])
                new = (chosen | low, sat | low | hit, rest & ~kill, nbr1)
            else:
                kill = rest & adj[j] & nbr1
                new = (chosen | low, sat, rest & ~kill, nbr1 | adj[j])
            if kill:
                prunes["dead"] += kill.bit_count()
            if use_k3 and low & self.straddle_all:
                excl = self.k3_exclusions(new[0])
                a = new[2]
                for rule in k3.RULES:
                    gone = a & excl[rule]
                    if gone:
                        prunes[rule] += gone.bit_count()
                        a &= ~gone
                new = (new[0], new[1], a, new[3])
            rec(*new)
            # exclude j
            rec(chosen, sat, rest, nbr1)

        rec(chosen, sat, alive, nbr1)

    def expand(self, state, depth: int) -> list:
        """Deterministic frontier of sub-states ``depth`` branch levels below ``state``.

        Leaves met on the way are returned as ('leaf', size, chosen).
        """
        frontier = [state]
        for _ in range(depth):
            nxt = []
            for st in frontier:
                if st[0] == "leaf":
                    nxt.append(st)
                    continue
                nxt.extend(self._children(st))
            frontier = nxt
        return frontier

    def _children(self, state) -> list:
        # one include/exclude step with the same rules as run(), no bound
        chosen, sat, alive, nbr1 = state
        if not alive:
            if not self.base and not sat:
                return []
            return [("leaf", len(self.base) + chosen.bit_count(), chosen)]
        low = alive & -alive
        j = low.bit_length() - 1
        rest = alive ^ low
        cols = self.columns
        if cols is not None and cols[0] + cols[1] <= j < cols[0] + cols[1] * cols[2]:
            start, width, _ = cols
            pos = (j - start) % width
            here, prefix = j - pos, (1 << pos) - 1
            prev = here - width
            if (chosen >> here) & prefix == (chosen >> prev) & prefix and not chosen >> (prev + pos) & 1:
                return [(chosen, sat, rest, nbr1)]
        adj = self.adj
        hit = adj[j] & chosen
        if hit:
            partner = hit.bit_length() - 1
            kill = rest & (adj[j] | adj[partner])
            inc = (chosen | low, sat | low | hit, rest & ~kill, nbr1)
        else:
            kill = rest & adj[j] & nbr1
            inc = (chosen | low, sat, rest & ~kill, nbr1 | adj[j])
        if self.use_k3 and low & self.straddle_all:
            excl = self.k3_exclusions(inc[0])
            a = inc[2]
            for rule in k3.RULES:
                a &= ~excl[rule]
            inc = (inc[0], inc[1], a, inc[3])
        return [inc, (chosen, sat, rest, nbr1)]

    def family_of(self, chosen: int) -> SetFamily:
        ms = list(self.base)
        while chosen:
            low = chosen & -chosen
            ms.append(self.cands[low.bit_length() - 1])
            chosen ^= low
        return SetFamily.from_masks(self.params, ms)


class _Context:
    """Incumbent, solutions and counters for one search process."""

    def __init__(self, node_limit: int, deadline: float, shared=None, initial_best: int = 0):
        self.nodes = 0
        self.prunes: Counter = Counter()
        self.node_limit = node_limit
        self.deadline = deadline
        self.shared = shared
        self._best = initial_best
        self.size = -1
        self.solutions: list[int] = []
        self.count = 0
        self._reported_nodes = 0

    def best(self) -> int:
        if self.shared is not None:
            v = self.shared["best"].value
            if v > self._best:
                self._best = v
        return self._best

    def record(self, size: int, chosen: int) -> None:
        if size > self.size:
            self.size = size
            self.solutions = []
            self.count = 0
            if size > self._best:
                self._best = size
                if self.shared is not None:
                    with self.shared["best"].get_lock():
                        if self.shared["best"].value < size:
                            self.shared["best"].value = size
        if size == self.size:
            self.count += 1
            if len(self.solutions) < STORE_LIMIT:
                self.solutions.append(chosen)

    def checkpoint(self) -> None:
        total = self.nodes
        if self.shared is not None:
            counter = self.shared["nodes"]
            with counter.get_lock():
                counter.value += self.nodes - self._reported_nodes
                total = counter.value
            self._reported_nodes = self.nodes
        if total >= self.node_limit or time.monotonic() >= self.deadline:
            raise _Budget()


def _run_deep(fn, depth: int):
    """Run fn() with enough recursion headroom for a search ``depth`` levels deep."""
    need = depth + 200
    if need < 900:
        return fn()
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, need * 2))
    box: dict = {}

    def target():
        try:
            box["value"] = fn()
        except BaseException as exc:  # re-raised in the caller
            box["error"] = exc

    old_stack = threading.stack_size()
    threading.stack_size(min(1 << 30, max(64 << 20, need * 4096)))
    try:
        t = threading.Thread(target=target)
        t.start()
        t.join()
    finally:
        threading.stack_size(old_stack)
        sys.setrecursionlimit(old)
    if "error" in box:
        raise box["error"]
    return box["value"]


def _solve_state(engine: _Engine, state, ctx: _Context) -> bool:
    """Search one subtree; False if the budget ran out."""
    try:
        _run_deep(lambda: engine.run(state, ctx), engine.N)
    except _Budget:
        return False
    return True


# worker-process globals, installed by the pool initializer (fork start method)
_W_ENGINE: Optional[_Engine] = None
_W_SHARED = None
_W_LIMITS = None


def _init_worker(engine, shared, limits):
    global _W_ENGINE, _W_SHARED, _W_LIMITS
    _W_ENGINE, _W_SHARED, _W_LIMITS = engine, shared, limits


def _worker_task(state):
    node_limit, deadline = _W_LIMITS
    ctx = _Context(node_limit, deadline, shared=_W_SHARED)
    ok = _solve_state(_W_ENGINE, state, ctx)
    if ctx.shared is not None:
        with ctx.shared["nodes"].get_lock():
            ctx.shared["nodes"].value += ctx.nodes - ctx._reported_nodes
    return ok, ctx.size, ctx.solutions, ctx.count, ctx.nodes, ctx.prunes


def _split_depth(engine: _Engine, workers: int) -> int:
    depth = 0
    while (1 << depth) < 8 * workers and depth < engine.N:
        depth += 1
    return depth


def max_almost_intersecting(problem: SearchProblem, dedupe_limit: int = DEDUPE_LIMIT) -> SearchOutcome:
    """Largest almost-intersecting family in C([n], k), with extremal witnesses.

    The optimum and the set of witnesses (up to isomorphism) do not depend on
    ``problem.workers``; node counts may.
    """
    t0 = time.monotonic()
    engine = _Engine(problem)
    p = problem.params
    deadline = t0 + problem.time_limit
    stats = SearchStats(prunes=Counter(engine.initial_prunes))
    results = []  # (size, solutions, count)
    exhausted = True

    if problem.symmetry and not engine.base:
        pass  # n < 2k: no disjoint pair exists
    elif problem.workers == 1:
        ctx = _Context(problem.node_limit, deadline)
        exhausted = _solve_state(engine, engine.root(), ctx)
        stats.nodes += ctx.nodes
        stats.prunes.update(ctx.prunes)
        results.append((ctx.size, ctx.solutions, ctx.count))
    else:
        exhausted = _solve_parallel(engine, problem, deadline, stats, results)

    best = max((r[0] for r in results), default=-1)
    optimum = max(best, 0)
    raw: list[int] = []
    count = 0
    if best > 0:
        for size, sols, c in results:
            if size == best:
                raw.extend(sols)
                count += c
    raw = sorted(set(raw))
    families = [engine.family_of(ch) for ch in raw]
    for fam in families:
        assert is_almost_intersecting(fam), "search produced an invalid witness"
    deduplicated = len(families) <= dedupe_limit
    witnesses = tuple(dedupe_isomorphic(families)) if deduplicated else tuple(families)
    stats.wall_time = time.monotonic() - t0
    return SearchOutcome(
        params=p,
        optimum=optimum,
        exhausted=exhausted,
        witnesses=witnesses,
        witness_count=count,
        deduplicated=deduplicated,
        stats=stats,
        intersecting_max=binom(p.n - 1, p.k - 1) if p.n >= 2 * p.k else None,
    )


def _solve_parallel(engine, problem, deadline, stats, results) -> bool:
    frontier = engine.expand(engine.root(), _split_depth(engine, problem.workers))
    tasks = []
    for st in frontier:
        if st[0] == "leaf":
            results.append((st[1], [st[2]], 1))
        else:
            tasks.append(st)
    ctx_mp = mp.get_context("fork")
    seed = max((r[0] for r in results), default=0)
    shared = {"best": ctx_mp.Value("i", seed), "nodes": ctx_mp.Value("q", 0)}
    exhausted = True
    with ProcessPoolExecutor(max_workers=problem.workers, mp_context=ctx_mp,
                             initializer=_init_worker,
                             initargs=(engine, shared, (problem.node_limit, deadline))) as ex:
        for ok, size, sols, count, nodes, prunes in ex.map(_worker_task, tasks):
            exhausted &= ok
            stats.nodes += nodes
            stats.prunes.update(prunes)
            results.append((size, sols, count))
    stats.prunes["frontier_tasks"] = len(tasks)
    return exhausted


def dedupe_isomorphic(families: list[SetFamily]) -> list[SetFamily]:
    """One representative per isomorphism class, the first in input order."""
    reps: list[SetFamily] = []
    keys: list = []
    for fam in families:
        key = _iso_invariant(fam)
        if any(kk == key and family_isomorphic(fam, r) is not None for kk, r in zip(keys, reps)):
            continue
        reps.append(fam)
        keys.append(key)
    return reps


def _iso_invariant(f: SetFamily):
    return (len(f), tuple(sorted(degrees(f))), tuple(sorted(disjoint_partner_counts(f).values())))


# -- independent brute force ----------------------------------------------


def oracle_max(params: Params) -> int:
    """Maximum almost-intersecting family size by plain subfamily enumeration.

    Walks the subset lattice of C([n], k) in mask order, skipping any set
    that would give some member a second disjoint partner, and cutting a
    branch when even taking every remaining set cannot beat the best so far.
    Shares no code with the branch and bound.
    """
    universe = [mask_of(c) for c in combinations(range(1, params.n + 1), params.k)]
    if len(universe) > ORACLE_MAX_VERTICES:
        raise ResourceError(f"oracle refuses C({params.n},{params.k}) = {len(universe)} > {ORACLE_MAX_VERTICES}")
    total = len(universe)
    best = 0
    chosen: list[int] = []
    partners: list[int] = []

    def walk(i: int) -> None:
        nonlocal best
        if len(chosen) + (total - i) <= best:
            return
        if i == total:
            if max(partners, default=0) == 1:
                best = len(chosen)
            return
        s = universe[i]
        hits = [t for t, c in enumerate(chosen) if not c & s]
        if len(hits) <= 1 and all(partners[t] == 0 for t in hits):
            for t in hits:
                partners[t] += 1
            chosen.append(s)
            partners.append(len(hits))
            walk(i + 1)
            chosen.pop()
            partners.pop()
            for t in hits:
                partners[t] -= 1
        walk(i + 1)

    walk(0)
    return best


def oracle_instances() -> list[Params]:
    """All (n, k) with k >= 2, n >= 2k and C(n, k) within the oracle's reach."""
    out = []
    for k in range(2, 8):
        for n in range(2 * k, 64):
            if binom(n, k) > ORACLE_MAX_VERTICES:
                break
            out.append(Params(n, k))
    return out


# -- maximality -------------------------------------------------------------


def local_maximality_check(f: SetFamily) -> list[tuple[int, ...]]:
    """k-sets G outside f for which f plus G is almost intersecting."""
    present = set(f.masks)
    counts = disjoint_partner_counts(f)
    ms = f.masks
    base_max = max(counts.values(), default=0)
    out = []
    for c in combinations(range(1, f.n + 1), f.k):
        g = mask_of(c)
        if g in present:
            continue
        hits = [i for i, m in enumerate(ms) if not m & g]
        if len(hits) > 1 or any(counts[i] for i in hits):
            continue
        if base_max <= 1 and (base_max == 1 or hits):
            out.append(elements_of(g))
    return out


# -- diagnostics -----------------------------------------------------------


@dataclass(frozen=True)
class Diagnosis:
    """Core statistics of an almost-intersecting family against the main bound.

    ``r`` is the smallest r in [3, k+1] with Δ(core) <= Δ(B_r), or None when
    the core degree exceeds even Δ(B_3). ``bound_value`` is |B+| (None when
    n < k + 2).
    """

    ell: int
    delta_f0: int
    r: Optional[int]
    theorem_case: str
    bound_value: Optional[int]
    within_bound: Optional[bool]

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "delta_f0": self.delta_f0,
            "r_of_eq_5_7": self.r,
            "theorem_case": self.theorem_case,
            "bound_value": self.bound_value,
            "within_bound": self.within_bound,
        }


def diagnose(f: SetFamily) -> Diagnosis:
    """Partition f and locate its core degree among the Δ(B_r) thresholds."""
    part = canonical_partition(f)
    n, k = f.n, f.k
    _, d0 = max_degree(part.core)
    r = None
    if k >= 2:
        r = next((r for r in range(3, k + 2) if d0 <= delta_b_r(n, k, r)), None)
    bound = size_b_plus(n, k) if n >= k + 2 else None
    return Diagnosis(
        ell=part.ell,
        delta_f0=d0,
        r=r,
        theorem_case=theorem_case(n, k),
        bound_value=bound,
        within_bound=None if bound is None else len(f) <= bound,
    )
