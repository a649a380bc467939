"""Command-line entry point: ``almostint <subcommand> ...``.

Machine-readable JSON goes to standard output, notes to standard error.
Exit status: 0 success, 1 verification failure, 2 usage or input error,
3 budget exhausted before the search finished.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from . import __version__
from .bounds import LEMMAS, check_lemma, size_b_plus, summarize, theorem_case
from .constructions import b_plus, b_r, full_star, hilton_milner, lex_family
from .errors import AlmostIntError
from .family import (
    Params,
    SetFamily,
    family_from_json,
    family_to_json,
    is_almost_intersecting,
    is_intersecting,
    loads,
)
from .kruskal_katona import compression_suite, is_cross_intersecting, max_cross_partner, shadow
from .partition import canonical_partition
from .report import bound_table, format_table, formula_check, mismatch_json, parse_grid
from .search import SearchProblem, diagnose, max_almost_intersecting

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
COMPRESSION_CONFIGS = ((8, 2, 3), (9, 3, 3), (10, 3, 4))


@dataclass
class RunReport:
    command: list[str]
    params: dict
    result: object
    wall_time: float
    version: str = __version__


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized suites")
    p.add_argument("--json-only", action="store_true", default=d(False),
                   help="suppress notes on standard error")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _interval(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    return vals[0], vals[1]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="almostint", description="Almost-intersecting families toolkit.")
    _global_flags(parser, suppress=False)
    parser.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    p = add("construct", "emit a named family as JSON")
    p.add_argument("--family", required=True, choices=["star", "br", "hm", "bplus", "lex"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=int, default=1, help="star centre")
    p.add_argument("--r", type=int, help="r for br")
    p.add_argument("--m", type=int, help="number of sets for lex")
    p.add_argument("--interval", type=_interval, help="X = LO,HI for lex (default 1,n)")
    p.add_argument("--extra", type=_int_list, help="extra set for bplus, e.g. 1,8,9")

    p = add("check", "test a family against the definitions and the main bound")
    p.add_argument("file", nargs="?", default="-")

    p = add("partition", "canonical core and disjoint pairs")
    p.add_argument("file", nargs="?", default="-")

    p = add("search", "exact maximum almost-intersecting family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget-nodes", type=int, default=10 ** 9)
    p.add_argument("--budget-secs", type=float, default=3600.0)
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--no-k3-rules", action="store_true")
    p.add_argument("--witnesses", metavar="OUT.json", help="write witness families here")

    p = add("verify-bounds", "exact checks of the binomial inequalities and closed forms")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lemma", choices=[*LEMMAS, "all"])
    g.add_argument("--formulas", action="store_true")
    g.add_argument("--compression", action="store_true",
                   help="randomized lex-compression suite")
    p.add_argument("--kmax", type=int)
    p.add_argument("--nmax", type=int, default=14)
    p.add_argument("--trials", type=int, default=1000)

    p = add("shadow", "b-shadow of a family")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--b", type=int, required=True)

    p = add("cross", "cross-intersection verdict for two families")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--interval", type=_interval, help="X = LO,HI for the partner (default 1,n)")

    p = add("diagnose", "core degree statistics against the main bound")
    p.add_argument("file", nargs="?", default="-")

    p = add("report", "bound table over a grid")
    p.add_argument("--grid", required=True, help="k=LO..HI[,n=LO..HI]")
    return parser


# -- helpers ----------------------------------------------------------------


def _read_family(path: str) -> SetFamily:
    if path == "-":
        return loads(sys.stdin.read())
    try:
        with open(path) as fh:
            return loads(fh.read())
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc}") from None


def _emit(obj) -> None:
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


class _Notes:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def __call__(self, msg: str) -> None:
        if not self.quiet:
            print(msg, file=sys.stderr)


# -- subcommands ------------------------------------------------------------


def cmd_construct(a, note) -> int:
    n, k = a.n, a.k
    if a.family == "star":
        f = full_star(n, k, a.x)
    elif a.family == "br":
        if a.r is None:
            raise _Usage("--family br needs --r")
        f = b_r(n, k, a.r)
    elif a.family == "hm":
        f = hilton_milner(n, k)
    elif a.family == "bplus":
        f = b_plus(n, k, a.extra)
    else:
        if a.m is None:
            raise _Usage("--family lex needs --m")
        f = lex_family(a.m, a.interval or (1, n), k, n=n)
    _emit(family_to_json(f))
    note(f"{a.family}: {len(f)} sets")
    return EXIT_OK


def check_verdict(f: SetFamily) -> dict:
    """The ``check`` payload for one family."""
    almost = is_almost_intersecting(f)
    bound = size_b_plus(f.n, f.k) if f.n >= f.k + 2 else None
    return {
        "almost_intersecting": almost,
        "intersecting": is_intersecting(f),
        "size": len(f),
        "bound": bound,
        "within_bound": None if bound is None else len(f) <= bound,
        "theorem_case": theorem_case(f.n, f.k),
    }


def cmd_check(a, note) -> int:
    v = check_verdict(_read_family(a.file))
    _emit(v)
    if v["almost_intersecting"] and v["theorem_case"] != "outside" and not v["within_bound"]:
        note("almost-intersecting family exceeds the bound inside its range")
        return EXIT_FAIL
    return EXIT_OK


def cmd_partition(a, note) -> int:
    p = canonical_partition(_read_family(a.file))
    _emit(p.to_json())
    note(f"core {len(p.core)} sets, {p.ell} disjoint pairs")
    return EXIT_OK


def cmd_search(a, note) -> int:
    problem = SearchProblem(
        Params(a.n, a.k),
        symmetry=not a.no_symmetry,
        k3_rules=not a.no_k3_rules,
        node_limit=a.budget_nodes,
        time_limit=a.budget_secs,
        workers=a.jobs,
    )
    out = max_almost_intersecting(problem)
    _emit(out.to_json())
    if a.witnesses:
        with open(a.witnesses, "w") as fh:
            json.dump({"n": a.n, "k": a.k, "optimum": out.optimum,
                       "deduplicated": out.deduplicated,
                       "witnesses": [family_to_json(w) for w in out.witnesses]}, fh)
            fh.write("\n")
    note(f"optimum {out.optimum} ({'exact' if out.exhausted else 'lower bound'}), "
         f"{out.stats.nodes} nodes, {out.stats.wall_time:.2f}s")
    return EXIT_OK if out.exhausted else EXIT_BUDGET


def cmd_verify_bounds(a, note) -> int:
    if a.formulas:
        checks, bad = formula_check(nmax=a.nmax)
        _emit({"checks": checks, "mismatches": [mismatch_json(m) for m in bad]})
        note(f"{checks} formula checks, {len(bad)} mismatches")
        return EXIT_FAIL if bad else EXIT_OK
    if a.compression:
        res = {}
        for width, sa, sb in COMPRESSION_CONFIGS:
            ok = compression_suite(width, sa, sb, trials=a.trials, seed=a.seed, jobs=a.jobs)
            res[f"{width},{sa},{sb}"] = {"trials": a.trials, "preserved": ok}
            note(f"|X|={width} a={sa} b={sb}: {ok}/{a.trials}")
        _emit(res)
        return EXIT_OK if all(r["preserved"] == r["trials"] for r in res.values()) else EXIT_FAIL
    lemmas = LEMMAS if a.lemma == "all" else (a.lemma,)
    res = {}
    for lem in lemmas:
        verdicts = check_lemma(lem, kmax=a.kmax, jobs=a.jobs)
        res[lem] = summarize(verdicts)
        res[lem]["failures"] = [asdict(v) for v in verdicts if v.status == "fail"][:20]
        note(f"lemma {lem}: {res[lem]['pass']} pass, {res[lem]['fail']} fail, "
             f"{res[lem]['out-of-domain']} out of domain")
    _emit(res)
    return EXIT_FAIL if any(r["fail"] for r in res.values()) else EXIT_OK


def cmd_shadow(a, note) -> int:
    _emit(family_to_json(shadow(_read_family(a.file), a.b)))
    return EXIT_OK


def cmd_cross(a, note) -> int:
    fa, fb = _read_family(a.file_a), _read_family(a.file_b)
    if fa.n != fb.n:
        raise _Usage("families live on different ground sets")
    partner = max_cross_partner(fa, fb.k, a.interval)
    _emit({"cross_intersecting": is_cross_intersecting(fa, fb),
           "max_partner_size": len(partner)})
    return EXIT_OK


def cmd_diagnose(a, note) -> int:
    d = diagnose(_read_family(a.file))
    _emit(d.to_json())
    if d.theorem_case != "outside" and d.within_bound is False:
        return EXIT_FAIL
    return EXIT_OK


def cmd_report(a, note, argv) -> int:
    t0 = time.monotonic()
    ks, n_range = parse_grid(a.grid)
    rows = bound_table(ks, n_range)
    report = RunReport(command=list(argv), params={"k": ks, "n": n_range},
                       result=rows, wall_time=round(time.monotonic() - t0, 3))
    _emit(asdict(report))
    note(format_table(rows))
    return EXIT_FAIL if any(r["enumerated"] is False for r in rows) else EXIT_OK


_COMMANDS = {
    "construct": cmd_construct,
    "check": cmd_check,
    "partition": cmd_partition,
    "search": cmd_search,
    "verify-bounds": cmd_verify_bounds,
    "shadow": cmd_shadow,
    "cross": cmd_cross,
    "diagnose": cmd_diagnose,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    note = _Notes(a.json_only)
    if a.jobs < 1:
        note("--jobs must be at least 1")
        return EXIT_USAGE
    try:
        if a.command == "report":
            return cmd_report(a, note, argv)
        return _COMMANDS[a.command](a, note)
    except (_Usage, AlmostIntError) as exc:
        print(f"almostint {a.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
