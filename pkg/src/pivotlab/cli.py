"""``pivotlab`` command line: JSON-lines reports, one object per row/orbit/result."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import checks, codes, orbits, tables
from .anf import MAX_VARS, ANFParseError, BooleanFunction, DimensionError
from .graph import (
    Graph,
    GraphFormatError,
    InadmissibleEdgeError,
    NotAnEdgeError,
    format_hex_rows,
    hyper_pivot,
    parse_graph,
    pivot,
)
from .identities import verify_pivot_identity
from .spectral import (
    DIRECT_LIMITS,
    BudgetError,
    apply,
    bipolar,
    count_flat,
    count_flat_quadratic,
    flat_specs,
    is_flat,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_GOLDEN = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    move: str | None = None
    universe: str | None = None
    mode: str | None = None
    threads: int = 1
    out: str | None = None
    budget_n: int | None = None
    max_orbit: int | None = None
    pretty: bool = False

    def __post_init__(self):
        if self.n is not None and not 0 < self.n <= MAX_VARS:
            raise UsageError(f"n must be in 1..{MAX_VARS}")
        for name in ("budget_n", "max_orbit"):
            val = getattr(self, name)
            if val is not None and val <= 0:
                raise UsageError(f"{name} must be positive")
        if self.threads < 1:
            raise UsageError("threads must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Emitter:
    def __init__(self, pretty: bool, stream=None):
        self.pretty = pretty
        self.stream = stream or sys.stdout

    def emit(self, obj: dict) -> None:
        if self.pretty:
            self.stream.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")
        else:
            self.stream.write(json.dumps(obj, separators=(",", ":")) + "\n")

    def table(self, rows: list[dict], columns: Sequence[str]) -> None:
        head = ["n", *columns, "ok"]
        body = [[str(r["n"]), *("-" if r.get(c) is None else str(r[c]) for c in columns), "yes" if r["ok"] else "NO"]
                for r in rows]
        widths = [max(len(h), *(len(b[k]) for b in body)) if body else len(h) for k, h in enumerate(head)]
        for line in [head, *body]:
            self.stream.write("  ".join(x.rjust(w) for x, w in zip(line, widths)) + "\n")


def _warn(msg: str) -> None:
    sys.stderr.write(f"pivotlab: warning: {msg}\n")


# -- input helpers ------------------------------------------------------------------


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _function(args) -> BooleanFunction:
    if args.anf:
        return BooleanFunction.parse(args.anf)
    if args.anf_file:
        return BooleanFunction.parse(_read(args.anf_file))
    raise UsageError("give --anf or --anf-file")


def _graph(args) -> Graph:
    if args.graph:
        return parse_graph(args.graph.replace(";", "\n"))
    if args.graph_file:
        return parse_graph(_read(args.graph_file))
    raise UsageError("give --graph or --graph-file")


# -- commands ------------------------------------------------------------------------


def cmd_spectra(args, out: Emitter) -> int:
    p = _function(args)
    fam = args.family
    if args.max_n is not None and args.max_n > DIRECT_LIMITS[fam]:
        _warn(f"direct {fam} transforms above n={DIRECT_LIMITS[fam]} may take a long time")
    if args.action == "count":
        method = args.method
        if method == "auto":
            method = "rank" if p.degree <= 2 and p.n > DIRECT_LIMITS[fam] else "direct"
        if method == "rank":
            if p.degree > 2:
                raise UsageError("the rank method needs a quadratic function")
            count = count_flat_quadratic(Graph.from_function(p), fam)
        else:
            count = count_flat(p, fam, max_n=args.max_n)
        out.emit({"function": str(p), "family": fam, "method": method, "count": count})
    elif args.action == "list":
        specs = flat_specs(p, fam, max_n=args.max_n)
        out.emit({"function": str(p), "family": fam, "count": len(specs), "witnesses": specs})
    else:
        if not args.spec:
            raise UsageError("apply needs --spec")
        s = apply(bipolar(p), args.spec)
        vals = [[int(a), int(b)] for a, b in zip(s.re.tolist(), s.im.tolist())]
        out.emit({"function": str(p), "spec": args.spec, "half_pow": s.half_pow, "flat": is_flat(s), "values": vals})
    return EXIT_OK


def cmd_pivot(args, out: Emitter) -> int:
    u, v = args.edge
    if args.anf or args.anf_file:
        p = _function(args)
        q = hyper_pivot(p, u, v, strip=not args.keep_affine)
        rec = {"input": str(p), "edge": [u, v], "result": str(q)}
        if args.verify:
            rec["identity_holds"] = verify_pivot_identity(p, u, v)
        out.emit(rec)
        return EXIT_OK if rec.get("identity_holds", True) else EXIT_FAIL
    g = _graph(args)
    h = pivot(g, u, v, swap=not args.no_swap)
    out.emit({"input": format_hex_rows(g.rows), "edge": [u, v], "swap": not args.no_swap,
              "result": format_hex_rows(h.rows), "edges": h.edges()})
    return EXIT_OK


def cmd_orbit(args, out: Emitter) -> int:
    g = _graph(args)
    report = orbits.pivot_orbit(g, args.mode) if args.move == "pivot" else orbits.lc_orbit(g, args.mode)
    if args.max_orbit is not None and report.size > args.max_orbit:
        raise BudgetError(f"orbit size {report.size} exceeds --max-orbit {args.max_orbit}")
    out.emit(report.as_dict())
    if args.members:
        for key in sorted(report.members):
            out.emit({"member": format_hex_rows(key)})
    return EXIT_OK


def cmd_classify(args, out: Emitter, threads: int) -> int:
    limit = orbits.DEFAULT_BUDGETS[orbits._budget_key(args.move, args.universe, args.mode)]
    if args.budget is not None and args.n > limit:
        _warn(f"n={args.n} is above the desk-scale budget n<={limit}; expect a long run")
    res = orbits.classify(args.n, args.move, args.universe, args.mode, threads=threads,
                          method=args.method, budget=args.budget)
    out.emit(res.as_dict())
    if args.out:
        orbits.write_reps(args.out, res.representatives)
    elif args.reps:
        for line in res.representatives:
            out.emit({"representative": line})
    return EXIT_OK


def cmd_codes(args, out: Emitter) -> int:
    if args.action == "classify":
        if args.n is None:
            raise UsageError("codes classify needs --n")
        res = codes.classify_codes(args.n, budget=args.budget)
        out.emit(res.as_dict())
        if args.reps:
            for c in res.codes:
                out.emit({"k": c.k, "generator": c.row_strings()})
        return EXIT_OK
    if not args.file:
        raise UsageError(f"codes {args.action} needs --file")
    c = codes.parse_code(_read(args.file))
    if args.action == "infosets":
        rec = {"n": c.n, "k": c.k, "information_sets": codes.information_set_count(c)}
        if args.brute_force:
            rec["brute_force"] = codes.information_sets_brute_force(c)
        out.emit(rec)
    elif args.action == "standard":
        sf = codes.standard_form(c)
        out.emit({"n": c.n, "k": c.k, "generator": sf.code().row_strings(), "perm": list(sf.perm)})
    elif args.action == "graph":
        g, side = codes.code_graph(c)
        out.emit({"graph": format_hex_rows(g.rows), "information_side": [v for v in range(c.n) if side >> v & 1]})
    elif args.action == "dual":
        d = codes.dual(c)
        out.emit({"n": d.n, "k": d.k, "generator": d.row_strings()})
    elif args.action == "equivalent":
        if not args.other:
            raise UsageError("codes equivalent needs --other")
        c2 = codes.parse_code(_read(args.other))
        out.emit({"equivalent": codes.equivalent(c, c2)})
    return EXIT_OK


def cmd_tables(args, out: Emitter, threads: int) -> int:
    rows = tables.table_rows(args.table, args.max_n, args.min_n, threads=threads)
    if out.pretty:
        out.table(rows, tables.COLUMNS[args.table])
    else:
        for r in rows:
            out.emit({"table": args.table, **r})
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_GOLDEN


def cmd_verify(args, out: Emitter) -> int:
    name = args.suite
    n, seed, trials = args.n, args.seed, args.trials
    if name == "transform-identities":
        res = checks.check_transform_identities(exhaustive_n=min(n, 4), trials=trials, max_n=n, seed=seed)
    elif name == "pivot-identity":
        res = checks.check_pivot_identity(trials=trials, max_n=n, seed=seed, graphs_max_n=min(n, 5))
    elif name == "only-pivot":
        res = checks.check_only_pivot(trials=trials, max_n=n, seed=seed)
    elif name == "quadpiv":
        res = checks.check_quadpiv(max_n=n)
    elif name == "family":
        res = checks.check_family(max_n=n, seed=seed)
    elif name == "rank-criterion":
        res = checks.check_rank_criterion(max_n=n)
    elif name == "canonical":
        res = checks.check_canonical(max_n=n, labelled_max_n=min(n, 5), seed=seed)
    elif name == "clique":
        res = checks.check_clique(direct_max=min(n, 10), rank_max=n)
    elif name == "genpiv":
        res = checks.check_genpiv()
    else:
        raise UsageError(f"unknown suite {name!r}")
    out.emit(res.as_dict())
    return EXIT_OK if res.ok else EXIT_FAIL


SUITE_NAMES = ("transform-identities", "pivot-identity", "only-pivot", "quadpiv", "family",
               "rank-criterion", "canonical", "clique", "genpiv")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--threads", type=int, default=None, help="worker processes (env PIVOTLAB_THREADS)")

    p = _Parser(prog="pivotlab", description="Pivot, local complementation, flat spectra and code classification.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def fn_args(sp):
        sp.add_argument("--anf", help='function text, e.g. "n=3; x0*x1+x1*x2"')
        sp.add_argument("--anf-file")

    def graph_args(sp):
        sp.add_argument("--graph", help='"n:hex,hex,..." or "n=3;0 1;1 2"')
        sp.add_argument("--graph-file")

    sp = sub.add_parser("spectra", parents=[common], help="flat spectra of a Boolean function")
    sp.add_argument("action", choices=("count", "list", "apply"))
    fn_args(sp)
    sp.add_argument("--family", choices=("IH", "IHN", "HN"), default="IH")
    sp.add_argument("--method", choices=("auto", "direct", "rank"), default="auto")
    sp.add_argument("--spec", help="transform string for apply, e.g. IHN")
    sp.add_argument("--max-n", type=int, default=None, help="override the direct transform size limit")

    sp = sub.add_parser("pivot", parents=[common], help="pivot a graph or hypergraph on an edge")
    fn_args(sp)
    graph_args(sp)
    sp.add_argument("--edge", type=int, nargs=2, required=True, metavar=("U", "V"))
    sp.add_argument("--no-swap", action="store_true", help="graph pivot without exchanging u and v")
    sp.add_argument("--keep-affine", action="store_true", help="keep affine terms of the hypergraph pivot")
    sp.add_argument("--verify", action="store_true", help="check the transform identity for the pivot")

    sp = sub.add_parser("orbit", parents=[common], help="pivot or LC orbit of one graph")
    graph_args(sp)
    sp.add_argument("--move", choices=orbits.MOVES, default="pivot")
    sp.add_argument("--mode", choices=orbits.MODES, default="unlabelled")
    sp.add_argument("--max-orbit", type=int, default=None)
    sp.add_argument("--members", action="store_true", help="also emit every member")

    sp = sub.add_parser("classify", parents=[common], help="orbit classification of a graph universe")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--move", choices=orbits.MOVES, default="pivot")
    sp.add_argument("--universe", choices=orbits.UNIVERSES, default="connected")
    sp.add_argument("--mode", choices=orbits.MODES, default="unlabelled")
    sp.add_argument("--method", choices=("auto", "direct", "extension"), default="auto")
    sp.add_argument("--budget", type=int, default=None, help="raise the n ceiling")
    sp.add_argument("--out", help="write the representative database here")
    sp.add_argument("--reps", action="store_true", help="emit representatives on stdout")

    sp = sub.add_parser("codes", parents=[common], help="binary linear codes")
    sp.add_argument("action", choices=("classify", "infosets", "standard", "graph", "dual", "equivalent"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--file", help="code file: 'n k' then k rows of 0/1")
    sp.add_argument("--other", help="second code file for equivalent")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--brute-force", action="store_true", help="also count information sets by rank")
    sp.add_argument("--reps", action="store_true", help="emit one generator matrix per code")

    sp = sub.add_parser("tables", parents=[common], help="recompute a published table and diff it")
    sp.add_argument("--table", type=int, choices=(1, 2, 3, 4, 5), required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--min-n", type=int, default=1)

    sp = sub.add_parser("verify", parents=[common], help="run a self-check suite")
    sp.add_argument("--suite", choices=SUITE_NAMES, required=True)
    sp.add_argument("--n", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1000)
    return p


def run(argv: Sequence[str] | None = None, stream=None) -> int:
    out = Emitter(False, stream)
    try:
        args = build_parser().parse_args(argv)
        threads = orbits.resolve_threads(args.threads)
        config = RunConfig(command=args.command, n=getattr(args, "n", None), move=getattr(args, "move", None),
                           universe=getattr(args, "universe", None), mode=getattr(args, "mode", None),
                           threads=threads, out=getattr(args, "out", None), budget_n=getattr(args, "budget", None),
                           max_orbit=getattr(args, "max_orbit", None), pretty=args.pretty)
        out.pretty = config.pretty
        if args.command == "spectra":
            return cmd_spectra(args, out)
        if args.command == "pivot":
            return cmd_pivot(args, out)
        if args.command == "orbit":
            return cmd_orbit(args, out)
        if args.command == "classify":
            return cmd_classify(args, out, threads)
        if args.command == "codes":
            return cmd_codes(args, out)
        if args.command == "tables":
            return cmd_tables(args, out, threads)
        return cmd_verify(args, out)
    except UsageError as exc:
        out.emit({"error": "usage", "message": str(exc)})
        return EXIT_USAGE
    except (ANFParseError, GraphFormatError, codes.CodeFormatError, codes.RankError, DimensionError,
            NotAnEdgeError, InadmissibleEdgeError, ValueError) as exc:
        out.emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_USAGE
    except BudgetError as exc:
        out.emit({"error": "budget", "message": str(exc)})
        return EXIT_BUDGET
    except OSError as exc:
        out.emit({"error": "io", "message": str(exc)})
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
