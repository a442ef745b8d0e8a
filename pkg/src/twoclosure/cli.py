"""Command line: twoclosure {closure,orbitals,structure,reps,t2c,verify} ...

Every command prints one JSON document (or plain text with --format text).
Everything that varies between identical runs sits under the top-level
"timestamp" key.  Exit codes: 0 ok, 2 verification failure, 3 cap exceeded,
4 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from twoclosure import __version__
from twoclosure.cache import CACHE_ENV, ResultCache, default_cache_path
from twoclosure.closure import two_closure, two_closure_bruteforce
from twoclosure.config import BACKTRACK_DEGREE_CAP, BRUTE_DEGREE_CAP, NODE_BUDGET
from twoclosure.errors import CapExceeded, EngineDisagreement, InputError, TwoClosureError
from twoclosure.groupspec import materialize, parse_group_spec
from twoclosure.orbitals import export_dot, orbital_partition
from twoclosure.structure import SubgroupLattice, fitting_subgroup, structure_report
from twoclosure.suites import SUITES, run_suite
from twoclosure.t2c import RepBuilder, default_max_degree, iter_rep_specs, t2c_search, theorem_classifier

log = logging.getLogger("twoclosure")

EXIT_OK, EXIT_VERIFY, EXIT_CAP, EXIT_INPUT = 0, 2, 3, 4


def _gens(G):
    return [str(g) for g in G.generators]


# -- commands: each returns (payload, plot_callback or None) -------------------------


def cmd_closure(args, G):
    engines = {"brute": ["brute"], "backtrack": ["backtrack"], "both": ["brute", "backtrack"]}[args.engine]
    results = {}
    for e in engines:
        if e == "brute":
            results[e] = two_closure_bruteforce(G, max_degree=args.max_degree or BRUTE_DEGREE_CAP)
        else:
            results[e] = two_closure(G, max_degree=args.max_degree or BACKTRACK_DEGREE_CAP, node_budget=args.node_budget)
    if len(results) == 2 and not results["brute"].closure.equals(results["backtrack"].closure):
        raise EngineDisagreement(
            f"engines disagree: exhaustive order {results['brute'].order}, backtrack order {results['backtrack'].order}"
        )
    main = results[engines[-1]]
    out = {
        "degree": G.degree,
        "order": G.order(),
        "closure_order": main.order,
        "equals": main.equals_input,
        "generators": _gens(G),
        "closure_generators": _gens(main.closure),
        "engines": {e: {"method": r.method, "closure_order": r.order, "nodes": r.nodes} for e, r in results.items()},
    }
    if args.engine == "both":
        out["engines_agree"] = True
    return out, lambda path: _plot_orbitals(G, path)


def _plot_orbitals(G, path):
    from twoclosure.plotting import plot_color_matrix

    return plot_color_matrix(orbital_partition(G), path, title=G.name)


def cmd_orbitals(args, G):
    P = orbital_partition(G, max_degree=max(args.max_degree or 0, 64))
    if args.dot:
        Path(args.dot).write_text(export_dot(P))
    out = {
        "degree": P.degree,
        "rank": P.rank,
        "representatives": [list(r) for r in P.representatives],
        "class_sizes": P.class_sizes(),
        "diagonal_colors": P.diagonal_colors(),
        "paired": [P.paired_color(c) for c in range(P.rank)],
        "colors": P.colors.tolist(),
    }
    if args.dot:
        out["dot"] = str(args.dot)
    return out, lambda path: _plot_orbitals(G, path)


def cmd_structure(args, G):
    r = structure_report(G)
    pred = theorem_classifier(G)
    out = r.to_dict()
    out["t2c_prediction"] = pred.verdict
    out["theorem"] = str(pred)
    out["confirmations"] = list(pred.confirmations)
    out["fitting_generators"] = _gens(fitting_subgroup(G))
    return out, None


def cmd_reps(args, G):
    bound = args.max_degree or default_max_degree(G)
    lat = SubgroupLattice(G)
    builder = RepBuilder(lat)
    reps = []
    for spec in iter_rep_specs(G, bound, lat):
        d = spec.to_dict()
        if args.actions:
            d["generators"] = _gens(builder.action(spec))
        reps.append(d)
    out = {"order": G.order(), "max_degree": bound, "count": len(reps), "representations": reps}
    return out, None


def cmd_t2c(args, G):
    if args.factors:
        names = [f.strip() for f in args.factors.split(",") if f.strip()]
        pred = theorem_classifier(G, factor_names=names)
        return {"factors": names, "t2c_prediction": pred.verdict, "theorem": str(pred)}, None
    v = t2c_search(G, max_degree=args.max_degree, group_id=args.spec, node_budget=args.node_budget, full=args.full)
    out = v.to_dict()
    plot = None
    if v.witness_action is not None:
        plot = lambda path: _plot_orbitals(v.witness_action, path)  # noqa: E731
    return out, plot


COMMANDS = {
    "closure": cmd_closure,
    "orbitals": cmd_orbitals,
    "structure": cmd_structure,
    "reps": cmd_reps,
    "t2c": cmd_t2c,
}


def _params(args) -> dict:
    keys = ("engine", "max_degree", "node_budget", "actions", "full", "factors")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _open_cache(args):
    path = args.cache or default_cache_path()
    return ResultCache(path) if path else None


def run(args) -> tuple[dict, int]:
    start = time.perf_counter()
    cache = _open_cache(args)
    plot = None
    if args.command == "verify":
        params = {}
        if args.max_degree is not None:
            params["max_degree"] = args.max_degree
        report = run_suite(args.suite, catalog=args.catalog, params=params, jobs=args.jobs, cache=cache)
        if args.plot:
            from twoclosure.plotting import plot_suite

            plot_suite(report, args.plot)
            report["plot"] = str(args.plot)
        return report, (EXIT_OK if report["passed"] else EXIT_VERIFY)
    if args.spec is None:
        if args.command == "t2c" and args.factors:
            G = None
            canon = ""
        else:
            raise InputError("a group spec is required")
    else:
        canon = parse_group_spec(args.spec).canonical()
        G = materialize(args.spec)
    fn = COMMANDS[args.command]
    if cache is not None and args.command != "orbitals":
        holder = {}

        def compute():
            payload, holder["plot"] = fn(args, G)
            return payload

        payload = cache.fetch(canon, args.command, _params(args), compute)
        plot = holder.get("plot")
        if plot is None and args.plot and G is not None:
            _, plot = fn(args, G)
    else:
        payload, plot = fn(args, G)
    out = {"command": args.command, "spec": canon, "version": __version__}
    out.update(payload)
    if args.plot:
        if plot is None:
            log.warning("nothing to plot for %s", args.command)
        else:
            plot(args.plot)
            out["plot"] = str(args.plot)
    out["timestamp"] = {
        "utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "elapsed_s": round(time.perf_counter() - start, 4),
    }
    if cache is not None:
        out["timestamp"]["cache"] = cache.stats()
    return out, EXIT_OK


def _text(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in doc.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(_text(item, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=None, help="degree bound (command-specific default)")
    common.add_argument("--node-budget", type=int, default=NODE_BUDGET, help="backtrack node cap")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--cache", type=Path, default=None, help=f"result cache (default: ${CACHE_ENV})")
    common.add_argument("--plot", type=Path, default=None, help="write a figure to this file")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="twoclosure", description="2-closures of permutation groups")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", parents=[common], help="2-closure of a group")
    p.add_argument("spec")
    p.add_argument("--engine", choices=["brute", "backtrack", "both"], default="backtrack")

    p = sub.add_parser("orbitals", parents=[common], help="orbital partition of Omega x Omega")
    p.add_argument("spec")
    p.add_argument("--dot", type=Path, default=None, help="write orbital digraphs as Graphviz DOT")

    p = sub.add_parser("structure", parents=[common], help="structure report and theorem prediction")
    p.add_argument("spec")

    p = sub.add_parser("reps", parents=[common], help="faithful representations up to a degree")
    p.add_argument("spec")
    p.add_argument("--actions", action="store_true", help="include generators of each action")

    p = sub.add_parser("t2c", parents=[common], help="search for a faithful action that is not 2-closed")
    p.add_argument("spec", nargs="?")
    p.add_argument("--full", action="store_true", help="also run specs with repeated stabilizer classes")
    p.add_argument("--factors", default=None, help="comma-separated simple factor names (table lookup only)")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite over a catalog")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--catalog", default=None, help="catalog file or bundled name")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return ap


def exit_code(exc: TwoClosureError) -> int:
    if isinstance(exc, InputError):
        return EXIT_INPUT
    if isinstance(exc, CapExceeded):
        return EXIT_CAP
    return EXIT_VERIFY


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        doc, code = run(args)
    except TwoClosureError as exc:
        err = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err, indent=2) if args.format == "json" else f"error: {type(exc).__name__}: {exc}")
        return exit_code(exc)
    print(json.dumps(doc, indent=2) if args.format == "json" else _text(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
