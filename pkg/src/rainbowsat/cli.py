"""Command line entry point.

Exit codes: 0 success, 1 verification failed, 2 bad parameters or input,
3 budget or size limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import codes, construct, graph, oracle
from .errors import ContractViolation, FormatError, ParameterError, ResourceError

log = logging.getLogger("rainbowsat")

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_PARAM, EXIT_RESOURCE = 0, 1, 2, 3


def _num(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            return str(x)
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def emit(payload: dict, out: str | None = None) -> None:
    text = json.dumps({"schema": SCHEMA, **_num(payload)}, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _write_text(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _one_input(args) -> str:
    if not args.inp:
        raise ParameterError("--in is required")
    return args.inp[0]


# -- code ------------------------------------------------------------------


def cmd_code(args) -> int:
    action = args.action
    if action == "verify":
        X = codes.load_family(_one_input(args))
        s = args.s if args.s is not None else X.t - 1
        res = codes.verify_family(X, s)
        emit(
            {
                "command": "code verify",
                "t": X.t,
                "k": X.k,
                "s": s,
                "size": len(X),
                "ok": res.ok,
                "violation": [list(w) for w in res.violation] if res.violation else None,
            }
        )
        return EXIT_OK if res.ok else EXIT_FAIL
    if action == "rate":
        X = codes.load_family(_one_input(args))
        s = args.s if args.s is not None else X.t - 1
        if not codes.verify_family(X, s):
            raise ContractViolation(f"family fails the pair property for s={s}")
        rep = codes.rate_report(X, s)
        payload = {"command": "code rate", **rep.to_json()}
        if args.figure:
            from .plotting import plot_rate

            payload["figure"] = str(plot_rate(rep, args.figure))
        emit(payload)
        return EXIT_OK
    if action == "construct":
        _need(args, "t", "s", "k")
        if args.kind == "cyclic":
            X = codes.cyclic_family(args.t)
        else:
            X = codes.balanced_type_family(args.t, args.s, args.k)
    elif action == "greedy":
        _need(args, "t", "s", "k")
        X = codes.greedy_search(args.t, args.s, args.k, seed=args.seed, restarts=args.restarts)
    elif action == "exact":
        _need(args, "t", "s", "k")
        res = codes.exact_max_family(args.t, args.s, args.k, limit=args.limit, symmetry=args.symmetry)
        X = res.family
    elif action == "product":
        if not args.inp:
            raise ParameterError("product needs at least one --in")
        fams = [codes.load_family(p) for p in args.inp]
        if len(fams) == 1:
            X = codes.power(fams[0], args.power)
        else:
            X = fams[0]
            for Y in fams[1:]:
                X = codes.concat_product(X, Y)
    else:
        raise ParameterError(f"unknown code action {action!r}")
    _write_text(codes.format_family(X), args.out)
    if args.out:
        emit({"command": f"code {action}", "t": X.t, "k": X.k, "size": len(X), "out": args.out})
    return EXIT_OK


def _need(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ParameterError("missing " + ", ".join(missing))


# -- graph -----------------------------------------------------------------


def cmd_graph(args) -> int:
    action = args.action
    if action == "build":
        if not args.code:
            raise ParameterError("--code is required")
        X = codes.load_family(args.code)
        G = construct.build_bipartite(X)
        _write_text(graph.format_graph(G), args.out)
        if args.figure:
            from .plotting import draw_colored_graph

            draw_colored_graph(G, args.figure, parts=(list(range(1, X.k + 1)), list(range(X.k + 1, G.n + 1))))
        return EXIT_OK
    if action == "extend":
        G = graph.load_graph(_one_input(args))
        _need(args, "s")
        H = construct.maximal_extension(G, args.s)
        _write_text(graph.format_graph(H), args.out)
        if args.figure:
            from .plotting import draw_colored_graph

            draw_colored_graph(H, args.figure)
        return EXIT_OK
    if action == "verify":
        G = graph.load_graph(_one_input(args))
        _need(args, "s")
        rep = graph.is_rainbow_saturated(G, args.s)
        emit({"command": "graph verify", "n": G.n, "t": G.t, "edges": G.edge_count, **rep.to_json()})
        return EXIT_OK if rep.saturated else EXIT_FAIL
    if action == "report":
        _need(args, "t", "n")
        fam = codes.load_family(args.code) if args.code else None
        rep = construct.construction_report(args.t, args.n, family=fam, seed=args.seed, restarts=args.restarts)
        payload = {"command": "graph report", **rep.to_json()}
        if args.out:
            graph.save_graph(rep.graph, args.out)
            payload["out"] = args.out
        emit(payload)
        return EXIT_OK
    raise ParameterError(f"unknown graph action {action!r}")


# -- oracle ----------------------------------------------------------------


def cmd_rsat(args) -> int:
    budget = args.budget if args.budget is not None else oracle.default_budget()
    res = oracle.exact_rsat(args.n, args.s, args.t, budget=budget, all_witnesses=args.all_witnesses, threads=args.threads)
    payload = {"command": "rsat exact", **res.to_json(), "budget": budget}
    if args.all_witnesses:
        payload["witnesses"] = [[[u, v, c] for (u, v), c in W.edges.items()] for W in res.witnesses]
    if args.figure:
        from .plotting import draw_colored_graph

        payload["figure"] = str(draw_colored_graph(res.witness, args.figure))
    emit(payload)
    return EXIT_OK


def cmd_witness(args) -> int:
    H = graph.load_graph(_one_input(args))
    rep = oracle.lower_bound_witness_check(H, args.s, args.d)
    if args.json:
        emit({"command": "witness check", **rep.to_json()})
    else:
        status = "PASS" if rep.passed else "FAIL"
        print(f"{status}  k={len(rep.A)} m={len(rep.B)} qualifying={len(rep.qualifying)} d={rep.d}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_bounds(args) -> int:
    rep = oracle.bound_formulas(args.n, args.s, args.t)
    payload = {"command": "bounds", **rep.to_json()}
    if args.figure:
        from .plotting import plot_bounds

        payload["figure"] = str(plot_bounds(args.s, args.t, args.n, args.figure))
    emit(payload)
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rainbowsat", description="Rainbow saturation codes, constructions and oracles.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("code", help="capacity codes")
    c.add_argument("action", choices=["verify", "construct", "greedy", "exact", "product", "rate"])
    c.add_argument("--t", type=int)
    c.add_argument("--s", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--restarts", type=int, default=10)
    c.add_argument("--limit", type=int, default=codes.DEFAULT_LIMIT)
    c.add_argument("--in", dest="inp", action="append", help="input code file (repeat for product)")
    c.add_argument("--out")
    c.add_argument("--kind", choices=["balanced", "cyclic"], default="balanced")
    c.add_argument("--power", type=int, default=2, help="product of a single input with itself")
    c.add_argument("--symmetry", action="store_true", help="orbit-split exact search")
    c.add_argument("--figure")
    c.set_defaults(func=cmd_code)

    g = sub.add_parser("graph", help="colored graphs")
    g.add_argument("action", choices=["build", "extend", "verify", "report"])
    g.add_argument("--code")
    g.add_argument("--in", dest="inp", action="append")
    g.add_argument("--out")
    g.add_argument("--s", type=int)
    g.add_argument("--t", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--restarts", type=int, default=20)
    g.add_argument("--figure")
    g.set_defaults(func=cmd_graph)

    r = sub.add_parser("rsat", help="exact saturation numbers")
    r.add_argument("action", choices=["exact"])
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--s", type=int, required=True)
    r.add_argument("--t", type=int, required=True)
    r.add_argument("--budget", type=int)
    r.add_argument("--all-witnesses", action="store_true")
    r.add_argument("--threads", type=int, default=1)
    r.add_argument("--figure")
    r.set_defaults(func=cmd_rsat)

    w = sub.add_parser("witness", help="replay the lower-bound argument")
    w.add_argument("action", choices=["check"])
    w.add_argument("--in", dest="inp", action="append", required=True)
    w.add_argument("--s", type=int, required=True)
    w.add_argument("--d", type=int, required=True)
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_witness)

    b = sub.add_parser("bounds", help="closed-form bounds")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--s", type=int, required=True)
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--figure")
    b.set_defaults(func=cmd_bounds)
    return p


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARAM
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ResourceError as exc:
        emit({"error": "resource", "message": str(exc)})
        return EXIT_RESOURCE
    except ContractViolation as exc:
        emit({"error": "contract", "message": str(exc)})
        return EXIT_FAIL
    except (ParameterError, FormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
