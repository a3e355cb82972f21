"""Command line front end.

Exit codes: 0 success, 1 malformed input, 2 validation violation,
3 search stopped by its budget.  Output is sorted JSON (or DOT), so equal
inputs and seeds give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .acceptance import CRITERIA
from .generators import farey_with_order, generalised_halved_farey, halved_farey
from .graph_core import Graph, InputError
from .grainline import (GrainLine, all_segments, check_grain_line, check_prime_axioms, density_report,
                        extract_grain_line, is_free, is_well_structured, is_wildly_presented, p_segments)
from .immersion import ImmersionModel, find_immersion_bruteforce, immerse_halved_farey, verify_immersion
from .minors import check_dive_trace, dive, find_subdivision, subdivision_experiment
from .separations import edge_blocks, find_compound_separation, iterated_split, tree_cut_decomposition

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_UNKNOWN = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    action: str | None = None
    inputs: list = field(default_factory=list)
    fmt: str = "json"
    s: int = 1
    f: int | None = None
    c: int = 2
    budget: int = 200_000
    seed: int = 0
    horizon: int = 2

    def validate(self) -> None:
        for name in ("s", "c", "budget", "horizon", "seed"):
            if getattr(self, name) < 0:
                raise InputError(f"--{name} must be non-negative")
        if self.f is not None and self.f < 0:
            raise InputError("--f must be non-negative")


# loading

def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_graph(path: str) -> Graph:
    data = read_json(path)
    if isinstance(data, dict) and "graph" in data:
        data = data["graph"]
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a graph object")
    return Graph.from_json(data)


def load_grain_line(path: str) -> GrainLine:
    data = read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a grain-line object")
    host = Graph.from_json(data["graph"]) if "graph" in data else None
    if "meta" in data:
        meta = data["meta"]
        try:
            return GrainLine(meta["x"], meta["y"], meta["order"], meta["paths"], host=host)
        except (KeyError, TypeError) as exc:
            raise InputError(f"{path}: malformed generator metadata: {exc}") from None
    return GrainLine.from_json(data, host=host)


def emit(obj, out=None) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, sort_keys=True, indent=2) + "\n"
    (out or sys.stdout).write(text)


# subcommands

def cmd_gen(cfg: RunConfig, args) -> int:
    if cfg.action == "farey":
        g, cyc = farey_with_order(args.order)
        if cfg.fmt == "dot":
            emit(g.to_dot("farey"))
        else:
            emit({"graph": g.to_json(), "cyclic_order": cyc})
        return EXIT_OK
    if cfg.action == "halved":
        lg = halved_farey(args.order)
    else:
        if not args.lengths:
            raise InputError("gen general needs --lengths")
        lg = generalised_halved_farey([int(v) for v in args.lengths.split(",")], args.order)
    if cfg.fmt == "dot":
        emit(lg.graph.to_dot("halved"))
    else:
        emit({"graph": lg.graph.to_json(), "meta": lg.metadata_json()})
    return EXIT_OK


def _properties(gl: GrainLine) -> dict:
    props = {"valid": True}
    props["GL2'"], props["GL3'"] = check_prime_axioms(gl)
    props["well_structured"] = is_well_structured(gl)
    props["free"] = is_free(gl)
    props["wildly_presented"] = is_wildly_presented(gl)
    props["density_gaps"] = [list(r) for r in density_report(gl)]
    return props


def cmd_grainline(cfg: RunConfig, args) -> int:
    if cfg.action == "extract":
        data = read_json(cfg.inputs[0])
        paths = data.get("paths") if isinstance(data, dict) else data
        if not isinstance(paths, list):
            raise InputError(f"{cfg.inputs[0]}: expected a list of paths")
        gl = extract_grain_line(paths)
        emit(gl.to_json())
        return EXIT_OK
    gl = load_grain_line(cfg.inputs[0])
    rep = check_grain_line(gl)
    if cfg.action == "check":
        out = {"report": rep.to_json()}
        if rep.ok:
            out["properties"] = _properties(gl)
        emit(out)
        return EXIT_OK if rep.ok else EXIT_INVALID
    if not rep.ok:
        emit({"report": rep.to_json()})
        return EXIT_INVALID
    segs = p_segments(gl, args.depth) if args.depth is not None else all_segments(gl)
    emit({"segments": [{"depth": s.depth, "u": s.u, "v": s.v, "path": list(s.path)} for s in segs]})
    return EXIT_OK


def _model_json(model) -> dict | None:
    if model is None:
        return None
    return {"branch": dict(sorted(model.branch.items())),
            "routes": {f"{a}-{b}": list(p) for (a, b), p in sorted(model.routes.items())}}


def cmd_minors(cfg: RunConfig, args) -> int:
    if cfg.action == "find-subdivision":
        H, G = load_graph(args.pattern), load_graph(args.host)
        res = find_subdivision(H, G, cfg.budget)
        emit({"status": res.status, "nodes": res.nodes, "exhaustive": res.exhaustive,
              "model": _model_json(res.model)})
        return EXIT_UNKNOWN if res.status == "unknown" else EXIT_OK
    if cfg.action == "dive":
        outer, inner = load_grain_line(args.outer), load_grain_line(args.inner)
        trace = dive(outer, inner, args.k)
        rep = check_dive_trace(outer, trace)
        emit({"q": trace.q, "p": trace.p, "intervals": [list(i) for i in trace.intervals],
              "segments": [list(s.path) for s in trace.segments], "truncated": trace.truncated,
              "reason": trace.reason, "report": rep.to_json()})
        return EXIT_OK if rep.ok else EXIT_INVALID
    families = [load_grain_line(p) for p in args.families.split(",") if p]
    report = subdivision_experiment(families, cfg.horizon, cfg.budget)
    emit(report)
    unknown = any(r["status"] == "unknown" for r in report["results"])
    return EXIT_UNKNOWN if unknown else EXIT_OK


def cmd_sep(cfg: RunConfig, args) -> int:
    G = load_graph(cfg.inputs[0])
    if cfg.action == "blocks":
        emit({"c": cfg.c, "blocks": [sorted(b) for b in edge_blocks(G, cfg.c)]})
    elif cfg.action == "tcd":
        emit(tree_cut_decomposition(G, cfg.c).to_json())
    elif cfg.action == "find":
        f = G.num_edges() if cfg.f is None else cfg.f
        sep = find_compound_separation(G, args.u, args.v, cfg.s, f)
        emit({"s": cfg.s, "f": f, "separation": sep.to_json() if sep else None})
    else:
        f = G.num_edges() if cfg.f is None else cfg.f
        rep = iterated_split(G, f, args.steps)
        emit({"f": f, "stopped_early": rep.stopped_early, "reason": rep.reason,
              "steps": [{"pair": list(st.pair), "separation": st.separation.to_json(),
                         "G_n": st.G_n.to_json(), "checks": st.checks} for st in rep.steps]})
        if not rep.ok:
            return EXIT_INVALID
    return EXIT_OK


def cmd_immerse(cfg: RunConfig, args) -> int:
    if cfg.action == "build":
        gl = load_grain_line(args.host)
        model = immerse_halved_farey(gl, args.order)
        emit(model.to_json())
        return EXIT_OK
    if cfg.action == "verify":
        model = ImmersionModel.from_json(read_json(cfg.inputs[0]))
        rep = verify_immersion(model)
        emit(rep.to_json())
        return EXIT_OK if rep.ok else EXIT_INVALID
    H, G = load_graph(args.pattern), load_graph(args.host)
    res = find_immersion_bruteforce(H, G, strong=args.strong, budget=cfg.budget)
    emit({"status": res.status, "nodes": res.nodes,
          "model": res.model.to_json() if res.model else None})
    return EXIT_UNKNOWN if res.status == "unknown" else EXIT_OK


def cmd_harness(cfg: RunConfig, args) -> int:
    if args.suite == "all":
        keys = sorted(CRITERIA)
    else:
        try:
            keys = [int(k) for k in args.suite.split(",")]
        except ValueError:
            raise InputError(f"--suite takes 'all' or criterion numbers, got {args.suite!r}") from None
        if any(k not in CRITERIA for k in keys):
            raise InputError(f"criteria are numbered 1..{len(CRITERIA)}")
    results = [CRITERIA[k](cfg.seed) for k in keys]
    emit({"seed": cfg.seed, "passed": all(r.passed for r in results),
          "criteria": [r.to_json() for r in results]})
    return EXIT_OK if all(r.passed for r in results) else EXIT_INVALID


def cmd_export(cfg: RunConfig, args) -> int:
    G = load_graph(cfg.inputs[0])
    emit(G.to_dot(args.name) if cfg.fmt == "dot" else G.to_json())
    return EXIT_OK


# parser

class _Parser(argparse.ArgumentParser):
    # usage errors are malformed input, not validation failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="farey-lab", description="Finite experiments on (halved) Farey graphs.")
    p.add_argument("--seed", type=int, default=0, help="seed for randomised suites (FAREY_LAB_SEED wins)")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate graphs")
    gen.add_argument("kind", choices=["halved", "farey", "general"])
    gen.add_argument("--order", type=int, required=True)
    gen.add_argument("--lengths", help="comma separated l(0),...,l(n) for 'general'")
    gen.add_argument("--format", dest="fmt", choices=["json", "dot"], default="json")

    gl = sub.add_parser("grainline", help="check, extract or segment grain lines")
    gl.add_argument("action", choices=["check", "extract", "segments"])
    gl.add_argument("input")
    gl.add_argument("--depth", type=int)

    mi = sub.add_parser("minors", help="subdivision search and diving")
    msub = mi.add_subparsers(dest="action", required=True)
    fs = msub.add_parser("find-subdivision")
    fs.add_argument("--pattern", required=True)
    fs.add_argument("--host", required=True)
    fs.add_argument("--budget", type=int, default=200_000)
    dv = msub.add_parser("dive")
    dv.add_argument("--outer", required=True)
    dv.add_argument("--inner", required=True)
    dv.add_argument("--k", type=int, default=3)
    th = msub.add_parser("experiment")
    th.add_argument("--families", required=True, help="comma separated grain-line files")
    th.add_argument("--horizon", type=int, default=2)
    th.add_argument("--budget", type=int, default=200_000)

    sp = sub.add_parser("sep", help="separations, edge-blocks, decompositions")
    ssub = sp.add_subparsers(dest="action", required=True)
    for name in ("blocks", "tcd"):
        q = ssub.add_parser(name)
        q.add_argument("input")
        q.add_argument("--c", type=int, default=2)
    fd = ssub.add_parser("find")
    fd.add_argument("input")
    fd.add_argument("--u", required=True)
    fd.add_argument("--v", required=True)
    fd.add_argument("--s", type=int, default=1)
    fd.add_argument("--f", type=int)
    pl = ssub.add_parser("peel")
    pl.add_argument("input")
    pl.add_argument("--steps", type=int, default=3)
    pl.add_argument("--f", type=int)

    im = sub.add_parser("immerse", help="immersion construction, verification and search")
    isub = im.add_subparsers(dest="action", required=True)
    bd = isub.add_parser("build")
    bd.add_argument("--order", type=int, required=True)
    bd.add_argument("--host", required=True, help="grain line or 'gen' output with metadata")
    vf = isub.add_parser("verify")
    vf.add_argument("input")
    br = isub.add_parser("brute")
    br.add_argument("--pattern", required=True)
    br.add_argument("--host", required=True)
    br.add_argument("--strong", action="store_true")
    br.add_argument("--budget", type=int, default=200_000)

    ha = sub.add_parser("harness", help="run the acceptance suite")
    ha.add_argument("action", choices=["acceptance"])
    ha.add_argument("--suite", default="all")

    ex = sub.add_parser("export", help="convert a graph file to DOT or normalised JSON")
    ex.add_argument("input")
    ex.add_argument("--format", dest="fmt", choices=["json", "dot"], default="dot")
    ex.add_argument("--name", default="G")
    return p


def config_from_args(args) -> RunConfig:
    seed = args.seed
    env = os.environ.get("FAREY_LAB_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise InputError(f"FAREY_LAB_SEED must be an integer, got {env!r}") from None
    action = getattr(args, "action", None) or getattr(args, "kind", None)
    inputs = [args.input] if getattr(args, "input", None) else []
    cfg = RunConfig(args.command, action, inputs, getattr(args, "fmt", "json"),
                    s=getattr(args, "s", 1), f=getattr(args, "f", None), c=getattr(args, "c", 2),
                    budget=getattr(args, "budget", 200_000), seed=seed,
                    horizon=getattr(args, "horizon", 2))
    cfg.validate()
    return cfg


HANDLERS = {"gen": cmd_gen, "grainline": cmd_grainline, "minors": cmd_minors, "sep": cmd_sep,
            "immerse": cmd_immerse, "harness": cmd_harness, "export": cmd_export}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return HANDLERS[cfg.command](cfg, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
