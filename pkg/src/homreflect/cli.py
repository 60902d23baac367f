"""Command-line frontend: seeded, file-based, reproducible experiments.

Exit codes: 0 all checks ran and every unconditional one held; 1 input
error; 2 an unconditional invariant failed (an implementation bug, not a
property of the inputs); 3 a search budget ran out.  Reports carry exact
values as num/den strings and are byte-identical across reruns with the
same inputs; wall-clock timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from itertools import combinations

from . import __version__
from .graphs import (CapabilityError, EdgeColouring, Graph, GraphError,
                     direction_colouring, gen_clique_union, gen_complete,
                     gen_cycle, gen_cycle_blowup, gen_hypercube, gen_random,
                     gen_set_graph, greedy_proper_colouring,
                     rainbow_colouring, read_colouring, read_edge_list,
                     write_colouring, write_edge_list)
from .homcount import (check_final_inequality, check_reflection_inequality,
                       hom_count, injective_hom_count, sidorenko_check,
                       supersaturation_experiment)
from .rainbow import (check_pattern_chain, check_variant_chain,
                      coincidence_table, cycle_weight_sum,
                      cycle_weight_sum_spectral, find_almost_rainbow,
                      find_rainbow_cycle)
from .reflectivity import (certificate_to_json, certify_reflective,
                           enumerate_reflection_triples, is_admissible,
                           reflectivity_report)
from .reports import frac_str, parse_fraction, render_json, render_text

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2
EXIT_BUDGET = 3


# ---------------------------------------------------------------------------
# Graph / colouring specs
# ---------------------------------------------------------------------------

def parse_graph_spec(spec: str) -> tuple[Graph, EdgeColouring | None]:
    """A file path, or name(args): hypercube(d), setgraph(l,k),
    random(n,p,seed), clique(n), cycle(n), clique-union(size,count),
    cycle-blowup(l), direction-cube(d), triangle-rainbow, or qD."""
    spec = spec.strip()
    if os.path.exists(spec):
        return read_edge_list(spec), None
    low = spec.lower()
    if low in ("triangle-rainbow", "rainbow-triangle"):
        g = gen_complete(3)
        return g, rainbow_colouring(g)
    if low.startswith("q") and low[1:].isdigit():
        return gen_hypercube(int(low[1:])), None
    name, args = _split_call(low)
    if name in ("hypercube", "cube"):
        return gen_hypercube(_int1(args, spec)), None
    if name == "setgraph":
        ell, k = (int(a) for a in _nargs(args, 2, spec))
        return gen_set_graph(ell, k), None
    if name == "random":
        n_s, p_s, seed_s = _nargs(args, 3, spec)
        return gen_random(int(n_s), parse_fraction(p_s), int(seed_s)), None
    if name in ("clique", "complete"):
        return gen_complete(_int1(args, spec)), None
    if name == "cycle":
        return gen_cycle(_int1(args, spec)), None
    if name in ("clique-union", "cliqueunion"):
        size, count = (int(a) for a in _nargs(args, 2, spec))
        return gen_clique_union(size, count), None
    if name in ("cycle-blowup", "blowup"):
        return gen_cycle_blowup(_int1(args, spec)), None
    if name in ("direction-cube", "direction-coloured-cube"):
        return direction_colouring(_int1(args, spec))
    raise GraphError(f"unrecognised graph spec {spec!r}")


def _split_call(spec: str) -> tuple[str, list[str]]:
    if "(" in spec and spec.endswith(")"):
        name, inner = spec[:-1].split("(", 1)
        args = [a.strip() for a in inner.split(",")] if inner.strip() else []
        return name.strip(), args
    if ":" in spec:
        name, inner = spec.split(":", 1)
        return name.strip(), [a.strip() for a in inner.split(",")]
    return spec, []


def _nargs(args: list[str], n: int, spec: str) -> list[str]:
    if len(args) != n:
        raise GraphError(f"spec {spec!r} needs {n} arguments")
    return args


def _int1(args: list[str], spec: str) -> int:
    return int(_nargs(args, 1, spec)[0])


def resolve_colouring(g: Graph, spec: str | None,
                      builtin: EdgeColouring | None, seed: int) -> EdgeColouring:
    if spec is None:
        return builtin if builtin is not None else greedy_proper_colouring(g, seed)
    spec = spec.strip()
    low = spec.lower()
    if low == "direction":
        if builtin is None:
            raise GraphError("direction colouring is only built into direction-cube hosts")
        return builtin
    if low == "rainbow":
        return rainbow_colouring(g)
    name, args = _split_call(low)
    if name == "greedy":
        return greedy_proper_colouring(g, int(args[0]) if args else seed)
    if os.path.exists(spec):
        return read_colouring(g, spec)
    raise GraphError(f"unrecognised colouring spec {spec!r}")


# ---------------------------------------------------------------------------
# Output plumbing
# ---------------------------------------------------------------------------

def emit(report: dict, fmt: str, out: str | None) -> None:
    text = render_json(report) if fmt == "json" else render_text(report)
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def base_report(command: str, params: dict) -> dict:
    return {"command": command, "parameters": params, "toolkit_version": __version__}


def _parse_vertices(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise GraphError(f"bad vertex list {text!r}") from None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "hypercube":
        g = gen_hypercube(args.d)
        colouring = None
    elif kind == "setgraph":
        g = gen_set_graph(args.l, args.k)
        colouring = None
    elif kind == "random":
        if args.n is None or args.p is None:
            raise GraphError("random needs --n and --p")
        g = gen_random(args.n, parse_fraction(args.p), args.seed)
        colouring = None
    else:  # direction-coloured-cube
        g, colouring = direction_colouring(args.d)
    if not args.out:
        raise GraphError("gen needs --out for the edge-list file")
    write_edge_list(g, args.out)
    sys.stderr.write(f"wrote {g.n} vertices, {g.edge_count()} edges to {args.out}\n")
    if colouring is not None:
        colour_out = args.colour_out or args.out + ".colours"
        write_colouring(g, colouring, colour_out)
        sys.stderr.write(f"wrote colouring to {colour_out}\n")
    elif args.colour_out:
        raise GraphError(f"{kind} has no built-in colouring; use the h2k/verify colouring options")
    return EXIT_OK


def cmd_certify(args) -> int:
    g, _ = parse_graph_spec(args.graph)
    parts = g.bipartition()
    if parts is None or not g.is_connected():
        raise GraphError("certification needs a connected bipartite graph")
    report = base_report("certify", {"graph": args.graph, "budget": args.budget})
    if args.r0:
        r0 = _parse_vertices(args.r0)
        res = certify_reflective(g, r0, budget=args.budget)
        report["start"] = sorted(r0)
        report["certified"] = res.known_reflective
        report["states_visited"] = res.states_visited
        if res.certificate is not None:
            report["steps"] = res.certificate.num_steps
            report["amplification_exponent"] = res.certificate.amplification_exponent
            if args.cert_out:
                with open(args.cert_out, "w", newline="\n") as fh:
                    fh.write(certificate_to_json(res.certificate) + "\n")
        report["summary"] = "reflective: yes" if res.known_reflective else "reflective: unknown"
        emit(report, args.format, args.out)
        return EXIT_OK if res.known_reflective else EXIT_BUDGET
    rep = reflectivity_report(g, budget=args.budget)
    report["summary"] = f"reflective: {rep['verdict']}"
    report["sides_checked"] = rep["sides_checked"]
    report["side_swap_symmetry"] = rep["side_swap_symmetry"]
    report["pairs"] = [
        {"start": p["start"], "certified": p["certified"], "steps": p["steps"]}
        for p in rep["pairs"]
    ]
    if args.cert_dir:
        os.makedirs(args.cert_dir, exist_ok=True)
        for p in rep["pairs"]:
            if p["certificate"] is not None:
                name = "cert_" + "_".join(str(v) for v in p["start"]) + ".json"
                with open(os.path.join(args.cert_dir, name), "w", newline="\n") as fh:
                    fh.write(certificate_to_json(p["certificate"]) + "\n")
    emit(report, args.format, args.out)
    return EXIT_OK if rep["verdict"] == "yes" else EXIT_BUDGET


def cmd_verify(args) -> int:
    if args.suite == "section2":
        return _verify_reflection_suite(args)
    return _verify_cycle_suite(args)


def _verify_reflection_suite(args) -> int:
    pattern, _ = parse_graph_spec(args.pattern)
    host, _ = parse_graph_spec(args.host)
    if pattern.bipartition() is None or not pattern.is_connected():
        raise GraphError("the reflection suite needs a connected bipartite pattern")
    report = base_report("verify section2", {
        "pattern": args.pattern, "host": args.host, "max_sets": args.max_sets,
    })
    checks = []
    sid = sidorenko_check(pattern, host)
    checks.append({"name": "density_lower_bound", "lhs": sid.hom,
                   "rhs": sid.bound, "holds": sid.holds})
    triples = enumerate_reflection_triples(pattern)
    parts = pattern.bipartition()
    candidates = [frozenset(c)
                  for part in parts
                  for size in range(1, len(part) + 1)
                  for c in combinations(sorted(part), size)]
    done = 0
    violations = 0
    for ti, triple in enumerate(triples):
        for r in candidates:
            if args.max_sets and done >= args.max_sets:
                break
            if not is_admissible(pattern, triple, r):
                continue
            res = check_reflection_inequality(pattern, host, triple, r)
            done += 1
            if not res.holds:
                violations += 1
                checks.append({"name": f"reflection_step_t{ti}_{sorted(r)}",
                               "lhs": res.constrained ** 2,
                               "rhs": res.reflected_ab * res.reflected_ba,
                               "holds": False})
    checks.append({"name": "reflection_steps_swept", "count": done,
                   "holds": violations == 0})
    side0 = sorted(parts[0])
    for r0 in combinations(side0, 2):
        res = certify_reflective(pattern, r0, budget=args.budget)
        if res.certificate is None:
            continue
        fin = check_final_inequality(pattern, host, res.certificate)
        checks.append({"name": f"amplified_bound_{r0[0]}_{r0[1]}",
                       "lhs": fin.constrained_start ** fin.exponent,
                       "rhs": fin.full_side * fin.unconstrained ** (fin.exponent - 1),
                       "holds": fin.holds,
                       "exponent": fin.exponent})
    report["checks"] = checks
    ok = all(c["holds"] for c in checks)
    report["all_hold"] = ok
    emit(report, args.format, args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def _verify_cycle_suite(args) -> int:
    host, builtin = parse_graph_spec(args.host)
    colouring = resolve_colouring(host, args.colouring, builtin, args.seed)
    report = base_report("verify section3", {
        "host": args.host, "colouring": args.colouring or "auto",
        "k": args.k, "epsilon": args.epsilon, "seed": args.seed,
    })
    chain = check_pattern_chain(host, colouring, args.k)
    report["weights"] = {str(j): v for j, v in chain["weights"].items()}
    report["checks"] = [dict(c) for c in chain["checks"]]
    report["unconditional_ok"] = chain["unconditional_ok"]
    report["conditional_ok"] = chain["conditional_ok"]
    cycles = []
    if not chain["conditional_ok"]:
        found = find_rainbow_cycle(host, colouring)
        cycles.append({"kind": "rainbow", "cycle": list(found.cycle) if found.cycle else None,
                       "exhaustive": found.exhaustive})
    if args.epsilon:
        eps = parse_fraction(args.epsilon)
        variant = check_variant_chain(host, colouring, args.k, eps)
        report["variant_checks"] = [dict(c) for c in variant["checks"]]
        report["variant_conditional_ok"] = variant["conditional_ok"]
        if not variant["conditional_ok"]:
            found = find_almost_rainbow(host, colouring, eps)
            cycles.append({"kind": "almost-rainbow",
                           "cycle": list(found.cycle) if found.cycle else None,
                           "exhaustive": found.exhaustive})
    report["cycles_found"] = cycles
    emit(report, args.format, args.out)
    return EXIT_OK if chain["unconditional_ok"] else EXIT_VIOLATION


def cmd_experiment(args) -> int:
    if args.name == "supersaturation":
        rep = supersaturation_experiment(args.d, args.n, parse_fraction(args.p),
                                         args.seed, args.trials)
        report = base_report("experiment supersaturation", {
            "d": args.d, "n": args.n, "p": frac_str(parse_fraction(args.p)),
            "seed": args.seed, "trials": args.trials,
        })
        report.update({k: v for k, v in rep.items() if k != "trials"})
        report["trials"] = rep["trials"]
        emit(report, args.format, args.out)
        return EXIT_OK
    host, builtin = parse_graph_spec(args.host)
    colouring = None if args.spectral else \
        resolve_colouring(host, args.colouring, builtin, args.seed)
    report = base_report(f"experiment {args.name}", {
        "host": args.host, "colouring": args.colouring or "auto",
        "k_max": args.k_max, "epsilon": args.epsilon, "seed": args.seed,
        "spectral": args.spectral,
    })
    rows = []
    ok_unconditional = True
    cycles = []
    for k in range(2, args.k_max + 1):
        if args.spectral:
            sp = cycle_weight_sum_spectral(host, k)
            bound = (2.0 * k * k / host.min_degree()) ** k * host.n
            rows.append({"k": k, "weight_float": sp.value, "bound_float": bound,
                         "holds": sp.value <= bound + sp.error_bound})
            continue
        if args.name == "rainbow-bounds":
            chain = check_pattern_chain(host, colouring, k)
            ok_unconditional &= chain["unconditional_ok"]
            rows.append({"k": k,
                         "weight": chain["weights"][2 * k],
                         "checks": [dict(c) for c in chain["checks"]],
                         "conditional_ok": chain["conditional_ok"]})
            if not chain["conditional_ok"]:
                found = find_rainbow_cycle(host, colouring)
                cycles.append({"k": k, "cycle": list(found.cycle) if found.cycle else None,
                               "exhaustive": found.exhaustive})
        else:
            eps = parse_fraction(args.epsilon or "1/4")
            variant = check_variant_chain(host, colouring, k, eps)
            rows.append({"k": k,
                         "weight": variant["weights"][2 * k],
                         "checks": [dict(c) for c in variant["checks"]],
                         "conditional_ok": variant["conditional_ok"]})
            if not variant["conditional_ok"]:
                found = find_almost_rainbow(host, colouring, eps)
                cycles.append({"k": k, "cycle": list(found.cycle) if found.cycle else None,
                               "exhaustive": found.exhaustive})
    report["rounds"] = rows
    report["cycles_found"] = cycles
    report["unconditional_ok"] = ok_unconditional
    emit(report, args.format, args.out)
    return EXIT_OK if ok_unconditional else EXIT_VIOLATION


def cmd_homcount(args) -> int:
    pattern, _ = parse_graph_spec(args.pattern)
    host, _ = parse_graph_spec(args.host)
    report = base_report("homcount", {
        "pattern": args.pattern, "host": args.host,
        "constraint": args.constraint, "injective": args.injective,
    })
    if args.injective:
        report["injective_count"] = injective_hom_count(pattern, host)
    constraint = _parse_vertices(args.constraint) if args.constraint else None
    report["count"] = hom_count(pattern, host, constraint)
    emit(report, args.format, args.out)
    return EXIT_OK


def cmd_h2k(args) -> int:
    host, builtin = parse_graph_spec(args.host)
    report = base_report("h2k", {
        "host": args.host, "k": args.k, "patterns": args.patterns,
        "colouring": args.colouring or ("auto" if args.patterns else None),
        "seed": args.seed,
    })
    exact = cycle_weight_sum(host, args.k)
    spectral = cycle_weight_sum_spectral(host, args.k)
    report["h2k"] = exact
    report["h2k_float"] = spectral.value
    report["spectral_error_bound"] = spectral.error_bound
    report["at_least_one"] = exact >= 1
    if args.patterns:
        colouring = resolve_colouring(host, args.colouring, builtin, args.seed)
        table = coincidence_table(host, colouring, args.k)
        report["pattern_weights"] = [
            {"i": i, "j": j, "value": table[(i, j)]}
            for (i, j) in sorted(table)
        ]
    emit(report, args.format, args.out)
    return EXIT_OK if exact >= 1 else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="homreflect",
        description="Reflection certificates, homomorphism inequalities and "
                    "weighted cycle counts on concrete graphs.")
    top.add_argument("--version", action="version", version=f"homreflect {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=10 ** 6)

    g = sub.add_parser("gen", help="write generated graph (and colouring) files")
    g.add_argument("kind", choices=("hypercube", "setgraph", "random",
                                    "direction-coloured-cube"))
    g.add_argument("--d", type=int, default=3)
    g.add_argument("--l", type=int, default=1)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--n", type=int)
    g.add_argument("--p")
    g.add_argument("--colour-out")
    common(g)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("certify", help="search reflection certificates")
    c.add_argument("--graph", required=True)
    c.add_argument("--r0", help="comma-separated starting pair, e.g. 0,3")
    c.add_argument("--all-pairs", action="store_true")
    c.add_argument("--cert-out", help="certificate file (single start)")
    c.add_argument("--cert-dir", help="certificate directory (all pairs)")
    common(c)
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", help="run an inequality suite")
    vs = v.add_subparsers(dest="suite", required=True)
    v2 = vs.add_parser("section2", help="reflection/homomorphism inequalities")
    v2.add_argument("--pattern", default="q3")
    v2.add_argument("--host", required=True)
    v2.add_argument("--max-sets", type=int, default=200,
                    help="cap on (triple, set) combinations swept (0 = all)")
    common(v2)
    v2.set_defaults(func=cmd_verify)
    v3 = vs.add_parser("section3", help="weighted cycle inequalities")
    v3.add_argument("--host", required=True)
    v3.add_argument("--colouring")
    v3.add_argument("--k", type=int, default=2)
    v3.add_argument("--epsilon")
    common(v3)
    v3.set_defaults(func=cmd_verify)

    e = sub.add_parser("experiment", help="seeded batch experiments")
    e.add_argument("name", choices=("supersaturation", "rainbow-bounds",
                                    "almost-rainbow-bounds"))
    e.add_argument("--d", type=int, default=3)
    e.add_argument("--n", type=int, default=40)
    e.add_argument("--p", default="7/10")
    e.add_argument("--trials", type=int, default=5)
    e.add_argument("--host")
    e.add_argument("--colouring")
    e.add_argument("--k-max", type=int, default=3)
    e.add_argument("--epsilon")
    e.add_argument("--spectral", action="store_true",
                   help="float bounds via the eigenvalue path (large hosts)")
    common(e)
    e.set_defaults(func=cmd_experiment)

    hc = sub.add_parser("homcount", help="count homomorphisms")
    hc.add_argument("--pattern", required=True)
    hc.add_argument("--host", required=True)
    hc.add_argument("--constraint", help="vertices forced to one image, e.g. 0,3")
    hc.add_argument("--injective", action="store_true")
    common(hc)
    hc.set_defaults(func=cmd_homcount)

    h = sub.add_parser("h2k", help="weighted closed-walk sums")
    h.add_argument("--host", required=True)
    h.add_argument("--k", type=int, required=True)
    h.add_argument("--colouring")
    h.add_argument("--patterns", action="store_true")
    common(h)
    h.set_defaults(func=cmd_h2k)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "experiment" and args.name != "supersaturation" and not args.host:
        parser.error(f"experiment {args.name} needs --host")
    started = time.monotonic()
    try:
        code = args.func(args)
    except (GraphError, CapabilityError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    sys.stderr.write(f"elapsed: {time.monotonic() - started:.2f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
