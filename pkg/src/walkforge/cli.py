"""Command-line front end.

Exit codes: 0 success, 1 comparison outside tolerance, 2 usage error.
``WALKFORGE_TOL`` overrides the default comparison tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, replace

from .builders import CYCLE_VARIANTS, BuilderOptions, build_shift
from .circuit_ir import gate_stats, optimize, to_qasm, to_text, x_count
from .graphs import Complete, Cycle, Hypercube, Line, Topology
from .walk_engine import (
    DISTRIBUTION_KINDS,
    CoinSpec,
    Distribution,
    WalkConfig,
    cycle_length,
    default_coin,
    sample_counts,
    walk_history,
)

DEFAULT_TOL = 1e-10
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
_VARIANT_ALIASES = {"j_reduced": "j_reduced_lra", "nna": "j_reduced_nna", "lra": "j_reduced_lra"}


class UsageError(Exception):
    pass


# ------------------------------------------------------------ argument groups


def _topology_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("topology")
    g.add_argument("--topology", required=True, choices=["line", "cycle", "hypercube", "complete"])
    g.add_argument("--nodes", type=int, help="vertex count (line, cycle or complete)")
    g.add_argument("--k", type=int, help="cycle size")
    g.add_argument("--dim", type=int, help="hypercube dimension")
    g.add_argument("--loops", type=int, default=0, help="hypercube self-loops per vertex")
    g.add_argument("--m", type=int, help="complete graph on 2**m vertices")
    b = p.add_argument_group("construction")
    b.add_argument("--model", choices=["cnot", "swap"], default="cnot", help="complete-graph shift model")
    b.add_argument("--variant", choices=list(CYCLE_VARIANTS) + sorted(_VARIANT_ALIASES))
    b.add_argument("--ordering", choices=["gray", "binary"], default="gray", help="hypercube gate ordering")


def _walk_args(p: argparse.ArgumentParser, steps_default: int = 0) -> None:
    g = p.add_argument_group("walk")
    g.add_argument("--coin", choices=["hadamard", "grover", "identity"], help="default: grover on hypercubes, else hadamard")
    g.add_argument("--steps", type=int, default=steps_default)
    g.add_argument("--c0", type=int, default=0, help="initial coin value")
    g.add_argument("--v0", type=int, default=0, help="initial vertex (signed label on a line)")
    g.add_argument("--register", choices=DISTRIBUTION_KINDS, default="position", help="what the distribution is over")


def _topology(ns) -> Topology:
    kind = ns.topology
    if kind == "line":
        if ns.nodes is None:
            raise UsageError("--topology line needs --nodes")
        return Line(ns.nodes)
    if kind == "cycle":
        k = ns.k if ns.k is not None else ns.nodes
        if k is None:
            raise UsageError("--topology cycle needs --k")
        return Cycle(k)
    if kind == "hypercube":
        if ns.dim is None:
            raise UsageError("--topology hypercube needs --dim")
        return Hypercube(ns.dim, ns.loops)
    if ns.m is not None:
        return Complete(1 << ns.m)
    if ns.nodes is None:
        raise UsageError("--topology complete needs --m or --nodes")
    return Complete(ns.nodes)


def _options(ns) -> BuilderOptions:
    variant = _VARIANT_ALIASES.get(ns.variant, ns.variant)
    return BuilderOptions(cycle_variant=variant, hypercube_ordering=ns.ordering, complete_model=ns.model)


def _config(ns, t: Topology | None = None, options: BuilderOptions | None = None) -> WalkConfig:
    t = t or _topology(ns)
    coin = CoinSpec(ns.coin, t.coin_qubits) if ns.coin else default_coin(t)
    return WalkConfig(t, coin, ns.steps, ns.c0, ns.v0, options or _options(ns))


def _describe(t: Topology) -> dict:
    d = {"kind": type(t).__name__.lower()}
    d.update(asdict(t))
    return d


def _tolerance(ns) -> float:
    if ns.tol is not None:
        return ns.tol
    raw = os.environ.get("WALKFORGE_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"WALKFORGE_TOL must be a number, got {raw!r}") from None


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------ commands


def cmd_build(ns) -> int:
    t = _topology(ns)
    circuit = build_shift(t, _options(ns))
    if ns.optimize:
        circuit = optimize(circuit)
    text = to_qasm(circuit) if ns.format == "qasm" else to_text(circuit)
    _emit(text, ns.output_file)
    return EXIT_OK


def _records(history: list[Distribution]) -> tuple[list, list[list[float]]]:
    labels = list(history[0].labels)
    return labels, [[float(p) for p in d.probs] for d in history]


def cmd_walk(ns) -> int:
    cfg = _config(ns)
    history = walk_history(cfg, ns.source, ns.register)
    labels, probs = _records(history)
    if ns.output == "csv":
        if ns.shots is not None:
            raise UsageError("--shots is only reported in JSON output")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "label", "prob"])
        for step, row in enumerate(probs):
            for lab, p in zip(labels, row):
                w.writerow([step, lab, repr(p)])
        _emit(buf.getvalue(), ns.output_file)
        return EXIT_OK
    doc = {
        "topology": _describe(cfg.topology),
        "coin": asdict(cfg.coin),
        "steps": cfg.steps,
        "labels": labels,
        "probs_per_step": probs,
    }
    if ns.shots is not None:
        # sampled from the exact final distribution; post-processing only
        doc["sampled"] = {
            "shots": ns.shots,
            "seed": ns.seed,
            "counts": {str(k): v for k, v in sample_counts(history[-1], ns.shots, ns.seed).items()},
        }
    _emit(json.dumps(doc, indent=2) + "\n", ns.output_file)
    return EXIT_OK


def _parse_against(text: str) -> dict[str, str]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in item:
            raise UsageError(f"--against expects key=value pairs, got {item!r}")
        key, value = item.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


_AGAINST_INT = {"nodes", "k", "dim", "loops", "m", "steps", "c0", "v0"}
_AGAINST_STR = {"topology", "model", "variant", "ordering", "coin"}


def _reference_namespace(ns) -> argparse.Namespace:
    ref = argparse.Namespace(**vars(ns))
    for key, value in _parse_against(ns.against or "").items():
        if key in _AGAINST_INT:
            try:
                setattr(ref, key, int(value))
            except ValueError:
                raise UsageError(f"--against {key} needs an integer, got {value!r}") from None
        elif key in _AGAINST_STR:
            setattr(ref, key, value)
        else:
            raise UsageError(f"--against does not understand {key!r}")
    return ref


def _l1_union(p: Distribution, q: Distribution) -> float:
    """l1 over the union of labels, so mismatched registers still compare."""
    pd, qd = p.as_dict(), q.as_dict()
    return 0.5 * sum(abs(pd.get(lab, 0.0) - qd.get(lab, 0.0)) for lab in set(pd) | set(qd))


def cmd_compare(ns) -> int:
    tol = _tolerance(ns)
    cfg = _config(ns)
    ref_cfg = _config(_reference_namespace(ns))
    if ref_cfg.steps != cfg.steps:
        ref_cfg = ref_cfg.with_steps(cfg.steps)
    start = time.perf_counter()
    sim = walk_history(cfg, "circuit", ns.register)
    ref = walk_history(ref_cfg, ns.reference_source, ns.register)
    wall = time.perf_counter() - start
    l1 = [_l1_union(a, b) for a, b in zip(sim, ref)]
    passed = all(d <= tol for d in l1)
    report = {
        "config": {
            "topology": _describe(cfg.topology),
            "coin": asdict(cfg.coin),
            "steps": cfg.steps,
            "initial": {"coin": cfg.initial_coin, "position": cfg.initial_position},
            "options": asdict(cfg.options),
        },
        "reference": {
            "topology": _describe(ref_cfg.topology),
            "source": ns.reference_source,
            "options": asdict(ref_cfg.options),
        },
        "l1_per_step": l1,
        "tol": tol,
        "passed": passed,
        "gate_stats": gate_stats(build_shift(cfg.topology, cfg.options)).as_dict(),
        "wall_time_s": wall,
        "distributions": {
            "circuit": [[list(d.labels), d.probs.tolist()] for d in sim],
            "reference": [[list(d.labels), d.probs.tolist()] for d in ref],
        },
    }
    if ns.output == "json":
        _emit(json.dumps(report, indent=2) + "\n", ns.output_file)
    else:
        lines = [f"step {t}: l1 = {d:.3e}" for t, d in enumerate(l1)]
        lines.append(f"{'PASS' if passed else 'FAIL'} (tol {tol:g})")
        _emit("\n".join(lines) + "\n", ns.output_file)
    return EXIT_OK if passed else EXIT_FAIL


def _stats_row(label: str, circuit) -> dict:
    s = gate_stats(circuit)
    return {"build": label, **s.as_dict(), "x_count": x_count(circuit)}


def cmd_stats(ns) -> int:
    t = _topology(ns)
    opts = _options(ns)
    circuit = build_shift(t, opts)
    rows = [_stats_row("before", circuit), _stats_row("after", optimize(circuit))]
    extra: dict = {}
    if isinstance(t, Hypercube):
        xs = {o: x_count(optimize(build_shift(t, replace(opts, hypercube_ordering=o)))) for o in ("gray", "binary")}
        extra = {"x_count_after": xs, "x_count_delta": xs["binary"] - xs["gray"]}
    elif isinstance(t, Complete):
        ce = {mdl: gate_stats(build_shift(t, replace(opts, complete_model=mdl))).cnot_equivalent for mdl in ("cnot", "swap")}
        extra = {"cnot_equivalent": ce}
    if ns.output == "json":
        _emit(json.dumps({"topology": _describe(t), "rows": rows, **extra}, indent=2) + "\n", ns.output_file)
        return EXIT_OK
    out = []
    for r in rows:
        kinds = " ".join(f"{k}={v}" for k, v in r["by_kind"].items())
        out.append(f"{r['build']:<7} total={r['total']} cnot_equivalent={r['cnot_equivalent']} x_count={r['x_count']} {kinds}")
    if "x_count_after" in extra:
        xs = extra["x_count_after"]
        out.append(f"x_count after optimization: gray={xs['gray']} binary={xs['binary']} delta={extra['x_count_delta']}")
    if "cnot_equivalent" in extra:
        ce = extra["cnot_equivalent"]
        out.append(f"cnot_equivalent: cnot={ce['cnot']} swap={ce['swap']}")
    _emit("\n".join(out) + "\n", ns.output_file)
    return EXIT_OK


def cmd_cycle_length(ns) -> int:
    cfg = _config(ns)
    if ns.t_max < 1:
        raise UsageError("--t-max must be >= 1")
    tol = ns.tol if ns.tol is not None else 1e-9
    t = cycle_length(cfg, ns.t_max, tol, ns.source)
    _emit(f"{t}\n" if t is not None else f"none within {ns.t_max}\n", ns.output_file)
    return EXIT_OK


# ------------------------------------------------------------ entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="walkforge", description="Quantum-walk shift circuits and simulations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit the shift-operator circuit")
    _topology_args(p)
    p.add_argument("--format", choices=["text", "qasm"], default="text")
    p.add_argument("--optimize", action="store_true", help="run the optimization pipeline first")
    p.add_argument("-o", "--output-file")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("walk", help="per-step walk distributions")
    _topology_args(p)
    _walk_args(p)
    p.add_argument("--source", choices=["circuit", "operator"], default="circuit")
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.add_argument("--shots", type=int, help="also sample the final distribution (JSON only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output-file")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("compare", help="circuit simulation against a reference, per-step l1")
    _topology_args(p)
    _walk_args(p, steps_default=3)
    p.add_argument("--against", help="reference overrides, e.g. 'variant=j_reduced_nna' or 'k=6'")
    p.add_argument("--reference-source", choices=["operator", "circuit"], default="operator")
    p.add_argument("--tol", type=float, help=f"l1 tolerance (default $WALKFORGE_TOL or {DEFAULT_TOL:g})")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.add_argument("-o", "--output-file")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("stats", help="gate counts before and after optimization")
    _topology_args(p)
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.add_argument("-o", "--output-file")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("cycle-length", help="smallest T with U^T = I")
    _topology_args(p)
    _walk_args(p)
    p.add_argument("--t-max", type=int, default=64)
    p.add_argument("--tol", type=float, help="default 1e-9")
    p.add_argument("--source", choices=["circuit", "operator"], default="operator")
    p.add_argument("-o", "--output-file")
    p.set_defaults(func=cmd_cycle_length)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return ns.func(ns)
    except (UsageError, ValueError) as exc:
        print(f"walkforge {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
