"""Command-line interface.

Subcommands: gen, reduce {fglss,normalize,p2l,l2sc,l2hvc}, solve
{maxpar,minlab,sc-cost,hvc-cost}, approx, amplify, check, pipeline,
report.  Exit codes: 0 success, 1 property violation, 2 usage or
structural error, 3 state budget exhausted.  All randomness derives from
--seed; the RFORGE_CAP environment variable overrides the default state
budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import checks, generate, serialize
from .amplify import amplify, build_expander, choose_rho, degree_report
from .approx import two_factor_cover
from .core import (
    BudgetExhaustedError,
    ConstraintGraph,
    HvcInstance,
    LabelCoverInstance,
    P2cspInstance,
    RforgeError,
    SetCoverInstance,
    StructuralError,
    normalize_self_loops,
)
from .fglss import build_fglss, embed_proof
from .reductions import (
    ORIENT_CORRECTED,
    ORIENT_VERBATIM,
    labelcover_to_hvc,
    labelcover_to_setcover,
    p2csp_to_labelcover,
)
from .solve import (
    min_cover,
    min_vertex_cover,
    solve_cost_hvc,
    solve_cost_setcover,
    solve_maxpar,
    solve_minlab,
)
from .verifier import accept_prob


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text}") from exc


def _fmt_value(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator} (~{float(value):.6f})"


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def _cmd_gen(args) -> int:
    seed = args.seed
    if args.kind == "csp":
        inst = generate.generate_csp(
            seed, n_vertices=args.vertices, alphabet_size=args.alphabet, density=args.density
        )
        serialize.save(inst, args.out)
    elif args.kind == "labelcover":
        inst = generate.generate_labelcover(
            seed, n_vertices=args.vertices, alphabet_size=args.alphabet, density=args.density
        )
        serialize.save(inst, args.out)
    elif args.kind == "setcover":
        inst = generate.generate_setcover(seed, n_elements=args.elements, n_sets=args.sets)
        serialize.save(inst, args.out)
    elif args.kind == "hypergraph":
        inst = generate.generate_hypergraph(
            seed, n_vertices=args.vertices, n_edges=args.edges, max_edge_size=args.max_edge_size
        )
        serialize.save(inst, args.out)
    elif args.kind == "verifier":
        v, pi_start, pi_goal = generate.generate_verifier(
            seed, n_vertices=args.vertices, alphabet_size=args.alphabet, density=args.density
        )
        serialize.save(v, args.out, pi_start=pi_start, pi_goal=pi_goal)
    else:
        raise StructuralError(f"unknown kind {args.kind!r}")
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------


def _cmd_reduce(args) -> int:
    if args.step == "fglss":
        v, pi_start, pi_goal = serialize.load_verifier(getattr(args, "in"))
        if pi_start is None or pi_goal is None:
            raise StructuralError("verifier file carries no start/goal proofs")
        graph = build_fglss(v)
        inst = P2cspInstance(
            graph=graph, start=embed_proof(v, pi_start), goal=embed_proof(v, pi_goal)
        )
        serialize.save(inst, args.out)
    elif args.step == "normalize":
        obj = serialize.load(getattr(args, "in"))
        if isinstance(obj, ConstraintGraph):
            serialize.save(normalize_self_loops(obj), args.out)
        elif isinstance(obj, P2cspInstance):
            serialize.save(
                P2cspInstance(normalize_self_loops(obj.graph), obj.start, obj.goal), args.out
            )
        else:
            raise StructuralError("normalize expects a constraint graph or assignment instance")
    elif args.step == "p2l":
        obj = serialize.load(getattr(args, "in"))
        if not isinstance(obj, P2cspInstance):
            raise StructuralError("p2l expects a partial-assignment instance")
        if obj.graph.has_self_loops():
            raise StructuralError("p2l needs a loop-free graph; run reduce normalize first")
        serialize.save(p2csp_to_labelcover(obj.graph, obj.start, obj.goal), args.out)
    elif args.step == "l2sc":
        obj = serialize.load(getattr(args, "in"))
        if not isinstance(obj, LabelCoverInstance):
            raise StructuralError("l2sc expects a label-cover instance")
        red = labelcover_to_setcover(obj.graph, obj.start, obj.goal, orientation=args.orientation)
        serialize.save(SetCoverInstance(red.system, red.start, red.goal), args.out)
    elif args.step == "l2hvc":
        obj = serialize.load(getattr(args, "in"))
        if not isinstance(obj, LabelCoverInstance):
            raise StructuralError("l2hvc expects a label-cover instance")
        red = labelcover_to_hvc(obj.graph, obj.start, obj.goal, orientation=args.orientation)
        serialize.save(HvcInstance(red.hypergraph, red.start, red.goal), args.out)
    else:
        raise StructuralError(f"unknown reduction step {args.step!r}")
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# solve / approx
# ---------------------------------------------------------------------------


def _cmd_solve(args) -> int:
    obj = serialize.load(getattr(args, "in"))
    if args.problem == "maxpar":
        if not isinstance(obj, P2cspInstance):
            raise StructuralError("maxpar expects a partial-assignment instance")
        res = solve_maxpar(obj.graph, obj.start, obj.goal, cap=args.cap)
    elif args.problem == "minlab":
        if not isinstance(obj, LabelCoverInstance):
            raise StructuralError("minlab expects a label-cover instance")
        res = solve_minlab(obj.graph, obj.start, obj.goal, cap=args.cap)
    elif args.problem == "sc-cost":
        if not isinstance(obj, SetCoverInstance):
            raise StructuralError("sc-cost expects a set-cover instance")
        res = solve_cost_setcover(obj.system, obj.start, obj.goal, cap=args.cap)
    elif args.problem == "hvc-cost":
        if not isinstance(obj, HvcInstance):
            raise StructuralError("hvc-cost expects a vertex-cover instance")
        res = solve_cost_hvc(obj.hypergraph, obj.start, obj.goal, cap=args.cap)
    else:
        raise StructuralError(f"unknown problem {args.problem!r}")
    if args.out:
        serialize.save(res, args.out)
        print(f"wrote {args.out}")
    print(f"value = {_fmt_value(res.value)}; states explored = {res.states_explored}")
    return 0


def _cmd_approx(args) -> int:
    obj = serialize.load(getattr(args, "in"))
    if isinstance(obj, SetCoverInstance):
        seq = two_factor_cover(obj.system, obj.start, obj.goal)
        denom = min_cover(obj.system) + 1
    elif isinstance(obj, HvcInstance):
        seq = two_factor_cover(obj.hypergraph, obj.start, obj.goal)
        denom = min_vertex_cover(obj.hypergraph) + 1
    else:
        raise StructuralError("approx expects a set-cover or vertex-cover instance")
    peak = max(len(c) for c in seq.states)
    if args.out:
        serialize.save(seq, args.out)
        print(f"wrote {args.out}")
    print(f"peak = {peak}; cost = {_fmt_value(Fraction(peak, denom))}")
    return 0


# ---------------------------------------------------------------------------
# amplify
# ---------------------------------------------------------------------------


def _resolve_rho(args) -> int:
    if args.rho is not None:
        return args.rho
    if args.eps is None or args.delta is None:
        raise StructuralError("give either --rho or both --eps and --delta")
    return choose_rho(args.eps, args.delta)


def _cmd_amplify(args) -> int:
    v, pi_start, pi_goal = serialize.load_verifier(getattr(args, "in"))
    rho = _resolve_rho(args)
    x = build_expander(v.n_entries, args.expander_d, args.target_ratio, args.seed)
    amped = amplify(v, x, rho)
    serialize.save(amped, args.out, pi_start=pi_start, pi_goal=pi_goal)
    if args.expander_out:
        serialize.save(x, args.expander_out)
        print(f"wrote {args.expander_out}")
    rep = degree_report(amped)
    print(
        f"wrote {args.out} (rho={rho}, ratio={x.ratio:.6f}, "
        f"r={amped.r}, q={amped.q}, max degree={rep.max_degree})"
    )
    return 0


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def _cmd_check(args) -> int:
    report = checks.run_suite(args.suite, trials=args.trials, seed=args.seed)
    print(report.summary())
    if report.counterexample:
        print(f"counterexample: {report.counterexample}")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# pipeline / report
# ---------------------------------------------------------------------------


def _solve_or_note(solver, *params, cap):
    try:
        res = solver(*params, cap=cap)
        return _fmt_value(res.value)
    except BudgetExhaustedError:
        return "budget-exhausted"


def _pipeline_rows(out_dir: Path, cap: int | None) -> list[tuple[str, str, str]]:
    """Recompute the report rows from the staged files (deterministic)."""
    rows: list[tuple[str, str, str]] = []

    def stage(path: Path):
        return path if path.exists() else None

    ver_path = stage(out_dir / "00_verifier.json")
    if ver_path:
        v, pi_start, pi_goal = serialize.load_verifier(ver_path)
        rep = degree_report(v)
        rows.append(("verifier", "r/q/ell", f"{v.r}/{v.q}/{v.ell}"))
        rows.append(("verifier", "max-degree", str(rep.max_degree)))
        rows.append(("verifier", "regular", str(rep.regular)))
        if pi_start is not None:
            rows.append(("verifier", "accept(start)", str(accept_prob(v, pi_start))))
        if pi_goal is not None:
            rows.append(("verifier", "accept(goal)", str(accept_prob(v, pi_goal))))
    amp_path = stage(out_dir / "01_amplified_verifier.json")
    if amp_path:
        v, pi_start, pi_goal = serialize.load_verifier(amp_path)
        rep = degree_report(v)
        rows.append(("amplified", "r/q/ell", f"{v.r}/{v.q}/{v.ell}"))
        rows.append(("amplified", "max-degree", str(rep.max_degree)))
        if pi_start is not None:
            rows.append(("amplified", "accept(start)", str(accept_prob(v, pi_start))))
        if pi_goal is not None:
            rows.append(("amplified", "accept(goal)", str(accept_prob(v, pi_goal))))
    fglss_path = stage(out_dir / "02_fglss.json")
    if fglss_path:
        inst = serialize.load(fglss_path)
        g = inst.graph
        rows.append(("fglss", "vertices/edges/alphabet", f"{g.n_vertices}/{len(g.edges)}/{g.n_symbols}"))
        rows.append(
            ("fglss", "maxpar", _solve_or_note(solve_maxpar, g, inst.start, inst.goal, cap=cap))
        )
    norm_path = stage(out_dir / "03_normalized.json")
    if norm_path:
        inst = serialize.load(norm_path)
        g = inst.graph
        adm = sum(len(a) for a in g.admissible) if g.admissible else g.n_vertices * g.n_symbols
        rows.append(("normalized", "vertices/edges/admissible", f"{g.n_vertices}/{len(g.edges)}/{adm}"))
    lc_path = stage(out_dir / "04_labelcover.json")
    if lc_path:
        inst = serialize.load(lc_path)
        rows.append(
            ("labelcover", "minlab", _solve_or_note(solve_minlab, inst.graph, inst.start, inst.goal, cap=cap))
        )
    sc_path = stage(out_dir / "05_setcover.json")
    if sc_path:
        inst = serialize.load(sc_path)
        rows.append(("setcover", "universe/sets", f"{inst.system.n_elements}/{inst.system.n_sets}"))
        rows.append(("setcover", "opt", str(min_cover(inst.system))))
        rows.append(
            (
                "setcover",
                "cost",
                _solve_or_note(solve_cost_setcover, inst.system, inst.start, inst.goal, cap=cap),
            )
        )
    hvc_path = stage(out_dir / "06_hvc.json")
    if hvc_path:
        inst = serialize.load(hvc_path)
        h = inst.hypergraph
        rows.append(("hvc", "vertices/hyperedges/uniformity", f"{h.n_vertices}/{len(h.hyperedges)}/{h.uniformity}"))
        rows.append(("hvc", "beta", str(min_vertex_cover(h))))
        rows.append(
            ("hvc", "cost", _solve_or_note(solve_cost_hvc, h, inst.start, inst.goal, cap=cap))
        )
    return rows


def _render_report(rows, fmt: str) -> str:
    if fmt == "json":
        payload = [{"stage": s, "metric": m, "value": v} for s, m, v in rows]
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if fmt == "csv":
        lines = ["stage,metric,value"]
        lines += [f"{s},{m},{v}" for s, m, v in rows]
        return "\n".join(lines) + "\n"
    lines = ["| stage | metric | value |", "| --- | --- | --- |"]
    lines += [f"| {s} | {m} | {v} |" for s, m, v in rows]
    return "\n".join(lines) + "\n"


class _StageError(RforgeError):
    """Wraps a stage failure so the report names the failing stage."""

    def __init__(self, stage: str, cause: RforgeError):
        super().__init__(f"[stage {stage}] {cause}")
        self.exit_code = cause.exit_code


def _stage(name: str, fn):
    try:
        return fn()
    except RforgeError as exc:
        raise _StageError(name, exc) from exc


def _cmd_pipeline(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    v, pi_start, pi_goal = serialize.load_verifier(getattr(args, "in"))
    if pi_start is None or pi_goal is None:
        raise StructuralError("verifier file carries no start/goal proofs")
    if v.r > args.max_r or v.q > args.max_q:
        raise StructuralError(
            f"verifier too large for the pipeline (r={v.r} q={v.q}, ceilings r<={args.max_r} q<={args.max_q})"
        )
    serialize.save(v, out_dir / "00_verifier.json", pi_start=pi_start, pi_goal=pi_goal)
    work = v
    if not args.no_amplify:
        rho = _resolve_rho(args)
        x = _stage(
            "amplify",
            lambda: build_expander(v.n_entries, args.expander_d, args.target_ratio, args.seed),
        )
        serialize.save(x, out_dir / "01_expander.json")
        work = _stage("amplify", lambda: amplify(v, x, rho))
        serialize.save(work, out_dir / "01_amplified_verifier.json", pi_start=pi_start, pi_goal=pi_goal)
    graph = _stage("fglss", lambda: build_fglss(work))
    fglss_inst = P2cspInstance(
        graph=graph, start=embed_proof(work, pi_start), goal=embed_proof(work, pi_goal)
    )
    serialize.save(fglss_inst, out_dir / "02_fglss.json")
    normalized = _stage("normalize", lambda: normalize_self_loops(graph))
    norm_inst = P2cspInstance(normalized, fglss_inst.start, fglss_inst.goal)
    serialize.save(norm_inst, out_dir / "03_normalized.json")
    lifted = _stage(
        "p2l", lambda: p2csp_to_labelcover(normalized, norm_inst.start, norm_inst.goal)
    )
    serialize.save(lifted, out_dir / "04_labelcover.json")
    if normalized.n_symbols <= args.max_gadget_alphabet:
        red_sc = _stage(
            "l2sc", lambda: labelcover_to_setcover(normalized, lifted.start, lifted.goal)
        )
        serialize.save(SetCoverInstance(red_sc.system, red_sc.start, red_sc.goal), out_dir / "05_setcover.json")
        red_hvc = _stage(
            "l2hvc", lambda: labelcover_to_hvc(normalized, lifted.start, lifted.goal)
        )
        serialize.save(HvcInstance(red_hvc.hypergraph, red_hvc.start, red_hvc.goal), out_dir / "06_hvc.json")
    else:
        print(
            f"skipping cover stages: alphabet {normalized.n_symbols} exceeds "
            f"--max-gadget-alphabet {args.max_gadget_alphabet}"
        )
    rows = _pipeline_rows(out_dir, args.cap)
    report = _render_report(rows, args.format)
    report_path = out_dir / f"report.{args.format}"
    report_path.write_text(report)
    print(report, end="")
    print(f"wrote {report_path}")
    return 0


def _cmd_report(args) -> int:
    rows = _pipeline_rows(Path(args.dir), args.cap)
    sys.stdout.write(_render_report(rows, args.format))
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rforge",
        description="Reconfiguration instances, exact bottleneck solvers, and gap-preserving reductions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded instance file")
    p.add_argument("--kind", required=True, choices=["csp", "labelcover", "setcover", "hypergraph", "verifier"])
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vertices", type=int, default=3)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--density", type=float, default=0.8)
    p.add_argument("--elements", type=int, default=5)
    p.add_argument("--sets", type=int, default=5)
    p.add_argument("--edges", type=int, default=4)
    p.add_argument("--max-edge-size", type=int, default=3)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("reduce", help="run one reduction step")
    p.add_argument("step", choices=["fglss", "normalize", "p2l", "l2sc", "l2hvc"])
    p.add_argument("--in", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--orientation", choices=[ORIENT_CORRECTED, ORIENT_VERBATIM], default=ORIENT_CORRECTED)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("solve", help="solve an instance exactly")
    p.add_argument("problem", choices=["maxpar", "minlab", "sc-cost", "hvc-cost"])
    p.add_argument("--in", required=True)
    p.add_argument("--out")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("approx", help="2-factor cover reconfiguration")
    p.add_argument("--in", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("amplify", help="expander-walk acceptance amplification")
    p.add_argument("--in", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--rho", type=int, default=None)
    p.add_argument("--eps", type=_fraction, default=None)
    p.add_argument("--delta", type=_fraction, default=None)
    p.add_argument("--expander-d", type=int, default=4)
    p.add_argument("--target-ratio", type=float, default=0.9)
    p.add_argument("--expander-out")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_amplify)

    p = sub.add_parser("check", help="run a property-check suite")
    p.add_argument("--suite", required=True, choices=sorted(checks.SUITES))
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("pipeline", help="stage every reduction from a verifier file")
    p.add_argument("--in", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--no-amplify", action="store_true")
    p.add_argument("--rho", type=int, default=2)
    p.add_argument("--eps", type=_fraction, default=None)
    p.add_argument("--delta", type=_fraction, default=None)
    p.add_argument("--expander-d", type=int, default=4)
    p.add_argument("--target-ratio", type=float, default=0.9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--max-r", type=int, default=4)
    p.add_argument("--max-q", type=int, default=3)
    p.add_argument("--max-gadget-alphabet", type=int, default=12)
    p.add_argument("--format", choices=["md", "csv", "json"], default="md")
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("report", help="regenerate a pipeline report from its directory")
    p.add_argument("--dir", required=True)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--format", choices=["md", "csv", "json"], default="md")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except RforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
