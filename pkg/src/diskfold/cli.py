"""Command line front end.

Exit codes: 0 on success, 1 for input errors (files, schema, topology),
2 for numerical failures (no convergence, inadmissible labels, layout
of a non-flat label).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import presets, problem_io
from .complexes import DiskTopologyError
from .conformal import AngleSystem, InadmissibleLabelError, StructureError
from .layout import (
    LayoutError,
    layout_augmented,
    normalize_to_unit_disk,
    realize_mpoints,
)
from .minkowski import InfinitesimalMobius
from .rigidity import constraint_matrix, mobius_orbit_check, numerical_rank
from .solver import SolverError, curvature_flow, default_start, newton_flat
from .svg import render_svg

INPUT_ERROR = 1
NUMERICAL_ERROR = 2

_INPUT_EXCEPTIONS = (
    problem_io.ProblemFormatError,
    DiskTopologyError,
    StructureError,
    OSError,
)
_NUMERICAL_EXCEPTIONS = (SolverError, LayoutError, InadmissibleLabelError, ValueError)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; keep 2 for numerical failures
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(INPUT_ERROR)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _load(path: str) -> problem_io.Problem:
    with open(path) as fh:
        return problem_io.parse_problem(fh)


def _solved_label(prob, args) -> np.ndarray:
    """f_init when it is already flat, otherwise a fresh Newton solve."""
    sys_ = AngleSystem(prob.aug, prob.cs)
    if prob.f_init is not None:
        if float(np.max(np.abs(sys_.curvature(prob.f_init)))) <= 1e-8:
            return prob.f_init
    res = newton_flat(
        prob.aug,
        prob.cs,
        prob.f_init,
        tol=getattr(args, "tol", 1e-10),
        max_iter=getattr(args, "max_iter", 100),
        svd_cutoff=getattr(args, "svd_cutoff", 1e-10),
    )
    if not res.converged:
        raise SolverError(f"newton did not converge: {res.status}, residual {res.residual!r}")
    return res.f


def _cmd_validate(args) -> int:
    prob = _load(args.problem)
    disk = prob.disk
    info = {
        "vertices": len(disk.vertices),
        "edges": len(disk.edges),
        "faces": len(disk.faces),
        "boundary_vertices": len(disk.boundary_cycle),
        "interior_vertices": len(disk.interior_vertices),
        "apex": prob.aug.apex,
    }
    _write(json.dumps(info, indent=2), args.out)
    return 0


def _cmd_preset(args) -> int:
    data = presets.preset(args.name, n_rings=args.rings, scenario=args.scenario)
    _write(problem_io.canonical_json(data), args.out)
    return 0


def _cmd_curvature(args) -> int:
    prob = _load(args.problem)
    f = prob.f_init if prob.f_init is not None else default_start(prob.aug, prob.cs)
    K = AngleSystem(prob.aug, prob.cs).curvature(f)
    out = {
        "curvature": problem_io.label_to_json(prob.aug, K),
        "max_abs": float(np.max(np.abs(K))),
        "sum": float(np.sum(K)),
    }
    _write(problem_io.canonical_json(out), args.out)
    return 0


def _cmd_solve(args) -> int:
    prob = _load(args.problem)
    if args.method == "newton":
        res = newton_flat(
            prob.aug,
            prob.cs,
            prob.f_init,
            tol=args.tol,
            max_iter=args.max_iter,
            svd_cutoff=args.svd_cutoff,
        )
        out = {
            "method": "newton",
            "converged": res.converged,
            "status": res.status,
            "iterations": res.iterations,
            "residual": res.residual,
            "f": problem_io.label_to_json(prob.aug, res.f),
        }
        _write(problem_io.canonical_json(out), args.out)
        return 0 if res.converged else NUMERICAL_ERROR
    f0 = prob.f_init if prob.f_init is not None else default_start(prob.aug, prob.cs)
    res = curvature_flow(prob.aug, prob.cs, f0, args.time, args.dt)
    out = {
        "method": "flow",
        "time": float(res.times[-1]),
        "dt": args.dt,
        "initial_residual": float(res.residuals[0]),
        "final_residual": res.final_residual,
        "f": problem_io.label_to_json(prob.aug, res.f),
    }
    _write(problem_io.canonical_json(out), args.out)
    return 0


def _realized(prob, args):
    f = _solved_label(prob, args)
    lay = layout_augmented(prob.aug, prob.cs, f, traversal=args.traversal)
    if args.normalize:
        norm = normalize_to_unit_disk(prob.aug, prob.cs, f, lay)
        return norm.label, norm.layout, norm.mpoints
    return f, lay, realize_mpoints(prob.aug, prob.cs, f, lay)


def _cmd_layout(args) -> int:
    prob = _load(args.problem)
    f, lay, mpoints = _realized(prob, args)
    out = {
        "positions": {
            ("hat" if v == prob.aug.apex else str(v)): [float(p[0]), float(p[1])]
            for v, p in lay.positions.items()
        },
        "mpoints": {
            ("hat" if v == prob.aug.apex else str(v)): [float(x) for x in mp.xi]
            for v, mp in mpoints.items()
        },
        "f": problem_io.label_to_json(prob.aug, f),
        "consistency_residual": lay.consistency_residual,
        "traversal": lay.traversal,
    }
    _write(problem_io.canonical_json(out), args.out)
    return 0


def _cmd_render(args) -> int:
    prob = _load(args.problem)
    f, lay, _ = _realized(prob, args)
    _write(render_svg(prob.aug, prob.cs, f, lay, size=args.size), args.out)
    return 0


def _cmd_rank(args) -> int:
    prob = _load(args.problem)
    f = _solved_label(prob, args)
    sys_ = AngleSystem(prob.aug, prob.cs)
    if args.jacobian:
        if args.perturb:
            rng = np.random.default_rng(args.seed)
            for _ in range(100):
                cand = f + rng.uniform(-args.perturb, args.perturb, len(f))
                if sys_.admissible(cand):
                    f = cand
                    break
            else:
                raise SolverError("could not find an admissible perturbed label")
        m = sys_.jacobian(f)
        kind = "curvature_jacobian"
    else:
        lay = layout_augmented(prob.aug, prob.cs, f)
        mpoints = realize_mpoints(prob.aug, prob.cs, f, lay)
        m = constraint_matrix(prob.aug, mpoints)
        kind = "constraint_matrix"
    rank, spectrum = numerical_rank(m, cutoff=args.svd_cutoff)
    out = {
        "matrix": kind,
        "shape": list(m.shape),
        "cutoff": args.svd_cutoff,
        "rank": rank,
        "singular_values": [float(s) for s in spectrum],
    }
    _write(problem_io.canonical_json(out), args.out)
    return 0


def _cmd_mobius_check(args) -> int:
    prob = _load(args.problem)
    f = _solved_label(prob, args)
    names = ("a", "b", "c", "d", "t", "r")
    reports = []
    for name in names:
        gen = InfinitesimalMobius(**{name: 1.0})
        for eps in args.eps:
            rep = mobius_orbit_check(prob.aug, prob.cs, f, gen, eps)
            reports.append(
                {
                    "generator": name,
                    "eps": eps,
                    "max_abs_curvature": rep.max_abs_curvature,
                    "curvature_bound": 100.0 * eps * eps,
                    "max_variation_dev": rep.max_variation_dev,
                    "variation_bound": 10.0 * eps,
                    "ok": bool(
                        rep.max_abs_curvature <= 100.0 * eps * eps
                        and rep.max_variation_dev <= 10.0 * eps
                    ),
                }
            )
    _write(problem_io.canonical_json({"checks": reports}), args.out)
    return 0 if all(r["ok"] for r in reports) else NUMERICAL_ERROR


def _build_parser() -> _Parser:
    p = _Parser(prog="diskfold", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        q = sub.add_parser(name, **kw)
        q.set_defaults(fn=fn)
        return q

    q = add("validate", _cmd_validate, help="check a problem file")
    q.add_argument("problem")
    q.add_argument("--out")

    q = add("preset", _cmd_preset, help="emit a built-in problem")
    q.add_argument("name", choices=presets.PRESET_NAMES)
    q.add_argument("--rings", type=int, default=2, help="rings for ring_lattice")
    q.add_argument("--scenario", choices=presets.SCENARIOS, default="tangent")
    q.add_argument("--out")

    q = add("curvature", _cmd_curvature, help="curvature of f_init (or the default start)")
    q.add_argument("problem")
    q.add_argument("--out")

    q = add("solve", _cmd_solve, help="find a flat label")
    q.add_argument("problem")
    q.add_argument("--method", choices=("newton", "flow"), default="newton")
    q.add_argument("--tol", type=float, default=1e-10)
    q.add_argument("--max-iter", type=int, default=100)
    q.add_argument("--svd-cutoff", type=float, default=1e-10)
    q.add_argument("--time", type=float, default=50.0, help="flow horizon")
    q.add_argument("--dt", type=float, default=0.01, help="flow step")
    q.add_argument("--out")

    for name, fn, hlp in (
        ("layout", _cmd_layout, "develop a flat label into the plane"),
        ("render", _cmd_render, "draw the layout as SVG"),
    ):
        q = add(name, fn, help=hlp)
        q.add_argument("problem")
        q.add_argument("--traversal", choices=("bfs", "dfs"), default="bfs")
        q.add_argument("--normalize", action="store_true", help="apex to the unit circle")
        q.add_argument("--tol", type=float, default=1e-10)
        q.add_argument("--max-iter", type=int, default=100)
        q.add_argument("--svd-cutoff", type=float, default=1e-10)
        if name == "render":
            q.add_argument("--size", type=int, default=640)
        q.add_argument("--out")

    q = add("rank", _cmd_rank, help="rank experiment at a solved label")
    q.add_argument("problem")
    q.add_argument("--jacobian", action="store_true", help="curvature Jacobian instead")
    q.add_argument("--perturb", type=float, default=0.0, help="move off the flat label")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--tol", type=float, default=1e-10)
    q.add_argument("--max-iter", type=int, default=100)
    q.add_argument("--svd-cutoff", type=float, default=1e-10)
    q.add_argument("--out")

    q = add("mobius-check", _cmd_mobius_check, help="orbit check for the six generators")
    q.add_argument("problem")
    q.add_argument("--eps", type=float, nargs="+", default=[1e-3, 1e-4])
    q.add_argument("--tol", type=float, default=1e-10)
    q.add_argument("--max-iter", type=int, default=100)
    q.add_argument("--svd-cutoff", type=float, default=1e-10)
    q.add_argument("--out")

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except _INPUT_EXCEPTIONS as exc:
        print(f"diskfold: input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except _NUMERICAL_EXCEPTIONS as exc:
        print(f"diskfold: numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
