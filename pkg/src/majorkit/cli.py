"""Command-line front door for the majorization toolkit.

Reports go to stdout as JSON (floats at 17 significant digits), human
diagnostics to stderr.  Exit codes: 0 when the requested relation or
inequality holds (or the requested object was computed), 1 when input was
well-formed but the relation fails or the verdict is not conclusive, 2 on
input or usage errors.
"""

from __future__ import annotations

import json
import math

import click
import numpy as np

from . import expr
from . import majorization as mj
from . import spider as sp
from . import trees as tr
from .fileio import (
    dump_json,
    read_edge_list,
    read_measure,
    read_vector,
    write_matrix_csv,
)

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_ERROR = 2

_IN_FILE = click.Path(exists=True, dir_okay=False)


@click.group()
@click.option("--tol", default=mj.DEFAULT_TOL, show_default=True, help="Comparison tolerance.")
@click.option("--seed", default=0, show_default=True, help="Seed for randomized commands.")
@click.option("--json-indent", default=None, type=int, help="Pretty-print JSON with this indent.")
@click.pass_context
def main(ctx, tol, seed, json_indent):
    """Majorization orders, tree centers and K-spider barycenters."""
    ctx.obj = {"tol": tol, "seed": seed, "indent": json_indent}


def _emit(ctx, command, inputs, result, warnings, code):
    report = {
        "command": command,
        "inputs": inputs,
        "result": result,
        "warnings": list(warnings),
        "exit_code": code,
    }
    click.echo(dump_json(report, ctx.obj["indent"]))
    ctx.exit(code)


def _fail(ctx, command, exc):
    click.echo(
        dump_json({"command": command, "error": str(exc), "exit_code": EXIT_ERROR}, ctx.obj["indent"])
    )
    click.echo(f"error: {exc}", err=True)
    ctx.exit(EXIT_ERROR)


def _guard(ctx, command, fn):
    try:
        fn()
    except SystemExit:
        raise
    except (ValueError, OSError) as exc:
        _fail(ctx, command, exc)


def _num(value):
    # None for non-finite values so the JSON stays valid
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


@main.group()
def major():
    """Vector majorization orders and inequalities."""


@major.command("compare")
@click.argument("x_file", type=_IN_FILE)
@click.argument("y_file", type=_IN_FILE)
@click.option("--mode", type=click.Choice(["weak", "classic", "strong"]), default="weak", show_default=True)
@click.pass_context
def cmd_compare(ctx, x_file, y_file, mode):
    """Check whether vector x is majorized by vector y."""

    def run():
        x = read_vector(x_file)
        y = read_vector(y_file)
        checker = {
            "weak": mj.check_weak,
            "classic": mj.check_classical,
            "strong": mj.check_strong,
        }[mode]
        wanted = {"weak": "weak", "classic": "classical", "strong": "strong"}[mode]
        verdict = checker(x, y, ctx.obj["tol"])
        holds = verdict.relation == wanted
        result = {
            "relation": verdict.relation,
            "holds": holds,
            "slacks": list(verdict.slacks),
            "alpha": verdict.alpha,
            "total_x": verdict.total_x,
            "total_y": verdict.total_y,
        }
        if verdict.strong_lhs is not None:
            result["cross_lhs"] = list(verdict.strong_lhs)
            result["cross_rhs"] = list(verdict.strong_rhs)
        inputs = {"x": x, "y": y, "mode": mode, "tol": ctx.obj["tol"]}
        _emit(ctx, "major compare", inputs, result, [], EXIT_OK if holds else EXIT_FAILS)

    _guard(ctx, "major compare", run)


@major.command("hlp")
@click.argument("x_file", type=_IN_FILE)
@click.argument("y_file", type=_IN_FILE)
@click.option("--f", "f_expr", required=True, help="Convex function of t, e.g. 't^2'.")
@click.pass_context
def cmd_hlp(ctx, x_file, y_file, f_expr):
    """Ratio-weighted Hardy-Littlewood-Polya inequality check."""

    def run():
        x = read_vector(x_file)
        y = read_vector(y_file)
        f = expr.parse_scalar_function(f_expr)
        report = mj.hlp_generalized_check(x, y, f, ctx.obj["tol"])
        result = {
            "lhs": report.lhs,
            "rhs": report.rhs,
            "alpha": report.alpha,
            "slack": report.slack,
            "holds": report.holds,
            "precondition_ok": report.precondition_ok,
        }
        code = EXIT_OK if report.holds and report.precondition_ok else EXIT_FAILS
        inputs = {"x": x, "y": y, "f": f_expr, "tol": ctx.obj["tol"]}
        _emit(ctx, "major hlp", inputs, result, report.warnings, code)

    _guard(ctx, "major hlp", run)


@major.command("witness")
@click.argument("x_file", type=_IN_FILE)
@click.argument("y_file", type=_IN_FILE)
@click.option("--out", "out_csv", required=True, type=click.Path(dir_okay=False), help="Output CSV path.")
@click.pass_context
def cmd_witness(ctx, x_file, y_file, out_csv):
    """Doubly stochastic matrix A with x = A y, written as CSV."""

    def run():
        x = read_vector(x_file)
        y = read_vector(y_file)
        inputs = {"x": x, "y": y, "out": out_csv, "tol": ctx.obj["tol"]}
        verdict = mj.check_classical(x, y, ctx.obj["tol"])
        if verdict.relation != "classical":
            result = {"holds": False, "relation": verdict.relation}
            _emit(ctx, "major witness", inputs, result, ["x not majorized by y"], EXIT_FAILS)
        a = mj.doubly_stochastic_witness(x, y, ctx.obj["tol"])
        residual = float(np.max(np.abs(np.asarray(x) - a.entries @ np.asarray(y))))
        write_matrix_csv(a, out_csv)
        result = {
            "holds": True,
            "out": out_csv,
            "n": a.n,
            "max_residual": residual,
            "doubly_stochastic": mj.is_doubly_stochastic(a, ctx.obj["tol"]),
        }
        _emit(ctx, "major witness", inputs, result, [], EXIT_OK)

    _guard(ctx, "major witness", run)


@major.command("schur")
@click.option("--f", "f_expr", required=True, help="Symmetric function of x1..xN.")
@click.option("--dim", type=int, required=True)
@click.option("--lo", type=float, default=0.0, show_default=True)
@click.option("--hi", type=float, default=10.0, show_default=True)
@click.option("--samples", type=int, default=512, show_default=True)
@click.option("--fd-step", type=float, default=1e-5, show_default=True)
@click.option("--fd-tol", type=float, default=1e-6, show_default=True)
@click.pass_context
def cmd_schur(ctx, f_expr, dim, lo, hi, samples, fd_step, fd_tol):
    """Sampled Schur-Ostrowski classification of a symmetric function."""

    def run():
        f = expr.parse_symmetric_function(f_expr, dim)
        report = mj.schur_ostrowski_check(
            f, dim, (lo, hi), samples, ctx.obj["seed"], fd_step, fd_tol
        )
        result = {
            "verdict": report.verdict,
            "min_slack_convex": _num(report.min_slack_convex),
            "min_slack_concave": _num(report.min_slack_concave),
            "witness_point": list(report.witness_point) if report.witness_point else None,
            "witness_pair": list(report.witness_pair) if report.witness_pair else None,
            "skipped": report.skipped,
            "symmetric": report.symmetric,
        }
        conclusive = report.verdict in ("schur_convex", "schur_concave")
        inputs = {
            "f": f_expr, "dim": dim, "lo": lo, "hi": hi,
            "samples": samples, "seed": ctx.obj["seed"],
            "fd_step": fd_step, "fd_tol": fd_tol,
        }
        _emit(ctx, "major schur", inputs, result, [], EXIT_OK if conclusive else EXIT_FAILS)

    _guard(ctx, "major schur", run)


@main.group()
def tree():
    """Vertex majorization and facility location on trees."""


def _load_tree(edges_file):
    return tr.build_tree(read_edge_list(edges_file))


def _edge_relations(t, mode):
    return [
        {
            "u": t.labels[u],
            "v": t.labels[v],
            "relation": tr.vertex_relation(t, u, v, mode).relation,
        }
        for u, v in t.edges
    ]


@tree.command("center")
@click.argument("edges_file", type=_IN_FILE)
@click.option("--mode", type=click.Choice(["weak", "strong"]), default="weak", show_default=True)
@click.pass_context
def cmd_tree_center(ctx, edges_file, mode):
    """Majorization center of a tree."""

    def run():
        t = _load_tree(edges_file)
        res = tr.majorization_center(t, mode)
        result = {
            "center": [t.labels[i] for i in sorted(res.center)],
            "m_symmetric": res.m_symmetric,
            "pair": [t.labels[res.pair[0]], t.labels[res.pair[1]]] if res.pair else None,
            "empty_family": res.empty_family,
            "relations": _edge_relations(t, mode),
        }
        inputs = {"edges": [[t.labels[u], t.labels[v]] for u, v in t.edges], "mode": mode}
        _emit(ctx, "tree center", inputs, result, [], EXIT_OK)

    _guard(ctx, "tree center", run)


@tree.command("facility")
@click.argument("edges_file", type=_IN_FILE)
@click.option("--g", "g_expr", required=True, help="Convex nondecreasing function of t.")
@click.pass_context
def cmd_tree_facility(ctx, edges_file, g_expr):
    """Facility objective sum of g(distance) with per-vertex ratio bounds."""

    def run():
        t = _load_tree(edges_file)
        g = expr.parse_scalar_function(g_expr)
        res = tr.facility_argmin(t, g, ctx.obj["tol"])
        result = {
            "v0": t.labels[res.v0],
            "F": {t.labels[v]: res.values[v] for v in range(len(t))},
            "alphas": {t.labels[v]: res.alphas[v] for v in sorted(res.alphas)},
            "alpha_slacks": {t.labels[v]: res.slacks[v] for v in sorted(res.slacks)},
            "violations": [t.labels[v] for v in res.violations],
            "strong_center": [t.labels[i] for i in sorted(res.strong_center)],
            "v0_in_strong_center": res.v0_in_strong_center,
        }
        inputs = {"edges": [[t.labels[u], t.labels[v]] for u, v in t.edges], "g": g_expr}
        _emit(ctx, "tree facility", inputs, result, [], EXIT_OK)

    _guard(ctx, "tree facility", run)


@tree.command("relation")
@click.argument("edges_file", type=_IN_FILE)
@click.argument("u")
@click.argument("v")
@click.option("--mode", type=click.Choice(["weak", "strong"]), default="weak", show_default=True)
@click.pass_context
def cmd_tree_relation(ctx, edges_file, u, v, mode):
    """Order two vertices by their distance vectors."""

    def run():
        t = _load_tree(edges_file)
        rel = tr.vertex_relation(t, u, v, mode)
        holds = rel.relation != "incomparable"
        result = {"u": u, "v": v, "mode": mode, "relation": rel.relation}
        inputs = {"edges": [[t.labels[a], t.labels[b]] for a, b in t.edges], "u": u, "v": v, "mode": mode}
        _emit(ctx, "tree relation", inputs, result, [], EXIT_OK if holds else EXIT_FAILS)

    _guard(ctx, "tree relation", run)


@main.group()
def spider():
    """K-spider geometry: barycenters, curvature, convexity."""


def _tripod_closed_form_applies(m: sp.SpiderMeasure) -> bool:
    if m.k != 3 or len(m.atoms) != 3:
        return False
    legs = [p.leg for p, _ in m.atoms if p.radius > 0]
    return len(legs) == len(set(legs))


def _measure_inputs(m: sp.SpiderMeasure):
    return {
        "K": m.k,
        "atoms": [{"leg": p.leg, "r": p.radius, "w": w} for p, w in m.atoms],
    }


@spider.command("bary")
@click.option("--measure", "measure_file", required=True, type=_IN_FILE, help="Measure JSON file.")
@click.pass_context
def cmd_spider_bary(ctx, measure_file):
    """Barycenter (squared-distance minimizer) of a measure."""

    def run():
        m = read_measure(measure_file)
        if _tripod_closed_form_applies(m):
            b = sp.tripod_barycenter(m)
            method = "tripod_closed_form"
        else:
            b = sp.spider_barycenter_numeric(m)
            method = "leg_candidates"
        result = {
            "leg": b.leg,
            "r": b.radius,
            "objective": sp.spider_objective(m, b),
            "method": method,
        }
        _emit(ctx, "spider bary", _measure_inputs(m), result, [], EXIT_OK)

    _guard(ctx, "spider bary", run)


@spider.command("npc")
@click.option("--k", "k", type=int, required=True, help="Number of legs.")
@click.option("--points", "points_json", default=None,
              help='JSON [{"leg":i,"r":x} x3] for x0, x1, z.')
@click.option("--random", "random_trials", type=int, default=None,
              help="Check this many random triples instead.")
@click.option("--rmax", type=float, default=10.0, show_default=True)
@click.pass_context
def cmd_spider_npc(ctx, k, points_json, random_trials, rmax):
    """Nonpositive-curvature midpoint inequality, single or sampled."""

    def point_from(d):
        return sp.SpiderPoint(int(d["leg"]), float(d["r"]), k)

    def run():
        tol = ctx.obj["tol"]
        if (points_json is None) == (random_trials is None):
            raise ValueError("provide exactly one of --points or --random")
        if points_json is not None:
            data = json.loads(points_json)
            if not isinstance(data, list) or len(data) != 3:
                raise ValueError("--points needs exactly three points")
            x0, x1, z = (point_from(d) for d in data)
            rep = sp.npc_inequality_check(x0, x1, z, tol)
            y = sp.geodesic_midpoint(x0, x1)
            result = {
                "lhs": rep.lhs, "rhs": rep.rhs, "slack": rep.slack, "holds": rep.holds,
                "midpoint": {"leg": y.leg, "r": y.radius},
            }
            inputs = {"k": k, "points": data}
            _emit(ctx, "spider npc", inputs, result, [], EXIT_OK if rep.holds else EXIT_FAILS)
        if random_trials < 1:
            raise ValueError("--random must be at least 1")
        rng = np.random.default_rng(ctx.obj["seed"])
        min_slack = math.inf
        worst = None
        for _ in range(random_trials):
            pts = [
                sp.SpiderPoint(int(rng.integers(1, k + 1)), float(rng.uniform(0, rmax)), k)
                for _ in range(3)
            ]
            rep = sp.npc_inequality_check(pts[0], pts[1], pts[2], tol)
            if rep.slack < min_slack:
                min_slack = rep.slack
                worst = pts
        holds = min_slack >= -tol
        result = {
            "trials": random_trials,
            "min_slack": min_slack,
            "holds": holds,
            "worst": [{"leg": p.leg, "r": p.radius} for p in worst],
        }
        inputs = {"k": k, "random": random_trials, "rmax": rmax, "seed": ctx.obj["seed"]}
        _emit(ctx, "spider npc", inputs, result, [], EXIT_OK if holds else EXIT_FAILS)

    _guard(ctx, "spider npc", run)


@spider.command("convex")
@click.option("--f1", required=True, help="Restriction on leg 1, function of t.")
@click.option("--f2", required=True, help="Restriction on leg 2.")
@click.option("--f3", required=True, help="Restriction on leg 3.")
@click.option("--h", type=float, default=1e-6, show_default=True, help="Right-derivative step.")
@click.option("--grid-max", type=float, default=10.0, show_default=True)
@click.option("--grid-points", type=int, default=33, show_default=True)
@click.pass_context
def cmd_spider_convex(ctx, f1, f2, f3, h, grid_max, grid_points):
    """Tripod convexity conditions for three leg restrictions."""

    def run():
        f = sp.SpiderFunction(tuple(expr.parse_scalar_function(e) for e in (f1, f2, f3)))
        grid = [grid_max * i / (grid_points - 1) for i in range(grid_points)]
        rep = sp.convexity_conditions_check(f, h, grid, tol=ctx.obj["tol"])
        result = {
            "each_restriction_convex": list(rep.each_restriction_convex),
            "pairwise_sums_nondecreasing": {
                "f1+f2": rep.pairwise_sums_nondecreasing[0],
                "f1+f3": rep.pairwise_sums_nondecreasing[1],
                "f2+f3": rep.pairwise_sums_nondecreasing[2],
            },
            "right_derivs_at_0": list(rep.right_derivs_at_0),
            "conditions_hold": rep.conditions_hold,
        }
        inputs = {"f1": f1, "f2": f2, "f3": f3, "h": h,
                  "grid_max": grid_max, "grid_points": grid_points}
        code = EXIT_OK if rep.conditions_hold else EXIT_FAILS
        _emit(ctx, "spider convex", inputs, result, [], code)

    _guard(ctx, "spider convex", run)


@spider.command("jensen")
@click.option("--measure", "measure_file", required=True, type=_IN_FILE)
@click.option("--f", "f_exprs", multiple=True, required=True,
              help="Restriction for each leg, in leg order (repeat K times).")
@click.pass_context
def cmd_spider_jensen(ctx, measure_file, f_exprs):
    """Barycenter inequality f(b) <= sum of weighted atom values."""

    def run():
        m = read_measure(measure_file)
        if len(f_exprs) != m.k:
            raise ValueError(f"need {m.k} restrictions (one per leg), got {len(f_exprs)}")
        f = sp.SpiderFunction(tuple(expr.parse_scalar_function(e) for e in f_exprs))
        rep = sp.jensen_check(f, m, ctx.obj["tol"])
        b = sp.spider_barycenter_numeric(m)
        result = {
            "lhs": rep.lhs, "rhs": rep.rhs, "slack": rep.slack, "holds": rep.holds,
            "barycenter": {"leg": b.leg, "r": b.radius},
        }
        inputs = {**_measure_inputs(m), "f": list(f_exprs)}
        _emit(ctx, "spider jensen", inputs, result, [], EXIT_OK if rep.holds else EXIT_FAILS)

    _guard(ctx, "spider jensen", run)
