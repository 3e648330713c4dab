"""Batch front end: correlation curves, SG tables, Gram matrices, self-checks.

Exit status is 0 when every compared value is within ``--tol``, 1 when a
tolerance check fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .clifford import SIGMA, STR, identity_suite, sigma_vector
from .entangle import (
    STANDARD_STATE,
    VARIANTS,
    bell_state,
    bipartite_closed_form,
    bipartite_expectation,
    partial_expectation,
    spinor_bell_gram,
)
from .oracle import born_probability, oracle_bipartite, oracle_partial, spin_state
from .spin import make_spin, sg_measure

EXIT_OK, EXIT_TOL, EXIT_USAGE = 0, 1, 2

PLANE_NORMALS = {"xz": (0.0, 1.0, 0.0), "yz": (1.0, 0.0, 0.0), "xy": (0.0, 0.0, 1.0)}
PLANE_DEFAULT_U = {"xz": (0.0, 0.0), "yz": (0.0, 0.0), "xy": (90.0, 0.0)}


def direction(theta_deg: float, phi_deg: float) -> np.ndarray:
    t, p = math.radians(theta_deg), math.radians(phi_deg)
    return np.array([math.sin(t) * math.cos(p), math.sin(t) * math.sin(p), math.cos(t)])


def _angles(text: str) -> tuple[float, float]:
    try:
        theta, phi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected THETA,PHI in degrees, got {text!r}")
    return theta, phi


def _turn(v: np.ndarray, axis: Sequence[float], angle: float) -> np.ndarray:
    """Right-handed turn of ``v`` about unit ``axis`` (Rodrigues)."""
    k = np.asarray(axis, dtype=float)
    c, s = math.cos(angle), math.sin(angle)
    return v * c + np.cross(k, v) * s + k * float(k @ v) * (1 - c)


def _grid(samples: int) -> np.ndarray:
    return np.linspace(0.0, 180.0, samples)


def _unit_vectors(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.normal(size=(n, 3))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


# -- commands -----------------------------------------------------------------


def cmd_curve(args) -> dict:
    plane = args.plane
    u_angles = args.u or PLANE_DEFAULT_U[plane]
    u = direction(*u_angles)
    normal = np.array(PLANE_NORMALS[plane])
    if abs(float(u @ normal)) > 1e-9:
        raise UsageError(f"--u {u_angles[0]:g},{u_angles[1]:g} does not lie in the {plane} plane")
    b = bell_state(args.state, args.variant)
    name = STANDARD_STATE[args.state]
    u_mv = sigma_vector(u)
    rows = []
    for deg in _grid(args.samples):
        v = _turn(u, normal, math.radians(deg))
        v /= np.linalg.norm(v)
        model = bipartite_expectation(b, u_mv, sigma_vector(v))
        ref = oracle_bipartite(name, u, v)
        rows.append({"theta_uv_deg": float(deg), "E_model": model, "E_oracle": ref, "abs_diff": abs(model - ref)})
    worst = max(r["abs_diff"] for r in rows)
    return {
        "columns": ["theta_uv_deg", "E_model", "E_oracle", "abs_diff"],
        "rows": rows,
        "summary": {"max_abs_diff": worst, "oracle_state": name, "pass": worst < args.tol},
    }


def cmd_single(args) -> dict:
    up = make_spin("up")
    state = spin_state([0.0, 0.0, 1.0])
    rows = []
    for deg in _grid(args.samples):
        det = direction(deg, 0.0)
        rec = sg_measure(up, sigma_vector(det))
        p_plus, p_minus = born_probability(state, det)
        diff = max(abs(rec.p_coincide - p_plus), abs(rec.p_anti - p_minus))
        rows.append({
            "theta_deg": float(deg),
            "p_coincide": rec.p_coincide,
            "p_anti": rec.p_anti,
            "correlation": rec.correlation,
            "oracle_p_plus": p_plus,
            "oracle_p_minus": p_minus,
            "abs_diff": diff,
        })
    worst = max(r["abs_diff"] for r in rows)
    return {
        "columns": list(rows[0]),
        "rows": rows,
        "summary": {"max_abs_diff": worst, "pass": worst < args.tol},
    }


def cmd_gram(args) -> dict:
    full = spinor_bell_gram(full=True)
    sg = spinor_bell_gram(full=False)
    off = ~np.eye(4, dtype=bool)
    worst = float(max(np.abs(full[off]).max(), np.abs(sg[off]).max()))
    rows = []
    for kind, m in (("full", full), ("sg", sg)):
        for mu in range(4):
            rows.append({"kind": kind, "mu": mu, **{f"nu{nu}": float(m[mu, nu]) for nu in range(4)}})
    return {
        "columns": ["kind", "mu", "nu0", "nu1", "nu2", "nu3"],
        "rows": rows,
        "matrix": {"full": full.tolist(), "sg": sg.tolist()},
        "summary": {"max_off_diagonal": worst, "pass": worst < args.tol},
    }


def cmd_difftest(args) -> dict:
    rng = np.random.default_rng(args.seed)
    n = args.samples
    us, vs = _unit_vectors(rng, n), _unit_vectors(rng, n)
    rows, failures = [], []
    for mu in range(4):
        name = STANDARD_STATE[mu]
        variant = args.variant if args.variant != "YdoublePrime" or mu in (1, 2) else "Y"
        b = bell_state(mu, variant)
        # partials: the variant whose one-spin values vanish like the oracle's
        bp = bell_state(mu, "YdoublePrime" if mu in (1, 2) else "Yprime")
        dev_b = dev_c = dev_p = 0.0
        worst_case = None
        for i in range(n):
            u_mv, v_mv = sigma_vector(us[i]), sigma_vector(vs[i])
            model = bipartite_expectation(b, u_mv, v_mv)
            d = abs(model - oracle_bipartite(name, us[i], vs[i]))
            if d > dev_b:
                dev_b, worst_case = d, i
            dev_c = max(dev_c, abs(model - bipartite_closed_form(mu, us[i], vs[i])))
            for which, w, w_mv in ((1, us[i], u_mv), (2, vs[i], v_mv)):
                dev_p = max(dev_p, abs(partial_expectation(bp, w_mv, which) - oracle_partial(name, w, which)))
        rows.append({
            "mu": mu,
            "state": name,
            "max_bipartite_dev": dev_b,
            "max_closed_form_dev": dev_c,
            "max_partial_dev": dev_p,
        })
        if max(dev_b, dev_c, dev_p) >= args.tol:
            failures.append({"mu": mu, "case": worst_case, "u": us[worst_case].tolist(), "v": vs[worst_case].tolist()})
    worst = max(max(r["max_bipartite_dev"], r["max_closed_form_dev"], r["max_partial_dev"]) for r in rows)
    return {
        "columns": list(rows[0]),
        "rows": rows,
        "summary": {"max_deviation": worst, "pairs": n, "failures": failures, "pass": not failures},
    }


def cmd_algebra_check(args) -> dict:
    rng = np.random.default_rng(args.seed)
    algebras = {3: SIGMA, 5: STR}
    dims = [args.dim] if args.dim else [3, 5]
    rows = []
    for dim in dims:
        for check, err in identity_suite(algebras[dim], rng, args.samples).items():
            rows.append({"dim": dim, "check": check, "cases": args.samples, "max_abs_err": err})
    worst = max(r["max_abs_err"] for r in rows)
    return {
        "columns": ["dim", "check", "cases", "max_abs_err"],
        "rows": rows,
        "summary": {"max_abs_err": worst, "pass": worst < args.tol},
    }


COMMANDS = {
    "curve": (cmd_curve, 181),
    "single": (cmd_single, 181),
    "gram": (cmd_gram, 0),
    "difftest": (cmd_difftest, 1000),
    "algebra-check": (cmd_algebra_check, 10_000),
}


class UsageError(Exception):
    pass


# -- output -------------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, float):
        return "%.15g" % x
    return str(x)


def render_csv(result: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = result["columns"]
    w.writerow(cols)
    for row in result["rows"]:
        w.writerow([_fmt(row[c]) for c in cols])
    return buf.getvalue()


def render_json(result: dict, config: dict) -> str:
    body = {"config": config, "summary": result["summary"], "version": __version__}
    if "matrix" in result:
        body["matrix"] = result["matrix"]
    else:
        body["rows"] = result["rows"]
    return json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phasedspin", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        c = sub.add_parser(name)
        c.add_argument("--state", type=int, choices=range(4), default=0, help="Bell index mu")
        c.add_argument("--variant", choices=VARIANTS, default="Y")
        c.add_argument("--u", type=_angles, metavar="THETA,PHI", help="fixed detector (degrees)")
        c.add_argument("--v", type=_angles, metavar="THETA,PHI", help="unused by the sweeps; echoed in the config")
        c.add_argument("--plane", choices=sorted(PLANE_NORMALS), default="xz", help="sweep plane for curve")
        c.add_argument("--samples", type=int, default=None, help="grid points or random pairs")
        c.add_argument("--seed", type=int, default=0)
        c.add_argument("--tol", type=float, default=1e-12)
        c.add_argument("--format", choices=("csv", "json"), default="csv")
        c.add_argument("--out", default=None, help="output file (default: stdout)")
        c.add_argument("--dim", type=int, choices=(3, 5), default=None, help="algebra-check dimension")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fn, default_samples = COMMANDS[args.command]
    if args.samples is None:
        args.samples = default_samples
    if args.command in ("curve", "single") and args.samples < 2:
        parser.error("--samples must be at least 2")
    if args.command in ("difftest", "algebra-check") and args.samples < 1:
        parser.error("--samples must be positive")
    if args.variant == "YdoublePrime" and args.command == "curve" and args.state not in (1, 2):
        parser.error("--variant YdoublePrime needs --state 1 or 2")
    if not 0 <= args.seed < 2**64:
        parser.error("--seed must be a 64-bit unsigned integer")
    try:
        result = fn(args)
    except UsageError as e:
        parser.error(str(e))

    config = {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(args).items())}
    text = render_json(result, config) if args.format == "json" else render_csv(result)
    if args.out:
        with open(args.out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    summary = result["summary"]
    if not summary["pass"]:
        print(f"tolerance failure: {json.dumps(summary, sort_keys=True)}", file=sys.stderr)
        return EXIT_TOL
    return EXIT_OK
