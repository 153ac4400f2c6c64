"""Command-line scenario runner.

    fermi-mi run --config scenarios/exact_two_intervals.json --out results/
    fermi-mi compare --config scenarios/compare_three_way.json --out results/

A config file holds one scenario object or ``{"scenarios": [...]}``.  Each
mode writes ``<out>/<mode>.csv`` (and ``<mode>.json`` with ``--json``); rows
are sorted by ``scenario_id`` so the output never depends on ``--threads``.

Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 audit
violation or a flagged deviation in ``compare``.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .cft import duality_scan, extended_mi, mutual_information_exact, singular_limit_mi, SubnetParams
from .errors import FermiMIError, NumericalFailure, ValidationError
from .geometry import Geometry, MultiInterval, normalize
from .kernel import (KernelConfig, QuadratureConfig, QuadResult, dilog_integral_detail, k0_trace_detail,
                     t_profile_integral_detail)
from .lattice import convergence_study
from .oracles import AUDITS, GAP_TOL, run_audit

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL, EXIT_VIOLATION = 0, 1, 2, 3

MODES = ("exact", "lattice", "kernel", "audit", "scan")
_MODE_ALIASES = {"closedform": "exact", "kerneltrace": "kernel"}

COLUMNS = {
    "exact": ["scenario_id", "method", "value", "eta", "geometry", "r", "A", "B", "C", "mi_extended"],
    "lattice": ["scenario_id", "discretization", "r", "scale", "sites_A", "sites_B",
                "S_A", "S_B", "S_AB", "mi_lattice", "mi_closed", "rel_error"],
    "kernel": ["scenario_id", "config_hash", "quantity", "numeric", "closed_form", "abs_err",
               "subdivisions"],
    "audit": ["scenario_id", "inequality_name", "trials", "min_gap", "argmin_seed", "passed"],
    "scan": ["scenario_id", "r", "mu", "eta", "F_eta", "F_one_minus_eta", "difference",
             "duality_gap", "index_shift"],
    "compare": ["scenario_id", "method", "value", "reference", "deviation", "tolerance", "flagged"],
}

COMPARE_TOL = {"KernelTrace": 1e-6, "Lattice": 0.05}


@dataclass
class Scenario:
    scenario_id: str
    mode: str
    geometry: Geometry = Geometry.LINE
    A: MultiInterval | None = None
    B: MultiInterval | None = None
    C: MultiInterval | None = None
    r: int = 1
    mu: float = 1.0
    scales: list[int] = field(default_factory=lambda: [25, 50, 100, 200, 400])
    discretization: str = "hardy"
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    audits: list[str] = field(default_factory=lambda: sorted(AUDITS))
    trials: int = 500
    seed: int = 0
    etas: list[float] = field(default_factory=lambda: [round(0.1 * i, 1) for i in range(1, 10)])
    methods: list[str] = field(default_factory=lambda: ["ClosedForm", "KernelTrace", "Lattice"])


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (list, tuple)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _region(raw, geometry: Geometry, name: str) -> MultiInterval:
    if not isinstance(raw, list) or not all(isinstance(p, list) and len(p) == 2 for p in raw):
        raise ValidationError(f"{name} must be a list of [a, b] pairs")
    return normalize([(float(a), float(b)) for a, b in raw], geometry)


def parse_scenario(raw: dict, index: int, args: argparse.Namespace | None = None,
                   default_id: str = "") -> Scenario:
    if not isinstance(raw, dict):
        raise ValidationError(f"scenario #{index} is not a JSON object")
    known = {"scenario_id", "mode", "geometry", "A", "B", "C", "r", "mu", "lattice", "quad",
             "audit", "scan", "methods"}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ValidationError(f"scenario #{index}: unknown keys {unknown}")
    mode = str(raw.get("mode", "")).lower()
    mode = _MODE_ALIASES.get(mode, mode)
    if args is not None and args.command == "compare":
        mode = "compare"
    elif mode not in MODES:
        raise ValidationError(f"scenario #{index}: mode must be one of {list(MODES)}, got {raw.get('mode')!r}")
    sid = str(raw.get("scenario_id", f"{default_id}{index:03d}"))
    geometry = Geometry(str(raw.get("geometry", "line")).lower())
    sc = Scenario(sid, mode, geometry)
    sc.r = int(raw.get("r", 1))
    if sc.r < 1 or sc.r != raw.get("r", 1):
        raise ValidationError(f"scenario {sid}: r must be a positive integer")
    sc.mu = float(raw.get("mu", 1.0))
    SubnetParams(mu=sc.mu)
    for key in ("A", "B", "C"):
        if key in raw:
            setattr(sc, key, _region(raw[key], geometry, f"scenario {sid}: {key}"))
    needs_ab = mode in ("exact", "lattice", "kernel", "compare")
    if needs_ab and (sc.A is None or sc.B is None):
        raise ValidationError(f"scenario {sid}: mode {mode} needs A and B")
    if mode in ("lattice", "kernel", "compare") and geometry is not Geometry.LINE:
        raise ValidationError(f"scenario {sid}: mode {mode} is defined on the line only")
    lat = raw.get("lattice", {})
    if "scales" in lat:
        sc.scales = [int(s) for s in lat["scales"]]
    sc.discretization = lat.get("discretization", sc.discretization)
    q = dict(raw.get("quad", {}))
    if args is not None and args.tol is not None:
        q["abs_tol"] = q["rel_tol"] = args.tol
    sc.quad = QuadratureConfig(**{k: float(v) if k != "max_subdivisions" else int(v)
                                  for k, v in q.items()})
    aud = raw.get("audit", {})
    sc.trials = int(aud.get("trials", sc.trials))
    sc.seed = int(aud.get("seed", 0))
    if args is not None and args.seed is not None:
        sc.seed = int(args.seed)
    if "names" in aud:
        sc.audits = list(aud["names"])
        bad = [n for n in sc.audits if n not in AUDITS]
        if bad:
            raise ValidationError(f"scenario {sid}: unknown audits {bad}")
    if "etas" in raw.get("scan", {}):
        sc.etas = [float(e) for e in raw["scan"]["etas"]]
    if "methods" in raw:
        sc.methods = list(raw["methods"])
        bad = [m for m in sc.methods if m not in ("ClosedForm", "KernelTrace", "Lattice")]
        if bad or "ClosedForm" not in sc.methods:
            raise ValidationError(f"scenario {sid}: methods must include ClosedForm, got {sc.methods}")
    return sc


def load_scenarios(path: str | Path, args: argparse.Namespace | None = None) -> list[Scenario]:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    items = raw["scenarios"] if isinstance(raw, dict) and "scenarios" in raw else [raw]
    if not isinstance(items, list) or not items:
        raise ValidationError(f"{path}: 'scenarios' must be a non-empty list")
    out = [parse_scenario(item, i, args, default_id=f"{path.stem}-") for i, item in enumerate(items)]
    ids = [s.scenario_id for s in out]
    if len(set(ids)) != len(ids):
        raise ValidationError(f"{path}: duplicate scenario_id values")
    return out


# ---------------------------------------------------------------------------
# Per-mode execution; each returns (mode, rows, violation)
# ---------------------------------------------------------------------------

def _run_exact(sc: Scenario):
    rep = mutual_information_exact(sc.A, sc.B, sc.r)
    ext = extended_mi(sc.A, sc.B, sc.C, sc.r) if sc.C is not None else None
    return [{"scenario_id": sc.scenario_id, "method": rep.method.value, "value": rep.value,
             "eta": rep.diagnostics.get("eta"), "geometry": sc.geometry.value, "r": sc.r,
             "A": sc.A.to_pairs(), "B": sc.B.to_pairs(),
             "C": sc.C.to_pairs() if sc.C is not None else None, "mi_extended": ext}], False


def _run_lattice(sc: Scenario):
    if len(sc.A) != 1 or len(sc.B) != 1:
        raise ValidationError(f"scenario {sc.scenario_id}: lattice mode takes single intervals A and B")
    rows = convergence_study((sc.A.parts[0], sc.B.parts[0]), sc.scales, sc.r, sc.discretization)
    return [{"scenario_id": sc.scenario_id, "discretization": sc.discretization, "r": sc.r,
             **asdict(row)} for row in rows], False


def _kernel_parts(sc: Scenario):
    I = sc.A.union(sc.B)
    if len(I) != len(sc.A) + len(sc.B):
        raise ValidationError(f"scenario {sc.scenario_id}: A and B must be disjoint")
    cfg_a = KernelConfig(I, sc.A, 0.0, sc.quad)
    cfg_b = KernelConfig(I, sc.B, 0.0, sc.quad)
    return cfg_a, k0_trace_detail(cfg_a), cfg_b, k0_trace_detail(cfg_b)


def _run_kernel(sc: Scenario):
    cfg_a, (ta, ca), cfg_b, (tb, cb) = _kernel_parts(sc)
    tp, dl = t_profile_integral_detail(sc.quad), dilog_integral_detail(sc.quad)
    mi = mutual_information_exact(sc.A, sc.B, sc.r).value
    table = [
        (cfg_a.digest(), "trace_I1_A", ta, ca),
        (cfg_b.digest(), "trace_I1_B", tb, cb),
        (cfg_a.digest(), "mutual_information",
         QuadResult(sc.r * (ta.value + tb.value), sc.r * (ta.abserr + tb.abserr),
                    ta.subdivisions + tb.subdivisions), mi),
        (cfg_a.digest(), "t_profile", tp, 1.0 / 12.0),
        (cfg_a.digest(), "dilog", dl, -math.pi ** 2 / 6.0),
    ]
    return [{"scenario_id": sc.scenario_id, "config_hash": h, "quantity": q, "numeric": res.value,
             "closed_form": cf, "abs_err": abs(res.value - cf), "subdivisions": res.subdivisions}
            for h, q, res, cf in table], False


def _run_audit(sc: Scenario, threads: int):
    rows, violation = [], False
    for name in sc.audits:
        res = run_audit(name, sc.trials, sc.seed, threads)
        violation |= res.min_gap < -GAP_TOL
        rows.append({"scenario_id": sc.scenario_id, "inequality_name": name, "trials": res.trials,
                     "min_gap": res.min_gap, "argmin_seed": res.argmin_seed, "passed": res.passed})
    return rows, violation


def _run_scan(sc: Scenario):
    # -(1/2) ln mu shift of the singular limit, read off the implemented formula
    shift = (singular_limit_mi(0.0, 1.0, 2.0, 1e-3, sc.r)
             - singular_limit_mi(0.0, 1.0, 2.0, 1e-3, sc.r, SubnetParams(mu=sc.mu)))
    return [{"scenario_id": sc.scenario_id, "r": sc.r, "mu": sc.mu, **row, "index_shift": shift}
            for row in duality_scan(sc.etas, sc.r)], False


def _run_compare(sc: Scenario):
    closed = mutual_information_exact(sc.A, sc.B, sc.r).value
    rows = [{"scenario_id": sc.scenario_id, "method": "ClosedForm", "value": closed,
             "reference": None, "deviation": None, "tolerance": None, "flagged": False}]
    flagged = False
    if "KernelTrace" in sc.methods:
        _, (ta, _), _, (tb, _) = _kernel_parts(sc)
        v = sc.r * (ta.value + tb.value)
        dev = abs(v - closed)
        bad = not dev < COMPARE_TOL["KernelTrace"]
        rows.append({"scenario_id": sc.scenario_id, "method": "KernelTrace", "value": v,
                     "reference": closed, "deviation": dev, "tolerance": COMPARE_TOL["KernelTrace"],
                     "flagged": bad})
        flagged |= bad
    if "Lattice" in sc.methods:
        if len(sc.A) != 1 or len(sc.B) != 1:
            raise ValidationError(f"scenario {sc.scenario_id}: the lattice method takes single intervals")
        last = convergence_study((sc.A.parts[0], sc.B.parts[0]), [max(sc.scales)], sc.r,
                                 sc.discretization)[-1]
        dev = abs(last.rel_error)
        bad = not dev < COMPARE_TOL["Lattice"]
        rows.append({"scenario_id": sc.scenario_id, "method": "Lattice", "value": last.mi_lattice,
                     "reference": closed, "deviation": dev, "tolerance": COMPARE_TOL["Lattice"],
                     "flagged": bad})
        flagged |= bad
    return rows, flagged


def execute(sc: Scenario, threads: int = 1):
    if sc.mode == "exact":
        return _run_exact(sc)
    if sc.mode == "lattice":
        return _run_lattice(sc)
    if sc.mode == "kernel":
        return _run_kernel(sc)
    if sc.mode == "audit":
        return _run_audit(sc, threads)
    if sc.mode == "scan":
        return _run_scan(sc)
    return _run_compare(sc)


def write_outputs(results: dict[str, list[dict]], out: Path, as_json: bool) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for mode in sorted(results):
        rows = sorted(results[mode], key=lambda r: r["scenario_id"])  # stable within a scenario
        path = out / f"{mode}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(COLUMNS[mode])
            for row in rows:
                w.writerow([_fmt(row.get(c)) for c in COLUMNS[mode]])
        written.append(path)
        if as_json:
            jpath = out / f"{mode}.json"
            records = [{c: _jsonable(row.get(c)) for c in COLUMNS[mode]} for row in rows]
            jpath.write_text(json.dumps(records, indent=2, sort_keys=False) + "\n")
            written.append(jpath)
    return written


def _jsonable(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fermi-mi", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (("run", "execute scenarios in their own mode"),
                        ("compare", "closed form vs kernel trace vs lattice for each scenario")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--config", required=True, help="scenario JSON file")
        s.add_argument("--out", default="results", help="output directory (default: results)")
        s.add_argument("--seed", type=int, default=None, help="audit seed, overrides the config")
        s.add_argument("--threads", type=int, default=1, help="worker threads, 0 = one per CPU")
        s.add_argument("--tol", type=float, default=None, help="quadrature abs/rel tolerance override")
        s.add_argument("--json", action="store_true", help="also write JSON records")
    return p


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.threads < 0 or (args.seed is not None and args.seed < 0):
        print("error: --threads and --seed must be non-negative", file=sys.stderr)
        return EXIT_INVALID
    threads = args.threads or (os.cpu_count() or 1)
    try:
        scenarios = load_scenarios(args.config, args)
    except (ValidationError, ValueError, TypeError, KeyError) as exc:
        print(f"error: {args.config}: {exc}", file=sys.stderr)
        return EXIT_INVALID

    def one(sc: Scenario):
        try:
            return sc, execute(sc, 1 if threads > 1 else threads), None
        except FermiMIError as exc:
            return sc, None, exc

    if threads > 1 and len(scenarios) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, scenarios))
    else:
        outcomes = [one(sc) for sc in scenarios]

    results: dict[str, list[dict]] = {}
    codes = set()
    for sc, res, exc in outcomes:
        if exc is not None:
            print(f"error: scenario {sc.scenario_id} ({sc.mode}): {type(exc).__name__}: {exc}",
                  file=sys.stderr)
            codes.add(EXIT_NUMERICAL if isinstance(exc, NumericalFailure) else EXIT_INVALID)
            continue
        rows, violation = res
        results.setdefault(sc.mode, []).extend(rows)
        if violation:
            print(f"violation: scenario {sc.scenario_id} ({sc.mode})", file=sys.stderr)
            codes.add(EXIT_VIOLATION)
    # errors abort before anything is written; violations still produce output
    for code in (EXIT_INVALID, EXIT_NUMERICAL):
        if code in codes:
            return code
    for path in write_outputs(results, Path(args.out), args.json):
        print(path)
    return EXIT_VIOLATION if codes else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
