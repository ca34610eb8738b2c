"""Scenario-driven command line harness.

Subcommands::

    gaborlab analyze --config F [--json-out P] [--tolerance T] [--format text|json]
    gaborlab verify  --config F --check NAME [NAME ...]
    gaborlab dual    --config F
    gaborlab scan    --group "n1,n2" [--max-subgroups N] [--seed S] --csv-out P

Exit status is 0 when every executed check passes, 1 when a check fails and
2 for invalid input (bad config, unwritable output, order above the cap).
A check that cannot be applied (``critical`` off critical density,
``wexler_raz`` without a frame or a dual window) is reported as ``skip``.

The ``scan`` CSV has one row per subgroup pair ``(Lambda, Gamma)`` with
columns ``lambda_order, gamma_order, p, q, A, B, frame`` where ``A`` and
``B`` are the optimal frame bounds of a seeded random window.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources

import jsonschema
import numpy as np

from . import gabor, windows
from .bounds import DEFAULT_TOL
from .errors import GaborlabError, InvalidInputError, ResourceLimitError
from .groups import (FiniteAbelianGroup, Subgroup, derive_weights, enumerate_subgroups,
                     make_group, max_order_cap, subgroup_from_generators)

SCHEMA_VERSION = "1.0"
CHECKS = ("bounds", "walnut", "janssen", "figa", "wexler_raz", "duality",
          "calderon", "critical", "bessel_estimate", "zz")
BOUND_METHODS = ("oracle", "dual_gramian", "zz", "frequency", "riesz")
EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class ConfigError(GaborlabError):
    """Invalid scenario; ``path`` locates the offending JSON node."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '<root>'}: {message}")
        self.path = path


def load_schema(name: str) -> dict:
    text = resources.files("gaborlab").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


@dataclass
class ScenarioConfig:
    group: tuple[int, ...]
    lambda_generators: list
    gamma_generators: list
    window: dict
    dual_window: dict | None = None
    checks: tuple[str, ...] = CHECKS
    tolerance: float = DEFAULT_TOL
    max_order: int | None = None
    name: str = ""
    raw: dict = field(default_factory=dict, repr=False)

    def echo(self) -> dict:
        doc = {
            "group": list(self.group),
            "lambda": {"generators": self.lambda_generators},
            "gamma": {"generators": self.gamma_generators},
            "window": self.window,
            "checks": list(self.checks),
            "tolerance": self.tolerance,
        }
        if self.name:
            doc["name"] = self.name
        if self.dual_window is not None:
            doc["dual_window"] = self.dual_window
        if self.max_order is not None:
            doc["max_order"] = self.max_order
        return doc


@dataclass
class Scenario:
    """A parsed config bound to concrete group objects."""

    config: ScenarioConfig
    group: FiniteAbelianGroup
    Lam: Subgroup
    Gam: Subgroup
    window: np.ndarray
    dual_window: np.ndarray | None


def _as_element(group, value, path):
    try:
        return group.index(tuple(value) if isinstance(value, list) else value)
    except InvalidInputError as exc:
        raise ConfigError(path, str(exc)) from None


def _subgroup(group, gens, path, in_dual):
    elems = [_as_element(group, g, f"{path}[{i}]") for i, g in enumerate(gens)]
    return subgroup_from_generators(group, elems, in_dual=in_dual)


def build_window(group: FiniteAbelianGroup, desc: dict, Lam: Subgroup, path: str = "window") -> np.ndarray:
    kind = desc["kind"]
    if kind == "explicit":
        re = desc["values"]["re"]
        im = desc["values"].get("im", [0.0] * len(re))
        if len(re) != group.order or len(im) != group.order:
            raise ConfigError(f"{path}.values",
                              f"window length must equal the group order {group.order} "
                              f"(got re={len(re)}, im={len(im)})")
        return np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float)
    if kind == "delta":
        return windows.delta(group, _as_element(group, desc.get("at", 0), f"{path}.at"))
    if kind == "constant":
        return windows.constant(group, desc.get("value", 1.0))
    if kind == "random":
        return windows.random_window(group, desc["seed"])
    # bspline
    order = desc["order"]
    try:
        return gabor.build_parseval_bspline(group, Lam, order, desc.get("factors"))
    except InvalidInputError as exc:
        raise ConfigError(path, str(exc)) from None


def parse_config(text: str | bytes) -> ScenarioConfig:
    """Validate a scenario document; errors carry the JSON path."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ConfigError("", f"config is not UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"invalid JSON: {exc}") from None
    validator = jsonschema.Draft202012Validator(load_schema("scenario"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise ConfigError(_path(err.absolute_path), err.message)
    cfg = ScenarioConfig(
        group=tuple(doc["group"]),
        lambda_generators=doc["lambda"]["generators"],
        gamma_generators=doc["gamma"]["generators"],
        window=doc["window"],
        dual_window=doc.get("dual_window"),
        checks=tuple(doc.get("checks", CHECKS)),
        tolerance=float(doc.get("tolerance", DEFAULT_TOL)),
        max_order=doc.get("max_order"),
        name=doc.get("name", ""),
        raw=doc,
    )
    # semantic checks that need the group itself
    materialize(cfg)
    return cfg


def materialize(cfg: ScenarioConfig) -> Scenario:
    cap = cfg.max_order if cfg.max_order is not None else max_order_cap()
    try:
        G = make_group(cfg.group, max_order=cap)
    except ResourceLimitError:
        raise
    except InvalidInputError as exc:
        raise ConfigError("group", str(exc)) from None
    Lam = _subgroup(G, cfg.lambda_generators, "lambda.generators", False)
    Gam = _subgroup(G, cfg.gamma_generators, "gamma.generators", True)
    g = build_window(G, cfg.window, Lam, "window")
    h = None if cfg.dual_window is None else build_window(G, cfg.dual_window, Lam, "dual_window")
    return Scenario(cfg, G, Lam, Gam, g, h)


# ---------------------------------------------------------------------------
# running


def _num(x) -> float:
    x = float(x)
    return 0.0 if x == 0 else x  # no negative zero in reports


def _bounds_entry(fb) -> dict:
    return {"A": _num(fb.A), "B": _num(fb.B), "A_basic": _num(fb.A_basic)}


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _field_summary(fld, group, dump: bool) -> dict:
    vals = fld.bound_values()
    out = {"kind": fld.kind, "fibers": int(len(vals)), "min": _num(fld.global_min), "max": _num(fld.global_max)}
    if dump:
        out["per_fiber"] = [
            {"x": list(group.element(int(x))), "omega": list(group.element(int(w))),
             "min": _num(v[-1]), "max": _num(v[0])}
            for (x, w), v in zip(fld.fibers, vals)
        ]
    return out


def _run_checks(sc: Scenario, report: gabor.DualityReport, checks, tol) -> dict:
    sys_g = gabor.gabor_system(sc.window, sc.Lam, sc.Gam)
    res, flags = report.residuals, report.flags
    B = max(1.0, report.frame.B)
    out = {}
    for name in checks:
        try:
            out[name] = _one_check(name, sc, sys_g, report, res, flags, B, tol)
        except (GaborlabError, np.linalg.LinAlgError, FloatingPointError) as exc:
            out[name] = {"status": "fail", "residual": None, "detail": f"{type(exc).__name__}: {exc}"}
    return out


def _one_check(name, sc, sys_g, report, res, flags, B, tol) -> dict:
    if name == "bounds":
        ref = report.bounds["oracle"]
        dev = max(max(abs(v[0] - ref[0]) / max(1.0, abs(ref[0])), abs(v[1] - ref[1]) / max(1.0, abs(ref[1])))
                  for v in report.bounds.values())
        return {"status": _status(dev <= tol), "residual": _num(dev),
                "detail": "max relative deviation of the five bound routes from the oracle"}
    if name in ("walnut", "janssen", "figa"):
        r = res[name]
        out = {"status": _status(r <= tol), "residual": _num(r),
               "detail": "relative operator-norm deviation from the oracle frame operator"
               if name != "figa" else "relative bilinear-form deviation on seeded probes"}
        if name == "janssen":
            out["values"] = {"condition_A": _num(report.condition_A)}
        return out
    if name == "wexler_raz":
        if "wexler_raz" not in res:
            return {"status": "skip", "residual": None, "detail": "no frame and no dual window supplied"}
        ok = flags["wexler_raz_iff_dual"]
        return {"status": _status(ok), "residual": _num(res["wexler_raz"]),
                "detail": "biorthogonality verdict agrees with the dual-pair verdict",
                "values": {"is_dual_pair": bool(flags["is_dual_pair"]),
                           "dual_pair_residual": _num(res["dual_pair"])}}
    if name == "duality":
        ok = flags["duality_principle"] and flags["bessel_duality"] and flags["tight_iff_orthogonal"]
        fb, rb = report.frame, report.riesz.bounds
        dev = max(abs(fb.A - rb.A) / max(1.0, fb.A), abs(fb.B - rb.B) / max(1.0, fb.B))
        return {"status": _status(ok), "residual": _num(dev),
                "detail": "frame bounds against Riesz bounds of the adjoint system",
                "values": {"adjoint_orthogonal": bool(flags["adjoint_orthogonal"]),
                           "adjoint_size": int(report.riesz.family_shape[1]),
                           "biorthogonal": bool(report.riesz.biorthogonal)}}
    if name == "calderon":
        c = report.calderon
        return {"status": _status(flags["calderon_sandwich"]), "residual": None,
                "detail": "Calderon intervals inside the frame bounds",
                "values": {"time_min": _num(c.time[0]), "time_max": _num(c.time[1]),
                           "frequency_min": _num(c.frequency[0]), "frequency_max": _num(c.frequency[1])}}
    if name == "critical":
        if not sys_g.is_critical:
            return {"status": "skip", "residual": None, "detail": "Lambda differs from Gamma-perp"}
        cd = gabor.critical_density_check(sys_g, tol)
        return {"status": _status(cd.consistent), "residual": None,
                "detail": "frame iff Riesz basis, with equal bounds",
                "values": {"zak_min": _num(cd.zak_min), "zak_max": _num(cd.zak_max),
                           "zero_fibers": cd.zero_fibers, "total_fibers": cd.total_fibers,
                           "is_frame": cd.is_frame, "is_riesz_basis": cd.is_riesz_basis}}
    if name == "bessel_estimate":
        M = report.bessel_estimate
        return {"status": _status(flags["bessel_estimate_dominates"]), "residual": None,
                "detail": "estimate M dominates the optimal Bessel bound",
                "values": {"M": _num(M), "B": _num(report.frame.B)}}
    if name == "zz":
        r = res["zz_vs_gramian"] / B
        return {"status": _status(r <= tol), "residual": _num(r),
                "detail": "scaled squared singular values against dual Gramian eigenvalues"}
    raise InvalidInputError(f"unknown check {name!r}")


def run_scenario(config: ScenarioConfig, tolerance: float | None = None, checks=None,
                 dump_fibers: bool = False, timing: bool = False) -> dict:
    """Run the requested checks and assemble a report document."""
    t0 = time.perf_counter()
    sc = materialize(config)
    tol = config.tolerance if tolerance is None else tolerance
    checks = tuple(config.checks if checks is None else checks)
    for c in checks:
        if c not in CHECKS:
            raise ConfigError("checks", f"unknown check {c!r}")
    sys_g = gabor.gabor_system(sc.window, sc.Lam, sc.Gam)
    report = gabor.duality_report(sys_g, tol, sc.dual_window)
    t1 = time.perf_counter()
    check_results = _run_checks(sc, report, checks, tol)
    gram_field, _ = gabor.dual_gramian_bounds(sys_g, tol)
    zz_field, _ = gabor.zz_bounds(sys_g, tol)
    fb = report.frame
    statuses = [v["status"] for v in check_results.values()]
    echo = config.echo()
    echo["tolerance"] = tol
    echo["checks"] = list(checks)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "scenario": echo,
        "derived": {
            "order": sc.group.order,
            "lambda_order": sc.Lam.order,
            "gamma_order": sc.Gam.order,
            "p": report.p,
            "q": report.q,
            "critical": sys_g.is_critical,
            "weights": {k: str(v) for k, v in vars(sys_g.weights).items() if k != "group_factors"},
        },
        "bounds": {k: _bounds_entry(v) for k, v in _route_bounds(sys_g, report, tol).items()},
        "frame": {"A": _num(fb.A), "B": _num(fb.B), "A_basic": _num(fb.A_basic), "is_frame": fb.is_frame,
                  "is_tight": fb.is_tight, "is_parseval": fb.is_parseval},
        "checks": check_results,
        "spectral_fields": {"dual_gramian": _field_summary(gram_field, sc.group, dump_fibers),
                            "zz": _field_summary(zz_field, sc.group, dump_fibers)},
        "summary": {"passed": statuses.count("pass"), "failed": statuses.count("fail"),
                    "skipped": statuses.count("skip"), "ok": "fail" not in statuses},
    }
    if timing:
        doc["timing"] = {"analysis_s": t1 - t0, "total_s": time.perf_counter() - t0}
    return doc


def _route_bounds(sys_g, report, tol) -> dict:
    # full FrameBounds (with A_basic) for each route
    return {
        "oracle": report.frame,
        "dual_gramian": gabor.dual_gramian_bounds(sys_g, tol)[1],
        "zz": gabor.zz_bounds(sys_g, tol)[1],
        "frequency": gabor.frequency_side_bounds(sys_g, tol),
        "riesz": report.riesz.bounds,
    }


def validate_report(doc: dict) -> None:
    jsonschema.validate(doc, load_schema("report"), cls=jsonschema.Draft202012Validator)


def report_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def report_text(doc: dict) -> str:
    lines = []
    d = doc["derived"]
    name = doc["scenario"].get("name") or "scenario"
    lines.append(f"{name}: |G|={d['order']} |Lambda|={d['lambda_order']} |Gamma|={d['gamma_order']} "
                 f"p={d['p']} q={d['q']}")
    lines.append("")
    header = ["bound"] + ["oracle", "gramian", "zz", "freq", "riesz"]
    lines.append("  ".join(f"{h:>14}" for h in header))
    for key in ("A", "B"):
        row = [key] + [f"{doc['bounds'][m][key]:.10g}" for m in BOUND_METHODS]
        lines.append("  ".join(f"{c:>14}" for c in row))
    f = doc["frame"]
    lines.append("")
    lines.append(f"frame={f['is_frame']} tight={f['is_tight']} parseval={f['is_parseval']}")
    lines.append("")
    for name, c in doc["checks"].items():
        r = "" if c.get("residual") is None else f"  residual={c['residual']:.3e}"
        lines.append(f"  {c['status'].upper():<4}  {name:<16}{r}")
    s = doc["summary"]
    lines.append("")
    lines.append(f"{s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped")
    return "\n".join(lines) + "\n"


def emit_report(doc: dict, fmt: str = "json", path: str | None = None) -> str:
    """Render ``doc`` as key-sorted JSON or a text table; write to ``path`` or stdout."""
    if fmt == "json":
        validate_report(doc)
        text = report_json(doc)
    elif fmt == "text":
        text = report_text(doc)
    else:
        raise InvalidInputError(f"unknown format {fmt!r}")
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


# ---------------------------------------------------------------------------
# scan


def scan_rows(group: FiniteAbelianGroup, max_subgroups: int | None = None, seed: int = 0, tol: float = DEFAULT_TOL):
    g = windows.random_window(group, seed)
    lams = enumerate_subgroups(group, limit=max_subgroups)
    gams = enumerate_subgroups(group, in_dual=True, limit=max_subgroups)
    for Lam in lams:
        for Gam in gams:
            sys_g = gabor.gabor_system(g, Lam, Gam, derive_weights(group, Lam, Gam))
            _, fb = gabor.dual_gramian_bounds(sys_g, tol)
            p, q = gabor.zibulski_zeevi_dimensions(Lam, Gam)
            yield {"lambda_order": Lam.order, "gamma_order": Gam.order, "p": p, "q": q,
                   "A": f"{_num(fb.A):.12g}", "B": f"{_num(fb.B):.12g}", "frame": int(fb.is_frame)}


def _parse_group_arg(text: str) -> tuple[int, ...]:
    try:
        factors = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise ConfigError("--group", f"expected comma separated integers, got {text!r}") from None
    if not factors:
        raise ConfigError("--group", "no factors given")
    return factors


# ---------------------------------------------------------------------------
# entry point


def _read_config(path: str) -> ScenarioConfig:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ConfigError("", f"cannot read config: {exc}") from None
    return parse_config(data)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gaborlab", description="Gabor analysis on finite abelian groups")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run every configured check")
    a.add_argument("--config", required=True)
    a.add_argument("--json-out")
    a.add_argument("--tolerance", type=float)
    a.add_argument("--format", choices=("text", "json"), default="text", help="stdout format")
    a.add_argument("--dump-fibers", action="store_true", help="include per-fiber spectral extremes")
    a.add_argument("--timing", action="store_true", help="add wall-clock timings (breaks byte-identity)")

    v = sub.add_parser("verify", help="run selected checks")
    v.add_argument("--config", required=True)
    v.add_argument("--check", nargs="+", required=True, choices=CHECKS, metavar="NAME")
    v.add_argument("--tolerance", type=float)

    d = sub.add_parser("dual", help="print the canonical dual window as JSON")
    d.add_argument("--config", required=True)

    s = sub.add_parser("scan", help="frame bounds for every subgroup pair, as CSV")
    s.add_argument("--group", required=True)
    s.add_argument("--max-subgroups", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--csv-out", required=True)
    return ap


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return _dispatch(args)
    except (ConfigError, InvalidInputError, ResourceLimitError) as exc:
        print(f"gaborlab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"gaborlab: I/O error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GaborlabError as exc:
        print(f"gaborlab: {exc}", file=sys.stderr)
        return EXIT_FAIL


def _dispatch(args) -> int:
    tol = getattr(args, "tolerance", None)
    if tol is not None and not tol > 0:
        raise ConfigError("--tolerance", "must be positive")
    if args.command == "analyze":
        cfg = _read_config(args.config)
        doc = run_scenario(cfg, args.tolerance, dump_fibers=args.dump_fibers, timing=args.timing)
        if args.json_out:
            emit_report(doc, "json", args.json_out)
        emit_report(doc, args.format)
        return EXIT_OK if doc["summary"]["ok"] else EXIT_FAIL
    if args.command == "verify":
        cfg = _read_config(args.config)
        doc = run_scenario(cfg, args.tolerance, checks=args.check)
        emit_report(doc, "text")
        return EXIT_OK if doc["summary"]["ok"] else EXIT_FAIL
    if args.command == "dual":
        cfg = _read_config(args.config)
        sc = materialize(cfg)
        h = gabor.canonical_dual(gabor.gabor_system(sc.window, sc.Lam, sc.Gam), cfg.tolerance)
        json.dump({"re": [_num(v) for v in h.real], "im": [_num(v) for v in h.imag]}, sys.stdout)
        sys.stdout.write("\n")
        return EXIT_OK
    if args.command == "scan":
        factors = _parse_group_arg(args.group)
        G = make_group(factors)
        if args.max_subgroups is not None and args.max_subgroups < 1:
            raise ConfigError("--max-subgroups", "must be at least 1")
        rows = list(scan_rows(G, args.max_subgroups, args.seed))
        with open(args.csv_out, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=["lambda_order", "gamma_order", "p", "q", "A", "B", "frame"])
            w.writeheader()
            w.writerows(rows)
        print(f"wrote {len(rows)} rows to {args.csv_out}")
        return EXIT_OK
    raise InvalidInputError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
