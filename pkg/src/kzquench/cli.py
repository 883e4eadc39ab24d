"""Configuration-driven runs: schedules, sweeps, noise grids, and fits.

Subcommands
-----------
``schedule``     sample a schedule to ``schedule.csv``
``quench``       one run: ``modes.csv`` + ``runs.csv``
``sweep``        grid over (tau_Q x zeta x W): ``runs.csv`` + per-run mode files
``noise-sweep``  sweep plus per-W optimal quench times (``optimal_tau.csv``)
                 and a fitted exponent report
``fit``          fit a model to an existing ``runs.csv``

Configuration is a sectioned key-value file (INI syntax), overridable by
command-line flags (flags win)::

    [protocol]
    kind = oai            ; linear | nlq | oai | nloai
    g_i = 2.0
    g_f = 0.0
    tau_Q = log:50:3200:7 ; or a comma list: 50,100,200
    zeta = 32             ; fixed value, comma list, or alpha-law "alpha:0.25:1.0"
    r = 1.0
    kz_mode = true

    [noise]
    W = 0.0               ; comma list allowed
    noise_rate_scale = 1.0

    [numerics]
    modes = 2000
    eta = 0.02

    [run]
    out = out
    workers = 1
    samples = 2000
    write_modes = true

Outputs are deterministic: runs appear in input order whatever the worker
count, and floats are serialized with shortest round-trip decimals.  Every
command writes ``manifest.json`` with the resolved configuration and a
sha256 checksum per output file.

Fit reports are written as a flat key-value block (``fit_report.txt``) and
a CSV row (``fit.csv``) with columns ``model, exponent, prefactor,
r_squared, n_points, theory, rel_dev``.  For ``zeta_collapse`` the exponent
column holds the decay exponent y and the prefactor column the amplitude x;
``theory``/``rel_dev`` stay empty where no predicted exponent applies.

Exit codes: 0 success, 1 run failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import hashlib
import json
import math
import sys
import time
from dataclasses import dataclass
from multiprocessing import get_context
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import (
    RUNS_COLUMNS,
    StepPolicy,
    defect_density,
    runs_row,
    write_modes_csv,
)
from .protocols import (
    ISING_CHAIN,
    ScheduleError,
    make_linear,
    make_nlq,
    make_nloai,
    make_oai,
    schedule_table,
    SCHEDULE_COLUMNS,
)
from . import scaling

__all__ = ["RunConfig", "ConfigError", "main", "cmd_schedule", "cmd_sweep", "cmd_noise_sweep", "cmd_fit", "load_config"]

KINDS = ("linear", "nlq", "oai", "nloai")

# desk-scale default grids
DEFAULT_TAU_KZ = "log:50:3200:7"
DEFAULT_W_GRID = "0.004,0.008,0.012,0.016,0.02"


class ConfigError(ValueError):
    """Invalid run configuration (exit code 2)."""


def _parse_grid(text: str) -> list[float]:
    """Comma list '50,100' or log-spaced range 'log:start:stop:count'."""
    text = text.strip()
    if text.startswith("log:"):
        parts = text.split(":")
        if len(parts) != 4:
            raise ConfigError(f"bad log range {text!r}, expected log:start:stop:count")
        start, stop, count = float(parts[1]), float(parts[2]), int(parts[3])
        if start <= 0 or stop <= start:
            raise ConfigError(f"bad log range {text!r}: need 0 < start < stop")
        decades = math.log10(stop / start)
        if count < max(2, 2 * decades):
            raise ConfigError(
                f"log range {text!r} too sparse: need >= 2 points per decade ({decades:.2f} decades)"
            )
        return [float(x) for x in np.geomspace(start, stop, count)]
    try:
        values = [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}: {exc}") from None
    if not values:
        raise ConfigError(f"empty grid {text!r}")
    return values


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run configuration (validated before any run starts)."""

    kind: str = "oai"
    g_i: float = 2.0
    g_f: float = 0.0
    tau_Q: tuple[float, ...] = (200.0,)
    zeta: tuple[float, ...] | None = (32.0,)   # None: alpha-law or linear/nlq
    alpha: float | None = None
    zeta_c: float = 1.0
    r: float = 1.0
    kz_mode: bool = True
    W: tuple[float, ...] = (0.0,)
    noise_rate_scale: float = 1.0
    N: int = 2000
    eta: float = 0.02
    out: str = "out"
    workers: int = 1
    samples: int = 2000
    write_modes: bool = True

    def zeta_for(self, tau: float, zeta_fixed: float | None) -> float | None:
        if self.kind in ("linear", "nlq"):
            return None
        if self.alpha is not None:
            return self.zeta_c * tau**self.alpha
        return zeta_fixed

    def protocol_for(self, tau: float, zeta_fixed: float | None):
        zeta = self.zeta_for(tau, zeta_fixed)
        if self.kind == "linear":
            return make_linear(tau, self.g_i, self.g_f, ISING_CHAIN)
        if self.kind == "nlq":
            return make_nlq(tau, self.r, self.g_i, self.g_f, ISING_CHAIN)
        if self.kind == "oai":
            return make_oai(tau, zeta, self.g_i, self.g_f, ISING_CHAIN, kz_mode=self.kz_mode)
        return make_nloai(tau, zeta, self.r, self.g_i, self.g_f, ISING_CHAIN, kz_mode=self.kz_mode)

    def tasks(self) -> list[tuple[float, float | None, float]]:
        """(tau_Q, zeta, W) tuples in deterministic input order."""
        zetas = self.zeta if (self.zeta and self.alpha is None and self.kind in ("oai", "nloai")) else (None,)
        return [(tau, z, w) for w in self.W for z in zetas for tau in self.tau_Q]

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown protocol kind {self.kind!r}, expected one of {KINDS}")
        if not self.tau_Q:
            raise ConfigError("empty tau_Q grid")
        if not self.W:
            raise ConfigError("empty W grid")
        if any(w < 0 for w in self.W):
            raise ConfigError("noise strengths must be non-negative")
        if self.N % 2 != 0 or self.N < 4:
            raise ConfigError(f"modes must be even and >= 4, got {self.N}")
        if not self.eta > 0:
            raise ConfigError(f"eta must be positive, got {self.eta}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.samples < 2:
            raise ConfigError(f"samples must be >= 2, got {self.samples}")
        if self.kind in ("oai", "nloai") and self.alpha is None and not self.zeta:
            raise ConfigError(f"{self.kind} runs need a zeta value, list, or alpha-law")
        # construct every protocol once so bad parameters fail before any run
        for tau, zeta_fixed, _ in self.tasks():
            try:
                self.protocol_for(tau, zeta_fixed)
            except (ScheduleError, ValueError) as exc:
                raise ConfigError(str(exc)) from None
        out = Path(self.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
            probe = out / ".write_probe"
            probe.write_text("")
            probe.unlink()
        except OSError as exc:
            raise ConfigError(f"output directory {self.out!r} not writable: {exc}") from None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind, "g_i": self.g_i, "g_f": self.g_f,
            "tau_Q": list(self.tau_Q),
            "zeta": None if self.zeta is None else list(self.zeta),
            "alpha": self.alpha, "zeta_c": self.zeta_c, "r": self.r,
            "kz_mode": self.kz_mode, "W": list(self.W),
            "noise_rate_scale": self.noise_rate_scale, "N": self.N,
            "eta": self.eta, "out": self.out, "workers": self.workers,
            "samples": self.samples, "write_modes": self.write_modes,
        }


def load_config(path: str | None, overrides: dict, default_w: str = "0.0") -> RunConfig:
    """Read the INI config (if any) and apply flag overrides (flags win)."""
    sections = {"protocol": {}, "noise": {}, "numerics": {}, "run": {}}
    if path is not None:
        parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
        read = parser.read(path)
        if not read:
            raise ConfigError(f"config file {path!r} not found")
        for name in parser.sections():
            if name not in sections:
                raise ConfigError(f"unknown config section [{name}]")
            sections[name] = dict(parser.items(name))

    def pick(section: str, key: str, default):
        if key in overrides and overrides[key] is not None:
            return overrides[key]
        return sections[section].get(key, default)

    def as_bool(value, key: str) -> bool:
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in ("1", "true", "yes", "on"):
            return True
        if text in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"bad boolean for {key}: {value!r}")

    kind = str(pick("protocol", "kind", "oai")).lower()
    zeta_raw = pick("protocol", "zeta", None)
    zeta: tuple[float, ...] | None = None
    alpha = None
    zeta_c = 1.0
    if zeta_raw is not None and str(zeta_raw).strip() != "":
        text = str(zeta_raw).strip()
        if text.startswith("alpha:"):
            parts = text.split(":")
            if len(parts) not in (2, 3):
                raise ConfigError(f"bad zeta policy {text!r}, expected alpha:<exponent>[:<prefactor>]")
            alpha = float(parts[1])
            zeta_c = float(parts[2]) if len(parts) == 3 else 1.0
            if alpha < 0 or zeta_c <= 0:
                raise ConfigError(f"bad alpha-law {text!r}: need alpha >= 0 and prefactor > 0")
        else:
            zeta = tuple(_parse_grid(text))
    elif kind in ("oai", "nloai"):
        zeta = (32.0,)

    try:
        cfg = RunConfig(
            kind=kind,
            g_i=float(pick("protocol", "g_i", 2.0)),
            g_f=float(pick("protocol", "g_f", 0.0)),
            tau_Q=tuple(_parse_grid(str(pick("protocol", "tau_q", DEFAULT_TAU_KZ)))),
            zeta=zeta,
            alpha=alpha,
            zeta_c=zeta_c,
            r=float(pick("protocol", "r", 1.0)),
            kz_mode=as_bool(pick("protocol", "kz_mode", True), "kz_mode"),
            W=tuple(_parse_grid(str(pick("noise", "w", default_w)))),
            noise_rate_scale=float(pick("noise", "noise_rate_scale", 1.0)),
            N=int(pick("numerics", "modes", 2000)),
            eta=float(pick("numerics", "eta", 0.02)),
            out=str(pick("run", "out", "out")),
            workers=int(pick("run", "workers", 1)),
            samples=int(pick("run", "samples", 2000)),
            write_modes=as_bool(pick("run", "write_modes", True), "write_modes"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


# -- run execution -------------------------------------------------------------

def _run_one(args):
    """Worker entry point: one (tau, zeta, W) run. Returns (ok, payload, seconds)."""
    cfg, tau, zeta_fixed, W = args
    start = time.perf_counter()
    try:
        protocol = cfg.protocol_for(tau, zeta_fixed)
        result = defect_density(
            protocol, N=cfg.N, W=W,
            policy=StepPolicy(eta=cfg.eta),
            noise_rate_scale=cfg.noise_rate_scale,
        )
        return True, result, time.perf_counter() - start
    except Exception as exc:  # per-run failures become status rows
        return False, f"{type(exc).__name__}: {exc}", time.perf_counter() - start


def _run_tasks(cfg: RunConfig):
    tasks = [(cfg, tau, z, w) for tau, z, w in cfg.tasks()]
    if cfg.workers == 1 or len(tasks) == 1:
        return [_run_one(t) for t in tasks]
    # fork workers compute independently; results assembled in input order
    with get_context("fork").Pool(processes=min(cfg.workers, len(tasks))) as pool:
        return pool.map(_run_one, tasks)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(out: Path, command: str, cfg_dict: dict, files: list[Path],
                    timings: dict, name: str = "manifest.json") -> Path:
    manifest = {
        "tool": "kzquench",
        "version": __version__,
        "command": command,
        "config": cfg_dict,
        "files": {f.name: _sha256(f) for f in files},
        "timings": timings,
    }
    path = out / name
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _csv_writer(fh):
    return csv.writer(fh, lineterminator="\n")


def _write_runs_csv(path: Path, rows: list[list[str]]) -> None:
    with open(path, "w", newline="\n") as fh:
        writer = _csv_writer(fh)
        writer.writerow(RUNS_COLUMNS + ("status",))
        writer.writerows(rows)


def _sanitize(message: str) -> str:
    return message.replace(",", ";").replace("\n", " ")


def cmd_schedule(cfg: RunConfig) -> int:
    """Sample each configured schedule; one CSV per (tau_Q, zeta) pair."""
    out = Path(cfg.out)
    started = time.perf_counter()
    files = []
    pairs = [(tau, z) for tau, z, w in cfg.tasks() if w == cfg.W[0]]
    for idx, (tau, zeta_fixed) in enumerate(pairs):
        protocol = cfg.protocol_for(tau, zeta_fixed)
        table = schedule_table(protocol, cfg.samples)
        name = "schedule.csv" if len(pairs) == 1 else f"schedule_{idx:04d}.csv"
        path = out / name
        with open(path, "w", newline="\n") as fh:
            writer = _csv_writer(fh)
            writer.writerow(SCHEDULE_COLUMNS)
            for row in table:
                writer.writerow([repr(float(x)) for x in row])
        files.append(path)
    _write_manifest(out, "schedule", cfg.as_dict(), files,
                    {"total_s": time.perf_counter() - started})
    return 0


def _sweep_outputs(cfg: RunConfig, single: bool = False):
    """Shared driver for quench/sweep: run the grid and write CSVs."""
    out = Path(cfg.out)
    started = time.perf_counter()
    outcomes = _run_tasks(cfg)
    rows = []
    files = []
    failures = 0
    results = []
    for idx, ((tau, zeta_fixed, W), (ok, payload, seconds)) in enumerate(zip(cfg.tasks(), outcomes)):
        if ok:
            results.append(payload)
            rows.append(runs_row(payload, alpha=cfg.alpha) + ["ok"])
            if cfg.write_modes:
                name = "modes.csv" if single else f"modes_{idx:04d}.csv"
                path = out / name
                write_modes_csv(payload, path)
                files.append(path)
        else:
            failures += 1
            results.append(None)
            zeta = cfg.zeta_for(tau, zeta_fixed)
            rows.append([
                cfg.kind, repr(float(tau)),
                "" if zeta is None else repr(float(zeta)),
                "" if cfg.alpha is None else repr(float(cfg.alpha)),
                repr(float(cfg.r)), repr(float(W)), str(cfg.N),
                repr(float(cfg.g_i)), repr(float(cfg.g_f)),
                "", "", repr(float(cfg.eta)),
                f"error: {_sanitize(payload)}",
            ])
    runs_path = out / "runs.csv"
    _write_runs_csv(runs_path, rows)
    files.insert(0, runs_path)
    timings = {
        "total_s": time.perf_counter() - started,
        "per_run_s": [seconds for (_, _, seconds) in outcomes],
    }
    return results, rows, files, timings, failures


def cmd_quench(cfg: RunConfig) -> int:
    """Single run; requires exactly one (tau_Q, zeta, W) tuple."""
    if len(cfg.tasks()) != 1:
        raise ConfigError("quench needs exactly one tau_Q, zeta and W value")
    results, _, files, timings, failures = _sweep_outputs(cfg, single=True)
    _write_manifest(Path(cfg.out), "quench", cfg.as_dict(), files, timings)
    if failures == 0:
        print(f"n = {results[0].n!r}")
    return 1 if failures else 0


def cmd_sweep(cfg: RunConfig) -> int:
    """Grid sweep over (tau_Q x zeta x W); rows in input order."""
    _, _, files, timings, failures = _sweep_outputs(cfg)
    _write_manifest(Path(cfg.out), "sweep", cfg.as_dict(), files, timings)
    return 1 if failures else 0


OPTIMAL_TAU_COLUMNS = ("W", "tau_tilde", "n_min", "status")


def cmd_noise_sweep(cfg: RunConfig) -> int:
    """Noise grid plus per-W optimal quench times and an exponent fit."""
    if all(w == 0 for w in cfg.W):
        raise ConfigError("noise-sweep needs at least one W > 0")
    results, _, files, timings, failures = _sweep_outputs(cfg)
    out = Path(cfg.out)
    opt_rows = []
    opt_points = []
    flagged = 0
    for W in cfg.W:
        curve = [
            (task[0], res.n)
            for task, res in zip(cfg.tasks(), results)
            if res is not None and task[2] == W
        ]
        try:
            tau_tilde = scaling.optimal_tau(curve)
        except scaling.NoMinimumError as exc:
            flagged += 1
            opt_rows.append([repr(float(W)), "", "", f"error: {_sanitize(str(exc))}"])
            continue
        n_min = min(n for _, n in curve)
        opt_rows.append([repr(float(W)), repr(tau_tilde), repr(n_min), "ok"])
        opt_points.append((W, tau_tilde))
    opt_path = out / "optimal_tau.csv"
    with open(opt_path, "w", newline="\n") as fh:
        writer = _csv_writer(fh)
        writer.writerow(OPTIMAL_TAU_COLUMNS)
        writer.writerows(opt_rows)
    files.append(opt_path)
    if len(opt_points) >= 3:
        fit = scaling.fit_power_law(opt_points)
        theory = _theory_s(cfg)
        fit_paths = _write_fit_report(out, "akz_optimal", -fit.exponent, fit.prefactor,
                                      fit.r_squared, fit.n_points, theory)
        files.extend(fit_paths)
    _write_manifest(out, "noise-sweep", cfg.as_dict(), files, timings)
    return 1 if (failures or flagged) else 0


def _theory_s(cfg: RunConfig) -> float:
    """Predicted optimal-quench-time exponent for the configured protocol."""
    exps = scaling.theory_exponents(cfg.alpha if cfg.alpha is not None else 0.0, max(cfg.r, 1.0))
    if cfg.kind == "linear":
        return exps["s_lq"]
    if cfg.kind in ("nlq", "nloai"):
        return exps["s_nloai"]
    return exps["s_oai"]


FIT_COLUMNS = ("model", "exponent", "prefactor", "r_squared", "n_points", "theory", "rel_dev")


def _write_fit_report(out: Path, model: str, exponent: float, prefactor: float,
                      r_squared: float, n_points: int, theory: float | None) -> list[Path]:
    rel_dev = None if theory is None else abs(abs(exponent) - abs(theory)) / abs(theory)
    lines = [
        f"model = {model}",
        f"exponent = {exponent!r}",
        f"prefactor = {prefactor!r}",
        f"r_squared = {r_squared!r}",
        f"n_points = {n_points}",
    ]
    if theory is not None:
        lines.append(f"theory = {theory!r}")
        lines.append(f"rel_dev = {rel_dev!r}")
    text = "\n".join(lines) + "\n"
    print(text, end="")
    txt_path = out / "fit_report.txt"
    txt_path.write_text(text)
    csv_path = out / "fit.csv"
    with open(csv_path, "w", newline="\n") as fh:
        writer = _csv_writer(fh)
        writer.writerow(FIT_COLUMNS)
        writer.writerow([
            model, repr(float(exponent)), repr(float(prefactor)),
            repr(float(r_squared)), str(n_points),
            "" if theory is None else repr(float(theory)),
            "" if rel_dev is None else repr(float(rel_dev)),
        ])
    return [txt_path, csv_path]


def _read_runs_csv(path: Path) -> list[dict]:
    if not path.exists():
        raise ConfigError(f"runs file {path} not found")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        needed = set(RUNS_COLUMNS)
        have = set(reader.fieldnames or [])
        if not needed.issubset(have):
            raise ConfigError(
                f"runs file {path} schema mismatch: missing columns {sorted(needed - have)}"
            )
        rows = [row for row in reader if (row.get("status") or "ok") == "ok"]
    if not rows:
        raise ConfigError(f"runs file {path} has no successful rows")
    return rows


def cmd_fit(runs_path: Path, model: str, out: Path) -> int:
    """Fit ``model`` in {kz, zeta_collapse, akz_optimal, nlkz} to a runs.csv."""
    rows = _read_runs_csv(runs_path)
    out.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    if model in ("kz", "nlkz"):
        pts = [(float(r["tau_Q"]), float(r["n"])) for r in rows]
        fit = scaling.fit_power_law(pts)
        if model == "kz":
            theory = -scaling.theory_exponents(0.0, 1.0)["beta_kz"]
        else:
            r_val = float(rows[0]["r"])
            theory = -scaling.theory_exponents(0.0, r_val)["beta_nlkz"]
        files = _write_fit_report(out, model, fit.exponent, fit.prefactor,
                                  fit.r_squared, fit.n_points, theory)
    elif model == "zeta_collapse":
        triplets = [(float(r["tau_Q"]), float(r["zeta"]), float(r["n"])) for r in rows if r["zeta"]]
        if not triplets:
            raise ConfigError("zeta_collapse needs rows with a zeta column")
        col = scaling.fit_zeta_collapse(triplets)
        files = _write_fit_report(out, model, col.y, col.x, col.fit.r_squared,
                                  col.fit.n_points, None)
    elif model == "akz_optimal":
        by_w: dict[float, list[tuple[float, float]]] = {}
        for r in rows:
            by_w.setdefault(float(r["W"]), []).append((float(r["tau_Q"]), float(r["n"])))
        pts = []
        for W in sorted(by_w):
            if W == 0:
                continue
            pts.append((W, scaling.optimal_tau(by_w[W])))
        if len(pts) < 3:
            raise ConfigError("akz_optimal needs at least 3 noise strengths")
        fit = scaling.fit_power_law(pts)
        first = rows[0]
        kind = first["protocol"]
        alpha = float(first["alpha"]) if first["alpha"] else 0.0
        r_val = float(first["r"]) if first["r"] else 1.0
        exps = scaling.theory_exponents(alpha, max(r_val, 1.0))
        theory = {"linear": exps["s_lq"], "nlq": exps["s_nloai"], "nloai": exps["s_nloai"]}.get(
            kind, exps["s_oai"]
        )
        files = _write_fit_report(out, model, -fit.exponent, fit.prefactor,
                                  fit.r_squared, fit.n_points, theory)
    else:
        raise ConfigError(f"unknown fit model {model!r}")
    # separate name so fitting into a sweep directory keeps the sweep manifest
    _write_manifest(out, "fit", {"runs": str(runs_path), "model": model}, files,
                    {"total_s": time.perf_counter() - started}, name="fit_manifest.json")
    return 0


# -- argument parsing ----------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kzquench",
        description="Quench schedules, defect-density sweeps and scaling fits "
                    "for the transverse Ising chain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="sectioned key-value config file")
        p.add_argument("--out", help="output directory")
        p.add_argument("--workers", type=int, help="parallel worker count")
        p.add_argument("--eta", type=float, help="integrator step factor")
        p.add_argument("--modes", type=int, help="chain size N (N/2 momentum modes)")
        p.add_argument("--kind", choices=KINDS)
        p.add_argument("--g-i", dest="g_i", type=float)
        p.add_argument("--g-f", dest="g_f", type=float)
        p.add_argument("--tau-q", dest="tau_q", help="comma list or log:start:stop:count")
        p.add_argument("--zeta", help="value, comma list, or alpha:<exp>[:<prefactor>]")
        p.add_argument("--r", type=float, help="nonlinearity exponent")
        p.add_argument("--w", dest="w", help="noise strengths (comma list)")
        p.add_argument("--samples", type=int, help="schedule sample count")
        p.add_argument("--no-kz-mode", dest="kz_mode", action="store_false", default=None,
                       help="allow zeta >= tau_Q schedules")
        p.add_argument("--no-modes-csv", dest="write_modes", action="store_false", default=None,
                       help="skip per-run mode files")

    for name in ("schedule", "quench", "sweep", "noise-sweep"):
        add_common(sub.add_parser(name))

    fit = sub.add_parser("fit")
    fit.add_argument("runs", help="path to a runs.csv")
    fit.add_argument("--model", required=True,
                     choices=("kz", "zeta_collapse", "akz_optimal", "nlkz"))
    fit.add_argument("--out", default=".", help="directory for fit outputs")
    return parser


def _overrides_from_args(args: argparse.Namespace) -> dict:
    mapping = {
        "out": args.out, "workers": args.workers, "eta": args.eta,
        "modes": args.modes, "kind": args.kind, "g_i": args.g_i,
        "g_f": args.g_f, "tau_q": args.tau_q, "zeta": args.zeta,
        "r": args.r, "w": args.w, "samples": args.samples,
        "kz_mode": args.kz_mode, "write_modes": args.write_modes,
    }
    return {k: v for k, v in mapping.items() if v is not None}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "fit":
            return cmd_fit(Path(args.runs), args.model, Path(args.out))
        default_w = DEFAULT_W_GRID if args.command == "noise-sweep" else "0.0"
        cfg = load_config(args.config, _overrides_from_args(args), default_w=default_w)
        cfg.validate()
        if args.command == "schedule":
            return cmd_schedule(cfg)
        if args.command == "quench":
            return cmd_quench(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        return cmd_noise_sweep(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (scaling.FitDomainError, scaling.NoMinimumError) as exc:
        print(f"fit error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
