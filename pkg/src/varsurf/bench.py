"""Experiment drivers: single-surface analysis, r sweeps and (b, c) sweeps."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import VarsurfError
from .surfaces import (
    CornerQuad, ParametricSurface, make_bilinear, make_hemiellipsoid, make_ruled1, make_ruled2,
)
from .varmin import QuadSettings, VariationalResult, analyze_surface

CSV_HEADER = ["param1", "param2", "t_min", "A0", "A1", "decrease_percent",
              "mu0_sq", "mu1_sq_tmin", "flags"]
SURFACES = ("ruled1", "ruled2", "hemiellipsoid", "bilinear")


class ConfigError(VarsurfError, ValueError):
    pass


class EmptyOutput(VarsurfError):
    pass


@dataclass
class RunConfig:
    surface: Optional[str] = None
    r: Optional[float] = None
    d: float = 1.0
    b: Optional[float] = None
    c: Optional[float] = None
    corners: Optional[list] = None
    start: Optional[float] = None
    stop: Optional[float] = None
    step: Optional[float] = None
    quad_order: Optional[int] = None
    quad_tol: Optional[float] = None
    out: Optional[str] = None
    plot: bool = False
    minimize: str = "mu2"
    workers: int = 1

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - names)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str) -> "RunConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_mapping(data)

    def merged(self, overrides: dict) -> "RunConfig":
        return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def validate(self) -> "RunConfig":
        for name in ("r", "d", "b", "c", "start", "stop", "step", "quad_tol"):
            val = getattr(self, name)
            if val is not None and (isinstance(val, bool) or not isinstance(val, (int, float))):
                raise ConfigError(f"{name} must be a number, got {val!r}")
        for name in ("quad_order", "workers"):
            val = getattr(self, name)
            if val is not None and (isinstance(val, bool) or not isinstance(val, int)):
                raise ConfigError(f"{name} must be an integer, got {val!r}")
        if self.surface is not None and self.surface not in SURFACES:
            raise ConfigError(f"unknown surface {self.surface!r}; choose from {SURFACES}")
        if self.step is not None and not self.step > 0:
            raise ConfigError("step must be positive")
        if self.start is not None and self.stop is not None and self.start > self.stop:
            raise ConfigError("start must not exceed stop")
        if self.minimize not in ("mu2", "area"):
            raise ConfigError("minimize must be 'mu2' or 'area'")
        if self.quad_order is not None and int(self.quad_order) < 1:
            raise ConfigError("quad_order must be >= 1")
        if self.quad_tol is not None and not self.quad_tol > 0:
            raise ConfigError("quad_tol must be positive")
        if int(self.workers) < 1:
            raise ConfigError("workers must be >= 1")
        return self

    def quad(self) -> QuadSettings:
        if self.quad_tol is None:
            return QuadSettings(order=self.quad_order)
        return QuadSettings(order=self.quad_order, area_tol=self.quad_tol, mu_tol=self.quad_tol)

    def build_surface(self) -> ParametricSurface:
        s = self.surface
        if s is None:
            raise ConfigError("no surface given")
        if s in ("ruled1", "ruled2"):
            if self.r is None:
                raise ConfigError(f"{s} needs r")
            make = make_ruled1 if s == "ruled1" else make_ruled2
            return make(float(self.r), float(self.d))
        if s == "hemiellipsoid":
            if self.b is None or self.c is None:
                raise ConfigError("hemiellipsoid needs b and c")
            return make_hemiellipsoid(float(self.b), float(self.c))
        if self.corners is None or len(self.corners) != 4:
            raise ConfigError("bilinear needs four corners [r1, r2, r3bar, r4bar]")
        return make_bilinear(CornerQuad(*self.corners))


@dataclass
class SweepRecord:
    param1: float
    param2: float
    t_min: float
    A0: float
    A1: float
    decrease_percent: float
    mu0_sq: float
    mu1_sq_tmin: float
    flags: list = field(default_factory=list)

    @classmethod
    def from_result(cls, p1: float, p2: float, res: VariationalResult) -> "SweepRecord":
        return cls(p1, p2, res.t_min, res.A0, res.A1, res.decrease_percent,
                   res.mu0_sq, res.mu1_sq_at_tmin, list(res.flags))

    @classmethod
    def failed(cls, p1: float, p2: float, exc: Exception) -> "SweepRecord":
        nan = math.nan
        return cls(p1, p2, nan, nan, nan, nan, nan, nan, [f"error:{type(exc).__name__}"])


def parameter_values(start: float, stop: float, step: float) -> list[float]:
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def _row(task) -> SweepRecord:
    family, p1, p2, quad, method = task
    try:
        if family == "hemiellipsoid":
            s = make_hemiellipsoid(p1, p2)
        else:
            s = (make_ruled1 if family == "ruled1" else make_ruled2)(p1, p2)
        return SweepRecord.from_result(p1, p2, analyze_surface(s, quad, method))
    except VarsurfError as exc:
        return SweepRecord.failed(p1, p2, exc)


def _run_rows(tasks: Sequence, workers: int) -> list[SweepRecord]:
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, tasks))
    else:
        rows = [_row(t) for t in tasks]
    return sorted(rows, key=lambda rec: (rec.param1, rec.param2))


def sweep_ruled(cfg: RunConfig, family: str = "ruled1") -> list[SweepRecord]:
    start = 0.0 if cfg.start is None else cfg.start
    stop = 2.0 if cfg.stop is None else cfg.stop
    step = 0.05 if cfg.step is None else cfg.step
    rs = parameter_values(start, stop, step)
    tasks = [(family, r, float(cfg.d), cfg.quad(), cfg.minimize) for r in rs]
    return _run_rows(tasks, int(cfg.workers))


def sweep_hemi(cfg: RunConfig) -> list[SweepRecord]:
    step = 0.2 if cfg.step is None else cfg.step
    start = step if cfg.start is None or cfg.start <= 0 else cfg.start
    stop = 2.0 if cfg.stop is None else cfg.stop
    if start > stop:
        raise ConfigError("empty (b, c) grid")
    vals = parameter_values(start, stop, step)
    tasks = [("hemiellipsoid", b, c, cfg.quad(), cfg.minimize) for b in vals for c in vals]
    return _run_rows(tasks, int(cfg.workers))


def analyze(cfg: RunConfig) -> tuple[ParametricSurface, VariationalResult]:
    s = cfg.build_surface()
    return s, analyze_surface(s, cfg.quad(), cfg.minimize)


def result_json(s: ParametricSurface, res: VariationalResult) -> str:
    doc = {"surface": s.name, "params": s.params, **res.to_dict()}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# --- output -----------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def csv_text(records: Iterable[SweepRecord]) -> str:
    """CSV with a fixed header, LF endings and 17-significant-digit floats."""
    records = list(records)
    if not records:
        raise EmptyOutput("no records to write")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow([_fmt(rec.param1), _fmt(rec.param2), _fmt(rec.t_min), _fmt(rec.A0),
                    _fmt(rec.A1), _fmt(rec.decrease_percent), _fmt(rec.mu0_sq),
                    _fmt(rec.mu1_sq_tmin), "|".join(rec.flags)])
    return buf.getvalue()


def emit_csv(records: Iterable[SweepRecord], path) -> Path:
    text = csv_text(records)
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write(text)
    return path


def read_csv(path) -> list[SweepRecord]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    out = []
    for row in rows:
        nums = [float(row[k]) for k in CSV_HEADER[:-1]]
        flags = row["flags"].split("|") if row["flags"] else []
        out.append(SweepRecord(*nums, flags=flags))
    return out


_LABELS = {"tmin": "t_min", "decrease": "decrease in area (%)"}


def emit_svg(records: Sequence[SweepRecord], kind: str, path, xlabel: str = "r") -> Path:
    """Line plot (one varying parameter) or heatmap (b, c grid) as SVG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    records = list(records)
    if not records:
        raise EmptyOutput("no records to plot")
    if kind not in _LABELS:
        raise ValueError(f"unknown plot kind {kind!r}")
    values = np.array([r.t_min if kind == "tmin" else r.decrease_percent for r in records])
    p1 = np.array([r.param1 for r in records])
    p2 = np.array([r.param2 for r in records])
    plt.rcParams["svg.hashsalt"] = "varsurf"
    plt.rcParams["svg.fonttype"] = "path"
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    b_vals, c_vals = np.unique(p1), np.unique(p2)
    if len(c_vals) > 1:
        grid = np.full((len(c_vals), len(b_vals)), np.nan)
        for x, y, z in zip(p1, p2, values):
            grid[np.searchsorted(c_vals, y), np.searchsorted(b_vals, x)] = z
        mesh = ax.pcolormesh(b_vals, c_vals, grid, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label=_LABELS[kind])
        ax.set_xlabel("b")
        ax.set_ylabel("c")
    else:
        ax.plot(p1, values, "-", lw=1.5)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(_LABELS[kind])
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
