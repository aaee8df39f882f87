"""Relay-placement sweep on the plane.

Nodes 1 and 3 sit at (0, 0) and (1, 0).  For every relay position on the
grid the coherence parameters (beta, gamma) are sampled on a regular grid
in [0, 1]^2; for each sample the rate objective is solved over the DF
inner region and over the cut-set outer region, and the best value per
bound is kept.  The two-way channel without relay is the baseline.
"""

from __future__ import annotations

import csv
import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .allocator import Objective, allocate_rate_objective
from .core import N_PHASES
from .errors import GeometryError, HdtwrcError
from .gaussian import (
    ChannelGains,
    CoherenceParams,
    PlaneNetwork,
    PowerConstraints,
    df_phase_mi,
    ub_phase_mi,
)
from .region import inner_region_df, outer_region, twc_region

P1_POS = (0.0, 0.0)
P3_POS = (1.0, 0.0)

CSV_COLUMNS = (
    "x", "y", "twc", "df", "ub", "df_over_twc", "df_over_ub",
    "beta_df", "gamma_df", "beta_ub", "gamma_ub",
) + tuple(f"tau{l}" for l in range(1, N_PHASES + 1))


@dataclass(frozen=True)
class SweepConfig:
    x_min: float = -0.5
    x_max: float = 1.5
    y_min: float = -1.0
    y_max: float = 1.0
    step: float = 0.1
    bg_step: float = 0.1
    alpha: float = 3.0
    p1: float = 10.0
    p2: float = 10.0
    p3: float = 10.0
    objective: str = "maxmin"
    lam: float | None = None
    workers: int = 1

    def __post_init__(self):
        if not self.step > 0 or not self.bg_step > 0:
            raise ValueError("grid steps must be positive")
        if self.x_max < self.x_min or self.y_max < self.y_min:
            raise ValueError("grid ranges must be nonempty")
        n = round(1.0 / self.bg_step)
        if n < 1 or abs(n * self.bg_step - 1.0) > 1e-9:
            raise ValueError(f"beta/gamma step {self.bg_step} does not divide [0, 1] evenly")
        if not self.alpha > 0:
            raise ValueError("path-loss exponent must be positive")
        if min(self.p1, self.p2, self.p3) < 0:
            raise ValueError("powers must be nonnegative")
        obj = Objective(self.objective)
        if (obj is Objective.WSRMAX) != (self.lam is not None):
            raise ValueError("lam is required for wsrmax and only allowed with it")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def powers(self) -> PowerConstraints:
        return PowerConstraints(self.p1, self.p2, self.p3)

    def xs(self) -> np.ndarray:
        return _axis(self.x_min, self.x_max, self.step)

    def ys(self) -> np.ndarray:
        return _axis(self.y_min, self.y_max, self.step)

    def coherence_grid(self) -> np.ndarray:
        n = round(1.0 / self.bg_step)
        return np.arange(n + 1) / n


def _axis(lo, hi, step):
    n = int(math.floor((hi - lo) / step + 1e-9))
    # round away accumulation noise and normalize -0.0
    return np.round(lo + step * np.arange(n + 1), 10) + 0.0


_CONFIG_TYPES = {f.name: f.type for f in dataclasses.fields(SweepConfig)}


def parse_config(text: str, base: SweepConfig | None = None) -> SweepConfig:
    """Read ``key=value`` lines (``#`` starts a comment) on top of ``base``."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        values.update(_coerce(key, val, lineno))
    return dataclasses.replace(base or SweepConfig(), **values)


def _coerce(key, val, lineno):
    if key == "power":
        p = float(val)
        return {"p1": p, "p2": p, "p3": p}
    if key not in _CONFIG_TYPES:
        raise ValueError(f"config line {lineno}: unknown key {key!r}")
    if key == "objective":
        return {key: val.lower()}
    if key == "workers":
        return {key: int(val)}
    if key == "lam" and val.lower() in ("", "none"):
        return {key: None}
    return {key: float(val)}


def load_config(path) -> SweepConfig:
    return parse_config(Path(path).read_text())


@dataclass(frozen=True)
class GridCell:
    x: float
    y: float
    twc: float = math.nan
    df: float = math.nan
    ub: float = math.nan
    beta_df: float = math.nan
    gamma_df: float = math.nan
    beta_ub: float = math.nan
    gamma_ub: float = math.nan
    tau_df: tuple[float, ...] = (math.nan,) * N_PHASES
    tau_ub: tuple[float, ...] = (math.nan,) * N_PHASES
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def df_over_twc(self) -> float:
        return _ratio(self.df, self.twc)

    @property
    def df_over_ub(self) -> float:
        return _ratio(self.df, self.ub)

    def row(self) -> dict[str, float]:
        out = {
            "x": self.x, "y": self.y, "twc": self.twc, "df": self.df, "ub": self.ub,
            "df_over_twc": self.df_over_twc, "df_over_ub": self.df_over_ub,
            "beta_df": self.beta_df, "gamma_df": self.gamma_df,
            "beta_ub": self.beta_ub, "gamma_ub": self.gamma_ub,
        }
        out.update({f"tau{l}": t for l, t in enumerate(self.tau_df, start=1)})
        return out


def _ratio(a, b):
    if math.isnan(a) or math.isnan(b):
        return math.nan
    if b == 0.0:
        return math.nan if a == 0.0 else math.inf
    return a / b


def twc_baseline(g: ChannelGains, p: PowerConstraints, objective="maxmin", lam=None) -> float:
    """Best objective of the relay-free exchange (phases 1 and 2 only)."""
    mi = df_phase_mi(g, p, CoherenceParams())
    return allocate_rate_objective(twc_region(mi), objective, lam).value


def evaluate_position(p2, cfg: SweepConfig) -> GridCell:
    """Best DF and cut-set values over the (beta, gamma) grid at one relay position."""
    net = PlaneNetwork(tuple(p2), alpha=cfg.alpha, p1=P1_POS, p3=P3_POS)
    g = net.gains()
    p = cfg.powers
    obj = Objective(cfg.objective)
    twc = twc_baseline(g, p, obj, cfg.lam)

    best = {}
    for bound, mi_fn, region_fn in (("df", df_phase_mi, inner_region_df), ("ub", ub_phase_mi, outer_region)):
        top = None
        for beta in cfg.coherence_grid():
            for gamma in cfg.coherence_grid():
                c = CoherenceParams(beta, gamma)
                res = allocate_rate_objective(region_fn(mi_fn(g, p, c)), obj, cfg.lam, beta=c.beta, gamma=c.gamma)
                # strict improvement only: ties keep the first sample
                if top is None or res.value > top.value:
                    top = res
        best[bound] = top

    df, ub = best["df"], best["ub"]
    return GridCell(
        x=net.p2[0], y=net.p2[1],
        twc=twc, df=df.value, ub=ub.value,
        beta_df=df.beta, gamma_df=df.gamma, beta_ub=ub.beta, gamma_ub=ub.gamma,
        tau_df=df.tau.tau, tau_ub=ub.tau.tau,
    )


def _eval_cell(args):
    x, y, cfg = args
    try:
        return evaluate_position((x, y), cfg)
    except HdtwrcError as exc:
        return GridCell(x=x, y=y, error=f"{type(exc).__name__}: {exc}")


@dataclass(frozen=True)
class SweepGrid:
    config: SweepConfig
    xs: tuple[float, ...]
    ys: tuple[float, ...]
    cells: tuple[GridCell, ...] = field(repr=False)

    def __len__(self):
        return len(self.cells)

    def cell(self, ix: int, iy: int) -> GridCell:
        return self.cells[iy * len(self.xs) + ix]

    def errors(self) -> list[GridCell]:
        return [c for c in self.cells if not c.ok]

    def values(self, name: str) -> np.ndarray:
        """(len(ys), len(xs)) array of one numeric column."""
        return np.array([c.row()[name] for c in self.cells]).reshape(len(self.ys), len(self.xs))

    def max_df_over_twc(self) -> float:
        vals = [c.df_over_twc for c in self.cells if c.ok and math.isfinite(c.df_over_twc)]
        return max(vals) if vals else math.nan


def run_sweep(cfg: SweepConfig) -> SweepGrid:
    """Evaluate every grid position, rows along y, columns along x."""
    xs, ys = cfg.xs(), cfg.ys()
    jobs = [(float(x), float(y), cfg) for y in ys for x in xs]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            cells = list(pool.map(_eval_cell, jobs, chunksize=max(1, len(jobs) // (4 * cfg.workers))))
    else:
        cells = [_eval_cell(j) for j in jobs]
    return SweepGrid(cfg, tuple(float(x) for x in xs), tuple(float(y) for y in ys), tuple(cells))


def _fmt(v: float) -> str:
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.6f}"


def write_grid(grid: SweepGrid, destination) -> Path:
    """Write the grid as CSV, one row per cell; OSError if unwritable."""
    if not len(grid):
        raise ValueError("cannot write an empty grid")
    path = Path(destination)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for c in grid.cells:
            row = c.row()
            w.writerow([_fmt(row[k]) for k in CSV_COLUMNS])
    return path


def read_grid(source) -> list[dict[str, float]]:
    with Path(source).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [{k: float(v) for k, v in row.items()} for row in reader]
