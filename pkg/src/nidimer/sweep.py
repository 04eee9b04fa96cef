"""Temperature / field sweeps and entanglement threshold location."""
import math
from dataclasses import dataclass, field

import numpy as np

from .measures import evaluate, negativity_closed
from .model import ModelParams, thermal_state_closed, thermal_state_numeric

ALL_MEASURES = ("negativity", "min", "coherence")
DEFAULT_THRESHOLD = 1e-8


class NeverEntangledError(ValueError):
    """Negativity stays at or below the threshold over the whole scan."""


@dataclass
class SweepConfig:
    t_min: float = 5.0
    t_max: float = 600.0
    t_steps: int = 120
    b_min: float = 0.0
    b_max: float = 450.0
    b_steps: int = 46
    fixed_values: list = field(default_factory=list)
    measures: tuple = ALL_MEASURES

    def validate(self, t_axis=True, b_axis=True):
        if t_axis:
            if not self.t_min > 0:
                raise ValueError(f"t_min must be > 0, got {self.t_min}")
            if self.t_steps < 2:
                raise ValueError(f"t_steps must be >= 2, got {self.t_steps}")
            if not self.t_max > self.t_min:
                raise ValueError("t_max must exceed t_min")
        if b_axis:
            if self.b_steps < 2:
                raise ValueError(f"b_steps must be >= 2, got {self.b_steps}")
            if not self.b_max >= self.b_min:
                raise ValueError("b_max must be >= b_min")
        unknown = set(self.measures) - set(ALL_MEASURES)
        if unknown:
            raise ValueError(f"unknown measures: {sorted(unknown)}")
        return self

    def t_grid(self):
        return np.linspace(self.t_min, self.t_max, self.t_steps)

    def b_grid(self):
        return np.linspace(self.b_min, self.b_max, self.b_steps)


@dataclass(frozen=True)
class SweepRecord:
    t: float
    b: float
    negativity: float
    min_value: float
    coherence_l1: float


def thermal_state(params, b, t, oracle=False):
    fn = thermal_state_numeric if oracle else thermal_state_closed
    return fn(params, b, t)


def measure_point(params: ModelParams, b, t, measures=ALL_MEASURES, oracle=False) -> SweepRecord:
    res = evaluate(thermal_state(params, b, t, oracle), measures)
    return SweepRecord(float(t), float(b), res.negativity, res.min_value, res.coherence_l1)


def sweep_temperature(params: ModelParams, b_values, cfg: SweepConfig, oracle=False):
    """One record per (b, t), b outer, t on the uniform grid of ``cfg``."""
    cfg.validate(b_axis=False)
    ts = cfg.t_grid()
    return [measure_point(params, b, t, cfg.measures, oracle) for b in b_values for t in ts]


def sweep_field(params: ModelParams, t_values, cfg: SweepConfig, oracle=False):
    cfg.validate(t_axis=False)
    for t in t_values:
        if not t > 0:
            raise ValueError(f"temperature must be > 0 K, got {t}")
    bs = cfg.b_grid()
    return [measure_point(params, b, t, cfg.measures, oracle) for t in t_values for b in bs]


def density_grid(params: ModelParams, cfg: SweepConfig, oracle=False):
    """Full t x b grid, t outer and b inner."""
    cfg.validate()
    bs = cfg.b_grid()
    return [
        measure_point(params, b, t, cfg.measures, oracle)
        for t in cfg.t_grid() for b in bs
    ]


def _last_crossing(f, lo, hi, coarse_step, resolution, threshold):
    # Plateau-then-drop profiles defeat plain bisection, so scan the whole
    # range first and bracket the last point where f exceeds the threshold.
    n = max(1, int(math.ceil((hi - lo) / coarse_step)))
    xs = np.linspace(lo, hi, n + 1)
    above = [f(x) > threshold for x in xs]
    if not any(above):
        raise NeverEntangledError(
            f"negativity <= {threshold:g} everywhere on [{lo:g}, {hi:g}]"
        )
    k = max(i for i, a in enumerate(above) if a)
    if k == len(xs) - 1:
        raise ValueError(f"negativity still above {threshold:g} at the scan limit {hi:g}")
    a, b = float(xs[k]), float(xs[k + 1])
    while b - a > resolution:
        mid = 0.5 * (a + b)
        if f(mid) > threshold:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def find_vanishing_temperature(
    params: ModelParams,
    b: float = 0.0,
    threshold: float = DEFAULT_THRESHOLD,
    t_hi: float = 1000.0,
    t_lo: float = 5.0,
    coarse_step: float = 10.0,
    resolution: float = 0.1,
) -> float:
    """Temperature above which the negativity at field ``b`` stays <= threshold.

    The bisection bracket is shrunk to ``resolution / 2`` so that
    N(T* - resolution) > threshold >= N(T* + resolution).
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    return _last_crossing(
        lambda t: negativity_closed(thermal_state_closed(params, b, t)),
        t_lo, t_hi, coarse_step, resolution / 2, threshold,
    )


def find_critical_field(
    params: ModelParams,
    t: float = 5.0,
    threshold: float = DEFAULT_THRESHOLD,
    b_hi: float = 1000.0,
    b_lo: float = 0.0,
    coarse_step: float = 5.0,
    resolution: float = 0.01,
) -> float:
    """Largest field at which the negativity at temperature ``t`` exceeds threshold."""
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    if not t > 0:
        raise ValueError(f"temperature must be > 0 K, got {t}")
    return _last_crossing(
        lambda b: negativity_closed(thermal_state_closed(params, b, t)),
        b_lo, b_hi, coarse_step, resolution / 2, threshold,
    )
