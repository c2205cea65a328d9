"""Continuous model definitions: diffusions with a sticky lower boundary.

A model is a set of coefficient functions (drift, volatility, killing rate)
on a finite interval [l, r], together with a stickiness parameter for the
lower boundary.  The upper boundary r is a killing boundary: it is chosen
large enough that the probability of ever reaching it is negligible for the
horizons of interest (localization).

The built-in short-rate model is a mean-reverting Gaussian diffusion held
sticky at zero, with the killing rate equal to the state itself so that
expectations of the killed process are zero-coupon bond prices.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Callable


class ModelError(ValueError):
    """Invalid model parameters or out-of-domain evaluation."""


class StickinessLimit(enum.Enum):
    """Limit tags for the boundary parameter.

    ABSORBING is the zero-stickiness limit (the process never leaves the
    boundary again); REFLECTING is the infinite-stickiness limit (the
    process spends no time at the boundary).  They are kept as explicit
    tags instead of float sentinels so that the closed-form limit rows of
    the rate matrix can be used without overflow.
    """

    ABSORBING = "absorbing"
    REFLECTING = "reflecting"


Stickiness = float | StickinessLimit


def _normalize_stickiness(rho: Stickiness) -> Stickiness:
    if isinstance(rho, StickinessLimit):
        return rho
    rho = float(rho)
    if rho < 0.0 or math.isnan(rho):
        raise ModelError(f"stickiness must be >= 0, got {rho}")
    if rho == 0.0:
        return StickinessLimit.ABSORBING
    if math.isinf(rho):
        return StickinessLimit.REFLECTING
    return rho


@dataclass(frozen=True)
class DiffusionSpec:
    """A one-dimensional diffusion on [l, r] with a sticky boundary at l.

    Coefficient functions are plain callables of the state; they are never
    differentiated symbolically, and the smoothness needed for second-order
    convergence of the discrete approximation is the caller's
    responsibility.  Instances are immutable and safe to share across
    threads.

    Attributes:
        drift: state drift, units state/time.
        volatility: diffusion coefficient, units state/sqrt(time).
        kill_rate: nonnegative killing rate, units 1/time.
        stickiness: boundary parameter (state/time), or a limit tag.
        left_boundary: the sticky boundary l.
        right_boundary: the (localized) killing boundary r.
        nonsmooth_points: interior states where payoffs may be kinked or
            discontinuous; grid builders can anchor cells around them.
    """

    drift: Callable[[float], float]
    volatility: Callable[[float], float]
    kill_rate: Callable[[float], float]
    stickiness: Stickiness
    left_boundary: float
    right_boundary: float
    nonsmooth_points: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "stickiness", _normalize_stickiness(self.stickiness))
        if not (self.left_boundary < self.right_boundary):
            raise ModelError(
                f"need left_boundary < right_boundary, got "
                f"[{self.left_boundary}, {self.right_boundary}]"
            )
        if not (math.isfinite(self.left_boundary) and math.isfinite(self.right_boundary)):
            raise ModelError("boundaries must be finite after localization")

    @property
    def is_absorbing(self) -> bool:
        return self.stickiness is StickinessLimit.ABSORBING

    @property
    def is_reflecting(self) -> bool:
        return self.stickiness is StickinessLimit.REFLECTING

    @property
    def rho(self) -> float:
        """Finite stickiness value; raises for the limit tags."""
        if isinstance(self.stickiness, StickinessLimit):
            raise ModelError(f"stickiness is the {self.stickiness.value} limit, not a finite value")
        return self.stickiness


def evaluate_coefficients(spec: DiffusionSpec, x: float) -> tuple[float, float, float]:
    """Evaluate (drift, squared volatility, kill rate) at a state x.

    Pure and deterministic; rejects x outside [l, r], nonpositive squared
    volatility and negative kill rates.
    """
    if not (spec.left_boundary <= x <= spec.right_boundary):
        raise ModelError(
            f"x={x} outside domain [{spec.left_boundary}, {spec.right_boundary}]"
        )
    mu = float(spec.drift(x))
    sigma = float(spec.volatility(x))
    k = float(spec.kill_rate(x))
    sigma2 = sigma * sigma
    if sigma2 <= 0.0:
        raise ModelError(f"volatility^2 must be positive, got {sigma2} at x={x}")
    if k < 0.0:
        raise ModelError(f"kill rate must be nonnegative, got {k} at x={x}")
    return mu, sigma2, k


@dataclass(frozen=True)
class StickyOUParams:
    """Parameters of the sticky mean-reverting short-rate model.

    The short rate follows dX = kappa*(theta - X) dt + sigma dB away from
    zero and is sticky at zero with parameter rho; x0 is the initial rate.
    """

    kappa: float
    theta: float
    sigma: float
    rho: Stickiness
    x0: float

    def __post_init__(self) -> None:
        if self.kappa <= 0.0:
            raise ModelError(f"kappa must be positive, got {self.kappa}")
        if self.sigma <= 0.0:
            raise ModelError(f"sigma must be positive, got {self.sigma}")
        object.__setattr__(self, "rho", _normalize_stickiness(self.rho))
        if self.x0 < 0.0:
            raise ModelError(f"x0 must be >= 0, got {self.x0}")


def sticky_ou_spec(params: StickyOUParams, r_localized: float) -> DiffusionSpec:
    """Build the sticky short-rate diffusion on [0, r_localized].

    The killing rate is k(x) = x, so Feynman-Kac expectations of the unit
    payoff are zero-coupon bond prices.  r_localized must exceed theta and
    be large enough that the chance of reaching it is negligible at the
    maturities of interest.
    """
    if r_localized <= 0.0:
        raise ModelError(f"r_localized must be positive, got {r_localized}")
    if r_localized <= params.theta:
        raise ModelError(
            f"r_localized={r_localized} must exceed the long-run level theta={params.theta}"
        )
    kappa, theta, sigma = params.kappa, params.theta, params.sigma
    return DiffusionSpec(
        drift=lambda x: kappa * (theta - x),
        volatility=lambda x: sigma,
        kill_rate=lambda x: x,
        stickiness=params.rho,
        left_boundary=0.0,
        right_boundary=float(r_localized),
    )


# Benchmark parameter sets for the sticky short-rate model, with the
# localization radius used for desk-scale grids.  The radius is set so that
# the breach probability of the upper boundary is negligible (>= 8 standard
# deviations of the stationary law above theta) while keeping the rate
# matrix valid at moderate grid sizes.
MODEL_PRESETS: dict[int, StickyOUParams] = {
    1: StickyOUParams(kappa=0.45, theta=0.10, sigma=0.050, rho=4.0e-3, x0=0.010),
    2: StickyOUParams(kappa=0.75, theta=0.05, sigma=0.015, rho=1.0e-6, x0=0.001),
    3: StickyOUParams(kappa=0.221, theta=0.20, sigma=0.017, rho=5.8e-5, x0=0.000),
}

DEFAULT_LOCALIZATION: dict[int, float] = {1: 1.0, 2: 0.3, 3: 0.45}


def preset(model_id: int, r_localized: float | None = None) -> tuple[StickyOUParams, DiffusionSpec]:
    """Return (params, spec) for one of the built-in parameter sets."""
    if model_id not in MODEL_PRESETS:
        raise ModelError(f"unknown preset {model_id}; available: {sorted(MODEL_PRESETS)}")
    params = MODEL_PRESETS[model_id]
    r = DEFAULT_LOCALIZATION[model_id] if r_localized is None else r_localized
    return params, sticky_ou_spec(params, r)


def read_params_json(path: str) -> tuple[StickyOUParams, float]:
    """Read sticky short-rate parameters from a JSON document.

    The document carries keys {kappa, theta, sigma, rho, x0, r}; numbers
    are parsed as IEEE doubles.  Returns the parameters and the
    localization radius r.
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    missing = [k for k in ("kappa", "theta", "sigma", "rho", "x0", "r") if k not in doc]
    if missing:
        raise ModelError(f"config {path} missing keys: {missing}")
    params = StickyOUParams(
        kappa=float(doc["kappa"]),
        theta=float(doc["theta"]),
        sigma=float(doc["sigma"]),
        rho=float(doc["rho"]),
        x0=float(doc["x0"]),
    )
    return params, float(doc["r"])
