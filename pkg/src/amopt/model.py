"""Market data and the log/heat-variable transform of the pricing problem.

The Black-Scholes complementarity problem in asset coordinates (S, t) is
mapped onto a heat-equation obstacle problem in (x, tau) through

    S = K exp(x),    t = T - 2 tau / sigma^2,
    V(S, t) = K exp(alpha x + beta tau) u(x, tau),

with h = 2 r / sigma^2, h_delta = 2 (r - delta) / sigma^2,
alpha = -(h_delta - 1) / 2 and beta = -(h_delta - 1)^2 / 4 - h.  The
backward time variable tau runs over [0, sigma^2 T / 2] and measures the
remaining life of the contract, so the expiry payoff becomes the initial
condition u(x, 0) = g(x, 0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

KINDS = ("call", "put")


@dataclass(frozen=True)
class MarketParams:
    """Contract and market inputs; rates are continuously compounded per year."""

    strike: float
    rate: float
    sigma: float
    expiry: float
    dividend: float = 0.0
    kind: str = "put"

    def __post_init__(self):
        if self.strike <= 0.0:
            raise ValueError("strike must be positive")
        if self.sigma <= 0.0:
            raise ValueError("sigma must be positive")
        if self.expiry <= 0.0:
            raise ValueError("expiry must be positive")
        if self.dividend < 0.0:
            raise ValueError("dividend yield must be nonnegative")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")


@dataclass(frozen=True)
class TransformConstants:
    """Dimensionless constants of the heat-variable transform."""

    h: float
    h_delta: float
    alpha: float
    beta: float
    tau_max: float


def compute_transform_constants(p: MarketParams) -> TransformConstants:
    """Transform constants for the given market parameters."""
    s2 = p.sigma * p.sigma
    h = 2.0 * p.rate / s2
    h_delta = 2.0 * (p.rate - p.dividend) / s2
    alpha = -(h_delta - 1.0) / 2.0
    beta = -((h_delta - 1.0) ** 2) / 4.0 - h
    return TransformConstants(
        h=h, h_delta=h_delta, alpha=alpha, beta=beta, tau_max=s2 * p.expiry / 2.0
    )


def payoff(s, strike: float, kind: str):
    """Exercise value G(S) of the option."""
    s = np.asarray(s, dtype=float)
    if kind == "call":
        return np.maximum(s - strike, 0.0)
    return np.maximum(strike - s, 0.0)


def transformed_payoff(x, tau, c: TransformConstants, kind: str):
    """Obstacle g(x, tau): the exercise value expressed in heat variables.

    Nonnegative everywhere.  For a put it vanishes on x >= 0, for a call
    on x <= 0.  Broadcasts over array-valued x and tau.
    """
    x = np.asarray(x, dtype=float)
    tau = np.asarray(tau, dtype=float)
    growth = np.exp(0.25 * tau * ((c.h_delta - 1.0) ** 2 + 4.0 * c.h))
    lo = np.exp(0.5 * x * (c.h_delta - 1.0))
    hi = np.exp(0.5 * x * (c.h_delta + 1.0))
    if kind == "call":
        return growth * np.maximum(hi - lo, 0.0)
    return growth * np.maximum(lo - hi, 0.0)


def recover_option_value(u, x, tau, p: MarketParams, c: TransformConstants):
    """Map a transformed solution back to asset coordinates.

    Returns (S, t, V) with S = K e^x, t = T - 2 tau / sigma^2 and
    V = K e^(alpha x + beta tau) u.
    """
    x = np.asarray(x, dtype=float)
    tau = np.asarray(tau, dtype=float)
    s = p.strike * np.exp(x)
    t = p.expiry - 2.0 * tau / (p.sigma * p.sigma)
    v = p.strike * np.exp(c.alpha * x + c.beta * tau) * np.asarray(u, dtype=float)
    return s, t, v


def heat_coords(s, t, p: MarketParams):
    """Inverse of the coordinate part of `recover_option_value`."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    x = np.log(s / p.strike)
    tau = p.sigma * p.sigma * (p.expiry - t) / 2.0
    return x, tau
