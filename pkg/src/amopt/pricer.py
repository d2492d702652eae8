"""Time-stepping driver: march the LCP sequence and assemble the price surface."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .discretization import Grid, assemble_lcp, assemble_operators, boundary_vector
from .mms import MmsConfig, NonConvergedError, SolveReport, scaled_omega, solve_lcp, y_from_z
from .model import MarketParams, TransformConstants, compute_transform_constants, transformed_payoff
from .mpe import AccelPolicy
from .oracle import verify_lcp
from .splitting import build_point_gs, build_schwarz_two_block

SPLITTINGS = ("gs", "bgs")


def method_label(splitting: str, policy: AccelPolicy) -> str:
    base = {"gs": "GS", "bgs": "BGS"}[splitting]
    prefix = {"none": "", "every": "MPE-", "cycle": "MPECycle-"}[policy.kind]
    return prefix + base


@dataclass
class PriceSurface:
    """Transformed solution u on the full grid plus lazily derived (S, t, V)."""

    x: np.ndarray
    tau: np.ndarray
    u: np.ndarray  # shape (n+1, m+1), rows follow x, columns follow tau
    params: MarketParams
    constants: TransformConstants

    @cached_property
    def asset_values(self) -> np.ndarray:
        return self.params.strike * np.exp(self.x)

    @cached_property
    def times(self) -> np.ndarray:
        return self.params.expiry - 2.0 * self.tau / self.params.sigma**2

    @cached_property
    def values(self) -> np.ndarray:
        scale = np.exp(self.constants.alpha * self.x)[:, None] * np.exp(
            self.constants.beta * self.tau
        )[None, :]
        return self.params.strike * scale * self.u


@dataclass
class RunSummary:
    """Aggregated iteration accounting of one time march."""

    method: str
    per_step: list[SolveReport]
    total_iterations: int
    average_iterations: int
    total_extrapolations: int
    total_wall_time: float
    max_certificate: float


def initial_guess(previous_y: np.ndarray | None, size: int) -> np.ndarray:
    """Zero vector on the first step, the previous step's y afterwards."""
    if previous_y is None:
        return np.zeros(size)
    return np.array(previous_y, dtype=float, copy=True)


def price_american(
    params: MarketParams,
    grid: Grid,
    cfg: MmsConfig = MmsConfig(),
    splitting: str = "gs",
    policy: AccelPolicy = AccelPolicy("none"),
    *,
    seed_from_z: bool = False,
) -> tuple[PriceSurface, RunSummary]:
    """March through all time steps, solving one LCP per step.

    The transformed solution starts from the obstacle at tau = 0 and each
    step solves the LCP for z = u^(j+1) - g^(j+1), warm-starting the
    modulus iteration from the previous step's fixed-point vector (or,
    with ``seed_from_z``, from the vector reconstructed out of the
    previous z).  Every converged step is certified against the plain
    LCP conditions; a step that hits the iteration cap raises
    `NonConvergedError` carrying the step index.
    """
    if splitting not in SPLITTINGS:
        raise ValueError(f"splitting must be one of {SPLITTINGS}")
    c = compute_transform_constants(params)
    if not math.isclose(c.tau_max, grid.tau_max, rel_tol=1e-12):
        raise ValueError("grid was built for different transform constants")
    ops = assemble_operators(grid)
    omega = scaled_omega(ops.A, cfg.omega_scale)
    if splitting == "gs":
        split = build_point_gs(ops.A, omega)
    else:
        split = build_schwarz_two_block(ops.A, omega, grid.i0)
    tag = method_label(splitting, policy)

    x = grid.x_nodes()
    taus = grid.tau_nodes()
    g_of = lambda xx, tt: transformed_payoff(xx, tt, c, params.kind)
    # Obstacle at the interior nodes for every time level, (m+1, n-1).
    g_int = g_of(x[None, 1:-1], taus[:, None])

    u_surface = np.empty((grid.n + 1, grid.m + 1))
    u_surface[0, :] = g_of(grid.a, taus)
    u_surface[-1, :] = g_of(grid.b, taus)
    u = g_int[0].copy()
    u_surface[1:-1, 0] = u

    reports: list[SolveReport] = []
    y_prev: np.ndarray | None = None
    for j in range(grid.m):
        bvec = boundary_vector(grid, g_of, j)
        lcp = assemble_lcp(ops, u, bvec, g_int[j + 1])
        y0 = initial_guess(y_prev, ops.A.n)
        z, y_final, report = solve_lcp(split, cfg, lcp.q, y0, policy, method_tag=tag)
        if not report.converged:
            raise NonConvergedError(
                f"{tag}: step {j} still at residual {report.final_residual:.3e} "
                f"after {report.iterations} iterations",
                report=report,
                step=j,
            )
        report.certificate = verify_lcp(ops.A, lcp.q, z)
        reports.append(report)
        u = z + g_int[j + 1]
        u_surface[1:-1, j + 1] = u
        y_prev = y_from_z(z, ops.A, omega, cfg.eta, lcp.q) if seed_from_z else y_final

    total = sum(r.iterations for r in reports)
    summary = RunSummary(
        method=tag,
        per_step=reports,
        total_iterations=total,
        average_iterations=total // grid.m,
        total_extrapolations=sum(r.extrapolations for r in reports),
        total_wall_time=sum(r.wall_time for r in reports),
        max_certificate=max(r.certificate for r in reports),
    )
    surface = PriceSurface(x=x, tau=taus, u=u_surface, params=params, constants=c)
    return surface, summary
