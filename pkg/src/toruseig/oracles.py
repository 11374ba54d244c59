"""Independent verification solvers for the separated poloidal equation.

Two methods that share no machinery with the Fourier recursion:

* Classical fixed-step fourth-order Runge-Kutta shooting.  Parity pins the
  launch at the inner equator theta = -pi/2 (a fixed point of the
  theta -> pi - theta reflection): even states launch with psi = 1,
  psi' = 0, odd with psi = 0, psi' = 1.  Integrating forward to pi/2 and
  backward to -3pi/2 reaches the other fixed point from both sides; an
  eigenvalue makes psi' (even) or psi (odd) vanish there on both paths.

* A flux-form central finite difference of the self-adjoint form

      -d/dtheta[(1 + alpha sin) psi'] + m^2 alpha^2/(1 + alpha sin) psi
          = beta (1 + alpha sin) psi

  on a uniform periodic grid.  A diagonal similarity by the square root of
  the weight makes the discrete operator exactly symmetric, so eigenvalues
  are guaranteed real; each run is paired with a half-resolution run and
  Richardson-extrapolated, which removes the leading h^2 error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import cos, pi, sin
from typing import Sequence

import numpy as np

from .geometry import SpectralPoint
from .recursion import Parity, _check_parity

FD_GRID_CAP = 2048

__all__ = [
    "OracleConfig",
    "ShootingState",
    "OracleError",
    "BracketError",
    "rk_mismatch",
    "rk_find_eigenvalue",
    "rk_sample",
    "fd_spectrum",
]


class OracleError(RuntimeError):
    pass


class BracketError(OracleError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    """Shared oracle knobs; defaults favor determinism over speed."""

    rk_step_count: int = 4096       # fixed RK4 steps per half-loop (pi interval)
    fd_grid_size: int = 1024
    matching_tolerance: float = 1e-10

    def __post_init__(self) -> None:
        if self.rk_step_count < 100:
            raise ValueError(f"rk_step_count must be >= 100, got {self.rk_step_count}")
        if self.fd_grid_size < 64 or self.fd_grid_size % 2:
            raise ValueError(f"fd_grid_size must be even and >= 64, got {self.fd_grid_size}")
        if self.fd_grid_size > FD_GRID_CAP:
            raise ValueError(f"fd_grid_size is capped at {FD_GRID_CAP}")
        if not (self.matching_tolerance > 0):
            raise ValueError("matching_tolerance must be positive")


@dataclass(frozen=True)
class ShootingState:
    theta: float
    psi: float
    dpsi: float


def _integrate(alpha: float, m: int, beta: float, state: ShootingState,
               theta_end: float, steps: int) -> ShootingState:
    """Fixed-step RK4 from state.theta to theta_end."""
    t = state.theta
    y0, y1 = state.psi, state.dpsi
    h = (theta_end - t) / steps
    ma2 = m * m * alpha * alpha
    for _ in range(steps):
        w = 1.0 + alpha * sin(t)
        k1a = y1
        k1b = -alpha * cos(t) / w * y1 + (ma2 / (w * w) - beta) * y0
        tm = t + 0.5 * h
        w = 1.0 + alpha * sin(tm)
        u0 = y0 + 0.5 * h * k1a
        u1 = y1 + 0.5 * h * k1b
        k2a = u1
        k2b = -alpha * cos(tm) / w * u1 + (ma2 / (w * w) - beta) * u0
        u0 = y0 + 0.5 * h * k2a
        u1 = y1 + 0.5 * h * k2b
        k3a = u1
        k3b = -alpha * cos(tm) / w * u1 + (ma2 / (w * w) - beta) * u0
        te = t + h
        w = 1.0 + alpha * sin(te)
        u0 = y0 + h * k3a
        u1 = y1 + h * k3b
        k4a = u1
        k4b = -alpha * cos(te) / w * u1 + (ma2 / (w * w) - beta) * u0
        y0 += h * (k1a + 2.0 * (k2a + k3a) + k4a) / 6.0
        y1 += h * (k1b + 2.0 * (k2b + k3b) + k4b) / 6.0
        t = te
    if not (math.isfinite(y0) and math.isfinite(y1)):
        raise OracleError(
            f"integration diverged at beta={beta}, steps={steps}, theta={t}"
        )
    return ShootingState(theta=t, psi=y0, dpsi=y1)


def _launch(parity: Parity) -> ShootingState:
    if parity == "even":
        return ShootingState(theta=-pi / 2, psi=1.0, dpsi=0.0)
    return ShootingState(theta=-pi / 2, psi=0.0, dpsi=1.0)


def rk_mismatch(alpha: float, m: int, beta: float, parity: Parity,
                config: OracleConfig = OracleConfig()) -> float:
    """Signed matching defect at theta = pi/2.

    Even parity returns psi'(pi/2) of the forward path, odd returns
    psi(pi/2); the backward path to -3pi/2 evaluates the same condition at
    the same physical point and must agree (the reflection about -pi/2 maps
    one path onto the other), which is checked here.
    """
    _check_parity(parity)
    fwd = _integrate(alpha, m, beta, _launch(parity), pi / 2, config.rk_step_count)
    bwd = _integrate(alpha, m, beta, _launch(parity), -3 * pi / 2, config.rk_step_count)
    # the reflection about -pi/2 maps the backward path onto the forward one,
    # preserving psi for the even launch and flipping it for the odd launch
    if parity == "even":
        mf, mb = fwd.dpsi, -bwd.dpsi
    else:
        mf, mb = fwd.psi, -bwd.psi
    scale = max(1.0, abs(fwd.psi), abs(fwd.dpsi))
    if abs(mf - mb) > 1e-6 * scale:
        raise OracleError(
            f"forward/backward matching inconsistent at beta={beta}: "
            f"{mf} vs {mb} (steps={config.rk_step_count})"
        )
    return mf


def rk_find_eigenvalue(alpha: float, m: int, parity: Parity,
                       bracket: tuple[float, float],
                       config: OracleConfig = OracleConfig()) -> SpectralPoint:
    """Bisect the mismatch to an eigenvalue within the bracket."""
    lo, hi = bracket
    if not lo < hi:
        raise ValueError(f"bad bracket {bracket}")
    flo = rk_mismatch(alpha, m, lo, parity, config)
    fhi = rk_mismatch(alpha, m, hi, parity, config)
    if flo == 0.0:
        return SpectralPoint(beta=lo)
    if fhi == 0.0:
        return SpectralPoint(beta=hi)
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise BracketError(
            f"mismatch does not change sign on {bracket} (m={m}, {parity})"
        )
    while hi - lo > config.matching_tolerance:
        mid = 0.5 * (lo + hi)
        fm = rk_mismatch(alpha, m, mid, parity, config)
        if fm == 0.0:
            return SpectralPoint(beta=mid)
        if math.copysign(1.0, fm) == math.copysign(1.0, flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return SpectralPoint(beta=0.5 * (lo + hi))


def rk_sample(alpha: float, m: int, beta: float, parity: Parity,
              thetas: Sequence[float],
              config: OracleConfig = OracleConfig()) -> list[tuple[float, float]]:
    """Trajectory values psi(theta), normalized by the launch condition.

    Points left of -pi/2 ride the backward branch; step counts scale with
    arc length so resolution matches the configured per-half-loop density.
    """
    out = []
    for theta in thetas:
        span = abs(theta - (-pi / 2))
        if span == 0.0:
            state = _launch(parity)
        else:
            steps = max(2, int(round(config.rk_step_count * span / pi)))
            state = _integrate(alpha, m, beta, _launch(parity), theta, steps)
        out.append((float(theta), state.psi))
    return out


def fd_spectrum(alpha: float, m: int, grid_size: int = 1024,
                k_lowest: int = 8) -> list[SpectralPoint]:
    """Lowest eigenvalues from the periodic flux-form discretization.

    Runs the grid and its half, Richardson-extrapolates the pair (the
    discretization is second order, so the combination cancels the leading
    error term), and reports the correction magnitude as the per-eigenvalue
    error estimate.
    """
    cfg = OracleConfig(fd_grid_size=grid_size)  # reuse the range validation
    full = _fd_raw(alpha, m, cfg.fd_grid_size, k_lowest)
    half = _fd_raw(alpha, m, cfg.fd_grid_size // 2, k_lowest)
    out = []
    for bf, bh in zip(full, half):
        corr = float(bf - bh) / 3.0
        out.append(SpectralPoint(beta=max(0.0, float(bf) + corr),
                                 error_estimate=abs(corr)))
    return out


def _fd_raw(alpha: float, m: int, n: int, k_lowest: int) -> np.ndarray:
    if k_lowest < 1 or k_lowest > n:
        raise ValueError(f"k_lowest must be in [1, {n}], got {k_lowest}")
    h = 2.0 * pi / n
    theta = np.arange(n) * h
    w = 1.0 + alpha * np.sin(theta)
    wp = 1.0 + alpha * np.sin(theta + h / 2)   # weight at j+1/2 faces
    wm = 1.0 + alpha * np.sin(theta - h / 2)
    a = np.zeros((n, n))
    idx = np.arange(n)
    a[idx, idx] = (wp + wm) / h**2 + m * m * alpha * alpha / w
    a[idx, (idx + 1) % n] = -wp / h**2
    a[idx, (idx - 1) % n] = -wm / h**2
    s = 1.0 / np.sqrt(w)
    sym = (a * s).T * s
    sym = 0.5 * (sym + sym.T)
    try:
        evals = np.linalg.eigvalsh(sym)
    except np.linalg.LinAlgError as exc:
        raise OracleError(
            f"dense eigensolve failed to converge (grid={n}, m={m}): {exc}"
        ) from exc
    return evals[:k_lowest]
