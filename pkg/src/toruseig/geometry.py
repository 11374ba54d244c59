"""Torus surface geometry, metric weight, and spectral-parameter conversions.

The surface is parametrized by the poloidal angle theta and the azimuthal
angle phi:

    x = (R + a sin(theta)) cos(phi)
    y = (R + a sin(theta)) sin(phi)
    z = a cos(theta)

with minor radius a and major radius R.  The induced line element is
ds^2 = a^2 dtheta^2 + (R + a sin(theta))^2 dphi^2, so every theta-dependent
quantity in the eigenproblem enters through the dimensionless weight
1 + alpha sin(theta) with alpha = a/R.

Units: hbar = particle mass = 1, so H = -(1/2) Laplacian and the
dimensionless eigenvalue parameter is beta = 2 E a^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class TorusShape:
    """Geometry of the torus surface.

    The aspect ratio alpha = a/R is derived from the two radii, never stored,
    so the three quantities cannot fall out of sync.  alpha must stay below 1
    or the surface self-intersects and the weight 1 + alpha sin(theta) loses
    positivity.
    """

    minor_radius: float
    major_radius: float

    def __post_init__(self) -> None:
        if not (self.minor_radius > 0):
            raise ValueError(f"minor radius must be positive, got {self.minor_radius}")
        if not (self.major_radius > 0):
            raise ValueError(f"major radius must be positive, got {self.major_radius}")
        if not (self.minor_radius < self.major_radius):
            raise ValueError(
                "aspect ratio a/R must be < 1 (non-self-intersecting surface), "
                f"got a={self.minor_radius}, R={self.major_radius}"
            )

    @property
    def alpha(self) -> float:
        """Aspect ratio a/R, the sole geometry parameter of the spectrum."""
        return self.minor_radius / self.major_radius

    @classmethod
    def from_alpha(cls, alpha: float, minor_radius: float = 1.0) -> "TorusShape":
        """Build a shape with given aspect ratio; a = 1 by convention."""
        if not (0.0 < alpha < 1.0):
            raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        return cls(minor_radius=minor_radius, major_radius=minor_radius / alpha)


@dataclass(frozen=True)
class SpectralPoint:
    """Dimensionless eigenvalue parameter beta = 2 E a^2.

    beta >= 0 for physical states: the surface Laplacian on a closed surface
    is negative semidefinite and the constant mode sits at beta = 0.
    """

    beta: float
    error_estimate: float | None = None

    def __post_init__(self) -> None:
        if not (self.beta >= 0.0):
            raise ValueError(f"beta must be nonnegative, got {self.beta}")

    def energy(self, minor_radius: float) -> float:
        return beta_to_energy(self.beta, minor_radius)


def metric_factor(theta: float, shape: TorusShape) -> float:
    """Dimensionless weight 1 + alpha sin(theta), in [1 - alpha, 1 + alpha]."""
    return 1.0 + shape.alpha * math.sin(theta)


def embed(theta: float, phi: float, shape: TorusShape) -> tuple[float, float, float]:
    """Map surface coordinates (theta, phi) to Cartesian (x, y, z)."""
    ring = shape.major_radius + shape.minor_radius * math.sin(theta)
    return (
        ring * math.cos(phi),
        ring * math.sin(phi),
        shape.minor_radius * math.cos(theta),
    )


def beta_to_energy(beta: float, minor_radius: float) -> float:
    """Convert the dimensionless eigenvalue to energy: E = beta / (2 a^2)."""
    if not (minor_radius > 0):
        raise ValueError(f"minor radius must be positive, got {minor_radius}")
    return beta / (2.0 * minor_radius**2)
