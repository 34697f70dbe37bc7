"""Floating-point check of the small-circle diameter from the square construction.

The medium circle (diameter ``b = a/2``) is inscribed in a square of side
``b``; a small circle sits centred on each corner of that square and touches
the medium circle from outside.  Tangency means the half-diagonal equals the
sum of the two radii, which pins down the small diameter ``c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class SquareConfig:
    a: float
    b: float
    center_circle: Circle
    corner_centers: tuple[tuple[float, float], ...]

    @property
    def side(self) -> float:
        return self.b


def build_square_config(a: float) -> SquareConfig:
    if not a > 0:
        raise ValueError(f"large diameter must be positive, got {a}")
    b = a / 2
    h = b / 2
    corners = ((h, h), (-h, h), (-h, -h), (h, -h))
    return SquareConfig(a, b, Circle((0.0, 0.0), h), corners)


def tangency_residual(cfg: SquareConfig, c: float) -> float:
    """Centre distance minus the sum of radii for a corner circle of diameter ``c``."""
    if c < 0:
        raise ValueError("diameter must be nonnegative")
    x, y = cfg.corner_centers[0]
    return math.hypot(x, y) - (cfg.b / 2 + c / 2)


def solve_small(a: float, tol: float = 1e-12) -> float:
    """Bisect the tangency residual over ``c in [0, a]``.  The bracket is
    narrowed to ``tol * min(1, a)`` so small configurations keep their
    relative accuracy."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    cfg = build_square_config(a)
    lo, hi = 0.0, a
    # residual is positive at 0 and negative at a, and decreasing in c
    width = tol * min(1.0, a)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if tangency_residual(cfg, mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass
class IncidenceReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_incidences(cfg: SquareConfig, c: float, tol: float = 1e-9) -> IncidenceReport:
    report = IncidenceReport()
    h = cfg.b / 2
    if abs(cfg.center_circle.radius - h) > tol:
        report.failures.append("square side does not equal the medium diameter")
    for i, (x, y) in enumerate(cfg.corner_centers):
        if abs(abs(x) - h) > tol or abs(abs(y) - h) > tol:
            report.failures.append(f"corner circle {i} is not centred on a square corner")
        gap = math.hypot(x, y) - (cfg.center_circle.radius + c / 2)
        if abs(gap) > tol:
            report.failures.append(f"corner circle {i} is not tangent to the medium circle (gap {gap:.3g})")
    return report
