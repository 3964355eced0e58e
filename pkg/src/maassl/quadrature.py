"""Adaptive Gauss-Legendre quadrature on straight segments in the plane.

Integrands must accept an ndarray of complex points and return an ndarray of
values; panels are bisected until the refinement difference meets the
tolerance budget for their share of the segment.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class QuadratureError(RuntimeError):
    """Panel subdivision hit max_depth without meeting the tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-11
    max_depth: int = 14
    base_nodes: int = 16
    t_cutoff: float = 60.0

    def __post_init__(self):
        if self.abs_tol <= 0:
            raise ValueError("abs_tol must be positive")
        if self.base_nodes < 8:
            raise ValueError("base_nodes must be >= 8")
        if self.t_cutoff < 1:
            raise ValueError("t_cutoff must be >= 1")


DEFAULT_QUAD = QuadratureConfig()


@dataclass(frozen=True)
class SegmentIntegral:
    value: complex
    est_error: float
    panels_used: int


@lru_cache(maxsize=16)
def _gl_nodes(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _panel_value(g, z0: complex, z1: complex, order: int) -> complex:
    x, w = _gl_nodes(order)
    mid = (z0 + z1) / 2
    half = (z1 - z0) / 2
    vals = g(mid + half * x)
    return half * np.dot(w, vals)


def integrate_segment(g, z0, z1, cfg: QuadratureConfig = DEFAULT_QUAD) -> SegmentIntegral:
    """Integrate g along the straight segment from z0 to z1."""
    z0 = complex(z0)
    z1 = complex(z1)
    if z0 == z1:
        return SegmentIntegral(0j, 0.0, 0)
    total = 0j
    err = 0.0
    panels = 0
    stack = [(z0, z1, _panel_value(g, z0, z1, cfg.base_nodes), 0)]
    while stack:
        a, b, coarse, depth = stack.pop()
        mid = (a + b) / 2
        left = _panel_value(g, a, mid, cfg.base_nodes)
        right = _panel_value(g, mid, b, cfg.base_nodes)
        fine = left + right
        diff = abs(fine - coarse)
        budget = cfg.abs_tol * abs(b - a) / abs(z1 - z0)
        if diff <= budget or depth >= cfg.max_depth:
            if depth >= cfg.max_depth and diff > cfg.abs_tol:
                raise QuadratureError(
                    f"segment quadrature stalled at depth {depth} (diff {diff:.3g})")
            total += fine
            err += diff
            panels += 2
        else:
            stack.append((a, mid, left, depth + 1))
            stack.append((mid, b, right, depth + 1))
    return SegmentIntegral(complex(total), float(err), panels)


def integrate_decaying(g, t0: float, t1: float, cfg: QuadratureConfig = DEFAULT_QUAD) -> SegmentIntegral:
    """Integrate over [t0, t1] using geometrically growing panels.

    Suited to smooth integrands that decay roughly exponentially; each panel
    is handled by integrate_segment.
    """
    total = 0j
    err = 0.0
    panels = 0
    a = t0
    width = 1.0
    while a < t1:
        b = min(a + width, t1)
        part = integrate_segment(g, a, b, cfg)
        total += part.value
        err += part.est_error
        panels += part.panels_used
        a = b
        width *= 2
    return SegmentIntegral(complex(total), float(err), panels)
