"""Test functions and the coefficient-series side of the L-value pairing.

An L-value here is the pairing of a Fourier expansion with a test function:
the holomorphic coefficients hit the Laplace transform of the test function
at 2 pi n, and each non-holomorphic coefficient contributes an incomplete-
gamma-weighted integral over the support.  Three kinds of test function are
provided: the exponential-monomial family phi_s^w on [1, infinity), its
Fricke transform supported in (0, 1/M], and compactly supported restrictions
of holomorphic seeds.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .modforms import FourierExpansion
from .quadrature import (DEFAULT_QUAD, QuadratureConfig, integrate_decaying,
                         integrate_segment)

TWO_PI = 2.0 * math.pi

# e^{-46} is comfortably below every tolerance used here
_DECAY_BUDGET = 46.0


class AdmissibilityError(ValueError):
    """The expansion/test-function pair is outside the convergent regime."""


# ---------------------------------------------------------------------------
# Test functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiSW:
    """phi_s^w(t) = 1_[1,inf)(t) e^{-wt} t^{s-1}."""

    s: complex
    w: complex
    kind: str = "phi_sw"

    def value(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t, dtype=complex)
        mask = t >= 1.0
        tm = t[mask]
        out[mask] = np.exp(-complex(self.w) * tm) * tm ** (complex(self.s) - 1.0)
        return out

    def laplace(self, u) -> complex:
        """(L phi_s^w)(u) = E_{1-s}(u + w)."""
        return specfun.exp_int_E(1 - complex(self.s), u + complex(self.w))


@dataclass(frozen=True)
class FrickePhiSW:
    """(phi_s^w |_a W_M)(t) = 1_(0,1/M](t) e^{-w/(Mt)} (Mt)^{1-s-a}."""

    s: complex
    w: complex
    a: int
    M: int
    kind: str = "fricke_of_phi_sw"

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("level M must be a positive integer")

    def _t_lo(self) -> float:
        rw = complex(self.w).real
        if rw <= 0:
            raise AdmissibilityError(
                "Fricke-transformed phi_s^w needs Re(w) > 0 near t = 0")
        return max(1e-12, rw / (self.M * (rw + _DECAY_BUDGET)))

    def value(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t, dtype=complex)
        mask = (t > 0) & (t <= 1.0 / self.M + 1e-15)
        mt = self.M * t[mask]
        expo = 1.0 - complex(self.s) - self.a
        out[mask] = np.exp(-complex(self.w) / mt) * mt ** expo
        return out

    def laplace(self, u, cfg: QuadratureConfig = DEFAULT_QUAD) -> complex:
        u = complex(u)

        def g(t):
            return np.exp(-u * np.real(t)) * self.value(np.real(t))

        seg = integrate_segment(g, self._t_lo(), 1.0 / self.M, cfg)
        return complex(seg.value)


@dataclass(frozen=True)
class CompactAnalytic:
    """Restriction y -> seed.value(iy) to [a_lo, a_hi], zero elsewhere.

    The seed is a holomorphic function on the upper half-plane exposing
    value(z), translated_sum(z) = sum_{n>=0} value(z+n), and decay_epsilon
    with |seed(z)| < |z|^{-1-decay_epsilon} on the strip.
    """

    seed: object
    a_lo: float
    a_hi: float
    kind: str = "compact_analytic"

    def __post_init__(self):
        if not (0 < self.a_lo < self.a_hi < math.inf):
            raise ValueError("need 0 < a_lo < a_hi < inf")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t, dtype=complex)
        mask = (t >= self.a_lo) & (t <= self.a_hi)
        out[mask] = np.array([self.seed.value(1j * tt) for tt in t[mask]])
        return out

    def laplace(self, u, cfg: QuadratureConfig = DEFAULT_QUAD) -> complex:
        u = complex(u)

        def g(t):
            tr = np.real(t)
            vals = np.array([self.seed.value(1j * tt) for tt in tr])
            return np.exp(-u * tr) * vals

        seg = integrate_segment(g, self.a_lo, self.a_hi, cfg)
        return complex(seg.value)


def laplace_phi_sw(s, w, u) -> complex:
    """(L phi_s^w)(u) = E_{1-s}(u + w), continuous from above on the cut."""
    return PhiSW(s, w).laplace(u)


def fricke_transform_testfn(phi, a: int, M: int):
    """(phi |_a W_M)(x) = (Mx)^{-a} phi(1/(Mx)) as a new descriptor."""
    if isinstance(phi, PhiSW):
        return FrickePhiSW(phi.s, phi.w, a, M)
    if isinstance(phi, FrickePhiSW) and phi.a == a and phi.M == M:
        return PhiSW(phi.s, phi.w)  # the involution squares to the identity
    raise TypeError(f"Fricke transform unsupported for kind {getattr(phi, 'kind', '?')}")


# ---------------------------------------------------------------------------
# The L-value pairing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LValue:
    value: complex
    holo_part: complex
    nonholo_part: complex
    error_estimate: float


def _nonholo_support(phi, n: int):
    """Integration window for the n-th (n < 0) incomplete-gamma integral."""
    rate = TWO_PI * (-n)
    if isinstance(phi, PhiSW):
        rate += max(0.0, complex(phi.w).real)
        return 1.0, 1.0 + (_DECAY_BUDGET + 4) / rate, True
    if isinstance(phi, FrickePhiSW):
        return phi._t_lo(), 1.0 / phi.M, False
    if isinstance(phi, CompactAnalytic):
        return phi.a_lo, phi.a_hi, False
    raise TypeError("unknown test-function kind")


def _nonholo_integral(f: FourierExpansion, phi, n: int,
                      cfg: QuadratureConfig):
    """int Gamma(1-k, -4 pi n y) e^{-2 pi n y} phi(y) dy over phi's support."""
    k = f.weight
    lo, hi, decaying = _nonholo_support(phi, n)

    def g(y):
        yr = np.real(y)
        gam = specfun.upper_gamma_int(1 - k, -4 * math.pi * n * yr)
        return gam * np.exp(-TWO_PI * n * yr) * phi.value(yr)

    if decaying:
        return integrate_decaying(g, lo, hi, cfg)
    return integrate_segment(g, lo, hi, cfg)


def _check_fricke_admissibility(f: FourierExpansion, phi: FrickePhiSW):
    threshold = max(TWO_PI * f.n0, f.growth_const ** 2 * phi.M / TWO_PI)
    if complex(phi.w).real <= threshold:
        raise AdmissibilityError(
            f"Fricke-side series needs Re(w) > {threshold:.4g}, "
            f"got {complex(phi.w).real:.4g}")


def l_value(f: FourierExpansion, phi, cfg: QuadratureConfig = DEFAULT_QUAD) -> LValue:
    """Series-side L-value: coefficient sums against the Laplace transform."""
    if isinstance(phi, FrickePhiSW):
        _check_fricke_admissibility(f, phi)
    holo = 0j
    err = 0.0
    prev = math.inf
    growing = 0
    for n in sorted(f.holo):
        term = f.holo[n] * phi.laplace(TWO_PI * n)
        holo += term
        if n > 0:
            mag = abs(term)
            # coefficient growth may dominate for a few small n; only a
            # sustained increase signals a divergent pairing
            if mag > prev and mag > 1e-13 * max(1.0, abs(holo)):
                growing += 1
                if growing >= 4:
                    raise AdmissibilityError(
                        f"series terms stopped decreasing at n = {n}")
            else:
                growing = 0
            prev = mag
    if math.isfinite(prev):
        err += prev  # crude tail bound: decreasing geometric-type terms
    nonholo = 0j
    for n, b in f.nonholo.items():
        part = _nonholo_integral(f, phi, n, cfg)
        nonholo += b * part.value
        err += abs(b) * part.est_error
    return LValue(value=holo + nonholo, holo_part=complex(holo),
                  nonholo_part=complex(nonholo), error_estimate=float(err))


def l_value_by_vertical_integral(f: FourierExpansion, phi,
                                 cfg: QuadratureConfig = DEFAULT_QUAD) -> complex:
    """L_f(phi) = int_0^infty f(iy) phi(y) dy, over the effective support."""

    def g(y):
        yr = np.real(y)
        return f.eval_at(1j * yr) * phi.value(yr)

    if isinstance(phi, CompactAnalytic):
        return complex(integrate_segment(g, phi.a_lo, phi.a_hi, cfg).value)
    if isinstance(phi, PhiSW):
        rw = complex(phi.w).real
        growth = TWO_PI * f.n0
        if rw <= growth:
            raise AdmissibilityError(
                f"vertical integral needs Re(w) > {growth:.4g} for this expansion")
        hi = 1.0 + (_DECAY_BUDGET + 4) / (rw - growth)
        return complex(integrate_decaying(g, 1.0, hi, cfg).value)
    if isinstance(phi, FrickePhiSW):
        rw = complex(phi.w).real
        growth = TWO_PI * f.n0 * phi.M
        if rw <= growth:
            raise AdmissibilityError(
                f"vertical integral needs Re(w) > {growth:.4g} near t = 0")
        lo = max(phi._t_lo(), (rw - growth) / (phi.M * _DECAY_BUDGET))
        return complex(integrate_segment(g, lo, 1.0 / phi.M, cfg).value)
    raise TypeError("unknown test-function kind")


def l_star(f: FourierExpansion, s, cfg: QuadratureConfig = DEFAULT_QUAD) -> complex:
    """L*(f, s) = sum a_f(n) E_{1-s}(2 pi n), plus the w = 0 integral term
    for expansions with a non-holomorphic part."""
    return complex(l_value(f, PhiSW(s, 0.0), cfg).value)


def l_tilde(f: FourierExpansion, s, cfg: QuadratureConfig = DEFAULT_QUAD) -> complex:
    """Symmetrized value L*(f, s) + i^k L*(f, k-s)."""
    k = f.weight
    return l_star(f, s, cfg) + (1j ** (k % 4)) * l_star(f, k - s, cfg)


def l_value_limit(f: FourierExpansion, s, x0: float = 0.4, levels: int = 6,
                  cfg: QuadratureConfig = DEFAULT_QUAD):
    """Richardson-extrapolated lim_{x->0+} L_f(phi_s^{ix}).

    Returns (value, error_estimate); the estimate is the difference between
    the last two diagonal entries of the extrapolation table.
    """
    if levels < 2:
        raise ValueError("need at least two levels")
    vals = [l_value(f, PhiSW(s, 1j * x0 / 2 ** j), cfg).value
            for j in range(levels)]
    table = [list(vals)]
    for i in range(1, levels):
        prev = table[-1]
        fac = 2.0 ** i
        table.append([(fac * prev[j + 1] - prev[j]) / (fac - 1.0)
                      for j in range(len(prev) - 1)])
    diag = [row[-1] for row in table]
    return diag[-1], abs(diag[-1] - diag[-2])


# ---------------------------------------------------------------------------
# Analytic seeds for compactly supported test functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InversePowerSeed:
    """seed(z) = (z + shift)^{-power}; translated sum is a Hurwitz zeta."""

    power: float
    shift: float = 0.0

    def __post_init__(self):
        if self.power <= 1:
            raise ValueError("power must exceed 1 for the decay condition")

    @property
    def decay_epsilon(self) -> float:
        return self.power - 1.0

    def value(self, z) -> complex:
        return complex(z + self.shift) ** (-self.power)

    def translated_sum(self, z) -> complex:
        return specfun.hurwitz_zeta(self.power, complex(z) + self.shift)


@dataclass(frozen=True)
class LorentzianSeed:
    """seed(z) = amp/(z^2 + c^2); translated sum via a digamma difference.

    The default amplitude keeps |seed(z)| < |z|^{-2} on strips with
    Im(z) >= 1 (|z^2 + c^2| >= |z|^2 - c^2 >= 0.75 |z|^2 there).
    """

    c: float = 0.5
    amp: float = 0.2

    decay_epsilon = 1.0

    def value(self, z) -> complex:
        return self.amp / (complex(z) ** 2 + self.c ** 2)

    def translated_sum(self, z) -> complex:
        z = complex(z)
        psi_plus = specfun.digamma(z + 1j * self.c)
        psi_minus = specfun.digamma(z - 1j * self.c)
        return self.amp * (psi_plus - psi_minus) / (2j * self.c)


@dataclass(frozen=True)
class ZeroSeed:
    decay_epsilon = 1.0

    def value(self, z) -> complex:
        return 0j

    def translated_sum(self, z) -> complex:
        return 0j
