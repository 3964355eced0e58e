"""Contour-integral right-hand sides of the closed-form L-value identities.

All horizontal contours run along Im z = 1 (the segment from i to i+1, or
from ia to ia+1 in the compactly supported case).  The remainder term that
appears for expansions with a non-holomorphic part is provided in both of
its equivalent shapes: the one-dimensional coefficient form and the double
integral over the segment.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from . import specfun
from .modforms import FourierExpansion, xi_image
from .quadrature import (DEFAULT_QUAD, QuadratureConfig, SegmentIntegral,
                         integrate_decaying, integrate_segment)

TWO_PI = 2.0 * math.pi
I = 1j


class RegimeError(ValueError):
    """Arguments outside the validity regime of the requested formula."""


def i_power(a) -> complex:
    """i^a on the principal branch."""
    a = complex(a)
    if a.imag == 0 and float(a.real).is_integer():
        return 1j ** int(a.real)
    return cmath.exp(a * 1j * math.pi / 2)


def _lerch_terms(exponent_real: float, im_w: float) -> int:
    """Terms needed so e^{-m Im w} m^{sigma} drops below ~1e-19."""
    if im_w <= 0:
        raise RegimeError("geometric Lerch summation needs Im(w) > 0")
    m = 45.0 / im_w
    for _ in range(3):
        m = (45.0 + max(0.0, exponent_real) * math.log(m + 3)) / im_w
    return int(m) + 30


def lerch_sum(s_exponent: complex, w: complex, z: np.ndarray) -> np.ndarray:
    """sum_{m>=0} e^{imw} (z+m)^{s_exponent}, vectorized over z.

    This is zeta(-s_exponent, w/(2 pi), z) in Lerch normalization; it needs
    Im(w) > 0.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    mmax = _lerch_terms(complex(s_exponent).real, complex(w).imag)
    out = np.zeros_like(z)
    chunk = 4096
    for start in range(0, mmax, chunk):
        m = np.arange(start, min(start + chunk, mmax))
        out += ((z[:, None] + m[None, :]) ** s_exponent
                * np.exp(1j * complex(w) * m)[None, :]).sum(axis=1)
    return out


def _bern_poly_np(n: int, z: np.ndarray) -> np.ndarray:
    coeffs = [float(c) for c in specfun.bernoulli_poly_coeffs(n)]
    return np.polyval(coeffs, z)


def _zeta_star_vec(a: float, z: np.ndarray) -> np.ndarray:
    if abs(a - 1) < 1e-13:
        return np.array([-specfun.digamma(zz) for zz in z])
    return np.array([specfun.hurwitz_zeta(a, zz) for zz in z])


# ---------------------------------------------------------------------------
# Lemma: bending the Laplace ray to a horizontal line
# ---------------------------------------------------------------------------

def ray_integral_bend(a: float, w, T: float, cfg: QuadratureConfig = DEFAULT_QUAD,
                      tail_correction: bool = True) -> complex:
    """int_i^{i+T} e^{iwz} z^{a-1} dz, converging to i^a E_{1-a}(w).

    Valid for Im(w) > 0 with any real a, or for real w > 0 with a < 0.
    With tail_correction the integration-by-parts asymptotic of the i+T..
    i+infinity piece is added, which reaches ~1e-8 already at T = 200.
    """
    w = complex(w)
    if not (w.imag > 0 or (w.imag == 0 and w.real > 0 and a < 0)):
        raise RegimeError("ray integral needs Im(w) > 0, or real w > 0 with a < 0")
    if T <= 0:
        raise ValueError("T must be positive")

    def g(t):
        z = 1j + t
        return np.exp(1j * w * z) * z ** (a - 1.0)

    # effective truncation: past the decay scale the integrand is negligible
    t_stop = T
    if w.imag > 0:
        t_stop = min(T, 45.0 / w.imag + 5.0)
    value = integrate_decaying(g, 0.0, t_stop, cfg).value
    if tail_correction and t_stop == T:
        z0 = 1j + T
        iw = 1j * w
        prod = 1.0 + 0j
        head = -np.exp(iw * z0) / iw
        corr = 0j
        last = math.inf
        for j in range(12):
            term = head * prod * z0 ** (a - 1.0 - j)
            if abs(term) > last:
                break
            corr += term
            last = abs(term)
            prod *= -(a - 1 - j) / iw
        value += corr
    return complex(value)


# ---------------------------------------------------------------------------
# Main-theorem right-hand side and the remainder term
# ---------------------------------------------------------------------------

def _xi_conj_expansion(f: FourierExpansion) -> FourierExpansion:
    return xi_image(f, conjugate_first=True)


def _remainder_m_terms(im_w: float) -> int:
    if im_w <= 0:
        raise RegimeError("double-integral remainder needs Im(w) > 0")
    return int(45.0 / im_w) + 10


def _r_t_values(xi_f: FourierExpansion, s: complex, w: complex, z: complex,
                t: np.ndarray) -> np.ndarray:
    """R_t(z, w) = sum_m (xi_k f^c)(t(2i - z - m)) (z+m)^{s-1} e^{itmw}."""
    mmax = _remainder_m_terms(w.imag)
    m = np.arange(mmax)
    u = 2j - z - m  # shape (M,)
    weights = (z + m) ** (complex(s) - 1.0)
    tm = np.outer(t, m)
    acc = np.zeros((t.size, m.size), dtype=complex)
    for p, c in xi_f.holo.items():
        acc += c * np.exp(2j * math.pi * p * np.outer(t, u))
    acc *= np.exp(1j * w * tm)
    return acc @ weights


def r_remainder(f: FourierExpansion, s: float, w, form: str = "one_dim",
                cfg: QuadratureConfig = DEFAULT_QUAD) -> complex:
    """Remainder term R(w, s) produced by the non-holomorphic part of f.

    form = "one_dim": the coefficient-series shape
        -sum_{n<0} b_f(n) (-4 pi n)^{1-k} int_1^inf e^{4 pi n t} t^{s-k}
        E_{1-s}((2 pi n + w) t) dt.
    form = "double_integral": i^{-s} times the double integral of
        e^{itzw} t^{s-k} R_t(z, w) over z in [i, i+1], t in [1, inf).
    The two agree wherever both are defined.
    """
    if not f.nonholo:
        return 0j
    w = complex(w)
    k = f.weight
    if form == "one_dim":
        if w.imag < 0:
            raise RegimeError("one-dimensional remainder needs Im(w) >= 0")
        total = 0j
        for n, b in f.nonholo.items():
            rate = TWO_PI * (-n)
            t_hi = min(cfg.t_cutoff, 1.0 + 46.0 / rate)

            def g(t, n=n):
                e = np.array([specfun.exp_int_E(1 - s, (TWO_PI * n + w) * tt)
                              for tt in np.real(t)])
                return np.exp(4 * math.pi * n * np.real(t)) * np.real(t) ** (s - k) * e

            part = integrate_decaying(g, 1.0, t_hi, cfg)
            total += b * (-4 * math.pi * n) ** (1 - k) * part.value
        return -complex(total)
    if form == "double_integral":
        if w.imag <= 0:
            raise RegimeError("double-integral remainder needs Im(w) > 0")
        xi_f = _xi_conj_expansion(f)
        nmin = min(-n for n in f.nonholo)
        rate = TWO_PI * nmin + max(0.0, w.real)
        t_hi = min(cfg.t_cutoff, 1.0 + 46.0 / rate)

        def inner(zz: complex) -> complex:
            def g(t):
                tr = np.real(t)
                rt = _r_t_values(xi_f, s, w, zz, tr)
                return np.exp(1j * tr * zz * w) * tr ** (s - k) * rt

            return integrate_decaying(g, 1.0, t_hi, cfg).value

        def outer(zs):
            return np.array([inner(zz) for zz in zs])

        seg = integrate_segment(outer, 1j, 1j + 1, cfg)
        return i_power(-s) * seg.value
    raise ValueError(f"unknown remainder form {form!r}")


def rhs_main_theorem(f: FourierExpansion, s: float, w,
                     cfg: QuadratureConfig = DEFAULT_QUAD) -> complex:
    """Contour side of the main identity for L_f(phi_s^w), Im(w) > 0.

    i^{-s} int_i^{i+1} f(z) e^{iwz} zeta(1-s, w/(2 pi), z) dz, plus the
    double-integral remainder when f has a non-holomorphic part.
    """
    w = complex(w)
    if w.imag <= 0:
        raise RegimeError("the contour formula needs Im(w) > 0")

    def g(zs):
        return f.eval_at(zs) * np.exp(1j * w * zs) * lerch_sum(s - 1.0, w, zs)

    seg = integrate_segment(g, 1j, 1j + 1, cfg)
    value = i_power(-s) * seg.value
    if f.nonholo:
        value += r_remainder(f, s, w, "double_integral", cfg)
    return complex(value)


# ---------------------------------------------------------------------------
# Integer values: closed forms built from Hurwitz zeta / Bernoulli data
# ---------------------------------------------------------------------------

def bern_c_constant(k: int, m: int) -> complex:
    """c_{k,m} = -sum_l m! (l-k)! i^{k+m+2l} / ((1+m-k)! l!)."""
    acc = 0j
    for el in range(m + 1):
        ratio = Fraction(math.factorial(m) * math.factorial(el - k),
                         math.factorial(1 + m - k) * math.factorial(el))
        acc += float(ratio) * i_power(k + m + 2 * el)
    return -acc


def bern_d_constant(k: int, m: int, el: int, j: int) -> float:
    """d_{l,j} = m! (-1)^{j-1} (l-k)! / (l! (j+l-k+1)! (1-l+m-j)!)."""
    num = math.factorial(m) * math.factorial(el - k)
    den = (math.factorial(el) * math.factorial(j + el - k + 1)
           * math.factorial(1 - el + m - j))
    return (-1) ** (j - 1) * num / den


def _bern_second_integral(f: FourierExpansion, m: int, cfg: QuadratureConfig,
                          printed_constants: bool = False) -> complex:
    """The xi-part of the Bernoulli formula for L_f(phi_{1+m}^0), m >= 1.

    The d_{l,j} terms carry an extra phase i^r (r = 1-l+m-j, the phase of
    the Bernoulli-polynomial Fourier coefficient), which the limit oracle
    confirms; printed_constants drops it to reproduce the phase-free variant
    for discrepancy reporting.
    """
    k = f.weight
    xi_f = _xi_conj_expansion(f)
    ckm = bern_c_constant(k, m)

    def g(zs):
        zs = np.asarray(zs, dtype=complex)
        poly = ckm * _bern_poly_np(2 + m - k, zs) / (2 + m - k)
        for el in range(m + 1):
            for j in range(m - el + 1):
                r = 1 - el + m - j
                phase = 1.0 if printed_constants else i_power(r)
                poly = poly - phase * bern_d_constant(k, m, el, j) * _bern_poly_np(
                    r, zs.real)
        return xi_f.eval_at(zs) * poly

    return integrate_segment(g, 1j, 1j + 1, cfg).value


def rhs_integer_value(f: FourierExpansion, m: int,
                      cfg: QuadratureConfig = DEFAULT_QUAD,
                      printed_constants: bool = False) -> complex:
    """Closed-form contour value equal to L*(f, m) at integer m.

    Weakly holomorphic f: i^{-m} int_i^{i+1} f(z) zeta*(1-m, z) dz for every
    integer m.  With a non-holomorphic part (weight <= 0) the Bernoulli
    correction integrals are added; that case is available for m >= 1 only.
    printed_constants selects the phase-free d_{l,j} variant (see
    _bern_second_integral) for discrepancy reporting.
    """
    if f.is_weakly_holomorphic:
        def g(zs):
            return f.eval_at(zs) * _zeta_star_vec(1 - m, np.asarray(zs, dtype=complex))

        seg = integrate_segment(g, 1j, 1j + 1, cfg)
        return complex(i_power(-m) * seg.value)
    if m < 1:
        raise RegimeError(
            "integer-value formula with a non-holomorphic part exists for m >= 1 only")
    if m == 1:
        k = f.weight
        xi_f = _xi_conj_expansion(f)

        def g1(zs):
            return f.eval_at(zs) * np.asarray(zs, dtype=complex)

        # the x-term carries the phase -i in the oracle-confirmed form
        x_coeff = 1.0 if printed_constants else -1j

        def g2(zs):
            zs = np.asarray(zs, dtype=complex)
            return xi_f.eval_at(zs) * (i_power(k) * _bern_poly_np(2 - k, zs) / (2 - k)
                                       + x_coeff * zs.real)

        first = 1j * integrate_segment(g1, 1j, 1j + 1, cfg).value
        second = integrate_segment(g2, 1j, 1j + 1, cfg).value / (1 - k)
        return complex(first - second)
    mm = m - 1  # the Bernoulli theorem is stated for s = 1 + mm

    def g(zs):
        zs = np.asarray(zs, dtype=complex)
        return f.eval_at(zs) * _bern_poly_np(mm + 1, zs) / (mm + 1)

    first = -i_power(-mm - 1) * integrate_segment(g, 1j, 1j + 1, cfg).value
    return complex(first + _bern_second_integral(f, mm, cfg, printed_constants))


def rhs_negative_s(f: FourierExpansion, s: float,
                   cfg: QuadratureConfig = DEFAULT_QUAD,
                   use_polygamma: bool = False) -> complex:
    """i^{-s} int_i^{i+1} f(z) zeta(1-s, z) dz for s < 0 (weakly holomorphic f)."""
    if s >= 0:
        raise RegimeError("this formula needs s < 0")
    if not f.is_weakly_holomorphic:
        raise RegimeError("negative-s formula applies to weakly holomorphic shapes")
    if use_polygamma:
        if not float(s).is_integer():
            raise RegimeError("polygamma form needs integer s")
        n = int(-s)

        def g(zs):
            return f.eval_at(zs) * np.array([specfun.polygamma(n, zz) for zz in zs])

        seg = integrate_segment(g, 1j, 1j + 1, cfg)
        # zeta(n+1, z) = (-1)^{n+1} psi^{(n)}(z) / n!
        return complex(i_power(-s) * (-1) ** (n + 1) / math.factorial(n) * seg.value)

    def g(zs):
        return f.eval_at(zs) * np.array([specfun.hurwitz_zeta(1 - s, zz) for zz in zs])

    seg = integrate_segment(g, 1j, 1j + 1, cfg)
    return complex(i_power(-s) * seg.value)


# ---------------------------------------------------------------------------
# Compactly supported test functions: telescoped two-segment formula
# ---------------------------------------------------------------------------

def compact_support_value(f: FourierExpansion, seed, a: float, b: float,
                          cfg: QuadratureConfig = DEFAULT_QUAD) -> complex:
    """-i (int_{ia}^{ia+1} - int_{ib}^{ib+1}) f(z) Phi~(z) dz.

    seed provides .value(z) and .translated_sum(z) = sum_{n>=0} Phi(z+n),
    together with a decay exponent used to sanity-check |Phi(z)| < |z|^{-1-eps}
    on the strip.
    """
    if not (0 < a < b):
        raise ValueError("need 0 < a < b")
    if not f.is_weakly_holomorphic:
        raise RegimeError("compact-support formula applies to weakly holomorphic f")
    eps = getattr(seed, "decay_epsilon", None)
    if eps is not None:
        for zz in (1j * a + 0.5, 1j * b + 3.0, 1j * (a + b) / 2 + 10.0):
            if abs(seed.value(zz)) >= abs(zz) ** (-1.0 - eps) * (1 + 1e-9):
                raise RegimeError(f"seed violates the decay condition at z={zz}")

    def g(zs):
        return f.eval_at(zs) * np.array([seed.translated_sum(zz) for zz in zs])

    top = integrate_segment(g, 1j * a, 1j * a + 1, cfg).value
    bottom = integrate_segment(g, 1j * b, 1j * b + 1, cfg).value
    return complex(-1j * (top - bottom))
