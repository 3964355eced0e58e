"""Branch-correct special functions used by the L-series evaluators.

Everything here works in double precision with the principal branch for
non-integer powers and logarithms, arg in (-pi, pi].  Points on the negative
real axis are treated as limits from the upper half-plane, so Log(-x) carries
+i*pi for x > 0.  All functions are pure; the only internal state is a
read-only cache of Bernoulli numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import gamma as _complete_gamma

EULER_GAMMA = 0.5772156649015328606

MAX_BERNOULLI = 64


class SpecFunError(Exception):
    """Base class for special-function failures."""


class DomainError(SpecFunError):
    """Argument outside the domain of the requested function."""


class ConvergenceError(SpecFunError):
    """An internal series or continued fraction failed to converge."""


@dataclass(frozen=True)
class SpecFunConfig:
    target_abs_tol: float = 1e-14
    target_rel_tol: float = 1e-14
    max_terms: int = 500_000
    series_switch_radius: float = 12.0

    def __post_init__(self):
        if self.target_abs_tol <= 0 or self.target_rel_tol <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_CONFIG = SpecFunConfig()

# |z| beyond which the asymptotic expansion of E_s is preferred, and the
# largest negative real part before e^{-z} overflows a double.
_ASYMPTOTIC_RADIUS = 40.0
_CF_RADIUS = 2.0
_SAFE_EXPONENT = 700.0


def _clean(z) -> complex:
    """Coerce to complex, mapping a -0.0 imaginary part to +0.0.

    This pins values on the negative real axis to the upper side of the
    branch cut (limit from Im z -> 0+).
    """
    z = complex(z)
    if z.imag == 0.0:
        return complex(z.real, 0.0)
    return z


def principal_log(z) -> complex:
    z = _clean(z)
    if z == 0:
        raise DomainError("log(0) undefined")
    return cmath.log(z)


def principal_power(z, a) -> complex:
    """z**a on the principal branch, negative axis approached from above."""
    z = _clean(z)
    a = complex(a)
    if z == 0:
        if a == 0:
            return 1.0 + 0j
        if a.real > 0:
            return 0j
        raise DomainError("0 raised to a power with non-positive real part")
    if a.imag == 0 and float(a.real).is_integer():
        return z ** int(a.real)
    return cmath.exp(a * principal_log(z))


def _is_int(x, tol: float = 1e-12) -> bool:
    x = complex(x)
    return abs(x.imag) < tol and abs(x.real - round(x.real)) < tol


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials (exact rationals)
# ---------------------------------------------------------------------------

_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """B_n with the B_1 = -1/2 convention, cached up to MAX_BERNOULLI."""
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    if n > MAX_BERNOULLI:
        raise DomainError(f"Bernoulli numbers cached only up to n={MAX_BERNOULLI}")
    while len(_bernoulli_cache) <= n:
        m = len(_bernoulli_cache)
        # sum_{j=0}^{m} C(m+1, j) B_j = 0
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * _bernoulli_cache[j]
        _bernoulli_cache.append(-acc / (m + 1))
    return _bernoulli_cache[n]


def bernoulli_poly_coeffs(n: int) -> list[Fraction]:
    """Coefficients of B_n(z), descending in z (z^n first)."""
    return [math.comb(n, k) * bernoulli_number(n - k) for k in range(n, -1, -1)]


def bernoulli_poly(n: int, z) -> complex:
    """B_n(z) evaluated through its exact rational coefficients."""
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    z = complex(z)
    acc = 0j
    for k in range(n + 1):
        acc += complex(math.comb(n, k) * bernoulli_number(k)) * z ** (n - k)
    return acc


# ---------------------------------------------------------------------------
# Incomplete gamma and the generalized exponential integral
# ---------------------------------------------------------------------------

def _gamma_upper_cf(r: complex, z: complex, cfg: SpecFunConfig) -> complex:
    """Continued fraction for Gamma(r, z) * e^z * z^{-r}; needs Re z > 0-ish."""
    tiny = 1e-300
    b = z + 1.0 - r
    c = 1.0 / tiny
    d = 1.0 / b if b != 0 else 1.0 / tiny
    h = d
    for i in range(1, 2000):
        an = -i * (i - r)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = complex(tiny)
        c = b + an / c
        if abs(c) < tiny:
            c = complex(tiny)
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-17:
            return h
    raise ConvergenceError("continued fraction for Gamma(r, z) did not converge")


def _lower_gamma_series(r: complex, z: complex, cfg: SpecFunConfig) -> complex:
    """gamma(r, z) = z^r e^{-z} sum_n z^n / (r)_(n+1); |z| modest."""
    term = 1.0 / r
    acc = term
    ap = r
    for _ in range(cfg.max_terms):
        ap += 1
        term *= z / ap
        acc += term
        if abs(term) < abs(acc) * 1e-17 + 1e-300:
            return principal_power(z, r) * cmath.exp(-z) * acc
    raise ConvergenceError("lower incomplete gamma series did not converge")


def _exp_int_series(s: complex, z: complex, cfg: SpecFunConfig) -> complex:
    """E_s(z) by the everywhere-convergent continuation formula."""
    if _is_int(s) and s.real >= 1:
        n = int(round(s.real))
        # (-z)^(n-1)/(n-1)! (psi(n) - Log z) - sum_{k != n-1} (-z)^k / (k! (1-n+k))
        psi_n = -EULER_GAMMA + sum(1.0 / j for j in range(1, n))
        lead = ((-z) ** (n - 1) / math.factorial(n - 1)) * (psi_n - principal_log(z))
        acc = 0j
        term = 1.0 + 0j  # (-z)^k / k!
        k = 0
        while True:
            if k != n - 1:
                contrib = term / (1 - n + k)
                acc += contrib
                if k > abs(z) + 4 and abs(contrib) < (abs(acc) + abs(lead)) * 1e-17 + 1e-300:
                    break
            k += 1
            if k > cfg.max_terms:
                raise ConvergenceError("E_s series did not converge")
            term *= -z / k
        return lead - acc
    # non-integer s: z^{s-1} Gamma(1-s) - sum_k (-z)^k / (k! (1-s+k))
    lead = principal_power(z, s - 1) * complex(_complete_gamma(complex(1) - s))
    acc = 0j
    term = 1.0 + 0j
    k = 0
    while True:
        contrib = term / (1 - s + k)
        acc += contrib
        if k > abs(z) + 4 and abs(contrib) < (abs(acc) + abs(lead)) * 1e-17 + 1e-300:
            break
        k += 1
        if k > cfg.max_terms:
            raise ConvergenceError("E_s series did not converge")
        term *= -z / k
    return lead - acc


def _exp_int_asymptotic(s: complex, z: complex, cfg: SpecFunConfig) -> complex:
    """E_s(z) ~ e^{-z}/z sum_k (-1)^k (s)_k / z^k, for large |z|."""
    acc = 1.0 + 0j
    term = 1.0 + 0j
    best = abs(term)
    for k in range(1, 200):
        term *= -(s + k - 1) / z
        if abs(term) > best:
            break
        best = abs(term)
        acc += term
        if abs(term) < abs(acc) * 1e-17:
            break
    return cmath.exp(-z) / z * acc


def exp_int_E(s, z, cfg: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """Generalized exponential integral E_s(z) on the principal branch.

    The negative real axis is the continuous extension from Im z > 0.
    """
    s = complex(s)
    z = _clean(z)
    if z == 0:
        raise DomainError("E_s(0) is undefined here")
    if -z.real > _SAFE_EXPONENT:
        raise OverflowError("E_s(z) exceeds safe double-precision exponent range")
    az = abs(z)
    if z.real > 0:
        # the continued fraction keeps full relative accuracy here, while the
        # series loses absolute digits to cancellation beyond |z| ~ 2
        if az < _CF_RADIUS:
            return _exp_int_series(s, z, cfg)
        if az >= _ASYMPTOTIC_RADIUS:
            return _exp_int_asymptotic(s, z, cfg)
        return cmath.exp(-z) * _gamma_upper_cf(1 - s, z, cfg)
    near_cut = abs(z.imag) <= -z.real
    # In the upper-left quadrant off the cut the series cancels badly while
    # the continued fraction still converges, so hand over to it earlier.
    series_radius = cfg.series_switch_radius if near_cut \
        else 0.55 * cfg.series_switch_radius
    if az <= series_radius:
        return _exp_int_series(s, z, cfg)
    if az >= _ASYMPTOTIC_RADIUS:
        return _exp_int_asymptotic(s, z, cfg)
    if near_cut:
        # series terms do not alternate here and the CF degrades near the cut
        return _exp_int_series(s, z, cfg)
    return cmath.exp(-z) * _gamma_upper_cf(1 - s, z, cfg)


def inc_gamma_upper(r, z, cfg: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """Upper incomplete gamma Gamma(r, z) = int_z^inf e^{-t} t^{r-1} dt."""
    r = complex(r)
    z = _clean(z)
    if z == 0:
        if r.real <= 0:
            raise DomainError("Gamma(r, 0) diverges for Re(r) <= 0")
        return complex(_complete_gamma(r))
    if _is_int(r) and r.real <= 0:
        # complete Gamma(r) has a pole; go through E_{1-r} which is regular
        return principal_power(z, r) * exp_int_E(1 - r, z, cfg)
    az = abs(z)
    if z.real > 0 and az >= _CF_RADIUS and az < _ASYMPTOTIC_RADIUS:
        return cmath.exp(-z + r * principal_log(z)) * _gamma_upper_cf(r, z, cfg)
    near_cut = z.real <= 0 and abs(z.imag) <= -z.real
    series_radius = _CF_RADIUS if z.real > 0 else (
        cfg.series_switch_radius if near_cut else 0.55 * cfg.series_switch_radius)
    if az <= series_radius:
        return complex(_complete_gamma(r)) - _lower_gamma_series(r, z, cfg)
    return principal_power(z, r) * exp_int_E(1 - r, z, cfg)


def upper_gamma_int(m: int, x):
    """Gamma(m, x) for integer m >= 1 in closed form; scalar or ndarray x."""
    if m < 1:
        raise DomainError("integer order must be >= 1")
    import numpy as np

    xa = np.asarray(x, dtype=complex)
    term = np.ones_like(xa)
    acc = term.copy()
    for j in range(1, m):
        term = term * xa / j
        acc = acc + term
    out = math.factorial(m - 1) * np.exp(-xa) * acc
    return complex(out) if out.ndim == 0 else out


def _ein(w: float, cfg: SpecFunConfig) -> float:
    """Complementary exponential integral Ein(w) for real w."""
    term = 1.0
    acc = 0.0
    for k in range(1, cfg.max_terms):
        term *= -w / k
        contrib = -term / k
        acc += contrib
        if k > abs(w) + 4 and abs(contrib) < abs(acc) * 1e-17 + 1e-300:
            return acc
    raise ConvergenceError("Ein series did not converge")


def cal_EI(w: float, cfg: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """The principal-value exponential integral EI(w) = int_w^inf e^{-t} dt/t.

    E_1(w) for w > 0 and -Ei(-w) (purely real) for w < 0.  Computed through
    the Ein power series on the negative side, independently of exp_int_E.
    """
    w = float(w)
    if w == 0:
        raise DomainError("EI(0) diverges")
    if w > 0:
        return exp_int_E(1, w, cfg)
    return complex(_ein(w, cfg) - math.log(-w) - EULER_GAMMA)


# ---------------------------------------------------------------------------
# Hurwitz and Lerch zeta, digamma, polygamma
# ---------------------------------------------------------------------------

_EM_ORDER = 8
_EM_SHIFT_TARGET = 16.0


def hurwitz_zeta(s, z, cfg: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """Hurwitz zeta(s, z) by Euler-Maclaurin with shifting, s != 1."""
    s = complex(s)
    z = _clean(z)
    if abs(s - 1) < 1e-13:
        raise DomainError("Hurwitz zeta has a pole at s = 1")
    if z.imag == 0 and z.real <= 0 and _is_int(z):
        raise DomainError("Hurwitz zeta undefined at non-positive integers")
    # For Re(s) < 0 the direct sum grows like shift^{|s|} while the result
    # stays O(1); a short shift with a longer tail expansion avoids the
    # cancellation (for integer s < 0 the tail terminates exactly).
    if s.real < -0.5:
        target, order = 6.0, 12
    else:
        target, order = _EM_SHIFT_TARGET, _EM_ORDER
    shift = int(max(0.0, target - z.real)) + 1
    acc = 0j
    for n in range(shift):
        acc += principal_power(z + n, -s)
    zM = z + shift
    acc += principal_power(zM, 1 - s) / (s - 1)
    base = principal_power(zM, -s)
    acc += base / 2
    poch = s  # rising factorial (s)(s+1)...(s+2j-2)
    zM2 = zM * zM
    fac = base / zM  # zM^{-s-1}
    for j in range(1, order + 1):
        bj = bernoulli_number(2 * j)
        acc += float(bj) / math.factorial(2 * j) * poch * fac
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        fac /= zM2
    return acc


def lerch_zeta(s, a, z, cfg: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """Lerch zeta(s, a, z) = sum_{m>=0} e^{2 pi i m a} (z+m)^{-s}.

    Needs Im(a) > 0 (geometric decay) or a real with Re(s) > 1.  Each power
    is taken on the principal branch; a = 0 recovers the Hurwitz zeta via
    direct summation with an integral tail correction.
    """
    s = complex(s)
    a = complex(a)
    z = _clean(z)
    if z.real <= 0:
        raise DomainError("lerch_zeta needs Re(z) > 0")
    q = cmath.exp(2j * math.pi * a)
    if abs(q) < 1.0 - 1e-14:
        acc = 0j
        qm = 1.0 + 0j
        m = 0
        while True:
            contrib = qm * principal_power(z + m, -s)
            acc += contrib
            if m > 4 and abs(contrib) < abs(acc) * 1e-17 + 1e-300:
                return acc
            m += 1
            if m > cfg.max_terms:
                raise ConvergenceError("Lerch series did not converge")
            qm *= q
    # |q| = 1: absolute convergence requires Re(s) > 1
    if s.real <= 1:
        raise ConvergenceError("Lerch series with real a needs Re(s) > 1")
    if abs(q - 1.0) < 1e-14:
        # untwisted case: partial sum plus a three-term tail correction
        n_terms = 2000
        acc = 0j
        for m in range(n_terms):
            acc += principal_power(z + m, -s)
        zN = z + n_terms
        acc += principal_power(zN, 1 - s) / (s - 1)
        acc += principal_power(zN, -s) / 2
        acc += s * principal_power(zN, -s - 1) / 12
        return acc
    acc = 0j
    qm = 1.0 + 0j
    sigma = s.real
    for m in range(cfg.max_terms):
        acc += qm * principal_power(z + m, -s)
        qm *= q
        if m > 10:
            tail = (m + z.real) ** (1 - sigma) / (sigma - 1)
            if tail < cfg.target_abs_tol:
                return acc
    raise ConvergenceError("Lerch series with unimodular twist converged too slowly")


def hurwitz_zeta_star(a, z, cfg: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """Constant Laurent term of zeta(s, z) at s = a; equals -psi(z) at a = 1."""
    a = complex(a)
    if abs(a - 1) < 1e-13:
        return -digamma(z, cfg)
    return hurwitz_zeta(a, z, cfg)


def digamma(z, cfg: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """psi(z) by recurrence plus the Bernoulli asymptotic series."""
    z = _clean(z)
    if z.imag == 0 and z.real <= 0 and _is_int(z):
        raise DomainError("digamma pole at non-positive integer")
    acc = 0j
    while z.real < _EM_SHIFT_TARGET:
        acc -= 1.0 / z
        z += 1
    acc += principal_log(z) - 1.0 / (2 * z)
    z2 = z * z
    fac = 1.0 / z2
    for j in range(1, _EM_ORDER + 1):
        acc -= float(bernoulli_number(2 * j)) / (2 * j) * fac
        fac /= z2
    return acc


def polygamma(m: int, z, cfg: SpecFunConfig = DEFAULT_CONFIG) -> complex:
    """psi^{(m)}(z) for m >= 0, by recurrence and the asymptotic series."""
    if m < 0:
        raise DomainError("polygamma order must be non-negative")
    if m == 0:
        return digamma(z, cfg)
    z = _clean(z)
    if z.imag == 0 and z.real <= 0 and _is_int(z):
        raise DomainError("polygamma pole at non-positive integer")
    sign = (-1) ** m
    acc = 0j
    while z.real < _EM_SHIFT_TARGET:
        acc -= sign * math.factorial(m) * principal_power(z, -m - 1)
        z += 1
    # psi^{(m)}(z) = (-1)^{m-1} [ (m-1)!/z^m + m!/(2 z^{m+1})
    #                + sum_j B_{2j} (2j+m-1)!/((2j)! z^{2j+m}) ]
    inner = math.factorial(m - 1) * principal_power(z, -m)
    inner += math.factorial(m) / 2 * principal_power(z, -m - 1)
    z2 = z * z
    fac = principal_power(z, -m)  # becomes z^{-(2j+m)} inside the loop
    for j in range(1, _EM_ORDER + 1):
        fac /= z2
        coeff = float(bernoulli_number(2 * j)) * math.factorial(2 * j + m - 1) / math.factorial(2 * j)
        inner += coeff * fac
    return acc + (-1) ** (m - 1) * inner
