"""Scalar special functions: Gamma, digamma/polygamma, Riemann and Hurwitz
zeta, the xi/Xi functions and the phi/varphi combinations built on them.

Everything works in double precision with complex arguments where the
identities need them. Zeta values come from Euler-Maclaurin summation; Gamma
from an upward shift plus the Stirling series.
"""

from __future__ import annotations

import cmath
import math

from .errors import DomainError, PoleError
from .numeric import (
    DEFAULT_CONTEXT,
    PrecisionContext,
    as_complex,
    bernoulli,
    bernoulli_corrections,
)

EULER_GAMMA = 0.57721566490153286
LOG_2PI = math.log(2 * math.pi)
HALF_LOG_2PI = 0.5 * LOG_2PI

STIRLING_SHIFT = 10.0
STIRLING_TERMS = 14

_STIRLING_COEF = tuple(
    bernoulli(2 * j) / (2 * j * (2 * j - 1)) for j in range(1, STIRLING_TERMS + 1)
)
_DIGAMMA_COEF = tuple(bernoulli(2 * j) / (2 * j) for j in range(1, STIRLING_TERMS + 1))


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


# ------------------------------------------------------------------ Gamma


def log_gamma(z) -> complex:
    """log Gamma(z) on the branch that is real for z > 0 and continuous off
    the negative real axis (the usual ``loggamma`` convention)."""
    z = as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    shift = max(0, math.ceil(STIRLING_SHIFT - z.real))
    w = z + shift
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0j
    p = inv
    for c in _STIRLING_COEF:
        series += c * p
        p *= inv2
    value = (w - 0.5) * cmath.log(w) - w + HALF_LOG_2PI + series
    for k in range(shift):
        value -= cmath.log(z + k)
    return value


def gamma(z) -> complex:
    """Gamma(z); reflection formula for Re z < 1/2."""
    z = as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma(1 - z))
    return cmath.exp(log_gamma(z))


# --------------------------------------------------------- digamma family


def digamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"digamma needs x > 0, got {x}")
    acc = 0.0
    while x < STIRLING_SHIFT:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    p = inv2
    series = 0.0
    for c in _DIGAMMA_COEF:
        series += c * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - series


def _phi_asymptotic(x: float) -> float:
    inv2 = 1.0 / (x * x)
    p = inv2
    series = 0.0
    for c in _DIGAMMA_COEF:
        series += c * p
        p *= inv2
    return -series


def phi_ramanujan(x: float) -> float:
    """psi(x) + 1/(2x) - log x, evaluated without cancellation for large x."""
    if not x > 0:
        raise DomainError(f"phi needs x > 0, got {x}")
    if x >= STIRLING_SHIFT:
        return _phi_asymptotic(x)
    shift = math.ceil(STIRLING_SHIFT - x)
    X = x + shift
    harmonic = sum(1.0 / (x + k) for k in range(shift))
    return _phi_asymptotic(X) + 0.5 / x - 0.5 / X - harmonic + math.log1p(shift / x)


def polygamma(k: int, x: float) -> float:
    """k-th derivative of digamma via (-1)^{k+1} k! zeta(k+1, x)."""
    if k < 1 or int(k) != k:
        raise DomainError("polygamma order must be an integer >= 1")
    if not x > 0:
        raise DomainError(f"polygamma needs x > 0, got {x}")
    sign = -1.0 if k % 2 == 0 else 1.0
    return sign * math.factorial(k) * hurwitz_zeta(k + 1, x).real


# ------------------------------------------------------------------- zeta


def _direct_count(z: complex, a: float) -> int:
    """Terms summed directly before the Euler-Maclaurin tail takes over."""
    return max(0, math.ceil(12.0 + 1.2 * abs(z) - a))


def _em_regular(z, a: float, order: int):
    """Split zeta(z, a) = regular + X^{1-z}/(z-1) with X = N + a.

    Returns (regular, X). ``z`` may be a float (real fast path) or complex.
    """
    N = _direct_count(z, a)
    head = 0.0
    for n in range(N):
        head += (n + a) ** (-z)
    X = N + a
    xz = X ** (-z)
    # f(x) = x^{-z}: f^{(2j-1)}(X) = -(z)_{2j-1} X^{-z-2j+1}
    derivs = []
    poch = z
    pw = xz / X
    inv2 = 1.0 / (X * X)
    for j in range(1, order + 2):
        derivs.append(-poch * pw)
        poch *= (z + 2 * j - 1) * (z + 2 * j)
        pw *= inv2
    corr, _, _ = bernoulli_corrections(lambda j: derivs[j - 1], order)
    return head + 0.5 * xz + corr, X


def _real_or_complex(z: complex):
    return z.real if z.imag == 0.0 else z


def hurwitz_zeta(z, a: float, ctx: PrecisionContext = DEFAULT_CONTEXT) -> complex:
    """zeta(z, a) = sum_{n>=0} (n+a)^{-z}, continued to Re z > -1."""
    z = as_complex(z)
    if z == 1:
        raise PoleError("Hurwitz zeta has a pole at z = 1")
    if not a > 0:
        raise DomainError(f"Hurwitz zeta needs a > 0, got {a}")
    if not z.real > -1:
        raise DomainError("Hurwitz zeta supported only for Re z > -1")
    zz = _real_or_complex(z)
    regular, X = _em_regular(zz, float(a), ctx.em_order)
    return complex(regular + X ** (1 - zz) / (zz - 1))


def zeta_times_pole(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> complex:
    """(s - 1) zeta(s), finite and smooth through s = 1."""
    s = as_complex(s)
    if s.real >= 0.5:
        ss = _real_or_complex(s)
        regular, X = _em_regular(ss, 1.0, ctx.em_order)
        return complex((ss - 1) * regular + X ** (1 - ss))
    return (s - 1) * riemann_zeta(s, ctx)


def _sin_half_pi_over_minus(s: complex) -> complex:
    """sin(pi s / 2) / (-s), analytic at s = 0."""
    if abs(s) < 1e-4:
        u = 0.5 * math.pi * s
        return -0.5 * math.pi * (1 - u * u / 6 + u ** 4 / 120)
    return -cmath.sin(0.5 * math.pi * s) / s


def riemann_zeta(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> complex:
    """zeta(s); Euler-Maclaurin for Re s >= 1/2, functional equation below."""
    s = as_complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s.real >= 0.5:
        return hurwitz_zeta(s, 1.0, ctx)
    # zeta(s) = 2^s pi^{s-1} Gamma(1-s) sin(pi s/2) zeta(1-s), with the
    # removable 0 * pole at s = 0 folded into sin(pi s/2)/(-s) * (-s) zeta(1-s).
    u = 1 - s
    return (
        2 ** s
        * math.pi ** (s - 1)
        * gamma(u)
        * _sin_half_pi_over_minus(s)
        * zeta_times_pole(u, ctx)
    )


def zeta_deriv_zero() -> float:
    """zeta'(0) = -log(2 pi) / 2."""
    return -0.5 * LOG_2PI


# --------------------------------------------------------------- xi and Xi

XI_POLE_RADIUS = 1e-3


def xi_small(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> complex:
    """xi(s) = (s-1) pi^{-s/2} Gamma(1+s/2) zeta(s)."""
    s = as_complex(s)
    g_arg = 1 + 0.5 * s
    if _is_nonpositive_integer(g_arg):
        # trivial zero of zeta cancels the Gamma pole; use xi(s) = xi(1-s)
        return xi_small(1 - s, ctx)
    front = math.pi ** (-0.5 * s) * gamma(g_arg)
    if abs(s - 1) < XI_POLE_RADIUS:
        return front * zeta_times_pole(s, ctx)
    return (s - 1) * front * riemann_zeta(s, ctx)


def xi_capital(t, ctx: PrecisionContext = DEFAULT_CONTEXT) -> complex:
    """Xi(t) = xi(1/2 + i t)."""
    return xi_small(0.5 + 1j * as_complex(t), ctx)


# ----------------------------------------------------------------- varphi


def _expm1_over(w, L: float):
    """(exp(w L) - 1) / w, stable for small w L."""
    u = w * L
    if abs(u) < 1e-3:
        term = L
        total = L
        for k in range(2, 9):
            term = term * u / k
            total += term
        return total
    if isinstance(u, float):
        return math.expm1(u) / w
    return (cmath.exp(u) - 1) / w


def _varphi(z, x: float, order: int):
    """zeta(z,x) - x^{-z}/2 + x^{1-z}/(1-z) with the pole terms combined
    analytically, so the value stays accurate near z = 1 and for large x."""
    N = _direct_count(z, x)
    regular, X = _em_regular(z, x, order)
    # regular already holds sum_{n<N} + X^{-z}/2 + corrections
    bracket = -(x ** (1 - z)) * _expm1_over(1 - z, math.log(X / x)) if N else 0.0
    return regular - 0.5 * x ** (-z) + bracket


def varphi(z, x: float, ctx: PrecisionContext = DEFAULT_CONTEXT) -> complex:
    """varphi(z, x) = zeta(z, x) - x^{-z}/2 + x^{1-z}/(1-z) for 0 < Re z < 2."""
    z = as_complex(z)
    if z == 1:
        raise PoleError("varphi at z = 1 is a limit; use varphi_limit_at_one")
    if not 0 < z.real < 2:
        raise DomainError("varphi needs 0 < Re z < 2")
    if not x > 0:
        raise DomainError(f"varphi needs x > 0, got {x}")
    return complex(_varphi(_real_or_complex(z), float(x), ctx.em_order))


def varphi_limit_at_one(x: float) -> float:
    """lim_{z->1} varphi(z, x) = -phi(x)."""
    return -phi_ramanujan(x)
