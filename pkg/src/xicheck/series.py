"""Infinite-series sides of the modular relations.

Every series is summed directly up to the point where its terms are well
described by the large-argument expansion of the Hurwitz zeta function; the
remainder is then summed term-by-term in closed form, each power of the
summation index collapsing to a Hurwitz zeta value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import BudgetError, DomainError, PoleError, RangeError
from .numeric import DEFAULT_CONTEXT, PrecisionContext, as_complex, bernoulli, em_coefficient
from .specfun import (
    EULER_GAMMA,
    LOG_2PI,
    _real_or_complex,
    _varphi,
    hurwitz_zeta,
    phi_ramanujan,
    polygamma,
    riemann_zeta,
)

Side = Literal["alpha", "beta"]

ALPHA_RANGE = (1e-3, 1e3)
MAX_DIRECT_TERMS = 200_000
TAIL_X0 = 20.0
NEAR_ONE = 1e-6


@dataclass(frozen=True)
class ModularPair:
    alpha: float
    beta: float

    @classmethod
    def from_alpha(cls, alpha: float) -> "ModularPair":
        alpha = float(alpha)
        if not alpha > 0:
            raise DomainError(f"alpha must be positive, got {alpha}")
        return cls(alpha, 1.0 / alpha)

    def side(self, which: Side) -> float:
        if which == "alpha":
            return self.alpha
        if which == "beta":
            return self.beta
        raise DomainError(f"side must be 'alpha' or 'beta', got {which!r}")


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_summed: int
    tail_estimate: float


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    lo, hi = ALPHA_RANGE
    if not lo <= alpha <= hi:
        raise RangeError(f"alpha={alpha:g} outside supported range [{lo:g}, {hi:g}]")
    return alpha


def _direct_limit(n: float) -> int:
    N = max(1, math.ceil(n))
    if N > MAX_DIRECT_TERMS:
        raise BudgetError(f"series needs {N} direct terms (limit {MAX_DIRECT_TERMS})")
    return N


def _finish(value, N: int, err: float, ctx: PrecisionContext) -> SeriesResult:
    if not err < 0.1 * ctx.identity_tol * max(1.0, abs(value)):
        raise BudgetError(f"series tail estimate {err:.3g} too large", best_estimate=value)
    return SeriesResult(complex(value), N - 1, err)


def _hurwitz_sum_tail(z, c: float, h: float, N: int, order: int):
    """sum_{n>=N} zeta(z, (n+c) h), from the large-argument expansion
    zeta(z,y) ~ y^{1-z}/(z-1) + y^{-z}/2 + sum_j B_2j/(2j)! (z)_{2j-1} y^{1-z-2j}.
    """
    b = N + c
    value = h ** (1 - z) * hurwitz_zeta(z - 1, b) / (z - 1) + 0.5 * h ** (-z) * hurwitz_zeta(z, b)
    poch = z
    err = 0.0
    for j in range(1, order + 2):
        p = z + 2 * j - 1
        term = em_coefficient(j) * poch * h ** (-p) * hurwitz_zeta(p, b)
        if j == order + 1:
            err = abs(term)
        else:
            value += term
        poch *= (z + 2 * j - 1) * (z + 2 * j)
    return value, err


def sum_hurwitz_shifted(z, alpha: float, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SeriesResult:
    """sum_{k>=1} zeta(z, 1 + k/alpha) for Re z > 2."""
    z = as_complex(z)
    if not z.real > 2:
        raise DomainError("sum_hurwitz_shifted needs Re z > 2")
    alpha = _check_alpha(alpha)
    zz = _real_or_complex(z)
    N = _direct_limit((TAIL_X0 + abs(z) - 1) * alpha)
    head = sum(hurwitz_zeta(z, 1 + k / alpha) for k in range(1, N))
    tail, err = _hurwitz_sum_tail(zz, alpha, 1 / alpha, N, ctx.em_order)
    return _finish(head + tail, N, err, ctx)


def sum_varphi(z, alpha: float, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SeriesResult:
    """sum_{n>=1} varphi(z, n alpha) for 0 < Re z < 2, z != 1."""
    z = as_complex(z)
    if not 0 < z.real < 2:
        raise DomainError("sum_varphi needs 0 < Re z < 2")
    if z == 1:
        raise PoleError("sum_varphi at z = 1: use the Ramanujan (phi) series")
    alpha = _check_alpha(alpha)
    zz = _real_or_complex(z)
    N = _direct_limit((TAIL_X0 + abs(z)) / alpha)
    head = sum(_varphi(zz, n * alpha, ctx.em_order) for n in range(1, N))
    # varphi(z, x) ~ sum_j B_2j/(2j)! (z)_{2j-1} x^{1-z-2j}
    tail = 0.0
    err = 0.0
    poch = zz
    for j in range(1, ctx.em_order + 2):
        p = zz + 2 * j - 1
        term = em_coefficient(j) * poch * alpha ** (-p) * hurwitz_zeta(p, N)
        if j == ctx.em_order + 1:
            err = abs(term)
        else:
            tail += term
        poch *= (zz + 2 * j - 1) * (zz + 2 * j)
    return _finish(head + tail, N, err, ctx)


def sum_phi(alpha: float, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SeriesResult:
    """sum_{n>=1} phi(n alpha) with phi(x) = psi(x) + 1/(2x) - log x."""
    alpha = _check_alpha(alpha)
    N = _direct_limit(TAIL_X0 / alpha)
    head = math.fsum(phi_ramanujan(n * alpha) for n in range(1, N))
    # phi(x) ~ -sum_j B_2j / (2j x^{2j})
    tail = 0.0
    err = 0.0
    for j in range(1, ctx.em_order + 2):
        term = -bernoulli(2 * j) / (2 * j) * alpha ** (-2 * j) * hurwitz_zeta(2 * j, N).real
        if j == ctx.em_order + 1:
            err = abs(term)
        else:
            tail += term
    return _finish(head + tail, N, err, ctx)


def sum_polygamma(k: int, x: float, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SeriesResult:
    """sum_{n>=1} psi^{(k)}(1 + n x) for integer k >= 2."""
    if int(k) != k or k < 2:
        raise DomainError("sum_polygamma needs an integer k >= 2")
    k = int(k)
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    _check_alpha(x)
    N = _direct_limit((TAIL_X0 + k) / x)
    head = math.fsum(polygamma(k, 1 + n * x) for n in range(1, N))
    sign = 1.0 if k % 2 else -1.0
    tail, err = _hurwitz_sum_tail(float(k + 1), 1 / x, x, N, ctx.em_order)
    scale = sign * math.factorial(k)
    return _finish(head + scale * tail.real, N, abs(scale) * err, ctx)


# ------------------------------------------------------- assembled sides


def lhs_theorem31(z, pair: ModularPair, side: Side = "alpha", ctx: PrecisionContext = DEFAULT_CONTEXT) -> complex:
    """a^{-z/2} sum_{k>=1} zeta(z, 1 + k/a) for a = alpha or beta."""
    a = pair.side(side)
    z = as_complex(z)
    return a ** (-z / 2) * sum_hurwitz_shifted(z, a, ctx).value


def _ramanujan_brace(a: float, ctx: PrecisionContext) -> float:
    return (EULER_GAMMA - LOG_2PI - math.log(a)) / (2 * a) + sum_phi(a, ctx).value.real


def lhs_ramanujan(pair: ModularPair, side: Side = "alpha", ctx: PrecisionContext = DEFAULT_CONTEXT) -> float:
    """sqrt(a) {(gamma - log(2 pi a))/(2a) + sum_{n>=1} phi(n a)}."""
    a = pair.side(side)
    return math.sqrt(a) * _ramanujan_brace(a, ctx)


def lhs_theorem41(z, pair: ModularPair, side: Side = "alpha", ctx: PrecisionContext = DEFAULT_CONTEXT) -> complex:
    """a^{z/2} (sum varphi(z, n a) - zeta(z)/(2 a^z) - zeta(z-1)/(a (z-1))).

    Within NEAR_ONE of z = 1 the removable singularity is filled in with the
    closed-form limit -sqrt(a){(gamma - log 2 pi a)/(2a) + sum phi(n a)}.
    """
    z = as_complex(z)
    if not 0 < z.real < 2:
        raise DomainError("lhs_theorem41 needs 0 < Re z < 2")
    a = pair.side(side)
    if abs(z - 1) < NEAR_ONE:
        return complex(-lhs_ramanujan(pair, side, ctx))
    S = sum_varphi(z, a, ctx).value
    return a ** (z / 2) * (S - riemann_zeta(z, ctx) / (2 * a ** z) - riemann_zeta(z - 1, ctx) / (a * (z - 1)))
