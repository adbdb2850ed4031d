"""Foundation arithmetic: precision settings, Bernoulli numbers,
Euler-Maclaurin tails and adaptive Gauss-Legendre quadrature.

Complex quantities are plain Python ``complex`` values throughout; use
:func:`as_complex` at public boundaries to reject NaN/inf.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import BudgetError, CapacityError, ContractError, DomainError

BERNOULLI_CAPACITY = 120
GL_ORDER = 15

_GL_NODES, _GL_WEIGHTS = (tuple(map(float, v)) for v in np.polynomial.legendre.leggauss(GL_ORDER))


@dataclass(frozen=True)
class PrecisionContext:
    """Tolerances and budgets threaded through every evaluation.

    ``digits`` > 0 switches on the extended-precision oracle side in the
    harness; ``tmax`` overrides the truncation point chosen for
    semi-infinite integrals.
    """

    target_rel_tol: float = 1e-10
    identity_tol: float = 1e-8
    max_quad_evals: int = 200_000
    em_order: int = 8
    tmax: Optional[float] = None
    digits: int = 0

    def __post_init__(self):
        if not 0 < self.target_rel_tol <= self.identity_tol < 1:
            raise ContractError("need 0 < target_rel_tol <= identity_tol < 1")
        if self.em_order < 2 or self.em_order % 2:
            raise ContractError("em_order must be even and >= 2")
        if self.max_quad_evals < 1000:
            raise ContractError("max_quad_evals must be >= 1000")
        if self.tmax is not None and not self.tmax > 0:
            raise ContractError("tmax must be positive")
        if self.digits < 0:
            raise ContractError("digits must be non-negative")


DEFAULT_CONTEXT = PrecisionContext()


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    err_estimate: float
    evals: int
    truncation_point: float


@dataclass(frozen=True)
class EMTail:
    value: complex
    err_estimate: float
    order: int


def as_complex(z) -> complex:
    """Coerce to ``complex`` and reject non-finite components."""
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"non-finite complex value {w!r}")
    return w


def is_real(z: complex) -> bool:
    return complex(z).imag == 0.0


# ---------------------------------------------------------------- Bernoulli


@lru_cache(maxsize=1)
def _bernoulli_fractions() -> tuple:
    B = [Fraction(1)]
    for n in range(1, BERNOULLI_CAPACITY + 1):
        acc = sum(comb(n + 1, k) * B[k] for k in range(n))
        B.append(-acc / (n + 1))
    return tuple(B)


def bernoulli_fraction(n: int) -> Fraction:
    """Exact B_n (with the B_1 = -1/2 convention)."""
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    if n > BERNOULLI_CAPACITY:
        raise CapacityError(f"B_{n} exceeds table capacity {BERNOULLI_CAPACITY}")
    return _bernoulli_fractions()[n]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> float:
    """B_n as a float. Odd n > 1 give 0 by convention."""
    return float(bernoulli_fraction(n))


@dataclass(frozen=True)
class BernoulliTable:
    """Even-index Bernoulli numbers B_0, B_2, ..., B_{2N} as exact rationals."""

    values: tuple

    @classmethod
    def build(cls, count: int = BERNOULLI_CAPACITY // 2) -> "BernoulliTable":
        return cls(tuple(bernoulli_fraction(2 * j) for j in range(count + 1)))

    def recurrence_residual(self, n: int) -> Fraction:
        """Sum_{k=0}^{n} C(n+1, k) B_k, which vanishes for n >= 1."""
        return sum(comb(n + 1, k) * bernoulli_fraction(k) for k in range(n + 1))


@lru_cache(maxsize=None)
def em_coefficient(j: int) -> float:
    """B_{2j} / (2j)!"""
    return float(bernoulli_fraction(2 * j) / math.factorial(2 * j))


# ---------------------------------------------------------- Euler-Maclaurin


def bernoulli_corrections(odd_derivative: Callable[[int], complex], order: int):
    """Sum of -B_{2j}/(2j)! f^{(2j-1)}(N) for j = 1..order.

    ``odd_derivative(j)`` must return f^{(2j-1)}(N). Stops early once the
    terms start growing (divergent asymptotic regime). Returns
    ``(sum, first omitted term magnitude, order used)``.
    """
    total = 0j
    prev = math.inf
    for j in range(1, order + 2):
        term = -em_coefficient(j) * odd_derivative(j)
        mag = abs(term)
        if j == order + 1 or mag > prev:
            return total, mag, j - 1
        total += term
        prev = mag
    raise AssertionError("unreachable")


def euler_maclaurin_tail(
    f: Callable[[float], complex],
    derivs: Callable[[int, float], complex],
    N: int,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    *,
    integral: complex,
) -> EMTail:
    """Approximate sum_{k >= N} f(k).

    ``integral`` is the caller-supplied value of the integral of f over
    [N, inf); ``derivs(order, x)`` returns the order-th derivative of f.
    """
    fN = as_complex(f(N))
    corr, err, order = bernoulli_corrections(lambda j: derivs(2 * j - 1, N), ctx.em_order)
    value = complex(integral) + 0.5 * fN + corr
    scale = max(abs(value), abs(fN), 1e-300)
    if order == 0 or err > ctx.identity_tol * scale:
        raise ContractError(
            f"Euler-Maclaurin corrections diverge at N={N} (order {order}, err {err:.3g})"
        )
    return EMTail(value, err, order)


# -------------------------------------------------------------- quadrature


def _gl_panel(f, a: float, b: float) -> complex:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    s = 0j
    for x, w in zip(_GL_NODES, _GL_WEIGHTS):
        v = f(c + h * x)
        if not cmath.isfinite(v):
            raise DomainError(f"integrand not finite at t={c + h * x!r}")
        s += w * v
    return h * s


def integrate_finite(
    f: Callable[[float], complex],
    a: float,
    b: float,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    *,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
    initial_panels: int = 1,
    breakpoints: Optional[Sequence[float]] = None,
) -> QuadratureResult:
    """Globally adaptive 15-point Gauss-Legendre quadrature on [a, b].

    Each panel's error is the difference between the single-panel rule and
    the rule applied to its two halves; the panel with the largest error is
    bisected until the summed error meets max(abs_tol, rel_tol*|I|).
    ``breakpoints`` (strictly increasing, from a to b) overrides the uniform
    initial split.
    """
    if not a < b:
        raise ContractError(f"integrate_finite needs a < b, got [{a}, {b}]")
    rel_tol = ctx.target_rel_tol if rel_tol is None else rel_tol
    abs_tol = 1e-2 * rel_tol if abs_tol is None else abs_tol
    evals = 0

    def refine(lo, hi, whole):
        nonlocal evals
        mid = 0.5 * (lo + hi)
        left = _gl_panel(f, lo, mid)
        right = _gl_panel(f, mid, hi)
        evals += 2 * GL_ORDER
        value = left + right
        return (-abs(whole - value), lo, hi, value, left, right)

    heap = []
    if breakpoints is None:
        edges = np.linspace(a, b, max(1, initial_panels) + 1)
    else:
        edges = np.asarray(breakpoints, dtype=float)
        if edges[0] != a or edges[-1] != b or np.any(np.diff(edges) <= 0):
            raise ContractError("breakpoints must increase strictly from a to b")
    for lo, hi in zip(edges[:-1], edges[1:]):
        whole = _gl_panel(f, float(lo), float(hi))
        evals += GL_ORDER
        heap.append(refine(float(lo), float(hi), whole))
    heapq.heapify(heap)

    while True:
        total = sum(p[3] for p in heap)
        err = -sum(p[0] for p in heap)
        if err <= max(abs_tol, rel_tol * abs(total)):
            return QuadratureResult(total, err, evals, b)
        if evals + 4 * GL_ORDER > ctx.max_quad_evals:
            raise BudgetError(
                f"quadrature budget {ctx.max_quad_evals} exhausted on [{a}, {b}]",
                best_estimate=total,
                err_estimate=err,
            )
        _, lo, hi, _, left, right = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise BudgetError(
                f"panel [{lo}, {hi}] cannot be bisected further",
                best_estimate=total,
                err_estimate=err,
            )
        heapq.heappush(heap, refine(lo, mid, left))
        heapq.heappush(heap, refine(mid, hi, right))


_TRUNCATION_SAMPLES = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0)


def truncation_point(
    f: Callable[[float], complex],
    decay_rate: float,
    tail_tol: float,
    start: float = 0.0,
) -> float:
    """Smallest sampled T with C*exp(-decay_rate*T) < tail_tol.

    C is estimated from |f| at fixed offsets beyond ``start``; each sample
    contributes t_i + max(0, log(|f(t_i)|/tail_tol))/decay_rate, so T never
    grows when the decay rate increases.
    """
    if not decay_rate > 0:
        raise ContractError("decay_rate must be positive")
    T = start + _TRUNCATION_SAMPLES[-1]
    for off in _TRUNCATION_SAMPLES:
        t = start + off
        mag = abs(f(t))
        if not math.isfinite(mag):
            raise DomainError(f"integrand not finite at t={t!r}")
        if mag > tail_tol:
            T = max(T, t + math.log(mag / tail_tol) / decay_rate)
    return T


MAX_PANEL = 4.0


def _graded_edges(start: float, T: float, decay_rate: float) -> list:
    """Panels of width 1/decay_rate at ``start``, doubling up to MAX_PANEL.

    Fast-decaying integrands keep all their mass within a few 1/decay_rate
    of the start; a single wide first panel could then agree with its own
    halves while missing that mass entirely.
    """
    edges = [start]
    h = min(MAX_PANEL, 1.0 / decay_rate)
    while edges[-1] + h < T:
        edges.append(edges[-1] + h)
        h = min(MAX_PANEL, 2 * h)
    edges.append(T)
    return edges


def integrate_semi_infinite(
    f: Callable[[float], complex],
    decay_rate: float,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    *,
    start: float = 0.0,
    tail_tol: Optional[float] = None,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
    stretch: float = 1.0,
) -> QuadratureResult:
    """Integral of f over [start, inf) by explicit truncation.

    The caller guarantees |f(t)| <= C exp(-decay_rate t) past a moderate
    t0. ``stretch`` scales the chosen truncation point (robustness checks).
    """
    if not decay_rate > 0:
        raise ContractError("decay_rate must be positive")
    tail_tol = 1e-3 * ctx.identity_tol if tail_tol is None else tail_tol
    if ctx.tmax is not None:
        T = ctx.tmax
    else:
        T = truncation_point(f, decay_rate, tail_tol, start)
    T = start + stretch * (T - start)
    res = integrate_finite(
        f, start, T, ctx, rel_tol=rel_tol, abs_tol=abs_tol, breakpoints=_graded_edges(start, T, decay_rate)
    )
    return QuadratureResult(res.value, res.err_estimate, res.evals, T)
