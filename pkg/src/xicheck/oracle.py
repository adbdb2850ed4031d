"""Extended-precision reference values computed with mpmath.

These routes share no code with the double-precision engine: series are
summed by mpmath's own Euler-Maclaurin acceleration and x-integrals by
tanh-sinh quadrature. They are slow (seconds per value) and meant for
spot checks.
"""

from __future__ import annotations

import mpmath as mp

from .errors import DomainError


def _c(v) -> complex:
    return complex(v)


def _workdps(digits: int):
    if digits < 15:
        raise DomainError("oracle needs at least 15 digits")
    return mp.workdps(digits)


def _em_sum(term):
    return mp.nsum(term, [1, mp.inf], method="euler-maclaurin")


def theorem31(z, alpha, digits: int = 30) -> complex:
    with _workdps(digits):
        z = mp.mpmathify(z)
        a = mp.mpf(alpha)
        return _c(a ** (-z / 2) * _em_sum(lambda k: mp.zeta(z, 1 + k / a)))


def theorem41(z, alpha, digits: int = 30) -> complex:
    with _workdps(digits):
        z = mp.mpmathify(z)
        a = mp.mpf(alpha)

        def varphi(x):
            return mp.zeta(z, x) - x ** (-z) / 2 + x ** (1 - z) / (1 - z)

        S = _em_sum(lambda n: varphi(n * a))
        return _c(a ** (z / 2) * (S - mp.zeta(z) / (2 * a ** z) - mp.zeta(z - 1) / (a * (z - 1))))


def zeta_difference(z, digits: int = 30) -> complex:
    """zeta(z-1) - zeta(z)."""
    with _workdps(digits):
        z = mp.mpmathify(z)
        return _c(mp.zeta(z - 1) - mp.zeta(z))


def ramanujan(alpha, digits: int = 30) -> float:
    with _workdps(digits):
        a = mp.mpf(alpha)

        def phi(x):
            return mp.digamma(x) + 1 / (2 * x) - mp.log(x)

        S = _em_sum(lambda n: phi(n * a))
        return float(mp.sqrt(a) * ((mp.euler - mp.log(2 * mp.pi * a)) / (2 * a) + S))


def guinand(k: int, x, digits: int = 30) -> float:
    """sum_{n>=1} psi^{(k)}(1 + n x)."""
    with _workdps(digits):
        x = mp.mpf(x)
        return float(_em_sum(lambda n: mp.polygamma(k, 1 + n * x)))


def bose_product(p, n, digits: int = 30) -> complex:
    """int_0^inf x^p / ((e^{x e^n}-1)(e^{x e^{-n}}-1)) dx."""
    with _workdps(digits):
        p = mp.mpmathify(p)
        a, b = mp.exp(n), mp.exp(-n)
        return _c(mp.quad(lambda x: x ** p / (mp.expm1(a * x) * mp.expm1(b * x)), [0, 1, mp.inf]))


def eq19_rhs(s, n, digits: int = 30) -> complex:
    with _workdps(digits):
        s = mp.mpmathify(s)
        pref = (4 * mp.pi) ** (-(s - 3) / 2) / 8
        return _c(pref * mp.mpmathify(bose_product(s, n, digits)))


def eq20_rhs(s, n, digits: int = 30) -> complex:
    # the subtraction inside g loses about log10(1/x) digits near 0; working
    # at twice the requested precision keeps the result clean
    with _workdps(2 * digits):
        s = mp.mpmathify(s)
        a, b = mp.exp(n), mp.exp(-n)

        def g(u):
            return 1 / mp.expm1(u) - 1 / u

        val = mp.quad(lambda x: x ** s * g(a * x) * g(b * x), [0, 1, mp.inf])
        return _c((4 * mp.pi) ** (-(s - 3) / 2) / 8 * val)


def modular_pair(s, alpha, digits: int = 30) -> complex:
    with _workdps(digits):
        s = mp.mpmathify(s)
        a = mp.mpf(alpha)
        two_pi = 2 * mp.pi
        val = mp.quad(lambda x: x ** s / (mp.expm1(two_pi * x) * mp.expm1(a * x)), [0, 1, mp.inf])
        return _c(a ** ((s + 1) / 2) / 2 * val)


def sine_closed(alpha, x, digits: int = 30) -> float:
    with _workdps(digits):
        c = mp.mpf(alpha) * mp.mpf(x)
        return float((1 / mp.expm1(c) - 1 / c + mp.mpf(1) / 2) / 2)


def int12_closed(s, digits: int = 30):
    with _workdps(digits):
        s = mp.mpf(s)
        first = mp.zeta(1 - s) / (4 * mp.cos(mp.pi * s / 2))
        second = mp.zeta(-s) / (8 * mp.sin(mp.pi * s / 2))
        return float(first), float(second)


def beta_series(x, z, digits: int = 30) -> complex:
    """sum_{m>=1} (1 + x m)^{-z} = x^{-z} zeta(z, 1 + 1/x)."""
    with _workdps(digits):
        x = mp.mpf(x)
        z = mp.mpmathify(z)
        return _c(x ** (-z) * mp.zeta(z, 1 + 1 / x))
