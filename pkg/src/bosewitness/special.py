"""Real-argument Riemann zeta and polylogarithm.

Only what the ideal Bose gas needs: ``zeta(s)`` for s > 1 and ``Li_s(z)`` for
z in [0, 1]. The zeta function uses Euler-Maclaurin summation; the
polylogarithm sums its defining series with a certified geometric tail bound
and switches to the expansion in ``mu = ln z`` once the direct series would
need more than ``max_terms`` terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentZeta, DomainError

# B_2, B_4, ..., B_20
_BERNOULLI = (
    1 / 6,
    -1 / 30,
    1 / 42,
    -1 / 30,
    5 / 66,
    -691 / 2730,
    7 / 6,
    -3617 / 510,
    43867 / 798,
    -174611 / 330,
)
_EM_DIRECT_TERMS = 50


@dataclass(frozen=True)
class SeriesTolerance:
    relative_epsilon: float = 1e-15
    max_terms: int = 100_000

    def __post_init__(self):
        if not 0 < self.relative_epsilon < 1e-6:
            raise DomainError("relative_epsilon must lie in (0, 1e-6)")
        if self.max_terms < 10_000:
            raise DomainError("max_terms must be at least 10^4")


DEFAULT_TOLERANCE = SeriesTolerance()


def _zeta_em(s: float) -> float:
    """Euler-Maclaurin evaluation, valid for any real s != 1 not too negative."""
    n = _EM_DIRECT_TERMS
    parts = [k ** (-s) for k in range(1, n)]
    parts.append(n ** (1 - s) / (s - 1))
    parts.append(0.5 * n ** (-s))
    # rising product s (s+1) ... (s+2j-2) divided by (2j)!
    coeff = s / 2.0
    power = n ** (-s - 1)
    for j, b in enumerate(_BERNOULLI, start=1):
        parts.append(b * coeff * power)
        coeff *= (s + 2 * j - 1) * (s + 2 * j) / ((2 * j + 1) * (2 * j + 2))
        power /= n * n
    return math.fsum(parts)


def _zeta_any(s: float) -> float:
    """zeta on the whole real line minus s = 1 (reflection for s < 0)."""
    if s == 0:
        return -0.5
    if s < 0:
        if s == math.floor(s) and int(s) % 2 == 0:
            return 0.0
        return (
            2.0**s
            * math.pi ** (s - 1)
            * math.sin(math.pi * s / 2)
            * math.gamma(1 - s)
            * _zeta_em(1 - s)
        )
    return _zeta_em(s)


def zeta(s: float) -> float:
    """Riemann zeta function for real s > 1.

    Raises
    ------
    DivergentZeta
        For s <= 1. In the gas this is the signal that ``zeta(d/2)`` diverges
        for d <= 2 and there is no finite condensation temperature.
    """
    if not s > 1:
        raise DivergentZeta(f"zeta(s) diverges for s = {s} <= 1")
    return _zeta_em(s)


def _direct_terms_needed(mu: float, eps: float) -> float:
    # term ratio is at most z, so the tail after term K is <= z^K / (1 - z)
    # and the sum is >= z; solve z^K / (1 - z) < eps * z for K.
    return (math.log(eps) + math.log(-math.expm1(mu)) + mu) / mu


def _polylog_direct(s: float, z: float, nterms: int) -> float:
    k = np.arange(1, nterms + 1, dtype=float)
    terms = np.power(z, k) * np.power(k, -s)
    return math.fsum(terms)


def _harmonic(n: int) -> float:
    return math.fsum(1.0 / k for k in range(1, n + 1))


def _polylog_mu(s: float, mu: float, eps: float) -> float:
    """Li_s(e^mu) from the expansion around mu = 0, valid for -2 pi < mu < 0."""
    x = -mu
    parts = []
    n = round(s)
    integer = s == n
    if integer:
        parts.append(mu ** (n - 1) / math.factorial(n - 1) * (_harmonic(n - 1) - math.log(x)))
    else:
        parts.append(math.gamma(1 - s) * x ** (s - 1))
    term_scale = 1.0
    for k in range(0, 80):
        if k > 0:
            term_scale *= mu / k
        if integer and k == n - 1:
            continue
        t = _zeta_any(s - k) * term_scale
        parts.append(t)
        if k > s + 1 and abs(t) < eps * abs(math.fsum(parts)):
            break
    return math.fsum(parts)


def polylog_log(s: float, mu: float, tol: SeriesTolerance = DEFAULT_TOLERANCE) -> float:
    """Li_s(e^mu) for mu <= 0, without forming z = e^mu.

    Useful when z sits within rounding distance of 1, as happens for the
    fugacity just above the condensation temperature.
    """
    return _polylog(s, mu, math.exp(mu), tol)


def _polylog(s: float, mu: float, z: float, tol: SeriesTolerance) -> float:
    if not s > 0:
        raise DomainError(f"polylog order must be positive, got {s}")
    if mu > 0 or math.isnan(mu):
        raise DomainError(f"need mu = ln z <= 0, got {mu}")
    if mu == 0:
        if s <= 1:
            raise DomainError(f"Li_{s}(1) diverges")
        return zeta(s)
    if mu == -math.inf:
        return 0.0
    if s == 1:
        return -math.log1p(-z) if z < 0.5 else -math.log(-math.expm1(mu))
    if z == 0.0:
        return 0.0
    nterms = _direct_terms_needed(mu, tol.relative_epsilon)
    if nterms <= tol.max_terms or mu < -1.0:
        return _polylog_direct(s, z, max(1, math.ceil(nterms)))
    return _polylog_mu(s, mu, tol.relative_epsilon)


def polylog(s: float, z: float, tol: SeriesTolerance = DEFAULT_TOLERANCE) -> float:
    """Polylogarithm Li_s(z) = sum_k z^k / k^s for s > 0 and 0 <= z <= 1.

    Examples
    --------
    >>> round(polylog(1, 0.5), 12)
    0.69314718056
    """
    if not 0 <= z <= 1:
        raise DomainError(f"polylog argument must lie in [0, 1], got {z}")
    if z == 0:
        if not s > 0:
            raise DomainError(f"polylog order must be positive, got {s}")
        return 0.0
    return _polylog(s, math.log(z), z, tol)


def polylog_partial_sum(s: float, z: float, nterms: int) -> tuple[float, float]:
    """Compensated partial sum of the first ``nterms`` terms and a bound on the rest.

    The bound ``t_{K+1} / (1 - z)`` holds because successive terms shrink by
    at least a factor z.
    """
    if not 0 < z < 1:
        raise DomainError("partial sums need 0 < z < 1")
    mu = math.log(z)
    partial = _polylog_direct(s, z, nterms)
    tail = math.exp((nterms + 1) * mu - s * math.log(nterms + 1)) / (1 - z)
    return partial, tail
