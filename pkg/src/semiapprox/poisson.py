"""Exact Poisson machinery behind the central/tail split of the power sum.

The representation

    C^n - e^{n(C-1)} = sum_m P{X_n = m} (C^n - C^m),   X_n ~ Poisson(n),

turns the power-vs-exponential discrepancy into a Poisson average.  This
module owns the pmf (in log space), exact tail masses, the Tchebychev bound,
and the weighted-norm split itself.  Infinite sums are truncated once the
omitted probability mass drops below POISSON_MASS_TOL; the dropped mass is
reported, never ignored.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import linalg
from .errors import DomainError, InvalidInputError
from .tolerances import CONTRACTION_INPUT_TOL, POISSON_MASS_TOL


def poisson_log_pmf(n: int, m: int) -> float:
    _check_rate(n)
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    return -n + m * math.log(n) - math.lgamma(m + 1)


def poisson_pmf(n: int, m: int) -> float:
    """P{X_n = m} = e^{-n} n^m / m!, evaluated in log space."""
    return math.exp(poisson_log_pmf(n, m))


def _dropped_mass_bound(n: int, m_lo: int, m_hi: int, pmf: np.ndarray) -> float:
    """Upper bound on the true Poisson mass outside [m_lo, m_hi].

    Beyond the window the pmf decays at least geometrically (ratio n/(m+1)
    above, m/n below), so the dropped mass is bounded by geometric series
    anchored at the window edges.  This deliberately does not use
    1 - sum(pmf), whose float error would swamp a 1e-14 target.
    """
    ratio_hi = n / (m_hi + 1)
    if ratio_hi >= 1.0:
        return math.inf
    dropped = float(pmf[-1]) * ratio_hi / (1.0 - ratio_hi)
    if m_lo > 0:
        ratio_lo = m_lo / n
        if ratio_lo >= 1.0:
            return math.inf
        dropped += float(pmf[0]) * ratio_lo / (1.0 - ratio_lo)
    return dropped


def _pmf_window(n: int) -> tuple[int, np.ndarray, float]:
    """(m_lo, pmf values on [m_lo, m_hi], dropped-mass bound), widened as needed.

    The window grows until the certified dropped mass is below
    POISSON_MASS_TOL.  Terms outside the certified window contribute less
    than the truncation tolerance to any central/tail classification, so
    callers never need a wider window than this.
    """
    width = max(60.0, 25.0 * math.sqrt(n))
    while True:
        m_lo = max(0, int(n - width))
        m_hi = int(n + width) + 1
        ms = np.arange(m_lo, m_hi + 1)
        logs = -n + ms * math.log(n) - gammaln(ms + 1)
        pmf = np.exp(logs)
        dropped = _dropped_mass_bound(n, m_lo, m_hi, pmf)
        if dropped <= POISSON_MASS_TOL:
            return m_lo, pmf, dropped
        width *= 2.0


def poisson_tail(n: int, epsilon: float) -> float:
    """Exact P{|X_n - n| > epsilon} (strict inequality), truncated to 1e-14."""
    _check_rate(n)
    if epsilon <= 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    m_lo, pmf, _ = _pmf_window(n)
    ms = np.arange(m_lo, m_lo + pmf.size)
    return float(np.sum(pmf[np.abs(ms - n) > epsilon]))


def tchebychev_bound(n: int, epsilon: float) -> float:
    """Var(X_n)/epsilon^2 = n/epsilon^2."""
    _check_rate(n)
    if epsilon <= 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    return n / epsilon**2


def poisson_second_moment(n: int) -> float:
    """sum_m pmf(n, m) (m - n)^2; equals Var(X_n) = n."""
    _check_rate(n)
    m_lo, pmf, _ = _pmf_window(n)
    ms = np.arange(m_lo, m_lo + pmf.size)
    return float(np.sum(pmf * (ms - n) ** 2))


def poisson_first_abs_moment(n: int) -> float:
    """sum_m pmf(n, m) |m - n|; at most sqrt(n) by Cauchy-Schwarz."""
    _check_rate(n)
    m_lo, pmf, _ = _pmf_window(n)
    ms = np.arange(m_lo, m_lo + pmf.size)
    return float(np.sum(pmf * np.abs(ms - n)))


@dataclass(frozen=True)
class PoissonSplit:
    """Probability mass split at |m - n| <= epsilon, with the dropped mass."""

    rate_n: int
    epsilon: float
    central_mass: float
    tail_mass: float
    truncation_error: float


def split_masses(n: int, epsilon: float) -> PoissonSplit:
    _check_rate(n)
    if epsilon <= 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    m_lo, pmf, omitted = _pmf_window(n)
    ms = np.arange(m_lo, m_lo + pmf.size)
    central = float(np.sum(pmf[np.abs(ms - n) <= epsilon]))
    tail = float(np.sum(pmf[np.abs(ms - n) > epsilon]))
    return PoissonSplit(n, epsilon, central, tail, omitted)


def chernoff_split_sum(c, x, n: int, epsilon: float) -> tuple[float, float]:
    """Central and tail parts of e^{-n} sum_m (n^m/m!) ||(C^n - C^m) x||.

    C must be a contraction and x a unit vector.  The central part collects
    |m - n| <= epsilon, the tail the strict complement; the series is
    truncated at cumulative pmf mass POISSON_MASS_TOL.
    """
    _check_rate(n)
    if epsilon <= 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    a = linalg.as_operator(c)
    if linalg.op_norm(a) > 1.0 + CONTRACTION_INPUT_TOL:
        raise InvalidInputError("chernoff_split_sum requires a contraction")
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    if x.size != a.shape[0]:
        raise InvalidInputError("vector length must match operator dimension")
    if abs(np.linalg.norm(x) - 1.0) > 1e-12:
        raise InvalidInputError("x must be a unit vector")

    m_lo, pmf, _ = _pmf_window(n)
    m_hi = m_lo + pmf.size - 1

    # iterate y_m = C^m x once up to the window edge
    powers = np.empty((m_hi + 1, x.size), dtype=np.complex128)
    powers[0] = x
    for m in range(1, m_hi + 1):
        powers[m] = a @ powers[m - 1]
    x_n = powers[n]

    central = 0.0
    tail = 0.0
    for idx in range(pmf.size):
        m = m_lo + idx
        dist = float(np.linalg.norm(x_n - powers[m]))
        if abs(m - n) <= epsilon:
            central += pmf[idx] * dist
        else:
            tail += pmf[idx] * dist
    return central, tail


def _check_rate(n: int) -> None:
    if not isinstance(n, numbers.Integral) or n < 1:
        raise DomainError(f"rate n must be a positive integer, got {n!r}")
