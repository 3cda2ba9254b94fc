"""Closed-form constants and error bounds, each as a pure scalar function.

Naming convention for the distance inputs, shared with the test-suite:

    nx = ||x||, d1 = ||(1 - C)x||, d2 = ||(1 - C)^2 x||, d3 = ||(1 - C)^3 x||.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateInputError, DomainError
from .poisson import poisson_second_moment

EULER_UPPER_M = 2.0 + 2.0 / math.sqrt(3.0)


def sqrt_n_bound(n: int, d1: float) -> float:
    """sqrt(n) * ||(C - 1)x||: the classical power-vs-exponential estimate."""
    _check_n(n)
    if d1 < 0.0:
        raise DomainError("d1 must be nonnegative")
    return math.sqrt(n) * d1


def poisson_abs_moment_identity(n: int) -> float:
    """Second central moment of Poisson(n), summed directly; equals n."""
    _check_n(n)
    return poisson_second_moment(n)


def epsilon_star(n: int, nx: float, d1: float) -> float:
    """Optimal splitting parameter (4 n ||x|| / ||(1-C)x||)^(1/3)."""
    _check_n(n)
    if nx <= 0.0:
        raise DomainError("nx must be positive")
    if d1 <= 0.0:
        raise DegenerateInputError(
            "d1 = 0 makes the split degenerate; use the tail term alone"
        )
    return (4.0 * n * nx / d1) ** (1.0 / 3.0)


def cbrt_vector_bound(n: int, eps: float, nx: float, d1: float) -> float:
    """Two-term split bound (n / eps^2) * 2 ||x|| + eps * ||(1-C)x||."""
    _check_n(n)
    if eps <= 0.0:
        raise DomainError("eps must be positive")
    return (n / eps**2) * 2.0 * nx + eps * d1


def cbrt_norm_bound(n: int, norm_one_minus_c: float) -> float:
    """Operator-norm form (3/2) n^(1/3) ||2(1 - C)||^(2/3)."""
    _check_n(n)
    if norm_one_minus_c < 0.0:
        raise DomainError("norm must be nonnegative")
    return 1.5 * n ** (1.0 / 3.0) * (2.0 * norm_one_minus_c) ** (2.0 / 3.0)


def telescopic_bound(n: int, d2: float, d3: float) -> float:
    """(n/2) (||(C-1)^2 x|| + (e^2/3) ||(C-1)^3 x||)."""
    _check_n(n)
    if d2 < 0.0 or d3 < 0.0:
        raise DomainError("d2, d3 must be nonnegative")
    return 0.5 * n * (d2 + (math.e**2 / 3.0) * d3)


def ritt_constant(alpha: float, alpha_prime: float) -> float:
    """Contour constant K(alpha, alpha') controlling (n+1) ||C^n (1-C)||."""
    if not (0.0 <= alpha < alpha_prime < math.pi / 2):
        raise DomainError(
            f"need 0 <= alpha < alpha' < pi/2, got alpha={alpha}, alpha'={alpha_prime}"
        )
    log_sin = math.log(math.sin(alpha_prime))
    if log_sin == 0.0:
        # alpha' so close to pi/2 that sin rounds to 1; this is the pole
        return math.inf
    return (2.0 / (math.cos(alpha_prime) * math.sin(alpha_prime - alpha))) * (
        1.0 / math.pi - 1.0 / (math.e * log_sin)
    )


class KAlpha(NamedTuple):
    value: float
    alpha_prime: float


def k_alpha(alpha: float, grid: int = 2048) -> KAlpha:
    """min over alpha' in (alpha, pi/2) of ritt_constant, grid + golden-section.

    The 2048-point scan brackets the single interior minimum; golden-section
    then refines the minimizer to 1e-8 absolute in alpha'.
    """
    if not 0.0 <= alpha < math.pi / 2:
        raise DomainError(f"alpha must lie in [0, pi/2), got {alpha}")
    hi = math.pi / 2
    xs = [alpha + (hi - alpha) * (j + 1) / (grid + 1) for j in range(grid)]
    vals = [ritt_constant(alpha, x) for x in xs]
    i = min(range(grid), key=vals.__getitem__)
    lo_b = xs[i - 1] if i > 0 else alpha + 1e-12 * (hi - alpha)
    hi_b = xs[i + 1] if i < grid - 1 else hi - 1e-12 * (hi - alpha)

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo_b, hi_b
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = ritt_constant(alpha, c), ritt_constant(alpha, d)
    while b - a > 1e-8:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = ritt_constant(alpha, c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = ritt_constant(alpha, d)
    x_min = 0.5 * (a + b)
    return KAlpha(ritt_constant(alpha, x_min), x_min)


def l_alpha(alpha: float) -> float:
    """2 K_alpha + 2: prefactor of the operator-norm n^(-1/3) estimate."""
    return 2.0 * k_alpha(alpha).value + 2.0


def norm_chernoff_bound(n: int, alpha: float) -> float:
    """L_alpha / n^(1/3)."""
    _check_n(n)
    return l_alpha(alpha) / n ** (1.0 / 3.0)


class TwoParamBound(NamedTuple):
    value: float
    threshold_cleared: bool


def two_param_bound(n: int, delta: float, k_alpha_value: float) -> TwoParamBound:
    """2/n^(2 delta) + 2 K / n^(1/2 - delta), with its applicability flag.

    The derivation needs n > 2 ([n^(delta + 1/2)] - 1); the flag reports
    whether n clears that threshold (at delta = 1/6 every n >= 1 does).
    """
    _check_n(n)
    if not 0.0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 1/2), got {delta}")
    value = 2.0 / n ** (2.0 * delta) + 2.0 * k_alpha_value / n ** (0.5 - delta)
    cleared = n > 2 * (math.floor(n ** (delta + 0.5)) - 1)
    return TwoParamBound(value, cleared)


def selfadjoint_ritt_bound(n: int) -> float:
    """1/(n+1): the optimal self-adjoint bound for ||C^n (1-C)||."""
    _check_n(n)
    return 1.0 / (n + 1)


def selfadjoint_chernoff_bound(n: int) -> float:
    """e^{-1}/n: the optimal self-adjoint bound for ||C^n - e^{n(C-1)}||."""
    _check_n(n)
    return math.exp(-1.0) / n


def euler_upper_constant(alpha: float) -> float:
    """Certified upper constant min((pi - alpha)/alpha, 2 + 2/sqrt(3))."""
    if not 0.0 <= alpha < math.pi / 2:
        raise DomainError(f"alpha must lie in [0, pi/2), got {alpha}")
    if alpha == 0.0:
        return EULER_UPPER_M
    return min((math.pi - alpha) / alpha, EULER_UPPER_M)


def euler_bound(n: int, alpha: float) -> float:
    """Resolvent-power approximation bound M(alpha) / (cos(alpha)^2 n)."""
    _check_n(n)
    return euler_upper_constant(alpha) / (math.cos(alpha) ** 2 * n)


@dataclass(frozen=True)
class BoundSpec:
    """One evaluated bound instance, serializable for reports."""

    name: str
    inputs: dict
    value: float
    paper_tag: str

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "inputs": dict(self.inputs),
            "value": self.value,
            "paper_tag": self.paper_tag,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BoundSpec":
        return cls(
            name=obj["name"],
            inputs=dict(obj["inputs"]),
            value=float(obj["value"]),
            paper_tag=obj["paper_tag"],
        )


_BOUND_TABLE = {
    "sqrt_n": (lambda p: sqrt_n_bound(int(p["n"]), p["d1"]), "sqrt-n estimate"),
    "cbrt_vector": (
        lambda p: cbrt_vector_bound(int(p["n"]), p["eps"], p["nx"], p["d1"]),
        "cbrt-n two-term estimate",
    ),
    "cbrt_norm": (
        lambda p: cbrt_norm_bound(int(p["n"]), p["norm_one_minus_c"]),
        "cbrt-n operator-norm estimate",
    ),
    "telescopic": (
        lambda p: telescopic_bound(int(p["n"]), p["d2"], p["d3"]),
        "telescopic estimate",
    ),
    "ritt": (
        lambda p: k_alpha(p["alpha"]).value / (int(p["n"]) + 1),
        "Ritt power decay",
    ),
    "norm_chernoff": (
        lambda p: norm_chernoff_bound(int(p["n"]), p["alpha"]),
        "operator-norm n^(-1/3) estimate",
    ),
    "selfadjoint_ritt": (
        lambda p: selfadjoint_ritt_bound(int(p["n"])),
        "self-adjoint Ritt bound",
    ),
    "selfadjoint_chernoff": (
        lambda p: selfadjoint_chernoff_bound(int(p["n"])),
        "self-adjoint power-vs-exponential bound",
    ),
    "euler": (
        lambda p: euler_bound(int(p["n"]), p["alpha"]),
        "resolvent-power (Euler) bound",
    ),
}

BOUND_NAMES = tuple(_BOUND_TABLE)


def evaluate_bound(name: str, **inputs) -> BoundSpec:
    """Evaluate a named bound into a BoundSpec."""
    if name not in _BOUND_TABLE:
        raise DomainError(f"unknown bound name {name!r}")
    fn, tag = _BOUND_TABLE[name]
    return BoundSpec(name=name, inputs=inputs, value=float(fn(inputs)), paper_tag=tag)


def _check_n(n: int) -> None:
    if not isinstance(n, numbers.Integral) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
