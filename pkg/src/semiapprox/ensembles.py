"""Seeded, reproducible operator ensembles.

All randomness flows through numpy's PCG64 generator (``default_rng``), so a
given (kind, dim, alpha, seed, params) tuple always produces the bit-identical
matrix.  Independent draws inside an experiment derive their seeds through
``child_seed``: a splitmix64 hash of the trial index XORed into the base seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import InvalidInputError
from .tolerances import CONTRACTION_TOL

_MASK64 = (1 << 64) - 1

ENSEMBLE_KINDS = (
    "contraction",
    "self_adjoint_contraction",
    "m_sectorial",
    "resolvent_contraction",
    "semigroup_step",
)


def splitmix64(x: int) -> int:
    """One splitmix64 step; the documented hash behind seed splitting."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def child_seed(seed: int, index: int) -> int:
    """Seed for draw ``index`` of an experiment rooted at ``seed``."""
    return (seed & _MASK64) ^ splitmix64(index)


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed & _MASK64)


def _ginibre(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix with phase fix."""
    q, r = np.linalg.qr(_ginibre(dim, rng))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_contraction(dim: int, seed: int) -> np.ndarray:
    """Gaussian matrix scaled to spectral norm 1, then shrunk by U[0.5, 1)."""
    if dim < 1:
        raise InvalidInputError(f"dim must be >= 1, got {dim}")
    rng = _rng(seed)
    g = _ginibre(dim, rng)
    g /= linalg.op_norm(g)
    return g * rng.uniform(0.5, 1.0)


def self_adjoint_contraction(spectrum, seed: int) -> np.ndarray:
    """Hermitian contraction with the given eigenvalues in [0, 1]."""
    spec = np.asarray(spectrum, dtype=float)
    if spec.ndim != 1 or spec.size < 1:
        raise InvalidInputError("spectrum must be a nonempty 1-d list of reals")
    if np.any(spec < 0.0) or np.any(spec > 1.0):
        raise InvalidInputError("spectrum values must lie in [0, 1]")
    u = haar_unitary(spec.size, _rng(seed))
    c = (u * spec) @ u.conj().T
    return (c + c.conj().T) / 2.0


def random_m_sectorial(dim: int, alpha: float, seed: int) -> np.ndarray:
    """Random operator with numerical range in the closed sector of semi-angle alpha.

    Built as A = H^{1/2} (1 + iK) H^{1/2} with H positive semidefinite and K
    Hermitian of norm tan(alpha): then x*Ax = |y|^2 + i y*Ky for y = H^{1/2}x,
    so |arg(x*Ax)| <= alpha by construction, not merely by sampling.  The
    result is normalized to spectral norm 1.
    """
    if not 0.0 <= alpha < math.pi / 2:
        raise InvalidInputError(f"alpha must lie in [0, pi/2), got {alpha}")
    if dim < 1:
        raise InvalidInputError(f"dim must be >= 1, got {dim}")
    rng = _rng(seed)
    g = _ginibre(dim, rng)
    h = g.conj().T @ g
    h /= linalg.op_norm(h)
    w, v = np.linalg.eigh(h)
    h_sqrt = (v * np.sqrt(np.maximum(w, 0.0))) @ v.conj().T

    if alpha > 0.0:
        b = _ginibre(dim, rng)
        k = (b + b.conj().T) / 2.0
        k *= math.tan(alpha) / linalg.op_norm(k)
        core = np.eye(dim) + 1j * k
    else:
        core = np.eye(dim)

    a = h_sqrt @ core @ h_sqrt
    return a / linalg.op_norm(a)


def resolvent_contraction(a, t: float) -> np.ndarray:
    """(1 + tA)^{-1}; a contraction whenever A is accretive."""
    a = linalg.as_operator(a)
    if t <= 0.0:
        raise InvalidInputError(f"t must be positive, got {t}")
    return linalg.inverse(np.eye(a.shape[0]) + t * a)


def semigroup_step(a, t: float, n: int) -> np.ndarray:
    """exp(-(t/n) A); a contraction whenever A is accretive."""
    a = linalg.as_operator(a)
    if t <= 0.0 or n < 1:
        raise InvalidInputError(f"need t > 0 and n >= 1, got t={t}, n={n}")
    return linalg.expm(-(t / n) * a)


@dataclass(frozen=True)
class EnsembleSpec:
    """Serializable recipe for one operator draw."""

    kind: str
    dim: int
    seed: int
    alpha: float = 0.0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ENSEMBLE_KINDS:
            raise InvalidInputError(f"unknown ensemble kind {self.kind!r}")
        if self.dim < 1:
            raise InvalidInputError(f"dim must be >= 1, got {self.dim}")
        if self.kind in ("m_sectorial", "resolvent_contraction", "semigroup_step"):
            if not 0.0 <= self.alpha < math.pi / 2:
                raise InvalidInputError("sectorial kinds need alpha in [0, pi/2)")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "alpha": self.alpha,
            "seed": self.seed,
            "params": dict(self.params),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EnsembleSpec":
        return cls(
            kind=obj["kind"],
            dim=int(obj["dim"]),
            seed=int(obj["seed"]),
            alpha=float(obj.get("alpha", 0.0)),
            params=dict(obj.get("params", {})),
        )


def build_operator(spec: EnsembleSpec) -> np.ndarray:
    """Materialize the operator an EnsembleSpec describes."""
    params = spec.params
    if spec.kind == "contraction":
        return random_contraction(spec.dim, spec.seed)
    if spec.kind == "self_adjoint_contraction":
        lo = float(params.get("spec_lo", 0.0))
        hi = float(params.get("spec_hi", 1.0))
        spectrum = np.linspace(lo, hi, spec.dim)
        return self_adjoint_contraction(spectrum, spec.seed)
    if spec.kind == "m_sectorial":
        return random_m_sectorial(spec.dim, spec.alpha, spec.seed)
    if spec.kind == "resolvent_contraction":
        a = random_m_sectorial(spec.dim, spec.alpha, spec.seed)
        return resolvent_contraction(a, float(params.get("t", 1.0)))
    if spec.kind == "semigroup_step":
        a = random_m_sectorial(spec.dim, spec.alpha, spec.seed)
        return semigroup_step(a, float(params.get("t", 1.0)), int(params.get("n", 1)))
    raise InvalidInputError(f"unknown ensemble kind {spec.kind!r}")


def assert_contraction(c, tol: float = CONTRACTION_TOL) -> np.ndarray:
    """Validate op_norm(C) <= 1 + tol and return C."""
    c = linalg.as_operator(c)
    norm = linalg.op_norm(c)
    if norm > 1.0 + tol:
        raise InvalidInputError(f"not a contraction: op_norm = {norm!r}")
    return c
