import json
import math

import numpy as np
import pytest

from semiapprox import bounds
from semiapprox.errors import DegenerateInputError, DomainError


def test_sqrt_n_bound():
    assert bounds.sqrt_n_bound(4, 0.5) == pytest.approx(1.0)
    assert bounds.sqrt_n_bound(17, 0.0) == 0.0
    assert bounds.sqrt_n_bound(1, 2.0) == pytest.approx(2.0)


def test_poisson_abs_moment_identity():
    assert abs(bounds.poisson_abs_moment_identity(1) - 1.0) <= 1e-8
    assert abs(bounds.poisson_abs_moment_identity(10) - 10.0) <= 1e-7
    assert abs(bounds.poisson_abs_moment_identity(100) - 100.0) <= 1e-6


def test_epsilon_star():
    assert bounds.epsilon_star(2, 1.0, 1.0) == pytest.approx(2.0)
    assert bounds.epsilon_star(1, 1.0, 4.0) == pytest.approx(1.0)
    assert bounds.epsilon_star(1, 1.0, 2.0) == pytest.approx(2 ** (1 / 3))
    with pytest.raises(DegenerateInputError):
        bounds.epsilon_star(3, 1.0, 0.0)


def test_cbrt_vector_bound():
    # at the optimal split the two-term value collapses to the closed form
    eps = bounds.epsilon_star(1, 1.0, 2.0)
    assert bounds.cbrt_vector_bound(1, eps, 1.0, 2.0) == pytest.approx(
        3.7797631496846193, rel=1e-12
    )
    assert bounds.cbrt_vector_bound(5, 1.0, 0.0, 0.0) == 0.0
    assert bounds.cbrt_vector_bound(4, 2.0, 1.0, 1.0) == pytest.approx(4.0)


def test_cbrt_norm_bound():
    assert bounds.cbrt_norm_bound(1, 2.0) == pytest.approx(3.7797631496846193, rel=1e-12)
    assert bounds.cbrt_norm_bound(12, 0.0) == 0.0
    assert bounds.cbrt_norm_bound(8, 1.0) == pytest.approx(4.762203155904598, rel=1e-12)


def test_telescopic_bound():
    assert bounds.telescopic_bound(9, 0.0, 0.0) == 0.0
    assert bounds.telescopic_bound(2, 1.0, 0.0) == pytest.approx(1.0)
    assert bounds.telescopic_bound(1, 1.0, 1.0) == pytest.approx(1.7315093498217748, rel=1e-12)


def test_ritt_constant():
    assert bounds.ritt_constant(0.0, math.pi / 4) == pytest.approx(5.519142308119506, rel=1e-12)
    # agrees with the display-precision value 5.5193 used in hand checks
    assert bounds.ritt_constant(0.0, math.pi / 4) == pytest.approx(5.5193, abs=2e-4)
    # poles at both ends of the alpha' interval
    assert bounds.ritt_constant(0.0, math.pi / 2 - 1e-9) > 1e6
    assert bounds.ritt_constant(0.3, 0.3 + 1e-9) > 1e6
    with pytest.raises(DomainError):
        bounds.ritt_constant(0.5, 0.4)
    with pytest.raises(DomainError):
        bounds.ritt_constant(0.1, math.pi / 2)


def brute_force_k_alpha(alpha: float, points: int = 1_000_000) -> float:
    grid = np.linspace(alpha, math.pi / 2, points + 2)[1:-1]
    vals = (2.0 / (np.cos(grid) * np.sin(grid - alpha))) * (
        1.0 / math.pi - 1.0 / (math.e * np.log(np.sin(grid)))
    )
    return float(np.min(vals))


@pytest.mark.parametrize("alpha", [0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8])
def test_k_alpha_matches_brute_force(alpha):
    got = bounds.k_alpha(alpha)
    oracle = brute_force_k_alpha(alpha)
    assert got.value == pytest.approx(oracle, rel=1e-6)
    assert alpha < got.alpha_prime < math.pi / 2
    # the reported minimizer is no worse than either neighbor on the grid
    assert got.value <= bounds.ritt_constant(alpha, got.alpha_prime - 1e-6) + 1e-12
    assert got.value <= bounds.ritt_constant(alpha, got.alpha_prime + 1e-6) + 1e-12


def test_l_alpha_and_norm_chernoff():
    for alpha in (0.0, math.pi / 8):
        k = bounds.k_alpha(alpha).value
        assert bounds.l_alpha(alpha) == pytest.approx(2 * k + 2, rel=1e-12)
        assert bounds.l_alpha(alpha) > 2.0
        l = bounds.l_alpha(alpha)
        assert bounds.norm_chernoff_bound(1, alpha) == pytest.approx(l)
        assert bounds.norm_chernoff_bound(8, alpha) == pytest.approx(l / 2)
        assert bounds.norm_chernoff_bound(1000, alpha) == pytest.approx(l / 10)


def test_two_param_bound():
    value, cleared = bounds.two_param_bound(64, 1 / 6, 1.0)
    assert value == pytest.approx(1.0, rel=1e-12)
    assert cleared
    # algebraic identity with the n^(-1/3) form at delta = 1/6
    for n in (8, 64, 512):
        k = 3.3
        v, _ = bounds.two_param_bound(n, 1 / 6, k)
        assert v == pytest.approx((2 + 2 * k) / n ** (1 / 3), rel=1e-12)
    # at delta = 1/6 the threshold is vacuous for every n >= 1
    assert all(bounds.two_param_bound(n, 1 / 6, 1.0).threshold_cleared for n in range(1, 200))
    # close to delta = 1/2 the threshold does bite
    assert not bounds.two_param_bound(100, 0.4, 1.0).threshold_cleared
    with pytest.raises(DomainError):
        bounds.two_param_bound(10, 0.6, 1.0)


def test_selfadjoint_bounds():
    assert bounds.selfadjoint_ritt_bound(1) == pytest.approx(0.5)
    assert bounds.selfadjoint_chernoff_bound(1) == pytest.approx(math.exp(-1.0))
    assert bounds.selfadjoint_ritt_bound(9) == pytest.approx(0.1)
    assert bounds.selfadjoint_chernoff_bound(9) == pytest.approx(0.04087549346349359, rel=1e-12)


def test_selfadjoint_scalar_tightness_oracle():
    # 1-d brute force: max over c in [0,1] of c^n (1-c) = (n/(n+1))^n / (n+1)
    cs = np.linspace(0.0, 1.0, 1_000_001)
    for n in (1, 2, 8, 64, 1024):
        grid_max = float(np.max(cs**n * (1 - cs)))
        analytic = (n / (n + 1)) ** n / (n + 1)
        assert abs(grid_max - analytic) <= 1e-10
        assert analytic <= bounds.selfadjoint_ritt_bound(n)


def test_euler_bound():
    assert bounds.euler_bound(1, 0.0) == pytest.approx(3.1547005383792515, rel=1e-12)
    assert bounds.euler_bound(1, math.pi / 3) == pytest.approx(8.0, rel=1e-12)
    # self-adjoint consistency: the optimal e^{-1}/n lies below the generic bound
    for n in (1, 10, 100):
        assert bounds.selfadjoint_chernoff_bound(n) <= bounds.euler_bound(n, 0.0)


def test_epsilon_star_optimality_sampled():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(1, 2000))
        nx = float(rng.uniform(0.1, 4.0))
        d1 = float(rng.uniform(1e-3, 2.0 * nx))
        star = bounds.epsilon_star(n, nx, d1)
        best = bounds.cbrt_vector_bound(n, star, nx, d1)
        closed = 1.5 * n ** (1 / 3) * (4 * nx) ** (1 / 3) * d1 ** (2 / 3)
        assert best == pytest.approx(closed, rel=1e-10)
        for eps in rng.uniform(0.05, 10.0, 100) * star:
            assert bounds.cbrt_vector_bound(n, float(eps), nx, d1) >= best - 1e-12


def test_delta_sixth_is_optimal_exponent():
    # at delta = 1/6 both terms decay like n^(-1/3); other deltas lose on one side
    k = 2.0
    n_lo, n_hi = 64, 4096
    def decay(delta):
        v_lo = bounds.two_param_bound(n_lo, delta, k).value
        v_hi = bounds.two_param_bound(n_hi, delta, k).value
        return math.log(v_lo / v_hi) / math.log(n_hi / n_lo)
    best = decay(1 / 6)
    assert best == pytest.approx(1 / 3, abs=1e-9)
    for delta in (0.05, 0.1, 0.25, 0.4):
        assert decay(delta) <= best + 1e-9


def test_bounds_monotone_in_distance_arguments():
    rng = np.random.default_rng(4)
    for _ in range(200):
        n = int(rng.integers(1, 500))
        d = float(rng.uniform(0.0, 2.0))
        step = float(rng.uniform(0.01, 1.0))
        assert bounds.sqrt_n_bound(n, d + step) >= bounds.sqrt_n_bound(n, d)
        assert bounds.telescopic_bound(n, d + step, d) >= bounds.telescopic_bound(n, d, d)
        assert bounds.telescopic_bound(n, d, d + step) >= bounds.telescopic_bound(n, d, d)
        assert bounds.cbrt_norm_bound(n, d + step) >= bounds.cbrt_norm_bound(n, d)
        eps = float(rng.uniform(0.1, 5.0))
        assert bounds.cbrt_vector_bound(n, eps, d + step, d) >= bounds.cbrt_vector_bound(n, eps, d, d)


def test_bound_spec_serialization():
    spec = bounds.evaluate_bound("sqrt_n", n=4, d1=0.5)
    assert spec.value == pytest.approx(1.0)
    blob = json.dumps(spec.to_json())
    again = bounds.BoundSpec.from_json(json.loads(blob))
    assert again == spec
    assert set(spec.to_json()) == {"name", "inputs", "value", "paper_tag"}
    for name in bounds.BOUND_NAMES:
        assert isinstance(name, str)


def test_bounds_nonnegative_and_finite():
    rng = np.random.default_rng(8)
    for _ in range(200):
        n = int(rng.integers(1, 1000))
        vals = [
            bounds.sqrt_n_bound(n, rng.uniform(0, 2)),
            bounds.cbrt_norm_bound(n, rng.uniform(0, 2)),
            bounds.telescopic_bound(n, rng.uniform(0, 2), rng.uniform(0, 2)),
            bounds.selfadjoint_ritt_bound(n),
            bounds.selfadjoint_chernoff_bound(n),
            bounds.euler_bound(n, rng.uniform(0, math.pi / 2 - 0.01)),
        ]
        assert all(v >= 0 and math.isfinite(v) for v in vals)
