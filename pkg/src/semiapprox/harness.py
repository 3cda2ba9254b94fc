"""Experiment orchestration: bound sweeps, rate fits, summaries.

Every experiment kind is registered in EXPERIMENT_KINDS and driven by an
ExperimentConfig.  Runs are deterministic: all randomness derives from the
config seed through the documented splitting rule, records are emitted in
(draw, n, t) order, and identical configs reproduce identical reports
byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import approximants, bounds, contour, ensembles, linalg, numrange, poisson
from .errors import InsufficientDataError, InvalidInputError
from .tolerances import ABS_SLACK, REL_SLACK, passes


@dataclass(frozen=True)
class ErrorRecord:
    """One (n, empirical, bound) cell of an experiment."""

    experiment_id: str
    n: int
    t: float
    empirical: float
    bound: float
    ratio: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "experiment_id": self.experiment_id,
            "n": self.n,
            "t": self.t,
            "empirical": self.empirical,
            "bound": self.bound,
            "ratio": self.ratio,
            "passed": self.passed,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ErrorRecord":
        return cls(
            experiment_id=obj["experiment_id"],
            n=int(obj["n"]),
            t=float(obj["t"]),
            empirical=float(obj["empirical"]),
            bound=float(obj["bound"]),
            ratio=float(obj["ratio"]),
            passed=bool(obj["passed"]),
        )


def make_record(experiment_id: str, n: int, t: float, empirical: float, bound: float) -> ErrorRecord:
    """Build a record with the package-wide pass rule and ratio convention."""
    if bound > 0.0:
        ratio = empirical / bound
    else:
        ratio = 0.0 if empirical == 0.0 else float("inf")
    return ErrorRecord(
        experiment_id=experiment_id,
        n=int(n),
        t=float(t),
        empirical=float(empirical),
        bound=float(bound),
        ratio=float(ratio),
        passed=passes(empirical, bound),
    )


@dataclass(frozen=True)
class RateEstimate:
    """Power-law fit err ~ prefactor * n^(-exponent_p) on a log-log grid."""

    exponent_p: float
    prefactor: float
    r_squared: float
    n_range: tuple[float, float]
    dropped: int = 0


def fit_rate(points, fit_min_n: float = 0.0) -> RateEstimate:
    """Least-squares line on (log n, log err); zero errors are dropped.

    Exact cases (err == 0) carry no rate information, so they are removed
    and counted in ``dropped``; at least 5 positive points must remain.
    """
    kept = [(float(n), float(e)) for n, e in points if float(n) >= fit_min_n]
    positive = [(n, e) for n, e in kept if e > 0.0]
    dropped = len(kept) - len(positive)
    if len(positive) < 5:
        raise InsufficientDataError(
            f"rate fit needs >= 5 positive points, got {len(positive)}"
        )
    ln_n = np.log([n for n, _ in positive])
    ln_e = np.log([e for _, e in positive])
    slope, intercept = np.polyfit(ln_n, ln_e, 1)
    pred = slope * ln_n + intercept
    ss_res = float(np.sum((ln_e - pred) ** 2))
    ss_tot = float(np.sum((ln_e - np.mean(ln_e)) ** 2))
    r2 = 1.0 if ss_tot <= 1e-30 else max(0.0, 1.0 - ss_res / ss_tot)
    ns = [n for n, _ in positive]
    return RateEstimate(
        exponent_p=float(-slope),
        prefactor=float(np.exp(intercept)),
        r_squared=r2,
        n_range=(min(ns), max(ns)),
        dropped=dropped,
    )


@dataclass(frozen=True)
class ExperimentConfig:
    """Deterministic description of one experiment run."""

    kind: str
    dim: int = 8
    alpha: float = math.pi / 8
    seed: int = 123456789
    trials: int = 10
    nmax: int = 256
    ts: tuple[float, ...] = (1.0,)
    vectors: int = 8
    fit_min_n: float = 1.0
    n_mode: str = "pow2"  # "pow2" or "all"

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise InvalidInputError(f"unknown experiment kind {self.kind!r}")
        if self.n_mode not in ("pow2", "all"):
            raise InvalidInputError(f"n_mode must be 'pow2' or 'all', got {self.n_mode!r}")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "alpha": self.alpha,
            "seed": self.seed,
            "trials": self.trials,
            "nmax": self.nmax,
            "ts": list(self.ts),
            "vectors": self.vectors,
            "fit_min_n": self.fit_min_n,
            "n_mode": self.n_mode,
        }


@dataclass
class ExperimentResult:
    records: list[ErrorRecord]
    summary: dict


def pow2_grid(nmax: int) -> list[int]:
    grid = []
    n = 1
    while n <= nmax:
        grid.append(n)
        n *= 2
    return grid


def _n_grid(config: ExperimentConfig) -> list[int]:
    if config.n_mode == "all":
        return list(range(1, config.nmax + 1))
    return pow2_grid(config.nmax)


def _unit_vectors(dim: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed & ((1 << 64) - 1))
    v = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _power_pairs(c: np.ndarray, e: np.ndarray, ns: list[int]):
    """Yield (n, C^n, E^n) for a power-of-two grid by repeated squaring."""
    cn, en, cur = c.copy(), e.copy(), 1
    for n in ns:
        while cur < n:
            cn = cn @ cn
            en = en @ en
            cur *= 2
        if cur != n:
            raise InvalidInputError("power grid must be powers of two")
        yield n, cn, en


# ---------------------------------------------------------------------------
# experiment runners


def _run_vector_bounds(config: ExperimentConfig):
    """Shared sweep for the sqrt_n / cbrt_n / telescopic vector estimates."""
    ns = pow2_grid(config.nmax)
    records = []
    for i in range(config.trials):
        c = ensembles.random_contraction(config.dim, ensembles.child_seed(config.seed, i))
        eye = np.eye(config.dim)
        e = linalg.expm(c - eye)
        xs = _unit_vectors(config.dim, config.vectors, ensembles.child_seed(config.seed, 10_000 + i))
        dx1 = ((c - eye) @ xs.T).T
        dx2 = ((c - eye) @ dx1.T).T
        dx3 = ((c - eye) @ dx2.T).T
        d1 = np.linalg.norm(dx1, axis=1)
        d2 = np.linalg.norm(dx2, axis=1)
        d3 = np.linalg.norm(dx3, axis=1)
        for n, cn, en in _power_pairs(c, e, ns):
            gap = np.linalg.norm(((cn - en) @ xs.T).T, axis=1)
            for j in range(config.vectors):
                rid = f"{config.kind}/d{i:03d}/x{j:02d}"
                emp = float(gap[j])
                if config.kind == "sqrt_n":
                    records.append(
                        make_record(rid, n, 0.0, emp, bounds.sqrt_n_bound(n, float(d1[j])))
                    )
                elif config.kind == "telescopic":
                    records.append(
                        make_record(
                            rid, n, 0.0, emp,
                            bounds.telescopic_bound(n, float(d2[j]), float(d3[j])),
                        )
                    )
                else:  # cbrt_n
                    # closed form at the optimal split: (3/2) n^(1/3) (4 nx)^(1/3) d1^(2/3)
                    closed = 1.5 * n ** (1.0 / 3.0) * 4.0 ** (1.0 / 3.0) * float(d1[j]) ** (2.0 / 3.0)
                    records.append(make_record(f"{rid}/closed", n, 0.0, emp, closed))
                    if d1[j] > 0.0:
                        eps = bounds.epsilon_star(n, 1.0, float(d1[j]))
                        records.append(
                            make_record(
                                f"{rid}/two_term", n, 0.0, emp,
                                bounds.cbrt_vector_bound(n, eps, 1.0, float(d1[j])),
                            )
                        )
    return records, {}


def _run_chernoff_product(config: ExperimentConfig):
    ns = pow2_grid(config.nmax)
    records = []
    product_cells: dict[str, list[tuple[int, float]]] = {}
    for i in range(config.trials):
        a = ensembles.random_m_sectorial(config.dim, config.alpha, ensembles.child_seed(config.seed, i))
        phi = approximants.resolvent_family(a)
        eye = np.eye(config.dim)
        for t in config.ts:
            rid = f"chernoff_product/d{i:03d}/t{t:g}"
            ref = approximants.reference_semigroup(a, t)
            cells = []
            for n in ns:
                step = phi(t / n)
                power = linalg.mat_pow(step, n)
                partner = linalg.expm(n * (step - eye))
                emp = linalg.op_norm(power - partner)
                bound = bounds.cbrt_norm_bound(n, linalg.op_norm(eye - step))
                records.append(make_record(rid, n, t, emp, bound))
                cells.append((n, linalg.op_norm(power - ref)))
            product_cells[rid] = cells
    extras = {"product_error_final": {k: v[-1][1] for k, v in product_cells.items()}}
    fits = _fit_groups(product_cells, config.fit_min_n)
    if fits:
        extras["product_rate_fits"] = fits
    return records, extras


def _run_trotter_product(config: ExperimentConfig):
    ns = pow2_grid(config.nmax)
    records = []
    slopes: dict[str, list[tuple[int, float]]] = {}
    for i in range(config.trials):
        seed = ensembles.child_seed(config.seed, i)
        rng = np.random.default_rng(seed & ((1 << 64) - 1))
        commuting = i % 2 == 0
        if commuting:
            a = np.diag(rng.uniform(0.0, 2.0, config.dim)).astype(complex)
            b = np.diag(rng.uniform(0.0, 2.0, config.dim)).astype(complex)
            label = "commuting"
        else:
            a = ensembles.random_m_sectorial(config.dim, 0.0, seed)
            b = ensembles.random_m_sectorial(config.dim, 0.0, ensembles.child_seed(config.seed, 10_000 + i))
            label = "noncommuting"
        pair = approximants.GeneratorPair(a, b)
        for t in config.ts:
            rid = f"trotter_product/{label}/d{i:03d}/t{t:g}"
            ref = approximants.reference_semigroup(pair.sum, t)
            cells = []
            for n in ns:
                emp = approximants.approx_error(approximants.trotter_approx(pair, t, n), ref)
                # commuting factors make the product exact; otherwise only the
                # trivial contraction-difference bound 2 is available here
                bound = 0.0 if commuting else 2.0
                records.append(make_record(rid, n, t, emp, bound))
                cells.append((n, emp))
            if not commuting:
                slopes[rid] = cells
    extras = {"noncommuting_rate_fits": _fit_groups(slopes, config.fit_min_n)}
    return records, extras


def _certified_resolvent_draw(config: ExperimentConfig, i: int):
    """One resolvent contraction with its certification outcome."""
    seed = ensembles.child_seed(config.seed, i)
    a = ensembles.random_m_sectorial(config.dim, config.alpha, seed)
    t_res = config.ts[i % len(config.ts)]
    c = ensembles.resolvent_contraction(a, t_res)
    cert = numrange.certify_quasi_sectorial(c, config.alpha, 256)
    return c, t_res, cert


def _run_ritt(config: ExperimentConfig):
    k_val = bounds.k_alpha(config.alpha).value
    records = []
    failures = 0
    for i in range(config.trials):
        c, t_res, cert = _certified_resolvent_draw(config, i)
        if not cert.passed:
            failures += 1
            continue
        rid = f"ritt/d{i:03d}/t{t_res:g}"
        eye = np.eye(config.dim)
        if config.n_mode == "all":
            power = c.copy()
            for n in range(1, config.nmax + 1):
                nxt = power @ c
                records.append(make_record(rid, n, t_res, linalg.op_norm(power - nxt), k_val / (n + 1)))
                power = nxt
        else:
            for n, cn, _ in _power_pairs(c, c, pow2_grid(config.nmax)):
                emp = linalg.op_norm(cn - cn @ c)
                records.append(make_record(rid, n, t_res, emp, k_val / (n + 1)))
    return records, {"k_alpha": k_val, "certification_failures": failures}


def _run_norm_chernoff(config: ExperimentConfig):
    l_val = bounds.l_alpha(config.alpha)
    records = []
    failures = 0
    flagged = []
    for i in range(config.trials):
        c, t_res, cert = _certified_resolvent_draw(config, i)
        if not cert.passed:
            failures += 1
            continue
        rid = f"norm_chernoff/d{i:03d}/t{t_res:g}"
        e = linalg.expm(c - np.eye(config.dim))
        if config.n_mode == "all":
            cn, en = c.copy(), e.copy()
            for n in range(1, config.nmax + 1):
                rec = make_record(rid, n, t_res, linalg.op_norm(cn - en), l_val / n ** (1.0 / 3.0))
                records.append(rec)
                if not rec.passed and n < 8:
                    flagged.append((rid, n))
                cn, en = cn @ c, en @ e
        else:
            for n, cn, en in _power_pairs(c, e, pow2_grid(config.nmax)):
                rec = make_record(rid, n, t_res, linalg.op_norm(cn - en), l_val / n ** (1.0 / 3.0))
                records.append(rec)
                if not rec.passed and n < 8:
                    flagged.append((rid, n))
    extras = {
        "l_alpha": l_val,
        "certification_failures": failures,
        "flagged_below_threshold": flagged,
    }
    return records, extras


def _run_selfadjoint(config: ExperimentConfig):
    records = []
    for i in range(config.trials):
        spectrum = np.linspace(0.0, 1.0, config.dim)
        c = ensembles.self_adjoint_contraction(spectrum, ensembles.child_seed(config.seed, i))
        e = linalg.expm(c - np.eye(config.dim))
        for n, cn, en in _power_pairs(c, e, pow2_grid(config.nmax)):
            records.append(
                make_record(
                    f"selfadjoint/d{i:03d}/ritt", n, 0.0,
                    linalg.op_norm(cn - cn @ c), bounds.selfadjoint_ritt_bound(n),
                )
            )
            records.append(
                make_record(
                    f"selfadjoint/d{i:03d}/chernoff", n, 0.0,
                    linalg.op_norm(cn - en), bounds.selfadjoint_chernoff_bound(n),
                )
            )
    return records, {}


def _sector_certified_generator(config: ExperimentConfig, i: int):
    a = ensembles.random_m_sectorial(config.dim, config.alpha, ensembles.child_seed(config.seed, i))
    pts = numrange.numerical_range_boundary(a, 256)
    ok = bool(np.all(numrange.in_sector(pts, config.alpha)))
    return a, ok


def _run_euler(config: ExperimentConfig, rate_focus: bool = False):
    records = []
    failures = 0
    cells: dict[str, list[tuple[int, float]]] = {}
    nonmonotone = 0
    ns = pow2_grid(config.nmax)
    for i in range(config.trials):
        a, ok = _sector_certified_generator(config, i)
        if not ok:
            failures += 1
            continue
        for t in config.ts:
            rid = f"{'euler_rate' if rate_focus else 'euler'}/d{i:03d}/t{t:g}"
            ref = approximants.reference_semigroup(a, t)
            group = []
            for n in ns:
                emp = approximants.approx_error(approximants.euler_approx(a, t, n), ref)
                records.append(make_record(rid, n, t, emp, bounds.euler_bound(n, config.alpha)))
                if group and emp > group[-1][1] + 1e-12:
                    nonmonotone += 1
                group.append((n, emp))
            cells[rid] = group
    extras = {
        "euler_upper_constant": bounds.euler_upper_constant(config.alpha),
        "certification_failures": failures,
        "rate_fits": _fit_groups(cells, config.fit_min_n),
        # monotone decay in n is observed and reported, never asserted
        "monotonicity_violations": nonmonotone,
    }
    return records, extras


def _run_dunford_segal(config: ExperimentConfig):
    l_val = bounds.l_alpha(config.alpha)
    cos2 = math.cos(config.alpha) ** 2
    records = []
    failures = 0
    n_hat = 0.0
    cells: dict[str, list[tuple[int, float]]] = {}
    two_step: dict[str, list[tuple[int, float, float]]] = {}
    for i in range(config.trials):
        a, ok = _sector_certified_generator(config, i)
        if not ok:
            failures += 1
            continue
        for t in config.ts:
            rid = f"dunford_segal/d{i:03d}/t{t:g}"
            ref = approximants.reference_semigroup(a, t)
            group = []
            steps = []
            for n in pow2_grid(config.nmax):
                step = ensembles.semigroup_step(a, t, n)
                cert = numrange.certify_quasi_sectorial(step, config.alpha, 64)
                if not cert.passed:
                    failures += 1
                    continue
                ds = approximants.dunford_segal_approx(a, t, n)
                emp = approximants.approx_error(ds, ref)
                records.append(make_record(rid, n, t, emp, l_val / n ** (1.0 / 3.0)))
                group.append((n, emp))
                term1 = linalg.op_norm(linalg.mat_pow(step, n) - ds)
                steps.append((n, term1, emp))
                n_hat = max(n_hat, n * cos2 * emp)
            cells[rid] = group
            two_step[rid] = steps
    extras = {
        "l_alpha": l_val,
        "certification_failures": failures,
        "empirical_N_hat": n_hat,
        "rate_fits": _fit_groups(cells, config.fit_min_n),
        "two_step_terms": two_step,
    }
    return records, extras


def _run_tnk_equivalence(config: ExperimentConfig):
    records = []
    res_cells: dict[str, list[tuple[int, float]]] = {}
    k_max = min(12, max(5, int(math.log2(max(config.nmax, 32)))))
    t_semi = config.ts[0]
    for i in range(config.trials):
        a = ensembles.random_m_sectorial(config.dim, config.alpha, ensembles.child_seed(config.seed, i))
        phi = approximants.resolvent_family(a)
        eye = np.eye(config.dim)
        norm_a_sq = linalg.op_norm(a) ** 2
        res_ref = linalg.inverse(eye + a)
        semi_ref = approximants.reference_semigroup(a, t_semi)
        rid_res = f"tnk/d{i:03d}/resolvent"
        rid_semi = f"tnk/d{i:03d}/semigroup"
        group = []
        for k in range(1, k_max + 1):
            s = 2.0 ** (-k)
            x_s = approximants.discrete_generator(phi, s, 1)
            emp_res = linalg.op_norm(linalg.inverse(eye + x_s) - res_ref)
            records.append(make_record(rid_res, 2**k, s, emp_res, s * norm_a_sq))
            emp_semi = linalg.op_norm(linalg.expm(-t_semi * x_s) - semi_ref)
            records.append(make_record(rid_semi, 2**k, s, emp_semi, t_semi * s * norm_a_sq))
            group.append((2**k, emp_res))
        res_cells[rid_res] = group
    return records, {"resolvent_rate_fits": _fit_groups(res_cells, config.fit_min_n)}


def _run_contour_reconstruction(config: ExperimentConfig):
    records = []
    failures = 0
    alpha_prime = 0.5 * (config.alpha + math.pi / 2)
    windings = []
    majorant_worst = 0.0
    for i in range(config.trials):
        c, t_res, cert = _certified_resolvent_draw(config, i)
        if not cert.passed:
            failures += 1
            continue
        nodes = contour.build_contour(alpha_prime)
        windings.append(abs(contour.winding_number(nodes, 0.2 + 0.0j) - 1.0))
        eye = np.eye(config.dim)
        ns_here = pow2_grid(min(config.nmax, 16))
        fs = [(lambda z, n=n: z**n * (1.0 - z)) for n in ns_here]
        fs += [(lambda z, n=n: z**n - np.exp(n * (z - 1.0))) for n in ns_here]
        got_all = contour.riesz_dunford_many(fs, c, nodes)
        for idx, n in enumerate(ns_here):
            cn = linalg.mat_pow(c, n)
            records.append(
                make_record(
                    f"contour/d{i:03d}/ritt", n, t_res,
                    linalg.op_norm(got_all[idx] - cn @ (eye - c)), 1e-7,
                )
            )
            records.append(
                make_record(
                    f"contour/d{i:03d}/gap", n, t_res,
                    linalg.op_norm(got_all[idx + len(ns_here)] - (cn - linalg.expm(n * (c - eye)))), 1e-7,
                )
            )
        report = contour.contour_norm_bound_check(c, config.alpha, alpha_prime, 4)
        majorant_worst = max(majorant_worst, report.worst_ratio_arc, report.worst_ratio_lines)
    extras = {
        "alpha_prime": alpha_prime,
        "certification_failures": failures,
        "max_winding_error": max(windings) if windings else 0.0,
        "worst_majorant_ratio": majorant_worst,
    }
    return records, extras


def _run_poisson_split(config: ExperimentConfig):
    records = []
    ns = [n for n in pow2_grid(min(config.nmax, 128))]
    for n in ns:
        second = poisson.poisson_second_moment(n)
        records.append(
            make_record("poisson_split/second_moment", n, 0.0, abs(second - n), 1e-8 * n)
        )
        records.append(
            make_record(
                "poisson_split/first_abs_moment", n, 0.0,
                poisson.poisson_first_abs_moment(n), math.sqrt(n),
            )
        )
        for eps in config.ts:
            records.append(
                make_record(
                    "poisson_split/tail", n, eps,
                    poisson.poisson_tail(n, eps), poisson.tchebychev_bound(n, eps),
                )
            )
    for i in range(config.trials):
        c = ensembles.random_contraction(config.dim, ensembles.child_seed(config.seed, i))
        x = _unit_vectors(config.dim, 1, ensembles.child_seed(config.seed, 10_000 + i))[0]
        d1 = float(np.linalg.norm((np.eye(config.dim) - c) @ x))
        for n in [n for n in ns if n <= 64]:
            for eps in config.ts:
                central, tail = poisson.chernoff_split_sum(c, x, n, eps)
                rid = f"poisson_split/split/d{i:03d}"
                records.append(make_record(f"{rid}/central", n, eps, central, eps * d1))
                records.append(make_record(f"{rid}/tail", n, eps, tail, 2.0 * n / eps**2))
    return records, {}


def _fit_groups(groups: dict[str, list[tuple[int, float]]], fit_min_n: float) -> dict:
    fits = {}
    for rid, cells in groups.items():
        try:
            est = fit_rate(cells, fit_min_n=fit_min_n)
        except InsufficientDataError:
            continue
        fits[rid] = {
            "exponent_p": est.exponent_p,
            "prefactor": est.prefactor,
            "r_squared": est.r_squared,
            "n_range": list(est.n_range),
            "dropped": est.dropped,
        }
    return fits


_RUNNERS = {
    "sqrt_n": _run_vector_bounds,
    "cbrt_n": _run_vector_bounds,
    "telescopic": _run_vector_bounds,
    "chernoff_product": _run_chernoff_product,
    "trotter_product": _run_trotter_product,
    "ritt": _run_ritt,
    "norm_chernoff": _run_norm_chernoff,
    "selfadjoint": _run_selfadjoint,
    "euler": _run_euler,
    "euler_rate": lambda config: _run_euler(config, rate_focus=True),
    "dunford_segal": _run_dunford_segal,
    "tnk_equivalence": _run_tnk_equivalence,
    "contour_reconstruction": _run_contour_reconstruction,
    "poisson_split": _run_poisson_split,
}

EXPERIMENT_KINDS = tuple(_RUNNERS)


def summarize(records: list[ErrorRecord], extras: dict | None = None) -> dict:
    finite = [r.ratio for r in records if math.isfinite(r.ratio)]
    summary = {
        "slack": {"relative": REL_SLACK, "absolute": ABS_SLACK},
        "count": len(records),
        "max_ratio": max(finite) if finite else 0.0,
        "all_passed": all(r.passed for r in records),
    }
    if extras:
        summary.update(extras)
    return summary


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run one registered experiment; deterministic given the config."""
    records, extras = _RUNNERS[config.kind](config)
    summary = {"kind": config.kind, "config": config.to_json()}
    summary.update(summarize(records, extras))
    return ExperimentResult(records=records, summary=summary)
