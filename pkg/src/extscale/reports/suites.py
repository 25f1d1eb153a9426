"""Verification suites.

A suite is planned from the experiment config into independent cases.
Each case is a module-level function of JSON-like keyword arguments
returning a CaseResult, so it can run in-process or on a Ray worker.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from typing import Any

import numpy as np

from extscale.bvp import (
    DIRICHLET,
    DiskField,
    DiskNorms,
    BoundaryField,
    apply_model,
    apriori_ratio,
    classical_prediction,
    compatibility_defect,
    fd_dirichlet_mode,
    fredholm_data,
    fredholm_invariance,
    get_model,
    green_dirichlet_mode,
    green_identity_residual,
    homogeneous_samples,
    isomorphism_condition,
    kernel_residual,
    regularity_lift_check,
    regularity_shift_exact,
    route_agreement,
    solve,
)
from extscale.core.config import ExperimentConfig
from extscale.core.errors import IncompatibleDataError, PreconditionError
from extscale.core.models import (
    CaseResult,
    Provenance,
    Series,
    VerificationRecord,
    VerificationReport,
    bound_record,
    close_record,
    floor_record,
    verdict_record,
)
from extscale.interpolation import (
    HilbertPairSpec,
    InterpolationParameter,
    interp_norm,
    is_pseudoconcave,
    make_psi,
    verify_direct_sum,
    verify_interp_identity,
)
from extscale.quotient import (
    DomainMask,
    QuotientFactorization,
    QuotientProblem,
    dense_kkt_solve,
    outside_supported_field,
    quotient_norm,
    quotient_upper_bound,
    restriction,
)
from extscale.reports.runner import SuiteRunner
from extscale.spaces import (
    Lattice,
    SpectralField,
    ck_embedding_criterion,
    ck_prediction,
    derivative_partial_sup,
    embedding_bounded,
    embedding_compact,
    h_norm,
    random_field,
    scale_bracket,
    smoothed_modulus,
    threshold_witness,
)
from extscale.weights import (
    IndexGrid,
    OscPowerWeight,
    PowerLogWeight,
    PowerWeight,
    RepresentedWeight,
    RoWeight,
    best_indices,
    check_ro_membership,
    estimate_indices,
    shift,
    weight_from_spec,
)

logger = logging.getLogger(__name__)

CasePlan = list[tuple[str, Callable[..., CaseResult], dict[str, Any]]]
Planner = Callable[[ExperimentConfig], CasePlan]

INTERP_PAIRS: tuple[tuple[float, float], ...] = ((0.0, 2.0), (-0.4, 3.0))
REFERENCE_INDEX_WEIGHTS: tuple[dict[str, Any], ...] = (
    {"family": "power", "s": -0.4},
    {"family": "power", "s": 0.0},
    {"family": "power", "s": 1.0},
    {"family": "power", "s": 2.0},
    {"family": "powerlog", "s": 0.0, "r": 1.0},
    {"family": "powerlog", "s": 1.0, "r": 1.0},
    {"family": "oscpower", "s": 1.0, "eps": 0.5},
)
EXPECTED_FREDHOLM: dict[str, tuple[int, int]] = {
    "dirichlet": (0, 0),
    "neumann": (1, 1),
    "biharmonic": (0, 0),
}
WINDOW_LADDER: tuple[tuple[float, float], ...] = ((10.0, 100.0), (100.0, 1.0e3), (1.0e3, 1.0e4))
FD_TOLERANCE = 1e-6


class SuiteRegistry:
    """Registry of suite planners.

    Example:
        registry = SuiteRegistry()

        @registry.register("norm")
        def plan_norm(config: ExperimentConfig) -> CasePlan:
            ...
    """

    def __init__(self) -> None:
        self._planners: dict[str, Planner] = {}

    def register(self, name: str) -> Callable[[Planner], Planner]:
        """Decorator to register a suite planner.

        Raises:
            ValueError: If name is already registered
        """

        def decorator(planner: Planner) -> Planner:
            if name in self._planners:
                raise ValueError(f"Suite '{name}' is already registered")
            self._planners[name] = planner
            return planner

        return decorator

    def get(self, name: str) -> Planner:
        """Get a planner by name.

        Raises:
            KeyError: If the suite is not registered
        """
        if name not in self._planners:
            raise KeyError(f"Suite '{name}' is not registered")
        return self._planners[name]

    def list_suites(self) -> list[str]:
        return list(self._planners.keys())


suite_registry = SuiteRegistry()


def _labelled(config: ExperimentConfig) -> list[tuple[str, dict[str, Any]]]:
    specs = [spec.model_dump(exclude_none=True) for spec in config.weights]
    return list(zip(config.weight_labels(), specs))


def _weight(spec: Mapping[str, Any]) -> RoWeight:
    return weight_from_spec(spec)


def _field_seeds(seeds: list[int], count: int) -> list[int]:
    return [seed * 10_000 + i for seed in seeds for i in range(count)]


def run_suite(
    name: str, config: ExperimentConfig, runner: SuiteRunner | None = None
) -> VerificationReport:
    """Plan, execute and assemble one suite.

    Args:
        name: Registered suite name
        config: Validated experiment configuration
        runner: Case runner (a sequential one by default)

    Returns:
        Report with records in case-registration order
    """
    runner = runner or SuiteRunner(config.solver.num_cpus, config.solver.use_ray)
    plan = suite_registry.get(name)(config)
    runner.clear()
    for case_id, function, kwargs in plan:
        runner.register_case(case_id, function, **kwargs)
    results = runner.run()
    records: list[VerificationRecord] = []
    series: list[Series] = []
    for result in results:
        records.extend(result.records)
        series.extend(result.series)
    report = VerificationReport(
        suite=name, config_digest=config.digest, records=records, series=series
    )
    level = logging.WARNING if report.failures else logging.INFO
    logger.log(
        level, "suite %s: %d cases, %d records, %d failures",
        name, len(plan), len(records), len(report.failures),
    )
    for record in report.failures:
        logger.warning("FAIL %s [%s] %s: measured %.6g expected %.6g",
                       name, record.claim, record.case, record.measured, record.expected)
    return report


# -- membership ---------------------------------------------------------------


def membership_case(label: str, spec: dict[str, Any], seed: int, tolerance: float) -> CaseResult:
    phi = _weight(spec)
    result = check_ro_membership(phi, a=2.0)
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, np.log(1.0e6), 5000)
    h = np.log(rng.uniform(1.0, 2.0, 5000))
    spread = float(np.exp(np.max(np.abs(phi.log_evaluate(x + h) - phi.log_evaluate(x)))))

    grid = np.linspace(0.0, np.log(1.0e6), 257)
    back = shift(shift(phi, 1.5), -1.5)
    inverse_gap = float(np.max(np.abs(np.expm1(back.log_evaluate(grid) - phi.log_evaluate(grid)))))
    return CaseResult(records=[
        verdict_record("membership", label, "ro-membership", Provenance.STABILITY,
                       result.is_ro, True, weight=spec),
        bound_record("membership", label, "ro-constant-fresh-grid", Provenance.STABILITY,
                     spread, result.c_estimate, 0.02 * result.c_estimate, weight=spec, seed=seed),
        bound_record("membership", label, "shift-inverse", Provenance.ANALYTIC,
                     inverse_gap, 0.0, tolerance, weight=spec),
    ])


def non_ro_case() -> CaseResult:
    candidate = RepresentedWeight.from_functions(lambda t: 0.0, np.log, t_max=1.0e8, points=4000)
    result = check_ro_membership(candidate, a=2.0, t_grid=np.geomspace(1.0, 1.0e6, 500))
    return CaseResult(records=[
        verdict_record("membership", "represented gamma=ln t", "ro-violation", Provenance.ANALYTIC,
                       result.violated, True, gamma="ln t"),
    ])


def power_constant_case() -> CaseResult:
    result = check_ro_membership(PowerWeight(3.0), a=2.0)
    return CaseResult(records=[
        close_record("membership", "power(s=3) a=2", "ro-constant", Provenance.ANALYTIC,
                     result.c_estimate, 8.0, 1e-9, relative=True, weight="power(s=3)"),
    ])


@suite_registry.register("membership")
def plan_membership(config: ExperimentConfig) -> CasePlan:
    plan: CasePlan = [
        (f"membership:{label}", membership_case,
         {"label": label, "spec": spec, "seed": config.seeds[0],
          "tolerance": config.tolerances.algebraic})
        for label, spec in _labelled(config)
    ]
    plan.append(("membership:power-constant", power_constant_case, {}))
    plan.append(("membership:non-ro", non_ro_case, {}))
    return plan


# -- indices ------------------------------------------------------------------


def indices_case(
    label: str, spec: dict[str, Any], grid: dict[str, Any], tolerance: float
) -> CaseResult:
    phi = _weight(spec)
    index_grid = IndexGrid(**grid)
    estimated = estimate_indices(phi, index_grid)
    records = []
    known = phi.known_indices()
    if known is not None:
        records += [
            close_record("indices", label, "sigma0-estimate", Provenance.ANALYTIC,
                         estimated.sigma0, known.sigma0, tolerance, weight=spec, grid=grid),
            close_record("indices", label, "sigma1-estimate", Provenance.ANALYTIC,
                         estimated.sigma1, known.sigma1, tolerance, weight=spec, grid=grid),
        ]
        moved = shift(phi, 2.0).known_indices()
        if moved is not None:
            records.append(close_record(
                "indices", label, "index-shift", Provenance.ANALYTIC,
                moved.sigma0 - known.sigma0 + moved.sigma1 - known.sigma1, 4.0, 1e-12,
                weight=spec, s=2.0,
            ))
    shifted = estimate_indices(shift(phi, 2.0), index_grid)
    records.append(close_record(
        "indices", label, "estimated-index-shift", Provenance.ORACLE,
        shifted.sigma1 - estimated.sigma1, 2.0, tolerance, weight=spec, grid=grid, s=2.0,
    ))
    records.append(bound_record(
        "indices", label, "sigma0-le-sigma1", Provenance.ORACLE,
        estimated.sigma0 - estimated.sigma1 + estimated.inversion, 0.0, tolerance,
        weight=spec, grid=grid,
    ))

    ladder = []
    for h_lo, h_hi in WINDOW_LADDER:
        ladder.append(estimate_indices(phi, IndexGrid(h_lo=h_lo, h_hi=h_hi)))
    x = [h_hi for _, h_hi in WINDOW_LADDER]
    return CaseResult(records=records, series=[
        Series(kind="index", label=f"{label} sigma0", x=x, y=[i.sigma0 for i in ladder]),
        Series(kind="index", label=f"{label} sigma1", x=x, y=[i.sigma1 for i in ladder]),
    ])


@suite_registry.register("indices")
def plan_indices(config: ExperimentConfig) -> CasePlan:
    grid = config.index_grid.model_dump()
    entries = _labelled(config)
    seen = {_weight(spec).label for _, spec in entries}
    for spec in REFERENCE_INDEX_WEIGHTS:
        label = _weight(spec).label
        if label not in seen:
            entries.append((label, dict(spec)))
            seen.add(label)
    return [
        (f"indices:{label}", indices_case,
         {"label": label, "spec": spec, "grid": grid, "tolerance": config.tolerances.index})
        for label, spec in entries
    ]


# -- norm ---------------------------------------------------------------------


def norm_case(
    label: str, spec: dict[str, Any], sizes: list[int], seeds: list[int], tolerance: float
) -> CaseResult:
    phi = _weight(spec)
    idx = best_indices(phi)
    s0, s1 = float(np.floor(idx.sigma0)) - 1.0, float(np.ceil(idx.sigma1)) + 1.0
    upper = shift(phi, 0.5)
    records: list[VerificationRecord] = []
    ratios = []
    first = None
    for K in sizes:
        lattice = Lattice(2, K)
        c0, c1 = scale_bracket(phi, s0, s1, lattice)
        first = first or (c0, c1)
        case = f"{label} K={K}"
        records += [
            close_record("norm", case, "chain-constant-lower", Provenance.STABILITY,
                         c0, first[0], tolerance, relative=True, weight=spec, K=K, s0=s0),
            close_record("norm", case, "chain-constant-upper", Provenance.STABILITY,
                         c1, first[1], tolerance, relative=True, weight=spec, K=K, s1=s1),
        ]
        observed = []
        for seed in seeds:
            u = random_field(seed, PowerWeight(1.0), lattice)
            norm = h_norm(u, phi)
            records += [
                bound_record("norm", case, "chain-lower", Provenance.ANALYTIC,
                             h_norm(u, PowerWeight(s0)) / norm, c0, c0 * tolerance,
                             weight=spec, K=K, seed=seed),
                bound_record("norm", case, "chain-upper", Provenance.ANALYTIC,
                             norm / h_norm(u, PowerWeight(s1)), c1, c1 * tolerance,
                             weight=spec, K=K, seed=seed),
                bound_record("norm", case, "norm-monotone", Provenance.ANALYTIC,
                             norm / h_norm(u, upper), 1.0, tolerance, weight=spec, K=K, seed=seed),
            ]
            observed.append(norm / h_norm(u, PowerWeight(s1)))
        ratios.append(float(np.mean(observed)))
    return CaseResult(records=records, series=[
        Series(kind="norm_ratio", label=f"{label} / H^({s1:g})", x=[float(K) for K in sizes],
               y=ratios),
    ])


def norm_reference_case(tolerance: float) -> CaseResult:
    lattice = Lattice(2, 8)
    mode = SpectralField.single_mode(lattice, (3, 4))
    pair = SpectralField.single_mode(lattice, (1, 0)) + SpectralField.single_mode(lattice, (0, 2))
    phi = PowerLogWeight(1.0, 1.0)
    expected_pair = float(np.hypot(phi.evaluate(np.sqrt(2.0)), phi.evaluate(np.sqrt(5.0))))
    case = "reference"
    return CaseResult(records=[
        close_record("norm", case, "smoothed-modulus", Provenance.ANALYTIC,
                     smoothed_modulus((3, 4)), np.sqrt(26.0), tolerance, relative=True, k=(3, 4)),
        close_record("norm", case, "unit-mode-norm", Provenance.ANALYTIC,
                     h_norm(mode, PowerWeight(1.0)), np.sqrt(26.0), tolerance, relative=True,
                     k=(3, 4)),
        close_record("norm", case, "zero-norm", Provenance.ANALYTIC,
                     h_norm(SpectralField.zeros(lattice), phi), 0.0, 0.0),
        close_record("norm", case, "pythagoras", Provenance.ANALYTIC,
                     h_norm(pair, phi), expected_pair, tolerance, relative=True,
                     modes=((1, 0), (0, 2))),
        verdict_record("norm", case, "embedding-bounded", Provenance.ANALYTIC,
                       embedding_bounded(PowerWeight(1.0), PowerWeight(2.0)).embeds, True,
                       pair="power(1)/power(2)"),
        close_record("norm", case, "embedding-constant", Provenance.ANALYTIC,
                     embedding_bounded(PowerWeight(1.0), PowerWeight(2.0)).constant, 1.0,
                     tolerance, relative=True, pair="power(1)/power(2)"),
        verdict_record("norm", case, "embedding-bounded", Provenance.ANALYTIC,
                       embedding_bounded(PowerWeight(2.0), PowerWeight(1.0)).embeds, False,
                       pair="power(2)/power(1)"),
        verdict_record("norm", case, "embedding-bounded", Provenance.ANALYTIC,
                       embedding_bounded(phi, PowerWeight(1.0)).embeds, False,
                       pair="powerlog(1,1)/power(1)"),
        verdict_record("norm", case, "embedding-compact", Provenance.ANALYTIC,
                       embedding_compact(PowerWeight(1.0), phi), True,
                       pair="power(1)/powerlog(1,1)"),
        verdict_record("norm", case, "embedding-compact", Provenance.ANALYTIC,
                       embedding_compact(PowerWeight(1.0), PowerWeight(1.0)), False,
                       pair="power(1)/power(1)"),
    ])


@suite_registry.register("norm")
def plan_norm(config: ExperimentConfig) -> CasePlan:
    seeds = _field_seeds(config.seeds, config.samples.fields)
    plan: CasePlan = [
        (f"norm:{label}", norm_case,
         {"label": label, "spec": spec, "sizes": list(config.lattice_sizes), "seeds": seeds,
          "tolerance": config.tolerances.algebraic})
        for label, spec in _labelled(config)
    ]
    plan.append(("norm:reference", norm_reference_case,
                 {"tolerance": config.tolerances.algebraic}))
    return plan


# -- interp -------------------------------------------------------------------


def interp_case(
    label: str,
    spec: dict[str, Any],
    s0: float,
    s1: float,
    sizes: list[int],
    seeds: list[int],
    tolerance: float,
) -> CaseResult:
    phi = _weight(spec)
    psi = make_psi(phi, s0, s1)
    pair = HilbertPairSpec(s0, s1)
    case = f"{label} ({s0:g},{s1:g})"
    records = [
        verdict_record("interp", case, "psi-pseudoconcave", Provenance.ANALYTIC,
                       is_pseudoconcave(psi), True, weight=spec, s0=s0, s1=s1),
    ]
    for K in sizes:
        lattice = Lattice(2, K)
        fields = [random_field(seed, PowerWeight(1.0), lattice) for seed in seeds]
        for seed, u in zip(seeds, fields):
            records.append(bound_record(
                "interp", f"{case} K={K}", "interp-identity", Provenance.ANALYTIC,
                verify_interp_identity(u, phi, s0, s1), 0.0, tolerance,
                weight=spec, s0=s0, s1=s1, K=K, seed=seed,
            ))
        triple = fields[:3]
        records.append(bound_record(
            "interp", f"{case} K={K}", "direct-sum", Provenance.ANALYTIC,
            verify_direct_sum(triple, [pair] * len(triple), psi), 0.0, tolerance,
            weight=spec, s0=s0, s1=s1, K=K, seeds=seeds[:3],
        ))
    return CaseResult(records=records)


def interp_reference_case(tolerance: float) -> CaseResult:
    phi = OscPowerWeight(1.0, 0.5, clock="log")
    psi = make_psi(phi, 0.0, 2.0)
    value = float(np.exp(psi.log_psi(np.log(4.0))))
    lattice = Lattice(2, 8)
    mode = SpectralField.single_mode(lattice, (2, 1))
    unit = make_psi(PowerWeight(1.0), 0.0, 2.0)
    constant = InterpolationParameter.constant()
    case = "reference"
    return CaseResult(records=[
        close_record("interp", case, "psi-value", Provenance.ANALYTIC,
                     value, 2.0 * np.exp(0.5 * np.sin(np.log(2.0))), tolerance, relative=True,
                     weight="oscpower(1,0.5,log)", t=4.0),
        close_record("interp", case, "psi-unit-mode", Provenance.ANALYTIC,
                     interp_norm(mode, HilbertPairSpec(0.0, 2.0), unit), np.sqrt(6.0),
                     tolerance, relative=True, k=(2, 1)),
        close_record("interp", case, "psi-constant", Provenance.ANALYTIC,
                     interp_norm(mode, HilbertPairSpec(0.5, 2.0), constant),
                     h_norm(mode, PowerWeight(0.5)), tolerance, relative=True, k=(2, 1)),
        verdict_record("interp", case, "pseudoconcave-sqrt", Provenance.ANALYTIC,
                       is_pseudoconcave(InterpolationParameter.power(0.5)), True, psi="t^0.5"),
        verdict_record("interp", case, "pseudoconcave-square", Provenance.ANALYTIC,
                       is_pseudoconcave(InterpolationParameter.power(2.0)), False, psi="t^2"),
    ])


@suite_registry.register("interp")
def plan_interp(config: ExperimentConfig) -> CasePlan:
    seeds = _field_seeds(config.seeds, config.samples.fields)
    plan: CasePlan = []
    for label, spec in _labelled(config):
        for s0, s1 in INTERP_PAIRS:
            try:
                make_psi(_weight(spec), s0, s1)
            except PreconditionError as exc:
                logger.info("interp: skipping %s on (%g, %g): %s", label, s0, s1, exc)
                continue
            plan.append((
                f"interp:{label}:{s0:g},{s1:g}", interp_case,
                {"label": label, "spec": spec, "s0": s0, "s1": s1,
                 "sizes": list(config.lattice_sizes), "seeds": seeds,
                 "tolerance": config.tolerances.algebraic},
            ))
    plan.append(("interp:reference", interp_reference_case,
                 {"tolerance": config.tolerances.algebraic}))
    return plan


# -- quotient -----------------------------------------------------------------

QUOTIENT_GRID_SIZES = (8, 12, 16, 24, 32)
QUOTIENT_WEIGHTS: tuple[dict[str, Any], ...] = (
    {"family": "power", "s": 1.0},
    {"family": "powerlog", "s": 1.0, "r": 1.0},
    {"family": "oscpower", "s": 1.0, "eps": 0.5},
)


def _instance(i: int, seed: int, tolerance: float, max_iterations: int | None) -> QuotientProblem:
    rng = np.random.default_rng((seed, i))
    points = QUOTIENT_GRID_SIZES[i % len(QUOTIENT_GRID_SIZES)]
    inside = rng.random(points) < 0.5
    inside[0], inside[-1] = True, False
    mask = DomainMask(inside)
    target = rng.standard_normal(mask.count) + 1j * rng.standard_normal(mask.count)
    phi = _weight(QUOTIENT_WEIGHTS[i % len(QUOTIENT_WEIGHTS)])
    return QuotientProblem(target, phi, Lattice(1, points // 2), mask, tolerance, max_iterations)


def quotient_instance_case(
    index: int,
    seed: int,
    extensions: int,
    oracle_tolerance: float,
    slack: float,
    solver_tolerance: float,
    max_iterations: int | None,
) -> CaseResult:
    problem = _instance(index, seed, solver_tolerance, max_iterations)
    result = quotient_norm(problem)
    oracle = dense_kkt_solve(problem)
    rng = np.random.default_rng((seed, index, 1))
    worst = -np.inf
    for j in range(extensions):
        z = outside_supported_field(problem.mask, problem.lattice, seed=seed * 100_000 + 100 * index + j)
        candidate = result.extension + z.scale(rng.uniform(0.01, 2.0))
        bound = quotient_upper_bound(problem.target, problem.weight, candidate, problem.mask)
        worst = max(worst, (result.value - bound) / max(result.value, 1e-300))
    case = f"instance {index} M={problem.mask.points} {problem.weight.label}"
    inputs = {"index": index, "seed": seed}
    return CaseResult(records=[
        verdict_record("quotient", case, "cg-converged", Provenance.STABILITY,
                       result.converged, True, **inputs),
        close_record("quotient", case, "kkt-oracle", Provenance.ORACLE,
                     result.value, oracle.value, oracle_tolerance, relative=True, **inputs),
        bound_record("quotient", case, "infimum", Provenance.ANALYTIC,
                     float(worst), 0.0, slack, extensions=extensions, **inputs),
    ])


def disk_quotient_case(
    label: str, spec: dict[str, Any], K: int, seed: int, oracle_tolerance: float,
    solver_tolerance: float,
) -> CaseResult:
    phi = _weight(spec)
    stronger = shift(phi, 1.0)
    mask = DomainMask.disk(K)
    lattice = Lattice(2, K)
    values = restriction(random_field(seed, PowerWeight(1.0), lattice), mask)
    fact = QuotientFactorization(mask, lattice, phi)
    cg = quotient_norm(QuotientProblem(values, phi, lattice, mask, solver_tolerance))
    smaller = fact.norm(values)
    larger = QuotientFactorization(mask, lattice, stronger).norm(values)
    constant = embedding_bounded(phi, stronger).constant
    case = f"{label} disk K={K}"
    inputs = {"weight": spec, "K": K, "seed": seed}
    return CaseResult(records=[
        close_record("quotient", case, "factorization-oracle", Provenance.ORACLE,
                     cg.value, smaller, oracle_tolerance, relative=True, **inputs),
        bound_record("quotient", case, "domain-embedding", Provenance.ANALYTIC,
                     smaller / larger, constant, constant * oracle_tolerance, **inputs),
    ])


@suite_registry.register("quotient")
def plan_quotient(config: ExperimentConfig) -> CasePlan:
    tol = config.tolerances
    plan: CasePlan = [
        (f"quotient:instance:{i}", quotient_instance_case,
         {"index": i, "seed": config.seeds[0], "extensions": config.samples.extensions,
          "oracle_tolerance": tol.oracle, "slack": tol.infimum_slack,
          "solver_tolerance": config.solver.tolerance,
          "max_iterations": config.solver.max_iterations})
        for i in range(config.samples.quotient_instances)
    ]
    for label, spec in _labelled(config):
        for K in config.lattice_sizes:
            if K > 32:
                continue
            plan.append((
                f"quotient:disk:{label}:{K}", disk_quotient_case,
                {"label": label, "spec": spec, "K": K, "seed": config.seeds[0],
                 "oracle_tolerance": tol.oracle, "solver_tolerance": config.solver.tolerance},
            ))
    return plan


# -- bvp ----------------------------------------------------------------------


def fredholm_case(model_name: str, weight_specs: list[dict[str, Any]], tolerance: float) -> CaseResult:
    model = get_model(model_name)
    data = fredholm_data(model)
    expected = EXPECTED_FREDHOLM[model_name]
    invariance = fredholm_invariance(model, [_weight(spec) for spec in weight_specs])
    residual = max([kernel_residual(model, w) for w in data.kernel], default=0.0)
    case = model_name
    return CaseResult(records=[
        close_record("bvp", case, "kernel-dimension", Provenance.ANALYTIC,
                     data.dims[0], expected[0], 0.0, model=model_name),
        close_record("bvp", case, "cokernel-dimension", Provenance.ANALYTIC,
                     data.dims[1], expected[1], 0.0, model=model_name),
        close_record("bvp", case, "fredholm-index", Provenance.ANALYTIC,
                     data.index, expected[0] - expected[1], 0.0, model=model_name),
        bound_record("bvp", case, "kernel-residual", Provenance.ANALYTIC,
                     residual, 0.0, tolerance, model=model_name),
        verdict_record("bvp", case, "fredholm-weight-invariance", Provenance.ANALYTIC,
                       invariance.invariant, True, model=model_name, weights=weight_specs),
    ])


def green_case(model_name: str, seed: int, pairs: int, tolerance: float) -> CaseResult:
    model = get_model(model_name)
    worst = 0.0
    for i in range(pairs):
        u = DiskField.random_smooth(4, 3, seed=seed * 1000 + i)
        v = DiskField.random_smooth(4, 3, seed=seed * 1000 + 500 + i)
        worst = max(worst, green_identity_residual(model, u, v))
    return CaseResult(records=[
        bound_record("bvp", model_name, "green-identity", Provenance.ANALYTIC,
                     worst, 0.0, tolerance, model=model_name, seed=seed, pairs=pairs),
    ])


def solvability_case(model_name: str, seed: int, tolerance: float) -> CaseResult:
    model = get_model(model_name)
    records = []
    worst = 0.0
    for i in range(5):
        u = DiskField.random_smooth(5, 3, seed=seed * 1000 + i)
        data = apply_model(model, u)
        back = apply_model(model, solve(model, data.f, data.g, tolerance))
        gap = max(
            [float(np.max(np.abs((back.f - data.f).coeffs)))]
            + [float(np.max(np.abs((b + g.scale(-1.0)).coeffs))) for b, g in zip(back.g, data.g)]
        )
        worst = max(worst, gap)
    records.append(bound_record("bvp", model_name, "mode-residual", Provenance.ANALYTIC,
                                worst, 0.0, tolerance, model=model_name, seed=seed))

    f, g = DiskField.constant(2), tuple(BoundaryField.zeros(2) for _ in range(model.q))
    defect = np.abs(compatibility_defect(model, f, g))
    if defect.size:
        try:
            solve(model, f, g, tolerance)
            rejected = False
        except IncompatibleDataError:
            rejected = True
        records += [
            verdict_record("bvp", model_name, "incompatible-rejected", Provenance.ANALYTIC,
                           rejected, True, model=model_name, f="1", g="0"),
            close_record("bvp", model_name, "compatibility-defect", Provenance.ANALYTIC,
                         float(defect[0]), float(np.pi), tolerance, model=model_name, f="1", g="0"),
        ]
    return CaseResult(records=records)


def _radial_source(r: np.ndarray, k: int) -> np.ndarray:
    return r ** abs(k) * np.cos(r)


def radial_case(modes: list[int]) -> CaseResult:
    records = []
    for k in modes:
        def source(r: np.ndarray, k: int = k) -> np.ndarray:
            return _radial_source(r, k)

        r, fd = fd_dirichlet_mode(k, source, points=2000, extrapolate=True)
        r, fd = r[::20], fd[::20]
        green = green_dirichlet_mode(k, source, r, nodes=64)
        scale = float(np.max(np.abs(green)))
        records.append(bound_record(
            "bvp", f"radial k={k}", "green-vs-finite-differences", Provenance.ORACLE,
            float(np.max(np.abs(green - fd))) / scale, 0.0, FD_TOLERANCE, k=k,
        ))
    return CaseResult(records=records)


def apriori_case(
    model_name: str,
    label: str,
    spec: dict[str, Any],
    sizes: list[int],
    samples: int,
    seed: int,
    order: float,
    band: int,
    growth: float,
    points: int,
) -> CaseResult:
    model = get_model(model_name)
    phi = _weight(spec)
    fields = homogeneous_samples(model, samples, seed, order, band)
    maxima = []
    for K in sizes:
        norms = DiskNorms(K, points)
        maxima.append(max(apriori_ratio(model, u, phi, norms).ratio for u in fields))
    case = f"{model_name} {label} K={sizes[0]}->{sizes[1]}"
    return CaseResult(records=[
        bound_record("bvp", case, "apriori-stability", Provenance.STABILITY,
                     maxima[1], growth * maxima[0], model=model_name, weight=spec,
                     sizes=sizes, samples=samples, seed=seed, points=points),
    ])


def isomorphism_case(
    model_name: str,
    label: str,
    spec: dict[str, Any],
    sizes: list[int],
    samples: int,
    seed: int,
    order: float,
    band: int,
    factor: float,
    points: int,
) -> CaseResult:
    model = get_model(model_name)
    phi = _weight(spec)
    lowers = [
        isomorphism_condition(model, phi, K, samples, seed, order, band, points=points).lower
        for K in sizes
    ]
    inputs = {"model": model_name, "weight": spec, "sizes": sizes, "samples": samples,
              "seed": seed, "points": points}
    case = f"{model_name} {label}"
    return CaseResult(records=[
        verdict_record("bvp", case, "isomorphism-lower-positive", Provenance.STABILITY,
                       min(lowers) > 0.0, True, **inputs),
        bound_record("bvp", case, "isomorphism-stability", Provenance.STABILITY,
                     max(lowers) / min(lowers) if min(lowers) > 0.0 else float("inf"), factor, **inputs),
    ])


def cross_route_case(
    label: str, spec: dict[str, Any], sizes: list[int], points: int, factor: float
) -> CaseResult:
    phi = _weight(spec)
    u = DiskField.monomial(3, 3)
    records = []
    for K in sizes:
        gap = route_agreement(DIRICHLET, u, phi, DiskNorms(K, points))
        records.append(bound_record(
            "bvp", f"dirichlet {label} K={K}", "cross-route", Provenance.STABILITY,
            gap, factor, weight=spec, K=K, points=points, mode=3,
        ))
    return CaseResult(records=records)


def regularity_case(label: str, spec: dict[str, Any], K: int, seeds: list[int],
                    tolerance: float) -> CaseResult:
    phi = _weight(spec)
    lattice = Lattice(2, K)
    shift_gap = lift_gap = 0.0
    for seed in seeds:
        u = random_field(seed, PowerWeight(1.0), lattice)
        shift_gap = max(shift_gap, regularity_shift_exact(u, phi))
        lift_gap = max(lift_gap, regularity_lift_check(u, phi))
    inputs = {"weight": spec, "K": K, "seeds": seeds}
    return CaseResult(records=[
        bound_record("bvp", f"torus {label}", "regularity-shift", Provenance.ANALYTIC,
                     shift_gap, 0.0, tolerance, **inputs),
        bound_record("bvp", f"torus {label}", "regularity-lift", Provenance.ANALYTIC,
                     lift_gap, 0.0, tolerance, **inputs),
    ])


def _admissible(spec: dict[str, Any]) -> bool:
    return best_indices(_weight(spec)).sigma0 > -0.5


@suite_registry.register("bvp")
def plan_bvp(config: ExperimentConfig) -> CasePlan:
    tol, samples = config.tolerances, config.samples
    seed = config.seeds[0]
    specs = [spec for _, spec in _labelled(config)]
    plan: CasePlan = []
    for name in config.models:
        plan += [
            (f"bvp:fredholm:{name}", fredholm_case,
             {"model_name": name, "weight_specs": specs, "tolerance": tol.boundary_mode}),
            (f"bvp:green:{name}", green_case,
             {"model_name": name, "seed": seed, "pairs": samples.green_pairs,
              "tolerance": tol.quadrature}),
            (f"bvp:solve:{name}", solvability_case,
             {"model_name": name, "seed": seed, "tolerance": tol.boundary_mode}),
        ]
    plan.append(("bvp:radial", radial_case, {"modes": [0, 1, 3]}))

    sizes = sorted(config.lattice_sizes)
    stable_sizes = [K for K in sizes if K >= 16]
    for label, spec in _labelled(config):
        if not _admissible(spec):
            logger.info("bvp: %s has sigma0 <= -1/2, estimate cases skipped", label)
            continue
        plan.append((f"bvp:regularity:{label}", regularity_case,
                     {"label": label, "spec": spec, "K": sizes[-1],
                      "seeds": _field_seeds(config.seeds, samples.fields),
                      "tolerance": tol.algebraic}))
        if "dirichlet" in config.models:
            plan.append((f"bvp:cross-route:{label}", cross_route_case,
                         {"label": label, "spec": spec, "sizes": sizes,
                          "points": samples.disk_points, "factor": tol.cross_route_factor}))
        for name in config.models:
            common = {"model_name": name, "label": label, "spec": spec,
                      "samples": samples.bvp_samples, "seed": seed,
                      "order": samples.sobolev_order, "band": samples.boundary_band,
                      "points": samples.disk_points}
            if len(sizes) >= 2:
                plan.append((f"bvp:apriori:{name}:{label}", apriori_case,
                             {**common, "sizes": sizes[-2:], "growth": tol.apriori_growth}))
            if stable_sizes:
                plan.append((f"bvp:isomorphism:{name}:{label}", isomorphism_case,
                             {**common, "sizes": stable_sizes,
                              "factor": tol.isomorphism_factor}))
    return plan


# -- embedding ----------------------------------------------------------------


def ck_threshold_case(k: int, n: int) -> CaseResult:
    threshold = k + n / 2.0
    records = []
    for r in np.round(np.arange(0.0, 4.05, 0.1), 1):
        if abs(r - threshold) < 1e-9:
            continue
        result = ck_embedding_criterion(PowerWeight(float(r)), k, n)
        records.append(verdict_record(
            "embedding", f"power(s={r:g}) k={k} n={n}", "ck-embedding", Provenance.ANALYTIC,
            result.holds, bool(r > threshold), r=float(r), k=k, n=n,
        ))
    series = []
    for phi in (PowerWeight(threshold), PowerLogWeight(threshold, 1.0)):
        result = ck_embedding_criterion(phi, k, n)
        verdict = result.holds
        records.append(verdict_record(
            "embedding", f"{phi.label} k={k} n={n}", "ck-embedding-threshold",
            Provenance.ANALYTIC, verdict, isinstance(phi, PowerLogWeight),
            weight=phi.label, k=k, n=n,
        ))
        if result.log_partial_sums:
            series.append(Series(
                kind="partial_sums", label=f"{phi.label} k={k}",
                x=[float(j) for j in range(len(result.log_partial_sums))],
                y=list(result.log_partial_sums),
            ))
    return CaseResult(records=records, series=series)


def ck_prediction_case(q: int, n: int) -> CaseResult:
    records = []
    for k in (0, 1):
        threshold = k + n / 2.0 - 2.0 * q
        for offset, expected in ((0.3, True), (-0.3, False), (0.0, False)):
            sigma = threshold + offset
            records.append(verdict_record(
                "embedding", f"power(s={sigma:g}) k={k} q={q}", "ck-prediction",
                Provenance.ANALYTIC, ck_prediction(PowerWeight(sigma), k, q, n).holds,
                expected, sigma=sigma, k=k, q=q, n=n,
            ))
    return CaseResult(records=records)


def classical_case(model_name: str) -> CaseResult:
    model = get_model(model_name)
    records = []
    for s, expected in ((2.0, True), (0.5, False)):
        phi = PowerWeight(s)
        records.append(verdict_record(
            "embedding", f"{model_name} {phi.label}", "classical-solution", Provenance.ANALYTIC,
            classical_prediction(model, phi, phi).holds, expected, model=model_name, s=s,
        ))
    return CaseResult(records=records)


def embedding_weight_case(label: str, spec: dict[str, Any]) -> CaseResult:
    phi = _weight(spec)
    smoother = shift(phi, 1.0)
    records = [
        verdict_record("embedding", label, "embedding-bounded", Provenance.ANALYTIC,
                       embedding_bounded(phi, smoother).embeds, True, weight=spec),
        verdict_record("embedding", label, "embedding-compact", Provenance.ANALYTIC,
                       embedding_compact(phi, smoother), True, weight=spec),
    ]
    idx = phi.known_indices()
    if idx is not None and (idx.sigma0 > 1.0 or idx.sigma1 < 1.0):
        records.append(verdict_record(
            "embedding", label, "c0-embedding", Provenance.ANALYTIC,
            ck_embedding_criterion(phi, 0, 2).holds, idx.sigma0 > 1.0, weight=spec,
        ))
    return CaseResult(records=records)


@suite_registry.register("embedding")
def plan_embedding(config: ExperimentConfig) -> CasePlan:
    plan: CasePlan = [
        (f"embedding:threshold:{k}", ck_threshold_case, {"k": k, "n": 2}) for k in (0, 1, 2)
    ]
    plan += [(f"embedding:prediction:{q}", ck_prediction_case, {"q": q, "n": 2}) for q in (1, 2)]
    plan += [(f"embedding:classical:{name}", classical_case, {"model_name": name})
             for name in config.models]
    plan += [(f"embedding:weight:{label}", embedding_weight_case, {"label": label, "spec": spec})
             for label, spec in _labelled(config)]
    return plan


# -- witness ------------------------------------------------------------------


def witness_case(order: int, K: int, growth: float, variation: float) -> CaseResult:
    lattice = Lattice(2, K)
    mu = (order, 0)
    half = K // 2
    lo, hi = derivative_partial_sup(threshold_witness(lattice, order), mu, [half, K])
    smooth = threshold_witness(lattice, order, excess=1.0, k_min=0)
    s_lo, s_hi = derivative_partial_sup(smooth, mu, [half, K])
    inputs = {"order": order, "K": K}
    increase = (hi - lo) / lo if lo > 0.0 else float("inf")
    return CaseResult(records=[
        floor_record("witness", f"threshold order={order} K={half}->{K}", "witness-growth",
                     Provenance.STABILITY, increase, growth, **inputs),
        bound_record("witness", f"above-threshold order={order} K={half}->{K}",
                     "witness-bounded", Provenance.STABILITY,
                     abs(s_hi - s_lo) / s_lo, variation, **inputs),
    ])


def single_mode_witness_case(tolerance: float) -> CaseResult:
    u = SpectralField.single_mode(Lattice(2, 8), (3, -2))
    sups = derivative_partial_sup(u, (1, 0), [3, 8])
    return CaseResult(records=[
        close_record("witness", "single mode (3,-2)", "partial-sum-derivative",
                     Provenance.ANALYTIC, sups[-1], 3.0, tolerance, relative=True, k=(3, -2)),
    ])


@suite_registry.register("witness")
def plan_witness(config: ExperimentConfig) -> CasePlan:
    K = max(config.lattice_sizes)
    tol = config.tolerances
    plan: CasePlan = [
        (f"witness:order:{order}", witness_case,
         {"order": order, "K": K, "growth": tol.witness_growth,
          "variation": tol.witness_variation})
        for order in (0, 1)
    ]
    plan.append(("witness:single-mode", single_mode_witness_case,
                 {"tolerance": tol.algebraic}))
    return plan
