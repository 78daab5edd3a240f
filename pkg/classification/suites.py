"""
Verification suites.

Each suite takes a SuiteContext and returns CheckResults; run_suite wires
the context (constant mode adjudication, the normalized solution, golden
table) and aggregates everything into one VerificationReport.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import mpmath
from django.conf import settings

from polyharmonic_toolkit import __version__

from .checks import (
    CheckResult,
    CheckStatus,
    VerificationReport,
    exact_check,
    numeric_check,
    predicate_check,
    skipped,
)
from .exact_constants import (
    ConstantMode,
    ExactScalar,
    constant_chain,
    flux_check,
    gamma_half,
    select_mode,
    sphere_area,
)
from .exceptions import DomainError, InternalConsistencyError, QuadratureFailure
from .golden import FATE_RMAX, freeze_fates, load_golden, shoot_at_tolerances
from .radial_calculus import (
    PROFILE,
    R,
    RadialExpr,
    curvature_constant,
    derivative,
    double_factorial,
    evaluate,
    finite_difference_laplacian,
    initial_data,
    initial_data_ratios,
    laplacian,
    leading_asymptotics,
    log_spaced_radii,
    mul,
    normalized_solution,
    origin_value_oracle,
    polylaplacian,
    r_even_power,
    random_radial_exprs,
    reciprocal_laplacian_identity,
)
from .radial_ode import (
    FateKind,
    OdeSystem,
    Sign,
    classify_trajectory,
    integrate,
    mass_identity_residual,
    nonexistence_grid,
    perturbation_grid,
    second_derivative,
    trajectory_to_csv,
)
from .riesz_potential import (
    QuadratureConfig,
    jensen_violations,
    nested_mean_value_check,
    pohozaev_integral,
    potential,
    solution_density,
)

logger = logging.getLogger(__name__)

SUITES = (
    "symbolic",
    "constants",
    "representation",
    "decay",
    "meanvalue",
    "jensen",
    "odereproduction",
    "nonexistencescan",
)
ALL = "all"
CONSTANT_MODES = ("auto", ConstantMode.PAPER_LITERAL.value, ConstantMode.CORRECTED.value)

# every named identity a full run is expected to touch
ANCHORS = (
    "curvature-constant",
    "classification-identity",
    "initial-data",
    "normalization",
    "finite-difference",
    "sub-polyharmonic-signs",
    "decay-limits",
    "asymptotics",
    "convexity",
    "barrier",
    "monotonicity",
    "reciprocal-identity",
    "linear-growth",
    "sphere-area",
    "constant-recursion",
    "green-normalization",
    "representation",
    "additive-constant",
    "mass-identity",
    "pohozaev",
    "potential-decay",
    "nested-mean-value",
    "jensen",
    "ode-reproduction",
    "ode-structure",
    "ode-mass-identity",
    "ode-convergence",
    "determinism",
    "nonexistence",
    "perturbation",
)

POHOZAEV_RADII = (0.5, 1.0, 2.0)
DECAY_RADII = (10.0, 20.0, 40.0, 80.0)
MEAN_VALUE_CENTRES = (0.0, 2.0)
MEAN_VALUE_RADII = (0.5, 1.0)
FINITE_DIFFERENCE_RADII = (0.5, 1.0, 3.0, 10.0)
FINITE_DIFFERENCE_SAMPLES = 10
ODE_RADII = (1.0, 5.0, 25.0, 50.0)
ODE_MASS_RADII = (1.0, 5.0, 25.0)
ODE_DECAY_RMAX = 100.0
# separatrix instability amplifies integration error like r^(2N-2)
ODE_REPRODUCTION_TOLERANCE = {2: 1e-8, 3: 1e-8}
ODE_REPRODUCTION_FALLBACK = 1e-5
JENSEN_INSTANCES = 200
SAMPLE_PRECISION = 256


def normalize_suite(name):
    key = str(name).lower().replace("_", "").replace("-", "")
    if key != ALL and key not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES + (ALL,))}")
    return key


@dataclass(frozen=True)
class SuiteConfig:
    tolerance: float = 1e-6
    truncation_radius: float = 200.0
    precision: int = 128
    sample_radii: tuple = (0.0, 0.5, 1.0, 2.0, 5.0)
    constant_mode: str = "auto"
    max_n: int = 6
    ode_tolerance: float = 1e-12
    ode_rmax: float = 50.0
    positivity_floor: float = 1e-6
    digits: int = 20
    golden_table: str = None

    def __post_init__(self):
        if self.tolerance <= 0 or self.ode_tolerance <= 0:
            raise DomainError("tolerances must be positive")
        if self.truncation_radius <= 0 or self.ode_rmax < 0:
            raise DomainError("radii must be positive")
        if self.precision < 53:
            raise DomainError("precision must be at least 53 bits")
        if self.max_n < 2:
            raise DomainError("max N must be at least 2")
        if self.constant_mode not in CONSTANT_MODES:
            raise DomainError(f"constant mode must be one of {', '.join(CONSTANT_MODES)}")
        if any(r < 0 for r in self.sample_radii):
            raise DomainError("sample radii must be non-negative")
        object.__setattr__(self, "sample_radii", tuple(float(r) for r in self.sample_radii))

    @classmethod
    def from_settings(cls, **overrides):
        conf = settings.VERIFICATION
        values = {
            "tolerance": conf["TOLERANCE"],
            "truncation_radius": conf["TRUNCATION_RADIUS"],
            "precision": conf["PRECISION_BITS"],
            "sample_radii": tuple(conf["SAMPLE_RADII"]),
            "constant_mode": conf["CONSTANT_MODE"],
            "max_n": conf["MAX_N"],
            "ode_tolerance": conf["ODE_TOLERANCE"],
            "ode_rmax": conf["ODE_RMAX"],
            "positivity_floor": conf["POSITIVITY_FLOOR"],
            "digits": conf["DECIMAL_DIGITS"],
            "golden_table": str(conf["GOLDEN_TABLE"]),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def quadrature(self):
        return QuadratureConfig(
            rel_tol=self.tolerance * 1e-2,
            abs_tol=self.tolerance * 1e-4,
            truncation_radius=self.truncation_radius,
            precision=self.precision,
        )

    @property
    def check_tolerance(self):
        """Integral identities are compared at ten times the quadrature target."""
        return 10 * self.tolerance

    def as_dict(self):
        return {
            "tolerance": self.tolerance,
            "truncation_radius": self.truncation_radius,
            "precision": self.precision,
            "sample_radii": list(self.sample_radii),
            "constant_mode": self.constant_mode,
            "max_n": self.max_n,
            "ode_tolerance": self.ode_tolerance,
            "ode_rmax": self.ode_rmax,
            "positivity_floor": self.positivity_floor,
            "digits": self.digits,
            "golden_table": Path(self.golden_table).name if self.golden_table else None,
        }


@dataclass
class SuiteContext:
    n_order: int
    config: SuiteConfig
    mode: ConstantMode
    chain: object
    other_chain: object
    solution: object
    golden: dict
    extras: dict = field(default_factory=dict)

    @property
    def n(self):
        return 2 * self.n_order - 1

    def fmt(self, value):
        return mpmath.nstr(value, self.config.digits)


def _mp(fraction):
    return mpmath.mpf(fraction.numerator) / fraction.denominator


# -------------------
# Symbolic
# -------------------
def symbolic_suite(ctx):
    big_n, n = ctx.n_order, ctx.n
    solution = ctx.solution
    radii = log_spaced_radii()
    checks = []

    k_n = curvature_constant(big_n)
    checks.append(
        exact_check("symbolic.curvature_constant", "curvature-constant", k_n, double_factorial(4 * big_n - 3),
                    notes="closed form (4N-3)!!")
    )
    golden_k = ctx.golden.get("curvature_constants", {}).get(str(big_n))
    if golden_k is None:
        checks.append(skipped("symbolic.curvature_constant_golden", "curvature-constant", "no golden entry"))
    else:
        checks.append(exact_check("symbolic.curvature_constant_golden", "curvature-constant", str(k_n), golden_k))

    classified = polylaplacian(PROFILE, n, big_n)
    checks.append(
        exact_check(
            "symbolic.classification_identity",
            "classification-identity",
            classified.render(),
            RadialExpr.monomial(-(4 * big_n - 1), -k_n).render(),
        )
    )

    ratios = [str(Fraction(x)) for x in initial_data_ratios(big_n)]
    oracle = [str(origin_value_oracle(n, k)) for k in range(big_n)]
    checks.append(exact_check("symbolic.initial_data", "initial-data", ",".join(ratios), ",".join(oracle),
                              notes="Taylor coefficient oracle"))
    golden_ratios = ctx.golden.get("initial_data_ratios", {}).get(str(big_n))
    if golden_ratios is not None:
        checks.append(exact_check("symbolic.initial_data_golden", "initial-data", ",".join(ratios),
                                  ",".join(golden_ratios)))
    data = initial_data(big_n, ctx.config.precision)
    checks.append(
        predicate_check(
            "symbolic.initial_data_regular",
            "initial-data",
            all(x == 0 for x in data[1::2]),
            measured=",".join(ctx.fmt(x) for x in data[1::2]),
        )
    )

    golden_a = ctx.golden.get("normalization_constants", {}).get(str(big_n))
    if golden_a is None:
        checks.append(skipped("symbolic.normalization", "normalization", "no golden entry"))
    else:
        with mpmath.workprec(SAMPLE_PRECISION):
            a = _mp(k_n) ** (-mpmath.mpf(1) / (4 * big_n))
            checks.append(
                numeric_check("symbolic.normalization", "normalization", a, mpmath.mpf(golden_a), 1e-36,
                              relative=False, digits=40)
            )
    with mpmath.workprec(ctx.config.precision):
        checks.append(
            numeric_check("symbolic.scaling_identity", "normalization", _mp(k_n) * solution.a ** (4 * big_n), 1,
                          mpmath.mpf(2) ** (8 - ctx.config.precision), digits=ctx.config.digits)
        )

    for k in range(big_n):
        worst = _finite_difference_gap(solution.v(k), n, ctx.config.precision, mpmath.mpf("1e-30"))
        checks.append(
            numeric_check(f"symbolic.finite_difference.k{k}", "finite-difference", worst, 0, 1e-6, relative=False,
                          digits=6, notes="worst relative gap, 5-point stencil, h = 1e-4")
        )
    samples = random_radial_exprs(FINITE_DIFFERENCE_SAMPLES, seed=big_n)
    worst = max(_finite_difference_gap(expr, n, ctx.config.precision, 1) for expr in samples)
    checks.append(
        numeric_check("symbolic.finite_difference.random", "finite-difference", worst, 0, 1e-6, relative=False,
                      digits=6, notes=f"{FINITE_DIFFERENCE_SAMPLES} seeded ring elements, gap over max(|exact|, 1)")
    )

    for k in range(1, big_n):
        v_k = solution.v(k)
        coeffs = v_k.coefficients()
        checks.append(
            predicate_check(
                f"symbolic.sub_polyharmonic.k{k}",
                "sub-polyharmonic-signs",
                all(c <= 0 for c in coeffs) and any(c < 0 for c in coeffs),
                measured=v_k.render(),
                expected="every coefficient <= 0",
            )
        )
        negative = all(evaluate(v_k, r, SAMPLE_PRECISION) < 0 for r in radii)
        checks.append(
            predicate_check(f"symbolic.sub_polyharmonic_sampled.k{k}", "sub-polyharmonic-signs", negative,
                            measured=negative)
        )
        lead = leading_asymptotics(v_k)
        checks.append(
            predicate_check(
                f"symbolic.decay_limit.k{k}",
                "decay-limits",
                lead.growth_exponent <= -1 and lead.lead_coeff < 0,
                measured=f"r^{lead.growth_exponent} * {lead.lead_coeff}",
                expected="exponent <= -1",
            )
        )
        checks.append(_asymptotic_lead_check(f"symbolic.asymptotic_lead.k{k}", v_k, lead))

    convex = derivative(derivative(PROFILE))
    checks.append(exact_check("symbolic.convexity", "convexity", convex.render(),
                              RadialExpr.monomial(-3).render()))

    w = solution.v(1)
    dw = derivative(w)
    barrier = mul(R, dw) + w
    checks.append(
        predicate_check(
            "symbolic.barrier_first_order",
            "barrier",
            all(c <= 0 for c in barrier.coefficients())
            and all(evaluate(barrier, r, SAMPLE_PRECISION) <= 0 for r in radii),
            measured=barrier.render(),
            expected="r w' + w <= 0",
        )
    )
    second_barrier = mul(R, derivative(dw)) + dw * 2
    checks.append(
        predicate_check(
            "symbolic.barrier_second_order",
            "barrier",
            all(c >= 0 for c in second_barrier.coefficients())
            and all(evaluate(second_barrier, r, SAMPLE_PRECISION) >= 0 for r in radii),
            measured=second_barrier.render(),
            expected="r w'' + 2 w' >= 0",
        )
    )

    d = n - 1
    flux_density = mul(r_even_power(d), derivative(PROFILE))
    gap = mul(R, derivative(flux_density)) - flux_density * d
    checks.append(
        exact_check("symbolic.monotonicity_exact", "monotonicity", gap.render(),
                    mul(mul(R, r_even_power(d)), convex).render(),
                    notes="r (r^d u')' - d r^d u' = r^(d+1) u''")
    )
    checks.append(
        predicate_check(
            "symbolic.monotonicity_sampled",
            "monotonicity",
            all(evaluate(gap, r, SAMPLE_PRECISION) >= 0 for r in radii),
        )
    )

    lhs, rhs = reciprocal_laplacian_identity(PROFILE, n)
    signs = "negative" if all(c < 0 for c in lhs.coefficients()) else "mixed"
    checks.append(
        exact_check("symbolic.reciprocal_identity", "reciprocal-identity", lhs.render(), rhs.render(),
                    notes=f"Delta(1/u) coefficients are {signs} for the entire solution")
    )

    lead = leading_asymptotics(PROFILE)
    with mpmath.workprec(ctx.config.precision):
        alpha = solution.a * _mp(lead.lead_coeff)
        slope = evaluate(derivative(PROFILE), 1, ctx.config.precision)
        checks.append(
            predicate_check(
                "symbolic.linear_growth",
                "linear-growth",
                lead.growth_exponent == 1 and alpha > 0 and slope > 0,
                measured=f"alpha={ctx.fmt(alpha)}, u'(1)/a={ctx.fmt(slope)}",
                expected="alpha > 0",
            )
        )
    return checks


def _finite_difference_gap(expr, n, precision, floor):
    worst = mpmath.mpf(0)
    for r in FINITE_DIFFERENCE_RADII:
        exact = evaluate(laplacian(expr, n), r, precision)
        approx = finite_difference_laplacian(expr, r, n, mpmath.mpf("1e-4"), precision)
        worst = max(worst, abs(exact - approx) / max(abs(exact), mpmath.mpf(floor)))
    return worst


def _asymptotic_lead_check(check_id, expr, lead):
    worst = mpmath.mpf(0)
    with mpmath.workprec(SAMPLE_PRECISION):
        for r in (mpmath.mpf(10) ** 3, mpmath.mpf(10) ** 4, mpmath.mpf(10) ** 5):
            ratio = evaluate(expr, r, SAMPLE_PRECISION) / r ** _mp(lead.growth_exponent)
            worst = max(worst, abs(ratio / _mp(lead.lead_coeff) - 1) * r / 10)
    return predicate_check(check_id, "asymptotics", worst <= 1, measured=mpmath.nstr(worst, 6),
                           expected="relative gap <= 10/r")


# -------------------
# Constants
# -------------------
def constants_suite(ctx):
    big_n, n = ctx.n_order, ctx.n
    checks = [
        exact_check("constants.sphere_area", "sphere-area", sphere_area(n) * gamma_half(n), ExactScalar(2, n))
    ]
    chains = {}
    for mode in ConstantMode:
        try:
            chain = constant_chain(big_n, mode)
            chains[mode] = chain
            checks.append(
                predicate_check(f"constants.chain.{mode.value}", "constant-recursion", True,
                                measured=",".join(ck.render() for ck in chain.c))
            )
        except InternalConsistencyError as exc:
            checks.append(predicate_check(f"constants.chain.{mode.value}", "constant-recursion", False,
                                          notes=str(exc)))
    expected_flux = {
        ConstantMode.CORRECTED: ExactScalar(1),
        ConstantMode.PAPER_LITERAL: ExactScalar(2 * big_n - 3),
    }
    for mode, expected in expected_flux.items():
        checks.append(
            exact_check(f"constants.flux.{mode.value}", "green-normalization", flux_check(big_n, mode), expected)
        )
    if big_n == 2 and len(chains) == 2:
        checks.append(
            predicate_check(
                "constants.modes_agree",
                "green-normalization",
                chains[ConstantMode.CORRECTED].c == chains[ConstantMode.PAPER_LITERAL].c,
            )
        )
    checks.append(exact_check("constants.selected_mode", "green-normalization", select_mode(big_n).value,
                              ConstantMode.CORRECTED.value))
    return checks


# -------------------
# Integral representations
# -------------------
def representation_suite(ctx):
    big_n, n = ctx.n_order, ctx.n
    cfg = ctx.config.quadrature()
    solution = ctx.solution
    density = solution_density(solution, cfg.precision)
    tolerance = ctx.config.check_tolerance
    checks = []
    offsets = []
    with mpmath.workprec(cfg.precision):
        c = [ck.to_mpf() for ck in ctx.chain.c]
        for r in ctx.config.sample_radii:
            for k in range(big_n):
                beta = 1 if k == 0 else -(n - 2 * k)
                order = 0 if k == 0 else big_n - k
                value = potential(density, beta, r, n, cfg)
                measured = c[order] * value.value
                if k == 0:
                    expected = solution.value(0, r, cfg.precision)
                    offsets.append(expected - measured)
                else:
                    expected = -solution.value(big_n - k, r, cfg.precision)
                checks.append(
                    numeric_check(
                        f"representation.k{k}.r{r:g}",
                        "representation",
                        measured,
                        expected,
                        tolerance,
                        digits=ctx.config.digits,
                        notes=_other_mode_note(ctx, order) + f"; quadrature error {mpmath.nstr(value.error_estimate, 3)}",
                    )
                )

        gamma = mpmath.fsum(offsets) / len(offsets) if offsets else mpmath.mpf(0)
        ctx.extras["gamma_estimate"] = ctx.fmt(gamma)
        checks.append(
            numeric_check("representation.gamma", "additive-constant", gamma, 0, tolerance, relative=False,
                          digits=ctx.config.digits, notes="mean offset u - c_0 * potential")
        )

        mass = potential(density, 0, 0, n, cfg).value
        alpha = c[0] * mass
        ctx.extras["alpha_from_mass"] = ctx.fmt(alpha)
        checks.append(
            numeric_check("representation.mass_identity", "mass-identity", alpha, solution.a, tolerance,
                          digits=ctx.config.digits, notes=_other_mode_note(ctx, 0))
        )
        checks.append(
            numeric_check("representation.pohozaev_balance", "additive-constant", gamma * mass / 2, 0, tolerance,
                          relative=False, digits=ctx.config.digits,
                          notes="gamma/2 times the total mass, zero when the representation has no offset")
        )

        slope = derivative(PROFILE)
        for r in POHOZAEV_RADII:
            value = pohozaev_integral(density, r, n, cfg)
            expected = r * solution.a * evaluate(slope, r, cfg.precision)
            checks.append(
                numeric_check(f"representation.pohozaev.r{r:g}", "pohozaev", c[0] * value.value, expected,
                              tolerance, digits=ctx.config.digits)
            )
    return checks


def _other_mode_note(ctx, order):
    ratio = ctx.other_chain[order] / ctx.chain[order]
    return f"{ctx.other_chain.mode.value} constants scale this by {ratio.render()}"


def decay_suite(ctx):
    big_n, n = ctx.n_order, ctx.n
    cfg = ctx.config.quadrature()
    density = solution_density(ctx.solution, cfg.precision)
    checks = []
    with mpmath.workprec(cfg.precision):
        for k in range(1, big_n):
            order = big_n - k
            c = ctx.chain[order].to_mpf()
            values = []
            for r in DECAY_RADII:
                measured = c * potential(density, -(n - 2 * k), r, n, cfg).value
                values.append(measured)
                checks.append(
                    numeric_check(f"decay.k{k}.r{r:g}", "potential-decay", measured,
                                  -ctx.solution.value(order, r, cfg.precision), ctx.config.check_tolerance,
                                  digits=ctx.config.digits)
                )
            decreasing = all(abs(b) < abs(a) for a, b in zip(values, values[1:]))
            bound = abs(values[-1]) <= mpmath.mpf("1.1") * DECAY_RADII[0] / DECAY_RADII[-1] * abs(values[0])
            checks.append(
                predicate_check(
                    f"decay.k{k}.rate",
                    "potential-decay",
                    decreasing and bound,
                    measured=",".join(ctx.fmt(v) for v in values),
                    expected="strictly decreasing, at least like 1/r",
                )
            )
    return checks


def mean_value_suite(ctx):
    cfg = ctx.config.quadrature()
    return [
        nested_mean_value_check(ctx.n_order, x, r, cfg, ctx.config.check_tolerance, ctx.solution)
        for x in MEAN_VALUE_CENTRES
        for r in MEAN_VALUE_RADII
    ]


def jensen_suite(ctx):
    violations = jensen_violations((1, 4 * ctx.n_order - 1), JENSEN_INSTANCES, seed=ctx.n_order)
    return [exact_check("jensen.violations", "jensen", violations, 0,
                        notes=f"{JENSEN_INSTANCES} random instances")]


# -------------------
# Radial ODE
# -------------------
def ode_reproduction_suite(ctx):
    big_n = ctx.n_order
    config = ctx.config
    solution = ctx.solution
    system = OdeSystem(big_n, Sign.PLUS)
    init = [float(x) for x in initial_data(big_n, config.precision)]
    trajectory = integrate(system, init, config.ode_rmax, config.ode_tolerance, config.positivity_floor)
    tolerance = ODE_REPRODUCTION_TOLERANCE.get(big_n, ODE_REPRODUCTION_FALLBACK)
    checks = []
    for r in ODE_RADII:
        if r > trajectory.grid[-1]:
            checks.append(skipped(f"ode.reproduction.r{r:g}", "ode-reproduction", "beyond the trajectory"))
            continue
        state = trajectory.state_at(r)
        for k in range(big_n):
            checks.append(
                numeric_check(f"ode.reproduction.k{k}.r{r:g}", "ode-reproduction", state[2 * k],
                              solution.value(k, r), tolerance, digits=12)
            )

    fate = classify_trajectory(trajectory)
    checks.append(exact_check("ode.fate", "ode-reproduction", fate.kind.value, FateKind.LINEAR_GROWTH.value,
                              notes=fate.detail))
    if fate.kind is FateKind.LINEAR_GROWTH:
        checks.append(numeric_check("ode.alpha", "linear-growth", fate.alpha, solution.a, 1e-3, digits=12))

    for k in range(1, big_n):
        component = trajectory.component(k)
        checks.append(
            predicate_check(f"ode.structure.k{k}", "ode-structure", bool((component < 0).all()),
                            measured=f"max {component.max():.6g}", expected="v_k < 0 on the grid")
        )
    convexity = second_derivative(trajectory)
    checks.append(
        predicate_check("ode.structure.convexity", "ode-structure", bool(convexity.min() >= -1e-9),
                        measured=f"min v_0'' {convexity.min():.6g}", expected=">= -1e-9")
    )
    for r in ODE_MASS_RADII:
        if r > trajectory.grid[-1]:
            continue
        for k in range(big_n):
            residual, integral = mass_identity_residual(trajectory, k, r)
            checks.append(
                numeric_check(f"ode.mass_identity.k{k}.r{r:g}", "ode-mass-identity", residual, 0,
                              1e-6 * max(abs(integral), 1.0), relative=False, digits=6)
            )

    far = integrate(system, init, ODE_DECAY_RMAX, config.ode_tolerance, config.positivity_floor)
    if far.grid[-1] >= ODE_DECAY_RMAX:
        for k in range(1, big_n):
            near_value = far.state_at(10.0)[2 * k]
            far_value = far.state_at(ODE_DECAY_RMAX)[2 * k]
            checks.append(
                predicate_check(
                    f"ode.decay.k{k}",
                    "decay-limits",
                    abs(far_value) < abs(near_value) / 5,
                    measured=f"v_{k}(10)={near_value:.6g}, v_{k}(100)={far_value:.6g}",
                    expected="|v_k(100)| < |v_k(10)| / 5",
                )
            )

    if big_n == 2:
        errors = []
        for tol in (1e-6, 1e-8):
            coarse = integrate(system, init, 10.0, tol, config.positivity_floor)
            errors.append(abs(coarse.state_at(10.0)[0] - float(solution.value(0, 10.0))))
        checks.append(
            predicate_check(
                "ode.convergence",
                "ode-convergence",
                errors[1] == 0 or errors[0] >= 2 * errors[1],
                measured=f"{errors[0]:.3e} -> {errors[1]:.3e}",
                expected="error shrinks at least 2x",
            )
        )
        again = integrate(system, init, config.ode_rmax, config.ode_tolerance, config.positivity_floor)
        checks.append(
            predicate_check("ode.determinism", "determinism",
                            trajectory_to_csv(again) == trajectory_to_csv(trajectory))
        )
    return checks


def nonexistence_scan_suite(ctx):
    """
    Shooting evidence. Fate content never fails the report: statements about
    fates pass or are reported as informational (skipped). Only drift against
    the golden table or between tolerances fails.
    """
    big_n = ctx.n_order
    checks = []
    golden = ctx.golden.get("fates", {}).get(str(big_n), {})

    minus_runs = shoot_at_tolerances(OdeSystem(big_n, Sign.MINUS), nonexistence_grid(big_n), FATE_RMAX)
    checks.extend(_reproducibility_checks("nonexistence", "nonexistence", minus_runs))
    frozen = freeze_fates(minus_runs)
    if golden.get("nonexistence") is None:
        checks.append(skipped("nonexistence.golden", "nonexistence", f"no golden fates for N={big_n}"))
    else:
        checks.append(exact_check("nonexistence.golden", "nonexistence", ",".join(frozen),
                                  ",".join(golden["nonexistence"])))
    entire_like = [
        point.init for point in minus_runs[-1]
        if point.fate and point.fate.kind is FateKind.LINEAR_GROWTH and point.sign_constant
    ]
    mechanics = sum(1 for point in minus_runs[-1] if point.sign_constant and point.fate
                    and point.fate.kind is FateKind.SUPERLINEAR)
    checks.append(
        _informational(
            "nonexistence.no_entire_solution",
            "nonexistence",
            not entire_like,
            measured=f"{len(entire_like)} sign-constant linear-growth fates",
            notes=f"{mechanics} of {len(minus_runs[-1])} points keep v_1 < 0 and grow superlinearly",
        )
    )

    plus_runs = shoot_at_tolerances(OdeSystem(big_n, Sign.PLUS), perturbation_grid(big_n, ctx.config.precision),
                                    FATE_RMAX)
    checks.extend(_reproducibility_checks("perturbation", "perturbation", plus_runs))
    frozen = freeze_fates(plus_runs)
    if golden.get("perturbation") is None:
        checks.append(skipped("perturbation.golden", "perturbation", "regenerate with manage.py table"))
    else:
        checks.append(exact_check("perturbation.golden", "perturbation", ",".join(frozen),
                                  ",".join(golden["perturbation"])))
    points = plus_runs[-1]
    middle = len(points) // 2
    linear = [i for i, point in enumerate(points) if point.fate and point.fate.kind is FateKind.LINEAR_GROWTH]
    alpha = points[middle].fate.alpha if middle in linear else None
    checks.append(
        _informational(
            "perturbation.isolated_linear_growth",
            "perturbation",
            linear == [middle] and abs(alpha - float(ctx.solution.a)) <= 1e-3 * float(ctx.solution.a),
            measured=";".join(point.fate.label() if point.fate else point.error for point in points),
            notes="only the unperturbed data should grow linearly",
        )
    )
    return checks


def _reproducibility_checks(prefix, anchor, runs):
    checks = []
    for index, points in enumerate(zip(*runs)):
        kinds = [point.fate.kind.value if point.fate else "error" for point in points]
        checks.append(
            predicate_check(f"{prefix}.reproducible.p{index:02d}", anchor, len(set(kinds)) == 1,
                            measured=",".join(kinds), expected="same fate at both tolerances")
        )
    return checks


def _informational(check_id, anchor, holds, measured="", notes=""):
    status = CheckStatus.PASS if holds else CheckStatus.SKIPPED
    return CheckResult(check_id, anchor, status, str(measured), "true", 0.0,
                       notes if holds else f"informational: {notes}")


SUITE_FUNCTIONS = {
    "symbolic": symbolic_suite,
    "constants": constants_suite,
    "representation": representation_suite,
    "decay": decay_suite,
    "meanvalue": mean_value_suite,
    "jensen": jensen_suite,
    "odereproduction": ode_reproduction_suite,
    "nonexistencescan": nonexistence_scan_suite,
}


# -------------------
# Orchestration
# -------------------
def _resolve_mode(config, big_n):
    if config.constant_mode == "auto":
        return select_mode(big_n)
    return ConstantMode(config.constant_mode)


def build_context(big_n, config):
    mode = _resolve_mode(config, big_n)
    other = ConstantMode.PAPER_LITERAL if mode is ConstantMode.CORRECTED else ConstantMode.CORRECTED
    try:
        golden = load_golden(config.golden_table)
    except FileNotFoundError:
        logger.warning("golden table %s not found; golden comparisons are skipped", config.golden_table)
        golden = {}
    return SuiteContext(
        n_order=big_n,
        config=config,
        mode=mode,
        chain=constant_chain(big_n, mode),
        other_chain=constant_chain(big_n, other),
        solution=normalized_solution(big_n, config.precision),
        golden=golden,
    )


def run_suite(suite, big_n, config=None):
    """Run one suite (or all of them) for N and return the aggregated report."""
    suite = normalize_suite(suite)
    if not isinstance(big_n, int) or big_n < 2:
        raise DomainError(f"N must be an integer >= 2, got {big_n!r}")
    config = config or SuiteConfig.from_settings()
    if big_n > config.max_n:
        logger.warning("N=%d is above the configured maximum %d; quadrature suites may take long",
                       big_n, config.max_n)
    names = list(SUITES) if suite == ALL else [suite]
    ctx = build_context(big_n, config)
    report = VerificationReport(
        n=big_n,
        suites=names,
        constant_mode=ctx.mode.value,
        flux_checks={mode.value: flux_check(big_n, mode).render() for mode in ConstantMode},
        curvature_constant=str(curvature_constant(big_n)),
        config=config.as_dict(),
        toolkit_version=__version__,
    )
    for name in names:
        logger.info("suite %s for N=%d started", name, big_n)
        try:
            checks = SUITE_FUNCTIONS[name](ctx)
        except (InternalConsistencyError, QuadratureFailure) as exc:
            logger.error("suite %s for N=%d aborted: %s", name, big_n, exc)
            report.internal_errors.append(f"{name}: {exc}")
            checks = [predicate_check(f"{name}.internal", "internal", False, notes=f"{type(exc).__name__}: {exc}")]
        for check in checks:
            if check.status is CheckStatus.FAIL:
                logger.warning("check %s failed: measured %s, expected %s", check.id, check.measured, check.expected)
        report.checks.extend(checks)
        logger.info("suite %s for N=%d finished: %d checks", name, big_n, len(checks))

    report.gamma_estimate = ctx.extras.get("gamma_estimate")
    report.alpha_from_mass = ctx.extras.get("alpha_from_mass")
    if suite == ALL:
        coverage = {anchor: 0 for anchor in ANCHORS}
        for check in report.checks:
            if check.anchor in coverage:
                coverage[check.anchor] += 1
        report.coverage = coverage
        missing = [anchor for anchor, count in coverage.items() if count == 0]
        report.checks.append(
            predicate_check("coverage.anchors", "coverage", not missing, measured=",".join(missing) or "none",
                            expected="no untouched anchor")
        )
    return report.sort_checks()
