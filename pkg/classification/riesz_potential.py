"""
Radial Riesz-type potentials and spherical means in odd dimension n.

For radial f the potential int |x - y|^beta f(|y|) dy at |x| = r reduces to
int_0^inf s^(n-1) f(s) K(r, s) ds, where the angular kernel K is an integral
over the unit sphere. With t = cos(theta) and m = (n-3)/2 an integer, every
angular integral here has the form

    int_{-1}^{1} (1 - t^2)^m (A - B t)^gamma dt,

which is done in closed form after the substitution w = A - B t. Only the
radial integral is numerical.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .checks import CheckResult, CheckStatus
from .exact_constants import sphere_area
from .exceptions import DivergentKernelError, DomainError
from .quadrature import adaptive_quad
from .radial_calculus import RadialExpr, evaluate, normalized_solution

logger = logging.getLogger(__name__)

# cap on the extra working precision spent on cancellation
_MAX_EXTRA_BITS = 2048


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 4000
    truncation_radius: float = 200.0
    precision: int = 128

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise DomainError("rel_tol and abs_tol must be positive")
        if self.truncation_radius <= 0:
            raise DomainError("truncation radius must be positive")
        if self.precision < 53:
            raise DomainError("precision must be at least 53 bits")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be positive")


@dataclass(frozen=True)
class PotentialValue:
    value: mpmath.mpf
    error_estimate: mpmath.mpf
    tail_bound_used: mpmath.mpf
    evaluations: int

    def as_dict(self, digits=20):
        return {
            "value": mpmath.nstr(self.value, digits),
            "error_estimate": mpmath.nstr(self.error_estimate, 6),
            "tail_bound_used": mpmath.nstr(self.tail_bound_used, 6),
            "evaluations": self.evaluations,
        }


@dataclass(frozen=True)
class RadialDensity:
    """
    f(s) = scale * expr(s), with |f(s)| <= decay_coeff * s^(-decay_exponent)
    for s >= decay_onset.
    """

    expr: RadialExpr
    scale: mpmath.mpf
    decay_exponent: Fraction
    decay_coeff: mpmath.mpf
    decay_onset: float = 1.0

    def __call__(self, s, precision=128):
        return self.scale * evaluate(self.expr, s, precision)

    @property
    def is_zero(self):
        return self.expr.is_zero or self.scale == 0

    def decay_violations(self, samples=20, upper=1e6, precision=128):
        """Radii in [decay_onset, upper] where the declared power-law bound fails."""
        failures = []
        with mpmath.workprec(precision):
            for s in np.geomspace(max(self.decay_onset, 1e-12), upper, samples):
                s = mpmath.mpf(float(s))
                exponent = mpmath.mpf(self.decay_exponent.numerator) / self.decay_exponent.denominator
                bound = self.decay_coeff * s ** (-exponent)
                if abs(self(s, precision)) > bound * (1 + mpmath.mpf(2) ** (-precision // 2)):
                    failures.append(float(s))
        return failures


def solution_density(solution, precision=128):
    """u^(-(4N-1)) for the normalized solution u = a (1 + r^2)^(1/2)."""
    p = solution.density_exponent
    with mpmath.workprec(precision):
        scale = solution.a ** (-p)
    # (1 + s^2)^(-p/2) <= s^(-p)
    return RadialDensity(
        expr=RadialExpr.monomial(-p),
        scale=scale,
        decay_exponent=Fraction(p),
        decay_coeff=scale,
        decay_onset=1.0,
    )


def zero_density():
    return RadialDensity(RadialExpr.zero(), mpmath.mpf(0), Fraction(10**6), mpmath.mpf(0))


# -------------------
# Angular integrals
# -------------------
def _sphere_weight(m):
    """int_{-1}^{1} (1 - t^2)^m dt = 2^(2m+1) (m!)^2 / (2m+1)!."""
    return Fraction(2 ** (2 * m + 1) * math.factorial(m) ** 2, math.factorial(2 * m + 1))


def _poly_mul(p, q):
    out = [mpmath.mpf(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def shell_integral(w_minus, w_plus, half_width, gamma, m):
    """
    int_{-1}^{1} (1 - t^2)^m (A - B t)^gamma dt with A - B = w_minus,
    A + B = w_plus and B = half_width >= 0.

    With w = A - B t we have 1 - t^2 = (w - w_minus)(w_plus - w) / B^2, so the
    integrand becomes a polynomial in w times w^gamma.
    """
    gamma = Fraction(gamma)
    w_minus = mpmath.mpf(w_minus)
    w_plus = mpmath.mpf(w_plus)
    half_width = mpmath.mpf(half_width)
    if half_width == 0:
        centre = w_minus
        if centre == 0:
            if gamma > 0:
                return mpmath.mpf(0)
            if gamma == 0:
                return mpmath.mpf(_sphere_weight(m).numerator) / _sphere_weight(m).denominator
            raise DivergentKernelError("shell integral at the origin with a negative exponent")
        weight = _sphere_weight(m)
        return centre ** (mpmath.mpf(gamma.numerator) / gamma.denominator) * weight.numerator / weight.denominator

    ratio = (w_minus + w_plus) / (2 * half_width)
    extra = int((2 * m + 1) * max(mpmath.log(ratio, 2), 0)) + 24
    with mpmath.extraprec(min(extra, _MAX_EXTRA_BITS)):
        # ((w - w_minus)(w_plus - w))^m = (-w^2 + (w_minus + w_plus) w - w_minus w_plus)^m
        factor = [-w_minus * w_plus, w_minus + w_plus, mpmath.mpf(-1)]
        poly = [mpmath.mpf(1)]
        for _ in range(m):
            poly = _poly_mul(poly, factor)
        g = mpmath.mpf(gamma.numerator) / gamma.denominator
        total = mpmath.mpf(0)
        for i, coeff in enumerate(poly):
            if coeff == 0:
                continue
            exponent = gamma + i + 1
            if exponent == 0:
                if w_minus == 0:
                    raise DivergentKernelError("logarithmic shell integral touches w = 0")
                piece = mpmath.log(w_plus) - mpmath.log(w_minus)
            else:
                e = g + i + 1
                if w_minus == 0:
                    if exponent < 0:
                        raise DivergentKernelError("shell integral diverges at the pole")
                    piece = w_plus**e / e
                else:
                    piece = (w_plus**e - w_minus**e) / e
            total += coeff * piece
        result = total / half_width ** (2 * m + 1)
    return +result


def _check_kernel_exponent(beta, n):
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise DomainError(f"dimension must be odd and >= 3, got {n!r}")
    if Fraction(beta) <= -(n - 1):
        raise DivergentKernelError(f"kernel |x-y|^{beta} is not integrable on spheres in R^{n}")


def angular_kernel(r, s, beta, n):
    """int over |y| = s of |x - y|^beta d sigma_y, for |x| = r."""
    beta = Fraction(beta)
    _check_kernel_exponent(beta, n)
    omega = sphere_area(n).to_mpf()
    r = mpmath.mpf(r)
    s = mpmath.mpf(s)
    if r < 0 or s < 0:
        raise DomainError("radii must be non-negative")
    if r == 0 or s == 0:
        rho = max(r, s)
        if rho == 0:
            if beta > 0:
                return mpmath.mpf(0)
            if beta == 0:
                return omega
            raise DivergentKernelError("kernel with negative exponent at r = s = 0")
        return omega * rho ** (mpmath.mpf(beta.numerator) / beta.denominator)
    m = (n - 3) // 2
    weight = _sphere_weight(m)
    j = shell_integral((r - s) ** 2, (r + s) ** 2, 2 * r * s, beta / 2, m)
    return omega * j * weight.denominator / weight.numerator


def pohozaev_kernel(r, s, n):
    """Angular integral of (|x|^2 - x.y)/|x - y|; |x|^2 - x.y = (|x-y|^2 + |x|^2 - |y|^2)/2."""
    r = mpmath.mpf(r)
    s = mpmath.mpf(s)
    if r == 0:
        return mpmath.mpf(0)
    return (angular_kernel(r, s, 1, n) + (r * r - s * s) * angular_kernel(r, s, -1, n)) / 2


# -------------------
# Radial integrals
# -------------------
def tail_bound(p, beta, n, coeff, radius):
    """Bound on the omitted s > R mass, valid at evaluation radii r <= R/2."""
    p = Fraction(p)
    beta = Fraction(beta)
    gap = p - n - beta
    if gap <= 0:
        raise DivergentKernelError(f"density decay {p} is too slow for kernel exponent {beta} in R^{n}")
    omega = sphere_area(n).to_mpf()
    gap_mp = mpmath.mpf(gap.numerator) / gap.denominator
    abs_beta = abs(beta)
    return (
        mpmath.mpf(coeff)
        * omega
        * mpmath.mpf(2) ** (mpmath.mpf(abs_beta.numerator) / abs_beta.denominator)
        * mpmath.mpf(radius) ** (-gap_mp)
        / gap_mp
    )


def _tail_radius(p, beta, n, coeff, target):
    """Smallest R with tail_bound(p, beta, n, coeff, R) <= target."""
    if coeff == 0:
        return mpmath.mpf(0)
    unit = tail_bound(p, beta, n, coeff, 1)
    gap = Fraction(p) - n - Fraction(beta)
    return (unit / target) ** (mpmath.mpf(gap.denominator) / gap.numerator)


def _radial_breakpoints(r, radius):
    points = [mpmath.mpf(0)]
    points.extend(mpmath.mpf(float(x)) for x in np.geomspace(1e-2, float(radius), 16))
    if 0 < r < radius:
        points.append(mpmath.mpf(r))
    return points


def _integrate_radial(kernel, f, r, beta, n, cfg, tail_scale=1):
    p = f.decay_exponent
    with mpmath.workprec(cfg.precision):
        r = mpmath.mpf(r)
        target = mpmath.mpf(cfg.abs_tol) / 10
        tail_r = _tail_radius(p, beta, n, f.decay_coeff * tail_scale, target)
        radius = max(mpmath.mpf(cfg.truncation_radius), 2 * r, mpmath.mpf(f.decay_onset), tail_r)
        tail = tail_bound(p, beta, n, f.decay_coeff, radius) * tail_scale

        def integrand(s):
            return s ** (n - 1) * f(s, cfg.precision) * kernel(r, s)

        result = adaptive_quad(
            integrand,
            _radial_breakpoints(r, radius),
            cfg.rel_tol,
            cfg.abs_tol,
            cfg.max_subdivisions,
            cfg.precision,
        )
        logger.debug(
            "radial integral r=%s beta=%s: R=%s, %d evaluations",
            mpmath.nstr(r, 6), beta, mpmath.nstr(radius, 6), result.evaluations,
        )
        return PotentialValue(result.value, result.error + tail, tail, result.evaluations)


def potential(f, beta, r, n, cfg):
    """int_{R^n} |x - y|^beta f(|y|) dy at |x| = r."""
    beta = Fraction(beta)
    _check_kernel_exponent(beta, n)
    if r < 0:
        raise DomainError("evaluation radius must be non-negative")
    if f.is_zero:
        return PotentialValue(mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(0), 0)
    if f.decay_exponent <= n + beta:
        raise DivergentKernelError(
            f"density decay {f.decay_exponent} does not make |x-y|^{beta} integrable in R^{n}"
        )
    return _integrate_radial(
        lambda x, s: angular_kernel(x, s, beta, n), f, r, beta, n, cfg
    )


def pohozaev_integral(f, r, n, cfg):
    """int (|x|^2 - x.y)/|x - y| f(|y|) dy at |x| = r; the kernel is bounded by r."""
    if r < 0:
        raise DomainError("evaluation radius must be non-negative")
    if f.is_zero or r == 0:
        return PotentialValue(mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(0), 0)
    if f.decay_exponent <= n + 1:
        raise DivergentKernelError("density decays too slowly for the Pohozaev kernel")
    return _integrate_radial(
        lambda x, s: pohozaev_kernel(x, s, n), f, r, 0, n, cfg, tail_scale=mpmath.mpf(r)
    )


def spherical_mean(f, c, rho, n, cfg):
    """
    Mean of a radial function over the sphere of radius rho whose centre is at
    distance c from the origin.

    Parity-0 radial expressions and densities built on them are done in closed
    form; any other callable g(|y|) goes through adaptive quadrature in theta.
    """
    if rho <= 0:
        raise DomainError("sphere radius must be positive")
    if c < 0:
        raise DomainError("centre distance must be non-negative")
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise DomainError(f"dimension must be odd and >= 3, got {n!r}")
    m = (n - 3) // 2
    weight = _sphere_weight(m)
    with mpmath.workprec(cfg.precision):
        c = mpmath.mpf(c)
        rho = mpmath.mpf(rho)
        scale = mpmath.mpf(1)
        expr = f
        if isinstance(f, RadialDensity):
            scale, expr = f.scale, f.expr
        if isinstance(expr, RadialExpr) and expr.parity == 0:
            total = mpmath.mpf(0)
            for q2, coeff in expr.terms:
                j = shell_integral(
                    1 + (c - rho) ** 2, 1 + (c + rho) ** 2, 2 * c * rho, Fraction(q2, 2), m
                )
                total += mpmath.mpf(coeff.numerator) / coeff.denominator * j
            return scale * total * weight.denominator / weight.numerator

        if isinstance(expr, RadialExpr):
            def func(radius):
                return scale * evaluate(expr, radius, cfg.precision)
        else:
            func = expr

        def integrand(theta):
            distance = mpmath.sqrt(max(c * c + rho * rho - 2 * c * rho * mpmath.cos(theta), 0))
            return func(distance) * mpmath.sin(theta) ** (n - 2)

        breakpoints = [0, mpmath.pi / 2, mpmath.pi]
        result = adaptive_quad(
            integrand, breakpoints, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions, cfg.precision
        )
        return result.value * weight.denominator / weight.numerator


# -------------------
# Iterated mean-value identity
# -------------------
def nested_weight(r, rho, n):
    """
    K(r, rho) = int_{rho < s1 < s2 < s3 < r} s1^(-d) s2^d s3^(-d), d = n - 1.

    Collapses the three outer integrations of the iterated ball-mass integral
    g(r) into one weight, so g(r) = int_0^r K(r, rho) dm(rho).
    """
    d = n - 1

    def span(e):
        return (r ** (e + 1) - rho ** (e + 1)) / (e + 1)

    return (
        r * r * (mpmath.mpf(1) / 2 - mpmath.mpf(1) / (d + 1)) * span(-d)
        - span(2 - d) / 2
        + r ** (1 - d) * (r * r - rho * rho) / (2 * (d + 1))
    ) / (d - 1)


def nested_mean_value_check(big_n, x_dist, r, cfg, tolerance=1e-5, solution=None):
    """
    Compare the iterated ball-mass integral g(r) of f = u^(-(4N-1)) around a
    point at distance x_dist with its closed form in spherical means of
    (-Delta)^(N-2) u. For (-Delta)^N u = -f the closed form is

        g(r) = -[w M_{N-2}(r) - w v_{N-2}(x) + w/(2n) v_{N-1}(x) r^2],

    w the unit-sphere area, which vanishes at r = 0.
    """
    if r <= 0:
        raise DomainError("mean-value radius must be positive")
    if x_dist < 0:
        raise DomainError("centre distance must be non-negative")
    solution = solution or normalized_solution(big_n, cfg.precision)
    n = solution.n
    density = solution_density(solution, cfg.precision)
    with mpmath.workprec(cfg.precision):
        omega = sphere_area(n).to_mpf()
        r_mp = mpmath.mpf(r)

        def integrand(rho):
            mass_rate = omega * rho ** (n - 1) * spherical_mean(density, x_dist, rho, n, cfg)
            return nested_weight(r_mp, rho, n) * mass_rate

        measured = adaptive_quad(
            integrand, [0, r_mp / 2, r_mp], cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions, cfg.precision
        ).value

        lower = solution.v(big_n - 2)
        mean_lower = solution.a * spherical_mean(lower, x_dist, r_mp, n, cfg)
        v_lower = solution.value(big_n - 2, x_dist, cfg.precision)
        v_top = solution.value(big_n - 1, x_dist, cfg.precision)
        expected = -(omega * mean_lower - omega * v_lower + omega / (2 * n) * v_top * r_mp**2)
        literal = -(omega * mean_lower + omega * v_lower + omega / (2 * n) * v_top * r_mp**2)

        discrepancy = abs(measured - expected)
        allowed = max(mpmath.mpf(tolerance) * abs(expected), mpmath.mpf(cfg.abs_tol))
        status = CheckStatus.PASS if discrepancy <= allowed else CheckStatus.FAIL
        return CheckResult(
            id=f"mean_value.N{big_n}.x{x_dist:g}.r{r:g}",
            anchor="nested-mean-value",
            status=status,
            measured=mpmath.nstr(measured, 20),
            expected=mpmath.nstr(expected, 20),
            tolerance=float(allowed),
            notes=(
                f"discrepancy {mpmath.nstr(discrepancy, 4)}; unsigned-centre form "
                f"off by {mpmath.nstr(abs(measured - literal), 6)}"
            ),
        )


# -------------------
# Jensen
# -------------------
def jensen_violations(exponents, instances=200, size=12, seed=0):
    """Count random discrete instances with (sum w phi)^(-q) > sum w phi^(-q)."""
    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(instances):
        weights = rng.dirichlet(np.ones(size))
        values = rng.uniform(0.1, 10.0, size)
        for q in exponents:
            lhs = float(np.dot(weights, values)) ** (-q)
            rhs = float(np.dot(weights, values ** (-float(q))))
            if lhs > rhs * (1 + 1e-12):
                violations += 1
    return violations
