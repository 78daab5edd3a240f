"""
Exact calculus on radial functions r^e * sum_j a_j (1 + r^2)^(q_j).

Exponents q are half-integers and are stored doubled (q2 = 2q) so the whole
ring works over integers and Fractions. Writing t = 1 + r^2, the ring is
closed under d/dr, products (r^2 is rewritten as t - 1) and the radial
Laplacian in odd dimension n, which is all the PDE identities need.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .exceptions import DomainError, InternalConsistencyError, UnsupportedInputError

logger = logging.getLogger(__name__)


def _canonical(terms):
    return tuple(sorted(((q2, c) for q2, c in terms.items() if c != 0), reverse=True))


@dataclass(frozen=True)
class RadialExpr:
    """r^parity * sum(coeff * t^(q2/2)); terms sorted by descending q2."""

    parity: int
    terms: tuple

    @classmethod
    def build(cls, parity, terms):
        if parity not in (0, 1):
            raise DomainError(f"parity must be 0 or 1, got {parity!r}")
        merged = {}
        for q2, coeff in (terms.items() if isinstance(terms, dict) else terms):
            merged[int(q2)] = merged.get(int(q2), Fraction(0)) + Fraction(coeff)
        canonical = _canonical(merged)
        # the zero function carries parity 0
        return cls(parity if canonical else 0, canonical)

    @classmethod
    def monomial(cls, q2, coeff=1, parity=0):
        return cls.build(parity, {q2: coeff})

    @classmethod
    def constant(cls, value):
        return cls.build(0, {0: value})

    @classmethod
    def zero(cls):
        return cls(0, ())

    @property
    def term_map(self):
        return dict(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_monomial(self):
        return len(self.terms) == 1

    def coefficients(self):
        return [c for _, c in self.terms]

    def __add__(self, other):
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.parity != other.parity:
            raise UnsupportedInputError("cannot add radial expressions of different parity")
        merged = self.term_map
        for q2, c in other.terms:
            merged[q2] = merged.get(q2, Fraction(0)) + c
        return RadialExpr.build(self.parity, merged)

    def __neg__(self):
        return RadialExpr(self.parity, tuple((q2, -c) for q2, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RadialExpr):
            return mul(self, other)
        factor = Fraction(other)
        return RadialExpr.build(self.parity, {q2: c * factor for q2, c in self.terms})

    __rmul__ = __mul__

    def render(self):
        if self.is_zero:
            return "0"
        body = " + ".join(
            f"({c.numerator}/{c.denominator})*t^({q2}/2)" for q2, c in self.terms
        )
        return f"r^{self.parity} * ({body})"

    def __str__(self):
        return self.render()


# the function r itself
R = RadialExpr.build(1, {0: 1})
# t = 1 + r^2
T = RadialExpr.build(0, {2: 1})


def r_even_power(two_m):
    """r^(2m) = (t - 1)^m as a parity-0 element."""
    if two_m % 2 or two_m < 0:
        raise DomainError("r_even_power needs a non-negative even exponent")
    result = RadialExpr.constant(1)
    for _ in range(two_m // 2):
        result = mul(result, T - RadialExpr.constant(1))
    return result


@dataclass(frozen=True)
class AsymptoticLead:
    """f(r) ~ lead_coeff * r^growth_exponent as r -> infinity."""

    growth_exponent: Fraction
    lead_coeff: Fraction


# -------------------
# Ring operations
# -------------------
def derivative(f):
    """Exact d/dr; output parity is 1 - input parity."""
    if f.is_zero:
        return f
    out = {}
    if f.parity == 0:
        # d/dr t^q = 2q r t^(q-1)
        for q2, c in f.terms:
            out[q2 - 2] = out.get(q2 - 2, Fraction(0)) + q2 * c
        return RadialExpr.build(1, out)
    # d/dr (r t^q) = (1 + 2q) t^q - 2q t^(q-1) after r^2 = t - 1
    for q2, c in f.terms:
        out[q2] = out.get(q2, Fraction(0)) + (1 + q2) * c
        out[q2 - 2] = out.get(q2 - 2, Fraction(0)) - q2 * c
    return RadialExpr.build(0, out)


def mul(f, g):
    """Exact product; parities add mod 2 with r^2 rewritten as t - 1."""
    if f.is_zero or g.is_zero:
        return RadialExpr.zero()
    out = {}
    for q2a, ca in f.terms:
        for q2b, cb in g.terms:
            q2 = q2a + q2b
            out[q2] = out.get(q2, Fraction(0)) + ca * cb
    parity = f.parity + g.parity
    if parity == 2:
        shifted = {}
        for q2, c in out.items():
            shifted[q2 + 2] = shifted.get(q2 + 2, Fraction(0)) + c
            shifted[q2] = shifted.get(q2, Fraction(0)) - c
        return RadialExpr.build(0, shifted)
    return RadialExpr.build(parity, out)


def power(f, exponent):
    """Integer power of a parity-0 monomial c * t^q."""
    if not isinstance(exponent, int):
        raise DomainError("power needs an integer exponent")
    if f.parity != 0 or not f.is_monomial:
        raise UnsupportedInputError("power is defined for parity-0 monomials only")
    (q2, c), = f.terms
    if exponent < 0 and c == 0:
        raise ZeroDivisionError("negative power of zero")
    return RadialExpr.monomial(q2 * exponent, c**exponent)


def _check_dimension(n):
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise DomainError(f"dimension must be odd and >= 3, got {n!r}")


def laplacian(f, n):
    """
    Radial Laplacian f'' + (n-1)/r f' in dimension n.

    Uses the closed rewrite
    Delta t^q = 2q(n + 2q - 2) t^(q-1) - 4q(q-1) t^(q-2).
    """
    _check_dimension(n)
    if f.parity != 0:
        raise UnsupportedInputError("laplacian of parity-1 radial expressions is not supported")
    out = {}
    for q2, c in f.terms:
        out[q2 - 2] = out.get(q2 - 2, Fraction(0)) + q2 * (n + q2 - 2) * c
        out[q2 - 4] = out.get(q2 - 4, Fraction(0)) - q2 * (q2 - 2) * c
    return RadialExpr.build(0, out)


def polylaplacian(f, n, k):
    """(-Delta)^k f; k = 0 is the identity."""
    if k < 0:
        raise DomainError("polylaplacian order must be >= 0")
    if f.parity != 0:
        raise UnsupportedInputError("polylaplacian of parity-1 radial expressions is not supported")
    _check_dimension(n)
    result = f
    for _ in range(k):
        result = -laplacian(result, n)
    return result


def evaluate(f, r, precision=53):
    """Value of f at r >= 0 as an mpf rounded to `precision` bits."""
    if precision < 53:
        raise DomainError("evaluation precision must be at least 53 bits")
    with mpmath.workprec(precision + 16):
        r = mpmath.mpf(r)
        if r < 0:
            raise DomainError("radial expressions are evaluated at r >= 0")
        t = 1 + r * r
        total = mpmath.mpf(0)
        for q2, c in f.terms:
            total += mpmath.mpf(c.numerator) / c.denominator * t ** (mpmath.mpf(q2) / 2)
        if f.parity:
            total *= r
    with mpmath.workprec(precision):
        return +total


def leading_asymptotics(f):
    if f.is_zero:
        raise DomainError("the zero function has no leading asymptotics")
    q2, c = f.terms[0]
    return AsymptoticLead(Fraction(f.parity + q2), c)


# -------------------
# The exact solution family
# -------------------
PROFILE = RadialExpr.monomial(1)  # (1 + r^2)^(1/2)


def dimension(big_n):
    if not isinstance(big_n, int) or big_n < 2:
        raise DomainError(f"N must be an integer >= 2, got {big_n!r}")
    return 2 * big_n - 1


def curvature_constant(big_n):
    """K_N with (-Delta)^N (1+r^2)^(1/2) = -K_N (1+r^2)^(-(4N-1)/2) in R^(2N-1)."""
    n = dimension(big_n)
    result = polylaplacian(PROFILE, n, big_n)
    if not result.is_monomial:
        raise InternalConsistencyError(
            f"(-Delta)^{big_n} of the profile has {len(result.terms)} terms: {result}"
        )
    (q2, c), = result.terms
    if q2 != -(4 * big_n - 1) or c >= 0:
        raise InternalConsistencyError(f"unexpected classification shape for N={big_n}: {result}")
    return -c


def double_factorial(m):
    return math.prod(range(m, 0, -2)) if m > 0 else 1


def origin_value_oracle(n, k):
    """
    (-Delta)^k (1+r^2)^(1/2) at r = 0 from the Taylor coefficient of r^(2k).

    Delta^k r^(2k) = prod_{i=1..k} 2i(2i + n - 2), and the r^(2k) coefficient
    of (1+r^2)^(1/2) is binom(1/2, k). Independent of the ring rewrite.
    """
    binom = Fraction(1)
    for j in range(k):
        binom *= Fraction(1, 2) - j
    binom /= math.factorial(k)
    weight = math.prod(2 * i * (2 * i + n - 2) for i in range(1, k + 1))
    return (-1) ** k * binom * weight


@dataclass(frozen=True)
class NormalizedSolution:
    """
    u(r) = a * (1 + r^2)^(1/2) with K_N a^(4N) = 1.

    a is irrational, so it is carried beside the exact profile; every linear
    operator commutes with the positive scale.
    """

    n_order: int
    a: mpmath.mpf
    profile: RadialExpr
    curvature: Fraction

    @property
    def n(self):
        return 2 * self.n_order - 1

    @property
    def density_exponent(self):
        return 4 * self.n_order - 1

    def v(self, k):
        """Exact profile part of (-Delta)^k u."""
        return polylaplacian(self.profile, self.n, k)

    def value(self, k, r, precision=53):
        with mpmath.workprec(precision + 16):
            scaled = self.a * evaluate(self.v(k), r, precision + 16)
        with mpmath.workprec(precision):
            return +scaled

    def asymptotics(self):
        lead = leading_asymptotics(self.profile)
        return lead.growth_exponent, self.a * mpmath.mpf(lead.lead_coeff.numerator) / lead.lead_coeff.denominator


def normalized_solution(big_n, precision=128):
    curvature = curvature_constant(big_n)
    with mpmath.workprec(precision):
        a = (mpmath.mpf(curvature.numerator) / curvature.denominator) ** (-mpmath.mpf(1) / (4 * big_n))
    return NormalizedSolution(big_n, a, PROFILE, curvature)


def initial_data_ratios(big_n):
    """v_k(0) / a for k = 0..N-1, exact."""
    n = dimension(big_n)
    return [sum(polylaplacian(PROFILE, n, k).coefficients(), Fraction(0)) for k in range(big_n)]


def initial_data(big_n, precision=128):
    """(v_0(0), v_0'(0), ..., v_{N-1}(0), v_{N-1}'(0)); odd entries vanish by regularity."""
    solution = normalized_solution(big_n, precision)
    data = []
    with mpmath.workprec(precision):
        for ratio in initial_data_ratios(big_n):
            data.append(solution.a * ratio.numerator / ratio.denominator)
            data.append(mpmath.mpf(0))
    return data


def reciprocal_laplacian_identity(u, n):
    """Both sides of Delta(1/u) = -Delta u / u^2 + 2 |grad u|^2 / u^3 for a monomial u."""
    lhs = laplacian(power(u, -1), n)
    du = derivative(u)
    rhs = -mul(laplacian(u, n), power(u, -2)) + mul(mul(du, du), power(u, -3)) * 2
    return lhs, rhs


def log_spaced_radii(low=1e-3, high=1e3, count=50):
    return [float(r) for r in np.geomspace(low, high, count)]


def random_radial_exprs(count=10, terms=3, seed=0):
    """Seeded parity-0 ring elements with small rational coefficients and q in [-4, 2]."""
    rng = np.random.default_rng(seed)
    exprs = []
    for _ in range(count):
        q2s = rng.choice(np.arange(-8, 5), size=terms, replace=False)
        coeffs = [
            Fraction(int(rng.integers(1, 10)) * int(rng.choice([-1, 1])), int(rng.integers(1, 5)))
            for _ in range(terms)
        ]
        exprs.append(RadialExpr.build(0, dict(zip((int(q) for q in q2s), coeffs))))
    return exprs


def finite_difference_laplacian(f, r, n, h, precision=128):
    """Central 5-point stencil of the radial Laplacian, for consistency checks."""
    with mpmath.workprec(precision):
        r = mpmath.mpf(r)
        h = mpmath.mpf(h)
        values = [evaluate(f, r + j * h, precision) for j in (-2, -1, 0, 1, 2)]
        second = (-values[0] + 16 * values[1] - 30 * values[2] + 16 * values[3] - values[4]) / (12 * h**2)
        first = (values[0] - 8 * values[1] + 8 * values[3] - values[4]) / (12 * h)
        return second + (n - 1) / r * first
