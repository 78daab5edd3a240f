"""
Exact dimensional constants in odd dimension n = 2N-1.

Every constant that appears in the representation formulas lives in the set
{q * pi^(k/2) : q rational, k integer}, so ExactScalar stores exactly that
pair. Gamma is only ever needed at positive half-integers and sphere areas
only in odd dimensions, which keeps the set closed.
"""

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exceptions import DomainError, InternalConsistencyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExactScalar:
    """The value coeff * pi^(half_pi_exp / 2)."""

    coeff: Fraction
    half_pi_exp: int = 0

    def __post_init__(self):
        coeff = Fraction(self.coeff)
        object.__setattr__(self, "coeff", coeff)
        # canonical zero
        if coeff == 0:
            object.__setattr__(self, "half_pi_exp", 0)

    # -------------------
    # Arithmetic
    # -------------------
    def __mul__(self, other):
        if not isinstance(other, ExactScalar):
            other = ExactScalar(Fraction(other))
        return ExactScalar(self.coeff * other.coeff, self.half_pi_exp + other.half_pi_exp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ExactScalar):
            other = ExactScalar(Fraction(other))
        if other.coeff == 0:
            raise ZeroDivisionError("division by the zero ExactScalar")
        return ExactScalar(self.coeff / other.coeff, self.half_pi_exp - other.half_pi_exp)

    def __rtruediv__(self, other):
        return ExactScalar(Fraction(other)) / self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise DomainError("ExactScalar powers must be integers")
        if exponent < 0 and self.coeff == 0:
            raise ZeroDivisionError("negative power of the zero ExactScalar")
        return ExactScalar(self.coeff**exponent, self.half_pi_exp * exponent)

    def __neg__(self):
        return ExactScalar(-self.coeff, self.half_pi_exp)

    # -------------------
    # Inspection
    # -------------------
    @property
    def is_zero(self):
        return self.coeff == 0

    @property
    def is_positive(self):
        return self.coeff > 0

    @property
    def has_integer_pi_power(self):
        return self.half_pi_exp % 2 == 0

    def to_mpf(self, precision=None):
        """Floating value; uses the ambient mpmath precision unless given."""
        if precision is None:
            return mpmath.mpf(self.coeff.numerator) / self.coeff.denominator * mpmath.pi ** (
                mpmath.mpf(self.half_pi_exp) / 2
            )
        with mpmath.workprec(precision):
            return +self.to_mpf()

    def render(self):
        if self.coeff == 0:
            return "0"
        if self.half_pi_exp == 0:
            return str(self.coeff)
        if self.has_integer_pi_power:
            power = str(self.half_pi_exp // 2)
        else:
            power = f"{self.half_pi_exp}/2"
        return f"{self.coeff}*pi^{power}"

    def as_dict(self, digits=20):
        return {
            "coeff_num": self.coeff.numerator,
            "coeff_den": self.coeff.denominator,
            "half_pi_exp": self.half_pi_exp,
            "decimal": mpmath.nstr(self.to_mpf(precision=max(53, int(digits * 3.33) + 16)), digits),
        }

    def __str__(self):
        return self.render()


class ConstantMode(enum.Enum):
    """Normalization of the base constant c_{N-1}."""

    PAPER_LITERAL = "paper"
    CORRECTED = "corrected"


@dataclass(frozen=True)
class ConstantChain:
    """The ledger c_0, ..., c_{N-1} for one N and one normalization."""

    n_order: int
    mode: ConstantMode
    c: tuple

    def __getitem__(self, k):
        return self.c[k]

    def verify(self):
        """Re-check recursion, positivity and base value exactly."""
        big_n = self.n_order
        if len(self.c) != big_n:
            raise InternalConsistencyError(f"chain for N={big_n} has {len(self.c)} entries")
        if not all(ck.is_positive for ck in self.c):
            raise InternalConsistencyError("constant chain has a non-positive entry")
        if self.c[big_n - 1] != base_constant(big_n, self.mode):
            raise InternalConsistencyError("base constant c_{N-1} does not match the mode")
        for k in range(1, big_n - 1):
            if self.c[big_n - k - 1] * (2 * k * (2 * big_n - 2 * k - 3)) != self.c[big_n - k]:
                raise InternalConsistencyError(f"recursion fails at k={k}")
        if self.c[0] * (2 * big_n - 2) != self.c[1]:
            raise InternalConsistencyError("c_0 * (2N-2) != c_1")
        return True

    def as_dict(self, digits=20):
        return {
            "n": self.n_order,
            "mode": self.mode.value,
            "c": [ck.as_dict(digits) for ck in self.c],
        }


def gamma_half(m):
    """Gamma(m/2) for odd m >= 1, as a rational multiple of sqrt(pi)."""
    if not isinstance(m, int) or m < 1 or m % 2 == 0:
        raise DomainError(f"gamma_half needs a positive odd integer, got {m!r}")
    coeff = Fraction(1)
    # Gamma(z + 1) = z Gamma(z) from Gamma(1/2) = sqrt(pi)
    for j in range(1, (m - 1) // 2 + 1):
        coeff *= Fraction(2 * j - 1, 2)
    return ExactScalar(coeff, 1)


def sphere_area(n):
    """Area omega_n = 2 pi^(n/2) / Gamma(n/2) of the unit sphere in R^n, n odd."""
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise DomainError(f"sphere_area is defined here for odd n >= 3, got {n!r}")
    return ExactScalar(2, n) / gamma_half(n)


def base_constant(big_n, mode):
    if big_n < 2:
        raise DomainError(f"N must be >= 2, got {big_n}")
    omega = sphere_area(2 * big_n - 1)
    if mode is ConstantMode.PAPER_LITERAL:
        return 1 / omega
    return 1 / (omega * (2 * big_n - 3))


def constant_chain(big_n, mode=ConstantMode.CORRECTED):
    """Build c_0 ... c_{N-1} from the base constant downwards."""
    if not isinstance(big_n, int) or big_n < 2:
        raise DomainError(f"N must be an integer >= 2, got {big_n!r}")
    mode = ConstantMode(mode)
    c = [None] * big_n
    c[big_n - 1] = base_constant(big_n, mode)
    for k in range(1, big_n - 1):
        c[big_n - k - 1] = c[big_n - k] / (2 * k * (2 * big_n - 2 * k - 3))
    c[0] = c[1] / (2 * big_n - 2)
    chain = ConstantChain(big_n, mode, tuple(c))
    chain.verify()
    logger.debug("constant chain N=%s mode=%s: %s", big_n, mode.value, [str(ck) for ck in c])
    return chain


def flux_check(big_n, mode=ConstantMode.CORRECTED):
    """
    Flux of grad(-c |x|^{-(2N-3)}) through a sphere, c = c_{N-1}.

    The radial derivative is c (2N-3) r^{-(2N-2)} and the sphere has area
    omega r^{2N-2}, so the flux is c (2N-3) omega independently of r. It equals
    1 exactly when -c|x|^{-(2N-3)} is the Green function of the Laplacian.
    """
    mode = ConstantMode(mode)
    c_top = base_constant(big_n, mode)
    return c_top * (2 * big_n - 3) * sphere_area(2 * big_n - 1)


def select_mode(big_n):
    """The mode whose flux is exactly one, Corrected first (both qualify at N = 2)."""
    for mode in (ConstantMode.CORRECTED, ConstantMode.PAPER_LITERAL):
        if flux_check(big_n, mode) == ExactScalar(1):
            return mode
    raise InternalConsistencyError(f"no constant mode has unit flux for N={big_n}")


def constants_summary(big_n, digits=20):
    """Both chains, both fluxes and the adjudicated mode, ready for JSON."""
    chains = {mode.value: constant_chain(big_n, mode).as_dict(digits) for mode in ConstantMode}
    return {
        "n": big_n,
        "dimension": 2 * big_n - 1,
        "sphere_area": sphere_area(2 * big_n - 1).as_dict(digits),
        "chains": chains,
        "flux": {mode.value: flux_check(big_n, mode).render() for mode in ConstantMode},
        "selected_mode": select_mode(big_n).value,
    }
