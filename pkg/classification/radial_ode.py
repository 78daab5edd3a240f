"""
Radial shooting for (-Delta)^N u = -sigma u^(-(4N-1)) in R^(2N-1).

With v_k = (-Delta)^k u the equation is the first-order system

    v_k'' + (n-1)/r v_k' = -v_{k+1}         (0 <= k <= N-2)
    v_{N-1}'' + (n-1)/r v_{N-1}' = sigma v_0^(-(4N-1))

sigma = +1 is the equation with the entire solutions, sigma = -1 the
equation without them. The state vector is (v_0, v_0', ..., v_{N-1}, v_{N-1}').
"""

import enum
import io
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, solve_ivp

from .exceptions import DomainError
from .radial_calculus import dimension, initial_data

logger = logging.getLogger(__name__)

# Fate detection rules
LINEAR_OSCILLATION = 1e-3
SUPERLINEAR_GROWTH = 0.10
GRID_STEP = 0.05
ATOL_FACTOR = 1e-2


class Sign(enum.Enum):
    PLUS = "plus"  # (-Delta)^N u + u^(-(4N-1)) = 0
    MINUS = "minus"  # (-Delta)^N u = u^(-(4N-1))

    @property
    def sigma(self):
        return 1 if self is Sign.PLUS else -1


class Termination(enum.Enum):
    REACHED_RMAX = "reached_rmax"
    POSITIVITY_LOST = "positivity_lost"
    STEP_UNDERFLOW = "step_underflow"


class FateKind(enum.Enum):
    LINEAR_GROWTH = "linear_growth"
    HITS_ZERO = "hits_zero"
    SIGN_EVENT = "sign_event"
    SUPERLINEAR = "superlinear"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Fate:
    kind: FateKind
    alpha: float = None
    radius: float = None
    index: int = None
    detail: str = ""

    def label(self):
        if self.kind is FateKind.LINEAR_GROWTH:
            return f"{self.kind.value}(alpha={self.alpha:.6g})"
        if self.kind is FateKind.HITS_ZERO:
            return f"{self.kind.value}(r={self.radius:.6g})"
        if self.kind is FateKind.SIGN_EVENT:
            return f"{self.kind.value}(k={self.index}, r={self.radius:.6g})"
        return self.kind.value


@dataclass(frozen=True)
class OdeSystem:
    n_order: int
    sign: Sign = Sign.PLUS

    def __post_init__(self):
        dimension(self.n_order)
        object.__setattr__(self, "sign", Sign(self.sign))

    @property
    def n(self):
        return 2 * self.n_order - 1

    @property
    def exponent(self):
        return 4 * self.n_order - 1

    @property
    def size(self):
        return 2 * self.n_order

    def forcing(self, v0):
        """Laplacian of the last component."""
        return self.sign.sigma * v0 ** (-self.exponent)

    def rhs(self, r, y):
        big_n = self.n_order
        dy = np.empty_like(y)
        for k in range(big_n):
            slope = y[2 * k + 1]
            laplace = -y[2 * k + 2] if k < big_n - 1 else self.forcing(y[0])
            dy[2 * k] = slope
            dy[2 * k + 1] = laplace - (self.n - 1) / r * slope
        return dy

    def second_derivatives_at_origin(self, values):
        """v_k''(0) = Delta v_k(0) / n."""
        big_n = self.n_order
        out = [-values[k + 1] / self.n for k in range(big_n - 1)]
        out.append(self.forcing(values[0]) / self.n)
        return out


@dataclass
class Trajectory:
    system: OdeSystem
    grid: np.ndarray
    states: np.ndarray  # shape (len(grid), 2N)
    termination: Termination
    bootstrap_step: float
    dense: object = field(default=None, repr=False)

    def __len__(self):
        return len(self.grid)

    def component(self, k):
        return self.states[:, 2 * k]

    def slope(self, k):
        return self.states[:, 2 * k + 1]

    def state_at(self, r):
        """Interpolated state; Taylor polynomial inside the bootstrap step."""
        if r < 0 or r > self.grid[-1]:
            raise DomainError(f"radius {r} is outside the trajectory [0, {self.grid[-1]}]")
        if self.dense is None or r <= self.bootstrap_step:
            origin = self.states[0][0::2]
            second = self.system.second_derivatives_at_origin(origin)
            out = np.empty(self.system.size)
            out[0::2] = origin + 0.5 * np.asarray(second) * r * r
            out[1::2] = np.asarray(second) * r
            return out
        return self.dense(r)


def _regular_values(system, init):
    """Accept (v_0, ..., v_{N-1}) or the interleaved 2N-vector with zero slopes."""
    init = [float(x) for x in init]
    big_n = system.n_order
    if len(init) == 2 * big_n:
        slopes = init[1::2]
        if any(s != 0 for s in slopes):
            raise DomainError("regular radial data needs v_k'(0) = 0 for every k")
        values = init[0::2]
    elif len(init) == big_n:
        values = init
    else:
        raise DomainError(f"initial data for N={big_n} needs {big_n} or {2 * big_n} entries, got {len(init)}")
    if not all(math.isfinite(v) for v in values):
        raise DomainError("initial data must be finite")
    if values[0] <= 0:
        raise DomainError("v_0(0) must be positive")
    return np.asarray(values, dtype=float)


def integrate(system, init, r_max, tol, positivity_floor=1e-6, grid_step=GRID_STEP, bootstrap_step=None):
    """
    Shoot from r = 0 with a Taylor step of size h = tol^(1/3), then DOP853.

    Integration stops at r_max, when v_0 falls to positivity_floor * v_0(0),
    or when the stepper can no longer make progress.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if r_max < 0:
        raise DomainError("r_max must be non-negative")
    values = _regular_values(system, init)
    origin = np.zeros(system.size)
    origin[0::2] = values
    if r_max == 0:
        return Trajectory(system, np.array([0.0]), origin[np.newaxis, :], Termination.REACHED_RMAX, 0.0)

    h = min(bootstrap_step or tol ** (1.0 / 3.0), r_max)
    second = np.asarray(system.second_derivatives_at_origin(values))
    start = np.empty(system.size)
    start[0::2] = values + 0.5 * second * h * h
    start[1::2] = second * h

    floor = positivity_floor * values[0]

    def positivity(r, y):
        return y[0] - floor

    positivity.terminal = True
    positivity.direction = -1

    if h >= r_max:
        grid = np.array([0.0, h])
        states = np.vstack([origin, start])
        return Trajectory(system, grid, states, Termination.REACHED_RMAX, h)
    count = max(int(math.ceil((r_max - h) / grid_step)), 1)
    t_eval = np.linspace(h, r_max, count + 1)

    sol = solve_ivp(
        system.rhs,
        (h, r_max),
        start,
        method="DOP853",
        t_eval=t_eval,
        events=positivity,
        rtol=tol,
        atol=tol * ATOL_FACTOR,
        dense_output=True,
    )
    grid = [0.0] + list(sol.t)
    rows = [origin] + [sol.y[:, i] for i in range(sol.y.shape[1])]
    if sol.status == 1:
        termination = Termination.POSITIVITY_LOST
        r_star = float(sol.t_events[0][0])
        if r_star > grid[-1]:
            grid.append(r_star)
            rows.append(sol.y_events[0][0])
    elif sol.status == 0:
        termination = Termination.REACHED_RMAX
    else:
        termination = Termination.STEP_UNDERFLOW
    states = np.vstack(rows)
    finite = np.all(np.isfinite(states), axis=1)
    if not finite.all():
        cut = int(np.argmin(finite))
        grid, states = grid[:cut], states[:cut]
        termination = Termination.STEP_UNDERFLOW
    logger.debug(
        "N=%s sign=%s: %s at r=%.6g after %d evaluations (%s)",
        system.n_order, system.sign.value, termination.value, grid[-1], sol.nfev, sol.message,
    )
    return Trajectory(system, np.asarray(grid, dtype=float), states, termination, h, sol.sol)


def _first_sign_change(values):
    signs = np.sign(values)
    nonzero = np.flatnonzero(signs)
    if len(nonzero) == 0:
        return None
    reference = signs[nonzero[0]]
    flips = np.flatnonzero(signs[nonzero] != reference)
    if len(flips) == 0:
        return None
    return nonzero[flips[0]]


def classify_trajectory(trajectory, window=None):
    """Apply the fate rules in order: HitsZero, SignEvent, LinearGrowth, Superlinear."""
    if trajectory is None or len(trajectory) == 0:
        raise DomainError("cannot classify an empty trajectory")
    grid = trajectory.grid
    r_end = float(grid[-1])
    if trajectory.termination is Termination.POSITIVITY_LOST:
        return Fate(FateKind.HITS_ZERO, radius=r_end, detail="v_0 reached the positivity floor")

    for k in range(1, trajectory.system.n_order):
        index = _first_sign_change(trajectory.component(k))
        if index is not None:
            return Fate(
                FateKind.SIGN_EVENT,
                radius=float(grid[index]),
                index=k,
                detail=f"v_{k} changes sign",
            )

    if window is None:
        window = r_end / 2
    mask = (grid >= r_end - window) & (grid > 0)
    if mask.sum() < 3:
        return Fate(FateKind.INCONCLUSIVE, detail=f"{int(mask.sum())} points in the window")
    ratio = trajectory.component(0)[mask] / grid[mask]
    mean = float(np.mean(ratio))
    oscillation = float((ratio.max() - ratio.min()) / abs(mean))
    if trajectory.termination is Termination.REACHED_RMAX and oscillation < LINEAR_OSCILLATION:
        return Fate(FateKind.LINEAR_GROWTH, alpha=mean, detail=f"oscillation {oscillation:.3e}")
    if np.all(np.diff(ratio) > 0) and ratio[-1] > (1 + SUPERLINEAR_GROWTH) * ratio[0]:
        return Fate(FateKind.SUPERLINEAR, detail=f"v_0/r grew by {ratio[-1] / ratio[0] - 1:.3g}")
    return Fate(
        FateKind.INCONCLUSIVE,
        detail=f"{trajectory.termination.value}; oscillation {oscillation:.3e}",
    )


def sign_constant(trajectory):
    """True when every v_k, 1 <= k <= N-1, keeps one sign along the trajectory."""
    return all(
        _first_sign_change(trajectory.component(k)) is None for k in range(1, trajectory.system.n_order)
    )


@dataclass(frozen=True)
class GridPoint:
    init: tuple
    fate: Fate = None
    sign_constant: bool = None
    error: str = ""


def shoot_grid(system, grid, r_max, tol, positivity_floor=1e-6, window=None):
    """Integrate and classify each initial condition in order; failures are recorded per point."""
    table = []
    for init in grid:
        init = tuple(float(x) for x in init)
        try:
            trajectory = integrate(system, init, r_max, tol, positivity_floor)
            fate = classify_trajectory(trajectory, window)
            table.append(GridPoint(init, fate, sign_constant(trajectory)))
        except DomainError as exc:
            logger.warning("grid point %s rejected: %s", init, exc)
            table.append(GridPoint(init, error=str(exc)))
    return table


def nonexistence_grid(big_n=2):
    """v_0(0) = 1, v_1(0) in {-5, -4.5, ..., -0.5}; higher v_k(0) are zero."""
    dimension(big_n)
    tail = (0.0, 0.0) * (big_n - 2)
    return [(1.0, 0.0, -0.5 * j, 0.0) + tail for j in range(10, 0, -1)]


PERTURBATION_SCALES = (0.8, 0.9, 1.0, 1.1, 1.2)


def perturbation_grid(big_n, precision=128):
    """Exact initial data with v_1(0) scaled; the unscaled point is the middle one."""
    exact = [float(x) for x in initial_data(big_n, precision)]
    points = []
    for scale in PERTURBATION_SCALES:
        point = list(exact)
        point[2] *= scale
        points.append(tuple(point))
    return points


def second_derivative(trajectory, k=0):
    """v_k'' = -v_{k+1} - (n-1)/r v_k' from the stored state (the limit value at r = 0)."""
    system = trajectory.system
    grid = trajectory.grid
    states = trajectory.states
    if k < system.n_order - 1:
        laplace = -states[:, 2 * k + 2]
    else:
        laplace = system.forcing(states[:, 0])
    out = np.empty(len(grid))
    positive = grid > 0
    out[positive] = laplace[positive] - (system.n - 1) / grid[positive] * states[positive, 2 * k + 1]
    out[~positive] = laplace[~positive] / system.n
    return out


def mass_identity_residual(trajectory, k, r):
    """
    (r^(n-1) v_k'(r) + int_0^r s^(n-1) v_{k+1}(s) ds, the integral itself),
    with v_N = -sigma v_0^(-(4N-1)). The first entry vanishes for exact solutions.
    """
    system = trajectory.system
    if not 0 <= k < system.n_order:
        raise DomainError(f"k must be in 0..{system.n_order - 1}")
    d = system.n - 1

    def next_component(s):
        state = trajectory.state_at(s)
        if k < system.n_order - 1:
            return state[2 * k + 2]
        return -system.forcing(state[0])

    integral, _ = quad(lambda s: s**d * next_component(s), 0.0, r, limit=400, epsabs=1e-13, epsrel=1e-10)
    flux = r**d * trajectory.state_at(r)[2 * k + 1]
    return flux + integral, integral


def trajectory_to_csv(trajectory):
    """Columns r, v0, dv0, v1, dv1, ...; 17 significant digits so output is reproducible."""
    names = ["r"]
    for k in range(trajectory.system.n_order):
        names.extend((f"v{k}", f"dv{k}"))
    table = np.column_stack([trajectory.grid, trajectory.states])
    buffer = io.StringIO()
    np.savetxt(buffer, table, delimiter=",", fmt="%.17g", header=",".join(names), comments="")
    return buffer.getvalue()
