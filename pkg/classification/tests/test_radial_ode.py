import numpy as np
from django.test import SimpleTestCase

from classification.exceptions import DomainError
from classification.radial_calculus import initial_data, normalized_solution
from classification.radial_ode import (
    FateKind,
    OdeSystem,
    Sign,
    Termination,
    Trajectory,
    classify_trajectory,
    integrate,
    mass_identity_residual,
    nonexistence_grid,
    perturbation_grid,
    second_derivative,
    shoot_grid,
    sign_constant,
    trajectory_to_csv,
)


def synthetic(v0, v1, grid, termination=Termination.REACHED_RMAX):
    states = np.column_stack([v0, np.gradient(v0, grid), v1, np.gradient(v1, grid)])
    return Trajectory(OdeSystem(2), grid, states, termination, 0.0)


class FateRuleTests(SimpleTestCase):
    grid = np.linspace(0.0, 10.0, 201)

    def test_linear_growth(self):
        fate = classify_trajectory(synthetic(2 * self.grid + 1e-6, -np.ones_like(self.grid), self.grid))
        self.assertIs(fate.kind, FateKind.LINEAR_GROWTH)
        self.assertAlmostEqual(fate.alpha, 2.0, places=5)

    def test_hits_zero_comes_first(self):
        trajectory = synthetic(2 * self.grid + 1, self.grid - 3, self.grid, Termination.POSITIVITY_LOST)
        fate = classify_trajectory(trajectory)
        self.assertIs(fate.kind, FateKind.HITS_ZERO)
        self.assertEqual(fate.radius, 10.0)

    def test_sign_event(self):
        fate = classify_trajectory(synthetic(2 * self.grid + 1, self.grid - 3, self.grid))
        self.assertIs(fate.kind, FateKind.SIGN_EVENT)
        self.assertEqual(fate.index, 1)
        self.assertAlmostEqual(fate.radius, 3.05)
        self.assertEqual(fate.label(), "sign_event(k=1, r=3.05)")

    def test_superlinear(self):
        fate = classify_trajectory(synthetic(1 + self.grid**2, -np.ones_like(self.grid), self.grid))
        self.assertIs(fate.kind, FateKind.SUPERLINEAR)

    def test_linear_growth_needs_rmax(self):
        trajectory = synthetic(2 * self.grid + 1e-6, -np.ones_like(self.grid), self.grid, Termination.STEP_UNDERFLOW)
        self.assertIs(classify_trajectory(trajectory).kind, FateKind.INCONCLUSIVE)

    def test_short_window(self):
        grid = np.array([0.0, 1.0])
        fate = classify_trajectory(synthetic(np.array([1.0, 2.0]), np.array([-1.0, -1.0]), grid))
        self.assertIs(fate.kind, FateKind.INCONCLUSIVE)

    def test_sign_constant(self):
        self.assertTrue(sign_constant(synthetic(1 + self.grid, -np.ones_like(self.grid), self.grid)))
        self.assertFalse(sign_constant(synthetic(1 + self.grid, self.grid - 3, self.grid)))


class IntegrationTests(SimpleTestCase):
    def setUp(self):
        self.system = OdeSystem(2, Sign.PLUS)
        self.solution = normalized_solution(2)
        self.init = [float(x) for x in initial_data(2)]

    def test_reproduces_entire_solution(self):
        trajectory = integrate(self.system, self.init, 20.0, 1e-12)
        self.assertIs(trajectory.termination, Termination.REACHED_RMAX)
        for r in (0.0, 1.0, 10.0, 20.0):
            exact = float(self.solution.value(0, r))
            self.assertLess(abs(trajectory.state_at(r)[0] - exact), 1e-6 * exact)

    def test_linear_growth_fate(self):
        trajectory = integrate(self.system, self.init, 50.0, 1e-12)
        fate = classify_trajectory(trajectory)
        self.assertIs(fate.kind, FateKind.LINEAR_GROWTH)
        self.assertLess(abs(fate.alpha - float(self.solution.a)), 1e-3 * float(self.solution.a))

    def test_values_only_initial_data(self):
        full = integrate(self.system, self.init, 5.0, 1e-10)
        short = integrate(self.system, self.init[0::2], 5.0, 1e-10)
        self.assertEqual(trajectory_to_csv(full), trajectory_to_csv(short))

    def test_second_derivative_is_positive(self):
        trajectory = integrate(self.system, self.init, 10.0, 1e-12)
        convexity = second_derivative(trajectory)
        # u'' = a (1 + r^2)^(-3/2)
        exact = float(self.solution.a) * (1 + trajectory.grid**2) ** -1.5
        self.assertLess(np.max(np.abs(convexity - exact)), 1e-6)

    def test_mass_identity(self):
        trajectory = integrate(self.system, self.init, 10.0, 1e-12)
        for k in (0, 1):
            residual, integral = mass_identity_residual(trajectory, k, 5.0)
            self.assertLess(abs(residual), 1e-6 * max(abs(integral), 1.0))
        with self.assertRaises(DomainError):
            mass_identity_residual(trajectory, 2, 5.0)

    def test_minus_sign_grows_superlinearly(self):
        trajectory = integrate(OdeSystem(2, Sign.MINUS), (1.0, 0.0, -0.5, 0.0), 50.0, 1e-10)
        self.assertIs(classify_trajectory(trajectory).kind, FateKind.SUPERLINEAR)
        self.assertTrue(sign_constant(trajectory))

    def test_deterministic(self):
        first = trajectory_to_csv(integrate(self.system, self.init, 10.0, 1e-10))
        second = trajectory_to_csv(integrate(self.system, self.init, 10.0, 1e-10))
        self.assertEqual(first, second)

    def test_zero_radius(self):
        trajectory = integrate(self.system, self.init, 0.0, 1e-10)
        self.assertEqual(len(trajectory), 1)

    def test_invalid_data(self):
        with self.assertRaises(DomainError):
            integrate(self.system, (0.0, 0.0, -1.0, 0.0), 5.0, 1e-10)
        with self.assertRaises(DomainError):
            integrate(self.system, (1.0, 0.5, -1.0, 0.0), 5.0, 1e-10)
        with self.assertRaises(DomainError):
            integrate(self.system, (1.0, -1.0, 0.0), 5.0, 1e-10)
        with self.assertRaises(DomainError):
            integrate(self.system, self.init, 5.0, 0)

    def test_state_outside_trajectory(self):
        trajectory = integrate(self.system, self.init, 1.0, 1e-10)
        with self.assertRaises(DomainError):
            trajectory.state_at(2.0)

    def test_csv_layout(self):
        lines = trajectory_to_csv(integrate(self.system, self.init, 1.0, 1e-10)).splitlines()
        self.assertEqual(lines[0], "r,v0,dv0,v1,dv1")
        self.assertEqual(lines[1].split(",")[0], "0")
        self.assertEqual(len(lines[1].split(",")), 5)


class GridTests(SimpleTestCase):
    def test_nonexistence_grid(self):
        grid = nonexistence_grid()
        self.assertEqual(len(grid), 10)
        self.assertEqual(grid[0], (1.0, 0.0, -5.0, 0.0))
        self.assertEqual(grid[-1], (1.0, 0.0, -0.5, 0.0))
        self.assertEqual(len(nonexistence_grid(3)[0]), 6)

    def test_perturbation_grid(self):
        grid = perturbation_grid(2)
        exact = [float(x) for x in initial_data(2)]
        self.assertEqual(list(grid[2]), exact)
        self.assertAlmostEqual(grid[0][2], 0.8 * exact[2])

    def test_rejected_points_are_recorded(self):
        table = shoot_grid(OdeSystem(2, Sign.MINUS), [(1.0, 0.0, -1.0, 0.0), (-1.0, 0.0, -1.0, 0.0)], 5.0, 1e-8)
        self.assertIsNotNone(table[0].fate)
        self.assertIsNone(table[1].fate)
        self.assertIn("positive", table[1].error)

    def test_sign(self):
        self.assertEqual(Sign("minus").sigma, -1)
        self.assertEqual(Sign.PLUS.sigma, 1)
