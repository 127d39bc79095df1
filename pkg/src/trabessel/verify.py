"""Operator-action verification: the tridiagonal identity and ODE residuals.

This module is the decisive validator for every printed coefficient set:
it applies the differential operator to actual basis functions and compares
against omega(x) [u_n phi_n + s_{n-1} phi_{n-1} + t_n phi_{n+1}].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import BasisSpec, basis_block, basis_derivatives
from .errors import DomainError
from .ode import apply_D_values, stencil_derivatives
from .solver import ClassSolution, SeriesSolution, recursion_coeffs

__all__ = ["GridSpec", "CheckReport", "default_grid", "tridiagonality_check",
           "tridiagonality_sweep", "residual", "derivative_crosscheck"]

_SCALE_FLOOR = 1e-300


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    count: int = 64
    spacing: str = "logarithmic"

    def __post_init__(self):
        if not (0 < self.x_min < self.x_max):
            raise DomainError("grid needs 0 < x_min < x_max")
        if self.count < 2:
            raise DomainError("grid needs count >= 2")
        if self.spacing not in ("linear", "logarithmic"):
            raise DomainError(f"unknown spacing {self.spacing!r}")

    def points(self):
        if self.spacing == "linear":
            return np.linspace(self.x_min, self.x_max, self.count)
        return np.geomspace(self.x_min, self.x_max, self.count)


def default_grid() -> GridSpec:
    """Logarithmic, 64 points on [0.05, 20]: spans the e^{-beta/x} boundary
    layer and the polynomial-growth region."""
    return GridSpec(0.05, 20.0, 64, "logarithmic")


@dataclass(frozen=True)
class CheckReport:
    max_abs_deviation: float
    max_rel_deviation: float
    argmax_x: float
    scale: float
    tolerance: float
    passed: bool
    per_n: dict = field(default_factory=dict)
    notes: tuple = ()

    def __bool__(self):
        return self.passed


def _omega_values(sol: ClassSolution, x):
    return sol.omega(x)


def tridiagonality_check(sol: ClassSolution, n: int, grid: GridSpec | None = None,
                         tol: float = 1e-8) -> CheckReport:
    """Verify D phi_n = omega(x) [u_n phi_n + s_{n-1} phi_{n-1} + t_n phi_{n+1}].

    At n = 0 the lower neighbour is absent (boundary convention f_{-1} = 0).
    Relative deviation is scaled by max |D phi_n| over the grid.
    """
    grid = grid or default_grid()
    x = grid.points()
    u_n, _, t_n = recursion_coeffs(sol, n)
    phi_n = basis_derivatives(sol.basis, n, x)
    lhs = apply_D_values(sol.ode, *phi_n, x)
    rhs = u_n * phi_n[0] + t_n * basis_derivatives(sol.basis, n + 1, x)[0]
    if n > 0:
        _, s_prev, _ = recursion_coeffs(sol, n - 1)
        rhs = rhs + s_prev * basis_derivatives(sol.basis, n - 1, x)[0]
    rhs = _omega_values(sol, x) * rhs
    dev = np.abs(lhs - rhs)
    scale = max(float(np.max(np.abs(lhs))), _SCALE_FLOOR)
    i = int(np.argmax(dev))
    rel = float(dev[i]) / scale
    return CheckReport(max_abs_deviation=float(dev[i]), max_rel_deviation=rel,
                       argmax_x=float(x[i]), scale=scale, tolerance=tol,
                       passed=rel <= tol, per_n={n: rel}, notes=tuple(sol.notes))


def tridiagonality_sweep(sol: ClassSolution, n_values, grid: GridSpec | None = None,
                         tol: float = 1e-8) -> CheckReport:
    """tridiagonality_check over several degrees, worst case reported."""
    per_n = {}
    worst = None
    for n in n_values:
        rep = tridiagonality_check(sol, n, grid, tol)
        per_n[n] = rep.max_rel_deviation
        if worst is None or rep.max_rel_deviation > worst.max_rel_deviation:
            worst = rep
    return CheckReport(max_abs_deviation=worst.max_abs_deviation,
                       max_rel_deviation=worst.max_rel_deviation,
                       argmax_x=worst.argmax_x, scale=worst.scale, tolerance=tol,
                       passed=worst.max_rel_deviation <= tol, per_n=per_n,
                       notes=worst.notes)


def _residual_core(series: SeriesSolution, x):
    coeffs = np.asarray(series.coeffs, dtype=float)
    vals, d1, d2 = basis_block(series.basis, series.order, x)
    y = sum(c * v for c, v in zip(coeffs, vals))
    y1 = sum(c * v for c, v in zip(coeffs, d1))
    y2 = sum(c * v for c, v in zip(coeffs, d2))
    dvals = np.abs(apply_D_values(series.ode, y, y1, y2, x))
    scale = max(float(np.max(np.abs(y))), _SCALE_FLOOR)
    i = int(np.argmax(dvals))
    return float(dvals[i]), float(dvals[i]) / scale, float(x[i]), scale


def residual(series: SeriesSolution, grid: GridSpec | None = None,
             tol: float | None = None) -> CheckReport:
    """max |D y_N| over the grid, scaled by max |y_N|.

    For a series attached to an infinite class the report also carries the
    half-truncation residual (per_n keys N and N//2) so decay with N is
    visible.  A series with all-zero coefficients is flagged degenerate.
    """
    grid = grid or default_grid()
    x = grid.points()
    coeffs = np.asarray(series.coeffs, dtype=float)
    if np.all(coeffs == 0.0):
        return CheckReport(0.0, 0.0, float(x[0]), 0.0, tol or 0.0, True,
                           per_n={}, notes=("degenerate: all coefficients zero",))
    dev, rel, argmax, scale = _residual_core(series, x)
    per_n = {series.order: rel}
    notes = []
    infinite = series.solution is not None and series.solution.n_max is None
    if infinite and series.order >= 2:
        half = SeriesSolution(series.solution, series.basis, series.ode,
                              coeffs[:series.order // 2 + 1])
        _, rel_half, _, _ = _residual_core(half, x)
        per_n[half.order] = rel_half
        notes.append("decaying with N" if rel < rel_half else "not decaying with N")
    passed = True if tol is None else rel <= tol
    return CheckReport(max_abs_deviation=dev, max_rel_deviation=rel,
                       argmax_x=argmax, scale=scale, tolerance=tol or math.nan,
                       passed=passed, per_n=per_n, notes=tuple(notes))


def derivative_crosscheck(basis: BasisSpec, n: int, x) -> float:
    """Relative gap between analytic and stencil derivatives of phi_n at x."""
    x = np.asarray(x, dtype=float)
    v, d1, d2 = basis_derivatives(basis, n, x)

    def f(xx):
        return basis_derivatives(basis, n, xx)[0]

    _, s1, s2 = stencil_derivatives(f, x)
    g1 = np.max(np.abs(d1 - s1) / np.maximum(1.0, np.abs(d1)))
    g2 = np.max(np.abs(d2 - s2) / np.maximum(1.0, np.abs(d2)))
    return float(max(g1, g2))
