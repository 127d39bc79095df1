"""Schrodinger-equation applications of the series solver.

Coordinate maps x(r) with dx/dr = eta lam x^a (b = 0) turn the radial
Schrodinger equation into the six-parameter form; four exponent choices
a in {1/2, 1, 3/2, 2} produce the supported potential rows.  Implemented
systems: the exponentially confining well (spectrum from the Jacobi matrix
of the deformed-Bessel coefficients) and the singular isotropic oscillator
(closed-form spectrum).  An independent finite-difference Schrodinger
solver serves as the oracle for both.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (BoundaryError, ConstraintViolation, ConvergenceFailure,
                     UnsupportedRow)
from .ode import OdeParams
from .solver import (ClassId, expansion_coefficients, jacobi_matrix,
                     resolve_class, tridiag_eigenvalues)

__all__ = ["SystemSpec", "SpectrumResult", "table1_map", "confining_well",
           "singular_oscillator", "spectrum_eq64", "fd_oracle", "morse_levels",
           "well_potential", "well_wavefunction_coeffs", "oscillator_potential"]


@dataclass(frozen=True)
class SystemSpec:
    a_choice: float
    lam: float
    eta: float
    ell: int
    ode: OdeParams
    Lambda_shift: float
    x_of_r: str
    energy: float
    energy_formula: str
    potential: object          # callable V(r), without the centrifugal term
    potential_formula: str


@dataclass(frozen=True)
class SpectrumResult:
    energies: np.ndarray
    method: str                # closed_form_eq64 | jacobi_matrix | fd_oracle | morse_closed_form
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        if not np.all(np.isfinite(e)):
            raise ConvergenceFailure("spectrum contains non-finite energies")
        if np.any(np.diff(e) < -1e-12 * max(1.0, float(np.max(np.abs(e))))):
            raise ConvergenceFailure("spectrum is not ascending")


def table1_map(a_choice: float, params: OdeParams, lam: float, ell: int = 0) -> SystemSpec:
    """Populate the coordinate-map row for one of a = 1/2, 1, 3/2, 2 (b = 0)."""
    if params.b != 0.0:
        raise ConstraintViolation("coordinate maps need b = 0", params.b)
    if lam <= 0:
        raise ConstraintViolation("lam must be positive", lam)
    Ap, Am, A1, A0 = params.A_plus, params.A_minus, params.A_one, params.A_zero
    l2 = lam * lam
    if a_choice == 0.5:
        return SystemSpec(
            a_choice, lam, 2.0, ell, params, 4 * A0 - ell * (ell + 1),
            "x = (lam r)^2, r >= 0", 2 * l2 * Ap, "E = 2 lam^2 A+",
            lambda r: -2 * Am / l2 / r ** 4 - 2 * A1 / l2 ** 2 / r ** 6,
            "V(r) = -(2 A-/lam^2)/r^4 - (2 A1/lam^4)/r^6")
    if a_choice == 1.0:
        return SystemSpec(
            a_choice, lam, 1.0, ell, params, 0.0,
            "x = exp(lam r), r in R", -l2 * A0 / 2, "E = -lam^2 A0 / 2",
            lambda r: -(l2 / 2) * (Ap * np.exp(lam * r) + Am * np.exp(-lam * r)
                                   + A1 * np.exp(-2 * lam * r)),
            "V(r) = -(lam^2/2)(A+ e^{lam r} + A- e^{-lam r} + A1 e^{-2 lam r})")
    if a_choice == 1.5:
        return SystemSpec(
            a_choice, lam, -2.0, ell, params, 4 * A0 - ell * (ell + 1),
            "x = (lam r)^-2, r >= 0", 2 * l2 * Am, "E = 2 lam^2 A-",
            lambda r: -2 * Ap / l2 / r ** 4 - 2 * l2 ** 2 * A1 * r ** 2,
            "V(r) = -(2 A+/lam^2)/r^4 - (2 lam^4 A1) r^2")
    if a_choice == 2.0:
        return SystemSpec(
            a_choice, lam, -1.0, ell, params, A0 - ell * (ell + 1),
            "x = (lam r)^-1, r >= 0", l2 * A1 / 2, "E = lam^2 A1 / 2",
            lambda r: -lam * Am / 2 / r - Ap / (2 * lam) / r ** 3,
            "V(r) = -(lam A-/2)/r - (A+/(2 lam))/r^3")
    raise UnsupportedRow(f"a = {a_choice} is not one of 1/2, 1, 3/2, 2")


# ---------------------------------------------------------------------------
# finite-difference oracle
# ---------------------------------------------------------------------------

def fd_oracle(potential, domain, grid_size: int = 4000, ell: int = 0,
              n_levels: int = 5, include_centrifugal: bool = True) -> SpectrumResult:
    """Lowest eigenvalues of -psi''/2 + V_eff psi = E psi on a finite domain.

    Symmetric second-order differences with Dirichlet boundaries, Richardson-
    extrapolated over a grid doubling; metadata records per-level deltas.
    The centrifugal term ell(ell+1)/2r^2 is added when requested and the
    domain excludes r <= 0.
    """
    r_min, r_max = domain
    if grid_size < 100:
        raise ConstraintViolation("fd oracle needs grid_size >= 100", grid_size)
    if not r_min < r_max:
        raise ConstraintViolation("domain must satisfy r_min < r_max")
    if include_centrifugal and ell and r_min <= 0:
        raise ConstraintViolation("centrifugal term needs r_min > 0")

    def veff(r):
        v = np.asarray(potential(r), dtype=float)
        if include_centrifugal and ell:
            v = v + ell * (ell + 1) / (2.0 * r ** 2)
        return v

    def solve(npts, want_vectors=False):
        r = np.linspace(r_min, r_max, npts + 2)[1:-1]
        h = r[1] - r[0]
        diag = 1.0 / h ** 2 + veff(r)
        off = -0.5 / h ** 2 * np.ones(npts - 1)
        if want_vectors:
            vals, vecs = scipy.linalg.eigh_tridiagonal(
                diag, off, select="i", select_range=(0, n_levels - 1))
            return vals, vecs
        return scipy.linalg.eigh_tridiagonal(
            diag, off, select="i", select_range=(0, n_levels - 1),
            eigvals_only=True), None

    coarse, _ = solve(grid_size)
    fine, vecs = solve(2 * grid_size, want_vectors=True)
    if not (np.all(np.isfinite(coarse)) and np.all(np.isfinite(fine))):
        raise ConvergenceFailure("finite-difference eigensolver returned non-finite values")
    extrap = (4.0 * fine - coarse) / 3.0
    deltas = np.abs(fine - coarse) / 3.0
    # Dirichlet truncation sanity: eigenfunctions must vanish at truncated
    # edges.  An inner edge hugging r = 0 is the regular origin (u ~ r^{l+1}
    # there is exact, not leakage) and is exempt.
    rows = [-1]
    if not 0 <= r_min < 1e-3 * (r_max - r_min):
        rows.append(0)
    edge = np.max(np.abs(vecs[rows, :]), axis=0) / np.max(np.abs(vecs), axis=0)
    if np.any(edge > 1e-6):
        raise BoundaryError(
            f"eigenfunction edge magnitude {float(np.max(edge)):.2e} > 1e-6; "
            "enlarge the domain")
    return SpectrumResult(extrap, "fd_oracle",
                          {"domain": (r_min, r_max), "grid_size": grid_size,
                           "ell": ell,
                           "richardson_delta": deltas.tolist(),
                           "edge_magnitude": float(np.max(edge))})


# ---------------------------------------------------------------------------
# exponentially confining well (a = 1 row)
# ---------------------------------------------------------------------------

def well_potential(A_minus: float, A_plus: float, lam: float):
    """V(r) = (lam^2/2)(e^{-2 lam r}/4 - A- e^{-lam r} - A+ e^{lam r})."""
    def v(r):
        return (lam ** 2 / 2) * (0.25 * np.exp(-2 * lam * r)
                                 - A_minus * np.exp(-lam * r)
                                 - A_plus * np.exp(lam * r))
    return v


def morse_levels(A_minus: float, lam: float, count: int) -> np.ndarray:
    """Closed-form levels E_n = -(lam^2/2)(A- - n - 1/2)^2 of the A+ = 0 well.

    Not printed in the source material; validated against fd_oracle before
    use (see the acceptance suite).
    """
    n_max = int(math.floor(A_minus - 0.5 - 1e-12))
    count = min(count, n_max + 1)
    return np.array([-(lam ** 2 / 2) * (A_minus - n - 0.5) ** 2 for n in range(count)])


def well_domain(A_minus: float, A_plus: float, lam: float, e_max: float):
    """Dirichlet domain bracketing the well: V(edge) >= e_max + 20, plus one
    extra 1/lam of the exponential wall so the edge amplitude is negligible."""
    v = well_potential(A_minus, A_plus, lam)
    target = e_max + 20.0
    # bracket outward from the well bottom, not from the origin
    r0 = -math.log(2 * A_minus) / lam if A_minus > 0 else 0.0
    lo = r0 - 0.5 / lam
    while v(lo) < target and lo > r0 - 80 / lam:
        lo -= 0.5 / lam
    lo -= 1.0 / lam
    if A_plus < 0:
        hi = r0 + 0.5 / lam
        while v(hi) < target and hi < r0 + 80 / lam:
            hi += 0.5 / lam
        hi += 1.0 / lam
    else:
        # Morse limit: right side tends to zero; extend until the e^{-lam r}
        # tail is negligible and add decay padding
        hi = max(r0, 0.0) + (math.log(max(4 * A_minus, 10.0)) + 8.0) / lam
    return lo, hi


def confining_well(A_minus: float, A_plus: float, lam: float, N: int | None = None,
                   n_levels: int = 5):
    """Potential and spectrum of the exponentially confining well.

    A+ < 0: eigenvalues z_k of the (N+1)x(N+1) Jacobi matrix of the
    deformed-Bessel coefficient recursion, mapped through E = -lam^2 A+ z / 8.
    A+ = 0: Morse limit, closed-form levels.  Requires A- >= N + 1/2.
    """
    if A_plus > 0:
        raise ConstraintViolation("A+ <= 0 (otherwise the particle escapes)", A_plus)
    if lam <= 0:
        raise ConstraintViolation("lam must be positive", lam)
    v = well_potential(A_minus, A_plus, lam)
    if A_plus == 0.0:
        if A_minus < 0.5:
            raise ConstraintViolation("Morse limit needs A- >= 1/2", A_minus)
        energies = morse_levels(A_minus, lam, n_levels)
        return v, SpectrumResult(energies, "morse_closed_form",
                                 {"A_minus": A_minus, "lam": lam})
    mu = -A_minus
    n_cap = int(math.floor(-mu - 0.5 - 1e-9))
    if N is None:
        N = n_cap
    if not A_minus >= N + 0.5 or N > n_cap:
        raise ConstraintViolation("A- >= N + 1/2", A_minus - N - 0.5)
    # K0 instance with A0 left spectral: the Jacobi matrix lives in
    # z = 4 A0 / A+ and its entries do not involve A0
    ode = OdeParams(a=1.0, b=0.0, A_plus=A_plus, A_minus=A_minus,
                    A_one=-0.25, A_zero=0.0)
    sol = resolve_class(ode, ClassId.K0)
    diag, off = jacobi_matrix(sol, N)
    z = tridiag_eigenvalues(diag, off)
    energies = np.sort(-lam ** 2 * A_plus * z / 8.0)[:n_levels]
    return v, SpectrumResult(
        energies, "jacobi_matrix",
        {"matrix_size": N + 1, "mu": mu, "gamma": 4.0 / A_plus,
         "z_eigenvalues": np.sort(z).tolist()[:n_levels],
         "energy_map": "E = -lam^2 A+ z / 8"})


def well_wavefunction_coeffs(A_minus: float, A_plus: float, lam: float,
                             energy: float, N: int | None = None) -> np.ndarray:
    """Expansion coefficients f_n of the well eigenstate at a given energy.

    The state at energy E corresponds to A0 = -2E/lam^2; its coefficients are
    the deformed-Bessel values C_n B_n(z) with z = 4 A0 / A+.  Meaningful at
    (or near) the Jacobi eigenvalues returned by confining_well.
    """
    if A_plus >= 0:
        raise ConstraintViolation("wavefunction coefficients need A+ < 0", A_plus)
    ode = OdeParams(a=1.0, b=0.0, A_plus=A_plus, A_minus=A_minus,
                    A_one=-0.25, A_zero=-2.0 * energy / lam ** 2)
    sol = resolve_class(ode, ClassId.K0)
    if N is None:
        N = sol.n_max
    return expansion_coefficients(sol, N)


# ---------------------------------------------------------------------------
# singular isotropic oscillator (a = 3/2 row)
# ---------------------------------------------------------------------------

def oscillator_potential(A_one: float, Lambda: float, ell: int, lam: float):
    """V_eff(r) = [ell(ell+1) + Lambda]/2r^2 - 2 lam^4 A1 r^2."""
    coef = (ell * (ell + 1) + Lambda) / 2.0

    def v(r):
        r = np.asarray(r, dtype=float)
        return coef / r ** 2 - 2 * lam ** 4 * A_one * r ** 2
    return v


def spectrum_eq64(k: int, lam: float, A_one: float, Lambda: float, ell: int) -> float:
    """E_k = 4 lam^2 sqrt(-A1) [k + 1/2 + sqrt(Lambda + (ell+1/2)^2)/2]."""
    if not A_one < 0:
        raise ConstraintViolation("A1 < 0", A_one)
    root_arg = Lambda + (ell + 0.5) ** 2
    if root_arg < 0:
        raise ConstraintViolation(
            "Lambda >= -(ell+1/2)^2 (fall-to-the-center guard)", root_arg)
    if k < 0:
        raise ConstraintViolation("k >= 0", k)
    return 4 * lam ** 2 * math.sqrt(-A_one) * (k + 0.5 + 0.5 * math.sqrt(root_arg))


def singular_oscillator(A_one: float, A_minus: float, A_zero: float, ell: int,
                        lam: float, tau: float, n_levels: int = 5):
    """Effective potential, closed-form spectrum and wavefunction parameters.

    Requires A1 <= 0, 16 A0 >= -1 and 4 A1 + tau^2 > 0 (b = 0, a = 3/2 row).
    """
    if A_one > 0:
        raise ConstraintViolation("A1 <= 0 (otherwise the particle escapes)", A_one)
    if 16 * A_zero < -1:
        raise ConstraintViolation("16 A0 >= -1 (fall-to-the-center guard)", A_zero)
    if 4 * A_one + tau ** 2 <= 0:
        raise ConstraintViolation("4 A1 + tau^2 > 0", 4 * A_one + tau ** 2)
    nu_sq = A_zero + 1.0 / 16.0
    Lambda = 4 * nu_sq - (ell + 0.5) ** 2
    # at a = 3/2 the two printed decompositions coincide: 4 A0 - ell(ell+1)
    assert abs(Lambda - (4 * A_zero - ell * (ell + 1))) <= 1e-12 * max(1.0, abs(Lambda))
    v = oscillator_potential(A_one, Lambda, ell, lam)
    energies = np.array([spectrum_eq64(k, lam, A_one, Lambda, ell)
                         for k in range(n_levels)])
    root = math.sqrt(4 * A_one + tau ** 2)
    wf = {
        "cos_theta": (4 * A_one + tau ** 2 - 1) / (4 * A_one + tau ** 2 + 1),
        "eta": tau / root,
        "z": A_minus / root,
        "nu": math.sqrt(nu_sq),
        "basis": "phi_n(r) = (lam r)^{2 nu + 1/2} e^{-(tau+1) lam^2 r^2 / 2} "
                 "L_n^{2 nu}(lam^2 r^2)",
    }
    result = SpectrumResult(energies, "closed_form_eq64",
                            {"Lambda": Lambda, "ell": ell, "A_one": A_one,
                             "lam": lam, "discrete_regime": abs(wf["eta"]) > 1})
    return v, result, wf
