"""Dual-method study of the exponentially confining well.

Compares the bound-state energies from the truncated Jacobi matrix of the
deformed-Bessel coefficient recursion against the finite-difference
Schrodinger oracle, for a sweep of well depths, and prints the Morse limit.

Usage: python scripts/confining_well_study.py [A_minus ...]
"""
import sys

from trabessel import confining_well, fd_oracle
from trabessel.quantum import well_domain

LAM = 1.0
A_PLUS = -1.0


def study(a_minus):
    v, jac = confining_well(a_minus, A_PLUS, LAM)
    lo, hi = well_domain(a_minus, A_PLUS, LAM, e_max=float(jac.energies[-1]))
    fd = fd_oracle(v, (lo, hi), 4000, n_levels=len(jac.energies))
    print(f"\nA- = {a_minus}  (matrix size {jac.metadata['matrix_size']}, "
          f"fd domain [{lo:.2f}, {hi:.2f}])")
    print(f"{'k':>3} {'E_jacobi':>18} {'E_fd':>18} {'rel gap':>10}")
    for k, (ej, ef) in enumerate(zip(jac.energies, fd.energies)):
        print(f"{k:>3} {ej:>18.10f} {ef:>18.10f} {abs(ej - ef) / abs(ef):>10.2e}")


def morse_limit(a_minus):
    v, closed = confining_well(a_minus, 0.0, LAM, n_levels=3)
    lo, hi = well_domain(a_minus, 0.0, LAM, e_max=float(closed.energies[-1]))
    fd = fd_oracle(v, (lo, hi), 4000, n_levels=3)
    print(f"\nMorse limit (A+ = 0), A- = {a_minus}:")
    print(f"{'k':>3} {'closed form':>18} {'E_fd':>18} {'rel gap':>10}")
    for k, (ec, ef) in enumerate(zip(closed.energies, fd.energies)):
        print(f"{k:>3} {ec:>18.10f} {ef:>18.10f} {abs(ec - ef) / abs(ef):>10.2e}")


if __name__ == "__main__":
    depths = [float(v) for v in sys.argv[1:]] or [10.5, 20.5]
    for am in depths:
        study(am)
    morse_limit(depths[-1])
