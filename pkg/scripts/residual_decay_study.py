"""Truncation-residual study for the infinite (Laguerre-basis) classes.

Prints max |D y_N| / max |y_N| on the default grid for growing truncation N
at the documented decay parameter sets, plus the L39B set where the residual
does not decay (quadratic couplings with a pinned binding argument; see the
acceptance-suite docstring).
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from conftest import DECAY_SETS  # noqa: E402

from trabessel import expansion_coefficients, residual, resolve_class  # noqa: E402
from trabessel.solver import SeriesSolution  # noqa: E402

ORDERS = (5, 10, 20, 40, 80)


def study(class_id, params, free):
    sol = resolve_class(params, class_id, free)
    coeffs = expansion_coefficients(sol, max(ORDERS))
    print(f"\n{class_id.value}  (binding {type(sol.binding.family).__name__})")
    print(f"{'N':>4} {'residual/scale':>16}")
    for n in ORDERS:
        series = SeriesSolution(sol, sol.basis, params, coeffs[:n + 1])
        rep = residual(series)
        print(f"{n:>4} {rep.max_rel_deviation:>16.6e}")


if __name__ == "__main__":
    for cid, (params, free) in DECAY_SETS.items():
        study(cid, params, free)
