"""Shared fixtures: the documented parameter set for each solution class.

These sets anchor the acceptance suite; tests reference them instead of
re-inventing parameters.
"""
import pytest

from trabessel import ClassId, OdeParams

# one documented set per class: (ode, free parameters)
DOCUMENTED = {
    ClassId.K0: (OdeParams(a=1.0, b=0.0, A_plus=-1.0, A_minus=20.5,
                           A_one=-0.25, A_zero=2.0), {}),
    ClassId.K1: (OdeParams(a=1.0, b=0.0, A_plus=0.0, A_minus=3.0,
                           A_one=-0.25, A_zero=2.0), {"mu": -12.5}),
    # alpha near the K1 value mu + 1 - a/2 keeps the couplings definite
    ClassId.C8B: (OdeParams(a=1.5, b=0.0, A_plus=0.0, A_minus=2.0,
                            A_one=-0.25, A_zero=1.0), {"alpha": -12.05, "mu": -12.5}),
    ClassId.L39A: (OdeParams(a=1.5, b=0.0, A_plus=0.0, A_minus=2.0,
                             A_one=1.0, A_zero=15.0 / 16.0), {}),
    ClassId.L39B: (OdeParams(a=1.5, b=0.0, A_plus=0.0, A_minus=0.5,
                             A_one=-0.25, A_zero=15.0 / 16.0), {}),
    ClassId.L39C: (OdeParams(a=1.5, b=0.0, A_plus=0.0, A_minus=1.0,
                             A_one=-0.25, A_zero=15.0 / 16.0), {"tau": 3.0}),
}

# residual-decay study sets: coefficients must decay for the truncated series
# to converge pointwise, which needs a contractive regime of each class
DECAY_SETS = {
    ClassId.L39A: (OdeParams(a=1.5, b=0.0, A_plus=0.0, A_minus=0.0,
                             A_one=0.125, A_zero=15.0 / 16.0), {}),
    ClassId.L39B: (OdeParams(a=1.5, b=0.0, A_plus=0.0, A_minus=0.5,
                             A_one=-0.25, A_zero=15.0 / 16.0), {}),
    ClassId.L39C: (OdeParams(a=1.5, b=0.0, A_plus=0.0, A_minus=1.0,
                             A_one=1.0, A_zero=15.0 / 16.0), {"tau": -0.5}),
}


@pytest.fixture
def documented():
    return DOCUMENTED
