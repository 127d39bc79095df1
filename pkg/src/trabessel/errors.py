"""Exception types shared across the package."""


class TraError(Exception):
    """Base class for all package errors."""


class DomainError(TraError):
    """Evaluation outside a family's valid parameter/degree range."""


class UnsupportedOracle(TraError):
    """Family has no closed hypergeometric representation."""


class QuadratureFailure(TraError):
    """Adaptive quadrature did not reach the requested tolerance."""


class ConstraintViolation(TraError):
    """A solution-class parameter relation does not hold."""

    def __init__(self, relation, residual=None):
        self.relation = relation
        self.residual = residual
        msg = relation if residual is None else f"{relation} (residual {residual:.3e})"
        super().__init__(msg)


class RealityViolation(TraError):
    """A quantity that must be real would be complex at these parameters."""


class DefinitenessError(TraError):
    """A coupling product s_n * t_n is not positive."""


class ConvergenceFailure(TraError):
    """An iterative numerical routine exceeded its iteration budget."""


class BoundaryError(TraError):
    """Eigenfunction not negligible at the finite-difference domain edge."""


class DerivativeUnavailable(TraError):
    """Function handle provides neither analytic derivatives nor values."""


class UnsupportedRow(TraError):
    """Coordinate-map exponent outside the four supported choices."""


class SeriesOverflow(TraError):
    """Basis prefactor overflows double precision at the evaluation point."""
