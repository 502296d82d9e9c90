"""Exception types shared across the package."""


class QgrassError(Exception):
    """Base class for all package errors."""


class InvalidInputError(QgrassError, ValueError):
    """Malformed or out-of-range input value."""


class DomainError(QgrassError, ValueError):
    """Input is well-formed but outside the domain of the operation."""


class NotInImageError(QgrassError, ValueError):
    """A sequence is not in the image of the lattice embedding."""


class NotInInitialAlgebraError(QgrassError):
    """A monomial admits no factorization into generator leading monomials.

    Carries the offending monomial as a witness; surfacing one of these
    during subduction is a sagbi-failure certificate for the generator set
    in use.
    """

    def __init__(self, monomial, message="monomial is not in the initial algebra"):
        super().__init__(message)
        self.monomial = monomial


class SagbiFailureError(QgrassError):
    """Subduction of a generator product left a nonzero remainder."""

    def __init__(self, pair, witness, message="subduction left a nonzero remainder"):
        super().__init__(message)
        self.pair = pair
        self.witness = witness


class InternalInconsistencyError(QgrassError):
    """A structural invariant that should hold mathematically was violated."""
