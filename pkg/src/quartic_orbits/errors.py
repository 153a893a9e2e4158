"""Exception types shared across the package."""


class ZeroFormError(ValueError):
    """The zero polynomial was used where a projective representative is required."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of the operation."""


class StructureMismatchError(DomainError):
    """The root structure of the form does not admit the requested operation."""


class ContractError(ValueError):
    """A precondition between arguments failed (e.g. a non-orthogonal quotient direction)."""


class OutOfChartError(DomainError):
    """The projective point lies on the lightcone removed by the affine chart."""


class BoundaryUncertainError(RuntimeError):
    """Float-mode classification cannot decide a sign or multiplicity within tolerance."""


class InternalConsistencyError(RuntimeError):
    """A computed invariant disagrees with the expected stratification table."""
