"""Exception types raised across contactkit."""


class ContactKitError(Exception):
    """Base class for every error raised by this package."""


class RingMismatch(ContactKitError, ValueError):
    """Operands live in rings with different numbers of variables."""


class PrecisionExhausted(ContactKitError):
    """A result would carry no certified coefficients (precision < 1)."""


class DivisibilityFailure(ContactKitError):
    """A series is not divisible by z.

    ``witness`` is a stored exponent with z-exponent 0 and ``coefficient``
    its coefficient.
    """

    def __init__(self, witness, coefficient):
        self.witness = tuple(witness)
        self.coefficient = coefficient
        super().__init__(
            f"not divisible by z: monomial {self.witness} has coefficient {coefficient}"
        )


class MembershipFailure(ContactKitError):
    """``f`` is not a contact Hamiltonian at the working precision."""

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(
            f"f is not in the image of theta (failing m={certificate.failing_m}, "
            f"precision {certificate.certified_precision})"
        )


class DegenerateGerm(ContactKitError):
    """The germ's Martinet hypersurface is not structurally smooth at 0."""


class PreconditionError(ContactKitError, ValueError):
    """An operation was called on data outside its contract."""


class InvariantViolation(ContactKitError, AssertionError):
    """Two routes that must agree by a theorem disagreed.

    This always indicates a bug in the implementation, never bad input.
    """
