"""Exception types shared across the package."""


class Hyper3Error(Exception):
    """Base class for all errors raised by this package."""


class CapMismatch(Hyper3Error):
    """Two truncated series with different degree caps were combined."""


class BadParams(Hyper3Error):
    """A parameter set is invalid for the requested function."""


class ArityMismatch(Hyper3Error):
    """An index or point does not match the arity of the function."""


class SingularParameter(Hyper3Error):
    """A denominator Pochhammer symbol vanished during a computation."""


class UnknownIdentity(Hyper3Error):
    """No registry entry exists for the given identity id."""


class ConstraintViolated(Hyper3Error):
    """A parameter positivity or argument-domain constraint fails."""


class IntegrandSingular(Hyper3Error):
    """An integrand base became nonpositive at a quadrature node."""


class NonFinite(Hyper3Error):
    """A floating-point summation overflowed to inf or nan."""


class DivergenceSuspected(Hyper3Error):
    """A numerically summed outer expansion appears to diverge."""
