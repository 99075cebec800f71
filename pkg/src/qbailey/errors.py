"""Exception hierarchy shared by every qbailey module."""


class QBaileyError(Exception):
    """Base class for all library errors."""


class RingMismatchError(QBaileyError, ValueError):
    """Operands live in different cyclotomic fields."""


class NotInvertibleError(QBaileyError, ZeroDivisionError):
    """Attempt to invert the zero element."""


class LimitDoesNotExistError(QBaileyError, ValueError):
    """The numerator of a 0/0 limit does not vanish at the root of unity."""


class DenominatorVanishingError(QBaileyError, ZeroDivisionError):
    """A sample point makes a denominator in a rational-function identity vanish."""


class BaseExponentError(QBaileyError, ValueError):
    """A Bailey-pair operation received a pair in the wrong base (q versus q^2)."""


class UnknownIdentityError(QBaileyError, KeyError):
    pass


class UnknownPairError(QBaileyError, KeyError):
    pass


class ApplicabilityError(QBaileyError, ValueError):
    """The identity is not asserted for this root order N."""


class ParameterRangeError(QBaileyError, ValueError):
    """The chain length m is outside the identity's parameter domain."""
