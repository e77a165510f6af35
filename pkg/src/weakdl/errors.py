"""Exception hierarchy shared by all weakdl modules."""


class WeakDLError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(WeakDLError, ValueError):
    pass


class NotADivisor(WeakDLError, ValueError):
    pass


class BadFactorization(WeakDLError, ValueError):
    pass


class OutOfRange(WeakDLError, ValueError):
    pass


class BadHints(WeakDLError, ValueError):
    """A hint line is malformed, names a non-prime, or does not divide n."""


class PointNotOnCurve(WeakDLError, ValueError):
    pass


class WrongSubgroup(WeakDLError, ValueError):
    pass


class BadEncoding(WeakDLError, ValueError):
    pass


class UnknownCurve(WeakDLError, KeyError):
    pass


class InvalidCurve(WeakDLError, ValueError):
    pass


class IdentityInput(WeakDLError, ValueError):
    """The public key is the identity, which has no nonzero discrete log."""


class IdentityPoint(WeakDLError, ValueError):
    pass


class InvalidParams(WeakDLError, ValueError):
    pass
