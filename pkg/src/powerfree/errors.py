"""Exception hierarchy shared by the library and the CLI.

Every class carries an ``exit_code`` so the CLI can map failures onto its
documented process exit status without a lookup table.
"""


class PowerFreeError(Exception):
    exit_code = 1


class InvalidArgument(PowerFreeError, ValueError):
    exit_code = 2


class OutOfRange(PowerFreeError, IndexError):
    """A query fell outside a prime table or another finite container."""

    exit_code = 3


class IncompleteTable(OutOfRange):
    """A factorization needs primes beyond the table limit."""


class CapacityError(PowerFreeError):
    exit_code = 3


class ResourceLimit(PowerFreeError):
    """A closure cap or node budget was exhausted."""

    exit_code = 4

    def __init__(self, message, *, limit=None, lower=None, upper=None, incumbent=None):
        super().__init__(message)
        self.limit = limit
        self.lower = lower
        self.upper = upper
        self.incumbent = incumbent


class ThresholdNotMet(PowerFreeError):
    exit_code = 5

    def __init__(self, message, *, minimum=None):
        super().__init__(message)
        self.minimum = minimum


class NotApplicable(PowerFreeError):
    exit_code = 6
