"""Exception hierarchy shared by every horomean module."""


class HoromeanError(Exception):
    """Base class for all library errors."""


class DomainError(HoromeanError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(HoromeanError, IndexError):
    """An argument exceeds the limit of the backing prime table."""


class TableLoadError(HoromeanError):
    """A cached prime table is malformed, truncated or fails its checksum."""


class TableVersionError(TableLoadError):
    """A cached prime table carries an unknown header version."""


class UnsupportedFunctionError(HoromeanError, ValueError):
    """A function's prime values are not of the form e^{2 pi i / d}."""


class ConsistencyError(HoromeanError, ArithmeticError):
    """Two independent computations of the same quantity disagree."""
