"""Exception types raised by the engine."""


class OrdMeasError(Exception):
    """Base class for every error raised by ordmeas."""


class DimensionError(OrdMeasError, ValueError):
    pass


class SpaceMismatchError(OrdMeasError, ValueError):
    pass


class EnumerationLimitError(OrdMeasError, ValueError):
    """A brute-force enumeration would exceed the atom bound."""


class InfiniteMeasureError(OrdMeasError, ValueError):
    pass


class NotIntegrableError(OrdMeasError, ValueError):
    pass


class NotInDomainError(OrdMeasError, ValueError):
    pass


class NotMonotoneError(OrdMeasError, ValueError):
    pass


class InstanceError(OrdMeasError, ValueError):
    """Malformed or inconsistent instance file."""
