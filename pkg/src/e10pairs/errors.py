"""Exception types shared by all modules.

The CLI maps these onto exit codes, so each failure class has one type.
"""


class E10PairsError(Exception):
    exit_code = 1


class DomainError(E10PairsError, ValueError):
    """An argument is outside the domain of the operation."""

    exit_code = 2


class DegenerateLattice(E10PairsError, ValueError):
    exit_code = 3


class UnsupportedConfiguration(E10PairsError):
    """A local configuration whose mass contribution is not implemented."""

    exit_code = 4


class DimensionUnsupported(UnsupportedConfiguration):
    pass


class NotAnIsometry(E10PairsError, ValueError):
    exit_code = 2


class NotSaturated(E10PairsError, ValueError):
    exit_code = 2
