"""Exception types shared across the package."""


class QCloneError(Exception):
    """Base class for all qclone errors."""


class DimensionError(QCloneError):
    """Operands have incompatible or unsupported dimensions."""


class HermiticityError(QCloneError):
    """A matrix expected to be Hermitian is not, beyond tolerance."""


class InvalidStateError(QCloneError):
    """A candidate density matrix violates positivity/trace/Hermiticity."""


class NoUniversalMachineError(QCloneError):
    """No state-independent parameter choice exists for the requested machine."""


class InfeasibleMachineError(QCloneError):
    """Machine parameters admit no realization as actual machine vectors."""


class ClosedFormInconsistencyError(QCloneError):
    """A closed-form channel output failed the density-matrix invariants.

    Carries the offending matrix so callers can inspect how far from
    physical the printed formula landed.
    """

    def __init__(self, message, variant=None, output=None, matrix=None):
        super().__init__(message)
        self.variant = variant
        self.output = output
        self.matrix = matrix


class GridMismatchError(QCloneError):
    """Two scan record lists do not share the same parameter grid."""


class UsageError(QCloneError):
    """Invalid command-line arguments or option combinations."""
