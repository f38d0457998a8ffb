"""Exception hierarchy shared by all qwave modules.

Each class carries the process exit status the command-line front end maps it to.
"""


class QWaveError(Exception):
    exit_code = 1
    kind = "error"


class ValidationError(QWaveError, ValueError):
    """Bad argument, non-unitary gate, wrong usage of an operation."""

    exit_code = 2
    kind = "validation"


class DomainError(ValidationError):
    """Input outside the mathematical domain of the operation (e.g. gcd(a, M) > 1)."""

    kind = "domain"


class ResourceLimitError(QWaveError):
    """Register or lattice would exceed the fixed memory budget."""

    exit_code = 3
    kind = "resource-limit"


class StateCorruptionError(QWaveError):
    """Norm of a state drifted beyond what unitary evolution allows."""

    exit_code = 1
    kind = "state-corruption"


class ProbabilisticFailure(QWaveError):
    """A randomized algorithm ran out of retries."""

    exit_code = 4
    kind = "probabilistic-failure"

    def __init__(self, message, log=None):
        super().__init__(message)
        self.log = log if log is not None else {}
