"""Exception hierarchy for extscale."""

from __future__ import annotations

from typing import Sequence


class ExtScaleError(Exception):
    """Base class for all extscale errors."""


class WeightDomainError(ExtScaleError, ValueError):
    """Weight evaluated outside [1, inf) or built from invalid parameters."""


class PreconditionError(ExtScaleError, ValueError):
    """An index or order precondition of an operation is violated."""


class IncompatibleDataError(ExtScaleError, ValueError):
    """Boundary-value data violate the range (compatibility) condition.

    Attributes:
        defect: One defect value per cokernel basis element
    """

    def __init__(self, message: str, defect: Sequence[complex]) -> None:
        super().__init__(message)
        self.defect = list(defect)


class SolverError(ExtScaleError, RuntimeError):
    """A mode solve or radial quadrature failed."""


class ConfigError(ExtScaleError, ValueError):
    """Experiment configuration could not be loaded or validated.

    Attributes:
        diagnostics: Human-readable problems, one per entry
    """

    def __init__(self, message: str, diagnostics: Sequence[str] = ()) -> None:
        self.diagnostics = list(diagnostics) or [message]
        super().__init__("; ".join([message, *diagnostics]) if diagnostics else message)
