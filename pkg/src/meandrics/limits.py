"""Work limits and the error types shared by every module."""

from __future__ import annotations

import os

DEFAULT_MAX_WORK = 60_000_000
ENV_VAR = "MEANDRICS_MAX_WORK"


class MeandricsError(Exception):
    """Base class for library errors."""


class DimensionError(MeandricsError, ValueError):
    """Operands of incompatible order or size."""


class DomainError(MeandricsError, ValueError):
    """Input outside the mathematical domain of a formula."""


class ConsistencyError(MeandricsError, ArithmeticError):
    """An identity that must hold exactly was violated."""


class ResourceLimitError(MeandricsError):
    """The requested computation exceeds the configured work limit.

    ``partial`` carries whatever was completed before stopping, when that
    is meaningful (for instance the lower rows of a semi-meander table).
    """

    def __init__(self, message: str, work: int, limit: int, partial=None):
        super().__init__(message)
        self.work = work
        self.limit = limit
        self.partial = partial


def default_max_work() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_MAX_WORK
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise DomainError(f"{ENV_VAR} must be positive")
    return value


def check_work(work: int, max_work: int | None, what: str) -> None:
    limit = default_max_work() if max_work is None else max_work
    if work > limit:
        raise ResourceLimitError(
            f"{what} needs {work} work units, limit is {limit}", work, limit
        )
