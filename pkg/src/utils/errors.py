"""Exceptions raised by the placement engine."""

from typing import Any


class PlacementError(Exception):
    """Root of every error the engine raises on purpose."""


class DocumentFormatError(PlacementError):
    """An instance, plan or request-sequence document could not be read."""


class InvalidInstance(PlacementError):
    """Substrate or requests violate a cross-object invariant."""

    def __init__(self, issues: list[Any]):
        self.issues = list(issues)
        summary = "; ".join(str(issue) for issue in self.issues[:5])
        more = f" (+{len(self.issues) - 5} more)" if len(self.issues) > 5 else ""
        super().__init__(f"invalid instance: {summary}{more}")


class EmptyAuthorizedSet(PlacementError):
    """An NF has no node it may be deployed on."""

    def __init__(self, nf_id: str, sfc_id: str | None = None, slice_id: str | None = None):
        self.nf_id = nf_id
        self.sfc_id = sfc_id
        self.slice_id = slice_id
        where = "/".join(part for part in (slice_id, sfc_id, nf_id) if part)
        super().__init__(f"no authorized node for NF {where}")


class NegativeResidual(PlacementError):
    """Subtracting a placement would drive a capacity below zero."""

    def __init__(self, subject: str, amount: float):
        self.subject = subject
        self.amount = amount
        super().__init__(f"residual of {subject} would become {amount:g}")


class ModelTooLarge(PlacementError):
    """The MILP would exceed the configured variable ceiling."""


class InstanceTooLarge(PlacementError):
    """The instance is outside the brute-force oracle's limits."""


class SolutionFileError(PlacementError):
    """An external solver dump could not be decoded."""


class UnknownVariableName(SolutionFileError):
    pass


class NonIntegralBinary(SolutionFileError):
    pass


class ObjectiveMismatch(SolutionFileError):
    pass


class StaleRevision(PlacementError):
    """A request revision is not newer than the stored one."""

    def __init__(self, slice_id: str, revision: int, stored: int):
        self.slice_id = slice_id
        self.revision = revision
        self.stored = stored
        super().__init__(
            f"slice {slice_id}: revision {revision} is not newer than stored revision {stored}"
        )


class GenerationFailed(PlacementError):
    """The random generator could not produce a connected substrate."""


class UnknownPreset(PlacementError):
    pass


class RegressionUndefined(PlacementError):
    """OLS needs at least two distinct x values."""
