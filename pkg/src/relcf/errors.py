"""Exception hierarchy shared by all relcf modules.

Every error raised on purpose derives from :class:`RelcfError` so the CLI can
turn it into a machine-readable object.  ``info()`` returns the payload the
CLI serializes; subclasses extend it with whatever names the violated
invariant and its witness.
"""

from __future__ import annotations


class RelcfError(Exception):
    """Base class for all errors raised by this package."""

    def info(self) -> dict:
        return {"type": type(self).__name__, "message": str(self)}


class ModelMismatchError(RelcfError):
    """Two ring values (or a value and an operation) disagree on the ring model."""


class UnsupportedModelError(RelcfError):
    """The requested operation is not defined on this ring model."""


class InvariantError(RelcfError):
    """A structural invariant of a cell complex failed; message names the witness."""


class DuplicateCellError(InvariantError):
    pass


class UnknownCellError(InvariantError):
    pass


class GradingError(InvariantError):
    pass


class RegularityError(InvariantError):
    pass


class NotLocallyClosedError(RelcfError):
    """A cell set that must be order-convex is not."""


class NotRelativelyOpenError(RelcfError):
    """A split was requested along a subset that is not up-closed in the support."""


class MapError(RelcfError):
    """A cellular map violates monotonicity, totality, or dimension bounds."""


class ComplexMismatchError(RelcfError):
    """Two constructible functions live on different complexes."""


class NotProductError(RelcfError):
    """An operation that integrates along a factor got a non-product complex."""


class FactorMismatchError(RelcfError):
    """Kernel factors do not line up for a transform or a composition."""


class GeometryError(RelcfError):
    """An incidence geometry is malformed (bad point index, empty data)."""


class DocumentError(RelcfError):
    """A document failed to parse or violates its schema."""

    def __init__(self, message: str, *, source: str | None = None,
                 line: int | None = None, col: int | None = None,
                 cause: str | None = None):
        super().__init__(message)
        self.source = source
        self.line = line
        self.col = col
        self.cause = cause

    def info(self) -> dict:
        out = super().info()
        if self.source is not None:
            out["source"] = self.source
        if self.line is not None:
            out["line"] = self.line
        if self.col is not None:
            out["col"] = self.col
        if self.cause is not None:
            out["cause"] = self.cause
        return out


class DemoError(RelcfError):
    """A shipped demo computed something other than its committed result."""
