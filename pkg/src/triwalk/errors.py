"""Exception hierarchy shared by all triwalk modules.

Every error carries a short machine-readable ``code`` so that callers
(notably the CLI) can map failures to stable exit codes and messages
without parsing prose.
"""
from __future__ import annotations


class TriwalkError(Exception):
    """Base class for all triwalk errors."""

    code = "error"


class EdgeListError(TriwalkError, ValueError):
    """Base class for edge-list ingestion failures."""

    code = "edge-list"


class EdgeListSyntaxError(EdgeListError):
    code = "bad-token"


class LoopEdgeError(EdgeListError):
    code = "loop-edge"


class DuplicateEdgeError(EdgeListError):
    code = "duplicate-edge"


class DisconnectedGraphError(EdgeListError):
    code = "disconnected"


class InvalidVertexError(TriwalkError, ValueError):
    code = "unknown-vertex"


class InvalidArcError(TriwalkError, ValueError):
    code = "unknown-arc"


class PartitionError(TriwalkError, ValueError):
    """Malformed partition data (file syntax or structural violations)."""

    code = "bad-partition"


class SearchBudgetExceeded(TriwalkError):
    """Triangulation search hit its node-expansion limit before deciding."""

    code = "search-budget"


class NonSymmetricMatrixError(TriwalkError, ValueError):
    code = "non-symmetric"


class NonUnitaryMatrixError(TriwalkError, ValueError):
    code = "non-unitary"


class SpectralDomainError(TriwalkError, ValueError):
    """Input spectrum lies outside the domain a mapping theorem allows."""

    code = "spectral-domain"


class NumericalCheckError(TriwalkError):
    """A numerical post-condition (residual, orthonormality) failed."""

    code = "numerical"


class DimensionCapExceeded(TriwalkError):
    """Dense computation refused: problem size above the configured cap."""

    code = "dimension-cap"
