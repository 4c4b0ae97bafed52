"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class GlueGraphError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(GlueGraphError, ValueError):
    """Malformed GFMT text, script text, or an out-of-range vertex index."""


class SizeCapError(GlueGraphError, ValueError):
    """A brute-force routine was asked to work beyond its vertex cap."""


class MalformedGluingError(GlueGraphError, ValueError):
    """Embeddings that disagree on the pattern or violate incidence."""


class GuardParameterError(GlueGraphError, ValueError):
    """A guard needs parameters (faces, cycles) that were not supplied."""


class GuardRejected(GlueGraphError):
    """A script step failed one of the active guards."""

    def __init__(self, step: int, guard: str, detail: str = ""):
        self.step = step
        self.guard = guard
        msg = f"step {step}: guard {guard} rejected the gluing"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class ScriptError(GlueGraphError, ValueError):
    """Dangling references, empty scripts and similar structural faults."""


class NotPlanarError(GlueGraphError, ValueError):
    """Face machinery was handed a nonplanar host."""


class InternalInconsistency(GlueGraphError, RuntimeError):
    """A post-verification that should be impossible has failed."""


class UnknownClassError(GlueGraphError, KeyError):
    """Lookup of a class id or special-basis name that is not registered."""
