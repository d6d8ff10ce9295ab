"""Stage-tagged failures of the extremal tiling pipeline."""

from __future__ import annotations

from typing import Any


class PipelineError(RuntimeError):
    """A pipeline stage could not complete.

    ``stage`` names the failing step (e.g. ``"R"``, ``"lemma3.dirac"``) and
    ``trace`` carries whatever was built before the failure.
    """

    code = "PIPELINE"

    def __init__(self, stage: str, message: str, trace: Any = None):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.message = message
        self.trace = trace


class PreconditionFailed(PipelineError, ValueError):
    code = "PRECONDITION"


class ExtremalityFailed(PipelineError):
    code = "EXTREMALITY"


class GreedyStuck(PipelineError):
    code = "GREEDY_STUCK"

    def __init__(self, stage: str, vertex: int | None, message: str, trace: Any = None):
        super().__init__(stage, message, trace)
        self.vertex = vertex


class NegativeS(PipelineError):
    code = "NEGATIVE_S"


class DiracFailed(PipelineError):
    code = "DIRAC_FAILED"


class HallFailed(PipelineError):
    code = "HALL_FAILED"


class AbsorberShortage(PipelineError):
    code = "ABSORBER_SHORTAGE"


class VerificationFailed(PipelineError):
    code = "VERIFICATION_FAILED"
