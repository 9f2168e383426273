# cg3/errors.py
from __future__ import annotations


class Cg3Error(RuntimeError):
    """Base class for failures raised by the engine."""


class NotAWeightVector(Cg3Error):
    pass


class SingularInverse(Cg3Error):
    pass


class NotInSpan(Cg3Error):
    pass


class RankDeficient(Cg3Error):
    pass


class RejectSplit(Cg3Error, ValueError):
    pass


class InvalidDiagram(Cg3Error, ValueError):
    pass


class InvalidLabel(Cg3Error, ValueError):
    pass


class InconsistentTerm(Cg3Error):
    """A coefficient path produced Γ-parameters that do not match a GT diagram."""
