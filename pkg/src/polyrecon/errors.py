"""Exception types shared across the package."""


class PolyreconError(Exception):
    """Base class for all polyrecon errors."""


class DegeneratePoints(PolyreconError):
    """Two points that must be distinct coincide."""


class InvalidAngleSequence(PolyreconError):
    """A per-vertex angle sequence violates positivity or the < 2*pi sum bound."""


class RankOutOfRange(PolyreconError):
    """A visibility rank lies outside [1, degree]."""


class InvalidIndex(PolyreconError):
    """A vertex index is out of range or indices coincide where forbidden."""


class InvalidPolygon(PolyreconError):
    """A polygon failed validation; carries the validation report."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class GenerationFailed(PolyreconError):
    """Random polygon generation exhausted its retry budget."""


class InconsistentInput(PolyreconError):
    """Angle data cannot belong to any simple polygon."""


class PreconditionViolated(PolyreconError):
    """A witness-sum lookup requires a rank that has not been identified."""


class MalformedGraph(PolyreconError):
    """A visibility graph does not admit the recursive triangulation."""


class NumericallyDegenerate(PolyreconError):
    """A triangle corner angle is too small to place coordinates reliably."""


class SizeMismatch(PolyreconError):
    """Two polygons compared for similarity have different vertex counts."""


class FormatError(PolyreconError):
    """A POLY/ANGLES/GRAPH file does not parse."""
