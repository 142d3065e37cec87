"""Exception hierarchy shared by all geocurves modules."""


class GeoCurvesError(Exception):
    """Base class for all library errors."""


class InvalidPoint(GeoCurvesError):
    """Point does not belong to the given space (wrong dimension, off-sphere)."""


class NotUnique(GeoCurvesError):
    """Endpoints too far apart for a unique minimizing geodesic."""


class OutOfRange(GeoCurvesError):
    """Scalar argument outside its admissible interval."""


class SpaceMismatch(GeoCurvesError):
    """Operands live in different spaces."""


class NotSimple(GeoCurvesError):
    """Curve has coincident samples where injectivity is required."""


class InvalidStart(GeoCurvesError):
    """Start point of a ball-exit search lies outside the ball."""


class AlgorithmStalled(GeoCurvesError):
    """Step-count guard tripped in the interpolation recursion."""


class ConstructionFailed(GeoCurvesError):
    """Interpolation output failed its simplicity check."""

    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class InfeasibleRequiredPoints(GeoCurvesError):
    """Required partition times cannot be separated by disjoint balls."""


class HypothesisNotMet(GeoCurvesError):
    """Inputs violate the hypotheses of the property being verified."""


class NoConvergence(GeoCurvesError):
    """Refinement failed to contract below tolerance."""


class ShapeError(GeoCurvesError):
    """Tensor operands have mismatched dimension or truncation level."""


class InvalidWord(GeoCurvesError):
    """Word contains letters outside {1..d}."""


class TruncationTooSmall(GeoCurvesError):
    """Requested coefficient lies beyond the stored truncation level."""


class Unsupported(GeoCurvesError):
    """Operation defined only for planar Euclidean input."""


class OrientationError(GeoCurvesError):
    """Polygon has the wrong orientation for this operation."""


class NotJordan(GeoCurvesError):
    """Closed input failed its Jordan (simplicity) check."""


class OnBoundary(GeoCurvesError):
    """Query point lies on the polygon boundary."""


class ImageMismatch(GeoCurvesError):
    """Two curves do not trace the same image."""


class Indeterminate(GeoCurvesError):
    """Signed quantity too close to zero to classify."""


class GenerationFailed(GeoCurvesError):
    """Random curve generator exhausted its rejection budget."""
