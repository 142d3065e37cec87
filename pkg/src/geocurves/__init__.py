"""Simple piecewise geodesic interpolation of simple and Jordan curves,
with p-variation, Young integration, path signatures and polygon-moment
verification tools."""

from .curves import ContinuityReport, SampledCurve
from .geometry import GeodesicSegment, Space, distance, geodesic, geodesic_eval
from .interpolate import (JordanStageReport, Partition, PiecewiseGeodesic,
                          jordan_interpolate, last_exit_time, simple_interpolate,
                          verify_crossing_intersection, verify_radial_deviation)
from .moments import (GreenReport, MomentVector, ReparamResult, greens_check,
                      interior_indicator, moments_from_geometry,
                      moments_from_signature, orientation_from_signature,
                      polygon_moment, reparam_recover, signed_area)
from .pvariation import (PVarResult, YoungResult, p_variation, young_bound_check,
                         young_integral, zeta)
from .signature import (TruncatedTensor, chen_product, mesh_subsample,
                        path_signature, refinement_coefficient_gaps,
                        segment_signature)
from .simplicity import (Intersection, IntersectKind, SimplicityVerdict,
                         is_simple, polyline_is_simple, segments_intersect)

__version__ = "0.1.0"

__all__ = [
    "ContinuityReport", "SampledCurve", "GeodesicSegment", "Space",
    "distance", "geodesic", "geodesic_eval", "JordanStageReport", "Partition",
    "PiecewiseGeodesic", "jordan_interpolate", "last_exit_time",
    "simple_interpolate", "verify_crossing_intersection", "verify_radial_deviation",
    "GreenReport", "MomentVector", "ReparamResult", "greens_check",
    "interior_indicator", "moments_from_geometry", "moments_from_signature",
    "orientation_from_signature", "polygon_moment", "reparam_recover",
    "signed_area", "PVarResult", "YoungResult", "p_variation",
    "young_bound_check", "young_integral", "zeta", "TruncatedTensor",
    "chen_product", "mesh_subsample", "path_signature",
    "refinement_coefficient_gaps", "segment_signature", "Intersection",
    "IntersectKind", "SimplicityVerdict", "is_simple", "polyline_is_simple",
    "segments_intersect",
]
