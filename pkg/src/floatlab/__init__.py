"""Convex floating bodies, their curvature, and homothety tests."""

from .bodies import (Affine, Ellipsoid, LpBall, Polygon, PolygonChain, apply_affine,
                     boundary_point, centroid, contains, disk, ellipse, ellipsoid,
                     gauss_curvature, lp_ball, lp_curvature, normal_at, polygon,
                     regular_polygon, square, support, unit_ball_volume, volume)
from .capvol import CutResult, cap_volume, cut_level, cut_levels
from .curvature import QMatrix, c_constant, floating_curvature, limit_ratio, q_matrix
from .errors import (AmbiguityError, ConvergenceError, ConvexityError, DegenerateResultError,
                     DomainError, FloatlabError, InputError, NotPositiveDefiniteError,
                     NumericError, UnsupportedError)
from .floating import FloatingBodyResult, floating_body
from .genbodies import (GenBodyResult, convolution_body, illumination_body, polar_area,
                        polygon_intersection_area, santalo_region)
from .homothety import (PettyScan, ThresholdInputs, ThresholdReport, hausdorff,
                        homothety_check, homothety_defect, petty_scan, threshold, width)

__version__ = "0.1.0"
