"""Support-function metrics between convex sets."""

import numpy as np

from .bodies import uniform_directions
from .errors import InputError

METRIC_DIRECTIONS = 2048


def _support(shape, u):
    if hasattr(shape, "vertices") and not hasattr(shape, "dim"):
        if len(shape.vertices) == 0:
            raise InputError("empty polygon")
    return shape.support(u)


def hausdorff(p, q, count=METRIC_DIRECTIONS):
    """Hausdorff distance of two convex sets: ``max_u |h_P(u) - h_Q(u)|``.

    Either argument may be a :class:`PolygonChain` or a body.
    """
    u = uniform_directions(count)
    return float(np.max(np.abs(_support(p, u) - _support(q, u))))


def width(shape, count=METRIC_DIRECTIONS):
    """Minimal width ``min_u h(u) + h(-u)``."""
    u = uniform_directions(count)
    return float(np.min(_support(shape, u) + _support(shape, -u)))
