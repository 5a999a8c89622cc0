"""Cyclic covers of projective space: models, fibre splitting, point
enumeration, the height audit, and explicit constructions."""
from .audit import DEFAULT_EPSILON, AuditRow, AuditSummary, summarize, vojta_audit
from .constructions import (
    ConstructionError,
    DescendedModel,
    FiberCurve,
    descend_involution,
    generic_fiber,
    is_smooth_conic,
    jacobian_spot_check,
    project_from_point,
)
from .enumerate import enumerate_points, point_sort_key
from .fibers import FiberClass, FiberKind, classify, classify_fiber, classify_fiber_quadratic
from .model import (
    CoverFileError,
    CyclicCoverModel,
    canonical_multiplier,
    fermat_cover,
    residue_degree_options,
    vojta_threshold,
)

__all__ = [
    "DEFAULT_EPSILON",
    "AuditRow",
    "AuditSummary",
    "ConstructionError",
    "CoverFileError",
    "CyclicCoverModel",
    "DescendedModel",
    "FiberClass",
    "FiberCurve",
    "FiberKind",
    "canonical_multiplier",
    "classify",
    "classify_fiber",
    "classify_fiber_quadratic",
    "descend_involution",
    "enumerate_points",
    "fermat_cover",
    "generic_fiber",
    "is_smooth_conic",
    "jacobian_spot_check",
    "point_sort_key",
    "project_from_point",
    "residue_degree_options",
    "summarize",
    "vojta_audit",
    "vojta_threshold",
]
