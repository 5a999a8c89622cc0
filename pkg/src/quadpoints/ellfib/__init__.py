"""Genus-one and conic fibrations over Q(t): group law, quartic models,
torsion tests, sections and lifts of their points."""
from .quartic import (
    QuarticError,
    QuarticModel,
    QuarticPoint,
    QuarticTransform,
    quartic_to_weierstrass,
    taylor_shift,
)
from .sections import (
    DEFAULT_SECTION_LIMIT,
    BadReductionError,
    ConicParametrization,
    LiftedPoint,
    MissingGeneratorError,
    Section,
    SectionPoleError,
    conic_parametrize,
    generate_sections,
    lift_to_quadratic_point,
    paper_conic_constant,
    paper_cover,
    paper_quartic,
    quartic_is_smooth_at,
    specialize_fiber_point,
    specialize_section,
)
from .weierstrass import (
    MAZUR_BOUND,
    ECPoint,
    NotOnCurveError,
    SingularCurveError,
    TorsionResult,
    WeierstrassModel,
    ec_add,
    ec_mul,
    ec_neg,
    integral_short_model,
    is_torsion,
)

__all__ = [
    "BadReductionError",
    "ConicParametrization",
    "DEFAULT_SECTION_LIMIT",
    "ECPoint",
    "LiftedPoint",
    "MAZUR_BOUND",
    "MissingGeneratorError",
    "NotOnCurveError",
    "QuarticError",
    "QuarticModel",
    "QuarticPoint",
    "QuarticTransform",
    "Section",
    "SectionPoleError",
    "SingularCurveError",
    "TorsionResult",
    "WeierstrassModel",
    "conic_parametrize",
    "ec_add",
    "ec_mul",
    "ec_neg",
    "generate_sections",
    "integral_short_model",
    "is_torsion",
    "lift_to_quadratic_point",
    "paper_conic_constant",
    "paper_cover",
    "paper_quartic",
    "quartic_is_smooth_at",
    "quartic_to_weierstrass",
    "specialize_fiber_point",
    "specialize_section",
    "taylor_shift",
]
