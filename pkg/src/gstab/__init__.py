"""Stability conditions, mass-collapse limits and generalized stability data
on finite triangulated category models."""

from .models import (
    SHIFT_WINDOW,
    CategoryModel,
    DGObject,
    Heart,
    ModelError,
    QuotientModel,
    ThickSubcategory,
    UnknownModelError,
    UnknownSymbolError,
    class_of,
    hom_vanishes,
    load_model,
    quotient_model,
    thick_closure,
)
from .stability import (
    DegenerateNormError,
    HNFiltration,
    InvalidStabilityConditionError,
    ModelMismatchError,
    StabilityCondition,
    StabilityError,
    ValidationReport,
    bridgeland_distance,
    hn_filtration,
    mass,
    phases,
    sigma_norm,
    slicing_distance,
    support_constant,
    validate,
)
from .geometry import (
    ChargeSpace,
    CoverPoint,
    DistanceInterval,
    GeometryError,
    charge_distance,
    cover_distance,
    cover_point,
    deck_translate,
    in_dirichlet_domain,
    stab_distance,
)
from .completion import (
    CauchySequencePath,
    ExplicitSequence,
    GeneralizedStabilityCondition,
    InjectivityReport,
    PiLocality,
    QuotientHeart,
    QuotientHeartError,
    SequenceError,
    StrongEquivalence,
    UnresolvableTieError,
    equivalent,
    evaluate,
    injectivity_probe,
    is_pi_local,
    j_images_equal,
    j_map,
    limiting_phase,
    limiting_support,
    massless_subcategory,
    quotient_heart,
    quotient_norm,
    sequence_from_json,
    stabilized_hn,
    strongly_equivalent,
)

__version__ = "0.1.0"
