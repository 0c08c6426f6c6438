"""mfkit: exact workbench for matrix factorizations over polynomial quotients."""

from .fields import QQ, PrimeField, Rationals, field_from_name
from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger_basis,
    exact_divide_by_nzd,
    normal_form,
    quotient_dimension,
    reduce_with_cofactors,
)
from .mfcat import (
    MatrixFactorization,
    MfHomotopy,
    MfMorphism,
    coker_presentation,
    compose_morphisms,
    direct_sum,
    dual_mf,
    identity_morphism,
    mapping_cone,
    suspend,
    verify_homotopy,
    verify_mf,
    verify_morphism,
    zero_morphism,
)
from .periodic import (
    ChainLiftInput,
    HomotopyTransportInput,
    PeriodicChainMap,
    PeriodicComplex,
    dual_reduction_check,
    graded_acyclicity_window,
    graded_nullhomotopy_window,
    lift_chain_map,
    reduce_homotopy,
    reduce_morphism,
    reduce_object,
    transport_nullhomotopy,
)
from .poly import MonomialOrder, Polynomial, PolyRing, format_canonical, parse_polynomial
from .tower import Level, RingElt, RingMatrix, RingTower, build_tower, det, validate_ci_presentation
from .workbench import Workbench, load_workbench

__all__ = [
    "QQ",
    "PrimeField",
    "Rationals",
    "field_from_name",
    "MonomialOrder",
    "Polynomial",
    "PolyRing",
    "format_canonical",
    "parse_polynomial",
    "GroebnerBasis",
    "Ideal",
    "buchberger_basis",
    "normal_form",
    "reduce_with_cofactors",
    "exact_divide_by_nzd",
    "quotient_dimension",
    "Level",
    "RingElt",
    "RingMatrix",
    "RingTower",
    "build_tower",
    "det",
    "validate_ci_presentation",
    "MatrixFactorization",
    "MfMorphism",
    "MfHomotopy",
    "verify_mf",
    "verify_morphism",
    "verify_homotopy",
    "identity_morphism",
    "zero_morphism",
    "compose_morphisms",
    "suspend",
    "direct_sum",
    "mapping_cone",
    "dual_mf",
    "coker_presentation",
    "PeriodicComplex",
    "PeriodicChainMap",
    "reduce_object",
    "reduce_morphism",
    "reduce_homotopy",
    "dual_reduction_check",
    "HomotopyTransportInput",
    "transport_nullhomotopy",
    "ChainLiftInput",
    "lift_chain_map",
    "graded_acyclicity_window",
    "graded_nullhomotopy_window",
    "Workbench",
    "load_workbench",
]
