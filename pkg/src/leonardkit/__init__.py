"""Exact computations with Leonard systems, their descendents and balanced bilinear forms."""

from .askey import (
    expansion_identity_check,
    hypergeometric_2F1,
    krawtchouk_identity_check,
    orthogonality_sum,
    orthogonality_table,
    u_polynomials,
)
from .descent import (
    DescentWitness,
    admissible,
    construct_descendent,
    descendent_endpoints,
    existence_probe,
    is_descendent,
)
from .errors import LeonardError
from .fields import GF, QQ, FieldElement, FieldSpec
from .forms import (
    BalancedForm,
    build_balanced_form,
    check_balanced,
    compose,
    dual_objects_check,
    induce_descendent,
    projection_maps,
    sigma_intertwine_check,
    uniqueness_dimension,
)
from .leonard import (
    LeonardSystem,
    check_axioms,
    d4_apply,
    extract_parameter_array,
    from_parameter_array,
    nu_and_k,
    standard_form,
)
from .linalg import Matrix, Subspace
from .params import CaseParams, ParameterArray, instantiate, make_case, validate
from .polynomial import Polynomial

__version__ = "0.1.0"

__all__ = [
    "BalancedForm",
    "CaseParams",
    "DescentWitness",
    "FieldElement",
    "FieldSpec",
    "GF",
    "LeonardError",
    "LeonardSystem",
    "Matrix",
    "ParameterArray",
    "Polynomial",
    "QQ",
    "Subspace",
    "admissible",
    "build_balanced_form",
    "check_axioms",
    "check_balanced",
    "compose",
    "construct_descendent",
    "d4_apply",
    "descendent_endpoints",
    "dual_objects_check",
    "existence_probe",
    "expansion_identity_check",
    "extract_parameter_array",
    "from_parameter_array",
    "hypergeometric_2F1",
    "induce_descendent",
    "instantiate",
    "is_descendent",
    "krawtchouk_identity_check",
    "make_case",
    "nu_and_k",
    "orthogonality_sum",
    "orthogonality_table",
    "projection_maps",
    "sigma_intertwine_check",
    "standard_form",
    "u_polynomials",
    "uniqueness_dimension",
    "validate",
]
