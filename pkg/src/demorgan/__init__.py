"""Finite-algebra workbench for De Morgan monoids and Dunn monoids."""
from .algebra import CLASSES, DerivedConstants, FiniteAlgebra, axiom_violations, derive, is_member, rl_reduct, validate
from .catalog import NAMES, build, build_Ap, build_Bp, build_sugihara, case_order
from .classify import ClassificationReport, classify, recheck_witness
from .constructions import (
    Congruence, DeductiveFilter, SkewOrderSpec, congruence_of_filter, congruence_reflect, congruences,
    decompose_crystalline, deductive_filters, direct_product, filter_of_congruence, quotient, reflection,
    rigorous_extension, skew_reflection, subalgebra_generated,
)
from .enumeration import (
    ConstraintBundle, PartialAlgebra, canonical_dedupe, complete_partial, enumerate_dmm, enumerate_extensions,
)
from .errors import DemorganError
from .morphisms import (
    Morphism, canonical_form, find_embeddings, find_homomorphisms, is_crystalline, is_isomorphic, is_retract,
    zero_generated_core,
)
from .terms import check_equation, parse_term

__all__ = [
    "CLASSES",
    "DerivedConstants",
    "FiniteAlgebra",
    "axiom_violations",
    "derive",
    "is_member",
    "rl_reduct",
    "validate",
    "NAMES",
    "build",
    "build_Ap",
    "build_Bp",
    "build_sugihara",
    "case_order",
    "ClassificationReport",
    "classify",
    "recheck_witness",
    "Congruence",
    "DeductiveFilter",
    "SkewOrderSpec",
    "congruence_of_filter",
    "congruence_reflect",
    "congruences",
    "decompose_crystalline",
    "deductive_filters",
    "direct_product",
    "filter_of_congruence",
    "quotient",
    "reflection",
    "rigorous_extension",
    "skew_reflection",
    "subalgebra_generated",
    "ConstraintBundle",
    "PartialAlgebra",
    "canonical_dedupe",
    "complete_partial",
    "enumerate_dmm",
    "enumerate_extensions",
    "DemorganError",
    "Morphism",
    "canonical_form",
    "find_embeddings",
    "find_homomorphisms",
    "is_crystalline",
    "is_isomorphic",
    "is_retract",
    "zero_generated_core",
    "check_equation",
    "parse_term",
]

__version__ = "0.1.0"
