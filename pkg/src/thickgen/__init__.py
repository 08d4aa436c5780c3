"""Exact homological calculator for perfect complexes over small
commutative rings: homology, annihilators, supports, and certified
bounds on how many cone steps a complex needs when built from a fixed
generator."""

from .complexes import (
    ChainMap,
    FreeComplex,
    cone,
    cone_inclusion,
    cone_projection,
    direct_sum,
    is_quasi_iso,
    koszul,
    tensor,
    two_term,
    zero_complex,
)
from .errors import EngineError, ParseError
from .generation import (
    BuildWitness,
    Cone,
    Leaf,
    LowerBoundCert,
    NotInThickCert,
    Sum,
    Summand,
    koszul_power_obstruction,
    level_lower_bound,
    principal_power_witness,
    strong_generation_obstruction,
    thick_member,
    validate_witness,
)
from .homology import (
    FPModule,
    ann_module,
    ann_total_homology,
    closed_set,
    homology,
    homology_all,
    resolve_primes,
    supph,
    support_contains,
)
from .ideals import Ideal
from .matrices import Matrix
from .rings import GF, QQ, ZZ, RingElem, UniQuotRing, Zmod, poly_ring
from .snf import hermite_basis, kernel_basis, smith_normal_form, solve_exact
from .spectrum import idempotents, is_connected_spec, nilpotence_lemma_check, spec_description

__version__ = "0.1.0"

__all__ = [
    "ChainMap",
    "FreeComplex",
    "cone",
    "cone_inclusion",
    "cone_projection",
    "direct_sum",
    "is_quasi_iso",
    "koszul",
    "tensor",
    "two_term",
    "zero_complex",
    "EngineError",
    "ParseError",
    "BuildWitness",
    "Cone",
    "Leaf",
    "LowerBoundCert",
    "NotInThickCert",
    "Sum",
    "Summand",
    "koszul_power_obstruction",
    "level_lower_bound",
    "principal_power_witness",
    "strong_generation_obstruction",
    "thick_member",
    "validate_witness",
    "FPModule",
    "ann_module",
    "ann_total_homology",
    "closed_set",
    "homology",
    "homology_all",
    "resolve_primes",
    "supph",
    "support_contains",
    "Ideal",
    "Matrix",
    "GF",
    "QQ",
    "ZZ",
    "RingElem",
    "UniQuotRing",
    "Zmod",
    "poly_ring",
    "hermite_basis",
    "kernel_basis",
    "smith_normal_form",
    "solve_exact",
    "idempotents",
    "is_connected_spec",
    "nilpotence_lemma_check",
    "spec_description",
    "__version__",
]
