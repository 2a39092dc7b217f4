"""Exact vector-lattice-valued measures, order integrals and regular operators
on finite and countable discrete spaces."""

from .errors import (
    DimensionError,
    EnumerationLimitError,
    InfiniteMeasureError,
    InstanceError,
    NotInDomainError,
    NotIntegrableError,
    NotMonotoneError,
    OrdMeasError,
    SpaceMismatchError,
)
from .instance import Instance, dump_instance, load_instance_file, parse_instance, parse_set
from .integral import (
    SimpleFunction,
    integrate,
    integrate_decomposed,
    integrate_pos,
    monotone_convergence_check,
    triangle_check,
)
from .lattice import (
    ONE_NORM,
    SUP_NORM,
    Infinity,
    LatticeElement,
    LatticeNorm,
    ext_add,
    ext_inf,
    ext_scale,
    ext_sup,
    norm,
    vec,
)
from .measures import (
    PosMeasure,
    SignedMeasure,
    abs_measure,
    counterexample_report,
    evaluate,
    measure_norm,
    neg_part,
    partition_formula,
    pos_part,
    sup_family,
    sup_increasing_sequence,
)
from .operators import RegularOperator, apply, modulus, modulus_oracle, nob_report, rk_inf, rk_sup
from .representation import (
    isomorphism_check,
    measure_to_operator,
    nob_dichotomy_check,
    operator_to_measure,
    psi_embedding_check,
    recover_on_open,
    regularity_transfer_check,
)
from .spaces import NATURALS, FiniteSet, FiniteSpace, NatSet, generate_sigma_algebra, nat_ops, subsets_of

__all__ = [
    "abs_measure",
    "apply",
    "counterexample_report",
    "DimensionError",
    "dump_instance",
    "EnumerationLimitError",
    "evaluate",
    "ext_add",
    "ext_inf",
    "ext_scale",
    "ext_sup",
    "FiniteSet",
    "FiniteSpace",
    "generate_sigma_algebra",
    "InfiniteMeasureError",
    "Infinity",
    "Instance",
    "InstanceError",
    "integrate",
    "integrate_decomposed",
    "integrate_pos",
    "isomorphism_check",
    "LatticeElement",
    "LatticeNorm",
    "load_instance_file",
    "measure_norm",
    "measure_to_operator",
    "modulus",
    "modulus_oracle",
    "monotone_convergence_check",
    "nat_ops",
    "NatSet",
    "NATURALS",
    "neg_part",
    "nob_dichotomy_check",
    "nob_report",
    "norm",
    "NotInDomainError",
    "NotIntegrableError",
    "NotMonotoneError",
    "ONE_NORM",
    "operator_to_measure",
    "OrdMeasError",
    "parse_instance",
    "parse_set",
    "partition_formula",
    "pos_part",
    "PosMeasure",
    "psi_embedding_check",
    "recover_on_open",
    "regularity_transfer_check",
    "RegularOperator",
    "rk_inf",
    "rk_sup",
    "SignedMeasure",
    "SimpleFunction",
    "SpaceMismatchError",
    "subsets_of",
    "sup_family",
    "sup_increasing_sequence",
    "SUP_NORM",
    "triangle_check",
    "vec",
]

__version__ = "0.1.0"
