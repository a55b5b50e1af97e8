"""Exact computations with baby Verma modules of the dihedral groups I_2(m)."""

from .cyclo import CycloField, CycloNum
from .dihedral import (
    DihedralData,
    DihedralIrrep,
    Element,
    RelationViolation,
    build_group,
    coinvariant_basis,
    irrep,
    irreps,
)
from .verma import (
    BabyVermaRep,
    DecompositionMatrix,
    GradedModule,
    InconsistentSystem,
    NonGenericWarning,
    analyze,
    blocks,
    build_baby_verma,
    check_operator_identities,
    check_relations,
    decomposition_solve,
    dual_verma,
    generic_analysis,
    graded_multiplicities,
    lsimple,
    radical,
)

__all__ = [
    "CycloField",
    "CycloNum",
    "DihedralData",
    "DihedralIrrep",
    "Element",
    "RelationViolation",
    "build_group",
    "coinvariant_basis",
    "irrep",
    "irreps",
    "BabyVermaRep",
    "DecompositionMatrix",
    "GradedModule",
    "InconsistentSystem",
    "NonGenericWarning",
    "analyze",
    "blocks",
    "build_baby_verma",
    "check_operator_identities",
    "check_relations",
    "decomposition_solve",
    "dual_verma",
    "generic_analysis",
    "graded_multiplicities",
    "lsimple",
    "radical",
]
