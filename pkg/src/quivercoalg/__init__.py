"""Exact computations with quivers, path coalgebras, their localizations and comodules."""

from __future__ import annotations

__version__ = "0.1.0"

from .coalgebra import (
    GradedSubcoalgebra,
    TensorExpansion,
    counit,
    delta,
    delta_elem,
    full_path_coalgebra,
    is_admissible,
    is_subcoalgebra,
    subcoalgebra_closure,
    tameness_diagnostic,
)
from .comodules import (
    FinComodule,
    LengthVector,
    comodule_of_eC,
    cotensor_section,
    direct_sum,
    hom_simple,
    length_vector,
    quotient_functor,
    simple,
    socle,
    validate,
)
from .errors import AmbientMismatch, ContractError, DimensionOverflow, ParseError, QuiverCoalgError
from .linalg import PathVector, Subspace, intersect, member, orthogonal, parse_pathvector, rref
from .localization import (
    Localization,
    LocalizedQuiver,
    classify_idempotent,
    localize_coalgebra,
    localized_quiver,
    tail_space,
)
from .quiver import (
    Arrow,
    Path,
    Quiver,
    cellular_decomposition,
    enumerate_cells,
    enumerate_paths,
    enumerate_tails,
    is_acyclic,
    is_cell,
    is_intervally_finite_upto,
    is_tail,
    tail_decomposition,
)
from .relations import (
    RelationIdeal,
    coalgebra_of_relations,
    criterion_witness,
    relations_of_coalgebra,
    truncated_ideal_span,
)
