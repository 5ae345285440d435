"""Truncated tensor-power operators and the representations built from them."""
from .fock import FockRepresentation, FockVector, fock_apply, fock_basis, fock_operator
from .norms import operator_norm_estimate
from .operators import LeakError, SparseTensorOperator, TruncationConfig
from .paths import PathDiagram, enumerate_paths, fock_generator
from .reps import (
    BoundaryRepresentation,
    CoherentRepresentation,
    boundary_rep,
    character_chi,
    coherent_rep,
    finite_dilation,
    split_A_B,
)

__all__ = [
    "FockRepresentation", "FockVector", "fock_apply", "fock_basis", "fock_operator",
    "operator_norm_estimate", "LeakError", "SparseTensorOperator", "TruncationConfig",
    "PathDiagram", "enumerate_paths", "fock_generator", "BoundaryRepresentation",
    "CoherentRepresentation", "boundary_rep", "character_chi", "coherent_rep",
    "finite_dilation", "split_A_B",
]
