"""Exact symbolic layer: Laurent scalars, noncommutative polynomials, rewriting."""
from .homs import HomSpec, apply_hom, pi_phi
from .laurent import ONE, ZERO, LaurentScalar
from .poly import MATQ, SLNQ, GeneratorSymbol, NCPolynomial, from_text, t, to_text, ts, z, zs
from .relations import (
    boundary_ideal_generators,
    complement_minor,
    pol_relations,
    q_determinant,
    quantum_minor,
    sl_relations,
)
from .rewrite import (
    ANTIHOLOMORPHIC,
    HOLOMORPHIC,
    POL,
    SL,
    RewriteSystem,
    check_confluence,
    graded_dimension,
    normal_form,
    rewrite_system,
    star,
)
from .uq import UqGenerator, uq_action, uq_generators

__all__ = [
    "HomSpec", "apply_hom", "pi_phi", "ONE", "ZERO", "LaurentScalar", "MATQ", "SLNQ",
    "GeneratorSymbol", "NCPolynomial", "from_text", "t", "to_text", "ts", "z", "zs",
    "boundary_ideal_generators", "complement_minor", "pol_relations", "q_determinant",
    "quantum_minor", "sl_relations", "ANTIHOLOMORPHIC", "HOLOMORPHIC", "POL", "SL",
    "RewriteSystem", "check_confluence", "graded_dimension", "normal_form", "rewrite_system",
    "star", "UqGenerator", "uq_action", "uq_generators",
]
