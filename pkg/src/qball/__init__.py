"""Symbolic and numerical toolkit for the quantum matrix ball."""
from .algebra import (
    HomSpec,
    LaurentScalar,
    NCPolynomial,
    apply_hom,
    check_confluence,
    from_text,
    graded_dimension,
    normal_form,
    rewrite_system,
    t,
    z,
)
from .hopf import TensorPolynomial, antipode, coaction_Dn, comultiply, counit
from .report import CheckRecord, CheckReport

__version__ = "0.1.0"

__all__ = [
    "HomSpec", "LaurentScalar", "NCPolynomial", "apply_hom", "check_confluence", "from_text",
    "graded_dimension", "normal_form", "rewrite_system", "t", "z", "TensorPolynomial", "antipode",
    "coaction_Dn", "comultiply", "counit", "CheckRecord", "CheckReport",
]
