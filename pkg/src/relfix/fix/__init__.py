from .common import fixed_set, qfp_set
from .derivation import (
    LIMIT,
    SUCCESSOR,
    Derivation,
    build_derivable,
    check_derivation,
    derivation_fp,
    least_fp_mono,
)
from .kleene import bottoms, kleene_iterates, kleene_least_equivalence, kleene_qfps
from .quotient import (
    Quotient,
    build_quotient,
    least_qfp_attractive,
    qfp_sup_in_class,
    verify_qfp_complete,
)
from .sm import sm_closed, sm_core_set, sm_qfp

__all__ = [
    "LIMIT", "SUCCESSOR", "Derivation", "Quotient",
    "bottoms", "build_derivable", "build_quotient", "check_derivation",
    "derivation_fp", "fixed_set", "kleene_iterates", "kleene_least_equivalence",
    "kleene_qfps", "least_fp_mono", "least_qfp_attractive", "qfp_set",
    "qfp_sup_in_class", "sm_closed", "sm_core_set", "sm_qfp", "verify_qfp_complete",
]
