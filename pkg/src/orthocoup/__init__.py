"""Exact triple-product integrals of classical orthogonal polynomials and the
coupling coefficients built from them: Sp(4) semistretched isoscalar factors,
SO(n) canonical and semicanonical isoscalar factors, and U(n) class-two
coefficients.
"""
from .exact import (
    DEFAULT_PREC,
    DomainError,
    ExactReal,
    HalfInt,
    LatticeError,
    beta_half,
    gamma_half,
    nabla,
    triangle_e,
)
from .oracle import (
    gauss_jacobi_rule,
    quad_group_3j,
    quad_triple_gegenbauer,
    quad_triple_jacobi,
    regge_equivalence_check,
)
from .orthopoly import (
    GegenbauerSpec,
    JacobiSpec,
    gegenbauer_eval,
    gegenbauer_linearization,
    jacobi_eval,
)
from .son import (
    PHASE_SYSTEMS,
    SOnChainLabel,
    cg_isofactor_canonical,
    cg_isofactor_semicanonical,
    duplication_isofactor,
    extreme_3j,
    isofactor_canonical,
    isofactor_semicanonical,
    reduced_mel_canonical,
    reduced_mel_tree,
    so_dim,
)
from .sp4 import (
    Sp4Irrep,
    Sp4SumArray,
    eleven_j,
    equal_rows_s_tilde,
    s_script,
    s_tilde,
    s_tilde_report,
    semistretched_isofactor,
)
from .su2 import su2_6j, su2_cg, wigner_3j
from .triple_integrals import (
    GEGENBAUER_FORMS,
    JACOBI_FORMS,
    FormResult,
    GegenbauerTripleSpec,
    TripleIntegralSpec,
    UnsupportedFormError,
    term_count_bound,
    triple_gegenbauer_integral,
    triple_gegenbauer_report,
    triple_jacobi_integral,
    triple_jacobi_report,
    two_gegenbauer_integral,
)
from .un import (
    UnChainLabel,
    UnMixedIrrep,
    su3_isofactor,
    un_3j_step,
    un_dim,
    un_extreme_3j_norm,
    un_reduced_mel,
)

__all__ = [
    "DEFAULT_PREC",
    "DomainError",
    "ExactReal",
    "FormResult",
    "GEGENBAUER_FORMS",
    "GegenbauerSpec",
    "GegenbauerTripleSpec",
    "HalfInt",
    "JACOBI_FORMS",
    "JacobiSpec",
    "LatticeError",
    "PHASE_SYSTEMS",
    "SOnChainLabel",
    "Sp4Irrep",
    "Sp4SumArray",
    "TripleIntegralSpec",
    "UnChainLabel",
    "UnMixedIrrep",
    "UnsupportedFormError",
    "beta_half",
    "cg_isofactor_canonical",
    "cg_isofactor_semicanonical",
    "duplication_isofactor",
    "eleven_j",
    "equal_rows_s_tilde",
    "extreme_3j",
    "gamma_half",
    "gauss_jacobi_rule",
    "gegenbauer_eval",
    "gegenbauer_linearization",
    "isofactor_canonical",
    "isofactor_semicanonical",
    "jacobi_eval",
    "nabla",
    "quad_group_3j",
    "quad_triple_gegenbauer",
    "quad_triple_jacobi",
    "reduced_mel_canonical",
    "reduced_mel_tree",
    "regge_equivalence_check",
    "s_script",
    "s_tilde",
    "s_tilde_report",
    "semistretched_isofactor",
    "so_dim",
    "su2_6j",
    "su2_cg",
    "su3_isofactor",
    "term_count_bound",
    "triangle_e",
    "triple_gegenbauer_integral",
    "triple_gegenbauer_report",
    "triple_jacobi_integral",
    "triple_jacobi_report",
    "two_gegenbauer_integral",
    "un_3j_step",
    "un_dim",
    "un_extreme_3j_norm",
    "un_reduced_mel",
    "wigner_3j",
]

__version__ = "0.1.0"
