//! Exact structure-constant computations for finite-dimensional quasi-Hopf
//! algebras: presentations with full axiom validation, derived gauge data,
//! quantum doubles with their quasi-triangular structure, module theory with
//! quantum dimensions, and the integral/cointegral pipeline. All arithmetic
//! is exact, over Q or a fixed cyclotomic extension.

pub mod algebra;
pub mod double;
pub mod error;
pub mod gallery;
pub mod integrals;
pub mod linalg;
pub mod rep;
pub mod scalar;

pub use algebra::{
    compute_pack, compute_pq, compute_twist, identity_suite, op_cop, parse_presentation,
    presentation_to_json, AlgebraPresentation, AxiomCheck, DerivedPack, DualElement, OppositeKind,
    Pipe, PresentationData, ValidationReport,
};
pub use double::{
    build_double, build_omega, double_multiply, pair_index, split_index, verify_quasitriangular,
    DoublePresentation, OmegaElement,
};
pub use error::{Error, Result};
pub use gallery::{
    by_name, cocycle_cyclic, dpr_double, dual_group_algebra_twisted, group_algebra, sweedler_h4,
    GalleryItem, GroupTable, ThreeCocycle,
};
pub use integrals::{
    compute_integral_data, conjecture_probe, is_semisimple, normalize_pair, projection_p,
    projection_p_tilde, rank_via_integrals, seeded_endomorphism, solve_cointegral,
    solve_integrals, trace_formula, trace_formula_kernel, IntegralData, RankReport,
    TraceFormulaKernel,
};
pub use linalg::{Matrix, SparseTensor, TensorElement, Variance};
pub use rep::{
    associator, associator_inv, braiding, compute_u_eta, double_eta_closed_form,
    double_u_closed_form, double_u_eta, dual_ev_coev, kron, module_algebra_report,
    qdim_closed_form, qdim_double_regular, qdim_schrodinger, qdim_triple, quantum_dimension,
    schrodinger_action, schrodinger_action_direct, schrodinger_action_via_coaction,
    smash_mult_tensor, yd_left_coaction, yd_left_coaction_alt, yd_right_coaction, ModuleAction,
    QdimReport, UElements,
};
pub use scalar::{euler_phi, FieldContext, Scalar};
