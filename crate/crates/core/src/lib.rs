//! Exact computations around Hodge gradings of simple Lie algebras and the
//! Jacobian rings of smooth hypersurfaces.
//!
//! * [`rootsys`]: root systems from Cartan matrices.
//! * [`grading`]: gradings by a grading element, level, bracket generation
//!   and the closure lemmas built on them.
//! * [`atypicality`]: expected versus actual codimension counts.
//! * [`jacobian`]: graded Jacobian rings, Hodge numbers, multiplication maps,
//!   coupling length.
//! * [`suite`]: the exhaustive verification grid.

pub mod atypicality;
pub mod grading;
pub mod jacobian;
pub mod linalg;
pub mod rootsys;
pub mod suite;
pub mod verdict;

pub use atypicality::{
    correction_term, expected_codim, forcing_check, is_atypical, nl_bounds, AtypicalityError,
    BoundsReport, CodimInput, CodimVerdict, ForcingReport, NLInput,
};
pub use grading::{
    find_bracket_witness, grade, subalgebra_closure, verify_high_degree_closure,
    verify_positive_part_recovery, BracketWitness, GradedDecomposition, GradingElement,
    GradingError, SubalgebraRootSet,
};
pub use jacobian::{
    abelian_check, coupling_length, g_nonvanishing_certificate, hilbert_dim, hodge_numbers_prim,
    macaulay_check, mult_map, sigma_lambda_rank, HypersurfaceSpec, JacobianError, JacobianRing,
    TangentImage,
};
pub use rootsys::{build_root_system, Bracket, CartanSpec, Root, RootError, RootSystem, SimpleType};
pub use verdict::{Status, VerdictReport};
