//! Generic multigraded Artinian reductions of Stanley–Reisner rings.

mod eval;
mod gorenstein;
mod link;
mod lsop;
mod monomial;
mod reduction;
mod relations;

pub use lsop::{
    default_partition, lsop_from_file, substituted_configuration, symbolic_configuration, symbolic_configuration_with,
    validate_lsop, variable_name, LsopFile, LsopMode, LsopSpec, MAX_LSOP_RETRIES,
};
pub(crate) use monomial::monomials_in;
pub use monomial::{degrevlex_cmp, kappa_transversal_reorder, sort_degrevlex, sr_graded_basis, Monomial, SparsePoly};
pub use reduction::{minimal_nonfaces, Artinian, GradedPiece};
pub use eval::{
    cycle_functional, cycle_weights, lee_evaluation, lee_functional, lee_with_fresh_aux, orientation, AuxPoint, EvalFunctional,
    LeeEvaluator, Normalization, MAX_AUX_RETRIES,
};
pub use gorenstein::{gorensteinification, pairing_matrix, Gorensteinification};
pub use link::{link_reduction, star_restriction, LocalSpec};
pub use relations::{face_relations, RelationPiece};
