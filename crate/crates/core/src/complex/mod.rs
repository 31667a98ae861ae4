//! Simplicial complexes, colorings, flag vectors and constructions.

pub mod coloring;
pub mod construct;
pub mod flag;
pub mod io;
pub mod simplicial;

pub use coloring::{binomial, check_balanced, BalancedComplex, Coloring, MultiDeg};
pub use flag::{
    f_vector, flag_f_from_h, flag_f_of, flag_f_vector, flag_h_of, flag_h_prime_double_prime, flag_h_vector, h_vector,
    FlagKind, FlagVector,
};
pub use simplicial::{Face, SimplicialComplex};
