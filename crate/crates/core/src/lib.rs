pub mod artinian;
pub mod complex;
pub mod error;
pub mod field;
pub mod homology;
pub mod lefschetz;
pub mod linalg;
pub mod poly;
pub mod verdict;

pub use complex::{BalancedComplex, Coloring, FlagVector, MultiDeg, SimplicialComplex};
pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, Gf2k, Gfp, Rationals};
pub use lefschetz::{CheckReport, CheckVerdict, LefschetzConfig};
pub use linalg::Matrix;
pub use poly::{MPoly, RatFunc, RatFuncField};
pub use verdict::Verdict;
