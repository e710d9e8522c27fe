//! Exact integer linear algebra: Smith normal form, solving over `Z` and
//! `Z/m`, and reduced simplicial homology.

mod homology;
mod matrix;
mod snf;
mod solve;

pub use homology::{
    boundary_matrix, homology_retract_check, reduced_homology, HomologyGroup, RetractReport,
};
pub use matrix::Matrix;
pub use snf::{smith_normal_form, SmithDecomposition};
pub use solve::solve_linear;
