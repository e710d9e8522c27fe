//! Group-ring homological algebra over `Z_k`, labelled simplicial complexes
//! and the combinatorial Stokes and Tucker theorems built on them.

pub mod acceptance;
pub mod dold;
pub mod error;
pub mod homalg;
pub mod io;
pub mod labelling;
pub mod resolution;
pub mod ring;
pub mod simplicial;
pub mod stokes;
pub mod tucker;

pub use error::{Error, Result};
pub use ring::{GroupRingElement, RingSpec};

pub type IntMatrix = homalg::Matrix<num_bigint::BigInt>;
