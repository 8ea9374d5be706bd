//! Cabled Khovanov-Rozansky homology of the unknot and unlink, the arc ring
//! `H^n`, its center, and the colimit computing the framed unknot invariant.

pub mod arcring;
pub mod cabled;
pub mod center;
pub mod colimit;
pub mod error;
pub mod frobenius;
pub mod intlinalg;
pub mod lincomb;
pub mod partitions;

pub use error::Error;
