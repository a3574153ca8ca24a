//! Exact Smith normal decompositions over Euclidean domains, simplicial
//! homology over a PID, and persistent-homology barcodes of ℕ-indexed
//! simplicial filtrations computed from graded Smith normal forms.
//!
//! The main entry points are [`matrix::snd`], [`simplicial::homology`] and
//! [`barcode::barcode`]. [`persmod`] holds a brute-force persistence-module
//! oracle that checks barcodes against ranks of induced maps without going
//! through any Smith normal form.

pub mod barcode;
pub mod filtration;
pub mod formats;
pub mod linalg;
pub mod matrix;
pub mod persmod;
pub mod rings;
pub mod simplicial;
#[cfg(test)]
mod test_support;

pub use filtration::{Filtration, FiltrationError, GradedChainBasis};
pub use matrix::{
    graded_snd, snd, verify_snd, ElementaryOp, GradedMatrix, GradedSndResult, Matrix, MatrixError,
    OpKind, Side, SndResult,
};
pub use simplicial::{homology, validate_complex, HomologyDecomposition, Orientation, Simplex, SimplicialComplex};
pub use rings::{EuclideanDomain, Field, Fp, Integers, Poly, PolyRing, PrimeField, Rationals, RingError};
pub use barcode::{
    barcode, betti_at, graded_ifd, p_persistent_betti, persistent_homology, verify_barcode, Bar,
    Barcode, BarcodeError, Chain, GradedIfdSummand, Interval,
};
pub use persmod::{check_interval_decomposition, from_filtration, FiniteTypePersMod, IntervalSpec};
