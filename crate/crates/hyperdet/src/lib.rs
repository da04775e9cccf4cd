//! Exact determinants (discriminants) of multidimensional matrices.
//!
//! A `d`-dimensional matrix is the coefficient array of a `d`-linear form;
//! its determinant is the polynomial condition for the critical system of
//! the form to have a solution with all-nonzero coordinates. This crate
//! computes such determinants exactly:
//!
//! - [`determinants::det_boundary`] — the combinatorial signed-sum engine
//!   for boundary formats `n_1 x ... x n_d x m_d`;
//! - [`determinants::det_pencil_nn2`] — the pencil-discriminant method for
//!   `n x n x 2` formats (the classical route to the 2x2x2 quartic);
//! - [`determinants::closed_det`] — the closed determinant, the product of
//!   the determinants of all minors;
//! - [`determinants::hyperplucker`] — boundary-format maximal minors of
//!   grassman-format matrices;
//! - degeneracy oracles ([`determinants::make_degenerate`],
//!   [`determinants::pencil_rank_drop_oracle`]) that certify every result
//!   against independently constructed witnesses.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals,
//! canonical sparse polynomials, fraction-free elimination. Every symbolic
//! result is deterministic and byte-reproducible, independent of worker
//! count.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `hyperdet` binary for the file-based command-line interface.

pub mod cli;
pub mod determinants;
pub mod exactalg;
pub mod mdmatrix;
pub mod qpaths;
