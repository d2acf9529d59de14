//! Compact wavelet matrices of rank m and of order and degree N.
//!
//! A wavelet matrix is a square matrix polynomial A(z) = A_0 + A_1 z + ...
//! + A_N z^N that is paraunitary: A(z) Ã(z) = I, where Ã is the
//! coefficientwise-conjugated transpose in z^{-1}. Equivalently, the rows
//! are filters satisfying the shifted orthogonality relations of
//! multiresolution analysis. This crate provides:
//!
//! - a one-to-one parametrization of such matrices (normalized so that
//!   A(1) = I and the degree is tight) by points of F^{(m-1)N}, in both
//!   directions ([`parametrize`]);
//! - unique factorization into primitive linear factors and the reverse
//!   product ([`factorize`]);
//! - completion of a full matrix from its first row ([`complete`]);
//! - exact rational approximation: replacing a float matrix by a nearby
//!   one with Gaussian-rational entries that satisfies the orthogonality
//!   equations identically ([`approx`]).
//!
//! All algorithms use field operations only (no square roots) and run
//! unchanged over two scalar backends: complex doubles and exact Gaussian
//! rationals ([`field`]).

pub mod approx;
pub mod complete;
pub mod error;
pub mod factorize;
pub mod field;
pub mod io;
pub mod laurent;
pub mod mat;
pub mod parametrize;
pub mod wavelet;

pub use approx::{rational_approximate, ApproxReport};
pub use complete::{complete_from_row, RowVector};
pub use error::{Error, Result};
pub use factorize::{factorize, product_chain, FactorChain, PrimitiveFactor};
pub use field::{Qi, Scalar, TolerancePolicy, C64};
pub use laurent::{LaurentPoly, PolyMatrix};
pub use mat::Mat;
pub use parametrize::{forward_map, generate, inverse_map, wavelet_to_params, ParamPoint};
pub use wavelet::{check_paraunitary, FlatWaveletRows, Pu1Matrix, WaveletMatrix, WmClass};
