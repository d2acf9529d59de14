//! Unique factorization of nonsingular compact wavelet matrices into
//! primitive degree-one factors, and the inverse product construction.
//!
//! Every A in WM0(m,N,N,F) factors uniquely as a product of N primitive
//! wavelet matrices V_j(z) = (I - P_j) + P_j z with rank-1 projections P_j
//! and no two consecutive projections orthogonal. The left factor at each
//! step is pinned by the left null space of the constant coefficient A_0.

use crate::error::{Error, Result};
use crate::field::{Scalar, TolerancePolicy};
use crate::laurent::PolyMatrix;
use crate::mat::Mat;
use crate::wavelet::WaveletMatrix;

/// Projective direction v in F^m defining the rank-1 projection
/// P = v (v* v)^{-1} v* and the primitive factor V(z) = (I - P) + P z.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimitiveFactor<S> {
    v: Vec<S>,
}

impl<S: Scalar> PrimitiveFactor<S> {
    /// Canonical projective representative: on the exact backend the first
    /// nonzero coordinate is scaled to 1; on the float backend the vector
    /// gets unit 2-norm with the first nonzero coordinate real-positive.
    pub fn new(v: Vec<S>, pol: &TolerancePolicy) -> Result<Self> {
        let first = v
            .iter()
            .position(|c| !pol.is_zero(c))
            .ok_or_else(|| Error::DimensionMismatch("zero direction vector".into()))?;
        let v = if S::EXACT {
            let inv = v[first].try_inv().unwrap();
            v.into_iter().map(|c| c * inv.clone()).collect()
        } else {
            // unit 2-norm with the leading coordinate rotated onto the
            // positive real axis: multiply by conj(lead) / (|lead| * ||v||)
            let norm: f64 = v.iter().map(|c| c.abs_f64() * c.abs_f64()).sum::<f64>().sqrt();
            let lead = v[first].clone();
            let factor = lead.conj() * S::from_f64(1.0 / (lead.abs_f64() * norm));
            v.into_iter().map(|c| c * factor.clone()).collect()
        };
        Ok(PrimitiveFactor { v })
    }

    pub fn direction(&self) -> &[S] {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// The rank-1 orthogonal projection P = v (v* v)^{-1} v*.
    pub fn projection(&self) -> Mat<S> {
        let m = self.v.len();
        let mut norm = S::zero();
        for c in &self.v {
            norm = norm + c.conj() * c.clone();
        }
        let inv = norm.try_inv().expect("nonzero direction");
        let mut p = Mat::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                p[(i, j)] = self.v[i].clone() * self.v[j].conj() * inv.clone();
            }
        }
        p
    }

    /// The primitive wavelet matrix V(z) = (I - P) + P z.
    pub fn to_wavelet(&self, pol: &TolerancePolicy) -> WaveletMatrix<S> {
        let p = self.projection();
        let m = self.v.len();
        let q = Mat::identity(m).sub(&p);
        let poly = PolyMatrix::from_coeff_mats(0, &[q, p]);
        WaveletMatrix::certify(poly, 1, pol).expect("projection factor is paraunitary")
    }

    /// Projective equality up to the active tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.v.len() != other.v.len() {
            return false;
        }
        if S::EXACT {
            self.v == other.v
        } else {
            self.v
                .iter()
                .zip(&other.v)
                .all(|(a, b)| (a.clone() - b.clone()).abs_f64() <= tol)
        }
    }

    pub fn inner_with(&self, other: &Self) -> S {
        let mut acc = S::zero();
        for (a, b) in self.v.iter().zip(&other.v) {
            acc = acc + a.conj() * b.clone();
        }
        acc
    }
}

/// Ordered chain of N primitive factors whose product has order exactly N.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorChain<S> {
    pub factors: Vec<PrimitiveFactor<S>>,
}

impl<S: Scalar> FactorChain<S> {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Peel the unique left primitive factor off A in WM0(m,N,N,F), N >= 1:
/// the direction spans the left null space of A_0 and the quotient
/// B(z) = V~(z) A(z) lies in WM0(m,N-1,N-1,F).
pub fn extract_left_factor<S: Scalar>(
    a: &WaveletMatrix<S>,
    pol: &TolerancePolicy,
) -> Result<(PrimitiveFactor<S>, WaveletMatrix<S>)> {
    let m = a.rank();
    let n = a.order();
    assert!(n >= 1, "cannot extract a factor from a constant matrix");
    let a0 = a.coeff_mat(0);
    if a0.rank(pol) != m - 1 {
        return Err(Error::RankDefect);
    }
    // v* A_0 = 0  <=>  A_0* v = 0
    let v = a0.conj_transpose().kernel_vector(pol)?;
    let factor = PrimitiveFactor::new(v, pol)?;
    let p = factor.projection();
    let q = Mat::identity(m).sub(&p);

    // B_k = (I - P) A_k + P A_{k+1}; the z^{-1} coefficient P A_0 vanishes
    // by construction and the z^N coefficient (I - P) A_N must vanish for
    // the order to drop by exactly one.
    let residual_neg = p.mul(&a0).max_abs();
    if !S::EXACT && residual_neg > pol.residual_eps {
        return Err(Error::OrderMismatch);
    }
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        let bk = q
            .mul(&a.coeff_mat(k as i64))
            .add(&p.mul(&a.coeff_mat(k as i64 + 1)));
        coeffs.push(bk);
    }
    let top_residual = q.mul(&a.coeff_mat(n as i64)).max_abs();
    let top_ok = if S::EXACT { top_residual == 0.0 } else { top_residual <= pol.residual_eps };
    if !top_ok {
        return Err(Error::OrderMismatch);
    }
    let quotient_poly = PolyMatrix::from_coeff_mats(0, &coeffs).cleaned(pol);
    let new_order = quotient_poly
        .support()
        .map(|(_, hi)| hi as usize)
        .unwrap_or(0);
    if n >= 1 && new_order != n - 1 {
        return Err(Error::OrderMismatch);
    }
    let quotient = WaveletMatrix::certify(quotient_poly, new_order, pol)?;
    Ok((factor, quotient))
}

/// Full factorization of A in WM0(m,N,N,F) into its N primitive factors.
pub fn factorize<S: Scalar>(
    a: &WaveletMatrix<S>,
    pol: &TolerancePolicy,
) -> Result<FactorChain<S>> {
    if !a.value_at_one().is_identity(pol) {
        return Err(Error::NotInWM1("factorization requires A(1) = I".into()));
    }
    let (_, d, _) = a.order_degree(pol)?;
    if d != a.order() as i64 {
        return Err(Error::RankDefect);
    }
    let mut factors = Vec::with_capacity(a.order());
    let mut rest = a.clone();
    while rest.order() >= 1 {
        let (f, quotient) = extract_left_factor(&rest, pol)?;
        factors.push(f);
        rest = quotient;
    }
    // the final quotient is constant with value I at z = 1, hence I itself
    debug_assert!(rest.value_at_one().is_identity(pol));
    Ok(FactorChain { factors })
}

/// Product of a chain of primitive factors; certified in WM0(m,N,N,F) with
/// order exactly the chain length. Consecutive orthogonal directions would
/// collapse the order and are rejected up front.
pub fn product_chain<S: Scalar>(
    c: &FactorChain<S>,
    pol: &TolerancePolicy,
) -> Result<WaveletMatrix<S>> {
    assert!(!c.is_empty(), "empty chain has no product");
    let m = c.factors[0].dim();
    for idx in 0..c.len().saturating_sub(1) {
        if pol.is_zero(&c.factors[idx].inner_with(&c.factors[idx + 1])) {
            return Err(Error::ConsecutiveOrthogonal(idx, idx + 1));
        }
    }
    let mut prod = PolyMatrix::<S>::identity(m);
    for f in &c.factors {
        let v = f.to_wavelet(pol);
        prod = prod.mul(v.poly())?;
    }
    let prod = prod.cleaned(pol);
    let order = prod.support().map(|(_, hi)| hi as usize).unwrap_or(0);
    if order != c.len() {
        return Err(Error::OrderMismatch);
    }
    WaveletMatrix::certify(prod, order, pol)
}
