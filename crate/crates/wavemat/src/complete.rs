//! Completion of a wavelet matrix from its first row (the scaling vector /
//! low-pass filter): given a paraunitary row of order N and a constant
//! unitary matrix V whose first row equals the row's value at z = 1, there
//! is a unique A in WM(m,N,N,F) with first row the given one and A(1) = V.
//!
//! The construction routes through the parametrization: the row is turned
//! into a mixed-causality column, divided formally to produce the zeta
//! functions, the forward map builds the attached U(z), and the answer is
//! A(z) = V U^T(z) diag[1,...,1,z^N] (the transposition keeps the
//! user-facing row convention while the underlying theorem works with
//! columns).

use crate::error::{Error, Result};
use crate::field::{Scalar, TolerancePolicy};
use crate::laurent::{LaurentPoly, PolyMatrix};
use crate::mat::Mat;
use crate::parametrize::{forward_map, ParamPoint};
use crate::wavelet::WaveletMatrix;

/// A candidate first row: m polynomials in P+_N with unit paraunitary norm
/// sum_j a_j(z) a~_j(z) = 1 and a tight declared order.
#[derive(Clone, Debug, PartialEq)]
pub struct RowVector<S> {
    pub order: usize,
    pub entries: Vec<LaurentPoly<S>>,
}

impl<S: Scalar> RowVector<S> {
    pub fn new(order: usize, entries: Vec<LaurentPoly<S>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch("empty row".into()));
        }
        for e in &entries {
            if let Some((lo, hi)) = e.support() {
                if lo < 0 || hi > order as i64 {
                    return Err(Error::DimensionMismatch(format!(
                        "row entry support [{lo}, {hi}] exceeds declared order {order}"
                    )));
                }
            }
        }
        Ok(RowVector { order, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_unit(&self, pol: &TolerancePolicy) -> Result<()> {
        let mut norm = LaurentPoly::zero();
        for e in &self.entries {
            norm = norm.add(&e.mul(&e.adjoint()));
        }
        let ok = if S::EXACT {
            norm == LaurentPoly::one()
        } else {
            norm.sub(&LaurentPoly::one()).max_abs() <= pol.residual_eps
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotUnitRow)
        }
    }

    fn value_at_one(&self) -> Vec<S> {
        self.entries
            .iter()
            .map(|e| e.eval(&S::one()).expect("nonnegative support"))
            .collect()
    }
}

/// Reconstruct the unique wavelet matrix in WM(m,N,N,F) with the given
/// first row and A(1) = V. When V is omitted the row must satisfy
/// r(1) = e_1 and V defaults to the identity (the always-available case,
/// since a unitary completion of a general unit vector need not exist in F).
pub fn complete_from_row<S: Scalar>(
    row: &RowVector<S>,
    unitary: Option<Mat<S>>,
    pol: &TolerancePolicy,
) -> Result<WaveletMatrix<S>> {
    let m = row.len();
    row.check_unit(pol)?;

    let v_mat = match unitary {
        Some(v) => {
            if v.nrows() != m || v.ncols() != m {
                return Err(Error::DimensionMismatch(format!(
                    "unitary matrix must be {m}x{m}"
                )));
            }
            if !v.is_unitary(pol) {
                return Err(Error::ValueMismatch);
            }
            v
        }
        None => Mat::identity(m),
    };

    let r1 = row.value_at_one();
    let row_matches_v = (0..m).all(|j| {
        let diff = r1[j].clone() - v_mat[(0, j)].clone();
        pol.is_zero(&diff) || (S::EXACT && diff.is_zero_raw())
    });
    if !row_matches_v {
        return Err(Error::ValueMismatch);
    }

    let n = row.order;
    if n == 0 {
        // degenerate convention: the constant row is the first row of V
        // and V itself is the unique completion
        for (j, e) in row.entries.iter().enumerate() {
            let diff = e.coeff(0) - v_mat[(0, j)].clone();
            if !pol.is_zero(&diff) {
                return Err(Error::ValueMismatch);
            }
        }
        return WaveletMatrix::certify(PolyMatrix::from_const(&v_mat), 0, pol);
    }

    // choose the coordinate carrying the top coefficient: largest magnitude
    // on the float backend, smallest index on the exact one (uniqueness of
    // the completion makes the choice invisible)
    let top: Vec<S> = row.entries.iter().map(|e| e.coeff(n as i64)).collect();
    let candidates: Vec<usize> = (0..m).filter(|&j| !pol.is_zero(&top[j])).collect();
    let pivot = if S::EXACT {
        candidates.first().copied()
    } else {
        candidates
            .into_iter()
            .max_by(|&a, &b| top[a].abs_f64().partial_cmp(&top[b].abs_f64()).unwrap())
    }
    .ok_or(Error::OrderSlack)?;

    // permute coordinate `pivot` to position m, together with V's columns
    let perm = swap_permutation(m, pivot, m - 1);
    let entries_p: Vec<LaurentPoly<S>> =
        (0..m).map(|j| row.entries[perm[j]].clone()).collect();
    let mut v_p = Mat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            v_p[(i, j)] = v_mat[(i, perm[j])].clone();
        }
    }

    // mixed-causality column: u_{i1} = a_i for i < m, u_{m1} = z^N a~_m
    let u_m1 = entries_p[m - 1].adjoint().shift(n as i64);
    let recip = u_m1.series_reciprocal(n + 1, pol)?;
    let mut gamma = Vec::with_capacity(m - 1);
    for e in entries_p.iter().take(m - 1) {
        let zeta = e.adjoint().mul(&recip).truncate(-(n as i64), -1);
        gamma.push((1..=n).map(|k| zeta.coeff(-(k as i64))).collect());
    }
    let point = ParamPoint::new(m, n, gamma)?;
    let u = forward_map(&point, pol)?;

    // A' = V' U^T(z) diag[1,...,1,z^N], then undo the permutation on columns
    let mut ut = u.poly().transpose();
    for i in 0..m {
        ut[(i, m - 1)] = ut[(i, m - 1)].shift(n as i64);
    }
    let a_p = ut.mul_const_left(&v_p);
    let mut a_poly = PolyMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            a_poly[(i, j)] = a_p[(i, perm[j])].clone();
        }
    }

    let a = WaveletMatrix::certify(a_poly, n, pol)?;

    // first-row fidelity and A(1) = V are part of the contract
    for j in 0..m {
        let diff = a.poly()[(0, j)].sub(&row.entries[j]);
        if !diff.is_zero(pol) {
            return Err(Error::ValueMismatch);
        }
    }
    let a1 = a.value_at_one();
    let a1_ok = if S::EXACT {
        a1 == v_mat
    } else {
        a1.max_abs_diff(&v_mat) <= pol.residual_eps
    };
    if !a1_ok {
        return Err(Error::ValueMismatch);
    }
    Ok(a)
}

/// Permutation (as an index map) that swaps positions a and b.
fn swap_permutation(m: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m).collect();
    p.swap(a, b);
    p
}
