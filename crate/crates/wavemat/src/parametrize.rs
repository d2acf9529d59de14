//! The one-to-one parametrization between points of F^{(m-1)N} and the
//! class PU1(m,N,F) (equivalently, nonsingular compact wavelet matrices
//! WM1(m,N,N,F)).
//!
//! Forward direction: a parameter point gamma determines Hankel-structured
//! matrices Theta_i, the Hermitian positive definite Gram matrix
//! Delta = sum Theta_i conj(Theta_i) + I, and m linear systems
//! Delta X = B_j whose solutions assemble into a Laurent matrix V(z);
//! U(z) = V(z) V(1)^{-1} is the unique paraunitary matrix attached to the
//! point. Inverse direction: gamma is recovered from U by formal series
//! division of adjoint entries against a last-row polynomial that is
//! nonzero at the origin, keeping only the negative-exponent part.

use crate::error::{Error, Result};
use crate::field::{Scalar, TolerancePolicy};
use crate::laurent::{LaurentPoly, PolyMatrix};
use crate::mat::Mat;
use crate::wavelet::{Pu1Matrix, WaveletMatrix};

/// Euclidean coordinates of the parametrization: an (m-1) x N array of
/// field scalars, row i giving zeta_i(z) = sum_{k=1..N} gamma[i][k-1] z^{-k}.
/// Every point of F^{(m-1)N} is admissible.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoint<S> {
    m: usize,
    order: usize,
    gamma: Vec<Vec<S>>,
}

impl<S: Scalar> ParamPoint<S> {
    pub fn new(m: usize, order: usize, gamma: Vec<Vec<S>>) -> Result<Self> {
        if m < 2 {
            return Err(Error::DimensionMismatch("rank m must be at least 2".into()));
        }
        if gamma.len() != m - 1 || gamma.iter().any(|row| row.len() != order) {
            return Err(Error::DimensionMismatch(format!(
                "gamma must be ({})x({}) for rank {} order {}",
                m - 1,
                order,
                m,
                order
            )));
        }
        Ok(ParamPoint { m, order, gamma })
    }

    pub fn zeros(m: usize, order: usize) -> Self {
        Self::new(m, order, vec![vec![S::zero(); order]; m - 1]).expect("valid shape")
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gamma(&self) -> &[Vec<S>] {
        &self.gamma
    }

    /// zeta_i(z) in P-_N for row i (0-based).
    pub fn zeta(&self, i: usize) -> LaurentPoly<S> {
        let coeffs: Vec<S> = self.gamma[i].iter().rev().cloned().collect();
        LaurentPoly::from_coeffs(-(self.order as i64), coeffs)
    }

    pub fn max_abs_diff(&self, other: &ParamPoint<S>) -> f64 {
        let mut d = 0.0f64;
        for (a, b) in self.gamma.iter().flatten().zip(other.gamma.iter().flatten()) {
            d = d.max((a.clone() - b.clone()).abs_f64());
        }
        d
    }
}

/// The (N+1) x (N+1) Hankel-like matrices Theta_1..Theta_{m-1} built from
/// a parameter point, with entry (r,c) = gamma_{i,r+c} for 1 <= r+c <= N
/// (0-based indices) and zero elsewhere. Each Theta_i is symmetric.
#[derive(Clone, Debug)]
pub struct ThetaSet<S> {
    thetas: Vec<Mat<S>>,
    n: usize,
}

pub fn build_theta<S: Scalar>(p: &ParamPoint<S>) -> ThetaSet<S> {
    let n = p.order();
    let size = n + 1;
    let thetas = (0..p.rank() - 1)
        .map(|i| {
            let mut t = Mat::zeros(size, size);
            for r in 0..size {
                for c in 0..size {
                    let k = r + c;
                    if (1..=n).contains(&k) {
                        t[(r, c)] = p.gamma()[i][k - 1].clone();
                    }
                }
            }
            t
        })
        .collect();
    ThetaSet { thetas, n }
}

impl<S: Scalar> ThetaSet<S> {
    pub fn theta(&self, i: usize) -> &Mat<S> {
        &self.thetas[i]
    }

    pub fn count(&self) -> usize {
        self.thetas.len()
    }

    /// First column of Theta_j (the right-hand side B_j); by convention
    /// Theta_m = I so B_m = e_1.
    pub fn rhs(&self, j: usize) -> Vec<S> {
        let size = self.n + 1;
        if j < self.thetas.len() {
            (0..size).map(|r| self.thetas[j][(r, 0)].clone()).collect()
        } else {
            let mut e1 = vec![S::zero(); size];
            e1[0] = S::one();
            e1
        }
    }
}

/// Gram matrix Delta = sum Theta_i conj(Theta_i) + I: Hermitian positive
/// definite with every eigenvalue at least 1.
pub fn build_gram<S: Scalar>(t: &ThetaSet<S>) -> Mat<S> {
    let size = t.n + 1;
    let mut delta = Mat::identity(size);
    for th in &t.thetas {
        delta = delta.add(&th.mul(&th.conj()));
    }
    delta
}

/// Solve the Hermitian positive definite system Delta X = B by the
/// square-root-free LDL* factorization.
pub fn solve_hpd<S: Scalar>(delta: &Mat<S>, b: &[S], pol: &TolerancePolicy) -> Result<Vec<S>> {
    Ok(delta.ldl(pol)?.solve(b))
}

/// Forward half of the parametrization: parameter point -> certified
/// U in PU1(m,N,F). Requires N >= 1.
pub fn forward_map<S: Scalar>(p: &ParamPoint<S>, pol: &TolerancePolicy) -> Result<Pu1Matrix<S>> {
    assert!(p.order() >= 1, "forward map is defined for N >= 1");
    let m = p.rank();
    let n = p.order() as i64;
    let thetas = build_theta(p);
    let delta = build_gram(&thetas);
    let factors = delta.ldl(pol)?;

    // one factorization shared across the m right-hand sides
    let solutions: Vec<Vec<S>> = (0..m).map(|j| factors.solve(&thetas.rhs(j))).collect();

    let mut v = PolyMatrix::zeros(m, m);
    for (j, x) in solutions.iter().enumerate() {
        // row m entry of column j: sum_k alpha_{jk} z^{-k}
        let vmj = LaurentPoly::from_coeffs(-n, x.iter().rev().cloned().collect());
        for i in 0..m - 1 {
            let zeta_adj = p.zeta(i).adjoint();
            let mut vij = zeta_adj.mul(&vmj).proj_plus();
            if i == j {
                vij = vij.sub(&LaurentPoly::one());
            }
            v[(i, j)] = vij;
        }
        v[(m - 1, j)] = vmj;
    }

    let v1 = v.eval(&S::one())?;
    let v1_inv = v1.inverse(pol).map_err(|_| Error::SingularV1)?;
    let u = v.mul_const_right(&v1_inv);

    let u = Pu1Matrix::certify(u, p.order(), pol)?;
    certify_f_times_u_causal(p, &u, pol)?;
    Ok(u)
}

/// Check that F(z) U(z) has entries in P+ only: the defining divisibility
/// property of the parametrization. Rows 1..m-1 of F U are the rows of U
/// itself; only the last row needs inspection.
fn certify_f_times_u_causal<S: Scalar>(
    p: &ParamPoint<S>,
    u: &Pu1Matrix<S>,
    pol: &TolerancePolicy,
) -> Result<()> {
    let m = u.rank();
    for j in 0..m {
        let mut entry = u.poly()[(m - 1, j)].clone();
        for i in 0..m - 1 {
            entry = entry.add(&p.zeta(i).mul(&u.poly()[(i, j)]));
        }
        if !entry.proj_minus().is_zero(pol) {
            return Err(Error::NotInPU1(format!(
                "F(z)U(z) has anticausal terms in column {}",
                j + 1
            )));
        }
    }
    Ok(())
}

/// Generate the wavelet matrix of a parameter point. N = 0 yields the
/// identity, the unique member of WM1(m,0,0,F).
pub fn generate<S: Scalar>(p: &ParamPoint<S>, pol: &TolerancePolicy) -> Result<WaveletMatrix<S>> {
    if p.order() == 0 {
        return Ok(WaveletMatrix::identity(p.rank()));
    }
    forward_map(p, pol)?.to_wavelet(pol)
}

/// Inverse half of the parametrization: recover the unique parameter point
/// of a certified U in PU1(m,N,F) via series division,
/// zeta_i = [u~_ij / u_mj]^-, using any column with u_mj(0) != 0.
pub fn inverse_map<S: Scalar>(u: &Pu1Matrix<S>, pol: &TolerancePolicy) -> Result<ParamPoint<S>> {
    let j = pick_column(u, pol).ok_or(Error::NoNonzeroConstant)?;
    inverse_map_via_column(u, j, pol)
}

/// Column selection: largest |u_mj(0)| on the float backend for stability,
/// smallest admissible index on the exact backend. Theorem-level uniqueness
/// makes the choice semantically irrelevant (and it is tested).
pub fn pick_column<S: Scalar>(u: &Pu1Matrix<S>, pol: &TolerancePolicy) -> Option<usize> {
    let m = u.rank();
    let candidates: Vec<usize> = (0..m)
        .filter(|&j| !pol.is_zero(&u.poly()[(m - 1, j)].coeff(0)))
        .collect();
    if S::EXACT {
        candidates.first().copied()
    } else {
        candidates.into_iter().max_by(|&a, &b| {
            let ma = u.poly()[(m - 1, a)].coeff(0).abs_f64();
            let mb = u.poly()[(m - 1, b)].coeff(0).abs_f64();
            ma.partial_cmp(&mb).unwrap()
        })
    }
}

/// Inverse map through an explicitly chosen column j (0-based); the column
/// must satisfy u_mj(0) != 0.
pub fn inverse_map_via_column<S: Scalar>(
    u: &Pu1Matrix<S>,
    j: usize,
    pol: &TolerancePolicy,
) -> Result<ParamPoint<S>> {
    let m = u.rank();
    let n = u.order();
    let umj = u.last_row_poly(j);
    if pol.is_zero(&umj.coeff(0)) {
        return Err(Error::NoNonzeroConstant);
    }
    // only the first N+1 series coefficients can reach exponents in [-N,-1]
    let recip = umj.series_reciprocal(n + 1, pol)?;
    let mut gamma = Vec::with_capacity(m - 1);
    for i in 0..m - 1 {
        let zeta = u.poly()[(i, j)]
            .adjoint()
            .mul(&recip)
            .truncate(-(n as i64), -1);
        gamma.push((1..=n).map(|k| zeta.coeff(-(k as i64))).collect());
    }
    ParamPoint::new(m, n, gamma)
}

/// Parameter point of a wavelet matrix in WM1(m,N,N,F).
pub fn wavelet_to_params<S: Scalar>(
    a: &WaveletMatrix<S>,
    pol: &TolerancePolicy,
) -> Result<ParamPoint<S>> {
    if a.order() == 0 {
        return ParamPoint::new(a.rank(), 0, vec![Vec::new(); a.rank() - 1]);
    }
    inverse_map(&a.to_pu1(pol)?, pol)
}
