//! Laurent polynomial and matrix-Laurent-polynomial algebra.
//!
//! Coefficients are stored densely over an explicit exponent window
//! [lo, hi]; every polynomial this crate manipulates is short (at most
//! 2N+1 terms), so contiguous storage keeps exact equality trivial.

use std::any::{Any, TypeId};
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::field::{Qi, Scalar, TolerancePolicy};
use crate::mat::Mat;

/// Finitely supported Laurent polynomial `sum c_k z^k`, k in [lo, hi].
///
/// Invariant: the coefficients at `lo` and `hi` are structurally nonzero;
/// the zero polynomial has empty storage. Tolerance-aware trimming is a
/// separate, explicit step ([`LaurentPoly::cleaned`]) so float noise does
/// not silently change reported supports.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<S> {
    lo: i64,
    coeffs: Vec<S>,
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn zero() -> Self {
        LaurentPoly { lo: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn monomial(k: i64, c: S) -> Self {
        Self::from_coeffs(k, vec![c])
    }

    /// Build from a dense coefficient window starting at exponent `lo`,
    /// trimming structural zeros at both ends.
    pub fn from_coeffs(lo: i64, coeffs: Vec<S>) -> Self {
        let mut p = LaurentPoly { lo, coeffs };
        p.trim_raw();
        p
    }

    fn trim_raw(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero_raw()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero_raw()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero_raw(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self, pol: &TolerancePolicy) -> bool {
        self.coeffs.iter().all(|c| pol.is_zero(c))
    }

    /// Support bounds (lo, hi); `None` for the zero polynomial.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn coeff(&self, k: i64) -> S {
        if k < self.lo {
            return S::zero();
        }
        let idx = (k - self.lo) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &S)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }

    /// Zero out coefficients below `zero_eps` and trim; identity on the
    /// exact backend.
    pub fn cleaned(&self, pol: &TolerancePolicy) -> Self {
        if S::EXACT {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| if pol.is_zero(c) { S::zero() } else { c.clone() })
            .collect();
        Self::from_coeffs(self.lo, coeffs)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero_raw() {
            return rhs.clone();
        }
        if rhs.is_zero_raw() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.support().unwrap().1.max(rhs.support().unwrap().1);
        let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
        for k in lo..=hi {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero_raw() || rhs.is_zero_raw() {
            return Self::zero();
        }
        if is_qi::<S>() {
            return from_qi(qi_dot(&[(as_qi(self), as_qi(rhs))]));
        }
        let lo = self.lo + rhs.lo;
        let mut coeffs = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_raw() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_coeffs(self.lo, self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Adjoint p~(z) = sum conj(c_k) z^{-k}.
    pub fn adjoint(&self) -> Self {
        if self.is_zero_raw() {
            return Self::zero();
        }
        let (lo, hi) = self.support().unwrap();
        let coeffs = (-hi..=-lo).map(|k| self.coeff(-k).conj()).collect();
        Self::from_coeffs(-hi, coeffs)
    }

    /// Projection onto exponents >= 0 (constants live in P+).
    pub fn proj_plus(&self) -> Self {
        match self.support() {
            None => Self::zero(),
            Some((lo, hi)) => {
                if lo >= 0 {
                    self.clone()
                } else if hi < 0 {
                    Self::zero()
                } else {
                    Self::from_coeffs(0, (0..=hi).map(|k| self.coeff(k)).collect())
                }
            }
        }
    }

    /// Projection onto exponents <= -1.
    pub fn proj_minus(&self) -> Self {
        match self.support() {
            None => Self::zero(),
            Some((lo, hi)) => {
                if hi < 0 {
                    self.clone()
                } else if lo >= 0 {
                    Self::zero()
                } else {
                    Self::from_coeffs(lo, (lo..=-1).map(|k| self.coeff(k)).collect())
                }
            }
        }
    }

    /// Keep only exponents inside [lo, hi].
    pub fn truncate(&self, lo: i64, hi: i64) -> Self {
        Self::from_coeffs(lo, (lo..=hi).map(|k| self.coeff(k)).collect())
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero_raw() {
            return Self::zero();
        }
        LaurentPoly { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    pub fn eval(&self, z0: &S) -> Result<S> {
        let Some((lo, _)) = self.support() else {
            return Ok(S::zero());
        };
        if is_qi::<S>() {
            let z = (z0 as &dyn Any).downcast_ref::<Qi>().expect("backend checked");
            return qi_eval(as_qi(self), z).map(|v| {
                let boxed: Box<dyn Any> = Box::new(v);
                *boxed.downcast().expect("backend checked")
            });
        }
        let z0_inv = if lo < 0 {
            Some(z0.try_inv().ok_or(Error::EvalAtZero)?)
        } else {
            None
        };
        let mut acc = S::zero();
        for (k, c) in self.iter() {
            let mut term = c.clone();
            if k >= 0 {
                for _ in 0..k {
                    term = term * z0.clone();
                }
            } else {
                let zi = z0_inv.as_ref().unwrap();
                for _ in 0..(-k) {
                    term = term * zi.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// First `n_terms` coefficients of the formal series 1/p around 0.
    ///
    /// Requires p in P+ with p(0) nonzero under the policy. Recurrence:
    /// q_0 = 1/p_0, q_k = -(sum_{j=1..k} p_j q_{k-j}) / p_0.
    pub fn series_reciprocal(&self, n_terms: usize, pol: &TolerancePolicy) -> Result<Self> {
        assert!(n_terms > 0);
        let p0 = self.coeff(0);
        if pol.is_zero(&p0) {
            return Err(Error::ZeroConstantTerm);
        }
        if let Some((lo, _)) = self.support() {
            assert!(lo >= 0, "series reciprocal requires p in P+");
        }
        let p0_inv = p0.try_inv().ok_or(Error::ZeroConstantTerm)?;
        let mut q = vec![p0_inv.clone()];
        for k in 1..n_terms {
            let mut s = S::zero();
            for j in 1..=k {
                s = s + self.coeff(j as i64) * q[k - j].clone();
            }
            q.push(-s * p0_inv.clone());
        }
        Ok(Self::from_coeffs(0, q))
    }
}

// ---------------------------------------------------------------------------
// Exact-backend fast path.
//
// BigRational arithmetic reduces with a gcd after every single add/mul, which
// dominates the cost of polynomial products once coefficients grow to hundreds
// of digits. For the exact backend we instead pull a common denominator out of
// each polynomial, convolve Gaussian *integers* (no gcds at all), and reduce
// once per output coefficient when converting back. Dot products (matrix
// multiplication rows-times-columns) additionally share one denominator across
// all summed products so the accumulation itself stays in integers.
// ---------------------------------------------------------------------------

fn is_qi<S: Scalar>() -> bool {
    TypeId::of::<S>() == TypeId::of::<Qi>()
}

fn as_qi<S: Scalar>(p: &LaurentPoly<S>) -> &LaurentPoly<Qi> {
    (p as &dyn Any).downcast_ref().expect("backend checked via TypeId")
}

fn from_qi<S: Scalar>(p: LaurentPoly<Qi>) -> LaurentPoly<S> {
    let boxed: Box<dyn Any> = Box::new(p);
    *boxed.downcast().expect("backend checked via TypeId")
}

/// `den` times the polynomial, with Gaussian-integer coefficients.
struct ScaledPoly {
    lo: i64,
    den: BigInt,
    coeffs: Vec<(BigInt, BigInt)>,
}

fn qi_scaled(p: &LaurentPoly<Qi>) -> ScaledPoly {
    let mut den = BigInt::one();
    for c in &p.coeffs {
        den = den.lcm(c.re.denom());
        den = den.lcm(c.im.denom());
    }
    let coeffs = p
        .coeffs
        .iter()
        .map(|c| {
            (c.re.numer() * (&den / c.re.denom()), c.im.numer() * (&den / c.im.denom()))
        })
        .collect();
    ScaledPoly { lo: p.lo, den, coeffs }
}

/// Evaluation with a single final reduction. Writing z0 = (a + bi)/q over a
/// common denominator q, every power z0^k (either sign of k) is a Gaussian
/// integer divided by a power of q or of |a + bi|^2, so the whole sum
/// collects over one integer denominator.
fn qi_eval(p: &LaurentPoly<Qi>, z0: &Qi) -> Result<Qi> {
    let (lo, hi) = p.support().expect("caller rules out zero");
    let sp = qi_scaled(p);
    let q: BigInt = z0.re.denom().lcm(z0.im.denom());
    let a = z0.re.numer() * (&q / z0.re.denom());
    let b = z0.im.numer() * (&q / z0.im.denom());
    let nrm = &a * &a + &b * &b; // |a + bi|^2
    let m0 = (-lo).max(0); // largest inverse power needed
    if m0 > 0 && nrm.is_zero() {
        return Err(Error::EvalAtZero);
    }
    let hi_pos = hi.max(0);
    // w^k = (a+bi)^k for k in 0..=max(|lo|, hi)
    let kmax = hi_pos.max(m0) as usize;
    let mut wpow: Vec<(BigInt, BigInt)> = Vec::with_capacity(kmax + 1);
    wpow.push((BigInt::one(), BigInt::zero()));
    for k in 0..kmax {
        let (wre, wim) = &wpow[k];
        wpow.push((wre * &a - wim * &b, wre * &b + wim * &a));
    }
    let powi = |base: &BigInt, e: i64| num::pow::pow(base.clone(), e as usize);
    // numerator of D * p(z0) with D = den * q^hi_pos * nrm^m0, term by term:
    //   k >= 0: n_k * (a+bi)^k * q^(hi_pos-k) * nrm^m0
    //   k <  0: n_k * conj((a+bi)^(-k)) * q^(hi_pos-k) * nrm^(m0+k)
    let (mut acc_re, mut acc_im) = (BigInt::zero(), BigInt::zero());
    for (idx, (nre, nim)) in sp.coeffs.iter().enumerate() {
        if nre.is_zero() && nim.is_zero() {
            continue;
        }
        let k = lo + idx as i64;
        let (wre, wim) = &wpow[k.unsigned_abs() as usize];
        let wim = if k < 0 { -wim.clone() } else { wim.clone() };
        let scale = powi(&q, hi_pos - k) * powi(&nrm, m0 + k.min(0));
        acc_re += (nre * wre - nim * &wim) * &scale;
        acc_im += (nre * &wim + nim * wre) * &scale;
    }
    let den = &sp.den * powi(&q, hi_pos) * powi(&nrm, m0);
    Ok(Qi::new(BigRational::new(acc_re, den.clone()), BigRational::new(acc_im, den)))
}

/// `sum_k a_k * b_k` over scaled integer convolutions, reducing once per
/// output coefficient.
fn qi_dot(pairs: &[(&LaurentPoly<Qi>, &LaurentPoly<Qi>)]) -> LaurentPoly<Qi> {
    let mut terms: Vec<ScaledPoly> = Vec::new();
    for &(a, b) in pairs {
        if a.is_zero_raw() || b.is_zero_raw() {
            continue;
        }
        let sa = qi_scaled(a);
        let sb = qi_scaled(b);
        let mut coeffs =
            vec![(BigInt::zero(), BigInt::zero()); sa.coeffs.len() + sb.coeffs.len() - 1];
        for (i, (ar, ai)) in sa.coeffs.iter().enumerate() {
            if ar.is_zero() && ai.is_zero() {
                continue;
            }
            for (j, (br, bi)) in sb.coeffs.iter().enumerate() {
                if br.is_zero() && bi.is_zero() {
                    continue;
                }
                coeffs[i + j].0 += ar * br - ai * bi;
                coeffs[i + j].1 += ar * bi + ai * br;
            }
        }
        terms.push(ScaledPoly { lo: sa.lo + sb.lo, den: &sa.den * &sb.den, coeffs });
    }
    if terms.is_empty() {
        return LaurentPoly::zero();
    }
    let mut den = BigInt::one();
    for t in &terms {
        den = den.lcm(&t.den);
    }
    let lo = terms.iter().map(|t| t.lo).min().unwrap();
    let hi = terms.iter().map(|t| t.lo + t.coeffs.len() as i64 - 1).max().unwrap();
    let mut acc = vec![(BigInt::zero(), BigInt::zero()); (hi - lo + 1) as usize];
    for t in terms {
        let f = &den / &t.den;
        for (i, (re, im)) in t.coeffs.into_iter().enumerate() {
            let slot = &mut acc[(t.lo - lo) as usize + i];
            slot.0 += re * &f;
            slot.1 += im * &f;
        }
    }
    let coeffs = acc
        .into_iter()
        .map(|(re, im)| {
            Qi::new(BigRational::new(re, den.clone()), BigRational::new(im, den.clone()))
        })
        .collect();
    LaurentPoly::from_coeffs(lo, coeffs)
}

impl<S: Scalar> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_raw() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.iter() {
            if c.is_zero_raw() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Rectangular matrix of Laurent polynomials over a shared backend.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly<S>>,
}

impl<S: Scalar> PolyMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    /// Lift a constant matrix to a polynomial matrix.
    pub fn from_const(m: &Mat<S>) -> Self {
        let mut out = Self::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out[(i, j)] = LaurentPoly::constant(m[(i, j)].clone());
            }
        }
        out
    }

    /// Assemble `sum_k C_k z^{lo+k}` from a list of constant coefficient
    /// matrices.
    pub fn from_coeff_mats(lo: i64, mats: &[Mat<S>]) -> Self {
        assert!(!mats.is_empty());
        let (r, c) = (mats[0].nrows(), mats[0].ncols());
        let mut out = Self::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                let coeffs = mats.iter().map(|m| m[(i, j)].clone()).collect();
                out[(i, j)] = LaurentPoly::from_coeffs(lo, coeffs);
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Constant coefficient matrix at exponent k.
    pub fn coeff_mat(&self, k: i64) -> Mat<S> {
        let mut m = Mat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].coeff(k);
            }
        }
        m
    }

    /// Support bounds across all entries.
    pub fn support(&self) -> Option<(i64, i64)> {
        let mut acc: Option<(i64, i64)> = None;
        for e in &self.entries {
            if let Some((lo, hi)) = e.support() {
                acc = Some(match acc {
                    None => (lo, hi),
                    Some((alo, ahi)) => (alo.min(lo), ahi.max(hi)),
                });
            }
        }
        acc
    }

    pub fn cleaned(&self, pol: &TolerancePolicy) -> Self {
        let entries = self.entries.iter().map(|e| e.cleaned(pol)).collect();
        PolyMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect();
        PolyMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.sub(b)).collect();
        PolyMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                out[(i, j)] = if is_qi::<S>() {
                    let pairs: Vec<_> = (0..self.cols)
                        .map(|k| (as_qi(&self[(i, k)]), as_qi(&rhs[(k, j)])))
                        .collect();
                    from_qi(qi_dot(&pairs))
                } else {
                    let mut acc = LaurentPoly::zero();
                    for k in 0..self.cols {
                        acc = acc.add(&self[(i, k)].mul(&rhs[(k, j)]));
                    }
                    acc
                };
            }
        }
        Ok(out)
    }

    pub fn mul_const_left(&self, m: &Mat<S>) -> Self {
        Self::from_const(m).mul(self).expect("dimension checked by caller")
    }

    pub fn mul_const_right(&self, m: &Mat<S>) -> Self {
        self.mul(&Self::from_const(m)).expect("dimension checked by caller")
    }

    /// Adjoint P~(z): transpose of the entrywise adjoint. Satisfies
    /// (PQ)~ = Q~ P~ and equals the conjugate transpose on |z| = 1.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].adjoint();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn eval(&self, z0: &S) -> Result<Mat<S>> {
        let mut m = Mat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].eval(z0)?;
            }
        }
        Ok(m)
    }

    /// Determinant by cofactor expansion. All matrices in this crate are
    /// desk-scale (m <= 8) with short dense entries, where expansion is
    /// both exact and fast enough.
    pub fn det(&self) -> Result<LaurentPoly<S>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.det_rec(&(0..self.cols).collect::<Vec<_>>(), 0))
    }

    fn det_rec(&self, cols: &[usize], row: usize) -> LaurentPoly<S> {
        if cols.is_empty() {
            return LaurentPoly::one();
        }
        let mut acc = LaurentPoly::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let entry = &self[(row, c)];
            if entry.is_zero_raw() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.det_rec(&rest, row + 1);
            let term = entry.mul(&minor);
            acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.max_abs()).fold(0.0, f64::max)
    }

    /// Max magnitude of the deviation from the identity, over all
    /// coefficient matrices.
    pub fn max_abs_diff_identity(&self) -> f64 {
        let diff = self.sub(&Self::identity(self.rows));
        diff.max_abs()
    }

    pub fn row_entries(&self, i: usize) -> &[LaurentPoly<S>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set_row(&mut self, i: usize, row: Vec<LaurentPoly<S>>) {
        assert_eq!(row.len(), self.cols);
        for (j, p) in row.into_iter().enumerate() {
            self[(i, j)] = p;
        }
    }
}

impl<S> std::ops::Index<(usize, usize)> for PolyMatrix<S> {
    type Output = LaurentPoly<S>;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly<S> {
        &self.entries[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for PolyMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly<S> {
        &mut self.entries[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Qi, C64};
    use num::complex::Complex64;

    fn q(n: i64, d: i64) -> Qi {
        Qi::from_ints(n, d)
    }

    fn poly(lo: i64, cs: &[(i64, i64)]) -> LaurentPoly<Qi> {
        LaurentPoly::from_coeffs(lo, cs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn adjoint_reflects_and_conjugates() {
        // 1 + 2z -> 1 + 2z^-1
        let p = poly(0, &[(1, 1), (2, 1)]);
        assert_eq!(p.adjoint(), poly(-1, &[(2, 1), (1, 1)]));
        // i*z^-1 -> -i*z
        let p = LaurentPoly::monomial(-1, Qi::i());
        assert_eq!(p.adjoint(), LaurentPoly::monomial(1, -Qi::i()));
        assert_eq!(LaurentPoly::<Qi>::zero().adjoint(), LaurentPoly::zero());
    }

    #[test]
    fn projections_split_at_zero() {
        // 2z^-1 + 3 + 4z
        let p = poly(-1, &[(2, 1), (3, 1), (4, 1)]);
        assert_eq!(p.proj_plus(), poly(0, &[(3, 1), (4, 1)]));
        assert_eq!(p.proj_minus(), poly(-1, &[(2, 1)]));
        assert_eq!(p.proj_plus().add(&p.proj_minus()), p);
        // constants are in P+
        let c = poly(0, &[(5, 1)]);
        assert_eq!(c.proj_plus(), c);
        assert!(c.proj_minus().is_zero_raw());
        let zm2 = poly(-2, &[(1, 1)]);
        assert!(zm2.proj_plus().is_zero_raw());
        assert_eq!(zm2.proj_minus(), zm2);
    }

    #[test]
    fn series_reciprocal_examples() {
        let pol = TolerancePolicy::exact();
        let one = LaurentPoly::<Qi>::one();
        assert_eq!(one.series_reciprocal(4, &pol).unwrap(), one);

        // 1/(1-z) = 1 + z + z^2 + z^3 + ...
        let p = poly(0, &[(1, 1), (-1, 1)]);
        assert_eq!(
            p.series_reciprocal(4, &pol).unwrap(),
            poly(0, &[(1, 1), (1, 1), (1, 1), (1, 1)])
        );

        // 1/(2-z) = 1/2 + z/4 + z^2/8 ...; oracle: p*q = 1 mod z^3
        let p = poly(0, &[(2, 1), (-1, 1)]);
        let r = p.series_reciprocal(3, &pol).unwrap();
        assert_eq!(r, poly(0, &[(1, 2), (1, 4), (1, 8)]));
        let prod = p.mul(&r).truncate(0, 2);
        assert_eq!(prod, LaurentPoly::one());

        let z = poly(1, &[(1, 1)]);
        assert!(matches!(z.series_reciprocal(3, &pol), Err(Error::ZeroConstantTerm)));
    }

    #[test]
    fn matrix_adjoint_examples() {
        let id = PolyMatrix::<Qi>::identity(2);
        assert_eq!(id.adjoint(), id);

        let mut d = PolyMatrix::<Qi>::identity(2);
        d[(1, 1)] = poly(1, &[(1, 1)]);
        let mut dt = PolyMatrix::<Qi>::identity(2);
        dt[(1, 1)] = poly(-1, &[(1, 1)]);
        assert_eq!(d.adjoint(), dt);

        // [[0, z],[1, 0]] -> [[0, 1],[z^-1, 0]]
        let mut m = PolyMatrix::<Qi>::zeros(2, 2);
        m[(0, 1)] = poly(1, &[(1, 1)]);
        m[(1, 0)] = LaurentPoly::one();
        let a = m.adjoint();
        assert_eq!(a[(0, 1)], LaurentPoly::one());
        assert_eq!(a[(1, 0)], poly(-1, &[(1, 1)]));
    }

    #[test]
    fn eval_examples() {
        let mut d = PolyMatrix::<Qi>::identity(2);
        d[(1, 1)] = poly(1, &[(1, 1)]);
        let pol = TolerancePolicy::exact();
        assert!(d.eval(&Qi::one()).unwrap().is_identity(&pol));

        // (1+z)/2 at z = -1 is 0
        let p = poly(0, &[(1, 2), (1, 2)]);
        assert!(p.eval(&q(-1, 1)).unwrap().is_zero_raw());

        // [[0,z],[1,0]] at z = i
        let mut m = PolyMatrix::<Qi>::zeros(2, 2);
        m[(0, 1)] = poly(1, &[(1, 1)]);
        m[(1, 0)] = LaurentPoly::one();
        let e = m.eval(&Qi::i()).unwrap();
        assert_eq!(e[(0, 1)], Qi::i());
        assert_eq!(e[(1, 0)], Qi::one());

        // negative support at z = 0 errors
        let zm1 = poly(-1, &[(1, 1)]);
        assert!(matches!(zm1.eval(&Qi::zero()), Err(Error::EvalAtZero)));
    }

    #[test]
    fn det_and_mul_examples() {
        let mut d = PolyMatrix::<Qi>::identity(2);
        d[(1, 1)] = poly(1, &[(1, 1)]);
        let sq = d.mul(&d).unwrap();
        assert_eq!(sq[(1, 1)], poly(2, &[(1, 1)]));
        assert_eq!(d.det().unwrap(), poly(1, &[(1, 1)]));

        // det of the Haar polyphase matrix is z
        let h = |n: i64, d: i64| q(n, d);
        let mut haar = PolyMatrix::<Qi>::zeros(2, 2);
        haar[(0, 0)] = LaurentPoly::from_coeffs(0, vec![h(1, 2), h(1, 2)]);
        haar[(0, 1)] = LaurentPoly::from_coeffs(0, vec![h(-1, 2), h(1, 2)]);
        haar[(1, 0)] = LaurentPoly::from_coeffs(0, vec![h(-1, 2), h(1, 2)]);
        haar[(1, 1)] = LaurentPoly::from_coeffs(0, vec![h(1, 2), h(1, 2)]);
        assert_eq!(haar.det().unwrap(), poly(1, &[(1, 1)]));

        let mismatch = PolyMatrix::<Qi>::zeros(2, 3).mul(&PolyMatrix::zeros(2, 2));
        assert!(matches!(mismatch, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn adjoint_matches_conj_transpose_on_circle() {
        let pol = TolerancePolicy::default_float();
        let half = Complex64::new(0.5, 0.0);
        let mut m = PolyMatrix::<C64>::zeros(2, 2);
        m[(0, 0)] = LaurentPoly::from_coeffs(0, vec![half, half]);
        m[(0, 1)] = LaurentPoly::from_coeffs(0, vec![-half, half]);
        m[(1, 0)] = LaurentPoly::from_coeffs(-1, vec![half, Complex64::new(0.3, 0.1)]);
        m[(1, 1)] = LaurentPoly::from_coeffs(0, vec![half]);
        let z0 = Complex64::from_polar(1.0, 0.77);
        let lhs = m.adjoint().eval(&z0).unwrap();
        let rhs = m.eval(&z0).unwrap().conj_transpose();
        assert!(lhs.max_abs_diff(&rhs) <= pol.residual_eps);
    }
}
