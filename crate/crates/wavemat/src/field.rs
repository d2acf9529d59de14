//! Scalar fields closed under complex conjugation.
//!
//! Two backends are provided: double-precision complex numbers ([`C64`])
//! and exact Gaussian rationals ([`Qi`], complex numbers with rational
//! real and imaginary parts). Every algorithm in this crate uses field
//! operations only — no square roots — so both backends run the same code.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Element of a conjugation-closed subfield of the complex numbers.
///
/// The trait is open for extension: any conjugation-closed field with the
/// operations below can back the whole library.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact (no rounding); comparisons are then
    /// exact and all tolerances collapse to zero.
    const EXACT: bool;

    /// Backend tag used in serialized documents ("c64" or "qi").
    const TAG: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;

    /// Embed a double as a real field element. Exact on both backends
    /// (every finite f64 is a dyadic rational).
    fn from_f64(x: f64) -> Self;

    /// Complex conjugate within the field.
    fn conj(&self) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    /// Structural zero test (exact equality with 0, no tolerance).
    fn is_zero_raw(&self) -> bool;

    /// Magnitude |a| as f64. Approximate for the exact backend; used only
    /// for pivot selection and reporting, never for exact decisions.
    fn abs_f64(&self) -> f64;

    /// True when the value is a strictly positive real number.
    fn is_positive_real(&self) -> bool;

    /// Lossy conversion to a complex double.
    fn to_c64(&self) -> Complex64;
}

/// Zero and residual thresholds consulted by every tolerance-sensitive
/// operation. The exact backend always uses [`TolerancePolicy::exact`],
/// where both thresholds are identically zero and comparisons are exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    /// Magnitude below which a float scalar is treated as zero.
    pub zero_eps: f64,
    /// Bound on matrix-identity residuals (paraunitarity checks etc.).
    pub residual_eps: f64,
}

impl TolerancePolicy {
    pub const fn exact() -> Self {
        TolerancePolicy { zero_eps: 0.0, residual_eps: 0.0 }
    }

    /// Defaults for the float backend; comfortable margin above
    /// double-precision accumulation at desk scales (m <= 8, N <= 64).
    pub const fn default_float() -> Self {
        TolerancePolicy { zero_eps: 1e-10, residual_eps: 1e-9 }
    }

    /// The natural policy for a backend: exact fields get exact comparisons.
    pub fn for_scalar<S: Scalar>() -> Self {
        if S::EXACT {
            Self::exact()
        } else {
            Self::default_float()
        }
    }

    pub fn is_zero<S: Scalar>(&self, a: &S) -> bool {
        if S::EXACT {
            a.is_zero_raw()
        } else {
            a.abs_f64() <= self.zero_eps
        }
    }

    pub fn within_residual(&self, r: f64) -> bool {
        r <= self.residual_eps
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self::default_float()
    }
}

/// Double-precision complex scalar.
pub type C64 = Complex64;

impl Scalar for C64 {
    const EXACT: bool = false;
    const TAG: &'static str = "c64";

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.norm_sqr() == 0.0 {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn is_zero_raw(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn abs_f64(&self) -> f64 {
        self.norm()
    }
    fn is_positive_real(&self) -> bool {
        self.re > 0.0
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

/// Gaussian rational: an element of Q(i), with exact rational real and
/// imaginary parts. The smallest conjugation-closed field containing Q
/// that still admits complex data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Qi {
    pub re: BigRational,
    pub im: BigRational,
}

impl Qi {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Qi { re, im }
    }

    pub fn from_ints(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Qi {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Qi { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for Qi {
    /// Canonical encoding: "p/q" for real values ("/q" omitted when q = 1),
    /// "p/q+r/s*i" otherwise, with the sign of the imaginary part embedded.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl Add for Qi {
    type Output = Qi;
    fn add(self, rhs: Qi) -> Qi {
        Qi { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for Qi {
    type Output = Qi;
    fn sub(self, rhs: Qi) -> Qi {
        Qi { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for Qi {
    type Output = Qi;
    fn mul(self, rhs: Qi) -> Qi {
        Qi {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi { re: -self.re, im: -self.im }
    }
}

impl Div for Qi {
    type Output = Qi;
    fn div(self, rhs: Qi) -> Qi {
        rhs.try_inv().map(|inv| self * inv).expect("division by zero")
    }
}

impl Scalar for Qi {
    const EXACT: bool = true;
    const TAG: &'static str = "qi";

    fn zero() -> Self {
        Qi { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn one() -> Self {
        Qi { re: BigRational::one(), im: BigRational::zero() }
    }
    fn from_i64(n: i64) -> Self {
        Qi { re: BigRational::from(BigInt::from(n)), im: BigRational::zero() }
    }
    fn from_f64(x: f64) -> Self {
        Qi {
            re: BigRational::from_float(x).expect("finite float"),
            im: BigRational::zero(),
        }
    }
    fn conj(&self) -> Self {
        Qi { re: self.re.clone(), im: -&self.im }
    }
    fn try_inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            None
        } else {
            Some(Qi { re: &self.re / &n, im: -&self.im / &n })
        }
    }
    fn is_zero_raw(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }
    fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}
