//! Exact coefficient arithmetic, sparse bivariate polynomials, truncated
//! bivariate series and resultants.

mod bipoly;
pub(crate) mod modular;
mod parse;
mod resultant;
mod series;
mod upoly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use bipoly::BiPoly;
pub use modular::resultant_y_order;
pub use parse::{parse_bipoly, parse_bipoly_qt};
pub use resultant::{resultant, resultant_y, sylvester_resultant_at};
pub(crate) use series::Reversion;
pub use series::{series_compose_invert, substitute_monomial_map, Bound, TruncSeries, XSeries};
pub use upoly::UPoly;

/// Rational numbers with arbitrary precision, always in lowest terms.
pub type Rat = BigRational;

/// Univariate polynomials in the family parameter `t`.
pub type QT = UPoly<Rat>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Exact "p/q" (or "p") rendering.
pub fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Binomial coefficient with a rational top argument.
pub fn gen_binom(r: &Rat, j: u32) -> Rat {
    let mut acc = <Rat as One>::one();
    for i in 0..j {
        acc = acc * (r - rint(i as i64)) / rint(i as i64 + 1);
    }
    acc
}

pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Coefficient rings usable in polynomials: Q and polynomial rings over them.
pub trait Coef: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(r: Rat) -> Self;
    fn scale(&self, r: &Rat) -> Self;
    /// `Some(q)` with `q * o == self`, `None` when `o` does not divide `self`.
    fn exact_div(&self, o: &Self) -> Option<Self>;
    /// The value as a rational constant, if it is one.
    fn as_rat(&self) -> Option<Rat>;
    /// The parameter `t`, for rings that have one.
    fn param() -> Option<Self>;
    /// Human readable form; `atomic` is false when a sum needs parentheses.
    fn render(&self) -> (String, bool);

    fn is_one(&self) -> bool {
        self.as_rat().map(|r| One::is_one(&r)).unwrap_or(false)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Coef for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            None
        } else {
            Some(self / o)
        }
    }
    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn param() -> Option<Self> {
        None
    }
    fn render(&self) -> (String, bool) {
        (rat_str(self), !self.is_negative() && self.is_integer())
    }
}
