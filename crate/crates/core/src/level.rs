//! Exact rationals and the algebraic thresholds `c·r^(1/m)` used as regularity levels.
//!
//! Regularity parameters such as `eps^(1/4)·k^(2k)` are usually irrational. A [`Level`]
//! keeps them symbolic and answers every comparison against a nonnegative rational by
//! raising both sides to the `m`-th power, so verdicts never depend on floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `numer / denom` as a big rational.
pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

pub fn int(value: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(value.into())
}

/// Parses `p/q`, `p`, or a negative variant of either.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Domain(format!("not a rational number: {text:?}"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Domain(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn to_biguint(r: &BigInt) -> BigUint {
    r.to_biguint().expect("nonnegative integer")
}

fn floor_nonneg(r: &BigRational) -> BigUint {
    debug_assert!(!r.is_negative());
    to_biguint(&(r.numer() / r.denom()))
}

/// Exact integer `m`-th root of a rational, if it has one.
fn exact_root(r: &BigRational, m: u32) -> Option<BigRational> {
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let rn = num.nth_root(m);
    let rd = den.nth_root(m);
    (rn.pow(m) == *num && rd.pow(m) == *den)
        .then(|| BigRational::new(BigInt::from(rn), BigInt::from(rd)))
}

/// A nonnegative real of the form `factor · radicand^(1/root)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    factor: BigRational,
    radicand: BigRational,
    root: u32,
    // `factor·radicand` as (p, q) when the level is rational and both fit in u64.
    small: Option<(u128, u128)>,
}

impl Level {
    pub fn rational(value: BigRational) -> Self {
        Self::root_times(value, 1, BigRational::one())
    }

    /// `factor · radicand^(1/root)`, simplified to a rational when the root is exact.
    pub fn root_times(radicand: BigRational, root: u32, factor: BigRational) -> Self {
        assert!(root >= 1, "root index must be positive");
        assert!(
            !radicand.is_negative() && !factor.is_negative(),
            "levels are nonnegative"
        );
        let (factor, radicand, root) = match exact_root(&radicand, root) {
            Some(r) => (factor * r, BigRational::one(), 1),
            None => (factor, radicand, root),
        };
        let small = (root == 1)
            .then(|| {
                let v = &factor * &radicand;
                Some((v.numer().to_u64()? as u128, v.denom().to_u64()? as u128))
            })
            .flatten();
        Level {
            factor,
            radicand,
            root,
            small,
        }
    }

    /// The rational value, when the level is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.root == 1).then(|| &self.factor * &self.radicand)
    }

    pub fn factor(&self) -> &BigRational {
        &self.factor
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn scaled(&self, by: &BigRational) -> Level {
        Level::root_times(self.radicand.clone(), self.root, &self.factor * by)
    }

    pub fn is_zero(&self) -> bool {
        self.factor.is_zero() || self.radicand.is_zero()
    }

    /// `self^root`, a rational.
    fn power(&self) -> BigRational {
        num_traits::pow(self.factor.clone(), self.root as usize) * &self.radicand
    }

    /// `floor(self · scale)`.
    pub fn floor_mul(&self, scale: &BigUint) -> BigUint {
        let y = &self.factor * BigRational::from_integer(BigInt::from(scale.clone()));
        if self.root == 1 {
            return floor_nonneg(&(y * &self.radicand));
        }
        let w = num_traits::pow(y, self.root as usize) * &self.radicand;
        floor_nonneg(&w).nth_root(self.root)
    }

    /// `ceil(self · scale)`.
    pub fn ceil_mul(&self, scale: &BigUint) -> BigUint {
        let z = self.floor_mul(scale);
        let y = &self.factor * BigRational::from_integer(BigInt::from(scale.clone()));
        let w = num_traits::pow(y, self.root as usize) * &self.radicand;
        let zr = BigRational::from_integer(BigInt::from(z.pow(self.root)));
        if zr == w {
            z
        } else {
            z + 1u32
        }
    }

    /// `num > self · scale`.
    pub fn exceeded_by(&self, num: u128, scale: u128) -> bool {
        if let Some((p, q)) = self.small {
            if let (Some(l), Some(r)) = (num.checked_mul(q), p.checked_mul(scale)) {
                return l > r;
            }
        }
        BigUint::from(num) > self.floor_mul(&BigUint::from(scale))
    }

    /// `num ≥ self · scale`.
    pub fn reached_by(&self, num: u128, scale: u128) -> bool {
        if let Some((p, q)) = self.small {
            if let (Some(l), Some(r)) = (num.checked_mul(q), p.checked_mul(scale)) {
                return l >= r;
            }
        }
        BigUint::from(num) >= self.ceil_mul(&BigUint::from(scale))
    }

    /// Smallest integer `s` with `s ≥ self · scale`.
    pub fn min_count(&self, scale: usize) -> usize {
        self.ceil_mul(&BigUint::from(scale))
            .to_usize()
            .unwrap_or(usize::MAX)
    }

    /// Compares `self` with a rational `x`.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        if x.is_negative() {
            return Ordering::Greater;
        }
        if self.root == 1 {
            return (&self.factor * &self.radicand).cmp(x);
        }
        self.power()
            .cmp(&num_traits::pow(x.clone(), self.root as usize))
    }

    pub fn cmp_level(&self, other: &Level) -> Ordering {
        match other.as_rational() {
            Some(r) => self.cmp_rational(&r),
            None => {
                // Compare self^(r1 r2) with other^(r1 r2).
                let l = num_traits::pow(self.power(), other.root as usize);
                let r = num_traits::pow(other.power(), self.root as usize);
                l.cmp(&r)
            }
        }
    }

    pub fn at_least_one(&self) -> bool {
        self.cmp_rational(&BigRational::one()) != Ordering::Less
    }

    pub fn to_f64(&self) -> f64 {
        let f = self.factor.to_f64().unwrap_or(f64::NAN);
        let r = self.radicand.to_f64().unwrap_or(f64::NAN);
        f * r.powf(1.0 / self.root as f64)
    }
}

impl From<BigRational> for Level {
    fn from(value: BigRational) -> Self {
        Level::rational(value)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 1 {
            return f.write_str(&format_rational(&(&self.factor * &self.radicand)));
        }
        if !self.factor.is_one() {
            write!(f, "{}*", format_rational(&self.factor))?;
        }
        write!(f, "({})^(1/{})", format_rational(&self.radicand), self.root)
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            exact: String,
            approx: f64,
        }
        Repr {
            exact: self.to_string(),
            approx: self.to_f64(),
        }
        .serialize(s)
    }
}

/// `base^exp` for small exponents, as a big integer.
pub fn big_pow(base: u64, exp: u32) -> BigUint {
    BigUint::from(base).pow(exp)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}
