//! The quadratic field `Q(sqrt d)`: discriminant, ramified primes and units.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intkit::{cf_expand, factorize, PeriodicCf};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadField {
    pub d: i64,
    /// Fundamental discriminant: `d` when `d = 1 mod 4`, otherwise `4d`.
    #[serde(rename = "D")]
    pub disc: i64,
    /// Primes dividing the discriminant, ascending. Subsets of these are
    /// encoded as bitmasks in this order everywhere.
    pub ramified: Vec<u64>,
    pub r: usize,
    pub is_real: bool,
}

impl QuadField {
    pub fn from_d(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::invalid(format!("d = {d} does not define a quadratic field")));
        }
        let fact = factorize(d)?;
        if !fact.is_squarefree() {
            return Err(Error::invalid(format!("d = {d} is not squarefree")));
        }
        let disc = if d.rem_euclid(4) == 1 {
            d
        } else {
            d.checked_mul(4).ok_or(Error::Overflow)?
        };
        let mut ramified: Vec<u64> = fact.primes().collect();
        if d.rem_euclid(4) == 3 {
            ramified.insert(0, 2);
        }
        Ok(QuadField {
            d,
            disc,
            r: ramified.len(),
            ramified,
            is_real: d > 0,
        })
    }

    /// Mask of the ramified primes dividing `d`, i.e. the support of the
    /// principal ideal `(sqrt d)`.
    pub fn support_of_d_mask(&self) -> u32 {
        self.ramified
            .iter()
            .enumerate()
            .filter(|&(_, &p)| self.d % p as i64 == 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// The all-ones mask over the ramified primes.
    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.r) - 1) as u32
    }

    /// Continued fraction of the generator of the ring of integers:
    /// `sqrt d`, or `(1 + sqrt d) / 2` when `d = 1 mod 4`.
    fn integral_generator_cf(&self) -> Result<PeriodicCf> {
        if self.d.rem_euclid(4) == 1 {
            cf_expand(1, 2, self.d as i128)
        } else {
            cf_expand(0, 1, self.d as i128)
        }
    }
}

/// A unit `x + y sqrt d`, or `(x + y sqrt d) / 2` when `halved`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadUnit {
    #[serde(with = "crate::serde_str")]
    pub x: BigInt,
    #[serde(with = "crate::serde_str")]
    pub y: BigInt,
    pub halved: bool,
    pub norm: i8,
}

impl QuadUnit {
    /// `x^2 - d y^2`, which is `4 * norm` for halved units.
    pub fn raw_norm(&self, d: i64) -> BigInt {
        &self.x * &self.x - BigInt::from(d) * &self.y * &self.y
    }
}

/// Fundamental unit of a real quadratic field, read off the first convergent
/// of the integral generator's continued fraction that has unit norm.
pub fn fundamental_unit(field: &QuadField) -> Result<QuadUnit> {
    if !field.is_real {
        return Err(Error::invalid("fundamental unit requested for an imaginary field"));
    }
    let cf = field.integral_generator_cf()?;
    let d = BigInt::from(field.d);
    let one_mod_four = field.d.rem_euclid(4) == 1;
    let quarter = BigInt::from((field.d - 1) / 4);

    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    // a unit shows up no later than the end of the first full period
    let horizon = cf.preperiod.len() + cf.period.len() + 1;
    for i in 0..horizon {
        let a = BigInt::from(cf.term(i));
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);

        let norm = if one_mod_four {
            &p * &p - &p * &q - &quarter * &q * &q
        } else {
            &p * &p - &d * &q * &q
        };
        let norm = if norm.is_one() {
            1
        } else if norm == -BigInt::one() {
            -1
        } else {
            continue;
        };
        let two = BigInt::from(2);
        let unit = if !one_mod_four {
            QuadUnit { x: p, y: q, halved: false, norm }
        } else if (&q % &two).is_zero() {
            QuadUnit { x: &p - &q / &two, y: &q / &two, halved: false, norm }
        } else {
            QuadUnit { x: &two * &p - &q, y: q, halved: true, norm }
        };
        return Ok(unit);
    }
    unreachable!("continued fraction period always yields a unit")
}

/// Whether the ring of integers has a unit of norm -1.
///
/// Only meaningful for real fields. Units of imaginary fields all have
/// norm +1 (norms are positive definite there) and narrow and wide class
/// groups coincide, so this returns `false` for `d < 0`.
pub fn has_norm_minus_one(field: &QuadField) -> Result<bool> {
    if !field.is_real {
        return Ok(false);
    }
    Ok(fundamental_unit(field)?.norm == -1)
}

/// Independent route: the period of the integral generator's continued
/// fraction has odd length exactly when a norm -1 unit exists.
pub fn norm_minus_one_by_period_parity(field: &QuadField) -> Result<bool> {
    if !field.is_real {
        return Ok(false);
    }
    Ok(field.integral_generator_cf()?.period.len() % 2 == 1)
}
