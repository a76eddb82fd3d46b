use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The parameters `(p, m, d, k)` of a linearized code, with the derived
/// subfield degree `e = gcd(m, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u64,
    pub m: u32,
    pub d: u32,
    pub k: u32,
    pub e: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `base^exp` if it fits in a `u64`.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow::Pow::pow(BigUint::from(base), exp)
}

impl FieldParams {
    /// Validates `(p, m, d, k)` and derives `e`.
    pub fn new(p: u64, m: u32, d: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Param(format!("p must be prime (got {p})")));
        }
        if m == 0 {
            return Err(Error::Param("m must be a positive integer".into()));
        }
        if d == 0 {
            return Err(Error::Param("d must be a positive integer".into()));
        }
        if k == 0 {
            return Err(Error::Param("k must be a positive integer".into()));
        }
        let e = m.gcd(&d);
        let n = m / e;
        if k > n {
            return Err(Error::Param(format!("k exceeds m/e = {n} (got k = {k})")));
        }
        if checked_pow(p, m).is_none_or(|q| q > (1u64 << 62)) {
            return Err(Error::Param(format!("p^m = {p}^{m} is too large")));
        }
        Ok(FieldParams { p, m, d, k, e })
    }

    /// `m / e`, the dimension of `F_{p^m}` over `F_{p^e}`.
    pub fn rel_dim(&self) -> u32 {
        self.m / self.e
    }

    /// `p^m`, the field size.
    pub fn field_size(&self) -> u64 {
        checked_pow(self.p, self.m).expect("validated in FieldParams::new")
    }

    /// `p^e`, the subfield size.
    pub fn subfield_size(&self) -> u64 {
        checked_pow(self.p, self.e).expect("e <= m")
    }

    /// `p^{mk}`, the number of coefficient vectors.
    pub fn message_count(&self) -> BigUint {
        big_pow(self.p, u64::from(self.m) * u64::from(self.k))
    }

    /// Hamming weight `p^m - p^{er}` of a codeword whose null space has dimension `r`.
    pub fn weight_for_rank(&self, r: u32) -> u64 {
        self.field_size() - checked_pow(self.p, self.e * r).expect("er <= m")
    }
}
