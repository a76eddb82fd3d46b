//! Gaussian binomial coefficients and related q-analog identities, in exact
//! big-integer arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel;

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::Param(format!("q must be at least 2 (got {q})")));
    }
    Ok(())
}

fn qpow(q: u64, n: u64) -> BigUint {
    Pow::pow(BigUint::from(q), n)
}

/// Number of `i`-dimensional subspaces of `F_q^n`; zero when `i > n`.
///
/// Evaluated as the running product `[n-i+t, t]_q = [n-i+t-1, t-1]_q ·
/// (q^{n-i+t} - 1) / (q^t - 1)`, so every division is exact.
pub fn gaussian_binom(n: u64, i: u64, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if i > n {
        return Ok(BigUint::zero());
    }
    let i = i.min(n - i);
    let one = BigUint::one();
    let mut acc = BigUint::one();
    for t in 1..=i {
        acc *= qpow(q, n - i + t) - &one;
        acc /= qpow(q, t) - &one;
    }
    Ok(acc)
}

/// `μ_q` on a space of dimension `dim`: `(-1)^dim q^{dim(dim-1)/2}`.
pub fn moebius_mu(dim: u64, q: u64) -> BigInt {
    let mag = BigInt::from(qpow(q, dim * dim.saturating_sub(1) / 2));
    if dim.is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

/// Coefficients of `t^0, ..., t^n` in `∏_{i<n} (1 + q^i t)`.
pub fn product_formula_coeffs(n: u64, q: u64) -> Vec<BigUint> {
    let mut coeffs = vec![BigUint::one()];
    for i in 0..n {
        let qi = qpow(q, i);
        let mut next = vec![BigUint::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j] += c;
            next[j + 1] += c * &qi;
        }
        coeffs = next;
    }
    coeffs
}

/// Both sides of the conjectured identity
/// `[u,i]_{q²} Σ_{j≤i} q^j [i,j]_{q²} = [u,i]_q ∏_{j<i} (1 + q^{u-j})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCheck {
    pub q: u64,
    pub u: u64,
    pub i: u64,
    pub holds: bool,
    #[serde(with = "crate::decimal")]
    pub lhs: BigUint,
    #[serde(with = "crate::decimal")]
    pub rhs: BigUint,
}

pub fn verify_conjecture(q: u64, u: u64, i: u64) -> Result<ConjectureCheck> {
    check_q(q)?;
    if i > u {
        return Ok(ConjectureCheck {
            q,
            u,
            i,
            holds: true,
            lhs: BigUint::zero(),
            rhs: BigUint::zero(),
        });
    }
    let q2 = q * q;
    let sum: BigUint = (0..=i)
        .map(|j| Ok(qpow(q, j) * gaussian_binom(i, j, q2)?))
        .sum::<Result<BigUint>>()?;
    let lhs = gaussian_binom(u, i, q2)? * sum;
    let prod: BigUint = (0..i).map(|j| qpow(q, u - j) + 1u32).product();
    let rhs = gaussian_binom(u, i, q)? * prod;
    Ok(ConjectureCheck {
        q,
        u,
        i,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Checks every `(q, u, i)` with `q` in `qs`, `u ≤ u_max`, `i ≤ u`. Cells
/// `(q, u)` are spread across `workers`; output order is `qs` order, then
/// `u`, then `i`, independent of `workers`.
pub fn conjecture_sweep(qs: &[u64], u_max: u64, workers: usize) -> Result<Vec<ConjectureCheck>> {
    for &q in qs {
        check_q(q)?;
    }
    let cells: Vec<(u64, u64)> = qs
        .iter()
        .flat_map(|&q| (0..=u_max).map(move |u| (q, u)))
        .collect();
    let per_cell = parallel::map_items(&cells, workers, |&(q, u)| {
        (0..=u)
            .map(|i| verify_conjecture(q, u, i))
            .collect::<Result<Vec<_>>>()
    });
    let mut out = Vec::new();
    for cell in per_cell {
        out.extend(cell?);
    }
    Ok(out)
}
