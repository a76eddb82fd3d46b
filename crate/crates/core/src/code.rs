//! The cyclic code `C = {c_a = (f_a(1), f_a(π), ..., f_a(π^{p^m-2}))}` and
//! three independent computations of its weight distribution.
//!
//! A nonzero `a` has `w(c_a) = p^m - |Null(f_a)| = p^m - p^{er}` for some
//! `0 ≤ r ≤ k-1`; `n_r` counts the nonzero `a` with that weight.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};
use crate::lattice::{self, Lattice, Subspace};
use crate::linalg::{self, FieldMatrix};
use crate::linearized::{self, LinearizedPoly};
use crate::params::{big_pow, FieldParams};
use crate::qbinom;
use crate::parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Formula,
    BruteForce,
    Moebius,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::BruteForce => "brute_force",
            Method::Moebius => "moebius",
        }
    }
}

/// `n_r` for `0 ≤ r < k`, counting nonzero coefficient vectors only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub params: FieldParams,
    pub counts: Vec<BigUint>,
    pub method: Method,
}

impl WeightDistribution {
    /// `Σ_r n_r`, which must be `p^{mk} - 1`.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Same counts regardless of how they were computed.
    pub fn same_counts(&self, other: &WeightDistribution) -> bool {
        self.params == other.params && self.counts == other.counts
    }

    pub fn to_table(&self) -> WeightTable {
        let p = &self.params;
        WeightTable {
            params: ParamsRecord::from(*p),
            method: self.method,
            rows: self
                .counts
                .iter()
                .enumerate()
                .map(|(r, n)| WeightRow {
                    r: r as u32,
                    weight: p.weight_for_rank(r as u32),
                    count: n.clone(),
                })
                .collect(),
            zero_codeword: ZeroRow {
                weight: 0,
                count: BigUint::one(),
            },
            total: self.total(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub p: u64,
    pub m: u32,
    pub d: u32,
    pub k: u32,
    pub e: u32,
}

impl From<FieldParams> for ParamsRecord {
    fn from(f: FieldParams) -> Self {
        ParamsRecord {
            p: f.p,
            m: f.m,
            d: f.d,
            k: f.k,
            e: f.e,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub r: u32,
    pub weight: u64,
    #[serde(with = "crate::decimal")]
    pub count: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroRow {
    pub weight: u64,
    #[serde(with = "crate::decimal")]
    pub count: BigUint,
}

/// Serializable weight table. `total` is `Σ n_r`; the zero codeword is
/// reported separately so that `total + 1 = p^{mk}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTable {
    pub params: ParamsRecord,
    pub method: Method,
    pub rows: Vec<WeightRow>,
    pub zero_codeword: ZeroRow,
    #[serde(with = "crate::decimal")]
    pub total: BigUint,
}

impl WeightTable {
    /// CSV with header `r,weight,count`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("r,weight,count\n");
        for row in &self.rows {
            let _ = writeln!(s, "{},{},{}", row.r, row.weight, row.count);
        }
        s
    }
}

/// `(f_a(1), f_a(π), ..., f_a(π^{p^m-2}))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub values: Vec<Fe>,
}

impl Codeword {
    pub fn weight(&self) -> u64 {
        self.values.iter().filter(|v| !v.is_zero()).count() as u64
    }
}

pub fn codeword(ctx: &FieldContext, a: &[Fe]) -> Result<Codeword> {
    let f = LinearizedPoly::new(ctx, a.to_vec())?;
    Ok(Codeword {
        values: ctx.exp_table().iter().map(|&x| f.evaluate(x)).collect(),
    })
}

/// Hamming weight of `c_a`, checked against `p^m - |Null(f_a)|`.
pub fn codeword_weight(ctx: &FieldContext, a: &[Fe]) -> Result<u64> {
    let w = codeword(ctx, a)?.weight();
    let null = LinearizedPoly::new(ctx, a.to_vec())?.null_space().size;
    if w != u64::from(ctx.size()) - null {
        return Err(Error::Internal(format!(
            "weight {w} != p^m - |Null| = {} for a = {a:?}",
            u64::from(ctx.size()) - null
        )));
    }
    Ok(w)
}

/// Closed form for `n_r`:
/// `[n, r]_{q} Σ_{i=0}^{k-r-1} (-1)^i q^{i(i-1)/2} [n-r, i]_{q} (p^{m(k-r-i)} - 1)`
/// with `q = p^e`, `n = m/e`.
pub fn weight_distribution_formula(params: FieldParams) -> Result<WeightDistribution> {
    let FieldParams { p, m, k, e, .. } = params;
    let q = params.subfield_size();
    let n = u64::from(params.rel_dim());
    let (m, k) = (u64::from(m), u64::from(k));
    let mut counts = Vec::with_capacity(k as usize);
    for r in 0..k {
        let mut sum = BigInt::zero();
        for i in 0..k - r {
            let term = BigInt::from(big_pow(p, u64::from(e) * i * i.saturating_sub(1) / 2))
                * BigInt::from(qbinom::gaussian_binom(n - r, i, q)?)
                * (BigInt::from(big_pow(p, m * (k - r - i))) - 1);
            if i % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let nr = BigInt::from(qbinom::gaussian_binom(n, r, q)?) * sum;
        if nr.is_negative() {
            return Err(Error::Internal(format!("n_{r} = {nr} is negative")));
        }
        counts.push(nr.to_biguint().expect("nonnegative"));
    }
    Ok(WeightDistribution {
        params,
        counts,
        method: Method::Formula,
    })
}

fn check_budget(params: &FieldParams, budget: u64, what: &str) -> Result<u64> {
    let required = params.message_count();
    match required.to_u64() {
        Some(n) if n <= budget => Ok(n),
        _ => Err(Error::budget(what, required, budget)),
    }
}

/// `p^{mk}` is within `budget`.
pub fn bruteforce_fits(params: &FieldParams, budget: u64) -> bool {
    check_budget(params, budget, "").is_ok()
}

/// The subspace lattice of `F_{p^m}` over `F_{p^e}` is within the lattice caps.
pub fn moebius_fits(params: &FieldParams) -> bool {
    lattice::check_caps(params.subfield_size(), params.rel_dim()).is_ok()
}

/// Decodes enumeration index `idx` into `(a_0, ..., a_{len-1})`, base `p^m`.
pub(crate) fn decode_index(mut idx: u64, size: u32, out: &mut [Fe]) {
    let q = u64::from(size);
    for slot in out.iter_mut() {
        *slot = Fe::from_index((idx % q) as u32);
        idx /= q;
    }
}

/// Histogram `weight ↦ #{a ≠ 0 : w(c_a) = weight}`, computed by evaluating
/// every codeword.
pub fn weight_histogram(
    ctx: &FieldContext,
    budget: u64,
    workers: usize,
) -> Result<BTreeMap<u64, u64>> {
    let total = check_budget(ctx.params(), budget, "brute-force weight enumeration")?;
    let k = ctx.params().k as usize;
    let frob: Vec<Vec<Fe>> = linearized::frobenius_exponents(ctx)
        .into_iter()
        .map(|t| ctx.frobenius_table(t))
        .collect();
    let nonzero: Vec<Fe> = ctx.exp_table().to_vec();
    let parts = parallel::map_ranges(total, workers, |range| {
        let mut hist = BTreeMap::new();
        let mut a = vec![Fe::ZERO; k];
        for idx in range {
            if idx == 0 {
                continue;
            }
            decode_index(idx, ctx.size(), &mut a);
            let mut w = 0u64;
            for &x in &nonzero {
                let mut acc = Fe::ZERO;
                for (j, &aj) in a.iter().enumerate() {
                    if !aj.is_zero() {
                        acc = ctx.add(acc, ctx.mul(aj, frob[j][x.index() as usize]));
                    }
                }
                w += u64::from(!acc.is_zero());
            }
            *hist.entry(w).or_insert(0u64) += 1;
        }
        hist
    });
    let mut merged = BTreeMap::new();
    for part in parts {
        for (w, c) in part {
            *merged.entry(w).or_insert(0) += c;
        }
    }
    Ok(merged)
}

/// `n_r` by enumerating all nonzero `a` and measuring codeword weights.
pub fn weight_distribution_bruteforce(
    ctx: &FieldContext,
    budget: u64,
    workers: usize,
) -> Result<WeightDistribution> {
    let params = *ctx.params();
    let hist = weight_histogram(ctx, budget, workers)?;
    let mut counts = vec![BigUint::zero(); params.k as usize];
    for (w, c) in hist {
        let r = (0..params.k)
            .find(|&r| params.weight_for_rank(r) == w)
            .ok_or_else(|| Error::Internal(format!("unexpected codeword weight {w}")))?;
        counts[r as usize] += c;
    }
    Ok(WeightDistribution {
        params,
        counts,
        method: Method::BruteForce,
    })
}

/// `|C_V|`: the number of `a` (zero included) with `Null(f_a) ⊇ V^⊥`,
/// from the kernel of the Moore matrix of a basis of `V^⊥`.
pub fn c_v_count(ctx: &FieldContext, v: &Subspace) -> Result<BigUint> {
    c_v_count_with(ctx, v, &ctx.trace_gram())
}

/// [`c_v_count`] with `⊥` taken under the form given by `gram`.
pub fn c_v_count_with(ctx: &FieldContext, v: &Subspace, gram: &FieldMatrix) -> Result<BigUint> {
    let perp = lattice::orth_complement_with(ctx, v, gram);
    let k = ctx.params().k as u64;
    let xs = perp.basis_elements(ctx);
    let rank = linalg::rank(ctx, &linearized::moore_matrix(ctx, &xs, k as usize)) as u64;
    let m = u64::from(ctx.m());
    let count = big_pow(ctx.p(), m * (k - rank));
    let dim = perp.dim() as u64;
    let expected = if dim >= k {
        BigUint::one()
    } else {
        big_pow(ctx.p(), m * (k - dim))
    };
    if count != expected {
        return Err(Error::Internal(format!(
            "|C_V| = {count} but dim V^perp = {dim} predicts {expected}"
        )));
    }
    Ok(count)
}

/// `n_r` through Möbius inversion on the subspace lattice of `F_{p^m}` over
/// `F_{p^e}`: `|S_V| = Σ_{W⊆V} μ(V/W)(|C_W| - 1)`, then
/// `n_r = Σ_{dim V^⊥ = r} |S_V|`.
pub fn weight_distribution_moebius(ctx: &FieldContext) -> Result<WeightDistribution> {
    weight_distribution_moebius_with(ctx, &ctx.trace_gram())
}

pub fn weight_distribution_moebius_with(
    ctx: &FieldContext,
    gram: &FieldMatrix,
) -> Result<WeightDistribution> {
    let params = *ctx.params();
    let lat = Lattice::over(ctx.clone())?;
    let c_minus_one: Vec<BigInt> = lat
        .subspaces()
        .iter()
        .map(|w| c_v_count_with(ctx, w, gram).map(|c| BigInt::from(c) - 1))
        .collect::<Result<_>>()?;
    let s = lat.moebius_transform(&c_minus_one);
    let n = lat.ambient_dim();
    let mut by_r = vec![BigInt::zero(); n + 1];
    for (v, sv) in lat.subspaces().iter().zip(&s) {
        if sv.is_negative() {
            return Err(Error::Internal(format!("|S_V| = {sv} is negative")));
        }
        by_r[n - v.dim()] += sv;
    }
    if by_r[params.k as usize..].iter().any(|x| !x.is_zero()) {
        return Err(Error::Internal(
            "nonzero a with null space dimension >= k".into(),
        ));
    }
    let counts = by_r[..params.k as usize]
        .iter()
        .map(|x| x.to_biguint().expect("checked nonnegative"))
        .collect();
    Ok(WeightDistribution {
        params,
        counts,
        method: Method::Moebius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, m: u32, d: u32, k: u32) -> FieldContext {
        FieldContext::build(FieldParams::new(p, m, d, k).unwrap()).unwrap()
    }

    fn counts(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn codeword_examples() {
        let f = ctx(2, 2, 1, 2);
        let cw = codeword(&f, &[Fe::ZERO, Fe::ZERO]).unwrap();
        assert_eq!(cw.values.len(), 3);
        assert_eq!(cw.weight(), 0);
        assert_eq!(codeword_weight(&f, &[Fe::ONE, Fe::ZERO]).unwrap(), 3);
        let cw = codeword(&f, &[Fe::ONE, Fe::ONE]).unwrap();
        assert_eq!(cw.values, vec![Fe::ZERO, Fe::ONE, Fe::ONE]);
        assert_eq!(codeword_weight(&f, &[Fe::ONE, Fe::ONE]).unwrap(), 2);
    }

    #[test]
    fn formula_examples() {
        let wd = weight_distribution_formula(FieldParams::new(2, 2, 1, 2).unwrap()).unwrap();
        assert_eq!(wd.counts, counts(&[6, 9]));
        let wd = weight_distribution_formula(FieldParams::new(2, 4, 2, 2).unwrap()).unwrap();
        assert_eq!(wd.counts, counts(&[180, 75]));
        assert_eq!(BigUint::from(75u32), BigUint::from(15u32 * 5));
        for (p, m, d) in [(2, 3, 1), (3, 4, 2), (5, 2, 1), (7, 3, 3)] {
            let params = FieldParams::new(p, m, d, 1).unwrap();
            let wd = weight_distribution_formula(params).unwrap();
            assert_eq!(wd.counts, counts(&[p.pow(m) - 1]));
        }
    }

    #[test]
    fn three_routes_agree_small() {
        for (p, m, d, k) in [(2, 2, 1, 2), (2, 3, 1, 2), (2, 4, 2, 2), (3, 2, 1, 2), (2, 4, 1, 3), (2, 2, 1, 1)] {
            let f = ctx(p, m, d, k);
            let a = weight_distribution_formula(*f.params()).unwrap();
            let b = weight_distribution_bruteforce(&f, 1 << 26, 1).unwrap();
            let c = weight_distribution_moebius(&f).unwrap();
            assert!(a.same_counts(&b) && b.same_counts(&c), "({p},{m},{d},{k})");
            assert_eq!(a.total(), f.params().message_count() - 1u32);
        }
    }

    #[test]
    fn bruteforce_worker_independent() {
        let f = ctx(2, 4, 1, 3);
        let one = weight_histogram(&f, 1 << 26, 1).unwrap();
        let four = weight_histogram(&f, 1 << 26, 4).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn bruteforce_budget() {
        let f = ctx(2, 4, 1, 3);
        let err = weight_distribution_bruteforce(&f, 100, 1).unwrap_err();
        assert!(matches!(err, Error::Budget { ref required, .. } if required == "4096"));
    }

    #[test]
    fn c_v_examples() {
        let f = ctx(2, 2, 1, 2);
        let lat = Lattice::over(f.clone()).unwrap();
        for v in lat.subspaces() {
            let c = c_v_count(&f, v).unwrap();
            let perp = 2 - v.dim();
            let expected = match perp {
                0 => 16u32,
                1 => 4,
                _ => 1,
            };
            assert_eq!(c, BigUint::from(expected));
        }
    }

    /// Oracle for |C_V|: count a with f_a vanishing on V^⊥ by enumeration.
    #[test]
    fn c_v_matches_enumeration() {
        let f = ctx(2, 4, 1, 2);
        let lat = Lattice::over(f.clone()).unwrap();
        let q = u64::from(f.size());
        for v in lat.subspaces() {
            let perp = lattice::orth_complement(&f, v).elements(&f);
            let mut a = vec![Fe::ZERO; 2];
            let brute = (0..q * q)
                .filter(|&idx| {
                    decode_index(idx, f.size(), &mut a);
                    let poly = LinearizedPoly::new(&f, a.clone()).unwrap();
                    perp.iter().all(|&x| poly.evaluate(x).is_zero())
                })
                .count() as u64;
            assert_eq!(c_v_count(&f, v).unwrap(), BigUint::from(brute));
        }
    }

    #[test]
    fn moebius_invariant_under_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, m, d, k) in [(2, 4, 1, 3), (2, 4, 2, 2), (3, 2, 1, 2), (2, 6, 2, 3)] {
            let f = ctx(p, m, d, k);
            let n = f.rel_dim();
            let sub = f.subfield_elements();
            let gram = loop {
                let mut g = FieldMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        g.set(i, j, sub[rng.gen_range(0..sub.len())]);
                    }
                }
                if linalg::rank(&f, &g) == n {
                    break g;
                }
            };
            let a = weight_distribution_moebius(&f).unwrap();
            let b = weight_distribution_moebius_with(&f, &gram).unwrap();
            assert_eq!(a.counts, b.counts);
        }
    }

    #[test]
    fn independent_of_primitive_polynomial() {
        let params = FieldParams::new(2, 4, 1, 2).unwrap();
        let f1 = FieldContext::build(params).unwrap();
        let f2 = FieldContext::build_with(params, Some(&[1, 0, 0, 1, 1]), 1 << 24).unwrap();
        assert_ne!(f1.modulus(), f2.modulus());
        assert_eq!(
            weight_histogram(&f1, 1 << 20, 1).unwrap(),
            weight_histogram(&f2, 1 << 20, 1).unwrap()
        );
        assert_eq!(
            weight_distribution_moebius(&f1).unwrap().counts,
            weight_distribution_moebius(&f2).unwrap().counts
        );
    }

    #[test]
    fn table_json_and_csv() {
        let wd = weight_distribution_formula(FieldParams::new(2, 2, 1, 2).unwrap()).unwrap();
        let t = wd.to_table();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"params":{"p":2,"m":2,"d":1,"k":2,"e":1},"method":"formula","rows":[{"r":0,"weight":3,"count":"6"},{"r":1,"weight":2,"count":"9"}],"zero_codeword":{"weight":0,"count":"1"},"total":"15"}"#
        );
        let back: WeightTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.to_csv(), "r,weight,count\n0,3,6\n1,2,9\n");
    }
}
