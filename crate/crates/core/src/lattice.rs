//! The lattice of `F_q`-subspaces of `F_q^n`, with `F_q` realized as the
//! embedded subfield `F_{p^e}` of a [`FieldContext`] and `n = m/e`.
//!
//! Subspaces are keyed by their reduced row echelon basis, which makes
//! enumeration duplicate-free and equality a plain comparison.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};
use crate::linalg::{self, FieldMatrix, Rref};
use crate::params::{checked_pow, is_prime, FieldParams};
use crate::qbinom;

/// Largest ambient space `q^n` the lattice will enumerate.
pub const LATTICE_CAP: u64 = 1 << 12;
/// Largest number of subspaces the lattice will materialize.
pub const LATTICE_SIZE_CAP: u64 = 1 << 16;

/// A subspace of `F_q^n` stored by its canonical RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Fe>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Fe::ZERO; ambient_dim];
                v[i] = Fe::ONE;
                v
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// The span of `vectors`, canonicalized.
    pub fn span(ctx: &FieldContext, vectors: &[Vec<Fe>], ambient_dim: usize) -> Self {
        let r = linalg::rref(ctx, &FieldMatrix::from_rows(vectors, ambient_dim));
        Subspace {
            ambient_dim,
            basis: r.basis_rows(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.basis
    }

    fn as_rref(&self) -> Rref {
        let pivot_cols = self
            .basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        Rref {
            matrix: FieldMatrix::from_rows(&self.basis, self.ambient_dim),
            rank: self.basis.len(),
            pivot_cols,
        }
    }

    pub fn contains_vector(&self, ctx: &FieldContext, v: &[Fe]) -> bool {
        self.as_rref().row_space_contains(ctx, v)
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, ctx: &FieldContext, other: &Subspace) -> bool {
        if self.dim() > other.dim() {
            return false;
        }
        let r = other.as_rref();
        self.basis.iter().all(|v| r.row_space_contains(ctx, v))
    }

    /// Basis vectors mapped into `F_{p^m}` through the subfield coordinates.
    pub fn basis_elements(&self, ctx: &FieldContext) -> Vec<Fe> {
        self.basis.iter().map(|c| ctx.from_coords(c)).collect()
    }

    /// Every vector of the subspace, as field elements (`q^dim` of them).
    pub fn elements(&self, ctx: &FieldContext) -> Vec<Fe> {
        let scalars = ctx.subfield_elements();
        let basis = self.basis_elements(ctx);
        let mut out = vec![Fe::ZERO];
        for b in basis {
            out = out
                .iter()
                .flat_map(|&acc| scalars.iter().map(move |&c| (acc, c)))
                .map(|(acc, c)| ctx.add(acc, ctx.mul(c, b)))
                .collect();
        }
        out
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orthogonal complement of `v` under the trace form `Tr(xy)`.
pub fn orth_complement(ctx: &FieldContext, v: &Subspace) -> Subspace {
    orth_complement_with(ctx, v, &ctx.trace_gram())
}

/// Orthogonal complement under the bilinear form `⟨x, y⟩ = xᵀ G y` on
/// subfield coordinates. `gram` must be invertible for the result to have
/// dimension `n - dim v`.
pub fn orth_complement_with(ctx: &FieldContext, v: &Subspace, gram: &FieldMatrix) -> Subspace {
    let n = v.ambient_dim;
    if v.dim() == 0 {
        return Subspace::full(n);
    }
    let rows: Vec<Vec<Fe>> = v
        .basis
        .iter()
        .map(|x| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Fe::ZERO, |acc, i| ctx.add(acc, ctx.mul(x[i], gram.get(i, j))))
                })
                .collect()
        })
        .collect();
    let ker = linalg::kernel_basis(ctx, &FieldMatrix::from_rows(&rows, n));
    Subspace::span(ctx, &ker, n)
}

/// All subspaces of `F_q^n`, sorted by `(dimension, basis)`, together with
/// the containment relation.
#[derive(Debug, Clone)]
pub struct Lattice {
    ctx: FieldContext,
    subspaces: Vec<Subspace>,
    /// `below[u]` lists the indices `v` with `subspaces[v] ⊆ subspaces[u]`.
    below: Vec<Vec<usize>>,
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

impl Lattice {
    /// Lattice of `F_q^n` with `F_q` embedded in `GF(q^n)`, so that the same
    /// context also carries the trace form for complements.
    pub fn for_q(q: u64, n: u32) -> Result<Self> {
        let (p, a) = prime_power(q)?;
        if n == 0 {
            return Err(Error::Param("ambient dimension must be positive".into()));
        }
        check_caps(q, n)?;
        let params = FieldParams::new(p, a * n, a, 1)?;
        Self::over(FieldContext::build(params)?)
    }

    /// Lattice of `F_{p^m}` viewed as an `F_{p^e}`-space.
    pub fn over(ctx: FieldContext) -> Result<Self> {
        let q = ctx.subfield_elements().len() as u64;
        let n = ctx.rel_dim();
        check_caps(q, n as u32)?;
        let scalars = ctx.subfield_elements().to_vec();
        let mut subspaces = Vec::new();
        for r in 0..=n {
            for pivots in combinations(n, r) {
                // free slots: row i, columns after its pivot that are not pivots
                let free: Vec<(usize, usize)> = pivots
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &pc)| {
                        let pivots = &pivots;
                        (pc + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
                    })
                    .collect();
                let count = (q as usize).pow(free.len() as u32);
                for mut idx in 0..count {
                    let mut basis = vec![vec![Fe::ZERO; n]; r];
                    for (i, &pc) in pivots.iter().enumerate() {
                        basis[i][pc] = Fe::ONE;
                    }
                    for &(i, c) in &free {
                        basis[i][c] = scalars[idx % q as usize];
                        idx /= q as usize;
                    }
                    subspaces.push(Subspace {
                        ambient_dim: n,
                        basis,
                    });
                }
            }
        }
        subspaces.sort();
        let below = subspaces
            .iter()
            .map(|u| {
                subspaces
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.is_subspace_of(&ctx, u))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(Lattice {
            ctx,
            subspaces,
            below,
        })
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    /// Scalar field size `q`.
    pub fn q(&self) -> u64 {
        self.ctx.subfield_elements().len() as u64
    }

    pub fn ambient_dim(&self) -> usize {
        self.ctx.rel_dim()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    /// Indices of the subspaces contained in subspace `u`.
    pub fn below(&self, u: usize) -> &[usize] {
        &self.below[u]
    }

    pub fn index_of(&self, v: &Subspace) -> Option<usize> {
        self.subspaces.binary_search(v).ok()
    }

    /// Number of subspaces of each dimension `0..=n`.
    pub fn counts_by_dim(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.ambient_dim() + 1];
        for s in &self.subspaces {
            counts[s.dim()] += 1;
        }
        counts
    }

    fn mu(&self, dim: usize) -> BigInt {
        qbinom::moebius_mu(dim as u64, self.q())
    }

    /// `Σ_{V ⊆ U} μ_q(dim V)` for every `U`.
    pub fn moebius_sums(&self) -> Vec<BigInt> {
        (0..self.len())
            .map(|u| self.below[u].iter().map(|&v| self.mu(self.subspaces[v].dim())).sum())
            .collect()
    }

    /// True iff the Möbius sum over every interval `[0, U]` is `[U = 0]`.
    pub fn moebius_delta_check(&self) -> bool {
        self.moebius_sums()
            .iter()
            .zip(&self.subspaces)
            .all(|(s, u)| *s == if u.dim() == 0 { BigInt::one() } else { BigInt::zero() })
    }

    /// `g(U) = Σ_{V ⊆ U} f(V)`.
    pub fn zeta_transform(&self, f: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(f.len(), self.len());
        (0..self.len())
            .map(|u| self.below[u].iter().map(|&v| &f[v]).sum())
            .collect()
    }

    /// `f(U) = Σ_{V ⊆ U} μ_q(U/V) g(V)`, with `μ_q(U/V)` taken on
    /// `dim U - dim V`.
    pub fn moebius_transform(&self, g: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(g.len(), self.len());
        (0..self.len())
            .map(|u| {
                let du = self.subspaces[u].dim();
                self.below[u]
                    .iter()
                    .map(|&v| self.mu(du - self.subspaces[v].dim()) * &g[v])
                    .sum()
            })
            .collect()
    }

    /// Checks both inversion directions on the table `f`.
    pub fn inversion_check(&self, f: &[BigInt]) -> bool {
        self.moebius_transform(&self.zeta_transform(f)) == f
            && self.zeta_transform(&self.moebius_transform(f)) == f
    }

    /// Pseudo-random integer table on the lattice from `seed`.
    pub fn seeded_table(&self, seed: u64) -> Vec<BigInt> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..self.len())
            .map(|_| BigInt::from(rng.gen_range(-1000i64..=1000)))
            .collect()
    }

    /// Checks that `⊥` is an inclusion-reversing involution with
    /// `dim V + dim V^⊥ = n` on the whole lattice.
    pub fn orth_involution_check(&self) -> bool {
        let n = self.ambient_dim();
        let perp: Vec<Option<usize>> = self
            .subspaces
            .iter()
            .map(|v| self.index_of(&orth_complement(&self.ctx, v)))
            .collect();
        let Some(perp) = perp.into_iter().collect::<Option<Vec<usize>>>() else {
            return false;
        };
        (0..self.len()).all(|v| {
            perp[perp[v]] == v
                && self.subspaces[v].dim() + self.subspaces[perp[v]].dim() == n
                && self.below[v].iter().all(|&w| self.below[perp[w]].contains(&perp[v]))
        })
    }
}

/// Fails with a budget error if the lattice of `F_q^n` exceeds either cap.
pub fn check_caps(q: u64, n: u32) -> Result<()> {
    match checked_pow(q, n) {
        Some(s) if s <= LATTICE_CAP => {}
        _ => {
            return Err(Error::budget(
                format!("subspace lattice of F_{q}^{n}"),
                format!("{q}^{n}"),
                LATTICE_CAP,
            ))
        }
    }
    let galois: BigInt = (0..=u64::from(n))
        .map(|i| qbinom::gaussian_binom(u64::from(n), i, q).map(BigInt::from))
        .sum::<Result<BigInt>>()?;
    if galois.to_u64().is_none_or(|g| g > LATTICE_SIZE_CAP) {
        return Err(Error::budget(
            format!("subspace lattice of F_{q}^{n}"),
            galois,
            LATTICE_SIZE_CAP,
        ));
    }
    Ok(())
}

/// Splits `q = p^a`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Param(format!("q must be a prime power (got {q})")));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let (mut rest, mut a) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        a += 1;
    }
    if rest != 1 || !is_prime(p) {
        return Err(Error::Param(format!("q must be a prime power (got {q})")));
    }
    Ok((p, a))
}
