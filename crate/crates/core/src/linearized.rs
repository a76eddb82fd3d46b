//! Linearized polynomials `f_a(x) = Σ_{j<k} a_j x^{p^{jd}}` and the Moore
//! matrices they induce.
//!
//! `f_a` is `F_{p^e}`-linear on `F_{p^m}`, so its roots form an
//! `F_{p^e}`-subspace. Null spaces are computed both by scanning the whole
//! field and as the kernel of the `(m/e)×(m/e)` matrix of `f_a` in subfield
//! coordinates.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};
use crate::linalg::{self, FieldMatrix, Rref};
use crate::params::checked_pow;

/// Largest field scanned by the exhaustive root finder.
pub const EXHAUSTIVE_ROOT_CAP: u32 = 1 << 20;

#[derive(Debug, Clone)]
pub struct LinearizedPoly<'a> {
    ctx: &'a FieldContext,
    coeffs: Vec<Fe>,
    /// Frobenius exponents `jd mod m`.
    exps: Vec<u64>,
}

/// Null space of `f_a` over `F_{p^e}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullSpaceResult {
    /// Dimension over `F_{p^e}`.
    pub r: u32,
    /// `p^{er}`.
    pub size: u64,
    /// Canonical RREF basis in subfield coordinates.
    pub basis: Vec<Vec<Fe>>,
}

/// Reduced exponents `jd mod m` for `j < k`.
pub fn frobenius_exponents(ctx: &FieldContext) -> Vec<u64> {
    let params = ctx.params();
    let m = u64::from(params.m);
    let exps: Vec<u64> = (0..u64::from(params.k))
        .map(|j| j * u64::from(params.d) % m)
        .collect();
    debug_assert_eq!(
        exps.iter().collect::<BTreeSet<_>>().len(),
        exps.len(),
        "k <= m/e makes the reduced exponents distinct"
    );
    exps
}

impl<'a> LinearizedPoly<'a> {
    /// `coeffs` must have exactly `k` entries.
    pub fn new(ctx: &'a FieldContext, coeffs: Vec<Fe>) -> Result<Self> {
        let k = ctx.params().k as usize;
        if coeffs.len() != k {
            return Err(Error::Param(format!(
                "expected {k} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(LinearizedPoly {
            ctx,
            coeffs,
            exps: frobenius_exponents(ctx),
        })
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn evaluate(&self, x: Fe) -> Fe {
        let ctx = self.ctx;
        self.coeffs
            .iter()
            .zip(&self.exps)
            .fold(Fe::ZERO, |acc, (&a, &t)| {
                if a.is_zero() {
                    acc
                } else {
                    ctx.add(acc, ctx.mul(a, ctx.frobenius(x, t)))
                }
            })
    }

    /// Matrix of `f_a` over `F_{p^e}`: column `j` holds the coordinates of
    /// `f_a(π^j)`.
    pub fn coordinate_matrix(&self) -> FieldMatrix {
        let ctx = self.ctx;
        let n = ctx.rel_dim();
        let mut mat = FieldMatrix::zeros(n, n);
        for (j, &b) in ctx.subfield_basis().iter().enumerate() {
            for (i, c) in ctx.coords(self.evaluate(b)).into_iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        mat
    }

    /// Null space as the kernel of [`coordinate_matrix`](Self::coordinate_matrix).
    pub fn null_space(&self) -> NullSpaceResult {
        let ctx = self.ctx;
        let n = ctx.rel_dim();
        let ker = linalg::kernel_basis(ctx, &self.coordinate_matrix());
        let basis = linalg::rref(ctx, &FieldMatrix::from_rows(&ker, n)).basis_rows();
        let r = basis.len() as u32;
        NullSpaceResult {
            r,
            size: checked_pow(ctx.subfield_elements().len() as u64, r).expect("fits field"),
            basis,
        }
    }

    /// All roots in `F_{p^m}`, by evaluating at every element.
    pub fn roots_exhaustive(&self) -> Result<Vec<Fe>> {
        if self.ctx.size() > EXHAUSTIVE_ROOT_CAP {
            return Err(Error::budget(
                "exhaustive root search",
                self.ctx.size(),
                EXHAUSTIVE_ROOT_CAP,
            ));
        }
        Ok(self
            .ctx
            .elements()
            .filter(|&x| self.evaluate(x).is_zero())
            .collect())
    }

    /// Null space by both methods, failing if they disagree.
    pub fn null_space_checked(&self) -> Result<NullSpaceResult> {
        let ctx = self.ctx;
        let ns = self.null_space();
        let roots = self.roots_exhaustive()?;
        if roots.len() as u64 != ns.size {
            return Err(Error::Internal(format!(
                "null space size mismatch: {} roots by scan, {} by kernel",
                roots.len(),
                ns.size
            )));
        }
        let n = ctx.rel_dim();
        let from_roots = linalg::rref(
            ctx,
            &FieldMatrix::from_rows(&roots.iter().map(|&x| ctx.coords(x)).collect::<Vec<_>>(), n),
        );
        if from_roots.basis_rows() != ns.basis {
            return Err(Error::Internal("null space bases disagree".into()));
        }
        // closure under addition on a sample of pairs
        for (i, &x) in roots.iter().enumerate().take(16) {
            let y = roots[(i * 7 + 3) % roots.len()];
            if !self.evaluate(ctx.add(x, y)).is_zero() {
                return Err(Error::Internal("root set not additive".into()));
            }
        }
        Ok(ns)
    }

    /// Echelon basis of the image in subfield coordinates.
    pub fn image(&self) -> ImageSpace {
        let ctx = self.ctx;
        let rows: Vec<Vec<Fe>> = ctx
            .subfield_basis()
            .iter()
            .map(|&b| ctx.coords(self.evaluate(b)))
            .collect();
        ImageSpace {
            rref: linalg::rref(ctx, &FieldMatrix::from_rows(&rows, ctx.rel_dim())),
        }
    }

    pub fn image_contains(&self, y: Fe) -> bool {
        self.image().contains(self.ctx, y)
    }

    /// `p^m / |Null(f_a)|`.
    pub fn image_size(&self) -> u64 {
        u64::from(self.ctx.size()) / self.null_space().size
    }

    /// The image as a set, by evaluating at every element.
    pub fn image_exhaustive(&self) -> BTreeSet<Fe> {
        self.ctx.elements().map(|x| self.evaluate(x)).collect()
    }
}

/// Image of a linearized polynomial, kept in echelon form for membership tests.
#[derive(Debug, Clone)]
pub struct ImageSpace {
    rref: Rref,
}

impl ImageSpace {
    /// Dimension over `F_{p^e}`.
    pub fn dim(&self) -> usize {
        self.rref.rank
    }

    pub fn contains(&self, ctx: &FieldContext, y: Fe) -> bool {
        self.rref.row_space_contains(ctx, &ctx.coords(y))
    }
}

/// The `r×k` matrix with entry `(i, j) = x_i^{p^{jd}}`.
pub fn moore_matrix(ctx: &FieldContext, xs: &[Fe], k: usize) -> FieldMatrix {
    let d = u64::from(ctx.params().d);
    let mut mat = FieldMatrix::zeros(xs.len(), k);
    for (i, &x) in xs.iter().enumerate() {
        for j in 0..k {
            mat.set(i, j, ctx.frobenius(x, j as u64 * d));
        }
    }
    mat
}

/// Rank of `xs` as vectors over `F_{p^e}`.
pub fn subfield_rank(ctx: &FieldContext, xs: &[Fe]) -> usize {
    let rows: Vec<Vec<Fe>> = xs.iter().map(|&x| ctx.coords(x)).collect();
    linalg::rank(ctx, &FieldMatrix::from_rows(&rows, ctx.rel_dim()))
}

pub fn independent_over_subfield(ctx: &FieldContext, xs: &[Fe]) -> bool {
    subfield_rank(ctx, xs) == xs.len()
}

/// Outcome of a seeded Moore full-rank experiment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MooreTrialReport {
    pub independent_tuples: u64,
    pub full_rank: u64,
    pub dependent_tuples: u64,
    pub dependent_deficient: u64,
    pub proportional_checks: u64,
    pub proportional_deficient: u64,
}

impl MooreTrialReport {
    pub fn passed(&self) -> bool {
        self.independent_tuples == self.full_rank
            && self.dependent_tuples == self.dependent_deficient
            && self.proportional_checks == self.proportional_deficient
    }
}

/// Draws random tuples of `1..=k` elements until `trials` of them are
/// `F_{p^e}`-independent, checking that every independent tuple gives a
/// full-rank Moore matrix and every dependent one a deficient matrix. Also
/// checks rows `x, c·x` with `c` in the subfield.
pub fn moore_rank_trials(ctx: &FieldContext, trials: u64, seed: u64) -> MooreTrialReport {
    let k = ctx.params().k as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = MooreTrialReport {
        independent_tuples: 0,
        full_rank: 0,
        dependent_tuples: 0,
        dependent_deficient: 0,
        proportional_checks: 0,
        proportional_deficient: 0,
    };
    while rep.independent_tuples < trials {
        let r = rng.gen_range(1..=k);
        let xs: Vec<Fe> = (0..r)
            .map(|_| Fe::from_index(rng.gen_range(0..ctx.size())))
            .collect();
        let rank = linalg::rank(ctx, &moore_matrix(ctx, &xs, k));
        if independent_over_subfield(ctx, &xs) {
            rep.independent_tuples += 1;
            rep.full_rank += u64::from(rank == r);
        } else {
            rep.dependent_tuples += 1;
            rep.dependent_deficient += u64::from(rank < r);
        }
    }
    if k >= 2 {
        let sub = ctx.subfield_elements();
        for _ in 0..trials.min(100) {
            let x = Fe::from_index(rng.gen_range(1..ctx.size()));
            let c = sub[rng.gen_range(0..sub.len())];
            let rank = linalg::rank(ctx, &moore_matrix(ctx, &[x, ctx.mul(c, x)], k));
            rep.proportional_checks += 1;
            rep.proportional_deficient += u64::from(rank < 2);
        }
    }
    rep
}

/// Whether `u ↦ (u, u^{p^d}, ..., u^{p^{(k-1)d}})` is injective on the field.
pub fn frobenius_tuple_injective(ctx: &FieldContext) -> bool {
    let exps = frobenius_exponents(ctx);
    let images: BTreeSet<Vec<Fe>> = ctx
        .elements()
        .map(|u| exps.iter().map(|&t| ctx.frobenius(u, t)).collect())
        .collect();
    images.len() == ctx.size() as usize
}
