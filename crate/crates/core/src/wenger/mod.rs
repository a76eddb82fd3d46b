//! Linearized Wenger graphs `W_{p^m}(g)` for `g = (xy, x^{p^d}y, ...,
//! x^{p^{(k-1)d}}y)` and their adjacency spectra.
//!
//! Points and lines are both copies of `F_{p^m}^{k+1}`; point `P` and line
//! `L` are adjacent iff `L_{j+1} + P_{j+1} = P_0^{p^{jd}} L_0` for `j < k`.
//! The spectrum is computed three ways: the closed form in terms of the
//! weight distribution `n_r`, a per-`ã` count of roots of affine linearized
//! polynomials, and a dense Jacobi eigensolve of `B Bᵀ`.
//!
//! Exact eigenvalues are kept symbolically by the exponent of `p` in `λ²`.

pub mod jacobi;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::code::{self, ParamsRecord};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldContext};
use crate::linearized::{self, LinearizedPoly};
use crate::parallel;
use crate::params::{big_pow, checked_pow, FieldParams};

/// Largest side `p^{m(k+1)}` for which edge lists are materialized.
pub const EDGE_LIST_CAP: u64 = 1 << 16;
/// Largest side for the dense eigensolver (`B` is at most 256×256).
pub const DENSE_CAP: u64 = 1 << 8;
pub const DEFAULT_DENSE_TOL: f64 = 1e-6;

/// An adjacency eigenvalue `0` or `±sqrt(p^exp)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Eigenvalue {
    Neg(u32),
    Zero,
    Pos(u32),
}

impl Eigenvalue {
    fn order_key(self) -> (i8, i64) {
        match self {
            Eigenvalue::Neg(e) => (-1, -i64::from(e)),
            Eigenvalue::Zero => (0, 0),
            Eigenvalue::Pos(e) => (1, i64::from(e)),
        }
    }

    pub fn sign(self) -> i8 {
        self.order_key().0
    }

    /// Exponent of `p` in `λ²`; `None` for zero.
    pub fn lambda_sq_exponent(self) -> Option<u32> {
        match self {
            Eigenvalue::Neg(e) | Eigenvalue::Pos(e) => Some(e),
            Eigenvalue::Zero => None,
        }
    }

    pub fn lambda_sq(self, p: u64) -> BigUint {
        self.lambda_sq_exponent()
            .map_or_else(BigUint::zero, |e| big_pow(p, u64::from(e)))
    }

    pub fn to_f64(self, p: u64) -> f64 {
        match self.lambda_sq_exponent() {
            None => 0.0,
            Some(e) => f64::from(self.sign()) * (p as f64).powf(f64::from(e) / 2.0),
        }
    }
}

impl Ord for Eigenvalue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Eigenvalue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact eigenvalue multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumMultiset {
    pub params: FieldParams,
    pub entries: BTreeMap<Eigenvalue, BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenRecord {
    pub sign: i8,
    pub lambda_sq_exponent: Option<u32>,
    #[serde(with = "crate::decimal")]
    pub multiplicity: BigUint,
}

impl SpectrumMultiset {
    fn new(params: FieldParams) -> Self {
        SpectrumMultiset {
            params,
            entries: BTreeMap::new(),
        }
    }

    fn add(&mut self, key: Eigenvalue, mult: impl Into<BigUint>) {
        let mult = mult.into();
        if mult.is_zero() {
            return;
        }
        *self.entries.entry(key).or_insert_with(BigUint::zero) += mult;
    }

    pub fn multiplicity(&self, key: Eigenvalue) -> BigUint {
        self.entries.get(&key).cloned().unwrap_or_default()
    }

    pub fn total_multiplicity(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// `Σ mult · λ²`, the trace of the squared adjacency matrix.
    pub fn trace_sq(&self) -> BigUint {
        self.entries
            .iter()
            .map(|(k, m)| k.lambda_sq(self.params.p) * m)
            .sum()
    }

    /// `2 p^{m(k+1)}`.
    pub fn expected_vertices(&self) -> BigUint {
        big_pow(self.params.p, u64::from(self.params.m) * u64::from(self.params.k + 1)) * 2u32
    }

    /// `2|E| = 2 p^{m(k+2)}`.
    pub fn expected_trace_sq(&self) -> BigUint {
        big_pow(self.params.p, u64::from(self.params.m) * u64::from(self.params.k + 2)) * 2u32
    }

    pub fn vertex_mass_ok(&self) -> bool {
        self.total_multiplicity() == self.expected_vertices()
    }

    pub fn trace_sq_ok(&self) -> bool {
        self.trace_sq() == self.expected_trace_sq()
    }

    /// `+λ` and `-λ` have equal multiplicity, hence `Σ λ = 0`.
    pub fn symmetric(&self) -> bool {
        self.entries.iter().all(|(k, m)| match *k {
            Eigenvalue::Pos(e) => self.multiplicity(Eigenvalue::Neg(e)) == *m,
            Eigenvalue::Neg(e) => self.multiplicity(Eigenvalue::Pos(e)) == *m,
            Eigenvalue::Zero => true,
        })
    }

    pub fn records(&self) -> Vec<EigenRecord> {
        self.entries
            .iter()
            .map(|(k, m)| EigenRecord {
                sign: k.sign(),
                lambda_sq_exponent: k.lambda_sq_exponent(),
                multiplicity: m.clone(),
            })
            .collect()
    }

    /// Every eigenvalue as a float, ascending. Only sensible for small graphs.
    pub fn expanded_f64(&self) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for (k, m) in &self.entries {
            let m = m
                .to_usize()
                .filter(|&m| m <= 1 << 24)
                .ok_or_else(|| Error::budget("expanded spectrum", m, 1u64 << 24))?;
            out.extend(std::iter::repeat_n(k.to_f64(self.params.p), m));
        }
        Ok(out)
    }

    fn check_invariants(&self) -> Result<()> {
        if !self.vertex_mass_ok() {
            return Err(Error::Internal(format!(
                "total multiplicity {} != {}",
                self.total_multiplicity(),
                self.expected_vertices()
            )));
        }
        if !self.trace_sq_ok() {
            return Err(Error::Internal(format!(
                "trace of A^2 {} != {}",
                self.trace_sq(),
                self.expected_trace_sq()
            )));
        }
        if !self.symmetric() {
            return Err(Error::Internal("spectrum not symmetric about 0".into()));
        }
        Ok(())
    }
}

/// Zero multiplicity from the closed form:
/// `2(p^m - 1) + 2 Σ_{r=1}^{k-1} (p^m - p^{m-er}) n_r`.
pub fn corrected_zero_multiplicity(params: FieldParams, n: &[BigUint]) -> BigUint {
    let q = params.field_size();
    BigUint::from(2 * (q - 1)) + printed_zero_multiplicity(params, n) * 2u32
}

/// The zero multiplicity as printed in the original statement,
/// `Σ_{r=1}^{k-1} (p^m - p^{m-er}) n_r`, kept for comparison.
pub fn printed_zero_multiplicity(params: FieldParams, n: &[BigUint]) -> BigUint {
    let q = params.field_size();
    (1..params.k as usize)
        .map(|r| {
            let small = checked_pow(params.p, params.m - params.e * r as u32).unwrap();
            BigUint::from(q - small) * &n[r]
        })
        .sum()
}

/// Spectrum from the weight distribution: `±p^m` once each,
/// `±sqrt(p^{m+er})` with multiplicity `p^{m-er} n_r` each, and zero with
/// [`corrected_zero_multiplicity`].
pub fn spectrum_formula(params: FieldParams) -> Result<SpectrumMultiset> {
    let n = code::weight_distribution_formula(params)?.counts;
    let (p, m, e) = (params.p, params.m, params.e);
    let mut s = SpectrumMultiset::new(params);
    s.add(Eigenvalue::Pos(2 * m), 1u32);
    s.add(Eigenvalue::Neg(2 * m), 1u32);
    for (r, nr) in n.iter().enumerate() {
        let r = r as u32;
        let mult = big_pow(p, u64::from(m - e * r)) * nr;
        s.add(Eigenvalue::Pos(m + e * r), mult.clone());
        s.add(Eigenvalue::Neg(m + e * r), mult);
    }
    s.add(Eigenvalue::Zero, corrected_zero_multiplicity(params, &n));
    s.check_invariants()?;
    Ok(s)
}

fn check_side_budget(params: &FieldParams, budget: u64, what: &str) -> Result<u64> {
    let side = big_pow(params.p, u64::from(params.m) * u64::from(params.k + 1));
    match side.to_u64() {
        Some(n) if n <= budget => Ok(n),
        _ => Err(Error::budget(what, side, budget)),
    }
}

/// `p^{m(k+1)}` fits within `budget`.
pub fn counting_fits(params: &FieldParams, budget: u64) -> bool {
    check_side_budget(params, budget, "").is_ok()
}

pub fn dense_fits(params: &FieldParams) -> bool {
    check_side_budget(params, DENSE_CAP, "").is_ok()
}

/// Spectrum by counting: each `ã = (a_{-1}, a)` contributes `±sqrt(p^m N)`
/// where `N = |Null(f_a)|` if `-a_{-1} ∈ Image(f_a)` and `0` otherwise.
pub fn spectrum_counting(ctx: &FieldContext, budget: u64, workers: usize) -> Result<SpectrumMultiset> {
    let params = *ctx.params();
    check_side_budget(&params, budget, "spectrum counting")?;
    debug_assert!(
        ctx.size() > 1 << 16 || linearized::frobenius_tuple_injective(ctx),
        "u -> (u, u^(p^d), ...) must be injective"
    );
    let outer = params.message_count().to_u64().expect("within budget");
    let k = params.k as usize;
    let (p, m) = (params.p, params.m);
    let parts = parallel::map_ranges(outer, workers, |range| {
        let mut local: BTreeMap<Eigenvalue, u64> = BTreeMap::new();
        let mut a = vec![Fe::ZERO; k];
        for idx in range {
            code::decode_index(idx, ctx.size(), &mut a);
            let f = LinearizedPoly::new(ctx, a.clone()).expect("k coefficients");
            let null = f.null_space().size;
            let image = f.image();
            // N = p^{log}; the eigenvalue squared is p^{m + log}
            let log_null = null.ilog(p);
            debug_assert_eq!(p.pow(log_null), null);
            for c in ctx.elements() {
                if image.contains(ctx, ctx.neg(c)) {
                    *local.entry(Eigenvalue::Pos(m + log_null)).or_default() += 1;
                    *local.entry(Eigenvalue::Neg(m + log_null)).or_default() += 1;
                } else {
                    *local.entry(Eigenvalue::Zero).or_default() += 2;
                }
            }
        }
        local
    });
    let mut s = SpectrumMultiset::new(params);
    for part in parts {
        for (key, c) in part {
            s.add(key, c);
        }
    }
    s.check_invariants()?;
    Ok(s)
}

/// The bipartite graph, with points and lines indexed by base-`p^m` digits
/// `(x_0, ..., x_k)`.
#[derive(Debug, Clone)]
pub struct WengerGraph<'a> {
    ctx: &'a FieldContext,
    side: u64,
}

impl<'a> WengerGraph<'a> {
    pub fn new(ctx: &'a FieldContext) -> Result<Self> {
        let side = check_side_budget(ctx.params(), u64::MAX, "Wenger graph")?;
        Ok(WengerGraph { ctx, side })
    }

    pub fn point_count(&self) -> u64 {
        self.side
    }

    pub fn line_count(&self) -> u64 {
        self.side
    }

    pub fn degree(&self) -> u64 {
        u64::from(self.ctx.size())
    }

    fn encode(&self, coords: &[Fe]) -> u64 {
        let q = u64::from(self.ctx.size());
        coords.iter().rev().fold(0u64, |acc, x| acc * q + u64::from(x.index()))
    }

    pub fn decode(&self, idx: u64) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.ctx.params().k as usize + 1];
        code::decode_index(idx, self.ctx.size(), &mut v);
        v
    }

    /// The line through `point` with first coordinate `l0`.
    pub fn line_through(&self, point: &[Fe], l0: Fe) -> Vec<Fe> {
        let ctx = self.ctx;
        let d = u64::from(ctx.params().d);
        let mut line = Vec::with_capacity(point.len());
        line.push(l0);
        for j in 0..point.len() - 1 {
            let g = ctx.mul(ctx.frobenius(point[0], j as u64 * d), l0);
            line.push(ctx.sub(g, point[j + 1]));
        }
        line
    }

    /// Whether `point` and `line` satisfy every incidence equation.
    pub fn incident(&self, point: &[Fe], line: &[Fe]) -> bool {
        let ctx = self.ctx;
        let d = u64::from(ctx.params().d);
        (0..point.len() - 1).all(|j| {
            ctx.add(line[j + 1], point[j + 1]) == ctx.mul(ctx.frobenius(point[0], j as u64 * d), line[0])
        })
    }

    /// Streams `(point, line)` index pairs, `p^m` per point.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.side).flat_map(move |pi| {
            let point = self.decode(pi);
            self.ctx
                .elements()
                .map(move |l0| (pi, self.encode(&self.line_through(&point, l0))))
        })
    }

    /// Materialized edge list; checks that every vertex has degree `p^m`.
    pub fn edge_list(&self) -> Result<Vec<(u64, u64)>> {
        if self.side > EDGE_LIST_CAP {
            return Err(Error::budget("Wenger edge list", self.side, EDGE_LIST_CAP));
        }
        let edges: Vec<(u64, u64)> = self.edges().collect();
        let mut line_deg = vec![0u64; self.side as usize];
        for &(_, l) in &edges {
            line_deg[l as usize] += 1;
        }
        if line_deg.iter().any(|&d| d != self.degree()) {
            return Err(Error::Internal("line degrees are not all p^m".into()));
        }
        Ok(edges)
    }

    /// 0/1 biadjacency matrix `B` (points × lines).
    pub fn biadjacency(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.side as usize;
        let mut b = vec![vec![0.0; n]; n];
        for (pi, li) in self.edge_list()? {
            b[pi as usize][li as usize] = 1.0;
        }
        Ok(b)
    }
}

/// Outcome of the dense numerical eigensolve.
#[derive(Debug, Clone)]
pub struct DenseSpectrum {
    /// All `2 p^{m(k+1)}` adjacency eigenvalues, ascending.
    pub values: Vec<f64>,
    pub sweeps: usize,
}

impl DenseSpectrum {
    /// Largest deviation from the exact multiset after sorting both.
    pub fn residual(&self, exact: &SpectrumMultiset) -> Result<f64> {
        let reference = exact.expanded_f64()?;
        if reference.len() != self.values.len() {
            return Ok(f64::INFINITY);
        }
        Ok(self
            .values
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Adjacency eigenvalues `±σ_i`, where `σ_i²` are the Jacobi eigenvalues of
/// `B Bᵀ`.
pub fn spectrum_dense(ctx: &FieldContext) -> Result<DenseSpectrum> {
    let params = ctx.params();
    check_side_budget(params, DENSE_CAP, "dense eigensolve")?;
    let b = WengerGraph::new(ctx)?.biadjacency()?;
    let n = b.len();
    let mut bbt = jacobi::SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
            bbt.set(i, j, v);
            bbt.set(j, i, v);
        }
    }
    let res = jacobi::eigenvalues(&bbt)?;
    let mut values = Vec::with_capacity(2 * n);
    for ev in res.eigenvalues {
        let sigma = ev.max(0.0).sqrt();
        values.push(sigma);
        values.push(-sigma);
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Ok(DenseSpectrum {
        values,
        sweeps: res.sweeps,
    })
}

/// Which methods a report should run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub counting: bool,
    pub dense: bool,
    pub budget: u64,
    pub workers: usize,
    pub tol: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            counting: true,
            dense: true,
            budget: crate::DEFAULT_BUDGET,
            workers: 1,
            tol: DEFAULT_DENSE_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodsRecord {
    pub formula: Vec<EigenRecord>,
    pub counting: Option<Vec<EigenRecord>>,
    pub dense_residual: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassChecks {
    pub vertices: bool,
    pub trace_sq: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

/// Reconciliation of every computed spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WengerReport {
    pub params: ParamsRecord,
    pub methods: MethodsRecord,
    pub formula_counting_agree: Option<bool>,
    pub dense_agree: Option<bool>,
    pub mass_checks: MassChecks,
    pub paper_zero_expr: String,
    pub corrected_zero: String,
    pub erratum_flagged: bool,
    pub verdict: Verdict,
}

impl WengerReport {
    /// True when the closed form and the counting oracle disagree, the one
    /// outcome treated as a hard failure.
    pub fn hard_failure(&self) -> bool {
        self.formula_counting_agree == Some(false)
    }

    /// CSV rows `method,sign,lambda_sq_exponent,multiplicity`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("method,sign,lambda_sq_exponent,multiplicity\n");
        let mut emit = |name: &str, recs: &[EigenRecord]| {
            for r in recs {
                let exp = r.lambda_sq_exponent.map(|e| e.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{name},{},{exp},{}", r.sign, r.multiplicity);
            }
        };
        emit("formula", &self.methods.formula);
        if let Some(c) = &self.methods.counting {
            emit("counting", c);
        }
        s
    }
}

pub fn reconcile_report(ctx: &FieldContext, opts: &ReportOptions) -> Result<WengerReport> {
    let params = *ctx.params();
    let formula = spectrum_formula(params)?;
    let counting = if opts.counting {
        Some(spectrum_counting(ctx, opts.budget, opts.workers)?)
    } else {
        None
    };
    let dense_residual = if opts.dense {
        Some(spectrum_dense(ctx)?.residual(&formula)?)
    } else {
        None
    };
    let n = code::weight_distribution_formula(params)?.counts;
    let printed = printed_zero_multiplicity(params, &n);
    let corrected = corrected_zero_multiplicity(params, &n);
    let formula_counting_agree = counting.as_ref().map(|c| c.entries == formula.entries);
    let dense_agree = dense_residual.map(|r| r <= opts.tol);
    let mass_checks = MassChecks {
        vertices: formula.vertex_mass_ok() && counting.as_ref().is_none_or(|c| c.vertex_mass_ok()),
        trace_sq: formula.trace_sq_ok() && counting.as_ref().is_none_or(|c| c.trace_sq_ok()),
    };
    let consistent = formula_counting_agree != Some(false)
        && dense_agree != Some(false)
        && mass_checks.vertices
        && mass_checks.trace_sq;
    Ok(WengerReport {
        params: params.into(),
        methods: MethodsRecord {
            formula: formula.records(),
            counting: counting.as_ref().map(|c| c.records()),
            dense_residual,
        },
        formula_counting_agree,
        dense_agree,
        mass_checks,
        erratum_flagged: printed != corrected,
        paper_zero_expr: printed.to_string(),
        corrected_zero: corrected.to_string(),
        verdict: if consistent {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        },
    })
}
