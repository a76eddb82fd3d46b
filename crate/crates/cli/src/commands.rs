use std::fmt::Write as _;

use lincode::code::{self, Method as CodeMethod, ParamsRecord, WeightTable};
use lincode::lattice::Lattice;
use lincode::linearized::{self, MooreTrialReport};
use lincode::qbinom::{self, ConjectureCheck};
use lincode::wenger::{self, ReportOptions, WengerReport};
use lincode::{Error, FieldContext, FieldParams, Result, DEFAULT_FIELD_CAP};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::args::{FieldArgs, Format, Method};

/// Rendered output plus the exit status it implies.
pub struct Outcome {
    pub text: String,
    pub disagreement: bool,
}

fn render<T: Serialize>(value: &T, format: Format, csv: impl FnOnce() -> String, table: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Csv => csv(),
        Format::Table => table(),
    }
}

fn build_ctx(f: &FieldArgs) -> Result<FieldContext> {
    let params = FieldParams::new(f.p, f.m, f.d, f.k)?;
    FieldContext::build_with(params, f.modulus.as_deref(), DEFAULT_FIELD_CAP)
}

fn params_line(p: &ParamsRecord) -> String {
    format!("p={} m={} d={} k={} e={}", p.p, p.m, p.d, p.k, p.e)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FieldInfo {
    pub params: ParamsRecord,
    pub field_size: u64,
    pub subfield_size: u64,
    pub rel_dim: u32,
    pub modulus: Vec<u64>,
    pub pi_order: u64,
    pub pi_primitive: bool,
}

pub fn field_info(f: &FieldArgs, format: Format) -> Result<Outcome> {
    let ctx = build_ctx(f)?;
    let params = *ctx.params();
    let pi_order = ctx
        .multiplicative_order(ctx.pi())
        .ok_or_else(|| Error::Internal("pi has no multiplicative order".into()))?;
    let info = FieldInfo {
        params: params.into(),
        field_size: params.field_size(),
        subfield_size: params.subfield_size(),
        rel_dim: params.rel_dim(),
        modulus: ctx.modulus().to_vec(),
        pi_order,
        pi_primitive: pi_order == params.field_size() - 1,
    };
    let modulus = info.modulus.iter().map(u64::to_string).collect::<Vec<_>>();
    let text = render(
        &info,
        format,
        || {
            format!(
                "key,value\np,{}\nm,{}\nd,{}\nk,{}\ne,{}\nfield_size,{}\nsubfield_size,{}\nrel_dim,{}\nmodulus,{}\npi_order,{}\npi_primitive,{}\n",
                info.params.p, info.params.m, info.params.d, info.params.k, info.params.e,
                info.field_size, info.subfield_size, info.rel_dim, modulus.join(" "),
                info.pi_order, info.pi_primitive
            )
        },
        || {
            format!(
                "GF({}^{}) over GF({}^{})  {}\nmodulus      [{}]\norder of pi  {} (primitive: {})\n",
                info.params.p, info.params.m, info.params.p, info.params.e,
                params_line(&info.params), modulus.join(","), info.pi_order, info.pi_primitive
            )
        },
    );
    Ok(Outcome {
        text,
        disagreement: !info.pi_primitive,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Skipped {
    pub method: String,
    pub reason: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WeightDistReport {
    pub params: ParamsRecord,
    pub methods: Vec<WeightTable>,
    pub skipped: Vec<Skipped>,
    pub agree: bool,
}

pub fn weight_dist(f: &FieldArgs, method: Method, budget: u64, workers: usize, format: Format) -> Result<Outcome> {
    let params = FieldParams::new(f.p, f.m, f.d, f.k)?;
    let wanted: Vec<CodeMethod> = match method {
        Method::Formula => vec![CodeMethod::Formula],
        Method::BruteForce => vec![CodeMethod::BruteForce],
        Method::Moebius => vec![CodeMethod::Moebius],
        Method::All => vec![CodeMethod::Formula, CodeMethod::BruteForce, CodeMethod::Moebius],
        Method::Counting | Method::Dense => {
            return Err(Error::Param(
                "weight-dist supports formula, brute_force, moebius or all".into(),
            ))
        }
    };
    let all = method == Method::All;
    // the formula path needs no field tables
    let ctx = if wanted.iter().any(|m| *m != CodeMethod::Formula) {
        Some(build_ctx(f)?)
    } else {
        None
    };
    let mut tables = Vec::new();
    let mut skipped = Vec::new();
    for m in wanted {
        let dist = match m {
            CodeMethod::Formula => code::weight_distribution_formula(params),
            CodeMethod::BruteForce => {
                if all && !code::bruteforce_fits(&params, budget) {
                    skipped.push(Skipped {
                        method: m.as_str().into(),
                        reason: format!("p^(mk) = {} exceeds budget {budget}", params.message_count()),
                    });
                    continue;
                }
                code::weight_distribution_bruteforce(ctx.as_ref().expect("built"), budget, workers)
            }
            CodeMethod::Moebius => {
                if all && !code::moebius_fits(&params) {
                    skipped.push(Skipped {
                        method: m.as_str().into(),
                        reason: "subspace lattice exceeds cap".into(),
                    });
                    continue;
                }
                code::weight_distribution_moebius(ctx.as_ref().expect("built"))
            }
        }?;
        tables.push(dist.to_table());
    }
    let agree = tables.windows(2).all(|w| w[0].rows == w[1].rows);
    let report = WeightDistReport {
        params: params.into(),
        methods: tables,
        skipped,
        agree,
    };
    let text = render(
        &report,
        format,
        || {
            let mut s = String::from("method,r,weight,count\n");
            for t in &report.methods {
                for row in &t.rows {
                    let _ = writeln!(s, "{},{},{},{}", t.method.as_str(), row.r, row.weight, row.count);
                }
            }
            s
        },
        || {
            let mut s = format!("weight distribution  {}\n", params_line(&report.params));
            let _ = writeln!(s, "{:<12} {:>3} {:>12} {:>24}", "method", "r", "weight", "count");
            for t in &report.methods {
                for row in &t.rows {
                    let _ = writeln!(s, "{:<12} {:>3} {:>12} {:>24}", t.method.as_str(), row.r, row.weight, row.count);
                }
            }
            for sk in &report.skipped {
                let _ = writeln!(s, "skipped {}: {}", sk.method, sk.reason);
            }
            let _ = writeln!(s, "verdict: {}", if report.agree { "agree" } else { "DISAGREE" });
            s
        },
    );
    Ok(Outcome {
        text,
        disagreement: !report.agree,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumOutput {
    #[serde(flatten)]
    pub report: WengerReport,
    pub skipped: Vec<Skipped>,
}

pub fn wenger_spectrum(
    f: &FieldArgs,
    method: Method,
    tol: f64,
    budget: u64,
    workers: usize,
    format: Format,
) -> Result<Outcome> {
    let ctx = build_ctx(f)?;
    let params = *ctx.params();
    let mut skipped = Vec::new();
    let (counting, dense) = match method {
        Method::Formula => (false, false),
        Method::Counting => (true, false),
        Method::Dense => (false, true),
        Method::All => {
            let c = wenger::counting_fits(&params, budget);
            let d = wenger::dense_fits(&params);
            if !c {
                skipped.push(Skipped {
                    method: "counting".into(),
                    reason: format!("p^(m(k+1)) exceeds budget {budget}"),
                });
            }
            if !d {
                skipped.push(Skipped {
                    method: "dense".into(),
                    reason: format!("p^(m(k+1)) exceeds dense cap {}", wenger::DENSE_CAP),
                });
            }
            (c, d)
        }
        Method::BruteForce | Method::Moebius => {
            return Err(Error::Param(
                "wenger-spectrum supports formula, counting, dense or all".into(),
            ))
        }
    };
    let opts = ReportOptions {
        counting,
        dense,
        budget,
        workers,
        tol,
    };
    let report = wenger::reconcile_report(&ctx, &opts)?;
    let hard = report.hard_failure();
    let out = SpectrumOutput { report, skipped };
    let text = render(
        &out,
        format,
        || out.report.to_csv(),
        || {
            let r = &out.report;
            let mut s = format!("Wenger spectrum  {}\n", params_line(&r.params));
            let _ = writeln!(s, "{:<10} {:>6} {:>10} {:>24}", "method", "sign", "lambda^2", "multiplicity");
            let mut emit = |name: &str, recs: &[wenger::EigenRecord]| {
                for e in recs {
                    let l = e
                        .lambda_sq_exponent
                        .map_or("0".to_string(), |x| format!("{}^{x}", r.params.p));
                    let _ = writeln!(s, "{name:<10} {:>6} {l:>10} {:>24}", e.sign, e.multiplicity);
                }
            };
            emit("formula", &r.methods.formula);
            if let Some(c) = &r.methods.counting {
                emit("counting", c);
            }
            if let Some(d) = r.methods.dense_residual {
                let _ = writeln!(s, "dense residual {d:e}");
            }
            let _ = writeln!(
                s,
                "zero multiplicity: printed expression {}, corrected {}, erratum flagged: {}",
                r.paper_zero_expr, r.corrected_zero, r.erratum_flagged
            );
            let _ = writeln!(s, "mass checks: vertices {}, trace_sq {}", r.mass_checks.vertices, r.mass_checks.trace_sq);
            for sk in &out.skipped {
                let _ = writeln!(s, "skipped {}: {}", sk.method, sk.reason);
            }
            let _ = writeln!(s, "verdict: {:?}", r.verdict);
            s
        },
    );
    Ok(Outcome {
        text,
        disagreement: hard,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub qs: Vec<u64>,
    pub u_max: u64,
    pub cases: usize,
    pub all_hold: bool,
    pub first_counterexample: Option<ConjectureCheck>,
    pub checks: Vec<ConjectureCheck>,
}

pub fn verify_conjecture(qs: &[u64], u_max: u64, workers: usize, format: Format) -> Result<Outcome> {
    let checks = qbinom::conjecture_sweep(qs, u_max, workers)?;
    let first = checks.iter().find(|c| !c.holds).cloned();
    let report = ConjectureReport {
        qs: qs.to_vec(),
        u_max,
        cases: checks.len(),
        all_hold: first.is_none(),
        first_counterexample: first,
        checks,
    };
    let text = render(
        &report,
        format,
        || {
            let mut s = String::from("q,u,i,holds,lhs,rhs\n");
            for c in &report.checks {
                let _ = writeln!(s, "{},{},{},{},{},{}", c.q, c.u, c.i, c.holds, c.lhs, c.rhs);
            }
            s
        },
        || {
            let mut s = format!("{} cases, q in {:?}, u <= {}\n", report.cases, report.qs, report.u_max);
            match &report.first_counterexample {
                None => s.push_str("all hold\n"),
                Some(c) => {
                    let _ = writeln!(s, "counterexample q={} u={} i={}: {} != {}", c.q, c.u, c.i, c.lhs, c.rhs);
                }
            }
            s
        },
    );
    Ok(Outcome {
        text,
        disagreement: !report.all_hold,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LatticeReport {
    pub q: u64,
    pub n: u32,
    pub seed: u64,
    pub subspaces: usize,
    pub counts_by_dim: Vec<u64>,
    pub gaussian_binomials: Vec<String>,
    pub counts_match: bool,
    pub moebius_delta: bool,
    pub inversion: bool,
    pub orth_involution: bool,
    pub passed: bool,
}

pub fn lattice_checks(q: u64, n: u32, seed: u64, format: Format) -> Result<Outcome> {
    let lat = Lattice::for_q(q, n)?;
    let counts = lat.counts_by_dim();
    let binoms = (0..=u64::from(n))
        .map(|i| qbinom::gaussian_binom(u64::from(n), i, q))
        .collect::<Result<Vec<BigUint>>>()?;
    let counts_match = counts.iter().zip(&binoms).all(|(c, b)| BigUint::from(*c) == *b);
    let moebius_delta = lat.moebius_delta_check();
    let inversion = lat.inversion_check(&lat.seeded_table(seed));
    let orth_involution = lat.orth_involution_check();
    let report = LatticeReport {
        q,
        n,
        seed,
        subspaces: lat.len(),
        counts_by_dim: counts,
        gaussian_binomials: binoms.iter().map(BigUint::to_string).collect(),
        counts_match,
        moebius_delta,
        inversion,
        orth_involution,
        passed: counts_match && moebius_delta && inversion && orth_involution,
    };
    let text = render(
        &report,
        format,
        || {
            format!(
                "key,value\nq,{}\nn,{}\nseed,{}\nsubspaces,{}\ncounts_match,{}\nmoebius_delta,{}\ninversion,{}\north_involution,{}\npassed,{}\n",
                report.q, report.n, report.seed, report.subspaces, report.counts_match,
                report.moebius_delta, report.inversion, report.orth_involution, report.passed
            )
        },
        || {
            format!(
                "lattice of F_{}^{}: {} subspaces, by dimension {:?}\ncounts match Gaussian binomials: {}\nmoebius delta: {}\ninversion (seed {}): {}\northogonal involution: {}\npassed: {}\n",
                report.q, report.n, report.subspaces, report.counts_by_dim, report.counts_match,
                report.moebius_delta, report.seed, report.inversion, report.orth_involution, report.passed
            )
        },
    );
    Ok(Outcome {
        text,
        disagreement: !report.passed,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MooreReport {
    pub params: ParamsRecord,
    pub seed: u64,
    #[serde(flatten)]
    pub trials: MooreTrialReport,
    pub passed: bool,
}

pub fn moore_rank_test(f: &FieldArgs, trials: u64, seed: u64, format: Format) -> Result<Outcome> {
    let ctx = build_ctx(f)?;
    let rep = linearized::moore_rank_trials(&ctx, trials, seed);
    let report = MooreReport {
        params: (*ctx.params()).into(),
        seed,
        passed: rep.passed(),
        trials: rep,
    };
    let t = &report.trials;
    let text = render(
        &report,
        format,
        || {
            format!(
                "key,value\nindependent_tuples,{}\nfull_rank,{}\ndependent_tuples,{}\ndependent_deficient,{}\nproportional_checks,{}\nproportional_deficient,{}\npassed,{}\n",
                t.independent_tuples, t.full_rank, t.dependent_tuples, t.dependent_deficient,
                t.proportional_checks, t.proportional_deficient, report.passed
            )
        },
        || {
            format!(
                "Moore rank test  {}  seed {}\nindependent tuples   {} / full rank {}\ndependent tuples     {} / deficient {}\nproportional rows    {} / deficient {}\npassed: {}\n",
                params_line(&report.params), report.seed, t.independent_tuples, t.full_rank,
                t.dependent_tuples, t.dependent_deficient, t.proportional_checks,
                t.proportional_deficient, report.passed
            )
        },
    );
    Ok(Outcome {
        text,
        disagreement: !report.passed,
    })
}
