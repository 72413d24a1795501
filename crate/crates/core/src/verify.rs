//! Batch verification suites over a parameter grid.
//!
//! Every suite produces one [`CaseResult`] per grid point. Cases run on the
//! rayon pool but are returned in grid order, so output is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::mocktheta::{
    closed_b, closed_c, closed_parity_b, closed_parity_c, closed_schur_b, f_product_form,
    f_recurrence, f_sum_form, phi32_check, phi32_specialization, verify_qdiff, IdentityReport,
};
use crate::partitions::{count_totals, signed_totals, Family, FamilyParams};
use crate::probability::{exact_report, g2_real, ProbabilityParams};
use crate::qseries::{Monomial, TruncatedSeries};

/// Largest disagreement allowed between the two exact probability pipelines.
pub const PIPELINE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Schur,
    Main1,
    Cor1,
    Main2,
    Parity,
    Fqdiff,
    Phi32,
    Prob1,
    Prob2,
    G2bound,
}

impl Target {
    pub const ALL: [Target; 10] = [
        Target::Schur,
        Target::Main1,
        Target::Cor1,
        Target::Main2,
        Target::Parity,
        Target::Fqdiff,
        Target::Phi32,
        Target::Prob1,
        Target::Prob2,
        Target::G2bound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Schur => "schur",
            Target::Main1 => "main1",
            Target::Cor1 => "cor1",
            Target::Main2 => "main2",
            Target::Parity => "parity",
            Target::Fqdiff => "fqdiff",
            Target::Phi32 => "phi32",
            Target::Prob1 => "prob1",
            Target::Prob2 => "prob2",
            Target::G2bound => "g2bound",
        }
    }

    fn uses_q(self) -> bool {
        matches!(self, Target::Prob1 | Target::Prob2 | Target::G2bound)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown verification target `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub grid: Vec<FamilyParams>,
    /// Series order for identity suites and the default enumeration bound.
    pub order: usize,
    /// Enumeration bound; each suite has its own default when `None`.
    pub n: Option<u32>,
    /// `q` values for the probability suites; `None` selects the suite default.
    pub qs: Option<Vec<f64>>,
    pub tolerance: f64,
    pub series_tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            grid: FamilyParams::grid(&[3, 4, 5, 7]),
            order: 40,
            n: None,
            qs: None,
            tolerance: crate::probability::DEFAULT_IDENTITY_TOLERANCE,
            series_tolerance: crate::probability::DEFAULT_SERIES_TOLERANCE,
        }
    }
}

impl VerifyConfig {
    fn n_or(&self, default: u32) -> u32 {
        self.n.unwrap_or(default)
    }

    fn qs_for(&self, target: Target) -> Vec<f64> {
        match (&self.qs, target) {
            (Some(qs), _) => qs.clone(),
            (None, Target::G2bound) => (1..=9).map(|i| f64::from(i) / 10.0).collect(),
            (None, _) => vec![0.2, 0.5, 0.8],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// A numerical evaluation could not reach its tolerance.
    ToleranceFailure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseResult {
    pub target: Target,
    pub case: String,
    pub outcome: Outcome,
    pub values: BTreeMap<String, Value>,
}

impl CaseResult {
    pub fn pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub cases: Vec<CaseResult>,
}

impl VerifyReport {
    /// `0` all pass, `1` some verification failed, `3` some tolerance failure.
    pub fn exit_code(&self) -> i32 {
        if self
            .cases
            .iter()
            .any(|c| c.outcome == Outcome::ToleranceFailure)
        {
            3
        } else if self.pass {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Job {
    target: Target,
    params: FamilyParams,
    q: Option<f64>,
}

impl Job {
    fn key(&self) -> String {
        match self.q {
            Some(q) => format!("{},q={q}", self.params),
            None => self.params.to_string(),
        }
    }
}

#[derive(Default)]
struct Values(BTreeMap<String, Value>);

impl Values {
    fn put(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.0.insert(key.to_string(), v.into());
        self
    }

    fn identity(&mut self, key: &str, rep: &IdentityReport) -> bool {
        self.put(key, json!(rep.first_nonzero_residual_index));
        rep.pass
    }
}

/// First index where two coefficient lists disagree.
fn first_mismatch(a: &[i64], b: &[i64]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

fn series_ints(s: &TruncatedSeries, n: u32) -> Vec<i64> {
    s.truncate(n as usize)
        .to_i64s()
        .expect("coefficients fit in i64 at desk scale")
}

fn as_i64(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

fn run_job(job: Job, cfg: &VerifyConfig) -> Result<(bool, Values)> {
    let p = job.params;
    let order = cfg.order;
    let mut v = Values::default();
    let pass = match job.target {
        Target::Schur => {
            let n = cfg.n_or(order as u32);
            let b = count_totals(Family::SchurB, p, n);
            let e = count_totals(Family::SchurE, p, n);
            let product = series_ints(&closed_schur_b(p, n as usize), n);
            let n_matrix = n.min(30);
            let matrix = count_totals(Family::SchurBMatrix, p, n_matrix);
            let plain = &b[..=n_matrix as usize];
            let mm_be = first_mismatch(&as_i64(&b), &as_i64(&e));
            let mm_prod = first_mismatch(&as_i64(&b), &product);
            let mm_matrix = first_mismatch(&as_i64(plain), &as_i64(&matrix));
            v.put("n", n)
                .put("b_n", b[n as usize])
                .put("e_n", e[n as usize])
                .put("first_mismatch_b_e", json!(mm_be))
                .put("first_mismatch_product", json!(mm_prod))
                .put("matrix_n", n_matrix)
                .put("first_mismatch_matrix", json!(mm_matrix));
            mm_be.is_none() && mm_prod.is_none() && mm_matrix.is_none()
        }
        Target::Main1 => {
            let rep = IdentityReport::compare(
                "main1",
                [("params", p.to_string())],
                &f_recurrence(Monomial::ONE, p, order),
                &closed_b(p, order),
            );
            v.put("order", order);
            v.identity("first_nonzero_residual_index", &rep)
        }
        Target::Cor1 => {
            let n = cfg.n_or(order as u32);
            let b = count_totals(Family::ObarB, p, n);
            let e = count_totals(Family::ObarE, p, n);
            let coeffs = series_ints(&closed_b(p, n as usize), n);
            let mm_be = first_mismatch(&as_i64(&b), &as_i64(&e));
            let mm_gf = first_mismatch(&as_i64(&b), &coeffs);
            v.put("n", n)
                .put("b_n", b[n as usize])
                .put("e_n", e[n as usize])
                .put("coeff_n", coeffs[n as usize])
                .put("first_mismatch_b_e", json!(mm_be))
                .put("first_mismatch_series", json!(mm_gf));
            mm_be.is_none() && mm_gf.is_none()
        }
        Target::Main2 => {
            let n = cfg.n_or(30);
            let c = count_totals(Family::ObarC, p, n);
            let coeffs = series_ints(&closed_c(p, n as usize), n);
            let mm = first_mismatch(&as_i64(&c), &coeffs);
            let rep = IdentityReport::compare(
                "main2",
                [("params", p.to_string())],
                &f_recurrence(Monomial::pos(p.d() as usize), p, order),
                &closed_c(p, order),
            );
            v.put("n", n)
                .put("c_n", c[n as usize])
                .put("coeff_n", coeffs[n as usize])
                .put("first_mismatch_series", json!(mm))
                .put("order", order);
            let ok = v.identity("first_nonzero_residual_index", &rep);
            ok && mm.is_none()
        }
        Target::Parity => {
            let n = cfg.n_or(25);
            let sb = signed_totals(Family::ObarB, p, n);
            let sc = signed_totals(Family::ObarC, p, n);
            let pb = series_ints(&closed_parity_b(p, n as usize), n);
            let pc = series_ints(&closed_parity_c(p, n as usize), n);
            let mm_b = first_mismatch(&sb, &pb);
            let mm_c = first_mismatch(&sc, &pc);
            v.put("n", n)
                .put("signed_b_n", sb[n as usize])
                .put("signed_c_n", sc[n as usize])
                .put("first_mismatch_b", json!(mm_b))
                .put("first_mismatch_c", json!(mm_c));
            mm_b.is_none() && mm_c.is_none()
        }
        Target::Fqdiff => {
            let d = p.d() as usize;
            let mut ok = true;
            v.put("order", order);
            for (label, x0) in [("1", Monomial::ONE), ("q^d", Monomial::pos(d))] {
                let rep = verify_qdiff(x0, p, order)?;
                ok &= v.identity(&format!("residual_x0={label}"), &rep);
                let solved = IdentityReport::compare(
                    "solver",
                    [("x0", x0.to_string())],
                    &f_recurrence(x0, p, order),
                    &f_product_form(x0, Monomial::pos(p.r() as usize), d, order)?,
                );
                ok &= v.identity(&format!("solver_vs_product_x0={label}"), &solved);
            }
            ok
        }
        Target::Phi32 => {
            let d = p.d() as usize;
            let y = Monomial::pos(p.r() as usize);
            let mut ok = true;
            v.put("order", order);
            for (label, x) in [
                ("1", Monomial::ONE),
                ("q^d", Monomial::pos(d)),
                ("-1", Monomial::neg(0)),
                ("-q^d", Monomial::neg(d)),
            ] {
                let forms = IdentityReport::compare(
                    "sum_vs_product",
                    [("x", x.to_string())],
                    &f_sum_form(x, y, d, order)?,
                    &f_product_form(x, y, d, order)?,
                );
                ok &= v.identity(&format!("forms_x={label}"), &forms);
                // the transformation itself only converges where x carries q
                if x.exponent() > 0 {
                    let rep = phi32_check(phi32_specialization(x, y, d)?, order)?;
                    ok &= v.identity(&format!("phi32_x={label}"), &rep);
                }
            }
            ok
        }
        Target::Prob1 | Target::Prob2 => {
            let mut pp = ProbabilityParams::new(p, job.q.expect("probability job has q"))?;
            pp.series_tolerance = cfg.series_tolerance;
            pp.identity_tolerance = cfg.tolerance;
            let rep = exact_report(&pp)?;
            let gap = rep.exact.as_ref().map_or(0.0, |e| e.pipeline_gap);
            let (cond, theory_err) = if job.target == Target::Prob1 {
                (rep.cond_w_given_x, rep.abs_err_part1)
            } else {
                (rep.cond_part2, rep.abs_err_part2)
            };
            let ordered = (0.0..=1.0).contains(&rep.prob_w)
                && (0.0..=1.0).contains(&rep.prob_x)
                && rep.prob_w <= rep.prob_x;
            v.put("prob_w", rep.prob_w)
                .put("prob_x", rep.prob_x)
                .put("conditional", cond)
                .put("g2", rep.g2)
                .put("abs_err", theory_err)
                .put("pipeline_gap", gap);
            theory_err < cfg.tolerance && gap < PIPELINE_TOLERANCE && ordered
        }
        Target::G2bound => {
            let mut pp = ProbabilityParams::new(p, job.q.expect("probability job has q"))?;
            pp.series_tolerance = cfg.series_tolerance;
            let g2 = g2_real(&pp);
            v.put("g2", g2);
            g2 > 0.0 && g2 < 1.0
        }
    };
    Ok((pass, v))
}

fn jobs(targets: &[Target], cfg: &VerifyConfig) -> Vec<Job> {
    let mut out = Vec::new();
    for &target in targets {
        for &params in &cfg.grid {
            if target.uses_q() {
                for q in cfg.qs_for(target) {
                    out.push(Job {
                        target,
                        params,
                        q: Some(q),
                    });
                }
            } else {
                out.push(Job {
                    target,
                    params,
                    q: None,
                });
            }
        }
    }
    out
}

/// Runs the given suites over the configured grid.
pub fn run(targets: &[Target], cfg: &VerifyConfig) -> Result<VerifyReport> {
    for q in cfg.qs.iter().flatten() {
        if !(*q > 0.0 && *q < 1.0) {
            return Err(Error::InvalidParams(format!("need 0 < q < 1, got q = {q}")));
        }
    }
    let cases: Vec<CaseResult> = jobs(targets, cfg)
        .into_par_iter()
        .map(|job| -> Result<CaseResult> {
            let (outcome, values) = match run_job(job, cfg) {
                Ok((true, v)) => (Outcome::Pass, v.0),
                Ok((false, v)) => (Outcome::Fail, v.0),
                Err(e @ Error::ToleranceNotReached { .. }) => {
                    let mut v = Values::default();
                    v.put("error", e.to_string());
                    (Outcome::ToleranceFailure, v.0)
                }
                Err(e) => return Err(e),
            };
            Ok(CaseResult {
                target: job.target,
                case: job.key(),
                outcome,
                values,
            })
        })
        .collect::<Result<_>>()?;
    Ok(VerifyReport {
        pass: cases.iter().all(CaseResult::pass),
        cases,
    })
}
