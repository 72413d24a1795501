//! Independent events `O_k` (probability `q^k / (1 + q^k)`) and `N_{kd}`
//! (probability `q^{kd}`), the constraint events built from them, and the
//! real-`q` evaluation of `g2(-q^r; q^d)` as a ratio of their probabilities.
//!
//! `Prob(W_k)` is computed two independent ways: the backward three-term
//! recurrence, and the renormalized generating function
//! `h(x) = (x q^d; q^d)_inf / (-x q^r, -x q^{d-r}, -x q^d; q^d)_inf * f(x; q)`
//! at `x = q^{kd}`, where `f` comes from the exact series solver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mocktheta::f_recurrence;
use crate::partitions::FamilyParams;
use crate::qseries::Monomial;

pub const DEFAULT_SERIES_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_IDENTITY_TOLERANCE: f64 = 1e-8;
/// Largest series order the adaptive `h` evaluation may reach.
pub const SERIES_ORDER_CAP: usize = 8192;

/// Which constraint events the Monte Carlo sampler evaluates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventModel {
    /// `W` is the intersection of the auxiliary events `E_j`, `j >= 1`, and
    /// `X` the intersection over `j >= d + 1`.
    #[default]
    Literal,
    /// `W_k` is parsed level by level from the disjoint three-case form: exactly
    /// one of `O_{kd+r}`, `O_{kd+d-r}` (then no `O_{(k+1)d}`, continue at
    /// `k + 1`), or neither (then none of `N_{(k+1)d}`, `O_{(k+1)d+r}`,
    /// `O_{(k+1)d+d-r}`, `O_{(k+2)d}`, continue at `k + 2`). This is the event
    /// whose probability obeys the three-term recurrence.
    Disjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    /// Largest sampled index `J`; chosen from the tail bound when `None`.
    pub horizon: Option<usize>,
    pub model: EventModel,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            samples: 1_000_000,
            seed: 42,
            horizon: None,
            model: EventModel::Literal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityParams {
    pub family: FamilyParams,
    pub q: f64,
    /// Boundary index `K` of the recurrence; derived from the tolerance when `None`.
    pub recurrence_cutoff: Option<usize>,
    pub series_tolerance: f64,
    pub identity_tolerance: f64,
    pub mc: McConfig,
}

impl ProbabilityParams {
    pub fn new(family: FamilyParams, q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParams(format!("need 0 < q < 1, got q = {q}")));
        }
        Ok(ProbabilityParams {
            family,
            q,
            recurrence_cutoff: None,
            series_tolerance: DEFAULT_SERIES_TOLERANCE,
            identity_tolerance: DEFAULT_IDENTITY_TOLERANCE,
            mc: McConfig::default(),
        })
    }

    fn d(&self) -> usize {
        self.family.d() as usize
    }

    fn r(&self) -> usize {
        self.family.r() as usize
    }

    /// `o_k = q^k / (1 + q^k)`.
    pub fn o(&self, k: usize) -> f64 {
        let t = self.q.powi(k as i32);
        t / (1.0 + t)
    }

    /// `n_k = q^k`, the probability of `N_k` (for `k` a multiple of `d`).
    pub fn n(&self, k: usize) -> f64 {
        self.q.powi(k as i32)
    }

    fn o_bar(&self, k: usize) -> f64 {
        1.0 / (1.0 + self.q.powi(k as i32))
    }

    /// `K` with `q^{Kd}` below the series tolerance.
    pub fn cutoff(&self) -> usize {
        self.recurrence_cutoff.unwrap_or_else(|| {
            let k = self.series_tolerance.ln() / (self.d() as f64 * self.q.ln());
            (k.ceil().max(1.0)) as usize
        })
    }

    /// `Prob(O_r' O_{d-r}' O_d')`, the three leading events all failing.
    pub fn leading_none(&self) -> f64 {
        let (d, r) = (self.d(), self.r());
        self.o_bar(r) * self.o_bar(d - r) * self.o_bar(d)
    }
}

/// One draw of every `O_k`, `1 <= k <= J`, and every `N_{kd}`, `kd <= J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventSample {
    o: Vec<bool>,
    n: Vec<bool>,
    d: usize,
}

impl EventSample {
    pub fn draw<R: Rng>(rng: &mut R, p: &ProbabilityParams, horizon: usize) -> Self {
        let d = p.d();
        let o = (0..=horizon)
            .map(|k| k > 0 && rng.random::<f64>() < p.o(k))
            .collect();
        let n = (0..=horizon / d)
            .map(|k| k > 0 && rng.random::<f64>() < p.n(k * d))
            .collect();
        EventSample { o, n, d }
    }

    /// A sample with prescribed outcomes, e.g. for tests. `o[k]` is `O_k`
    /// (index 0 ignored) and `n[k]` is `N_{kd}`.
    pub fn from_outcomes(o: Vec<bool>, n: Vec<bool>, d: usize) -> Self {
        EventSample { o, n, d }
    }

    pub fn horizon(&self) -> usize {
        self.o.len() - 1
    }

    pub fn o(&self, k: usize) -> bool {
        self.o[k]
    }

    /// `N_k`; `k` must be a multiple of `d`.
    pub fn n(&self, k: usize) -> bool {
        debug_assert_eq!(k % self.d, 0);
        self.n.get(k / self.d).copied().unwrap_or(false)
    }
}

/// Whether the auxiliary event `E_j` holds.
pub fn e_j_holds(s: &EventSample, j: usize, p: &ProbabilityParams) -> Result<bool> {
    let (d, r) = (p.d(), p.r());
    if j == 0 || j + 2 * d > s.horizon() {
        return Err(Error::HorizonExceeded {
            index: j,
            needed: j + 2 * d,
            horizon: s.horizon(),
        });
    }
    let holds = match j % d {
        0 => !s.o(j) || (!s.n(j) && !s.o(j + r) && !s.o(j + d - r) && !s.o(j + d)),
        m if m == r => !s.o(j) || (!s.o(j + d - 2 * r) && !s.o(j + d - r)),
        m if m == d - r => !s.o(j) || !s.o(j + r),
        _ => true,
    };
    Ok(holds)
}

/// `E_j` for every `j` in `from..=to`.
fn all_e_hold(s: &EventSample, from: usize, to: usize, p: &ProbabilityParams) -> Result<bool> {
    for j in from..=to {
        if !e_j_holds(s, j, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parses the disjoint three-case form from level `start`; levels whose first
/// index exceeds `J - 2d` are assumed satisfied.
pub fn disjoint_holds(s: &EventSample, start: usize, p: &ProbabilityParams) -> bool {
    let (d, r) = (p.d(), p.r());
    let last = s.horizon() - 2 * d;
    let mut k = start;
    while k * d + r <= last {
        let base = k * d;
        let a = s.o(base + r);
        let b = s.o(base + d - r);
        if a && b {
            return false;
        }
        if a || b {
            if s.o(base + d) {
                return false;
            }
            k += 1;
        } else {
            if s.n(base + d) || s.o(base + d + r) || s.o(base + 2 * d - r) || s.o(base + 2 * d) {
                return false;
            }
            k += 2;
        }
    }
    true
}

/// `Prob(W_0), ..., Prob(W_{K+1})` from the backward recurrence with
/// `Prob(W_K) = Prob(W_{K+1}) = 1`.
pub fn recurrence_ladder(p: &ProbabilityParams) -> Vec<f64> {
    let (d, r) = (p.d(), p.r());
    let top = p.cutoff();
    let mut w = vec![1.0; top + 2];
    for k in (0..top).rev() {
        let (i_r, i_dr, i_d) = (k * d + r, k * d + d - r, (k + 1) * d);
        let single = (p.o(i_r) * p.o_bar(i_dr) + p.o_bar(i_r) * p.o(i_dr)) * p.o_bar(i_d);
        let double = (1.0 - p.n(i_d))
            * p.o_bar(i_r)
            * p.o_bar(i_dr)
            * p.o_bar(i_d + r)
            * p.o_bar(i_d + d - r)
            * p.o_bar(i_d + d);
        // rounding can push the sum of the two branches a hair above 1
        w[k] = (single * w[k + 1] + double * w[k + 2]).min(1.0);
    }
    w
}

/// `Prob(W_k)` from the recurrence.
pub fn prob_w_recurrence(k: usize, p: &ProbabilityParams) -> f64 {
    recurrence_ladder(p).get(k).copied().unwrap_or(1.0)
}

/// `prod_{j >= 0} (1 + sign * a * step^j)`, stopped once the factors are
/// within a hundredth of the tolerance of 1.
fn real_poch(a: f64, step: f64, sign: f64, tol: f64) -> f64 {
    let mut prod = 1.0;
    let mut t = a;
    while t.abs() >= tol * 1e-2 {
        prod *= 1.0 + sign * t;
        t *= step;
    }
    prod
}

/// `f(q^{kd}; q)` at real `q`, doubling the series order until two successive
/// evaluations agree to the tolerance.
pub fn f_real(k: usize, p: &ProbabilityParams) -> Result<f64> {
    let x0 = Monomial::pos(k * p.d());
    let tol = p.series_tolerance;
    let mut order = 64;
    let mut prev = f_recurrence(x0, p.family, order).eval_real(p.q).value;
    while order < SERIES_ORDER_CAP {
        order *= 2;
        let cur = f_recurrence(x0, p.family, order).eval_real(p.q);
        if (cur.value - prev).abs() <= tol * cur.value.abs()
            && cur.last_term <= tol * cur.value.abs()
        {
            return Ok(cur.value);
        }
        prev = cur.value;
    }
    Err(Error::ToleranceNotReached {
        tolerance: tol,
        order,
    })
}

/// `Prob(W_k) = h(q^{kd})` through the exact generating function.
pub fn prob_w_series(k: usize, p: &ProbabilityParams) -> Result<f64> {
    let (d, r) = (p.d(), p.r());
    let q = p.q;
    let step = q.powi(d as i32);
    let x = q.powi((k * d) as i32);
    let tol = p.series_tolerance;
    if x < tol * 1e-2 {
        return Ok(1.0);
    }
    let num = real_poch(x * step, step, -1.0, tol);
    let den = real_poch(x * q.powi(r as i32), step, 1.0, tol)
        * real_poch(x * q.powi((d - r) as i32), step, 1.0, tol)
        * real_poch(x * step, step, 1.0, tol);
    Ok(num / den * f_real(k, p)?)
}

/// `g2(-q^r; q^d)` at real `q`, summed until a term drops below the tolerance.
pub fn g2_real(p: &ProbabilityParams) -> f64 {
    let (d, r) = (p.d(), p.r());
    let q = p.q;
    let big_q = q.powi(d as i32);
    let (qr, qdr) = (q.powi(r as i32), q.powi((d - r) as i32));
    // ratio = (-Q;Q)_n / ((1 + q^r Q^j)(1 + q^{d-r} Q^j))_{j<=n}
    let mut ratio = 1.0 / ((1.0 + qr) * (1.0 + qdr));
    let mut sum = 0.0;
    let mut n = 0i32;
    loop {
        let term = ratio * big_q.powf(f64::from(n * (n + 1)) / 2.0);
        sum += term;
        if term.abs() < p.series_tolerance * 1e-3 {
            break;
        }
        n += 1;
        let qn = big_q.powi(n);
        ratio *= (1.0 + qn) / ((1.0 + qr * qn) * (1.0 + qdr * qn));
    }
    sum
}

/// `1 / ((1 + q^r)(1 + q^{d-r})(1 + q^d) g2(-q^r; q^d))`.
pub fn part1_theory(p: &ProbabilityParams, g2: f64) -> f64 {
    let (d, r) = (p.d() as i32, p.r() as i32);
    let q = p.q;
    1.0 / ((1.0 + q.powi(r)) * (1.0 + q.powi(d - r)) * (1.0 + q.powi(d)) * g2)
}

/// Extra numbers from the exact pipelines.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactDetails {
    pub cutoff: usize,
    pub prob_w_series: f64,
    pub prob_x_series: f64,
    /// `max_k |recurrence - series|` over `k = 0, 1, 2`.
    pub pipeline_gap: f64,
}

/// Extra numbers from a Monte Carlo run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McDetails {
    pub model: EventModel,
    pub samples: u64,
    pub seed: u64,
    pub horizon: usize,
    pub hits_w: u64,
    pub hits_x: u64,
    pub hits_w_and_x: u64,
    pub hits_y: u64,
    pub mc_stderr_part1: f64,
    /// `Prob(Y) - Prob(O_r' O_{d-r}' O_d') Prob(X)`, the factorization the
    /// second identity relies on; reported, not asserted.
    pub factorization_residual: f64,
    /// `Prob(O_r' O_{d-r}' O_d') * P(X) / P(W)` from the estimated
    /// marginals, with its delta-method standard error. Under the disjoint
    /// model this ratio targets `g2`.
    pub ratio_part2: f64,
    pub ratio_part2_stderr: f64,
}

/// Probabilities behind both conditional identities.
///
/// `cond_w_given_x` is `Prob(W | X)`, compared with
/// `1 / ((1+q^r)(1+q^{d-r})(1+q^d) g2)`; `cond_part2` is `Prob(Y | Z)` with
/// `Y = O_r' O_{d-r}' O_d' W` and `Z = W`, compared with `g2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbReport {
    pub prob_w: f64,
    pub prob_x: f64,
    pub cond_w_given_x: f64,
    pub cond_part2: f64,
    pub g2: f64,
    pub abs_err_part1: f64,
    pub abs_err_part2: f64,
    pub mc_stderr: Option<f64>,
    pub tail_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactDetails>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc: Option<McDetails>,
}

impl ProbReport {
    /// Both exact identities within the identity tolerance.
    pub fn exact_pass(&self, tol: f64) -> bool {
        self.abs_err_part1 < tol && self.abs_err_part2 < tol
    }
}

/// Both identities through the exact pipelines.
pub fn exact_report(p: &ProbabilityParams) -> Result<ProbReport> {
    let ladder = recurrence_ladder(p);
    let at = |k: usize| ladder.get(k).copied().unwrap_or(1.0);
    let (w0, w1) = (at(0), at(1));
    let series: Vec<f64> = (0..3).map(|k| prob_w_series(k, p)).collect::<Result<_>>()?;
    let gap = (0..3)
        .map(|k| (at(k) - series[k]).abs())
        .fold(0.0, f64::max);
    let g2 = g2_real(p);
    let cond1 = w0 / w1;
    let cond2 = p.leading_none() * w1 / w0;
    Ok(ProbReport {
        prob_w: w0,
        prob_x: w1,
        cond_w_given_x: cond1,
        cond_part2: cond2,
        g2,
        abs_err_part1: (cond1 - part1_theory(p, g2)).abs(),
        abs_err_part2: (cond2 - g2).abs(),
        mc_stderr: None,
        tail_bound: None,
        exact: Some(ExactDetails {
            cutoff: p.cutoff(),
            prob_w_series: series[0],
            prob_x_series: series[1],
            pipeline_gap: gap,
        }),
        mc: None,
    })
}

/// `Prob(W | X) = Prob(W_0) / Prob(W_1)` against its closed form.
pub fn check_prob_part1(p: &ProbabilityParams) -> Result<ProbReport> {
    exact_report(p)
}

/// `Prob(O_r' O_{d-r}' O_d' | W)` against `g2(-q^r; q^d)`.
pub fn check_prob_part2(p: &ProbabilityParams) -> Result<ProbReport> {
    exact_report(p)
}

/// Union bound on the constraints left unchecked beyond `J - 2d`:
/// `sum_{j > J-2d} (o_j + n_j) <= 2 q^{J-2d+1} / (1 - q)`.
pub fn tail_bound(p: &ProbabilityParams, horizon: usize) -> f64 {
    let unchecked_from = horizon.saturating_sub(2 * p.d()) + 1;
    2.0 * p.q.powi(unchecked_from as i32) / (1.0 - p.q)
}

/// Smallest horizon whose tail bound is below a tenth of the series tolerance.
pub fn choose_horizon(p: &ProbabilityParams) -> usize {
    let mut j = 3 * p.d();
    while tail_bound(p, j) >= 0.1 * p.series_tolerance {
        j += 1;
    }
    j
}

#[derive(Clone, Copy, Default)]
struct Tally {
    w: u64,
    x: u64,
    w_and_x: u64,
    y: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            w: self.w + o.w,
            x: self.x + o.x,
            w_and_x: self.w_and_x + o.w_and_x,
            y: self.y + o.y,
        }
    }
}

/// Generator for sample `index`: the seed fixes the key, the index selects
/// the stream, so the draw does not depend on scheduling.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Seeded Monte Carlo estimate of both conditional probabilities.
pub fn mc_estimate(p: &ProbabilityParams) -> Result<ProbReport> {
    let (d, r) = (p.d(), p.r());
    let horizon = p.mc.horizon.unwrap_or_else(|| choose_horizon(p));
    if horizon < 3 * d {
        return Err(Error::HorizonExceeded {
            index: d + 1,
            needed: 3 * d,
            horizon,
        });
    }
    let last = horizon - 2 * d;
    let model = p.mc.model;
    let tally = (0..p.mc.samples)
        .into_par_iter()
        .map(|i| -> Result<Tally> {
            let s = EventSample::draw(&mut sample_rng(p.mc.seed, i), p, horizon);
            let (w, x) = match model {
                EventModel::Literal => {
                    (all_e_hold(&s, 1, last, p)?, all_e_hold(&s, d + 1, last, p)?)
                }
                EventModel::Disjoint => (disjoint_holds(&s, 0, p), disjoint_holds(&s, 1, p)),
            };
            let lead_none = !s.o(r) && !s.o(d - r) && !s.o(d);
            Ok(Tally {
                w: w as u64,
                x: x as u64,
                w_and_x: (w && x) as u64,
                y: (w && lead_none) as u64,
            })
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    if tally.w == 0 || tally.x == 0 {
        return Err(Error::ZeroConditioningEvent);
    }
    let n = p.mc.samples as f64;
    let prob_w = tally.w as f64 / n;
    let prob_x = tally.x as f64 / n;
    let cond1 = tally.w_and_x as f64 / tally.x as f64;
    let cond2 = tally.y as f64 / tally.w as f64;
    let stderr = |pr: f64, m: u64| (pr * (1.0 - pr) / m as f64).sqrt();
    let g2 = g2_real(p);
    let ratio = p.leading_none() * prob_x / prob_w;
    let prob_wx = tally.w_and_x as f64 / n;
    let rel_var = (1.0 - prob_x) / prob_x + (1.0 - prob_w) / prob_w
        - 2.0 * (prob_wx - prob_w * prob_x) / (prob_w * prob_x);
    Ok(ProbReport {
        prob_w,
        prob_x,
        cond_w_given_x: cond1,
        cond_part2: cond2,
        g2,
        abs_err_part1: (cond1 - part1_theory(p, g2)).abs(),
        abs_err_part2: (cond2 - g2).abs(),
        mc_stderr: Some(stderr(cond2, tally.w)),
        tail_bound: Some(tail_bound(p, horizon)),
        exact: None,
        mc: Some(McDetails {
            model,
            samples: p.mc.samples,
            seed: p.mc.seed,
            horizon,
            hits_w: tally.w,
            hits_x: tally.x,
            hits_w_and_x: tally.w_and_x,
            hits_y: tally.y,
            mc_stderr_part1: stderr(cond1, tally.x),
            factorization_residual: tally.y as f64 / n - p.leading_none() * prob_x,
            ratio_part2: ratio,
            ratio_part2_stderr: ratio * (rel_var.max(0.0) / n).sqrt(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: u32, r: u32, q: f64) -> ProbabilityParams {
        ProbabilityParams::new(FamilyParams::new(d, r).unwrap(), q).unwrap()
    }

    #[test]
    fn q_range_checked() {
        let f = FamilyParams::new(3, 1).unwrap();
        assert!(ProbabilityParams::new(f, 1.5).is_err());
        assert!(ProbabilityParams::new(f, 0.0).is_err());
        assert!(ProbabilityParams::new(f, f64::NAN).is_err());
    }

    #[test]
    fn e_j_cases() {
        let p = params(5, 1, 0.5);
        let j_max = 20;
        let none = EventSample::from_outcomes(vec![false; j_max + 1], vec![false; 5], 5);
        for j in 1..=j_max - 10 {
            assert!(e_j_holds(&none, j, &p).unwrap());
        }
        let all = EventSample::from_outcomes(vec![true; j_max + 1], vec![true; 5], 5);
        for j in [2, 3, 7, 8] {
            assert!(e_j_holds(&all, j, &p).unwrap(), "trivial E_{j}");
        }
        assert!(!e_j_holds(&all, 5, &p).unwrap());
        assert!(matches!(
            e_j_holds(&none, 11, &p),
            Err(Error::HorizonExceeded { .. })
        ));
        // j = d with O_d and O_{d+r}
        let mut o = vec![false; j_max + 1];
        o[5] = true;
        o[6] = true;
        let s = EventSample::from_outcomes(o, vec![false; 5], 5);
        assert!(!e_j_holds(&s, 5, &p).unwrap());
    }

    #[test]
    fn ladder_boundary_and_small_q() {
        let p = params(3, 1, 0.5);
        let k = p.cutoff();
        assert_eq!(prob_w_recurrence(k, &p), 1.0);
        assert!(p.q.powi((k * 3) as i32) < p.series_tolerance);
        let tiny = params(3, 1, 1e-6);
        assert!((prob_w_recurrence(0, &tiny) - 1.0).abs() < 1e-5);
        assert!((g2_real(&tiny) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn series_pipeline_far_level_is_one() {
        let p = params(3, 1, 0.5);
        assert!((prob_w_series(20, &p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn horizon_choice_meets_tail() {
        let p = params(3, 1, 0.5);
        let j = choose_horizon(&p);
        assert!(tail_bound(&p, j) < 1e-13);
        assert!(tail_bound(&p, j - 1) >= 1e-13);
    }

    #[test]
    fn forced_quiet_events_always_satisfy_w() {
        let mut p = params(3, 1, 1e-200);
        p.mc.samples = 2000;
        let rep = mc_estimate(&p).unwrap();
        assert_eq!(rep.prob_w, 1.0);
        assert_eq!(rep.prob_x, 1.0);
    }

    #[test]
    fn disjoint_parser_examples() {
        let p = params(3, 1, 0.5);
        let mut o = vec![false; 31];
        let s = EventSample::from_outcomes(o.clone(), vec![false; 11], 3);
        assert!(disjoint_holds(&s, 0, &p));
        // both O_1 and O_2
        o[1] = true;
        o[2] = true;
        assert!(!disjoint_holds(
            &EventSample::from_outcomes(o.clone(), vec![false; 11], 3),
            0,
            &p
        ));
        // neither at level 0 forbids N_3
        let mut n = vec![false; 11];
        n[1] = true;
        let s = EventSample::from_outcomes(vec![false; 31], n, 3);
        assert!(!disjoint_holds(&s, 0, &p));
        assert!(disjoint_holds(&s, 1, &p));
    }
}
