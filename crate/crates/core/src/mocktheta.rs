//! The universal mock theta functions `g2`, `g3`, the overpartition
//! generating function `f(x; q)` and its closed forms.
//!
//! The auxiliary variable `x` is never formal: every use substitutes a
//! [`Monomial`] `±q^e`, and the functional equation is solved by walking the
//! ladder `f(x q^{kd})` down from a level where `x q^{kd}` is invisible at the
//! working order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::FamilyParams;
use crate::qseries::{poch_inf, Monomial, TruncatedSeries};

/// Verdict for one exact identity: `pass` iff the residual vanishes to `order`.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub order: usize,
    #[serde(skip)]
    pub residual: TruncatedSeries,
    pub pass: bool,
    pub first_nonzero_residual_index: Option<usize>,
}

impl IdentityReport {
    pub fn from_residual(
        name: impl Into<String>,
        params: impl IntoIterator<Item = (&'static str, String)>,
        residual: TruncatedSeries,
    ) -> Self {
        let first = residual.valuation();
        IdentityReport {
            name: name.into(),
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            order: residual.order(),
            pass: first.is_none(),
            first_nonzero_residual_index: first,
            residual,
        }
    }

    /// Compares two series computed along different routes.
    pub fn compare(
        name: impl Into<String>,
        params: impl IntoIterator<Item = (&'static str, String)>,
        lhs: &TruncatedSeries,
        rhs: &TruncatedSeries,
    ) -> Self {
        Self::from_residual(name, params, lhs - rhs)
    }
}

fn d_us(p: FamilyParams) -> usize {
    p.d() as usize
}

fn r_us(p: FamilyParams) -> usize {
    p.r() as usize
}

fn check_unit_pair(x: Monomial, step: usize) -> Result<Monomial> {
    let e = x.exponent();
    if e == 0 || e >= step {
        return Err(Error::BadSpecialization(format!(
            "need x = ±q^e with 1 <= e < {step}, got {x}"
        )));
    }
    Monomial::new(x.sign(), step - e)
}

/// `sum_n (-q^D; q^D)_n q^{D n(n+1)/2} / (x, q^D/x; q^D)_{n+1}` to `order`.
pub fn g2_series(x: Monomial, step: usize, order: usize) -> Result<TruncatedSeries> {
    let x_dual = check_unit_pair(x, step)?;
    // ratio = (-Q;Q)_n / (x, Q/x; Q)_{n+1}
    let mut ratio = TruncatedSeries::one(order)
        .div_one_minus(x)?
        .div_one_minus(x_dual)?;
    let mut total = TruncatedSeries::zero(order);
    let mut n = 0;
    loop {
        let weight = step * n * (n + 1) / 2;
        if weight > order {
            break;
        }
        total = &total + &ratio.shift_scale(Monomial::pos(weight));
        n += 1;
        ratio = ratio
            .mul_one_minus(Monomial::neg(step * n))
            .div_one_minus(x.times_q(step * n))?
            .div_one_minus(x_dual.times_q(step * n))?;
    }
    Ok(total)
}

/// `sum_n q^{D n(n+1)} / (x, q^D/x; q^D)_{n+1}` to `order`.
pub fn g3_series(x: Monomial, step: usize, order: usize) -> Result<TruncatedSeries> {
    let x_dual = check_unit_pair(x, step)?;
    let mut ratio = TruncatedSeries::one(order)
        .div_one_minus(x)?
        .div_one_minus(x_dual)?;
    let mut total = TruncatedSeries::zero(order);
    let mut n = 0;
    loop {
        let weight = step * n * (n + 1);
        if weight > order {
            break;
        }
        total = &total + &ratio.shift_scale(Monomial::pos(weight));
        n += 1;
        ratio = ratio
            .div_one_minus(x.times_q(step * n))?
            .div_one_minus(x_dual.times_q(step * n))?;
    }
    Ok(total)
}

/// Solves
/// `f(x) = (x q^r + x q^{d-r}) / (1 - x q^d) f(x q^d) + (1 + x q^d) / (1 - x q^{2d}) f(x q^{2d})`
/// with `f -> 1` as `x -> 0`, at `x = x0`.
pub fn f_recurrence(x0: Monomial, p: FamilyParams, order: usize) -> TruncatedSeries {
    let (d, r) = (d_us(p), r_us(p));
    // least K with e + K d > order
    let top = if x0.exponent() > order {
        0
    } else {
        (order - x0.exponent()) / d + 1
    };
    let mut next = TruncatedSeries::one(order); // f(x0 q^{(k+1)d})
    let mut next2 = TruncatedSeries::one(order); // f(x0 q^{(k+2)d})
    for k in (0..top).rev() {
        let x = x0.times_q(k * d);
        let single = &next.shift_scale(x.times_q(r)) + &next.shift_scale(x.times_q(d - r));
        let single = single
            .div_one_minus(x.times_q(d))
            .expect("x q^d has positive degree");
        let double = next2
            .mul_one_minus(x.negated().times_q(d))
            .div_one_minus(x.times_q(2 * d))
            .expect("x q^2d has positive degree");
        next2 = next;
        next = &single + &double;
    }
    next
}

fn check_y(y: Monomial, step: usize) -> Result<Monomial> {
    check_unit_pair(y, step).map_err(|_| {
        Error::BadSpecialization(format!("need y = ±q^e with 1 <= e < {step}, got {y}"))
    })
}

/// `a_n = (y, q^D/y; q^D)_n / (q^{2D}; q^{2D})_n`, advanced one step.
fn advance_sum_coefficient(
    a: &TruncatedSeries,
    y: Monomial,
    y_dual: Monomial,
    step: usize,
    n: usize,
) -> Result<TruncatedSeries> {
    // from a_{n-1} to a_n
    a.mul_one_minus(y.times_q(step * (n - 1)))
        .mul_one_minus(y_dual.times_q(step * (n - 1)))
        .div_one_minus(Monomial::pos(2 * step * n))
}

/// First closed form of `F(x, y; q^D)`:
/// `(-x; q^D)_inf / (x q^D; q^D)_inf * sum_n (y, q^D/y; q^D)_n (-x)^n / (q^{2D}; q^{2D})_n`.
///
/// The sum only converges `q`-adically when `x` carries a positive power of
/// `q`. For `x = ±1` the analytic continuation
/// `(-x q^D; q^D)_inf / (x q^D; q^D)_inf * [(1 + x) sum_n (a_n - a_inf)(-x)^n + a_inf]`
/// is used instead; it agrees with the plain sum wherever both converge.
pub fn f_sum_form(x: Monomial, y: Monomial, step: usize, order: usize) -> Result<TruncatedSeries> {
    if x.exponent() == 0 {
        return f_sum_form_continued(x, y, step, order);
    }
    let y_dual = check_y(y, step)?;
    let minus_x = x.negated();
    let mut a = TruncatedSeries::one(order);
    let mut sum = TruncatedSeries::zero(order);
    let mut n = 0;
    while n * x.exponent() <= order {
        if n > 0 {
            a = advance_sum_coefficient(&a, y, y_dual, step, n)?;
        }
        sum = &sum + &a.shift_scale(minus_x.pow(n));
        n += 1;
    }
    sum.mul_poch_inf(minus_x, step)
        .div_poch_inf(x.times_q(step), step)
}

/// The continued sum form, valid for every `x = ±q^e` including `e = 0`.
pub fn f_sum_form_continued(
    x: Monomial,
    y: Monomial,
    step: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    let y_dual = check_y(y, step)?;
    let minus_x = x.negated();
    let a_inf = poch_inf(y, step, order)
        .mul_poch_inf(y_dual, step)
        .div_poch_inf(Monomial::pos(2 * step), 2 * step)?;
    // valuation of a_n - a_inf is at least min(e_y + nD, (n+1)D - e_y)
    let min_edge = y.exponent().min(step - y.exponent());
    let mut a = TruncatedSeries::one(order);
    let mut tail = TruncatedSeries::zero(order);
    let mut n = 0;
    while n * step + min_edge <= order {
        if n > 0 {
            a = advance_sum_coefficient(&a, y, y_dual, step, n)?;
        }
        tail = &tail + &(&a - &a_inf).shift_scale(minus_x.pow(n));
        n += 1;
    }
    // (1 + x) = 1 - (-x)
    let bracket = &tail.mul_one_minus(minus_x) + &a_inf;
    bracket
        .mul_poch_inf(minus_x.times_q(step), step)
        .div_poch_inf(x.times_q(step), step)
}

/// Second closed form of `F(x, y; q^D)`:
/// `(-xy, -x q^D/y; q^D)_inf / (x q^D, -q^D; q^D)_inf *
///  sum_n (-x, x; q^D)_n q^{D n(n+1)/2} / (q^D, -xy, -x q^D/y; q^D)_n`.
pub fn f_product_form(
    x: Monomial,
    y: Monomial,
    step: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    let y_dual = check_y(y, step)?;
    let xy = x.times(y).negated();
    let x_ydual = x.times(y_dual).negated();
    let mut ratio = TruncatedSeries::one(order);
    let mut sum = TruncatedSeries::zero(order);
    let mut n = 0;
    loop {
        let weight = step * n * (n + 1) / 2;
        if weight > order {
            break;
        }
        sum = &sum + &ratio.shift_scale(Monomial::pos(weight));
        n += 1;
        let j = step * (n - 1);
        ratio = ratio
            .mul_one_minus(x.negated().times_q(j))
            .mul_one_minus(x.times_q(j))
            .div_one_minus(Monomial::pos(step * n))?
            .div_one_minus(xy.times_q(j))?
            .div_one_minus(x_ydual.times_q(j))?;
    }
    sum.mul_poch_inf(xy, step)
        .mul_poch_inf(x_ydual, step)
        .div_poch_inf(x.times_q(step), step)?
        .div_poch_inf(Monomial::neg(step), step)
}

/// `(-q^r, -q^{d-r}; q^d)_inf / (q^{2d}; q^{2d})_inf`.
pub fn closed_b(p: FamilyParams, order: usize) -> TruncatedSeries {
    let (d, r) = (d_us(p), r_us(p));
    TruncatedSeries::one(order)
        .mul_poch_inf(Monomial::neg(r), d)
        .mul_poch_inf(Monomial::neg(d - r), d)
        .div_poch_inf(Monomial::pos(2 * d), 2 * d)
        .expect("q^{2d} has positive degree")
}

/// `closed_b * (1 - q^d) * g2(-q^r; q^d)`.
pub fn closed_c(p: FamilyParams, order: usize) -> TruncatedSeries {
    let (d, r) = (d_us(p), r_us(p));
    let g2 = g2_series(Monomial::neg(r), d, order).expect("1 <= r < d");
    (&closed_b(p, order) * &g2).mul_one_minus(Monomial::pos(d))
}

/// `(q^r, q^{d-r}; q^d)_inf / (-q^d; q^d)_inf^2`.
pub fn closed_parity_b(p: FamilyParams, order: usize) -> TruncatedSeries {
    let (d, r) = (d_us(p), r_us(p));
    TruncatedSeries::one(order)
        .mul_poch_inf(Monomial::pos(r), d)
        .mul_poch_inf(Monomial::pos(d - r), d)
        .div_poch_inf(Monomial::neg(d), d)
        .and_then(|s| s.div_poch_inf(Monomial::neg(d), d))
        .expect("-q^d has positive degree")
}

/// `(1 + q^d) * closed_parity_b * g2(q^r; q^d)`.
pub fn closed_parity_c(p: FamilyParams, order: usize) -> TruncatedSeries {
    let (d, r) = (d_us(p), r_us(p));
    let g2 = g2_series(Monomial::pos(r), d, order).expect("1 <= r < d");
    (&closed_parity_b(p, order) * &g2).mul_one_minus(Monomial::neg(d))
}

/// Schur's product `(-q^r, -q^{d-r}; q^d)_inf`.
pub fn closed_schur_b(p: FamilyParams, order: usize) -> TruncatedSeries {
    let (d, r) = (d_us(p), r_us(p));
    TruncatedSeries::one(order)
        .mul_poch_inf(Monomial::neg(r), d)
        .mul_poch_inf(Monomial::neg(d - r), d)
}

/// `closed_schur_b * g3(-q^r; q^d)`, the generating function of the Schur
/// partitions with smallest part above `d`.
pub fn closed_schur_c(p: FamilyParams, order: usize) -> TruncatedSeries {
    let (d, r) = (d_us(p), r_us(p));
    let g3 = g3_series(Monomial::neg(r), d, order).expect("1 <= r < d");
    &closed_schur_b(p, order) * &g3
}

/// The `c` argument of the 3phi2 transformation, which may be sent to infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phi32C {
    Finite(Monomial),
    Infinity,
}

/// Arguments of the 3phi2 transformation
///
/// `sum (aq/bc, d, e)_n / (q, aq/b, aq/c)_n (aq/de)^n
///   = (aq/d, aq/e, aq/bc)_inf / (aq/b, aq/c, aq/de)_inf
///     * sum (aq/de, b, c)_n / (q, aq/d, aq/e)_n (aq/bc)^n`
///
/// with base `q^step`.
#[derive(Clone, Copy, Debug)]
pub struct Phi32Args {
    pub a: Monomial,
    pub b: Monomial,
    pub c: Phi32C,
    pub d: Monomial,
    pub e: Monomial,
    pub step: usize,
}

fn composite(num: Monomial, dens: &[Monomial], what: &str, min_exp: usize) -> Result<Monomial> {
    let m = dens
        .iter()
        .try_fold(num, |acc, &den| acc.checked_div(den))
        .ok_or_else(|| Error::BadSpecialization(format!("{what} has a negative power of q")))?;
    if m.exponent() < min_exp {
        return Err(Error::BadSpecialization(format!(
            "{what} = {m} needs a positive power of q"
        )));
    }
    Ok(m)
}

/// Sums `sum_n prod(num)_n / prod(den)_n * w_n` where `w_n = sign^n q^{lin n + quad n(n-1)/2}`.
fn hyper_sum(
    nums: &[Monomial],
    dens: &[Monomial],
    step: usize,
    weight_sign: i64,
    lin: usize,
    quad: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    let mut ratio = TruncatedSeries::one(order);
    let mut sum = TruncatedSeries::zero(order);
    let mut n = 0usize;
    loop {
        let exp = lin * n + quad * n * n.saturating_sub(1) / 2;
        if exp > order {
            break;
        }
        let sign = if weight_sign < 0 && n % 2 == 1 { -1 } else { 1 };
        sum = &sum + &ratio.shift_scale(Monomial::new(sign, exp)?);
        let j = step * n;
        n += 1;
        for &a in nums {
            ratio = ratio.mul_one_minus(a.times_q(j));
        }
        for &a in dens {
            ratio = ratio.div_one_minus(a.times_q(j))?;
        }
        if ratio.is_zero() {
            break;
        }
    }
    Ok(sum)
}

/// Residual `LHS - RHS` of the 3phi2 transformation, both sides summed
/// independently. With `c = Infinity` the limiting form is used:
/// `(aq/bc)_n, (aq/c)_n -> 1` and `(c)_n (aq/bc)^n -> (-1)^n q^{n(n-1)/2} (aq/b)^n`.
pub fn phi32_check(args: Phi32Args, order: usize) -> Result<IdentityReport> {
    let Phi32Args {
        a,
        b,
        c,
        d,
        e,
        step,
    } = args;
    let q = Monomial::pos(step);
    let aq = a.times_q(step);
    let aq_b = composite(aq, &[b], "aq/b", 1)?;
    let aq_d = composite(aq, &[d], "aq/d", 1)?;
    let aq_e = composite(aq, &[e], "aq/e", 1)?;
    let aq_de = composite(aq, &[d, e], "aq/de", 1)?;

    let (lhs, rhs) = match c {
        Phi32C::Finite(c) => {
            let aq_c = composite(aq, &[c], "aq/c", 1)?;
            let aq_bc = composite(aq, &[b, c], "aq/bc", 1)?;
            let lhs = hyper_sum(
                &[aq_bc, d, e],
                &[q, aq_b, aq_c],
                step,
                aq_de.sign(),
                aq_de.exponent(),
                0,
                order,
            )?;
            let sum = hyper_sum(
                &[aq_de, b, c],
                &[q, aq_d, aq_e],
                step,
                aq_bc.sign(),
                aq_bc.exponent(),
                0,
                order,
            )?;
            let rhs = sum
                .mul_poch_inf(aq_d, step)
                .mul_poch_inf(aq_e, step)
                .mul_poch_inf(aq_bc, step)
                .div_poch_inf(aq_b, step)?
                .div_poch_inf(aq_c, step)?
                .div_poch_inf(aq_de, step)?;
            (lhs, rhs)
        }
        Phi32C::Infinity => {
            let lhs = hyper_sum(
                &[d, e],
                &[q, aq_b],
                step,
                aq_de.sign(),
                aq_de.exponent(),
                0,
                order,
            )?;
            let sum = hyper_sum(
                &[aq_de, b],
                &[q, aq_d, aq_e],
                step,
                -aq_b.sign(),
                aq_b.exponent(),
                step,
                order,
            )?;
            let rhs = sum
                .mul_poch_inf(aq_d, step)
                .mul_poch_inf(aq_e, step)
                .div_poch_inf(aq_b, step)?
                .div_poch_inf(aq_de, step)?;
            (lhs, rhs)
        }
    };
    let c_label = match c {
        Phi32C::Finite(c) => c.to_string(),
        Phi32C::Infinity => "inf".into(),
    };
    Ok(IdentityReport::compare(
        "phi32",
        [
            ("a", a.to_string()),
            ("b", b.to_string()),
            ("c", c_label),
            ("d", d.to_string()),
            ("e", e.to_string()),
            ("step", step.to_string()),
        ],
        &lhs,
        &rhs,
    ))
}

/// The specialization `a = -x, b = x, c -> inf, d = y, e = q/y` that turns
/// the sum form of `F` into the product form.
pub fn phi32_specialization(x: Monomial, y: Monomial, step: usize) -> Result<Phi32Args> {
    let y_dual = check_y(y, step)?;
    Ok(Phi32Args {
        a: x.negated(),
        b: x,
        c: Phi32C::Infinity,
        d: y,
        e: y_dual,
        step,
    })
}

/// Residual of the functional equation at `x0`, with `f(x0)`, `f(x0 q^d)` and
/// `f(x0 q^{2d})` each computed from the product form.
pub fn verify_qdiff(x0: Monomial, p: FamilyParams, order: usize) -> Result<IdentityReport> {
    let (d, r) = (d_us(p), r_us(p));
    let y = Monomial::pos(r);
    let f0 = f_product_form(x0, y, d, order)?;
    let f1 = f_product_form(x0.times_q(d), y, d, order)?;
    let f2 = f_product_form(x0.times_q(2 * d), y, d, order)?;
    let single = (&f1.shift_scale(x0.times_q(r)) + &f1.shift_scale(x0.times_q(d - r)))
        .div_one_minus(x0.times_q(d))?;
    let double = f2
        .mul_one_minus(x0.negated().times_q(d))
        .div_one_minus(x0.times_q(2 * d))?;
    Ok(IdentityReport::compare(
        "qdiff",
        [("params", p.to_string()), ("x0", x0.to_string())],
        &f0,
        &(&single + &double),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(d: u32, r: u32) -> FamilyParams {
        FamilyParams::new(d, r).unwrap()
    }

    #[test]
    fn g2_constant_term_and_truncation() {
        let g = g2_series(Monomial::neg(1), 3, 40).unwrap();
        assert_eq!(g.coeff(0), &BigInt::from(1));
        assert_eq!(g2_series(Monomial::neg(1), 3, 20).unwrap(), g.truncate(20));
        assert_eq!(
            g2_series(Monomial::neg(1), 3, 0).unwrap(),
            TruncatedSeries::one(0)
        );
        assert!(g2_series(Monomial::neg(3), 3, 10).is_err());
        assert!(g2_series(Monomial::neg(0), 3, 10).is_err());
    }

    #[test]
    fn g3_truncation() {
        let g = g3_series(Monomial::neg(1), 3, 30).unwrap();
        assert_eq!(g.coeff(0), &BigInt::from(1));
        assert_eq!(g3_series(Monomial::neg(1), 3, 10).unwrap(), g.truncate(10));
    }

    #[test]
    fn recurrence_base_and_worked_example() {
        let f = f_recurrence(Monomial::ONE, p(3, 1), 15);
        assert_eq!(f.coeff(15), &BigInt::from(14));
        assert_eq!(
            f_recurrence(Monomial::pos(16), p(3, 1), 15),
            TruncatedSeries::one(15)
        );
    }

    #[test]
    fn closed_forms_have_unit_constant_terms() {
        let q = p(4, 1);
        for s in [
            closed_b(q, 10),
            closed_c(q, 10),
            closed_parity_b(q, 10),
            closed_parity_c(q, 10),
        ] {
            assert_eq!(s.coeff(0), &BigInt::from(1));
        }
        assert_eq!(closed_b(p(3, 1), 15).coeff(15), &BigInt::from(14));
    }

    #[test]
    fn sum_form_at_vanishing_x() {
        let y = Monomial::pos(1);
        assert_eq!(
            f_sum_form(Monomial::pos(41), y, 3, 40).unwrap(),
            TruncatedSeries::one(40)
        );
        assert_eq!(
            f_product_form(Monomial::pos(41), y, 3, 40).unwrap(),
            TruncatedSeries::one(40)
        );
    }

    #[test]
    fn continued_sum_form_matches_plain_sum() {
        for x in [
            Monomial::pos(3),
            Monomial::neg(3),
            Monomial::pos(1),
            Monomial::neg(5),
        ] {
            let plain = f_sum_form(x, Monomial::pos(1), 3, 30).unwrap();
            let cont = f_sum_form_continued(x, Monomial::pos(1), 3, 30).unwrap();
            assert_eq!(plain, cont, "x = {x}");
        }
    }

    #[test]
    fn bad_y_rejected() {
        assert!(f_product_form(Monomial::ONE, Monomial::pos(3), 3, 10).is_err());
        assert!(f_sum_form(Monomial::ONE, Monomial::pos(0), 3, 10).is_err());
    }

    #[test]
    fn phi32_degenerate_a_equals_b() {
        let m = Monomial::pos(2);
        let args = Phi32Args {
            a: m,
            b: m,
            c: Phi32C::Finite(Monomial::pos(1)),
            d: Monomial::pos(1),
            e: Monomial::neg(1),
            step: 2,
        };
        assert!(phi32_check(args, 25).unwrap().pass);
        let args = Phi32Args {
            c: Phi32C::Infinity,
            ..args
        };
        assert!(phi32_check(args, 25).unwrap().pass);
    }

    #[test]
    fn phi32_rejects_non_reducing_arguments() {
        let args = Phi32Args {
            a: Monomial::pos(1),
            b: Monomial::pos(5),
            c: Phi32C::Infinity,
            d: Monomial::pos(1),
            e: Monomial::pos(1),
            step: 1,
        };
        assert!(matches!(
            phi32_check(args, 10),
            Err(Error::BadSpecialization(_))
        ));
    }

    #[test]
    fn report_json_shape() {
        let r = IdentityReport::compare(
            "demo",
            [("d", "3".to_string())],
            &TruncatedSeries::from_i64s(&[1, 2, 3]),
            &TruncatedSeries::from_i64s(&[1, 2, 4]),
        );
        assert!(!r.pass);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"name": "demo", "params": {"d": "3"}, "order": 2,
                               "pass": false, "first_nonzero_residual_index": 2})
        );
    }
}
