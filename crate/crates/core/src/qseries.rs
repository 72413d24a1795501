//! Exact truncated power series in `q` with big-integer coefficients.
//!
//! A [`TruncatedSeries`] of order `N` knows the coefficients of `q^0..=q^N`
//! and nothing beyond. Every binary operation returns a series of the smaller
//! operand order, so a reported coefficient is always a proven one.
//!
//! Substitution values are [`Monomial`]s `±q^e`; this is all the generating
//! functions in this crate ever need for their auxiliary variables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A signed power `±q^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    negative: bool,
    exponent: usize,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        negative: false,
        exponent: 0,
    };

    /// Builds `sign * q^exponent`; any sign other than `±1` is rejected.
    pub fn new(sign: i64, exponent: usize) -> Result<Self> {
        match sign {
            1 => Ok(Self::pos(exponent)),
            -1 => Ok(Self::neg(exponent)),
            other => Err(Error::BadSign(other)),
        }
    }

    pub const fn pos(exponent: usize) -> Self {
        Monomial {
            negative: false,
            exponent,
        }
    }

    pub const fn neg(exponent: usize) -> Self {
        Monomial {
            negative: true,
            exponent,
        }
    }

    pub fn sign(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(self) -> bool {
        self.negative
    }

    pub fn exponent(self) -> usize {
        self.exponent
    }

    pub fn negated(self) -> Self {
        Monomial {
            negative: !self.negative,
            exponent: self.exponent,
        }
    }

    pub fn times(self, other: Monomial) -> Self {
        Monomial {
            negative: self.negative ^ other.negative,
            exponent: self.exponent + other.exponent,
        }
    }

    pub fn times_q(self, e: usize) -> Self {
        Monomial {
            negative: self.negative,
            exponent: self.exponent + e,
        }
    }

    /// `self / other`, or `None` when the quotient has a negative exponent.
    pub fn checked_div(self, other: Monomial) -> Option<Self> {
        Some(Monomial {
            negative: self.negative ^ other.negative,
            exponent: self.exponent.checked_sub(other.exponent)?,
        })
    }

    /// `self^n`.
    pub fn pow(self, n: usize) -> Self {
        Monomial {
            negative: self.negative && n % 2 == 1,
            exponent: self.exponent * n,
        }
    }

    /// Value at a real `q`.
    pub fn eval(self, q: f64) -> f64 {
        self.sign() as f64 * q.powi(self.exponent as i32)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        match self.exponent {
            0 => write!(f, "{sign}1"),
            1 => write!(f, "{sign}q"),
            e => write!(f, "{sign}q^{e}"),
        }
    }
}

/// Result of evaluating a series at a real point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealValue {
    pub value: f64,
    /// Magnitude of the last nonzero term, a convergence heuristic.
    pub last_term: f64,
}

/// Power series `sum_{n <= order} c_n q^n` with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Wraps a coefficient vector; its length fixes the order.
    ///
    /// Panics on an empty vector, which would have no order at all.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        TruncatedSeries { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Monomial::ONE, order)
    }

    /// `±q^e` truncated at `order` (the zero series when `e > order`).
    pub fn monomial(m: Monomial, order: usize) -> Self {
        let mut s = Self::zero(order);
        if m.exponent <= order {
            s.coeffs[m.exponent] = BigInt::from(m.sign());
        }
        s
    }

    /// `1 - m`.
    pub fn one_minus(m: Monomial, order: usize) -> Self {
        Self::one(order).mul_one_minus(m)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops every coefficient above `order`. Orders above the current one are
    /// clamped, since those coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        TruncatedSeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplication by `m = ±q^e`.
    pub fn shift_scale(&self, m: Monomial) -> Self {
        let mut out = Self::zero(self.order());
        let e = m.exponent;
        for n in e..=self.order() {
            let c = &self.coeffs[n - e];
            out.coeffs[n] = if m.negative { -c } else { c.clone() };
        }
        out
    }

    /// Multiplication by the binomial `1 - m`, in linear time.
    pub fn mul_one_minus(&self, m: Monomial) -> Self {
        let e = m.exponent;
        let mut out = self.clone();
        if e == 0 {
            // 1 - (+1) = 0, 1 - (-1) = 2
            return if m.negative {
                self.scale(&BigInt::from(2))
            } else {
                Self::zero(self.order())
            };
        }
        for n in e..=self.order() {
            let c = &self.coeffs[n - e];
            if m.negative {
                out.coeffs[n] += c;
            } else {
                out.coeffs[n] -= c;
            }
        }
        out
    }

    /// Division by the binomial `1 - m`, in linear time. Needs `m` to carry a
    /// positive power of `q`, otherwise `1 - m` is not a unit.
    pub fn div_one_minus(&self, m: Monomial) -> Result<Self> {
        let e = m.exponent;
        if e == 0 {
            return Err(Error::NonUnitConstantTerm(
                if m.negative { "2" } else { "0" }.into(),
            ));
        }
        let mut out = self.clone();
        for n in e..=self.order() {
            let prev = out.coeffs[n - e].clone();
            if m.negative {
                out.coeffs[n] -= prev;
            } else {
                out.coeffs[n] += prev;
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be `±1`.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !c0.abs().is_one() {
            return Err(Error::NonUnitConstantTerm(c0.to_string()));
        }
        let n_max = self.order();
        let mut inv: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        // c0 = ±1 is its own inverse
        inv.push(c0.clone());
        for n in 1..=n_max {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv[n - k];
                }
            }
            inv.push(-(acc * c0));
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    /// `self / other` via [`invert`](Self::invert).
    pub fn div(&self, other: &TruncatedSeries) -> Result<Self> {
        Ok(self * &other.invert()?)
    }

    /// Partial sum `sum_{n <= order} c_n q^n` at a real `q` in double precision.
    pub fn eval_real(&self, q: f64) -> RealValue {
        let mut value = 0.0;
        let mut last_term = 0.0;
        let mut power = 1.0;
        for c in &self.coeffs {
            if !c.is_zero() {
                let term = c.to_f64().unwrap_or(f64::INFINITY) * power;
                value += term;
                last_term = term.abs();
            }
            power *= q;
        }
        RealValue { value, last_term }
    }

    fn combine(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|n| f(&self.coeffs[n], &other.coeffs[n]))
                .collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }
}

fn factor_count(a: Monomial, step: usize, order: usize) -> usize {
    assert!(step > 0, "q-step must be positive");
    if a.exponent > order {
        0
    } else {
        (order - a.exponent) / step + 1
    }
}

impl TruncatedSeries {
    /// Multiplies by `(a; q^step)_n`.
    pub fn mul_poch(&self, a: Monomial, step: usize, n: usize) -> Self {
        let n = n.min(factor_count(a, step, self.order()));
        (0..n).fold(self.clone(), |s, j| s.mul_one_minus(a.times_q(j * step)))
    }

    /// Divides by `(a; q^step)_n`.
    pub fn div_poch(&self, a: Monomial, step: usize, n: usize) -> Result<Self> {
        let n = n.min(factor_count(a, step, self.order()));
        (0..n).try_fold(self.clone(), |s, j| s.div_one_minus(a.times_q(j * step)))
    }

    /// Multiplies by `(a; q^step)_inf`.
    pub fn mul_poch_inf(&self, a: Monomial, step: usize) -> Self {
        self.mul_poch(a, step, usize::MAX)
    }

    /// Divides by `(a; q^step)_inf`.
    pub fn div_poch_inf(&self, a: Monomial, step: usize) -> Result<Self> {
        self.div_poch(a, step, usize::MAX)
    }
}

/// `(a; q^step)_n = prod_{j<n} (1 - a q^{j*step})` truncated at `order`.
pub fn poch_finite(a: Monomial, step: usize, n: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::one(order).mul_poch(a, step, n)
}

/// `(a; q^step)_inf` truncated at `order`. Factors whose power of `q`
/// exceeds the order are `1 + O(q^{order+1})` and are skipped.
pub fn poch_inf(a: Monomial, step: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::one(order).mul_poch_inf(a, step)
}

/// `1 / (a; q^step)_n`.
pub fn poch_finite_inv(
    a: Monomial,
    step: usize,
    n: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    TruncatedSeries::one(order).div_poch(a, step, n)
}

/// `1 / (a; q^step)_inf`.
pub fn poch_inf_inv(a: Monomial, step: usize, order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::one(order).div_poch_inf(a, step)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64s(c)
    }

    #[test]
    fn add_identity_and_cancellation() {
        let a = s(&[1, -1, 0, 3]);
        assert_eq!(&a + &TruncatedSeries::zero(3), a);
        assert_eq!(&s(&[1, -1]) + &s(&[0, 1]), s(&[1, 0]));
        let pent = poch_inf(Monomial::pos(1), 1, 20);
        assert!((&pent + &(-&pent)).is_zero());
    }

    #[test]
    fn order_is_min_of_operands() {
        let a = s(&[1, 2, 3, 4]);
        let b = s(&[1, 1]);
        assert_eq!((&a + &b).order(), 1);
        assert_eq!((&a * &b).order(), 1);
        assert_eq!((&a * &b), s(&[1, 3]));
    }

    #[test]
    fn geometric_inverse() {
        let n = 12;
        let one_minus_q = TruncatedSeries::one_minus(Monomial::pos(1), n);
        let geo = TruncatedSeries::from_coeffs(vec![BigInt::one(); n + 1]);
        assert_eq!(&one_minus_q * &geo, TruncatedSeries::one(n));
        assert_eq!(one_minus_q.invert().unwrap(), geo);
        assert_eq!(
            TruncatedSeries::one(n).invert().unwrap(),
            TruncatedSeries::one(n)
        );
    }

    #[test]
    fn euler_product_times_inverse() {
        let e = poch_inf(Monomial::pos(1), 1, 30);
        let inv = e.invert().unwrap();
        assert_eq!(&e * &inv, TruncatedSeries::one(30));
        // 1/(q;q)_inf counts partitions
        assert_eq!(inv.coeff(10), &BigInt::from(42));
        assert_eq!(inv.coeff(30), &BigInt::from(5604));
    }

    #[test]
    fn invert_rejects_non_unit() {
        assert!(matches!(
            s(&[2, 1]).invert(),
            Err(Error::NonUnitConstantTerm(_))
        ));
        assert!(s(&[-1, 1]).invert().is_ok());
    }

    #[test]
    fn shift_scale_cases() {
        let a = s(&[1, 2, 3]);
        assert_eq!(a.shift_scale(Monomial::ONE), a);
        assert_eq!(
            TruncatedSeries::one(5).shift_scale(Monomial::neg(3)),
            s(&[0, 0, 0, -1, 0, 0])
        );
        assert!(a.shift_scale(Monomial::pos(3)).is_zero());
        assert_eq!(a.shift_scale(Monomial::pos(3)).order(), 2);
    }

    #[test]
    fn binomial_ops_match_general_ones() {
        let a = s(&[3, -1, 4, 1, -5, 9, 2]);
        for m in [Monomial::pos(2), Monomial::neg(1), Monomial::neg(5)] {
            let factor = TruncatedSeries::one_minus(m, 6);
            assert_eq!(a.mul_one_minus(m), &a * &factor);
            assert_eq!(a.div_one_minus(m).unwrap(), &a * &factor.invert().unwrap());
        }
        assert!(a.mul_one_minus(Monomial::ONE).is_zero());
        assert_eq!(a.mul_one_minus(Monomial::neg(0)), a.scale(&BigInt::from(2)));
        assert!(a.div_one_minus(Monomial::neg(0)).is_err());
    }

    #[test]
    fn poch_finite_examples() {
        assert_eq!(
            poch_finite(Monomial::neg(1), 1, 0, 6),
            TruncatedSeries::one(6)
        );
        assert_eq!(poch_finite(Monomial::neg(1), 1, 2, 4), s(&[1, 1, 1, 1, 0]));
        // (-q^3; q^3)_3 = (1+q^3)(1+q^6)(1+q^9), expanded by hand
        let mut expect = vec![0i64; 20];
        for mask in 0..8u32 {
            let e: usize = (0..3)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| 3 * (b + 1))
                .sum();
            expect[e] += 1;
        }
        assert_eq!(poch_finite(Monomial::neg(3), 3, 3, 19), s(&expect));
    }

    #[test]
    fn poch_inf_examples() {
        // Euler's pentagonal theorem to order 12
        let mut expect = vec![0i64; 13];
        for (e, c) in [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)] {
            expect[e] = c;
        }
        assert_eq!(poch_inf(Monomial::pos(1), 1, 12), s(&expect));
        let two_neg = poch_inf(Monomial::neg(0), 1, 15);
        assert_eq!(
            two_neg,
            poch_inf(Monomial::neg(1), 1, 15).scale(&BigInt::from(2))
        );
        assert_eq!(poch_inf(Monomial::pos(16), 1, 15), TruncatedSeries::one(15));
    }

    #[test]
    fn poch_inverses() {
        let a = Monomial::neg(2);
        let p = poch_inf(a, 3, 40);
        assert_eq!(
            &p * &poch_inf_inv(a, 3, 40).unwrap(),
            TruncatedSeries::one(40)
        );
        let f = poch_finite(a, 3, 4, 40);
        assert_eq!(
            &f * &poch_finite_inv(a, 3, 4, 40).unwrap(),
            TruncatedSeries::one(40)
        );
        assert!(poch_inf_inv(Monomial::ONE, 1, 5).is_err());
    }

    #[test]
    fn eval_real_examples() {
        assert_eq!(TruncatedSeries::one(4).eval_real(0.5).value, 1.0);
        let v = s(&[1, 1, 1]).eval_real(0.5);
        assert_eq!(v.value, 1.75);
        assert_eq!(v.last_term, 0.25);
        let euler = poch_inf(Monomial::pos(1), 1, 200).eval_real(0.5).value;
        let direct: f64 = (1..=200).map(|k| 1.0 - 0.5f64.powi(k)).product();
        assert!((euler - direct).abs() < 1e-12);
    }

    #[test]
    fn monomial_arithmetic() {
        assert!(Monomial::new(2, 1).is_err());
        let a = Monomial::neg(3);
        assert_eq!(a.times(Monomial::neg(2)), Monomial::pos(5));
        assert_eq!(a.checked_div(Monomial::pos(1)), Some(Monomial::neg(2)));
        assert_eq!(a.checked_div(Monomial::pos(4)), None);
        assert_eq!(a.pow(3), Monomial::neg(9));
        assert_eq!(a.pow(2), Monomial::pos(6));
        assert_eq!(a.to_string(), "-q^3");
    }

    #[test]
    fn json_shape() {
        let a = s(&[1, -2, 0]);
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"order": 2, "coeffs": ["1", "-2", "0"]})
        );
        let bad = serde_json::json!({"order": 3, "coeffs": ["1"]});
        assert!(serde_json::from_value::<TruncatedSeries>(bad).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, -1, 0, 2]).to_string(), "1 - q + 2*q^3 + O(q^4)");
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(q^2)");
    }
}
