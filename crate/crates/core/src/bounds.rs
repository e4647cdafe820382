//! Inverse Ackermann and log-scale evaluation of the extremal bounds.
//!
//! Every bound is reported as `log2` of its value. Some of them are towers
//! like `2^{alpha(n)^{c}}` with `c` around `10^12`, so a [`Log2Value`] keeps
//! an ordinary finite part plus at most one exact power term
//! `coefficient * base^exponent` whose exponent is an arbitrary-precision
//! integer. Nothing astronomically large is ever materialized.
//!
//! `log n` inside the edge-count theorems is taken base 2.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigUint;
use num::{FromPrimitive, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bound {0} needs an explicit constant")]
    MissingConstant(BoundName),
    #[error("exponent constant must be a non-negative integer, got {0}")]
    NonIntegralConstant(f64),
}

/// Configuration of the Ackermann hierarchy: `A_1(n) = 2n`,
/// `A_k(1) = base_value_at_one`, `A_k(n) = A_{k-1}(A_k(n-1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AckermannConfig {
    pub base_value_at_one: u128,
}

impl Default for AckermannConfig {
    fn default() -> Self {
        Self {
            base_value_at_one: 2,
        }
    }
}

impl AckermannConfig {
    /// `A_k(x)` if it is at most `cap`, otherwise `None`.
    ///
    /// Each `A_k` is increasing with `A_k(x) >= x`, so once an intermediate
    /// value passes `cap` the final one does too.
    pub fn value_capped(&self, k: u32, x: u128, cap: u128) -> Option<u128> {
        assert!(k >= 1 && x >= 1, "Ackermann is defined for k, x >= 1");
        if k == 1 {
            return x.checked_mul(2).filter(|&v| v <= cap);
        }
        let mut v = self.base_value_at_one;
        if v > cap {
            return None;
        }
        let mut i = 1u128;
        while i < x {
            v = self.value_capped(k - 1, v, cap)?;
            i += 1;
        }
        Some(v)
    }

    /// `alpha(n) = min { k >= 1 : A_k(k) >= n }`.
    pub fn alpha(&self, n: u128) -> u32 {
        assert!(n >= 1, "alpha is defined for n >= 1");
        let mut k = 1u32;
        loop {
            // A_k(k) >= n  <=>  A_k(k) is not capped below n.
            match self.value_capped(k, k as u128, n - 1) {
                None => return k,
                Some(_) => k += 1,
            }
        }
    }
}

/// Inverse Ackermann function with the default hierarchy (`A_k(1) = 2`).
pub fn alpha(n: u128) -> u32 {
    AckermannConfig::default().alpha(n)
}

/// `coefficient * base^exponent`, exponent kept exact.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerTerm {
    pub coefficient: f64,
    pub base: u64,
    pub exponent: BigUint,
}

/// Materialize `base^exponent` only below this many bits.
const MATERIALIZE_BITS: u64 = 4096;

impl PowerTerm {
    /// `base^exponent` as an exact integer, when small enough to hold.
    pub fn exact_power(&self) -> Option<BigUint> {
        if self.base <= 1 {
            return Some(if self.base == 1 || self.exponent.is_zero() {
                BigUint::one()
            } else {
                BigUint::zero()
            });
        }
        let bits_per = 64 - self.base.leading_zeros() as u64;
        let exp = self.exponent.to_u64()?;
        if exp.checked_mul(bits_per)? > MATERIALIZE_BITS {
            return None;
        }
        Some(BigUint::from(self.base).pow(exp as u32))
    }

    /// Approximate value as `f64` (`None` if it overflows).
    pub fn approx(&self) -> Option<f64> {
        let v = self.coefficient * self.exact_power()?.to_f64()?;
        v.is_finite().then_some(v)
    }

    /// `log2` of the term (the term itself is a log2 of the bound).
    pub fn log2(&self) -> f64 {
        if self.coefficient <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let exp = self.exponent.to_f64().unwrap_or(f64::INFINITY);
        let base_log = (self.base as f64).log2();
        let body = if base_log == 0.0 { 0.0 } else { exp * base_log };
        self.coefficient.log2() + body
    }
}

/// `log2` of a bound: `finite + power`.
#[derive(Clone, Debug, PartialEq)]
pub struct Log2Value {
    pub finite: f64,
    pub power: Option<PowerTerm>,
}

impl Log2Value {
    pub fn finite(value: f64) -> Self {
        Self {
            finite: value,
            power: None,
        }
    }

    /// Approximate `log2` value as `f64`; `None` when it overflows.
    pub fn approx(&self) -> Option<f64> {
        match &self.power {
            None => Some(self.finite),
            Some(p) => Some(self.finite + p.approx()?),
        }
    }

    /// `log2(log2(bound))`, approximately; finite even when [`approx`]
    /// overflows.
    ///
    /// [`approx`]: Log2Value::approx
    pub fn magnitude(&self) -> f64 {
        match self.approx() {
            Some(v) => v.log2(),
            None => {
                // Power term dominates the finite part by far.
                self.power.as_ref().map_or(f64::NEG_INFINITY, PowerTerm::log2)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite.is_finite()
            && self
                .power
                .as_ref()
                .is_none_or(|p| p.coefficient.is_finite() && p.coefficient >= 0.0)
    }

    /// Compares the bound's `log2` against `x`.
    pub fn cmp_log2(&self, x: f64) -> Ordering {
        match self.approx() {
            Some(v) => v.partial_cmp(&x).unwrap_or(Ordering::Equal),
            // Only large power terms fail to materialize.
            None => Ordering::Greater,
        }
    }
}

impl fmt::Display for Log2Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.power, self.approx()) {
            (_, Some(v)) => write!(f, "{v:.6}"),
            (Some(p), None) => write!(
                f,
                "{:.6} + {:.6}*{}^{}",
                self.finite, p.coefficient, p.base, p.exponent
            ),
            (None, None) => unreachable!("finite values always approximate"),
        }
    }
}

#[derive(Serialize)]
struct PowerJson {
    coefficient: f64,
    base: u64,
    exponent: String,
}

#[derive(Serialize)]
struct Log2Json {
    finite: f64,
    power: Option<PowerJson>,
    approx: Option<f64>,
    log2_of_log2: f64,
}

impl Serialize for Log2Value {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Log2Json {
            finite: self.finite,
            power: self.power.as_ref().map(|p| PowerJson {
                coefficient: p.coefficient,
                base: p.base,
                exponent: p.exponent.to_string(),
            }),
            approx: self.approx(),
            log2_of_log2: self.magnitude(),
        }
        .serialize(serializer)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundName {
    /// Length of `l`-regular sequences avoiding `up(l,t)`.
    Klazar,
    /// Length of `l`-regular sequences avoiding `up-down-up(l)`.
    Pettie,
    /// Edges of simple k-quasi-planar topological graphs.
    Thm1,
    /// Edges of k-quasi-planar graphs with x-monotone edges.
    Thm2,
    /// Edges of crossing-free drawings.
    Planar,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundName::Klazar => "KLAZAR",
            BoundName::Pettie => "PETTIE",
            BoundName::Thm1 => "THM1",
            BoundName::Thm2 => "THM2",
            BoundName::Planar => "PLANAR",
        };
        f.write_str(s)
    }
}

fn log2_u128(n: u128) -> f64 {
    (n as f64).log2()
}

/// `log2( n * l * 2^{lt-3} * (10 l)^{10 alpha(n)^{lt}} )`, for `l >= 2`,
/// `t >= 3`.
pub fn klazar_bound_log2(n: u128, l: u64, t: u64) -> Result<Log2Value, BoundError> {
    if n < 1 || l < 2 || t < 3 {
        return Err(BoundError::InvalidParameter(format!(
            "need n >= 1, l >= 2, t >= 3 (got n={n}, l={l}, t={t})"
        )));
    }
    let lt = BigUint::from(l) * BigUint::from(t);
    let lt_f = lt.to_f64().unwrap_or(f64::INFINITY);
    Ok(Log2Value {
        finite: log2_u128(n) + (l as f64).log2() + (lt_f - 3.0),
        power: Some(PowerTerm {
            coefficient: 10.0 * (10.0 * l as f64).log2(),
            base: alpha(n) as u64,
            exponent: lt,
        }),
    })
}

/// `log2( 2^{c l^2} n ) = c l^2 + log2 n`; `c` is the constant hidden in
/// the `O(l^2)`.
pub fn pettie_bound_log2(n: u128, l: u64, c_pettie: f64) -> Result<Log2Value, BoundError> {
    if n < 1 || l < 2 || c_pettie.partial_cmp(&0.0) != Some(Ordering::Greater) {
        return Err(BoundError::InvalidParameter(format!(
            "need n >= 1, l >= 2, c > 0 (got n={n}, l={l}, c={c_pettie})"
        )));
    }
    let l = l as f64;
    Ok(Log2Value::finite(c_pettie * l * l + log2_u128(n)))
}

/// The exponent constant used for the simple-graph edge bound when none is
/// given: `40 * 2^{k^2 + 2k}`.
pub fn default_thm1_exponent(k: u32) -> BigUint {
    let shift = (k as u64) * (k as u64) + 2 * (k as u64);
    BigUint::from(40u32) << shift
}

fn integral_constant(c: f64) -> Result<BigUint, BoundError> {
    if !(c.is_finite() && c >= 0.0 && c.fract() == 0.0) {
        return Err(BoundError::NonIntegralConstant(c));
    }
    BigUint::from_f64(c).ok_or(BoundError::NonIntegralConstant(c))
}

/// `log2` of an edge-count bound.
///
/// - `Thm1`: `(n log n) 2^{alpha(n)^{c}}`, `c` defaults to
///   [`default_thm1_exponent`]; overrides must be integral.
/// - `Thm2`: `2^{c k^6} n log n`, `c` is required.
/// - `Planar`: `3n - 6`, needs `n >= 3`; `k` is ignored.
pub fn theorem_bound_log2(
    name: BoundName,
    n: u128,
    k: u32,
    constant_override: Option<f64>,
) -> Result<Log2Value, BoundError> {
    match name {
        BoundName::Planar => {
            if n < 3 {
                return Err(BoundError::InvalidParameter(format!(
                    "3n-6 is positive only for n >= 3 (got n={n})"
                )));
            }
            Ok(Log2Value::finite(log2_u128(3 * n - 6)))
        }
        BoundName::Thm1 | BoundName::Thm2 => {
            if n < 2 || k < 2 {
                return Err(BoundError::InvalidParameter(format!(
                    "need n >= 2 and k >= 2 (got n={n}, k={k})"
                )));
            }
            let n_log_n = log2_u128(n) + log2_u128(n).log2();
            if name == BoundName::Thm1 {
                let exponent = match constant_override {
                    Some(c) => integral_constant(c)?,
                    None => default_thm1_exponent(k),
                };
                Ok(Log2Value {
                    finite: n_log_n,
                    power: Some(PowerTerm {
                        coefficient: 1.0,
                        base: alpha(n) as u64,
                        exponent,
                    }),
                })
            } else {
                let c = constant_override.ok_or(BoundError::MissingConstant(name))?;
                if !(c.is_finite() && c > 0.0) {
                    return Err(BoundError::InvalidParameter(format!("c must be > 0, got {c}")));
                }
                Ok(Log2Value::finite(c * (k as f64).powi(6) + n_log_n))
            }
        }
        BoundName::Klazar | BoundName::Pettie => Err(BoundError::InvalidParameter(format!(
            "{name} is a sequence bound, not an edge bound"
        ))),
    }
}

/// A bound evaluation with its parameters and an optional observed count.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: BoundName,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub log2_value: Log2Value,
    pub observed: Option<u64>,
    /// `Some(true)` when the observed count exceeds the bound.
    pub exceeded: Option<bool>,
}

impl BoundReport {
    pub fn new(name: BoundName, log2_value: Log2Value) -> Self {
        Self {
            name,
            parameters: BTreeMap::new(),
            log2_value,
            observed: None,
            exceeded: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn observe(mut self, count: u64) -> Self {
        self.observed = Some(count);
        self.exceeded = Some(count > 0 && self.log2_value.cmp_log2((count as f64).log2()).is_lt());
        self
    }
}

/// Constants the bounds leave unspecified, with their defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    /// Exponent constant of the simple-graph bound; `None` = `40*2^{k^2+2k}`.
    pub thm1_exponent: Option<f64>,
    /// Constant `c` of the x-monotone bound.
    pub thm2_c: f64,
    /// Constant of the `2^{O(l^2)} n` up-down-up bound.
    pub pettie_c: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self {
            thm1_exponent: None,
            thm2_c: 1.0,
            pettie_c: 1.0,
        }
    }
}

/// Evaluates one named bound with `constants`, recording every parameter.
pub fn bound_report(
    name: BoundName,
    n: u128,
    k: u32,
    l: u64,
    t: u64,
    constants: &BoundConstants,
) -> Result<BoundReport, BoundError> {
    let report = match name {
        BoundName::Klazar => BoundReport::new(name, klazar_bound_log2(n, l, t)?)
            .param("l", l)
            .param("t", t),
        BoundName::Pettie => BoundReport::new(name, pettie_bound_log2(n, l, constants.pettie_c)?)
            .param("l", l)
            .param("c_pettie", constants.pettie_c),
        BoundName::Thm1 => {
            let value = theorem_bound_log2(name, n, k, constants.thm1_exponent)?;
            let c = constants
                .thm1_exponent
                .map(|c| c.to_string())
                .unwrap_or_else(|| default_thm1_exponent(k).to_string());
            BoundReport::new(name, value).param("k", k).param("c_k", c)
        }
        BoundName::Thm2 => BoundReport::new(
            name,
            theorem_bound_log2(name, n, k, Some(constants.thm2_c))?,
        )
        .param("k", k)
        .param("c", constants.thm2_c),
        BoundName::Planar => BoundReport::new(name, theorem_bound_log2(name, n, k, None)?),
    };
    Ok(report
        .param("n", n.to_string())
        .param("alpha_n", alpha(n.max(1))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ackermann_anchors() {
        let a = AckermannConfig::default();
        // A_2(n) = 2^n, A_3(n) = tower of n twos.
        for n in 1..=20u128 {
            assert_eq!(a.value_capped(2, n, u128::MAX), Some(1u128 << n));
        }
        assert_eq!(a.value_capped(3, 3, u128::MAX), Some(16));
        assert_eq!(a.value_capped(3, 4, u128::MAX), Some(65536));
        assert_eq!(a.value_capped(3, 5, u128::MAX), None);
        assert_eq!(a.value_capped(4, 2, u128::MAX), Some(4));
        assert_eq!(a.value_capped(4, 3, u128::MAX), Some(65536));
        assert_eq!(a.value_capped(4, 4, u128::MAX), None);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(1), 1);
        assert_eq!(alpha(2), 1);
        assert_eq!(alpha(3), 2);
        assert_eq!(alpha(4), 2);
        assert_eq!(alpha(5), 3);
        assert_eq!(alpha(16), 3);
        assert_eq!(alpha(17), 4);
        assert_eq!(alpha(1_000_000_000), 4);
        assert_eq!(alpha(u128::MAX), 4);
    }

    #[test]
    fn alpha_with_other_base() {
        let a = AckermannConfig {
            base_value_at_one: 3,
        };
        // A(1) = 2, A(2) = A_1(A_2(1)) = 6.
        assert_eq!(a.alpha(2), 1);
        assert_eq!(a.alpha(6), 2);
        assert_eq!(a.alpha(7), 3);
    }

    #[test]
    fn klazar_small_cases() {
        let v = klazar_bound_log2(4, 2, 3).unwrap();
        let expected = 6.0 + 640.0 * 20f64.log2();
        assert!((v.approx().unwrap() - expected).abs() < 1e-9 * expected);
        let v = klazar_bound_log2(1, 2, 3).unwrap();
        assert!((v.approx().unwrap() - (4.0 + 10.0 * 20f64.log2())).abs() < 1e-9);
        assert!(klazar_bound_log2(4, 2, 2).is_err());
        assert!(klazar_bound_log2(4, 1, 3).is_err());
    }

    #[test]
    fn klazar_huge_exponent_stays_finite() {
        // l = 2^{12}, t = 2^3: alpha^{lt} has 65536 bits.
        let v = klazar_bound_log2(1_000_000, 1 << 12, 8).unwrap();
        assert!(v.is_finite());
        assert!(v.approx().is_none());
        assert!(v.magnitude().is_finite());
        assert!(v.cmp_log2(1e300).is_gt());
    }

    #[test]
    fn pettie_examples() {
        assert_eq!(pettie_bound_log2(1, 2, 1.0).unwrap().approx(), Some(4.0));
        assert_eq!(pettie_bound_log2(1024, 10, 1.0).unwrap().approx(), Some(110.0));
        assert_eq!(pettie_bound_log2(2, 3, 2.5).unwrap().approx(), Some(23.5));
        assert!(pettie_bound_log2(2, 3, 0.0).is_err());
    }

    #[test]
    fn theorem_examples() {
        let planar = theorem_bound_log2(BoundName::Planar, 4, 0, None).unwrap();
        assert_eq!(planar.approx(), Some(6f64.log2()));

        let thm2 = theorem_bound_log2(BoundName::Thm2, 2, 2, Some(1.0)).unwrap();
        assert_eq!(thm2.approx(), Some(65.0));
        assert_eq!(
            theorem_bound_log2(BoundName::Thm2, 2, 2, None),
            Err(BoundError::MissingConstant(BoundName::Thm2))
        );

        let thm1 = theorem_bound_log2(BoundName::Thm1, 16, 5, None).unwrap();
        assert_eq!(thm1.finite, 6.0);
        let p = thm1.power.as_ref().unwrap();
        assert_eq!(p.base, 3);
        assert_eq!(p.exponent, BigUint::from(40u64) * BigUint::from(1u64 << 35));
        assert!(thm1.is_finite());
        assert!(thm1.magnitude().is_finite());

        assert!(matches!(
            theorem_bound_log2(BoundName::Thm1, 16, 5, Some(2.5)),
            Err(BoundError::NonIntegralConstant(_))
        ));
        let small = theorem_bound_log2(BoundName::Thm1, 16, 5, Some(2.0)).unwrap();
        assert_eq!(small.approx(), Some(6.0 + 9.0));
    }

    #[test]
    fn planar_needs_three_vertices() {
        assert!(theorem_bound_log2(BoundName::Planar, 2, 0, None).is_err());
    }

    #[test]
    fn observation_flags() {
        let r = BoundReport::new(BoundName::Planar, theorem_bound_log2(BoundName::Planar, 4, 0, None).unwrap());
        assert_eq!(r.clone().observe(6).exceeded, Some(false));
        assert_eq!(r.observe(7).exceeded, Some(true));
    }

    #[test]
    fn report_json_records_parameters() {
        let r = bound_report(BoundName::Klazar, 4, 0, 2, 3, &BoundConstants::default()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["name"], "KLAZAR");
        assert_eq!(json["parameters"]["l"], 2);
        assert_eq!(json["parameters"]["alpha_n"], 2);
        assert_eq!(json["log2_value"]["power"]["exponent"], "6");
    }
}
