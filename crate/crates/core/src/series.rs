//! Truncated formal power series in `x` with exact rational coefficients.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{int, Rational};

/// Default truncation order for series identity checks.
pub const DEFAULT_ORDER: usize = 64;

/// Coefficients `c_0..=c_N` of a power series known modulo `x^(N+1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Panics on an empty coefficient list; a series always has order >= 0.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(vec![Rational::zero(); order + 1])
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Product with a polynomial in `x`, truncated at this series' order.
    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, pc) in p.coeffs().iter().enumerate().take(n + 1) {
            if pc.is_zero() {
                continue;
            }
            for (j, sc) in self.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += pc * sc;
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiplication by `x^k`, keeping the order.
    pub fn mul_x_pow(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        if k <= n {
            out[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        Self::from_coeffs(out)
    }

    /// Zero-pads (never truncates) up to `order`.
    pub fn pad_to(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order()) + 1, Rational::zero());
        Self::from_coeffs(coeffs)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", text.join(", "))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{self}]")
    }
}

/// Coefficients of `2F1(a, b; c; x)` to order `n`.
///
/// Fails with a pole when `(c)_i` vanishes for some `i <= n`.
pub fn hg_series(a: &Rational, b: &Rational, c: &Rational, order: usize) -> Result<TruncatedSeries> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for i in 0..order {
        let shift = int(i as i64);
        let lower = c + &shift;
        if lower.is_zero() {
            return Err(Error::pole(format!(
                "lower parameter {c} blocks the series at order {}",
                i + 1
            )));
        }
        term = term * (a + &shift) * (b + &shift) / (lower * int(i as i64 + 1));
        coeffs.push(term.clone());
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// Coefficients of `(1 - x)^e`, i.e. `(-e)_n / n!`.
pub fn binomial_series(e: &Rational, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for i in 0..order {
        term = term * (int(i as i64) - e) / int(i as i64 + 1);
        coeffs.push(term.clone());
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// Left side of the contiguous closed form `2F1(alpha, 1+gamma; gamma; x)`.
///
/// Uses `(1+gamma)_n / (gamma)_n = (gamma+n)/gamma`, which stays finite when
/// `gamma` is a negative integer: coefficients are
/// `(alpha)_n (gamma+n) / (gamma n!)`.
pub fn lmm1_lhs_series(alpha: &Rational, gamma: &Rational, order: usize) -> Result<TruncatedSeries> {
    if gamma.is_zero() {
        return Err(Error::pole("gamma = 0"));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut rising = Rational::one();
    for i in 0..=order {
        let n = int(i as i64);
        if i > 0 {
            rising = rising * (alpha + &n - int(1)) / &n;
        }
        coeffs.push(&rising * (gamma + &n) / gamma);
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, pochhammer};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn hypergeometric_examples() {
        let any = frac(7, 3);
        assert_eq!(hg_series(&any, &any, &any, 0).unwrap().coeffs(), &ints(&[1])[..]);
        assert_eq!(
            hg_series(&int(1), &int(1), &int(1), 3).unwrap().coeffs(),
            &ints(&[1, 1, 1, 1])[..]
        );
        assert_eq!(
            hg_series(&int(2), &int(1), &int(1), 3).unwrap().coeffs(),
            &ints(&[1, 2, 3, 4])[..]
        );
        assert!(matches!(hg_series(&int(1), &int(1), &int(-2), 3), Err(Error::Pole(_))));
        // c = -2 only blocks from order 4 on.
        assert!(hg_series(&int(1), &int(1), &int(-3), 3).is_ok());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_series(&int(-1), 3).coeffs(), &ints(&[1, 1, 1, 1])[..]);
        assert_eq!(binomial_series(&int(2), 3).coeffs(), &ints(&[1, -2, 1, 0])[..]);
    }

    #[test]
    fn lmm1_lhs_examples() {
        let s = lmm1_lhs_series(&frac(5, 7), &frac(-2, 3), 0).unwrap();
        assert_eq!(s.coeffs(), &ints(&[1])[..]);
        let s = lmm1_lhs_series(&int(1), &int(1), 3).unwrap();
        assert_eq!(s, hg_series(&int(1), &int(2), &int(1), 3).unwrap());
        assert_eq!(s.coeffs(), &ints(&[1, 2, 3, 4])[..]);
        for k in 1..8usize {
            let s = lmm1_lhs_series(&frac(3, 5), &int(-(k as i64)), 10).unwrap();
            assert!(s.coeff(k).is_zero());
        }
        assert!(matches!(lmm1_lhs_series(&int(1), &int(0), 3), Err(Error::Pole(_))));
    }

    #[test]
    fn ring_operations() {
        let s = TruncatedSeries::from_coeffs(ints(&[1, 2, 3]));
        assert!(s.sub(&s).is_zero());
        assert_eq!(s.scale(&frac(1, 2)).coeffs(), &[frac(1, 2), int(1), frac(3, 2)][..]);
        let geo = TruncatedSeries::from_coeffs(ints(&[1, 1, 1, 1]));
        assert_eq!(
            geo.mul_poly(&Polynomial::from_ints(&[1, -1])).coeffs(),
            &ints(&[1, 0, 0, 0])[..]
        );
        assert_eq!(geo.mul_x_pow(2).coeffs(), &ints(&[0, 0, 1, 1])[..]);
        let short = TruncatedSeries::from_coeffs(ints(&[5, 5]));
        assert_eq!(geo.add(&short).order(), 1);
        assert_eq!(s.to_string(), "1, 2, 3");
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-30i64..=30, 1i64..=8).prop_map(|(p, q)| frac(p, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn pochhammer_ratio_cancellation(gamma in rational(), n in 0u64..=20) {
            let blocked = crate::rational::is_nonpositive_integer(&gamma)
                && (-gamma.to_integer()) < num_bigint::BigInt::from(n);
            prop_assume!(!blocked && !gamma.is_zero());
            let ratio = pochhammer(&(&gamma + int(1)), n) / pochhammer(&gamma, n);
            prop_assert_eq!(ratio, (&gamma + int(n as i64)) / &gamma);
        }
    }

    proptest! {
        #[test]
        fn parameter_symmetry(a in rational(), b in rational(), c in rational()) {
            prop_assume!(!crate::rational::is_nonpositive_integer(&c));
            prop_assert_eq!(hg_series(&a, &b, &c, 24).unwrap(), hg_series(&b, &a, &c, 24).unwrap());
        }

        #[test]
        fn binomial_is_one_f_zero(a in rational()) {
            let s = binomial_series(&-a.clone(), 30);
            for (n, c) in s.coeffs().iter().enumerate() {
                prop_assert_eq!(c, &(pochhammer(&a, n as u64) / crate::rational::factorial(n as u64)));
            }
        }

        #[test]
        fn hg_series_matches_pochhammer_formula(a in rational(), b in rational(), c in rational()) {
            prop_assume!(!crate::rational::is_nonpositive_integer(&c));
            let s = hg_series(&a, &b, &c, 16).unwrap();
            for (n, coeff) in s.coeffs().iter().enumerate() {
                let n = n as u64;
                let expected = pochhammer(&a, n) * pochhammer(&b, n)
                    / (pochhammer(&c, n) * crate::rational::factorial(n));
                prop_assert_eq!(coeff, &expected);
            }
        }
    }
}
