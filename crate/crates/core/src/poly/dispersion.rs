//! Shift dispersion of two polynomials via resultants.
//!
//! `Res_n(p(n), q(n+j))` is a polynomial in `j` of degree at most
//! `deg p * deg q`. It is recovered by exact evaluation at that many plus one
//! integer shifts and interpolation, and its nonnegative integer roots are
//! found with the rational-root test on the integer-cleared form. No
//! factorization over Q is needed.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{linalg, Polynomial};
use crate::rational::{int, Rational};

/// Largest integer root magnitude the root scan will enumerate.
const ROOT_SCAN_LIMIT: u64 = 10_000_000;

/// Resultant of two polynomials as the determinant of their Sylvester matrix.
pub fn resultant(p: &Polynomial, q: &Polynomial) -> Rational {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Rational::zero();
    };
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, count) in [(p, m, n), (q, n, m)] {
        for r in 0..count {
            let mut row = vec![Rational::zero(); size];
            for i in 0..=deg {
                row[r + i] = poly.coeff(deg - i);
            }
            rows.push(row);
        }
    }
    linalg::determinant(&rows)
}

/// Newton interpolation through `(x_i, y_i)`, expanded to monomial form.
pub fn interpolate(points: &[(Rational, Rational)]) -> Polynomial {
    let n = points.len();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - level].0);
        }
    }
    let mut result = Polynomial::zero();
    for i in (0..n).rev() {
        let step = Polynomial::linear(-points[i].0.clone());
        result = &(&result * &step) + &Polynomial::constant(dd[i].clone());
    }
    result
}

/// `Res_n(p(n), q(n + j))` as a polynomial in `j`.
pub fn shift_resultant(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let (dp, dq) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
    let points: Vec<(Rational, Rational)> = (0..=(dp * dq) as i64)
        .map(|j| (int(j), resultant(p, &q.shift_int(j))))
        .collect();
    interpolate(&points)
}

fn cleared_integer_coeffs(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

fn ceil_root(value: &BigInt, index: u32) -> BigInt {
    let r = value.nth_root(index);
    if r.pow(index) < *value {
        r + 1
    } else {
        r
    }
}

/// Fujiwara-style bound on the magnitude of every complex root of a
/// polynomial with integer coefficients, constant term first.
pub fn root_magnitude_bound(coeffs: &[BigInt]) -> BigInt {
    let Some(d) = coeffs.len().checked_sub(1) else {
        return BigInt::zero();
    };
    let lead = coeffs[d].abs();
    let mut best = BigInt::zero();
    for i in 1..=d {
        let (q, r) = coeffs[d - i].abs().div_rem(&lead);
        let q = if r.is_zero() { q } else { q + 1 };
        best = best.max(ceil_root(&q, i as u32));
    }
    best * 2
}

fn nonnegative_integer_roots(poly: &Polynomial) -> Result<BTreeSet<u64>> {
    let mut coeffs = cleared_integer_coeffs(poly);
    let mut roots = BTreeSet::new();
    let leading_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if leading_zeros > 0 {
        roots.insert(0);
        coeffs.drain(..leading_zeros);
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    let bound = root_magnitude_bound(&coeffs)
        .min(coeffs[0].abs())
        .to_u64()
        .filter(|&b| b <= ROOT_SCAN_LIMIT)
        .ok_or_else(|| Error::domain("integer root bound too large to scan"))?;
    let constant = coeffs[0].clone();
    for j in 1..=bound {
        let jb = BigInt::from(j);
        if !constant.is_multiple_of(&jb) {
            continue;
        }
        let value = coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &jb + c);
        if value.is_zero() {
            roots.insert(j);
        }
    }
    Ok(roots)
}

/// The set `{ j >= 0 : deg gcd(p(n), q(n+j)) >= 1 }`.
pub fn dispersion(p: &Polynomial, q: &Polynomial) -> Result<BTreeSet<u64>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::domain("dispersion of a zero polynomial"));
    }
    if p.is_constant() || q.is_constant() {
        return Ok(BTreeSet::new());
    }
    let res = shift_resultant(p, q);
    if res.is_zero() {
        return Err(Error::Invariant("shift resultant vanishes identically".into()));
    }
    nonnegative_integer_roots(&res)
}

/// Upper bound on every element of `dispersion(p, q)`: the root bound of the
/// integer-cleared shift resultant.
pub fn dispersion_bound(p: &Polynomial, q: &Polynomial) -> u64 {
    if p.is_constant() || q.is_constant() {
        return 0;
    }
    let coeffs = cleared_integer_coeffs(&shift_resultant(p, q));
    root_magnitude_bound(&coeffs).to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly_gcd;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn resultant_small_cases() {
        // Res(n - a, n - b) = a - b up to sign convention b - a for monic linears.
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-5, 1])), int(-3));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])), int(0));
        assert_eq!(resultant(&p(&[3]), &p(&[0, 0, 1])), int(9));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let target = Polynomial::new(vec![frac(1, 2), int(-3), int(0), frac(7, 5)]);
        let pts: Vec<_> = (0..4).map(|x| (int(x), target.eval(&int(x)))).collect();
        assert_eq!(interpolate(&pts), target);
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion(&p(&[0, 1]), &p(&[0, 1])).unwrap(), set(&[0]));
        assert_eq!(dispersion(&p(&[-2, 1]), &p(&[0, 1])).unwrap(), set(&[]));
        assert_eq!(dispersion(&p(&[0, 1]), &p(&[-2, 1])).unwrap(), set(&[2]));
        assert_eq!(dispersion(&p(&[5]), &p(&[-2, 1])).unwrap(), set(&[]));
        assert!(matches!(
            dispersion(&Polynomial::zero(), &p(&[1, 1])),
            Err(Error::Domain(_))
        ));
        // (n+1)^2 against n: shared root after shifting by one.
        assert_eq!(dispersion(&p(&[1, 2, 1]), &p(&[0, 1])).unwrap(), set(&[1]));
    }

    fn product_of_linears(roots: &[i64]) -> Polynomial {
        roots
            .iter()
            .fold(Polynomial::one(), |acc, &r| &acc * &Polynomial::linear(int(-r)))
    }

    proptest! {
        #[test]
        fn dispersion_matches_gcd_scan(
            pr in proptest::collection::vec(-8i64..=8, 1..4),
            qr in proptest::collection::vec(-8i64..=8, 1..4),
            scale in 1i64..=5,
        ) {
            let a = product_of_linears(&pr).scale(&frac(scale, 3));
            let b = product_of_linears(&qr);
            let found = dispersion(&a, &b).unwrap();
            let bound = dispersion_bound(&a, &b);
            prop_assert!(found.iter().all(|&j| j <= bound));
            for j in 0..=bound.min(64) {
                let g = poly_gcd(&a, &b.shift_int(j as i64)).unwrap();
                prop_assert_eq!(found.contains(&j), g.degree() >= Some(1), "j = {}", j);
            }
            // Brute-force oracle over root differences.
            let expected: BTreeSet<u64> = pr.iter()
                .flat_map(|&x| qr.iter().map(move |&y| y - x))
                .filter(|&d| d >= 0)
                .map(|d| d as u64)
                .collect();
            prop_assert_eq!(found, expected);
        }
    }
}
