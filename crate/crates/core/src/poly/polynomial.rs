use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// Dense univariate polynomial in `n` over the rationals, constant term first.
///
/// Trailing zeros are never stored, so the zero polynomial has no
/// coefficients and `degree()` is `None`, which orders below every `Some(d)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `n`.
    pub fn n() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `n + c`.
    pub fn linear(c: Rational) -> Self {
        Self::new(vec![c, Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `n^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` stands for the degree of the zero polynomial (negative infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// `p(n + by)`, expanded.
    pub fn shift(&self, by: &Rational) -> Self {
        let step = Self::linear(by.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &step) + &Self::constant(c.clone()))
    }

    pub fn shift_int(&self, by: i64) -> Self {
        self.shift(&crate::rational::int(by))
    }

    /// Euclidean division over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let factor = &rem[top] * &lc_inv;
            let shift = top - dd;
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= &factor * c;
                }
            }
            quot[shift] = factor;
            rem.pop();
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor);
        if !r.is_zero() {
            return Err(Error::Invariant(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Parses the comma-separated constant-first coefficient list, e.g. `-1,0,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = text.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Inverse of [`Polynomial::parse`]. The zero polynomial prints as `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Monic greatest common divisor. Both inputs zero is a domain error.
pub fn poly_gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::domain("gcd of two zero polynomials"));
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

impl fmt::Display for Polynomial {
    /// Human-readable form, highest degree first: `3/2*n^2 - n + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if i > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "n")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn zero_degree_orders_below_everything() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert!(Polynomial::zero().degree() < Some(0));
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[0, 1]), &p(&[1, 1])).unwrap(), p(&[1]));
        assert_eq!(poly_gcd(&p(&[2, 2]), &p(&[4, 4])).unwrap(), p(&[1, 1]));
        assert_eq!(poly_gcd(&Polynomial::zero(), &p(&[3, 3])).unwrap(), p(&[1, 1]));
        assert!(matches!(
            poly_gcd(&Polynomial::zero(), &Polynomial::zero()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).shift_int(1), p(&[1, 2, 1]));
        let q = p(&[3, -1, 4]);
        assert_eq!(q.shift_int(0), q);
        assert_eq!(p(&[-1, 1]).shift_int(2), p(&[1, 1]));
    }

    #[test]
    fn text_format() {
        let q = Polynomial::parse("-1,0,1").unwrap();
        assert_eq!(q, p(&[-1, 0, 1]));
        assert_eq!(q.to_text(), "-1,0,1");
        assert_eq!(Polynomial::parse("0,0").unwrap().to_text(), "0");
        assert!(Polynomial::parse("1,,2").is_err());
        assert!(Polynomial::parse("").is_err());
        assert_eq!(q.to_string(), "n^2 - 1");
        assert_eq!(
            Polynomial::new(vec![int(1), int(-1), frac(3, 2)]).to_string(),
            "3/2*n^2 - n + 1"
        );
    }

    fn poly_strategy() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((-9i64..=9, 1i64..=4), 0..6)
            .prop_map(|v| Polynomial::new(v.into_iter().map(|(a, b)| frac(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            let (a, b) = (&a * &c, &b * &c);
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = poly_gcd(&a, &b).unwrap();
            prop_assert!(a.div_rem(&g).1.is_zero());
            prop_assert!(b.div_rem(&g).1.is_zero());
            if !c.is_zero() {
                prop_assert!(g.degree() >= c.degree());
            }
        }

        #[test]
        fn div_rem_reconstructs(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn shift_evaluates_consistently(a in poly_strategy(), j in -6i64..=6, at in -6i64..=6) {
            prop_assert_eq!(a.shift_int(j).eval(&int(at)), a.eval(&int(at + j)));
        }
    }
}
