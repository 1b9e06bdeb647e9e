//! Indefinite hypergeometric summation.
//!
//! Given a term `t(n)` through its ratio `r(n) = t(n+1)/t(n)`, Gosper's
//! algorithm decides whether an anti-difference `f(n) = R(n) t(n)` with
//! rational `R` exists, so that `f(n+1) - f(n) = t(n)`. The pipeline is
//! the normal form `r = (A/B) * C(n+1)/C(n)` with `gcd(A(n), B(n+j)) = 1`
//! for all `j >= 0`, a polynomial solution `x(n)` of
//! `A(n) x(n+1) - B(n-1) x(n) = C(n)`, and `R(n) = B(n-1) x(n) / C(n)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{dispersion, poly_gcd, solve_gosper_equation, Polynomial, RationalFunction};
use crate::rational::{factorial, int, pochhammer, rational_pow, Rational};

/// How far `antidifference` walks away from a pole of the certificate.
const MAX_POLE_DETOUR: i64 = 16;

/// A hypergeometric term fixed by its ratio and one known value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperTerm {
    ratio: RationalFunction,
    anchor: i64,
    anchor_value: Rational,
}

impl HyperTerm {
    /// Term with `t(0) = initial`.
    pub fn new(ratio: RationalFunction, initial: Rational) -> Self {
        Self::anchored(ratio, 0, initial)
    }

    /// Term with `t(anchor) = value`, for terms whose ratio is singular at 0.
    pub fn anchored(ratio: RationalFunction, anchor: i64, value: Rational) -> Self {
        HyperTerm {
            ratio,
            anchor,
            anchor_value: value,
        }
    }

    pub fn ratio(&self) -> &RationalFunction {
        &self.ratio
    }

    /// `t(n)` by walking the ratio from the anchor. Fails if the walk crosses
    /// a pole of the ratio (or a zero, going backwards).
    pub fn value(&self, n: i64) -> Result<Rational> {
        let mut t = self.anchor_value.clone();
        if n >= self.anchor {
            for m in self.anchor..n {
                let r = self
                    .ratio
                    .eval(&int(m))
                    .ok_or_else(|| Error::pole(format!("term ratio has a pole at n = {m}")))?;
                t *= r;
            }
        } else {
            for m in (n..self.anchor).rev() {
                let r = self
                    .ratio
                    .eval(&int(m))
                    .filter(|r| !r.is_zero())
                    .ok_or_else(|| Error::pole(format!("cannot step the term backwards through n = {m}")))?;
                t /= r;
            }
        }
        Ok(t)
    }
}

/// Ratio `(a+n)(b+n) x / ((c+n)(1+n))` of consecutive `2F1` terms, reduced.
///
/// Cancellation can hide finite support, so sums of `2F1` terms are always
/// evaluated from the parameters rather than by iterating this ratio.
pub fn term_ratio_2f1(a: &Rational, b: &Rational, c: &Rational, x: &Rational) -> RationalFunction {
    let num = (&Polynomial::linear(a.clone()) * &Polynomial::linear(b.clone())).scale(x);
    let den = &Polynomial::linear(c.clone()) * &Polynomial::linear(int(1));
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// `r(n) = (A(n)/B(n)) * C(n+1)/C(n)`; `B` and `C` are monic and any
/// constant factor of `r` sits in `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
}

impl NormalForm {
    pub fn reconstruct(&self) -> RationalFunction {
        RationalFunction::new(&self.a * &self.c.shift_int(1), &self.b * &self.c)
            .expect("normal form polynomials are nonzero")
    }
}

/// Gosper–Petkovšek normal form of a nonzero ratio.
pub fn gpnf(r: &RationalFunction) -> Result<NormalForm> {
    if r.is_zero() {
        return Err(Error::domain("normal form of the zero ratio"));
    }
    let z = r.num().leading();
    let mut a = r.num().monic();
    let mut b = r.den().clone();
    let mut c = Polynomial::one();

    // Each extraction strictly lowers deg a, so this terminates.
    while let Some(&j) = dispersion(&a, &b)?.iter().next() {
        let j = j as i64;
        let g = poly_gcd(&a, &b.shift_int(j))?;
        a = a.div_exact(&g)?;
        b = b.div_exact(&g.shift_int(-j))?;
        for i in 1..=j {
            c = &c * &g.shift_int(-i);
        }
    }

    let form = NormalForm { a: a.scale(&z), b, c };
    if form.reconstruct() != *r {
        return Err(Error::Invariant(format!(
            "normal form does not reconstruct the ratio {r}"
        )));
    }
    Ok(form)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GosperCertificate {
    pub ratio: RationalFunction,
    pub normal_form: NormalForm,
    /// Solution of `A(n) x(n+1) - B(n-1) x(n) = C(n)`.
    pub xpoly: Polynomial,
    /// `R(n) = B(n-1) x(n) / C(n)`, so that `f(n) = R(n) t(n)`.
    pub certificate: RationalFunction,
}

impl GosperCertificate {
    /// Checks every certificate identity as an identity of polynomials or
    /// rational functions, not at sample points.
    pub fn verify_symbolic(&self) -> Result<()> {
        let NormalForm { a, b, c } = &self.normal_form;
        if self.normal_form.reconstruct() != self.ratio {
            return Err(Error::Invariant("normal form does not reconstruct the ratio".into()));
        }
        if !dispersion(a, b)?.is_empty() {
            return Err(Error::Invariant("A(n) and B(n+j) share a factor".into()));
        }
        let lhs = &(a * &self.xpoly.shift_int(1)) - &(&b.shift_int(-1) * &self.xpoly);
        if lhs != *c {
            return Err(Error::Invariant("Gosper equation does not hold".into()));
        }
        // R(n+1) r(n) - R(n) = 1
        let telescoped = self.certificate.shift_int(1).mul(&self.ratio).sub(&self.certificate);
        if !telescoped.is_one() {
            return Err(Error::Invariant(format!(
                "R(n+1) r(n) - R(n) = {telescoped}, expected 1"
            )));
        }
        Ok(())
    }

    /// `f(n) = R(n) t(n)`, with `t` supplied by the caller.
    ///
    /// Where `R` has a pole (necessarily at a zero of `t`), `R(n) t(n)` is
    /// rewritten as `G(n) t(n - d)` with `G(z) = R(z) t(z)/t(z-d)` expanded
    /// through the ratio and reduced, for the nearest shift `d` at which `G`
    /// is regular.
    pub fn antidifference(&self, n: i64, term: impl Fn(i64) -> Option<Rational>) -> Option<Rational> {
        let at = int(n);
        if let Some(rv) = self.certificate.eval(&at) {
            return Some(rv * term(n)?);
        }
        for d in (1..=MAX_POLE_DETOUR).flat_map(|d| [d, -d]) {
            let mut g = self.certificate.clone();
            if d > 0 {
                for i in 1..=d {
                    g = g.mul(&self.ratio.shift_int(-i));
                }
            } else {
                for i in 0..-d {
                    g = g.div(&self.ratio.shift_int(i)).ok()?;
                }
            }
            if let Some(gv) = g.eval(&at) {
                if let Some(t) = term(n - d) {
                    return Some(gv * t);
                }
            }
        }
        None
    }
}

impl fmt::Display for GosperCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A(n) = {}", self.normal_form.a)?;
        writeln!(f, "B(n) = {}", self.normal_form.b)?;
        writeln!(f, "C(n) = {}", self.normal_form.c)?;
        writeln!(f, "x(n) = {}", self.xpoly)?;
        write!(f, "R(n) = {}", self.certificate)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GosperVerdict {
    Summable(GosperCertificate),
    NotSummable,
}

impl GosperVerdict {
    pub fn certificate(&self) -> Option<&GosperCertificate> {
        match self {
            GosperVerdict::Summable(c) => Some(c),
            GosperVerdict::NotSummable => None,
        }
    }
}

pub fn gosper_summable(term: &HyperTerm) -> Result<GosperVerdict> {
    let ratio = term.ratio().clone();
    let normal_form = gpnf(&ratio)?;
    let NormalForm { a, b, c } = &normal_form;
    let Some(xpoly) = solve_gosper_equation(a, b, c) else {
        return Ok(GosperVerdict::NotSummable);
    };
    let certificate = RationalFunction::new(&b.shift_int(-1) * &xpoly, c.clone())?;
    let cert = GosperCertificate {
        ratio,
        normal_form,
        xpoly,
        certificate,
    };
    cert.verify_symbolic()?;
    Ok(GosperVerdict::Summable(cert))
}

/// `sum_{n=n0}^{n1} t(n)` as `f(n1+1) - f(n0)`, cross-checked against
/// direct summation.
pub fn definite_sum_via_certificate(term: &HyperTerm, n0: u64, n1: u64) -> Result<Rational> {
    if n1 < n0 {
        return Ok(Rational::zero());
    }
    let GosperVerdict::Summable(cert) = gosper_summable(term)? else {
        return Err(Error::NotSummable);
    };
    let (n0, n1) = (n0 as i64, n1 as i64);
    let eval = |m: i64| term.value(m).ok();
    let upper = cert
        .antidifference(n1 + 1, eval)
        .ok_or_else(|| Error::domain(format!("anti-difference undefined at n = {}", n1 + 1)))?;
    let lower = cert
        .antidifference(n0, eval)
        .ok_or_else(|| Error::domain(format!("anti-difference undefined at n = {n0}")))?;
    let telescoped = upper - lower;

    let mut direct = Rational::zero();
    for m in n0..=n1 {
        direct += term.value(m)?;
    }
    if direct != telescoped {
        return Err(Error::Invariant(format!(
            "telescoped sum {telescoped} differs from direct sum {direct}"
        )));
    }
    Ok(telescoped)
}

fn family_point(alpha: &Rational, k: u64) -> Result<Rational> {
    let denom = alpha + int(k as i64);
    if denom.is_zero() {
        return Err(Error::domain("alpha + k = 0"));
    }
    Ok(int(k as i64) / denom)
}

/// Summand `(alpha)_n (1-k)_n / ((-k)_n n!) x^n` at `x = k/(alpha+k)`.
///
/// For `n <= k` the Pochhammer products are evaluated as written. Past
/// `n = k` both `(1-k)_n` and `(-k)_n` vanish; the value there is the
/// continuation `(alpha)_n / n! * (k-n)/k * x^n`, which the closed
/// anti-difference telescopes to for every `n`.
pub fn family_summand(alpha: &Rational, k: u64, n: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let x = family_point(alpha, k)?;
    let power = rational_pow(&x, n as i64)?;
    let ki = int(k as i64);
    if n <= k {
        let num = pochhammer(alpha, n) * pochhammer(&(int(1) - &ki), n);
        let den = pochhammer(&-ki, n) * factorial(n);
        Ok(num / den * power)
    } else {
        Ok(pochhammer(alpha, n) / factorial(n) * (&ki - int(n as i64)) / &ki * power)
    }
}

/// The summand above as a [`HyperTerm`] with `t(0) = 1`.
pub fn family_term(alpha: &Rational, k: u64) -> Result<HyperTerm> {
    let x = family_point(alpha, k)?;
    let ki = int(k as i64);
    Ok(HyperTerm::new(
        term_ratio_2f1(alpha, &(int(1) - &ki), &-ki, &x),
        Rational::one(),
    ))
}

/// Closed anti-difference of [`family_summand`]:
/// `f(n) = (alpha+k)/k * (alpha+1)_{n-1}/(n-1)! * (k/(alpha+k))^n`,
/// with `f(0) = 0` from `1/(-1)! = 0`.
pub fn closed_antidifference(alpha: &Rational, k: u64, n: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let x = family_point(alpha, k)?;
    if n == 0 {
        return Ok(Rational::zero());
    }
    Ok(x.recip() * pochhammer(&(alpha + int(1)), n - 1) / factorial(n - 1) * rational_pow(&x, n as i64)?)
}
