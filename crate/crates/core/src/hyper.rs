//! Point evaluation of `2F1(a, b; c; x)` and `1F0(a; -; x)`.
//!
//! Terminating series are summed exactly. This includes the extended case
//! where `c` is a non-positive integer and some upper parameter is a
//! non-positive integer strictly above it; the sum then stops at that
//! parameter's magnitude. Non-terminating series are evaluated only for
//! `|x| < 1`, as a rational interval from exact partial sums plus a rigorous
//! geometric tail bound.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, is_nonpositive_integer, nonpositive_integer_magnitude, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `c` is not a non-positive integer and an upper parameter is.
    StandardTerminating,
    /// `c` is a non-positive integer and an upper parameter is a non-positive
    /// integer strictly greater than `c`.
    ExtendedTerminating,
    /// Neither upper parameter is a non-positive integer and `c` is not one.
    NonTerminating,
    /// `c` is a non-positive integer and no upper parameter qualifies.
    Undefined,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::StandardTerminating => "standard-terminating",
            Classification::ExtendedTerminating => "extended-terminating",
            Classification::NonTerminating => "non-terminating",
            Classification::Undefined => "undefined",
        }
    }

    pub fn is_terminating(self) -> bool {
        matches!(
            self,
            Classification::StandardTerminating | Classification::ExtendedTerminating
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub x: Rational,
}

impl HGParams {
    pub fn new(a: Rational, b: Rational, c: Rational, x: Rational) -> Self {
        HGParams { a, b, c, x }
    }

    pub fn classify(&self) -> Classification {
        classify(&self.a, &self.b, &self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalResult {
    Exact(Rational),
    /// Closed interval `[lo, hi]` containing the series value.
    Enclosure {
        lo: Rational,
        hi: Rational,
    },
}

impl EvalResult {
    pub fn contains(&self, value: &Rational) -> bool {
        match self {
            EvalResult::Exact(v) => v == value,
            EvalResult::Enclosure { lo, hi } => lo <= value && value <= hi,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            EvalResult::Exact(v) => Some(v),
            EvalResult::Enclosure { .. } => None,
        }
    }

    pub fn width(&self) -> Rational {
        match self {
            EvalResult::Exact(_) => Rational::zero(),
            EvalResult::Enclosure { lo, hi } => hi - lo,
        }
    }
}

impl fmt::Display for EvalResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalResult::Exact(v) => write!(f, "{v}"),
            EvalResult::Enclosure { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

pub fn classify(a: &Rational, b: &Rational, c: &Rational) -> Classification {
    let a_np = is_nonpositive_integer(a);
    let b_np = is_nonpositive_integer(b);
    if !is_nonpositive_integer(c) {
        if a_np || b_np {
            Classification::StandardTerminating
        } else {
            Classification::NonTerminating
        }
    } else if (a_np && a > c) || (b_np && b > c) {
        Classification::ExtendedTerminating
    } else {
        Classification::Undefined
    }
}

/// Last summation index of a terminating series: the smallest magnitude
/// among the qualifying upper parameters.
pub fn truncation_index(a: &Rational, b: &Rational, c: &Rational) -> Option<u64> {
    let class = classify(a, b, c);
    let qualifies = |p: &Rational| match class {
        Classification::StandardTerminating => is_nonpositive_integer(p),
        Classification::ExtendedTerminating => is_nonpositive_integer(p) && p > c,
        _ => false,
    };
    [a, b]
        .into_iter()
        .filter(|p| qualifies(p))
        .filter_map(nonpositive_integer_magnitude)
        .min()
}

/// Partial sum `sum_{n=0}^{last} (a)_n (b)_n / ((c)_n n!) x^n`.
///
/// Callers guarantee `(c)_n != 0` for `n <= last`; the term recurrence is
/// only advanced while the next term is needed.
pub(crate) fn partial_sum(a: &Rational, b: &Rational, c: &Rational, x: &Rational, last: u64) -> Rational {
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for n in 0..last {
        let k = int(n as i64);
        term = term * (a + &k) * (b + &k) * x / ((c + &k) * int(n as i64 + 1));
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    sum
}

pub fn eval_terminating(params: &HGParams) -> Result<Rational> {
    let class = params.classify();
    if !class.is_terminating() {
        return Err(Error::Classification {
            expected: "terminating",
            found: class.name(),
        });
    }
    let last = truncation_index(&params.a, &params.b, &params.c).expect("terminating");
    Ok(partial_sum(&params.a, &params.b, &params.c, &params.x, last))
}

fn ceil_sqrt(v: &BigInt) -> BigInt {
    let r = v.sqrt();
    if &r * &r < *v {
        r + 1
    } else {
        r
    }
}

fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Smallest index `N0 >= 0` such that for every `n >= N0` the term ratio
/// magnitude `|(a+n)(b+n)x / ((c+n)(n+1))|` is at most `ratio_bound`.
///
/// Uses the majorant `(n+|a|)(n+|b|)|x| / ((n-|c|)(n+1))` and isolates the
/// largest root of the resulting quadratic exactly.
pub fn tail_start_index(a: &Rational, b: &Rational, c: &Rational, x_abs: &Rational, ratio_bound: &Rational) -> u64 {
    let (aa, ba, ca) = (a.abs(), b.abs(), c.abs());
    let r = ratio_bound;
    // Q(n) = r (n - |c|)(n + 1) - |x| (n + |a|)(n + |b|)
    let qa = r - x_abs;
    let qb = r * (int(1) - &ca) - x_abs * (&aa + &ba);
    let qc = -(r * &ca) - x_abs * &aa * &ba;
    debug_assert!(qa.is_positive());
    let disc = &qb * &qb - int(4) * &qa * &qc;
    let disc_num = disc.numer() * disc.denom();
    let sqrt_upper = Rational::new(ceil_sqrt(&disc_num), disc.denom().clone());
    let root_upper = (-&qb + sqrt_upper) / (int(2) * &qa);

    let past_c = ca.floor().to_integer() + 1;
    let start = ceil(&root_upper).max(past_c).max(BigInt::zero());
    u64::try_from(start).expect("tail start index fits in u64")
}

/// Rigorous enclosure of a non-terminating series with `|x| < 1`.
///
/// The returned interval has width at most `eps`.
pub fn eval_convergent(params: &HGParams, eps: &Rational) -> Result<EvalResult> {
    let class = params.classify();
    if class != Classification::NonTerminating {
        return Err(Error::Classification {
            expected: "non-terminating",
            found: class.name(),
        });
    }
    let HGParams { a, b, c, x } = params;
    let x_abs = x.abs();
    if x_abs >= Rational::one() {
        return Err(Error::IllDefined(format!(
            "|x| = {x_abs} >= 1: the value of a non-terminating series outside its disk of convergence is not uniquely determined"
        )));
    }
    if !eps.is_positive() {
        return Err(Error::domain("eps must be positive"));
    }

    let r = (int(1) + &x_abs) / int(2);
    let tail_factor = &r / (int(1) - &r);
    let n0 = tail_start_index(a, b, c, &x_abs, &r);

    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut n: u64 = 0;
    loop {
        sum += &term;
        if n >= n0 {
            let err = term.abs() * &tail_factor;
            if int(2) * &err <= *eps {
                return Ok(EvalResult::Enclosure {
                    lo: &sum - &err,
                    hi: &sum + &err,
                });
            }
        }
        let k = int(n as i64);
        term = term * (a + &k) * (b + &k) * x / ((c + &k) * int(n as i64 + 1));
        n += 1;
    }
}

/// `1F0(a; -; x) = (1 - x)^(-a)`: exact when `a` is a non-positive integer,
/// otherwise an enclosure for `|x| < 1`.
pub fn eval_1f0(a: &Rational, x: &Rational, eps: &Rational) -> Result<EvalResult> {
    if let Some(last) = nonpositive_integer_magnitude(a) {
        let one = int(1);
        return Ok(EvalResult::Exact(partial_sum(a, &one, &one, x, last)));
    }
    // 2F1(a, 1; 1; x) has exactly the 1F0 coefficients.
    eval_convergent(&HGParams::new(a.clone(), int(1), int(1), x.clone()), eps)
}

/// Dispatches on the classification: exact for terminating series, an
/// enclosure for convergent ones, an error otherwise.
pub fn evaluate(params: &HGParams, eps: &Rational) -> Result<EvalResult> {
    match params.classify() {
        Classification::StandardTerminating | Classification::ExtendedTerminating => {
            eval_terminating(params).map(EvalResult::Exact)
        }
        Classification::NonTerminating => eval_convergent(params, eps),
        Classification::Undefined => Err(Error::Classification {
            expected: "defined",
            found: Classification::Undefined.name(),
        }),
    }
}
