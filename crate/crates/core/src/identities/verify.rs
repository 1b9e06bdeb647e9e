//! Verifiers for individual identity instances.
//!
//! Every verifier computes its two sides along disjoint paths: one side is a
//! series or a summation driven by the parameters, the other a closed form.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hyper::{classify, eval_convergent, eval_terminating, Classification, HGParams};
use crate::identities::report::{IdentityId, IdentityReport, Mode, Side};
use crate::poly::Polynomial;
use crate::rational::{
    factorial, frac, int, is_nonpositive_integer, nonpositive_integer_magnitude, pochhammer, rational_pow, Rational,
};
use crate::series::{binomial_series, hg_series, lmm1_lhs_series, TruncatedSeries};

fn ki(k: u64) -> Rational {
    int(k as i64)
}

fn evaluation_point(alpha: &Rational, k: &Rational) -> Result<Rational> {
    let denom = alpha + k;
    if denom.is_zero() {
        return Err(Error::domain("alpha + k = 0"));
    }
    Ok(k / denom)
}

/// Product side `(alpha+1)_k / k! * (k/(alpha+k))^k`.
pub fn closed_form_rhs(alpha: &Rational, k: u64) -> Result<Rational> {
    let x = evaluation_point(alpha, &ki(k))?;
    Ok(pochhammer(&(alpha + int(1)), k) / factorial(k) * rational_pow(&x, k as i64)?)
}

/// Terminating sum `2F1(alpha, 1-k; -k; k/(alpha+k))` under the extended definition.
pub fn closed_form_lhs(alpha: &Rational, k: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let x = evaluation_point(alpha, &ki(k))?;
    let params = HGParams::new(alpha.clone(), int(1) - ki(k), -ki(k), x);
    eval_terminating(&params)
}

/// Checks `2F1(alpha, 1-k; -k; k/(alpha+k)) = (alpha+1)_k/k! * (k/(alpha+k))^k`.
pub fn verify_closed_form(alpha: &Rational, k: u64) -> Result<IdentityReport> {
    let lhs = closed_form_lhs(alpha, k)?;
    let rhs = closed_form_rhs(alpha, k)?;
    let equal = lhs == rhs;
    Ok(IdentityReport::new(
        IdentityId::ClosedForm,
        &[("alpha", alpha.clone()), ("k", ki(k))],
        Side::Exact(lhs),
        Side::Exact(rhs),
        equal,
        Mode::Exact,
    ))
}

/// Rows of the cubic family `2F1(a, 3a+1; 3a; 3/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case1Branch {
    /// `a = -1 - m`
    Integer,
    /// `a = -1/3 - m`
    Third,
    /// `a = -2/3 - m`
    TwoThirds,
}

impl Case1Branch {
    pub const ALL: [Case1Branch; 3] = [Case1Branch::Integer, Case1Branch::Third, Case1Branch::TwoThirds];

    pub fn a(self, m: u64) -> Rational {
        let offset = match self {
            Case1Branch::Integer => int(1),
            Case1Branch::Third => frac(1, 3),
            Case1Branch::TwoThirds => frac(2, 3),
        };
        -(offset + ki(m))
    }

    /// The `k` at which the closed form reproduces this row.
    pub fn k(self, m: u64) -> u64 {
        3 * m
            + match self {
                Case1Branch::Integer => 3,
                Case1Branch::Third => 1,
                Case1Branch::TwoThirds => 2,
            }
    }
}

/// Rows of the quartic family `2F1(a, 4a+1; 4a; 4/3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case2Branch {
    Integer,
    Quarter,
    Half,
    ThreeQuarters,
}

impl Case2Branch {
    pub const ALL: [Case2Branch; 4] = [
        Case2Branch::Integer,
        Case2Branch::Quarter,
        Case2Branch::Half,
        Case2Branch::ThreeQuarters,
    ];

    pub fn a(self, m: u64) -> Rational {
        let offset = match self {
            Case2Branch::Integer => int(1),
            Case2Branch::Quarter => frac(1, 4),
            Case2Branch::Half => frac(1, 2),
            Case2Branch::ThreeQuarters => frac(3, 4),
        };
        -(offset + ki(m))
    }

    pub fn k(self, m: u64) -> u64 {
        4 * m
            + match self {
                Case2Branch::Integer => 4,
                Case2Branch::Quarter => 1,
                Case2Branch::Half => 2,
                Case2Branch::ThreeQuarters => 3,
            }
    }
}

fn pow(base: i64, e: i64) -> Rational {
    rational_pow(&int(base), e).expect("nonzero base")
}

/// Tabulated product value of the cubic family.
pub fn case1_rhs(branch: Case1Branch, m: u64) -> Rational {
    let mi = m as i64;
    match branch {
        Case1Branch::Integer => Rational::zero(),
        Case1Branch::Third => {
            pow(-3, 3 * mi) * pochhammer(&frac(1, 3), m) * pochhammer(&frac(5, 3), 2 * m)
                / (pow(2, 3 * mi) * pochhammer(&int(2), 3 * m))
        }
        Case1Branch::TwoThirds => {
            pow(-3, 3 * mi) * pochhammer(&frac(2, 3), m) * pochhammer(&frac(7, 3), 2 * m)
                / (pow(2, 3 * mi + 1) * pochhammer(&int(3), 3 * m))
        }
    }
}

/// Tabulated product value of the quartic family.
pub fn case2_rhs(branch: Case2Branch, m: u64) -> Rational {
    let mi = m as i64;
    let sign = pow(-1, mi);
    match branch {
        Case2Branch::Integer => Rational::zero(),
        Case2Branch::Quarter => {
            sign * pow(2, 8 * mi) * pochhammer(&frac(1, 4), m) * pochhammer(&frac(7, 4), 3 * m)
                / (pow(3, 4 * mi) * pochhammer(&int(2), 4 * m))
        }
        Case2Branch::Half => {
            sign * pow(2, 8 * mi + 1) * pochhammer(&frac(1, 2), m) * pochhammer(&frac(5, 2), 3 * m)
                / (pow(3, 4 * mi + 1) * pochhammer(&int(3), 4 * m))
        }
        Case2Branch::ThreeQuarters => {
            int(5) * sign * pow(2, 8 * mi - 1) * pochhammer(&frac(3, 4), m) * pochhammer(&frac(13, 4), 3 * m)
                / (pow(3, 4 * mi + 2) * pochhammer(&int(4), 4 * m))
        }
    }
}

fn tabulated_report(id: IdentityId, q: i64, x: Rational, a: Rational, m: u64, rhs: Rational) -> IdentityReport {
    let params = [("a", a.clone()), ("m", ki(m))];
    let qa = int(q) * &a;
    let lhs = eval_terminating(&HGParams::new(a, &qa + int(1), qa, x));
    match lhs {
        Ok(lhs) => {
            let equal = lhs == rhs;
            IdentityReport::new(id, &params, Side::Exact(lhs), Side::Exact(rhs), equal, Mode::Exact)
        }
        Err(e) => IdentityReport::failed(id, &params, Mode::Exact, &e),
    }
}

pub fn verify_case1_row(branch: Case1Branch, m: u64) -> IdentityReport {
    tabulated_report(IdentityId::Case1, 3, frac(3, 2), branch.a(m), m, case1_rhs(branch, m))
}

pub fn verify_case2_row(branch: Case2Branch, m: u64) -> IdentityReport {
    tabulated_report(IdentityId::Case2, 4, frac(4, 3), branch.a(m), m, case2_rhs(branch, m))
}

/// All three rows of the cubic family at `m`, in row order.
pub fn verify_case1(m: u64) -> Vec<IdentityReport> {
    Case1Branch::ALL.into_iter().map(|b| verify_case1_row(b, m)).collect()
}

/// All four rows of the quartic family at `m`, in row order.
pub fn verify_case2(m: u64) -> Vec<IdentityReport> {
    Case2Branch::ALL.into_iter().map(|b| verify_case2_row(b, m)).collect()
}

/// The closed form at `a = -j/q - m`, `k = j + q m`, where the series reads
/// `2F1(a, qa+1; qa; q/(q-1))`.
pub fn family_instance(q: u64, j: u64, m: u64) -> Result<IdentityReport> {
    if q < 2 || j == 0 || j > q {
        return Err(Error::domain(format!(
            "need q >= 2 and 1 <= j <= q, got q = {q}, j = {j}"
        )));
    }
    let a = -(frac(j as i64, q as i64) + ki(m));
    let k = j + q * m;
    let base = verify_closed_form(&a, k)?;
    let x = evaluation_point(&a, &ki(k))?;
    let on_family = x == frac(q as i64, q as i64 - 1) && ki(k) == -(ki(q) * &a);
    Ok(IdentityReport::new(
        IdentityId::Family,
        &[("q", ki(q)), ("j", ki(j)), ("m", ki(m)), ("alpha", a), ("k", ki(k))],
        base.lhs,
        base.rhs,
        base.equal && on_family,
        Mode::Exact,
    ))
}

/// `2F1(alpha, 1+gamma; gamma; x) = (gamma + (alpha-gamma) x) (1-x)^(-alpha-1) / gamma`
/// coefficientwise to `order`.
pub fn verify_contiguous_series(alpha: &Rational, gamma: &Rational, order: usize) -> Result<IdentityReport> {
    let lhs = lmm1_lhs_series(alpha, gamma, order)?;
    let linear = Polynomial::new(vec![gamma.clone(), alpha - gamma]);
    let rhs = binomial_series(&(-alpha - int(1)), order)
        .mul_poly(&linear)
        .scale(&gamma.recip());
    let equal = lhs == rhs;
    Ok(IdentityReport::new(
        IdentityId::ContiguousSeries,
        &[("alpha", alpha.clone()), ("gamma", gamma.clone())],
        lhs.into(),
        rhs.into(),
        equal,
        Mode::Series(order),
    ))
}

/// The same closed form at a point, for `alpha` a non-positive integer so
/// both sides are rational.
pub fn verify_contiguous_pointwise(alpha: i64, gamma: &Rational, x: &Rational) -> Result<IdentityReport> {
    if alpha > 0 {
        return Err(Error::domain("alpha must be a non-positive integer"));
    }
    if gamma.is_zero() {
        return Err(Error::pole("gamma = 0"));
    }
    let a = int(alpha);
    let last = alpha.unsigned_abs();
    let mut lhs = Rational::zero();
    for n in 0..=last {
        let lower = pochhammer(gamma, n);
        if lower.is_zero() {
            return Err(Error::domain(format!("gamma = {gamma} blocks the terminating sum")));
        }
        lhs +=
            pochhammer(&a, n) * pochhammer(&(gamma + int(1)), n) / (lower * factorial(n)) * rational_pow(x, n as i64)?;
    }
    let one_minus_x = int(1) - x;
    let rhs = (&a * x - gamma * x + gamma) * rational_pow(&one_minus_x, -alpha - 1)? / gamma;
    let equal = lhs == rhs;
    Ok(IdentityReport::new(
        IdentityId::ContiguousPointwise,
        &[("alpha", a), ("gamma", gamma.clone()), ("x", x.clone())],
        Side::Exact(lhs),
        Side::Exact(rhs),
        equal,
        Mode::Exact,
    ))
}

/// Coefficients of the extended terminating `2F1(alpha, 1-k; -k; x)`,
/// zero-padded to `order`.
fn extended_terminating_series(alpha: &Rational, k: u64, order: usize) -> TruncatedSeries {
    let (b, c) = (int(1) - ki(k), -ki(k));
    let coeffs = (0..=order as u64)
        .map(|n| {
            if n < k {
                pochhammer(alpha, n) * pochhammer(&b, n) / (pochhammer(&c, n) * factorial(n))
            } else {
                Rational::zero()
            }
        })
        .collect();
    TruncatedSeries::from_coeffs(coeffs)
}

/// At `gamma = -k` the contiguous series splits as the extended terminating
/// `2F1(alpha, 1-k; -k; x)` minus
/// `(alpha)_{k+1}/(k (k+1)!) x^{k+1} 2F1(alpha+k+1, 2; k+2; x)`.
pub fn verify_limit_split(alpha: &Rational, k: u64, order: usize) -> Result<IdentityReport> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    if order < k as usize + 2 {
        return Err(Error::domain(format!("order must be at least k + 2 = {}", k + 2)));
    }
    let lhs = lmm1_lhs_series(alpha, &-ki(k), order)?;
    let head = extended_terminating_series(alpha, k, order);
    let coef = pochhammer(alpha, k + 1) / (ki(k) * factorial(k + 1));
    let tail = hg_series(
        &(alpha + ki(k) + int(1)),
        &int(2),
        &(ki(k) + int(2)),
        order - k as usize - 1,
    )?
    .pad_to(order)
    .mul_x_pow(k as usize + 1)
    .scale(&coef);
    let rhs = head.sub(&tail);
    let equal = lhs == rhs;
    Ok(IdentityReport::new(
        IdentityId::LimitSplit,
        &[("alpha", alpha.clone()), ("k", ki(k))],
        lhs.into(),
        rhs.into(),
        equal,
        Mode::Series(order),
    ))
}

/// `[c-2b+(b-a)x] F(a,b;c;x) + b(1-x) F(a,b+1;c;x) - (c-b) F(a,b-1;c;x) = 0`.
pub fn verify_three_term(a: &Rational, b: &Rational, c: &Rational, order: usize) -> Result<IdentityReport> {
    let f0 = hg_series(a, b, c, order)?;
    let fp = hg_series(a, &(b + int(1)), c, order)?;
    let fm = hg_series(a, &(b - int(1)), c, order)?;
    let lhs = f0
        .mul_poly(&Polynomial::new(vec![c - int(2) * b, b - a]))
        .add(&fp.mul_poly(&Polynomial::new(vec![b.clone(), -b.clone()])))
        .sub(&fm.scale(&(c - b)));
    let rhs = TruncatedSeries::zero(order);
    let equal = lhs == rhs;
    Ok(IdentityReport::new(
        IdentityId::ThreeTerm,
        &[("a", a.clone()), ("b", b.clone()), ("c", c.clone())],
        lhs.into(),
        rhs.into(),
        equal,
        Mode::Series(order),
    ))
}

/// `[k-(alpha+k)x] F(alpha+k+1,1;k+2;x) + (1-x) F(alpha+k+1,2;k+2;x) = k+1`.
pub fn verify_three_term_special(alpha: &Rational, k: &Rational, order: usize) -> Result<IdentityReport> {
    let a = alpha + k + int(1);
    let c = k + int(2);
    let f1 = hg_series(&a, &int(1), &c, order)?;
    let f2 = hg_series(&a, &int(2), &c, order)?;
    let lhs = f1
        .mul_poly(&Polynomial::new(vec![k.clone(), -(alpha + k)]))
        .add(&f2.mul_poly(&Polynomial::from_ints(&[1, -1])));
    let rhs = TruncatedSeries::constant(k + int(1), order);
    let equal = lhs == rhs;
    Ok(IdentityReport::new(
        IdentityId::ThreeTermSpecial,
        &[("alpha", alpha.clone()), ("k", k.clone())],
        lhs.into(),
        rhs.into(),
        equal,
        Mode::Series(order),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrangeMode {
    /// `alpha + k + 1` is a non-positive integer; exact finite sum.
    Terminating,
    /// `|k/(alpha+k)| < 1`; rigorous enclosure.
    Convergent,
}

/// Checks membership in `{alpha != 0, alpha + k != 0, k not in {-2, -3, ...}}`.
fn check_strange_domain(alpha: &Rational, k: &Rational) -> Result<()> {
    if alpha.is_zero() {
        return Err(Error::domain("alpha = 0: the right side has a pole"));
    }
    if (alpha + k).is_zero() {
        return Err(Error::domain("alpha + k = 0"));
    }
    if k.is_integer() && *k <= int(-2) {
        return Err(Error::domain("k in {-2, -3, ...}"));
    }
    Ok(())
}

/// Which mode applies at `(alpha, k)`, if any. Outside both the value is
/// only reachable by analytic continuation, which is not implemented.
pub fn strange_mode(alpha: &Rational, k: &Rational) -> Option<StrangeMode> {
    check_strange_domain(alpha, k).ok()?;
    let a = alpha + k + int(1);
    if is_nonpositive_integer(&a) {
        return Some(StrangeMode::Terminating);
    }
    let x = k / (alpha + k);
    (x.abs() < Rational::one()).then_some(StrangeMode::Convergent)
}

/// `2F1(alpha+k+1, 2; k+2; k/(alpha+k)) = (alpha+k)(k+1)/alpha`.
pub fn verify_strange_evaluation(
    alpha: &Rational,
    k: &Rational,
    mode: StrangeMode,
    eps: &Rational,
) -> Result<IdentityReport> {
    check_strange_domain(alpha, k)?;
    let x = k / (alpha + k);
    let params = HGParams::new(alpha + k + int(1), int(2), k + int(2), x);
    let rhs = (alpha + k) * (k + int(1)) / alpha;
    let class = classify(&params.a, &params.b, &params.c);
    let (lhs, report_mode) = match mode {
        StrangeMode::Terminating => {
            if nonpositive_integer_magnitude(&params.a).is_none() {
                return Err(Error::domain("terminating mode needs alpha + k + 1 in {0, -1, ...}"));
            }
            (Side::Exact(eval_terminating(&params)?), Mode::Exact)
        }
        StrangeMode::Convergent => {
            if class != Classification::NonTerminating {
                return Err(Error::domain(format!(
                    "convergent mode needs a non-terminating series, found {class}"
                )));
            }
            (Side::from(eval_convergent(&params, eps)?), Mode::Enclosure)
        }
    };
    let equal = match &lhs {
        Side::Exact(v) => *v == rhs,
        Side::Enclosure { lo, hi } => *lo <= rhs && rhs <= *hi,
        _ => false,
    };
    Ok(IdentityReport::new(
        IdentityId::StrangeEvaluation,
        &[("alpha", alpha.clone()), ("k", k.clone())],
        lhs,
        Side::Exact(rhs),
        equal,
        report_mode,
    ))
}

/// Assembles the closed form from its derivation.
///
/// 1. the series split at `gamma = -k` holds to `order`;
/// 2. the linear factor `alpha x - gamma x + gamma` of the contiguous closed
///    form vanishes at `gamma = -k, x = k/(alpha+k)`;
/// 3. where reachable without continuation, the strange evaluation holds at
///    `(alpha, k)`;
/// 4. the tail coefficient times that evaluation equals the terminating sum,
///    and equals the product `(alpha+1)_k/k! x^k`.
///
/// The report's sides are the terminating sum and the assembled tail value.
pub fn verify_proof_chain(alpha: &Rational, k: u64, order: usize, eps: &Rational) -> Result<IdentityReport> {
    if alpha.is_zero() {
        return Err(Error::domain(
            "alpha = 0 is outside the derivation (the identity is trivial there)",
        ));
    }
    let kr = ki(k);
    let x = evaluation_point(alpha, &kr)?;
    let split = verify_limit_split(alpha, k, order)?;

    let gamma = -kr.clone();
    let vanishing = (alpha * &x - &gamma * &x + &gamma).is_zero();

    let strange_ok = match strange_mode(alpha, &kr) {
        Some(mode) => verify_strange_evaluation(alpha, &kr, mode, eps)?.equal,
        None => true,
    };

    let strange_value = (alpha + &kr) * (&kr + int(1)) / alpha;
    let coef = pochhammer(alpha, k + 1) / (&kr * factorial(k + 1));
    let tail = coef * rational_pow(&x, k as i64 + 1)? * strange_value;
    let head = closed_form_lhs(alpha, k)?;
    let product = closed_form_rhs(alpha, k)?;

    let equal = split.equal && vanishing && strange_ok && head == tail && tail == product;
    Ok(IdentityReport::new(
        IdentityId::ProofChain,
        &[("alpha", alpha.clone()), ("k", kr)],
        Side::Exact(head),
        Side::Exact(tail),
        equal,
        Mode::Exact,
    ))
}
