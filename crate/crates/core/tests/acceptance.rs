//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use hyperexact::gosper::{
    closed_antidifference, definite_sum_via_certificate, family_summand, family_term, gosper_summable, GosperVerdict,
};
use hyperexact::hyper::{classify, evaluate, Classification, HGParams};
use hyperexact::identities::{
    case1_rhs, case2_rhs, instances, verify_all, verify_case1, verify_case2, verify_closed_form,
    verify_strange_evaluation, verify_three_term, verify_three_term_special, Case1Branch, Case2Branch, IdentityId,
    IdentityReport, Side, StrangeMode, SuiteConfig,
};
use hyperexact::poly::interpolate;
use hyperexact::rational::{factorial, frac, int, is_nonpositive_integer, pochhammer, rational_pow, Rational};
use hyperexact::{Error, Polynomial};

const SEED: u64 = 0;
const SERIES_ORDER: usize = 64;
const SERIES_DRAWS: usize = 100;
const GOSPER_DRAWS: usize = 200;
const TELESCOPE_SPAN: i64 = 50;
const ILL_DEFINED_DRAWS: usize = 100;
const CASE_BUDGET: Duration = Duration::from_secs(1);
const GRID_BUDGET: Duration = Duration::from_secs(30);
const STRANGE_BUDGET: Duration = Duration::from_secs(10);

fn enclosure_eps() -> Rational {
    rational_pow(&int(10), -30).unwrap()
}

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, budget: Duration) -> (bool, String) {
    (
        elapsed < budget,
        format!("{:.3} s of {:.0} s", elapsed.as_secs_f64(), budget.as_secs_f64()),
    )
}

fn show(values: &[Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn failing(reports: &[IdentityReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.equal)
        .take(3)
        .map(IdentityReport::to_text_line)
        .collect()
}

fn cubic_rows() -> Verdict {
    let start = Instant::now();
    let reports: Vec<IdentityReport> = (0..=10).flat_map(verify_case1).collect();
    let (fast, timing) = within(start.elapsed(), CASE_BUDGET);
    let passed = reports.iter().filter(|r| r.equal).count();
    let at_zero: Vec<Rational> = Case1Branch::ALL.iter().map(|&b| case1_rhs(b, 0)).collect();
    let lhs_at_zero: Vec<Option<&Rational>> = reports[..3].iter().map(|r| r.lhs.exact()).collect();
    let expected = [int(0), int(1), frac(1, 2)];
    let values_ok = at_zero == expected && lhs_at_zero == expected.iter().map(Some).collect::<Vec<_>>();
    check(
        passed == 33 && reports.len() == 33 && values_ok && fast,
        format!(
            "{passed}/{} equal, m = 0 values [{}], {timing} {:?}",
            reports.len(),
            show(&at_zero),
            failing(&reports)
        ),
    )
}

fn quartic_rows() -> Verdict {
    let start = Instant::now();
    let reports: Vec<IdentityReport> = (0..=10).flat_map(verify_case2).collect();
    let (fast, timing) = within(start.elapsed(), CASE_BUDGET);
    let passed = reports.iter().filter(|r| r.equal).count();
    let at_zero: Vec<Rational> = Case2Branch::ALL.iter().map(|&b| case2_rhs(b, 0)).collect();
    let lhs_at_zero: Vec<Option<&Rational>> = reports[..4].iter().map(|r| r.lhs.exact()).collect();
    let expected = [int(0), int(1), frac(2, 3), frac(5, 18)];
    let values_ok = at_zero == expected && lhs_at_zero == expected.iter().map(Some).collect::<Vec<_>>();
    check(
        passed == 44 && reports.len() == 44 && values_ok && fast,
        format!(
            "{passed}/{} equal, m = 0 values [{}], {timing} {:?}",
            reports.len(),
            show(&at_zero),
            failing(&reports)
        ),
    )
}

fn parameter_grid() -> Verdict {
    let cfg = SuiteConfig {
        identities: vec![IdentityId::ClosedForm],
        seed: SEED,
        ..SuiteConfig::default()
    };
    let start = Instant::now();
    let reports = verify_all(&cfg);
    let (fast, timing) = within(start.elapsed(), GRID_BUDGET);
    let passed = reports.iter().filter(|r| r.equal).count();
    // 21 numerators x 6 denominators x 12 values of k, minus the pairs with alpha + k = 0.
    let excluded = (1..=6i64)
        .flat_map(|q| (-10..=10i64).map(move |p| (p, q)))
        .flat_map(|(p, q)| (1..=12i64).map(move |k| p + k * q == 0))
        .filter(|&hit| hit)
        .count();
    let expected_len = 21 * 6 * 12 - excluded;
    check(
        passed == reports.len() && reports.len() == expected_len && fast,
        format!(
            "{passed}/{} equal ({excluded} excluded pairs), {timing} {:?}",
            reports.len(),
            failing(&reports)
        ),
    )
}

fn same_values(a: &IdentityReport, b: &IdentityReport) -> bool {
    let text = |s: &Side| match s {
        Side::Exact(v) => Some(v.to_string()),
        _ => None,
    };
    text(&a.lhs).is_some() && text(&a.lhs) == text(&b.lhs) && text(&a.rhs) == text(&b.rhs)
}

fn subsumption() -> Verdict {
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for m in 0..=10u64 {
        for (report, branch) in verify_case1(m).iter().zip(Case1Branch::ALL) {
            let general = verify_closed_form(&branch.a(m), branch.k(m)).unwrap();
            compared += 1;
            if !same_values(report, &general) {
                mismatches.push(format!("case1 {branch:?} m={m}"));
            }
        }
        for (report, branch) in verify_case2(m).iter().zip(Case2Branch::ALL) {
            let general = verify_closed_form(&branch.a(m), branch.k(m)).unwrap();
            compared += 1;
            if !same_values(report, &general) {
                mismatches.push(format!("case2 {branch:?} m={m}"));
            }
        }
    }
    check(
        mismatches.is_empty() && compared == 77,
        format!("{compared} instances compared as text, mismatches {mismatches:?}"),
    )
}

fn gosper_instance(alpha: &Rational, k: u64) -> Result<(), String> {
    let term = family_term(alpha, k).map_err(|e| e.to_string())?;
    let GosperVerdict::Summable(cert) = gosper_summable(&term).map_err(|e| e.to_string())? else {
        return Err("no certificate".into());
    };
    cert.verify_symbolic().map_err(|e| e.to_string())?;
    let t = |n: i64| (n >= 0).then(|| family_summand(alpha, k, n as u64).ok()).flatten();
    let f = |n: i64| cert.antidifference(n, t).ok_or_else(|| format!("f({n}) undefined"));
    let shift = f(0)? - closed_antidifference(alpha, k, 0).unwrap();
    for n in 0..=TELESCOPE_SPAN {
        let (fn0, fn1) = (f(n)?, f(n + 1)?);
        if &fn1 - &fn0 != t(n).unwrap() {
            return Err(format!("telescoping fails at n = {n}"));
        }
        if fn0 - closed_antidifference(alpha, k, n as u64).unwrap() != shift {
            return Err(format!("anti-difference drifts from the closed form at n = {n}"));
        }
    }
    let sum = definite_sum_via_certificate(&term, 0, k - 1).map_err(|e| e.to_string())?;
    let rhs = pochhammer(&(alpha + int(1)), k) / factorial(k)
        * rational_pow(&(int(k as i64) / (alpha + int(k as i64))), k as i64).unwrap();
    if sum != rhs {
        return Err(format!("definite sum {sum} != {rhs}"));
    }
    Ok(())
}

fn gosper_engine() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    for _ in 0..GOSPER_DRAWS {
        let (alpha, k) = loop {
            let alpha = frac(rng.gen_range(-30..=30), rng.gen_range(1..=8));
            let k = rng.gen_range(1..=12u64);
            // Non-positive integer alpha makes the term vanish past n = -alpha,
            // so no f = R t exists there.
            if !is_nonpositive_integer(&alpha) && !(&alpha + int(k as i64)).is_zero() {
                break (alpha, k);
            }
        };
        if let Err(e) = gosper_instance(&alpha, k) {
            failures.push(format!("alpha={alpha} k={k}: {e}"));
        }
    }
    check(
        failures.is_empty(),
        format!(
            "{}/{GOSPER_DRAWS} instances certified {:?}",
            GOSPER_DRAWS - failures.len(),
            &failures[..failures.len().min(3)]
        ),
    )
}

fn series_chain() -> Verdict {
    let ids = [
        IdentityId::ContiguousSeries,
        IdentityId::LimitSplit,
        IdentityId::ThreeTerm,
        IdentityId::ThreeTermSpecial,
    ];
    let cfg = SuiteConfig {
        draws: SERIES_DRAWS,
        order: SERIES_ORDER,
        seed: SEED,
        ..SuiteConfig::default()
    };
    let mut detail = Vec::new();
    let mut pass = true;
    for id in ids {
        let reports = verify_all(&SuiteConfig {
            identities: vec![id],
            ..cfg.clone()
        });
        let passed = reports
            .iter()
            .filter(|r| r.equal && r.mode == hyperexact::identities::Mode::Series(SERIES_ORDER))
            .count();
        pass &= passed == SERIES_DRAWS && reports.len() == SERIES_DRAWS;
        detail.push(format!("{id} {passed}/{}", reports.len()));
    }

    // The constant coefficient of the three-term combination is affine in
    // (b, c); vanishing at three affinely independent points makes it zero.
    let a = frac(7, 5);
    let affine_zero = [(0, 0), (1, 0), (0, 1)]
        .iter()
        .all(|&(b, c)| verify_three_term(&a, &int(b), &int(c), 0).is_ok_and(|r| r.equal));
    // The constant coefficient of the specialized relation, as a polynomial
    // in k, is k + 1. It has degree at most 1, so three samples determine it.
    let alpha = frac(-2, 7);
    let samples: Option<Vec<(Rational, Rational)>> = (1..=3)
        .map(|k| {
            let r = verify_three_term_special(&alpha, &int(k), 0).ok()?;
            let Side::Series(c) = r.lhs else { return None };
            Some((int(k), c[0].clone()))
        })
        .collect();
    let constant_term = samples.map(|s| interpolate(&s));
    let k_plus_one = Polynomial::from_ints(&[1, 1]);
    let symbolic = affine_zero && constant_term.as_ref() == Some(&k_plus_one);
    detail.push(format!(
        "order-0 (c-2b)+b-(c-b) = 0: {affine_zero}; constant term = {}",
        constant_term.map_or("-".into(), |p| p.to_string())
    ));
    check(pass && symbolic, detail.join(", "))
}

fn strange_evaluation() -> Verdict {
    let start = Instant::now();
    let eps = enclosure_eps();
    let mut terminating = 0;
    let mut bad = Vec::new();
    for k in 1..=8i64 {
        for m in 0..=8i64 {
            let alpha = int(-k - 1 - m);
            match verify_strange_evaluation(&alpha, &int(k), StrangeMode::Terminating, &eps) {
                Ok(r) if r.equal && r.lhs.exact().is_some() => terminating += 1,
                other => bad.push(format!("k={k} m={m}: {other:?}")),
            }
        }
    }
    // Two-term oracle: 1 + (-1)(2)/(3 * 1!) * (-1/2).
    let oracle = int(1) + int(-1) * int(2) / int(3) * frac(-1, 2);
    let spot = verify_strange_evaluation(&int(-3), &int(1), StrangeMode::Terminating, &eps)
        .is_ok_and(|r| r.lhs == Side::Exact(oracle.clone()) && oracle == frac(4, 3) && r.equal);

    let convergent = evaluate(&HGParams::new(int(12), int(2), int(3), frac(1, 11)), &eps)
        .is_ok_and(|v| v.width() <= eps && v.contains(&frac(11, 5)));
    let drawn = verify_all(&SuiteConfig {
        identities: vec![IdentityId::StrangeEvaluation],
        seed: SEED,
        ..SuiteConfig::default()
    });
    let drawn_ok = drawn.iter().all(|r| r.equal);
    let (fast, timing) = within(start.elapsed(), STRANGE_BUDGET);
    check(
        terminating == 72 && bad.is_empty() && spot && convergent && drawn_ok && fast,
        format!(
            "terminating {terminating}/72, spot 4/3: {spot}, enclosure of 2F1(12,2;3;1/11) contains 11/5 at width <= 1e-30: {convergent}, suite {}/{} {timing} {bad:?}",
            drawn.iter().filter(|r| r.equal).count(),
            drawn.len()
        ),
    )
}

fn ill_definedness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x9e37_79b9);
    let eps = enclosure_eps();
    let mut wrong = Vec::new();
    let mut drawn = 0;
    while drawn < ILL_DEFINED_DRAWS {
        let mut r = || frac(rng.gen_range(-40..=40), rng.gen_range(1..=9));
        let (a, b, c) = (r(), r(), r());
        if classify(&a, &b, &c) != Classification::NonTerminating {
            continue;
        }
        let x = loop {
            let x = frac(rng.gen_range(-60..=60), rng.gen_range(1..=20));
            if x.abs() >= Rational::one() {
                break x;
            }
        };
        drawn += 1;
        match evaluate(&HGParams::new(a.clone(), b.clone(), c.clone(), x.clone()), &eps) {
            Err(Error::IllDefined(_)) => {}
            other => wrong.push(format!("({a}, {b}; {c}; {x}) -> {other:?}")),
        }
    }
    check(
        wrong.is_empty(),
        format!("{}/{drawn} rejected {wrong:?}", drawn - wrong.len()),
    )
}

fn digest(reports: &[IdentityReport]) -> String {
    let mut h = Sha256::new();
    for r in reports {
        h.update(r.to_json_line());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn determinism() -> Verdict {
    let cfg = SuiteConfig {
        seed: SEED,
        ..SuiteConfig::default()
    };
    let first = verify_all(&cfg);
    let second = verify_all(&cfg);
    let instances_match = instances(&cfg) == instances(&cfg);
    let (h1, h2) = (digest(&first), digest(&second));
    let all_equal = first.iter().all(|r| r.equal);
    check(
        h1 == h2 && instances_match && !first.is_empty(),
        format!("{} records, sha256 {h1} / {h2}, all equal: {all_equal}", first.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("cubic tabulated rows, m = 0..10", cubic_rows),
        ("quartic tabulated rows, m = 0..10", quartic_rows),
        ("closed form on the rational alpha grid", parameter_grid),
        ("tabulated rows agree with the general closed form", subsumption),
        ("Gosper certificates on seeded family terms", gosper_engine),
        ("series relations at order 64", series_chain),
        ("strange evaluation, terminating and convergent", strange_evaluation),
        ("ill-defined outside the unit disk", ill_definedness),
        ("seeded batch output is reproducible", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let status = if v.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!v.pass);
        println!(
            "{status} [{}] {name}: {} ({:.2} s)",
            i + 1,
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
