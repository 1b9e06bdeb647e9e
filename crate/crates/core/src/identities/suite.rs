//! Seeded batch verification over parameter grids and random draws.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::identities::report::{IdentityId, IdentityReport, Mode};
use crate::identities::verify::*;
use crate::rational::{frac, int, is_nonpositive_integer, rational_pow, Rational};

/// Grids, orders and draw counts for a batch run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Identities to run, in output order.
    pub identities: Vec<IdentityId>,
    pub k_max: u64,
    /// `alpha = p/q` with `1 <= q <= alpha_q_max`, `|p| <= alpha_p_max`.
    pub alpha_q_max: i64,
    pub alpha_p_max: i64,
    /// Pins `alpha` for the single-instance identities.
    pub alpha: Option<Rational>,
    /// Pins `k` for the single-instance identities.
    pub k: Option<u64>,
    pub m_max: u64,
    pub family_q_max: u64,
    pub family_m_max: u64,
    pub family_q: Option<u64>,
    pub family_j: Option<u64>,
    pub order: usize,
    pub eps: Rational,
    pub seed: u64,
    pub draws: usize,
    pub strange_k_max: u64,
    pub strange_m_max: u64,
    pub convergent_draws: usize,
    pub proof_chain_k_max: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            identities: IdentityId::ALL.to_vec(),
            k_max: 12,
            alpha_q_max: 6,
            alpha_p_max: 10,
            alpha: None,
            k: None,
            m_max: 10,
            family_q_max: 6,
            family_m_max: 3,
            family_q: None,
            family_j: None,
            order: crate::series::DEFAULT_ORDER,
            eps: rational_pow(&int(10), -30).expect("nonzero base"),
            seed: 0,
            draws: 100,
            strange_k_max: 8,
            strange_m_max: 8,
            convergent_draws: 50,
            proof_chain_k_max: 6,
        }
    }
}

/// A single verification task.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    ClosedForm {
        alpha: Rational,
        k: u64,
    },
    Case1 {
        branch: Case1Branch,
        m: u64,
    },
    Case2 {
        branch: Case2Branch,
        m: u64,
    },
    Family {
        q: u64,
        j: u64,
        m: u64,
    },
    ContiguousSeries {
        alpha: Rational,
        gamma: Rational,
    },
    ContiguousPointwise {
        alpha: i64,
        gamma: Rational,
        x: Rational,
    },
    LimitSplit {
        alpha: Rational,
        k: u64,
    },
    ThreeTerm {
        a: Rational,
        b: Rational,
        c: Rational,
    },
    ThreeTermSpecial {
        alpha: Rational,
        k: Rational,
    },
    Strange {
        alpha: Rational,
        k: Rational,
        mode: StrangeMode,
    },
    ProofChain {
        alpha: Rational,
        k: u64,
    },
}

impl Instance {
    pub fn identity(&self) -> IdentityId {
        match self {
            Instance::ClosedForm { .. } => IdentityId::ClosedForm,
            Instance::Case1 { .. } => IdentityId::Case1,
            Instance::Case2 { .. } => IdentityId::Case2,
            Instance::Family { .. } => IdentityId::Family,
            Instance::ContiguousSeries { .. } => IdentityId::ContiguousSeries,
            Instance::ContiguousPointwise { .. } => IdentityId::ContiguousPointwise,
            Instance::LimitSplit { .. } => IdentityId::LimitSplit,
            Instance::ThreeTerm { .. } => IdentityId::ThreeTerm,
            Instance::ThreeTermSpecial { .. } => IdentityId::ThreeTermSpecial,
            Instance::Strange { .. } => IdentityId::StrangeEvaluation,
            Instance::ProofChain { .. } => IdentityId::ProofChain,
        }
    }

    fn params(&self) -> Vec<(&'static str, Rational)> {
        let u = |v: u64| int(v as i64);
        match self {
            Instance::ClosedForm { alpha, k }
            | Instance::LimitSplit { alpha, k }
            | Instance::ProofChain { alpha, k } => {
                vec![("alpha", alpha.clone()), ("k", u(*k))]
            }
            Instance::Case1 { branch, m } => vec![("a", branch.a(*m)), ("m", u(*m))],
            Instance::Case2 { branch, m } => vec![("a", branch.a(*m)), ("m", u(*m))],
            Instance::Family { q, j, m } => vec![("q", u(*q)), ("j", u(*j)), ("m", u(*m))],
            Instance::ContiguousSeries { alpha, gamma } => vec![("alpha", alpha.clone()), ("gamma", gamma.clone())],
            Instance::ContiguousPointwise { alpha, gamma, x } => {
                vec![("alpha", int(*alpha)), ("gamma", gamma.clone()), ("x", x.clone())]
            }
            Instance::ThreeTerm { a, b, c } => vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone())],
            Instance::ThreeTermSpecial { alpha, k } | Instance::Strange { alpha, k, .. } => {
                vec![("alpha", alpha.clone()), ("k", k.clone())]
            }
        }
    }

    fn mode(&self, cfg: &SuiteConfig) -> Mode {
        match self {
            Instance::ContiguousSeries { .. }
            | Instance::LimitSplit { .. }
            | Instance::ThreeTerm { .. }
            | Instance::ThreeTermSpecial { .. } => Mode::Series(cfg.order),
            Instance::Strange {
                mode: StrangeMode::Convergent,
                ..
            } => Mode::Enclosure,
            _ => Mode::Exact,
        }
    }

    fn try_run(&self, cfg: &SuiteConfig) -> Result<IdentityReport> {
        match self {
            Instance::ClosedForm { alpha, k } => verify_closed_form(alpha, *k),
            Instance::Case1 { branch, m } => Ok(verify_case1_row(*branch, *m)),
            Instance::Case2 { branch, m } => Ok(verify_case2_row(*branch, *m)),
            Instance::Family { q, j, m } => family_instance(*q, *j, *m),
            Instance::ContiguousSeries { alpha, gamma } => verify_contiguous_series(alpha, gamma, cfg.order),
            Instance::ContiguousPointwise { alpha, gamma, x } => verify_contiguous_pointwise(*alpha, gamma, x),
            Instance::LimitSplit { alpha, k } => verify_limit_split(alpha, *k, cfg.order),
            Instance::ThreeTerm { a, b, c } => verify_three_term(a, b, c, cfg.order),
            Instance::ThreeTermSpecial { alpha, k } => verify_three_term_special(alpha, k, cfg.order),
            Instance::Strange { alpha, k, mode } => verify_strange_evaluation(alpha, k, *mode, &cfg.eps),
            Instance::ProofChain { alpha, k } => verify_proof_chain(alpha, *k, cfg.order, &cfg.eps),
        }
    }

    /// Runs the instance; evaluation errors become failed reports.
    pub fn run(&self, cfg: &SuiteConfig) -> IdentityReport {
        self.try_run(cfg).unwrap_or_else(|e| {
            let params = self.params();
            IdentityReport::failed(self.identity(), &params, self.mode(cfg), &e)
        })
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-30..=30), rng.gen_range(1..=8))
}

/// Draws until `accept` holds. Every acceptance region used here has
/// positive density, so the loop ends.
fn draw_until(rng: &mut ChaCha8Rng, accept: impl Fn(&Rational) -> bool) -> Rational {
    loop {
        let r = random_rational(rng);
        if accept(&r) {
            return r;
        }
    }
}

/// Independent stream per identity, so selecting a subset never shifts the
/// draws of the others.
fn rng_for(cfg: &SuiteConfig, id: IdentityId) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(id as u64 + 1);
    rng
}

/// Every pair `p/q` in the grid. Equal values from different pairs repeat.
pub fn alpha_grid(q_max: i64, p_max: i64) -> Vec<Rational> {
    (1..=q_max)
        .flat_map(|q| (-p_max..=p_max).map(move |p| frac(p, q)))
        .collect()
}

fn ks(cfg: &SuiteConfig, max: u64) -> Vec<u64> {
    cfg.k.map_or_else(|| (1..=max).collect(), |k| vec![k])
}

fn alphas(cfg: &SuiteConfig) -> Vec<Rational> {
    cfg.alpha
        .clone()
        .map_or_else(|| alpha_grid(cfg.alpha_q_max, cfg.alpha_p_max), |a| vec![a])
}

/// Instances of one identity, in grid order.
pub fn instances_for(id: IdentityId, cfg: &SuiteConfig) -> Vec<Instance> {
    let mut rng = rng_for(cfg, id);
    let pinned = cfg.alpha.is_some() || cfg.k.is_some();
    match id {
        IdentityId::ClosedForm => {
            let ks = ks(cfg, cfg.k_max);
            alphas(cfg)
                .into_iter()
                .flat_map(|alpha| ks.iter().map(move |&k| (alpha.clone(), k)))
                .filter(|(alpha, k)| !(alpha + int(*k as i64)).is_zero())
                .map(|(alpha, k)| Instance::ClosedForm { alpha, k })
                .collect()
        }
        IdentityId::Case1 => (0..=cfg.m_max)
            .flat_map(|m| {
                Case1Branch::ALL
                    .into_iter()
                    .map(move |branch| Instance::Case1 { branch, m })
            })
            .collect(),
        IdentityId::Case2 => (0..=cfg.m_max)
            .flat_map(|m| {
                Case2Branch::ALL
                    .into_iter()
                    .map(move |branch| Instance::Case2 { branch, m })
            })
            .collect(),
        IdentityId::Family => {
            let qs: Vec<u64> = cfg
                .family_q
                .map_or_else(|| (2..=cfg.family_q_max).collect(), |q| vec![q]);
            let mut out = Vec::new();
            for q in qs {
                let js: Vec<u64> = cfg.family_j.map_or_else(|| (1..=q).collect(), |j| vec![j]);
                for j in js {
                    for m in 0..=cfg.family_m_max {
                        out.push(Instance::Family { q, j, m });
                    }
                }
            }
            out
        }
        IdentityId::ContiguousSeries => (0..cfg.draws)
            .map(|_| {
                let alpha = random_rational(&mut rng);
                let gamma = draw_until(&mut rng, |g| !g.is_zero());
                Instance::ContiguousSeries { alpha, gamma }
            })
            .collect(),
        IdentityId::ContiguousPointwise => (0..cfg.draws)
            .map(|_| {
                let alpha = rng.gen_range(-6..=0i64);
                let gamma = draw_until(&mut rng, |g| !g.is_zero() && !is_nonpositive_integer(g));
                let x = draw_until(&mut rng, |x| !x.is_one());
                Instance::ContiguousPointwise { alpha, gamma, x }
            })
            .collect(),
        IdentityId::LimitSplit => {
            if pinned {
                let alpha = cfg.alpha.clone().unwrap_or_else(Rational::one);
                return ks(cfg, 1)
                    .into_iter()
                    .map(|k| Instance::LimitSplit {
                        alpha: alpha.clone(),
                        k,
                    })
                    .collect();
            }
            let k_cap = cfg.k_max.min(cfg.order.saturating_sub(2) as u64).max(1);
            (0..cfg.draws)
                .map(|_| {
                    let alpha = random_rational(&mut rng);
                    let k = rng.gen_range(1..=k_cap);
                    Instance::LimitSplit { alpha, k }
                })
                .collect()
        }
        IdentityId::ThreeTerm => {
            let order = cfg.order as i64;
            (0..cfg.draws)
                .map(|_| {
                    let a = random_rational(&mut rng);
                    let b = random_rational(&mut rng);
                    let c = draw_until(&mut rng, |c| {
                        !(is_nonpositive_integer(c) && c.to_integer() > (-order).into())
                    });
                    Instance::ThreeTerm { a, b, c }
                })
                .collect()
        }
        IdentityId::ThreeTermSpecial => {
            if pinned {
                let alpha = cfg.alpha.clone().unwrap_or_else(Rational::one);
                return ks(cfg, 1)
                    .into_iter()
                    .map(|k| Instance::ThreeTermSpecial {
                        alpha: alpha.clone(),
                        k: int(k as i64),
                    })
                    .collect();
            }
            (0..cfg.draws)
                .map(|_| {
                    let alpha = random_rational(&mut rng);
                    let k = int(rng.gen_range(1..=cfg.k_max.max(1)) as i64);
                    Instance::ThreeTermSpecial { alpha, k }
                })
                .collect()
        }
        IdentityId::StrangeEvaluation => strange_instances(cfg, &mut rng),
        IdentityId::ProofChain => {
            if pinned {
                let alpha = cfg.alpha.clone().unwrap_or_else(Rational::one);
                return ks(cfg, 1)
                    .into_iter()
                    .map(|k| Instance::ProofChain {
                        alpha: alpha.clone(),
                        k,
                    })
                    .collect();
            }
            // Grid points with 3/4 < |x| < 1 are left out: their enclosures
            // need thousands of terms and add no coverage.
            let slow = frac(3, 4);
            let mut out = Vec::new();
            for alpha in alpha_grid(3, 6) {
                for k in 1..=cfg.proof_chain_k_max {
                    let kr = int(k as i64);
                    let denom = &alpha + &kr;
                    if alpha.is_zero() || denom.is_zero() || cfg.order < k as usize + 2 {
                        continue;
                    }
                    let x = (&kr / denom).abs();
                    let near_edge = strange_mode(&alpha, &kr) == Some(StrangeMode::Convergent) && x > slow;
                    if !near_edge {
                        out.push(Instance::ProofChain {
                            alpha: alpha.clone(),
                            k,
                        });
                    }
                }
            }
            out
        }
    }
}

fn strange_instances(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Vec<Instance> {
    if cfg.alpha.is_some() || cfg.k.is_some() {
        let alpha = cfg.alpha.clone().unwrap_or_else(Rational::one);
        return ks(cfg, 1)
            .into_iter()
            .map(|k| {
                let k = int(k as i64);
                // Unreachable points still get a report: the verifier
                // rejects them with a domain error.
                let mode = strange_mode(&alpha, &k).unwrap_or(StrangeMode::Convergent);
                Instance::Strange {
                    alpha: alpha.clone(),
                    k,
                    mode,
                }
            })
            .collect();
    }
    let mut out = Vec::new();
    for k in 1..=cfg.strange_k_max {
        for m in 0..=cfg.strange_m_max {
            let alpha = int(-(k as i64) - 1 - m as i64);
            out.push(Instance::Strange {
                alpha,
                k: int(k as i64),
                mode: StrangeMode::Terminating,
            });
        }
    }
    let three_quarters = frac(3, 4);
    for _ in 0..cfg.convergent_draws {
        let k = int(rng.gen_range(1..=cfg.strange_k_max.max(1)) as i64);
        let alpha = draw_until(rng, |a| {
            strange_mode(a, &k) == Some(StrangeMode::Convergent) && (&k / (a + &k)).abs() <= three_quarters
        });
        out.push(Instance::Strange {
            alpha,
            k,
            mode: StrangeMode::Convergent,
        });
    }
    out
}

/// All instances for the configured identities, in output order.
pub fn instances(cfg: &SuiteConfig) -> Vec<Instance> {
    cfg.identities.iter().flat_map(|&id| instances_for(id, cfg)).collect()
}

/// Runs every instance. Evaluation may be concurrent; the output order is
/// the instance order regardless.
pub fn verify_all(cfg: &SuiteConfig) -> Vec<IdentityReport> {
    instances(cfg).par_iter().map(|inst| inst.run(cfg)).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
}

impl Summary {
    pub fn of(reports: &[IdentityReport]) -> Self {
        Summary {
            total: reports.len(),
            passed: reports.iter().filter(|r| r.equal).count(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn only(id: IdentityId) -> SuiteConfig {
        SuiteConfig {
            identities: vec![id],
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn empty_selection_is_empty() {
        let cfg = SuiteConfig {
            identities: vec![],
            ..SuiteConfig::default()
        };
        assert!(verify_all(&cfg).is_empty());
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(instances(&only(IdentityId::Case1)).len(), 33);
        assert_eq!(instances(&only(IdentityId::Case2)).len(), 44);
        assert_eq!(instances(&only(IdentityId::StrangeEvaluation)).len(), 72 + 50);
        let mut cfg = only(IdentityId::ClosedForm);
        cfg.alpha = Some(int(1));
        cfg.k = Some(2);
        assert_eq!(instances(&cfg), vec![Instance::ClosedForm { alpha: int(1), k: 2 }]);
    }

    #[test]
    fn draws_are_seeded() {
        let cfg = only(IdentityId::ThreeTerm);
        assert_eq!(instances(&cfg), instances(&cfg));
        let other = SuiteConfig { seed: 1, ..cfg.clone() };
        assert_ne!(instances(&cfg), instances(&other));
        // Selecting extra identities leaves each stream unchanged.
        let both = SuiteConfig {
            identities: vec![IdentityId::Case1, IdentityId::ThreeTerm],
            ..cfg.clone()
        };
        assert_eq!(instances(&both)[33..], instances(&cfg)[..]);
    }

    #[test]
    fn convergent_draws_stay_in_the_disk() {
        for inst in instances(&only(IdentityId::StrangeEvaluation)) {
            if let Instance::Strange {
                alpha,
                k,
                mode: StrangeMode::Convergent,
            } = inst
            {
                assert!((&k / (&alpha + &k)).abs() <= frac(3, 4));
            }
        }
    }

    #[test]
    fn failures_become_reports() {
        let cfg = SuiteConfig::default();
        let r = Instance::Strange {
            alpha: int(0),
            k: int(1),
            mode: StrangeMode::Convergent,
        }
        .run(&cfg);
        assert!(!r.equal);
        assert!(r.error.is_some());
        assert_eq!(r.mode, Mode::Enclosure);
    }

    #[test]
    fn small_suite_passes() {
        let cfg = SuiteConfig {
            k_max: 4,
            alpha_q_max: 2,
            alpha_p_max: 3,
            m_max: 2,
            family_q_max: 4,
            family_m_max: 1,
            order: 16,
            draws: 8,
            strange_k_max: 3,
            strange_m_max: 2,
            convergent_draws: 4,
            proof_chain_k_max: 3,
            ..SuiteConfig::default()
        };
        let reports = verify_all(&cfg);
        let failed: Vec<String> = reports.iter().filter(|r| !r.equal).map(|r| r.to_text_line()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
