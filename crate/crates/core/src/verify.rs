//! Randomized cross-checks between the geometric solvers and the oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::descartes::{descartes_construction, solve_descartes, solve_general_cubic};
use crate::khayyam::{
    chain_ratios, chain_spread, construction_plan, solve_plan, solve_points, ConstructionPlan,
    CurvePair, PairCode,
};
use crate::oracle::{positive_roots, solve_cubic_oracle, solve_quartic_oracle};
use crate::poly::{Cubic, Degree, DepressedForm, KhayyamForm, KhayyamType, Quartic};
use crate::report::{multiset_deviation, Root, RootReport};

/// Deviations at or above this fail verification.
pub const THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub n_per_type: usize,
    pub seed: u64,
    pub tol: f64,
    /// Perturbs every geometric root so that the harness must fail.
    pub inject_fault: bool,
}

impl VerifyConfig {
    pub fn new(n_per_type: usize, seed: u64, tol: f64) -> Self {
        Self {
            n_per_type,
            seed,
            tol,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeRow {
    pub type_id: u8,
    pub pair_code: PairCode,
    pub instances: usize,
    pub oracle: f64,
    pub pairs: f64,
    pub chain: f64,
    pub descartes: f64,
    /// Only types 16, 17 and 18 have a second decomposition.
    pub alternate: Option<f64>,
    pub class_failures: usize,
}

impl TypeRow {
    pub fn worst(&self) -> f64 {
        [
            self.oracle,
            self.pairs,
            self.chain,
            self.descartes,
            self.alternate.unwrap_or(0.0),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.worst() < THRESHOLD && self.class_failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub config: VerifyConfig,
    pub rows: Vec<TypeRow>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(TypeRow::passed)
    }

    pub fn worst(&self) -> f64 {
        self.rows.iter().map(TypeRow::worst).fold(0.0, f64::max)
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verify: n={} per type, seed={}, tol={:e}, threshold={:e}",
            c.n_per_type, c.seed, c.tol, THRESHOLD
        );
        let _ = writeln!(
            out,
            "{:>4}  {:<4}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}  {:>7}  status",
            "type", "pair", "oracle", "pairs", "chain", "descartes", "alternate", "classes"
        );
        for r in &self.rows {
            let alt = r
                .alternate
                .map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
            let classes = if r.class_failures == 0 {
                "ok".to_string()
            } else {
                r.class_failures.to_string()
            };
            let _ = writeln!(
                out,
                "{:>4}  {:<4}  {:>10.3e}  {:>10.3e}  {:>10.3e}  {:>10.3e}  {:>10}  {:>7}  {}",
                r.type_id,
                r.pair_code.as_str(),
                r.oracle,
                r.pairs,
                r.chain,
                r.descartes,
                alt,
                classes,
                if r.passed() { "pass" } else { "FAIL" }
            );
        }
        let total: usize = self.rows.iter().map(|r| r.instances).sum();
        let _ = writeln!(
            out,
            "max deviation {:.3e} over {} instances: {}",
            self.worst(),
            total,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary holds only plain data")
    }
}

fn log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.gen_range(-1.0..=1.0))
}

/// Random instances of one type with magnitudes log-uniform in `[0.1, 10]`.
pub fn random_forms(kind: KhayyamType, n: usize, seed: u64) -> Vec<KhayyamForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(kind.id()));
    (0..n)
        .map(|_| {
            let a = log_uniform(&mut rng);
            let b = log_uniform(&mut rng);
            let c = log_uniform(&mut rng);
            KhayyamForm::with_magnitudes(kind, a, b, c).expect("positive finite magnitudes")
        })
        .collect()
}

/// Whether every curve has its declared class and every hyperbola is
/// exactly rectangular.
pub fn audit_classes(plan: &ConstructionPlan) -> bool {
    plan.classes_match()
        && plan.curves.iter().all(|c| {
            let [a, _, cc, ..] = c.coefficients();
            !c.class().is_hyperbola() || a + cc == 0.0
        })
}

fn chain_deviation(plan: &ConstructionPlan, pair: CurvePair, tol: f64) -> f64 {
    solve_points(plan, pair, tol)
        .iter()
        .map(|p| chain_ratios(plan, p.x, p.y).map_or(f64::INFINITY, chain_spread))
        .fold(0.0, f64::max)
}

fn perturbed(report: &RootReport) -> Vec<Root> {
    report
        .roots
        .iter()
        .map(|r| Root {
            value: r.value * (1.0 + 1e-6),
            multiplicity: r.multiplicity,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default)]
struct Deviations {
    oracle: f64,
    pairs: f64,
    chain: f64,
    descartes: f64,
    alternate: f64,
    class_failure: bool,
}

fn check_instance(form: &KhayyamForm, config: &VerifyConfig) -> Deviations {
    let tol = config.tol;
    let cubic = form.to_general();
    let oracle = solve_cubic_oracle(&cubic);
    let want = positive_roots(&oracle, tol);

    let plan = construction_plan(form, false);
    let chosen = solve_plan(&plan, plan.chosen, tol);
    let chosen_roots = if config.inject_fault {
        perturbed(&chosen)
    } else {
        chosen.roots.clone()
    };

    let mut d = Deviations {
        oracle: multiset_deviation(&chosen_roots, &want.roots),
        ..Deviations::default()
    };
    for pair in CurvePair::ALL {
        let other = solve_plan(&plan, pair, tol);
        d.pairs = d.pairs.max(multiset_deviation(&other.roots, &chosen.roots));
        d.chain = d.chain.max(chain_deviation(&plan, pair, tol));
    }
    let descartes = solve_general_cubic(&cubic, tol);
    d.descartes = multiset_deviation(&descartes.roots, &oracle.roots);

    let mut audit = audit_classes(&plan);
    if matches!(
        form.kind(),
        KhayyamType::T16 | KhayyamType::T17 | KhayyamType::T18
    ) {
        let alt = construction_plan(form, true);
        audit &= audit_classes(&alt);
        let alt_report = solve_plan(&alt, alt.chosen, tol);
        d.alternate = multiset_deviation(&alt_report.roots, &chosen.roots);
    }
    d.class_failure = !audit;
    d
}

fn verify_type(kind: KhayyamType, config: &VerifyConfig) -> TypeRow {
    let forms = random_forms(kind, config.n_per_type, config.seed);
    let results: Vec<Deviations> = forms
        .par_iter()
        .map(|f| check_instance(f, config))
        .collect();
    let max = |sel: fn(&Deviations) -> f64| results.iter().map(sel).fold(0.0, f64::max);
    let has_alternate = matches!(kind, KhayyamType::T16 | KhayyamType::T17 | KhayyamType::T18);
    TypeRow {
        type_id: kind.id(),
        pair_code: PairCode::catalog(kind),
        instances: results.len(),
        oracle: max(|d| d.oracle),
        pairs: max(|d| d.pairs),
        chain: max(|d| d.chain),
        descartes: max(|d| d.descartes),
        alternate: has_alternate.then(|| max(|d| d.alternate)),
        class_failures: results.iter().filter(|d| d.class_failure).count(),
    }
}

/// Runs every check on `n_per_type` random instances of each type.
pub fn run_verification(config: &VerifyConfig) -> VerifySummary {
    let rows = KhayyamType::ALL
        .par_iter()
        .map(|&kind| verify_type(kind, config))
        .collect();
    VerifySummary {
        config: *config,
        rows,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescartesSweep {
    pub instances: usize,
    /// Largest deviation from the oracle's real roots.
    pub max_deviation: f64,
    /// Largest error of the circle's centre and squared radius against the
    /// closed formulas.
    pub max_circle_error: f64,
}

/// Depressed cubics (`degree = 3`) or quartics (`degree = 4`) with
/// `p, q, r` uniform in `[-10, 10]`, solved and compared with the oracle.
pub fn descartes_sweep(degree: u32, n: usize, seed: u64, tol: f64) -> DescartesSweep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(degree));
    let forms: Vec<DepressedForm> = (0..n)
        .map(|_| {
            let p = rng.gen_range(-10.0..=10.0);
            let q = rng.gen_range(-10.0..=10.0);
            let r = rng.gen_range(-10.0..=10.0);
            if degree == 3 {
                DepressedForm::cubic(p, q)
            } else {
                DepressedForm::quartic(p, q, r)
            }
        })
        .collect();
    let results: Vec<(f64, f64)> = forms
        .par_iter()
        .map(|form| {
            let oracle = match form.degree {
                Degree::Cubic => {
                    solve_cubic_oracle(&Cubic::new(1.0, 0.0, form.p, form.q).expect("monic"))
                }
                Degree::Quartic => solve_quartic_oracle(
                    &Quartic::new(1.0, 0.0, form.p, form.q, form.r).expect("monic"),
                ),
            };
            let got = solve_descartes(form, tol);
            let c = descartes_construction(form);
            let r = if degree == 3 { 0.0 } else { form.r };
            let want_sq = (form.p - 1.0).powi(2) / 4.0 + form.q * form.q / 4.0 - r;
            let circle = (c.circle_center.0 + form.q / 2.0)
                .abs()
                .max((c.circle_center.1 + (form.p - 1.0) / 2.0).abs())
                .max((c.radius_sq - want_sq).abs());
            (multiset_deviation(&got.roots, &oracle.roots), circle)
        })
        .collect();
    DescartesSweep {
        instances: n,
        max_deviation: results.iter().map(|r| r.0).fold(0.0, f64::max),
        max_circle_error: results.iter().map(|r| r.1).fold(0.0, f64::max),
    }
}
