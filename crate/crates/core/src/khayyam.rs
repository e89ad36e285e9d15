//! The fourteen conic constructions for positive cubic types.
//!
//! Each type is rewritten as a chain of mean proportionals
//!
//! ```text
//! s / x = N₁ / y = y / N₂
//! ```
//!
//! where `s` is a fixed segment and `N₁`, `N₂` are segments linear in `x`.
//! Eliminating `y` from the chain gives `s² N₂ = x² N₁`, which is the cubic.
//! Any two of the three equalities define a conic, so every type has three
//! candidate curves and three admissible pairs. The classical construction
//! always uses curves (1) and (2).

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::conics::{Conic, ConicClass};
use crate::error::{Error, Result};
use crate::intersect::{intersect_conics, Point2, DEFAULT_TOL};
use crate::poly::{KhayyamForm, KhayyamType};
use crate::report::{Method, Root, RootReport};

/// The segment `alpha + beta·x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearExpr {
    pub alpha: f64,
    pub beta: f64,
}

impl LinearExpr {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    pub fn x() -> Self {
        Self::new(0.0, 1.0)
    }

    pub fn constant(alpha: f64) -> Self {
        Self::new(alpha, 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.alpha + self.beta * x
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.alpha == 0.0, self.beta) {
            (true, b) if b == 1.0 => f.write_str("x"),
            (_, b) if b == 0.0 => write!(f, "{}", fmt_num(self.alpha)),
            (false, b) if self.alpha < 0.0 && b == 1.0 => write!(f, "x - {}", fmt_num(-self.alpha)),
            (false, b) if b == 1.0 => write!(f, "x + {}", fmt_num(self.alpha)),
            (false, b) if b == -1.0 => write!(f, "{} - x", fmt_num(self.alpha)),
            _ => write!(f, "{} + {}·x", fmt_num(self.alpha), fmt_num(self.beta)),
        }
    }
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Classes of the two curves used, as printed in the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairCode {
    Pp,
    Pc,
    Ph,
    Ch,
    Hh,
}

impl PairCode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Pp => "pp",
            Self::Pc => "pc",
            Self::Ph => "ph",
            Self::Ch => "ch",
            Self::Hh => "hh",
        }
    }

    /// Code recorded for each type in the classical catalog.
    pub fn catalog(kind: KhayyamType) -> Self {
        use KhayyamType::*;
        match kind {
            T3 => Self::Pp,
            T13 => Self::Pc,
            T14 | T15 | T16 | T17 | T18 => Self::Ph,
            T19 | T21 | T24 => Self::Ch,
            T20 | T22 | T23 | T25 => Self::Hh,
        }
    }

    /// Code for an unordered pair of classes, if it is one of the five.
    pub fn from_classes(a: ConicClass, b: ConicClass) -> Option<Self> {
        let mut letters = [a.letter(), b.letter()];
        letters.sort_by_key(|c| match c {
            'p' => 0,
            'c' => 1,
            _ => 2,
        });
        match letters {
            ['p', 'p'] => Some(Self::Pp),
            ['p', 'c'] => Some(Self::Pc),
            ['p', 'h'] => Some(Self::Ph),
            ['c', 'h'] => Some(Self::Ch),
            ['h', 'h'] => Some(Self::Hh),
            _ => None,
        }
    }
}

impl fmt::Display for PairCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which two of the three candidate curves to intersect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurvePair {
    OneTwo,
    OneThree,
    TwoThree,
}

impl CurvePair {
    pub const ALL: [CurvePair; 3] = [Self::OneTwo, Self::OneThree, Self::TwoThree];

    pub fn indices(self) -> (usize, usize) {
        match self {
            Self::OneTwo => (0, 1),
            Self::OneThree => (0, 2),
            Self::TwoThree => (1, 2),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::OneTwo => "12",
            Self::OneThree => "13",
            Self::TwoThree => "23",
        }
    }
}

impl std::str::FromStr for CurvePair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(Self::OneTwo),
            "13" => Ok(Self::OneThree),
            "23" => Ok(Self::TwoThree),
            other => Err(Error::Parse(format!("unknown curve pair `{other}`"))),
        }
    }
}

/// Everything needed to draw and solve one type's construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionPlan {
    pub form: KhayyamForm,
    pub scale_s: f64,
    pub n1: LinearExpr,
    pub n2: LinearExpr,
    /// Candidate curves (1), (2), (3).
    pub curves: [Conic; 3],
    /// Classes the construction assigns to the three curves.
    pub declared: [ConicClass; 3],
    pub chosen: CurvePair,
    pub pair_code: PairCode,
    pub alternate: bool,
}

impl ConstructionPlan {
    pub fn pair(&self, pair: CurvePair) -> (&Conic, &Conic) {
        let (i, j) = pair.indices();
        (&self.curves[i], &self.curves[j])
    }

    /// Whether every curve classifies to its declared class.
    pub fn classes_match(&self) -> bool {
        self.curves
            .iter()
            .zip(&self.declared)
            .all(|(c, d)| c.class() == *d)
    }
}

/// `x·y = s·N₂`, from `s/x = y/N₂`.
fn hyperbola_s_n2(s: f64, n2: LinearExpr) -> Result<Conic> {
    Conic::new(0.0, 1.0, 0.0, -s * n2.beta, 0.0, -s * n2.alpha)
}

/// `y² = N₁·N₂`, from `N₁/y = y/N₂`.
fn mean_proportional(n1: LinearExpr, n2: LinearExpr) -> Result<Conic> {
    Conic::new(
        -n1.beta * n2.beta,
        0.0,
        1.0,
        -(n1.alpha * n2.beta + n2.alpha * n1.beta),
        0.0,
        -n1.alpha * n2.alpha,
    )
}

/// `s·y = x·N₁`, from `s/x = N₁/y`.
fn parabola_s_n1(s: f64, n1: LinearExpr) -> Result<Conic> {
    Conic::new(n1.beta, 0.0, 0.0, n1.alpha, -s, 0.0)
}

/// Classes of curves (1), (2), (3) for a type.
pub fn declared_classes(kind: KhayyamType) -> [ConicClass; 3] {
    use ConicClass::{Circle, Parabola, RectangularHyperbola as Hyperbola};
    use KhayyamType::*;
    match kind {
        T3 => [Parabola, Parabola, Hyperbola],
        T13 => [Parabola, Circle, Hyperbola],
        T14 | T15 => [Parabola, Hyperbola, Hyperbola],
        T16 | T17 | T18 => [Hyperbola, Parabola, Parabola],
        T19 | T21 | T24 => [Hyperbola, Circle, Parabola],
        T20 | T22 | T23 | T25 => [Hyperbola, Hyperbola, Parabola],
    }
}

/// The chain `(s, N₁, N₂)` of a type written in its magnitudes.
pub fn chain_symbols(kind: KhayyamType) -> (&'static str, &'static str, &'static str) {
    use KhayyamType::*;
    match kind {
        T3 => ("1", "x", "c"),
        T13 => ("√b", "x", "c/b - x"),
        T14 => ("√b", "x", "x - c/b"),
        T15 => ("√b", "x", "x + c/b"),
        T16 => ("∛c", "x + a", "∛c"),
        T17 => ("∛c", "a - x", "∛c"),
        T18 => ("√(c/a)", "x - a", "a"),
        T19 => ("√b", "x + a", "c/b - x"),
        T20 => ("√b", "x + a", "x - c/b"),
        T21 => ("√b", "a - x", "x + c/b"),
        T22 => ("√b", "x - a", "x + c/b"),
        T23 => ("√b", "x + a", "x + c/b"),
        T24 => ("√b", "a - x", "x - c/b"),
        T25 => ("√b", "x - a", "x - c/b"),
    }
}

/// Builds the chain data and the three candidate conics for `form`.
///
/// `alternate_decomposition` only affects types 16, 17 and 18, which admit
/// two splittings of `c`: `c^(1/3) · c^(2/3)` or `(c/a) · a`. Types 16 and
/// 17 default to the first and type 18 to the second.
pub fn construction_plan(form: &KhayyamForm, alternate_decomposition: bool) -> ConstructionPlan {
    use KhayyamType::*;
    let kind = form.kind();
    let a = form.a().unwrap_or(0.0);
    let b = form.b().unwrap_or(0.0);
    let c = form.c();
    let h = if b > 0.0 { c / b } else { 0.0 };
    let root_b = b.sqrt();
    let cube_c = c.cbrt();
    let x_plus = |k: f64| LinearExpr::new(k, 1.0);
    let x_minus = |k: f64| LinearExpr::new(-k, 1.0);
    let minus_x = |k: f64| LinearExpr::new(k, -1.0);

    let cube_split = |n1| (cube_c, n1, LinearExpr::constant(cube_c));
    let ratio_split = |n1| ((c / a).sqrt(), n1, LinearExpr::constant(a));
    // Types 16/17 default to the cube-root split, type 18 to c = (c/a)·a.
    let (s, n1, n2) = match kind {
        T3 => (1.0, LinearExpr::x(), LinearExpr::constant(c)),
        T13 => (root_b, LinearExpr::x(), minus_x(h)),
        T14 => (root_b, LinearExpr::x(), x_minus(h)),
        T15 => (root_b, LinearExpr::x(), x_plus(h)),
        T16 if alternate_decomposition => ratio_split(x_plus(a)),
        T16 => cube_split(x_plus(a)),
        T17 if alternate_decomposition => ratio_split(minus_x(a)),
        T17 => cube_split(minus_x(a)),
        T18 if alternate_decomposition => cube_split(x_minus(a)),
        T18 => ratio_split(x_minus(a)),
        T19 => (root_b, x_plus(a), minus_x(h)),
        T20 => (root_b, x_plus(a), x_minus(h)),
        T21 => (root_b, minus_x(a), x_plus(h)),
        T22 => (root_b, x_minus(a), x_plus(h)),
        T23 => (root_b, x_plus(a), x_plus(h)),
        T24 => (root_b, minus_x(a), x_minus(h)),
        T25 => (root_b, x_minus(a), x_minus(h)),
    };

    // Curves are built from positive magnitudes, so none can be a line.
    let built = |r: Result<Conic>| r.expect("chain curves are second degree");
    let curves = if matches!(kind, T3 | T13 | T14 | T15) {
        // N₁ = x: (1) s/x = x/y, (2) x/y = y/N₂, (3) s/x = y/N₂.
        [
            built(parabola_s_n1(s, n1)),
            built(mean_proportional(n1, n2)),
            built(hyperbola_s_n2(s, n2)),
        ]
    } else {
        // (1) s/x = y/N₂, (2) N₁/y = y/N₂, (3) s/x = N₁/y.
        [
            built(hyperbola_s_n2(s, n2)),
            built(mean_proportional(n1, n2)),
            built(parabola_s_n1(s, n1)),
        ]
    };
    let declared = declared_classes(kind);

    ConstructionPlan {
        form: *form,
        scale_s: s,
        n1,
        n2,
        curves,
        declared,
        chosen: CurvePair::OneTwo,
        pair_code: PairCode::from_classes(declared[0], declared[1])
            .expect("chosen pair is one of the five codes"),
        alternate: alternate_decomposition && matches!(kind, T16 | T17 | T18),
    }
}

/// The three ratios of the chain at `(x, y)`: `s/x`, `N₁(x)/y`, `y/N₂(x)`.
pub fn chain_ratios(plan: &ConstructionPlan, x: f64, y: f64) -> Result<(f64, f64, f64)> {
    if x == 0.0 {
        return Err(Error::DivisionByZero("x"));
    }
    if y == 0.0 {
        return Err(Error::DivisionByZero("y"));
    }
    let n2 = plan.n2.eval(x);
    if n2 == 0.0 {
        return Err(Error::DivisionByZero("N₂(x)"));
    }
    Ok((plan.scale_s / x, plan.n1.eval(x) / y, y / n2))
}

/// Largest pairwise relative disagreement among the three chain ratios.
pub fn chain_spread(ratios: (f64, f64, f64)) -> f64 {
    let (r1, r2, r3) = ratios;
    let rel = |u: f64, v: f64| (u - v).abs() / u.abs().max(v.abs());
    rel(r1, r2).max(rel(r1, r3)).max(rel(r2, r3))
}

/// Admissible intersection points of a pair: `x > tol` and `x` a root of
/// the cubic within `tol` of its residual scale.
pub fn solve_points(plan: &ConstructionPlan, pair: CurvePair, tol: f64) -> Vec<Point2> {
    let (c1, c2) = plan.pair(pair);
    let cubic = plan.form.to_general();
    let magnitude = plan.form.magnitude_scale();
    let Ok(points) = intersect_conics(c1, c2, tol) else {
        return Vec::new();
    };
    let (i, j) = pair.indices();
    let forms = chain_forms(plan.form.kind());
    points
        .into_iter()
        .map(|p| polish_on_chain(plan, forms[i], forms[j], p))
        .filter(|p| p.x > tol)
        .filter(|p| cubic.eval(p.x).abs() <= tol * magnitude * p.x.max(1.0).powi(3))
        .collect()
}

/// One equality of the chain, kept in factored form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ChainForm {
    /// `s·y - x·N₁`
    FirstExtremes,
    /// `y² - N₁·N₂`
    MeanProportional,
    /// `x·y - s·N₂`
    OuterExtremes,
}

fn chain_forms(kind: KhayyamType) -> [ChainForm; 3] {
    use ChainForm::*;
    if matches!(
        kind,
        KhayyamType::T3 | KhayyamType::T13 | KhayyamType::T14 | KhayyamType::T15
    ) {
        [FirstExtremes, MeanProportional, OuterExtremes]
    } else {
        [OuterExtremes, MeanProportional, FirstExtremes]
    }
}

/// Value, gradient and size of the terms of a chain equality at `(x, y)`.
fn chain_eval(plan: &ConstructionPlan, form: ChainForm, x: f64, y: f64) -> (f64, f64, f64, f64) {
    let s = plan.scale_s;
    let (n1, n2) = (plan.n1.eval(x), plan.n2.eval(x));
    let (b1, b2) = (plan.n1.beta, plan.n2.beta);
    match form {
        ChainForm::FirstExtremes => (
            s * y - x * n1,
            -(n1 + x * b1),
            s,
            (s * y).abs() + (x * n1).abs(),
        ),
        ChainForm::MeanProportional => (
            y * y - n1 * n2,
            -(b1 * n2 + n1 * b2),
            2.0 * y,
            y * y + (n1 * n2).abs(),
        ),
        ChainForm::OuterExtremes => (
            x * y - s * n2,
            y - s * b2,
            x,
            (x * y).abs() + (s * n2).abs(),
        ),
    }
}

/// Newton steps on the two chain equalities of the pair.
///
/// The expanded conic coefficients carry rounding that the factored
/// segments do not; when two segments nearly cancel this matters for the
/// chain ratios. Only small moves at transversal crossings are accepted.
fn polish_on_chain(plan: &ConstructionPlan, f1: ChainForm, f2: ChainForm, p: Point2) -> Point2 {
    if p.multiplicity > 1 {
        return p;
    }
    let residual = |x: f64, y: f64| {
        let (v1, .., t1) = chain_eval(plan, f1, x, y);
        let (v2, .., t2) = chain_eval(plan, f2, x, y);
        (v1.abs() / t1.max(f64::MIN_POSITIVE)).max(v2.abs() / t2.max(f64::MIN_POSITIVE))
    };
    let (mut x, mut y) = (p.x, p.y);
    let mut best = residual(x, y);
    for _ in 0..8 {
        let (v1, g1x, g1y, _) = chain_eval(plan, f1, x, y);
        let (v2, g2x, g2y, _) = chain_eval(plan, f2, x, y);
        let det = g1x * g2y - g1y * g2x;
        let norm = g1x.hypot(g1y) * g2x.hypot(g2y);
        if !(det.abs() > 1e-8 * norm) {
            break;
        }
        let nx = x - (g2y * v1 - g1y * v2) / det;
        let ny = y - (g1x * v2 - g2x * v1) / det;
        let r = residual(nx, ny);
        if !(r < best) {
            break;
        }
        (x, y, best) = (nx, ny, r);
    }
    let moved = (x - p.x).abs().max((y - p.y).abs());
    if moved <= 1e-6 * p.x.abs().max(p.y.abs()).max(1.0) {
        Point2::with_multiplicity(x, y, p.multiplicity)
    } else {
        p
    }
}

fn report_from_points(plan: &ConstructionPlan, points: &[Point2], tol: f64) -> RootReport {
    let cubic = plan.form.to_general();
    let magnitude = plan.form.magnitude_scale();
    let mut roots: Vec<Root> = Vec::new();
    for p in points {
        match roots
            .iter_mut()
            .find(|r| (r.value - p.x).abs() <= 10.0 * tol * p.x.max(1.0))
        {
            Some(r) => r.multiplicity += p.multiplicity,
            None => roots.push(Root {
                value: p.x,
                multiplicity: p.multiplicity,
            }),
        }
    }
    let residual_max = roots
        .iter()
        .map(|r| cubic.eval(r.value).abs() / (magnitude * r.value.max(1.0).powi(3)))
        .fold(0.0, f64::max);
    RootReport::new(Method::Khayyam, roots, residual_max)
}

/// Solves a prepared plan with the given pair of curves.
pub fn solve_plan(plan: &ConstructionPlan, pair: CurvePair, tol: f64) -> RootReport {
    let points = solve_points(plan, pair, tol);
    report_from_points(plan, &points, tol)
}

/// Positive roots of `form` read off the intersection of two of its
/// candidate conics. An empty report is flagged impossible.
pub fn solve_khayyam(form: &KhayyamForm, pair: CurvePair, tol: f64) -> RootReport {
    solve_plan(&construction_plan(form, false), pair, tol)
}

/// The two mean proportionals `x, y` with `a/x = x/y = y/c`, found as the
/// non-trivial intersection of the parabolas `x² = a·y` and `y² = c·x`.
pub fn double_mean_proportionals(a: f64, c: f64) -> Result<(f64, f64)> {
    if !(a > 0.0 && c > 0.0 && a.is_finite() && c.is_finite()) {
        return Err(Error::InvalidInput("segments must be positive and finite"));
    }
    let p1 = Conic::new(1.0, 0.0, 0.0, 0.0, -a, 0.0)?;
    let p2 = Conic::new(0.0, 0.0, 1.0, -c, 0.0, 0.0)?;
    let points = intersect_conics(&p1, &p2, DEFAULT_TOL)?;
    points
        .into_iter()
        .filter(|p| p.x > 0.0 && p.y > 0.0)
        .max_by(|u, v| u.x.total_cmp(&v.x))
        .map(|p| (p.x, p.y))
        .ok_or(Error::InvalidInput("parabolas met only at the vertex"))
}
