//! Cubic and quartic polynomials, the fourteen positive-coefficient cubic
//! types, and depression by an affine shift.
//!
//! Coefficient order is always highest degree first.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Coefficients smaller than this, relative to the largest monic
/// coefficient, count as structurally zero when classifying.
pub const STRUCTURAL_ZERO: f64 = 1e-12;

/// Evaluates a polynomial given highest-degree-first coefficients.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Scale used for residual tests: `max(1, |coeffs|) · max(1, |x|)^degree`.
pub fn residual_scale(coeffs: &[f64], x: f64) -> f64 {
    let cmax = coeffs.iter().fold(1.0_f64, |m, c| m.max(c.abs()));
    let degree = coeffs.len().saturating_sub(1) as i32;
    cmax * x.abs().max(1.0).powi(degree)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cubic {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl Cubic {
    pub fn new(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<Self> {
        if ![c3, c2, c1, c0].iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite);
        }
        if c3 == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(Self { c3, c2, c1, c0 })
    }

    /// Builds the monic cubic with the given real roots.
    pub fn from_roots(r: [f64; 3]) -> Self {
        Self {
            c3: 1.0,
            c2: -(r[0] + r[1] + r[2]),
            c1: r[0] * r[1] + r[0] * r[2] + r[1] * r[2],
            c0: -r[0] * r[1] * r[2],
        }
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.c3, self.c2, self.c1, self.c0]
    }

    pub fn monic(&self) -> Self {
        Self {
            c3: 1.0,
            c2: self.c2 / self.c3,
            c1: self.c1 / self.c3,
            c0: self.c0 / self.c3,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.coefficients(), x)
    }

    pub fn residual_scale(&self, x: f64) -> f64 {
        residual_scale(&self.coefficients(), x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quartic {
    pub q4: f64,
    pub q3: f64,
    pub q2: f64,
    pub q1: f64,
    pub q0: f64,
}

impl Quartic {
    pub fn new(q4: f64, q3: f64, q2: f64, q1: f64, q0: f64) -> Result<Self> {
        if ![q4, q3, q2, q1, q0].iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite);
        }
        if q4 == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(Self { q4, q3, q2, q1, q0 })
    }

    pub fn coefficients(&self) -> [f64; 5] {
        [self.q4, self.q3, self.q2, self.q1, self.q0]
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.coefficients(), x)
    }

    pub fn residual_scale(&self, x: f64) -> f64 {
        residual_scale(&self.coefficients(), x)
    }
}

/// The fourteen cubic types, numbered in the order they are treated in the
/// classical treatise (3, then 13 to 25).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KhayyamType {
    T3,
    T13,
    T14,
    T15,
    T16,
    T17,
    T18,
    T19,
    T20,
    T21,
    T22,
    T23,
    T24,
    T25,
}

impl KhayyamType {
    pub const ALL: [KhayyamType; 14] = [
        Self::T3,
        Self::T13,
        Self::T14,
        Self::T15,
        Self::T16,
        Self::T17,
        Self::T18,
        Self::T19,
        Self::T20,
        Self::T21,
        Self::T22,
        Self::T23,
        Self::T24,
        Self::T25,
    ];

    pub fn id(self) -> u8 {
        match self {
            Self::T3 => 3,
            Self::T13 => 13,
            Self::T14 => 14,
            Self::T15 => 15,
            Self::T16 => 16,
            Self::T17 => 17,
            Self::T18 => 18,
            Self::T19 => 19,
            Self::T20 => 20,
            Self::T21 => 21,
            Self::T22 => 22,
            Self::T23 => 23,
            Self::T24 => 24,
            Self::T25 => 25,
        }
    }

    pub fn from_id(id: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.id() == id)
    }

    /// Signs of the `x²`, `x` and constant coefficients of the monic cubic
    /// with every term moved to the left-hand side.
    pub fn sign_pattern(self) -> [i8; 3] {
        match self {
            Self::T3 => [0, 0, -1],
            Self::T13 => [0, 1, -1],
            Self::T14 => [0, -1, 1],
            Self::T15 => [0, -1, -1],
            Self::T16 => [1, 0, -1],
            Self::T17 => [-1, 0, 1],
            Self::T18 => [-1, 0, -1],
            Self::T19 => [1, 1, -1],
            Self::T20 => [1, -1, 1],
            Self::T21 => [-1, 1, 1],
            Self::T22 => [-1, -1, -1],
            Self::T23 => [1, -1, -1],
            Self::T24 => [-1, 1, -1],
            Self::T25 => [-1, -1, 1],
        }
    }

    fn from_sign_pattern(pattern: [i8; 3]) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.sign_pattern() == pattern)
    }

    pub fn has_a(self) -> bool {
        self.sign_pattern()[0] != 0
    }

    pub fn has_b(self) -> bool {
        self.sign_pattern()[1] != 0
    }

    /// The equation with every magnitude positive, e.g. `x³+bx=c`.
    pub fn equation(self) -> &'static str {
        match self {
            Self::T3 => "x³=c",
            Self::T13 => "x³+bx=c",
            Self::T14 => "x³+c=bx",
            Self::T15 => "x³=bx+c",
            Self::T16 => "x³+ax²=c",
            Self::T17 => "x³+c=ax²",
            Self::T18 => "x³=ax²+c",
            Self::T19 => "x³+ax²+bx=c",
            Self::T20 => "x³+ax²+c=bx",
            Self::T21 => "x³+bx+c=ax²",
            Self::T22 => "x³=ax²+bx+c",
            Self::T23 => "x³+ax²=bx+c",
            Self::T24 => "x³+bx=ax²+c",
            Self::T25 => "x³+c=ax²+bx",
        }
    }
}

impl fmt::Display for KhayyamType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {}", self.id())
    }
}

/// Accepted magnitudes. Cubes of roots stay finite and the curve
/// coefficients cannot overflow inside this range.
pub const MAGNITUDE_RANGE: std::ops::RangeInclusive<f64> = 1e-100..=1e100;

/// A cubic in one of the fourteen canonical types, with positive magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KhayyamForm {
    kind: KhayyamType,
    a: Option<f64>,
    b: Option<f64>,
    c: f64,
}

impl KhayyamForm {
    /// Every type carries `c`; `a` and `b` must be given exactly when the
    /// type has the corresponding term.
    pub fn new(kind: KhayyamType, a: Option<f64>, b: Option<f64>, c: f64) -> Result<Self> {
        let invalid = |reason| Error::InvalidForm {
            type_id: kind.id(),
            reason,
        };
        if kind.has_a() != a.is_some() {
            return Err(invalid(
                "magnitude a must be present iff the type has an x² term",
            ));
        }
        if kind.has_b() != b.is_some() {
            return Err(invalid(
                "magnitude b must be present iff the type has an x term",
            ));
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(c) || !a.is_none_or(positive) || !b.is_none_or(positive) {
            return Err(invalid("magnitudes must be finite and strictly positive"));
        }
        let in_range = |v: f64| MAGNITUDE_RANGE.contains(&v);
        if !in_range(c) || !a.is_none_or(in_range) || !b.is_none_or(in_range) {
            return Err(invalid("magnitudes must lie between 1e-100 and 1e100"));
        }
        Ok(Self { kind, a, b, c })
    }

    /// Convenience constructor taking `0.0` for absent magnitudes.
    pub fn with_magnitudes(kind: KhayyamType, a: f64, b: f64, c: f64) -> Result<Self> {
        let a = kind.has_a().then_some(a);
        let b = kind.has_b().then_some(b);
        Self::new(kind, a, b, c)
    }

    pub fn kind(&self) -> KhayyamType {
        self.kind
    }

    pub fn type_id(&self) -> u8 {
        self.kind.id()
    }

    pub fn a(&self) -> Option<f64> {
        self.a
    }

    pub fn b(&self) -> Option<f64> {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Largest magnitude, floored at 1.
    pub fn magnitude_scale(&self) -> f64 {
        [self.a.unwrap_or(0.0), self.b.unwrap_or(0.0), self.c]
            .iter()
            .fold(1.0_f64, |m, v| m.max(*v))
    }

    pub fn to_general(&self) -> Cubic {
        to_general(self)
    }
}

impl fmt::Display for KhayyamForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {} ({})", self.kind.id(), self.kind.equation())?;
        if let Some(a) = self.a {
            write!(f, ", a={a}")?;
        }
        if let Some(b) = self.b {
            write!(f, ", b={b}")?;
        }
        write!(f, ", c={}", self.c)
    }
}

/// Maps general cubic coefficients onto one of the fourteen types.
///
/// The cubic is made monic first. Coefficients below [`STRUCTURAL_ZERO`]
/// relative to the largest monic coefficient count as absent.
pub fn classify(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<KhayyamForm> {
    let cubic = Cubic::new(c3, c2, c1, c0)
        .map_err(|e| Error::NotClassifiable(format!("not a cubic ({e})")))?;
    let m = cubic.monic();
    let lower = [m.c2, m.c1, m.c0];
    let largest = lower.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let threshold = STRUCTURAL_ZERO * largest;
    let pattern = lower.map(|v| {
        if v.abs() < threshold {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    });
    let kind = KhayyamType::from_sign_pattern(pattern).ok_or_else(|| {
        let what = if pattern[2] == 0 {
            "zero constant term, reducible to a quadratic"
        } else {
            "all terms on one side, no positive root"
        };
        Error::NotClassifiable(what.to_string())
    })?;
    let a = kind.has_a().then(|| m.c2.abs());
    let b = kind.has_b().then(|| m.c1.abs());
    KhayyamForm::new(kind, a, b, m.c0.abs()).map_err(|e| Error::NotClassifiable(e.to_string()))
}

/// Monic cubic with every term moved to the left-hand side.
pub fn to_general(form: &KhayyamForm) -> Cubic {
    let [s2, s1, s0] = form.kind.sign_pattern();
    Cubic {
        c3: 1.0,
        c2: f64::from(s2) * form.a.unwrap_or(0.0),
        c1: f64::from(s1) * form.b.unwrap_or(0.0),
        c0: f64::from(s0) * form.c,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degree {
    Cubic,
    Quartic,
}

/// `z³ + pz + q = 0` or `z⁴ + pz² + qz + r = 0`.
///
/// `shift` relates the variables by `z = x + shift`, so an original root is
/// `z - shift`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepressedForm {
    pub degree: Degree,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub shift: f64,
}

impl DepressedForm {
    pub fn cubic(p: f64, q: f64) -> Self {
        Self {
            degree: Degree::Cubic,
            p,
            q,
            r: 0.0,
            shift: 0.0,
        }
    }

    pub fn quartic(p: f64, q: f64, r: f64) -> Self {
        Self {
            degree: Degree::Quartic,
            p,
            q,
            r,
            shift: 0.0,
        }
    }

    /// Highest-degree-first coefficients in `z`.
    pub fn coefficients(&self) -> Vec<f64> {
        match self.degree {
            Degree::Cubic => vec![1.0, 0.0, self.p, self.q],
            Degree::Quartic => vec![1.0, 0.0, self.p, self.q, self.r],
        }
    }

    pub fn degree_value(&self) -> u32 {
        match self.degree {
            Degree::Cubic => 3,
            Degree::Quartic => 4,
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        horner(&self.coefficients(), z)
    }

    pub fn residual_scale(&self, z: f64) -> f64 {
        residual_scale(&self.coefficients(), z)
    }

    pub fn is_finite(&self) -> bool {
        [self.p, self.q, self.r, self.shift]
            .iter()
            .all(|v| v.is_finite())
    }
}

/// Removes the `x²` term with the substitution `z = x + c2/(3·c3)`.
pub fn depress(cubic: &Cubic) -> DepressedForm {
    let m = cubic.monic();
    let (a, b, c) = (m.c2, m.c1, m.c0);
    let shift = a / 3.0;
    DepressedForm {
        degree: Degree::Cubic,
        p: b - a * a / 3.0,
        q: 2.0 * a * a * a / 27.0 - a * b / 3.0 + c,
        r: 0.0,
        shift,
    }
}

/// Removes the `x³` term with the substitution `z = x + q3/(4·q4)`.
pub fn depress_quartic(quartic: &Quartic) -> DepressedForm {
    let n = quartic.q4;
    let (a, b, c, d) = (
        quartic.q3 / n,
        quartic.q2 / n,
        quartic.q1 / n,
        quartic.q0 / n,
    );
    let a2 = a * a;
    DepressedForm {
        degree: Degree::Quartic,
        p: b - 3.0 * a2 / 8.0,
        q: c - a * b / 2.0 + a2 * a / 8.0,
        r: d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0,
        shift: a / 4.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let f = classify(1.0, 0.0, 2.0, -5.0).unwrap();
        assert_eq!(f.type_id(), 13);
        assert_eq!((f.a(), f.b(), f.c()), (None, Some(2.0), 5.0));

        let f = classify(1.0, 0.0, 0.0, -8.0).unwrap();
        assert_eq!(f.type_id(), 3);
        assert_eq!((f.a(), f.b(), f.c()), (None, None, 8.0));

        let f = classify(1.0, 4.0, 3.0, -7.0).unwrap();
        assert_eq!(f.type_id(), 19);
        assert_eq!((f.a(), f.b(), f.c()), (Some(4.0), Some(3.0), 7.0));

        assert!(matches!(
            classify(1.0, 0.0, 0.0, 0.0),
            Err(Error::NotClassifiable(_))
        ));
    }

    #[test]
    fn classify_normalizes_non_monic_input() {
        let f = classify(2.0, 0.0, 4.0, -10.0).unwrap();
        assert_eq!(f.type_id(), 13);
        assert_eq!((f.b(), f.c()), (Some(2.0), 5.0));
        let f = classify(-1.0, 0.0, -2.0, 5.0).unwrap();
        assert_eq!(f.type_id(), 13);
    }

    #[test]
    fn classify_rejects_reducible_and_rootless_patterns() {
        for (c2, c1, c0) in [
            (0.0, 3.0, 0.0),  // x³ + 3x = 0
            (-2.0, 0.0, 0.0), // x³ = 2x²
            (-2.0, 1.0, 0.0), // x³ + x = 2x²
            (0.0, 0.0, 1.0),  // x³ + 1 = 0
            (1.0, 1.0, 1.0),
            (1.0, 0.0, 1.0),
            (0.0, 1.0, 1.0),
        ] {
            assert!(
                matches!(classify(1.0, c2, c1, c0), Err(Error::NotClassifiable(_))),
                "{c2} {c1} {c0}"
            );
        }
        assert!(matches!(
            classify(0.0, 1.0, 1.0, 1.0),
            Err(Error::NotClassifiable(_))
        ));
        assert!(classify(f64::NAN, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn structural_zero_threshold() {
        let f = classify(1.0, 1e-14, 2.0, -5.0).unwrap();
        assert_eq!(f.type_id(), 13);
        let f = classify(1.0, 1e-9, 2.0, -5.0).unwrap();
        assert_eq!(f.type_id(), 19);
    }

    #[test]
    fn every_type_round_trips() {
        for kind in KhayyamType::ALL {
            let form = KhayyamForm::with_magnitudes(kind, 1.5, 2.5, 3.5).unwrap();
            let back = to_general(&form);
            let again = classify(back.c3, back.c2, back.c1, back.c0).unwrap();
            assert_eq!(again, form);
        }
    }

    #[test]
    fn to_general_examples() {
        let t = |k, a, b, c| to_general(&KhayyamForm::with_magnitudes(k, a, b, c).unwrap());
        assert_eq!(
            t(KhayyamType::T13, 0.0, 2.0, 5.0).coefficients(),
            [1.0, 0.0, 2.0, -5.0]
        );
        assert_eq!(
            t(KhayyamType::T14, 0.0, 7.0, 6.0).coefficients(),
            [1.0, 0.0, -7.0, 6.0]
        );
        assert_eq!(
            t(KhayyamType::T22, 1.0, 1.0, 1.0).coefficients(),
            [1.0, -1.0, -1.0, -1.0]
        );
    }

    #[test]
    fn form_validation() {
        assert!(KhayyamForm::new(KhayyamType::T13, Some(1.0), Some(1.0), 1.0).is_err());
        assert!(KhayyamForm::new(KhayyamType::T13, None, Some(-1.0), 1.0).is_err());
        assert!(KhayyamForm::new(KhayyamType::T3, None, None, 0.0).is_err());
        assert!(KhayyamForm::new(KhayyamType::T19, Some(1.0), None, 1.0).is_err());
    }

    #[test]
    fn depress_examples() {
        let d = depress(&Cubic::new(1.0, -6.0, 11.0, -6.0).unwrap());
        assert_eq!((d.p, d.q, d.shift), (-1.0, 0.0, -2.0));
        let d = depress(&Cubic::new(1.0, 3.0, 3.0, 1.0).unwrap());
        assert_eq!((d.p, d.q, d.shift), (0.0, 0.0, 1.0));
        let d = depress(&Cubic::new(1.0, 0.0, -3.0, 5.0).unwrap());
        assert_eq!((d.p, d.q, d.shift), (-3.0, 5.0, 0.0));
    }

    #[test]
    fn depressed_cubic_expands_back() {
        // (z+2)³ - 6(z+2)² + 11(z+2) - 6 evaluated pointwise against z³ - z.
        let cubic = Cubic::new(1.0, -6.0, 11.0, -6.0).unwrap();
        for z in [-3.0, -0.5, 0.0, 1.25, 4.0] {
            assert!((cubic.eval(z + 2.0) - (z * z * z - z)).abs() < 1e-12);
        }
    }

    #[test]
    fn depress_quartic_examples() {
        let d = depress_quartic(&Quartic::new(1.0, 0.0, -5.0, 0.0, 4.0).unwrap());
        assert_eq!((d.p, d.q, d.r, d.shift), (-5.0, 0.0, 4.0, 0.0));
        let d = depress_quartic(&Quartic::new(1.0, -4.0, 6.0, -4.0, 1.0).unwrap());
        assert_eq!((d.p, d.q, d.r, d.shift), (0.0, 0.0, 0.0, -1.0));
        let d = depress_quartic(&Quartic::new(1.0, 4.0, 6.0, 4.0, 1.0).unwrap());
        assert_eq!((d.p, d.q, d.r, d.shift), (0.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Cubic::new(1.0, 0.0, 2.0, -5.0).unwrap().eval(5.0), 130.0);
        assert_eq!(Cubic::new(1.0, 0.0, 0.0, 0.0).unwrap().eval(0.0), 0.0);
        assert_eq!(Cubic::new(1.0, 0.0, -7.0, 6.0).unwrap().eval(2.0), 0.0);
        assert_eq!(
            Quartic::new(1.0, 0.0, -5.0, 0.0, 4.0).unwrap().eval(2.0),
            0.0
        );
    }

    #[test]
    fn rejects_zero_leading_coefficient() {
        assert_eq!(
            Cubic::new(0.0, 1.0, 1.0, 1.0),
            Err(Error::ZeroLeadingCoefficient)
        );
        assert_eq!(
            Quartic::new(0.0, 1.0, 1.0, 1.0, 1.0),
            Err(Error::ZeroLeadingCoefficient)
        );
    }
}
