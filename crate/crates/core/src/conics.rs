//! Conic sections as bivariate quadratics
//! `A x² + B xy + C y² + D x + E y + F = 0`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Relative tolerance for the discriminant, circle and rectangularity tests.
pub const CLASS_TOL: f64 = 1e-10;
/// Relative tolerance for the vanishing 3×3 determinant.
pub const DEGENERACY_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConicClass {
    Parabola,
    Circle,
    RectangularHyperbola,
    Ellipse,
    GeneralHyperbola,
    Degenerate,
}

impl ConicClass {
    pub fn is_hyperbola(self) -> bool {
        matches!(self, Self::RectangularHyperbola | Self::GeneralHyperbola)
    }

    /// One-letter code used in curve-pair codes: `p`, `c` or `h`.
    pub fn letter(self) -> char {
        match self {
            Self::Parabola => 'p',
            Self::Circle => 'c',
            Self::RectangularHyperbola | Self::GeneralHyperbola => 'h',
            Self::Ellipse => 'e',
            Self::Degenerate => 'd',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Parabola => "parabola",
            Self::Circle => "circle",
            Self::RectangularHyperbola => "rectangular hyperbola",
            Self::Ellipse => "ellipse",
            Self::GeneralHyperbola => "hyperbola",
            Self::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Determinant of the symmetric matrix of the conic.
fn form_determinant(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> f64 {
    let (h, g, k) = (b / 2.0, d / 2.0, e / 2.0);
    a * (c * f - k * k) - h * (h * f - k * g) + g * (h * k - c * g)
}

/// Discriminant classification with tolerances relative to the largest of
/// `|A|, |B|, |C|` (and, for degeneracy, the cube of the largest coefficient).
pub fn conic_classify(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> ConicClass {
    let m = a.abs().max(b.abs()).max(c.abs());
    let all = [a, b, c, d, e, f]
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let det = form_determinant(a, b, c, d, e, f);
    if det.abs() <= DEGENERACY_TOL * all * all * all {
        return ConicClass::Degenerate;
    }
    let disc = b * b - 4.0 * a * c;
    if disc.abs() <= CLASS_TOL * m * m {
        ConicClass::Parabola
    } else if disc < 0.0 {
        if (a - c).abs() <= CLASS_TOL * m && b.abs() <= CLASS_TOL * m {
            ConicClass::Circle
        } else {
            ConicClass::Ellipse
        }
    } else if (a + c).abs() <= CLASS_TOL * m {
        ConicClass::RectangularHyperbola
    } else {
        ConicClass::GeneralHyperbola
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conic {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    f: f64,
    class: ConicClass,
}

impl Conic {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self> {
        if ![a, b, c, d, e, f].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return Err(Error::NotQuadratic);
        }
        Ok(Self {
            a,
            b,
            c,
            d,
            e,
            f,
            class: conic_classify(a, b, c, d, e, f),
        })
    }

    pub fn from_coefficients(k: [f64; 6]) -> Result<Self> {
        Self::new(k[0], k[1], k[2], k[3], k[4], k[5])
    }

    /// `(x - cx)² + (y - cy)² = radius_sq`.
    pub fn circle(cx: f64, cy: f64, radius_sq: f64) -> Result<Self> {
        Self::new(
            1.0,
            0.0,
            1.0,
            -2.0 * cx,
            -2.0 * cy,
            cx * cx + cy * cy - radius_sq,
        )
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn class(&self) -> ConicClass {
        self.class
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.a * x + self.b * y + self.d) * x + (self.c * y + self.e) * y + self.f
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        (
            2.0 * self.a * x + self.b * y + self.d,
            self.b * x + 2.0 * self.c * y + self.e,
        )
    }

    pub fn max_coefficient(&self) -> f64 {
        self.coefficients()
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Residual scale at a point: largest coefficient times
    /// `max(1, |x|, |y|)²`.
    pub fn scale_at(&self, x: f64, y: f64) -> f64 {
        let r = x.abs().max(y.abs()).max(1.0);
        self.max_coefficient() * r * r
    }

    pub fn on_curve(&self, x: f64, y: f64, tol: f64) -> bool {
        self.eval(x, y).abs() <= tol * self.scale_at(x, y)
    }

    /// Same curve with the coefficients divided by the largest magnitude.
    pub fn normalized(&self) -> Self {
        let m = self.max_coefficient();
        let k = self.coefficients().map(|v| v / m);
        Self {
            a: k[0],
            b: k[1],
            c: k[2],
            d: k[3],
            e: k[4],
            f: k[5],
            class: self.class,
        }
    }

    /// Reflection through the line `y = x`.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.c,
            b: self.b,
            c: self.a,
            d: self.e,
            e: self.d,
            f: self.f,
            class: self.class,
        }
    }

    /// Degree of the equation in `y` (0, 1 or 2).
    pub fn y_degree(&self) -> u32 {
        if self.c != 0.0 {
            2
        } else if self.b != 0.0 || self.e != 0.0 {
            1
        } else {
            0
        }
    }

    /// Whether the two coefficient vectors are parallel within `tol`
    /// relative to the product of their norms.
    pub fn is_proportional(&self, other: &Conic, tol: f64) -> bool {
        let u = self.coefficients();
        let v = other.coefficients();
        let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let bound = tol * nu * nv;
        (0..6).all(|i| (i + 1..6).all(|j| (u[i] * v[j] - u[j] * v[i]).abs() <= bound))
    }

    /// Real `y` values on the curve above abscissa `x`.
    ///
    /// A slightly negative discriminant, within `slack` of zero relative
    /// to its terms, is treated as a double root.
    pub fn solve_y(&self, x: f64, slack: f64) -> Vec<f64> {
        let qa = self.c;
        let qb = self.b * x + self.e;
        let qc = (self.a * x + self.d) * x + self.f;
        if qa == 0.0 {
            if qb == 0.0 {
                return Vec::new();
            }
            return vec![-qc / qb];
        }
        let mut disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            if -disc <= slack * (qb * qb + (4.0 * qa * qc).abs()) {
                disc = 0.0;
            } else {
                return Vec::new();
            }
        }
        let root = disc.sqrt();
        let t = -0.5 * (qb + qb.signum() * root);
        if t == 0.0 {
            return vec![0.0];
        }
        let y1 = t / qa;
        let y2 = qc / t;
        if disc == 0.0 {
            vec![-qb / (2.0 * qa)]
        } else {
            vec![y1, y2]
        }
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            (self.a, "x²"),
            (self.b, "xy"),
            (self.c, "y²"),
            (self.d, "x"),
            (self.e, "y"),
            (self.f, ""),
        ];
        let mut first = true;
        for (k, name) in terms {
            if k == 0.0 {
                continue;
            }
            let sign = if k < 0.0 { "-" } else { "+" };
            let mag = k.abs();
            if first {
                if k < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1.0 || name.is_empty() {
                write!(f, "{mag}")?;
            }
            f.write_str(name)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(" = 0")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(
            conic_classify(1.0, 0.0, 0.0, 0.0, -1.0, 0.0),
            ConicClass::Parabola
        );
        assert_eq!(
            conic_classify(0.0, 1.0, 0.0, 0.0, 0.0, -1.0),
            ConicClass::RectangularHyperbola
        );
        assert_eq!(
            conic_classify(1.0, 0.0, 1.0, 0.0, 0.0, -1.0),
            ConicClass::Circle
        );
        assert_eq!(
            conic_classify(1.0, 0.0, -1.0, 0.0, 0.0, 0.0),
            ConicClass::Degenerate
        );
    }

    #[test]
    fn classify_other_families() {
        assert_eq!(
            conic_classify(1.0, 0.0, 4.0, 0.0, 0.0, -1.0),
            ConicClass::Ellipse
        );
        assert_eq!(
            conic_classify(1.0, 0.0, -4.0, 0.0, 0.0, -1.0),
            ConicClass::GeneralHyperbola
        );
        // A rotated rectangular hyperbola: x² + 3xy - y² = 1.
        assert_eq!(
            conic_classify(1.0, 3.0, -1.0, 0.0, 0.0, -1.0),
            ConicClass::RectangularHyperbola
        );
        // (x - y)² = 0 and a pair of parallel lines.
        assert_eq!(
            conic_classify(1.0, -2.0, 1.0, 0.0, 0.0, 0.0),
            ConicClass::Degenerate
        );
        assert_eq!(
            conic_classify(1.0, 0.0, 0.0, 0.0, 0.0, -1.0),
            ConicClass::Degenerate
        );
    }

    #[test]
    fn class_is_scale_invariant() {
        let cases = [
            [1.0, 0.0, 0.0, 0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0, 0.0, -1.0],
            [1.0, 0.0, 1.0, -2.0, 3.0, -1.0],
            [2.0, 1.0, 3.0, 0.5, 0.0, -7.0],
            [1.0, 0.0, -1.0, 0.0, 0.0, 0.0],
        ];
        for k in cases {
            let base = conic_classify(k[0], k[1], k[2], k[3], k[4], k[5]);
            for s in [-3.0, 1e-6, 0.25, 17.0, 1e8] {
                let v = k.map(|c| c * s);
                assert_eq!(conic_classify(v[0], v[1], v[2], v[3], v[4], v[5]), base);
            }
        }
    }

    #[test]
    fn on_curve_examples() {
        let circle = Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap();
        assert!(circle.on_curve(1.0, 0.0, 1e-12));
        assert!(!circle.on_curve(1.0, 1.0, 1e-12));
        let parabola = Conic::new(1.0, 0.0, 0.0, 0.0, -1.0, 0.0).unwrap();
        assert!(parabola.on_curve(2.0, 4.0, 1e-12));
    }

    #[test]
    fn rejects_lines() {
        assert_eq!(
            Conic::new(0.0, 0.0, 0.0, 0.0, 1.0, -4.0),
            Err(Error::NotQuadratic)
        );
        assert_eq!(
            Conic::new(f64::NAN, 0.0, 1.0, 0.0, 1.0, -4.0),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn solve_y_on_circle_and_parabola() {
        let circle = Conic::circle(0.0, 0.0, 25.0).unwrap();
        let mut ys = circle.solve_y(3.0, 0.0);
        ys.sort_by(f64::total_cmp);
        assert_eq!(ys, vec![-4.0, 4.0]);
        assert_eq!(circle.solve_y(5.0, 0.0), vec![0.0]);
        assert!(circle.solve_y(6.0, 0.0).is_empty());
        let parabola = Conic::new(1.0, 0.0, 0.0, 0.0, -1.0, 0.0).unwrap();
        assert_eq!(parabola.solve_y(3.0, 0.0), vec![9.0]);
    }

    #[test]
    fn proportional_detection() {
        let u = Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap();
        let v = Conic::new(-2.0, 0.0, -2.0, 0.0, 0.0, 2.0).unwrap();
        let w = Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, -2.0).unwrap();
        assert!(u.is_proportional(&v, 1e-12));
        assert!(!u.is_proportional(&w, 1e-12));
    }

    #[test]
    fn display_is_readable() {
        let c = Conic::new(1.0, 0.0, 1.0, -10.0, 0.0, 0.0).unwrap();
        assert_eq!(c.to_string(), "x² + y² - 10x = 0");
        let h = Conic::new(0.0, 1.0, 0.0, 0.0, 0.0, -4.0).unwrap();
        assert_eq!(h.to_string(), "xy - 4 = 0");
    }
}
