//! Depressed cubics and quartics solved with one fixed parabola and a circle.
//!
//! Putting `y = z²` into `z⁴ + p·z² + q·z + r = 0` and completing squares
//! gives the circle
//!
//! ```text
//! (z + q/2)² + (y + (p - 1)/2)² = (p - 1)²/4 + q²/4 - r
//! ```
//!
//! so the real roots are the abscissas of the points where this circle meets
//! the parabola `y = z²`. A cubic is handled as the quartic `z·(z³ + pz + q)`,
//! which adds the origin as an extra intersection.

use serde::{Deserialize, Serialize};

use crate::conics::Conic;
use crate::intersect::{intersect_conics, Point2};
use crate::poly::{depress, horner, Cubic, Degree, DepressedForm};
use crate::report::{Method, Root, RootReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescartesConstruction {
    /// `y - z² = 0`, in the `(z, y)` plane.
    pub parabola: Conic,
    pub circle_center: (f64, f64),
    pub radius_sq: f64,
    /// `radius_sq > 0`.
    pub valid: bool,
    pub source: DepressedForm,
}

impl DescartesConstruction {
    /// The circle as a conic, when it has positive radius.
    pub fn circle(&self) -> Option<Conic> {
        if !self.valid {
            return None;
        }
        let (z0, y0) = self.circle_center;
        Conic::circle(z0, y0, self.radius_sq).ok()
    }
}

pub fn parabola() -> Conic {
    Conic::new(-1.0, 0.0, 0.0, 0.0, 1.0, 0.0).expect("fixed parabola")
}

pub fn descartes_construction(form: &DepressedForm) -> DescartesConstruction {
    let r = match form.degree {
        Degree::Cubic => 0.0,
        Degree::Quartic => form.r,
    };
    let (p, q) = (form.p, form.q);
    let radius_sq = (p - 1.0) * (p - 1.0) / 4.0 + q * q / 4.0 - r;
    DescartesConstruction {
        parabola: parabola(),
        circle_center: (-q / 2.0, -(p - 1.0) / 2.0),
        radius_sq,
        valid: radius_sq > 0.0,
        source: *form,
    }
}

fn scaled_residual(form: &DepressedForm, z: f64) -> f64 {
    form.eval(z).abs() / form.residual_scale(z)
}

/// Order of vanishing at `z`: how many leading derivatives are negligible.
fn vanishing_order(coeffs: &[f64], z: f64, tol: f64) -> u32 {
    let mut current = coeffs.to_vec();
    let mut order = 0;
    while current.len() > 1 {
        let scale = crate::poly::residual_scale(&current, z);
        if horner(&current, z).abs() > tol * scale {
            break;
        }
        order += 1;
        let n = current.len() - 1;
        current = current[..n]
            .iter()
            .enumerate()
            .map(|(i, c)| c * (n - i) as f64)
            .collect();
    }
    order
}

/// All real roots of a depressed cubic or quartic.
pub fn solve_descartes(form: &DepressedForm, tol: f64) -> RootReport {
    let construction = descartes_construction(form);
    let coeffs = form.coefficients();

    let mut candidates: Vec<Point2> = match construction.circle() {
        Some(circle) => intersect_conics(&construction.parabola, &circle, tol).unwrap_or_default(),
        None => Vec::new(),
    };
    if !construction.valid {
        // A point circle can only touch the parabola at its centre.
        let (z0, _) = construction.circle_center;
        let order = vanishing_order(&coeffs, z0, tol);
        candidates = if order > 0 {
            vec![Point2::with_multiplicity(z0, z0 * z0, order)]
        } else {
            Vec::new()
        };
    } else if form.degree == Degree::Cubic {
        // Drop the origin that the embedding contributes.
        if let Some(i) = candidates
            .iter()
            .position(|c| c.x.abs() <= 10.0 * tol && c.y.abs() <= 10.0 * tol)
        {
            if candidates[i].multiplicity > 1 {
                candidates[i].multiplicity -= 1;
            } else {
                candidates.remove(i);
            }
        }
    }

    let mut roots: Vec<Root> = Vec::new();
    let mut residual_max: f64 = 0.0;
    for c in candidates {
        let residual = scaled_residual(form, c.x);
        if residual > tol {
            continue;
        }
        residual_max = residual_max.max(residual);
        match roots
            .iter_mut()
            .find(|r| (r.value - c.x).abs() <= 10.0 * tol * c.x.abs().max(1.0))
        {
            Some(r) => r.multiplicity += c.multiplicity,
            None => roots.push(Root {
                value: c.x,
                multiplicity: c.multiplicity,
            }),
        }
    }
    RootReport::new(Method::Descartes, roots, residual_max)
}

/// Real roots of a general cubic: depress, solve, shift back.
pub fn solve_general_cubic(cubic: &Cubic, tol: f64) -> RootReport {
    let form = depress(cubic);
    let z_report = solve_descartes(&form, tol);
    let roots: Vec<Root> = z_report
        .roots
        .iter()
        .map(|r| Root {
            value: r.value - form.shift,
            multiplicity: r.multiplicity,
        })
        .collect();
    let residual_max = roots
        .iter()
        .map(|r| cubic.eval(r.value).abs() / cubic.residual_scale(r.value))
        .fold(0.0, f64::max);
    RootReport::new(Method::Descartes, roots, residual_max)
}
