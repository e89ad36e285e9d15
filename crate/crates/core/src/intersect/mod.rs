//! Real intersection points of two conics.
//!
//! `y` is eliminated through the resultant of the two quadratics in `y`,
//! leaving a polynomial of degree at most four in `x`. Its real roots are
//! back-substituted into both conics, refined by Newton's method on the
//! two-equation system and validated on both curves.

pub mod univariate;

use serde::{Deserialize, Serialize};

use crate::conics::Conic;
use crate::error::{Error, Result};

/// Default absolute tolerance on scaled residuals.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Relative tolerance for the proportional-conics test.
pub const PROPORTIONAL_TOL: f64 = 1e-12;

const MAX_NEWTON_ITERATIONS: usize = 50;
/// Iteration stops early only on an exact zero; otherwise it runs until a
/// step fails to reduce the residual, which is the rounding floor.
const NEWTON_TARGET: f64 = 0.0;
const DISCRIMINANT_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
    /// Contact order estimate, at least 1.
    pub multiplicity: u32,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self {
            x,
            y,
            multiplicity: 1,
        }
    }

    pub fn with_multiplicity(x: f64, y: f64, multiplicity: u32) -> Self {
        Self { x, y, multiplicity }
    }

    fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Outcome of [`newton_refine`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    pub point: Point2,
    /// Larger of the two scaled residuals at `point`.
    pub residual: f64,
    pub iterations: usize,
}

// Ascending-power polynomial helpers.

fn padd(u: &[f64], v: &[f64]) -> Vec<f64> {
    let n = u.len().max(v.len());
    (0..n)
        .map(|i| u.get(i).copied().unwrap_or(0.0) + v.get(i).copied().unwrap_or(0.0))
        .collect()
}

fn pscale(u: &[f64], k: f64) -> Vec<f64> {
    u.iter().map(|c| c * k).collect()
}

fn pmul(u: &[f64], v: &[f64]) -> Vec<f64> {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; u.len() + v.len() - 1];
    for (i, a) in u.iter().enumerate() {
        for (j, b) in v.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// The conic as `a y² + b(x) y + c(x)` with polynomial coefficients in `x`.
fn y_coefficients(conic: &Conic) -> (f64, Vec<f64>, Vec<f64>) {
    let [a, b, c, d, e, f] = conic.coefficients();
    (c, vec![e, b], vec![f, d, a])
}

fn resultant_in_y(c1: &Conic, c2: &Conic) -> Vec<f64> {
    let (a1, b1, k1) = y_coefficients(c1);
    let (a2, b2, k2) = y_coefficients(c2);
    match (a1 != 0.0, a2 != 0.0) {
        (true, true) => {
            // (a1 k2 - a2 k1)² - (a1 b2 - a2 b1)(b1 k2 - b2 k1)
            let u = padd(&pscale(&k2, a1), &pscale(&k1, -a2));
            let v = padd(&pscale(&b2, a1), &pscale(&b1, -a2));
            let w = padd(&pmul(&b1, &k2), &pscale(&pmul(&b2, &k1), -1.0));
            padd(&pmul(&u, &u), &pscale(&pmul(&v, &w), -1.0))
        }
        (true, false) => linear_against_quadratic(a1, &b1, &k1, &b2, &k2),
        (false, true) => linear_against_quadratic(a2, &b2, &k2, &b1, &k1),
        (false, false) => padd(&pmul(&b1, &k2), &pscale(&pmul(&b2, &k1), -1.0)),
    }
}

/// Resultant of `a y² + b y + k` and `b' y + k'`: `a k'² - b b' k' + k b'²`.
fn linear_against_quadratic(a: f64, b: &[f64], k: &[f64], bl: &[f64], kl: &[f64]) -> Vec<f64> {
    let t1 = pscale(&pmul(kl, kl), a);
    let t2 = pscale(&pmul(&pmul(b, bl), kl), -1.0);
    let t3 = pmul(k, &pmul(bl, bl));
    padd(&padd(&t1, &t2), &t3)
}

fn check_pair(c1: &Conic, c2: &Conic) -> Result<()> {
    if c1.is_proportional(c2, PROPORTIONAL_TOL) {
        return Err(Error::ProportionalConics);
    }
    Ok(())
}

/// Eliminates `y`, returning ascending-power coefficients in `x` of degree
/// at most four, with leading zeros trimmed.
///
/// Both conics are normalized to unit largest coefficient first, so the
/// result is defined up to a positive scale.
pub fn eliminate_to_quartic(c1: &Conic, c2: &Conic) -> Result<Vec<f64>> {
    check_pair(c1, c2)?;
    let res = resultant_in_y(&c1.normalized(), &c2.normalized());
    let trimmed = univariate::trim(&res, 1e-14);
    if trimmed.is_empty() {
        return Err(Error::CommonComponent);
    }
    Ok(trimmed)
}

fn scaled_residuals(c1: &Conic, c2: &Conic, x: f64, y: f64) -> (f64, f64) {
    (
        c1.eval(x, y) / c1.scale_at(x, y),
        c2.eval(x, y) / c2.scale_at(x, y),
    )
}

/// Newton's method on the system `c1 = 0, c2 = 0`.
///
/// Near a tangency the Jacobian is singular; there the step falls back to a
/// damped least-squares step. Every accepted step reduces the residual.
pub fn newton_refine(c1: &Conic, c2: &Conic, seed: Point2) -> Refinement {
    let (mut x, mut y) = (seed.x, seed.y);
    let norm = |r: (f64, f64)| r.0.abs().max(r.1.abs());
    let mut res = scaled_residuals(c1, c2, x, y);
    let mut iterations = 0;
    while iterations < MAX_NEWTON_ITERATIONS {
        if norm(res) <= NEWTON_TARGET {
            break;
        }
        iterations += 1;
        let (s1, s2) = (c1.scale_at(x, y), c2.scale_at(x, y));
        let (g1x, g1y) = c1.gradient(x, y);
        let (g2x, g2y) = c2.gradient(x, y);
        let (j11, j12, j21, j22) = (g1x / s1, g1y / s1, g2x / s2, g2y / s2);
        let det = j11 * j22 - j12 * j21;
        let row1 = j11.hypot(j12);
        let row2 = j21.hypot(j22);
        let (dx, dy) = if det.abs() > 1e-10 * row1 * row2 {
            (
                -(j22 * res.0 - j12 * res.1) / det,
                -(-j21 * res.0 + j11 * res.1) / det,
            )
        } else {
            // (JᵀJ + λI) δ = -Jᵀr
            let m11 = j11 * j11 + j21 * j21;
            let m12 = j11 * j12 + j21 * j22;
            let m22 = j12 * j12 + j22 * j22;
            let lambda = 1e-3 * (m11 + m22) + f64::MIN_POSITIVE;
            let (a11, a22) = (m11 + lambda, m22 + lambda);
            let g1 = -(j11 * res.0 + j21 * res.1);
            let g2 = -(j12 * res.0 + j22 * res.1);
            let d = a11 * a22 - m12 * m12;
            ((a22 * g1 - m12 * g2) / d, (a11 * g2 - m12 * g1) / d)
        };
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..20 {
            let (nx, ny) = (x + t * dx, y + t * dy);
            if nx.is_finite() && ny.is_finite() {
                let nres = scaled_residuals(c1, c2, nx, ny);
                if norm(nres) < norm(res) {
                    x = nx;
                    y = ny;
                    res = nres;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Refinement {
        point: Point2::with_multiplicity(x, y, seed.multiplicity),
        residual: norm(res),
        iterations,
    }
}

/// Tangency measure at a point: `|g1 × g2| / (|g1| |g2|)`.
fn transversality(c1: &Conic, c2: &Conic, p: &Point2) -> f64 {
    let (ax, ay) = c1.gradient(p.x, p.y);
    let (bx, by) = c2.gradient(p.x, p.y);
    let n = ax.hypot(ay) * bx.hypot(by);
    if n == 0.0 {
        0.0
    } else {
        (ax * by - ay * bx).abs() / n
    }
}

/// All real intersection points, sorted by `x` then `y`.
///
/// Each point lies on both conics within `tol` (see [`Conic::on_curve`]);
/// points closer than `10·tol` are merged and their multiplicities added.
/// An empty list means the conics have no real common point.
pub fn intersect_conics(c1: &Conic, c2: &Conic, tol: f64) -> Result<Vec<Point2>> {
    check_pair(c1, c2)?;
    if c1.y_degree() == 0 || c2.y_degree() == 0 {
        let swapped = intersect_in_x(&c1.swapped(), &c2.swapped(), tol)?;
        let mut points: Vec<Point2> = swapped
            .into_iter()
            .map(|p| Point2::with_multiplicity(p.y, p.x, p.multiplicity))
            .collect();
        sort_points(&mut points);
        return Ok(points);
    }
    intersect_in_x(c1, c2, tol)
}

fn sort_points(points: &mut [Point2]) {
    points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
}

fn intersect_in_x(c1: &Conic, c2: &Conic, tol: f64) -> Result<Vec<Point2>> {
    let eliminant = eliminate_to_quartic(c1, c2)?;
    let roots = univariate::real_roots(&eliminant);

    let mut points: Vec<Point2> = Vec::new();
    for &(x, mult) in &roots {
        let scale = x.abs().max(1.0);
        let cluster = match mult {
            1 => 1e-6,
            2 => 1e-6,
            3 => 1e-4,
            _ => 2e-3,
        } * scale;
        let mut found: Vec<Point2> = Vec::new();
        for conic in [c1, c2] {
            for y in conic.solve_y(x, DISCRIMINANT_SLACK) {
                if !y.is_finite() {
                    continue;
                }
                let on_both = |p: &Point2| c1.on_curve(p.x, p.y, tol) && c2.on_curve(p.x, p.y, tol);
                let raw = Point2::new(x, y);
                // At a multiple root the abscissa is already accurate, while
                // Newton stalls on the nearly singular Jacobian.
                let refined = if mult > 1 && on_both(&raw) {
                    raw
                } else {
                    newton_refine(c1, c2, raw).point
                };
                // A candidate that converged onto a neighbouring root belongs
                // to that root's own pass.
                let offset = (refined.x - x).abs();
                let closer_root = roots.iter().any(|&(r, _)| (refined.x - r).abs() < offset);
                if offset > cluster || closer_root || !on_both(&refined) {
                    continue;
                }
                let dedupe = (10.0 * tol).max(10.0 * cluster)
                    * refined.x.abs().max(refined.y.abs()).max(1.0);
                if found.iter().all(|q| q.distance(&refined) > dedupe) {
                    found.push(refined);
                }
            }
        }
        if found.is_empty() {
            continue;
        }
        // Distribute the eliminant multiplicity: one per point, the rest to
        // the most tangential contacts.
        let k = found.len() as u32;
        if k <= mult {
            let mut extra = mult - k;
            let mut order: Vec<usize> = (0..found.len()).collect();
            order.sort_by(|&i, &j| {
                transversality(c1, c2, &found[i]).total_cmp(&transversality(c1, c2, &found[j]))
            });
            let mut idx = 0;
            while extra > 0 {
                found[order[idx % order.len()]].multiplicity += 1;
                extra -= 1;
                idx += 1;
            }
        }
        points.extend(found);
    }

    let mut merged: Vec<Point2> = Vec::new();
    sort_points(&mut points);
    for p in points {
        let radius = 10.0 * tol * p.x.abs().max(p.y.abs()).max(1.0);
        match merged.iter_mut().find(|q| q.distance(&p) <= radius) {
            Some(q) => q.multiplicity += p.multiplicity,
            None => merged.push(p),
        }
    }
    // Two conics without a common component meet in at most
    // `deg(eliminant)` points. Any surplus comes from far-off candidates that
    // pass the scale-relative test only because the scale is huge.
    let degree = eliminant.len().saturating_sub(1) as u32;
    let misfit = |p: &Point2| {
        let (r1, r2) = scaled_residuals(c1, c2, p.x, p.y);
        r1.abs() + r2.abs()
    };
    while merged.iter().map(|p| p.multiplicity).sum::<u32>() > degree {
        let worst = (0..merged.len())
            .max_by(|&i, &j| misfit(&merged[i]).total_cmp(&misfit(&merged[j])))
            .expect("a positive total has a point");
        merged.remove(worst);
    }
    sort_points(&mut merged);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conic(k: [f64; 6]) -> Conic {
        Conic::from_coefficients(k).unwrap()
    }

    fn unit_parabola() -> Conic {
        conic([1.0, 0.0, 0.0, 0.0, -1.0, 0.0])
    }

    #[test]
    fn eliminant_of_parabola_and_circle() {
        let circle = conic([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let e = eliminate_to_quartic(&unit_parabola(), &circle).unwrap();
        // Proportional to x⁴ + x² - 1.
        assert_eq!(e.len(), 5);
        let k = e[4];
        let expected = [-1.0, 0.0, 1.0, 0.0, 1.0];
        for (c, x) in e.iter().zip(expected) {
            assert!((c / k - x).abs() < 1e-15);
        }
    }

    #[test]
    fn eliminant_of_hyperbola_and_parabola_is_cubic() {
        let hyperbola = conic([0.0, 1.0, 0.0, 0.0, 0.0, -1.0]);
        let e = eliminate_to_quartic(&hyperbola, &unit_parabola()).unwrap();
        assert_eq!(e.len(), 4);
        let k = e[3];
        for (c, x) in e.iter().zip([-1.0, 0.0, 0.0, 1.0]) {
            assert!((c / k - x).abs() < 1e-15);
        }
    }

    #[test]
    fn proportional_conics_are_rejected() {
        let u = conic([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let v = conic([3.0, 0.0, 3.0, 0.0, 0.0, -3.0]);
        assert_eq!(eliminate_to_quartic(&u, &v), Err(Error::ProportionalConics));
        assert_eq!(
            intersect_conics(&u, &v, DEFAULT_TOL),
            Err(Error::ProportionalConics)
        );
    }

    #[test]
    fn a_line_is_not_a_conic() {
        assert_eq!(
            Conic::new(0.0, 0.0, 0.0, 0.0, 1.0, -4.0),
            Err(Error::NotQuadratic)
        );
    }

    #[test]
    fn parabola_and_unit_circle() {
        let circle = conic([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let pts = intersect_conics(&unit_parabola(), &circle, DEFAULT_TOL).unwrap();
        // y² + y - 1 = 0, y = (√5 - 1)/2, x = ±√y.
        let y = (5.0_f64.sqrt() - 1.0) / 2.0;
        let x = y.sqrt();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].x + x).abs() < 1e-14 && (pts[0].y - y).abs() < 1e-14);
        assert!((pts[1].x - x).abs() < 1e-14 && (pts[1].y - y).abs() < 1e-14);
        assert!((x - 0.7861513778).abs() < 1e-10 && (y - 0.6180339887).abs() < 1e-10);
        assert!(pts.iter().all(|p| p.multiplicity == 1));
    }

    #[test]
    fn parabola_and_type13_circle() {
        let circle = conic([1.0, 0.0, 1.0, -10.0, 0.0, 0.0]);
        let pts = intersect_conics(&unit_parabola(), &circle, DEFAULT_TOL).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts[0].x.abs() < 1e-14 && pts[0].y.abs() < 1e-14);
        assert!((pts[1].x - 2.0).abs() < 1e-14 && (pts[1].y - 4.0).abs() < 1e-13);
    }

    fn type14_tangent_pair() -> (Conic, Conic) {
        // b = 3, c = 2: √3·y = x² and y² = x(x - 2/3).
        let s = 3.0_f64.sqrt();
        (
            conic([1.0, 0.0, 0.0, 0.0, -s, 0.0]),
            conic([-1.0, 0.0, 1.0, 2.0 / 3.0, 0.0, 0.0]),
        )
    }

    #[test]
    fn tangency_reports_multiplicity_two() {
        let (p, h) = type14_tangent_pair();
        let pts = intersect_conics(&p, &h, DEFAULT_TOL).unwrap();
        let tangent: Vec<_> = pts.iter().filter(|q| q.x > 0.5).collect();
        assert_eq!(tangent.len(), 1);
        let t = tangent[0];
        assert_eq!(t.multiplicity, 2);
        assert!((t.x - 1.0).abs() < 1e-9);
        assert!((t.y - 1.0 / 3.0_f64.sqrt()).abs() < 1e-9);
        // x(x - 1)²(x + 2): the other points are the origin and x = -2.
        let total: u32 = pts.iter().map(|q| q.multiplicity).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn newton_examples() {
        let circle = conic([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        let y = (5.0_f64.sqrt() - 1.0) / 2.0;
        let exact = Point2::new(y.sqrt(), y);
        let r = newton_refine(&unit_parabola(), &circle, exact);
        assert!((r.point.x - exact.x).abs() < 1e-15 && (r.point.y - exact.y).abs() < 1e-15);

        let r = newton_refine(&unit_parabola(), &circle, Point2::new(0.79, 0.62));
        assert!((r.point.x - 0.7861513778).abs() < 1e-10);
        assert!((r.point.y - 0.6180339887).abs() < 1e-10);
        assert!(r.residual <= 1e-12);

        let (p, h) = type14_tangent_pair();
        let r = newton_refine(&p, &h, Point2::new(1.001, 0.578));
        assert!(r.residual <= 1e-8);
        assert!((r.point.x - 1.0).abs() < 1e-4);
    }

    #[test]
    fn disjoint_conics_give_empty_list() {
        let a = Conic::circle(0.0, 0.0, 1.0).unwrap();
        let b = Conic::circle(5.0, 0.0, 1.0).unwrap();
        assert!(intersect_conics(&a, &b, DEFAULT_TOL).unwrap().is_empty());
    }

    #[test]
    fn two_points_sharing_an_abscissa() {
        let a = Conic::circle(0.0, 0.0, 4.0).unwrap();
        let b = Conic::circle(2.0, 0.0, 4.0).unwrap();
        let pts = intersect_conics(&a, &b, DEFAULT_TOL).unwrap();
        assert_eq!(pts.len(), 2);
        let h = 3.0_f64.sqrt();
        assert!((pts[0].x - 1.0).abs() < 1e-12 && (pts[0].y + h).abs() < 1e-12);
        assert!((pts[1].x - 1.0).abs() < 1e-12 && (pts[1].y - h).abs() < 1e-12);
        assert!(pts.iter().all(|p| p.multiplicity == 1));
    }

    #[test]
    fn osculating_circle_has_contact_four() {
        // x² + (y - 1/2)² = 1/4 against y = x²: eliminant x⁴.
        let circle = Conic::circle(0.0, 0.5, 0.25).unwrap();
        let pts = intersect_conics(&unit_parabola(), &circle, DEFAULT_TOL).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].multiplicity, 4);
        assert!(pts[0].x.abs() < 1e-3 && pts[0].y.abs() < 1e-6);
    }

    #[test]
    fn vertical_line_pair_is_handled_by_swapping() {
        // x² - 1 = 0 has no y term; meet it with the unit circle.
        let lines = conic([1.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
        let circle = Conic::circle(0.0, 0.0, 2.0).unwrap();
        let pts = intersect_conics(&lines, &circle, DEFAULT_TOL).unwrap();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert!((p.x.abs() - 1.0).abs() < 1e-12 && (p.y.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn shared_component_is_reported() {
        // y(y - 1) = 0 and y(y - x) = 0 share the line y = 0.
        let a = conic([0.0, 0.0, 1.0, 0.0, -1.0, 0.0]);
        let b = conic([0.0, -1.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            intersect_conics(&a, &b, DEFAULT_TOL),
            Err(Error::CommonComponent)
        );
    }
}
