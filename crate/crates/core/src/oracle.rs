//! Closed-form real roots of cubics and quartics.
//!
//! This is the ground truth the geometric solvers are checked against, so it
//! deliberately shares nothing with them: real-valued discriminant branches
//! (trigonometric form for three real roots, Cardano's cube roots for one),
//! a resolvent cubic for quartics, and its own evaluation and polishing.

use crate::poly::{Cubic, Quartic};
pub use crate::report::{Method, Root, RootReport};

/// Roots closer than this, relative to `max(1, |x|)`, are one multiple root.
pub const MERGE_TOL: f64 = 1e-7;

fn eval(monic_desc: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in monic_desc {
        acc = acc * x + c;
    }
    acc
}

fn derivative_desc(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| c * (n - i) as f64)
        .collect()
}

fn newton(coeffs: &[f64], start: f64, max_move: f64) -> f64 {
    if coeffs.len() < 2 {
        return start;
    }
    let d = derivative_desc(coeffs);
    let mut x = start;
    let mut fx = eval(coeffs, x).abs();
    for _ in 0..24 {
        let slope = eval(&d, x);
        if slope == 0.0 || fx == 0.0 {
            break;
        }
        let next = x - eval(coeffs, x) / slope;
        let fnext = eval(coeffs, next).abs();
        if !next.is_finite() || (next - start).abs() > max_move || fnext >= fx {
            break;
        }
        x = next;
        fx = fnext;
    }
    x
}

/// Real roots of `t³ + p t + q`.
fn depressed_cubic(p: f64, q: f64) -> Vec<f64> {
    if p == 0.0 {
        if q == 0.0 {
            return vec![0.0; 3];
        }
        return vec![(-q).cbrt()];
    }
    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;
    if disc > 0.0 {
        // One real root; u is taken on the side without cancellation.
        let s = disc.sqrt();
        let u = (-half_q - half_q.signum() * s).cbrt();
        let v = if u == 0.0 { 0.0 } else { -third_p / u };
        let t = u + v;
        let pair_re = -t / 2.0;
        let pair_im = 3.0_f64.sqrt() / 2.0 * (u - v).abs();
        if pair_im <= 0.5 * MERGE_TOL * pair_re.abs().max(1.0) {
            vec![t, pair_re, pair_re]
        } else {
            vec![t]
        }
    } else {
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        vec![
            m * theta.cos(),
            m * (theta - tau).cos(),
            m * (theta - 2.0 * tau).cos(),
        ]
    }
}

/// Real roots of `y² + b y + c`, keeping a double root when the
/// discriminant is negative by less than the merge tolerance allows.
fn real_quadratic(b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * c;
    let centre = -b / 2.0;
    if disc < 0.0 {
        let im = (-disc).sqrt() / 2.0;
        if im <= 0.5 * MERGE_TOL * centre.abs().max(1.0) {
            return vec![centre, centre];
        }
        return Vec::new();
    }
    let s = disc.sqrt();
    let t = -0.5 * (b + b.signum() * s);
    if t == 0.0 {
        return vec![0.0, 0.0];
    }
    vec![t, c / t]
}

/// Real roots of `y⁴ + p y² + q y + r`.
fn depressed_quartic(p: f64, q: f64, r: f64) -> Vec<f64> {
    let size = 1.0_f64.max(p.abs()).max(r.abs().sqrt());
    if q.abs() <= 1e-15 * size * size.sqrt() {
        let mut out = Vec::new();
        for w in real_quadratic(p, r) {
            if w > 0.0 {
                let s = w.sqrt();
                out.extend([s, -s]);
            } else if -w <= (0.5 * MERGE_TOL).powi(2) {
                // Imaginary pair close enough to zero to merge.
                out.extend([0.0, 0.0]);
            }
        }
        return out;
    }
    // Resolvent 8m³ + 8p m² + (2p² - 8r) m - q² = 0, shifted to depressed
    // form m = u - p/3 and solved by the real branches above.
    let (b2, b1, b0) = (p, p * p / 4.0 - r, -q * q / 8.0);
    let shift = b2 / 3.0;
    let dp = b1 - b2 * shift;
    let dq = b0 - b1 * shift + 2.0 * shift * shift * shift;
    let resolvent = [1.0, b2, b1, b0];
    let m = depressed_cubic(dp, dq)
        .into_iter()
        .map(|u| u - shift)
        .map(|m| newton(&resolvent, m, m.abs().max(1.0)))
        .fold(f64::NEG_INFINITY, f64::max);
    if !(m > 0.0) {
        return Vec::new();
    }
    let s = (2.0 * m).sqrt();
    let base = p / 2.0 + m;
    let k = q / (2.0 * s);
    let mut out = real_quadratic(s, base - k);
    out.extend(real_quadratic(-s, base + k));
    out
}

/// Polishes, merges and reports the raw candidates against `coeffs`
/// (highest degree first, leading coefficient not necessarily 1).
fn finish(coeffs: &[f64], candidates: Vec<f64>) -> RootReport {
    let lead = coeffs[0];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let mut xs: Vec<f64> = candidates
        .into_iter()
        .filter(|x| x.is_finite())
        .map(|x| newton(&monic, x, 1e-3 * x.abs().max(1.0)))
        .collect();
    xs.sort_by(f64::total_cmp);

    let mut groups: Vec<Vec<f64>> = Vec::new();
    for x in xs {
        match groups.last_mut() {
            Some(g) if (x - g[g.len() - 1]).abs() <= MERGE_TOL * x.abs().max(1.0) => g.push(x),
            _ => groups.push(vec![x]),
        }
    }

    let scale_of = |x: f64| {
        let cmax = coeffs.iter().fold(1.0_f64, |m, c| m.max(c.abs()));
        cmax * x.abs().max(1.0).powi(coeffs.len() as i32 - 1)
    };
    let mut roots = Vec::new();
    let mut residual_max = 0.0_f64;
    for g in groups {
        let k = g.len();
        let mean = g.iter().sum::<f64>() / k as f64;
        let mut target = monic.clone();
        for _ in 1..k {
            target = derivative_desc(&target);
        }
        let value = if k == 1 {
            mean
        } else {
            newton(&target, mean, MERGE_TOL * mean.abs().max(1.0))
        };
        residual_max = residual_max.max(eval(coeffs, value).abs() / scale_of(value));
        roots.push(Root {
            value,
            multiplicity: k as u32,
        });
    }
    RootReport::new(Method::Oracle, roots, residual_max)
}

pub fn solve_cubic_oracle(cubic: &Cubic) -> RootReport {
    let coeffs = [cubic.c3, cubic.c2, cubic.c1, cubic.c0];
    let (a, b, c) = (
        cubic.c2 / cubic.c3,
        cubic.c1 / cubic.c3,
        cubic.c0 / cubic.c3,
    );
    let shift = a / 3.0;
    let p = b - a * shift;
    let q = c - b * shift + 2.0 * shift * shift * shift;
    let raw = depressed_cubic(p, q)
        .into_iter()
        .map(|t| t - shift)
        .collect();
    finish(&coeffs, raw)
}

pub fn solve_quartic_oracle(quartic: &Quartic) -> RootReport {
    let coeffs = [quartic.q4, quartic.q3, quartic.q2, quartic.q1, quartic.q0];
    let n = quartic.q4;
    let (a, b, c, d) = (
        quartic.q3 / n,
        quartic.q2 / n,
        quartic.q1 / n,
        quartic.q0 / n,
    );
    let shift = a / 4.0;
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    let raw = depressed_quartic(p, q, r)
        .into_iter()
        .map(|y| y - shift)
        .collect();
    finish(&coeffs, raw)
}

/// Keeps roots strictly greater than `tol`.
pub fn positive_roots(report: &RootReport, tol: f64) -> RootReport {
    let roots = report
        .roots
        .iter()
        .copied()
        .filter(|r| r.value > tol)
        .collect();
    RootReport::new(report.method, roots, report.residual_max)
}
