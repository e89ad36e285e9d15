//! Real roots, with multiplicity, of the degree ≤ 4 eliminant.
//!
//! All roots are first computed in complex arithmetic by closed forms
//! (Cardano for cubics, Ferrari for quartics) and polished by complex Newton.
//! Nearby roots are then grouped into clusters whose size is the root
//! multiplicity; each real cluster centre is refined as a simple root of the
//! `(k-1)`-th derivative.

use num_complex::Complex64;

/// Cluster radius for a k-fold root, relative to `max(1, |x|)`.
/// Closed forms locate a k-fold root only to about `eps^(1/k)`.
const CLUSTER_RADIUS: [f64; 5] = [0.0, 0.0, 1e-7, 5e-5, 1e-3];
/// An unclustered root is real when its imaginary part is below this.
const SIMPLE_IMAG_TOL: f64 = 1e-8;

/// Ascending-power polynomial (index = power) with trailing zeros removed,
/// relative to the largest coefficient.
pub(crate) fn trim(coeffs: &[f64], rel: f64) -> Vec<f64> {
    let m = coeffs.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let mut out = coeffs.to_vec();
    while let Some(&last) = out.last() {
        if last.abs() <= rel * m {
            out.pop();
        } else {
            break;
        }
    }
    out
}

fn eval_real(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn eval_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

fn quadratic(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let mut s = (b * b - 4.0 * a * c).sqrt();
    if (b.conj() * s).re < 0.0 {
        s = -s;
    }
    let t = -0.5 * (b + s);
    if t.norm() == 0.0 {
        return [t, t];
    }
    [t / a, c / t]
}

/// Roots of the monic cubic `x³ + a x² + b x + c`.
fn cubic(a: f64, b: f64, c: f64) -> [Complex64; 3] {
    let shift = a / 3.0;
    let p = b - a * shift;
    let q = c - b * shift + 2.0 * shift * shift * shift;
    let half_q = Complex64::new(q / 2.0, 0.0);
    let mut s = (half_q * half_q + Complex64::new(p * p * p / 27.0, 0.0)).sqrt();
    if (half_q.conj() * s).re > 0.0 {
        s = -s;
    }
    let u3 = -half_q + s;
    let omega = Complex64::new(-0.5, 3.0_f64.sqrt() / 2.0);
    if u3.norm() == 0.0 {
        let t = Complex64::new(-q, 0.0).cbrt();
        let z = Complex64::new(shift, 0.0);
        return [t - z, t * omega - z, t * omega * omega - z];
    }
    let u = u3.powf(1.0 / 3.0);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    let mut w = Complex64::new(1.0, 0.0);
    for slot in &mut out {
        let uk = u * w;
        *slot = uk - p / (3.0 * uk) - shift;
        w *= omega;
    }
    out
}

/// Roots of the monic quartic `x⁴ + a x³ + b x² + c x + d`.
fn quartic(a: f64, b: f64, c: f64, d: f64) -> [Complex64; 4] {
    let shift = a / 4.0;
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let ys: [Complex64; 4] = if q == 0.0 {
        let [w1, w2] = quadratic(one, Complex64::new(p, 0.0), Complex64::new(r, 0.0));
        let (s1, s2) = (w1.sqrt(), w2.sqrt());
        [s1, -s1, s2, -s2]
    } else {
        // Resolvent: 8m³ + 8p m² + (2p² - 8r) m - q² = 0.
        let ms = cubic(p, p * p / 4.0 - r, -q * q / 8.0);
        let m = ms
            .into_iter()
            .max_by(|u, v| u.norm().total_cmp(&v.norm()))
            .unwrap_or(zero);
        let s = (2.0 * m).sqrt();
        if s.norm() == 0.0 {
            let [w1, w2] = quadratic(one, Complex64::new(p, 0.0), Complex64::new(r, 0.0));
            let (s1, s2) = (w1.sqrt(), w2.sqrt());
            [s1, -s1, s2, -s2]
        } else {
            let half_p_m = p / 2.0 + m;
            let k = q / (2.0 * s);
            let [y1, y2] = quadratic(one, s, half_p_m - k);
            let [y3, y4] = quadratic(one, -s, half_p_m + k);
            [y1, y2, y3, y4]
        }
    };
    ys.map(|y| y - shift)
}

fn polish(coeffs: &[f64], z: Complex64) -> Complex64 {
    let deriv = derivative(coeffs);
    let mut z = z;
    let mut fz = eval_complex(coeffs, z).norm();
    for _ in 0..16 {
        let d = eval_complex(&deriv, z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - eval_complex(coeffs, z) / d;
        let fnext = eval_complex(coeffs, next).norm();
        if !(fnext < fz) {
            break;
        }
        z = next;
        fz = fnext;
    }
    z
}

/// All complex roots of an ascending-power polynomial of degree ≤ 4.
pub(crate) fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let coeffs = trim(coeffs, 0.0);
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let m: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let raw: Vec<Complex64> = match n {
        1 => vec![Complex64::new(-m[0], 0.0)],
        2 => quadratic(
            Complex64::new(1.0, 0.0),
            Complex64::new(m[1], 0.0),
            Complex64::new(m[0], 0.0),
        )
        .to_vec(),
        3 => cubic(m[2], m[1], m[0]).to_vec(),
        4 => quartic(m[3], m[2], m[1], m[0]).to_vec(),
        _ => panic!("degree {n} above 4"),
    };
    raw.into_iter().map(|z| polish(&m, z)).collect()
}

fn refine_real(coeffs: &[f64], start: f64, radius: f64) -> f64 {
    let deriv = derivative(coeffs);
    let mut x = start;
    for _ in 0..32 {
        let d = eval_real(&deriv, x);
        if d == 0.0 {
            break;
        }
        let step = eval_real(coeffs, x) / d;
        let next = x - step;
        if !next.is_finite() || (next - start).abs() > radius {
            break;
        }
        if next == x || step.abs() <= f64::EPSILON * x.abs() {
            x = next;
            break;
        }
        x = next;
    }
    x
}

/// Real roots with multiplicity, sorted ascending.
pub fn real_roots(coeffs: &[f64]) -> Vec<(f64, u32)> {
    let coeffs = trim(coeffs, 0.0);
    let roots = complex_roots(&coeffs);
    let n = roots.len();
    let mut unassigned: Vec<bool> = vec![true; n];
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for k in (2..=n).rev() {
        loop {
            let mut found = None;
            for mask in 1u32..(1 << n) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                if members.iter().any(|&i| !unassigned[i]) {
                    continue;
                }
                let centre = members.iter().map(|&i| roots[i]).sum::<Complex64>() / k as f64;
                let radius = CLUSTER_RADIUS[k] * centre.norm().max(1.0);
                if members
                    .iter()
                    .all(|&i| (roots[i] - centre).norm() <= radius)
                {
                    found = Some((members, centre));
                    break;
                }
            }
            match found {
                Some((members, centre)) => {
                    for i in members {
                        unassigned[i] = false;
                    }
                    clusters.push((centre, k));
                }
                None => break,
            }
        }
    }
    for (i, free) in unassigned.iter().enumerate() {
        if *free {
            clusters.push((roots[i], 1));
        }
    }

    let mut out = Vec::new();
    for (centre, k) in clusters {
        let scale = centre.norm().max(1.0);
        let imag_tol = if k == 1 {
            SIMPLE_IMAG_TOL
        } else {
            CLUSTER_RADIUS[k]
        };
        if centre.im.abs() > imag_tol * scale {
            continue;
        }
        let mut target = coeffs.clone();
        for _ in 1..k {
            target = derivative(&target);
        }
        let radius = CLUSTER_RADIUS[k.max(2)] * scale;
        let x = refine_real(&target, centre.re, radius);
        out.push((x, k as u32));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(roots: &[f64]) -> Vec<f64> {
        roots.iter().fold(vec![1.0], |acc, &r| {
            let mut next = vec![0.0; acc.len() + 1];
            for (i, &c) in acc.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            next
        })
    }

    #[test]
    fn simple_roots() {
        let r = real_roots(&expand(&[1.0, 2.0, -3.0]));
        assert_eq!(r.len(), 3);
        for ((x, m), e) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((x - e).abs() < 1e-13);
            assert_eq!(*m, 1);
        }
    }

    #[test]
    fn multiple_roots() {
        let r = real_roots(&expand(&[-1.0, -1.0, 2.0]));
        assert_eq!(r.len(), 2);
        assert!((r[0].0 + 1.0).abs() < 1e-12 && r[0].1 == 2);
        assert!((r[1].0 - 2.0).abs() < 1e-13 && r[1].1 == 1);

        let r = real_roots(&expand(&[1.0, 1.0, 1.0, 1.0]));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].1, 4);
        assert!((r[0].0 - 1.0).abs() < 1e-10);

        let r = real_roots(&expand(&[0.5, 0.5, 0.5, -2.0]));
        assert_eq!(r.iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 3]);
        assert!((r[1].0 - 0.5).abs() < 1e-10);
    }

    #[test]
    fn perturbed_double_root_is_still_double() {
        // x⁴ - 3x² + 2x with the 3 replaced by sqrt(3)².
        let s = 3.0_f64.sqrt();
        let r = real_roots(&[0.0, 2.0, -(s * s), 0.0, 1.0]);
        let mult: Vec<u32> = r.iter().map(|x| x.1).collect();
        assert_eq!(mult, vec![1, 1, 2]);
        assert!((r[2].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn no_real_roots() {
        assert!(real_roots(&[1.0, 0.0, 0.0, 0.0, 1.0]).is_empty());
        assert!(real_roots(&[1.0, 0.0, 1.0]).is_empty());
        assert!(real_roots(&[3.0]).is_empty());
    }

    #[test]
    fn low_degree() {
        let r = real_roots(&[-6.0, 2.0]);
        assert_eq!(r, vec![(3.0, 1)]);
        let r = real_roots(&[-1.0, 0.0, 0.0, 1.0]);
        assert_eq!(r.len(), 1);
        assert!((r[0].0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn trims_leading_zeros() {
        assert_eq!(trim(&[1.0, 2.0, 0.0, 1e-20], 1e-14), vec![1.0, 2.0]);
    }
}
