//! SVG figures of conic constructions.
//!
//! Each conic is rotated to its principal axes and written as one or more
//! parametric branches: an ellipse by `cos/sin`, each hyperbola branch by
//! `±cosh/sinh`, a parabola as a graph over its axis, and degenerate conics
//! as lines. Only the parameter runs that land inside the frame are kept,
//! then resampled and refined until the chords track the curve.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::conics::{Conic, ConicClass};
use crate::descartes::{descartes_construction, solve_descartes};
use crate::error::{Error, Result};
use crate::intersect::Point2;
use crate::khayyam::{solve_points, ConstructionPlan, CurvePair};
use crate::poly::DepressedForm;

const MIN_SEGMENTS: usize = 256;
const SCAN_STEPS: usize = 2048;
const MAX_DEPTH: u32 = 8;
/// Largest allowed gap in pixels between a chord midpoint and the curve.
const CHORD_TOLERANCE_PX: f64 = 0.2;
const PADDING: f64 = 0.05;
const RELATIVE_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveStyle {
    Solid,
    Dashed,
    Dotted,
}

impl CurveStyle {
    fn dash(self) -> Option<&'static str> {
        match self {
            Self::Solid => None,
            Self::Dashed => Some("6 4"),
            Self::Dotted => Some("2 3"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureCurve {
    pub conic: Conic,
    pub label: String,
    pub style: CurveStyle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigurePoint {
    pub point: Point2,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Viewport {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        Self {
            xmin,
            xmax,
            ymin,
            ymax,
        }
    }

    fn is_valid(&self) -> bool {
        [self.xmin, self.xmax, self.ymin, self.ymax]
            .iter()
            .all(|v| v.is_finite())
            && self.xmin < self.xmax
            && self.ymin < self.ymax
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.xmin && x <= self.xmax && y >= self.ymin && y <= self.ymax
    }

    /// Smallest box around `points`, widened by `margin` of its extent and
    /// to at least `min_extent` on each side.
    pub fn around(points: &[(f64, f64)], margin: f64, min_extent: f64) -> Self {
        let finite = points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite());
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
        for (i, &(x, y)) in finite.enumerate() {
            if i == 0 {
                (xmin, xmax, ymin, ymax) = (x, x, y, y);
            } else {
                xmin = xmin.min(x);
                xmax = xmax.max(x);
                ymin = ymin.min(y);
                ymax = ymax.max(y);
            }
        }
        let widen = |lo: f64, hi: f64| {
            let extent = (hi - lo).max(min_extent);
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * extent * (1.0 + 2.0 * margin);
            (mid - half, mid + half)
        };
        let (xmin, xmax) = widen(xmin, xmax);
        let (ymin, ymax) = widen(ymin, ymax);
        Self::new(xmin, xmax, ymin, ymax)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureSpec {
    pub curves: Vec<FigureCurve>,
    pub points: Vec<FigurePoint>,
    pub viewport: Viewport,
    pub width_px: u32,
    pub height_px: u32,
    pub show_axes: bool,
}

/// Aspect-preserving world-to-pixel map for a figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelMap {
    scale: f64,
    world_left: f64,
    world_top: f64,
    width: f64,
    height: f64,
}

impl PixelMap {
    pub fn for_spec(spec: &FigureSpec) -> Result<Self> {
        if !spec.viewport.is_valid() {
            return Err(Error::InvalidFigure(
                "viewport must be a non-empty finite box",
            ));
        }
        if spec.width_px == 0 || spec.height_px == 0 {
            return Err(Error::InvalidFigure("figure dimensions must be positive"));
        }
        let v = spec.viewport;
        let (w, h) = (f64::from(spec.width_px), f64::from(spec.height_px));
        let pad_x = PADDING * (v.xmax - v.xmin);
        let pad_y = PADDING * (v.ymax - v.ymin);
        let world_w = v.xmax - v.xmin + 2.0 * pad_x;
        let world_h = v.ymax - v.ymin + 2.0 * pad_y;
        let scale = (w / world_w).min(h / world_h);
        let cx = 0.5 * (v.xmin + v.xmax);
        let cy = 0.5 * (v.ymin + v.ymax);
        Ok(Self {
            scale,
            world_left: cx - 0.5 * w / scale,
            world_top: cy + 0.5 * h / scale,
            width: w,
            height: h,
        })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn to_pixel(&self, x: f64, y: f64) -> (f64, f64) {
        (
            (x - self.world_left) * self.scale,
            (self.world_top - y) * self.scale,
        )
    }

    pub fn to_world(&self, px: f64, py: f64) -> (f64, f64) {
        (
            self.world_left + px / self.scale,
            self.world_top - py / self.scale,
        )
    }

    /// The region of the plane covered by the whole canvas.
    pub fn visible(&self) -> Viewport {
        let (x0, y1) = self.to_world(0.0, 0.0);
        let (x1, y0) = self.to_world(self.width, self.height);
        Viewport::new(x0, x1, y0, y1)
    }
}

/// Conic in principal axes: `x = u·cosθ - v·sinθ`, `y = u·sinθ + v·cosθ`.
#[derive(Debug, Clone, Copy)]
struct Frame {
    cos: f64,
    sin: f64,
}

impl Frame {
    fn to_world(&self, u: f64, v: f64) -> (f64, f64) {
        (u * self.cos - v * self.sin, u * self.sin + v * self.cos)
    }

    fn to_local(&self, x: f64, y: f64) -> (f64, f64) {
        (x * self.cos + y * self.sin, -x * self.sin + y * self.cos)
    }
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    /// `u = u0 + a·cos t`, `v = v0 + b·sin t`.
    Ellipse { u0: f64, v0: f64, a: f64, b: f64 },
    /// `u = u0 + σ·a·cosh t`, `v = v0 + b·sinh t`, or with `u` and `v`
    /// exchanged when `transverse_v`.
    Hyperbola {
        u0: f64,
        v0: f64,
        a: f64,
        b: f64,
        sign: f64,
        transverse_v: bool,
    },
    /// `v = k2·t² + k1·t + k0` with `u = t`, or the roles exchanged.
    Graph {
        k2: f64,
        k1: f64,
        k0: f64,
        over_v: bool,
    },
    /// `(u, v) = p + t·d` with `d` of unit length.
    Line { pu: f64, pv: f64, du: f64, dv: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Branch {
    frame: Frame,
    shape: Shape,
}

impl Branch {
    fn local(&self, t: f64) -> (f64, f64) {
        match self.shape {
            Shape::Ellipse { u0, v0, a, b } => (u0 + a * t.cos(), v0 + b * t.sin()),
            Shape::Hyperbola {
                u0,
                v0,
                a,
                b,
                sign,
                transverse_v,
            } => {
                let (p, q) = (sign * a * t.cosh(), b * t.sinh());
                if transverse_v {
                    (u0 + q, v0 + p)
                } else {
                    (u0 + p, v0 + q)
                }
            }
            Shape::Graph { k2, k1, k0, over_v } => {
                let w = (k2 * t + k1) * t + k0;
                if over_v {
                    (w, t)
                } else {
                    (t, w)
                }
            }
            Shape::Line { pu, pv, du, dv } => (pu + t * du, pv + t * dv),
        }
    }

    fn eval(&self, t: f64) -> (f64, f64) {
        let (u, v) = self.local(t);
        self.frame.to_world(u, v)
    }

    /// A parameter interval outside of which the branch cannot meet a
    /// disc of radius `radius` around the world point `(cx, cy)`.
    fn range(&self, cx: f64, cy: f64, radius: f64) -> (f64, f64) {
        let (uc, vc) = self.frame.to_local(cx, cy);
        match self.shape {
            Shape::Ellipse { .. } => (0.0, 2.0 * PI),
            Shape::Hyperbola {
                u0,
                v0,
                b,
                transverse_v,
                ..
            } => {
                let conjugate_gap = if transverse_v {
                    (u0 - uc).abs()
                } else {
                    (v0 - vc).abs()
                };
                let t = ((conjugate_gap + radius) / b).asinh() * 1.01 + 1e-3;
                (-t, t)
            }
            Shape::Graph { over_v, .. } => {
                let c = if over_v { vc } else { uc };
                (c - radius, c + radius)
            }
            Shape::Line { pu, pv, du, dv } => {
                let proj = (uc - pu) * du + (vc - pv) * dv;
                (proj - radius, proj + radius)
            }
        }
    }

    fn is_closed(&self) -> bool {
        matches!(self.shape, Shape::Ellipse { .. })
    }
}

fn is_small(v: f64, scale: f64) -> bool {
    v.abs() <= RELATIVE_ZERO * scale
}

/// Splits a conic into parametric branches. Empty or single-point conics
/// give no branches.
fn branches(conic: &Conic) -> Vec<Branch> {
    let k = conic.normalized().coefficients();
    let [a, b, c, d, e, f] = k;
    let theta = 0.5 * b.atan2(a - c);
    let frame = Frame {
        cos: theta.cos(),
        sin: theta.sin(),
    };
    let (cs, sn) = (frame.cos, frame.sin);
    let mut a2 = a * cs * cs + b * cs * sn + c * sn * sn;
    let mut c2 = a * sn * sn - b * cs * sn + c * cs * cs;
    let d2 = d * cs + e * sn;
    let e2 = -d * sn + e * cs;
    let quad = a.abs().max(b.abs()).max(c.abs());
    if is_small(a2, quad) {
        a2 = 0.0;
    }
    if is_small(c2, quad) {
        c2 = 0.0;
    }
    let branch = |shape| Branch { frame, shape };

    if a2 != 0.0 && c2 != 0.0 {
        // a2 (u - u0)² + c2 (v - v0)² = kk
        let u0 = -d2 / (2.0 * a2);
        let v0 = -e2 / (2.0 * c2);
        let kk = a2 * u0 * u0 + c2 * v0 * v0 - f;
        let size = 1.0 + (a2 * u0 * u0).abs() + (c2 * v0 * v0).abs() + f.abs();
        if a2 * c2 > 0.0 {
            if kk / a2 <= 0.0 || is_small(kk, size) {
                return Vec::new();
            }
            let ra = (kk / a2).sqrt();
            let rb = (kk / c2).sqrt();
            return vec![branch(Shape::Ellipse {
                u0,
                v0,
                a: ra,
                b: rb,
            })];
        }
        if is_small(kk, size) {
            // Two lines crossing at the centre.
            let (su, sv) = (c2.abs().sqrt(), a2.abs().sqrt());
            let n = su.hypot(sv);
            return [1.0, -1.0]
                .iter()
                .map(|s| {
                    branch(Shape::Line {
                        pu: u0,
                        pv: v0,
                        du: su / n,
                        dv: s * sv / n,
                    })
                })
                .collect();
        }
        let transverse_v = kk / a2 < 0.0;
        let (ta, tb) = if transverse_v {
            ((kk / c2).sqrt(), (-kk / a2).sqrt())
        } else {
            ((kk / a2).sqrt(), (-kk / c2).sqrt())
        };
        return [1.0, -1.0]
            .iter()
            .map(|&sign| {
                branch(Shape::Hyperbola {
                    u0,
                    v0,
                    a: ta,
                    b: tb,
                    sign,
                    transverse_v,
                })
            })
            .collect();
    }

    // One squared term: a parabola or a pair of parallel lines.
    let (sq, lin_other, lin_self, over_v) = if a2 != 0.0 {
        (a2, e2, d2, false)
    } else {
        (c2, d2, e2, true)
    };
    let lin_scale = 1.0 + d2.abs().max(e2.abs()).max(f.abs());
    if !is_small(lin_other, lin_scale) {
        // other = -(sq·t² + lin_self·t + f) / lin_other
        return vec![branch(Shape::Graph {
            k2: -sq / lin_other,
            k1: -lin_self / lin_other,
            k0: -f / lin_other,
            over_v,
        })];
    }
    let disc = lin_self * lin_self - 4.0 * sq * f;
    if disc < 0.0 {
        return Vec::new();
    }
    let root = disc.sqrt();
    let mut positions = vec![(-lin_self + root) / (2.0 * sq)];
    if root > 0.0 {
        positions.push((-lin_self - root) / (2.0 * sq));
    }
    positions
        .into_iter()
        .map(|w| {
            let (pu, pv, du, dv) = if over_v {
                (0.0, w, 1.0, 0.0)
            } else {
                (w, 0.0, 0.0, 1.0)
            };
            branch(Shape::Line { pu, pv, du, dv })
        })
        .collect()
}

/// Points that should be on screen for the conic to be recognisable.
pub fn conic_landmarks(conic: &Conic) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for br in branches(conic) {
        match br.shape {
            Shape::Ellipse { .. } => {
                for i in 0..8 {
                    out.push(br.eval(i as f64 * PI / 4.0));
                }
            }
            Shape::Hyperbola { u0, v0, .. } => {
                out.push(br.frame.to_world(u0, v0));
                out.push(br.eval(0.0));
            }
            Shape::Graph { k2, k1, .. } => {
                out.push(br.eval(-k1 / (2.0 * k2)));
            }
            Shape::Line { pu, pv, .. } => out.push(br.frame.to_world(pu, pv)),
        }
    }
    out
}

fn inside(v: &Viewport, p: (f64, f64)) -> bool {
    v.contains(p.0, p.1)
}

/// Parameter intervals of the branch that are visible.
fn visible_runs(br: &Branch, view: &Viewport) -> Vec<(f64, f64)> {
    let cx = 0.5 * (view.xmin + view.xmax);
    let cy = 0.5 * (view.ymin + view.ymax);
    let radius = 0.5 * (view.xmax - view.xmin).hypot(view.ymax - view.ymin);
    let (mut t0, mut t1) = br.range(cx, cy, radius);
    let step = |t0: f64, t1: f64| (t1 - t0) / SCAN_STEPS as f64;
    let mut flags: Vec<bool> = (0..=SCAN_STEPS)
        .map(|i| inside(view, br.eval(t0 + i as f64 * step(t0, t1))))
        .collect();
    if br.is_closed() {
        match flags.iter().position(|f| !f) {
            None => return vec![(t0, t1)],
            Some(j) => {
                // Start the loop at a hidden point so no run wraps around.
                let shift = j as f64 * step(t0, t1);
                t0 += shift;
                t1 += shift;
                flags = (0..=SCAN_STEPS)
                    .map(|i| inside(view, br.eval(t0 + i as f64 * step(t0, t1))))
                    .collect();
            }
        }
    }
    let h = step(t0, t1);
    let mut runs = Vec::new();
    let mut i = 0;
    while i <= SCAN_STEPS {
        if !flags[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i <= SCAN_STEPS && flags[i] {
            i += 1;
        }
        let lo = start.saturating_sub(1);
        let hi = i.min(SCAN_STEPS);
        runs.push((t0 + lo as f64 * h, t0 + hi as f64 * h));
    }
    runs
}

fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn subdivide(
    br: &Branch,
    map: &PixelMap,
    (ta, pa): (f64, (f64, f64)),
    (tb, pb): (f64, (f64, f64)),
    depth: u32,
    out: &mut Vec<(f64, f64)>,
) {
    let tm = 0.5 * (ta + tb);
    let (wx, wy) = br.eval(tm);
    let pm = map.to_pixel(wx, wy);
    let gap = ((pa.0 + pb.0) * 0.5 - pm.0).hypot((pa.1 + pb.1) * 0.5 - pm.1);
    if depth < MAX_DEPTH && gap > CHORD_TOLERANCE_PX {
        subdivide(br, map, (ta, pa), (tm, pm), depth + 1, out);
        subdivide(br, map, (tm, pm), (tb, pb), depth + 1, out);
    } else {
        out.push(pb);
    }
}

fn sample_run(br: &Branch, map: &PixelMap, (t0, t1): (f64, f64)) -> Vec<(f64, f64)> {
    let h = (t1 - t0) / MIN_SEGMENTS as f64;
    let at = |t: f64| {
        let (x, y) = br.eval(t);
        map.to_pixel(x, y)
    };
    let mut out = vec![at(t0)];
    let mut prev = (t0, out[0]);
    for i in 1..=MIN_SEGMENTS {
        let t = if i == MIN_SEGMENTS {
            t1
        } else {
            t0 + i as f64 * h
        };
        let next = (t, at(t));
        subdivide(br, map, prev, next, 0, &mut out);
        prev = next;
    }
    out
}

fn path_data(runs: &[Vec<(f64, f64)>]) -> String {
    let mut d = String::new();
    for run in runs {
        for (i, (x, y)) in run.iter().enumerate() {
            if !d.is_empty() {
                d.push(' ');
            }
            d.push(if i == 0 { 'M' } else { 'L' });
            let _ = write!(d, "{} {}", fmt6(*x), fmt6(*y));
        }
    }
    d
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn class_slug(class: ConicClass) -> &'static str {
    match class {
        ConicClass::Parabola => "parabola",
        ConicClass::Circle => "circle",
        ConicClass::RectangularHyperbola => "rectangular-hyperbola",
        ConicClass::Ellipse => "ellipse",
        ConicClass::GeneralHyperbola => "hyperbola",
        ConicClass::Degenerate => "degenerate",
    }
}

const PALETTE: [&str; 4] = ["#1f4e79", "#9c2f2f", "#2f6b3a", "#6b4c9a"];

/// Renders the figure as an SVG 1.1 document.
pub fn render_figure(spec: &FigureSpec) -> Result<String> {
    let map = PixelMap::for_spec(spec)?;
    let view = map.visible();
    let (w, h) = (spec.width_px, spec.height_px);

    let mut paths = Vec::new();
    for (i, curve) in spec.curves.iter().enumerate() {
        let runs: Vec<Vec<(f64, f64)>> = branches(&curve.conic)
            .iter()
            .flat_map(|br| {
                visible_runs(br, &view)
                    .into_iter()
                    .map(|run| sample_run(br, &map, run))
                    .collect::<Vec<_>>()
            })
            .collect();
        if !runs.is_empty() {
            paths.push((i, curve, path_data(&runs)));
        }
    }
    if !spec.curves.is_empty() && paths.is_empty() {
        return Err(Error::EmptyViewport);
    }

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        svg,
        r#"<defs><clipPath id="frame"><rect x="0" y="0" width="{w}" height="{h}"/></clipPath></defs>"#
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        svg,
        r#"<g clip-path="url(#frame)" font-family="serif" font-size="14">"#
    );

    if spec.show_axes {
        let ax = 0.0_f64.clamp(view.xmin, view.xmax);
        let ay = 0.0_f64.clamp(view.ymin, view.ymax);
        let (x_left, y_axis) = map.to_pixel(view.xmin, ay);
        let (x_right, _) = map.to_pixel(view.xmax, ay);
        let (x_axis, y_top) = map.to_pixel(ax, view.ymax);
        let (_, y_bottom) = map.to_pixel(ax, view.ymin);
        let _ = writeln!(
            svg,
            r##"<line class="axis axis-x" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888888" stroke-width="1"/>"##,
            fmt6(x_left),
            fmt6(y_axis),
            fmt6(x_right),
            fmt6(y_axis)
        );
        let _ = writeln!(
            svg,
            r##"<line class="axis axis-y" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888888" stroke-width="1"/>"##,
            fmt6(x_axis),
            fmt6(y_top),
            fmt6(x_axis),
            fmt6(y_bottom)
        );
    }

    for (i, curve, d) in &paths {
        let dash = curve
            .style
            .dash()
            .map(|p| format!(r#" stroke-dasharray="{p}""#))
            .unwrap_or_default();
        let slug = class_slug(curve.conic.class());
        let _ = writeln!(
            svg,
            r#"<path class="conic conic-{slug}" data-conic="{slug}" data-label="{}" d="{d}" fill="none" stroke="{}" stroke-width="1.5"{dash}/>"#,
            escape(&curve.label),
            PALETTE[i % PALETTE.len()]
        );
    }

    for p in &spec.points {
        let (px, py) = map.to_pixel(p.point.x, p.point.y);
        let _ = writeln!(
            svg,
            r##"<circle class="point" data-label="{}" cx="{}" cy="{}" r="3" fill="#000000"/>"##,
            escape(&p.label),
            fmt6(px),
            fmt6(py)
        );
        let _ = writeln!(
            svg,
            r#"<text class="label" x="{}" y="{}">{}</text>"#,
            fmt6(px + 5.0),
            fmt6(py - 5.0),
            escape(&p.label)
        );
    }

    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

/// Letters for marked points, skipping the ones the diagrams avoid.
pub fn point_labels() -> impl Iterator<Item = String> {
    const LETTERS: &str = "DEGHIKLMNPQRSTU";
    LETTERS.chars().map(String::from)
}

/// The two curves of a construction and the points where they meet.
pub fn khayyam_figure(plan: &ConstructionPlan, pair: CurvePair, tol: f64) -> FigureSpec {
    let (i, j) = pair.indices();
    let curves = vec![
        FigureCurve {
            conic: plan.curves[i],
            label: format!("({}) {}", i + 1, plan.curves[i].class()),
            style: CurveStyle::Solid,
        },
        FigureCurve {
            conic: plan.curves[j],
            label: format!("({}) {}", j + 1, plan.curves[j].class()),
            style: CurveStyle::Solid,
        },
    ];
    let mut points = vec![FigurePoint {
        point: Point2::new(0.0, 0.0),
        label: "B".into(),
    }];
    let solutions = solve_points(plan, pair, tol);
    for (p, label) in solutions.iter().zip(point_labels()) {
        points.push(FigurePoint { point: *p, label });
    }

    let mut focus: Vec<(f64, f64)> = points.iter().map(|p| (p.point.x, p.point.y)).collect();
    focus.push((plan.scale_s, 0.0));
    for c in &curves {
        focus.extend(conic_landmarks(&c.conic));
    }
    let extent = focus
        .iter()
        .fold(1.0_f64, |m, (x, y)| m.max(x.abs()).max(y.abs()));
    // Landmarks far beyond the interesting region would shrink the figure.
    focus.retain(|(x, y)| x.abs() <= extent && y.abs() <= extent);
    FigureSpec {
        curves,
        points,
        viewport: Viewport::around(&focus, 0.25, 1.0),
        width_px: 640,
        height_px: 480,
        show_axes: true,
    }
}

/// The fixed parabola, the circle and every real root marked at `(z, z²)`.
pub fn descartes_figure(form: &DepressedForm, tol: f64) -> FigureSpec {
    let construction = descartes_construction(form);
    let mut curves = vec![FigureCurve {
        conic: construction.parabola,
        label: "parabola y = z²".into(),
        style: CurveStyle::Solid,
    }];
    if let Some(circle) = construction.circle() {
        curves.push(FigureCurve {
            conic: circle,
            label: "circle".into(),
            style: CurveStyle::Solid,
        });
    }
    let (z0, y0) = construction.circle_center;
    let mut points = vec![FigurePoint {
        point: Point2::new(z0, y0),
        label: "C".into(),
    }];
    let report = solve_descartes(form, tol);
    for (root, label) in report.roots.iter().zip(point_labels()) {
        let z = root.value;
        points.push(FigurePoint {
            point: Point2::with_multiplicity(z, z * z, root.multiplicity),
            label,
        });
    }
    let radius = construction.radius_sq.max(0.0).sqrt();
    let mut focus: Vec<(f64, f64)> = points.iter().map(|p| (p.point.x, p.point.y)).collect();
    focus.extend([
        (0.0, 0.0),
        (z0 - radius, y0 - radius),
        (z0 + radius, y0 + radius),
    ]);
    FigureSpec {
        curves,
        points,
        viewport: Viewport::around(&focus, 0.15, 1.0),
        width_px: 640,
        height_px: 480,
        show_axes: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(curves: Vec<Conic>, view: Viewport) -> FigureSpec {
        FigureSpec {
            curves: curves
                .into_iter()
                .map(|conic| FigureCurve {
                    conic,
                    label: "k".into(),
                    style: CurveStyle::Solid,
                })
                .collect(),
            points: Vec::new(),
            viewport: view,
            width_px: 400,
            height_px: 300,
            show_axes: false,
        }
    }

    #[test]
    fn axes_only() {
        let mut s = spec(Vec::new(), Viewport::new(-1.0, 1.0, -1.0, 1.0));
        s.show_axes = true;
        let svg = render_figure(&s).unwrap();
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("<path").count(), 0);
    }

    #[test]
    fn invisible_curve_is_an_error() {
        let far = Conic::circle(100.0, 100.0, 1.0).unwrap();
        let s = spec(vec![far], Viewport::new(-1.0, 1.0, -1.0, 1.0));
        assert_eq!(render_figure(&s), Err(Error::EmptyViewport));
    }

    #[test]
    fn invalid_specs() {
        let s = spec(Vec::new(), Viewport::new(1.0, 1.0, 0.0, 1.0));
        assert!(matches!(render_figure(&s), Err(Error::InvalidFigure(_))));
        let mut s = spec(Vec::new(), Viewport::new(0.0, 1.0, 0.0, 1.0));
        s.width_px = 0;
        assert!(matches!(render_figure(&s), Err(Error::InvalidFigure(_))));
    }

    #[test]
    fn branch_counts() {
        let hyperbola = Conic::new(0.0, 1.0, 0.0, 0.0, 0.0, -1.0).unwrap();
        assert_eq!(branches(&hyperbola).len(), 2);
        let circle = Conic::circle(1.0, 2.0, 5.0).unwrap();
        assert_eq!(branches(&circle).len(), 1);
        let parabola = Conic::new(-1.0, 0.0, 0.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(branches(&parabola).len(), 1);
        let lines = Conic::new(1.0, 0.0, -1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(branches(&lines).len(), 2);
        let empty = Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, 1.0).unwrap();
        assert!(branches(&empty).is_empty());
    }

    #[test]
    fn pixel_map_round_trip() {
        let s = spec(Vec::new(), Viewport::new(-3.0, 5.0, -1.0, 2.0));
        let map = PixelMap::for_spec(&s).unwrap();
        let (px, py) = map.to_pixel(1.25, -0.5);
        let (x, y) = map.to_world(px, py);
        assert!((x - 1.25).abs() < 1e-12 && (y + 0.5).abs() < 1e-12);
        let v = map.visible();
        assert!(v.xmin < -3.0 && v.xmax > 5.0 && v.ymin < -1.0 && v.ymax > 2.0);
    }
}
