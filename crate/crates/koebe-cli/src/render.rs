//! Deterministic SVG rendering of disk images under the family maps.
//!
//! Curves (concentric circles and radial rays) are mapped through `f = h +
//! conj(g)` by integrating `(h', g')` cumulatively along each curve: one
//! adaptive anchor integral from the origin, then short chord integrals
//! between consecutive samples.  All chords stay inside the unit disk, so
//! the value is path-independent.  The harmonic Koebe preset evaluates its
//! rational closed form directly.

use koebe_core::numkit::{chord_integral_pair, segment_integral_pair, QuadSpec};
use koebe_core::shear::{harmonic_koebe_eval, shear_derivatives};
use koebe_core::{Params, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Mesh of concentric circles and radial rays covering `|z| ≤ r_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshSpec {
    pub n_circles: usize,
    pub n_rays: usize,
    pub samples_per_curve: usize,
    pub r_max: f64,
}

impl Default for MeshSpec {
    fn default() -> Self {
        Self { n_circles: 12, n_rays: 24, samples_per_curve: 256, r_max: 0.98 }
    }
}

impl MeshSpec {
    fn validate(&self) {
        assert!(self.n_circles >= 4, "need at least 4 circles");
        assert!(self.n_rays >= 8, "need at least 8 rays");
        assert!(self.samples_per_curve >= 64, "need at least 64 samples per curve");
        assert!(self.r_max > 0.0 && self.r_max < 1.0, "r_max must lie in (0, 1)");
    }
}

/// The six figure presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl Preset {
    pub const ALL: [Preset; 6] =
        [Preset::Fig1, Preset::Fig2, Preset::Fig3, Preset::Fig4, Preset::Fig5, Preset::Fig6];

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "fig1" => Some(Preset::Fig1),
            "fig2" => Some(Preset::Fig2),
            "fig3" => Some(Preset::Fig3),
            "fig4" => Some(Preset::Fig4),
            "fig5" => Some(Preset::Fig5),
            "fig6" => Some(Preset::Fig6),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
        }
    }

    pub fn mapper(self) -> Mapper {
        match self {
            Preset::Fig1 => Mapper::Family(Params::new(0.0, 0.0)),
            Preset::Fig2 => Mapper::Family(Params::new(0.0, 0.5)),
            Preset::Fig3 => Mapper::Family(Params::new(2.0, 0.0)),
            Preset::Fig4 => Mapper::Family(Params::new(2.0, 0.5)),
            Preset::Fig5 => Mapper::HarmonicKoebe,
            Preset::Fig6 => Mapper::Family(Params::new(3.0, 0.5)),
        }
    }
}

/// Point evaluator for a figure: a family member, or the harmonic Koebe
/// limit (not reachable through `Params`, which requires `λ < 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mapper {
    Family(Params),
    HarmonicKoebe,
}

/// Budget for the short chords between consecutive curve samples; the
/// anchor leg from the origin uses the full default budget.
const STEP_SPEC: QuadSpec = QuadSpec { rel_tol: 1e-11, abs_tol: 1e-13, max_subdivisions: 8 };

impl Mapper {
    pub fn describe(&self) -> String {
        match self {
            Mapper::Family(p) => format!("a={} lambda={}", p.a, p.lambda),
            Mapper::HarmonicKoebe => "harmonic Koebe (lambda -> 1 limit)".to_string(),
        }
    }

    /// Map a chain of disk points through `f`; the bool reports whether any
    /// step exhausted its quadrature budget.
    fn map_chain(&self, pts: &[Complex64]) -> Result<(Vec<Complex64>, bool)> {
        match self {
            Mapper::HarmonicKoebe => {
                let mut out = Vec::with_capacity(pts.len());
                for &z in pts {
                    out.push(harmonic_koebe_eval(z)?.f);
                }
                Ok((out, false))
            }
            Mapper::Family(p) => {
                for &z in pts {
                    shear_derivatives(p, z)?; // reject points outside the domain up front
                }
                let deriv = |z: Complex64| shear_derivatives(p, z).expect("checked above");
                let mut out = Vec::with_capacity(pts.len());
                let anchor = segment_integral_pair(deriv, pts[0], &p.quad);
                let (mut h, mut g) = anchor.value;
                let mut flagged = anchor.exhausted;
                out.push(h + g.conj());
                for k in 1..pts.len() {
                    let step = chord_integral_pair(deriv, pts[k - 1], pts[k], &STEP_SPEC);
                    h += step.value.0;
                    g += step.value.1;
                    flagged |= step.exhausted;
                    out.push(h + g.conj());
                }
                Ok((out, flagged))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Circle,
    Ray,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub kind: CurveKind,
    pub vertices: Vec<Complex64>,
}

/// A fully mapped mesh, ready for SVG assembly or extent queries.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendering {
    pub description: String,
    pub mesh: MeshSpec,
    pub curves: Vec<Curve>,
    pub flagged: bool,
}

/// Map the whole mesh: circles in increasing radius, then rays in
/// increasing angle — a fixed order, so repeated runs are byte-identical.
pub fn render_mesh(mapper: &Mapper, mesh: &MeshSpec) -> Result<Rendering> {
    mesh.validate();
    let m = mesh.samples_per_curve;
    let mut curves = Vec::with_capacity(mesh.n_circles + mesh.n_rays);
    let mut flagged = false;

    for i in 1..=mesh.n_circles {
        let r = mesh.r_max * i as f64 / mesh.n_circles as f64;
        let pts: Vec<Complex64> =
            (0..m).map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / m as f64)).collect();
        let (mut img, fl) = mapper.map_chain(&pts)?;
        let first = img[0];
        img.push(first); // close the loop exactly, independent of quadrature drift
        flagged |= fl;
        curves.push(Curve { kind: CurveKind::Circle, vertices: img });
    }

    for j in 0..mesh.n_rays {
        let dir = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / mesh.n_rays as f64);
        let pts: Vec<Complex64> =
            (1..=m).map(|k| dir * (mesh.r_max * k as f64 / m as f64)).collect();
        let (img, fl) = mapper.map_chain(&pts)?;
        let mut vertices = Vec::with_capacity(m + 1);
        vertices.push(Complex64::new(0.0, 0.0)); // f(0) = 0 by normalization
        vertices.extend(img);
        flagged |= fl;
        curves.push(Curve { kind: CurveKind::Ray, vertices });
    }

    Ok(Rendering { description: mapper.describe(), mesh: *mesh, curves, flagged })
}

/// The image's leftmost point on the real axis.
///
/// For real `a` the family maps send the real diameter into the real axis,
/// so this is the abscissa of the slit-notch tip for Koebe-type members
/// (`k_a(-r_max)`); off-axis vertices may lie much farther left once the
/// image wraps around a slit, so the full bounding box is not the right
/// extent query here.
pub fn leftmost_real_abscissa(r: &Rendering) -> f64 {
    r.curves
        .iter()
        .flat_map(|c| c.vertices.iter())
        .filter(|v| v.im.abs() <= 1e-6)
        .map(|v| v.re)
        .fold(f64::INFINITY, f64::min)
}

/// Largest `|Im w|` over all rendered vertices.
pub fn max_abs_im(r: &Rendering) -> f64 {
    r.curves.iter().flat_map(|c| c.vertices.iter()).map(|v| v.im.abs()).fold(0.0, f64::max)
}

/// Round to the 10⁻⁴ grid and print the shortest decimal that round-trips;
/// `-0` is normalized so equal coordinates format identically.
fn fmt_coord(x: f64) -> String {
    let r = (x * 1e4).round() / 1e4;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r}")
}

/// Assemble the SVG document: a viewBox (image bounding box plus a 5%
/// margin) and one polyline per curve.  Output is a pure function of the
/// rendering, with fixed float formatting, so bytes reproduce exactly.
pub fn svg_document(rendering: &Rendering) -> String {
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for c in &rendering.curves {
        for v in &c.vertices {
            assert!(v.re.is_finite() && v.im.is_finite(), "non-finite vertex");
            // SVG y grows downward; flip once here and everywhere below.
            let (x, y) = ((v.re * 1e4).round() / 1e4, (-v.im * 1e4).round() / 1e4);
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
    }
    let pad_x = 0.05 * if max_x > min_x { max_x - min_x } else { 1.0 };
    let pad_y = 0.05 * if max_y > min_y { max_y - min_y } else { 1.0 };
    // Outward-rounded viewBox: every emitted coordinate lies inside it.
    let vb_x = ((min_x - pad_x) * 1e4).floor() / 1e4;
    let vb_y = ((min_y - pad_y) * 1e4).floor() / 1e4;
    let vb_w = ((max_x + pad_x) * 1e4).ceil() / 1e4 - vb_x;
    let vb_h = ((max_y + pad_y) * 1e4).ceil() / 1e4 - vb_y;
    let stroke = (0.002 * vb_w.max(vb_h) * 1e4).ceil() / 1e4;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        fmt_coord(vb_x),
        fmt_coord(vb_y),
        fmt_coord(vb_w),
        fmt_coord(vb_h)
    ));
    out.push_str(&format!(
        "<!-- {}; mesh {}x{}, {} samples per curve, r_max {} -->\n",
        rendering.description,
        rendering.mesh.n_circles,
        rendering.mesh.n_rays,
        rendering.mesh.samples_per_curve,
        rendering.mesh.r_max
    ));
    if rendering.flagged {
        out.push_str("<!-- flag: quadrature budget exhausted on at least one vertex -->\n");
    }
    for curve in &rendering.curves {
        let color = match curve.kind {
            CurveKind::Circle => "#2a6f97",
            CurveKind::Ray => "#c44536",
        };
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" points=\"",
            color,
            fmt_coord(stroke)
        ));
        for (k, v) in curve.vertices.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(&fmt_coord(v.re));
            out.push(',');
            out.push_str(&fmt_coord(-v.im));
        }
        out.push_str("\"/>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn small_mesh() -> MeshSpec {
        MeshSpec { n_circles: 4, n_rays: 8, samples_per_curve: 64, r_max: 0.9 }
    }

    #[test]
    fn mapped_vertices_match_direct_evaluation() {
        let p = Params::new(2.0, 0.5);
        let r = render_mesh(&Mapper::Family(p), &small_mesh()).unwrap();
        // Spot-check a ray vertex against an independent radial integral.
        let ray = &r.curves[4].vertices; // first ray (angle 0)
        let z = 0.9 * 32.0 / 64.0;
        let direct = koebe_core::shear::eval_f(&p, Complex64::new(z, 0.0)).unwrap();
        assert_abs_diff_eq!((ray[32] - direct.f).norm(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn byte_deterministic_output() {
        for preset in [Preset::Fig1, Preset::Fig5] {
            let a = svg_document(&render_mesh(&preset.mapper(), &small_mesh()).unwrap());
            let b = svg_document(&render_mesh(&preset.mapper(), &small_mesh()).unwrap());
            assert_eq!(a, b, "{}", preset.name());
        }
    }

    #[test]
    fn koebe_preset_leftmost_real_abscissa_approaches_quarter() {
        // k₂(-r) = -r/(1+r)² is the leftmost real image point; it sinks
        // toward -1/4 from above as the mesh radius grows.
        let mut mesh = small_mesh();
        let mut prev_gap = f64::INFINITY;
        for r_max in [0.8, 0.9, 0.98] {
            mesh.r_max = r_max;
            let r = render_mesh(&Preset::Fig3.mapper(), &mesh).unwrap();
            let left = leftmost_real_abscissa(&r);
            assert!(left >= -0.25 - 1e-6, "leftmost {left} dips below -1/4");
            assert_abs_diff_eq!(left, -r_max / (1.0 + r_max).powi(2), epsilon = 1e-6);
            let gap = left + 0.25;
            assert!(gap < prev_gap, "gap {gap} fails to shrink");
            prev_gap = gap;
        }
    }

    #[test]
    fn log_preset_stays_in_strip() {
        // k₀ maps the disk onto the strip |Im w| < π/4.
        let r = render_mesh(&Preset::Fig1.mapper(), &small_mesh()).unwrap();
        assert!(max_abs_im(&r) < PI / 4.0);
    }

    #[test]
    fn harmonic_koebe_preset_uses_the_closed_form() {
        let r = render_mesh(&Preset::Fig5.mapper(), &small_mesh()).unwrap();
        assert!(!r.flagged);
        // Ray at angle 0, sample 32 is z = 0.45: K(z) = H + conj(G) exactly.
        let z = Complex64::new(0.9 * 32.0 / 64.0, 0.0);
        let k = harmonic_koebe_eval(z).unwrap();
        assert_abs_diff_eq!((r.curves[4].vertices[32] - k.f).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn svg_vertices_stay_inside_the_viewbox() {
        let rnd = render_mesh(&Preset::Fig4.mapper(), &small_mesh()).unwrap();
        let svg = svg_document(&rnd);
        let vb: Vec<f64> = svg
            .split("viewBox=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap()
            .split(' ')
            .map(|t| t.parse().unwrap())
            .collect();
        let (x0, y0, x1, y1) = (vb[0], vb[1], vb[0] + vb[2], vb[1] + vb[3]);
        for line in svg.lines().filter(|l| l.starts_with("<polyline")) {
            let pts = line.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
            for pair in pts.split(' ') {
                let (x, y) = pair.split_once(',').unwrap();
                let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
                assert!(x >= x0 && x <= x1 && y >= y0 && y <= y1, "({x},{y}) escapes viewBox");
            }
        }
    }

    #[test]
    fn presets_resolve_by_name() {
        for p in Preset::ALL {
            assert_eq!(Preset::from_name(p.name()), Some(p));
        }
        assert_eq!(Preset::from_name("fig7"), None);
    }
}
