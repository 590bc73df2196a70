//! Phase-circle diagram: occupied phases as ticks, component intervals as
//! arcs, the certified gap as a shaded wedge. Floating point is fine here;
//! the SVG is write-only display output.

use std::fmt::Write;

use kacstab::analyze::AnalyzeBundle;
use kacstab::Int;

const SIZE: f64 = 420.0;
const R: f64 = 170.0;

fn point(phi: f64, r: f64) -> (f64, f64) {
    let a = std::f64::consts::PI * phi;
    (SIZE / 2.0 + r * a.cos(), SIZE / 2.0 - r * a.sin())
}

pub fn phase_circle(b: &AnalyzeBundle<Int>) -> String {
    let mut s = String::new();
    let c = SIZE / 2.0;
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(
        s,
        "  <circle cx=\"{c}\" cy=\"{c}\" r=\"{R}\" fill=\"none\" stroke=\"#444\" stroke-width=\"1.5\"/>"
    );
    // Shaded gap wedge (folded onto one period; the antipodal copy is implied).
    let t0 = b.gap.theta.approx().rem_euclid(2.0);
    let mut t1 = b.gap.theta_prime.approx();
    while t1 <= t0 {
        t1 += 2.0;
    }
    let (x0, y0) = point(t0, R);
    let (x1, y1) = point(t1, R);
    let large = if t1 - t0 > 1.0 { 1 } else { 0 };
    let _ = writeln!(
        s,
        "  <path d=\"M {c} {c} L {x0:.3} {y0:.3} A {R} {R} 0 {large} 0 {x1:.3} {y1:.3} Z\" fill=\"#9ecae1\" fill-opacity=\"0.45\" stroke=\"none\"/>"
    );
    // Component intervals as thick arcs just outside the circle.
    for (lo, hi) in &b.gap.component_intervals {
        let a0 = lo.approx().rem_euclid(2.0);
        let mut a1 = hi.approx().rem_euclid(2.0);
        if a1 < a0 {
            a1 += 2.0;
        }
        let (x0, y0) = point(a0, R + 12.0);
        let (x1, y1) = point(a1, R + 12.0);
        if (a1 - a0).abs() < 1e-9 {
            let _ = writeln!(
                s,
                "  <circle cx=\"{x0:.3}\" cy=\"{y0:.3}\" r=\"4\" fill=\"#d62728\"/>"
            );
        } else {
            let large = if a1 - a0 > 1.0 { 1 } else { 0 };
            let _ = writeln!(
                s,
                "  <path d=\"M {x0:.3} {y0:.3} A {} {} 0 {large} 0 {x1:.3} {y1:.3}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"5\"/>",
                R + 12.0,
                R + 12.0
            );
        }
    }
    // Occupied phase ticks.
    for m in &b.gap.occupied {
        let phi = m.phase.approx().rem_euclid(2.0);
        let (x0, y0) = point(phi, R - 9.0);
        let (x1, y1) = point(phi, R + 9.0);
        let _ = writeln!(
            s,
            "  <line x1=\"{x0:.3}\" y1=\"{y0:.3}\" x2=\"{x1:.3}\" y2=\"{y1:.3}\" stroke=\"#222\" stroke-width=\"1.5\"/>"
        );
    }
    // Gap boundary labels.
    let (lx, ly) = point(t0, R + 28.0);
    let _ = writeln!(
        s,
        "  <text x=\"{lx:.3}\" y=\"{ly:.3}\" font-size=\"12\" text-anchor=\"middle\">theta={t0:.4}</text>"
    );
    let (lx, ly) = point(t1, R + 28.0);
    let _ = writeln!(
        s,
        "  <text x=\"{lx:.3}\" y=\"{ly:.3}\" font-size=\"12\" text-anchor=\"middle\">theta'={:.4}</text>",
        t1
    );
    s.push_str("</svg>");
    s
}
