//! Minimal SVG histogram with a density overlay.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;
pub const OVERLAY_POINTS: usize = 256;

/// Normalized histogram of `samples` on `[0, x_max]` plus `density` sampled
/// at [`OVERLAY_POINTS`] points.
pub fn histogram_with_density<F: Fn(f64) -> f64>(
    title: &str,
    samples: &[f64],
    bins: usize,
    x_max: f64,
    density: F,
) -> String {
    let bins = bins.max(1);
    let width = x_max / bins as f64;
    let mut counts = vec![0usize; bins];
    for &s in samples {
        if (0.0..x_max).contains(&s) {
            counts[((s / width) as usize).min(bins - 1)] += 1;
        }
    }
    let total = samples.len().max(1) as f64;
    let heights: Vec<f64> = counts.iter().map(|&c| c as f64 / (total * width)).collect();
    let curve: Vec<(f64, f64)> = (0..OVERLAY_POINTS)
        .map(|i| {
            let x = x_max * i as f64 / (OVERLAY_POINTS - 1) as f64;
            (x, density(x))
        })
        .collect();
    let y_max = heights
        .iter()
        .copied()
        .chain(curve.iter().map(|p| p.1))
        .filter(|v| v.is_finite())
        .fold(0.0f64, f64::max)
        .max(1e-12)
        * 1.1;

    let px = |x: f64| MARGIN + (WIDTH - 2.0 * MARGIN) * x / x_max;
    let py = |y: f64| HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * y / y_max;

    let mut s = String::new();
    writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"##
    )
    .unwrap();
    writeln!(s, r##"<title>{}</title>"##, escape(title)).unwrap();
    writeln!(s, r##"<rect width="100%" height="100%" fill="white"/>"##).unwrap();
    writeln!(s, r##"<g fill="#9ecae1" stroke="#3182bd" stroke-width="0.5">"##).unwrap();
    for (i, h) in heights.iter().enumerate() {
        let x0 = px(i as f64 * width);
        let x1 = px((i + 1) as f64 * width);
        let y = py(*h);
        writeln!(s, r##"<rect x="{x0:.2}" y="{y:.2}" width="{:.2}" height="{:.2}"/>"##, x1 - x0, py(0.0) - y).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    let points: Vec<String> =
        curve.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(if y.is_finite() { y } else { 0.0 }))).collect();
    writeln!(s, r##"<polyline fill="none" stroke="#de2d26" stroke-width="2" points="{}"/>"##, points.join(" "))
        .unwrap();
    // axes
    writeln!(
        s,
        r##"<g stroke="black"><line x1="{m}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{m}" y1="{b}" x2="{m}" y2="{m}"/></g>"##,
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    )
    .unwrap();
    writeln!(s, r##"<g font-family="sans-serif" font-size="12">"##).unwrap();
    for i in 0..=4 {
        let x = x_max * i as f64 / 4.0;
        writeln!(s, r##"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x:.2}</text>"##, px(x), HEIGHT - MARGIN + 16.0)
            .unwrap();
        let y = y_max * i as f64 / 4.0;
        writeln!(s, r##"<text x="{:.2}" y="{:.2}" text-anchor="end">{y:.2}</text>"##, MARGIN - 6.0, py(y) + 4.0)
            .unwrap();
    }
    writeln!(s, r##"<text x="{}" y="20" text-anchor="middle">{}</text>"##, WIDTH / 2.0, escape(title)).unwrap();
    writeln!(s, "</g>").unwrap();
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn is_well_formed_xml_with_full_overlay() {
        let samples: Vec<f64> = (0..500).map(|i| (i as f64 / 500.0) * 2.5).collect();
        let svg = histogram_with_density("τ_1 <k & j>", &samples, 30, 3.0, |x| 2.0 * x * (-x * x).exp());
        let doc = roxmltree::Document::parse(&svg).expect("well-formed");
        let poly = doc.descendants().find(|n| n.has_tag_name("polyline")).unwrap();
        assert_eq!(poly.attribute("points").unwrap().split(' ').count(), OVERLAY_POINTS);
        let bars = doc.descendants().filter(|n| n.has_tag_name("rect")).count();
        assert_eq!(bars, 31);
    }

    #[test]
    fn empty_sample_still_renders() {
        let svg = histogram_with_density("empty", &[], 10, 1.0, |_| 0.0);
        assert!(roxmltree::Document::parse(&svg).is_ok());
    }
}
