//! Learning-curve plots as standalone SVG.

use std::fmt::Write as _;

use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    /// Mean steps per episode, indexed by episode.
    pub values: Vec<f64>,
}

/// Plot area in SVG user units: `(x0, y0, x1, y1)` with `y0` at the top.
pub fn plot_area() -> (f64, f64, f64, f64) {
    (LEFT, TOP, WIDTH - RIGHT, HEIGHT - BOTTOM)
}

/// One polyline per curve on shared linear axes, x = episode and
/// y = steps, with a legend.
pub fn emit_svg(curves: &[Curve]) -> Result<String> {
    if curves.is_empty() || curves.iter().all(|c| c.values.is_empty()) {
        return Err(Error::Contract("emit_svg needs at least one non-empty curve".into()));
    }
    let x_max = curves.iter().map(|c| c.values.len()).max().unwrap_or(1).max(2) - 1;
    let y_max = curves
        .iter()
        .flat_map(|c| c.values.iter().copied())
        .filter(|v| v.is_finite())
        .fold(0.0f64, f64::max);
    let y_max = if y_max > 0.0 { y_max } else { 1.0 };
    let (x0, y0, x1, y1) = plot_area();
    let sx = |e: usize| x0 + (x1 - x0) * e as f64 / x_max as f64;
    let sy = |v: f64| y1 - (y1 - y0) * v / y_max;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{x0},{y0} V{y1} H{x1}" fill="none" stroke="black"/>"#
    );
    for t in 0..=4 {
        let f = t as f64 / 4.0;
        let ex = (x_max as f64 * f).round() as usize;
        let vy = y_max * f;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{ex}</text>"#,
            sx(ex),
            y1 + 18.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{vy:.0}</text>"#,
            x0 - 6.0,
            sy(vy) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">episode</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">steps per episode</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    for (n, c) in curves.iter().enumerate() {
        let color = COLORS[n % COLORS.len()];
        let mut pts = String::new();
        for (e, &v) in c.values.iter().enumerate() {
            let v = if v.is_finite() { v } else { y_max };
            let _ = write!(pts, "{:.2},{:.2} ", sx(e), sy(v));
        }
        let _ = writeln!(
            s,
            r#"<polyline class="curve" fill="none" stroke="{color}" stroke-width="1" points="{}"/>"#,
            pts.trim_end()
        );
        let ly = y0 + 10.0 + 18.0 * n as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"/>"#,
            x1 - 140.0,
            x1 - 115.0
        );
        let _ = writeln!(
            s,
            r#"<text class="legend" x="{:.1}" y="{:.1}">{}</text>"#,
            x1 - 110.0,
            ly + 4.0,
            escape(&c.label)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(svg: &str) -> Vec<Vec<(f64, f64)>> {
        svg.lines()
            .filter(|l| l.contains(r#"class="curve""#))
            .map(|l| {
                let body = l.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
                body.split(' ')
                    .map(|p| {
                        let (x, y) = p.split_once(',').unwrap();
                        (x.parse().unwrap(), y.parse().unwrap())
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn constant_curve_is_horizontal() {
        let svg = emit_svg(&[Curve {
            label: "flat".into(),
            values: vec![5.0; 10],
        }])
        .unwrap();
        let p = &points(&svg)[0];
        assert_eq!(p.len(), 10);
        assert!(p.iter().all(|&(_, y)| y == p[0].1));
    }

    #[test]
    fn two_curves_two_legends() {
        let svg = emit_svg(&[
            Curve {
                label: "rurl".into(),
                values: vec![3.0, 2.0],
            },
            Curve {
                label: "rl_plain".into(),
                values: vec![4.0, 1.0],
            },
        ])
        .unwrap();
        assert_eq!(points(&svg).len(), 2);
        assert!(svg.contains(">rurl</text>") && svg.contains(">rl_plain</text>"));
    }

    #[test]
    fn plateau_then_drop_stays_in_the_box() {
        let mut v = vec![10_000.0; 50];
        v.extend((0..50).map(|e| 10_000.0 / (e as f64 + 2.0)));
        let svg = emit_svg(&[Curve {
            label: "c".into(),
            values: v.clone(),
        }])
        .unwrap();
        let (x0, y0, x1, y1) = plot_area();
        let p = &points(&svg)[0];
        for w in p.windows(2) {
            assert!(w[1].0 > w[0].0);
        }
        for (k, &(x, y)) in p.iter().enumerate() {
            assert!((x0..=x1).contains(&x) && (y0 - 1e-9..=y1).contains(&y));
            if k > 0 {
                // larger values sit higher on the page
                assert_eq!(v[k] < v[k - 1], y > p[k - 1].1);
            }
        }
        assert!((p[0].1 - y0).abs() < 0.01);
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(emit_svg(&[]).is_err());
    }
}
