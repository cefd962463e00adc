//! Deterministic SVG 1.1 drawings of a certificate dilated by `d`.
//!
//! Plane coordinates are `d·z` for lattice points `z`; the y axis points up.
//! All numbers are printed with three decimals, so identical inputs give
//! byte-identical files.

use std::fmt::Write as _;

use lattice_cover::certificate::CoveringCertificate;
use lattice_cover::lattice::QPoint;
use lattice_cover::Rational;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 1.5;
const FILLS: [&str; 6] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#b07aa1"];

#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub window: i64,
    pub points: bool,
    pub disks: bool,
    pub centers: bool,
    pub domain: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            window: 6,
            points: true,
            disks: true,
            centers: true,
            domain: true,
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Cluster centers `(cluster index, center)` of all instances within `bound` (sup norm).
fn instance_centers(cert: &CoveringCertificate, bound: i64) -> Vec<(usize, QPoint)> {
    let lattice = cert.lattice().canonical_reduced();
    let (u, v) = (lattice.u(), lattice.v());
    let reach = cert
        .clusters()
        .iter()
        .map(|c| c.center().x.abs().ceil_i64().max(c.center().y.abs().ceil_i64()))
        .max()
        .unwrap_or(0);
    let span = bound + reach + 1;
    let det = lattice.det().abs();
    let ci = span * (v.x.abs() + v.y.abs()) / det + 1;
    let cj = span * (u.x.abs() + u.y.abs()) / det + 1;
    let lim = Rational::from(bound);
    let mut out = Vec::new();
    for i in -ci..=ci {
        for j in -cj..=cj {
            let t = lattice.point(i, j);
            for (k, c) in cert.clusters().iter().enumerate() {
                let p = c.center().translate(t);
                if p.x.abs() <= lim && p.y.abs() <= lim {
                    out.push((k, p));
                }
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    out
}

pub fn render_svg(cert: &CoveringCertificate, d: &Rational, opts: &RenderOptions, banners: &[String]) -> String {
    let df = d.to_f64();
    let w = opts.window;
    let half = df * w as f64 + MARGIN;
    let banner_h = 18.0 * banners.len() as f64;
    let size = 2.0 * half * SCALE;
    let px = |x: f64| num((x + half) * SCALE);
    let py = |y: f64| num((half - y) * SCALE + banner_h);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        num(size),
        num(size + banner_h),
        num(size),
        num(size + banner_h)
    );
    let _ = writeln!(s, "<title>{} at d = {}</title>", escape(cert.name()), d);
    let _ = writeln!(
        s,
        "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>"
    );
    for (i, b) in banners.iter().enumerate() {
        let _ = writeln!(
            s,
            "<text x=\"6\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" fill=\"#b00020\">{}</text>",
            num(14.0 + 18.0 * i as f64),
            escape(b)
        );
    }

    if opts.disks {
        s.push_str("<g id=\"disks\" stroke=\"#333333\" stroke-width=\"1\">\n");
        for (k, c) in instance_centers(cert, w + 1) {
            let (x, y) = c.to_f64();
            let _ = writeln!(
                s,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" fill-opacity=\"0.25\"/>",
                px(x * df),
                py(y * df),
                num(SCALE),
                FILLS[k % FILLS.len()]
            );
        }
        s.push_str("</g>\n");
    }

    if opts.domain {
        let l = cert.lattice().canonical_reduced();
        let (u, v) = (l.u(), l.v());
        let corners = [(0, 0), (u.x, u.y), (u.x + v.x, u.y + v.y), (v.x, v.y)];
        let pts: Vec<String> = corners
            .iter()
            .map(|&(x, y)| format!("{},{}", px(x as f64 * df), py(y as f64 * df)))
            .collect();
        let _ = writeln!(
            s,
            "<polygon id=\"domain\" points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>",
            pts.join(" ")
        );
    }

    if opts.points {
        s.push_str("<g id=\"points\" fill=\"#000000\">\n");
        for x in -w..=w {
            for y in -w..=w {
                let _ = writeln!(
                    s,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"2.5\"/>",
                    px(x as f64 * df),
                    py(y as f64 * df)
                );
            }
        }
        s.push_str("</g>\n");
    }

    if opts.centers {
        s.push_str("<g id=\"centers\" stroke=\"#b00020\" stroke-width=\"1.5\">\n");
        for (_, c) in instance_centers(cert, w) {
            let (x, y) = c.to_f64();
            let (cx, cy) = ((x * df + half) * SCALE, (half - y * df) * SCALE + banner_h);
            let _ = writeln!(
                s,
                "<path d=\"M {} {} L {} {} M {} {} L {} {}\"/>",
                num(cx - 4.0),
                num(cy),
                num(cx + 4.0),
                num(cy),
                num(cx),
                num(cy - 4.0),
                num(cx),
                num(cy + 4.0)
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_cover::certificate::builtin;

    #[test]
    fn one_dot_per_disk_for_singletons() {
        let cert = builtin("B1").unwrap();
        let opts = RenderOptions {
            window: 2,
            ..RenderOptions::default()
        };
        let svg = render_svg(&cert, &Rational::from(2), &opts, &[]);
        assert_eq!(svg.matches("r=\"2.5\"").count(), 25);
        assert_eq!(svg.matches("fill-opacity").count(), 49);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn banners_are_escaped() {
        let cert = builtin("B2").unwrap();
        let svg = render_svg(
            &cert,
            &Rational::one(),
            &RenderOptions::default(),
            &["a < b".to_string()],
        );
        assert!(svg.contains("a &lt; b"));
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(num(-0.0001), "0.000");
    }
}
