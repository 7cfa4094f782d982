//! SVG rendering in the mathematical orientation (y up).

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::net::Net;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Width of the image in pixels; the height follows the aspect ratio.
    pub width: f64,
    pub show_labels: bool,
    /// Edge indices drawn in the highlight style.
    pub highlight: Option<BTreeSet<usize>>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800.0,
            show_labels: false,
            highlight: None,
        }
    }
}

const MARGIN: f64 = 0.05;

pub fn render_svg(net: &Net, opts: &RenderOptions) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for v in net.vertices() {
        x0 = x0.min(v.pos.x);
        x1 = x1.max(v.pos.x);
        y0 = y0.min(v.pos.y);
        y1 = y1.max(v.pos.y);
    }
    if !x0.is_finite() {
        (x0, y0, x1, y1) = (-1.0, -1.0, 1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = MARGIN * span;
    let (x0, y0, x1, y1) = (x0 - pad, y0 - pad, x1 + pad, y1 + pad);
    let scale = opts.width / (x1 - x0);
    let height = (y1 - y0) * scale;
    let tx = |x: f64| (x - x0) * scale;
    let ty = |y: f64| (y1 - y) * scale;
    let r_small = 0.006 * opts.width;
    let r_large = 0.012 * opts.width;

    let highlight = opts.highlight.as_ref().filter(|h| !h.is_empty());

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.3}" height="{:.3}" viewBox="0 0 {:.3} {:.3}">"#,
        opts.width, height, opts.width, height
    );
    let _ = writeln!(
        out,
        r#"<style>.edge{{stroke:#222;stroke-width:{sw:.3}}} .hl{{stroke:#d62728;stroke-width:{hw:.3}}} .bal{{fill:#222}} .unb{{fill:#1f77b4}} text{{font-family:sans-serif;font-size:{fs:.3}px}}</style>"#,
        sw = 0.002 * opts.width,
        hw = 0.005 * opts.width,
        fs = 0.02 * opts.width
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (e, edge) in net.edges().iter().enumerate() {
        let (p, q) = (net.pos(edge.a()), net.pos(edge.b()));
        let class = match highlight {
            Some(h) if h.contains(&e) => "hl",
            _ => "edge",
        };
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}"/>"#,
            tx(p.x),
            ty(p.y),
            tx(q.x),
            ty(q.y)
        );
    }
    for v in net.vertices() {
        let (class, r) = if v.is_balanced() {
            ("bal", r_small)
        } else {
            ("unb", r_large)
        };
        let _ = writeln!(
            out,
            r#"<circle class="{class}" cx="{:.4}" cy="{:.4}" r="{r:.4}"/>"#,
            tx(v.pos.x),
            ty(v.pos.y)
        );
    }
    if opts.show_labels {
        for v in net.vertices() {
            let text = v.label.as_deref().unwrap_or(&v.id);
            let _ = writeln!(
                out,
                r#"<text x="{:.4}" y="{:.4}">{}</text>"#,
                tx(v.pos.x) + r_large,
                ty(v.pos.y) - r_large,
                escape(text)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::net::Vertex;

    fn small() -> Net {
        Net::from_id_edges(
            vec![
                Vertex::unbalanced("a", Point::new(0.0, 0.0)),
                Vertex::balanced("b<", Point::new(1.0, 2.0)),
            ],
            &[("a", "b<")],
        )
        .unwrap()
    }

    #[test]
    fn y_axis_points_up() {
        let svg = render_svg(&small(), &RenderOptions::default());
        // Vertex `a` (lower) must be drawn below `b` (higher y).
        let ys: Vec<f64> = svg
            .lines()
            .filter(|l| l.starts_with("<circle"))
            .map(|l| {
                let s = &l[l.find("cy=\"").unwrap() + 4..];
                s[..s.find('"').unwrap()].parse().unwrap()
            })
            .collect();
        assert!(ys[0] > ys[1]);
    }

    #[test]
    fn labels_are_escaped() {
        let opts = RenderOptions {
            show_labels: true,
            ..RenderOptions::default()
        };
        let svg = render_svg(&small(), &opts);
        assert!(svg.contains(">b&lt;</text>"));
    }

    #[test]
    fn empty_highlight_matches_none() {
        let a = render_svg(&small(), &RenderOptions::default());
        let b = render_svg(
            &small(),
            &RenderOptions {
                highlight: Some(BTreeSet::new()),
                ..RenderOptions::default()
            },
        );
        assert_eq!(a, b);
    }
}
