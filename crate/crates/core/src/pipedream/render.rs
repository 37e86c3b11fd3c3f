use std::fmt::Write;

use crate::error::{Error, Result};
use crate::poset::{ElementSet, Poset};

use super::{trace_pipes, Heading};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(Error::Parse(format!("unsupported render format `{other}`"))),
        }
    }
}

const PALETTE: [&str; 12] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#393b79", "#637939",
];

const STEP: i64 = 40;

/// Renders the pipe dream of `M` as text. Row `r` of the triangle holds the
/// elements whose column key exceeds the row index by `r`; row 0 is the
/// diagonal.
pub fn render_pipe_dream(poset: &Poset, m: ElementSet, format: RenderFormat) -> Result<String> {
    if !m.is_subset(poset.full()) {
        return Err(Error::Domain("set has indices outside the poset".into()));
    }
    Ok(match format {
        RenderFormat::Ascii => ascii(poset, m),
        RenderFormat::Svg => svg(poset, m),
    })
}

fn ascii(poset: &Poset, m: ElementSet) -> String {
    let mut out = String::new();
    let members: Vec<String> = poset.elements_of(m).iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "type {} n={} M={{{}}}", poset.kind(), poset.n(), members.join(","));
    let rows = poset.columns();
    for r in 0..rows {
        let mut line = String::new();
        for idx in 0..poset.len() {
            let (i, key) = poset.coords(idx);
            if key - i != r {
                continue;
            }
            let col = (i + key - 2) * 4;
            while line.len() < col {
                line.push(' ');
            }
            let e = poset.element(idx);
            let (open, close) = if m.contains(idx) {
                ('[', ']')
            } else if poset.diagonal().contains(idx) {
                ('<', '>')
            } else {
                (' ', ' ')
            };
            let _ = write!(line, "{open}{},{}{close}", e.i, e.j);
        }
        if !line.is_empty() {
            let _ = writeln!(out, "{}", line.trim_end());
        }
    }
    let _ = writeln!(out, "pipes:");
    for pipe in trace_pipes(poset, m) {
        let path: Vec<String> = pipe.path.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  {:>3} -> {:>3}: {}", pipe.label, pipe.end, path.join(" "));
    }
    out
}

fn center(i: usize, key: usize) -> (i64, i64) {
    let x = (i + key) as i64 * STEP / 2;
    let y = (key - i) as i64 * STEP / 2 + STEP;
    (x, y)
}

fn svg(poset: &Poset, m: ElementSet) -> String {
    let width = (2 * poset.columns() as i64 + 3) * STEP / 2;
    let height = (poset.columns() as i64 + 2) * STEP / 2 + STEP;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"  <rect width="{width}" height="{height}" fill="white"/>"#);
    let half = STEP / 4;
    for pipe in trace_pipes(poset, m) {
        let key = poset.column_key(pipe.label).expect("label is a column");
        let color = PALETTE[(key - 1) % PALETTE.len()];
        let mut points = Vec::with_capacity(pipe.path.len() + 2);
        let first = pipe.path[0];
        let first_idx = poset.index_of(first).expect("path in poset");
        let (fi, fk) = poset.coords(first_idx);
        let (fx, fy) = center(fi, fk);
        let entry = if pipe.label > 0 { Heading::Up } else { Heading::Down };
        // entry point: bottom-right for upward pipes, top-right for downward ones
        points.push(match entry {
            Heading::Up => (fx + half, fy + half),
            Heading::Down => (fx + half, fy - half),
        });
        for e in &pipe.path {
            let idx = poset.index_of(*e).expect("path in poset");
            let (i, key) = poset.coords(idx);
            points.push(center(i, key));
        }
        let &(lx, ly) = points.last().expect("nonempty");
        points.push((lx - half, ly + half));
        let coords: Vec<String> = points.iter().map(|(x, y)| format!("{x},{y}")).collect();
        let _ = writeln!(
            out,
            r#"  <polyline points="{}" fill="none" stroke="{color}" stroke-width="3"/>"#,
            coords.join(" ")
        );
        let (sx, sy) = points[0];
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="11" fill="{color}">{}</text>"#,
            sx + 2,
            sy + if entry == Heading::Up { 10 } else { -2 },
            pipe.label
        );
        let &(ex, ey) = points.last().expect("nonempty");
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="11" fill="{color}">{}&#8594;{}</text>"#,
            ex - 24,
            ey + 12,
            pipe.label,
            pipe.end
        );
    }
    for idx in 0..poset.len() {
        let (i, key) = poset.coords(idx);
        let (x, y) = center(i, key);
        let e = poset.element(idx);
        let fill = if m.contains(idx) {
            "#000000"
        } else if poset.diagonal().contains(idx) {
            "#555555"
        } else {
            "#c8c8c8"
        };
        let _ = writeln!(out, r#"  <circle cx="{x}" cy="{y}" r="3" fill="{fill}"/>"#);
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="9" text-anchor="middle" fill="{fill}">{},{}</text>"#,
            x,
            y - 6,
            e.i,
            e.j
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Kind;

    #[test]
    fn ascii_lists_endpoints() {
        let p = Poset::new(Kind::A, 4).unwrap();
        let m = p.set_from_elements([(1, 1), (2, 2), (1, 2), (2, 3), (1, 4)]).unwrap();
        let text = render_pipe_dream(&p, m, RenderFormat::Ascii).unwrap();
        assert!(text.contains("    1 ->   4: (1,4)"));
        assert!(text.contains("[1,4]"));
    }

    #[test]
    fn empty_set_gives_identity_endpoints() {
        let p = Poset::new(Kind::C, 2).unwrap();
        let text = render_pipe_dream(&p, ElementSet::empty(), RenderFormat::Ascii).unwrap();
        for v in [1, 2, -2, -1] {
            assert!(text.contains(&format!("{v:>3} -> {v:>3}:")), "{text}");
        }
    }

    #[test]
    fn unknown_format_rejected() {
        assert!("png".parse::<RenderFormat>().is_err());
    }

    #[test]
    fn svg_is_deterministic() {
        let p = Poset::new(Kind::C, 3).unwrap();
        let m = p.set_from_elements([(1, 1), (1, 3), (1, -2), (2, 2), (2, 3), (3, -3)]).unwrap();
        let a = render_pipe_dream(&p, m, RenderFormat::Svg).unwrap();
        let b = render_pipe_dream(&p, m, RenderFormat::Svg).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
    }
}
