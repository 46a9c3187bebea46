//! Static SVG barcode diagrams: one horizontal segment per bar over a
//! coordinate axis, filled caps for closed ends, hollow caps for open ends.

use std::fmt::Write;

use quiver_reflect::barcode::Barcode;
use quiver_reflect::quiver::{Coord, OrientedQuiver};
use quiver_reflect::representation::Endpoint;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;
const ROW: f64 = 18.0;
const CAP: f64 = 4.0;

struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn x(&self, t: f64) -> f64 {
        MARGIN + (t - self.lo) / (self.hi - self.lo) * (WIDTH - 2.0 * MARGIN)
    }
}

fn axis(barcode: &Barcode, quiver: Option<&OrientedQuiver>) -> Axis {
    let mut xs: Vec<f64> = barcode
        .iter()
        .flat_map(|(b, _)| b.endpoints().collect::<Vec<_>>())
        .chain(quiver.into_iter().flat_map(|q| q.breakpoints().to_vec()))
        .map(Coord::to_f64)
        .collect();
    if xs.is_empty() {
        xs.push(0.0);
    }
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pad = ((hi - lo) * 0.1).max(0.5);
    Axis {
        lo: lo - pad,
        hi: hi + pad,
    }
}

fn cap(out: &mut String, x: f64, y: f64, closed: bool) {
    let fill = if closed { "black" } else { "white" };
    writeln!(
        out,
        r#"  <circle cx="{x:.2}" cy="{y:.2}" r="{CAP}" fill="{fill}" stroke="black"/>"#
    )
    .unwrap();
}

/// SVG text for `barcode`, with breakpoints of `quiver` drawn as dashed guides.
pub fn render_svg(barcode: &Barcode, quiver: Option<&OrientedQuiver>) -> String {
    let ax = axis(barcode, quiver);
    let rows: usize = barcode.iter().map(|(_, m)| m).sum();
    let axis_y = MARGIN + rows as f64 * ROW + ROW;
    let height = axis_y + MARGIN;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.0}" viewBox="0 0 {WIDTH} {height:.0}">"#
    )
    .unwrap();
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#).unwrap();
    if let Some(q) = quiver {
        for &s in q.breakpoints() {
            let x = ax.x(s.to_f64());
            writeln!(
                out,
                r#"  <line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{axis_y:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
                MARGIN - ROW / 2.0
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        r#"  <line x1="{MARGIN}" y1="{axis_y:.2}" x2="{:.2}" y2="{axis_y:.2}" stroke="black"/>"#,
        WIDTH - MARGIN
    )
    .unwrap();
    let mut ticks: Vec<Coord> = barcode
        .iter()
        .flat_map(|(b, _)| b.endpoints().collect::<Vec<_>>())
        .collect();
    ticks.extend(quiver.into_iter().flat_map(|q| q.breakpoints().to_vec()));
    ticks.sort();
    ticks.dedup();
    for t in ticks {
        let x = ax.x(t.to_f64());
        writeln!(
            out,
            r#"  <text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle">{t}</text>"#,
            axis_y + 16.0
        )
        .unwrap();
    }
    let mut row = 0;
    for (bar, mult) in barcode.iter() {
        for _ in 0..mult {
            let y = MARGIN + row as f64 * ROW;
            row += 1;
            let x0 = bar.lo().coord().map_or(MARGIN, |c| ax.x(c.to_f64()));
            let x1 = bar.hi().coord().map_or(WIDTH - MARGIN, |c| ax.x(c.to_f64()));
            writeln!(
                out,
                r#"  <line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="black" stroke-width="2"><title>{bar}</title></line>"#
            )
            .unwrap();
            for (end, x) in [(bar.lo(), x0), (bar.hi(), x1)] {
                match end {
                    Endpoint::Infinite => {}
                    Endpoint::Open(_) => cap(&mut out, x, y, false),
                    Endpoint::Closed(_) => cap(&mut out, x, y, true),
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
