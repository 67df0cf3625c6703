use std::fmt::Write as _;

use crate::persistence::Barcode;

const MARGIN: usize = 40;
const COLUMN: usize = 60;
const ROW: usize = 20;
const RADIUS: usize = 4;

/// Draws a bar code: columns left to right (column 1 is `G`), one row per
/// copy of a bar, a segment with filled endpoints for bars of length at
/// least two and a single vertex for isolated points.
pub fn render_svg(b: &Barcode) -> String {
    let copies: usize = b.total_bars();
    let width = 2 * MARGIN + COLUMN * b.columns.saturating_sub(1).max(1);
    let height = 2 * MARGIN + ROW * copies.max(1);
    let x = |c: usize| MARGIN + COLUMN * (c - 1);
    let axis_y = height - MARGIN / 2;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"<title>{} {} degree {}</title>"#,
        escape(&b.group),
        b.functor,
        b.degree
    );
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="gray"/>"#,
        MARGIN / 2,
        width - MARGIN / 2
    );
    for c in 1..=b.columns {
        let _ = writeln!(
            s,
            r#"<text class="column" x="{}" y="{}" text-anchor="middle" font-size="10">{c}</text>"#,
            x(c),
            height - 4
        );
    }
    let mut row = 0;
    for bar in &b.bars {
        for _ in 0..bar.multiplicity {
            let y = MARGIN + ROW * row;
            if bar.birth < bar.death {
                let _ = writeln!(
                    s,
                    r#"<line class="bar" x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="black" stroke-width="2"/>"#,
                    x(bar.birth),
                    x(bar.death)
                );
                for c in [bar.birth, bar.death] {
                    let _ = writeln!(s, r#"<circle class="vertex" cx="{}" cy="{y}" r="{RADIUS}"/>"#, x(c));
                }
            } else {
                let _ = writeln!(s, r#"<circle class="vertex" cx="{}" cy="{y}" r="{RADIUS}"/>"#, x(bar.birth));
            }
            row += 1;
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
