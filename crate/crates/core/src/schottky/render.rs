//! CSV and SVG output for disk levels and point clouds.

use std::fmt::Write;

use super::{DiskLevel, C64};

pub const CSV_HEADER: &str = "re,im,radius,word";
pub const CANVAS: u32 = 800;
pub const HALF_EXTENT: f64 = 3.5;

pub fn levels_csv(levels: &[DiskLevel]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for l in levels {
        for d in &l.disks {
            writeln!(out, "{:.16e},{:.16e},{:.16e},{}", d.center.re, d.center.im, d.radius, d.label()).unwrap();
        }
    }
    out
}

/// Stroke-only circles for `circles` and one pixel per point; the imaginary
/// axis points up.
pub fn svg(circles: &DiskLevel, points: &[C64]) -> String {
    let px = 2.0 * HALF_EXTENT / CANVAS as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="{} {} {} {}">"#,
        -HALF_EXTENT,
        -HALF_EXTENT,
        2.0 * HALF_EXTENT,
        2.0 * HALF_EXTENT
    )
    .unwrap();
    writeln!(out, r#"<g fill="none" stroke="black" stroke-width="{px:.6}">"#).unwrap();
    for d in &circles.disks {
        writeln!(out, r#"<circle cx="{:.9}" cy="{:.9}" r="{:.9}"/>"#, d.center.re, -d.center.im, d.radius).unwrap();
    }
    out.push_str("</g>\n<g fill=\"black\" stroke=\"none\">\n");
    for p in points {
        writeln!(
            out,
            r#"<rect x="{:.9}" y="{:.9}" width="{px:.6}" height="{px:.6}"/>"#,
            p.re - 0.5 * px,
            -p.im - 0.5 * px
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schottky::{levels, SchottkyParams};

    #[test]
    fn csv_rows() {
        let all = levels(&SchottkyParams::new(0.5, 1).unwrap()).unwrap();
        let csv = levels_csv(&all);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 1 + 4 + 12);
        assert!(lines[1].ends_with(",[a]"));
        assert!(lines[5].split(',').count() == 4 && lines[5].ends_with("a[a]"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn svg_counts() {
        let all = levels(&SchottkyParams::new(0.5, 4).unwrap()).unwrap();
        let deepest = all.last().unwrap();
        let s = svg(deepest, &deepest.centers());
        assert_eq!(s.matches("<circle").count(), 324);
        assert_eq!(s.matches("<rect").count(), 324);
        assert!(s.contains(r#"viewBox="-3.5 -3.5 7 7""#));
    }
}
