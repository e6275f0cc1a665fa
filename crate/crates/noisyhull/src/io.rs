//! Whitespace-separated integer records, one per line; `#` starts a comment
//! line.

use crate::error::{Error, Result};
use crate::geom::{Halfspace3, Point2, Point3};

fn records<const K: usize>(text: &str) -> Result<Vec<[i64; K]>> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let vals: Vec<&str> = line.split_whitespace().collect();
        if vals.len() != K {
            return Err(Error::Parse {
                line: no + 1,
                msg: format!("expected {K} integers, found {}", vals.len()),
            });
        }
        let mut rec = [0i64; K];
        for (slot, v) in rec.iter_mut().zip(vals) {
            *slot = v.parse().map_err(|_| Error::Parse {
                line: no + 1,
                msg: format!("not an integer: {v:?}"),
            })?;
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn parse_points(text: &str) -> Result<Vec<Point2>> {
    Ok(records::<2>(text)?
        .into_iter()
        .map(|[x, y]| Point2::new(x, y))
        .collect())
}

pub fn parse_points3(text: &str) -> Result<Vec<Point3>> {
    Ok(records::<3>(text)?
        .into_iter()
        .map(|[x, y, z]| Point3::new(x, y, z))
        .collect())
}

pub fn parse_halfspaces(text: &str) -> Result<Vec<Halfspace3>> {
    Ok(records::<4>(text)?
        .into_iter()
        .map(|[a, b, c, d]| Halfspace3::new(a, b, c, d))
        .collect())
}

pub fn format_points(pts: &[Point2]) -> String {
    pts.iter().map(|p| format!("{} {}\n", p.x, p.y)).collect()
}

pub fn format_halfspaces(hs: &[Halfspace3]) -> String {
    hs.iter()
        .map(|h| format!("{} {} {} {}\n", h.a, h.b, h.c, h.d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_errors() {
        let p = parse_points("# hull\n1 2\n\n  -3 4 \n").unwrap();
        assert_eq!(p, vec![Point2::new(1, 2), Point2::new(-3, 4)]);
        assert_eq!(
            parse_points("1 2\n3\n"),
            Err(Error::Parse {
                line: 2,
                msg: "expected 2 integers, found 1".into()
            })
        );
        assert!(matches!(parse_halfspaces("1 0 0 x"), Err(Error::Parse { line: 1, .. })));
        let h = parse_halfspaces(&format_halfspaces(&[Halfspace3::new(1, -2, 3, 4)])).unwrap();
        assert_eq!(h, vec![Halfspace3::new(1, -2, 3, 4)]);
    }
}
