//! Line-based triangulation text format.
//!
//! ```text
//! # comment
//! dim 2
//! simplices 2
//! glue 0 1 1 1 : 2 1 0
//! ```
//!
//! `glue s1 f1 s2 f2 : p0 .. pd` glues facet `f1` of `s1` to facet `f2` of
//! `s2` using the permutation with image list `p0 .. pd`. The reverse record
//! is implied and may be omitted.

use std::fmt;
use std::str::FromStr;

use super::{Triangulation, TriangulationError};
use crate::perm::Perm;

fn syntax(line: usize, message: impl Into<String>) -> TriangulationError {
    TriangulationError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, TriangulationError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, found `{tok}`")))
}

impl Triangulation {
    pub fn parse(text: &str) -> Result<Self, TriangulationError> {
        let mut dim = None;
        let mut tri: Option<Triangulation> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            let keyword = toks.next().unwrap();
            match keyword {
                "dim" => {
                    if dim.is_some() {
                        return Err(syntax(line_no, "duplicate `dim` record"));
                    }
                    let d = parse_usize(
                        toks.next().ok_or_else(|| syntax(line_no, "missing dimension"))?,
                        line_no,
                    )?;
                    if d == 0 {
                        return Err(TriangulationError::BadDimension);
                    }
                    dim = Some(d);
                }
                "simplices" => {
                    let d = dim.ok_or_else(|| syntax(line_no, "`simplices` before `dim`"))?;
                    if tri.is_some() {
                        return Err(syntax(line_no, "duplicate `simplices` record"));
                    }
                    let n = parse_usize(toks.next().ok_or_else(|| syntax(line_no, "missing count"))?, line_no)?;
                    tri = Some(Triangulation::new(d, n)?);
                }
                "glue" => {
                    let t = tri
                        .as_mut()
                        .ok_or_else(|| syntax(line_no, "`glue` before `simplices`"))?;
                    let rest: Vec<&str> = toks.collect();
                    let colon = rest
                        .iter()
                        .position(|&s| s == ":")
                        .ok_or_else(|| syntax(line_no, "missing `:` before the gluing map"))?;
                    if colon != 4 {
                        return Err(syntax(line_no, "expected `glue s1 f1 s2 f2 : p0 .. pd`"));
                    }
                    let nums = rest[..4]
                        .iter()
                        .map(|s| parse_usize(s, line_no))
                        .collect::<Result<Vec<_>, _>>()?;
                    let images = rest[5..]
                        .iter()
                        .map(|s| parse_usize(s, line_no))
                        .collect::<Result<Vec<_>, _>>()?;
                    if images.len() != t.dim() + 1 {
                        return Err(syntax(
                            line_no,
                            format!("gluing map needs {} entries, found {}", t.dim() + 1, images.len()),
                        ));
                    }
                    let map = Perm::from_images(&images).ok_or(TriangulationError::NotAPermutation { dim: t.dim() })?;
                    t.glue(nums[0], nums[1], nums[2], nums[3], map)?;
                }
                other => return Err(syntax(line_no, format!("unknown record `{other}`"))),
            }
        }
        match (dim, tri) {
            (_, Some(t)) => Ok(t),
            (None, None) => Err(syntax(0, "missing `dim` record")),
            (Some(_), None) => Err(syntax(0, "missing `simplices` record")),
        }
    }

    /// Serialises in the text format, one record per gluing.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl FromStr for Triangulation {
    type Err = TriangulationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Triangulation::parse(s)
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim())?;
        writeln!(f, "simplices {}", self.size())?;
        for g in self.gluings() {
            writeln!(
                f,
                "glue {} {} {} {} : {}",
                g.simplex, g.facet, g.other, g.other_facet, g.map
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_klein_bottle() {
        let t: Triangulation =
            "# Klein bottle\ndim 2\nsimplices 2\nglue 0 1 1 1 : 2 1 0\nglue 0 2 0 0 : 1 2 0\nglue 1 2 1 0 : 1 2 0\n"
                .parse()
                .unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.gluing_count(), 3);
        assert!(t.is_closed());
        let again: Triangulation = t.to_text().parse().unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn reports_errors() {
        let err = Triangulation::parse("dim 2\nsimplices 1\nglue 0 1 0 1 : 0 1 2\n").unwrap_err();
        assert!(err.to_string().contains("facet glued to itself"));
        assert!(matches!(
            Triangulation::parse("dim 2\nsimplices 1\nglue 0 1 0 2 : 0 1 2\n"),
            Err(TriangulationError::MapMismatch { .. })
        ));
        assert!(matches!(
            Triangulation::parse("dim 2\nsimplices 1\nglue 0 1 3 2 : 0 2 1\n"),
            Err(TriangulationError::SimplexOutOfRange { .. })
        ));
        assert!(matches!(
            Triangulation::parse("dim 2\nsimplices 2\nglue 0 1 1 1 : 0 1 2\nglue 0 1 1 2 : 0 2 1\n"),
            Err(TriangulationError::SlotInUse { .. })
        ));
        assert!(matches!(
            Triangulation::parse("simplices 2\n"),
            Err(TriangulationError::Syntax { .. })
        ));
        assert!(matches!(
            Triangulation::parse("dim 2\nsimplices 1\nglue 0 1 0 2 : 0 1\n"),
            Err(TriangulationError::Syntax { .. })
        ));
    }
}
