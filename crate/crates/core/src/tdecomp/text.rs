//! Decomposition text format: `bag <id> : <nodes...>` and
//! `link <id1> <id2>` records, `#` comments.

use std::collections::HashMap;
use std::fmt;

use super::{DecompositionError, TreeDecomposition};

fn syntax(line: usize, message: impl Into<String>) -> DecompositionError {
    DecompositionError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses a decomposition whose bag entries are integer node ids.
pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition, DecompositionError> {
    parse_decomposition_with(text, |tok| tok.parse().ok())
}

/// Parses a decomposition, mapping bag entries to node indices with
/// `resolve`. Bags are numbered in order of appearance.
pub fn parse_decomposition_with(
    text: &str,
    resolve: impl Fn(&str) -> Option<usize>,
) -> Result<TreeDecomposition, DecompositionError> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut bags = Vec::new();
    let mut pending_links = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "bag" => {
                if toks.len() < 3 || toks[2] != ":" {
                    return Err(syntax(line_no, "expected `bag <id> : <nodes...>`"));
                }
                if ids.insert(toks[1].to_string(), bags.len()).is_some() {
                    return Err(syntax(line_no, format!("duplicate bag `{}`", toks[1])));
                }
                let nodes = toks[3..]
                    .iter()
                    .map(|t| resolve(t).ok_or_else(|| syntax(line_no, format!("unknown node `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                bags.push(nodes);
            }
            "link" => {
                let [_, a, b] = toks[..] else {
                    return Err(syntax(line_no, "expected `link <id1> <id2>`"));
                };
                pending_links.push((line_no, a.to_string(), b.to_string()));
            }
            other => return Err(syntax(line_no, format!("unknown record `{other}`"))),
        }
    }
    let links = pending_links
        .into_iter()
        .map(|(line, a, b)| {
            let get = |id: &str| {
                ids.get(id)
                    .copied()
                    .ok_or_else(|| syntax(line, format!("unknown bag `{id}`")))
            };
            Ok((get(&a)?, get(&b)?))
        })
        .collect::<Result<Vec<_>, DecompositionError>>()?;
    Ok(TreeDecomposition::new(bags, links))
}

impl fmt::Display for TreeDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, bag) in self.bags().iter().enumerate() {
            write!(f, "bag {i} :")?;
            for x in bag {
                write!(f, " {x}")?;
            }
            writeln!(f)?;
        }
        for (a, b) in self.links() {
            writeln!(f, "link {a} {b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let td = parse_decomposition("# path\nbag a : 0 1\nbag b : 1 2\nlink a b\n").unwrap();
        assert_eq!(td.bags(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(td.links(), &[(0, 1)]);
        assert_eq!(parse_decomposition(&td.to_string()).unwrap(), td);
    }

    #[test]
    fn errors() {
        assert!(parse_decomposition("bag 0 0 1\n").is_err());
        assert!(parse_decomposition("bag 0 : x\n").is_err());
        assert!(parse_decomposition("bag 0 : 1\nlink 0 1\n").is_err());
        assert!(parse_decomposition("bag 0 : 1\nbag 0 : 2\n").is_err());
    }
}
