//! Graph text format: `colour <name>`, `node <id>` and
//! `arc <u> <v> [<colour>]` records, `#` comments.

use std::collections::HashMap;

use super::{EdgeColouredGraph, GraphError};

/// A parsed graph together with the textual node ids, indexed by node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: EdgeColouredGraph,
    pub names: Vec<String>,
}

fn syntax(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses a graph. Without `colour` records the graph is uncoloured and
/// arcs must not name a colour; with them, every arc must.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, GraphError> {
    let mut colours: Vec<String> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut arcs = Vec::new();
    let mut seen_arc = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "colour" => {
                if seen_arc {
                    return Err(syntax(line_no, "`colour` after the first `arc`"));
                }
                let [_, name] = toks[..] else {
                    return Err(syntax(line_no, "expected `colour <name>`"));
                };
                if colours.iter().any(|c| c == name) {
                    return Err(syntax(line_no, format!("duplicate colour `{name}`")));
                }
                colours.push(name.to_string());
            }
            "node" => {
                let [_, id] = toks[..] else {
                    return Err(syntax(line_no, "expected `node <id>`"));
                };
                if index.contains_key(id) {
                    return Err(syntax(line_no, format!("duplicate node `{id}`")));
                }
                index.insert(id.to_string(), names.len());
                names.push(id.to_string());
            }
            "arc" => {
                seen_arc = true;
                let (u, v, c) = match toks[..] {
                    [_, u, v] => (u, v, None),
                    [_, u, v, c] => (u, v, Some(c)),
                    _ => return Err(syntax(line_no, "expected `arc <u> <v> [<colour>]`")),
                };
                let node = |id: &str| {
                    index
                        .get(id)
                        .copied()
                        .ok_or_else(|| syntax(line_no, format!("unknown node `{id}`")))
                };
                let (u, v) = (node(u)?, node(v)?);
                let colour = match (c, colours.is_empty()) {
                    (None, true) => 0,
                    (Some(c), false) => colours
                        .iter()
                        .position(|x| x == c)
                        .ok_or_else(|| syntax(line_no, format!("unknown colour `{c}`")))?,
                    (None, false) => return Err(syntax(line_no, "arc needs a colour")),
                    (Some(_), true) => return Err(syntax(line_no, "colour given but none declared")),
                };
                arcs.push((u, v, colour));
            }
            other => return Err(syntax(line_no, format!("unknown record `{other}`"))),
        }
    }
    let graph = if colours.is_empty() {
        let simple = super::SimpleGraph::new(names.len(), arcs.into_iter().map(|(u, v, _)| (u, v)))?;
        EdgeColouredGraph::uncoloured(&simple)
    } else {
        EdgeColouredGraph::new(names.len(), colours, arcs)?
    };
    Ok(ParsedGraph { graph, names })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_coloured_graph() {
        let p =
            parse_graph("colour red\ncolour blue\nnode a\nnode b\nnode c\narc a b red\narc a b blue\narc b c red\n")
                .unwrap();
        assert_eq!(p.graph.nodes(), 3);
        assert_eq!(p.graph.arcs().len(), 3);
        assert_eq!(p.graph.arc_colour(1), Some(1));
        assert_eq!(p.names, vec!["a", "b", "c"]);
    }

    #[test]
    fn parses_plain_graph() {
        let p = parse_graph("node 0\nnode 1\narc 0 1\n").unwrap();
        assert_eq!(p.graph.colour_count(), 0);
        assert_eq!(p.graph.arc_colour(0), None);
    }

    #[test]
    fn rejects_bad_records() {
        assert!(parse_graph("node a\narc a b\n").is_err());
        assert!(parse_graph("colour x\nnode a\nnode b\narc a b\n").is_err());
        assert!(parse_graph("node a\nnode a\n").is_err());
        assert!(matches!(parse_graph("node a\narc a a\n"), Err(GraphError::Loop(0))));
    }
}
