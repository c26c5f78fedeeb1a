//! Parenthesised prefix syntax for formulas.
//!
//! ```text
//! (exists nodeset D (forall node v (or (in v D) (exists node w (and (in w D) (adj v w))))))
//! ```

use super::ast::{Declarations, Formula, Signature, Sort};
use super::{check::check, MsoError};

#[derive(Clone, Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Word(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            b';' => {
                // comment to end of line
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && !matches!(bytes[i], b'(' | b')' | b';') {
                    i += 1;
                }
                out.push((start, Tok::Word(&text[start..i])));
            }
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
}

fn is_identifier(w: &str) -> bool {
    let mut cs = w.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && w != "true"
        && w != "false"
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> MsoError {
        let position = self.toks.get(self.pos).map_or(self.end, |t| t.0);
        MsoError::Syntax {
            position,
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok<'a>> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn word(&mut self, what: &str) -> Result<&'a str, MsoError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = *w;
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn var(&mut self) -> Result<String, MsoError> {
        let w = self.word("a variable")?;
        if !is_identifier(w) {
            self.pos -= 1;
            return Err(self.err(format!("`{w}` is not a variable name")));
        }
        Ok(w.to_string())
    }

    fn integer(&mut self) -> Result<usize, MsoError> {
        let w = self.word("an integer")?;
        w.parse().map_err(|_| {
            self.pos -= 1;
            self.err(format!("`{w}` is not an integer"))
        })
    }

    fn close(&mut self) -> Result<(), MsoError> {
        match self.peek() {
            Some(Tok::Close) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err("expected `)`")),
        }
    }

    fn sort(&mut self) -> Result<Sort, MsoError> {
        let w = self.word("a sort")?;
        Ok(match w {
            "node" => Sort::Node,
            "arc" => Sort::Arc,
            "nodeset" => Sort::NodeSet,
            "arcset" => Sort::ArcSet,
            "face" => Sort::Face(self.integer()?),
            "faceset" => Sort::FaceSet(self.integer()?),
            other => {
                self.pos -= 1;
                return Err(self.err(format!("unknown sort `{other}`")));
            }
        })
    }

    fn formula(&mut self) -> Result<Formula, MsoError> {
        match self.next() {
            Some(Tok::Word("true")) => Ok(Formula::True),
            Some(Tok::Word("false")) => Ok(Formula::False),
            Some(Tok::Open) => {
                let head = self.word("an operator")?;
                let f = match head {
                    "and" | "or" => {
                        let mut parts = Vec::new();
                        while !matches!(self.peek(), Some(Tok::Close) | None) {
                            parts.push(self.formula()?);
                        }
                        if head == "and" {
                            Formula::And(parts)
                        } else {
                            Formula::Or(parts)
                        }
                    }
                    "not" => Formula::Not(Box::new(self.formula()?)),
                    "implies" => {
                        let a = self.formula()?;
                        Formula::Implies(Box::new(a), Box::new(self.formula()?))
                    }
                    "forall" | "exists" => {
                        let sort = self.sort()?;
                        let v = self.var()?;
                        let body = Box::new(self.formula()?);
                        if head == "forall" {
                            Formula::Forall(sort, v, body)
                        } else {
                            Formula::Exists(sort, v, body)
                        }
                    }
                    "=" => Formula::Eq(self.var()?, self.var()?),
                    "in" => Formula::In(self.var()?, self.var()?),
                    "inc" => Formula::Inc(self.var()?, self.var()?),
                    "adj" => Formula::Adj(self.var()?, self.var()?),
                    "col" => Formula::Col(self.integer()?, self.var()?),
                    "adjc" => Formula::Adjc(self.integer()?, self.var()?, self.var()?),
                    "sub" => {
                        let w = self.word("a label sequence")?;
                        let pi: Option<Vec<u8>> = w.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect();
                        let pi = pi.ok_or_else(|| {
                            self.pos -= 1;
                            self.err(format!("`{w}` is not a digit string"))
                        })?;
                        Formula::Sub(pi, self.var()?, self.var()?)
                    }
                    other => {
                        self.pos -= 1;
                        return Err(self.err(format!("unknown operator `{other}`")));
                    }
                };
                self.close()?;
                Ok(f)
            }
            Some(Tok::Close) => {
                self.pos -= 1;
                Err(self.err("unexpected `)`"))
            }
            Some(Tok::Word(w)) => {
                self.pos -= 1;
                Err(self.err(format!("unexpected `{w}`")))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses without sort checking.
pub fn parse_syntax(text: &str) -> Result<Formula, MsoError> {
    let mut p = Parser {
        toks: tokenize(text),
        pos: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(p.err("trailing input after formula"));
    }
    Ok(f)
}

/// Parses and sort-checks a formula with the given free variables.
pub fn parse_formula(text: &str, sig: Signature, free: &Declarations) -> Result<Formula, MsoError> {
    let f = parse_syntax(text)?;
    check(&f, sig, free)?;
    Ok(f)
}

/// Parses a formula preceded by optional `free <SORT> <name>` lines.
pub fn parse_with_declarations(text: &str, sig: Signature) -> Result<(Declarations, Formula), MsoError> {
    let mut free = Declarations::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with(';') || trimmed.starts_with('#') {
            offset += line.len();
            continue;
        }
        let Some(rest) = trimmed.strip_prefix("free ") else {
            break;
        };
        let mut p = Parser {
            toks: tokenize(rest),
            pos: 0,
            end: rest.len(),
        };
        let shift = |e: MsoError| match e {
            MsoError::Syntax { position, message } => MsoError::Syntax {
                position: position + offset + (line.len() - line.trim_start().len()) + 5,
                message,
            },
            e => e,
        };
        let sort = p.sort().map_err(shift)?;
        let name = p.var().map_err(shift)?;
        free.push((name, sort));
        offset += line.len();
    }
    let body = &text[offset..];
    let f = parse_syntax(body).map_err(|e| match e {
        MsoError::Syntax { position, message } => MsoError::Syntax {
            position: position + offset,
            message,
        },
        e => e,
    })?;
    check(&f, sig, &free)?;
    Ok((free, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for text in [
            "true",
            "(and)",
            "(exists nodeset D (forall node v (or (in v D) (exists node w (and (in w D) (adj v w))))))",
            "(forall face 1 f (exists face 2 s (sub 01 f s)))",
            "(implies (col 2 e) (not (adjc 1 u v)))",
            "(and (= a b) (inc e v) false)",
        ] {
            let f = parse_syntax(text).unwrap();
            assert_eq!(f.to_string(), text);
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse_syntax("(and (adj u v) (frob x))") {
            Err(MsoError::Syntax { position, .. }) => assert_eq!(position, 16),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_syntax("(not true"),
            Err(MsoError::Syntax { position: 9, .. })
        ));
        assert!(parse_syntax("true false").is_err());
        assert!(parse_syntax("(forall widget x true)").is_err());
        assert!(parse_syntax("(in 3 X)").is_err());
    }

    #[test]
    fn declarations_header() {
        let (free, f) = parse_with_declarations(
            "free nodeset D\n(forall node v (in v D))",
            Signature::Graph { colours: 0 },
        )
        .unwrap();
        assert_eq!(free, vec![("D".to_string(), Sort::NodeSet)]);
        assert_eq!(f.to_string(), "(forall node v (in v D))");
    }
}
