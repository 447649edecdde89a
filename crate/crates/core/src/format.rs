//! Text format for framed plumbings, and DOT export.
//!
//! ```text
//! tree t1
//! # comment
//! vertex b color=B f=-2
//! vertex w color=W f=3
//! edge b w eps=+1
//! ```
//!
//! One `tree <name>` header, then one `vertex` line per vertex and one
//! `edge` line per edge, fields in exactly this order. Lines whose first
//! non-blank character is `#` are comments; blank lines are ignored. The
//! matching and orientation are derived on load.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use thiserror::Error;

use crate::form::{FormError, FramedPlumbing, Sign};
use crate::tree::{Color, MatchedTree, TreeError, VertexSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] FormError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl From<TreeError> for FormatError {
    fn from(e: TreeError) -> Self {
        FormatError::Invalid(FormError::Tree(e))
    }
}

/// A named framed plumbing, as stored in a tree file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFile {
    pub name: String,
    pub plumbing: FramedPlumbing,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    line.split_whitespace()
        .map(|t| Token {
            text: t,
            column: t.as_ptr() as usize - line.as_ptr() as usize + 1,
        })
        .collect()
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn field<'a>(tok: Option<&Token<'a>>, key: &str, line: usize, end: usize, what: &str) -> Result<&'a str, ParseError> {
    let tok = tok.ok_or_else(|| err(line, end, format!("{what}: missing `{key}=`")))?;
    tok.text
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| {
            err(
                line,
                tok.column,
                format!("{what}: expected `{key}=...`, found `{}`", tok.text),
            )
        })
}

pub fn parse(text: &str) -> Result<TreeFile, FormatError> {
    let mut name: Option<String> = None;
    let mut vertices = Vec::new();
    let mut framing = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut signs = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = tokens(raw);
        let end = raw.trim_end().len() + 1;
        let keyword = &toks[0];
        if name.is_none() && keyword.text != "tree" {
            return Err(err(line_no, keyword.column, "expected `tree <name>` header").into());
        }
        match keyword.text {
            "tree" => {
                if name.is_some() {
                    return Err(err(line_no, keyword.column, "duplicate `tree` header").into());
                }
                match toks.as_slice() {
                    [_, n] => name = Some(n.text.to_string()),
                    [_] => return Err(err(line_no, end, "missing tree name").into()),
                    [_, _, extra, ..] => return Err(err(line_no, extra.column, "unexpected token").into()),
                    [] => unreachable!(),
                }
            }
            "vertex" => {
                let what = "vertex";
                let label = toks.get(1).ok_or_else(|| err(line_no, end, "vertex: missing label"))?;
                let color = match field(toks.get(2), "color", line_no, end, what)? {
                    "B" => Color::B,
                    "W" => Color::W,
                    other => {
                        return Err(err(
                            line_no,
                            toks[2].column,
                            format!("vertex: color must be B or W, found `{other}`"),
                        )
                        .into())
                    }
                };
                let f_text = field(toks.get(3), "f", line_no, end, what)?;
                let f: BigInt = f_text
                    .parse()
                    .map_err(|_| err(line_no, toks[3].column, format!("vertex: `{f_text}` is not an integer")))?;
                if let Some(extra) = toks.get(4) {
                    return Err(err(line_no, extra.column, "unexpected token").into());
                }
                vertices.push(VertexSpec::new(label.text, color));
                framing.push(f);
            }
            "edge" => {
                let what = "edge";
                let a = toks
                    .get(1)
                    .ok_or_else(|| err(line_no, end, "edge: missing endpoints"))?;
                let b = toks
                    .get(2)
                    .ok_or_else(|| err(line_no, end, "edge: missing second endpoint"))?;
                let eps = match field(toks.get(3), "eps", line_no, end, what)? {
                    "+1" => Sign::Plus,
                    "-1" => Sign::Minus,
                    other => {
                        return Err(err(
                            line_no,
                            toks[3].column,
                            format!("edge: eps must be +1 or -1, found `{other}`"),
                        )
                        .into())
                    }
                };
                if let Some(extra) = toks.get(4) {
                    return Err(err(line_no, extra.column, "unexpected token").into());
                }
                edges.push((a.text.to_string(), b.text.to_string()));
                signs.push(eps);
            }
            other => {
                return Err(err(line_no, keyword.column, format!("unknown keyword `{other}`")).into());
            }
        }
    }
    let name = name.ok_or_else(|| err(1, 1, "missing `tree <name>` header"))?;
    let tree = MatchedTree::build(vertices, edges)?;
    let plumbing = FramedPlumbing::new(tree, framing, signs)?;
    Ok(TreeFile { name, plumbing })
}

pub fn parse_file(path: impl AsRef<Path>) -> Result<TreeFile, FormatError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

/// Edges sorted by the canonical positions of (lower, upper) endpoint.
fn edge_order(tree: &MatchedTree) -> Vec<crate::tree::EdgeId> {
    let mut ids: Vec<_> = tree.edge_ids().collect();
    ids.sort_by_key(|&e| {
        let edge = tree.edge(e);
        (tree.position(edge.head), tree.position(edge.tail))
    });
    ids
}

/// Canonical text: vertices in canonical order, edges written tail first.
pub fn serialize(file: &TreeFile) -> String {
    let fp = &file.plumbing;
    let tree = fp.tree();
    let mut out = String::new();
    writeln!(out, "tree {}", file.name).unwrap();
    writeln!(out, "# basis: {}", tree.basis_labels().join(" ")).unwrap();
    for &v in tree.canonical_order() {
        writeln!(out, "vertex {} color={} f={}", tree.label(v), tree.color(v), fp.f(v)).unwrap();
    }
    for e in edge_order(tree) {
        let edge = tree.edge(e);
        writeln!(
            out,
            "edge {} {} eps={}",
            tree.label(edge.tail),
            tree.label(edge.head),
            fp.eps(e)
        )
        .unwrap();
    }
    out
}

/// Graphviz digraph. `B` vertices filled, `W` hollow; matched edges drawn
/// with a doubled stroke; arrows follow the orientation.
pub fn export_dot(file: &TreeFile) -> String {
    let fp = &file.plumbing;
    let tree = fp.tree();
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(&file.name)).unwrap();
    writeln!(out, "  // basis: {}", tree.basis_labels().join(" ")).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for &v in tree.canonical_order() {
        let label = escape(tree.label(v));
        let style = match tree.color(v) {
            Color::B => "style=filled, fillcolor=black, fontcolor=white",
            Color::W => "style=solid, fillcolor=white",
        };
        writeln!(out, "  \"{label}\" [{style}, label=\"{label}\\nf={}\"];", fp.f(v)).unwrap();
    }
    for e in edge_order(tree) {
        let edge = tree.edge(e);
        let stroke = if edge.matched {
            "color=\"black:invis:black\""
        } else {
            "color=black"
        };
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [{stroke}, label=\"{}\"];",
            escape(tree.label(edge.tail)),
            escape(tree.label(edge.head)),
            fp.eps(e)
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
