//! Newick reader for leaf-labeled topologies.
//!
//! Grammar: `tree := node ';'`, `node := name | '(' node (',' node)* ')'`,
//! with names matching `[A-Za-z0-9_]+`. Whitespace between tokens is
//! ignored. Branch lengths and internal labels are rejected.

use super::{LabelMap, LeafLabel, LeafSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Node {
    Leaf {
        name: String,
        position: usize,
    },
    Internal {
        children: Vec<Node>,
        position: usize,
    },
}

impl Node {
    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Node::Leaf { name, .. } => out.push(name),
            Node::Internal { children, .. } => children.iter().for_each(|c| c.collect_names(out)),
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn node(&mut self, depth: usize) -> Result<Node> {
        if depth > 4096 {
            return self.err("nesting too deep");
        }
        match self.peek() {
            Some(b'(') => {
                let position = self.pos;
                self.pos += 1;
                let mut children = vec![self.node(depth + 1)?];
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.node(depth + 1)?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        Some(c) => return self.err(format!("unexpected `{}`", c as char)),
                        None => return self.err("unexpected end of input, expected `)`"),
                    }
                }
                if let Some(c) = self.peek() {
                    if is_name_byte(c) {
                        return self.err("internal node labels are not supported");
                    }
                    if c == b':' {
                        return self.err("branch lengths are not supported");
                    }
                }
                Ok(Node::Internal { children, position })
            }
            Some(c) if is_name_byte(c) => {
                let position = self.pos;
                while self.pos < self.bytes.len() && is_name_byte(self.bytes[self.pos]) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[position..self.pos])
                    .expect("ascii")
                    .to_string();
                if self.peek() == Some(b':') {
                    return self.err("branch lengths are not supported");
                }
                Ok(Node::Leaf { name, position })
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses Newick text into an unvalidated node tree.
pub(crate) fn parse_tree(text: &str) -> Result<Node> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let root = p.node(0)?;
    match p.peek() {
        Some(b';') => p.pos += 1,
        Some(c) => return p.err(format!("unexpected `{}`, expected `;`", c as char)),
        None => return p.err("missing `;` terminator"),
    }
    if p.peek().is_some() {
        return p.err("trailing input after `;`");
    }
    Ok(root)
}

/// Leaf names in first-appearance order.
pub(crate) fn leaf_names(node: &Node) -> Vec<&str> {
    let mut out = Vec::new();
    node.collect_names(&mut out);
    out
}

/// Tree with interned leaves; each internal node records its leaf set.
#[derive(Debug)]
pub(crate) enum Shape {
    Leaf(LeafLabel),
    Internal {
        children: Vec<Shape>,
        leaves: LeafSet,
        position: usize,
    },
}

impl Shape {
    pub(crate) fn leaves(&self) -> LeafSet {
        match self {
            Shape::Leaf(l) => LeafSet::singleton(*l),
            Shape::Internal { leaves, .. } => *leaves,
        }
    }
}

/// Interns the leaf names of one or more parsed trees and checks that no
/// tree repeats a label.
pub(crate) fn intern(nodes: &[Node], labels: &mut LabelMap) -> Result<Vec<Shape>> {
    let names: Vec<&str> = nodes.iter().flat_map(leaf_names).collect();
    let ids = labels.intern_batch(names.iter().copied())?;
    let mut ids = ids.into_iter();
    nodes
        .iter()
        .map(|node| {
            let mut seen = LeafSet::EMPTY;
            build_shape(node, &mut ids, &mut seen, labels)
        })
        .collect()
}

fn build_shape(
    node: &Node,
    ids: &mut impl Iterator<Item = LeafLabel>,
    seen: &mut LeafSet,
    labels: &LabelMap,
) -> Result<Shape> {
    match node {
        Node::Leaf { .. } => {
            let id = ids.next().expect("one id per leaf name");
            if seen.contains(id) {
                return Err(Error::DuplicateLabel(labels.display(id)));
            }
            seen.insert(id);
            Ok(Shape::Leaf(id))
        }
        Node::Internal { children, position } => {
            let children = children
                .iter()
                .map(|c| build_shape(c, ids, seen, labels))
                .collect::<Result<Vec<_>>>()?;
            let leaves = children
                .iter()
                .fold(LeafSet::EMPTY, |acc, c| acc.union(c.leaves()));
            Ok(Shape::Internal {
                children,
                leaves,
                position: *position,
            })
        }
    }
}

/// Parses each text, interns all leaf names as one batch, then validates.
pub(crate) fn parse_many<T>(
    texts: &[&str],
    labels: &mut LabelMap,
    build: impl Fn(&Shape) -> Result<T>,
) -> Result<Vec<T>> {
    let nodes = texts
        .iter()
        .map(|t| parse_tree(t))
        .collect::<Result<Vec<_>>>()?;
    intern(&nodes, labels)?.iter().map(build).collect()
}

/// Non-singleton leaf sets of every internal node, root first.
pub(crate) fn clusters(shape: &Shape, out: &mut Vec<LeafSet>) {
    if let Shape::Internal {
        children, leaves, ..
    } = shape
    {
        out.push(*leaves);
        children.iter().for_each(|c| clusters(c, out));
    }
}

/// Checks that every internal node below the top has exactly two children
/// and the top has `top_arity`.
pub(crate) fn check_arity(shape: &Shape, top_arity: usize) -> Result<()> {
    fn walk(shape: &Shape, expected: usize) -> Result<()> {
        if let Shape::Internal {
            children, position, ..
        } = shape
        {
            if children.len() != expected {
                return Err(Error::Arity {
                    position: *position,
                    expected,
                    found: children.len(),
                });
            }
            children.iter().try_for_each(|c| walk(c, 2))?;
        }
        Ok(())
    }
    walk(shape, top_arity)
}
