//! Plain-text file formats. Every format skips blank lines and `#` comments,
//! and every emitter's output reparses to an equal value.
//!
//! Class:
//! ```text
//! points 4
//! hypotheses 2
//! 0001
//! 0110
//! ```
//! Edge list: `p <V> <E>`, optional `v <i> <dataset>`, then `e <i> <j>` lines.
//! Mistake tree: one token per line in pre-order, `n <point>` or `l`.
//! Certificate: `m <m>`, `vertices <V>`, `value <a/b>`, then
//! `primal <i> <a/b>` and `dual <labeling> <a/b>` lines.

use std::fmt::Write as _;

use cliquedim_core::clique::{AdjacencyMatrix, MistakeTree};
use cliquedim_core::dimension::DimensionReport;
use cliquedim_core::rational::{self, Rational};
use cliquedim_core::{
    ConceptClass, ContradictionGraph, DualityCertificate, FractionalClique, FractionalColoring,
    HypothesisPattern,
};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
    #[error(transparent)]
    Core(#[from] cliquedim_core::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn keyed<'a>(line: (usize, &'a str), key: &str) -> Result<Vec<&'a str>, FormatError> {
    let mut parts = line.1.split_whitespace();
    if parts.next() != Some(key) {
        return Err(syntax(line.0, format!("expected `{key}`")));
    }
    Ok(parts.collect())
}

fn number<T: std::str::FromStr>(line: usize, s: Option<&&str>) -> Result<T, FormatError> {
    s.and_then(|s| s.parse().ok())
        .ok_or_else(|| syntax(line, "expected a nonnegative integer"))
}

fn fraction(line: usize, s: Option<&&str>) -> Result<Rational, FormatError> {
    s.and_then(|s| rational::parse_fraction(s))
        .ok_or_else(|| syntax(line, "expected a fraction a/b"))
}

pub fn parse_class(text: &str) -> Result<ConceptClass, FormatError> {
    let mut lines = content_lines(text);
    let head = lines.next().ok_or(FormatError::Truncated("points"))?;
    let n: usize = number(head.0, keyed(head, "points")?.first())?;
    let head = lines.next().ok_or(FormatError::Truncated("hypotheses"))?;
    let k: usize = number(head.0, keyed(head, "hypotheses")?.first())?;
    let mut patterns = Vec::with_capacity(k);
    for (line, row) in lines {
        let h = HypothesisPattern::parse(row)
            .ok_or_else(|| syntax(line, "row must be a 0/1 string"))?;
        if h.width() != n {
            return Err(syntax(
                line,
                format!("row has {} labels, expected {n}", h.width()),
            ));
        }
        patterns.push(h);
    }
    if patterns.len() != k {
        return Err(syntax(
            0,
            format!("declared {k} hypotheses, found {}", patterns.len()),
        ));
    }
    Ok(ConceptClass::from_patterns(n, &patterns)?)
}

pub fn emit_class(class: &ConceptClass) -> String {
    let mut out = format!(
        "points {}\nhypotheses {}\n",
        class.universe_size(),
        class.len()
    );
    for h in class.patterns() {
        let _ = writeln!(out, "{h}");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    /// Dataset renderings, present only in verbose output.
    pub labels: Vec<(usize, String)>,
}

impl EdgeList {
    pub fn from_graph(g: &ContradictionGraph, verbose: bool) -> Self {
        EdgeList {
            vertices: g.len(),
            edges: g.edges().collect(),
            labels: if verbose {
                g.vertices()
                    .iter()
                    .enumerate()
                    .map(|(i, d)| (i, d.render()))
                    .collect()
            } else {
                Vec::new()
            },
        }
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        AdjacencyMatrix::from_edges(self.vertices, &self.edges)
    }
}

pub fn emit_edges(list: &EdgeList) -> String {
    let mut out = format!("p {} {}\n", list.vertices, list.edges.len());
    for (i, label) in &list.labels {
        let _ = writeln!(out, "v {i} {label}");
    }
    for (i, j) in &list.edges {
        let _ = writeln!(out, "e {i} {j}");
    }
    out
}

pub fn parse_edges(text: &str) -> Result<EdgeList, FormatError> {
    let mut lines = content_lines(text);
    let head = lines.next().ok_or(FormatError::Truncated("p"))?;
    let parts = keyed(head, "p")?;
    let vertices: usize = number(head.0, parts.first())?;
    let declared: usize = number(head.0, parts.get(1))?;
    let mut list = EdgeList {
        vertices,
        edges: Vec::new(),
        labels: Vec::new(),
    };
    for (line, text) in lines {
        let parts: Vec<&str> = text.split_whitespace().collect();
        match parts.first().copied() {
            Some("v") => {
                let i: usize = number(line, parts.get(1))?;
                list.labels
                    .push((i, parts.get(2).unwrap_or(&"").to_string()));
            }
            Some("e") => {
                let i: usize = number(line, parts.get(1))?;
                let j: usize = number(line, parts.get(2))?;
                if i >= vertices || j >= vertices || i == j {
                    return Err(syntax(line, "edge endpoint out of range"));
                }
                list.edges.push((i, j));
            }
            _ => return Err(syntax(line, "expected `v` or `e`")),
        }
    }
    if list.edges.len() != declared {
        return Err(syntax(
            head.0,
            format!("declared {declared} edges, found {}", list.edges.len()),
        ));
    }
    Ok(list)
}

pub fn emit_tree(tree: &MistakeTree) -> String {
    fn walk(t: &MistakeTree, out: &mut String) {
        match t {
            MistakeTree::Leaf(_) => out.push_str("l\n"),
            MistakeTree::Node { point, zero, one } => {
                let _ = writeln!(out, "n {}", point.0);
                walk(zero, out);
                walk(one, out);
            }
        }
    }
    let mut out = String::new();
    walk(tree, &mut out);
    out
}

pub fn parse_tree(text: &str) -> Result<MistakeTree, FormatError> {
    fn build<'a, I: Iterator<Item = (usize, &'a str)>>(
        lines: &mut I,
    ) -> Result<MistakeTree, FormatError> {
        let (line, text) = lines.next().ok_or(FormatError::Truncated("tree node"))?;
        let parts: Vec<&str> = text.split_whitespace().collect();
        match parts.as_slice() {
            ["l"] => Ok(MistakeTree::leaf()),
            ["n", p] => {
                let point = p.parse().map_err(|_| syntax(line, "bad point"))?;
                let zero = build(lines)?;
                let one = build(lines)?;
                Ok(MistakeTree::node(point, zero, one))
            }
            _ => Err(syntax(line, "expected `n <point>` or `l`")),
        }
    }
    let mut lines = content_lines(text);
    let tree = build(&mut lines)?;
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "trailing content after tree"));
    }
    Ok(tree)
}

pub fn emit_certificate(cert: &DualityCertificate<'_>) -> String {
    let g = cert.primal.graph();
    let mut out = format!(
        "m {}\nvertices {}\nvalue {}\n",
        g.m(),
        g.len(),
        rational::to_fraction_string(&cert.value)
    );
    for (i, w) in cert.primal.support() {
        let _ = writeln!(out, "primal {i} {}", rational::to_fraction_string(w));
    }
    for (h, w) in cert.dual.weights() {
        let _ = writeln!(out, "dual {h} {}", rational::to_fraction_string(w));
    }
    out
}

/// Rebuilds a certificate against `graph`; call `validate` to re-check it.
pub fn parse_certificate<'g>(
    text: &str,
    graph: &'g ContradictionGraph,
) -> Result<DualityCertificate<'g>, FormatError> {
    let mut lines = content_lines(text);
    let head = lines.next().ok_or(FormatError::Truncated("m"))?;
    let m: usize = number(head.0, keyed(head, "m")?.first())?;
    if m != graph.m() {
        return Err(syntax(
            head.0,
            format!("certificate is for m={m}, graph has m={}", graph.m()),
        ));
    }
    let head = lines.next().ok_or(FormatError::Truncated("vertices"))?;
    let v: usize = number(head.0, keyed(head, "vertices")?.first())?;
    if v != graph.len() {
        return Err(syntax(
            head.0,
            format!("certificate has {v} vertices, graph has {}", graph.len()),
        ));
    }
    let head = lines.next().ok_or(FormatError::Truncated("value"))?;
    let value = fraction(head.0, keyed(head, "value")?.first())?;
    let mut primal = vec![Rational::from_integer(0.into()); graph.len()];
    let mut dual = Vec::new();
    for (line, text) in lines {
        let parts: Vec<&str> = text.split_whitespace().collect();
        match parts.first().copied() {
            Some("primal") => {
                let i: usize = number(line, parts.get(1))?;
                if i >= primal.len() {
                    return Err(syntax(line, "vertex out of range"));
                }
                primal[i] = fraction(line, parts.get(2))?;
            }
            Some("dual") => {
                let h = parts
                    .get(1)
                    .and_then(|s| HypothesisPattern::parse(s))
                    .ok_or_else(|| syntax(line, "bad labeling"))?;
                dual.push((h, fraction(line, parts.get(2))?));
            }
            _ => return Err(syntax(line, "expected `primal` or `dual`")),
        }
    }
    Ok(DualityCertificate {
        primal: FractionalClique::new(graph, primal)?,
        dual: FractionalColoring::new(graph, dual)?,
        value,
    })
}

pub fn emit_report_csv(report: &DimensionReport) -> String {
    let mut out =
        String::from("m,num_vertices,omega,omega_exact,omega_star_num,omega_star_den,two_pow_m\n");
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.m,
            r.num_vertices,
            r.omega,
            r.omega_exact,
            r.omega_star.numer(),
            r.omega_star.denom(),
            r.two_pow_m
        );
    }
    let _ = writeln!(out, "\nsummary,value,exactness");
    let _ = writeln!(out, "vc,{},exact", report.vc);
    let _ = writeln!(out, "ld,{},exact", report.ld);
    let _ = writeln!(out, "cd,{},{}", report.cd.value, report.cd.exactness);
    let _ = writeln!(
        out,
        "cd_star,{},{}",
        report.cd_star.value, report.cd_star.exactness
    );
    let _ = writeln!(out, "m_max,{},", report.m_max);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cliquedim_core::dimension::littlestone_dimension;
    use cliquedim_core::fractional::omega_star;
    use cliquedim_core::{Family, Limits};

    #[test]
    fn class_round_trip() {
        let c = Family::PaperExample.generate().unwrap();
        let text = emit_class(&c);
        assert!(text.starts_with("points 4\nhypotheses 8\n"));
        assert_eq!(parse_class(&text).unwrap(), c);
        let commented = format!("# header\n\n{text}# trailer\n");
        assert_eq!(parse_class(&commented).unwrap(), c);
    }

    #[test]
    fn class_errors() {
        assert!(matches!(parse_class(""), Err(FormatError::Truncated(_))));
        assert!(parse_class("points 2\nhypotheses 1\n011\n").is_err());
        assert!(parse_class("points 2\nhypotheses 2\n01\n").is_err());
        assert!(parse_class("points 2\nhypotheses 1\n0x\n").is_err());
        assert!(parse_class("points 2\nhypotheses 0\n").is_err());
    }

    #[test]
    fn edge_round_trip() {
        let c = Family::PaperExample.generate().unwrap();
        let g = ContradictionGraph::build(&c, 1).unwrap();
        for verbose in [false, true] {
            let list = EdgeList::from_graph(&g, verbose);
            let text = emit_edges(&list);
            assert_eq!(parse_edges(&text).unwrap(), list);
        }
        assert!(emit_edges(&EdgeList::from_graph(&g, false)).starts_with("p 8 4\n"));
        assert!(parse_edges("p 2 1\ne 0 2\n").is_err());
        assert!(parse_edges("p 2 2\ne 0 1\n").is_err());
    }

    #[test]
    fn tree_round_trip() {
        let c = Family::Full { n: 3 }.generate().unwrap();
        let (_, tree) = littlestone_dimension(&c);
        let text = emit_tree(&tree);
        assert_eq!(parse_tree(&text).unwrap(), tree);
        assert!(parse_tree("n 0\nl\n").is_err());
        assert!(parse_tree("l\nl\n").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let c = Family::DisjointPairs { n: 2 }.generate().unwrap();
        let l = Limits::default();
        let g = ContradictionGraph::build(&c, 2).unwrap();
        let cert = omega_star(&g, &l).unwrap();
        let text = emit_certificate(&cert);
        let back = parse_certificate(&text, &g).unwrap();
        back.validate(&l).unwrap();
        assert_eq!(back.value, cert.value);
        assert_eq!(back.primal.weights(), cert.primal.weights());
        assert_eq!(back.dual.weights(), cert.dual.weights());
        assert_eq!(emit_certificate(&back), text);
        let tampered = text.replace("value 2/1", "value 3/1");
        assert!(parse_certificate(&tampered, &g)
            .unwrap()
            .validate(&l)
            .is_err());
    }
}
