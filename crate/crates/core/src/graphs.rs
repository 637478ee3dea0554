//! Finite directed graphs, their brute-force symmetries, and the classical
//! (commutative) points of graph symmetry presentations.
//!
//! Vertices are numbered 1..=m. Edges are ordered pairs; loops are allowed,
//! and an undirected edge is represented by both orientations.

use crate::error::{Error, Result};
use crate::ncalg::{Coeff, SymbolId};
use crate::presentations::Presentation;
use num::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Largest vertex count accepted by the brute-force searches (9! ~ 3.6e5).
pub const BRUTE_FORCE_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    m: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == 0 || a > m || b == 0 || b > m {
                return Err(Error::Invalid(format!(
                    "edge ({a}, {b}) out of range 1..={m}"
                )));
            }
            if !set.insert((a, b)) {
                return Err(Error::Invalid(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(Graph { m, edges: set })
    }

    /// Directed m-cycle 1 -> 2 -> ... -> m -> 1. The 2-cycle is the
    /// bidirected edge on two vertices.
    pub fn polygon(m: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (1..=m).map(|i| (i, i % m + 1)).collect();
        Graph::new(m, edges)
    }

    /// Parses the edge-list format: first line the vertex count, then one
    /// `i j` pair per line (1-based). Blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (mut first_no, mut first_line) = (0usize, "");
        for (no, line) in lines.by_ref() {
            if !line.trim().is_empty() {
                first_no = no + 1;
                first_line = line;
                break;
            }
        }
        if first_line.trim().is_empty() {
            return Err(Error::ParseLine {
                line: 1,
                msg: "missing vertex count".into(),
            });
        }
        let m: usize = first_line.trim().parse().map_err(|_| Error::ParseLine {
            line: first_no,
            msg: format!("bad vertex count {:?}", first_line.trim()),
        })?;
        if m == 0 {
            return Err(Error::ParseLine {
                line: first_no,
                msg: "graph needs at least one vertex".into(),
            });
        }
        let mut edges = BTreeSet::new();
        for (no, line) in lines {
            let line_no = no + 1;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let mut it = t.split_whitespace();
            let parse_vertex = |s: Option<&str>| -> Result<usize> {
                let s = s.ok_or(Error::ParseLine {
                    line: line_no,
                    msg: "expected two vertex numbers".into(),
                })?;
                s.parse().map_err(|_| Error::ParseLine {
                    line: line_no,
                    msg: format!("bad vertex {s:?}"),
                })
            };
            let a = parse_vertex(it.next())?;
            let b = parse_vertex(it.next())?;
            if it.next().is_some() {
                return Err(Error::ParseLine {
                    line: line_no,
                    msg: "expected exactly two vertex numbers".into(),
                });
            }
            if a == 0 || a > m || b == 0 || b > m {
                return Err(Error::ParseLine {
                    line: line_no,
                    msg: format!("edge ({a}, {b}) out of range 1..={m}"),
                });
            }
            if !edges.insert((a, b)) {
                return Err(Error::ParseLine {
                    line: line_no,
                    msg: format!("duplicate edge ({a}, {b})"),
                });
            }
        }
        Ok(Graph { m, edges })
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.m);
        for (a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    /// Connectivity ignoring edge orientation; a single vertex is connected.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.m + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        (1..=self.m).all(|v| seen[v])
    }

    /// n disjoint copies; copy k (1-based) holds vertices (k-1)*m + 1 ..= k*m.
    pub fn disjoint_union(&self, n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::Invalid("need at least one copy".into()));
        }
        let mut edges = Vec::new();
        for k in 0..n {
            for &(a, b) in &self.edges {
                edges.push((k * self.m + a, k * self.m + b));
            }
        }
        Graph::new(n * self.m, edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Permutation of 1..=m stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((1..=m).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &i in &images {
            if i == 0 || i > m || seen[i] {
                return Err(Error::Invalid(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// (self . other)(i) = self(other(i))
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(
            (1..=self.0.len())
                .map(|i| self.apply(other.apply(i)))
                .collect(),
        )
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn render(&self) -> String {
        let v: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        format!("[{}]", v.join(" "))
    }
}

fn permutations_of(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; m + 1];
    fn rec(m: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in 1..=m {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(m, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(m, &mut cur, &mut used, &mut out);
    out
}

fn check_brute_force_size(m: usize) -> Result<()> {
    if m > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit(format!(
            "brute force is limited to {BRUTE_FORCE_LIMIT} vertices, got {m}"
        )));
    }
    Ok(())
}

/// All permutations preserving the edge relation, by exhaustive search.
/// The returned set is checked to be a group before it is handed back.
pub fn classical_automorphisms(g: &Graph) -> Result<Vec<Permutation>> {
    let m = g.vertex_count();
    check_brute_force_size(m)?;
    let mut auts = Vec::new();
    for images in permutations_of(m) {
        let p = Permutation(images);
        let preserves = g.edges().all(|(a, b)| g.has_edge(p.apply(a), p.apply(b)));
        if preserves {
            auts.push(p);
        }
    }
    auts.sort();
    let set: BTreeSet<&Permutation> = auts.iter().collect();
    debug_assert!(set.contains(&Permutation::identity(m)));
    for a in &auts {
        for b in &auts {
            if !set.contains(&a.compose(b)) {
                return Err(Error::Invalid(
                    "automorphism set is not closed under composition".into(),
                ));
            }
        }
    }
    Ok(auts)
}

/// Zero-one matrix points of a presentation whose generators are an m x m
/// grid: the permutations sigma with X(i,j) = 1 exactly when i = sigma(j)
/// satisfying every relation.
pub fn classical_points(p: &Presentation, g: &Graph) -> Result<Vec<Permutation>> {
    let m = g.vertex_count();
    check_brute_force_size(m)?;
    for sym in p.alphabet.symbols() {
        let ok = sym.indices.len() == 2
            && (1..=m as u32).contains(&sym.indices[0])
            && (1..=m as u32).contains(&sym.indices[1]);
        if !ok {
            return Err(Error::Invalid(format!(
                "generator {} is not an {m} x {m} grid entry",
                sym.render()
            )));
        }
    }
    let mut points = Vec::new();
    for images in permutations_of(m) {
        let perm = Permutation(images);
        let value = |id: SymbolId| -> Coeff {
            let idx = &p.alphabet.get(id).indices;
            let (i, j) = (idx[0] as usize, idx[1] as usize);
            if perm.apply(j) == i {
                Coeff::one()
            } else {
                Coeff::zero()
            }
        };
        if p.relations.iter().all(|r| r.eval(&value).is_zero()) {
            points.push(perm);
        }
    }
    points.sort();
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_bidirected() -> Graph {
        Graph::parse("2\n1 2\n2 1\n").unwrap()
    }

    #[test]
    fn parse_and_render_round_trip() {
        let g = Graph::parse("3\n1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(g, Graph::polygon(3).unwrap());
        assert_eq!(Graph::parse(&g.render()).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Graph::parse("3\n1 2\n1 2\n") {
            Err(Error::ParseLine { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("duplicate"));
            }
            other => panic!("expected duplicate error, got {other:?}"),
        }
        match Graph::parse("2\n1 3\n") {
            Err(Error::ParseLine { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected range error, got {other:?}"),
        }
        match Graph::parse("x\n") {
            Err(Error::ParseLine { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected count error, got {other:?}"),
        }
    }

    #[test]
    fn loops_are_accepted() {
        let g = Graph::new(2, [(1, 1), (1, 2)]).unwrap();
        assert!(g.has_edge(1, 1));
    }

    #[test]
    fn connectivity_ignores_orientation() {
        assert!(Graph::polygon(4).unwrap().is_connected());
        assert!(Graph::new(3, [(1, 2), (3, 2)]).unwrap().is_connected());
        assert!(!Graph::new(3, [(1, 2)]).unwrap().is_connected());
        assert!(Graph::new(1, []).unwrap().is_connected());
    }

    #[test]
    fn union_relabels_by_block() {
        let g = k2_bidirected().disjoint_union(2).unwrap();
        assert_eq!(g.vertex_count(), 4);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(1, 2), (2, 1), (3, 4), (4, 3)]);
        assert!(!g.is_connected());
    }

    #[test]
    fn polygon_automorphisms_are_rotations() {
        let auts = classical_automorphisms(&Graph::polygon(3).unwrap()).unwrap();
        assert_eq!(auts.len(), 3);
        let auts4 = classical_automorphisms(&Graph::polygon(4).unwrap()).unwrap();
        assert_eq!(auts4.len(), 4);
    }

    #[test]
    fn union_automorphism_counts() {
        let p3x2 = Graph::polygon(3).unwrap().disjoint_union(2).unwrap();
        assert_eq!(classical_automorphisms(&p3x2).unwrap().len(), 18);
        let k2x2 = k2_bidirected().disjoint_union(2).unwrap();
        assert_eq!(classical_automorphisms(&k2x2).unwrap().len(), 8);
    }

    #[test]
    fn edgeless_graph_has_full_symmetric_group() {
        let g = Graph::new(4, []).unwrap();
        assert_eq!(classical_automorphisms(&g).unwrap().len(), 24);
    }

    #[test]
    fn brute_force_guard() {
        let g = Graph::new(10, []).unwrap();
        assert!(matches!(
            classical_automorphisms(&g),
            Err(Error::SizeLimit(_))
        ));
    }
}
