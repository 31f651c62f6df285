//! Undirected graphs on dense bitset adjacency, with the constructors used
//! throughout: circulants, complements, induced subgraphs, and the OR /
//! lexicographic products.

use crate::bitset::BitSet;
use crate::{Error, Result};
use num_rational::BigRational;

/// An undirected simple graph. No self-loops; adjacency is symmetric.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

/// How two graphs are multiplied on the Cartesian vertex set.
///
/// The lexicographic product is a spanning subgraph of the OR product on the
/// same vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    Or,
    Lexicographic,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| BitSet::new(n)).collect(),
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u},{v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count()).sum::<usize>() / 2
    }

    #[inline]
    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.degree(0);
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        debug_assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Circulant graph: vertex `i` adjacent to `i ± k (mod n)` for each offset `k`.
    ///
    /// Every circulant admits the cyclic shift as an automorphism, so it is
    /// vertex-transitive by construction.
    pub fn circulant(n: usize, offsets: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("circulant with n = 0".into()));
        }
        let mut g = Graph::new(n);
        for &k in offsets {
            if k == 0 || 2 * k > n {
                return Err(Error::BadCirculantOffset { n, offset: k });
            }
            for i in 0..n {
                let j = (i + k) % n;
                if i != j {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            let mut row = BitSet::full(self.n);
            row.subtract(&self.adj[u]);
            row.remove(u);
            g.adj[u] = row;
        }
        g
    }

    /// Subgraph induced by `keep` (vertex order follows `keep`).
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.is_edge(u, v) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        g
    }

    /// OR or lexicographic product. Vertices are row-major: `(u, v) -> u * |H| + v`.
    pub fn product(&self, h: &Graph, kind: ProductKind) -> Result<Graph> {
        if self.n == 0 || h.n == 0 {
            return Err(Error::InvalidGraph("product of an empty graph".into()));
        }
        let nh = h.n;
        let mut g = Graph::new(self.n * nh);
        for u1 in 0..self.n {
            for v1 in 0..nh {
                let a = u1 * nh + v1;
                for u2 in u1..self.n {
                    for v2 in 0..nh {
                        let b = u2 * nh + v2;
                        if b <= a {
                            continue;
                        }
                        let adjacent = match kind {
                            ProductKind::Or => self.is_edge(u1, u2) || h.is_edge(v1, v2),
                            ProductKind::Lexicographic => {
                                self.is_edge(u1, u2) || (u1 == u2 && h.is_edge(v1, v2))
                            }
                        };
                        if adjacent {
                            g.adj[a].insert(b);
                            g.adj[b].insert(a);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Checks that `perm` maps edges to edges and non-edges to non-edges.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.n {
            return false;
        }
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u && !self.is_edge(perm[u], perm[v]) {
                    return false;
                }
            }
            // Degree preservation plus edge preservation implies the converse.
            if self.degree(u) != self.degree(perm[u]) {
                return false;
            }
        }
        true
    }

    /// Emits the edge-list text format: `p <n> <m>` then sorted `e <u> <v>` lines.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("p {} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut g: Option<Graph> = None;
        let mut declared_m = 0usize;
        let mut seen_m = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("p") => {
                    let n: usize = parse_field(parts.next(), lineno)?;
                    declared_m = parse_field(parts.next(), lineno)?;
                    g = Some(Graph::new(n));
                }
                Some("e") => {
                    let u: usize = parse_field(parts.next(), lineno)?;
                    let v: usize = parse_field(parts.next(), lineno)?;
                    g.as_mut()
                        .ok_or_else(|| Error::Parse("edge before p line".into()))?
                        .add_edge(u, v)?;
                    seen_m += 1;
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unexpected token {:?}",
                        lineno + 1,
                        other
                    )))
                }
            }
        }
        let g = g.ok_or_else(|| Error::Parse("missing p line".into()))?;
        if seen_m != declared_m {
            return Err(Error::Parse(format!(
                "edge count mismatch: header says {declared_m}, found {seen_m}"
            )));
        }
        Ok(g)
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, lineno: usize) -> Result<T> {
    field
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("line {}: malformed field", lineno + 1)))
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

/// A graph with nonnegative rational vertex weights.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    pub graph: Graph,
    pub weights: Vec<BigRational>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != graph.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "weight list length {} != vertex count {}",
                weights.len(),
                graph.vertex_count()
            )));
        }
        if weights.iter().any(|w| w < &BigRational::from_integer(0.into())) {
            return Err(Error::InvalidGraph("negative vertex weight".into()));
        }
        Ok(WeightedGraph { graph, weights })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circulant_examples() {
        let g = Graph::circulant(10, &[2, 3]).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 20);

        let c5 = Graph::circulant(5, &[1]).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(c5.is_regular(), Some(2));

        let k4 = Graph::circulant(4, &[1, 2]).unwrap();
        assert_eq!(k4.edge_count(), 6);
    }

    #[test]
    fn circulant_rejects_bad_offsets() {
        assert!(Graph::circulant(10, &[0]).is_err());
        assert!(Graph::circulant(10, &[6]).is_err());
        assert!(Graph::circulant(10, &[5]).is_ok());
    }

    #[test]
    fn complement_involution() {
        let g = Graph::circulant(7, &[1, 2]).unwrap();
        assert_eq!(g.complement().complement(), g);
        let n = g.vertex_count();
        assert_eq!(g.complement().edge_count(), n * (n - 1) / 2 - g.edge_count());
    }

    #[test]
    fn induced_subgraph_keeps_internal_edges() {
        let g = Graph::circulant(6, &[1]).unwrap();
        let h = g.induced_subgraph(&[0, 1, 2, 4]);
        assert_eq!(h.edge_count(), 2); // 0-1, 1-2 survive
        assert!(h.is_edge(0, 1));
        assert!(h.is_edge(1, 2));
    }

    #[test]
    fn lex_product_is_spanning_subgraph_of_or() {
        let g = Graph::circulant(5, &[1]).unwrap();
        let h = Graph::circulant(4, &[1]).unwrap();
        let lex = g.product(&h, ProductKind::Lexicographic).unwrap();
        let or = g.product(&h, ProductKind::Or).unwrap();
        assert_eq!(lex.vertex_count(), 20);
        assert_eq!(or.vertex_count(), 20);
        for (u, v) in lex.edges() {
            assert!(or.is_edge(u, v));
        }
        assert!(lex.edge_count() < or.edge_count());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::circulant(10, &[2, 3]).unwrap();
        let text = g.to_edge_list();
        let h = Graph::from_edge_list(&text).unwrap();
        assert_eq!(g, h);
        // byte-deterministic emit
        assert_eq!(text, h.to_edge_list());
    }

    #[test]
    fn automorphism_check() {
        let c5 = Graph::circulant(5, &[1]).unwrap();
        assert!(c5.is_automorphism(&[1, 2, 3, 4, 0]));
        assert!(c5.is_automorphism(&[0, 4, 3, 2, 1]));
        assert!(!Graph::circulant(5, &[2]).unwrap().is_automorphism(&[1, 0, 2, 3, 4]));
    }
}
