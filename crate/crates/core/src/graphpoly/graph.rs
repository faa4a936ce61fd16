use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GraphError;

/// Vertex subsets are u64 bitmasks, so graphs are limited to 64 vertices.
pub const MAX_VERTICES: usize = 64;

/// A coprimality graph: an edge `{r, s}` demands `gcd(Q_r, Q_s) = 1`.
///
/// Vertices are 0-based in the Rust API and 1-based in every textual form and
/// error message. Edges are kept sorted, so edge indices are reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoprimalityGraph {
    v: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl CoprimalityGraph {
    /// Builds a graph from 1-based vertex pairs.
    pub fn new(v: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if v == 0 {
            return Err(GraphError::NoVertices);
        }
        if v > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(v));
        }
        let mut out = Vec::with_capacity(edges.len());
        for &(r, s) in edges {
            for x in [r, s] {
                if x == 0 || x > v {
                    return Err(GraphError::VertexOutOfRange { vertex: x, v });
                }
            }
            if r == s {
                return Err(GraphError::SelfLoop(r));
            }
            out.push((r.min(s) - 1, r.max(s) - 1));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0 + 1, w[0].1 + 1));
        }
        Ok(Self { v, edges: out })
    }

    /// Builds a graph from 0-based vertex pairs.
    pub fn from_zero_based(v: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let shifted: Vec<_> = edges.iter().map(|&(r, s)| (r + 1, s + 1)).collect();
        Self::new(v, &shifted)
    }

    pub fn empty(v: usize) -> Result<Self, GraphError> {
        Self::new(v, &[])
    }

    pub fn complete(v: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..=v).flat_map(|r| (r + 1..=v).map(move |s| (r, s))).collect();
        Self::new(v, &edges)
    }

    pub fn path(v: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..v).map(|r| (r, r + 1)).collect();
        Self::new(v, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted 0-based pairs `(r, s)` with `r < s`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, r: usize, s: usize) -> bool {
        self.edges.binary_search(&(r.min(s), r.max(s))).is_ok()
    }

    pub fn degree(&self, r: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == r || b == r).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.v];
        for &(r, s) in &self.edges {
            d[r] += 1;
            d[s] += 1;
        }
        d
    }

    /// Maximum vertex degree.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Vertices incident to at least one edge, as a bitmask.
    pub fn non_isolated_mask(&self) -> u64 {
        self.edges.iter().fold(0, |m, &(r, s)| m | (1 << r) | (1 << s))
    }

    pub(crate) fn edge_vertex_mask(&self, j: usize) -> u64 {
        let (r, s) = self.edges[j];
        (1 << r) | (1 << s)
    }

    /// v(F): vertices covered by the edge subset `subset` (bit j = edge j).
    pub fn vertex_span(&self, subset: u64) -> u64 {
        (0..self.edges.len()).filter(|j| subset >> j & 1 == 1).fold(0, |m, j| m | self.edge_vertex_mask(j))
    }

    /// Graph with the j-th edge (1-based, canonical order) removed.
    pub fn remove_edge(&self, j: usize) -> Result<Self, GraphError> {
        if j == 0 || j > self.edges.len() {
            return Err(GraphError::EdgeIndexOutOfRange { index: j, e: self.edges.len() });
        }
        let mut edges = self.edges.clone();
        edges.remove(j - 1);
        Ok(Self { v: self.v, edges })
    }

    pub fn to_json(&self) -> String {
        let j = GraphJson { vertices: self.v, edges: self.edges.iter().map(|&(r, s)| [r + 1, s + 1]).collect() };
        serde_json::to_string(&j).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Parse(e.to_string()))?;
        let edges: Vec<_> = j.edges.iter().map(|&[r, s]| (r, s)).collect();
        Self::new(j.vertices, &edges)
    }

    /// Parses either the JSON form or the compact `v=3;1-2,2-3` form.
    pub fn parse(s: &str) -> Result<Self, GraphError> {
        let t = s.trim();
        if t.starts_with('{') {
            Self::from_json(t)
        } else {
            t.parse()
        }
    }
}

/// Compact form: `v=3;1-2,2-3`, or `v=2;` with no edges.
impl fmt::Display for CoprimalityGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges.iter().map(|&(r, s)| format!("{}-{}", r + 1, s + 1)).collect();
        write!(f, "v={};{}", self.v, edges.join(","))
    }
}

impl FromStr for CoprimalityGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let bad = |msg: &str| GraphError::Parse(format!("{msg} in {s:?}"));
        let s = s.trim();
        let (head, tail) = s.split_once(';').unwrap_or((s, ""));
        let v = head
            .trim()
            .strip_prefix("v=")
            .and_then(|n| n.trim().parse::<usize>().ok())
            .ok_or_else(|| bad("expected v=<count>"))?;
        let mut edges = Vec::new();
        for item in tail.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = item.split_once('-').ok_or_else(|| bad("expected r-s"))?;
            let r = a.trim().parse().map_err(|_| bad("bad vertex"))?;
            let t = b.trim().parse().map_err(|_| bad("bad vertex"))?;
            edges.push((r, t));
        }
        Self::new(v, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_graphs() {
        let k2 = CoprimalityGraph::new(2, &[(1, 2)]).unwrap();
        assert_eq!((k2.edge_count(), k2.max_degree()), (1, 1));
        let p3 = CoprimalityGraph::new(3, &[(2, 3), (1, 2)]).unwrap();
        assert_eq!(p3.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(p3.degrees(), vec![1, 2, 1]);
        assert_eq!(p3.max_degree(), 2);
        assert_eq!(CoprimalityGraph::path(3).unwrap(), p3);
        assert_eq!(CoprimalityGraph::complete(4).unwrap().edge_count(), 6);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(CoprimalityGraph::new(2, &[(1, 1)]), Err(GraphError::SelfLoop(1))));
        assert!(matches!(CoprimalityGraph::new(3, &[(1, 2), (2, 1)]), Err(GraphError::DuplicateEdge(1, 2))));
        assert!(matches!(CoprimalityGraph::new(2, &[(1, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, v: 2 })));
        assert!(matches!(CoprimalityGraph::new(0, &[]), Err(GraphError::NoVertices)));
        assert!(CoprimalityGraph::new(65, &[]).is_err());
    }

    #[test]
    fn span_of_subsets() {
        let p3 = CoprimalityGraph::path(3).unwrap();
        assert_eq!(p3.vertex_span(0b01), 0b011);
        assert_eq!(p3.vertex_span(0b11), 0b111);
        assert_eq!(p3.vertex_span(0), 0);
    }

    #[test]
    fn remove_edges() {
        let p3 = CoprimalityGraph::path(3).unwrap();
        let g = p3.remove_edge(1).unwrap();
        assert_eq!((g.vertex_count(), g.edges()), (3, &[(1, 2)][..]));
        let k2 = CoprimalityGraph::complete(2).unwrap();
        assert_eq!(k2.remove_edge(1).unwrap(), CoprimalityGraph::empty(2).unwrap());
        assert!(matches!(p3.remove_edge(3), Err(GraphError::EdgeIndexOutOfRange { index: 3, e: 2 })));
    }

    #[test]
    fn text_and_json_forms() {
        let p3: CoprimalityGraph = "v=3;1-2,2-3".parse().unwrap();
        assert_eq!(p3, CoprimalityGraph::path(3).unwrap());
        assert_eq!(p3.to_string(), "v=3;1-2,2-3");
        assert_eq!(p3.to_json(), r#"{"vertices":3,"edges":[[1,2],[2,3]]}"#);
        assert_eq!(CoprimalityGraph::parse(&p3.to_json()).unwrap(), p3);
        let e: CoprimalityGraph = "v=2;".parse().unwrap();
        assert_eq!(e.edge_count(), 0);
        assert_eq!(CoprimalityGraph::parse("v=2").unwrap(), e);
        assert!(CoprimalityGraph::parse("v=2;1-1").is_err());
        assert!(CoprimalityGraph::parse("w=2;").is_err());
        assert!(CoprimalityGraph::parse("{\"vertices\":2}").is_err());
    }
}
