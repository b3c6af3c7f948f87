//! Simple undirected graphs, labeled graphs, and the generators used
//! throughout the crate.
//!
//! Vertices are `0..n`. Edges are unordered pairs without loops or
//! multiplicity. Labels, where present, come from an alphabet `1..=k`;
//! the value `0` is reserved for "unlabeled" in partial labelings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact homomorphism counts are arbitrary-precision non-negative integers.
pub type HomCount = num_bigint::BigUint;

/// An undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    nbrs: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Edges are normalized to `u < v`
    /// and deduplicated; self-loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut nbrs = vec![Vec::new(); n];
        for &(u, v) in &edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        for list in &mut nbrs {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, nbrs })
    }

    /// The graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Graph {
        Graph::new(n, []).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.nbrs[u].binary_search(&v).is_ok()
    }

    /// Subgraph induced on `s`. Vertex `s[i]` (after sorting and deduping)
    /// becomes vertex `i`, so relative order of ids is preserved.
    pub fn induced(&self, s: &[usize]) -> Result<Graph> {
        let mut sorted: Vec<usize> = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&v) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in sorted.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Graph::new(sorted.len(), edges)
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Degree sequence in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Checks for an odd cycle by 2-coloring each component.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.n,
            edges: self.edges.clone(),
            labels: None,
        })
        .expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let raw: GraphJson = serde_json::from_str(text)?;
        Graph::new(raw.n, raw.edges)
    }
}

/// A graph whose every vertex carries a label from `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    graph: Graph,
    k: usize,
    labels: Vec<usize>,
}

impl LabeledGraph {
    pub fn new(graph: Graph, k: usize, labels: Vec<usize>) -> Result<LabeledGraph> {
        if labels.len() != graph.n() {
            return Err(Error::LabelCountMismatch {
                expected: graph.n(),
                got: labels.len(),
            });
        }
        if let Some(&label) = labels.iter().find(|&&l| l < 1 || l > k) {
            return Err(Error::LabelOutOfRange { label, k });
        }
        Ok(LabeledGraph { graph, k, labels })
    }

    /// All labels set to 1.
    pub fn uniform(graph: Graph, k: usize) -> LabeledGraph {
        let labels = vec![1; graph.n()];
        LabeledGraph::new(graph, k.max(1), labels).unwrap()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Subgraph induced on `s`, keeping labels; same id scheme as
    /// [`Graph::induced`].
    pub fn induced(&self, s: &[usize]) -> Result<LabeledGraph> {
        let graph = self.graph.induced(s)?;
        let mut sorted: Vec<usize> = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let labels = sorted.iter().map(|&v| self.labels[v]).collect();
        LabeledGraph::new(graph, self.k, labels)
    }

    /// Number of vertices carrying each label, indexed by label value.
    pub fn label_histogram(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.k + 1];
        for &l in &self.labels {
            h[l] += 1;
        }
        h
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.graph.n(),
            edges: self.graph.edges().to_vec(),
            labels: Some(self.labels.clone()),
        })
        .expect("graph serialization cannot fail")
    }

    /// Reads a labeled graph; the alphabet size is the largest label used.
    pub fn from_json(text: &str) -> Result<LabeledGraph> {
        let raw: GraphJson = serde_json::from_str(text)?;
        let labels = raw
            .labels
            .ok_or_else(|| Error::InvalidInput("graph JSON has no labels".into()))?;
        let k = labels.iter().copied().max().unwrap_or(1).max(1);
        LabeledGraph::new(Graph::new(raw.n, raw.edges)?, k, labels)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<usize>>,
}

/// A partial assignment of labels `1..=k` to vertices `0..n`; value 0 means
/// the vertex is outside the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialLabeling {
    k: usize,
    values: Vec<usize>,
}

impl PartialLabeling {
    pub fn new(k: usize, values: Vec<usize>) -> Result<PartialLabeling> {
        if let Some(&label) = values.iter().find(|&&x| x > k) {
            return Err(Error::LabelOutOfRange { label, k });
        }
        Ok(PartialLabeling { k, values })
    }

    pub fn empty(k: usize, n: usize) -> PartialLabeling {
        PartialLabeling { k, values: vec![0; n] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, v: usize) -> usize {
        self.values[v]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Vertices with a nonzero value, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.values[v] != 0).collect()
    }

    pub fn is_full(&self) -> bool {
        self.values.iter().all(|&x| x != 0)
    }

    /// Mixed-radix encoding: digit of vertex `v` has weight `(k+1)^v`.
    pub fn to_index(&self) -> usize {
        let mut idx = 0usize;
        for &x in self.values.iter().rev() {
            idx = idx * (self.k + 1) + x;
        }
        idx
    }

    pub fn from_index(k: usize, n: usize, mut idx: usize) -> PartialLabeling {
        let mut values = vec![0; n];
        for slot in values.iter_mut() {
            *slot = idx % (k + 1);
            idx /= k + 1;
        }
        PartialLabeling { k, values }
    }
}

/// Complete graph on `n` vertices.
pub fn gen_clique(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).unwrap()
}

/// Cycle `0-1-...-(n-1)-0`; for `n = 2` this is a single edge, for `n = 1`
/// a single vertex.
pub fn gen_cycle(n: usize) -> Graph {
    if n <= 1 {
        return Graph::edgeless(n);
    }
    if n == 2 {
        return Graph::new(2, [(0, 1)]).unwrap();
    }
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

/// Path `0-1-...-(n-1)`.
pub fn gen_path(n: usize) -> Graph {
    if n == 0 {
        return Graph::edgeless(0);
    }
    Graph::new(n, (0..n - 1).map(|v| (v, v + 1))).unwrap()
}

/// Edge-complement, same vertex set.
pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v));
    Graph::new(n, edges).unwrap()
}

/// Hypercube graph on `2^n` vertices. Vertex ids are the integer values of
/// the 0/1 coordinate vectors; edges join vertices at Hamming distance 1.
pub fn gen_hypercube(n: usize) -> Result<Graph> {
    if n > 20 {
        return Err(Error::GuardExceeded {
            what: "gen_hypercube dimension",
            limit: 20,
            requested: n as u128,
        });
    }
    let size = 1usize << n;
    let edges = (0..size).flat_map(|v| (0..n).map(move |b| (v, v ^ (1 << b))).filter(|&(u, w)| u < w));
    Graph::new(size, edges)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Kneser graph: vertices are the k-element subsets of `{0..n-1}` listed in
/// colexicographic order (equivalently, ascending order of their bitmask),
/// with edges between disjoint subsets.
pub fn gen_kneser(n: usize, k: usize) -> Result<Graph> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidInput("gen_kneser needs n >= 1 and k >= 1".into()));
    }
    let count = binomial(n, k);
    if count > 100_000 {
        return Err(Error::GuardExceeded {
            what: "gen_kneser vertex count",
            limit: 100_000,
            requested: count,
        });
    }
    let mut masks: Vec<u32> = Vec::with_capacity(count as usize);
    if k <= n {
        // Gosper's hack walks the k-subsets of an n-bit universe in
        // increasing mask order, which is exactly colex order on subsets.
        let mut m: u32 = (1u32 << k) - 1;
        let limit: u32 = 1u32 << n;
        while m < limit {
            masks.push(m);
            let c = m & m.wrapping_neg();
            let r = m + c;
            if r >= limit || c == 0 {
                break;
            }
            m = r | (((m ^ r) / c) >> 2);
        }
    }
    let edges = (0..masks.len())
        .flat_map(|i| (i + 1..masks.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| masks[i] & masks[j] == 0);
    Graph::new(masks.len(), edges)
}

/// Replaces every vertex of `g` by a k-clique and every edge by a complete
/// bipartite graph between the two cliques. Vertex `v` becomes ids
/// `k*v..k*v+k`.
pub fn blowup(g: &Graph, k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidInput("blowup needs k >= 1".into()));
    }
    let n = g.n() * k;
    let mut edges = Vec::new();
    for v in 0..g.n() {
        for a in 0..k {
            for b in a + 1..k {
                edges.push((k * v + a, k * v + b));
            }
        }
    }
    for &(u, v) in g.edges() {
        for a in 0..k {
            for b in 0..k {
                edges.push((k * u + a, k * v + b));
            }
        }
    }
    Graph::new(n, edges)
}

/// Result of subdividing the edges of a clique: the graph plus the two sides
/// of the construction (clique vertices, and all copy vertices).
#[derive(Debug, Clone)]
pub struct SubdividedClique {
    pub graph: Graph,
    pub clique_vertices: Vec<usize>,
    pub copy_vertices: Vec<usize>,
}

/// Subdivides every edge of `K_n` by a copy of `u`: the clique edge `{i, j}`
/// is removed and replaced by a fresh copy `U_ij` of `u` whose every vertex
/// is adjacent to both `v_i` and `v_j`.
///
/// Ids: clique vertices are `0..n`; copies follow in lexicographic order of
/// the pair `(i, j)`, each keeping `u`'s internal vertex order.
pub fn subdivide_clique(n: usize, u: &Graph) -> Result<SubdividedClique> {
    if n < 1 {
        return Err(Error::InvalidInput("subdivide_clique needs n >= 1".into()));
    }
    let total = n + n * (n - 1) / 2 * u.n();
    if total > 1_000_000 {
        return Err(Error::GuardExceeded {
            what: "subdivide_clique vertex count",
            limit: 1_000_000,
            requested: total as u128,
        });
    }
    let mut edges = Vec::new();
    let mut next = n;
    for i in 0..n {
        for j in i + 1..n {
            let base = next;
            next += u.n();
            for &(a, b) in u.edges() {
                edges.push((base + a, base + b));
            }
            for t in 0..u.n() {
                edges.push((i, base + t));
                edges.push((j, base + t));
            }
        }
    }
    Ok(SubdividedClique {
        graph: Graph::new(total, edges)?,
        clique_vertices: (0..n).collect(),
        copy_vertices: (n..total).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_normalizes_edges() {
        let g = Graph::new(3, [(2, 0), (0, 2), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
        assert!(g.has_edge(2, 0));
        assert!(!g.has_edge(0, 1));
        assert!(matches!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(Graph::new(2, [(0, 5)]).is_err());
    }

    #[test]
    fn induced_keeps_relative_order() {
        // 4-cycle 0-1-2-3; on {1, 3} there is no edge, on {0, 1, 2} a path.
        let c4 = gen_cycle(4);
        assert_eq!(c4.induced(&[1, 3]).unwrap(), Graph::edgeless(2));
        assert_eq!(
            c4.induced(&[0, 1, 2]).unwrap(),
            Graph::new(3, [(0, 1), (1, 2)]).unwrap()
        );
        let full: Vec<usize> = (0..4).collect();
        assert_eq!(c4.induced(&full).unwrap(), c4);
    }

    #[test]
    fn components_sorted_by_least_vertex() {
        let g = Graph::new(5, [(3, 1), (0, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 4], vec![1, 3], vec![2]]);
        let empty = Graph::edgeless(4);
        assert_eq!(empty.components().len(), 4);
    }

    #[test]
    fn hypercube_shapes() {
        assert_eq!(gen_hypercube(0).unwrap().n(), 1);
        let h2 = gen_hypercube(2).unwrap();
        assert_eq!((h2.n(), h2.edge_count()), (4, 4));
        let h4 = gen_hypercube(4).unwrap();
        assert_eq!((h4.n(), h4.edge_count()), (16, 32));
        assert!(gen_hypercube(21).is_err());
    }

    #[test]
    fn kneser_shapes() {
        let petersen = gen_kneser(5, 2).unwrap();
        assert_eq!((petersen.n(), petersen.edge_count()), (10, 15));
        assert!(petersen.degree_sequence().iter().all(|&d| d == 3));
        let k42 = gen_kneser(4, 2).unwrap();
        assert_eq!((k42.n(), k42.edge_count()), (6, 3));
        let k32 = gen_kneser(3, 2).unwrap();
        assert_eq!((k32.n(), k32.edge_count()), (3, 0));
        // K(n, 1) is the complete graph.
        assert_eq!(gen_kneser(4, 1).unwrap(), gen_clique(4));
    }

    #[test]
    fn kneser_vertices_in_colex_order() {
        // For n=4, k=2 colex order of pairs is 01,02,12,03,13,23; the only
        // disjoint pairs are (01,23), (02,13), (12,03).
        let g = gen_kneser(4, 2).unwrap();
        assert_eq!(g.edges(), &[(0, 5), (1, 4), (2, 3)]);
    }

    #[test]
    fn subdivision_shapes() {
        let p3 = subdivide_clique(2, &Graph::edgeless(1)).unwrap();
        // path 0-2-1: the clique edge is gone, both ends hook to the copy
        assert_eq!(p3.graph.edges(), &[(0, 2), (1, 2)]);
        assert!(!p3.graph.has_edge(0, 1));

        let s3 = subdivide_clique(3, &Graph::edgeless(1)).unwrap();
        assert_eq!((s3.graph.n(), s3.graph.edge_count()), (6, 6));

        let s2k2 = subdivide_clique(2, &gen_clique(2)).unwrap();
        assert_eq!((s2k2.graph.n(), s2k2.graph.edge_count()), (4, 5));
        assert_eq!(s2k2.clique_vertices, vec![0, 1]);
        assert_eq!(s2k2.copy_vertices, vec![2, 3]);
    }

    #[test]
    fn blowup_shapes() {
        assert_eq!(blowup(&gen_clique(2), 2).unwrap(), gen_clique(4));
        assert_eq!(blowup(&Graph::edgeless(1), 3).unwrap(), gen_clique(3));
        assert_eq!(blowup(&gen_cycle(4), 1).unwrap(), gen_cycle(4));
    }

    #[test]
    fn labeling_index_round_trip() {
        let chi = PartialLabeling::new(2, vec![0, 2, 1]).unwrap();
        // digits little-endian by vertex: 0 + 2*3 + 1*9 = 15
        assert_eq!(chi.to_index(), 15);
        assert_eq!(PartialLabeling::from_index(2, 3, 15), chi);
        assert_eq!(chi.support(), vec![1, 2]);
        assert!(!chi.is_full());
        assert!(PartialLabeling::empty(2, 3).to_index() == 0);
    }

    #[test]
    fn graph_json_round_trip() {
        let g = gen_kneser(5, 2).unwrap();
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);

        let lg = LabeledGraph::new(gen_cycle(3), 2, vec![1, 2, 1]).unwrap();
        let text = lg.to_json();
        assert!(text.contains("\"labels\""));
        assert_eq!(LabeledGraph::from_json(&text).unwrap(), lg);
    }

    #[test]
    fn labeled_graph_validation() {
        assert!(LabeledGraph::new(gen_cycle(3), 2, vec![1, 2]).is_err());
        assert!(LabeledGraph::new(gen_cycle(3), 2, vec![1, 2, 3]).is_err());
        assert!(LabeledGraph::new(gen_cycle(3), 2, vec![1, 2, 0]).is_err());
    }
}
