//! Expressions that assemble labeled graphs from single vertices.
//!
//! Two dialects are supported. Classic expressions use four operators:
//! introduce a labeled vertex, relabel `i -> j`, add all edges between
//! labels `i` and `j`, and disjoint union. Extended expressions replace
//! union and edge addition by a single `connect` operator (disjoint union
//! plus cross edges for chosen ordered label pairs) and add a `beta`
//! operator that clones labeled vertices wholesale.
//!
//! `beta` with copy counts `nvec`, relabeling `sigma` and a symmetric tuple
//! set `S` turns each vertex `a` with label `i` into copies
//! `a_0, ..., a_{nvec[i]}`. Copy 0 is the original and keeps its label;
//! higher copies take label `sigma(i)`. For every edge `ab` of the input,
//! the copy pair `(a_j, b_j')` is an edge exactly when `j = j' = 0` or
//! `(label(a), j, label(b), j')` lies in `S`.
//!
//! Evaluation uses a fixed vertex id scheme so results are reproducible
//! byte for byte: `connect` keeps left ids and shifts right ids up;
//! `beta` keeps original ids and appends copies sorted by (original id,
//! copy index).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, LabeledGraph};

/// Evaluated graphs are capped at this many vertices.
pub const EVAL_VERTEX_GUARD: usize = 10_000;

/// An extended k-expression: vertex / relabel / connect / beta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtExpr {
    k: usize,
    root: ExtNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ExtNode {
    Vertex {
        label: usize,
    },
    Relabel {
        from: usize,
        to: usize,
        child: Box<ExtNode>,
    },
    Connect {
        pairs: BTreeSet<(usize, usize)>,
        left: Box<ExtNode>,
        right: Box<ExtNode>,
    },
    Beta {
        nvec: Vec<usize>,
        sigma: Vec<usize>,
        tuples: BTreeSet<(usize, usize, usize, usize)>,
        child: Box<ExtNode>,
    },
}

fn check_label(label: usize, k: usize) -> Result<()> {
    if label < 1 || label > k {
        return Err(Error::LabelOutOfRange { label, k });
    }
    Ok(())
}

impl ExtExpr {
    /// A single vertex carrying `label`, inside alphabet `1..=k`.
    pub fn vertex(k: usize, label: usize) -> Result<ExtExpr> {
        if k == 0 {
            return Err(Error::MalformedExpression("alphabet size k must be >= 1".into()));
        }
        check_label(label, k)?;
        Ok(ExtExpr { k, root: ExtNode::Vertex { label } })
    }

    /// Relabels every `from`-labeled vertex to `to`.
    pub fn relabel(self, from: usize, to: usize) -> Result<ExtExpr> {
        check_label(from, self.k)?;
        check_label(to, self.k)?;
        Ok(ExtExpr {
            k: self.k,
            root: ExtNode::Relabel { from, to, child: Box::new(self.root) },
        })
    }

    /// Disjoint union plus all edges from left vertices labeled `i` to right
    /// vertices labeled `j`, for every ordered pair `(i, j)` in `pairs`.
    pub fn connect(
        pairs: impl IntoIterator<Item = (usize, usize)>,
        left: ExtExpr,
        right: ExtExpr,
    ) -> Result<ExtExpr> {
        if left.k != right.k {
            return Err(Error::MalformedExpression(
                "connect operands use different alphabets".into(),
            ));
        }
        let k = left.k;
        let mut set = BTreeSet::new();
        for (i, j) in pairs {
            check_label(i, k)?;
            check_label(j, k)?;
            set.insert((i, j));
        }
        Ok(ExtExpr {
            k,
            root: ExtNode::Connect {
                pairs: set,
                left: Box::new(left.root),
                right: Box::new(right.root),
            },
        })
    }

    /// Wraps the expression in a beta operator. `nvec` must have one entry
    /// per label with values in `0..=k`, `sigma` maps each label into
    /// `1..=k`, and `tuples` must be symmetric: whenever `(i1,j1,i2,j2)` is
    /// present so is `(i2,j2,i1,j1)`, with `j1 <= nvec[i1]`, `j2 <= nvec[i2]`.
    pub fn beta(
        self,
        nvec: Vec<usize>,
        sigma: Vec<usize>,
        tuples: impl IntoIterator<Item = (usize, usize, usize, usize)>,
    ) -> Result<ExtExpr> {
        let k = self.k;
        if nvec.len() != k {
            return Err(Error::MalformedExpression(format!(
                "nvec has {} entries, expected {k}",
                nvec.len()
            )));
        }
        if let Some(&bad) = nvec.iter().find(|&&x| x > k) {
            return Err(Error::MalformedExpression(format!(
                "nvec entry {bad} exceeds alphabet size {k}"
            )));
        }
        if sigma.len() != k {
            return Err(Error::MalformedExpression(format!(
                "sigma has {} entries, expected {k}",
                sigma.len()
            )));
        }
        for &s in &sigma {
            check_label(s, k)?;
        }
        let mut set = BTreeSet::new();
        for t in tuples {
            let (i1, j1, i2, j2) = t;
            check_label(i1, k)?;
            check_label(i2, k)?;
            if j1 > nvec[i1 - 1] || j2 > nvec[i2 - 1] {
                return Err(Error::MalformedExpression(format!(
                    "tuple ({i1},{j1},{i2},{j2}) has a copy index above nvec"
                )));
            }
            set.insert(t);
        }
        for &(i1, j1, i2, j2) in &set {
            if !set.contains(&(i2, j2, i1, j1)) {
                return Err(Error::MalformedExpression(format!(
                    "tuple set is not symmetric: ({i1},{j1},{i2},{j2}) lacks its mirror"
                )));
            }
        }
        Ok(ExtExpr {
            k,
            root: ExtNode::Beta {
                nvec,
                sigma,
                tuples: set,
                child: Box::new(self.root),
            },
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub(crate) fn root(&self) -> &ExtNode {
        &self.root
    }

    /// Operation count: operands, connects and betas each count one; a
    /// maximal run of consecutive relabels counts once.
    pub fn size(&self) -> usize {
        fn go(node: &ExtNode) -> usize {
            match node {
                ExtNode::Vertex { .. } => 1,
                ExtNode::Connect { left, right, .. } => 1 + go(left) + go(right),
                ExtNode::Beta { child, .. } => 1 + go(child),
                ExtNode::Relabel { child, .. } => {
                    let run = if matches!(**child, ExtNode::Relabel { .. }) { 0 } else { 1 };
                    run + go(child)
                }
            }
        }
        go(&self.root)
    }

    /// Builds the labeled graph the expression denotes.
    pub fn eval(&self) -> Result<LabeledGraph> {
        eval_ext_node(&self.root, self.k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ExprJson {
            k: self.k,
            root: ext_to_json(&self.root),
        })
        .expect("expression serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<ExtExpr> {
        let raw: ExprJson = serde_json::from_str(text)?;
        ext_from_json(raw.k, &raw.root)
    }
}

pub(crate) fn eval_ext_node(node: &ExtNode, k: usize) -> Result<LabeledGraph> {
    match node {
        ExtNode::Vertex { label } => LabeledGraph::new(Graph::edgeless(1), k, vec![*label]),
        ExtNode::Relabel { from, to, child } => {
            let g = eval_ext_node(child, k)?;
            Ok(apply_relabel(&g, *from, *to))
        }
        ExtNode::Connect { pairs, left, right } => {
            let l = eval_ext_node(left, k)?;
            let r = eval_ext_node(right, k)?;
            apply_connect(&l, &r, pairs)
        }
        ExtNode::Beta { nvec, sigma, tuples, child } => {
            let g = eval_ext_node(child, k)?;
            apply_beta(&g, nvec, sigma, tuples)
        }
    }
}

pub(crate) fn apply_relabel(g: &LabeledGraph, from: usize, to: usize) -> LabeledGraph {
    let labels = g
        .labels()
        .iter()
        .map(|&l| if l == from { to } else { l })
        .collect();
    LabeledGraph::new(g.graph().clone(), g.k(), labels).expect("relabel keeps labels in range")
}

pub(crate) fn apply_connect(
    l: &LabeledGraph,
    r: &LabeledGraph,
    pairs: &BTreeSet<(usize, usize)>,
) -> Result<LabeledGraph> {
    let (nl, nr) = (l.n(), r.n());
    let total = nl + nr;
    if total > EVAL_VERTEX_GUARD {
        return Err(Error::GuardExceeded {
            what: "evaluated vertex count",
            limit: EVAL_VERTEX_GUARD as u128,
            requested: total as u128,
        });
    }
    let mut edges: Vec<(usize, usize)> = l.graph().edges().to_vec();
    edges.extend(r.graph().edges().iter().map(|&(u, v)| (nl + u, nl + v)));
    for a in 0..nl {
        for b in 0..nr {
            if pairs.contains(&(l.label(a), r.label(b))) {
                edges.push((a, nl + b));
            }
        }
    }
    let mut labels = l.labels().to_vec();
    labels.extend_from_slice(r.labels());
    LabeledGraph::new(Graph::new(total, edges)?, l.k(), labels)
}

pub(crate) fn apply_beta(
    g: &LabeledGraph,
    nvec: &[usize],
    sigma: &[usize],
    tuples: &BTreeSet<(usize, usize, usize, usize)>,
) -> Result<LabeledGraph> {
    let n = g.n();
    let mut labels: Vec<usize> = g.labels().to_vec();
    // copy_id[a][j-1] is the vertex id of the j-th copy of a
    let mut copy_id: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut next = n;
    for a in 0..n {
        let la = g.label(a);
        for _ in 1..=nvec[la - 1] {
            copy_id[a].push(next);
            labels.push(sigma[la - 1]);
            next += 1;
        }
    }
    if next > EVAL_VERTEX_GUARD {
        return Err(Error::GuardExceeded {
            what: "evaluated vertex count",
            limit: EVAL_VERTEX_GUARD as u128,
            requested: next as u128,
        });
    }
    let id = |a: usize, j: usize| if j == 0 { a } else { copy_id[a][j - 1] };
    let mut edges = Vec::new();
    for &(a, b) in g.graph().edges() {
        let (la, lb) = (g.label(a), g.label(b));
        for j in 0..=nvec[la - 1] {
            for jp in 0..=nvec[lb - 1] {
                if (j == 0 && jp == 0) || tuples.contains(&(la, j, lb, jp)) {
                    edges.push((id(a, j), id(b, jp)));
                }
            }
        }
    }
    LabeledGraph::new(Graph::new(next, edges)?, g.k(), labels)
}

/// The tuple set that, together with copy counts `(1, 1)` and the label
/// swap, grows a hypercube by one dimension per application.
fn hypercube_tuples() -> Vec<(usize, usize, usize, usize)> {
    vec![
        (1, 1, 1, 1),
        (2, 1, 2, 1),
        (1, 1, 2, 1),
        (2, 1, 1, 1),
        (1, 0, 2, 1),
        (2, 1, 1, 0),
        (2, 0, 1, 1),
        (1, 1, 2, 0),
    ]
}

/// Extended 2-expression whose value is the n-dimensional hypercube.
/// Dimension 0 is a vertex, dimension 1 a single connect; each further
/// dimension is one beta application.
pub fn hypercube_expr(n: usize) -> Result<ExtExpr> {
    if n > 12 {
        return Err(Error::GuardExceeded {
            what: "hypercube_expr dimension",
            limit: 12,
            requested: n as u128,
        });
    }
    if n == 0 {
        return ExtExpr::vertex(2, 1);
    }
    let mut e = ExtExpr::connect([(1, 2)], ExtExpr::vertex(2, 1)?, ExtExpr::vertex(2, 2)?)?;
    for _ in 1..n {
        e = e.beta(vec![1, 1], vec![2, 1], hypercube_tuples())?;
    }
    Ok(e)
}

/// A classic k-expression: vertex / relabel / add-edges / disjoint union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicExpr {
    k: usize,
    root: ClassicNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ClassicNode {
    Vertex {
        label: usize,
    },
    Relabel {
        from: usize,
        to: usize,
        child: Box<ClassicNode>,
    },
    AddEdges {
        a: usize,
        b: usize,
        child: Box<ClassicNode>,
    },
    Union {
        left: Box<ClassicNode>,
        right: Box<ClassicNode>,
    },
}

impl ClassicExpr {
    pub fn vertex(k: usize, label: usize) -> Result<ClassicExpr> {
        if k == 0 {
            return Err(Error::MalformedExpression("alphabet size k must be >= 1".into()));
        }
        check_label(label, k)?;
        Ok(ClassicExpr { k, root: ClassicNode::Vertex { label } })
    }

    pub fn relabel(self, from: usize, to: usize) -> Result<ClassicExpr> {
        check_label(from, self.k)?;
        check_label(to, self.k)?;
        Ok(ClassicExpr {
            k: self.k,
            root: ClassicNode::Relabel { from, to, child: Box::new(self.root) },
        })
    }

    /// Adds every edge between a vertex labeled `a` and one labeled `b`.
    pub fn add_edges(self, a: usize, b: usize) -> Result<ClassicExpr> {
        check_label(a, self.k)?;
        check_label(b, self.k)?;
        if a == b {
            return Err(Error::MalformedExpression(
                "add_edges needs two distinct labels".into(),
            ));
        }
        Ok(ClassicExpr {
            k: self.k,
            root: ClassicNode::AddEdges { a, b, child: Box::new(self.root) },
        })
    }

    pub fn union(left: ClassicExpr, right: ClassicExpr) -> Result<ClassicExpr> {
        if left.k != right.k {
            return Err(Error::MalformedExpression(
                "union operands use different alphabets".into(),
            ));
        }
        Ok(ClassicExpr {
            k: left.k,
            root: ClassicNode::Union {
                left: Box::new(left.root),
                right: Box::new(right.root),
            },
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Builds the labeled graph the expression denotes. Union keeps left
    /// ids and shifts right ids up, like `connect`.
    pub fn eval(&self) -> Result<LabeledGraph> {
        Ok(eval_classic_node(&self.root, self.k)?.0)
    }

    /// An expression is safe when no operator ever adds an edge inside the
    /// vertex set of an earlier union operand: for every union subexpression,
    /// the final graph induced on an operand's vertices has exactly the
    /// operand's own edges.
    pub fn is_safe(&self) -> Result<bool> {
        let (g, blocks) = eval_classic_node(&self.root, self.k)?;
        for block in &blocks {
            let (start, end) = (block.start, block.start + block.len);
            let induced: Vec<(usize, usize)> = g
                .graph()
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| u >= start && v < end && v >= start && u < end)
                .collect();
            if induced != block.edges {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Rewrites a safe classic expression into an extended one with the same
    /// value: each union plus the edge additions above it becomes a single
    /// connect, and the remaining relabels are kept in order.
    pub fn to_extended(&self) -> Result<ExtExpr> {
        if !self.is_safe()? {
            return Err(Error::UnsafeExpression);
        }
        let (root, _) = convert_classic(&self.root, self.k)?;
        Ok(ExtExpr { k: self.k, root })
    }
}

struct UnionBlock {
    start: usize,
    len: usize,
    edges: Vec<(usize, usize)>,
}

fn eval_classic_node(node: &ClassicNode, k: usize) -> Result<(LabeledGraph, Vec<UnionBlock>)> {
    match node {
        ClassicNode::Vertex { label } => Ok((
            LabeledGraph::new(Graph::edgeless(1), k, vec![*label])?,
            Vec::new(),
        )),
        ClassicNode::Relabel { from, to, child } => {
            let (g, blocks) = eval_classic_node(child, k)?;
            Ok((apply_relabel(&g, *from, *to), blocks))
        }
        ClassicNode::AddEdges { a, b, child } => {
            let (g, blocks) = eval_classic_node(child, k)?;
            let mut edges: Vec<(usize, usize)> = g.graph().edges().to_vec();
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    let (lu, lv) = (g.label(u), g.label(v));
                    if (lu == *a && lv == *b) || (lu == *b && lv == *a) {
                        edges.push((u, v));
                    }
                }
            }
            let out = LabeledGraph::new(Graph::new(g.n(), edges)?, k, g.labels().to_vec())?;
            Ok((out, blocks))
        }
        ClassicNode::Union { left, right } => {
            let (l, mut blocks) = eval_classic_node(left, k)?;
            let (r, r_blocks) = eval_classic_node(right, k)?;
            let nl = l.n();
            let total = nl + r.n();
            if total > EVAL_VERTEX_GUARD {
                return Err(Error::GuardExceeded {
                    what: "evaluated vertex count",
                    limit: EVAL_VERTEX_GUARD as u128,
                    requested: total as u128,
                });
            }
            for rb in r_blocks {
                blocks.push(UnionBlock {
                    start: rb.start + nl,
                    len: rb.len,
                    edges: rb.edges.iter().map(|&(u, v)| (u + nl, v + nl)).collect(),
                });
            }
            let r_edges: Vec<(usize, usize)> =
                r.graph().edges().iter().map(|&(u, v)| (u + nl, v + nl)).collect();
            blocks.push(UnionBlock {
                start: 0,
                len: nl,
                edges: l.graph().edges().to_vec(),
            });
            blocks.push(UnionBlock {
                start: nl,
                len: r.n(),
                edges: r_edges.clone(),
            });
            let mut edges = l.graph().edges().to_vec();
            edges.extend(r_edges);
            let mut labels = l.labels().to_vec();
            labels.extend_from_slice(r.labels());
            Ok((
                LabeledGraph::new(Graph::new(total, edges)?, k, labels)?,
                blocks,
            ))
        }
    }
}

enum ChainOp {
    Rel(usize, usize),
    Eta(usize, usize),
}

// Converts one node, returning the extended form and the labels occurring in
// its value (needed to decide which label pairs an edge addition joins).
fn convert_classic(node: &ClassicNode, k: usize) -> Result<(ExtNode, BTreeSet<usize>)> {
    // Peel the unary chain above the next vertex or union.
    let mut ops: Vec<ChainOp> = Vec::new(); // outermost first
    let mut cur = node;
    loop {
        match cur {
            ClassicNode::Relabel { from, to, child } => {
                ops.push(ChainOp::Rel(*from, *to));
                cur = child;
            }
            ClassicNode::AddEdges { a, b, child } => {
                ops.push(ChainOp::Eta(*a, *b));
                cur = child;
            }
            _ => break,
        }
    }

    let wrap = |mut root: ExtNode, ops: &[ChainOp]| {
        for op in ops.iter().rev() {
            if let ChainOp::Rel(from, to) = op {
                root = ExtNode::Relabel { from: *from, to: *to, child: Box::new(root) };
            }
        }
        root
    };

    match cur {
        ClassicNode::Vertex { label } => {
            // Edge additions over a single vertex never apply.
            let mut cur_label = *label;
            for op in ops.iter().rev() {
                if let ChainOp::Rel(from, to) = op {
                    if cur_label == *from {
                        cur_label = *to;
                    }
                }
            }
            let root = wrap(ExtNode::Vertex { label: *label }, &ops);
            Ok((root, BTreeSet::from([cur_label])))
        }
        ClassicNode::Union { left, right } => {
            let (l_node, l_labels) = convert_classic(left, k)?;
            let (r_node, r_labels) = convert_classic(right, k)?;
            // Trace the chain bottom-up: each edge addition joins the
            // union-time label pairs that its current labels stand for.
            let mut rho: Vec<usize> = (1..=k).collect();
            let mut pairs = BTreeSet::new();
            let mut out_labels = BTreeSet::new();
            for op in ops.iter().rev() {
                match op {
                    ChainOp::Eta(a, b) => {
                        for &i in &l_labels {
                            for &j in &r_labels {
                                let (ri, rj) = (rho[i - 1], rho[j - 1]);
                                if (ri == *a && rj == *b) || (ri == *b && rj == *a) {
                                    pairs.insert((i, j));
                                }
                            }
                        }
                    }
                    ChainOp::Rel(from, to) => {
                        for slot in rho.iter_mut() {
                            if *slot == *from {
                                *slot = *to;
                            }
                        }
                    }
                }
            }
            for &i in l_labels.iter().chain(r_labels.iter()) {
                out_labels.insert(rho[i - 1]);
            }
            let root = wrap(
                ExtNode::Connect {
                    pairs,
                    left: Box::new(l_node),
                    right: Box::new(r_node),
                },
                &ops,
            );
            Ok((root, out_labels))
        }
        _ => unreachable!("chain walk stops at vertex or union"),
    }
}

#[derive(Serialize, Deserialize)]
struct ExprJson {
    k: usize,
    root: NodeJson,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum NodeJson {
    Vertex {
        label: usize,
    },
    Relabel {
        from: usize,
        to: usize,
        child: Box<NodeJson>,
    },
    Connect {
        t: Vec<(usize, usize)>,
        left: Box<NodeJson>,
        right: Box<NodeJson>,
    },
    Beta {
        nvec: Vec<usize>,
        sigma: Vec<usize>,
        s: Vec<(usize, usize, usize, usize)>,
        child: Box<NodeJson>,
    },
}

fn ext_to_json(node: &ExtNode) -> NodeJson {
    match node {
        ExtNode::Vertex { label } => NodeJson::Vertex { label: *label },
        ExtNode::Relabel { from, to, child } => NodeJson::Relabel {
            from: *from,
            to: *to,
            child: Box::new(ext_to_json(child)),
        },
        ExtNode::Connect { pairs, left, right } => NodeJson::Connect {
            t: pairs.iter().copied().collect(),
            left: Box::new(ext_to_json(left)),
            right: Box::new(ext_to_json(right)),
        },
        ExtNode::Beta { nvec, sigma, tuples, child } => NodeJson::Beta {
            nvec: nvec.clone(),
            sigma: sigma.clone(),
            s: tuples.iter().copied().collect(),
            child: Box::new(ext_to_json(child)),
        },
    }
}

fn ext_from_json(k: usize, node: &NodeJson) -> Result<ExtExpr> {
    match node {
        NodeJson::Vertex { label } => ExtExpr::vertex(k, *label),
        NodeJson::Relabel { from, to, child } => ext_from_json(k, child)?.relabel(*from, *to),
        NodeJson::Connect { t, left, right } => ExtExpr::connect(
            t.iter().copied(),
            ext_from_json(k, left)?,
            ext_from_json(k, right)?,
        ),
        NodeJson::Beta { nvec, sigma, s, child } => {
            ext_from_json(k, child)?.beta(nvec.clone(), sigma.clone(), s.iter().copied())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_clique, gen_hypercube};
    use crate::oracle::brute_iso;

    fn v(k: usize, label: usize) -> ExtExpr {
        ExtExpr::vertex(k, label).unwrap()
    }

    #[test]
    fn connect_builds_single_edge() {
        let e = ExtExpr::connect([(1, 2)], v(2, 1), v(2, 2)).unwrap();
        let g = e.eval().unwrap();
        assert_eq!(g.graph(), &gen_clique(2));
        assert_eq!(g.labels(), &[1, 2]);
    }

    #[test]
    fn connect_without_pairs_is_disjoint_union() {
        let e = ExtExpr::connect([], v(2, 1), v(2, 1)).unwrap();
        let g = e.eval().unwrap();
        assert_eq!(g.graph(), &Graph::edgeless(2));
    }

    #[test]
    fn beta_with_zero_copies_is_identity() {
        let base = hypercube_expr(1).unwrap();
        let before = base.eval().unwrap();
        let e = base.beta(vec![0, 0], vec![1, 2], []).unwrap();
        assert_eq!(e.eval().unwrap(), before);
    }

    #[test]
    fn beta_grows_squares() {
        // one beta step on a labeled edge must give a 4-cycle
        let g = hypercube_expr(2).unwrap().eval().unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.graph().edge_count(), 4);
        assert_eq!(g.labels(), &[1, 2, 2, 1]);
        assert!(brute_iso(g.graph(), &gen_hypercube(2).unwrap()).unwrap().is_some());
    }

    #[test]
    fn hypercube_expression_matches_generator() {
        for n in 0..=3 {
            let from_expr = hypercube_expr(n).unwrap().eval().unwrap();
            let reference = gen_hypercube(n).unwrap();
            assert_eq!(from_expr.n(), reference.n(), "dimension {n}");
            assert!(
                brute_iso(from_expr.graph(), &reference).unwrap().is_some(),
                "dimension {n}"
            );
        }
    }

    #[test]
    fn size_counts_relabel_runs_once() {
        assert_eq!(hypercube_expr(1).unwrap().size(), 3);
        assert_eq!(hypercube_expr(3).unwrap().size(), 5);
        let chain = v(2, 1).relabel(1, 2).unwrap().relabel(2, 1).unwrap();
        assert_eq!(chain.size(), 2);
        let mixed = ExtExpr::connect([], chain.clone(), chain).unwrap();
        assert_eq!(mixed.size(), 5);
    }

    #[test]
    fn beta_validation_rejects_bad_input() {
        assert!(v(2, 1).beta(vec![1], vec![1, 2], []).is_err());
        assert!(v(2, 1).beta(vec![1, 1], vec![1], []).is_err());
        assert!(v(2, 1).beta(vec![1, 1], vec![1, 3], []).is_err());
        // copy index above nvec
        assert!(v(2, 1).beta(vec![1, 0], vec![1, 2], [(2, 1, 1, 1), (1, 1, 2, 1)]).is_err());
        // asymmetric tuple set
        assert!(v(2, 1).beta(vec![1, 1], vec![1, 2], [(1, 1, 2, 1)]).is_err());
    }

    fn classic_k3() -> ClassicExpr {
        let e = ClassicExpr::union(
            ClassicExpr::vertex(2, 1).unwrap(),
            ClassicExpr::vertex(2, 2).unwrap(),
        )
        .unwrap()
        .add_edges(1, 2)
        .unwrap()
        .relabel(2, 1)
        .unwrap();
        ClassicExpr::union(e, ClassicExpr::vertex(2, 2).unwrap())
            .unwrap()
            .add_edges(1, 2)
            .unwrap()
    }

    #[test]
    fn classic_eval_builds_triangle() {
        let g = classic_k3().eval().unwrap();
        assert_eq!(g.graph(), &gen_clique(3));
        assert_eq!(g.labels(), &[1, 1, 2]);
    }

    #[test]
    fn safety_detects_late_inside_edges() {
        let safe = classic_k3();
        assert!(safe.is_safe().unwrap());

        // Two union operands labeled 1 and 2 stay disconnected inside the
        // inner union; a later add_edges(1,2) above an outer union would put
        // an edge inside that block.
        let inner = ClassicExpr::union(
            ClassicExpr::vertex(2, 1).unwrap(),
            ClassicExpr::vertex(2, 2).unwrap(),
        )
        .unwrap();
        let outer = ClassicExpr::union(inner, ClassicExpr::vertex(2, 1).unwrap())
            .unwrap()
            .add_edges(1, 2)
            .unwrap();
        assert!(!outer.is_safe().unwrap());
    }

    #[test]
    fn conversion_replaces_union_blocks() {
        let classic = ClassicExpr::union(
            ClassicExpr::vertex(2, 1).unwrap(),
            ClassicExpr::vertex(2, 2).unwrap(),
        )
        .unwrap()
        .add_edges(1, 2)
        .unwrap();
        let ext = classic.to_extended().unwrap();
        let expected = ExtExpr::connect([(1, 2)], v(2, 1), v(2, 2)).unwrap();
        assert_eq!(ext, expected);
        assert_eq!(ext.eval().unwrap(), classic.eval().unwrap());
    }

    #[test]
    fn conversion_matches_eval_on_triangle() {
        let classic = classic_k3();
        let ext = classic.to_extended().unwrap();
        assert_eq!(ext.eval().unwrap(), classic.eval().unwrap());
    }

    #[test]
    fn conversion_rejects_unsafe_input() {
        let inner = ClassicExpr::union(
            ClassicExpr::vertex(2, 1).unwrap(),
            ClassicExpr::vertex(2, 2).unwrap(),
        )
        .unwrap();
        let outer = ClassicExpr::union(inner, ClassicExpr::vertex(2, 1).unwrap())
            .unwrap()
            .add_edges(1, 2)
            .unwrap();
        assert!(matches!(outer.to_extended(), Err(Error::UnsafeExpression)));
    }

    #[test]
    fn expression_json_round_trip() {
        let e = hypercube_expr(3).unwrap();
        let text = e.to_json();
        assert_eq!(ExtExpr::from_json(&text).unwrap(), e);
        assert!(text.contains("\"op\":\"beta\""));

        let bad = r#"{"k": 2, "root": {"op": "vertex", "label": 7}}"#;
        assert!(ExtExpr::from_json(bad).is_err());
    }
}
