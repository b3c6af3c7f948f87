//! Reduction from labeled-graph isomorphism to plain graph isomorphism.
//!
//! Each input graph is embedded next to a rigid scaffold: a chain of q+1
//! wheel gadgets whose q shared junctions are inflated to (n+3)-cliques,
//! plus one apex vertex per label. The scaffold admits no automorphism
//! moving a junction, so any isomorphism between the two outputs matches
//! junctions in order, hence apexes by index, hence carries the one input
//! graph onto the other while preserving labels.

use crate::error::{Error, Result};
use crate::graph::{Graph, LabeledGraph};

/// A plain-isomorphism instance equivalent to a labeled one.
#[derive(Debug, Clone)]
pub struct GadgetInstance {
    /// Scaffolded copy of the first input.
    pub g_prime: Graph,
    /// Scaffolded copy of the second input.
    pub h_prime: Graph,
    /// Number of junctions in the chain (the chain has `q + 1` wheel
    /// blocks), equal to the shared label alphabet size.
    pub q: usize,
    /// Vertex count of either input; junction cliques have `n + 3`
    /// vertices.
    pub n: usize,
}

// The wheel block: a pentagon x1..x5 plus a hub adjacent to all five. The
// chain glues blocks by identifying x1 of one block with the hub of the
// next; that shared vertex is the junction. Inflating junction j to a
// clique keeps the old edges toward the earlier block on one special
// vertex only, while every clique vertex sees the whole rim of the later
// block.
fn scaffolded(g: &LabeledGraph, q: usize) -> Graph {
    let n = g.n();
    let clique = n + 3;
    let hub0 = n;
    // per block: rim x2..x5, then the junction to its right (a clique for
    // all but the last block, a plain x1 for the last)
    let block = |b: usize| n + 1 + b * (4 + clique);
    let apexes = block(q) + 5;
    let mut edges: Vec<(usize, usize)> = g.graph().edges().to_vec();
    for b in 0..=q {
        let x = |j: usize| block(b) + (j - 2);
        let x1 = block(b) + 4;
        edges.push((x(2), x(3)));
        edges.push((x(3), x(4)));
        edges.push((x(4), x(5)));
        edges.push((x1, x(2)));
        edges.push((x1, x(5)));
        let hub = if b == 0 { hub0..hub0 + 1 } else { block(b - 1) + 4..block(b) };
        for h in hub {
            for j in 2..=5 {
                edges.push((h, x(j)));
            }
            edges.push((h, x1));
        }
    }
    for b in 0..q {
        let c = block(b) + 4;
        for u in c..c + clique {
            for v in u + 1..c + clique {
                edges.push((u, v));
            }
        }
    }
    for i in 1..=q {
        let a = apexes + i - 1;
        edges.push((a, block(i - 1) + 4));
        for v in 0..n {
            if g.label(v) == i {
                edges.push((a, v));
            }
        }
    }
    Graph::new(apexes + q, edges).expect("scaffold ids are in range")
}

/// Encode a labeled-isomorphism question as a plain one. The outputs are
/// isomorphic exactly when the inputs are isomorphic as labeled graphs.
pub fn gadget_reduce(a: &LabeledGraph, b: &LabeledGraph) -> Result<GadgetInstance> {
    if a.n() != b.n() || a.k() != b.k() {
        return Err(Error::SizeMismatch);
    }
    let q = a.k();
    Ok(GadgetInstance {
        g_prime: scaffolded(a, q),
        h_prime: scaffolded(b, q),
        q,
        n: a.n(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_cycle, Graph};
    use crate::iso::graph_iso;

    fn labeled(n: usize, edges: &[(usize, usize)], k: usize, labels: &[usize]) -> LabeledGraph {
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        LabeledGraph::new(g, k, labels.to_vec()).unwrap()
    }

    #[test]
    fn empty_input_leaves_the_bare_wheel() {
        let nil = labeled(0, &[], 0, &[]);
        let inst = gadget_reduce(&nil, &nil).unwrap();
        assert_eq!(inst.g_prime.n(), 6);
        assert_eq!(inst.g_prime.edge_count(), 10);
        let mut degrees = inst.g_prime.degree_sequence();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![3, 3, 3, 3, 3, 5]);
    }

    #[test]
    fn vertex_count_audit() {
        for (n, k) in [(1, 1), (3, 2), (4, 3), (6, 2)] {
            let g = labeled(n, &[], k, &vec![1; n]);
            let inst = gadget_reduce(&g, &g).unwrap();
            let expect = n + (6 + 5 * k) + k * (n + 2) + k;
            assert_eq!(inst.g_prime.n(), expect);
            assert_eq!(inst.q, k);
            assert_eq!(inst.n, n);
        }
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let a = labeled(2, &[(0, 1)], 2, &[1, 2]);
        let b = labeled(3, &[(0, 1)], 2, &[1, 2, 2]);
        assert!(gadget_reduce(&a, &b).is_err());
        let c = labeled(2, &[(0, 1)], 3, &[1, 2]);
        assert!(gadget_reduce(&a, &c).is_err());
    }

    #[test]
    fn encodes_label_patterns_of_c4() {
        let c4 = gen_cycle(4);
        let mk = |labels: &[usize]| {
            LabeledGraph::new(c4.clone(), 2, labels.to_vec()).unwrap()
        };
        let adjacent = mk(&[1, 1, 2, 2]);
        let alternating = mk(&[1, 2, 1, 2]);
        let rotated = mk(&[2, 2, 1, 1]);

        let differ = gadget_reduce(&adjacent, &alternating).unwrap();
        assert!(graph_iso(&differ.g_prime, &differ.h_prime).is_none());

        let agree = gadget_reduce(&adjacent, &rotated).unwrap();
        assert!(graph_iso(&agree.g_prime, &agree.h_prime).is_some());
    }

    #[test]
    fn label_swap_without_structure_change_is_detected() {
        // path 0-1-2 labeled 1,2,1 vs 2,1,2: plainly isomorphic graphs,
        // different labelings
        let a = labeled(3, &[(0, 1), (1, 2)], 2, &[1, 2, 1]);
        let b = labeled(3, &[(0, 1), (1, 2)], 2, &[2, 1, 2]);
        let inst = gadget_reduce(&a, &b).unwrap();
        assert!(graph_iso(&inst.g_prime, &inst.h_prime).is_none());
    }
}
