//! Exact isomorphism search.
//!
//! Candidates are narrowed by iterated neighborhood color refinement run
//! jointly on both graphs, then resolved by backtracking that always
//! branches on the vertex with the fewest remaining candidates. This is a
//! correctness tool, not a solver for hard instances; the inputs here are
//! small graphs whose symmetry makes the search cheap.

use std::collections::BTreeMap;

use crate::graph::{Graph, LabeledGraph};

// One refinement round: a vertex's new color is (old color, sorted multiset
// of neighbor colors), renumbered consistently across both graphs.
fn refine_once(a: &Graph, b: &Graph, ca: &[usize], cb: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let key = |g: &Graph, colors: &[usize], v: usize| {
        let mut nbr: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
        nbr.sort_unstable();
        (colors[v], nbr)
    };
    let mut dict: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for v in 0..a.n() {
        let len = dict.len();
        dict.entry(key(a, ca, v)).or_insert(len);
    }
    for v in 0..b.n() {
        let len = dict.len();
        dict.entry(key(b, cb, v)).or_insert(len);
    }
    let na = (0..a.n()).map(|v| dict[&key(a, ca, v)]).collect();
    let nb = (0..b.n()).map(|v| dict[&key(b, cb, v)]).collect();
    (na, nb)
}

fn color_classes(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for &c in colors {
        *counts.entry(c).or_insert(0) += 1;
    }
    counts
}

fn search(
    a: &Graph,
    b: &Graph,
    ca: &[usize],
    cb: &[usize],
    image: &mut [Option<usize>],
    used: &mut [bool],
    placed: usize,
) -> bool {
    if placed == a.n() {
        return true;
    }
    // most-constrained vertex first; candidates must share the refined
    // color and agree with every already-placed vertex on adjacency
    let mut best: Option<(usize, Vec<usize>)> = None;
    for v in 0..a.n() {
        if image[v].is_some() {
            continue;
        }
        let mut cands = Vec::new();
        'cand: for w in 0..b.n() {
            if used[w] || cb[w] != ca[v] {
                continue;
            }
            for u in 0..a.n() {
                if let Some(wu) = image[u] {
                    if a.has_edge(u, v) != b.has_edge(wu, w) {
                        continue 'cand;
                    }
                }
            }
            cands.push(w);
        }
        if cands.is_empty() {
            return false;
        }
        if best.as_ref().map_or(true, |(_, c)| cands.len() < c.len()) {
            let singleton = cands.len() == 1;
            best = Some((v, cands));
            if singleton {
                break;
            }
        }
    }
    let (v, cands) = best.expect("some vertex is unplaced");
    for w in cands {
        image[v] = Some(w);
        used[w] = true;
        if search(a, b, ca, cb, image, used, placed + 1) {
            return true;
        }
        used[w] = false;
        image[v] = None;
    }
    false
}

fn iso_with_colors(
    a: &Graph,
    b: &Graph,
    mut ca: Vec<usize>,
    mut cb: Vec<usize>,
) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    if color_classes(&ca) != color_classes(&cb) {
        return None;
    }
    loop {
        let (na, nb) = refine_once(a, b, &ca, &cb);
        let classes_a = color_classes(&na);
        if classes_a != color_classes(&nb) {
            return None;
        }
        let stable = classes_a.len() == color_classes(&ca).len();
        ca = na;
        cb = nb;
        if stable {
            break;
        }
    }
    let mut image = vec![None; a.n()];
    let mut used = vec![false; b.n()];
    if search(a, b, &ca, &cb, &mut image, &mut used, 0) {
        Some(image.into_iter().map(|x| x.expect("search placed all")).collect())
    } else {
        None
    }
}

/// An isomorphism from `a` to `b` as an image vector, if one exists.
pub fn graph_iso(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    iso_with_colors(a, b, vec![0; a.n()], vec![0; b.n()])
}

/// A label-preserving isomorphism between labeled graphs, if one exists.
pub fn labeled_iso(a: &LabeledGraph, b: &LabeledGraph) -> Option<Vec<usize>> {
    iso_with_colors(a.graph(), b.graph(), a.labels().to_vec(), b.labels().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_clique, gen_cycle, gen_hypercube, gen_kneser, gen_path, Graph};

    fn check_mapping(a: &Graph, b: &Graph, image: &[usize]) {
        let mut seen = vec![false; b.n()];
        for &w in image {
            assert!(!seen[w]);
            seen[w] = true;
        }
        for u in 0..a.n() {
            for v in u + 1..a.n() {
                assert_eq!(a.has_edge(u, v), b.has_edge(image[u], image[v]));
            }
        }
    }

    #[test]
    fn finds_hypercube_relabelings() {
        let h4 = gen_hypercube(4).unwrap();
        let shuffled_ids: Vec<usize> = (0..16).map(|v| v ^ 0b1010).collect();
        let edges = h4.edges().iter().map(|&(u, v)| (shuffled_ids[u], shuffled_ids[v]));
        let other = Graph::new(16, edges).unwrap();
        let image = graph_iso(&h4, &other).expect("isomorphic by construction");
        check_mapping(&h4, &other, &image);
    }

    #[test]
    fn distinguishes_equal_degree_sequences() {
        // C_6 and 2 triangles are both 2-regular on 6 vertices
        let c6 = gen_cycle(6);
        let triangles = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(graph_iso(&c6, &triangles).is_none());
        // C_5 vs. the bull-free house graph: same counts, different structure
        let house = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        assert!(graph_iso(&gen_cycle(5), &house).is_none());
    }

    #[test]
    fn labeled_search_respects_labels() {
        let c4 = gen_cycle(4);
        let adjacent = LabeledGraph::new(c4.clone(), 2, vec![1, 1, 2, 2]).unwrap();
        let alternating = LabeledGraph::new(c4.clone(), 2, vec![1, 2, 1, 2]).unwrap();
        let rotated = LabeledGraph::new(c4.clone(), 2, vec![2, 2, 1, 1]).unwrap();
        assert!(labeled_iso(&adjacent, &alternating).is_none());
        let image = labeled_iso(&adjacent, &rotated).expect("rotation by two");
        for v in 0..4 {
            assert_eq!(adjacent.label(v), rotated.label(image[v]));
        }
    }

    #[test]
    fn petersen_is_not_the_kneser_complement() {
        let petersen = gen_kneser(5, 2).unwrap();
        assert!(graph_iso(&petersen, &petersen).is_some());
        let johnson = crate::graph::complement(&petersen);
        assert!(graph_iso(&petersen, &johnson).is_none());
    }

    #[test]
    fn trivial_sizes() {
        assert!(graph_iso(&Graph::edgeless(0), &Graph::edgeless(0)).is_some());
        assert!(graph_iso(&gen_path(2), &gen_clique(2)).is_some());
        assert!(graph_iso(&gen_path(3), &gen_clique(3)).is_none());
    }
}
