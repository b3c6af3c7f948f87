//! Search for extended expressions by dynamic programming over labeled
//! subgraphs.
//!
//! The table has one entry per partial labeling of the input's vertex set;
//! a filled entry holds an expression whose value is isomorphic, as a
//! labeled graph, to the induced subgraph on the labeling's support.
//! Entries are resolved in order of support size. Within a size class,
//! each entry first tries to discharge a connect operator (split the
//! support, derive the forced label-pair set from the cross edges, check
//! it reproduces them exactly), then a beta operator (some induced
//! sub-labeling expands onto the entry under copy counts, a label map,
//! and a tuple set); afterwards the class is closed under relabelings.
//! Any filled full-support entry witnesses an expression for the input.
//!
//! The search is deterministic: splits and sub-labelings go by ascending
//! bitmask over the support, copy vectors and label maps ascend
//! lexicographically, and tuple sets ascend as subsets of the canonical
//! orbit representatives. The first hit is kept.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::expr::{apply_beta, ExtExpr};
use crate::graph::{Graph, LabeledGraph, PartialLabeling};
use crate::iso::labeled_iso;

/// Largest alphabet for which the beta case is searched. Its tuple-set
/// enumeration grows doubly exponentially with the alphabet, so bigger
/// alphabets run with connect and relabel steps only: still sound, but
/// graphs that need a beta there are reported as not found.
pub const BETA_SEARCH_MAX_K: usize = 2;

/// The filled dynamic-programming table of [`synthesize`].
pub struct SynthTable {
    k: usize,
    n: usize,
    entries: Vec<Option<ExtExpr>>,
}

impl SynthTable {
    /// Fill the table for `g` over labels `1..=k`. The table has
    /// `(k+1)^n` entries; `budget` caps that count.
    pub fn build(g: &Graph, k: usize, budget: u128) -> Result<SynthTable> {
        let n = g.n();
        let size = (k as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > budget {
            return Err(Error::GuardExceeded {
                what: "expression table entries",
                limit: budget,
                requested: size,
            });
        }
        let len = usize::try_from(size).map_err(|_| Error::GuardExceeded {
            what: "expression table entries",
            limit: usize::MAX as u128,
            requested: size,
        })?;
        let mut entries: Vec<Option<ExtExpr>> = vec![None; len];
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for idx in 0..len {
            let digits = decode(k, n, idx);
            by_size[digits.iter().filter(|&&d| d != 0).count()].push(idx);
        }
        if n == 0 {
            return Ok(SynthTable { k, n, entries });
        }
        for &idx in &by_size[1] {
            let digits = decode(k, n, idx);
            let label = digits.iter().copied().find(|&d| d != 0).expect("one vertex is labeled");
            entries[idx] = Some(ExtExpr::vertex(k, label).expect("label is in range"));
        }
        for s in 2..=n {
            for &idx in &by_size[s] {
                let digits = decode(k, n, idx);
                let found = try_connect(g, k, &digits, &entries).or_else(|| {
                    if k <= BETA_SEARCH_MAX_K {
                        try_beta(g, k, &digits, &entries)
                    } else {
                        None
                    }
                });
                if found.is_some() {
                    entries[idx] = found;
                }
            }
            // close the size class under relabelings
            let mut queue: VecDeque<usize> =
                by_size[s].iter().copied().filter(|&i| entries[i].is_some()).collect();
            while let Some(idx) = queue.pop_front() {
                let digits = decode(k, n, idx);
                for from in 1..=k {
                    if !digits.contains(&from) {
                        continue;
                    }
                    for to in 1..=k {
                        if to == from {
                            continue;
                        }
                        let moved: Vec<usize> =
                            digits.iter().map(|&d| if d == from { to } else { d }).collect();
                        let nidx = encode(k, &moved);
                        if entries[nidx].is_none() {
                            let base = entries[idx].clone().expect("queued entries are filled");
                            entries[nidx] =
                                Some(base.relabel(from, to).expect("labels are in range"));
                            queue.push_back(nidx);
                        }
                    }
                }
            }
        }
        Ok(SynthTable { k, n, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The expression recorded for a labeling, if any. Its value is
    /// isomorphic as a labeled graph to the induced subgraph on the
    /// labeling's support, carrying the labeling's labels.
    pub fn entry(&self, labeling: &PartialLabeling) -> Option<&ExtExpr> {
        assert_eq!(labeling.k(), self.k, "labeling alphabet must match the table");
        assert_eq!(labeling.n(), self.n, "labeling length must match the table");
        self.entries[labeling.to_index()].as_ref()
    }

    /// The first filled entry whose labeling covers every vertex.
    pub fn full_support(&self) -> Option<(PartialLabeling, &ExtExpr)> {
        for (idx, slot) in self.entries.iter().enumerate() {
            if let Some(expr) = slot {
                let labeling = PartialLabeling::from_index(self.k, self.n, idx);
                if labeling.is_full() {
                    return Some((labeling, expr));
                }
            }
        }
        None
    }
}

/// Find an extended expression over labels `1..=k` whose value is `g`
/// under some labeling, or report that the search found none.
pub fn synthesize(g: &Graph, k: usize, budget: u128) -> Result<Option<ExtExpr>> {
    let table = SynthTable::build(g, k, budget)?;
    Ok(table.full_support().map(|(_, expr)| expr.clone()))
}

fn decode(k: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let mut digits = vec![0usize; n];
    for d in digits.iter_mut() {
        *d = idx % (k + 1);
        idx /= k + 1;
    }
    digits
}

fn encode(k: usize, digits: &[usize]) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * (k + 1) + d)
}

fn encode_masked(k: usize, digits: &[usize], mask: u64) -> usize {
    digits
        .iter()
        .enumerate()
        .rev()
        .fold(0, |acc, (v, &d)| acc * (k + 1) + if mask >> v & 1 == 1 { d } else { 0 })
}

fn sub_labeled(g: &Graph, k: usize, digits: &[usize]) -> LabeledGraph {
    let support: Vec<usize> = (0..digits.len()).filter(|&v| digits[v] != 0).collect();
    let labels: Vec<usize> = support.iter().map(|&v| digits[v]).collect();
    let induced = g.induced(&support).expect("support vertices are in range");
    LabeledGraph::new(induced, k, labels).expect("digits are valid labels")
}

// Nonempty proper submasks of `mask`, ascending.
fn submasks(mask: u64) -> Vec<u64> {
    let mut subs = Vec::new();
    let mut s = mask;
    while s != 0 {
        if s != mask {
            subs.push(s);
        }
        s = (s - 1) & mask;
    }
    subs.reverse();
    subs
}

fn try_connect(
    g: &Graph,
    k: usize,
    digits: &[usize],
    entries: &[Option<ExtExpr>],
) -> Option<ExtExpr> {
    let support: Vec<usize> = (0..digits.len()).filter(|&v| digits[v] != 0).collect();
    let mask: u64 = support.iter().fold(0, |m, &v| m | 1 << v);
    let low = mask & mask.wrapping_neg();
    'split: for sub1 in submasks(mask) {
        // each unordered split once, with the lowest vertex on the left
        if sub1 & low == 0 {
            continue;
        }
        let sub2 = mask ^ sub1;
        let idx1 = encode_masked(k, digits, sub1);
        let idx2 = encode_masked(k, digits, sub2);
        if entries[idx1].is_none() || entries[idx2].is_none() {
            continue;
        }
        // the label pairs of the actual cross edges are forced; the split
        // works exactly when they do not also cover a missing cross pair
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(u, v) in g.edges() {
            let (bu, bv) = (1u64 << u, 1u64 << v);
            if bu & sub1 != 0 && bv & sub2 != 0 {
                pairs.insert((digits[u], digits[v]));
            } else if bv & sub1 != 0 && bu & sub2 != 0 {
                pairs.insert((digits[v], digits[u]));
            }
        }
        for &u in support.iter().filter(|&&u| 1u64 << u & sub1 != 0) {
            for &v in support.iter().filter(|&&v| 1u64 << v & sub2 != 0) {
                if pairs.contains(&(digits[u], digits[v])) != g.has_edge(u, v) {
                    continue 'split;
                }
            }
        }
        let left = entries[idx1].clone().expect("checked present");
        let right = entries[idx2].clone().expect("checked present");
        return Some(ExtExpr::connect(pairs, left, right).expect("labels are in range"));
    }
    None
}

// Copy-count vectors over the child's label histogram: zero on labels the
// child lacks, entries in 0..=k elsewhere, weighted sum equal to `extra`;
// ascending lexicographic order.
fn nvec_choices(k: usize, hist: &[usize], extra: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fill_nvec(k, hist, extra, 0, &mut cur, &mut out);
    out
}

fn fill_nvec(
    k: usize,
    hist: &[usize],
    left: usize,
    slot: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if slot == k {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if hist[slot] == 0 {
        cur[slot] = 0;
        fill_nvec(k, hist, left, slot + 1, cur, out);
        return;
    }
    for v in 0..=k {
        let used = hist[slot] * v;
        if used > left {
            break;
        }
        cur[slot] = v;
        fill_nvec(k, hist, left - used, slot + 1, cur, out);
    }
}

fn try_beta(
    g: &Graph,
    k: usize,
    digits: &[usize],
    entries: &[Option<ExtExpr>],
) -> Option<ExtExpr> {
    let support: Vec<usize> = (0..digits.len()).filter(|&v| digits[v] != 0).collect();
    let mask: u64 = support.iter().fold(0, |m, &v| m | 1 << v);
    let target = sub_labeled(g, k, digits);
    let mut target_hist = vec![0usize; k];
    for &v in &support {
        target_hist[digits[v] - 1] += 1;
    }
    for sub in submasks(mask) {
        let child_n = sub.count_ones() as usize;
        let extra = support.len() - child_n;
        if extra > child_n * k {
            continue;
        }
        let idx1 = encode_masked(k, digits, sub);
        if entries[idx1].is_none() {
            continue;
        }
        let child_digits: Vec<usize> = digits
            .iter()
            .enumerate()
            .map(|(v, &d)| if sub >> v & 1 == 1 { d } else { 0 })
            .collect();
        let child = sub_labeled(g, k, &child_digits);
        let mut child_hist = vec![0usize; k];
        for v in 0..child.n() {
            child_hist[child.label(v) - 1] += 1;
        }
        let mut edge_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(a, b) in child.graph().edges() {
            let (x, y) = (child.label(a), child.label(b));
            edge_pairs.insert((x.min(y), x.max(y)));
        }
        for nvec in nvec_choices(k, &child_hist, extra) {
            // canonical representatives of the mirror-symmetric tuple
            // orbits that can fire at all: the label pair must sit on a
            // child edge and at least one side must be a real copy
            let mut reps: Vec<(usize, usize, usize, usize)> = Vec::new();
            for i1 in 1..=k {
                for i2 in 1..=k {
                    if !edge_pairs.contains(&(i1.min(i2), i1.max(i2))) {
                        continue;
                    }
                    for j1 in 0..=nvec[i1 - 1] {
                        for j2 in 0..=nvec[i2 - 1] {
                            if (j1, j2) != (0, 0) && (i1, j1, i2, j2) <= (i2, j2, i1, j1) {
                                reps.push((i1, j1, i2, j2));
                            }
                        }
                    }
                }
            }
            let active: Vec<bool> = (0..k).map(|l| child_hist[l] > 0 && nvec[l] > 0).collect();
            for s_idx in 0..k.pow(k as u32) {
                let mut sigma = vec![1usize; k];
                let mut rem = s_idx;
                for slot in (0..k).rev() {
                    sigma[slot] = rem % k + 1;
                    rem /= k;
                }
                // labels that spawn no copies never read their map slot:
                // pin those slots to 1 instead of re-running the search
                if (0..k).any(|l| !active[l] && sigma[l] != 1) {
                    continue;
                }
                let mut out_hist = child_hist.clone();
                for l in 0..k {
                    if active[l] {
                        out_hist[sigma[l] - 1] += child_hist[l] * nvec[l];
                    }
                }
                if out_hist != target_hist {
                    continue;
                }
                for s_bits in 0u32..1 << reps.len() {
                    let mut tuples: BTreeSet<(usize, usize, usize, usize)> = BTreeSet::new();
                    for (b, &(i1, j1, i2, j2)) in reps.iter().enumerate() {
                        if s_bits >> b & 1 == 1 {
                            tuples.insert((i1, j1, i2, j2));
                            tuples.insert((i2, j2, i1, j1));
                        }
                    }
                    let candidate =
                        apply_beta(&child, &nvec, &sigma, &tuples).expect("copy indices fit nvec");
                    if labeled_iso(&candidate, &target).is_some() {
                        let base = entries[idx1].clone().expect("checked present");
                        let expr = base
                            .beta(nvec.clone(), sigma.clone(), tuples)
                            .expect("arguments were validated");
                        return Some(expr);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_clique, gen_cycle, gen_path};
    use crate::iso::graph_iso;

    const BUDGET: u128 = 1_000_000;

    fn check_sound(g: &Graph, k: usize) -> ExtExpr {
        let expr = synthesize(g, k, BUDGET).unwrap().expect("expression should exist");
        let value = expr.eval().unwrap();
        assert!(graph_iso(value.graph(), g).is_some());
        expr
    }

    #[test]
    fn single_vertex() {
        let expr = check_sound(&Graph::edgeless(1), 1);
        assert_eq!(expr.size(), 1);
    }

    #[test]
    fn cliques_with_two_labels() {
        for n in 2..=5 {
            check_sound(&gen_clique(n), 2);
        }
    }

    #[test]
    fn four_cycle_with_two_labels() {
        check_sound(&gen_cycle(4), 2);
    }

    #[test]
    fn path_on_one_label_needs_a_beta() {
        // joins and unions alone only reach cographs, and the four-vertex
        // path is the smallest graph that is not one
        let expr = check_sound(&gen_path(4), 1);
        assert!(expr.to_json().contains("beta"));
    }

    #[test]
    fn empty_graph_has_no_expression() {
        assert!(synthesize(&Graph::edgeless(0), 1, BUDGET).unwrap().is_none());
    }

    #[test]
    fn disconnected_pair() {
        check_sound(&Graph::edgeless(2), 1);
    }

    #[test]
    fn budget_guard() {
        let err = synthesize(&gen_clique(10), 2, 100).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
    }

    #[test]
    fn table_entries_are_inspectable() {
        let g = gen_path(3);
        let table = SynthTable::build(&g, 2, BUDGET).unwrap();
        let labeling = PartialLabeling::new(2, vec![1, 2, 1]).unwrap();
        let entry = table.entry(&labeling).expect("alternating path labeling");
        let value = entry.eval().unwrap();
        let want = LabeledGraph::new(g, 2, vec![1, 2, 1]).unwrap();
        assert!(labeled_iso(&value, &want).is_some());
        let (full, _) = table.full_support().expect("some full labeling is filled");
        assert!(full.is_full());
    }
}
