//! Homomorphism counting driven by an extended expression for the target.
//!
//! For a fixed source graph `g` on `n` vertices and an alphabet of size `k`,
//! a [`HomTable`] stores one count per partial labeling of `g`: entry `chi`
//! counts the homomorphisms from the subgraph induced on the support of
//! `chi` into the target that send each vertex to a target vertex labeled
//! `chi(v)`. Every expression operator has a matching table transform
//! ("lift"), so the table of the expression's value can be computed
//! bottom-up without ever materializing the target graph. The total count
//! is the sum over the fully supported labelings.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{ExtExpr, ExtNode};
use crate::graph::{Graph, HomCount, PartialLabeling};

/// Default cap on table sizes and enumeration work.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// One homomorphism count per partial labeling of a fixed source graph,
/// indexed by [`PartialLabeling::to_index`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomTable {
    k: usize,
    n: usize,
    counts: Vec<HomCount>,
}

impl HomTable {
    pub(crate) fn from_counts(k: usize, n: usize, counts: Vec<HomCount>) -> HomTable {
        debug_assert_eq!(counts.len(), (k + 1).pow(n as u32));
        HomTable { k, n, counts }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[HomCount] {
        &self.counts
    }

    pub fn get(&self, chi: &PartialLabeling) -> &HomCount {
        assert_eq!((chi.k(), chi.n()), (self.k, self.n), "labeling shape mismatch");
        &self.counts[chi.to_index()]
    }

    /// Sum over all labelings with full support: the homomorphism count
    /// into the target, forgetting labels.
    pub fn full_support_total(&self) -> HomCount {
        let mut total = HomCount::zero();
        let mut idx = 0usize;
        let pow: Vec<usize> = powers(self.k, self.n);
        // walk all k^n full labelings, maintaining the mixed-radix index
        let mut digits = vec![1usize; self.n];
        if self.n == 0 {
            return self.counts[0].clone();
        }
        idx += pow.iter().sum::<usize>();
        loop {
            total += &self.counts[idx];
            let mut v = 0;
            loop {
                if v == self.n {
                    return total;
                }
                if digits[v] < self.k {
                    digits[v] += 1;
                    idx += pow[v];
                    break;
                }
                idx -= (self.k - 1) * pow[v];
                digits[v] = 1;
                v += 1;
            }
        }
    }
}

fn powers(k: usize, n: usize) -> Vec<usize> {
    let mut pow = Vec::with_capacity(n);
    let mut acc = 1usize;
    for _ in 0..n {
        pow.push(acc);
        acc *= k + 1;
    }
    pow
}

fn table_len(k: usize, n: usize) -> usize {
    (k + 1)
        .checked_pow(n as u32)
        .expect("table size overflows usize")
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= 60, "source graph too large for mask-based lifts");
    let mut nbr = vec![0u64; g.n()];
    for &(u, v) in g.edges() {
        nbr[u] |= 1 << v;
        nbr[v] |= 1 << u;
    }
    nbr
}

/// Table of the single-vertex target carrying `label`: entry `chi` is 1
/// when the support induces no edge and every supported vertex has value
/// `label`, else 0.
pub fn base_table(g: &Graph, k: usize, label: usize) -> HomTable {
    assert!(label >= 1 && label <= k, "label out of range");
    let n = g.n();
    let nbr = neighbor_masks(g);
    let pow = powers(k, n);
    let mut counts = vec![HomCount::zero(); table_len(k, n)];
    // supports are exactly the independent sets of g
    let size = 1usize << n;
    let mut indep = vec![false; size];
    indep[0] = true;
    counts[0] = HomCount::one();
    for s in 1..size {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        indep[s] = indep[rest] && nbr[v] & (rest as u64) == 0;
        if indep[s] {
            let mut idx = 0usize;
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                idx += label * pow[v];
                bits &= bits - 1;
            }
            counts[idx] = HomCount::one();
        }
    }
    HomTable::from_counts(k, n, counts)
}

/// Applies a relabeling `sigma` (total map on `1..=k`, one entry per label)
/// to the target side: out entry `chi` sums the input entries `chi'` with
/// the same support and `sigma(chi'(v)) = chi(v)` everywhere.
pub fn lift_relabel(t: &HomTable, sigma: &[usize]) -> HomTable {
    let (k, n) = (t.k, t.n);
    assert_eq!(sigma.len(), k, "sigma needs one entry per label");
    assert!(sigma.iter().all(|&s| s >= 1 && s <= k), "sigma maps into 1..=k");
    // digit map with 0 (no label) fixed
    let mut digit_map = vec![0usize; k + 1];
    for d in 1..=k {
        digit_map[d] = sigma[d - 1];
    }
    // the sum factors per vertex, so transform one axis at a time
    let mut counts = t.counts.clone();
    let radix = k + 1;
    let mut stride = 1usize;
    for _ in 0..n {
        let block = stride * radix;
        let mut base = 0usize;
        while base < counts.len() {
            for low in base..base + stride {
                let mut out = vec![HomCount::zero(); radix];
                for d in 0..radix {
                    let val = &counts[low + d * stride];
                    if !val.is_zero() {
                        out[digit_map[d]] += val;
                    }
                }
                for d in 0..radix {
                    counts[low + d * stride] = std::mem::take(&mut out[d]);
                }
            }
            base += block;
        }
        stride = block;
    }
    HomTable::from_counts(k, n, counts)
}

/// Combines the tables of two targets joined by a `connect` with ordered
/// label pairs `pairs`: each supported vertex of `g` goes to the left or
/// right side, and every edge of `g` crossing the split must land on a pair
/// `(left label, right label)` in `pairs`.
pub fn lift_connect(
    g: &Graph,
    left: &HomTable,
    right: &HomTable,
    pairs: &BTreeSet<(usize, usize)>,
) -> HomTable {
    let (k, n) = (left.k, left.n);
    assert_eq!((right.k, right.n), (k, n), "table shape mismatch");
    assert_eq!(g.n(), n, "table does not match source graph");
    let nbr = neighbor_masks(g);
    let pow = powers(k, n);
    let mut allowed = vec![false; (k + 1) * (k + 1)];
    for &(i, j) in pairs {
        allowed[i * (k + 1) + j] = true;
    }
    let mut counts = vec![HomCount::zero(); table_len(k, n)];

    // per-vertex states: 0 = out of support, (side, c) otherwise
    struct Dfs<'a> {
        k: usize,
        n: usize,
        nbr: &'a [u64],
        pow: &'a [usize],
        allowed: &'a [bool],
        left: &'a [HomCount],
        right: &'a [HomCount],
        out: &'a mut [HomCount],
        label: Vec<usize>,
        left_mask: u64,
        right_mask: u64,
    }

    impl Dfs<'_> {
        fn run(&mut self, v: usize, idx_l: usize, idx_r: usize, idx_out: usize) {
            if v == self.n {
                let (a, b) = (&self.left[idx_l], &self.right[idx_r]);
                if !a.is_zero() && !b.is_zero() {
                    self.out[idx_out] += a * b;
                }
                return;
            }
            // vertex out of support
            self.run(v + 1, idx_l, idx_r, idx_out);
            'left: for c in 1..=self.k {
                // v on the left: crossing edges to earlier right vertices
                let mut earlier = self.nbr[v] & self.right_mask;
                while earlier != 0 {
                    let u = earlier.trailing_zeros() as usize;
                    if !self.allowed[c * (self.k + 1) + self.label[u]] {
                        continue 'left;
                    }
                    earlier &= earlier - 1;
                }
                self.label[v] = c;
                self.left_mask |= 1 << v;
                self.run(v + 1, idx_l + c * self.pow[v], idx_r, idx_out + c * self.pow[v]);
                self.left_mask &= !(1 << v);
            }
            'right: for c in 1..=self.k {
                let mut earlier = self.nbr[v] & self.left_mask;
                while earlier != 0 {
                    let u = earlier.trailing_zeros() as usize;
                    if !self.allowed[self.label[u] * (self.k + 1) + c] {
                        continue 'right;
                    }
                    earlier &= earlier - 1;
                }
                self.label[v] = c;
                self.right_mask |= 1 << v;
                self.run(v + 1, idx_l, idx_r + c * self.pow[v], idx_out + c * self.pow[v]);
                self.right_mask &= !(1 << v);
            }
        }
    }

    let mut dfs = Dfs {
        k,
        n,
        nbr: &nbr,
        pow: &pow,
        allowed: &allowed,
        left: &left.counts,
        right: &right.counts,
        out: &mut counts,
        label: vec![0; n],
        left_mask: 0,
        right_mask: 0,
    };
    dfs.run(0, 0, 0, 0);
    HomTable::from_counts(k, n, counts)
}

/// Lifts a beta operator: every supported vertex of `g` maps either to an
/// original target vertex (child label `c`, same out label) or to copy `j`
/// of a vertex whose child label is `m` (out label `sigma(m)`). Edges of
/// `g` inside the support with at least one copy endpoint must satisfy the
/// tuple set; the child table then accounts for target adjacency.
pub fn lift_beta(
    g: &Graph,
    t: &HomTable,
    nvec: &[usize],
    sigma: &[usize],
    tuples: &BTreeSet<(usize, usize, usize, usize)>,
) -> HomTable {
    let (k, n) = (t.k, t.n);
    assert_eq!(g.n(), n, "table does not match source graph");
    assert_eq!(nvec.len(), k, "nvec needs one entry per label");
    assert_eq!(sigma.len(), k, "sigma needs one entry per label");
    let nbr = neighbor_masks(g);
    let pow = powers(k, n);
    // states: 0 = out of support; originals by child label; copies by
    // (child label, copy index)
    #[derive(Clone, Copy)]
    struct State {
        child_digit: usize,
        out_digit: usize,
        omega: usize,
    }
    let mut states = Vec::new();
    for c in 1..=k {
        states.push(State { child_digit: c, out_digit: c, omega: 0 });
    }
    for m in 1..=k {
        for j in 1..=nvec[m - 1] {
            states.push(State { child_digit: m, out_digit: sigma[m - 1], omega: j });
        }
    }
    let side = k * (k + 1);
    let mut allowed = vec![false; side * side];
    for &(i1, j1, i2, j2) in tuples {
        allowed[((i1 - 1) * (k + 1) + j1) * side + (i2 - 1) * (k + 1) + j2] = true;
    }
    let mut counts = vec![HomCount::zero(); table_len(k, n)];

    struct Dfs<'a> {
        n: usize,
        k: usize,
        nbr: &'a [u64],
        pow: &'a [usize],
        states: &'a [State],
        allowed: &'a [bool],
        side: usize,
        child: &'a [HomCount],
        out: &'a mut [HomCount],
        chosen: Vec<State>,
        support: u64,
    }

    impl Dfs<'_> {
        fn run(&mut self, v: usize, idx_child: usize, idx_out: usize) {
            if v == self.n {
                let val = &self.child[idx_child];
                if !val.is_zero() {
                    self.out[idx_out] += val;
                }
                return;
            }
            self.run(v + 1, idx_child, idx_out);
            'state: for s in 0..self.states.len() {
                let st = self.states[s];
                let mut earlier = self.nbr[v] & self.support;
                while earlier != 0 {
                    let u = earlier.trailing_zeros() as usize;
                    let ou = self.chosen[u];
                    // edges between two originals carry no tuple condition
                    if st.omega != 0 || ou.omega != 0 {
                        let a = (st.child_digit - 1) * (self.k + 1) + st.omega;
                        let b = (ou.child_digit - 1) * (self.k + 1) + ou.omega;
                        if !self.allowed[a * self.side + b] {
                            continue 'state;
                        }
                    }
                    earlier &= earlier - 1;
                }
                self.chosen[v] = st;
                self.support |= 1 << v;
                self.run(
                    v + 1,
                    idx_child + st.child_digit * self.pow[v],
                    idx_out + st.out_digit * self.pow[v],
                );
                self.support &= !(1 << v);
            }
        }
    }

    let mut dfs = Dfs {
        n,
        k,
        nbr: &nbr,
        pow: &pow,
        states: &states,
        allowed: &allowed,
        side,
        child: &t.counts,
        out: &mut counts,
        chosen: vec![State { child_digit: 0, out_digit: 0, omega: 0 }; n],
        support: 0,
    };
    dfs.run(0, 0, 0);
    HomTable::from_counts(k, n, counts)
}

/// Exact number of homomorphisms from `g` into the value of `e`, computed
/// through table lifts only. Consecutive relabels are composed into one
/// map before lifting. Fails when `(k+1)^n` or a per-operator state space
/// exceeds `budget`.
pub fn count_hom_via_expr(g: &Graph, e: &ExtExpr, budget: u128) -> Result<HomCount> {
    let k = e.k();
    let n = g.n();
    if n > 60 {
        return Err(Error::GuardExceeded {
            what: "source vertex count",
            limit: 60,
            requested: n as u128,
        });
    }
    let check = |states: u128, what: &'static str| -> Result<()> {
        let mut total: u128 = 1;
        for _ in 0..n {
            total = total.checked_mul(states).unwrap_or(u128::MAX);
        }
        if total > budget {
            return Err(Error::GuardExceeded { what, limit: budget, requested: total });
        }
        Ok(())
    };
    check(k as u128 + 1, "hom table size")?;
    let table = table_for(g, k, e.root(), budget, &check)?;
    Ok(table.full_support_total())
}

fn table_for(
    g: &Graph,
    k: usize,
    node: &ExtNode,
    budget: u128,
    check: &dyn Fn(u128, &'static str) -> Result<()>,
) -> Result<HomTable> {
    match node {
        ExtNode::Vertex { label } => Ok(base_table(g, k, *label)),
        ExtNode::Connect { pairs, left, right } => {
            check(2 * k as u128 + 1, "connect lift state space")?;
            let tl = table_for(g, k, left, budget, check)?;
            let tr = table_for(g, k, right, budget, check)?;
            Ok(lift_connect(g, &tl, &tr, pairs))
        }
        ExtNode::Beta { nvec, sigma, tuples, child } => {
            let copies: usize = nvec.iter().sum();
            check(1 + k as u128 + copies as u128, "beta lift state space")?;
            let tc = table_for(g, k, child, budget, check)?;
            Ok(lift_beta(g, &tc, nvec, sigma, tuples))
        }
        ExtNode::Relabel { .. } => {
            // compose the maximal run of relabels into a single map
            let mut steps: Vec<(usize, usize)> = Vec::new();
            let mut cur = node;
            while let ExtNode::Relabel { from, to, child } = cur {
                steps.push((*from, *to));
                cur = child;
            }
            let mut sigma: Vec<usize> = (1..=k).collect();
            for &(from, to) in steps.iter().rev() {
                for slot in sigma.iter_mut() {
                    if *slot == from {
                        *slot = to;
                    }
                }
            }
            let tc = table_for(g, k, cur, budget, check)?;
            Ok(lift_relabel(&tc, &sigma))
        }
    }
}
