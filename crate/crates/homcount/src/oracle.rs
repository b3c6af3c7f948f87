//! Brute-force reference implementations.
//!
//! Everything here enumerates the whole search space by definition, with no
//! shortcuts. The fast paths elsewhere in the crate are tested against
//! these; the command line exposes them as `--method bruteforce`.

use num_traits::{One, Zero};

use crate::dp::HomTable;
use crate::error::{Error, Result};
use crate::graph::{Graph, HomCount, LabeledGraph};
use crate::partition::SetFunction;

fn sat_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Counts homomorphisms from `g` to `h` by enumerating all
/// `|V(h)|^|V(g)|` vertex maps.
pub fn brute_hom(g: &Graph, h: &Graph, budget: u128) -> Result<HomCount> {
    let work = sat_pow(h.n() as u128, g.n());
    if work > budget {
        return Err(Error::GuardExceeded {
            what: "brute-force map enumeration",
            limit: budget,
            requested: work,
        });
    }
    fn walk(g: &Graph, h: &Graph, image: &mut Vec<usize>) -> u128 {
        let v = image.len();
        if v == g.n() {
            return 1;
        }
        let mut total = 0u128;
        'cand: for w in 0..h.n() {
            for &u in g.neighbors(v) {
                if u < v && !h.has_edge(image[u], w) {
                    continue 'cand;
                }
            }
            image.push(w);
            total += walk(g, h, image);
            image.pop();
        }
        total
    }
    if h.n() == 0 {
        return Ok(if g.n() == 0 { HomCount::one() } else { HomCount::zero() });
    }
    Ok(HomCount::from(walk(g, h, &mut Vec::new())))
}

/// Fills a whole table at once: for every partial map of `g` into the
/// labeled target `h` (each vertex picks an image or stays unmapped), adds
/// one to the entry of the labeling it realizes.
pub fn brute_hom_labeled(g: &Graph, h: &LabeledGraph, budget: u128) -> Result<HomTable> {
    let (k, n) = (h.k(), g.n());
    let work = sat_pow(h.n() as u128 + 1, n);
    if work > budget {
        return Err(Error::GuardExceeded {
            what: "brute-force partial map enumeration",
            limit: budget,
            requested: work,
        });
    }
    let size = (k + 1)
        .checked_pow(n as u32)
        .expect("table size overflows usize");
    let mut pow = Vec::with_capacity(n);
    let mut acc = 1usize;
    for _ in 0..n {
        pow.push(acc);
        acc *= k + 1;
    }
    let mut counts = vec![HomCount::zero(); size];
    fn walk(
        g: &Graph,
        h: &LabeledGraph,
        pow: &[usize],
        image: &mut Vec<Option<usize>>,
        idx: usize,
        counts: &mut [HomCount],
    ) {
        let v = image.len();
        if v == g.n() {
            counts[idx] += 1u32;
            return;
        }
        image.push(None);
        walk(g, h, pow, image, idx, counts);
        image.pop();
        'cand: for w in 0..h.n() {
            for &u in g.neighbors(v) {
                if u < v {
                    if let Some(wu) = image[u] {
                        if !h.graph().has_edge(wu, w) {
                            continue 'cand;
                        }
                    }
                }
            }
            image.push(Some(w));
            walk(g, h, pow, image, idx + h.label(w) * pow[v], counts);
            image.pop();
        }
    }
    walk(g, h, &pow, &mut Vec::new(), 0, &mut counts);
    Ok(HomTable::from_counts(k, n, counts))
}

/// Weighted ordered-partition count by listing all `n^m` assignments of
/// elements to parts.
pub fn brute_par(f: &SetFunction, n: usize) -> Result<HomCount> {
    let m = f.m();
    if m > 8 {
        return Err(Error::GuardExceeded {
            what: "brute-force partition ground set",
            limit: 8,
            requested: m as u128,
        });
    }
    let work = sat_pow(n as u128, m);
    if work > 100_000_000 {
        return Err(Error::GuardExceeded {
            what: "brute-force partition enumeration",
            limit: 100_000_000,
            requested: work,
        });
    }
    if n == 0 {
        return Ok(if m == 0 { f.value(0).clone() } else { HomCount::zero() });
    }
    fn walk(f: &SetFunction, n: usize, element: usize, parts: &mut Vec<usize>) -> HomCount {
        if element == f.m() {
            let mut prod = HomCount::one();
            for &mask in parts.iter() {
                prod *= f.value(mask);
                if prod.is_zero() {
                    break;
                }
            }
            return prod;
        }
        let mut total = HomCount::zero();
        for p in 0..n {
            parts[p] |= 1 << element;
            total += walk(f, n, element + 1, parts);
            parts[p] &= !(1 << element);
        }
        total
    }
    Ok(walk(f, n, 0, &mut vec![0usize; n]))
}

fn perm_search(
    a: &Graph,
    b: &Graph,
    labels_a: &[usize],
    labels_b: &[usize],
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let v = image.len();
    if v == a.n() {
        return true;
    }
    'cand: for w in 0..b.n() {
        if used[w] || labels_a[v] != labels_b[w] {
            continue;
        }
        for u in 0..v {
            if a.has_edge(u, v) != b.has_edge(image[u], w) {
                continue 'cand;
            }
        }
        image.push(w);
        used[w] = true;
        if perm_search(a, b, labels_a, labels_b, image, used) {
            return true;
        }
        used[w] = false;
        image.pop();
    }
    false
}

fn guarded_perm(
    a: &Graph,
    b: &Graph,
    labels_a: &[usize],
    labels_b: &[usize],
) -> Result<Option<Vec<usize>>> {
    if a.n() > 8 || b.n() > 8 {
        return Err(Error::GuardExceeded {
            what: "brute-force isomorphism vertex count",
            limit: 8,
            requested: a.n().max(b.n()) as u128,
        });
    }
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let mut image = Vec::new();
    let mut used = vec![false; b.n()];
    if perm_search(a, b, labels_a, labels_b, &mut image, &mut used) {
        Ok(Some(image))
    } else {
        Ok(None)
    }
}

/// Isomorphism by trying all vertex bijections; at most 8 vertices.
pub fn brute_iso(a: &Graph, b: &Graph) -> Result<Option<Vec<usize>>> {
    guarded_perm(a, b, &vec![0; a.n()], &vec![0; b.n()])
}

/// Label-preserving isomorphism by trying all bijections; at most
/// 8 vertices.
pub fn brute_labeled_iso(a: &LabeledGraph, b: &LabeledGraph) -> Result<Option<Vec<usize>>> {
    guarded_perm(a.graph(), b.graph(), a.labels(), b.labels())
}
