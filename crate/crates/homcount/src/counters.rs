//! Counters for two structured target families: cliques with every edge
//! subdivided by a fixed graph, and Kneser graphs.
//!
//! Neither counter ever materializes the target. The subdivided counter
//! splits the source over which vertices land on clique (branch) vertices
//! and evaluates each split with the set-partition engine; the Kneser
//! counter blows the source up, counts colorings of the result, and
//! divides out the per-vertex overcounting factor.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{blowup, Graph, HomCount};
use crate::oracle::brute_hom;
use crate::partition::{count_colorings, par, SetFunction};

/// A source graph and the parameters of a subdivided-clique target: the
/// clique on `n` vertices with every edge subdivided by a copy of `u`.
pub struct SubdividedInstance<'a> {
    g: &'a Graph,
    n: usize,
    u: &'a Graph,
    hom_to_u: Option<Box<dyn Fn(&Graph) -> Result<HomCount> + 'a>>,
}

impl<'a> SubdividedInstance<'a> {
    pub fn new(g: &'a Graph, n: usize, u: &'a Graph) -> SubdividedInstance<'a> {
        SubdividedInstance { g, n, u, hom_to_u: None }
    }

    /// Replace the default brute-force counter used for `hom(C, u)` on
    /// connected pieces `C` of the source.
    pub fn with_hom_counter(
        mut self,
        f: impl Fn(&Graph) -> Result<HomCount> + 'a,
    ) -> SubdividedInstance<'a> {
        self.hom_to_u = Some(Box::new(f));
        self
    }

    pub fn g(&self) -> &Graph {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u(&self) -> &Graph {
        self.u
    }

    fn hom_to_u(&self, c: &Graph, budget: u128) -> Result<HomCount> {
        match &self.hom_to_u {
            Some(f) => f(c),
            None => brute_hom(c, self.u, budget),
        }
    }
}

/// Number of homomorphisms from the instance's source into the subdivision
/// of `K_n` by `u`. Disconnected sources are handled by multiplying over
/// components.
pub fn count_hom_subdivided(inst: &SubdividedInstance, budget: u128) -> Result<HomCount> {
    let mut total = HomCount::from(1u32);
    for comp in inst.g.components() {
        let piece = inst.g.induced(&comp)?;
        total *= connected_count(&piece, inst, budget)?;
    }
    Ok(total)
}

/// Number of homomorphisms consistent with the split `(a, rest)`: vertices
/// of `a` map onto branch vertices, all others into subdividing copies.
/// The source must be connected and `a` independent in it.
pub fn count_hom_subdivided_consistent(
    inst: &SubdividedInstance,
    a: &[usize],
    budget: u128,
) -> Result<HomCount> {
    let g = inst.g;
    if !g.is_connected() {
        return Err(Error::InvalidInput("split counts need a connected source".into()));
    }
    guard_state_space(g.n(), budget)?;
    let mut a_mask = 0u64;
    for &v in a {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        a_mask |= 1 << v;
    }
    if !independent(g, a_mask) {
        return Err(Error::InvalidInput("branch-side vertices must be independent".into()));
    }
    if a_mask == 0 {
        return all_copies_count(g, inst, budget);
    }
    split_count(g, inst, a_mask, budget)
}

fn connected_count(g: &Graph, inst: &SubdividedInstance, budget: u128) -> Result<HomCount> {
    let n = inst.n;
    if n == 0 {
        // the target has no vertices at all
        return Ok(HomCount::zero());
    }
    guard_state_space(g.n(), budget)?;
    let mut total = all_copies_count(g, inst, budget)?;
    for a_mask in 1u64..1 << g.n() {
        if independent(g, a_mask) {
            total += split_count(g, inst, a_mask, budget)?;
        }
    }
    Ok(total)
}

// With no vertex on the branch side, a connected source lands inside a
// single subdividing copy, and any of the C(n,2) copies will do.
fn all_copies_count(g: &Graph, inst: &SubdividedInstance, budget: u128) -> Result<HomCount> {
    let n = inst.n;
    if n < 2 {
        return Ok(HomCount::zero());
    }
    Ok(HomCount::from((n * (n - 1) / 2) as u64) * inst.hom_to_u(g, budget)?)
}

fn guard_state_space(nv: usize, budget: u128) -> Result<()> {
    let requested = 8u128.checked_pow(nv as u32).ok_or(Error::GuardExceeded {
        what: "subdivided-clique state space",
        limit: budget,
        requested: u128::MAX,
    })?;
    if requested > budget {
        return Err(Error::GuardExceeded {
            what: "subdivided-clique state space",
            limit: budget,
            requested,
        });
    }
    Ok(())
}

fn independent(g: &Graph, mask: u64) -> bool {
    g.edges().iter().all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0)
}

// The per-split count. Ground set: branch-side vertices ascending, then
// two markers per component of the copy side, components ordered by least
// vertex. A partition class prescribes one branch vertex; the markers of a
// component pick out the one or two branch images of its neighborhood, the
// second marker tied to the component's anchor vertex to kill the
// swap symmetry.
fn split_count(
    g: &Graph,
    inst: &SubdividedInstance,
    a_mask: u64,
    budget: u128,
) -> Result<HomCount> {
    let n = inst.n;
    let nv = g.n();
    let a_verts: Vec<usize> = (0..nv).filter(|&v| a_mask >> v & 1 == 1).collect();
    let b_verts: Vec<usize> = (0..nv).filter(|&v| a_mask >> v & 1 == 0).collect();
    let mut a_pos = vec![usize::MAX; nv];
    for (i, &v) in a_verts.iter().enumerate() {
        a_pos[v] = i;
    }
    let b_graph = g.induced(&b_verts)?;

    // per component: neighborhood bits on the branch side, the anchor bit,
    // and the homomorphism count into one copy
    let mut comps: Vec<(u64, usize, HomCount)> = Vec::new();
    for comp in b_graph.components() {
        let orig: Vec<usize> = comp.iter().map(|&i| b_verts[i]).collect();
        let mut nb: BTreeSet<usize> = BTreeSet::new();
        for &v in &orig {
            nb.extend(g.neighbors(v).iter().filter(|&&w| a_mask >> w & 1 == 1));
        }
        let anchor = *nb
            .iter()
            .next()
            .expect("a copy-side component of a connected graph touches the branch side");
        let nb_mask = nb.iter().fold(0u64, |m, &v| m | 1 << a_pos[v]);
        let hom = inst.hom_to_u(&g.induced(&orig)?, budget)?;
        comps.push((nb_mask, a_pos[anchor], hom));
    }

    let a_len = a_verts.len();
    let m = a_len + 2 * comps.len();
    let f = SetFunction::from_fn(m, |x| {
        let mut val = HomCount::from(1u32);
        for (c, (nb_mask, anchor_bit, hom)) in comps.iter().enumerate() {
            let nb_hit = x as u64 & nb_mask != 0;
            let m0 = x >> (a_len + 2 * c) & 1 == 1;
            let m1 = x >> (a_len + 2 * c + 1) & 1 == 1;
            // a class may not separate a component's neighborhood from its
            // markers, and the anchor must ride with the second marker
            if nb_hit != (m0 || m1) || (m1 && x >> anchor_bit & 1 == 0) {
                return HomCount::zero();
            }
            if m0 && m1 {
                val *= HomCount::from((n - 1) as u64) * hom;
            } else if m1 {
                val *= hom;
            }
        }
        val
    })?;
    Ok(par(&f, n))
}

/// A source graph and Kneser target parameters: target vertices are the
/// `k`-element subsets of `1..=n`, adjacent when disjoint.
#[derive(Debug, Clone, Copy)]
pub struct KneserInstance<'a> {
    pub g: &'a Graph,
    pub n: usize,
    pub k: usize,
}

/// Number of homomorphisms from the source into the Kneser graph, without
/// building it: each count is recovered from colorings of the blown-up
/// source, whose divisibility by `(k!)^|V|` is checked rather than
/// assumed.
pub fn count_hom_kneser(inst: &KneserInstance) -> Result<HomCount> {
    let KneserInstance { g, n, k } = *inst;
    if k == 0 {
        return Err(Error::InvalidInput("subset size must be at least 1".into()));
    }
    let factorial = (2..=k as u64).fold(HomCount::from(1u64), |acc, x| acc * x);
    let mut total = HomCount::from(1u32);
    for comp in g.components() {
        let piece = g.induced(&comp)?;
        let blown = blowup(&piece, k)?;
        let colorings = count_colorings(&blown, n)?;
        let divisor = factorial.pow(piece.n() as u32);
        if !(&colorings % &divisor).is_zero() {
            return Err(Error::DivisibilityFailure {
                count: colorings.to_string(),
                divisor: divisor.to_string(),
            });
        }
        total *= colorings / &divisor;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_clique, gen_cycle, gen_path, subdivide_clique, Graph};

    const BUDGET: u128 = 1_000_000_000;

    fn subdivided(g: &Graph, n: usize, u: &Graph) -> HomCount {
        count_hom_subdivided(&SubdividedInstance::new(g, n, u), BUDGET).unwrap()
    }

    #[test]
    fn edge_into_subdivided_edge() {
        // K_2 subdivided by a point is the path on three vertices
        assert_eq!(subdivided(&gen_clique(2), 2, &gen_clique(1)), HomCount::from(4u32));
    }

    #[test]
    fn vertex_goes_anywhere() {
        assert_eq!(subdivided(&gen_clique(1), 3, &gen_clique(1)), HomCount::from(6u32));
    }

    #[test]
    fn matches_brute_force_on_a_grid() {
        let sources = [gen_path(3), gen_cycle(4), gen_clique(3)];
        let subdividers = [gen_clique(1), gen_clique(2), gen_path(3)];
        for g in &sources {
            for n in 2..=3 {
                for u in &subdividers {
                    let target = subdivide_clique(n, u).unwrap();
                    let want = brute_hom(g, &target.graph, BUDGET).unwrap();
                    assert_eq!(subdivided(g, n, u), want, "g={g:?} n={n} u={u:?}");
                }
            }
        }
    }

    #[test]
    fn splits_sum_to_the_total() {
        let g = gen_path(4);
        let u = gen_clique(2);
        let n = 3;
        let inst = SubdividedInstance::new(&g, n, &u);
        let mut sum = HomCount::zero();
        for mask in 0u64..1 << g.n() {
            let a: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            if !independent(&g, mask) {
                continue;
            }
            sum += count_hom_subdivided_consistent(&inst, &a, BUDGET).unwrap();
        }
        assert_eq!(sum, subdivided(&g, n, &u));
    }

    #[test]
    fn disconnected_sources_multiply() {
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let one_edge = gen_clique(2);
        let u = gen_path(3);
        let single = subdivided(&one_edge, 3, &u);
        assert_eq!(subdivided(&two_edges, 3, &u), &single * &single);
    }

    #[test]
    fn custom_counter_agrees_with_default() {
        let g = gen_cycle(4);
        let u = gen_path(3);
        let plugged = SubdividedInstance::new(&g, 3, &u)
            .with_hom_counter(|c| brute_hom(c, &u, BUDGET));
        assert_eq!(
            count_hom_subdivided(&plugged, BUDGET).unwrap(),
            subdivided(&g, 3, &u)
        );
    }

    #[test]
    fn state_space_guard() {
        let big = gen_path(30);
        let err = count_hom_subdivided(&SubdividedInstance::new(&big, 2, &gen_clique(1)), 100)
            .unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
    }

    #[test]
    fn kneser_petersen_edge_count() {
        let inst = KneserInstance { g: &gen_clique(2), n: 5, k: 2 };
        assert_eq!(count_hom_kneser(&inst).unwrap(), HomCount::from(30u32));
    }

    #[test]
    fn kneser_matching_has_no_triangles() {
        let inst = KneserInstance { g: &gen_clique(3), n: 4, k: 2 };
        assert_eq!(count_hom_kneser(&inst).unwrap(), HomCount::zero());
    }

    #[test]
    fn kneser_with_singletons_is_the_clique() {
        for n in 2..=4 {
            let g = gen_cycle(5);
            let inst = KneserInstance { g: &g, n, k: 1 };
            let want = brute_hom(&g, &gen_clique(n), BUDGET).unwrap();
            assert_eq!(count_hom_kneser(&inst).unwrap(), want);
        }
    }
}
