//! Seeded random instance generators and the oracle-equivalence suites
//! behind the `verify` command.
//!
//! Every suite pits a fast path against a brute-force reference on
//! randomized instances. All randomness flows from a single seed, so a
//! failing report is reproducible by rerunning with the seed it prints.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::counters::{
    count_hom_kneser, count_hom_subdivided, count_hom_subdivided_consistent, KneserInstance,
    SubdividedInstance,
};
use crate::dp::{count_hom_via_expr, lift_beta, lift_connect, lift_relabel};
use crate::error::Result;
use crate::expr::{apply_beta, eval_ext_node, ClassicExpr, ExtExpr, ExtNode, hypercube_expr};
use crate::gadget::gadget_reduce;
use crate::graph::{
    gen_clique, gen_hypercube, gen_kneser, gen_path, subdivide_clique, Graph, HomCount,
    LabeledGraph,
};
use crate::iso::{graph_iso, labeled_iso};
use crate::oracle::{brute_hom, brute_hom_labeled, brute_iso, brute_labeled_iso, brute_par};
use crate::partition::{count_colorings, par, SetFunction};
use crate::synthesis::synthesize;

/// Outcome of one suite: how many cases ran and the first failure, if any.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Results of a full verification run.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verification run, seed {}", self.seed)?;
        for s in &self.suites {
            match &s.failure {
                None => writeln!(f, "ok   {} ({} cases)", s.name, s.cases)?,
                Some(msg) => writeln!(f, "FAIL {}: {}", s.name, msg)?,
            }
        }
        let failed = self.suites.iter().filter(|s| !s.passed()).count();
        if failed == 0 {
            write!(f, "all {} suites passed", self.suites.len())
        } else {
            write!(f, "{failed} of {} suites failed", self.suites.len())
        }
    }
}

/// Runs every suite with its default case count.
pub fn run_verification(seed: u64, budget: u128) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = vec![
        expr_dp_suite(&mut rng, budget, 200),
        lift_suite(&mut rng, budget, 150),
        hypercube_suite(budget),
        synthesis_suite(&mut rng, budget, 12),
        gadget_suite(&mut rng, 50),
        partition_suite(&mut rng, budget, 100),
        subdivided_suite(&mut rng, budget, 10),
        kneser_suite(&mut rng, budget, 12),
        classic_suite(&mut rng, 30),
        iso_suite(&mut rng, 40),
        safety_suite(&mut rng, 25),
    ];
    VerifyReport { seed, suites }
}

fn suite(
    name: &'static str,
    cases: usize,
    mut case: impl FnMut(usize) -> Result<Option<String>>,
) -> SuiteResult {
    for i in 0..cases {
        let failure = match case(i) {
            Ok(None) => continue,
            Ok(Some(msg)) => format!("case {i}: {msg}"),
            Err(e) => format!("case {i}: error: {e}"),
        };
        return SuiteResult { name, cases, failure: Some(failure) };
    }
    SuiteResult { name, cases, failure: None }
}

// ---------------------------------------------------------------------------
// random instance generators

/// Erdos-Renyi style graph: each edge present with probability `edge_prob`.
pub fn random_graph(rng: &mut impl Rng, n: usize, edge_prob: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are in range")
}

/// Random spanning tree plus a sprinkle of extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.25) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are in range")
}

pub fn random_labeled_graph(rng: &mut impl Rng, n: usize, k: usize) -> LabeledGraph {
    let graph = random_graph(rng, n, 0.5);
    let labels = (0..n).map(|_| rng.gen_range(1..=k)).collect();
    LabeledGraph::new(graph, k, labels).expect("generated labels are in range")
}

pub fn random_set_function(rng: &mut impl Rng, m: usize, max_value: u64) -> SetFunction {
    let values = (0..1usize << m)
        .map(|_| HomCount::from(rng.gen_range(0..=max_value)))
        .collect();
    SetFunction::new(m, values).expect("value vector has length 2^m")
}

fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn permuted_labeled(rng: &mut impl Rng, a: &LabeledGraph) -> LabeledGraph {
    let n = a.n();
    let perm = random_permutation(rng, n);
    let edges: Vec<(usize, usize)> =
        a.graph().edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    let mut labels = vec![0usize; n];
    for v in 0..n {
        labels[perm[v]] = a.label(v);
    }
    LabeledGraph::new(Graph::new(n, edges).unwrap(), a.k(), labels).unwrap()
}

fn permuted_graph(rng: &mut impl Rng, a: &Graph) -> Graph {
    let perm = random_permutation(rng, a.n());
    let edges: Vec<(usize, usize)> =
        a.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::new(a.n(), edges).unwrap()
}

/// Random symmetric tuple set honoring the copy bounds in `nvec`.
fn random_tuples(
    rng: &mut impl Rng,
    k: usize,
    nvec: &[usize],
) -> BTreeSet<(usize, usize, usize, usize)> {
    let mut set = BTreeSet::new();
    for i1 in 1..=k {
        for i2 in i1..=k {
            for j1 in 0..=nvec[i1 - 1] {
                for j2 in 0..=nvec[i2 - 1] {
                    if j1 == 0 && j2 == 0 || i1 == i2 && j1 > j2 {
                        continue;
                    }
                    if rng.gen_bool(0.3) {
                        set.insert((i1, j1, i2, j2));
                        set.insert((i2, j2, i1, j1));
                    }
                }
            }
        }
    }
    set
}

/// Random extended expression evaluating to at most `max_vertices`
/// vertices. The evaluated graph is threaded through the recursion so the
/// bound holds by construction.
pub fn random_ext_expr(rng: &mut impl Rng, k: usize, max_vertices: usize) -> ExtExpr {
    build_ext(rng, k, max_vertices.max(1), 0).0
}

fn build_ext(rng: &mut impl Rng, k: usize, budget: usize, depth: usize) -> (ExtExpr, usize) {
    if budget <= 1 || depth >= 8 || rng.gen_bool(0.3) {
        let e = ExtExpr::vertex(k, rng.gen_range(1..=k)).unwrap();
        return (e, 1);
    }
    match rng.gen_range(0..4u32) {
        0 => {
            let (child, n) = build_ext(rng, k, budget, depth + 1);
            let from = rng.gen_range(1..=k);
            let to = rng.gen_range(1..=k);
            (child.relabel(from, to).unwrap(), n)
        }
        1 => {
            let left_budget = rng.gen_range(1..budget);
            let (left, ln) = build_ext(rng, k, left_budget, depth + 1);
            let (right, rn) = build_ext(rng, k, budget - ln, depth + 1);
            let mut pairs = Vec::new();
            for i in 1..=k {
                for j in 1..=k {
                    if rng.gen_bool(0.35) {
                        pairs.push((i, j));
                    }
                }
            }
            (ExtExpr::connect(pairs, left, right).unwrap(), ln + rn)
        }
        _ => {
            let (child, n) = build_ext(rng, k, budget, depth + 1);
            let hist = label_histogram(&child, k);
            let mut remaining = budget - n;
            let mut nvec = vec![0usize; k];
            for i in 0..k {
                let cap = if hist[i] == 0 { k } else { (remaining / hist[i]).min(k) };
                nvec[i] = rng.gen_range(0..=cap);
                remaining -= hist[i] * nvec[i];
            }
            let sigma: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=k)).collect();
            let tuples = random_tuples(rng, k, &nvec);
            let grown = n + (0..k).map(|i| hist[i] * nvec[i]).sum::<usize>();
            (child.beta(nvec, sigma, tuples).unwrap(), grown)
        }
    }
}

fn label_histogram(e: &ExtExpr, k: usize) -> Vec<usize> {
    let g = e.eval().expect("generated expressions evaluate");
    let mut hist = vec![0usize; k];
    for v in 0..g.n() {
        hist[g.label(v) - 1] += 1;
    }
    hist
}

/// Random classic expression that is safe by construction: an edge-adding
/// step is taken only when all the edges it creates cross the outermost
/// union boundary, which shields every nested operand as well.
pub fn random_safe_classic(rng: &mut impl Rng, k: usize, max_vertices: usize) -> ClassicExpr {
    assert!(k >= 2, "classic expressions need at least two labels");
    let mut expr = ClassicExpr::vertex(k, rng.gen_range(1..=k)).unwrap();
    let mut n = 1usize;
    // left-operand size of the outermost union so far, if any
    let mut boundary: Option<usize> = None;
    for _ in 0..rng.gen_range(2..4 * max_vertices) {
        match rng.gen_range(0..4u32) {
            0 => {
                let from = rng.gen_range(1..=k);
                let to = rng.gen_range(1..=k);
                expr = expr.relabel(from, to).unwrap();
            }
            1 | 2 if n < max_vertices => {
                let extra = ClassicExpr::vertex(k, rng.gen_range(1..=k)).unwrap();
                expr = ClassicExpr::union(expr, extra).unwrap();
                boundary = Some(n);
                n += 1;
            }
            _ => {
                let i = rng.gen_range(1..=k);
                let j = rng.gen_range(1..=k);
                if i == j {
                    continue;
                }
                if eta_is_safe(&expr.eval().unwrap(), i, j, boundary) {
                    expr = expr.add_edges(i, j).unwrap();
                }
            }
        }
    }
    expr
}

fn eta_is_safe(g: &LabeledGraph, i: usize, j: usize, boundary: Option<usize>) -> bool {
    let Some(nl) = boundary else {
        return true;
    };
    for u in 0..g.n() {
        for v in 0..g.n() {
            if g.label(u) == i
                && g.label(v) == j
                && u != v
                && !g.graph().has_edge(u, v)
                && (u < nl) == (v < nl)
            {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// transformed-target constructions for the lift checks

fn relabel_graph(h: &LabeledGraph, sigma: &[usize]) -> LabeledGraph {
    let labels = h.labels().iter().map(|&l| sigma[l - 1]).collect();
    LabeledGraph::new(h.graph().clone(), h.k(), labels).unwrap()
}

fn connect_graphs(
    a: &LabeledGraph,
    b: &LabeledGraph,
    pairs: &BTreeSet<(usize, usize)>,
) -> LabeledGraph {
    let na = a.n();
    let mut edges: Vec<(usize, usize)> = a.graph().edges().to_vec();
    edges.extend(b.graph().edges().iter().map(|&(u, v)| (u + na, v + na)));
    for u in 0..na {
        for v in 0..b.n() {
            if pairs.contains(&(a.label(u), b.label(v))) {
                edges.push((u, v + na));
            }
        }
    }
    let mut labels = a.labels().to_vec();
    labels.extend_from_slice(b.labels());
    LabeledGraph::new(Graph::new(na + b.n(), edges).unwrap(), a.k(), labels).unwrap()
}

// ---------------------------------------------------------------------------
// suites

/// Expression-driven counting against plain enumeration.
pub fn expr_dp_suite(rng: &mut impl Rng, budget: u128, cases: usize) -> SuiteResult {
    suite("expression dp vs brute force", cases, |_| {
        let k = rng.gen_range(1..=3);
        let e = random_ext_expr(rng, k, 10);
        let h = e.eval()?;
        let gn = rng.gen_range(1..=6);
        let g = random_graph(rng, gn, 0.5);
        let fast = count_hom_via_expr(&g, &e, budget)?;
        let slow = brute_hom(&g, h.graph(), budget)?;
        Ok((fast != slow).then(|| {
            format!("{fast} vs {slow} for source {g:?}, expression {}", e.to_json())
        }))
    })
}

/// Each table transform against the table of the transformed target.
pub fn lift_suite(rng: &mut impl Rng, budget: u128, cases: usize) -> SuiteResult {
    suite("lift operators vs brute tables", cases, |i| {
        let k = rng.gen_range(1..=2);
        let gn = rng.gen_range(1..=4);
        let g = random_graph(rng, gn, 0.5);
        match i % 3 {
            0 => {
                let hn = rng.gen_range(1..=4);
                let h = random_labeled_graph(rng, hn, k);
                let sigma: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=k)).collect();
                let fast = lift_relabel(&brute_hom_labeled(&g, &h, budget)?, &sigma);
                let slow = brute_hom_labeled(&g, &relabel_graph(&h, &sigma), budget)?;
                Ok((fast != slow)
                    .then(|| format!("relabel tables differ: {g:?}, {h:?}, sigma {sigma:?}")))
            }
            1 => {
                let (n1, n2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
                let h1 = random_labeled_graph(rng, n1, k);
                let h2 = random_labeled_graph(rng, n2, k);
                let mut pairs = BTreeSet::new();
                for a in 1..=k {
                    for b in 1..=k {
                        if rng.gen_bool(0.4) {
                            pairs.insert((a, b));
                        }
                    }
                }
                let t1 = brute_hom_labeled(&g, &h1, budget)?;
                let t2 = brute_hom_labeled(&g, &h2, budget)?;
                let fast = lift_connect(&g, &t1, &t2, &pairs);
                let slow = brute_hom_labeled(&g, &connect_graphs(&h1, &h2, &pairs), budget)?;
                Ok((fast != slow)
                    .then(|| format!("connect tables differ: {g:?}, {h1:?}, {h2:?}, {pairs:?}")))
            }
            _ => {
                let hn = rng.gen_range(1..=3);
                let h = random_labeled_graph(rng, hn, k);
                let nvec: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=k)).collect();
                let sigma: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=k)).collect();
                let tuples = random_tuples(rng, k, &nvec);
                let grown = apply_beta(&h, &nvec, &sigma, &tuples)?;
                let t = brute_hom_labeled(&g, &h, budget)?;
                let fast = lift_beta(&g, &t, &nvec, &sigma, &tuples);
                let slow = brute_hom_labeled(&g, &grown, budget)?;
                Ok((fast != slow).then(|| {
                    format!("beta tables differ: {g:?}, {h:?}, nvec {nvec:?}, sigma {sigma:?}, s {tuples:?}")
                }))
            }
        }
    })
}

/// Hypercube expressions evaluate to hypercubes, and counting edges of the
/// cube through the expression matches the closed form.
pub fn hypercube_suite(budget: u128) -> SuiteResult {
    suite("hypercube expressions", 7, |n| {
        let e = hypercube_expr(n)?;
        let built = e.eval()?;
        let reference = gen_hypercube(n)?;
        if n <= 4 {
            if graph_iso(built.graph(), &reference).is_none() {
                return Ok(Some(format!("dimension {n}: evaluation is not the hypercube")));
            }
        } else {
            let mut got = built.graph().degree_sequence();
            let mut want = reference.degree_sequence();
            got.sort_unstable();
            want.sort_unstable();
            if got != want || !two_colorable(built.graph()) {
                return Ok(Some(format!("dimension {n}: degree or parity audit failed")));
            }
        }
        if n <= 5 {
            let count = count_hom_via_expr(&gen_clique(2), &e, budget)?;
            let want = HomCount::from(n as u64) * HomCount::from(2u64).pow(n as u32);
            if count != want {
                return Ok(Some(format!("dimension {n}: edge count {count}, expected {want}")));
            }
        }
        Ok(None)
    })
}

fn two_colorable(g: &Graph) -> bool {
    let mut color = vec![usize::MAX; g.n()];
    for start in 0..g.n() {
        if color[start] != usize::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if color[w] == usize::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Synthesis must succeed on small searchable instances and every returned
/// expression must evaluate to the requested graph.
pub fn synthesis_suite(rng: &mut impl Rng, budget: u128, cases: usize) -> SuiteResult {
    suite("expression synthesis", cases, |i| {
        let g = if i % 2 == 0 {
            let n = rng.gen_range(2..=4);
            random_connected_graph(rng, n)
        } else {
            // safe classic expressions stay within reach of the search
            random_safe_classic(rng, 2, 5).eval()?.graph().clone()
        };
        match synthesize(&g, 2, budget)? {
            None => Ok(Some(format!("no expression found for {g:?}"))),
            Some(e) => {
                let value = e.eval()?;
                Ok((graph_iso(value.graph(), &g).is_none())
                    .then(|| format!("expression value does not match {g:?}")))
            }
        }
    })
}

/// The reduction maps labeled isomorphism to plain isomorphism, in both
/// directions.
pub fn gadget_suite(rng: &mut impl Rng, cases: usize) -> SuiteResult {
    suite("gadget reduction", cases, |i| {
        let n = rng.gen_range(1..=6);
        let k = rng.gen_range(1..=3);
        let a = random_labeled_graph(rng, n, k);
        let b = if i % 2 == 0 {
            permuted_labeled(rng, &a)
        } else {
            random_labeled_graph(rng, n, k)
        };
        let inst = gadget_reduce(&a, &b)?;
        let labeled = brute_labeled_iso(&a, &b)?.is_some();
        let plain = graph_iso(&inst.g_prime, &inst.h_prime).is_some();
        Ok((labeled != plain).then(|| {
            format!("labeled {labeled} but reduced {plain} for {a:?} vs {b:?}")
        }))
    })
}

/// Fast partition sums against direct enumeration, plus a coloring count
/// on the Petersen graph.
pub fn partition_suite(rng: &mut impl Rng, budget: u128, cases: usize) -> SuiteResult {
    suite("partition engine vs brute force", cases + 1, |i| {
        if i == cases {
            let petersen = gen_kneser(5, 2)?;
            let fast = count_colorings(&petersen, 3)?;
            let slow = brute_hom(&petersen, &gen_clique(3), budget)?;
            return Ok((fast != slow)
                .then(|| format!("petersen 3-colorings: {fast} vs {slow}")));
        }
        let m = rng.gen_range(0..=6);
        let n = rng.gen_range(1..=4);
        let f = random_set_function(rng, m, 5);
        let fast = par(&f, n);
        let slow = brute_par(&f, n)?;
        Ok((fast != slow).then(|| format!("par mismatch at m={m}, n={n}: {fast} vs {slow}")))
    })
}

/// Subdivided-clique counts against enumeration on the materialized
/// target; every third case also replays each branch-side split.
pub fn subdivided_suite(rng: &mut impl Rng, budget: u128, cases: usize) -> SuiteResult {
    let subdividers = [gen_clique(1), gen_clique(2), gen_path(3)];
    suite("subdivided-clique counter vs brute force", cases, |i| {
        let deep = i % 3 == 0;
        let gn = rng.gen_range(1..=if deep { 4 } else { 5 });
        let g = random_connected_graph(rng, gn);
        let n = rng.gen_range(2..=3);
        let u = &subdividers[rng.gen_range(0..subdividers.len())];
        let target = subdivide_clique(n, u)?;
        let inst = SubdividedInstance::new(&g, n, u);
        let fast = count_hom_subdivided(&inst, budget)?;
        let slow = brute_hom(&g, &target.graph, budget)?;
        if fast != slow {
            return Ok(Some(format!("{fast} vs {slow} for {g:?}, n={n}, u={u:?}")));
        }
        if !deep {
            return Ok(None);
        }
        let census = branch_census(&g, &target.graph, &target.clique_vertices);
        for mask in 0u64..1 << g.n() {
            let a: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            let independent = g.edges().iter().all(|&(x, y)| {
                mask >> x & 1 == 0 || mask >> y & 1 == 0
            });
            if !independent {
                continue;
            }
            let split = count_hom_subdivided_consistent(&inst, &a, budget)?;
            if split != census[mask as usize] {
                return Ok(Some(format!(
                    "split {a:?} of {g:?} (n={n}, u={u:?}): {split} vs {}",
                    census[mask as usize]
                )));
            }
        }
        Ok(None)
    })
}

// counts homomorphisms per branch-vertex preimage set, by enumeration
fn branch_census(g: &Graph, target: &Graph, branch: &[usize]) -> Vec<HomCount> {
    let nv = g.n();
    let mut counts = vec![HomCount::from(0u32); 1 << nv];
    let mut on_branch = vec![false; target.n()];
    for &v in branch {
        on_branch[v] = true;
    }
    let mut map = vec![0usize; nv];
    loop {
        if g.edges().iter().all(|&(u, v)| target.has_edge(map[u], map[v])) {
            let mask = (0..nv).filter(|&v| on_branch[map[v]]).fold(0usize, |m, v| m | 1 << v);
            counts[mask] += 1u32;
        }
        let mut v = 0;
        loop {
            if v == nv {
                return counts;
            }
            map[v] += 1;
            if map[v] < target.n() {
                break;
            }
            map[v] = 0;
            v += 1;
        }
    }
}

/// Kneser counts against enumeration on generated Kneser graphs; the
/// singleton case degenerates to cliques.
pub fn kneser_suite(rng: &mut impl Rng, budget: u128, cases: usize) -> SuiteResult {
    suite("kneser counter vs brute force", cases, |i| {
        let gn = rng.gen_range(1..=5);
        let g = random_graph(rng, gn, 0.4);
        let (n, k) = match i % 3 {
            0 => (4, 2),
            1 => (5, 2),
            _ => (rng.gen_range(2..=4), 1),
        };
        let inst = KneserInstance { g: &g, n, k };
        let fast = count_hom_kneser(&inst)?;
        let slow = brute_hom(&g, &gen_kneser(n, k)?, budget)?;
        Ok((fast != slow).then(|| format!("{fast} vs {slow} for {g:?} into ({n},{k})")))
    })
}

/// Safe classic expressions convert to extended expressions with the very
/// same evaluation.
pub fn classic_suite(rng: &mut impl Rng, cases: usize) -> SuiteResult {
    suite("classic expression conversion", cases, |_| {
        let k = rng.gen_range(2..=3);
        let c = random_safe_classic(rng, k, 8);
        if !c.is_safe()? {
            return Ok(Some("generator produced an unsafe expression".into()));
        }
        let direct = c.eval()?;
        let via_ext = c.to_extended()?.eval()?;
        Ok((direct != via_ext).then(|| format!("conversion changed the value of {direct:?}")))
    })
}

/// Backtracking isomorphism search against permutation enumeration, plain
/// and labeled.
pub fn iso_suite(rng: &mut impl Rng, cases: usize) -> SuiteResult {
    suite("isomorphism search vs brute force", cases, |i| {
        let n = rng.gen_range(1..=7);
        if i % 4 < 2 {
            let a = random_graph(rng, n, 0.5);
            let b = if i % 2 == 0 { permuted_graph(rng, &a) } else { random_graph(rng, n, 0.5) };
            let fast = graph_iso(&a, &b).is_some();
            let slow = brute_iso(&a, &b)?.is_some();
            Ok((fast != slow).then(|| format!("search {fast}, brute {slow}: {a:?} vs {b:?}")))
        } else {
            let k = rng.gen_range(1..=3);
            let a = random_labeled_graph(rng, n, k);
            let b = if i % 2 == 0 { permuted_labeled(rng, &a) } else { random_labeled_graph(rng, n, k) };
            let fast = labeled_iso(&a, &b).is_some();
            let slow = brute_labeled_iso(&a, &b)?.is_some();
            Ok((fast != slow).then(|| format!("search {fast}, brute {slow}: {a:?} vs {b:?}")))
        }
    })
}

/// Every subexpression of an extended expression owns a contiguous id
/// block in the final value, and the value induced on that block is the
/// subexpression's own value: later operators never reach inside.
pub fn safety_suite(rng: &mut impl Rng, cases: usize) -> SuiteResult {
    suite("extended expressions are safe", cases, |_| {
        let k = rng.gen_range(1..=3);
        let e = random_ext_expr(rng, k, 12);
        let total = e.eval()?;
        walk_safety(e.root(), e.k(), 0, total.graph())
    })
}

fn walk_safety(node: &ExtNode, k: usize, offset: usize, final_g: &Graph) -> Result<Option<String>> {
    let sub = eval_ext_node(node, k)?;
    let ids: Vec<usize> = (offset..offset + sub.n()).collect();
    let induced = final_g.induced(&ids)?;
    if induced != *sub.graph() {
        return Ok(Some(format!(
            "operators above changed the block at ids {offset}..{}",
            offset + sub.n()
        )));
    }
    match node {
        ExtNode::Vertex { .. } => Ok(None),
        ExtNode::Relabel { child, .. } | ExtNode::Beta { child, .. } => {
            walk_safety(child, k, offset, final_g)
        }
        ExtNode::Connect { left, right, .. } => {
            if let Some(msg) = walk_safety(left, k, offset, final_g)? {
                return Ok(Some(msg));
            }
            let ln = eval_ext_node(left, k)?.n();
            walk_safety(right, k, offset + ln, final_g)
        }
    }
}
