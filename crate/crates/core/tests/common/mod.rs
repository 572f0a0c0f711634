//! Seeded random corpus and brute-force oracles shared by the integration
//! tests. Nothing here calls into the library's own algorithms except for
//! graph construction.

#![allow(dead_code)]

use jacgraph::{Cochain, EdgeSet, Kind, Multigraph, Polarization, VertexSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Case {
    pub graph: Multigraph,
    pub q: Polarization,
    pub v0: usize,
    pub stratum: EdgeSet,
}

/// Connected multigraph on `n` vertices with `m ≥ n − 1` edges: a random
/// spanning tree plus random extra edges, loops allowed.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Multigraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent, order[i]));
    }
    while edges.len() < m {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    edges.shuffle(rng);
    Multigraph::from_edges(n, &edges).unwrap()
}

/// Entries with a common denominator `D ∈ {1,2,3,4}` and integral total.
pub fn random_polarization(rng: &mut ChaCha8Rng, n: usize) -> Polarization {
    let denom: i64 = rng.gen_range(1..=4);
    let mut nums: Vec<i64> = (0..n).map(|_| rng.gen_range(-2 * denom..=3 * denom)).collect();
    let excess = nums.iter().sum::<i64>().rem_euclid(denom);
    nums[n - 1] -= excess;
    let ratios: Vec<(i64, i64)> = nums.into_iter().map(|p| (p, denom)).collect();
    Polarization::from_ratios(&ratios).unwrap()
}

pub fn is_connected_after(g: &Multigraph, s: &EdgeSet) -> bool {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            v = p[v];
        }
        v
    }
    let mut parts = n;
    for e in g.edges().iter().filter(|e| !s.contains(&e.id)) {
        let (a, b) = (find(&mut parent, e.ends.0), find(&mut parent, e.ends.1));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts <= 1
}

/// An edge subset whose removal keeps the graph connected.
pub fn random_stratum(rng: &mut ChaCha8Rng, g: &Multigraph) -> EdgeSet {
    for _ in 0..20 {
        let s: EdgeSet = g
            .edges()
            .iter()
            .filter(|_| rng.gen_bool(0.3))
            .map(|e| e.id.clone())
            .collect();
        if is_connected_after(g, &s) {
            return s;
        }
    }
    EdgeSet::new()
}

pub fn corpus(seed: u64, count: usize, max_vertices: usize, max_edges: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_vertices);
            let m = rng.gen_range(n - 1..=max_edges.max(n - 1));
            let graph = random_graph(&mut rng, n, m);
            let q = random_polarization(&mut rng, n);
            let v0 = rng.gen_range(0..n);
            let stratum = random_stratum(&mut rng, &graph);
            Case { graph, q, v0, stratum }
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A cochain with the given total and entries near zero.
pub fn random_cochain(rng: &mut ChaCha8Rng, n: usize, total: i64) -> Cochain {
    let mut values: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
    let rest: i64 = values[..n - 1].iter().sum();
    values[n - 1] = total - rest;
    Cochain::new(values)
}

/// Spanning trees counted by backtracking over edge inclusion.
pub fn spanning_trees(g: &Multigraph) -> u64 {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().iter().filter(|e| !e.is_loop()).map(|e| e.ends).collect();
    fn go(edges: &[(usize, usize)], i: usize, need: usize, comp: &mut Vec<usize>) -> u64 {
        if need == 0 {
            return 1;
        }
        if edges.len() - i < need {
            return 0;
        }
        let (a, b) = edges[i];
        let (ca, cb) = (comp[a], comp[b]);
        let mut total = 0;
        if ca != cb {
            let saved = comp.clone();
            for c in comp.iter_mut() {
                if *c == cb {
                    *c = ca;
                }
            }
            total += go(edges, i + 1, need - 1, comp);
            *comp = saved;
        }
        total + go(edges, i + 1, need, comp)
    }
    if n == 0 {
        return 0;
    }
    go(&edges, 0, n - 1, &mut (0..n).collect())
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// The defining inequalities evaluated literally in exact rationals.
pub fn oracle_is(g: &Multigraph, s: &EdgeSet, q: &Polarization, v0: usize, d: &Cochain, kind: Kind) -> bool {
    let n = g.vertex_count();
    let total: BigRational = q.values().iter().sum();
    if BigRational::from_integer(BigInt::from(d.total() + s.len() as i64)) != total {
        return false;
    }
    for bits in 1..(1u64 << n) - 1 {
        let w = VertexSet::from_bits(bits);
        let mut lhs = w.iter().map(|v| d.values()[v]).sum::<i64>();
        let mut crossing = 0i64;
        for e in g.edges() {
            let (a, b) = (w.contains(e.ends.0), w.contains(e.ends.1));
            if a && b && s.contains(&e.id) {
                lhs += 1;
            }
            if a != b {
                crossing += 1;
            }
        }
        let q_w: BigRational = w.iter().map(|v| q.values()[v].clone()).sum();
        let rhs = q_w - rat(crossing, 2);
        let lhs = BigRational::from_integer(BigInt::from(lhs));
        let strict = match kind {
            Kind::Semistable => false,
            Kind::Quasistable => w.contains(v0),
            Kind::Stable => true,
        };
        if (strict && lhs <= rhs) || (!strict && lhs < rhs) {
            return false;
        }
    }
    true
}

/// Edge subsets of `g` as id sets, all `2^|E|` of them.
pub fn all_edge_subsets(g: &Multigraph) -> Vec<EdgeSet> {
    let m = g.edge_count();
    (0..1u64 << m)
        .map(|bits| {
            (0..m)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| g.edges()[i].id.clone())
                .collect()
        })
        .collect()
}

/// Whether `Γ[w]` is connected and nonempty.
pub fn induced_connected(g: &Multigraph, w: VertexSet) -> bool {
    let Some(start) = w.iter().next() else {
        return false;
    };
    let mut seen = VertexSet::singleton(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for e in g.edges() {
            let (a, b) = e.ends;
            for (x, y) in [(a, b), (b, a)] {
                if x == v && w.contains(y) && !seen.contains(y) {
                    seen = seen.with(y);
                    stack.push(y);
                }
            }
        }
    }
    seen == w
}

/// Every integer box point with the right total, filtered by the oracle.
pub fn oracle_enumerate(g: &Multigraph, s: &EdgeSet, q: &Polarization, v0: usize, kind: Kind, radius: i64) -> Vec<Cochain> {
    let n = g.vertex_count();
    let budget = q.total().to_string().parse::<i64>().unwrap() - s.len() as i64;
    let mut out = Vec::new();
    let mut values = vec![-radius; n.saturating_sub(1)];
    loop {
        let mut full = values.clone();
        full.push(budget - values.iter().sum::<i64>());
        let d = Cochain::new(full);
        if oracle_is(g, s, q, v0, &d, kind) {
            out.push(d);
        }
        let mut i = 0;
        loop {
            if i == values.len() {
                out.sort();
                return out;
            }
            values[i] += 1;
            if values[i] <= radius {
                break;
            }
            values[i] = -radius;
            i += 1;
        }
    }
}
