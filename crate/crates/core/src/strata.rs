//! Strata of edge subsets: per-stratum multidegree sets, the stratification
//! report, the translation of multidegrees along a partial normalization, and
//! the decomposition of quasistable cochains on the full subdivision.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Multigraph, VertexSet};
use crate::lattice::{complexity, Cochain};
use crate::polarization::Polarization;
use crate::quasistable::{Kind, StratumContext};

/// Edge count above which a full report is refused unless the caller caps
/// the codimension.
pub const DEFAULT_GUARD_EDGES: usize = 16;

fn non_loop_part(g: &Multigraph, s: &EdgeSet) -> EdgeSet {
    g.edges()
        .iter()
        .filter(|e| !e.is_loop() && s.contains(&e.id))
        .map(|e| e.id.clone())
        .collect()
}

/// Number of loops of `s` at each vertex.
fn stratum_loops(g: &Multigraph, s: &EdgeSet) -> Vec<i64> {
    let mut out = vec![0i64; g.vertex_count()];
    for e in g.edges().iter().filter(|e| e.is_loop() && s.contains(&e.id)) {
        out[e.ends.0] += 1;
    }
    out
}

/// Quasistable multidegrees of the stratum `s`: the quasistable cochains on
/// the loopless graph with stratum `s` minus its loops. The total degree is
/// `|q|` minus the number of non-loop edges in `s`.
pub fn stratum_multidegrees(g: &Multigraph, s: &EdgeSet, v0: usize, q: &Polarization) -> Result<Vec<Cochain>> {
    g.edge_mask(s)?;
    let loopless = g.remove_loops();
    let ctx = StratumContext::new(loopless, non_loop_part(g, s), v0, q.clone())?;
    Ok(ctx.enumerate(Kind::Quasistable))
}

/// Degrees of the pushforward of a multidegree on `Γ ∖ S` back to `Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushforwardDegrees {
    /// `d_v` plus the number of loops of `S` at `v`.
    pub per_vertex: Vec<i64>,
    /// `|d| + |S|`.
    pub total: i64,
    /// Endpoints of the non-loop edges of `S`.
    crossing: Vec<(usize, usize)>,
}

impl PushforwardDegrees {
    /// `d_W + |S ∩ E(Γ[W])|`.
    pub fn degree_on(&self, w: VertexSet) -> i64 {
        let vertices: i64 = w.iter().filter_map(|v| self.per_vertex.get(v)).sum();
        let inside = self
            .crossing
            .iter()
            .filter(|&&(a, b)| w.contains(a) && w.contains(b))
            .count() as i64;
        vertices + inside
    }
}

pub fn pushforward_multidegree(g: &Multigraph, s: &EdgeSet, d_norm: &Cochain) -> Result<PushforwardDegrees> {
    d_norm.check_bound(g)?;
    let mask = g.edge_mask(s)?;
    let loops = stratum_loops(g, s);
    let per_vertex = d_norm.values().iter().zip(&loops).map(|(d, l)| d + l).collect();
    let crossing = g
        .edges()
        .iter()
        .zip(&mask)
        .filter(|(e, &m)| m && !e.is_loop())
        .map(|(e, _)| e.ends)
        .collect();
    Ok(PushforwardDegrees {
        per_vertex,
        total: d_norm.total() + s.len() as i64,
        crossing,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumRow {
    pub stratum: EdgeSet,
    /// Whether `Γ ∖ S` is connected.
    pub connected: bool,
    /// `c(Γ ∖ S)`.
    pub expected_count: BigUint,
    /// Quasistable multidegrees on the loopless graph, as from
    /// [`stratum_multidegrees`].
    pub multidegrees: Vec<Cochain>,
    /// The same multidegrees on `Γ ∖ S`, with the loops of `S` removed from
    /// their vertices. Pushing these forward gives back `multidegrees`.
    pub normalized: Vec<Cochain>,
    pub codimension: usize,
    /// Indices of the rows whose stratum strictly contains this one.
    pub closure_children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataReport {
    pub rows: Vec<StratumRow>,
}

impl StrataReport {
    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.multidegrees.len()).sum()
    }

    pub fn row(&self, s: &EdgeSet) -> Option<&StratumRow> {
        self.rows.iter().find(|r| &r.stratum == s)
    }
}

/// Edge-index subsets of size at most `max`, by size and then
/// lexicographically.
fn ranked_subsets(m: usize, max: usize) -> Vec<Vec<usize>> {
    fn extend(m: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..m {
            current.push(i);
            extend(m, k, i + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    for k in 0..=max.min(m) {
        extend(m, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

fn edge_subsets(g: &Multigraph, max_codim: Option<usize>, guard_edges: usize) -> Result<Vec<EdgeSet>> {
    let m = g.edge_count();
    if max_codim.is_none() && m > guard_edges {
        return Err(Error::TooManyEdges { found: m, cap: guard_edges });
    }
    Ok(ranked_subsets(m, max_codim.unwrap_or(m))
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| g.edges()[i].id.clone()).collect())
        .collect())
}

fn check_connected_input(g: &Multigraph) -> Result<()> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// One row per edge subset of size at most `max_codim` (all subsets when
/// `None`, refused above `guard_edges` edges).
pub fn strata_report(
    g: &Multigraph,
    v0: usize,
    q: &Polarization,
    max_codim: Option<usize>,
    guard_edges: usize,
) -> Result<StrataReport> {
    check_connected_input(g)?;
    q.check_bound(g)?;
    let subsets = edge_subsets(g, max_codim, guard_edges)?;
    let mut rows = Vec::with_capacity(subsets.len());
    for s in &subsets {
        let residual = g.delete_edges(s)?;
        let multidegrees = stratum_multidegrees(g, s, v0, q)?;
        let loops = stratum_loops(g, s);
        let normalized = multidegrees
            .iter()
            .map(|d| Cochain::new(d.values().iter().zip(&loops).map(|(x, l)| x - l).collect()))
            .collect();
        rows.push(StratumRow {
            stratum: s.clone(),
            connected: residual.is_connected(),
            expected_count: complexity(&residual)?,
            multidegrees,
            normalized,
            codimension: s.len(),
            closure_children: Vec::new(),
        });
    }
    for i in 0..rows.len() {
        let children = (0..rows.len())
            .filter(|&j| rows[j].codimension > rows[i].codimension && rows[i].stratum.is_subset(&rows[j].stratum))
            .collect();
        rows[i].closure_children = children;
    }
    Ok(StrataReport { rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupBucket {
    /// Edges whose exceptional vertex carries `−1`.
    pub stratum: EdgeSet,
    pub cochains: Vec<Cochain>,
    /// `c(Γ ∖ S)`.
    pub expected_count: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupDecomposition {
    /// The graph with every edge subdivided.
    pub blowup: Multigraph,
    /// Edge id → exceptional vertex index in `blowup`.
    pub exceptional: BTreeMap<String, usize>,
    /// One bucket per edge subset, in the same order as a full strata report.
    pub buckets: Vec<BlowupBucket>,
    pub total: usize,
    /// `c(Γ̂)`.
    pub expected_total: BigUint,
}

impl BlowupDecomposition {
    /// Every bucket and the grand total have the expected size.
    pub fn is_consistent(&self) -> bool {
        self.buckets
            .iter()
            .all(|b| BigUint::from(b.cochains.len()) == b.expected_count)
            && BigUint::from(self.total) == self.expected_total
    }
}

/// Quasistable cochains on the full subdivision, bucketed by the edges whose
/// exceptional vertex has value `−1`. Any other exceptional value is an
/// error.
pub fn blowup_decomposition(
    g: &Multigraph,
    v0: usize,
    q: &Polarization,
    guard_edges: usize,
) -> Result<BlowupDecomposition> {
    check_connected_input(g)?;
    let subsets = edge_subsets(g, None, guard_edges)?;
    let all = g.all_edges();
    let (sub, q_hat) = q.blown_up(g, &all)?;
    let ctx = StratumContext::new(sub.graph.clone(), EdgeSet::new(), v0, q_hat)?;
    let cochains = ctx.enumerate(Kind::Quasistable);
    let total = cochains.len();

    let mut by_stratum: BTreeMap<EdgeSet, Vec<Cochain>> = BTreeMap::new();
    for d in cochains {
        let mut s = EdgeSet::new();
        for (id, &x) in &sub.exceptional {
            match d[x] {
                -1 => {
                    s.insert(id.clone());
                }
                0 => {}
                other => {
                    return Err(Error::InvariantViolation(format!(
                        "exceptional vertex over `{id}` has value {other} in {d:?}"
                    )))
                }
            }
        }
        by_stratum.entry(s).or_default().push(d);
    }

    let buckets = subsets
        .into_iter()
        .map(|s| {
            let expected_count = complexity(&g.delete_edges(&s)?)?;
            let cochains = by_stratum.remove(&s).unwrap_or_default();
            Ok(BlowupBucket { stratum: s, cochains, expected_count })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(BlowupDecomposition {
        expected_total: complexity(&sub.graph)?,
        blowup: sub.graph,
        exceptional: sub.exceptional,
        buckets,
        total,
    })
}
