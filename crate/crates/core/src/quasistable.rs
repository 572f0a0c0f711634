//! Semistable, quasistable and stable 0-cochains on `Γ ∖ S`, the defect
//! functionals ε and η, and the reduction of an arbitrary cochain to its
//! unique quasistable representative.
//!
//! All comparisons run on integers: every rational quantity is multiplied by
//! `N = 2·lcm(denominators of q)`, which clears both the polarization and the
//! half-valences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::graph::{proper_subsets, EdgeSet, Multigraph, VertexSet};
use crate::lattice::{characteristic, laplacian_apply, Cochain, LatticeQuotient};
use crate::polarization::{check_scan_size, Polarization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Semistable,
    Quasistable,
    Stable,
}

/// Graph, stratum edge set, basepoint and polarization, with per-subset
/// constants precomputed.
#[derive(Debug, Clone)]
pub struct StratumContext {
    graph: Multigraph,
    stratum: EdgeSet,
    basepoint: usize,
    q: Polarization,
    residual: Multigraph,
    scale: i64,
    budget: i64,
    /// `N·(q_W − val(W)/2 − |S ∩ E(Γ[W])|)` indexed by the bitmask of `W`.
    lower: Vec<i64>,
}

/// Maxima of ε and η together with their minimal maximizers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    pub epsilon_max: BigRational,
    pub eta_max: BigRational,
    pub omega_plus: VertexSet,
    pub omega_minus: VertexSet,
    /// Smallest `W ∋ v0` with `η(d, W) = 0`; present only when `η(d) = 0`.
    pub omega_minus_basepoint: Option<VertexSet>,
}

/// Outcome of a reduction, with the number of Laplacian moves per phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub result: Cochain,
    pub semistable_steps: u64,
    pub quasistable_steps: u64,
}

impl Reduction {
    pub fn steps(&self) -> u64 {
        self.semistable_steps + self.quasistable_steps
    }
}

impl StratumContext {
    pub fn new(graph: Multigraph, stratum: EdgeSet, basepoint: usize, q: Polarization) -> Result<Self> {
        let n = graph.vertex_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if basepoint >= n {
            return Err(Error::VertexOutOfRange(basepoint));
        }
        q.check_bound(&graph)?;
        check_scan_size(&graph)?;
        let mask = graph.edge_mask(&stratum)?;
        let residual = graph.delete_edges(&stratum)?;

        let lcm = q
            .values()
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scale_big: BigInt = lcm * 2;
        let scale = scale_big.to_i64().ok_or(Error::Overflow)?;
        let scaled_q: Vec<i64> = q
            .values()
            .iter()
            .map(|x| (x * BigRational::from_integer(scale_big.clone())).to_integer().to_i64())
            .collect::<Option<_>>()
            .ok_or(Error::Overflow)?;
        let total = q.total().to_i64().ok_or(Error::Overflow)?;
        let budget = total - stratum.len() as i64;

        let half_scale = scale / 2;
        let mut lower = vec![0i64; 1usize << n];
        for (bits, slot) in lower.iter_mut().enumerate() {
            let w = VertexSet::from_bits(bits as u64);
            let mut value: i64 = w.iter().map(|v| scaled_q[v]).sum();
            for (e, &in_s) in graph.edges().iter().zip(&mask) {
                let (a, b) = e.ends;
                match (w.contains(a), w.contains(b)) {
                    (true, true) if in_s => value -= scale,
                    (true, false) | (false, true) => value -= half_scale,
                    _ => {}
                }
            }
            *slot = value;
        }

        Ok(StratumContext {
            graph,
            stratum,
            basepoint,
            q,
            residual,
            scale,
            budget,
            lower,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn stratum(&self) -> &EdgeSet {
        &self.stratum
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn polarization(&self) -> &Polarization {
        &self.q
    }

    /// `Γ ∖ S`, whose Laplacian drives the reductions.
    pub fn residual(&self) -> &Multigraph {
        &self.residual
    }

    /// Required total degree `|q| − |S|`.
    pub fn degree_budget(&self) -> i64 {
        self.budget
    }

    fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    fn full(&self) -> usize {
        (1usize << self.n()) - 1
    }

    fn check_cochain(&self, d: &Cochain) -> Result<()> {
        d.check_bound(&self.graph)?;
        if d.total() != self.budget {
            return Err(Error::DegreeBudget {
                expected: self.budget,
                found: d.total(),
            });
        }
        Ok(())
    }

    /// `d_W` for every bitmask `W`.
    fn subset_sums(&self, d: &Cochain) -> Vec<i64> {
        let mut sums = vec![0i64; 1usize << self.n()];
        for m in 1..sums.len() {
            let low = m.trailing_zeros() as usize;
            sums[m] = sums[m & (m - 1)] + d[low];
        }
        sums
    }

    /// `N·η(d, W)`.
    fn scaled_eta(&self, sums: &[i64], w: usize) -> i64 {
        self.lower[w] - self.scale * sums[w]
    }

    /// `N·ε(d, W) = N·η(d, W^c)`.
    fn scaled_epsilon(&self, sums: &[i64], w: usize) -> i64 {
        self.scaled_eta(sums, self.full() & !w)
    }

    fn rational(&self, scaled: i64) -> BigRational {
        BigRational::new(BigInt::from(scaled), BigInt::from(self.scale))
    }

    /// `ε(d, W) = d_W + |S∩E(Γ[W])| − q_W − val(W)/2 + val_S(W)`.
    pub fn epsilon(&self, d: &Cochain, w: VertexSet) -> Result<BigRational> {
        self.check_cochain(d)?;
        let bits = self.mask_of(w)?;
        Ok(self.rational(self.scaled_epsilon(&self.subset_sums(d), bits)))
    }

    /// `η(d, W) = −d_W − |S∩E(Γ[W])| + q_W − val(W)/2`.
    pub fn eta(&self, d: &Cochain, w: VertexSet) -> Result<BigRational> {
        self.check_cochain(d)?;
        let bits = self.mask_of(w)?;
        Ok(self.rational(self.scaled_eta(&self.subset_sums(d), bits)))
    }

    fn mask_of(&self, w: VertexSet) -> Result<usize> {
        if !w.is_subset(self.graph.all_vertices()) {
            let v = w.difference(self.graph.all_vertices()).iter().next().unwrap_or(0);
            return Err(Error::VertexOutOfRange(v));
        }
        Ok(w.bits() as usize)
    }

    /// Maximum of the scaled ε and the intersection of all its maximizers.
    fn epsilon_peak(&self, sums: &[i64]) -> (i64, usize) {
        let mut best = i64::MIN;
        let mut meet = 0usize;
        for w in 0..=self.full() {
            let value = self.scaled_epsilon(sums, w);
            if value > best {
                best = value;
                meet = w;
            } else if value == best {
                meet &= w;
            }
        }
        (best, meet)
    }

    fn eta_peak(&self, sums: &[i64]) -> (i64, usize) {
        let mut best = i64::MIN;
        let mut meet = 0usize;
        for w in 0..=self.full() {
            let value = self.scaled_eta(sums, w);
            if value > best {
                best = value;
                meet = w;
            } else if value == best {
                meet &= w;
            }
        }
        (best, meet)
    }

    /// Intersection of all `W ∋ v0` with `η(d, W) = 0`. Only meaningful
    /// when `η(d) = 0`; the full set always qualifies.
    fn omega_minus_at_basepoint(&self, sums: &[i64]) -> usize {
        let b = 1usize << self.basepoint;
        (0..=self.full())
            .filter(|&w| w & b != 0 && self.scaled_eta(sums, w) == 0)
            .fold(self.full(), |acc, w| acc & w)
    }

    pub fn defects(&self, d: &Cochain) -> Result<DefectReport> {
        self.check_cochain(d)?;
        let sums = self.subset_sums(d);
        let (eps, omega_plus) = self.epsilon_peak(&sums);
        let (eta, omega_minus) = self.eta_peak(&sums);
        debug_assert_eq!(eps, eta);
        let omega_minus_basepoint = (eta == 0).then(|| {
            VertexSet::from_bits(self.omega_minus_at_basepoint(&sums) as u64)
        });
        Ok(DefectReport {
            epsilon_max: self.rational(eps),
            eta_max: self.rational(eta),
            omega_plus: VertexSet::from_bits(omega_plus as u64),
            omega_minus: VertexSet::from_bits(omega_minus as u64),
            omega_minus_basepoint,
        })
    }

    /// Checks the defining inequality on every proper nonempty subset.
    fn satisfies(&self, d: &Cochain, kind: Kind) -> bool {
        if d.len() != self.n() || d.total() != self.budget {
            return false;
        }
        let sums = self.subset_sums(d);
        let b = 1usize << self.basepoint;
        (1..self.full()).all(|w| {
            let slack = self.scale * sums[w] - self.lower[w];
            let strict = match kind {
                Kind::Semistable => false,
                Kind::Quasistable => w & b != 0,
                Kind::Stable => true,
            };
            if strict {
                slack > 0
            } else {
                slack >= 0
            }
        })
    }

    pub fn is_semistable(&self, d: &Cochain) -> bool {
        self.satisfies(d, Kind::Semistable)
    }

    pub fn is_quasistable(&self, d: &Cochain) -> bool {
        self.satisfies(d, Kind::Quasistable)
    }

    pub fn is_stable(&self, d: &Cochain) -> bool {
        self.satisfies(d, Kind::Stable)
    }

    pub fn is(&self, kind: Kind, d: &Cochain) -> bool {
        self.satisfies(d, kind)
    }

    fn move_along(&self, d: &Cochain, w: usize, sign: i64) -> Cochain {
        let chi = characteristic(&self.residual, VertexSet::from_bits(w as u64));
        let image = laplacian_apply(&self.residual, &chi).expect("bound to the residual graph");
        Cochain::new(d.values().iter().zip(image.values()).map(|(a, b)| a + sign * b).collect())
    }

    fn check_reducible(&self, d: &Cochain) -> Result<()> {
        self.check_cochain(d)?;
        if !self.residual.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    fn semistable_phase(&self, d: &Cochain) -> Result<(Cochain, u64)> {
        let n = self.n() as u64;
        let mut current = d.clone();
        let (start, _) = self.epsilon_peak(&self.subset_sums(&current));
        let guard = (start.max(0) as u64)
            .saturating_mul(1u64 << n)
            .saturating_add(n.saturating_mul(1u64 << n))
            .saturating_add(1);
        let mut steps = 0u64;
        loop {
            let (eps, omega_plus) = self.epsilon_peak(&self.subset_sums(&current));
            if eps == 0 {
                return Ok((current, steps));
            }
            if steps >= guard {
                return Err(Error::NonTermination(steps));
            }
            current = self.move_along(&current, omega_plus, 1);
            steps += 1;
        }
    }

    /// Repeatedly adds `Δ(χ(Ω⁺(d)))` (Laplacian of `Γ ∖ S`) until ε vanishes.
    pub fn reduce_to_semistable(&self, d: &Cochain) -> Result<Cochain> {
        self.check_reducible(d)?;
        Ok(self.semistable_phase(d)?.0)
    }

    /// Reduces to a semistable cochain, then repeatedly subtracts
    /// `Δ(χ(Ω⁻(d, v0)))` until `Ω⁻(d, v0)` is everything. The result is the
    /// unique `v0`-quasistable cochain in the class of `d`.
    pub fn reduce_to_quasistable(&self, d: &Cochain) -> Result<Cochain> {
        Ok(self.reduce_traced(d)?.result)
    }

    pub fn reduce_traced(&self, d: &Cochain) -> Result<Reduction> {
        self.check_reducible(d)?;
        let (mut current, semistable_steps) = self.semistable_phase(d)?;
        let guard = self.n() as u64 + 1;
        let mut quasistable_steps = 0u64;
        loop {
            let omega = self.omega_minus_at_basepoint(&self.subset_sums(&current));
            if omega == self.full() {
                break;
            }
            if quasistable_steps >= guard {
                return Err(Error::NonTermination(semistable_steps + quasistable_steps));
            }
            current = self.move_along(&current, omega, -1);
            quasistable_steps += 1;
        }
        Ok(Reduction {
            result: current,
            semistable_steps,
            quasistable_steps,
        })
    }

    /// Lattice of `Γ ∖ S`, for class comparisons.
    pub fn lattice(&self) -> Result<LatticeQuotient> {
        LatticeQuotient::new(&self.residual)
    }

    /// Every cochain of the given kind, sorted lexicographically.
    ///
    /// Vertices are fixed in index order; after fixing vertex `k` every
    /// subset of `{0..k}` containing `k` is tested against both its own
    /// inequality and the one for its complement, so the search prunes early
    /// and a completed assignment has passed every proper subset.
    pub fn enumerate(&self, kind: Kind) -> Vec<Cochain> {
        let n = self.n();
        let full = self.full();
        let scale = self.scale;
        let b = 1usize << self.basepoint;
        let budget_scaled = scale * self.budget;

        let (lo, hi): (Vec<i64>, Vec<i64>) = (0..n)
            .map(|v| {
                let w = 1usize << v;
                let low = Integer::div_ceil(&self.lower[w], &scale);
                let high = Integer::div_floor(&(budget_scaled - self.lower[full & !w]), &scale);
                (low, high)
            })
            .unzip();

        let strict_lower = |w: usize| match kind {
            Kind::Semistable => false,
            Kind::Quasistable => w & b != 0,
            Kind::Stable => true,
        };
        // the upper bound at W is the lower bound at W^c
        let ok = |w: usize, sum: i64| -> bool {
            let below = scale * sum - self.lower[w];
            let wc = full & !w;
            let above = budget_scaled - self.lower[wc] - scale * sum;
            let lower_ok = if strict_lower(w) { below > 0 } else { below >= 0 };
            let upper_ok = if strict_lower(wc) { above > 0 } else { above >= 0 };
            lower_ok && upper_ok
        };

        let mut out = Vec::new();
        let mut sums = vec![0i64; 1usize << n];
        let mut values = vec![0i64; n];

        struct Search<'a, F: Fn(usize, i64) -> bool> {
            n: usize,
            full: usize,
            budget: i64,
            lo: &'a [i64],
            hi: &'a [i64],
            ok: F,
        }

        impl<F: Fn(usize, i64) -> bool> Search<'_, F> {
            fn go(&self, k: usize, running: i64, sums: &mut [i64], values: &mut [i64], out: &mut Vec<Cochain>) {
                if k == self.n {
                    out.push(Cochain::new(values.to_vec()));
                    return;
                }
                let candidates = if k + 1 == self.n {
                    let forced = self.budget - running;
                    if forced < self.lo[k] || forced > self.hi[k] {
                        return;
                    }
                    forced..=forced
                } else {
                    self.lo[k]..=self.hi[k]
                };
                let top = 1usize << k;
                'value: for x in candidates {
                    for prev in 0..top {
                        let w = prev | top;
                        let s = sums[prev] + x;
                        sums[w] = s;
                        if w != self.full && !(self.ok)(w, s) {
                            continue 'value;
                        }
                    }
                    values[k] = x;
                    self.go(k + 1, running + x, sums, values, out);
                }
            }
        }

        if n == 1 {
            out.push(Cochain::new(vec![self.budget]));
            return out;
        }
        let search = Search {
            n,
            full,
            budget: self.budget,
            lo: &lo,
            hi: &hi,
            ok,
        };
        search.go(0, 0, &mut sums, &mut values, &mut out);
        out.sort();
        out
    }
}

/// A semistable cochain (with `S = ∅`) and a proper subset `W` with `Γ[W]`
/// and `Γ[W^c]` connected on which the semistability inequality is an
/// equality; with `avoid_spines`, `W` is additionally not a spine. Such a
/// pair exists whenever `q` is not general (respectively degenerate).
pub fn equality_witness(
    g: &Multigraph,
    q: &Polarization,
    avoid_spines: bool,
) -> Result<Option<(VertexSet, Cochain)>> {
    let ctx = StratumContext::new(g.clone(), EdgeSet::new(), 0, q.clone())?;
    let n = g.vertex_count();
    if n < 2 {
        return Ok(None);
    }
    let candidates: Vec<VertexSet> = proper_subsets(n)
        .filter(|&w| {
            g.components_of(w).len() == 1
                && g.components_of(g.complement(w)).len() == 1
                && !(avoid_spines && g.is_spine(w))
        })
        .collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    for d in ctx.enumerate(Kind::Semistable) {
        let sums = ctx.subset_sums(&d);
        if let Some(&w) = candidates
            .iter()
            .find(|w| ctx.scale * sums[w.bits() as usize] == ctx.lower[w.bits() as usize])
        {
            return Ok(Some((w, d)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{all_subsets, Multigraph};

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn ctx(g: Multigraph, s: &[&str], v0: usize, q: Polarization) -> StratumContext {
        StratumContext::new(g, edges(s), v0, q).unwrap()
    }

    fn half_half() -> Polarization {
        Polarization::from_ratios(&[(1, 2), (1, 2)]).unwrap()
    }

    fn c(v: &[i64]) -> Cochain {
        Cochain::new(v.to_vec())
    }

    /// Direct transcription of the defining inequalities with exact
    /// rationals, independent of the scaled tables.
    fn oracle_is(ctxt: &StratumContext, kind: Kind, d: &Cochain) -> bool {
        let g = ctxt.graph();
        let s = ctxt.stratum();
        let q = ctxt.polarization();
        if d.total() != q.total().to_i64().unwrap() - s.len() as i64 {
            return false;
        }
        proper_subsets(g.vertex_count()).all(|w| {
            let lhs = BigRational::from_integer((d.sum_over(w) + g.induced_edge_count(s, w).unwrap() as i64).into());
            let rhs = q.sum_over(w) - r(g.boundary_valence(w) as i64, 2);
            let strict = match kind {
                Kind::Semistable => false,
                Kind::Quasistable => w.contains(ctxt.basepoint()),
                Kind::Stable => true,
            };
            if strict {
                lhs > rhs
            } else {
                lhs >= rhs
            }
        })
    }

    /// Brute force over a box wide enough to contain every candidate.
    fn oracle_enumerate(ctxt: &StratumContext, kind: Kind, radius: i64) -> Vec<Cochain> {
        let n = ctxt.graph().vertex_count();
        let budget = ctxt.degree_budget();
        let mut out = Vec::new();
        let mut cur = vec![-radius; n - 1];
        loop {
            let mut v = cur.clone();
            v.push(budget - cur.iter().sum::<i64>());
            let d = Cochain::new(v);
            if oracle_is(ctxt, kind, &d) {
                out.push(d);
            }
            let mut i = 0;
            loop {
                if i == n - 1 {
                    out.sort();
                    return out;
                }
                cur[i] += 1;
                if cur[i] > radius {
                    cur[i] = -radius;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn epsilon_eta_examples() {
        let k = ctx(banana(), &[], 0, half_half());
        let d = c(&[3, -2]);
        let u = VertexSet::singleton(0);
        let v = VertexSet::singleton(1);
        assert_eq!(k.epsilon(&d, u).unwrap(), r(3, 2));
        assert_eq!(k.eta(&d, v).unwrap(), r(3, 2));
        assert_eq!(k.epsilon(&d, VertexSet::EMPTY).unwrap(), r(0, 1));
        assert_eq!(k.eta(&d, VertexSet::EMPTY).unwrap(), r(0, 1));
        assert_eq!(k.epsilon(&d, k.graph().all_vertices()).unwrap(), r(0, 1));
        assert_eq!(
            k.epsilon(&c(&[0, 0]), u),
            Err(Error::DegreeBudget { expected: 1, found: 0 })
        );
    }

    #[test]
    fn defects_examples() {
        let k = ctx(banana(), &[], 0, half_half());
        let rep = k.defects(&c(&[3, -2])).unwrap();
        assert_eq!(rep.epsilon_max, r(3, 2));
        assert_eq!(rep.eta_max, r(3, 2));
        assert_eq!(rep.omega_plus, VertexSet::singleton(0));
        assert_eq!(rep.omega_minus, VertexSet::singleton(1));
        assert_eq!(rep.omega_minus_basepoint, None);

        let qs = k.defects(&c(&[1, 0])).unwrap();
        assert_eq!(qs.epsilon_max, r(0, 1));
        assert_eq!(qs.omega_minus_basepoint, Some(k.graph().all_vertices()));

        // banana, q = (1, 0), d = (1, 0): stable, every proper defect is −1,
        // so the maximizers are ∅ and V and both Ω sets are empty.
        let k10 = ctx(banana(), &[], 0, Polarization::from_integers(&[1, 0]));
        let d = c(&[1, 0]);
        assert_eq!(k10.eta(&d, VertexSet::singleton(0)).unwrap(), r(-1, 1));
        assert_eq!(k10.eta(&d, VertexSet::singleton(1)).unwrap(), r(-1, 1));
        let rep = k10.defects(&d).unwrap();
        assert_eq!(rep.epsilon_max, r(0, 1));
        assert_eq!(rep.omega_plus, VertexSet::EMPTY);
        assert_eq!(rep.omega_minus, VertexSet::EMPTY);
        assert_eq!(rep.omega_minus_basepoint, Some(k10.graph().all_vertices()));
        assert!(k10.is_stable(&d));
    }

    #[test]
    fn predicate_examples() {
        let k = ctx(banana(), &[], 0, half_half());
        assert!(k.is_quasistable(&c(&[1, 0])));
        assert!(k.is_stable(&c(&[1, 0])));
        assert!(k.is_quasistable(&c(&[0, 1])));
        let k10 = ctx(banana(), &[], 0, Polarization::from_integers(&[1, 0]));
        assert!(k10.is_quasistable(&c(&[2, -1])));
        assert!(!k10.is_stable(&c(&[2, -1])));
        assert!(!k10.is_semistable(&c(&[2, 0])));
        assert!(!k10.is_semistable(&c(&[1])));
    }

    #[test]
    fn reduce_examples() {
        let k = ctx(banana(), &[], 0, half_half());
        assert_eq!(k.reduce_to_semistable(&c(&[3, -2])).unwrap(), c(&[1, 0]));
        let t = k.reduce_traced(&c(&[3, -2])).unwrap();
        assert_eq!((t.semistable_steps, t.quasistable_steps), (1, 0));
        assert_eq!(k.reduce_to_semistable(&c(&[0, 1])).unwrap(), c(&[0, 1]));

        let p = ctx(path(), &[], 0, half_half());
        let expected = oracle_enumerate(&p, Kind::Semistable, 4);
        assert_eq!(expected, vec![c(&[0, 1]), c(&[1, 0])]);
        // (2, −1) has ε maximized only on {u}; one move lands on (1, 0)
        assert_eq!(p.reduce_to_semistable(&c(&[2, -1])).unwrap(), c(&[1, 0]));

        let k10 = ctx(banana(), &[], 0, Polarization::from_integers(&[1, 0]));
        assert_eq!(k10.eta(&c(&[0, 1]), VertexSet::singleton(0)).unwrap(), r(0, 1));
        let t = k10.reduce_traced(&c(&[0, 1])).unwrap();
        assert_eq!(t.result, c(&[2, -1]));
        assert_eq!((t.semistable_steps, t.quasistable_steps), (0, 1));
        assert_eq!(k10.reduce_to_quasistable(&c(&[1, 0])).unwrap(), c(&[1, 0]));
    }

    #[test]
    fn reduce_rejects_disconnected_and_bad_budget() {
        let k = ctx(banana(), &["e1", "e2"], 0, half_half());
        assert_eq!(k.reduce_to_quasistable(&c(&[0, -1])), Err(Error::Disconnected));
        let k = ctx(banana(), &[], 0, half_half());
        assert_eq!(
            k.reduce_to_quasistable(&c(&[0, 0])),
            Err(Error::DegreeBudget { expected: 1, found: 0 })
        );
    }

    #[test]
    fn enumerate_examples() {
        let k = ctx(banana(), &[], 0, half_half());
        assert_eq!(k.enumerate(Kind::Quasistable), vec![c(&[0, 1]), c(&[1, 0])]);
        let k10 = ctx(banana(), &[], 0, Polarization::from_integers(&[1, 0]));
        assert_eq!(k10.enumerate(Kind::Semistable), vec![c(&[0, 1]), c(&[1, 0]), c(&[2, -1])]);
        assert_eq!(k10.enumerate(Kind::Stable), vec![c(&[1, 0])]);
        assert_eq!(k10.enumerate(Kind::Quasistable), vec![c(&[1, 0]), c(&[2, -1])]);
        let cut = ctx(banana(), &["e1", "e2"], 0, half_half());
        assert!(cut.enumerate(Kind::Quasistable).is_empty());
    }

    #[test]
    fn single_vertex_enumeration() {
        let mut g = Multigraph::new();
        g.add_vertex("v", 0).unwrap();
        let k = ctx(g, &[], 0, Polarization::from_integers(&[4]));
        assert_eq!(k.enumerate(Kind::Stable), vec![c(&[4])]);
        let l = ctx(single_loop(), &["l"], 0, Polarization::from_integers(&[4]));
        assert_eq!(l.enumerate(Kind::Quasistable), vec![c(&[3])]);
    }

    fn sample_contexts() -> Vec<StratumContext> {
        let g1 = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (2, 0), (2, 2)]).unwrap();
        let g2 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)]).unwrap();
        let g3 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (1, 2), (2, 3)]).unwrap();
        vec![
            ctx(g1.clone(), &[], 2, Polarization::from_ratios(&[(1, 3), (2, 3), (1, 1)]).unwrap()),
            ctx(g1.clone(), &["e0", "e4"], 0, Polarization::from_ratios(&[(1, 2), (3, 4), (3, 4)]).unwrap()),
            ctx(g1, &["e1"], 1, Polarization::from_integers(&[0, 1, 1])),
            ctx(g2.clone(), &["e4"], 3, Polarization::from_ratios(&[(1, 4), (1, 4), (1, 4), (1, 4)]).unwrap()),
            ctx(g2, &[], 0, Polarization::from_integers(&[1, 0, -1, 2])),
            ctx(g3, &[], 1, Polarization::from_ratios(&[(1, 2), (0, 1), (1, 2), (1, 1)]).unwrap()),
        ]
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for k in sample_contexts() {
            for kind in [Kind::Semistable, Kind::Quasistable, Kind::Stable] {
                assert_eq!(k.enumerate(kind), oracle_enumerate(&k, kind, 6), "{kind:?}");
            }
        }
    }

    #[test]
    fn predicates_match_oracle() {
        for k in sample_contexts() {
            for d in oracle_enumerate(&k, Kind::Semistable, 3) {
                for kind in [Kind::Semistable, Kind::Quasistable, Kind::Stable] {
                    assert_eq!(k.is(kind, &d), oracle_is(&k, kind, &d));
                }
            }
        }
    }

    #[test]
    fn defect_identities() {
        for k in sample_contexts() {
            let g = k.graph().clone();
            let n = g.vertex_count();
            let residual = k.residual().clone();
            let budget = k.degree_budget();
            for first in -3..=3 {
                let mut v = vec![first; n];
                v[n - 1] = budget - first * (n as i64 - 1);
                let d = Cochain::new(v);
                let sums = k.subset_sums(&d);
                let families: Vec<(usize, i64, i64)> = (0..1usize << n)
                    .map(|w| (w, k.scaled_epsilon(&sums, w), k.scaled_eta(&sums, w)))
                    .collect();
                // ε(d, W) = η(d, W^c)
                for &(w, e, _) in &families {
                    assert_eq!(e, k.scaled_eta(&sums, k.full() & !w));
                }
                // additivity with the valence of Γ ∖ S
                for a in all_subsets(n) {
                    for b in all_subsets(n).filter(|b| b.is_disjoint(a)) {
                        let cross = residual.valence(a, b).unwrap() as i64 * k.scale;
                        let ab = a.union(b).bits() as usize;
                        let (ai, bi) = (a.bits() as usize, b.bits() as usize);
                        assert_eq!(families[ab].1, families[ai].1 + families[bi].1 + cross);
                        assert_eq!(families[ab].2, families[ai].2 + families[bi].2 + cross);
                    }
                }
                // maximizer families are closed under intersection
                let rep = k.defects(&d).unwrap();
                assert_eq!(rep.epsilon_max, rep.eta_max);
                let emax = families.iter().map(|f| f.1).max().unwrap();
                let hmax = families.iter().map(|f| f.2).max().unwrap();
                let plus: Vec<usize> = families.iter().filter(|f| f.1 == emax).map(|f| f.0).collect();
                let minus: Vec<usize> = families.iter().filter(|f| f.2 == hmax).map(|f| f.0).collect();
                for fam in [&plus, &minus] {
                    for &x in fam.iter() {
                        for &y in fam.iter() {
                            assert!(fam.contains(&(x & y)));
                        }
                    }
                }
                assert!(rep.omega_plus.is_disjoint(rep.omega_minus));
                // semistable iff ε(d) = 0 iff one of the Ω sets is empty
                let ss = k.is_semistable(&d);
                assert_eq!(ss, emax == 0);
                assert_eq!(ss, rep.omega_plus.is_empty() || rep.omega_minus.is_empty());
            }
        }
    }

    #[test]
    fn reduction_lands_in_the_class_and_the_set() {
        for k in sample_contexts() {
            if !k.residual().is_connected() {
                continue;
            }
            let lattice = k.lattice().unwrap();
            let qs = k.enumerate(Kind::Quasistable);
            let n = k.graph().vertex_count();
            for first in -5..=5 {
                for second in -2..=2 {
                    let mut v = vec![0i64; n];
                    v[0] = first;
                    v[1] = second;
                    v[n - 1] += k.degree_budget() - first - second;
                    let d = Cochain::new(v);
                    let out = k.reduce_to_quasistable(&d).unwrap();
                    assert!(k.is_quasistable(&out));
                    assert!(lattice.same_class(&d, &out).unwrap());
                    assert!(qs.contains(&out));
                }
            }
        }
    }

    #[test]
    fn equality_witness_examples() {
        let q10 = Polarization::from_integers(&[1, 0]);
        let (w, d) = equality_witness(&banana(), &q10, true).unwrap().unwrap();
        let k = ctx(banana(), &[], 0, q10);
        assert!(k.is_semistable(&d));
        assert_eq!(k.eta(&d, w).unwrap(), r(0, 1));
        assert!(equality_witness(&banana(), &half_half(), false).unwrap().is_none());
        // path with (1/2, 1/2): not general, and the witness is the spine {u}
        let (w, _) = equality_witness(&path(), &half_half(), false).unwrap().unwrap();
        assert!(path().is_spine(w));
        assert!(equality_witness(&path(), &half_half(), true).unwrap().is_none());
    }
}
