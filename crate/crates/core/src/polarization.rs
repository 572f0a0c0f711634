//! Rational polarizations and the constructions performed on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{proper_subsets, Contraction, EdgeSet, Multigraph, Subdivision, VertexSet};

/// Vertex count above which exhaustive subset scans are refused.
pub const SUBSET_SCAN_CAP: usize = 20;

pub(crate) fn half(n: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

pub(crate) fn check_scan_size(g: &Multigraph) -> Result<()> {
    if g.vertex_count() > SUBSET_SCAN_CAP {
        return Err(Error::TooManyVertices {
            found: g.vertex_count(),
            cap: SUBSET_SCAN_CAP,
        });
    }
    Ok(())
}

/// One rational per vertex, with integral total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization(Vec<BigRational>);

impl Polarization {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        let total: BigRational = values.iter().sum();
        if !total.is_integer() {
            return Err(Error::NonIntegralTotal(total.to_string()));
        }
        Ok(Polarization(values))
    }

    /// Builds from `(numerator, denominator)` pairs.
    pub fn from_ratios(values: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Polarization(values.iter().map(|&p| BigRational::from_integer(BigInt::from(p))).collect())
    }

    pub fn zero(n: usize) -> Self {
        Polarization(vec![BigRational::zero(); n])
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_bound(&self, g: &Multigraph) -> Result<()> {
        if self.0.len() != g.vertex_count() {
            return Err(Error::GraphMismatch {
                expected: g.vertex_count(),
                found: self.0.len(),
            });
        }
        Ok(())
    }

    /// `|q|`.
    pub fn total(&self) -> BigInt {
        self.0.iter().sum::<BigRational>().to_integer()
    }

    /// `q_W`.
    pub fn sum_over(&self, w: VertexSet) -> BigRational {
        w.iter().filter_map(|v| self.0.get(v)).sum()
    }

    /// Restriction to the induced subgraph on `w`: every vertex loses half
    /// of its edges leaving `w`.
    pub fn restrict(&self, g: &Multigraph, w: VertexSet) -> Result<(Multigraph, Polarization)> {
        self.check_bound(g)?;
        if w.is_empty() {
            return Err(Error::EmptySet);
        }
        let shifted = self.sum_over(w) - half(g.boundary_valence(w));
        if !shifted.is_integer() {
            return Err(Error::NonIntegralRestriction(shifted.to_string()));
        }
        let outside = g.complement(w);
        let (sub, old) = g.induced_subgraph(w);
        let values = old
            .iter()
            .map(|&v| {
                let leaving = g.valence(VertexSet::singleton(v), outside).expect("disjoint");
                &self.0[v] - half(leaving)
            })
            .collect();
        Ok((sub, Polarization(values)))
    }

    /// Polarization on `g ∖ s`: each vertex loses half of its `s`-edges to
    /// other vertices and all of its `s`-loops.
    pub fn normalized(&self, g: &Multigraph, s: &EdgeSet) -> Result<(Multigraph, Polarization)> {
        self.check_bound(g)?;
        let mask = g.edge_mask(s)?;
        let mut values = self.0.clone();
        let one_half = half(1);
        for (e, _) in g.edges().iter().zip(&mask).filter(|(_, &m)| m) {
            let (a, b) = e.ends;
            if a == b {
                values[a] -= BigRational::one();
            } else {
                values[a] -= &one_half;
                values[b] -= &one_half;
            }
        }
        Ok((g.delete_edges(s)?, Polarization(values)))
    }

    /// Polarization on the subdivision of `s`: exceptional vertices get 0.
    pub fn blown_up(&self, g: &Multigraph, s: &EdgeSet) -> Result<(Subdivision, Polarization)> {
        self.check_bound(g)?;
        let sub = g.subdivide_edges(s)?;
        let mut values = self.0.clone();
        values.resize(sub.graph.vertex_count(), BigRational::zero());
        Ok((sub, Polarization(values)))
    }

    /// Canonical polarization of degree `d`: vertex `v` gets
    /// `d · (2g_v − 2 + val(v) + 2·loops(v)) / (2g − 2)`.
    pub fn canonical(g: &Multigraph, d: i64) -> Result<Polarization> {
        let genus = g.total_genus()?;
        let denom = 2 * genus - 2;
        if denom == 0 {
            return Err(Error::GenusOne);
        }
        let values = (0..g.vertex_count())
            .map(|v| {
                let w = 2 * i64::from(g.genus(v)) - 2
                    + g.boundary_valence(VertexSet::singleton(v)) as i64
                    + 2 * g.loops_at(v) as i64;
                BigRational::new(BigInt::from(d * w), BigInt::from(denom))
            })
            .collect();
        Ok(Polarization(values))
    }

    /// `q_Z − val(Z)/2 ∈ ℤ` for every connected component `Z` of `w` and of
    /// its complement.
    pub fn is_integral_at(&self, g: &Multigraph, w: VertexSet) -> Result<bool> {
        self.check_bound(g)?;
        let wc = g.complement(w);
        if w.is_empty() || wc.is_empty() || !w.is_subset(g.all_vertices()) {
            return Err(Error::ImproperSubset);
        }
        Ok(self.integral_unchecked(g, w, wc))
    }

    fn integral_unchecked(&self, g: &Multigraph, w: VertexSet, wc: VertexSet) -> bool {
        g.components_of(w)
            .into_iter()
            .chain(g.components_of(wc))
            .all(|z| (self.sum_over(z) - half(g.boundary_valence(z))).is_integer())
    }

    /// Proper nonempty subsets at which the polarization is integral, in
    /// increasing bitmask order.
    pub fn integral_subsets(&self, g: &Multigraph) -> Result<Vec<VertexSet>> {
        self.check_bound(g)?;
        check_scan_size(g)?;
        let n = g.vertex_count();
        Ok(proper_subsets(n)
            .filter(|&w| self.integral_unchecked(g, w, w.complement(n)))
            .collect())
    }

    /// Not integral at any proper nonempty subset.
    pub fn is_general(&self, g: &Multigraph) -> Result<bool> {
        Ok(self.integral_subsets(g)?.is_empty())
    }

    /// Not integral at any proper nonempty subset that is not a spine.
    pub fn is_nondegenerate(&self, g: &Multigraph) -> Result<bool> {
        let integral = self.integral_subsets(g)?;
        Ok(integral.into_iter().all(|w| g.is_spine(w)))
    }

    /// A subset witnessing that the polarization is not general, preferring
    /// one that is not a spine. Returns the subset and whether it is a spine.
    pub fn degeneracy_witness(&self, g: &Multigraph) -> Result<Option<(VertexSet, bool)>> {
        let integral = self.integral_subsets(g)?;
        if let Some(&w) = integral.iter().find(|&&w| !g.is_spine(w)) {
            return Ok(Some((w, false)));
        }
        Ok(integral.first().map(|&w| (w, true)))
    }

    /// Polarization induced on the graph with all bridges contracted.
    pub fn contracted(&self, g: &Multigraph) -> Result<(Contraction, Polarization)> {
        self.check_bound(g)?;
        let c = g.contract_bridges();
        let mut values = vec![BigRational::zero(); c.graph.vertex_count()];
        for (v, &z) in c.vertex_map.iter().enumerate() {
            values[z] += &self.0[v];
        }
        Ok((c, Polarization(values)))
    }
}
