//! Integer 0-cochains, the graph Laplacian and the degree class group.

use std::fmt;
use std::ops::{Add, Index, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSet};
use crate::snf::{self, Smith};

/// An integer value per vertex of a graph. The binding to a graph is by
/// vertex count; operations taking a graph check it.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cochain(Vec<i64>);

impl Cochain {
    pub fn new(values: Vec<i64>) -> Self {
        Cochain(values)
    }

    pub fn zero(n: usize) -> Self {
        Cochain(vec![0; n])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|d|`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `d_W`.
    pub fn sum_over(&self, w: VertexSet) -> i64 {
        w.iter().filter_map(|v| self.0.get(v)).sum()
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
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<Vec<i64>> for Cochain {
    fn from(v: Vec<i64>) -> Self {
        Cochain(v)
    }
}

impl Index<usize> for Cochain {
    type Output = i64;
    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl Add for &Cochain {
    type Output = Cochain;
    fn add(self, rhs: &Cochain) -> Cochain {
        Cochain(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        Cochain(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Laplacian matrix: `-val(v)` on the diagonal, `val(v, w)` off it. Loops
/// do not contribute.
pub fn laplacian_matrix(g: &Multigraph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0i64; n]; n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        let (a, b) = e.ends;
        m[a][b] += 1;
        m[b][a] += 1;
        m[a][a] -= 1;
        m[b][b] -= 1;
    }
    m
}

pub fn laplacian_apply(g: &Multigraph, d: &Cochain) -> Result<Cochain> {
    d.check_bound(g)?;
    let mut out = vec![0i64; g.vertex_count()];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        let (a, b) = e.ends;
        out[a] += d[b] - d[a];
        out[b] += d[a] - d[b];
    }
    Ok(Cochain(out))
}

/// Indicator cochain of `w`.
pub fn characteristic(g: &Multigraph, w: VertexSet) -> Cochain {
    Cochain((0..g.vertex_count()).map(|v| i64::from(w.contains(v))).collect())
}

/// `Δ(χ(V))_W` through the closed form
/// `-val(V∩W, (V∪W)^c) + val(W∖V, V∖W)`.
pub fn laplacian_pairing(g: &Multigraph, v: VertexSet, w: VertexSet) -> i64 {
    let outside = g.complement(v.union(w));
    let lost = g.valence(v.intersection(w), outside).expect("disjoint by construction");
    let gained = g
        .valence(w.difference(v), v.difference(w))
        .expect("disjoint by construction");
    gained as i64 - lost as i64
}

/// Number of spanning trees, as the determinant of the Laplacian with the
/// first row and column removed.
pub fn complexity(g: &Multigraph) -> Result<BigUint> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let full = laplacian_matrix(g);
    let reduced: Vec<Vec<i64>> = full[1..].iter().map(|r| r[1..].to_vec()).collect();
    let det = snf::determinant(&snf::from_i64(&reduced));
    Ok(det.abs().to_biguint().expect("absolute value is nonnegative"))
}

/// `C^0(Γ, ℤ)_0 / Im Δ` for a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardGroup {
    /// Invariant factors greater than one, each dividing the next.
    pub invariant_factors: Vec<BigUint>,
    pub order: BigUint,
}

pub fn picard_group(g: &Multigraph) -> Result<PicardGroup> {
    Ok(LatticeQuotient::new(g)?.picard_group())
}

/// Whether `d - e` lies in the image of the Laplacian of `g`.
pub fn same_class(g: &Multigraph, d: &Cochain, e: &Cochain) -> Result<bool> {
    LatticeQuotient::new(g)?.same_class(d, e)
}

/// Smith decomposition of the Laplacian of a connected graph, kept around
/// for repeated class-membership queries.
#[derive(Debug, Clone)]
pub struct LatticeQuotient {
    n: usize,
    smith: Smith,
}

impl LatticeQuotient {
    pub fn new(g: &Multigraph) -> Result<Self> {
        if g.vertex_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let smith = snf::smith_normal_form(&snf::from_i64(&laplacian_matrix(g)));
        debug_assert_eq!(smith.rank(), g.vertex_count() - 1);
        Ok(LatticeQuotient { n: g.vertex_count(), smith })
    }

    pub fn picard_group(&self) -> PicardGroup {
        let invariant_factors: Vec<BigUint> = self
            .smith
            .diagonal
            .iter()
            .filter(|d| **d > BigInt::one())
            .map(|d| d.to_biguint().expect("positive"))
            .collect();
        let order = invariant_factors.iter().product();
        PicardGroup { invariant_factors, order }
    }

    /// Solves `Δx = d - e` over the integers through the Smith transforms.
    pub fn same_class(&self, d: &Cochain, e: &Cochain) -> Result<bool> {
        for c in [d, e] {
            if c.len() != self.n {
                return Err(Error::GraphMismatch { expected: self.n, found: c.len() });
            }
        }
        if d.total() != e.total() {
            return Err(Error::DegreeMismatch { left: d.total(), right: e.total() });
        }
        let b: Vec<BigInt> = d.values().iter().zip(e.values()).map(|(x, y)| BigInt::from(x - y)).collect();
        let ub = snf::mul_vec(&self.smith.left, &b);
        Ok(ub.iter().zip(&self.smith.diagonal).all(|(c, dd)| {
            if dd.is_zero() {
                c.is_zero()
            } else {
                c.is_multiple_of(dd)
            }
        }))
    }

    /// An integer vector `x` with `Δx = d - e`, if one exists.
    pub fn solve(&self, d: &Cochain, e: &Cochain) -> Result<Option<Vec<i64>>> {
        if !self.same_class(d, e)? {
            return Ok(None);
        }
        let b: Vec<BigInt> = d.values().iter().zip(e.values()).map(|(x, y)| BigInt::from(x - y)).collect();
        let ub = snf::mul_vec(&self.smith.left, &b);
        let y: Vec<BigInt> = ub
            .iter()
            .zip(&self.smith.diagonal)
            .map(|(c, dd)| if dd.is_zero() { BigInt::zero() } else { c / dd })
            .collect();
        snf::mul_vec(&self.smith.right, &y)
            .into_iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }
}
