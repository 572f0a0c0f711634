//! Vertex-weighted multigraphs with loops and the subset calculus used
//! throughout the crate.
//!
//! Vertices are addressed by dense indices in insertion order; every vertex
//! also carries a unique name and a genus weight. Edges carry a stable string
//! identifier so that edge sets survive deletions and subdivisions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count representable by a [`VertexSet`].
pub const MAX_VERTICES: usize = 64;

/// A subset of the vertices of a graph, stored as a bitmask over vertex
/// indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1u64 << v) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Complement inside `0..n`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_indices(iter)
    }
}

/// Iterator over every subset of `0..n`, in increasing bitmask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    assert!(n < MAX_VERTICES, "subset enumeration needs n < 64");
    (0..(1u64 << n)).map(VertexSet)
}

/// Nonempty proper subsets of `0..n`.
pub fn proper_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    assert!(n < MAX_VERTICES, "subset enumeration needs n < 64");
    let top = (1u64 << n) - 1;
    (1..top).map(VertexSet)
}

/// A set of edges, identified by their stable ids.
pub type EdgeSet = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: (usize, usize),
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    /// Whether exactly one endpoint lies in `a` and the other in `b`.
    fn joins(&self, a: VertexSet, b: VertexSet) -> bool {
        let (x, y) = self.ends;
        x != y && ((a.contains(x) && b.contains(y)) || (a.contains(y) && b.contains(x)))
    }

    fn inside(&self, w: VertexSet) -> bool {
        w.contains(self.ends.0) && w.contains(self.ends.1)
    }
}

/// Result of subdividing a set of edges.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub graph: Multigraph,
    /// Edge id of the subdivided edge → index of its exceptional vertex.
    pub exceptional: BTreeMap<String, usize>,
    /// Edge id of the subdivided edge → ids of its two halves.
    pub halves: BTreeMap<String, [String; 2]>,
}

/// Result of contracting all bridges.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Multigraph,
    /// Old vertex index → new vertex index.
    pub vertex_map: Vec<usize>,
}

/// A vertex-weighted multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices named `v0, v1, ...` (genus 0) with the given edges,
    /// whose ids default to `e0, e1, ...`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Multigraph::new();
        for i in 0..n {
            g.add_vertex(format!("v{i}"), 0)?;
        }
        for &(a, b) in edges {
            g.add_edge(None, a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, genus: u32) -> Result<usize> {
        let name = name.into();
        if self.vertices.iter().any(|v| v.name == name) {
            return Err(Error::DuplicateVertex(name));
        }
        if self.vertices.len() >= MAX_VERTICES {
            return Err(Error::TooManyVertices {
                found: self.vertices.len() + 1,
                cap: MAX_VERTICES,
            });
        }
        self.vertices.push(Vertex { name, genus });
        Ok(self.vertices.len() - 1)
    }

    /// Adds an edge; `id` defaults to `e<index>`.
    pub fn add_edge(&mut self, id: Option<&str>, a: usize, b: usize) -> Result<usize> {
        for v in [a, b] {
            if v >= self.vertices.len() {
                return Err(Error::VertexOutOfRange(v));
            }
        }
        let id = match id {
            Some(id) => id.to_string(),
            None => format!("e{}", self.edges.len()),
        };
        if self.edges.iter().any(|e| e.id == id) {
            return Err(Error::DuplicateEdge(id));
        }
        self.edges.push(Edge { id, ends: (a, b) });
        Ok(self.edges.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v].name
    }

    pub fn genus(&self, v: usize) -> u32 {
        self.vertices[v].genus
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Every vertex of the graph.
    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertices.len())
    }

    /// Every edge id of the graph.
    pub fn all_edges(&self) -> EdgeSet {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    /// Membership mask over edge indices; fails on ids not in the graph.
    pub fn edge_mask(&self, s: &EdgeSet) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.edges.len()];
        for id in s {
            mask[self.edge_index(id)?] = true;
        }
        Ok(mask)
    }

    pub fn vertex_set_by_names<'a, I>(&self, names: I) -> Result<VertexSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names
            .into_iter()
            .try_fold(VertexSet::EMPTY, |s, n| Ok(s.with(self.vertex_index(n)?)))
    }

    pub fn vertex_names(&self, w: VertexSet) -> Vec<String> {
        w.iter().map(|v| self.vertices[v].name.clone()).collect()
    }

    pub fn complement(&self, w: VertexSet) -> VertexSet {
        w.complement(self.vertices.len())
    }

    /// Number of non-loop edges with one endpoint in `w1` and the other in `w2`.
    pub fn valence(&self, w1: VertexSet, w2: VertexSet) -> Result<usize> {
        if !w1.is_disjoint(w2) {
            return Err(Error::OverlappingSets);
        }
        Ok(self.edges.iter().filter(|e| e.joins(w1, w2)).count())
    }

    /// Like [`valence`](Self::valence) but counting only edges of `s`.
    pub fn valence_in(&self, s: &EdgeSet, w1: VertexSet, w2: VertexSet) -> Result<usize> {
        let mask = self.edge_mask(s)?;
        if !w1.is_disjoint(w2) {
            return Err(Error::OverlappingSets);
        }
        Ok(self
            .edges
            .iter()
            .zip(&mask)
            .filter(|(e, &m)| m && e.joins(w1, w2))
            .count())
    }

    /// `val(W) = val(W, W^c)`.
    pub fn boundary_valence(&self, w: VertexSet) -> usize {
        let wc = self.complement(w);
        self.edges.iter().filter(|e| e.joins(w, wc)).count()
    }

    /// Number of edges of `s` with both endpoints in `w`, loops included.
    pub fn induced_edge_count(&self, s: &EdgeSet, w: VertexSet) -> Result<usize> {
        let mask = self.edge_mask(s)?;
        Ok(self
            .edges
            .iter()
            .zip(&mask)
            .filter(|(e, &m)| m && e.inside(w))
            .count())
    }

    /// Number of loops based at `v`.
    pub fn loops_at(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.is_loop() && e.ends.0 == v)
            .count()
    }

    pub fn delete_edges(&self, s: &EdgeSet) -> Result<Multigraph> {
        let mask = self.edge_mask(s)?;
        Ok(Multigraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .zip(&mask)
                .filter(|(_, &m)| !m)
                .map(|(e, _)| e.clone())
                .collect(),
        })
    }

    /// Inserts a genus-0 exceptional vertex in the middle of every edge of
    /// `s`. A subdivided edge `e` becomes the two halves `e.a` and `e.b`
    /// through the vertex `[e]`; a subdivided loop becomes a 2-cycle.
    pub fn subdivide_edges(&self, s: &EdgeSet) -> Result<Subdivision> {
        let mask = self.edge_mask(s)?;
        let mut g = Multigraph {
            vertices: self.vertices.clone(),
            edges: Vec::with_capacity(self.edges.len() + s.len()),
        };
        let mut exceptional = BTreeMap::new();
        let mut halves = BTreeMap::new();
        for (e, &m) in self.edges.iter().zip(&mask) {
            if !m {
                g.edges.push(e.clone());
                continue;
            }
            let mut name = format!("[{}]", e.id);
            while g.vertices.iter().any(|v| v.name == name) {
                name.push('\'');
            }
            let x = g.add_vertex(name, 0)?;
            let ha = fresh_id(self, &g, format!("{}.a", e.id));
            g.edges.push(Edge { id: ha.clone(), ends: (e.ends.0, x) });
            let hb = fresh_id(self, &g, format!("{}.b", e.id));
            g.edges.push(Edge { id: hb.clone(), ends: (x, e.ends.1) });
            exceptional.insert(e.id.clone(), x);
            halves.insert(e.id.clone(), [ha, hb]);
        }
        Ok(Subdivision { graph: g, exceptional, halves })
    }

    /// Graph with all loops removed.
    pub fn remove_loops(&self) -> Multigraph {
        Multigraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().filter(|e| !e.is_loop()).cloned().collect(),
        }
    }

    /// Induced subgraph on `w`, with the map from new to old vertex indices.
    pub fn induced_subgraph(&self, w: VertexSet) -> (Multigraph, Vec<usize>) {
        let old: Vec<usize> = w.iter().filter(|&v| v < self.vertices.len()).collect();
        let mut new_of = vec![usize::MAX; self.vertices.len()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let g = Multigraph {
            vertices: old.iter().map(|&v| self.vertices[v].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| e.inside(w))
                .map(|e| Edge {
                    id: e.id.clone(),
                    ends: (new_of[e.ends.0], new_of[e.ends.1]),
                })
                .collect(),
        };
        (g, old)
    }

    /// Connected components of the induced subgraph on `w`, ordered by their
    /// smallest vertex.
    pub fn components_of(&self, w: VertexSet) -> Vec<VertexSet> {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            if e.inside(w) {
                uf.union(e.ends.0, e.ends.1);
            }
        }
        let mut by_root: BTreeMap<usize, VertexSet> = BTreeMap::new();
        let mut order = Vec::new();
        for v in w.iter().filter(|&v| v < n) {
            let r = uf.find(v);
            let entry = by_root.entry(r).or_insert_with(|| {
                order.push(r);
                VertexSet::EMPTY
            });
            *entry = entry.with(v);
        }
        order.into_iter().map(|r| by_root[&r]).collect()
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_of(self.all_vertices())
    }

    /// Connectedness; the graph with no vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Edges whose deletion increases the number of connected components.
    /// Loops are never bridges; parallel edges never are either.
    pub fn bridges(&self) -> EdgeSet {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adj[e.ends.0].push((e.ends.1, i));
                adj[e.ends.1].push((e.ends.0, i));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut out = EdgeSet::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, edge used to enter it, next adjacency position)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
                if *pos < adj[v].len() {
                    let (w, ei) = adj[v][*pos];
                    *pos += 1;
                    if ei == via {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, ei, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.insert(self.edges[via].id.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// Every edge between `w` and its complement is a bridge.
    pub fn is_spine(&self, w: VertexSet) -> bool {
        let wc = self.complement(w);
        let bridges = self.bridges();
        self.edges
            .iter()
            .filter(|e| e.joins(w, wc))
            .all(|e| bridges.contains(&e.id))
    }

    /// Contracts every bridge, merging endpoints and adding genus weights.
    /// Merged vertices are named by joining the old names with `+`.
    pub fn contract_bridges(&self) -> Contraction {
        let n = self.vertices.len();
        let bridges = self.bridges();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            if bridges.contains(&e.id) {
                uf.union(e.ends.0, e.ends.1);
            }
        }
        let mut root_to_new = BTreeMap::new();
        let mut vertex_map = vec![0; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (v, slot) in vertex_map.iter_mut().enumerate() {
            let r = uf.find(v);
            let idx = *root_to_new.entry(r).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[idx].push(v);
            *slot = idx;
        }
        let vertices = members
            .iter()
            .map(|vs| Vertex {
                name: vs
                    .iter()
                    .map(|&v| self.vertices[v].name.as_str())
                    .collect::<Vec<_>>()
                    .join("+"),
                genus: vs.iter().map(|&v| self.vertices[v].genus).sum(),
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| !bridges.contains(&e.id))
            .map(|e| Edge {
                id: e.id.clone(),
                ends: (vertex_map[e.ends.0], vertex_map[e.ends.1]),
            })
            .collect();
        Contraction {
            graph: Multigraph { vertices, edges },
            vertex_map,
        }
    }

    /// First Betti number of the induced subgraph on `w` (loops included).
    pub fn betti_number(&self, w: VertexSet) -> usize {
        let edges = self.edges.iter().filter(|e| e.inside(w)).count();
        edges + self.components_of(w).len() - w.len()
    }

    /// Arithmetic genus of the subcurve on `w`: the genus weights of `w`
    /// plus the first Betti number of the induced subgraph.
    pub fn subcurve_genus(&self, w: VertexSet) -> Result<i64> {
        if w.is_empty() {
            return Err(Error::EmptySet);
        }
        let weights: i64 = w.iter().map(|v| i64::from(self.vertices[v].genus)).sum();
        Ok(weights + self.betti_number(w) as i64)
    }

    /// Genus of the whole graph.
    pub fn total_genus(&self) -> Result<i64> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        self.subcurve_genus(self.all_vertices())
    }
}

fn fresh_id(original: &Multigraph, g: &Multigraph, base: String) -> String {
    let mut id = base;
    while original.edges.iter().any(|e| e.id == id) || g.edges.iter().any(|e| e.id == id) {
        id.push('\'');
    }
    id
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
