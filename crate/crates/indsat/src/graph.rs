//! Loop-free undirected graphs on up to 64 vertices, with Cayley and
//! circulant constructions, edge toggling, neighborhood algebra, and exact
//! induced-path detection.
//!
//! Adjacency rows are `u64` bitsets, so neighborhood operations are single
//! word operations and the induced-path condition "the candidate sees exactly
//! the current tip of the path" is one mask compare.

use crate::gf2k::{BinaryField, FieldElement};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::VecDeque;
use thiserror::Error;

/// Adjacency rows are machine words; larger graphs are out of scope.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph on {n} vertices exceeds the {MAX_VERTICES}-vertex limit")]
    TooManyVertices { n: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("vertex pair endpoints must differ, got ({v}, {v})")]
    LoopPair { v: usize },
    #[error("duplicate vertex {v} in vertex set")]
    DuplicateVertex { v: usize },
    #[error("connection set must not contain 0")]
    ZeroInConnection,
    #[error("connection element {mask} out of range for field of order {order}")]
    ConnectionOutOfRange { mask: u32, order: u32 },
    #[error("connection set not closed under negation: contains {s} but not {neg} (mod {m})")]
    AsymmetricConnection { s: usize, neg: usize, m: usize },
    #[error("induced path length must be at least 2, got {n}")]
    PathTooShort { n: usize },
    #[error("pair ({u}, {v}) is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },
}

#[inline(always)]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Decodes a vertex bitset into a sorted vertex list.
pub fn mask_to_vertices(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut t = mask;
    while t != 0 {
        out.push(t.trailing_zeros() as usize);
        t &= t - 1;
    }
    out
}

// ============================================================================
// VertexPair and PathWitness
// ============================================================================

/// An unordered pair of distinct vertices, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPair {
    u: usize,
    v: usize,
}

impl VertexPair {
    pub fn new(a: usize, b: usize) -> Result<VertexPair, GraphError> {
        if a == b {
            return Err(GraphError::LoopPair { v: a });
        }
        Ok(VertexPair {
            u: a.min(b),
            v: a.max(b),
        })
    }

    #[inline]
    pub fn u(&self) -> usize {
        self.u
    }

    #[inline]
    pub fn v(&self) -> usize {
        self.v
    }

    /// Both endpoints as a bitset.
    #[inline]
    pub fn mask(&self) -> u64 {
        bit(self.u) | bit(self.v)
    }
}

impl Serialize for VertexPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.u, self.v).serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (a, b) = <(usize, usize)>::deserialize(d)?;
        VertexPair::new(a, b).map_err(D::Error::custom)
    }
}

/// An ordered vertex sequence forming an induced path in some graph.
///
/// Witnesses are produced by the search routines and can be re-validated
/// against any graph with [`Graph::is_induced_path`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathWitness {
    vertices: Vec<usize>,
}

impl PathWitness {
    pub(crate) fn new(vertices: Vec<usize>) -> PathWitness {
        PathWitness { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }
}

// ============================================================================
// Graph
// ============================================================================

/// A loop-free undirected graph on at most 64 vertices.
///
/// Immutable by convention: every operation that changes structure returns a
/// new graph, so values can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = if n == 64 { u64::MAX } else { bit(n) - 1 };
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    /// The path 0 - 1 - ... - (n-1).
    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.adj[v - 1] |= bit(v);
            g.adj[v] |= bit(v - 1);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange { v: a, n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { v: b, n });
            }
            if a == b {
                return Err(GraphError::LoopPair { v: a });
            }
            g.adj[a] |= bit(b);
            g.adj[b] |= bit(a);
        }
        Ok(g)
    }

    #[inline]
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Bitset of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u] & bit(v) != 0
    }

    /// Neighborhood of `v` as a bitset.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<VertexPair> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push(VertexPair { u, v });
                }
            }
        }
        out
    }

    pub fn non_edges(&self) -> Vec<VertexPair> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    out.push(VertexPair { u, v });
                }
            }
        }
        out
    }

    /// All `C(n, 2)` pairs in lexicographic order.
    pub fn all_pairs(&self) -> Vec<VertexPair> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                out.push(VertexPair { u, v });
            }
        }
        out
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| mask_to_vertices(self.adj[v])).collect()
    }

    /// Returns the graph with the adjacency of `e` flipped: `G_e`, removing
    /// or adding `e` depending on whether it is present. An involution.
    ///
    /// Both endpoints must be vertices of the graph.
    pub fn toggle_edge(&self, e: VertexPair) -> Graph {
        assert!(e.v < self.n, "pair ({}, {}) out of range", e.u, e.v);
        let mut g = self.clone();
        g.adj[e.u] ^= bit(e.v);
        g.adj[e.v] ^= bit(e.u);
        g
    }

    /// Vertices adjacent to neither `u` nor `v`, excluding `u` and `v`
    /// themselves, as a bitset.
    pub fn common_nonneighbors(&self, u: usize, v: usize) -> Result<u64, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::LoopPair { v: u });
        }
        Ok(self.vertex_mask() & !self.adj[u] & !self.adj[v] & !bit(u) & !bit(v))
    }

    /// Subgraph induced on `w`: vertex `i` of the result corresponds to
    /// `w[i]`, keeping all edges of the host among `w`.
    pub fn induced_subgraph(&self, w: &[usize]) -> Result<Graph, GraphError> {
        let mut seen = 0u64;
        for &v in w {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { v, n: self.n });
            }
            if seen & bit(v) != 0 {
                return Err(GraphError::DuplicateVertex { v });
            }
            seen |= bit(v);
        }
        let mut g = Graph::empty(w.len())?;
        for (i, &a) in w.iter().enumerate() {
            for (j, &b) in w.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.adj[i] |= bit(j);
                    g.adj[j] |= bit(i);
                }
            }
        }
        Ok(g)
    }

    /// True iff `seq` is an induced path: distinct in-range vertices,
    /// consecutive pairs adjacent, non-consecutive pairs non-adjacent.
    /// Malformed sequences (out of range, repeats, empty) return false.
    pub fn is_induced_path(&self, seq: &[usize]) -> bool {
        if seq.is_empty() {
            return false;
        }
        let mut seen = 0u64;
        for &v in seq {
            if v >= self.n || seen & bit(v) != 0 {
                return false;
            }
            seen |= bit(v);
        }
        for i in 0..seq.len() {
            for j in (i + 1)..seq.len() {
                let adjacent = self.has_edge(seq[i], seq[j]);
                if (j == i + 1) != adjacent {
                    return false;
                }
            }
        }
        true
    }

    /// Finds some induced path on `n` vertices, or proves there is none.
    ///
    /// Depth-first extension of partial induced paths: a candidate `w` may be
    /// appended iff its neighborhood meets the path exactly in the current
    /// tip. The search is exhaustive, so `None` is a proof of absence. No
    /// canonical witness is promised, only a valid one.
    pub fn find_induced_path(&self, n: usize) -> Result<Option<PathWitness>, GraphError> {
        if n < 2 {
            return Err(GraphError::PathTooShort { n });
        }
        if n > self.n {
            return Ok(None);
        }
        let mut path = Vec::with_capacity(n);
        for start in 0..self.n {
            path.push(start);
            if self.extend_tail(&mut path, bit(start), n) {
                return Ok(Some(PathWitness::new(path)));
            }
            path.pop();
        }
        Ok(None)
    }

    fn extend_tail(&self, path: &mut Vec<usize>, path_mask: u64, n: usize) -> bool {
        if path.len() == n {
            return true;
        }
        let tip = *path.last().unwrap();
        let mut cands = self.adj[tip] & !path_mask;
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if self.adj[w] & path_mask == bit(tip) {
                path.push(w);
                if self.extend_tail(path, path_mask | bit(w), n) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }

    /// Finds an induced path on `n` vertices that traverses the edge `e`,
    /// i.e. whose consecutive-pair set includes `e`. Exhaustive.
    ///
    /// Anchors the pair and grows both ends; each split of the remaining
    /// `n - 2` vertices between the two sides is tried. Searching only the
    /// orientation `u` before `v` is enough, since the reversal of any
    /// witness is also a witness.
    pub fn find_induced_path_through(
        &self,
        e: VertexPair,
        n: usize,
    ) -> Result<Option<PathWitness>, GraphError> {
        if n < 2 {
            return Err(GraphError::PathTooShort { n });
        }
        if e.v >= self.n {
            return Err(GraphError::VertexOutOfRange { v: e.v, n: self.n });
        }
        if !self.has_edge(e.u, e.v) {
            return Err(GraphError::NotAnEdge { u: e.u, v: e.v });
        }
        if n > self.n {
            return Ok(None);
        }
        for before in 0..=(n - 2) {
            let after = n - 2 - before;
            let mut path = VecDeque::with_capacity(n);
            path.push_back(e.u);
            path.push_back(e.v);
            if self.grow_back_then_front(&mut path, e.mask(), after, before, None) {
                return Ok(Some(PathWitness::new(path.into_iter().collect())));
            }
        }
        Ok(None)
    }

    /// Finds an induced path on `n` vertices containing both `u` and `v`
    /// (at any positions). Exhaustive.
    ///
    /// This is the witness search for a removed edge: an induced path created
    /// by deleting `uv` must contain both endpoints, necessarily as a
    /// non-consecutive pair.
    pub fn find_induced_path_containing(
        &self,
        u: usize,
        v: usize,
        n: usize,
    ) -> Result<Option<PathWitness>, GraphError> {
        if n < 2 {
            return Err(GraphError::PathTooShort { n });
        }
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::LoopPair { v: u });
        }
        if n > self.n {
            return Ok(None);
        }
        for after in 0..=(n - 1) {
            let before = n - 1 - after;
            let mut path = VecDeque::with_capacity(n);
            path.push_back(u);
            if self.grow_back_then_front(&mut path, bit(u), after, before, Some(v)) {
                return Ok(Some(PathWitness::new(path.into_iter().collect())));
            }
        }
        Ok(None)
    }

    /// Two-phase induced-path growth: extend at the back `after` more times,
    /// then at the front `before` more times. If `required` is set, prunes
    /// branches in which that vertex can no longer join the path and demands
    /// it is present on completion.
    fn grow_back_then_front(
        &self,
        path: &mut VecDeque<usize>,
        path_mask: u64,
        after: usize,
        before: usize,
        required: Option<usize>,
    ) -> bool {
        if let Some(r) = required {
            if path_mask & bit(r) == 0 {
                if after + before == 0 {
                    return false;
                }
                // r can still join only at a tip whose side keeps growing and
                // only if it sees no settled path vertex.
                let back = *path.back().unwrap();
                let front = *path.front().unwrap();
                let can_back = after > 0 && self.adj[r] & (path_mask & !bit(back)) == 0;
                let can_front = before > 0 && self.adj[r] & (path_mask & !bit(front)) == 0;
                if !can_back && !can_front {
                    return false;
                }
            }
        }
        if after > 0 {
            let tip = *path.back().unwrap();
            let mut cands = self.adj[tip] & !path_mask;
            while cands != 0 {
                let w = cands.trailing_zeros() as usize;
                cands &= cands - 1;
                if self.adj[w] & path_mask == bit(tip) {
                    path.push_back(w);
                    if self.grow_back_then_front(path, path_mask | bit(w), after - 1, before, required)
                    {
                        return true;
                    }
                    path.pop_back();
                }
            }
            return false;
        }
        if before > 0 {
            let tip = *path.front().unwrap();
            let mut cands = self.adj[tip] & !path_mask;
            while cands != 0 {
                let w = cands.trailing_zeros() as usize;
                cands &= cands - 1;
                if self.adj[w] & path_mask == bit(tip) {
                    path.push_front(w);
                    if self.grow_back_then_front(path, path_mask | bit(w), 0, before - 1, required) {
                        return true;
                    }
                    path.pop_front();
                }
            }
            return false;
        }
        match required {
            Some(r) => path_mask & bit(r) != 0,
            None => true,
        }
    }
}

// ============================================================================
// Cayley and circulant constructions
// ============================================================================

/// Cayley graph of the additive group of `field` with the given connection
/// set: vertex indices are element masks, and `u ~ v` iff `u + v` lies in the
/// connection set. In characteristic 2 every set is closed under negation, so
/// only `0` is excluded.
///
/// The result is `|connection|`-regular and vertex-transitive.
pub fn cayley_graph(
    field: &BinaryField,
    connection: &[FieldElement],
) -> Result<Graph, GraphError> {
    let order = field.order() as usize;
    if order > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n: order });
    }
    let mut conn_mask = 0u64;
    for &c in connection {
        if c.is_zero() {
            return Err(GraphError::ZeroInConnection);
        }
        if c.mask() as u32 >= field.order() {
            return Err(GraphError::ConnectionOutOfRange {
                mask: c.mask() as u32,
                order: field.order(),
            });
        }
        conn_mask |= bit(c.mask() as usize);
    }
    let mut g = Graph::empty(order)?;
    for u in 0..order {
        for v in (u + 1)..order {
            if conn_mask & bit(u ^ v) != 0 {
                g.adj[u] |= bit(v);
                g.adj[v] |= bit(u);
            }
        }
    }
    Ok(g)
}

/// Circulant graph on `Z_m`: `u ~ v` iff `(u - v) mod m` lies in the
/// connection set, which must exclude 0 and be closed under negation.
pub fn circulant_graph(m: usize, connection: &[usize]) -> Result<Graph, GraphError> {
    if m > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n: m });
    }
    if m == 0 {
        // no nonzero residues exist, so only the empty connection set is valid
        if !connection.is_empty() {
            return Err(GraphError::ZeroInConnection);
        }
        return Graph::empty(0);
    }
    let mut in_set = vec![false; m];
    for &s in connection {
        if s % m == 0 {
            return Err(GraphError::ZeroInConnection);
        }
        in_set[s % m] = true;
    }
    for s in 1..m {
        if in_set[s] && !in_set[m - s] {
            return Err(GraphError::AsymmetricConnection {
                s,
                neg: m - s,
                m,
            });
        }
    }
    let mut g = Graph::empty(m)?;
    for u in 0..m {
        for v in (u + 1)..m {
            if in_set[(v - u) % m] {
                g.adj[u] |= bit(v);
                g.adj[v] |= bit(u);
            }
        }
    }
    Ok(g)
}

// ============================================================================
// Tests
// ============================================================================
