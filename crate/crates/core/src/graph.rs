//! Undirected simple graphs on at most [`MAX_VERTICES`] vertices, stored as one
//! fixed-width bitset row per vertex. Rows never allocate, so adjacency tests,
//! neighborhood intersections and degree counts are straight word operations.
//! Graphs are assembled through [`GraphBuilder`] and then frozen; everything
//! downstream (detectors, search, constructions) reads frozen [`Graph`]s only,
//! which makes shared read-only traversal safe across threads.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Hard capacity of the fixed-width adjacency rows.
pub const MAX_VERTICES: usize = 512;

const WORDS: usize = MAX_VERTICES / 64;

/// Set of vertex ids below [`MAX_VERTICES`], as a fixed multi-word bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { words: [0; WORDS] };

    /// Set containing `0..n`.
    pub fn below(n: u16) -> VertexSet {
        debug_assert!(n as usize <= MAX_VERTICES);
        let mut s = VertexSet::EMPTY;
        let full = (n as usize) >> 6;
        for w in &mut s.words[..full] {
            *w = !0;
        }
        if n & 63 != 0 {
            s.words[full] = (1u64 << (n & 63)) - 1;
        }
        s
    }

    #[inline(always)]
    pub fn insert(&mut self, v: u16) {
        debug_assert!((v as usize) < MAX_VERTICES);
        self.words[v as usize >> 6] |= 1u64 << (v & 63);
    }

    #[inline(always)]
    pub fn remove(&mut self, v: u16) {
        debug_assert!((v as usize) < MAX_VERTICES);
        self.words[v as usize >> 6] &= !(1u64 << (v & 63));
    }

    #[inline(always)]
    pub fn contains(&self, v: u16) -> bool {
        debug_assert!((v as usize) < MAX_VERTICES);
        self.words[v as usize >> 6] >> (v & 63) & 1 != 0
    }

    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<u16> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((i * 64 + w.trailing_zeros() as usize) as u16);
            }
        }
        None
    }

    #[inline]
    pub fn union_with(&mut self, other: &VertexSet) {
        for i in 0..WORDS {
            self.words[i] |= other.words[i];
        }
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &VertexSet) {
        for i in 0..WORDS {
            self.words[i] &= other.words[i];
        }
    }

    #[inline]
    pub fn subtract(&mut self, other: &VertexSet) {
        for i in 0..WORDS {
            self.words[i] &= !other.words[i];
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        out.intersect_with(other);
        out
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Lowest 64 bits; valid as the whole set when all members are below 64.
    #[inline(always)]
    pub fn word0(&self) -> u64 {
        self.words[0]
    }

    pub fn iter(&self) -> SetIter<'_> {
        SetIter { set: self, word: 0, bits: self.words[0] }
    }
}

impl FromIterator<u16> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u16>>(iter: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct SetIter<'a> {
    set: &'a VertexSet,
    word: usize,
    bits: u64,
}

impl Iterator for SetIter<'_> {
    type Item = u16;

    fn next(&mut self) -> Option<u16> {
        while self.bits == 0 {
            self.word += 1;
            if self.word >= WORDS {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
        let low = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some((self.word * 64 + low as usize) as u16)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = u16;
    type IntoIter = SetIter<'a>;

    fn into_iter(self) -> SetIter<'a> {
        self.iter()
    }
}

/// Frozen simple graph. Construct through [`GraphBuilder`].
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: u16,
    adj: Vec<VertexSet>,
    edges: u32,
}

impl Graph {
    /// Graph with no edges on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        Ok(GraphBuilder::new(n)?.freeze())
    }

    /// Graph from an explicit edge list; rejects loops, out-of-range ids and
    /// oversized `n`. Duplicate edges are fine.
    pub fn from_edges(n: usize, edges: &[(u16, u16)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.freeze())
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        for u in 0..n as u16 {
            for v in u + 1..n as u16 {
                b.add_edge(u, v)?;
            }
        }
        Ok(b.freeze())
    }

    #[inline(always)]
    pub fn n(&self) -> u16 {
        self.n
    }

    #[inline(always)]
    pub fn edge_count(&self) -> u32 {
        self.edges
    }

    #[inline(always)]
    pub fn has_edge(&self, u: u16, v: u16) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u as usize].contains(v)
    }

    #[inline(always)]
    pub fn degree(&self, v: u16) -> u32 {
        debug_assert!(v < self.n);
        self.adj[v as usize].len()
    }

    #[inline(always)]
    pub fn neighbors(&self, v: u16) -> &VertexSet {
        debug_assert!(v < self.n);
        &self.adj[v as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = u16> {
        0..self.n
    }

    /// Edges as ordered pairs `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (u16, u16)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u as usize]
                .iter()
                .skip_while(move |&v| v <= u)
                .map(move |v| (u, v))
        })
    }

    pub fn max_degree(&self) -> u32 {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Vertices adjacent to every member of `s`. Errors on an empty `s`; the
    /// result is a plain intersection of neighborhoods, members of `s` are not
    /// excluded specially (a vertex of `s` adjacent to all others can appear).
    pub fn common_neighbors(&self, s: &VertexSet) -> Result<VertexSet> {
        let mut iter = s.iter();
        let first = iter.next().ok_or(Error::EmptySet)?;
        if first >= self.n {
            return Err(Error::VertexOutOfRange { v: first as u32, n: self.n as u32 });
        }
        let mut out = self.adj[first as usize];
        for v in iter {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { v: v as u32, n: self.n as u32 });
            }
            out.intersect_with(&self.adj[v as usize]);
        }
        Ok(out)
    }

    /// Common neighborhood of an (unchecked) vertex pair; hot path for the
    /// triangle and wheel detectors.
    #[inline(always)]
    pub fn common_pair(&self, u: u16, v: u16) -> VertexSet {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u as usize].intersection(&self.adj[v as usize])
    }

    /// Induced subgraph on `keep`, reindexed densely in increasing id order.
    /// Returns the subgraph and the map from new ids back to original ids.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<u16>) {
        let old_ids: Vec<u16> = keep.iter().filter(|&v| v < self.n).collect();
        let mut b = GraphBuilder::new(old_ids.len()).expect("induced subgraph within capacity");
        for (new_u, &old_u) in old_ids.iter().enumerate() {
            for (new_v, &old_v) in old_ids.iter().enumerate().skip(new_u + 1) {
                if self.has_edge(old_u, old_v) {
                    b.add_edge(new_u as u16, new_v as u16).expect("ids in range");
                }
            }
        }
        (b.freeze(), old_ids)
    }

    /// Structural sanity: symmetric rows, no loops, no bits at or above `n`,
    /// and the cached edge count matching the rows. Debug/test aid.
    pub fn is_consistent(&self) -> bool {
        let mut bits = 0u64;
        for u in 0..self.n {
            let row = &self.adj[u as usize];
            if row.contains(u) {
                return false;
            }
            for v in row.iter() {
                if v >= self.n || !self.adj[v as usize].contains(u) {
                    return false;
                }
            }
            bits += row.len() as u64;
        }
        bits == 2 * self.edges as u64
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, e={})", self.n, self.edges)
    }
}

/// Mutable assembly stage for [`Graph`].
#[derive(Clone)]
pub struct GraphBuilder {
    n: u16,
    adj: Vec<VertexSet>,
    edges: u32,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<GraphBuilder> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n });
        }
        Ok(GraphBuilder { n: n as u16, adj: vec![VertexSet::EMPTY; n], edges: 0 })
    }

    #[inline(always)]
    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn edge_count(&self) -> u32 {
        self.edges
    }

    fn check_pair(&self, u: u16, v: u16) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop { v: u as u32 });
        }
        let n = self.n;
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { v: x as u32, n: n as u32 });
            }
        }
        Ok(())
    }

    /// Adds `uv`; returns whether the edge is new. Re-adding is a no-op, so the
    /// edge count stays consistent with the rows.
    pub fn add_edge(&mut self, u: u16, v: u16) -> Result<bool> {
        self.check_pair(u, v)?;
        if self.adj[u as usize].contains(v) {
            return Ok(false);
        }
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
        self.edges += 1;
        Ok(true)
    }

    /// Removes `uv`; returns whether the edge existed.
    pub fn remove_edge(&mut self, u: u16, v: u16) -> Result<bool> {
        self.check_pair(u, v)?;
        if !self.adj[u as usize].contains(v) {
            return Ok(false);
        }
        self.adj[u as usize].remove(v);
        self.adj[v as usize].remove(u);
        self.edges -= 1;
        Ok(true)
    }

    pub fn has_edge(&self, u: u16, v: u16) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u as usize].contains(v)
    }

    pub fn neighbors(&self, v: u16) -> &VertexSet {
        debug_assert!(v < self.n);
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u16) -> u32 {
        debug_assert!(v < self.n);
        self.adj[v as usize].len()
    }

    pub fn freeze(self) -> Graph {
        let g = Graph { n: self.n, adj: self.adj, edges: self.edges };
        debug_assert!(g.is_consistent());
        g
    }
}
