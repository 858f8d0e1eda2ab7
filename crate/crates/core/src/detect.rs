//! Subgraph containment engines: a generic backtracking embedder, specialized
//! detectors for the ten-vertex pyramid and for 7-wheels, fixed-length cycle
//! search, the per-edge triangle-count predicate, and the
//! distinct-representatives matching that grows a wheel into a full pyramid
//! witness.
//!
//! Containment is non-induced throughout: a pattern is "contained" when an
//! injective vertex map sends every pattern edge to a host edge, extra host
//! edges welcome.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet, MAX_VERTICES};
use crate::pyramids;

/// Adjacency access shared by frozen graphs and builders, so detectors can
/// run on a mid-mutation search state without a freeze round-trip.
pub(crate) trait Adj {
    fn order(&self) -> u16;
    fn deg(&self, v: u16) -> u32;
    fn nbrs(&self, v: u16) -> &VertexSet;
    fn adjacent(&self, u: u16, v: u16) -> bool;

    fn common(&self, u: u16, v: u16) -> VertexSet {
        self.nbrs(u).intersection(self.nbrs(v))
    }
}

impl Adj for Graph {
    fn order(&self) -> u16 {
        self.n()
    }
    fn deg(&self, v: u16) -> u32 {
        self.degree(v)
    }
    fn nbrs(&self, v: u16) -> &VertexSet {
        self.neighbors(v)
    }
    fn adjacent(&self, u: u16, v: u16) -> bool {
        self.has_edge(u, v)
    }
}

impl Adj for GraphBuilder {
    fn order(&self) -> u16 {
        self.n()
    }
    fn deg(&self, v: u16) -> u32 {
        self.degree(v)
    }
    fn nbrs(&self, v: u16) -> &VertexSet {
        self.neighbors(v)
    }
    fn adjacent(&self, u: u16, v: u16) -> bool {
        self.has_edge(u, v)
    }
}

/// An injective vertex map certifying pattern-in-host containment;
/// `map[p]` is the host vertex carrying pattern vertex `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<u16>,
}

impl Embedding {
    /// Checks injectivity and that every pattern edge lands on a host edge.
    pub fn validate(&self, host: &Graph, pattern: &Graph) -> Result<()> {
        if self.map.len() != pattern.n() as usize {
            return Err(Error::InvalidWitness { what: "embedding size differs from pattern order" });
        }
        let mut seen = VertexSet::EMPTY;
        for &h in &self.map {
            if h >= host.n() {
                return Err(Error::InvalidWitness { what: "embedding image out of host range" });
            }
            if seen.contains(h) {
                return Err(Error::InvalidWitness { what: "embedding is not injective" });
            }
            seen.insert(h);
        }
        for (u, v) in pattern.edges() {
            if !host.has_edge(self.map[u as usize], self.map[v as usize]) {
                return Err(Error::InvalidWitness { what: "pattern edge not preserved" });
            }
        }
        Ok(())
    }
}

/// A 7-wheel inside a host graph: a hub adjacent to all six rim vertices,
/// with the rim in cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WheelWitness {
    pub hub: u16,
    pub rim: [u16; 6],
}

impl WheelWitness {
    /// The seven wheel vertices as a set.
    pub fn vertex_set(&self) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        s.insert(self.hub);
        for &r in &self.rim {
            s.insert(r);
        }
        s
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.hub >= g.n() || self.rim.iter().any(|&r| r >= g.n()) {
            return Err(Error::InvalidWitness { what: "wheel vertex out of range" });
        }
        if self.vertex_set().len() != 7 {
            return Err(Error::InvalidWitness { what: "wheel vertices not distinct" });
        }
        for i in 0..6 {
            if !g.has_edge(self.hub, self.rim[i]) {
                return Err(Error::InvalidWitness { what: "hub not adjacent to rim" });
            }
            if !g.has_edge(self.rim[i], self.rim[(i + 1) % 6]) {
                return Err(Error::InvalidWitness { what: "rim is not a 6-cycle" });
            }
        }
        Ok(())
    }
}

/// A full ten-vertex pyramid witness: a 7-wheel plus three distinct external
/// apexes, apex `j` adjacent to both ends of rim edge `(rim[2j], rim[2j+1])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TP3Witness {
    pub wheel: WheelWitness,
    pub apexes: [u16; 3],
}

impl TP3Witness {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.wheel.validate(g)?;
        let wheel_set = self.wheel.vertex_set();
        let mut seen = VertexSet::EMPTY;
        for (j, &a) in self.apexes.iter().enumerate() {
            if a >= g.n() {
                return Err(Error::InvalidWitness { what: "apex out of range" });
            }
            if wheel_set.contains(a) || seen.contains(a) {
                return Err(Error::InvalidWitness { what: "apexes must be distinct and outside the wheel" });
            }
            seen.insert(a);
            if !g.has_edge(a, self.wheel.rim[2 * j]) || !g.has_edge(a, self.wheel.rim[2 * j + 1]) {
                return Err(Error::InvalidWitness { what: "apex not adjacent to its rim edge" });
            }
        }
        Ok(())
    }
}

/// Search order for the embedder, optionally seeded with forced first
/// positions: start at the highest-degree pattern vertex, then repeatedly
/// append the vertex with the most already-ordered neighbors (ties: higher
/// degree, then lower id). Keeps the mapped region connected so candidate
/// sets stay tight.
fn embed_order_from(pattern: &Graph, seeds: &[u16]) -> Vec<u16> {
    let n = pattern.n() as usize;
    let mut chosen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &s in seeds {
        chosen[s as usize] = true;
        order.push(s);
    }
    while order.len() < n {
        let mut best = None;
        for v in 0..n as u16 {
            if chosen[v as usize] {
                continue;
            }
            let anchored = pattern.neighbors(v).iter().filter(|&u| chosen[u as usize]).count() as u32;
            let key = (anchored, pattern.degree(v));
            match best {
                Some((bk, _)) if bk >= key => {}
                _ => best = Some((key, v)),
            }
        }
        let (_, v) = best.expect("some vertex is still unchosen");
        chosen[v as usize] = true;
        order.push(v);
    }
    order
}

fn embed_order(pattern: &Graph) -> Vec<u16> {
    embed_order_from(pattern, &[])
}

fn embed_search<A: Adj>(
    host: &A,
    pattern: &Graph,
    order: &[u16],
    cand: &mut Vec<Vec<VertexSet>>,
    map: &mut [u16],
    depth: usize,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let mine = cand[depth][depth];
    for h in mine.iter() {
        map[p as usize] = h;
        let mut feasible = true;
        for j in depth + 1..order.len() {
            let mut c = cand[depth][j];
            c.remove(h);
            if pattern.has_edge(p, order[j]) {
                c.intersect_with(host.nbrs(h));
            }
            if c.is_empty() {
                feasible = false;
                break;
            }
            cand[depth + 1][j] = c;
        }
        if feasible && embed_search(host, pattern, order, cand, map, depth + 1) {
            return true;
        }
    }
    false
}

fn contains_in<A: Adj>(host: &A, pattern: &Graph) -> Option<Embedding> {
    let pn = pattern.n() as usize;
    if pn == 0 {
        return Some(Embedding { map: Vec::new() });
    }
    if pattern.n() > host.order() {
        return None;
    }
    let order = embed_order(pattern);
    let mut cand = vec![vec![VertexSet::EMPTY; pn]; pn + 1];
    for (pos, &p) in order.iter().enumerate() {
        let need = pattern.degree(p);
        let mut s = VertexSet::EMPTY;
        for h in 0..host.order() {
            if host.deg(h) >= need {
                s.insert(h);
            }
        }
        if s.is_empty() {
            return None;
        }
        cand[0][pos] = s;
    }
    let mut map = vec![u16::MAX; pn];
    if embed_search(host, pattern, &order, &mut cand, &mut map, 0) {
        Some(Embedding { map })
    } else {
        None
    }
}

/// Generic backtracking containment: returns an embedding of `pattern` into
/// `host` iff one exists. Candidate sets are narrowed by host-degree
/// feasibility up front and by forward checking along pattern edges.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    let emb = contains_in(host, pattern);
    debug_assert!(emb.as_ref().is_none_or(|e| e.validate(host, pattern).is_ok()));
    emb
}

/// Visits each 6-cycle of the subgraph induced on `nb` (ascending global ids,
/// at most 64 of them) exactly once: least local index first, and of the two
/// directions the one whose second vertex is smaller. The visitor gets global
/// ids in cyclic order and returns true to stop early.
fn each_local_six_cycle<A: Adj, F: FnMut([u16; 6]) -> bool>(g: &A, nb: &[u16], f: &mut F) -> bool {
    let d = nb.len();
    debug_assert!(d <= 64);
    let mut ladj = [0u64; 64];
    for (i, &u) in nb.iter().enumerate() {
        let row = g.nbrs(u);
        let mut m = 0u64;
        for (j, &v) in nb.iter().enumerate() {
            if i != j && row.contains(v) {
                m |= 1 << j;
            }
        }
        ladj[i] = m;
    }
    let gt = |v: usize| -> u64 {
        if v + 1 >= 64 {
            0
        } else {
            !0u64 << (v + 1)
        }
    };
    for s in 0..d.saturating_sub(5) {
        let above = gt(s);
        let mut m1 = ladj[s] & above;
        while m1 != 0 {
            let v1 = m1.trailing_zeros() as usize;
            m1 &= m1 - 1;
            let vis1 = 1u64 << v1;
            let mut m2 = ladj[v1] & above & !vis1;
            while m2 != 0 {
                let v2 = m2.trailing_zeros() as usize;
                m2 &= m2 - 1;
                let vis2 = vis1 | 1 << v2;
                let mut m3 = ladj[v2] & above & !vis2;
                while m3 != 0 {
                    let v3 = m3.trailing_zeros() as usize;
                    m3 &= m3 - 1;
                    let vis3 = vis2 | 1 << v3;
                    let mut m4 = ladj[v3] & above & !vis3;
                    while m4 != 0 {
                        let v4 = m4.trailing_zeros() as usize;
                        m4 &= m4 - 1;
                        let vis4 = vis3 | 1 << v4;
                        let mut m5 = ladj[v4] & ladj[s] & above & !vis4 & gt(v1);
                        while m5 != 0 {
                            let v5 = m5.trailing_zeros() as usize;
                            m5 &= m5 - 1;
                            if f([nb[s], nb[v1], nb[v2], nb[v3], nb[v4], nb[v5]]) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

/// Visits every 6-cycle with all vertices in `allowed`, each exactly once
/// (least vertex first, smaller-second-vertex direction), with no size limit.
fn each_six_cycle_in<A: Adj, F: FnMut([u16; 6]) -> bool>(g: &A, allowed: &VertexSet, f: &mut F) -> bool {
    fn dfs<A: Adj, F: FnMut([u16; 6]) -> bool>(
        g: &A,
        avail: &VertexSet,
        path: &mut [u16; 6],
        visited: VertexSet,
        depth: usize,
        f: &mut F,
    ) -> bool {
        let s = path[0];
        if depth == 5 {
            let mut last = *g.nbrs(path[4]);
            last.intersect_with(g.nbrs(s));
            last.intersect_with(avail);
            last.subtract(&visited);
            // direction dedup: last vertex must exceed the second
            last.subtract(&VertexSet::below(path[1] + 1));
            for v in last.iter() {
                path[5] = v;
                if f(*path) {
                    return true;
                }
            }
            return false;
        }
        let mut next = *g.nbrs(path[depth - 1]);
        next.intersect_with(avail);
        next.subtract(&visited);
        for v in next.iter() {
            path[depth] = v;
            let mut vis = visited;
            vis.insert(v);
            if dfs(g, avail, path, vis, depth + 1, f) {
                return true;
            }
        }
        false
    }

    for s in allowed.iter() {
        let mut avail = *allowed;
        avail.subtract(&VertexSet::below(s + 1));
        let mut path = [s; 6];
        let mut visited = VertexSet::EMPTY;
        visited.insert(s);
        if dfs(g, &avail, &mut path, visited, 1, f) {
            return true;
        }
    }
    false
}

/// Injective representative choice over a family of sets via augmenting-path
/// matching; `None` exactly when some subfamily is smaller than itself
/// (Hall's condition fails). An empty family gets the empty assignment.
pub fn distinct_representatives(sets: &[VertexSet]) -> Option<Vec<u16>> {
    if sets.len() > MAX_VERTICES {
        return None; // more sets than possible elements
    }
    fn augment(
        sets: &[VertexSet],
        i: usize,
        visited: &mut VertexSet,
        owner: &mut [u16],
        rep: &mut [u16],
    ) -> bool {
        for x in sets[i].iter() {
            if visited.contains(x) {
                continue;
            }
            visited.insert(x);
            let o = owner[x as usize];
            if o == u16::MAX || augment(sets, o as usize, visited, owner, rep) {
                owner[x as usize] = i as u16;
                rep[i] = x;
                return true;
            }
        }
        false
    }
    let mut owner = [u16::MAX; MAX_VERTICES];
    let mut rep = vec![u16::MAX; sets.len()];
    for i in 0..sets.len() {
        let mut visited = VertexSet::EMPTY;
        if !augment(sets, i, &mut visited, &mut owner[..], &mut rep) {
            return None;
        }
    }
    Some(rep)
}

/// Tries to complete the wheel `(hub, rim)` into a pyramid witness: for both
/// alternating rim-edge triples, collect each edge's common neighbors outside
/// the wheel and look for distinct representatives. On success the rim is
/// rotated so apex `j` sits over `(rim[2j], rim[2j+1])`.
fn try_extend<A: Adj>(g: &A, hub: u16, rim: [u16; 6]) -> Option<TP3Witness> {
    let mut wheel_set = VertexSet::EMPTY;
    wheel_set.insert(hub);
    for &r in &rim {
        wheel_set.insert(r);
    }
    for shift in 0..2usize {
        let mut sets = [VertexSet::EMPTY; 3];
        let mut feasible = true;
        for (j, set) in sets.iter_mut().enumerate() {
            let a = rim[(shift + 2 * j) % 6];
            let b = rim[(shift + 2 * j + 1) % 6];
            let mut s = g.common(a, b);
            s.subtract(&wheel_set);
            if s.is_empty() {
                feasible = false;
                break;
            }
            *set = s;
        }
        if !feasible {
            continue;
        }
        if let Some(reps) = distinct_representatives(&sets) {
            let mut rotated = [0u16; 6];
            for (i, slot) in rotated.iter_mut().enumerate() {
                *slot = rim[(shift + i) % 6];
            }
            let w = TP3Witness {
                wheel: WheelWitness { hub, rim: rotated },
                apexes: [reps[0], reps[1], reps[2]],
            };
            debug_assert!(tp3_witness_ok(&w, g));
            return Some(w);
        }
    }
    None
}

/// Structural validity of a pyramid witness against any adjacency source;
/// the `Result`-returning `validate` stays the public face for frozen graphs.
fn tp3_witness_ok<A: Adj>(w: &TP3Witness, g: &A) -> bool {
    let wheel = &w.wheel;
    if wheel.hub >= g.order() || wheel.rim.iter().any(|&r| r >= g.order()) {
        return false;
    }
    if wheel.vertex_set().len() != 7 {
        return false;
    }
    for i in 0..6 {
        if !g.adjacent(wheel.hub, wheel.rim[i]) || !g.adjacent(wheel.rim[i], wheel.rim[(i + 1) % 6]) {
            return false;
        }
    }
    let wheel_set = wheel.vertex_set();
    let mut seen = VertexSet::EMPTY;
    for (j, &a) in w.apexes.iter().enumerate() {
        if a >= g.order() || wheel_set.contains(a) || seen.contains(a) {
            return false;
        }
        seen.insert(a);
        if !g.adjacent(a, wheel.rim[2 * j]) || !g.adjacent(a, wheel.rim[2 * j + 1]) {
            return false;
        }
    }
    true
}

/// Tries both alternating rim-edge triples of a valid wheel and returns the
/// first full pyramid witness; `None` when no apex assignment exists (or the
/// witness itself does not validate).
pub fn extend_wheel_to_tp3(g: &Graph, w: &WheelWitness) -> Option<TP3Witness> {
    if w.validate(g).is_err() {
        return None;
    }
    try_extend(g, w.hub, w.rim)
}

fn witness_from_embedding(emb: &Embedding) -> TP3Witness {
    // The pyramid pattern is its own center wheel; push that wheel through
    // the embedding.
    let c = pyramids::pyramid_center_wheel();
    TP3Witness {
        wheel: WheelWitness {
            hub: emb.map[c.wheel.hub as usize],
            rim: c.wheel.rim.map(|v| emb.map[v as usize]),
        },
        apexes: c.apexes.map(|v| emb.map[v as usize]),
    }
}

/// Specialized ten-vertex-pyramid search. Every copy of the pyramid is a
/// 7-wheel (hub = the unique degree-6 vertex) plus three external apexes over
/// alternating rim edges, so: enumerate hubs of degree ≥ 6, enumerate
/// 6-cycles in each hub's neighborhood, and try to extend each wheel by
/// distinct-representatives matching. Hubs with more than 64 neighbors are
/// skipped in the local pass; if none of the small hubs yields a witness the
/// generic embedder finishes the job.
pub fn find_tp3(g: &Graph) -> Option<TP3Witness> {
    if g.n() < 10 {
        return None;
    }
    let mut skipped_wide_hub = false;
    let mut nb: Vec<u16> = Vec::new();
    for hub in g.vertices() {
        if g.degree(hub) < 6 {
            continue;
        }
        nb.clear();
        nb.extend(g.neighbors(hub).iter());
        if nb.len() > 64 {
            skipped_wide_hub = true;
            continue;
        }
        let mut found = None;
        each_local_six_cycle(g, &nb, &mut |rim| {
            found = try_extend(g, hub, rim);
            found.is_some()
        });
        if found.is_some() {
            return found;
        }
    }
    if skipped_wide_hub {
        let pattern = pyramids::triangular_pyramid(3).expect("three layers fit capacity");
        if let Some(emb) = contains_subgraph(g, &pattern.graph) {
            let w = witness_from_embedding(&emb);
            debug_assert!(w.validate(g).is_ok());
            return Some(w);
        }
    }
    None
}

/// All 7-wheels of `g`, one witness per (hub, rim 6-cycle), rims in canonical
/// orientation (least rim vertex first, smaller-second-vertex direction).
/// The list can be large on dense hosts — every hub contributes one witness
/// per 6-cycle in its neighborhood.
pub fn find_wheels7(g: &Graph) -> Vec<WheelWitness> {
    let mut out = Vec::new();
    let mut nb: Vec<u16> = Vec::new();
    for hub in g.vertices() {
        if g.degree(hub) < 6 {
            continue;
        }
        let push = |out: &mut Vec<WheelWitness>, rim: [u16; 6]| {
            out.push(WheelWitness { hub, rim });
            false
        };
        nb.clear();
        nb.extend(g.neighbors(hub).iter());
        if nb.len() <= 64 {
            each_local_six_cycle(g, &nb, &mut |rim| push(&mut out, rim));
        } else {
            each_six_cycle_in(g, g.neighbors(hub), &mut |rim| push(&mut out, rim));
        }
    }
    out
}

/// A wheel is sparse when all six short rim chords `rim[i]–rim[i+2]` are
/// absent from the host. Rejects invalid witnesses.
pub fn is_sparse_wheel(g: &Graph, w: &WheelWitness) -> Result<bool> {
    w.validate(g)?;
    Ok((0..6).all(|i| !g.has_edge(w.rim[i], w.rim[(i + 2) % 6])))
}

/// Finds a 3-cycle or a 6-cycle, returned as an embedding of the cycle
/// pattern (map[i] = i-th cycle vertex). Other lengths are rejected.
pub fn find_cycle(g: &Graph, m: usize) -> Result<Option<Embedding>> {
    match m {
        3 => {
            for (u, v) in g.edges() {
                if let Some(w) = g.common_pair(u, v).first() {
                    return Ok(Some(Embedding { map: vec![u, v, w] }));
                }
            }
            Ok(None)
        }
        6 => {
            let all = VertexSet::below(g.n());
            let mut found = None;
            each_six_cycle_in(g, &all, &mut |cyc| {
                found = Some(Embedding { map: cyc.to_vec() });
                true
            });
            Ok(found)
        }
        _ => Err(Error::BadArgument { what: "cycle detector supports lengths 3 and 6 only" }),
    }
}

/// Smallest number of triangles through any single edge (the minimum edge
/// codegree). Needs at least one edge.
pub fn min_triangles_per_edge(g: &Graph) -> Result<u32> {
    if g.edge_count() == 0 {
        return Err(Error::Domain { what: "triangle-per-edge minimum needs an edge" });
    }
    let mut best = u32::MAX;
    for (u, v) in g.edges() {
        best = best.min(g.common_pair(u, v).len());
    }
    Ok(best)
}

fn has_triangle_in(g: &Graph, allowed: &VertexSet) -> bool {
    for u in allowed.iter() {
        let mut inner = *g.neighbors(u);
        inner.intersect_with(allowed);
        inner.subtract(&VertexSet::below(u + 1));
        for v in inner.iter() {
            if !g.neighbors(v).intersection(&inner).is_empty() {
                return true;
            }
        }
    }
    false
}

/// Outcome of exhausting all 2-colorings of the four-layer pyramid whose
/// color-1 class is independent: does color 2 always induce a triangle or a
/// 6-cycle?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringClaimReport {
    /// Admissible colorings examined (all of them when the claim holds;
    /// the count up to the first failure otherwise).
    pub colorings_checked: u64,
    pub all_pass: bool,
    /// Color-1 class of the first failing coloring, if any.
    pub counterexample: Option<Vec<u16>>,
}

/// Checks, exhaustively over all 2^15 vertex 2-colorings of the four-layer
/// pyramid with independent color-1 class, that the color-2 class always
/// induces a 3-cycle or a 6-cycle.
pub fn verify_tp4_coloring_claim() -> ColoringClaimReport {
    let p = pyramids::triangular_pyramid(4).expect("four layers fit capacity");
    let g = &p.graph;
    let n = g.n() as usize;
    debug_assert_eq!(n, 15);
    let adj: Vec<u32> = (0..n as u16)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut checked = 0u64;
    for s in 0u32..1 << n {
        let mut independent = true;
        let mut t = s;
        while t != 0 {
            let v = t.trailing_zeros() as usize;
            t &= t - 1;
            if adj[v] & s != 0 {
                independent = false;
                break;
            }
        }
        if !independent {
            continue;
        }
        checked += 1;
        let comp_mask = !s & ((1 << n) - 1);
        let comp = VertexSet::from_iter((0..n as u16).filter(|&v| comp_mask >> v & 1 == 1));
        if has_triangle_in(g, &comp) {
            continue;
        }
        if each_six_cycle_in(g, &comp, &mut |_| true) {
            continue;
        }
        return ColoringClaimReport {
            colorings_checked: checked,
            all_pass: false,
            counterexample: Some(mask_vertices(s)),
        };
    }
    ColoringClaimReport { colorings_checked: checked, all_pass: true, counterexample: None }
}

fn mask_vertices(mask: u32) -> Vec<u16> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

/// The forbidden families the workbench knows how to certify against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Forbidden {
    K3,
    Tp2,
    Tp3,
    Tp4,
    W7,
    C6,
}

impl Forbidden {
    pub const ALL: [Forbidden; 6] = [
        Forbidden::K3,
        Forbidden::Tp2,
        Forbidden::Tp3,
        Forbidden::Tp4,
        Forbidden::W7,
        Forbidden::C6,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Forbidden::K3 => "k3",
            Forbidden::Tp2 => "tp2",
            Forbidden::Tp3 => "tp3",
            Forbidden::Tp4 => "tp4",
            Forbidden::W7 => "w7",
            Forbidden::C6 => "c6",
        }
    }

    pub fn parse(text: &str) -> Option<Forbidden> {
        Forbidden::ALL.iter().copied().find(|f| f.label() == text)
    }

    /// A freshly built pattern graph for this family.
    pub fn pattern(self) -> Graph {
        match self {
            Forbidden::K3 => pyramids::triangular_pyramid(1).expect("one layer fits").graph,
            Forbidden::Tp2 => pyramids::triangular_pyramid(2).expect("two layers fit").graph,
            Forbidden::Tp3 => pyramids::triangular_pyramid(3).expect("three layers fit").graph,
            Forbidden::Tp4 => pyramids::triangular_pyramid(4).expect("four layers fit").graph,
            Forbidden::W7 => pyramids::wheel(7).expect("wheel(7) is valid"),
            Forbidden::C6 => pyramids::cycle(6).expect("cycle(6) is valid"),
        }
    }
}

/// A witness that some forbidden pattern occurs, in whichever shape the
/// detector that found it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForbiddenWitness {
    Map(Embedding),
    Pyramid(TP3Witness),
}

/// Dispatches to the best detector for the family: the specialized pyramid
/// search for tp3, the cycle finder for c6, the generic embedder otherwise.
pub fn find_forbidden(g: &Graph, family: Forbidden) -> Option<ForbiddenWitness> {
    match family {
        Forbidden::K3 => find_cycle(g, 3).expect("length 3 is supported").map(ForbiddenWitness::Map),
        Forbidden::Tp3 => find_tp3(g).map(ForbiddenWitness::Pyramid),
        Forbidden::C6 => find_cycle(g, 6).expect("length 6 is supported").map(ForbiddenWitness::Map),
        _ => contains_subgraph(g, &family.pattern()).map(ForbiddenWitness::Map),
    }
}

/// Is there a simple five-edge path from `u` to `v`? The direct edge `uv`,
/// whether present or not, is never traversed (the target is only entered on
/// the final step), so on a graph containing `uv` this is exactly "some
/// 6-cycle goes through the edge `uv`".
pub(crate) fn five_path_between<A: Adj>(g: &A, u: u16, v: u16) -> bool {
    fn dfs<A: Adj>(g: &A, at: u16, target: u16, visited: VertexSet, left: u32) -> bool {
        if left == 0 {
            return at == target;
        }
        let mut next = *g.nbrs(at);
        next.subtract(&visited);
        if left > 1 {
            // the target may only be entered on the final step
            next.remove(target);
        }
        for w in next.iter() {
            let mut vis = visited;
            vis.insert(w);
            if dfs(g, w, target, vis, left - 1) {
                return true;
            }
        }
        false
    }
    let mut visited = VertexSet::EMPTY;
    visited.insert(u);
    dfs(g, u, v, visited, 5)
}

/// Incremental family detection for edge-by-edge builders. The contract:
/// `creates(b, u, v)` may only be asked when the edge `uv` is already in `b`
/// and `b` without `uv` was family-free. Under it, any copy of the pattern
/// now present must use `uv`, which each variant exploits:
///
/// - a new triangle is a common neighbor of `u` and `v`;
/// - a new 6-cycle is a five-edge path between `u` and `v`;
/// - every edge of the ten-vertex pyramid has an endpoint in its center
///   wheel, and every wheel vertex is the hub or a hub neighbor, so a new
///   pyramid's hub lies in N(u) ∪ N(v);
/// - the generic fallback re-runs the embedder once per ordered pattern
///   edge, pinned onto `(u, v)`.
pub(crate) struct IncrementalChecker {
    kind: CheckerKind,
}

enum CheckerKind {
    Triangle,
    SixCycle,
    Pyramid3,
    Anchored(AnchoredChecker),
}

impl IncrementalChecker {
    pub(crate) fn for_family(family: Forbidden) -> IncrementalChecker {
        let kind = match family {
            Forbidden::K3 => CheckerKind::Triangle,
            Forbidden::C6 => CheckerKind::SixCycle,
            Forbidden::Tp3 => CheckerKind::Pyramid3,
            Forbidden::Tp2 | Forbidden::Tp4 | Forbidden::W7 => {
                CheckerKind::Anchored(AnchoredChecker::new(family.pattern()))
            }
        };
        IncrementalChecker { kind }
    }

    /// Did adding the edge `uv` (already present in `b`) create a copy of the
    /// family? Requires that `b` minus `uv` was family-free.
    pub(crate) fn creates(&mut self, b: &GraphBuilder, u: u16, v: u16) -> bool {
        debug_assert!(b.has_edge(u, v));
        match &mut self.kind {
            CheckerKind::Triangle => !b.common(u, v).is_empty(),
            CheckerKind::SixCycle => five_path_between(b, u, v),
            CheckerKind::Pyramid3 => creates_pyramid3(b, u, v),
            CheckerKind::Anchored(a) => a.creates(b, u, v),
        }
    }
}

fn creates_pyramid3(b: &GraphBuilder, u: u16, v: u16) -> bool {
    if b.n() < 10 {
        return false;
    }
    let mut hubs = *b.neighbors(u);
    hubs.union_with(b.neighbors(v));
    let mut nb: Vec<u16> = Vec::new();
    for hub in hubs.iter() {
        if b.degree(hub) < 6 {
            continue;
        }
        nb.clear();
        nb.extend(b.neighbors(hub).iter());
        let mut found = false;
        if nb.len() <= 64 {
            each_local_six_cycle(b, &nb, &mut |rim| {
                found = try_extend(b, hub, rim).is_some();
                found
            });
        } else {
            each_six_cycle_in(b, b.neighbors(hub), &mut |rim| {
                found = try_extend(b, hub, rim).is_some();
                found
            });
        }
        if found {
            return true;
        }
    }
    false
}

struct AnchoredChecker {
    pattern: Graph,
    /// One search order per ordered pattern edge `(p, q)`, seeded so position
    /// 0 carries `p` and position 1 carries `q`.
    orders: Vec<(u16, u16, Vec<u16>)>,
    cand: Vec<Vec<VertexSet>>,
    map: Vec<u16>,
}

impl AnchoredChecker {
    fn new(pattern: Graph) -> AnchoredChecker {
        let pn = pattern.n() as usize;
        let mut orders = Vec::new();
        for (p, q) in pattern.edges() {
            orders.push((p, q, embed_order_from(&pattern, &[p, q])));
            orders.push((q, p, embed_order_from(&pattern, &[q, p])));
        }
        AnchoredChecker {
            orders,
            cand: vec![vec![VertexSet::EMPTY; pn]; pn + 1],
            map: vec![u16::MAX; pn],
            pattern,
        }
    }

    fn creates(&mut self, host: &GraphBuilder, u: u16, v: u16) -> bool {
        let pn = self.pattern.n() as usize;
        if (host.n() as usize) < pn {
            return false;
        }
        // Degree-feasible hosts per pattern vertex; patterns have few
        // distinct degrees, so cache by threshold.
        let mut cache: Vec<(u32, VertexSet)> = Vec::new();
        let mut feas: Vec<VertexSet> = Vec::with_capacity(pn);
        for p in 0..pn as u16 {
            let need = self.pattern.degree(p);
            let s = match cache.iter().find(|(d, _)| *d == need) {
                Some((_, s)) => *s,
                None => {
                    let mut s = VertexSet::EMPTY;
                    for h in 0..host.n() {
                        if host.degree(h) >= need {
                            s.insert(h);
                        }
                    }
                    cache.push((need, s));
                    s
                }
            };
            feas.push(s);
        }
        let mut pin_u = VertexSet::EMPTY;
        pin_u.insert(u);
        let mut pin_v = VertexSet::EMPTY;
        pin_v.insert(v);
        for (p, q, order) in &self.orders {
            if host.degree(u) < self.pattern.degree(*p) || host.degree(v) < self.pattern.degree(*q) {
                continue;
            }
            for (pos, &r) in order.iter().enumerate() {
                self.cand[0][pos] = feas[r as usize];
            }
            self.cand[0][0] = pin_u;
            self.cand[0][1] = pin_v;
            if embed_search(host, &self.pattern, order, &mut self.cand, &mut self.map, 0) {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::pyramids::{claw, cycle, pyramid_center_wheel, triangular_pyramid, wheel};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
        let mut b = GraphBuilder::new(n).unwrap();
        for u in 0..n as u16 {
            for v in u + 1..n as u16 {
                if rng.random_bool(p) {
                    b.add_edge(u, v).unwrap();
                }
            }
        }
        b.freeze()
    }

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = GraphBuilder::new(a + b).unwrap();
        for u in 0..a as u16 {
            for v in 0..b as u16 {
                g.add_edge(u, a as u16 + v).unwrap();
            }
        }
        g.freeze()
    }

    #[test]
    fn embedder_basics() {
        let tp3 = triangular_pyramid(3).unwrap().graph;
        let k10 = Graph::complete(10).unwrap();
        let emb = contains_subgraph(&k10, &tp3).unwrap();
        emb.validate(&k10, &tp3).unwrap();

        let k55 = complete_bipartite(5, 5);
        assert!(contains_subgraph(&k55, &Graph::complete(3).unwrap()).is_none());

        let tp2 = triangular_pyramid(2).unwrap().graph;
        let emb = contains_subgraph(&tp3, &tp2).unwrap();
        emb.validate(&tp3, &tp2).unwrap();

        // undersized hosts and the empty pattern
        assert!(contains_subgraph(&tp2, &tp3).is_none());
        assert_eq!(contains_subgraph(&k10, &Graph::empty(0).unwrap()).unwrap().map.len(), 0);
    }

    #[test]
    fn pyramids_nest() {
        for k in 2..=5 {
            let big = triangular_pyramid(k).unwrap().graph;
            let small = triangular_pyramid(k - 1).unwrap().graph;
            let emb = contains_subgraph(&big, &small).unwrap();
            emb.validate(&big, &small).unwrap();
        }
    }

    #[test]
    fn pyramid_detector_on_the_pyramid_itself() {
        let tp3 = triangular_pyramid(3).unwrap().graph;
        let w = find_tp3(&tp3).unwrap();
        w.validate(&tp3).unwrap();
        assert_eq!(w, pyramid_center_wheel());
    }

    #[test]
    fn pyramid_detector_small_hosts() {
        assert!(find_tp3(&Graph::complete(9).unwrap()).is_none());
        let w = find_tp3(&Graph::complete(10).unwrap()).unwrap();
        w.validate(&Graph::complete(10).unwrap()).unwrap();
    }

    #[test]
    fn pyramid_detector_ignores_padding() {
        // the pyramid plus isolated vertices
        let tp3 = triangular_pyramid(3).unwrap().graph;
        let mut b = GraphBuilder::new(13).unwrap();
        for (u, v) in tp3.edges() {
            b.add_edge(u, v).unwrap();
        }
        let padded = b.freeze();
        let w = find_tp3(&padded).unwrap();
        w.validate(&padded).unwrap();
    }

    #[test]
    fn wide_hub_fallback() {
        // Widen the pyramid's central hub past 64 neighbors with pendants:
        // the local pass must skip that hub (and every such copy routes
        // through it), so only the generic-embedder fallback can find the
        // witness.
        let tp3 = triangular_pyramid(3).unwrap().graph;
        let mut b = GraphBuilder::new(71).unwrap();
        for (u, v) in tp3.edges() {
            b.add_edge(u, v).unwrap();
        }
        for v in 10..71 {
            b.add_edge(4, v).unwrap();
        }
        let g = b.freeze();
        assert!(g.degree(4) > 64);
        let w = find_tp3(&g).unwrap();
        assert_eq!(w.wheel.hub, 4);
        w.validate(&g).unwrap();

        // a bare wide star: the fallback runs and correctly finds nothing
        let mut b = GraphBuilder::new(71).unwrap();
        for v in 1..=70 {
            b.add_edge(0, v).unwrap();
        }
        assert!(find_tp3(&b.freeze()).is_none());
    }

    #[test]
    fn wheel_extension_on_the_pyramid() {
        let tp3 = triangular_pyramid(3).unwrap().graph;
        let c = pyramid_center_wheel();
        let w = extend_wheel_to_tp3(&tp3, &c.wheel).unwrap();
        w.validate(&tp3).unwrap();
        let mut apexes = w.apexes;
        apexes.sort_unstable();
        assert_eq!(apexes, [0, 6, 9]);
    }

    #[test]
    fn wheel_extension_needs_external_vertices() {
        let w7 = wheel(7).unwrap();
        let witness = WheelWitness { hub: 0, rim: [1, 2, 3, 4, 5, 6] };
        assert!(extend_wheel_to_tp3(&w7, &witness).is_none());

        // one universal external vertex cannot serve three rim edges
        let mut b = GraphBuilder::new(8).unwrap();
        for (u, v) in w7.edges() {
            b.add_edge(u, v).unwrap();
        }
        for r in 1..=6 {
            b.add_edge(7, r).unwrap();
        }
        assert!(extend_wheel_to_tp3(&b.freeze(), &witness).is_none());
    }

    #[test]
    fn wheel_stream_and_sparseness() {
        let w7 = wheel(7).unwrap();
        let wheels = find_wheels7(&w7);
        assert_eq!(wheels.len(), 1);
        assert_eq!(wheels[0], WheelWitness { hub: 0, rim: [1, 2, 3, 4, 5, 6] });
        assert!(is_sparse_wheel(&w7, &wheels[0]).unwrap());

        // every wheel of K_7 has all its chords
        let k7 = Graph::complete(7).unwrap();
        let wheels = find_wheels7(&k7);
        assert_eq!(wheels.len(), 7 * 60); // 7 hubs, 60 rim cycles of K_6 each
        for w in &wheels {
            w.validate(&k7).unwrap();
            assert!(!is_sparse_wheel(&k7, w).unwrap());
        }

        // a single chord breaks sparseness
        let mut b = GraphBuilder::new(7).unwrap();
        for (u, v) in w7.edges() {
            b.add_edge(u, v).unwrap();
        }
        b.add_edge(1, 3).unwrap();
        let chorded = b.freeze();
        let witness = WheelWitness { hub: 0, rim: [1, 2, 3, 4, 5, 6] };
        assert!(!is_sparse_wheel(&chorded, &witness).unwrap());

        let bad = WheelWitness { hub: 0, rim: [1, 1, 3, 4, 5, 6] };
        assert!(matches!(is_sparse_wheel(&w7, &bad), Err(Error::InvalidWitness { .. })));
    }

    #[test]
    fn wide_hub_wheel_stream() {
        // hub 0 with 70 neighbors whose induced graph is a single 6-cycle
        let mut b = GraphBuilder::new(71).unwrap();
        for v in 1..=70 {
            b.add_edge(0, v).unwrap();
        }
        for i in 0..6u16 {
            b.add_edge(1 + i, 1 + (i + 1) % 6).unwrap();
        }
        let g = b.freeze();
        let wheels = find_wheels7(&g);
        assert_eq!(wheels.len(), 1);
        assert_eq!(wheels[0], WheelWitness { hub: 0, rim: [1, 2, 3, 4, 5, 6] });
    }

    #[test]
    fn cycle_finder() {
        let k4 = Graph::complete(4).unwrap();
        let c3 = find_cycle(&k4, 3).unwrap().unwrap();
        c3.validate(&k4, &Graph::complete(3).unwrap()).unwrap();

        let c6 = cycle(6).unwrap();
        let hit = find_cycle(&c6, 6).unwrap().unwrap();
        hit.validate(&c6, &c6).unwrap();
        assert!(find_cycle(&c6, 3).unwrap().is_none());

        assert!(find_cycle(&claw(), 3).unwrap().is_none());
        assert!(matches!(find_cycle(&k4, 4), Err(Error::BadArgument { .. })));
    }

    #[test]
    fn triangle_minimum() {
        assert_eq!(min_triangles_per_edge(&Graph::complete(5).unwrap()).unwrap(), 3);
        assert_eq!(min_triangles_per_edge(&cycle(6).unwrap()).unwrap(), 0);
        // the corner edges of the flattened tetrahedron lie in exactly one triangle
        let tp2 = triangular_pyramid(2).unwrap().graph;
        assert_eq!(min_triangles_per_edge(&tp2).unwrap(), 1);
        assert!(matches!(
            min_triangles_per_edge(&Graph::empty(4).unwrap()),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn representatives() {
        let one = VertexSet::from_iter([1u16]);
        assert!(distinct_representatives(&[one, one]).is_none());

        let sets = [
            VertexSet::from_iter([1u16, 2]),
            VertexSet::from_iter([2u16, 3]),
            VertexSet::from_iter([3u16, 1]),
        ];
        let reps = distinct_representatives(&sets).unwrap();
        let mut sorted = reps.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 3);
        for (i, &r) in reps.iter().enumerate() {
            assert!(sets[i].contains(r));
        }

        let single = [VertexSet::from_iter([1u16, 2, 3])];
        assert_eq!(distinct_representatives(&single).unwrap().len(), 1);
        assert_eq!(distinct_representatives(&[]).unwrap().len(), 0);
    }

    #[test]
    fn coloring_claim_holds() {
        let report = verify_tp4_coloring_claim();
        assert!(report.all_pass, "counterexample: {:?}", report.counterexample);
        assert!(report.colorings_checked > 0);
        assert!(report.counterexample.is_none());
    }

    #[test]
    fn oracle_equivalence_sample() {
        let tp3 = triangular_pyramid(3).unwrap().graph;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut hits = 0u32;
        for round in 0..240 {
            let n = 8 + round % 7; // 8..=14
            let p = [0.3, 0.5, 0.7][round % 3];
            let g = random_graph(n, p, &mut rng);
            let fast = find_tp3(&g);
            let slow = contains_subgraph(&g, &tp3);
            assert_eq!(fast.is_some(), slow.is_some(), "n={n} p={p} round={round}");
            if let Some(w) = fast {
                w.validate(&g).unwrap();
                hits += 1;
            }
            if let Some(e) = slow {
                e.validate(&g, &tp3).unwrap();
            }
        }
        assert!(hits > 10, "sample should contain positive cases, got {hits}");
    }

    #[test]
    fn adding_edges_preserves_containment() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut grown = 0u32;
        for _ in 0..40 {
            let g = random_graph(12, 0.55, &mut rng);
            if find_tp3(&g).is_none() {
                continue;
            }
            grown += 1;
            let mut b = GraphBuilder::new(12).unwrap();
            for (u, v) in g.edges() {
                b.add_edge(u, v).unwrap();
            }
            for u in 0..12u16 {
                for v in u + 1..12 {
                    if !g.has_edge(u, v) {
                        let mut b2 = b.clone();
                        b2.add_edge(u, v).unwrap();
                        assert!(find_tp3(&b2.freeze()).is_some());
                    }
                }
            }
        }
        assert!(grown > 0);
    }

    #[test]
    fn forbidden_dispatch() {
        let k10 = Graph::complete(10).unwrap();
        assert!(find_forbidden(&k10, Forbidden::K3).is_some());
        assert!(find_forbidden(&k10, Forbidden::Tp3).is_some());
        assert!(find_forbidden(&k10, Forbidden::Tp2).is_some());
        assert!(find_forbidden(&k10, Forbidden::W7).is_some());
        assert!(find_forbidden(&k10, Forbidden::C6).is_some());
        assert!(find_forbidden(&k10, Forbidden::Tp4).is_none()); // 15 > 10 vertices

        let k55 = complete_bipartite(5, 5);
        assert!(find_forbidden(&k55, Forbidden::K3).is_none());
        assert!(find_forbidden(&k55, Forbidden::W7).is_none());
        assert!(find_forbidden(&k55, Forbidden::C6).is_some());

        let k3 = Forbidden::K3.pattern();
        assert_eq!((k3.n(), k3.edge_count()), (3, 3));

        assert_eq!(Forbidden::parse("tp3"), Some(Forbidden::Tp3));
        assert_eq!(Forbidden::parse("k4"), None);
        for f in Forbidden::ALL {
            assert_eq!(Forbidden::parse(f.label()), Some(f));
        }
    }

    #[test]
    fn five_path_probe() {
        let mut b = GraphBuilder::new(6).unwrap();
        for i in 0..5u16 {
            b.add_edge(i, i + 1).unwrap();
        }
        assert!(five_path_between(&b, 0, 5));
        assert!(!five_path_between(&b, 0, 4));
        // close the cycle: the direct edge must not count as a path
        b.add_edge(0, 5).unwrap();
        assert!(five_path_between(&b, 0, 5));
        assert!(!five_path_between(&b, 0, 4));

        // too few vertices for five edges, however dense
        let k4 = Graph::complete(4).unwrap();
        for u in 0..4u16 {
            for v in u + 1..4 {
                assert!(!five_path_between(&k4, u, v));
            }
        }
    }

    #[test]
    fn incremental_checker_matches_oracle() {
        // Grow 12-vertex graphs edge by edge in a seeded shuffle order,
        // keeping the builder family-free: at every step the incremental
        // answer must agree with the from-scratch detector on a frozen
        // snapshot, which also keeps the checker's precondition true.
        let families =
            [Forbidden::K3, Forbidden::Tp2, Forbidden::Tp3, Forbidden::W7, Forbidden::C6];
        for fam in families {
            let mut checker = IncrementalChecker::for_family(fam);
            for seed in 0..3u64 {
                let n = 12u16;
                let mut pairs: Vec<(u16, u16)> =
                    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(0xF00D + seed);
                for i in (1..pairs.len()).rev() {
                    let j = rng.random_range(0..=i);
                    pairs.swap(i, j);
                }
                let mut b = GraphBuilder::new(n as usize).unwrap();
                for (u, v) in pairs {
                    b.add_edge(u, v).unwrap();
                    let incremental = checker.creates(&b, u, v);
                    let oracle = find_forbidden(&b.clone().freeze(), fam).is_some();
                    assert_eq!(
                        incremental,
                        oracle,
                        "family {} edge ({u},{v}) seed {seed}",
                        fam.label()
                    );
                    if incremental {
                        b.remove_edge(u, v).unwrap();
                    }
                }
                assert!(find_forbidden(&b.freeze(), fam).is_none());
            }
        }
    }

    #[test]
    fn incremental_checker_anchored_pattern() {
        // The fifteen-vertex pyramid exercises the anchored fallback on a
        // pattern too large for the random-growth test.
        let tp4 = triangular_pyramid(4).unwrap().graph;
        assert_eq!(tp4.n(), 15);
        let mut b = GraphBuilder::new(15).unwrap();
        for (u, v) in tp4.edges() {
            b.add_edge(u, v).unwrap();
        }
        let mut checker = IncrementalChecker::for_family(Forbidden::Tp4);
        // the full pattern is present and every copy uses the probed edge
        assert!(checker.creates(&b, 0, 1));

        // swap one pattern edge for a non-edge: same size, no copy
        b.remove_edge(0, 1).unwrap();
        b.add_edge(0, 14).unwrap();
        assert!(!checker.creates(&b, 0, 14));
        let g = b.freeze();
        assert_eq!(g.edge_count(), 30);
        assert!(find_forbidden(&g, Forbidden::Tp4).is_none());
    }
}
