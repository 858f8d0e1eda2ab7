//! Extremal-number search: an exhaustive branch-and-bound over labeled graphs
//! with incremental pattern rejection, adjacent-transposition symmetry
//! pruning and pluggable optimistic bounds; a seeded tabu heuristic for lower
//! bounds at sizes the exhaustive engine cannot reach; closed-form
//! cross-checks; and the conjecture scoreboard for the ten-vertex pyramid.
//!
//! The engine walks edge slots in row-major order (all pairs `(u, v)` with
//! `u < v`, grouped by `v`), keeping the partial graph pattern-free at every
//! node. Parallelism is exposed structurally: `exact_ex_prefixes` splits the
//! tree into replayable prefixes, `exact_ex_subtree` finishes one, and
//! `merge_results` recombines — workers may share an incumbent through
//! [`SharedIncumbent`], which tightens pruning but never changes answers.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::construct;
use crate::detect::{find_forbidden, Forbidden, IncrementalChecker};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::graph6::write_graph6;
use crate::Rational;

/// Exhaustive search packs each vertex's back-edges into one machine word.
pub const SEARCH_MAX_VERTICES: u16 = 64;

/// Isomorphism-exact dedup of the extremal list is attempted up to this
/// order; larger graphs are listed as found and flagged.
pub const CANON_MAX_VERTICES: u16 = 12;

/// Most extremal labelings retained during a collecting search; past this the
/// result is flagged truncated.
const FOUND_CAP: usize = 1024;

/// Total canonicalization node budget per assembled result.
const CANON_BUDGET: u64 = 1 << 24;

/// How a search run ended, and hence how to read its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// The tree was exhausted: `value` is the extremal number.
    Exact,
    /// The value came from a non-exhaustive procedure; it is only a floor.
    LowerBoundOnly,
    /// A stop callback fired mid-search; the incumbent is only a floor.
    Timeout,
}

impl SearchStatus {
    pub fn label(self) -> &'static str {
        match self {
            SearchStatus::Exact => "exact",
            SearchStatus::LowerBoundOnly => "lower_bound_only",
            SearchStatus::Timeout => "timeout",
        }
    }
}

/// Outcome of one extremal-number computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: u16,
    pub forbidden: Forbidden,
    /// Maximum edge count found; exact precisely when `status` says so.
    pub value: u64,
    pub status: SearchStatus,
    /// graph6 strings of the distinct maximum graphs found, sorted. Exactly
    /// one isomorphism class per entry when `dedup_exhaustive` holds.
    pub extremal_graphs: Vec<String>,
    /// True when every listed graph was canonically relabeled, so equal
    /// strings are equal classes and distinct strings are distinct classes.
    pub dedup_exhaustive: bool,
    /// True when the collector hit its retention cap and dropped labelings;
    /// the list may then miss isomorphism classes.
    pub extremal_truncated: bool,
    /// Which optimistic bound capped the search, for the record.
    pub upper_bound_used: String,
    pub nodes_expanded: u64,
    /// Filled by callers that can read a clock; the core engine cannot.
    pub elapsed: Option<core::time::Duration>,
}

/// Monotone best-value cell shared by parallel workers. Publishing never
/// lowers the stored value, and readers only use it to prune, so stale reads
/// cost time but never correctness.
pub struct SharedIncumbent(AtomicU64);

impl SharedIncumbent {
    pub fn new(initial: u64) -> SharedIncumbent {
        SharedIncumbent(AtomicU64::new(initial))
    }

    pub fn publish(&self, value: u64) {
        self.0.fetch_max(value, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

/// Within-row direction of the edge-slot walk. Two independent orders give
/// cheap cross-validation: agreeing answers from both is strong evidence
/// against order-dependent bookkeeping bugs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SlotOrder {
    #[default]
    RowForward,
    RowReverse,
}

/// Knobs for [`exact_ex`]. The defaults run a strict (first-optimum),
/// sequential, unbounded search with the family's stock seed and bound.
#[derive(Default)]
pub struct SearchOpts<'a> {
    /// Polled about once per thousand nodes; `true` aborts with
    /// [`SearchStatus::Timeout`].
    pub stop: Option<&'a (dyn Fn() -> bool + Sync)>,
    /// Optimistic cap on the answer as a function of `n`. Must be a
    /// mathematically valid upper bound for the family at every size, or the
    /// engine may certify a wrong value as exact. `None` picks a stock bound
    /// that is always safe.
    pub upper_bound_hook: Option<&'a (dyn Fn(u64) -> u64 + Sync)>,
    pub slot_order: SlotOrder,
    /// Collect every maximum graph (up to the retention cap) instead of
    /// stopping at the first witness of the maximum value.
    pub collect_extremal: bool,
    /// Starting incumbent. Must have exactly `n` vertices and be free of the
    /// pattern; both are checked. `None` picks a stock construction.
    pub seed_graph: Option<&'a Graph>,
    /// Cross-worker incumbent cell for parallel runs.
    pub shared: Option<&'a SharedIncumbent>,
}

/// A replayable branch decision vector: `decisions[i]` says whether slot `i`
/// carries an edge. Produced by [`exact_ex_prefixes`], consumed by
/// [`exact_ex_subtree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchPrefix {
    pub decisions: Vec<bool>,
}

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn build_slots(n: u16, order: SlotOrder) -> Vec<(u16, u16)> {
    let mut slots = Vec::with_capacity(binom2(n as u64) as usize);
    for v in 1..n {
        match order {
            SlotOrder::RowForward => slots.extend((0..v).map(|u| (v, u))),
            SlotOrder::RowReverse => slots.extend((0..v).rev().map(|u| (v, u))),
        }
    }
    slots
}

/// Back-edge words of a frozen graph: bit `u` of word `v` is the edge `uv`
/// for `u < v`. Only valid below [`SEARCH_MAX_VERTICES`].
fn rows_of(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).intersection(&VertexSet::below(v)).word0()).collect()
}

fn rows_to_graph(n: u16, rows: &[u64]) -> Graph {
    let mut b = GraphBuilder::new(n as usize).expect("search sizes fit the capacity");
    for (v, &row) in rows.iter().enumerate() {
        let mut m = row;
        while m != 0 {
            let u = m.trailing_zeros() as u16;
            m &= m - 1;
            b.add_edge(u, v as u16).expect("row bits sit below their row index");
        }
    }
    b.freeze()
}

/// Stock optimistic cap for a family, with its display label. Only bounds
/// valid at every applicable size are used; everything else gets the trivial
/// cap. (Exact closed forms are deliberately not used here — searches help
/// validate them, so they must not steer the search.)
fn default_cap(n: u16, forbid: Forbidden) -> (u64, &'static str) {
    let trivial = binom2(n as u64);
    match forbid {
        Forbidden::K3 => {
            let m = bounds::mantel_bound(n as u64);
            if m < trivial {
                return (m, "floor(n^2/4)");
            }
        }
        Forbidden::Tp3 if n >= 10 => {
            let l = bounds::lemma1_bound(n as u64).floor().to_integer();
            if (l as u64) < trivial {
                return (l as u64, "floor(n^2/4 + 7n/2)");
            }
        }
        _ => {}
    }
    (trivial, "binomial(n,2)")
}

/// Stock starting incumbent: the best cheap pattern-free construction we
/// have. Falls back to the complete graph whenever the pattern cannot fit.
fn default_seed(n: u16, forbid: Forbidden) -> Option<Graph> {
    if n < forbid.pattern().n() {
        return Graph::complete(n as usize).ok();
    }
    match forbid {
        Forbidden::K3 | Forbidden::Tp2 | Forbidden::W7 => bounds::turan_graph(n as usize, 2).ok(),
        Forbidden::Tp3 => construct::best_known_tp3_free(n as usize).ok().map(|(g, _)| g),
        Forbidden::C6 => k5_blocks(n),
        Forbidden::Tp4 => tp4_seed(n),
    }
}

/// Disjoint cliques of five (plus one smaller remainder block): every cycle
/// stays inside a block, so none has length six.
fn k5_blocks(n: u16) -> Option<Graph> {
    let mut b = GraphBuilder::new(n as usize).ok()?;
    let mut start = 0u16;
    while start < n {
        let end = (start + 5).min(n);
        for u in start..end {
            for v in u + 1..end {
                b.add_edge(u, v).ok()?;
            }
        }
        start = end;
    }
    Some(b.freeze())
}

fn tp4_seed(n: u16) -> Option<Graph> {
    let even = n & !1;
    let t = construct::tp4_lower_construction(even as usize, 0).ok()?;
    if even == n {
        return Some(t.graph);
    }
    // odd order: the even construction plus one isolated vertex
    let mut b = GraphBuilder::new(n as usize).ok()?;
    for (u, v) in t.graph.edges() {
        b.add_edge(u, v).ok()?;
    }
    Some(b.freeze())
}

struct Engine<'a> {
    n: u16,
    forbid: Forbidden,
    slots: Vec<(u16, u16)>,
    b: GraphBuilder,
    checker: IncrementalChecker,
    rows: Vec<u64>,
    curr: u64,
    /// Best leaf value actually seen by THIS run (seeded); merging relies on
    /// it never borrowing from the shared cell.
    found_value: u64,
    found: BTreeSet<Vec<u64>>,
    collect: bool,
    cap: u64,
    cap_label: &'a str,
    caller_cap: bool,
    /// Pruning threshold: max of `found_value` and the shared incumbent.
    prune_best: u64,
    nodes: u64,
    stop: Option<&'a (dyn Fn() -> bool + Sync)>,
    shared: Option<&'a SharedIncumbent>,
    stopped: bool,
    done: bool,
    truncated: bool,
    prefix_depth: usize,
    trail: Vec<bool>,
    prefixes: Vec<SearchPrefix>,
}

impl<'a> Engine<'a> {
    fn prepare(n: u16, forbid: Forbidden, opts: &SearchOpts<'a>) -> Result<Engine<'a>> {
        if n > SEARCH_MAX_VERTICES {
            return Err(Error::SearchTooLarge { n: n as u32, max: SEARCH_MAX_VERTICES as u32 });
        }
        let seed = match opts.seed_graph {
            Some(g) => {
                if g.n() != n {
                    return Err(Error::BadArgument { what: "seed graph order differs from n" });
                }
                if find_forbidden(g, forbid).is_some() {
                    return Err(Error::BadArgument { what: "seed graph contains the forbidden pattern" });
                }
                Some(g.clone())
            }
            None => {
                let cand = default_seed(n, forbid);
                if let Some(g) = &cand {
                    debug_assert!(
                        find_forbidden(g, forbid).is_none(),
                        "stock seeds must be pattern-free"
                    );
                }
                cand.filter(|g| find_forbidden(g, forbid).is_none())
            }
        };
        let (seed_rows, seed_value) = match &seed {
            Some(g) => (rows_of(g), g.edge_count() as u64),
            None => (vec![0u64; n as usize], 0),
        };
        let trivial = binom2(n as u64);
        let (cap, cap_label, caller_cap) = match opts.upper_bound_hook {
            Some(h) => (h(n as u64).min(trivial), "caller-provided", true),
            None => {
                let (c, l) = default_cap(n, forbid);
                (c, l, false)
            }
        };
        let mut found = BTreeSet::new();
        found.insert(seed_rows);
        if let Some(sh) = opts.shared {
            sh.publish(seed_value);
        }
        let prune_best = seed_value.max(opts.shared.map_or(0, |s| s.get()));
        Ok(Engine {
            n,
            forbid,
            slots: build_slots(n, opts.slot_order),
            b: GraphBuilder::new(n as usize)?,
            checker: IncrementalChecker::for_family(forbid),
            rows: vec![0u64; n as usize],
            curr: 0,
            found_value: seed_value,
            found,
            collect: opts.collect_extremal,
            cap,
            cap_label,
            caller_cap,
            prune_best,
            nodes: 0,
            stop: opts.stop,
            shared: opts.shared,
            stopped: false,
            done: !opts.collect_extremal && seed_value >= cap,
            truncated: false,
            prefix_depth: usize::MAX,
            trail: Vec::new(),
            prefixes: Vec::new(),
        })
    }

    fn admit(&self, potential: u64) -> bool {
        if self.collect {
            potential >= self.prune_best
        } else {
            potential > self.prune_best
        }
    }

    fn leaf(&mut self) {
        let e = self.curr;
        if e > self.found_value {
            self.found_value = e;
            self.found.clear();
            self.found.insert(self.rows.clone());
            self.prune_best = self.prune_best.max(e);
            if let Some(sh) = self.shared {
                sh.publish(e);
            }
            if !self.collect && e >= self.cap {
                self.done = true;
            }
        } else if self.collect && e == self.found_value {
            if self.found.len() < FOUND_CAP {
                self.found.insert(self.rows.clone());
            } else if !self.found.contains(&self.rows) {
                self.truncated = true;
            }
        }
    }

    fn dfs(&mut self, i: usize) {
        if self.stopped || self.done {
            return;
        }
        self.nodes += 1;
        if self.nodes & 1023 == 0 {
            if let Some(stop) = self.stop {
                if stop() {
                    self.stopped = true;
                    return;
                }
            }
            if let Some(sh) = self.shared {
                self.prune_best = self.prune_best.max(sh.get());
            }
        }
        // Symmetry cut at each completed row `w`: swapping labels w-1 and w
        // fixes everything before row w-1 and rewrites that row to
        // rows[w] minus its top bit, so any labeling where the swap wins
        // lexicographically can be dropped — the maximal labeling of every
        // isomorphism class survives all such cuts.
        if i > 0 {
            let w = self.slots[i - 1].0;
            let boundary = i == self.slots.len() || self.slots[i].0 != w;
            if boundary && w >= 2 {
                let w = w as usize;
                if self.rows[w - 1] < self.rows[w] & !(1u64 << (w - 1)) {
                    return;
                }
            }
        }
        if i == self.prefix_depth {
            self.prefixes.push(SearchPrefix { decisions: self.trail.clone() });
            return;
        }
        if i == self.slots.len() {
            self.leaf();
            return;
        }
        let (v, u) = self.slots[i];
        let remaining = (self.slots.len() - i) as u64;
        let track = self.prefix_depth != usize::MAX;
        if self.admit(self.curr + remaining) {
            self.b.add_edge(u, v).expect("slot endpoints are in range");
            if self.checker.creates(&self.b, u, v) {
                self.b.remove_edge(u, v).expect("edge was just added");
            } else {
                self.rows[v as usize] |= 1u64 << u;
                self.curr += 1;
                if track {
                    self.trail.push(true);
                }
                self.dfs(i + 1);
                if track {
                    self.trail.pop();
                }
                self.curr -= 1;
                self.rows[v as usize] &= !(1u64 << u);
                self.b.remove_edge(u, v).expect("edge was just added");
            }
        }
        if self.stopped || self.done {
            return;
        }
        if self.admit(self.curr + remaining - 1) {
            if track {
                self.trail.push(false);
            }
            self.dfs(i + 1);
            if track {
                self.trail.pop();
            }
        }
    }

    fn assemble(self) -> SearchResult {
        let status = if self.stopped { SearchStatus::Timeout } else { SearchStatus::Exact };
        let mut budget = CANON_BUDGET;
        let mut dedup_exhaustive = true;
        let mut strings: BTreeSet<String> = BTreeSet::new();
        for rows in &self.found {
            let g = rows_to_graph(self.n, rows);
            debug_assert_eq!(g.edge_count() as u64, self.found_value);
            debug_assert!(find_forbidden(&g, self.forbid).is_none());
            let canon = if self.n <= CANON_MAX_VERTICES {
                canonical_rows(self.n as usize, rows, &mut budget)
            } else {
                None
            };
            match canon {
                Some(c) => {
                    strings.insert(write_graph6(&rows_to_graph(self.n, &c)));
                }
                None => {
                    dedup_exhaustive = false;
                    strings.insert(write_graph6(&g));
                }
            }
        }
        let upper_bound_used = String::from(self.cap_label);
        let _ = self.caller_cap;
        SearchResult {
            n: self.n,
            forbidden: self.forbid,
            value: self.found_value,
            status,
            extremal_graphs: strings.into_iter().collect(),
            dedup_exhaustive,
            extremal_truncated: self.truncated,
            upper_bound_used,
            nodes_expanded: self.nodes,
            elapsed: None,
        }
    }
}

/// Lexicographically maximal back-edge encoding over all relabelings, found
/// by branch-and-bound over position assignments. `None` when the shared
/// budget runs dry (automorphism-rich graphs can tie exponentially often).
fn canonical_rows(n: usize, rows: &[u64], budget: &mut u64) -> Option<Vec<u64>> {
    struct Canon<'a> {
        n: usize,
        rows: &'a [u64],
        best: Vec<u64>,
        placed: Vec<u16>,
        used: u64,
    }
    impl Canon<'_> {
        fn adj(&self, a: u16, b: u16) -> bool {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.rows[hi as usize] >> lo & 1 == 1
        }

        /// Invariant: the placed prefix encodes exactly `best[..k]`.
        fn dfs(&mut self, k: usize, budget: &mut u64) -> bool {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            if k == self.n {
                return true;
            }
            let mut cands: Vec<(u64, u16)> = Vec::with_capacity(self.n - k);
            for x in 0..self.n as u16 {
                if self.used >> x & 1 == 1 {
                    continue;
                }
                let mut r = 0u64;
                for (j, &p) in self.placed.iter().enumerate() {
                    if self.adj(x, p) {
                        r |= 1 << j;
                    }
                }
                cands.push((r, x));
            }
            cands.sort_unstable_by(|a, b| b.cmp(a));
            for (r, x) in cands {
                if r < self.best[k] {
                    break; // sorted descending: nothing later can tie
                }
                if r > self.best[k] {
                    self.best[k] = r;
                    for slot in &mut self.best[k + 1..] {
                        *slot = 0;
                    }
                }
                self.placed.push(x);
                self.used |= 1 << x;
                let ok = self.dfs(k + 1, budget);
                self.used &= !(1 << x);
                self.placed.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
    }
    let mut c = Canon {
        n,
        rows,
        best: vec![0u64; n],
        placed: Vec::with_capacity(n),
        used: 0,
    };
    if !c.dfs(0, budget) {
        return None;
    }
    debug_assert_eq!(
        c.best.iter().map(|r| r.count_ones()).sum::<u32>(),
        rows.iter().map(|r| r.count_ones()).sum::<u32>()
    );
    Some(c.best)
}

/// Exhaustive maximum edge count of `forbid`-free graphs on `n` vertices,
/// with witnesses. Only sizes up to [`SEARCH_MAX_VERTICES`] are accepted.
///
/// The tree is pruned four ways, none of which can change the answer: the
/// incremental pattern check (freeness), an optimistic potential-vs-incumbent
/// bound, the adjacent-transposition labeling canon, and — in strict mode —
/// an early exit once the incumbent meets the optimistic cap.
pub fn exact_ex(n: u16, forbid: Forbidden, opts: &SearchOpts) -> Result<SearchResult> {
    let mut engine = Engine::prepare(n, forbid, opts)?;
    engine.dfs(0);
    Ok(engine.assemble())
}

/// The admitted decision vectors at `depth` slots deep: a partition of the
/// remaining search into independent subtrees for parallel workers. Uses the
/// same pruning as [`exact_ex`], so prefixes it omits cannot matter (under
/// strict opts they cannot beat the seed; under collecting opts they cannot
/// tie it). Errors with [`Error::Stopped`] if the stop callback fires before
/// the split completes, since a partial split would silently drop subtrees.
pub fn exact_ex_prefixes(
    n: u16,
    forbid: Forbidden,
    opts: &SearchOpts,
    depth: usize,
) -> Result<Vec<SearchPrefix>> {
    let mut engine = Engine::prepare(n, forbid, opts)?;
    engine.prefix_depth = depth.min(engine.slots.len());
    engine.dfs(0);
    if engine.stopped {
        return Err(Error::Stopped);
    }
    Ok(engine.prefixes)
}

/// Finishes the subtree under one prefix from [`exact_ex_prefixes`], run
/// with the same `n`, family and opts. The replay re-validates the prefix
/// (freeness and labeling canon), so a foreign decision vector errors rather
/// than corrupting the count.
pub fn exact_ex_subtree(
    n: u16,
    forbid: Forbidden,
    opts: &SearchOpts,
    prefix: &SearchPrefix,
) -> Result<SearchResult> {
    let mut engine = Engine::prepare(n, forbid, opts)?;
    let k = prefix.decisions.len();
    if k > engine.slots.len() {
        return Err(Error::BadArgument { what: "prefix is longer than the slot list" });
    }
    for (i, &present) in prefix.decisions.iter().enumerate() {
        let (v, u) = engine.slots[i];
        if present {
            engine.b.add_edge(u, v).expect("slot endpoints are in range");
            if engine.checker.creates(&engine.b, u, v) {
                return Err(Error::BadArgument { what: "prefix creates the forbidden pattern" });
            }
            engine.rows[v as usize] |= 1u64 << u;
            engine.curr += 1;
        }
        let boundary = i + 1 == engine.slots.len() || engine.slots[i + 1].0 != v;
        if boundary && v >= 2 {
            let w = v as usize;
            if engine.rows[w - 1] < engine.rows[w] & !(1u64 << (w - 1)) {
                return Err(Error::BadArgument { what: "prefix violates the labeling canon" });
            }
        }
    }
    engine.dfs(k);
    Ok(engine.assemble())
}

/// Recombines subtree results into the whole-tree answer. `None` when the
/// list is empty or the parts disagree on what was searched. The merged
/// status is exact only if every part ran to exhaustion; extremal lists are
/// unioned across the parts that attained the merged value.
pub fn merge_results(parts: &[SearchResult]) -> Option<SearchResult> {
    let first = parts.first()?;
    if parts.iter().any(|p| p.n != first.n || p.forbidden != first.forbidden) {
        return None;
    }
    let value = parts.iter().map(|p| p.value).max().expect("nonempty");
    let mut status = SearchStatus::Exact;
    for p in parts {
        match p.status {
            SearchStatus::Timeout => status = SearchStatus::Timeout,
            SearchStatus::LowerBoundOnly if status == SearchStatus::Exact => {
                status = SearchStatus::LowerBoundOnly;
            }
            _ => {}
        }
    }
    let mut strings: BTreeSet<String> = BTreeSet::new();
    let mut dedup_exhaustive = true;
    let mut truncated = false;
    for p in parts.iter().filter(|p| p.value == value) {
        strings.extend(p.extremal_graphs.iter().cloned());
        dedup_exhaustive &= p.dedup_exhaustive;
        truncated |= p.extremal_truncated;
    }
    Some(SearchResult {
        n: first.n,
        forbidden: first.forbidden,
        value,
        status,
        extremal_graphs: strings.into_iter().collect(),
        dedup_exhaustive,
        extremal_truncated: truncated,
        upper_bound_used: first.upper_bound_used.clone(),
        nodes_expanded: parts.iter().map(|p| p.nodes_expanded).sum(),
        elapsed: None,
    })
}

/// Tabu-flavored heuristic floor on the extremal number: start from the
/// stock construction, greedily add every admissible edge in a seeded
/// shuffle order each round, and when a round stalls, knock out two random
/// edges and forbid them for a few rounds. Deterministic per `(n, forbid,
/// iters, seed)`; the returned graph always verifies pattern-free.
pub fn lower_bound_ex(n: u16, forbid: Forbidden, iters: u32, seed: u64) -> Result<(Graph, u64)> {
    let start = match default_seed(n, forbid) {
        Some(g) if find_forbidden(&g, forbid).is_none() => g,
        _ => Graph::empty(n as usize)?,
    };
    let mut b = GraphBuilder::new(n as usize)?;
    for (u, v) in start.edges() {
        b.add_edge(u, v)?;
    }
    let mut best = start;
    let mut best_value = best.edge_count() as u64;

    let mut checker = IncrementalChecker::for_family(forbid);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(u16, u16)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let pair_index = |u: u16, v: u16| u as usize * n as usize + v as usize;
    let mut tabu_until = vec![0u64; n as usize * n as usize];
    const TABU_TENURE: u64 = 7;

    for it in 0..iters as u64 {
        if !pairs.is_empty() {
            for i in (1..pairs.len()).rev() {
                let j = rng.random_range(0..=i);
                pairs.swap(i, j);
            }
        }
        let mut added = false;
        for &(u, v) in &pairs {
            if b.has_edge(u, v) || tabu_until[pair_index(u, v)] > it {
                continue;
            }
            b.add_edge(u, v)?;
            if checker.creates(&b, u, v) {
                b.remove_edge(u, v)?;
            } else {
                added = true;
            }
        }
        if b.edge_count() as u64 > best_value {
            best_value = b.edge_count() as u64;
            best = b.clone().freeze();
        }
        if !added {
            // stalled at a maximal graph: perturb and move on
            let present: Vec<(u16, u16)> = pairs.iter().copied().filter(|&(u, v)| b.has_edge(u, v)).collect();
            if present.is_empty() {
                break;
            }
            for _ in 0..2usize.min(present.len()) {
                let &(u, v) = &present[rng.random_range(0..present.len())];
                if b.has_edge(u, v) {
                    b.remove_edge(u, v)?;
                    tabu_until[pair_index(u, v)] = it + 1 + TABU_TENURE;
                }
            }
        }
    }
    debug_assert!(find_forbidden(&best, forbid).is_none());
    Ok((best, best_value))
}

/// One size's scoreboard entry for the pyramid-maximum formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureRow {
    pub n: u16,
    pub conjectured: Rational,
    pub computed_lower: u64,
    /// Present only when an exhaustive search finished for this size.
    pub computed_upper: Option<u64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Nothing computed contradicts the formula at this size.
    Consistent,
    /// The formula is wrong at this size: the computed floor exceeds it, or
    /// an exhaustive ceiling falls below it.
    Violated,
    /// The budget ran out before enough was computed to say.
    Open,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Violated => "violated",
            Verdict::Open => "open",
        }
    }
}

/// Knobs for [`verify_conjecture_tp3`].
pub struct ConjectureOpts<'a> {
    /// Rounds given to the tabu heuristic per size.
    pub tabu_iters: u32,
    pub tabu_seed: u64,
    /// Run the exhaustive engine for sizes up to this (0 disables it).
    pub exact_up_to: u16,
    pub stop: Option<&'a (dyn Fn() -> bool + Sync)>,
}

impl Default for ConjectureOpts<'_> {
    fn default() -> Self {
        ConjectureOpts { tabu_iters: 200, tabu_seed: 0, exact_up_to: 0, stop: None }
    }
}

fn cheap_tp3_lower(n: u16) -> u64 {
    if n < 10 {
        return binom2(n as u64);
    }
    construct::best_known_tp3_free(n as usize).map(|(g, _)| g.edge_count() as u64).unwrap_or(0)
}

/// Scores the pyramid-maximum formula against computed bounds for each size
/// in `n_from..=n_to` (sizes below 6 are rejected). A row is violated when
/// its computed floor exceeds the formula, or when an exhaustive ceiling
/// falls below it; interrupting the budget yields a final `Open` row and a
/// short list rather than fabricated entries.
///
/// Small sizes genuinely violate the formula — it describes the large-`n`
/// regime, while for tiny `n` the complete graph fits no pyramid and beats
/// it. Callers wanting the interesting regime should start around n = 12.
pub fn verify_conjecture_tp3(
    n_from: u16,
    n_to: u16,
    opts: &ConjectureOpts,
) -> Result<Vec<ConjectureRow>> {
    if n_from < 6 {
        return Err(Error::BadArgument { what: "conjecture rows start at n = 6" });
    }
    if n_to < n_from {
        return Err(Error::BadArgument { what: "empty size range" });
    }
    let mut rows = Vec::new();
    for n in n_from..=n_to {
        let conjectured = bounds::conjectured_tp3_max(n as u64);
        if opts.stop.is_some_and(|s| s()) {
            rows.push(ConjectureRow {
                n,
                conjectured,
                computed_lower: cheap_tp3_lower(n),
                computed_upper: None,
                verdict: Verdict::Open,
            });
            break;
        }
        let (_, tabu_value) = lower_bound_ex(n, Forbidden::Tp3, opts.tabu_iters, opts.tabu_seed)?;
        let mut lower = tabu_value;
        let mut upper = None;
        let mut interrupted = false;
        if n <= opts.exact_up_to && n <= SEARCH_MAX_VERTICES {
            let sr = exact_ex(
                n,
                Forbidden::Tp3,
                &SearchOpts { stop: opts.stop, ..SearchOpts::default() },
            )?;
            lower = lower.max(sr.value);
            if sr.status == SearchStatus::Exact {
                upper = Some(sr.value);
            } else {
                interrupted = true;
            }
        }
        let floor_beats = Rational::from(lower as i128) > conjectured;
        let ceiling_breaks = upper.is_some_and(|u| Rational::from(u as i128) < conjectured);
        let verdict = if floor_beats || ceiling_breaks {
            Verdict::Violated
        } else if interrupted {
            Verdict::Open
        } else {
            Verdict::Consistent
        };
        rows.push(ConjectureRow { n, conjectured, computed_lower: lower, computed_upper: upper, verdict });
        if interrupted {
            break;
        }
    }
    Ok(rows)
}

/// One verified agreement between a closed form and exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaCheck {
    pub n: u16,
    pub formula: &'static str,
    pub expected: u64,
    pub got: u64,
}

fn strict_trivial_exact(
    n: u16,
    forbid: Forbidden,
    stop: Option<&(dyn Fn() -> bool + Sync)>,
) -> Result<u64> {
    // The trivial cap keeps the engine honest here: a closed-form hook would
    // let the search exit at the very value it is supposed to confirm.
    let hook = |m: u64| binom2(m);
    let opts = SearchOpts { stop, upper_bound_hook: Some(&hook), ..SearchOpts::default() };
    let r = exact_ex(n, forbid, &opts)?;
    match r.status {
        SearchStatus::Exact => Ok(r.value),
        _ => Err(Error::Stopped),
    }
}

/// Replays the small closed forms against genuinely exhaustive searches:
/// the triangle maximum for `1..=n_max` and the flattened-tetrahedron
/// maximum for the same range minus its excluded size 5. Any disagreement is
/// a hard error naming the formula and size. `n_max` is capped at 8 to keep
/// the promise of exhaustiveness affordable.
pub fn cross_check_formulas(
    n_max: u16,
    stop: Option<&(dyn Fn() -> bool + Sync)>,
) -> Result<Vec<FormulaCheck>> {
    if n_max > 8 {
        return Err(Error::BadArgument { what: "cross-check caps at n_max = 8" });
    }
    let mut checks = Vec::new();
    for n in 1..=n_max {
        let got = strict_trivial_exact(n, Forbidden::K3, stop)?;
        let expected = bounds::mantel_bound(n as u64);
        if got != expected {
            return Err(Error::FormulaMismatch { formula: "mantel_bound", n: n as u32, expected, got });
        }
        checks.push(FormulaCheck { n, formula: "mantel_bound", expected, got });
    }
    for n in (1..=n_max).filter(|&n| n != 5) {
        let got = strict_trivial_exact(n, Forbidden::Tp2, stop)?;
        let expected = bounds::tp2_exact_value(n as u64)?;
        if got != expected {
            return Err(Error::FormulaMismatch {
                formula: "tp2_exact_value",
                n: n as u32,
                expected,
                got,
            });
        }
        checks.push(FormulaCheck { n, formula: "tp2_exact_value", expected, got });
    }
    Ok(checks)
}
