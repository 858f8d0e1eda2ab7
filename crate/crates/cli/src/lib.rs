//! Std-side services around the core lab: a work-splitting parallel driver
//! for the exact search, run manifests with input digests, graph6 file IO,
//! and the JSON-facing report types the command line emits.

pub mod dto;
pub mod gio;
pub mod manifest;
pub mod schema;

use std::time::Instant;

use rayon::prelude::*;
use turanlab_core::detect::Forbidden;
use turanlab_core::search::{
    exact_ex, exact_ex_prefixes, exact_ex_subtree, merge_results, SearchOpts, SearchResult,
    SharedIncumbent, SlotOrder,
};
use turanlab_core::{Error, Result};

/// Knobs for [`run_exact_ex`]. `jobs = 1` runs the plain sequential engine;
/// more jobs split the tree into prefix subtrees and fan them out over a
/// dedicated worker pool. Values are identical for any worker count — only
/// node counters and wall time vary.
pub struct DriverOpts {
    pub jobs: usize,
    pub budget: Option<std::time::Duration>,
    pub collect_extremal: bool,
    pub slot_order: SlotOrder,
    /// Prefix split depth for parallel runs; `None` picks a stock depth.
    pub split_depth: Option<usize>,
}

impl Default for DriverOpts {
    fn default() -> Self {
        DriverOpts {
            jobs: 1,
            budget: None,
            collect_extremal: false,
            slot_order: SlotOrder::RowForward,
            split_depth: None,
        }
    }
}

fn default_split_depth(n: u16) -> usize {
    // deep enough that even a heavily pruned tree yields hundreds of
    // subtrees, shallow enough that replaying a prefix stays trivial
    let slots = (n as usize) * (n as usize - 1) / 2;
    slots.saturating_sub(4).min(12)
}

/// Exact extremal search with a wall-clock budget and a worker pool. The
/// pool shares one monotone incumbent cell, so workers prune against each
/// other's finds; a budget expiry surfaces as `status = timeout` with the
/// best incumbent, exactly like the sequential engine.
pub fn run_exact_ex(n: u16, forbid: Forbidden, opts: &DriverOpts) -> Result<SearchResult> {
    let started = Instant::now();
    let deadline = opts.budget.map(|b| started + b);
    let stop = move || deadline.is_some_and(|d| Instant::now() >= d);
    let shared = SharedIncumbent::new(0);
    let base = SearchOpts {
        stop: Some(&stop),
        collect_extremal: opts.collect_extremal,
        slot_order: opts.slot_order,
        shared: Some(&shared),
        ..SearchOpts::default()
    };
    let mut result = if opts.jobs <= 1 {
        exact_ex(n, forbid, &base)?
    } else {
        let depth = opts.split_depth.unwrap_or_else(|| default_split_depth(n));
        match exact_ex_prefixes(n, forbid, &base, depth) {
            Ok(prefixes) if prefixes.len() > 1 => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.jobs)
                    .build()
                    .map_err(|_| Error::BadArgument { what: "worker pool construction" })?;
                let parts: Result<Vec<SearchResult>> = pool.install(|| {
                    prefixes
                        .par_iter()
                        .map(|p| exact_ex_subtree(n, forbid, &base, p))
                        .collect()
                });
                merge_results(&parts?).expect("one result per prefix, same search")
            }
            // a seed at the cap admits no subtrees; the budget can also burn
            // out mid-split — both fall back to the sequential engine, which
            // reproduces the seed-only result or the honest timeout
            Ok(_) | Err(Error::Stopped) => exact_ex(n, forbid, &base)?,
            Err(e) => return Err(e),
        }
    };
    result.elapsed = Some(started.elapsed());
    Ok(result)
}

/// `--jobs` default: the `TURANLAB_JOBS` variable when set and sane,
/// otherwise the machine's available parallelism.
pub fn default_jobs() -> usize {
    if let Ok(raw) = std::env::var("TURANLAB_JOBS") {
        if let Ok(v) = raw.trim().parse::<usize>() {
            if v >= 1 {
                return v;
            }
        }
    }
    std::thread::available_parallelism().map(|v| v.get()).unwrap_or(1)
}
