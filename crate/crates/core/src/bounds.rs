//! Closed-form edge bounds and reference values. All formulas are computed in
//! exact integer or rational arithmetic — never floating point — so equality
//! assertions against search results and constructions are meaningful.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::{ratio, Rational};

/// Largest triangle-free edge count on `n` vertices: floor(n^2/4).
pub fn mantel_bound(n: u64) -> u64 {
    n * n / 4
}

/// Edge count of the balanced complete `r`-partite graph on `n` vertices,
/// the largest K_{r+1}-free graph.
pub fn turan_edges(n: u64, r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::BadArgument { what: "turan graph needs r >= 1" });
    }
    let big = n % r; // parts of size ceil(n/r)
    let small_size = n / r;
    let big_size = small_size + 1;
    let inside = big * big_size * (big_size - 1) / 2 + (r - big) * small_size.saturating_sub(1) * small_size / 2;
    Ok(n * n.saturating_sub(1) / 2 - inside)
}

/// The balanced complete `r`-partite graph itself, parts in id order (the
/// larger parts first, matching the counting in [`turan_edges`]).
pub fn turan_graph(n: usize, r: u64) -> Result<Graph> {
    if r == 0 {
        return Err(Error::BadArgument { what: "turan graph needs r >= 1" });
    }
    let mut part = alloc::vec![0u64; n];
    let big = n as u64 % r;
    let small_size = n as u64 / r;
    let mut v = 0usize;
    for p in 0..r {
        let size = if p < big { small_size + 1 } else { small_size };
        for _ in 0..size {
            if v < n {
                part[v] = p;
                v += 1;
            }
        }
    }
    let mut b = GraphBuilder::new(n)?;
    for u in 0..n as u16 {
        for w in u + 1..n as u16 {
            if part[u as usize] != part[w as usize] {
                b.add_edge(u, w)?;
            }
        }
    }
    Ok(b.freeze())
}

/// Exact maximum edge count of flattened-tetrahedron-free graphs, defined for
/// every n >= 1 except the single exceptional size n = 5 (where the complete
/// graph is smaller than the pattern and beats the formula).
pub fn tp2_exact_value(n: u64) -> Result<u64> {
    if n == 0 || n == 5 {
        return Err(Error::Domain { what: "tp2 exact value needs n >= 1, n != 5" });
    }
    if n % 4 == 2 {
        Ok(n * n / 4 + n / 2 - 1)
    } else {
        Ok(n * n / 4 + n / 2)
    }
}

/// Exact maximum edge count of 7-wheel-free graphs: floor(n^2/4 + n/2 + 1).
pub fn wheel7_bound(n: u64) -> u64 {
    (n * n + 2 * n + 4) / 4
}

/// Quadratic upper bound n^2/4 + 7n/2 for ten-point-pyramid-free graphs
/// (valid from n = 10 up), kept as an exact rational.
pub fn lemma1_bound(n: u64) -> Rational {
    ratio(n as i128 * n as i128, 4) + ratio(7 * n as i128, 2)
}

/// Asymptotic density (1 - 1/(chi-1)) * C(n,2) for a pattern of chromatic
/// number `chi`; zero for bipartite patterns.
pub fn ess_asymptote(chi: u32, n: u64) -> Result<Rational> {
    if chi < 2 {
        return Err(Error::BadArgument { what: "chromatic number must be >= 2" });
    }
    let pairs = ratio(n as i128 * (n as i128 - 1), 2);
    Ok((Rational::from(1) - ratio(1, chi as i128 - 1)) * pairs)
}

/// Conjectured maximum for ten-point-pyramid-free graphs: n^2/4 + n + 1 for
/// even n, n^2/4 + n + 3/4 otherwise. Integral for every n.
pub fn conjectured_tp3_max(n: u64) -> Rational {
    let base = ratio(n as i128 * n as i128, 4) + Rational::from(n as i128);
    if n.is_multiple_of(2) {
        base + Rational::from(1)
    } else {
        base + ratio(3, 4)
    }
}

/// Which closed form a [`BoundReport`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Mantel,
    Turan { r: u32 },
    Tp2Exact,
    Wheel7,
    Lemma1,
    EssAsymptote { chi: u32 },
    ConjectureTp3,
}

impl BoundKind {
    pub fn label(&self) -> &'static str {
        match self {
            BoundKind::Mantel => "mantel",
            BoundKind::Turan { .. } => "turan",
            BoundKind::Tp2Exact => "tp2_exact",
            BoundKind::Wheel7 => "wheel7",
            BoundKind::Lemma1 => "lemma1",
            BoundKind::EssAsymptote { .. } => "ess_asymptote",
            BoundKind::ConjectureTp3 => "conjecture_tp3",
        }
    }

    pub fn formula(&self) -> &'static str {
        match self {
            BoundKind::Mantel => "floor(n^2/4)",
            BoundKind::Turan { .. } => "e(T_r(n))",
            BoundKind::Tp2Exact => "floor(n^2/4)+floor(n/2), minus 1 when n = 2 mod 4",
            BoundKind::Wheel7 => "floor(n^2/4+n/2+1)",
            BoundKind::Lemma1 => "n^2/4+7n/2",
            BoundKind::EssAsymptote { .. } => "(1-1/(chi-1))C(n,2)",
            BoundKind::ConjectureTp3 => "n^2/4+n+1 even, n^2/4+n+3/4 odd",
        }
    }
}

/// A bound value tagged with its kind, for tables and report serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub n: u64,
    pub value: Rational,
}

/// Evaluates one closed form at `n`.
pub fn evaluate(kind: BoundKind, n: u64) -> Result<BoundReport> {
    let value = match kind {
        BoundKind::Mantel => Rational::from(mantel_bound(n) as i128),
        BoundKind::Turan { r } => Rational::from(turan_edges(n, r as u64)? as i128),
        BoundKind::Tp2Exact => Rational::from(tp2_exact_value(n)? as i128),
        BoundKind::Wheel7 => Rational::from(wheel7_bound(n) as i128),
        BoundKind::Lemma1 => lemma1_bound(n),
        BoundKind::EssAsymptote { chi } => ess_asymptote(chi, n)?,
        BoundKind::ConjectureTp3 => conjectured_tp3_max(n),
    };
    Ok(BoundReport { kind, n, value })
}

/// Renders an exact rational as `a` or `a/b` for tables.
pub fn render_rational(r: &Rational) -> alloc::string::String {
    use alloc::format;
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
