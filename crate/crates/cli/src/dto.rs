//! JSON/CSV-facing report types. Each mirrors a core report struct with
//! wire-friendly fields: durations as integer milliseconds, rationals as
//! `a` / `a/b` strings, enums as their snake_case labels. Conversions are
//! one-way (core -> wire); commands never parse these back.

use serde::Serialize;
use turanlab_core::bounds::{self, render_rational, BoundKind};
use turanlab_core::construct::CertifiedReport;
use turanlab_core::detect::{ColoringClaimReport, ForbiddenWitness, TP3Witness};
use turanlab_core::prooflab::{ParamReport, Params, ProofTrace};
use turanlab_core::search::{ConjectureRow, FormulaCheck, SearchResult};

fn elapsed_ms(elapsed: Option<core::time::Duration>) -> Option<u128> {
    elapsed.map(|d| d.as_millis())
}

#[derive(Debug, Serialize)]
pub struct SearchResultDto {
    pub n: u16,
    pub forbid: &'static str,
    pub value: u64,
    /// `exact`, `lower_bound_only`, or `timeout`.
    pub status: &'static str,
    pub extremal_g6: Vec<String>,
    pub dedup_exhaustive: bool,
    pub extremal_truncated: bool,
    pub upper_bound: String,
    pub nodes: u64,
    pub elapsed_ms: Option<u128>,
}

impl From<&SearchResult> for SearchResultDto {
    fn from(r: &SearchResult) -> Self {
        SearchResultDto {
            n: r.n,
            forbid: r.forbidden.label(),
            value: r.value,
            status: r.status.label(),
            extremal_g6: r.extremal_graphs.clone(),
            dedup_exhaustive: r.dedup_exhaustive,
            extremal_truncated: r.extremal_truncated,
            upper_bound: r.upper_bound_used.clone(),
            nodes: r.nodes_expanded,
            elapsed_ms: elapsed_ms(r.elapsed),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConjectureRowDto {
    pub n: u16,
    /// Exact rational as `a` or `a/b`.
    pub conjectured: String,
    pub computed_lower: u64,
    pub computed_upper: Option<u64>,
    /// `consistent`, `violated`, or `open`.
    pub verdict: &'static str,
}

impl From<&ConjectureRow> for ConjectureRowDto {
    fn from(r: &ConjectureRow) -> Self {
        ConjectureRowDto {
            n: r.n,
            conjectured: render_rational(&r.conjectured),
            computed_lower: r.computed_lower,
            computed_upper: r.computed_upper,
            verdict: r.verdict.label(),
        }
    }
}

/// CSV with header: one line per conjecture row, empty cell for an
/// unknown upper bound.
pub fn conjecture_rows_csv(rows: &[ConjectureRowDto]) -> String {
    let mut out = String::from("n,conjectured,computed_lower,computed_upper,verdict\n");
    for r in rows {
        let upper = r.computed_upper.map(|u| u.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n, r.conjectured, r.computed_lower, upper, r.verdict
        ));
    }
    out
}

/// Either witness shape a detector can produce: a flat vertex map for a
/// generic embedding, or the structured hub/rim/apex form.
#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDto {
    Map { vertices: Vec<u16> },
    Pyramid { hub: u16, rim: Vec<u16>, apexes: Vec<u16> },
}

impl From<&TP3Witness> for WitnessDto {
    fn from(w: &TP3Witness) -> Self {
        WitnessDto::Pyramid {
            hub: w.wheel.hub,
            rim: w.wheel.rim.to_vec(),
            apexes: w.apexes.to_vec(),
        }
    }
}

impl From<&ForbiddenWitness> for WitnessDto {
    fn from(w: &ForbiddenWitness) -> Self {
        match w {
            ForbiddenWitness::Map(e) => WitnessDto::Map { vertices: e.map.clone() },
            ForbiddenWitness::Pyramid(p) => WitnessDto::from(p),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TraceStepDto {
    pub stage: &'static str,
    pub input: String,
    pub output: String,
    pub success: bool,
}

#[derive(Debug, Serialize)]
pub struct ChaseReportDto {
    pub n: u16,
    pub edges: u32,
    pub witness_found: bool,
    pub witness: Option<WitnessDto>,
    pub trace: Vec<TraceStepDto>,
}

pub fn chase_report(
    n: u16,
    edges: u32,
    witness: Option<&TP3Witness>,
    trace: &ProofTrace,
) -> ChaseReportDto {
    ChaseReportDto {
        n,
        edges,
        witness_found: witness.is_some(),
        witness: witness.map(WitnessDto::from),
        trace: trace
            .steps
            .iter()
            .map(|s| TraceStepDto {
                stage: s.stage,
                input: s.input.clone(),
                output: s.output.clone(),
                success: s.success,
            })
            .collect(),
    }
}

#[derive(Debug, Serialize)]
pub struct ParamReportDto {
    pub delta: String,
    pub beta: String,
    pub gamma: String,
    pub n: u64,
    pub b1: bool,
    pub b2: bool,
    pub b3: bool,
    pub beta_def: bool,
    pub all: bool,
}

pub fn param_report(params: &Params, n: u64, report: &ParamReport) -> ParamReportDto {
    ParamReportDto {
        delta: render_rational(&params.delta),
        beta: render_rational(&params.beta),
        gamma: render_rational(&params.gamma),
        n,
        b1: report.b1,
        b2: report.b2,
        b3: report.b3,
        beta_def: report.beta_def,
        all: report.all,
    }
}

/// One input graph's verdict in a `check-free` run.
#[derive(Debug, Serialize)]
pub struct CheckFreeLineDto {
    /// 1-based index within the input file.
    pub index: usize,
    pub n: u16,
    pub edges: u32,
    pub forbid: &'static str,
    pub free: bool,
    pub witness: Option<WitnessDto>,
}

#[derive(Debug, Serialize)]
pub struct ConstructReportDto {
    pub family: &'static str,
    pub n: u16,
    pub seed: u64,
    pub edge_count: u32,
    /// The closed-form edge count the family promises at this size, if any.
    pub claimed_count: Option<String>,
    pub forbid: &'static str,
    pub witness_absent: bool,
    pub witness: Option<WitnessDto>,
    pub graph6: String,
    pub elapsed_ms: Option<u128>,
}

pub fn construct_report(
    family: &'static str,
    seed: u64,
    graph6: String,
    cert: &CertifiedReport,
) -> ConstructReportDto {
    ConstructReportDto {
        family,
        n: cert.n,
        seed,
        edge_count: cert.edge_count,
        claimed_count: cert.claimed_count.as_ref().map(render_rational),
        forbid: cert.free_of.label(),
        witness_absent: cert.witness_absent,
        witness: cert.witness.as_ref().map(WitnessDto::from),
        graph6,
        elapsed_ms: elapsed_ms(cert.elapsed),
    }
}

#[derive(Debug, Serialize)]
pub struct ColoringClaimDto {
    pub colorings_checked: u64,
    pub all_pass: bool,
    pub counterexample: Option<Vec<u16>>,
}

impl From<&ColoringClaimReport> for ColoringClaimDto {
    fn from(r: &ColoringClaimReport) -> Self {
        ColoringClaimDto {
            colorings_checked: r.colorings_checked,
            all_pass: r.all_pass,
            counterexample: r.counterexample.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FormulaCheckDto {
    pub n: u16,
    pub formula: &'static str,
    pub expected: u64,
    pub got: u64,
}

impl From<&FormulaCheck> for FormulaCheckDto {
    fn from(c: &FormulaCheck) -> Self {
        FormulaCheckDto { n: c.n, formula: c.formula, expected: c.expected, got: c.got }
    }
}

/// One row of the closed-form table. Rationals render as `a` or `a/b`;
/// the tetrahedron cell is blank at sizes where that value is undefined.
#[derive(Debug, Serialize)]
pub struct FormulaRowDto {
    pub n: u64,
    pub mantel: String,
    pub t3: String,
    pub tp2_exact: String,
    pub wheel7: String,
    pub lemma1: String,
    pub conj_tp3: String,
}

pub fn formula_row(n: u64) -> FormulaRowDto {
    let cell = |kind: BoundKind| -> String {
        bounds::evaluate(kind, n).map(|r| render_rational(&r.value)).unwrap_or_default()
    };
    FormulaRowDto {
        n,
        mantel: cell(BoundKind::Mantel),
        t3: cell(BoundKind::Turan { r: 3 }),
        tp2_exact: cell(BoundKind::Tp2Exact),
        wheel7: cell(BoundKind::Wheel7),
        lemma1: cell(BoundKind::Lemma1),
        conj_tp3: cell(BoundKind::ConjectureTp3),
    }
}

pub fn formula_rows_csv(rows: &[FormulaRowDto]) -> String {
    let mut out = String::from("n,mantel,t3,tp2_exact,wheel7,lemma1,conj_tp3\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n, r.mantel, r.t3, r.tp2_exact, r.wheel7, r.lemma1, r.conj_tp3
        ));
    }
    out
}
