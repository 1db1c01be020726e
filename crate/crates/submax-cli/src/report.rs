//! Machine-readable reports. Field order is fixed by struct declaration so
//! JSON output is byte-stable; wall time lives in the trailing `meta` block,
//! which is the only part excluded from determinism guarantees. CSV output
//! is a flat view of the same run; every number it shares with the JSON is
//! rendered through the same serializer, so the two never disagree in the
//! last digit.

use serde::Serialize;
use submax::check::{PropertyReport, Witness};
use submax::oracle::OracleResult;
use submax::solve::{GapDiagnostic, SolveResult, Step};
use submax::Subset;

use crate::instance::Instance;

/// A number formatted exactly as serde_json renders it.
pub fn jnum(v: f64) -> String {
    serde_json::to_string(&v).expect("report numbers are finite")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn members(s: &Subset) -> Vec<usize> {
    s.members().collect()
}

fn joined(members: &[usize]) -> String {
    members
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
pub struct InstanceBlock {
    pub path: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
    pub checksum: String,
}

impl InstanceBlock {
    pub fn of(inst: &Instance) -> Self {
        InstanceBlock {
            path: inst.path.clone(),
            kind: inst.kind.as_str(),
            m: inst.customers,
            n: inst.ground,
            checksum: inst.checksum.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct Meta {
    pub wall_time_ms: f64,
}

#[derive(Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub element: usize,
    pub gain: f64,
    pub objective: f64,
}

impl From<&Step> for TraceStep {
    fn from(s: &Step) -> Self {
        TraceStep {
            step: s.step,
            element: s.element,
            gain: s.gain,
            objective: s.objective,
        }
    }
}

#[derive(Serialize)]
pub struct GapBlock {
    pub deltas: Vec<f64>,
    pub ratios: Vec<Option<f64>>,
    pub contraction_holds: bool,
}

impl From<&GapDiagnostic> for GapBlock {
    fn from(g: &GapDiagnostic) -> Self {
        GapBlock {
            deltas: g.deltas.clone(),
            ratios: g.ratios.clone(),
            contraction_holds: g.contraction_holds,
        }
    }
}

#[derive(Serialize)]
pub struct OracleBlock {
    pub value: f64,
    pub best_set: Vec<usize>,
    pub sets_evaluated: u64,
    pub ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapBlock>,
}

impl OracleBlock {
    pub fn of(oracle: &OracleResult, objective: f64, gap: Option<&GapDiagnostic>) -> Self {
        // An all-zero instance has OPT = 0; every solution attains it.
        let ratio = if oracle.best_value == 0.0 {
            1.0
        } else {
            objective / oracle.best_value
        };
        OracleBlock {
            value: oracle.best_value,
            best_set: members(&oracle.best_set),
            sets_evaluated: oracle.sets_evaluated,
            ratio,
            gap: gap.map(GapBlock::from),
        }
    }
}

#[derive(Serialize)]
pub struct SolveReport {
    pub instance: InstanceBlock,
    pub algorithm: &'static str,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_size: Option<usize>,
    pub objective: f64,
    pub selected: Vec<usize>,
    pub trace: Vec<TraceStep>,
    pub evaluations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleBlock>,
    pub meta: Meta,
}

impl SolveReport {
    pub fn new(
        inst: &Instance,
        result: &SolveResult,
        epsilon: Option<f64>,
        oracle: Option<OracleBlock>,
        meta: Meta,
    ) -> Self {
        SolveReport {
            instance: InstanceBlock::of(inst),
            algorithm: result.algorithm.name(),
            k: result.trace.len(),
            seed: result.seed,
            epsilon,
            sample_size: result.sample_size,
            objective: result.objective(),
            selected: result.order(),
            trace: result.trace.iter().map(TraceStep::from).collect(),
            evaluations: result.evaluations,
            oracle,
            meta,
        }
    }

    /// One row per step, run-level columns repeated. Numbers match the JSON
    /// byte for byte.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "algorithm,kind,checksum,m,n,k,seed,epsilon,sample_size,\
             step,element,gain,step_objective,objective,evaluations,\
             oracle_value,oracle_best_set,ratio\n",
        );
        for step in &self.trace {
            let fields = [
                self.algorithm.to_string(),
                self.instance.kind.to_string(),
                self.instance.checksum.clone(),
                opt(&self.instance.m),
                self.instance.n.to_string(),
                self.k.to_string(),
                opt(&self.seed),
                self.epsilon.map(jnum).unwrap_or_default(),
                opt(&self.sample_size),
                step.step.to_string(),
                step.element.to_string(),
                jnum(step.gain),
                jnum(step.objective),
                jnum(self.objective),
                self.evaluations.to_string(),
                self.oracle.as_ref().map(|o| jnum(o.value)).unwrap_or_default(),
                self.oracle.as_ref().map(|o| joined(&o.best_set)).unwrap_or_default(),
                self.oracle.as_ref().map(|o| jnum(o.ratio)).unwrap_or_default(),
            ];
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModeBlock {
    Exhaustive,
    Sampled { budget: u64, seed: u64 },
}

#[derive(Serialize)]
pub struct WitnessBlock {
    pub a: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub magnitude: f64,
}

impl From<&Witness> for WitnessBlock {
    fn from(w: &Witness) -> Self {
        WitnessBlock {
            a: members(&w.a),
            b: w.b.as_ref().map(members),
            v: w.v,
            lhs: w.lhs,
            rhs: w.rhs,
            magnitude: w.magnitude,
        }
    }
}

#[derive(Serialize)]
pub struct PropertyBlock {
    pub property: &'static str,
    pub holds: bool,
    pub pairs_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessBlock>,
}

impl PropertyBlock {
    pub fn of(property: &'static str, report: &PropertyReport) -> Self {
        PropertyBlock {
            property,
            holds: report.holds,
            pairs_checked: report.pairs_checked,
            witness: report.witness.as_ref().map(WitnessBlock::from),
        }
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    pub instance: InstanceBlock,
    pub mode: ModeBlock,
    pub properties: Vec<PropertyBlock>,
    pub all_hold: bool,
    pub meta: Meta,
}

impl CheckReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "kind,checksum,n,mode,budget,seed,property,holds,pairs_checked,\
             witness_a,witness_b,witness_v,lhs,rhs,magnitude\n",
        );
        let (mode, budget, seed) = match &self.mode {
            ModeBlock::Exhaustive => ("exhaustive", String::new(), String::new()),
            ModeBlock::Sampled { budget, seed } => {
                ("sampled", budget.to_string(), seed.to_string())
            }
        };
        for p in &self.properties {
            let w = p.witness.as_ref();
            let fields = [
                self.instance.kind.to_string(),
                self.instance.checksum.clone(),
                self.instance.n.to_string(),
                mode.to_string(),
                budget.clone(),
                seed.clone(),
                p.property.to_string(),
                p.holds.to_string(),
                p.pairs_checked.to_string(),
                w.map(|w| joined(&w.a)).unwrap_or_default(),
                w.and_then(|w| w.b.as_deref()).map(joined).unwrap_or_default(),
                w.and_then(|w| w.v).map(|v| v.to_string()).unwrap_or_default(),
                w.map(|w| jnum(w.lhs)).unwrap_or_default(),
                w.map(|w| jnum(w.rhs)).unwrap_or_default(),
                w.map(|w| jnum(w.magnitude)).unwrap_or_default(),
            ];
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize)]
pub struct Stats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn over(values: impl Iterator<Item = f64>) -> Stats {
        let mut count = 0u64;
        let mut sum = 0.0;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            count += 1;
            sum += v;
            min = min.min(v);
            max = max.max(v);
        }
        Stats {
            mean: sum / count as f64,
            min,
            max,
        }
    }
}

#[derive(Serialize)]
pub struct BenchOracleBlock {
    pub value: f64,
    pub best_set: Vec<usize>,
    pub sets_evaluated: u64,
}

impl From<&OracleResult> for BenchOracleBlock {
    fn from(o: &OracleResult) -> Self {
        BenchOracleBlock {
            value: o.best_value,
            best_set: members(&o.best_set),
            sets_evaluated: o.sets_evaluated,
        }
    }
}

#[derive(Serialize)]
pub struct BenchRow {
    pub algorithm: &'static str,
    pub runs: u64,
    pub objective: Stats,
    pub evaluations: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<Stats>,
}

#[derive(Serialize)]
pub struct BenchReport {
    pub instance: InstanceBlock,
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub sample_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<BenchOracleBlock>,
    pub rows: Vec<BenchRow>,
    pub meta: Meta,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "kind,checksum,m,n,k,trials,seed,epsilon,sample_size,oracle_value,\
             algorithm,runs,objective_mean,objective_min,objective_max,\
             evaluations_mean,evaluations_min,evaluations_max,\
             ratio_mean,ratio_min,ratio_max\n",
        );
        for row in &self.rows {
            let fields = [
                self.instance.kind.to_string(),
                self.instance.checksum.clone(),
                opt(&self.instance.m),
                self.instance.n.to_string(),
                self.k.to_string(),
                self.trials.to_string(),
                self.seed.to_string(),
                self.epsilon.map(jnum).unwrap_or_default(),
                self.sample_size.to_string(),
                self.oracle.as_ref().map(|o| jnum(o.value)).unwrap_or_default(),
                row.algorithm.to_string(),
                row.runs.to_string(),
                jnum(row.objective.mean),
                jnum(row.objective.min),
                jnum(row.objective.max),
                jnum(row.evaluations.mean),
                jnum(row.evaluations.min),
                jnum(row.evaluations.max),
                row.ratio.as_ref().map(|r| jnum(r.mean)).unwrap_or_default(),
                row.ratio.as_ref().map(|r| jnum(r.min)).unwrap_or_default(),
                row.ratio.as_ref().map(|r| jnum(r.max)).unwrap_or_default(),
            ];
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}
