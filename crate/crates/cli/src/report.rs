use std::fmt::Write;

use serde::Serialize;

use qsync::channel::TrialRecord;
use qsync::cyclic::CyclicCodePair;
use qsync::family::{CodeParameters, ExtendedCodeInstance};
use qsync::verify::{all_passed, CheckResult};

#[derive(Debug, Serialize)]
pub struct LogicalPair {
    pub x: String,
    pub z: String,
}

/// JSON view of a constructed code with operators as Pauli strings.
#[derive(Debug, Serialize)]
pub struct InstanceJson {
    pub code: String,
    pub n: usize,
    pub a_l: usize,
    pub a_r: usize,
    pub y: usize,
    pub message_b: String,
    pub message_c: String,
    pub parameter_line: String,
    pub parameters: CodeParameters,
    pub stabilizers: Vec<String>,
    pub gauge: Vec<String>,
    pub logicals: Vec<LogicalPair>,
    pub translations: Vec<String>,
    pub provenance: String,
}

impl From<&ExtendedCodeInstance> for InstanceJson {
    fn from(inst: &ExtendedCodeInstance) -> Self {
        let strings = |ops: &[qsync::pauli::PauliOperator]| ops.iter().map(|o| o.to_string()).collect();
        let g = &inst.groups;
        InstanceJson {
            code: inst.kind.to_string(),
            n: inst.n(),
            a_l: inst.extension.a_l,
            a_r: inst.extension.a_r,
            y: inst.y,
            message_b: inst.message_b.to_string(),
            message_c: inst.message_c.to_string(),
            parameter_line: inst.params.to_string(),
            parameters: inst.params,
            stabilizers: strings(&g.stabilizers),
            gauge: strings(&g.gauge),
            logicals: g.logicals.iter().map(|(x, z)| LogicalPair { x: x.to_string(), z: z.to_string() }).collect(),
            translations: strings(&g.translations),
            provenance: inst.provenance.clone(),
        }
    }
}

pub fn instance_text(inst: &ExtendedCodeInstance) -> String {
    let g = &inst.groups;
    let mut s = String::new();
    let _ = writeln!(s, "code {} on {} qubits (a_l={}, a_r={})", inst.kind, g.num_qubits, inst.extension.a_l, inst.extension.a_r);
    for (title, ops) in [("stabilizers", &g.stabilizers), ("gauge", &g.gauge), ("translations", &g.translations)] {
        let _ = writeln!(s, "{title}:");
        for op in ops {
            let _ = writeln!(s, "  {op}");
        }
    }
    let _ = writeln!(s, "logicals:");
    for (x, z) in &g.logicals {
        let _ = writeln!(s, "  X {x}\n  Z {z}");
    }
    s
}

pub const PARAMS_CSV_HEADER: &str = "code,n,num_qubits,k,m,r,d,d_sync,d_sync_max";

pub fn params_csv_row(inst: &ExtendedCodeInstance) -> String {
    let p = &inst.params;
    let d = p.d.map(|d| d.to_string()).unwrap_or_default();
    format!("{},{},{},{},{},{},{},{},{}", inst.kind, inst.n(), p.num_qubits, p.k, p.m, p.r, d, p.d_sync, p.d_sync_max)
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub p: String,
    pub q: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn new(pair: &CyclicCodePair, checks: Vec<CheckResult>) -> Self {
        VerifyReport {
            n: pair.n(),
            p: pair.c.generator().to_string(),
            q: pair.d.generator().to_string(),
            passed: all_passed(&checks),
            checks,
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!("pair n={} p={} q={}\n", self.n, self.p, self.q);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let line = format!("  {status} {} {}", c.name, c.detail);
            let _ = writeln!(s, "{}", line.trim_end());
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(s, "  {} checks, {failed} failed", self.checks.len());
        s
    }
}

/// Flat CSV row; the csv crate cannot write nested or optional enums directly.
#[derive(Debug, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub alpha: i32,
    pub x_errors: u32,
    pub z_errors: u32,
    pub recovered_alpha: Option<i32>,
    pub sync_ok: bool,
    pub classical_ok: bool,
    pub quantum_ok: bool,
    pub residual: &'static str,
}

impl From<&TrialRecord> for TrialRow {
    fn from(r: &TrialRecord) -> Self {
        TrialRow {
            trial: r.trial,
            alpha: r.alpha,
            x_errors: r.x_errors,
            z_errors: r.z_errors,
            recovered_alpha: r.recovered_alpha,
            sync_ok: r.sync_ok,
            classical_ok: r.classical_ok,
            quantum_ok: r.quantum_ok,
            residual: r.residual.as_str(),
        }
    }
}
