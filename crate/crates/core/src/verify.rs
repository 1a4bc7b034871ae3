//! Named consistency checks over one cyclic pair.

use serde::Serialize;

use crate::channel::tables::{build_sync_table, reduced_rows_suffice, SyncVariant};
use crate::channel::{ancilla_z_equivalence, verify_encoding_circuit};
use crate::css::{correspondence_checks, correspondence_code};
use crate::cyclic::CyclicCodePair;
use crate::error::Result;
use crate::family::{
    admissible_specs, build_code_with, build_initial, gauge_fix, CodeSpec, DistanceMode, ExtendedCodeInstance, Family,
    GaugeFix, InitialCode,
};
use crate::gf2::BitVector;
use crate::pairing::PairingBasis;
use crate::pauli::PhaseMode;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Accumulates failures for one named check.
struct Check {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn error(&mut self, what: String) {
        self.cases += 1;
        self.failures.push(what);
    }

    fn finish(self) -> CheckResult {
        let detail = if self.failures.is_empty() {
            format!("{} case(s)", self.cases)
        } else {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            format!("{} of {} case(s) failed: {}", self.failures.len(), self.cases, shown.join("; "))
        };
        CheckResult { name: self.name.to_string(), passed: self.failures.is_empty(), detail }
    }
}

/// Every message for short messages, otherwise `limit` distinct seeded samples.
pub fn message_set(len: usize, limit: usize, seed: u64) -> Vec<BitVector> {
    use rand::{Rng, SeedableRng};
    if len == 0 {
        return vec![BitVector::zeros(0)];
    }
    if len < 64 && (1u64 << len) <= limit as u64 {
        return (0..1u128 << len).map(|v| BitVector::from_raw(len, v).expect("fits")).collect();
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mask = crate::gf2::bitvec::mask(len);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(limit);
    while out.len() < limit {
        let v = BitVector::from_raw(len, rng.gen::<u128>() & mask).expect("masked");
        if seen.insert(v) {
            out.push(v);
        }
    }
    out
}

fn spec_label(spec: &CodeSpec) -> String {
    format!("{}(a_l={}, a_r={}, y={})", spec.family, spec.a_l, spec.a_r, spec.y)
}

/// Runs the full suite. `basis` is normally `build_pairing_basis(pair)`;
/// passing a modified basis exercises the failure paths.
pub fn verify_pair(pair: &CyclicCodePair, basis: &PairingBasis) -> Vec<CheckResult> {
    let mut out = Vec::new();
    match basis.pairing.property_checks(&basis.rows) {
        Ok(props) => out.extend(props.into_iter().map(|(name, passed)| CheckResult {
            name: name.to_string(),
            passed,
            detail: String::new(),
        })),
        Err(e) => out.push(CheckResult { name: "pairing.spans".into(), passed: false, detail: e.to_string() }),
    }

    let mut specs: Vec<CodeSpec> = Vec::new();
    for f in Family::ALL {
        specs.extend(admissible_specs(pair, f));
    }
    let mut instances: Vec<(CodeSpec, ExtendedCodeInstance)> = Vec::new();
    let mut build = Check::new("family.build");
    for spec in &specs {
        match build_code_with(pair, basis, spec, DistanceMode::Skip) {
            Ok(inst) => {
                build.record(true, String::new);
                instances.push((spec.clone(), inst));
            }
            Err(e) => build.error(format!("{}: {e}", spec_label(spec))),
        }
    }
    out.push(build.finish());

    let mut structure = Check::new("family.structure");
    let mut params = Check::new("family.parameters");
    let mut tradeoff = Check::new("family.tradeoff");
    let mut shift = Check::new("family.shift-equivalence");
    let mut ancilla = Check::new("decode.ancilla-z-equivalence");
    let mut sync_tables = Check::new("tables.sync-injective");
    let mut message_tables = Check::new("tables.message-injective");
    let mut reduced = Check::new("tables.reduced-rows-suffice");
    for (spec, inst) in &instances {
        let label = spec_label(spec);
        let fails: Vec<&str> = inst.groups.structure_checks().into_iter().filter(|c| !c.1).map(|c| c.0).collect();
        structure.record(fails.is_empty(), || format!("{label}: {}", fails.join(",")));
        params.record(inst.parameters_match_prediction(), || {
            format!("{label}: {} vs predicted {:?}", inst.params, inst.predicted_parameters())
        });
        tradeoff.record(inst.tradeoff_check(), || format!("{label}: {}", inst.params));
        if spec.family.is_synchronizable() {
            for alpha in -(spec.a_l as i32)..=spec.a_r as i32 {
                let ok = inst.shift_equivalence(alpha).map(|(stab, _, modulo)| stab && modulo);
                shift.record(matches!(ok, Ok(true)), || format!("{label} alpha={alpha}"));
            }
            ancilla.record(ancilla_z_equivalence(inst), || label.clone());
            let variant = if spec.family.uses_y() { SyncVariant::C } else { SyncVariant::A };
            if let Err(e) = build_sync_table(inst, variant) {
                sync_tables.error(format!("{label}: {e}"));
            } else {
                sync_tables.record(true, String::new);
            }
            reduced.record(reduced_rows_suffice(inst, variant), || label.clone());
        }
        if spec.family.b_len(pair.gap()) + spec.family.c_len(pair.gap(), spec.y) > 0 && spec.a_l + spec.a_r == 0 {
            match build_sync_table(inst, SyncVariant::B) {
                Ok(_) => message_tables.record(true, String::new),
                Err(e) => message_tables.error(format!("{label}: {e}")),
            }
        }
    }
    out.extend([
        structure.finish(),
        params.finish(),
        tradeoff.finish(),
        shift.finish(),
        ancilla.finish(),
        sync_tables.finish(),
        message_tables.finish(),
        reduced.finish(),
    ]);

    out.push(message_distinctness(pair, basis));
    out.push(encoding_circuit(pair, basis));
    out.extend(gauge_fixing(pair, basis));
    for f in [Family::Q1, Family::Q5, Family::Q7] {
        let name = match f {
            Family::Q1 => "css.subsystem-matches-q1",
            Family::Q5 => "css.hybrid-matches-q5",
            _ => "css.hybrid-subsystem-matches-q7",
        };
        let mut check = Check::new(name);
        let result = correspondence_code(basis, f).and_then(|css| {
            let inst = build_code_with(pair, basis, &CodeSpec::new(f), DistanceMode::Skip)?;
            Ok(correspondence_checks(&css, &inst.groups))
        });
        match result {
            Ok(items) => {
                for (n, ok) in items {
                    check.record(ok, || n.to_string());
                }
            }
            Err(e) => check.error(e.to_string()),
        }
        out.push(check.finish());
    }
    out.push(distance_cross_check(&instances));
    out
}

/// Different messages give different stabilizer sign patterns.
fn message_distinctness(pair: &CyclicCodePair, basis: &PairingBasis) -> CheckResult {
    let mut check = Check::new("family.messages-distinct");
    let gap = pair.gap();
    for f in [Family::Q3, Family::Q4, Family::Q5, Family::Q6, Family::Q7] {
        let y = if f.uses_y() { 1 } else { 0 };
        if f.uses_y() && gap < 3 {
            continue;
        }
        let bs = message_set(f.b_len(gap), 8, 1);
        let cs = message_set(f.c_len(gap, y), 8, 2);
        let mut seen = std::collections::HashSet::new();
        let mut total = 0;
        for b in &bs {
            for c in &cs {
                let spec = CodeSpec::new(f).with_y(y).with_b(*b).with_c(*c);
                match build_code_with(pair, basis, &spec, DistanceMode::Skip) {
                    Ok(inst) => {
                        total += 1;
                        seen.insert(inst.groups.phase_signature());
                    }
                    Err(e) => check.error(format!("{f}: {e}")),
                }
            }
        }
        check.record(seen.len() == total, || format!("{f}: {} signatures for {total} messages", seen.len()));
    }
    check.finish()
}

fn encoding_circuit(pair: &CyclicCodePair, basis: &PairingBasis) -> CheckResult {
    let mut check = Check::new("circuit.encoding");
    for f in Family::ALL.into_iter().filter(|f| f.is_synchronizable()) {
        for spec in admissible_specs(pair, f) {
            let gap = pair.gap();
            // a nonzero message exercises the phase bookkeeping
            let spec = CodeSpec {
                message_b: Some(message_set(f.b_len(gap), 1, 7)[0]),
                message_c: Some(message_set(f.c_len(gap, spec.y), 1, 8)[0]),
                ..spec
            };
            match verify_encoding_circuit(pair, basis, &spec) {
                Ok(r) => check.record(r.ok, || format!("{}: {}", spec_label(&spec), r.diffs.join("; "))),
                Err(e) => check.error(format!("{}: {e}", spec_label(&spec))),
            }
        }
    }
    check.finish()
}

fn gauge_fixing(pair: &CyclicCodePair, basis: &PairingBasis) -> Vec<CheckResult> {
    let run = |name: &'static str, f: &dyn Fn() -> Result<bool>| {
        let mut c = Check::new(name);
        match f() {
            Ok(ok) => c.record(ok, || "groups differ".into()),
            Err(e) => c.error(e.to_string()),
        }
        c.finish()
    };
    let skip = DistanceMode::Skip;
    let same = |a: &ExtendedCodeInstance, b: &ExtendedCodeInstance| {
        a.groups.inner_stabilizer().equals(&b.groups.inner_stabilizer(), PhaseMode::Exact)
            && a.groups.inner_gauge().equals(&b.groups.inner_gauge(), PhaseMode::Ignore)
            && a.params == b.params
    };
    let mut out = vec![
        run("gauge-fix.z-ttilde", &|| {
            let q01 = build_initial(pair, basis, InitialCode::Subsystem, skip)?;
            Ok(same(&gauge_fix(&q01, GaugeFix::ZTtilde)?, &build_initial(pair, basis, InitialCode::ZFixed, skip)?))
        }),
        run("gauge-fix.x-ttilde", &|| {
            let q02 = build_initial(pair, basis, InitialCode::ZFixed, skip)?;
            Ok(same(&gauge_fix(&q02, GaugeFix::XTtilde)?, &build_initial(pair, basis, InitialCode::XzFixed, skip)?))
        }),
    ];
    out.push(run("gauge-fix.q7-to-q5", &|| {
        let q7 = build_code_with(pair, basis, &CodeSpec::new(Family::Q7), skip)?;
        let q5 = build_code_with(pair, basis, &CodeSpec::new(Family::Q5), skip)?;
        let fixed = gauge_fix(&q7, GaugeFix::XPtildeExtended)?;
        Ok(same(&fixed, &q5)
            && fixed.groups.outer_stabilizer().equals(&q5.groups.outer_stabilizer(), PhaseMode::Ignore))
    }));
    let mut q6 = Check::new("gauge-fix.q6-to-q4");
    for spec in admissible_specs(pair, Family::Q6) {
        let r = (|| -> Result<bool> {
            let q6i = build_code_with(pair, basis, &spec, skip)?;
            let q4 = build_code_with(pair, basis, &CodeSpec { family: Family::Q4, ..spec.clone() }, skip)?;
            let fixed = gauge_fix(&q6i, GaugeFix::XPtildeExtended)?;
            Ok(same(&fixed, &q4)
                && fixed.groups.outer_stabilizer().equals(&q4.groups.outer_stabilizer(), PhaseMode::Ignore))
        })();
        match r {
            Ok(ok) => q6.record(ok, || spec_label(&spec)),
            Err(e) => q6.error(format!("{}: {e}", spec_label(&spec))),
        }
    }
    out.push(q6.finish());
    out
}

/// Largest rank enumerated by the distance cross-check.
pub const CROSS_CHECK_BOUND: usize = crate::gf2::code::EXHAUSTIVE_BOUND;

/// Distance from the coset decomposition agrees with the direct search
/// wherever both are small enough to enumerate.
fn distance_cross_check(instances: &[(CodeSpec, ExtendedCodeInstance)]) -> CheckResult {
    let mut check = Check::new("distance.coset-form");
    for (spec, inst) in instances {
        let g = &inst.groups;
        if g.coset_search_rank() > CROSS_CHECK_BOUND {
            continue;
        }
        match (g.distance(), g.distance_from_cosets()) {
            (Ok(a), Ok(b)) => check.record(a == b, || format!("{}: {a:?} vs {b:?}", spec_label(spec))),
            (Err(e), _) | (_, Err(e)) => check.error(format!("{}: {e}", spec_label(spec))),
        }
    }
    check.finish()
}

/// True when every check passed.
pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
