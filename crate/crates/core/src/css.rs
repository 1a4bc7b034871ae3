//! CSS-type constructions over arbitrary binary linear codes: plain,
//! subsystem, hybrid and hybrid subsystem.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{CodeGroups, Family};
use crate::gf2::linalg::Basis;
use crate::gf2::{BitVector, LinearCode};
use crate::pairing::PairingBasis;
use crate::pauli::{PauliGroupSpan, PauliOperator, PhaseMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssInput {
    pub c_x: LinearCode,
    pub c_z: LinearCode,
    /// Supercodes for the hybrid constructions.
    pub d_x: Option<LinearCode>,
    pub d_z: Option<LinearCode>,
}

impl CssInput {
    pub fn new(c_x: LinearCode, c_z: LinearCode) -> Self {
        CssInput { c_x, c_z, d_x: None, d_z: None }
    }

    pub fn with_supercodes(mut self, d_x: LinearCode, d_z: LinearCode) -> Self {
        self.d_x = Some(d_x);
        self.d_z = Some(d_z);
        self
    }

    pub fn n(&self) -> usize {
        self.c_x.len()
    }

    fn check_lengths(&self) -> Result<()> {
        let n = self.n();
        for code in [Some(&self.c_z), self.d_x.as_ref(), self.d_z.as_ref()].into_iter().flatten() {
            if code.len() != n {
                return Err(Error::LengthMismatch { left: n, right: code.len() });
            }
        }
        Ok(())
    }

    fn supercodes(&self) -> Result<(&LinearCode, &LinearCode)> {
        match (&self.d_x, &self.d_z) {
            (Some(dx), Some(dz)) => {
                if !self.c_x.is_subcode_of(dx)? || !self.c_z.is_subcode_of(dz)? {
                    return Err(Error::InvalidCss("D_x and D_z must contain C_x and C_z".into()));
                }
                Ok((dx, dz))
            }
            _ => Err(Error::InvalidCss("hybrid constructions need both supercodes D_x and D_z".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CssKind {
    Stabilizer,
    Subsystem,
    Hybrid,
    HybridSubsystem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CssParameters {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub r: usize,
    pub d_x: Option<u32>,
    pub d_z: Option<u32>,
    pub d: Option<u32>,
}

impl CssParameters {
    /// CSV header matching [`CssParameters::csv_row`].
    pub const CSV_HEADER: &'static str = "n,k,m,r,d_x,d_z,d";

    pub fn csv_row(&self) -> String {
        let f = |d: Option<u32>| d.map_or_else(String::new, |d| d.to_string());
        format!("{},{},{},{},{},{},{}", self.n, self.k, self.m, self.r, f(self.d_x), f(self.d_z), f(self.d))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CssCode {
    pub kind: CssKind,
    /// Inner stabilizer/gauge generators and translation operators.
    pub groups: CodeGroups,
    /// Outer stabilizer generators read off the supercodes.
    pub outer_stabilizer: Vec<PauliOperator>,
    /// Outer gauge generators read off the supercodes (besides iI).
    pub outer_gauge: Vec<PauliOperator>,
    pub params: CssParameters,
    /// Set when the classical count from the dimension formula differs from
    /// the count of independent sign patterns the translations produce.
    pub degenerate_classical: bool,
}

impl CssCode {
    pub fn outer_stabilizer_span(&self) -> PauliGroupSpan {
        PauliGroupSpan::new(self.groups.num_qubits, self.outer_stabilizer.clone()).expect("uniform size")
    }

    pub fn outer_gauge_span(&self) -> PauliGroupSpan {
        PauliGroupSpan::new(self.groups.num_qubits, self.outer_gauge.clone()).expect("uniform size")
    }

    /// Outer groups read off the supercodes agree with the ones derived
    /// from the translation operators (phases ignored).
    pub fn outer_groups_consistent(&self) -> bool {
        self.outer_stabilizer_span().equals(&self.groups.outer_stabilizer(), PhaseMode::Ignore)
            && self.outer_gauge_span().equals(&self.groups.outer_gauge(), PhaseMode::Ignore)
    }
}

fn xs(code: &LinearCode) -> Vec<PauliOperator> {
    code.basis().iter().map(|v| PauliOperator::x_type(*v)).collect()
}

fn zs(code: &LinearCode) -> Vec<PauliOperator> {
    code.basis().iter().map(|v| PauliOperator::z_type(*v)).collect()
}

/// Canonical representatives of a basis of `big / small`: rows of `big`
/// reduced modulo `small`, then brought to reduced echelon form.
pub fn coset_representatives(big: &LinearCode, small: &LinearCode) -> Vec<BitVector> {
    let n = big.len();
    let small_basis = Basis::from_rows(small.basis().iter().map(|v| v.bits()));
    let residues = Basis::from_rows(big.basis().iter().map(|v| small_basis.reduce(v.bits())));
    residues.rows().into_iter().map(|r| BitVector::from_raw(n, r).expect("fits")).collect()
}

/// min wt(a \ b), or `None` when the enumeration would be too large.
fn distance_part(a: &LinearCode, b: &LinearCode) -> Result<Option<u32>> {
    match a.min_weight_excluding(b) {
        Ok(d) => Ok(d),
        Err(Error::DimensionTooLarge { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn combine(d_x: Option<u32>, d_z: Option<u32>) -> Option<u32> {
    match (d_x, d_z) {
        (Some(a), Some(b)) => Some(a.min(b)),
        _ => None,
    }
}

/// Stabilizer code ⟨X(C_z⊥), Z(C_x⊥)⟩; needs C_z⊥ ⊆ C_x.
pub fn css_code(c_x: &LinearCode, c_z: &LinearCode) -> Result<CssCode> {
    let input = CssInput::new(c_x.clone(), c_z.clone());
    input.check_lengths()?;
    let n = input.n();
    let cz_dual = c_z.dual();
    let cx_dual = c_x.dual();
    if !cz_dual.is_subcode_of(c_x)? {
        return Err(Error::InvalidCss("C_z⊥ must be contained in C_x".into()));
    }
    let stabilizers: Vec<PauliOperator> = xs(&cz_dual).into_iter().chain(zs(&cx_dual)).collect();
    let groups = CodeGroups {
        num_qubits: n,
        stabilizers: stabilizers.clone(),
        gauge: Vec::new(),
        logicals: Vec::new(),
        translations: Vec::new(),
    };
    let d_x = distance_part(c_x, &cz_dual)?;
    let d_z = distance_part(c_z, &cx_dual)?;
    let params = CssParameters { n, k: c_x.dim() + c_z.dim() - n, m: 0, r: 0, d_x, d_z, d: combine(d_x, d_z) };
    Ok(CssCode {
        kind: CssKind::Stabilizer,
        groups,
        outer_stabilizer: stabilizers.clone(),
        outer_gauge: stabilizers,
        params,
        degenerate_classical: false,
    })
}

/// Subsystem code with gauge group ⟨iI, X(C_z⊥), Z(C_x⊥)⟩.
pub fn css_subsystem(c_x: &LinearCode, c_z: &LinearCode) -> Result<CssCode> {
    let input = CssInput::new(c_x.clone(), c_z.clone());
    input.check_lengths()?;
    let n = input.n();
    let (cx_dual, cz_dual) = (c_x.dual(), c_z.dual());
    let sum_x = c_x.sum(&cz_dual)?;
    let sum_z = c_z.sum(&cx_dual)?;
    let (r_x, r_z, k_x, k_z) = (sum_x.dim(), sum_z.dim(), c_x.dim(), c_z.dim());
    if r_x + k_z != r_z + k_x {
        return Err(Error::Invariant(format!("k formulas disagree: {r_x}+{k_z} vs {r_z}+{k_x}")));
    }
    if r_x + k_z < n {
        return Err(Error::InvalidCss("no logical qubits: r_x + k_z < n".into()));
    }
    let stab_x = c_x.intersection(&cz_dual)?;
    let stab_z = c_z.intersection(&cx_dual)?;
    let stabilizers: Vec<PauliOperator> = xs(&stab_x).into_iter().chain(zs(&stab_z)).collect();
    let gauge: Vec<PauliOperator> = xs(&cz_dual).into_iter().chain(zs(&cx_dual)).collect();
    let d_x = distance_part(&sum_x, &cz_dual)?;
    let d_z = distance_part(&sum_z, &cx_dual)?;
    let params = CssParameters { n, k: r_x + k_z - n, m: 0, r: r_x - k_x, d_x, d_z, d: combine(d_x, d_z) };
    let groups =
        CodeGroups { num_qubits: n, stabilizers: stabilizers.clone(), gauge: gauge.clone(), logicals: Vec::new(), translations: Vec::new() };
    Ok(CssCode { kind: CssKind::Subsystem, groups, outer_stabilizer: stabilizers, outer_gauge: gauge, params, degenerate_classical: false })
}

/// Hybrid code with inner stabilizer ⟨X(C_z⊥), Z(C_x⊥)⟩ and outer
/// stabilizer ⟨X(D_z⊥), Z(D_x⊥)⟩.
pub fn css_hybrid(input: &CssInput) -> Result<CssCode> {
    input.check_lengths()?;
    let (dx, dz) = input.supercodes()?;
    let n = input.n();
    let (c_x, c_z) = (&input.c_x, &input.c_z);
    let (cx_dual, cz_dual) = (c_x.dual(), c_z.dual());
    if !cz_dual.is_subcode_of(c_x)? {
        return Err(Error::InvalidCss("C_z⊥ must be contained in C_x".into()));
    }
    let stabilizers: Vec<PauliOperator> = xs(&cz_dual).into_iter().chain(zs(&cx_dual)).collect();
    let translations: Vec<PauliOperator> = coset_representatives(dx, c_x)
        .into_iter()
        .map(PauliOperator::x_type)
        .chain(coset_representatives(dz, c_z).into_iter().map(PauliOperator::z_type))
        .collect();
    let outer: Vec<PauliOperator> = xs(&dz.dual()).into_iter().chain(zs(&dx.dual())).collect();
    let groups =
        CodeGroups { num_qubits: n, stabilizers, gauge: Vec::new(), logicals: Vec::new(), translations };
    let m = dx.dim() + dz.dim() - c_x.dim() - c_z.dim();
    let d_x = distance_part(dx, &cz_dual)?;
    let d_z = distance_part(dz, &cx_dual)?;
    let params = CssParameters { n, k: c_x.dim() + c_z.dim() - n, m, r: 0, d_x, d_z, d: combine(d_x, d_z) };
    let degenerate_classical = groups.classical_bits() != m;
    Ok(CssCode { kind: CssKind::Hybrid, groups, outer_stabilizer: outer.clone(), outer_gauge: outer, params, degenerate_classical })
}

/// Hybrid subsystem code; needs (D_x \ C_x) ∩ C_z⊥ and (D_z \ C_z) ∩ C_x⊥ empty.
pub fn css_hybrid_subsystem(input: &CssInput) -> Result<CssCode> {
    input.check_lengths()?;
    let (dx, dz) = input.supercodes()?;
    let n = input.n();
    let (c_x, c_z) = (&input.c_x, &input.c_z);
    let (cx_dual, cz_dual) = (c_x.dual(), c_z.dual());
    // the set condition is equivalent to D_x ∩ C_z⊥ ⊆ C_x (and symmetrically)
    if !dx.intersection(&cz_dual)?.is_subcode_of(c_x)? || !dz.intersection(&cx_dual)?.is_subcode_of(c_z)? {
        return Err(Error::InvalidCss(
            "a classical logical operator would lie in the gauge group: (D_x \\ C_x) ∩ C_z⊥ or (D_z \\ C_z) ∩ C_x⊥ is not empty"
                .into(),
        ));
    }
    let sum_x = c_x.sum(&cz_dual)?;
    let sum_z = c_z.sum(&cx_dual)?;
    let (r_x, r_z, k_x, k_z) = (sum_x.dim(), sum_z.dim(), c_x.dim(), c_z.dim());
    if r_x + k_z != r_z + k_x {
        return Err(Error::Invariant(format!("k formulas disagree: {r_x}+{k_z} vs {r_z}+{k_x}")));
    }
    let (dx_dual, dz_dual) = (dx.dual(), dz.dual());
    let stabilizers: Vec<PauliOperator> =
        xs(&c_x.intersection(&cz_dual)?).into_iter().chain(zs(&c_z.intersection(&cx_dual)?)).collect();
    let gauge: Vec<PauliOperator> = xs(&cz_dual).into_iter().chain(zs(&cx_dual)).collect();
    let translations: Vec<PauliOperator> = coset_representatives(dx, c_x)
        .into_iter()
        .map(PauliOperator::x_type)
        .chain(coset_representatives(dz, c_z).into_iter().map(PauliOperator::z_type))
        .collect();
    let outer_stabilizer: Vec<PauliOperator> =
        xs(&dx.intersection(&dz_dual)?).into_iter().chain(zs(&dz.intersection(&dx_dual)?)).collect();
    let outer_gauge: Vec<PauliOperator> = xs(&dz_dual).into_iter().chain(zs(&dx_dual)).collect();
    let m = dx.dim() + dz.dim() - k_x - k_z;
    let d_x = distance_part(&dx.sum(&dz_dual)?, &cz_dual)?;
    let d_z = distance_part(&dz.sum(&dx_dual)?, &cx_dual)?;
    let groups = CodeGroups { num_qubits: n, stabilizers, gauge, logicals: Vec::new(), translations };
    let degenerate_classical = groups.classical_bits() != m;
    let params = CssParameters { n, k: r_x + k_z - n, m, r: r_x - k_x, d_x, d_z, d: combine(d_x, d_z) };
    Ok(CssCode { kind: CssKind::HybridSubsystem, groups, outer_stabilizer, outer_gauge, params, degenerate_classical })
}

/// Classical inputs under which the general constructions reproduce the
/// non-synchronizable family members Q1, Q5 and Q7.
pub fn correspondence_input(basis: &PairingBasis, family: Family) -> Result<CssInput> {
    let n = basis.rows.n;
    let q_tilde = &basis.rows.d_dual;
    let p = &basis.pairing;
    let code = |parts: &[&[BitVector]]| -> Result<LinearCode> {
        let gens: Vec<BitVector> = parts.iter().flat_map(|s| s.iter().copied()).collect();
        LinearCode::from_generators(n, &gens)
    };
    match family {
        Family::Q1 => Ok(CssInput::new(code(&[q_tilde, &p.logical_x])?, code(&[q_tilde, &p.logical_z])?)),
        Family::Q5 => {
            let c = code(&[q_tilde, &p.gauge_dual, &p.logical_x])?;
            let d = code(&[q_tilde, &p.gauge_dual, &p.logical_x, &p.gauge_x])?;
            Ok(CssInput::new(c.clone(), c).with_supercodes(d.clone(), d))
        }
        Family::Q7 => {
            let c_x = code(&[q_tilde, &p.logical_x])?;
            let c_z = code(&[q_tilde, &p.gauge_dual, &p.logical_z])?;
            let d_x = code(&[q_tilde, &p.logical_x, &p.gauge_x])?;
            Ok(CssInput::new(c_x, c_z.clone()).with_supercodes(d_x, c_z))
        }
        other => Err(Error::InvalidSpec(format!("{other} has no CSS-type correspondence"))),
    }
}

/// Runs the matching constructor on the correspondence inputs.
pub fn correspondence_code(basis: &PairingBasis, family: Family) -> Result<CssCode> {
    let input = correspondence_input(basis, family)?;
    match family {
        Family::Q1 => css_subsystem(&input.c_x, &input.c_z),
        Family::Q5 => css_hybrid(&input),
        _ => css_hybrid_subsystem(&input),
    }
}

/// Span comparison of a CSS construction against a family member: inner
/// stabilizer, inner gauge, outer stabilizer and outer centralizer must be
/// equal, and the outer gauge groups must have equal rank.
pub fn correspondence_checks(css: &CssCode, family: &CodeGroups) -> Vec<(&'static str, bool)> {
    let m = PhaseMode::Ignore;
    let a = &css.groups;
    let same_size = a.num_qubits == family.num_qubits;
    if !same_size {
        return vec![("css.qubit-count", false)];
    }
    vec![
        ("css.inner-stabilizer", a.inner_stabilizer().equals(&family.inner_stabilizer(), m)),
        ("css.inner-gauge", a.inner_gauge().equals(&family.inner_gauge(), m)),
        ("css.outer-stabilizer", css.outer_stabilizer_span().equals(&family.outer_stabilizer(), m)),
        (
            "css.outer-centralizer",
            css.outer_stabilizer_span().centralizer().equals(&family.outer_stabilizer().centralizer(), m),
        ),
        ("css.outer-gauge-rank", css.outer_gauge_span().rank() == family.outer_gauge().rank()),
        ("css.outer-consistent", css.outer_groups_consistent()),
    ]
}
