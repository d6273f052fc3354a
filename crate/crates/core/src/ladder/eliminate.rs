use serde::Serialize;

use super::certificate::{check_assignment, witness_matrices};
use super::system::{side_symbol, BlockSystem, DiagonalEquation, GramForm, GramTerm, UnknownKind};
use super::weights::{Sector, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    /// Negative-semidefinite left side against a positive multiple of `I`.
    R1,
    /// Positive-semidefinite left side against a negative multiple of `I`.
    R2,
    /// One-signed left side equal to zero: every term vanishes.
    R3,
    /// Terminal single-Gram equations, paired per unknown.
    R4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Feasible,
    Infeasible,
    Unresolved,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
            Status::Unresolved => "unresolved",
        })
    }
}

/// One replayable step. `unknowns` lists the unknowns the step acts on: the
/// surviving terms for R1/R2 (empty when the left side is empty), the
/// unknowns forced to zero for R3, the paired unknown for R4.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CertificateStep {
    pub rule: Rule,
    pub sector: Sector,
    pub side: Side,
    pub weight: i64,
    pub conclusion: String,
    pub trace_values: Vec<i64>,
    pub unknowns: Vec<String>,
}

/// `A A* = scale·I_dim` and `A* A = scale·I_dim`, solved by `A = √scale · U`
/// with `U` unitary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TerminalRelation {
    pub unknown: String,
    pub kind: UnknownKind,
    pub source_weight: i64,
    pub target_weight: i64,
    pub dim: usize,
    pub scale: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct WitnessClass {
    pub relations: Vec<TerminalRelation>,
    pub forced_zero: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Vec<CertificateStep>,
    pub witness: Option<WitnessClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        self.status == Status::Feasible
    }

    pub fn is_infeasible(&self) -> bool {
        self.status == Status::Infeasible
    }
}

fn live_terms<'a>(eq: &'a DiagonalEquation, zero: &[bool]) -> Vec<&'a GramTerm> {
    eq.terms.iter().filter(|t| !zero[t.unknown]).collect()
}

fn labels(sys: &BlockSystem, terms: &[&GramTerm]) -> Vec<String> {
    terms.iter().map(|t| sys.unknowns[t.unknown].label()).collect()
}

fn eq_name(eq: &DiagonalEquation) -> String {
    format!("V{}({})", side_symbol(eq.side), eq.weight)
}

/// Sign rule R1/R2/R3 applicable to `eq` given the current zero set.
pub(crate) fn sign_rule(eq: &DiagonalEquation, zero: &[bool]) -> Option<Rule> {
    let live = live_terms(eq, zero);
    let all_neg = live.iter().all(|t| t.sign < 0);
    let all_pos = live.iter().all(|t| t.sign > 0);
    if eq.rhs > 0 && all_neg {
        Some(Rule::R1)
    } else if eq.rhs < 0 && all_pos {
        Some(Rule::R2)
    } else if eq.rhs == 0 && !live.is_empty() && (all_neg || all_pos) {
        Some(Rule::R3)
    } else {
        None
    }
}

pub(crate) fn sign_conclusion(sys: &BlockSystem, eq: &DiagonalEquation, rule: Rule, zero: &[bool]) -> String {
    let live = live_terms(eq, zero);
    let total = eq.rhs * eq.dim as i64;
    match rule {
        Rule::R1 if live.is_empty() => {
            format!("{}: empty left side 0 = {}·I_{}, trace 0 < {total}: impossible", eq_name(eq), eq.rhs, eq.dim)
        }
        Rule::R1 => format!(
            "{}: -({}) = {}·I_{}, trace of left ≤ 0 < {total}: impossible",
            eq_name(eq),
            labels(sys, &live).join(", "),
            eq.rhs,
            eq.dim
        ),
        Rule::R2 if live.is_empty() => {
            format!("{}: empty left side 0 = {}·I_{}, trace 0 > {total}: impossible", eq_name(eq), eq.rhs, eq.dim)
        }
        Rule::R2 => format!(
            "{}: Gram sum of ({}) = {}·I_{}, trace of left ≥ 0 > {total}: impossible",
            eq_name(eq),
            labels(sys, &live).join(", "),
            eq.rhs,
            eq.dim
        ),
        Rule::R3 => format!(
            "{}: one-signed Gram sum = 0, so {} = 0",
            eq_name(eq),
            labels(sys, &live).join(" = ")
        ),
        Rule::R4 => unreachable!("R4 is not a sign rule"),
    }
}

/// Runs R1–R3 to a fixpoint, then R4 on what is left.
///
/// The scan visits diagonal equations in system order and restarts after
/// every R3 application, so the certificate is deterministic.
pub fn eliminate(sys: &BlockSystem) -> Verdict {
    let mut zero = vec![false; sys.unknowns.len()];
    let mut steps = Vec::new();

    'scan: loop {
        for eq in &sys.diagonal {
            let Some(rule) = sign_rule(eq, &zero) else {
                continue;
            };
            let live = live_terms(eq, &zero);
            let step = CertificateStep {
                rule,
                sector: eq.sector(),
                side: eq.side,
                weight: eq.weight,
                conclusion: sign_conclusion(sys, eq, rule, &zero),
                trace_values: vec![eq.rhs, eq.dim as i64, eq.rhs * eq.dim as i64],
                unknowns: labels(sys, &live),
            };
            steps.push(step);
            if rule == Rule::R3 {
                for t in live {
                    zero[t.unknown] = true;
                }
                continue 'scan;
            }
            return Verdict { status: Status::Infeasible, certificate: steps, witness: None, note: None };
        }
        break;
    }

    terminal(sys, &zero, steps)
}

/// R4: every surviving equation must be a single Gram term `±G = c·I`
/// with `±c > 0`; each unknown then has `AA* = a·I_{d1}`, `A*A = b·I_{d2}`.
fn terminal(sys: &BlockSystem, zero: &[bool], mut steps: Vec<CertificateStep>) -> Verdict {
    let unresolved = |steps: Vec<CertificateStep>, note: String| Verdict {
        status: Status::Unresolved,
        certificate: steps,
        witness: None,
        note: Some(note),
    };

    for eq in &sys.diagonal {
        let live = live_terms(eq, zero);
        if live.len() > 1 {
            return unresolved(steps, format!("{} keeps {} mixed-sign terms", eq_name(eq), live.len()));
        }
    }

    let mut relations = Vec::new();
    for (idx, u) in sys.unknowns.iter().enumerate() {
        if zero[idx] {
            continue;
        }
        let outer = sys.equation(u.kind.target_side(), u.target_weight);
        let inner = sys.equation(u.kind.source_side(), u.source_weight);
        let (Some(outer), Some(inner)) = (outer, inner) else {
            return unresolved(steps, format!("{} is missing an equation", u.label()));
        };
        let signed = |eq: &DiagonalEquation, form: GramForm| {
            eq.terms.iter().find(|t| t.unknown == idx && t.form == form).map(|t| i64::from(t.sign) * eq.rhs)
        };
        let (Some(a), Some(b)) = (signed(outer, GramForm::Outer), signed(inner, GramForm::Inner)) else {
            return unresolved(steps, format!("{} does not appear in both of its equations", u.label()));
        };
        let (d1, d2) = (u.rows as i64, u.cols as i64);
        let mut step = CertificateStep {
            rule: Rule::R4,
            sector: u.sector(),
            side: outer.side,
            weight: outer.weight,
            conclusion: String::new(),
            trace_values: vec![a, d1, b, d2],
            unknowns: vec![u.label()],
        };
        let name = u.label();
        if a * d1 != b * d2 {
            step.conclusion = format!(
                "{name}{name}* = {a}·I_{d1} and {name}*{name} = {b}·I_{d2}: tr = {} ≠ {}: impossible",
                a * d1,
                b * d2
            );
            steps.push(step);
            return Verdict { status: Status::Infeasible, certificate: steps, witness: None, note: None };
        }
        if d1 != d2 {
            step.conclusion = format!(
                "{name}{name}* = {a}·I_{d1} and {name}*{name} = {b}·I_{d2}: rank {d1} ≠ {d2}: impossible"
            );
            steps.push(step);
            return Verdict { status: Status::Infeasible, certificate: steps, witness: None, note: None };
        }
        step.conclusion = format!("{name}{name}* = {name}*{name} = {a}·I_{d1}: {name} = √{a}·unitary");
        steps.push(step);
        relations.push(TerminalRelation {
            unknown: name,
            kind: u.kind,
            source_weight: u.source_weight,
            target_weight: u.target_weight,
            dim: u.rows,
            scale: a,
        });
    }

    let forced_zero = sys.unknowns.iter().zip(zero).filter(|(_, &z)| z).map(|(u, _)| u.label()).collect();
    let witness = WitnessClass { relations, forced_zero };
    let Some(values) = witness_matrices(sys, &witness) else {
        return unresolved(steps, "terminal scale is not a perfect square; no rational witness".into());
    };
    if !check_assignment(sys, &values) {
        return unresolved(steps, "canonical witness violates an off-diagonal equation".into());
    }
    Verdict { status: Status::Feasible, certificate: steps, witness: Some(witness), note: None }
}
