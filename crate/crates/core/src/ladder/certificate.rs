//! Independent re-checking of elimination output: certificate replay and
//! exact substitution of witnesses into the original equations.

use num_integer::Roots;

use super::eliminate::{sign_rule, Rule, Status, Verdict, WitnessClass};
use super::system::{BlockSystem, DiagonalEquation, Factor, GramForm};
use crate::exactmat::{GaussMatrix, GaussRational};

fn gram(a: &GaussMatrix, form: GramForm) -> GaussMatrix {
    let adj = a.conj_transpose();
    match form {
        GramForm::Outer => a.mul(&adj),
        GramForm::Inner => adj.mul(a),
    }
    .expect("Gram product of one matrix")
}

fn factor(values: &[GaussMatrix], f: Factor) -> GaussMatrix {
    if f.adjoint {
        values[f.unknown].conj_transpose()
    } else {
        values[f.unknown].clone()
    }
}

/// `lhs - rhs·I` of a diagonal equation under an assignment.
pub fn diagonal_defect(eq: &DiagonalEquation, values: &[GaussMatrix]) -> GaussMatrix {
    let mut acc = GaussMatrix::identity(eq.dim).scale_int(-eq.rhs);
    for t in &eq.terms {
        let g = gram(&values[t.unknown], t.form).scale_int(i64::from(t.sign));
        acc = acc.add(&g).expect("Gram term lives on the equation's space");
    }
    acc
}

/// Checks an exact assignment (one matrix per unknown) against every diagonal
/// and off-diagonal equation of `sys`.
pub fn check_assignment(sys: &BlockSystem, values: &[GaussMatrix]) -> bool {
    if values.len() != sys.unknowns.len()
        || values.iter().zip(&sys.unknowns).any(|(v, u)| v.shape() != (u.rows, u.cols))
    {
        return false;
    }
    let diag_ok = sys.diagonal.iter().all(|eq| diagonal_defect(eq, values).is_zero());
    let off_ok = sys.off_diagonal.iter().all(|eq| {
        let mut acc = GaussMatrix::zeros(eq.rows, eq.cols);
        for t in &eq.terms {
            let prod = factor(values, t.left).mul(&factor(values, t.right)).expect("composable blocks");
            acc = acc.add(&prod.scale_int(i64::from(t.sign))).expect("off-diagonal block shape");
        }
        acc.is_zero()
    });
    diag_ok && off_ok
}

fn exact_sqrt(k: i64) -> Option<i64> {
    if k < 0 {
        return None;
    }
    let r = k.sqrt();
    (r * r == k).then_some(r)
}

/// The canonical witness of a feasible class: `√scale · I` for each terminal
/// relation and zero for every other unknown. `None` when a scale is not a
/// perfect square.
pub fn witness_matrices(sys: &BlockSystem, witness: &WitnessClass) -> Option<Vec<GaussMatrix>> {
    let mut values: Vec<GaussMatrix> = sys.unknowns.iter().map(|u| GaussMatrix::zeros(u.rows, u.cols)).collect();
    for rel in &witness.relations {
        let idx = sys.unknowns.iter().position(|u| u.label() == rel.unknown)?;
        let root = exact_sqrt(rel.scale)?;
        let u = &sys.unknowns[idx];
        if u.rows != u.cols {
            return None;
        }
        values[idx] = GaussMatrix::identity(u.rows).scale(&GaussRational::from_int(root));
    }
    Some(values)
}

/// Replays a verdict's certificate against the original system. Infeasible
/// verdicts must end in a contradiction that the replay reproduces; feasible
/// ones must leave only the paired terminal relations, and their canonical
/// witness must satisfy every original equation exactly.
pub fn replay_certificate(sys: &BlockSystem, verdict: &Verdict) -> Result<(), String> {
    let mut zero = vec![false; sys.unknowns.len()];
    let label_index = |name: &str| sys.unknowns.iter().position(|u| u.label() == name);
    let n = verdict.certificate.len();
    let mut paired = vec![false; sys.unknowns.len()];

    for (k, step) in verdict.certificate.iter().enumerate() {
        let last = k + 1 == n;
        let eq = sys
            .equation(step.side, step.weight)
            .ok_or_else(|| format!("step {k}: no equation on {} weight {}", step.side, step.weight))?;
        let live: Vec<String> = eq
            .terms
            .iter()
            .filter(|t| !zero[t.unknown])
            .map(|t| sys.unknowns[t.unknown].label())
            .collect();
        match step.rule {
            Rule::R1 | Rule::R2 | Rule::R3 => {
                if live != step.unknowns {
                    return Err(format!("step {k}: surviving terms {live:?} differ from {:?}", step.unknowns));
                }
                if sign_rule(eq, &zero) != Some(step.rule) {
                    return Err(format!("step {k}: {:?} does not apply", step.rule));
                }
                if step.rule == Rule::R3 {
                    for name in &step.unknowns {
                        zero[label_index(name).ok_or("unknown label")?] = true;
                    }
                } else if !(last && verdict.status == Status::Infeasible) {
                    return Err(format!("step {k}: contradiction before the end of a non-infeasible certificate"));
                }
            }
            Rule::R4 => {
                let [name] = step.unknowns.as_slice() else {
                    return Err(format!("step {k}: R4 names exactly one unknown"));
                };
                let idx = label_index(name).ok_or_else(|| format!("step {k}: unknown {name}"))?;
                if zero[idx] || live != [name.clone()] {
                    return Err(format!("step {k}: {name} is not the sole surviving term"));
                }
                let u = &sys.unknowns[idx];
                let inner = sys.equation(u.kind.source_side(), u.source_weight).ok_or("missing source equation")?;
                let inner_live: Vec<_> = inner.terms.iter().filter(|t| !zero[t.unknown]).collect();
                if inner_live.len() != 1 || inner_live[0].unknown != idx {
                    return Err(format!("step {k}: {name} is not the sole term of its source equation"));
                }
                let outer_term = eq.terms.iter().find(|t| t.unknown == idx && t.form == GramForm::Outer);
                let a = outer_term.map(|t| i64::from(t.sign) * eq.rhs).ok_or("outer term missing")?;
                let b = i64::from(inner_live[0].sign) * inner.rhs;
                let (d1, d2) = (u.rows as i64, u.cols as i64);
                if step.trace_values != [a, d1, b, d2] {
                    return Err(format!("step {k}: trace values {:?} ≠ {:?}", step.trace_values, [a, d1, b, d2]));
                }
                let contradiction = a * d1 != b * d2 || d1 != d2;
                if contradiction != (last && verdict.status == Status::Infeasible) {
                    return Err(format!("step {k}: R4 outcome does not match the verdict"));
                }
                paired[idx] = true;
            }
        }
    }

    match verdict.status {
        Status::Infeasible => {
            let last = verdict.certificate.last().ok_or("empty infeasibility certificate")?;
            if last.rule == Rule::R3 {
                return Err("infeasibility certificate ends without a contradiction".into());
            }
            Ok(())
        }
        Status::Feasible => {
            for eq in &sys.diagonal {
                if sign_rule(eq, &zero).is_some() {
                    return Err(format!("{} {}: a sign rule still applies", eq.side, eq.weight));
                }
            }
            if let Some((i, _)) = zero.iter().zip(&paired).enumerate().find(|(_, (&z, &p))| !z && !p) {
                return Err(format!("{} survives without a terminal relation", sys.unknowns[i].label()));
            }
            let witness = verdict.witness.as_ref().ok_or("feasible verdict without witness")?;
            let expected_zero: Vec<String> =
                sys.unknowns.iter().zip(&zero).filter(|(_, &z)| z).map(|(u, _)| u.label()).collect();
            if witness.forced_zero != expected_zero {
                return Err("forced-zero set differs from the replayed one".into());
            }
            let values = witness_matrices(sys, witness).ok_or("witness has no rational instance")?;
            if !check_assignment(sys, &values) {
                return Err("witness does not satisfy the original equations".into());
            }
            Ok(())
        }
        Status::Unresolved => Err("unresolved verdicts carry no certificate to replay".into()),
    }
}
