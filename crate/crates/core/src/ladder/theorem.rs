use rayon::prelude::*;
use serde::Serialize;

use super::certificate::witness_matrices;
use super::eliminate::{eliminate, Status, Verdict};
use super::lift::lift_to_candidate;
use super::system::{derive_constraints, BlockSystem, UnknownKind};
use super::weights::{default_max_weight, enumerate_weight_data, Sector, Side, WeightData};
use crate::embedcheck::EmbeddingCandidate;
use crate::error::{Error, Result};
use crate::exactmat::GaussMatrix;

#[derive(Debug, Clone, Serialize)]
pub struct SectorReport {
    pub sector: Sector,
    pub data: WeightData,
    pub equations: Vec<String>,
    pub verdict: Verdict,
    #[serde(skip)]
    pub system: BlockSystem,
}

impl SectorReport {
    fn run(sector: Sector, data: WeightData) -> Self {
        let system = derive_constraints(&data);
        let verdict = eliminate(&system);
        let equations = system.diagonal.iter().map(|e| system.render(e)).collect();
        Self { sector, data, equations, verdict, system }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DatumReport {
    pub data: WeightData,
    pub canonical: String,
    pub hash: String,
    pub status: Status,
    pub sectors: Vec<SectorReport>,
}

impl DatumReport {
    pub fn sector(&self, sector: Sector) -> Option<&SectorReport> {
        self.sectors.iter().find(|s| s.sector == sector)
    }

    /// Exact solution of the full block system built from the sector witnesses.
    pub fn witness_values(&self) -> Option<(BlockSystem, Vec<GaussMatrix>)> {
        if self.status != Status::Feasible {
            return None;
        }
        let full = derive_constraints(&self.data);
        let mut values: Vec<GaussMatrix> = full.unknowns.iter().map(|u| GaussMatrix::zeros(u.rows, u.cols)).collect();
        for s in &self.sectors {
            let local = witness_matrices(&s.system, s.verdict.witness.as_ref()?)?;
            for (u, m) in s.system.unknowns.iter().zip(local) {
                let idx = full.find_unknown(u.kind, u.source_weight)?;
                values[idx] = m;
            }
        }
        Some((full, values))
    }

    /// The witness of a feasible datum as a candidate embedding.
    pub fn lift(&self) -> Result<EmbeddingCandidate> {
        let (sys, values) =
            self.witness_values().ok_or_else(|| Error::Inconsistent(format!("{} has no witness", self.canonical)))?;
        lift_to_candidate(&sys, &values)
    }
}

/// Runs both sectors of one datum independently.
pub fn analyze_datum(wd: &WeightData) -> DatumReport {
    let sectors: Vec<SectorReport> = [Sector::Odd, Sector::Even]
        .into_iter()
        .map(|s| (s, wd.restrict(s)))
        .filter(|(_, d)| !d.is_empty())
        .map(|(s, d)| SectorReport::run(s, d))
        .collect();
    let any = |st: Status| sectors.iter().any(|s| s.verdict.status == st);
    let status = if any(Status::Infeasible) {
        Status::Infeasible
    } else if any(Status::Unresolved) {
        Status::Unresolved
    } else {
        Status::Feasible
    };
    DatumReport { data: wd.clone(), canonical: wd.canonical(), hash: wd.canonical_hash(), status, sectors }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FeasibleClass {
    pub standard_multiplicity: usize,
    pub trivial_multiplicity: usize,
    /// `false` when `Z = 0`: the tangent map vanishes and nothing embeds.
    pub embedding: bool,
    pub description: String,
    pub relations: Vec<String>,
    pub data: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremSummary {
    pub p: usize,
    pub max_weight: i64,
    pub enumerated: usize,
    pub feasible: usize,
    pub infeasible: usize,
    pub unresolved: usize,
    pub classes: Vec<FeasibleClass>,
    pub violations: Vec<String>,
    #[serde(skip)]
    pub data: Vec<DatumReport>,
}

impl TheoremSummary {
    /// `Err` on any theorem violation, else on any unresolved datum.
    pub fn check(&self) -> Result<()> {
        if let Some(v) = self.violations.first() {
            return Err(Error::TheoremViolation(v.clone()));
        }
        if self.unresolved > 0 {
            return Err(Error::UnresolvedRemains { count: self.unresolved });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub max_weight: Option<i64>,
    pub jobs: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { max_weight: None, jobs: 1 }
    }
}

/// Violations of: E/F forced to zero, odd class = ±1 with unitary Z, even class trivial.
fn theorem_violations(report: &DatumReport) -> Vec<String> {
    let mut out = Vec::new();
    if report.status != Status::Feasible {
        return out;
    }
    for s in &report.sectors {
        let Some(w) = &s.verdict.witness else {
            out.push(format!("{}: feasible {} sector without witness", report.canonical, s.sector));
            continue;
        };
        for u in &s.system.unknowns {
            if matches!(u.kind, UnknownKind::E | UnknownKind::F) && !w.forced_zero.contains(&u.label()) {
                out.push(format!("{}: {} is not forced to zero", report.canonical, u.label()));
            }
        }
        match s.sector {
            Sector::Odd => {
                let plus: Vec<_> = s.data.plus().iter().map(|(&k, &m)| (k, m)).collect();
                let minus: Vec<_> = s.data.minus().iter().map(|(&k, &m)| (k, m)).collect();
                let standard = matches!((plus.as_slice(), minus.as_slice()),
                    ([(1, a)], [(-1, b)]) if a == b);
                let unitary = w.relations.len() == 1
                    && w.relations[0].kind == UnknownKind::Z
                    && w.relations[0].scale == 1
                    && (w.relations[0].source_weight, w.relations[0].target_weight) == (-1, 1);
                if !(standard && unitary) {
                    out.push(format!("{}: feasible odd sector is not the ±1 unitary pattern", report.canonical));
                }
            }
            Sector::Even => {
                if s.data.total().keys().any(|&k| k != 0) {
                    out.push(format!("{}: feasible even sector is not weight-0 trivial", report.canonical));
                }
            }
        }
    }
    out
}

fn feasible_class(report: &DatumReport) -> FeasibleClass {
    let m = report.data.mult(Side::Plus, 1);
    let trivial = report.data.mult(Side::Plus, 0) + report.data.mult(Side::Minus, 0);
    let relations = report
        .sectors
        .iter()
        .filter_map(|s| s.verdict.witness.as_ref())
        .flat_map(|w| &w.relations)
        .map(|r| {
            let scale = if r.scale == 1 { String::new() } else { format!("{}·", r.scale) };
            format!("{0}{0}* = {0}*{0} = {scale}I_{1}", r.unknown, r.dim)
        })
        .collect();
    let description = match (m, trivial) {
        (0, k) => format!("trivial^{k} (Z = 0, not an embedding)"),
        (m, 0) => format!("standard^{m}, E = F = 0, ZZ* = 1"),
        (m, k) => format!("standard^{m} ⊕ trivial^{k}, E = F = 0, ZZ* = 1"),
    };
    FeasibleClass {
        standard_multiplicity: m,
        trivial_multiplicity: trivial,
        embedding: m > 0,
        description,
        relations,
        data: report.data.to_string(),
    }
}

/// Enumerates, derives and eliminates every weight datum for `p`.
pub fn classify(p: usize, opts: ClassifyOptions) -> Result<TheoremSummary> {
    if p == 0 {
        return Err(Error::InvalidShape("p must be at least 1".into()));
    }
    let max_weight = opts.max_weight.unwrap_or_else(|| default_max_weight(p));
    let data = enumerate_weight_data(p, max_weight);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
    let reports: Vec<DatumReport> = pool.install(|| data.par_iter().map(analyze_datum).collect());

    let count = |st: Status| reports.iter().filter(|r| r.status == st).count();
    let mut classes: Vec<FeasibleClass> =
        reports.iter().filter(|r| r.status == Status::Feasible).map(feasible_class).collect();
    classes.sort();
    let violations = reports.iter().flat_map(theorem_violations).collect();
    Ok(TheoremSummary {
        p,
        max_weight,
        enumerated: reports.len(),
        feasible: count(Status::Feasible),
        infeasible: count(Status::Infeasible),
        unresolved: count(Status::Unresolved),
        classes,
        violations,
        data: reports,
    })
}

/// [`classify`] with default options, failing loudly on any violation or
/// unresolved datum.
pub fn verify_theorem(p: usize) -> Result<TheoremSummary> {
    let summary = classify(p, ClassifyOptions::default())?;
    summary.check()?;
    Ok(summary)
}
