//! Floating-point corroboration of ladder verdicts: gradient descent on the
//! squared residual of the `sl(2)` relations over the structured unknowns.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ladder::{derive_constraints, BlockUnknown, UnknownKind, WeightData, WeightLayout};

pub const GRAD_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 100_000;
const INITIAL_STEP: f64 = 1e-2;
const MIN_STEP: f64 = 1e-300;
const STEP_GROWTH: f64 = 1.2;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    fn at(&mut self, r: usize, c: usize) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at(c, r) = self.get(r, c).conj();
            }
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    *out.at(i, j) += a * other.get(k, j);
                }
            }
        }
        out
    }

    fn combine(&self, other: &Self, a: f64, b: f64) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x * a + y * b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    fn bracket(&self, other: &Self) -> Self {
        self.mul(other).combine(&other.mul(self), 1.0, -1.0)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum()
    }

    fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                *out.at(r, c) = self.get(r0 + r, c0 + c);
            }
        }
        out
    }

    fn set_block(&mut self, r0: usize, c0: usize, m: &Self) {
        for r in 0..m.rows {
            for c in 0..m.cols {
                *self.at(r0 + r, c0 + c) = m.get(r, c);
            }
        }
    }
}

impl Serialize for CMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> =
            (0..self.rows).map(|r| (0..self.cols).map(|c| [self.get(r, c).re, self.get(r, c).im]).collect()).collect();
        rows.serialize(s)
    }
}

/// One complex matrix per structured unknown of a weight datum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuredPoint {
    pub labels: Vec<String>,
    pub blocks: Vec<CMatrix>,
}

impl StructuredPoint {
    pub fn zeros(unknowns: &[BlockUnknown]) -> Self {
        Self {
            labels: unknowns.iter().map(BlockUnknown::label).collect(),
            blocks: unknowns.iter().map(|u| CMatrix::zeros(u.rows, u.cols)).collect(),
        }
    }

    /// i.i.d. complex Gaussian entries with `E|z|² = 1`.
    pub fn random(unknowns: &[BlockUnknown], rng: &mut ChaCha8Rng) -> Self {
        let mut pt = Self::zeros(unknowns);
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        for b in &mut pt.blocks {
            for z in &mut b.data {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                *z = Complex64::new(re * scale, im * scale);
            }
        }
        pt
    }

    /// Real coordinates, `(re, im)` per entry.
    pub fn to_real(&self) -> Vec<f64> {
        self.blocks.iter().flat_map(|b| b.data.iter().flat_map(|z| [z.re, z.im])).collect()
    }

    fn set_real(&mut self, xs: &[f64]) {
        let mut it = xs.chunks_exact(2);
        for b in &mut self.blocks {
            for z in &mut b.data {
                let c = it.next().expect("coordinate count");
                *z = Complex64::new(c[0], c[1]);
            }
        }
    }

    fn axpy(&self, t: f64, dir: &[f64]) -> Self {
        let mut out = self.clone();
        let xs: Vec<f64> = self.to_real().iter().zip(dir).map(|(x, d)| x + t * d).collect();
        out.set_real(&xs);
        out
    }
}

/// The residual functional of one weight datum.
#[derive(Debug, Clone)]
pub struct Problem {
    unknowns: Vec<BlockUnknown>,
    positions: Vec<(usize, usize)>,
    h: CMatrix,
}

impl Problem {
    pub fn new(wd: &WeightData) -> Self {
        let sys = derive_constraints(wd);
        let layout = WeightLayout::new(wd);
        let positions = sys
            .unknowns
            .iter()
            .map(|u| layout.block_position(u.kind, u.source_weight, u.target_weight).expect("unknown inside layout"))
            .collect();
        let weights = layout.weights();
        let mut h = CMatrix::zeros(weights.len(), weights.len());
        for (i, w) in weights.iter().enumerate() {
            *h.at(i, i) = Complex64::new(*w as f64, 0.0);
        }
        Self { unknowns: sys.unknowns, positions, h }
    }

    pub fn unknowns(&self) -> &[BlockUnknown] {
        &self.unknowns
    }

    fn check_shapes(&self, pt: &StructuredPoint) -> Result<()> {
        if pt.blocks.len() != self.unknowns.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} blocks for {} unknowns",
                pt.blocks.len(),
                self.unknowns.len()
            )));
        }
        for (u, b) in self.unknowns.iter().zip(&pt.blocks) {
            if (b.rows, b.cols) != (u.rows, u.cols) {
                return Err(Error::ShapeMismatch(format!("{} has shape {}x{}", u.label(), b.rows, b.cols)));
            }
        }
        Ok(())
    }

    /// `X = (E Z; 0 F)` and `Y = (-E* 0; Z* -F*)`.
    fn assemble(&self, pt: &StructuredPoint) -> (CMatrix, CMatrix) {
        let n = self.h.rows;
        let mut x = CMatrix::zeros(n, n);
        let mut y = CMatrix::zeros(n, n);
        for ((u, &(r, c)), b) in self.unknowns.iter().zip(&self.positions).zip(&pt.blocks) {
            x.set_block(r, c, b);
            let adj = b.adjoint();
            let sign = if u.kind == UnknownKind::Z { 1.0 } else { -1.0 };
            y.set_block(c, r, &adj.combine(&adj, sign, 0.0));
        }
        (x, y)
    }

    /// `‖[X,Y] − H‖² + ‖[H,X] − 2X‖² + ‖[H,Y] + 2Y‖²` (Frobenius).
    pub fn residual(&self, pt: &StructuredPoint) -> Result<f64> {
        self.check_shapes(pt)?;
        Ok(self.eval(pt))
    }

    fn terms(&self, pt: &StructuredPoint) -> (CMatrix, CMatrix, CMatrix, CMatrix, CMatrix) {
        let (x, y) = self.assemble(pt);
        let r = x.bracket(&y).combine(&self.h, 1.0, -1.0);
        let s = self.h.bracket(&x).combine(&x, 1.0, -2.0);
        let t = self.h.bracket(&y).combine(&y, 1.0, 2.0);
        (x, y, r, s, t)
    }

    fn eval(&self, pt: &StructuredPoint) -> f64 {
        let (_, _, r, s, t) = self.terms(pt);
        r.norm_sqr() + s.norm_sqr() + t.norm_sqr()
    }

    /// Analytic gradient in real coordinates (see [`StructuredPoint::to_real`]).
    pub fn gradient(&self, pt: &StructuredPoint) -> Result<Vec<f64>> {
        self.check_shapes(pt)?;
        Ok(self.grad(pt))
    }

    fn grad(&self, pt: &StructuredPoint) -> Vec<f64> {
        let (x, y, r, s, t) = self.terms(pt);
        // complex gradients with respect to the full X and Y
        let gx = r.bracket(&y.adjoint()).combine(&self.h.bracket(&s).combine(&s, 1.0, -2.0), 1.0, 1.0);
        let gy = x.adjoint().bracket(&r).combine(&self.h.bracket(&t).combine(&t, 1.0, 2.0), 1.0, 1.0);
        let mut out = Vec::with_capacity(2 * pt.blocks.iter().map(|b| b.data.len()).sum::<usize>());
        for (u, &(row, col)) in self.unknowns.iter().zip(&self.positions) {
            let gxb = gx.block(row, col, u.rows, u.cols);
            let gyb = gy.block(col, row, u.cols, u.rows).adjoint();
            let sign = if u.kind == UnknownKind::Z { 1.0 } else { -1.0 };
            let g = gxb.combine(&gyb, 1.0, sign);
            out.extend(g.data.iter().flat_map(|z| [2.0 * z.re, 2.0 * z.im]));
        }
        out
    }
}

/// Residual of `pt` for the datum `wd`.
pub fn residual(wd: &WeightData, pt: &StructuredPoint) -> Result<f64> {
    Problem::new(wd).residual(pt)
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentRun {
    pub residual: f64,
    pub iterations: usize,
    pub point: StructuredPoint,
}

/// Gradient descent from `start`: the step grows on accepted moves and halves
/// on non-decrease; stops on a small gradient, the iteration cap or step
/// underflow.
pub fn descend(problem: &Problem, start: StructuredPoint) -> DescentRun {
    let mut pt = start;
    let mut f = problem.eval(&pt);
    let mut step = INITIAL_STEP;
    let mut iterations = 0;
    if problem.unknowns.is_empty() {
        return DescentRun { residual: f, iterations, point: pt };
    }
    let mut g = problem.grad(&pt);
    while iterations < MAX_ITERATIONS {
        let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gnorm < GRAD_TOL || f == 0.0 || step < MIN_STEP {
            break;
        }
        iterations += 1;
        let trial = pt.axpy(-step, &g);
        let ft = problem.eval(&trial);
        if ft < f {
            pt = trial;
            f = ft;
            g = problem.grad(&pt);
            step *= STEP_GROWTH;
        } else {
            step *= 0.5;
        }
    }
    DescentRun { residual: f, iterations, point: pt }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub data: String,
    pub final_residual: f64,
    pub iterations: usize,
    pub total_iterations: usize,
    pub restarts: usize,
    pub best_restart: usize,
    pub seed: u64,
    pub best_point: StructuredPoint,
}

/// The random stream of one restart: `seed` selects the key, the restart
/// index the ChaCha stream.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Best of `restarts` independent descents; deterministic in `(seed, restarts)`.
pub fn minimize(wd: &WeightData, restarts: usize, seed: u64) -> Result<ResidualReport> {
    if restarts == 0 {
        return Err(Error::InvalidShape("at least one restart is required".into()));
    }
    let problem = Problem::new(wd);
    let runs: Vec<DescentRun> = (0..restarts)
        .into_par_iter()
        .map(|k| {
            let start = StructuredPoint::random(problem.unknowns(), &mut restart_rng(seed, k));
            descend(&problem, start)
        })
        .collect();
    let total_iterations = runs.iter().map(|r| r.iterations).sum();
    let (best_restart, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.residual < a.1.residual { b } else { a })
        .expect("at least one run");
    let final_residual = problem.residual(&best.point)?;
    Ok(ResidualReport {
        data: wd.to_string(),
        final_residual,
        iterations: best.iterations,
        total_iterations,
        restarts,
        best_restart,
        seed,
        best_point: best.point,
    })
}

/// Largest relative error between the analytic gradient and central finite
/// differences with step `h` over `points` random points.
pub fn gradient_check(wd: &WeightData, points: usize, seed: u64, h: f64) -> f64 {
    let problem = Problem::new(wd);
    let mut worst: f64 = 0.0;
    for k in 0..points {
        let pt = StructuredPoint::random(problem.unknowns(), &mut restart_rng(seed, k));
        let analytic = problem.grad(&pt);
        let base = pt.to_real();
        let mut numeric = vec![0.0; base.len()];
        for (i, slot) in numeric.iter_mut().enumerate() {
            let mut e = vec![0.0; base.len()];
            e[i] = 1.0;
            *slot = (problem.eval(&pt.axpy(h, &e)) - problem.eval(&pt.axpy(-h, &e))) / (2.0 * h);
        }
        let diff = analytic.iter().zip(&numeric).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let scale = analytic.iter().map(|a| a * a).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
        worst = worst.max(diff / scale);
    }
    worst
}
