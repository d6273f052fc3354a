//! Seeded random elements of `su(p,p)` with small rational entries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmat::{GaussMatrix, GaussRational};
use crate::hermsym::SuPQShape;

#[derive(Debug, Clone)]
pub struct SuPPSampler {
    shape: SuPQShape,
    rng: ChaCha8Rng,
}

impl SuPPSampler {
    /// Panics when `p == 0`.
    pub fn new(p: usize, seed: u64) -> Self {
        Self { shape: SuPQShape::new(p).expect("p >= 1"), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn shape(&self) -> SuPQShape {
        self.shape
    }

    fn rational(&mut self) -> (i64, i64) {
        (self.rng.random_range(-3..=3), self.rng.random_range(1..=3))
    }

    pub fn scalar(&mut self) -> GaussRational {
        let (a, b) = self.rational();
        let (c, d) = self.rational();
        GaussRational::from_fractions(a, b, c, d)
    }

    fn imaginary(&mut self) -> GaussRational {
        let (c, d) = self.rational();
        GaussRational::from_fractions(0, 1, c, d)
    }

    /// Arbitrary `n x n` Gaussian rational matrix.
    pub fn square(&mut self, n: usize) -> GaussMatrix {
        let entries = (0..n * n).map(|_| self.scalar()).collect();
        GaussMatrix::from_entries(n, n, entries).expect("n*n entries")
    }

    fn skew_hermitian(&mut self, n: usize) -> GaussMatrix {
        let mut m = GaussMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, self.imaginary());
            for j in i + 1..n {
                let z = self.scalar();
                m.set(j, i, -z.conj());
                m.set(i, j, z);
            }
        }
        m
    }

    /// Block-diagonal `(A 0; 0 B)` in `k`.
    pub fn sample_k(&mut self) -> GaussMatrix {
        let p = self.shape.p();
        let a = self.skew_hermitian(p);
        let mut b = self.skew_hermitian(p);
        let mut tr = a.trace().expect("square");
        for i in 0..p - 1 {
            tr += b.get(i, i);
        }
        b.set(p - 1, p - 1, -tr);
        let mut m = GaussMatrix::zeros(2 * p, 2 * p);
        m.set_block(0, 0, &a);
        m.set_block(p, p, &b);
        m
    }

    /// Off-diagonal `(0 Z; Z* 0)` in `p`.
    pub fn sample_p(&mut self) -> GaussMatrix {
        let p = self.shape.p();
        let z = self.square(p);
        let mut m = GaussMatrix::zeros(2 * p, 2 * p);
        m.set_block(p, 0, &z.conj_transpose());
        m.set_block(0, p, &z);
        m
    }

    pub fn sample(&mut self) -> GaussMatrix {
        let k = self.sample_k();
        let p = self.sample_p();
        k.add(&p).expect("same shape")
    }

    /// `PDP⁻¹` with integer diagonal `D` and unimodular `P` built from
    /// elementary shears, together with the diagonal.
    pub fn conjugated_diagonal(&mut self, n: usize) -> (GaussMatrix, Vec<i64>) {
        let diag: Vec<i64> = (0..n).map(|_| self.rng.random_range(-2..=2)).collect();
        let mut p = GaussMatrix::identity(n);
        let mut p_inv = GaussMatrix::identity(n);
        for _ in 0..2 * n {
            let (i, j) = (self.rng.random_range(0..n), self.rng.random_range(0..n));
            if i == j {
                continue;
            }
            let k = self.rng.random_range(-2..=2);
            let mut shear = GaussMatrix::identity(n);
            shear.set(i, j, GaussRational::from_int(k));
            let mut unshear = GaussMatrix::identity(n);
            unshear.set(i, j, GaussRational::from_int(-k));
            p = p.mul(&shear).expect("square");
            p_inv = unshear.mul(&p_inv).expect("square");
        }
        let a = p.mul(&GaussMatrix::diag_ints(&diag)).and_then(|m| m.mul(&p_inv)).expect("square");
        (a, diag)
    }
}
