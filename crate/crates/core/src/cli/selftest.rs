//! Seeded invariant suite behind `geodesy selftest`.

use crate::embedcheck::{check_conditions, check_homomorphism, EmbeddingCandidate};
use crate::exactmat::{char_poly, char_poly_bareiss, char_poly_cofactor, eigenprojection, integer_spectrum, GaussMatrix};
use crate::hermsym::{cartan_involution, complex_structure, is_in_k, is_in_p, Su11Basis};
use crate::ladder::{classify, replay_certificate, ClassifyOptions, Side, Status, WeightData};
use crate::oracle::gradient_check;
use crate::sample::SuPPSampler;
use crate::Result;

const SAMPLES: usize = 20;
const SEED: u64 = 2024;

pub struct Check {
    pub name: &'static str,
    pub run: fn() -> Result<Option<String>>,
}

fn fail(msg: impl Into<String>) -> Result<Option<String>> {
    Ok(Some(msg.into()))
}

fn each_sample(mut f: impl FnMut(&mut SuPPSampler) -> Result<Option<String>>) -> Result<Option<String>> {
    for p in 1..=3 {
        let mut s = SuPPSampler::new(p, SEED + p as u64);
        for _ in 0..SAMPLES {
            if let Some(m) = f(&mut s)? {
                return fail(format!("p = {p}: {m}"));
            }
        }
    }
    Ok(None)
}

fn jacobi() -> Result<Option<String>> {
    each_sample(|s| {
        let (a, b, c) = (s.sample(), s.sample(), s.sample());
        let sum = a.bracket(&b.bracket(&c)?)?.add(&b.bracket(&c.bracket(&a)?)?)?.add(&c.bracket(&a.bracket(&b)?)?)?;
        Ok((!sum.is_zero()).then(|| "cyclic sum is nonzero".into()))
    })
}

fn antisymmetry() -> Result<Option<String>> {
    each_sample(|s| {
        let (a, b) = (s.sample(), s.sample());
        Ok((a.bracket(&b)? != b.bracket(&a)?.neg()).then(|| "[a,b] != -[b,a]".into()))
    })
}

fn involution() -> Result<Option<String>> {
    each_sample(|s| {
        let sh = s.shape();
        let (a, b) = (s.sample(), s.sample());
        if cartan_involution(&cartan_involution(&a, sh)?, sh)? != a {
            return fail("theta is not involutive");
        }
        let lhs = cartan_involution(&a.bracket(&b)?, sh)?;
        let rhs = cartan_involution(&a, sh)?.bracket(&cartan_involution(&b, sh)?)?;
        Ok((lhs != rhs).then(|| "theta does not preserve brackets".into()))
    })
}

fn cartan_brackets() -> Result<Option<String>> {
    each_sample(|s| {
        let sh = s.shape();
        let (k1, k2, p1, p2) = (s.sample_k(), s.sample_k(), s.sample_p(), s.sample_p());
        if !is_in_k(&k1.bracket(&k2)?, sh)? {
            return fail("[k,k] leaves k");
        }
        if !is_in_p(&k1.bracket(&p1)?, sh)? {
            return fail("[k,p] leaves p");
        }
        Ok((!is_in_k(&p1.bracket(&p2)?, sh)?).then(|| "[p,p] leaves k".into()))
    })
}

fn iota_squared() -> Result<Option<String>> {
    each_sample(|s| {
        let sh = s.shape();
        let x = s.sample_p();
        Ok((complex_structure(&complex_structure(&x, sh)?, sh)? != x.neg()).then(|| "iota^2 != -1".into()))
    })
}

fn bracket_table() -> Result<Option<String>> {
    if !Su11Basis::new().bracket_table_holds() {
        return fail("su(1,1) basis");
    }
    for p in 1..=4 {
        for m in 0..=p {
            let c = EmbeddingCandidate::standard_plus_trivial(p, m)?;
            if !check_homomorphism(&c) {
                return fail(format!("standard^{m} + trivial in su({p},{p})"));
            }
        }
    }
    Ok(None)
}

fn cayley_hamilton() -> Result<Option<String>> {
    let mut s = SuPPSampler::new(1, SEED);
    for n in 1..=6 {
        for _ in 0..if n > 4 { 3 } else { SAMPLES } {
            let a = s.square(n);
            if !char_poly(&a)?.eval_matrix(&a)?.is_zero() {
                return fail(format!("chi(A) != 0 for n = {n}"));
            }
            if n <= 4 && char_poly_cofactor(&a)? != char_poly_bareiss(&a)? {
                return fail(format!("cofactor and Bareiss disagree for n = {n}"));
            }
        }
    }
    Ok(None)
}

fn eigenprojectors() -> Result<Option<String>> {
    let mut s = SuPPSampler::new(1, SEED);
    for n in 1..=5 {
        for _ in 0..SAMPLES {
            let (a, _) = s.conjugated_diagonal(n);
            let spec = integer_spectrum(&a)?;
            let mut sum = GaussMatrix::zeros(n, n);
            for &lambda in spec.keys() {
                let p = eigenprojection(&a, lambda, &spec)?;
                if p.mul(&p)? != p {
                    return fail(format!("P_{lambda} is not idempotent"));
                }
                sum = sum.add(&p)?;
            }
            if sum != GaussMatrix::identity(n) {
                return fail(format!("projectors do not resolve the identity for n = {n}"));
            }
        }
    }
    Ok(None)
}

fn certificate_replay() -> Result<Option<String>> {
    for p in 1..=3 {
        let summary = classify(p, ClassifyOptions::default())?;
        for d in &summary.data {
            for sec in &d.sectors {
                if sec.verdict.status == Status::Unresolved {
                    return fail(format!("{} {} sector unresolved", d.canonical, sec.sector));
                }
                if let Err(e) = replay_certificate(&sec.system, &sec.verdict) {
                    return fail(format!("{} {} sector: {e}", d.canonical, sec.sector));
                }
            }
            if d.status == Status::Feasible {
                let r = check_conditions(&d.lift()?)?;
                let embeds = d.data.mult(Side::Plus, 1) > 0;
                let ok = r.is_homomorphism && r.satisfies_c1 && r.satisfies_c3 && r.injective == embeds;
                if !ok {
                    return fail(format!("lift of {} fails the embedding checks", d.canonical));
                }
            }
        }
    }
    Ok(None)
}

fn gradient() -> Result<Option<String>> {
    for (plus, minus) in [
        (vec![(3, 1), (1, 1)], vec![(-1, 1), (-3, 1)]),
        (vec![(2, 1)], vec![(0, 1), (-2, 1)]),
        (vec![(1, 2)], vec![(-1, 2)]),
    ] {
        let wd = WeightData::from_pairs(&plus, &minus)?;
        let err = gradient_check(&wd, 10, SEED, 1e-6);
        if err >= 1e-5 {
            return fail(format!("{wd}: relative error {err:e}"));
        }
    }
    Ok(None)
}

pub const CHECKS: &[Check] = &[
    Check { name: "jacobi", run: jacobi },
    Check { name: "antisymmetry", run: antisymmetry },
    Check { name: "involution", run: involution },
    Check { name: "cartan brackets", run: cartan_brackets },
    Check { name: "iota squared", run: iota_squared },
    Check { name: "bracket table", run: bracket_table },
    Check { name: "cayley-hamilton", run: cayley_hamilton },
    Check { name: "eigenprojectors", run: eigenprojectors },
    Check { name: "certificate replay", run: certificate_replay },
    Check { name: "gradient check", run: gradient },
];

/// Runs every check in order, stopping at the first failure.
pub fn run(out: &mut impl std::io::Write) -> std::io::Result<bool> {
    for c in CHECKS {
        let outcome = match (c.run)() {
            Ok(None) => None,
            Ok(Some(m)) => Some(m),
            Err(e) => Some(format!("error: {e}")),
        };
        match outcome {
            None => writeln!(out, "ok      {}", c.name)?,
            Some(m) => {
                writeln!(out, "FAILED  {}: {m}", c.name)?;
                return Ok(false);
            }
        }
    }
    writeln!(out, "all {} checks passed", CHECKS.len())?;
    Ok(true)
}
