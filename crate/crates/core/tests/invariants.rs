use geodesy::exactmat::{
    char_poly, char_poly_bareiss, char_poly_cofactor, eigenprojection, integer_spectrum, GaussMatrix, GaussRational,
    Poly,
};
use geodesy::hermsym::{cartan_decompose, cartan_involution, complex_structure, in_su_pp, is_in_k, is_in_p};
use geodesy::sample::SuPPSampler;
use proptest::prelude::*;

/// Faddeev–LeVerrier: `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
fn faddeev_leverrier(a: &GaussMatrix) -> Poly {
    let n = a.rows();
    let mut coeffs = vec![GaussRational::zero(); n + 1];
    coeffs[n] = GaussRational::one();
    let mut m = GaussMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m).unwrap().add(&GaussMatrix::identity(n).scale(&coeffs[n - k + 1])).unwrap();
        let tr = a.mul(&m).unwrap().trace().unwrap();
        coeffs[n - k] = -(tr * GaussRational::from_fractions(1, k as i64, 0, 1));
    }
    Poly::new(coeffs)
}

fn sampler() -> impl Strategy<Value = SuPPSampler> {
    (1usize..=3, any::<u64>()).prop_map(|(p, seed)| SuPPSampler::new(p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobi_identity(mut s in sampler()) {
        let (a, b, c) = (s.sample(), s.sample(), s.sample());
        let t1 = a.bracket(&b.bracket(&c).unwrap()).unwrap();
        let t2 = b.bracket(&c.bracket(&a).unwrap()).unwrap();
        let t3 = c.bracket(&a.bracket(&b).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
    }

    #[test]
    fn bracket_antisymmetric_and_closed(mut s in sampler()) {
        let (a, b) = (s.sample(), s.sample());
        let ab = a.bracket(&b).unwrap();
        prop_assert_eq!(&ab, &b.bracket(&a).unwrap().neg());
        prop_assert!(in_su_pp(&ab, s.shape()).unwrap());
    }

    #[test]
    fn theta_is_involutive_automorphism(mut s in sampler()) {
        let sh = s.shape();
        let (a, b) = (s.sample(), s.sample());
        let th = |m: &GaussMatrix| cartan_involution(m, sh).unwrap();
        prop_assert_eq!(th(&th(&a)), a.clone());
        prop_assert_eq!(th(&a.bracket(&b).unwrap()), th(&a).bracket(&th(&b)).unwrap());
    }

    #[test]
    fn cartan_bracket_relations(mut s in sampler()) {
        let sh = s.shape();
        let (k1, k2, p1, p2) = (s.sample_k(), s.sample_k(), s.sample_p(), s.sample_p());
        prop_assert!(is_in_k(&k1.bracket(&k2).unwrap(), sh).unwrap());
        prop_assert!(is_in_p(&k1.bracket(&p1).unwrap(), sh).unwrap());
        prop_assert!(is_in_k(&p1.bracket(&p2).unwrap(), sh).unwrap());
    }

    #[test]
    fn cartan_split_recombines(mut s in sampler()) {
        let a = s.sample();
        let split = cartan_decompose(&a, s.shape()).unwrap();
        prop_assert_eq!(split.k_part.add(&split.p_part).unwrap(), a);
    }

    #[test]
    fn iota_squares_to_minus_one(mut s in sampler()) {
        let sh = s.shape();
        let x = s.sample_p();
        let ix = complex_structure(&x, sh).unwrap();
        prop_assert!(is_in_p(&ix, sh).unwrap());
        prop_assert_eq!(complex_structure(&ix, sh).unwrap(), x.neg());
    }

    #[test]
    fn char_poly_agrees_with_faddeev_leverrier(n in 1usize..=4, seed in any::<u64>()) {
        let a = SuPPSampler::new(1, seed).square(n);
        let fl = faddeev_leverrier(&a);
        prop_assert_eq!(&char_poly_cofactor(&a).unwrap(), &fl);
        prop_assert_eq!(&char_poly_bareiss(&a).unwrap(), &fl);
    }

    #[test]
    fn cayley_hamilton(n in 1usize..=6, seed in any::<u64>()) {
        let a = SuPPSampler::new(1, seed).square(n);
        let chi = char_poly(&a).unwrap();
        prop_assert_eq!(chi.degree(), Some(n));
        prop_assert!(chi.eval_matrix(&a).unwrap().is_zero());
    }

    #[test]
    fn eigenprojectors_resolve_identity(n in 1usize..=5, seed in any::<u64>()) {
        let (a, diag) = SuPPSampler::new(1, seed).conjugated_diagonal(n);
        let spec = integer_spectrum(&a).unwrap();
        prop_assert_eq!(spec.values().sum::<usize>(), n);
        prop_assert!(diag.iter().all(|d| spec.contains_key(d)));
        let projectors: Vec<_> = spec.keys().map(|&l| (l, eigenprojection(&a, l, &spec).unwrap())).collect();
        let mut sum = GaussMatrix::zeros(n, n);
        for (l, p) in &projectors {
            prop_assert_eq!(a.mul(p).unwrap(), p.scale_int(*l));
            prop_assert_eq!(p.trace().unwrap(), GaussRational::from_int(spec[l] as i64));
            sum = sum.add(p).unwrap();
        }
        prop_assert_eq!(sum, GaussMatrix::identity(n));
        for (i, (_, p)) in projectors.iter().enumerate() {
            for (_, q) in &projectors[i + 1..] {
                prop_assert!(p.mul(q).unwrap().is_zero());
            }
        }
    }
}
