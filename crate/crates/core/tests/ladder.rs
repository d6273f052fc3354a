use std::collections::{BTreeMap, BTreeSet};

use geodesy::embedcheck::{check_conditions, h_weight_analysis};
use geodesy::exactmat::{GaussMatrix, GaussRational};
use geodesy::ladder::*;
use geodesy::sample::SuPPSampler;
use proptest::prelude::*;

fn multisets(values: &[i64], size: usize) -> Vec<Vec<i64>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        for mut rest in multisets(&values[i..], size - 1) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

fn counts(ws: &[i64]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for &w in ws {
        *m.entry(w).or_insert(0) += 1;
    }
    m
}

/// Weights of an `sl(2)` representation, peeled off one irreducible at a time.
fn is_sl2_spectrum(mut m: BTreeMap<i64, usize>) -> bool {
    while let Some((&top, _)) = m.iter().next_back() {
        if top < 0 {
            return false;
        }
        let mut w = top;
        while w >= -top {
            match m.get_mut(&w) {
                Some(k) if *k > 0 => {
                    *k -= 1;
                    if *k == 0 {
                        m.remove(&w);
                    }
                }
                _ => return false,
            }
            w -= 2;
        }
    }
    true
}

fn brute_force(p: usize, max_weight: i64) -> BTreeSet<String> {
    let values: Vec<i64> = (-max_weight..=max_weight).collect();
    let sides = multisets(&values, p);
    let mut out = BTreeSet::new();
    for plus in &sides {
        for minus in &sides {
            let all: Vec<i64> = plus.iter().chain(minus).copied().collect();
            if is_sl2_spectrum(counts(&all)) {
                let pc: Vec<_> = counts(plus).into_iter().collect();
                let mc: Vec<_> = counts(minus).into_iter().collect();
                out.insert(WeightData::from_pairs(&pc, &mc).unwrap().canonical());
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for p in 1..=3 {
        let mw = default_max_weight(p);
        let listed: Vec<String> = enumerate_weight_data(p, mw).iter().map(WeightData::canonical).collect();
        let unique: BTreeSet<String> = listed.iter().cloned().collect();
        assert_eq!(unique.len(), listed.len(), "duplicates at p = {p}");
        assert_eq!(unique, brute_force(p, mw), "p = {p}");
    }
}

#[test]
fn canonical_hashes_are_distinct() {
    let data = enumerate_weight_data(4, default_max_weight(4));
    let hashes: BTreeSet<String> = data.iter().map(WeightData::canonical_hash).collect();
    assert_eq!(hashes.len(), data.len());
}

fn random_assignment(sys: &BlockSystem, s: &mut SuPPSampler) -> Vec<GaussMatrix> {
    sys.unknowns
        .iter()
        .map(|u| {
            let mut m = GaussMatrix::zeros(u.rows, u.cols);
            for r in 0..u.rows {
                for c in 0..u.cols {
                    m.set(r, c, s.scalar());
                }
            }
            m
        })
        .collect()
}

fn all_data(max_p: usize) -> Vec<WeightData> {
    (1..=max_p).flat_map(|p| enumerate_weight_data(p, default_max_weight(p))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Every Gram trace enters two equations with opposite signs, so the
    /// traces of all left sides cancel and `Σ λ·dim = 0` is forced.
    #[test]
    fn traces_telescope(idx in 0usize..149, seed in any::<u64>()) {
        let data = all_data(3);
        let wd = &data[idx % data.len()];
        let sys = derive_constraints(wd);
        let values = random_assignment(&sys, &mut SuPPSampler::new(1, seed));
        let mut lhs_trace = GaussRational::zero();
        let mut rhs_trace = 0i64;
        for eq in &sys.diagonal {
            let defect = diagonal_defect(eq, &values);
            lhs_trace += &defect.trace().unwrap();
            rhs_trace += eq.rhs * eq.dim as i64;
        }
        prop_assert_eq!(rhs_trace, 0);
        prop_assert_eq!(lhs_trace, GaussRational::zero());
    }

    /// `tr(AA*) = tr(A*A)` is a nonnegative rational vanishing only at `A = 0`.
    #[test]
    fn gram_trace_signs(rows in 1usize..=3, cols in 1usize..=3, seed in any::<u64>(), zero_out in any::<bool>()) {
        let mut s = SuPPSampler::new(1, seed);
        let mut a = GaussMatrix::zeros(rows, cols);
        if !zero_out {
            for r in 0..rows {
                for c in 0..cols {
                    a.set(r, c, s.scalar());
                }
            }
        }
        let outer = a.mul(&a.conj_transpose()).unwrap().trace().unwrap();
        let inner = a.conj_transpose().mul(&a).unwrap().trace().unwrap();
        prop_assert_eq!(&outer, &inner);
        prop_assert!(outer.is_real());
        prop_assert!(outer.re >= num_rational::BigRational::from_integer(0.into()));
        prop_assert_eq!(outer.is_zero(), a.is_zero());
    }
}

#[test]
fn sector_verdicts_are_independent() {
    for wd in all_data(3) {
        let full = analyze_datum(&wd);
        for sector in [Sector::Odd, Sector::Even] {
            let part = wd.restrict(sector);
            if part.is_empty() {
                assert!(full.sector(sector).is_none());
                continue;
            }
            let alone = analyze_datum(&part);
            assert_eq!(full.sector(sector).unwrap().verdict, alone.sector(sector).unwrap().verdict, "{wd}");
        }
    }
}

#[test]
fn every_certificate_replays() {
    for wd in all_data(4) {
        for s in analyze_datum(&wd).sectors {
            replay_certificate(&s.system, &s.verdict).unwrap_or_else(|e| panic!("{wd} {}: {e}", s.sector));
        }
    }
}

#[test]
fn feasible_classes_are_standard_plus_trivial() {
    for p in 1..=4 {
        let s = verify_theorem(p).unwrap();
        let got: BTreeSet<String> = s.data.iter().filter(|r| r.status == Status::Feasible).map(|r| r.canonical.clone()).collect();
        let expected: BTreeSet<String> = (0..=p)
            .map(|m| {
                let mut plus = vec![(1, m), (0, p - m)];
                let mut minus = vec![(-1, m), (0, p - m)];
                plus.retain(|&(_, k)| k > 0);
                minus.retain(|&(_, k)| k > 0);
                WeightData::from_pairs(&plus, &minus).unwrap().canonical()
            })
            .collect();
        assert_eq!(got, expected, "p = {p}");
        let flags: Vec<(usize, bool)> = s.classes.iter().map(|c| (c.standard_multiplicity, c.embedding)).collect();
        assert_eq!(flags, (0..=p).map(|m| (m, m > 0)).collect::<Vec<_>>());
    }
}

#[test]
fn witness_lift_round_trip() {
    for p in 1..=3 {
        for r in verify_theorem(p).unwrap().data.iter().filter(|r| r.status == Status::Feasible) {
            let (sys, values) = r.witness_values().unwrap();
            assert!(check_assignment(&sys, &values), "{}", r.canonical);
            let c = r.lift().unwrap();
            assert_eq!(h_weight_analysis(&c).unwrap(), r.data, "{}", r.canonical);
            let report = check_conditions(&c).unwrap();
            assert!(report.is_homomorphism && report.satisfies_c1 && report.satisfies_c3);
            assert!(report.totally_geodesic || r.data.mult(Side::Plus, 1) == 0);
        }
    }
}

#[test]
fn even_contradiction_runs_r3_then_r1() {
    let wd = WeightData::from_pairs(&[(2, 1)], &[(0, 1), (-2, 1)]).unwrap();
    let sys = derive_constraints(&wd);
    let v = eliminate(&sys);
    assert_eq!(v.status, Status::Infeasible);
    let rules: Vec<Rule> = v.certificate.iter().map(|s| s.rule).collect();
    assert_eq!(rules, vec![Rule::R3, Rule::R1]);
    assert_eq!((v.certificate[0].side, v.certificate[0].weight), (Side::Minus, 0));
    assert_eq!(v.certificate[0].unknowns, vec!["F(-2->0)".to_string(), "Z(0->2)".to_string()]);
    let last = &v.certificate[1];
    assert_eq!((last.side, last.weight), (Side::Plus, 2));
    assert!(last.unknowns.is_empty());
    assert_eq!(last.trace_values, vec![2, 1, 2]);
    replay_certificate(&sys, &v).unwrap();
}

#[test]
fn max_weight_bound_limits_enumeration() {
    let narrow = classify(3, ClassifyOptions { max_weight: Some(1), jobs: 1 }).unwrap();
    assert!(narrow.data.iter().all(|d| d.data.total().keys().all(|w| w.abs() <= 1)));
    assert!(narrow.enumerated < classify(3, ClassifyOptions::default()).unwrap().enumerated);
    narrow.check().unwrap();
}
