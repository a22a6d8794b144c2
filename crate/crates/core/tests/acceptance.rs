//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Every check is exact integer or rational arithmetic; there are no
//! floating-point tolerances anywhere. Run with
//! `cargo test --release -p ekr-core --test acceptance -- --nocapture`.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;

use ekr_core::codes::{mds_weight_distribution, ExtendOutcome, LinearCode};
use ekr_core::config::Caps;
use ekr_core::ekr::module_property_check;
use ekr_core::nrc::{
    mu, mu_checks, nrc_profile, profile_closed_form, profile_closed_form_variant, s_t_profile,
};
use ekr_core::pg::Point;
use ekr_core::schemes::{
    build_scheme, intersection_numbers, scheme_clique_bound, scheme_eigenmatrices,
    verify_closed_form, SchemeFamily,
};
use ekr_core::search::{max_intersecting_family, verify_star_absorption, FamilyTag, SearchConfig};
use ekr_core::spectral::{
    b_graph_spectrum, bipartite_mixing_holds, few_or_many_holds, gamma_t_spectrum, hoffman_bound,
    more_than_few_bound, verify_b_spectrum, verify_spectrum, CodeGeometry,
};

fn caps() -> Caps {
    Caps::default()
}

fn t0() -> BTreeSet<usize> {
    BTreeSet::from([0usize])
}

/// Criterion 1: enumerated weight distributions of ERS(q, k) equal the MDS
/// closed form exactly for q in {4,5,7,8,9} and code dimension <= 4, with
/// the counts summing to q^dim.
#[test]
fn criterion_01_weight_distributions() {
    for q in [4u32, 5, 7, 8, 9] {
        for k in 1..=3usize {
            let code = LinearCode::ers(q, k).unwrap();
            let dist = code.weight_distribution(&caps()).unwrap();
            let closed = mds_weight_distribution(code.n(), code.dim(), q);
            for (w, (&enumerated, formula)) in dist.iter().zip(&closed).enumerate() {
                assert_eq!(
                    BigInt::from(enumerated),
                    *formula,
                    "ERS({q},{k}) weight {w}"
                );
            }
            let total: u64 = dist.iter().sum();
            assert_eq!(total, code.size(), "ERS({q},{k}) total");
        }
    }
    let spot = LinearCode::ers(5, 2).unwrap().weight_distribution(&caps()).unwrap();
    assert_eq!(spot, vec![1, 0, 0, 0, 60, 24, 40]);
    println!("acceptance 01 (weight distributions vs MDS closed form): PASS");
}

/// Criterion 2: the Gamma_0 spectrum of ERS(5,2) is {40:1, 5:40, 0:60,
/// -10:24}, and for all q in {4,5,7,8}, k in {2,3} the spectrum passes both
/// the exact eigenvector identity and the trace-moment verification.
#[test]
fn criterion_02_gamma0_spectra_dual_verified() {
    let code = LinearCode::ers(5, 2).unwrap();
    let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
    assert_eq!(spec.entries, vec![(40, 1), (5, 40), (0, 60), (-10, 24)]);
    verify_spectrum(&code, &t0(), &spec, &caps()).unwrap();
    for q in [4u32, 5, 7, 8] {
        for k in [2usize, 3] {
            let code = LinearCode::ers(q, k).unwrap();
            let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
            verify_spectrum(&code, &t0(), &spec, &caps()).unwrap();
        }
    }
    println!("acceptance 02 (Gamma_0 spectra, eigenvector + moment verification): PASS");
}

/// Criterion 3: the Hoffman ratio bound equals q^(dim-1) exactly for every
/// tested ERS instance with a nonempty avoid set.
#[test]
fn criterion_03_hoffman_bound_exact() {
    for q in [4u32, 5, 7, 8] {
        for k in [2usize, 3] {
            let code = LinearCode::ers(q, k).unwrap();
            let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
            let geom = CodeGeometry::new(&code, &caps()).unwrap();
            assert!(geom.m_size() > 0);
            let bound = hoffman_bound(&spec, code.size()).unwrap();
            let expected = BigRational::from_integer(BigInt::from(q).pow(k as u32));
            assert_eq!(bound, expected, "ERS({q},{k})");
        }
    }
    let code = LinearCode::ers(5, 2).unwrap();
    let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
    assert_eq!(
        hoffman_bound(&spec, 125).unwrap(),
        BigRational::from_integer(BigInt::from(25))
    );
    println!("acceptance 03 (Hoffman bound equals q^(dim-1) exactly): PASS");
}

/// Criterion 4: bipartite spectrum bookkeeping 2 + 2(q^(dim-1) - 1) +
/// (q-2) q^(dim-1) = q^dim for every tested B(C, i, 0), and the M M^T trace
/// moments match the claimed multiset exactly.
#[test]
fn criterion_04_bipartite_spectra() {
    for q in [4u32, 5, 7, 8] {
        for k in [2usize, 3] {
            let code = LinearCode::ers(q, k).unwrap();
            for i in [0usize, code.n() - 1] {
                let spec = b_graph_spectrum(&code, i, &caps()).unwrap();
                assert_eq!(spec.total_multiplicity(), code.size(), "ERS({q},{k}) i={i}");
                verify_b_spectrum(&code, i, &spec, &caps()).unwrap();
            }
        }
    }
    println!("acceptance 04 (bipartite spectra, bookkeeping + MM^T moments): PASS");
}

/// Criterion 5: the module property fails with the nucleus as witness for
/// ERS(q,2), q in {4,8,16}; holds for ERS(q,2), q in {5,7,9} and ERS(q,3),
/// q in {5,7}; and extending ERS(4,2) adds exactly one column after which
/// the property holds.
#[test]
fn criterion_05_module_property() {
    for q in [4u32, 8, 16] {
        let code = LinearCode::ers(q, 2).unwrap();
        let geom = CodeGeometry::new(&code, &caps()).unwrap();
        let report = module_property_check(&geom);
        assert!(!report.holds, "ERS({q},2)");
        assert_eq!(report.witness, Some(Point(vec![0, 1, 0])), "ERS({q},2)");
    }
    for (q, k) in [(5u32, 2usize), (7, 2), (9, 2), (5, 3), (7, 3)] {
        let code = LinearCode::ers(q, k).unwrap();
        let geom = CodeGeometry::new(&code, &caps()).unwrap();
        assert!(module_property_check(&geom).holds, "ERS({q},{k})");
    }
    let code = LinearCode::ers(4, 2).unwrap();
    let (ext, outcome) = code.extend(&caps()).unwrap();
    match outcome {
        ExtendOutcome::Extended(points) => assert_eq!(points.len(), 1),
        other => panic!("expected an extension, got {other:?}"),
    }
    assert_eq!(ext.n(), code.n() + 1);
    let geom = CodeGeometry::new(&ext, &caps()).unwrap();
    assert!(module_property_check(&geom).holds);
    println!("acceptance 05 (module property, nucleus witness, extension): PASS");
}

/// Criterion 6: exact search. The maximum 1-intersecting family has size
/// q^(dim-1) for hom_2 over q in {3,4,5} and hom_3 over q = 4; the census at
/// q = 4 contains the non-star b-line families while q in {3,5} yield only
/// stars; and every found family passes the few-or-many product inequality,
/// the bipartite mixing inequality, and the absorption law exactly.
#[test]
fn criterion_06_search_and_census() {
    let census_cfg = SearchConfig {
        census: true,
        ..SearchConfig::default()
    };
    let plain_cfg = SearchConfig::default();

    let check_families = |code: &LinearCode, families: &[ekr_core::codes::Family]| {
        let geom = CodeGeometry::new(code, &caps()).unwrap();
        for fam in families {
            for i in 0..code.n() {
                for alpha in 0..code.q() {
                    assert!(few_or_many_holds(&geom, fam, i, alpha, &caps()).unwrap());
                    // bipartite mixing for the family split along this star
                    let s = fam.members.iter().filter(|c| c.word[i] == alpha).count() as u64;
                    let t = fam.len() as u64 - s;
                    assert!(bipartite_mixing_holds(&geom, i, s, t, &caps()).unwrap());
                }
            }
            let absorption = verify_star_absorption(&geom, fam, &caps()).unwrap();
            assert!(absorption.violations.is_empty());
            // with the module property, some star meets the family in at
            // least |F|/q + (q^(dim-1)/n)(...) codewords
            if ekr_core::ekr::module_property_check(&geom).holds {
                let bound = more_than_few_bound(&geom, fam.len() as u64).unwrap();
                let best = absorption
                    .profile
                    .iter()
                    .map(|&(_, _, inside, _)| inside)
                    .max()
                    .unwrap();
                assert!(
                    BigRational::from_integer(BigInt::from(best as u64)) >= bound,
                    "best star intersection {best} below the guaranteed {bound}"
                );
            }
        }
    };

    for (q, expected_families) in [(3u32, 12usize), (4, 24), (5, 30)] {
        let code = LinearCode::ers(q, 2).unwrap();
        let result = max_intersecting_family(&code, 1, &census_cfg).unwrap();
        assert_eq!(result.max_size as u64, (q as u64).pow(2), "hom_2 q={q}");
        let census = result.census.unwrap();
        assert_eq!(census.families.len(), expected_families, "hom_2 q={q}");
        let stars = census
            .tags
            .iter()
            .filter(|t| matches!(t, FamilyTag::Star { .. }))
            .count();
        let b_lines = census
            .tags
            .iter()
            .filter(|t| matches!(t, FamilyTag::BLine { .. }))
            .count();
        if q == 4 {
            assert_eq!(stars, 20);
            assert_eq!(b_lines, 4);
        } else {
            assert_eq!(stars, census.families.len(), "hom_2 q={q} stars only");
        }
        // spectral cross-check: search max equals the Hoffman bound
        let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
        let hoffman = hoffman_bound(&spec, code.size()).unwrap();
        assert_eq!(
            BigRational::from_integer(BigInt::from(result.max_size as u64)),
            hoffman
        );
        check_families(&code, &census.families);
    }

    let code = LinearCode::ers(4, 3).unwrap();
    let result = max_intersecting_family(&code, 1, &plain_cfg).unwrap();
    assert_eq!(result.max_size, 64, "hom_3 q=4");
    let spec = gamma_t_spectrum(&code, &t0(), &caps()).unwrap();
    assert_eq!(
        BigRational::from_integer(BigInt::from(64u32)),
        hoffman_bound(&spec, code.size()).unwrap()
    );
    check_families(&code, std::slice::from_ref(&result.witness));
    println!("acceptance 06 (exact search, census, family inequalities): PASS");
}

/// Criterion 7: the exhaustive maximum 3-intersecting family in hom_3 over
/// F_5 has size < 9 = (q^2-1)/k + 1, and the exhaustive maximum
/// 2-intersecting family in hom_2 over F_5 has size in [7, 13).
#[test]
fn criterion_07_t_equals_k_bounds() {
    let cfg = SearchConfig::default();
    let hom3 = LinearCode::ers(5, 3).unwrap();
    let r3 = max_intersecting_family(&hom3, 3, &cfg).unwrap();
    assert!(r3.max_size < 9, "hom_3 q=5 t=3 max = {}", r3.max_size);

    let hom2 = LinearCode::ers(5, 2).unwrap();
    let r2 = max_intersecting_family(&hom2, 2, &cfg).unwrap();
    assert!(r2.max_size >= 7, "hom_2 q=5 t=2 max = {}", r2.max_size);
    assert!(r2.max_size < 13, "hom_2 q=5 t=2 max = {}", r2.max_size);
    println!(
        "acceptance 07 (t = k searches: hom_3/F_5 max {} < 9; hom_2/F_5 max {} in [7,13)): PASS",
        r3.max_size, r2.max_size
    );
}

/// Criterion 8: the Delsarte clique bound reproduces 25 at q = 9 for the
/// three-distinct-roots relation of hom_3, computed from the enumerated P
/// matrix rather than the closed form.
#[test]
fn criterion_08_delsarte_bound_from_enumeration() {
    let scheme = build_scheme(SchemeFamily::Hom3, 9, &caps()).unwrap();
    let em = scheme_eigenmatrices(&scheme, &caps()).unwrap();
    let bound = scheme_clique_bound(&em, &[3]).unwrap();
    assert_eq!(bound.bound, BigInt::from(25));
    assert!(bound.single_relation);
    println!("acceptance 08 (Delsarte clique bound 25 at q=9 from enumerated P): PASS");
}

/// Criterion 9: enumerated (P, Q) match the closed-form tables up to row
/// permutation for hom2 q in {4,5,7,8,9}, hom3 q in {5,7,8,9,11,13}
/// covering all three branches, and ternary2 q in {3,4,5}; P Q = |X| I holds
/// exactly in every case, and the intersection numbers are constant.
#[test]
fn criterion_09_scheme_tables() {
    let cases: Vec<(SchemeFamily, u32, &str)> = vec![
        (SchemeFamily::Hom2, 4, "hom2_even"),
        (SchemeFamily::Hom2, 5, "hom2_odd"),
        (SchemeFamily::Hom2, 7, "hom2_odd"),
        (SchemeFamily::Hom2, 8, "hom2_even"),
        (SchemeFamily::Hom2, 9, "hom2_odd"),
        (SchemeFamily::Hom3, 5, "hom3_eps_minus"),
        (SchemeFamily::Hom3, 7, "hom3_eps_plus"),
        (SchemeFamily::Hom3, 8, "hom3_eps_minus"),
        (SchemeFamily::Hom3, 9, "hom3_div3"),
        (SchemeFamily::Hom3, 11, "hom3_eps_minus"),
        (SchemeFamily::Hom3, 13, "hom3_eps_plus"),
        (SchemeFamily::Ternary2, 3, "ternary2_odd"),
        (SchemeFamily::Ternary2, 4, "ternary2_even"),
        (SchemeFamily::Ternary2, 5, "ternary2_odd"),
    ];
    for (family, q, branch) in cases {
        let scheme = build_scheme(family, q, &caps()).unwrap();
        let em = scheme_eigenmatrices(&scheme, &caps()).unwrap();
        let matched = verify_closed_form(family, q, &em).unwrap();
        assert_eq!(matched.branch, branch, "{} q={q}", family.name());
        // P Q = |X| I exactly
        let n = em.p.len();
        let size = BigInt::from(scheme.size());
        for r in 0..n {
            for c in 0..n {
                let mut acc = BigInt::from(0u32);
                for t in 0..n {
                    acc += &em.p[r][t] * &em.q[t][c];
                }
                let expected = if r == c { size.clone() } else { BigInt::from(0u32) };
                assert_eq!(acc, expected, "{} q={q} PQ({r},{c})", family.name());
            }
        }
        let numbers = intersection_numbers(&scheme, &caps()).unwrap();
        assert_eq!(numbers.exhaustive, scheme.size() <= 10_000);
    }
    println!("acceptance 09 (scheme tables, PQ = |X|I, intersection numbers): PASS");
}

/// Criterion 10: the mu identities hold exactly for all k <= 12, with
/// mu_{3,0} = 1/3 and mu_{4,0} = 3/8.
#[test]
fn criterion_10_mu_constants() {
    let report = mu_checks(12);
    assert!(report.sums_to_one);
    assert!(report.recursion_holds);
    assert_eq!(mu(3, 0), BigRational::new(BigInt::from(1), BigInt::from(3)));
    assert_eq!(mu(4, 0), BigRational::new(BigInt::from(3), BigInt::from(8)));
    println!("acceptance 10 (mu constants: sums, recursion, spot values): PASS");
}

/// Criterion 11: enumerated hyperplane profiles equal the corrected closed
/// form (inner binomial C(q-t, j)) for (k,q) in {(2,5),(2,7),(3,5),(3,7),
/// (4,5)}, and the printed variant C(q+2-t, j) is refuted at (2,5,1) by
/// 6 vs -6.
#[test]
fn criterion_11_nrc_profiles() {
    for (k, q) in [(2usize, 5u32), (2, 7), (3, 5), (3, 7), (4, 5)] {
        // nrc_profile internally asserts enumeration == corrected closed form
        let profile = nrc_profile(q, k, &caps()).unwrap();
        let total: u64 = profile.counts.iter().sum();
        let expected = ((q as u64).pow(k as u32 + 1) - 1) / (q as u64 - 1);
        assert_eq!(total, expected, "PG({k},{q})");
    }
    assert_eq!(profile_closed_form(5, 2, 1), BigInt::from(6));
    assert_eq!(profile_closed_form_variant(5, 2, 1), BigInt::from(-6));
    println!("acceptance 11 (NRC profiles; printed-variant discrepancy documented): PASS");
}

/// Criterion 12: per-point profiles satisfy sum_t s_t(P) = (q^k - 1)/(q - 1)
/// for every off-curve point, double counting against the global profile is
/// exact, and every deviation |s_t(P) - mu_{k,t} q^(k-1)| is strictly below
/// q^(k-1).
#[test]
fn criterion_12_s_t_profiles() {
    for (k, q) in [(2usize, 5u32), (2, 7), (3, 5), (3, 7), (4, 5)] {
        // identities and double counting are asserted inside s_t_profile
        let profile = s_t_profile(q, k, &caps()).unwrap();
        let through = ((q as u64).pow(k as u32) - 1) / (q as u64 - 1);
        for (p, s) in &profile.off_curve {
            let total: u64 = s.iter().sum();
            assert_eq!(total, through, "point {p} in PG({k},{q})");
        }
        let bound = BigRational::from_integer(BigInt::from(q).pow(k as u32 - 1));
        assert!(
            profile.max_deviation < bound,
            "PG({k},{q}): deviation {} >= {}",
            profile.max_deviation,
            bound
        );
    }
    println!("acceptance 12 (s_t profiles: identities, double counting, deviations): PASS");
}
