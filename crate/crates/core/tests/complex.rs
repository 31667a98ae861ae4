mod common;

use mlsp::complex::{
    construct, f_vector, flag_f_from_h, flag_f_of, flag_h_of, flag_h_prime_double_prime, flag_h_vector, h_vector, io, FlagKind,
};
use mlsp::homology::{is_homology_sphere, reduced_betti};
use mlsp::{BalancedComplex, FlagVector, Gfp, MultiDeg};
use num_bigint::BigInt;
use proptest::prelude::*;

fn gf2() -> Gfp {
    Gfp::new(2).unwrap()
}

#[test]
fn flag_f_matches_brute_count() {
    for (name, bc) in common::sphere_suite() {
        let ours = flag_f_of(&bc);
        let brute = common::brute_flag_f(&bc);
        for b in bc.a.box_iter() {
            assert_eq!(ours.get_i64(&b), brute.get(&b).copied().unwrap_or(0), "{name} at {b}");
        }
    }
}

#[test]
fn suite_is_made_of_spheres() {
    let suite = common::sphere_suite();
    assert!(suite.len() >= 20);
    for (name, bc) in &suite {
        assert!(is_homology_sphere(&bc.complex, &gf2()).holds, "{name}");
    }
}

#[test]
fn flag_h_sums_to_h() {
    for (name, bc) in common::sphere_suite() {
        assert_eq!(flag_h_of(&bc).coarse_i64(), h_vector(&bc.complex).0, "{name}");
    }
}

#[test]
fn spheres_have_trivial_corrections() {
    for (name, bc) in common::sphere_suite() {
        let betti = reduced_betti(&bc.complex, &gf2()).values;
        let h = flag_h_of(&bc);
        let (hp, hpp) = flag_h_prime_double_prime(&h, &betti).unwrap();
        assert_eq!(hp.values, h.values, "{name}");
        assert_eq!(hpp.values, h.values, "{name}");
    }
}

#[test]
fn complex_files_round_trip() {
    for (name, bc) in common::sphere_suite() {
        let back = io::parse_complex_str(&io::to_json(&bc, true)).unwrap();
        assert_eq!(back.complex.named_face_set(), bc.complex.named_face_set(), "{name}");
        assert_eq!(back.a, bc.a, "{name}");
        assert_eq!(flag_f_of(&back).values, flag_f_of(&bc).values, "{name}");
    }
}

fn arb_sphere() -> impl Strategy<Value = BalancedComplex> {
    prop_oneof![
        proptest::collection::vec(1u32..4, 1..4).prop_map(|a| construct::join_spheres(&a)),
        (3usize..5, 0usize..4, any::<u64>())
            .prop_map(|(d, extra, seed)| BalancedComplex::monochromatic(construct::stacked_sphere(d, d + 1 + extra, Some(seed)).unwrap())),
        (2usize..4, 1usize..3).prop_filter_map("need 0 < l < d", |(d, l)| {
            (l < d).then(|| construct::partial_barycentric_subdivision(&construct::simplex_boundary(d), l).unwrap().1)
        }),
    ]
}

fn arb_flag(a: MultiDeg) -> impl Strategy<Value = FlagVector> {
    let n = a.box_iter().count();
    proptest::collection::vec(-50i64..50, n).prop_map(move |xs| FlagVector {
        kind: FlagKind::FlagF,
        a: a.clone(),
        values: a.box_iter().zip(xs).map(|(b, x)| (b, BigInt::from(x))).collect(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dehn_sommerville(bc in arb_sphere()) {
        let h = flag_h_of(&bc);
        for b in bc.a.box_iter() {
            let dual = bc.a.checked_sub(&b).unwrap();
            prop_assert_eq!(h.get(&b), h.get(&dual));
        }
        let coarse = h_vector(&bc.complex).0;
        let mut rev = coarse.clone();
        rev.reverse();
        prop_assert_eq!(coarse, rev);
    }

    #[test]
    fn flag_f_h_round_trip(ff in proptest::collection::vec(1u32..4, 1..4).prop_flat_map(|a| arb_flag(MultiDeg(a)))) {
        let back = flag_f_from_h(&flag_h_vector(&ff));
        prop_assert_eq!(back.values, ff.values);
    }

    #[test]
    fn f_recovered_from_h(bc in arb_sphere()) {
        let d = bc.d();
        let h = h_vector(&bc.complex).0;
        let binom = |n: usize, k: usize| -> i64 { (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64) };
        // f_{k−1} = Σ_{i ≤ k} C(d − i, k − i) h_i
        let f: Vec<i64> = (0..=d).map(|k| (0..=k).map(|i| binom(d - i, k - i) * h[i]).sum()).collect();
        prop_assert_eq!(f, f_vector(&bc.complex));
    }

    #[test]
    fn stacked_spheres_are_spheres(d in 2usize..5, extra in 0usize..4, seed: u64) {
        let s = construct::stacked_sphere(d, d + 1 + extra, Some(seed)).unwrap();
        prop_assert!(is_homology_sphere(&s, &gf2()).holds);
        let h = h_vector(&s).0;
        // a stacked sphere has h_1 = h_2 = … = h_{d−1} = n − d
        for i in 1..d {
            prop_assert_eq!(h[i], (1 + extra) as i64);
        }
    }
}
