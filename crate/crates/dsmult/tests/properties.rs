//! Structural invariants: exhaustive closure checks where the domain is
//! finite, generated checks where it is not.

use proptest::prelude::*;

use dsmult::catalog::Catalog;
use dsmult::cbar::{build_cbar_table, cbar};
use dsmult::characters::{averaged_character_phim, HCParameter};
use dsmult::cyclotomic::Cyc;
use dsmult::exact::{mat_vec, q, qi, vec_eq};
use dsmult::packets::{random_packet, verify_adjoint_relations, TestRng};
use dsmult::rootsys::{
    build_root_datum, contains_minus_one, positive_systems, weyl_discriminant, weyl_group,
    TorusPoint,
};

const TYPES: [&str; 5] = ["A1", "A1xA1", "A2", "B2", "G2"];

#[test]
fn weyl_action_preserves_the_root_set() {
    for label in TYPES {
        let d = build_root_datum(label).unwrap();
        for w in weyl_group(&d) {
            for beta in &d.roots {
                let img = mat_vec(&w.matrix, beta);
                assert!(d.root_index(&img).is_some(), "{label}");
            }
        }
    }
}

#[test]
fn sign_is_a_homomorphism() {
    for label in TYPES {
        let d = build_root_datum(label).unwrap();
        let group = weyl_group(&d);
        for a in &group {
            for b in &group {
                let prod = dsmult::exact::mat_mul(&a.matrix, &b.matrix);
                let elem = group
                    .iter()
                    .find(|e| dsmult::exact::mat_eq(&e.matrix, &prod))
                    .expect("closed under composition");
                assert_eq!(elem.sign, a.sign * b.sign, "{label}");
            }
        }
    }
}

#[test]
fn positive_systems_form_one_simply_transitive_orbit() {
    for label in TYPES {
        let d = build_root_datum(label).unwrap();
        let group = weyl_group(&d);
        let systems = positive_systems(&d);
        for a in &systems {
            for b in &systems {
                let mut movers = 0usize;
                for w in &group {
                    let image: Vec<usize> = {
                        let mut v: Vec<usize> = a
                            .positive
                            .iter()
                            .map(|&i| d.root_index(&mat_vec(&w.matrix, &d.roots[i])).unwrap())
                            .collect();
                        v.sort_unstable();
                        v
                    };
                    if image == b.positive {
                        movers += 1;
                    }
                }
                assert_eq!(movers, 1, "{label}: exactly one element moves each pair");
            }
        }
    }
}

#[test]
fn discriminant_modulus_is_weyl_invariant() {
    // fifty random regular points per supported type
    for label in TYPES {
        let d = build_root_datum(label).unwrap();
        let group = weyl_group(&d);
        let systems = positive_systems(&d);
        let std = &systems[0];
        let mut rng = TestRng::new(0xD15C);
        let mut tested = 0usize;
        while tested < 50 {
            let coords: Vec<_> = (0..d.rank)
                .map(|_| q(1 + rng.below(17) as i64, 2 + rng.below(11) as i64))
                .collect();
            let h = TorusPoint::exact("1", coords);
            if !h.is_regular(&d) {
                continue;
            }
            tested += 1;
            let base = weyl_discriminant(&d, std, &h).unwrap().numeric.norm();
            for w in group.iter().step_by(2) {
                let wh = TorusPoint::exact("1", mat_vec(&w.matrix, &h.pi_coords));
                let moved = weyl_discriminant(&d, std, &wh).unwrap().numeric.norm();
                assert!((base - moved).abs() < 1e-9 * (1.0 + base), "{label}");
            }
        }
    }
}

#[test]
fn pair_table_is_weyl_invariant_entrywise() {
    for label in ["A1", "A1xA1", "B2", "G2"] {
        let d = build_root_datum(label).unwrap();
        assert!(contains_minus_one(&d));
        let table = build_cbar_table(&d).unwrap();
        let group = weyl_group(&d);
        let systems = positive_systems(&d);
        let mut rng = TestRng::new(99);
        for _ in 0..40 {
            let w = &group[rng.below(group.len() as u64) as usize];
            let qs = &systems[rng.below(systems.len() as u64) as usize];
            let rs = &systems[rng.below(systems.len() as u64) as usize];
            let map = |set: &[usize]| -> Vec<usize> {
                let mut v: Vec<usize> = set
                    .iter()
                    .map(|&i| d.root_index(&mat_vec(&w.matrix, &d.roots[i])).unwrap())
                    .collect();
                v.sort_unstable();
                v
            };
            assert_eq!(
                cbar(&table, &qs.positive, &rs.positive).unwrap(),
                cbar(&table, &map(&qs.positive), &map(&rs.positive)).unwrap(),
                "{label}"
            );
        }
    }
}

#[test]
fn averaged_character_is_weyl_invariant_on_the_split_torus() {
    // the nontrivial torus Weyl element inverts the coordinate
    let cat = Catalog::shipped().unwrap();
    let group = cat.group("SL2").unwrap();
    let table = build_cbar_table(&group.datum).unwrap();
    let param = HCParameter::from_fundamental(group, &[qi(11)], "triv").unwrap();
    let mut rng = TestRng::new(5);
    for _ in 0..50 {
        let t = 0.05 + (rng.below(1000) as f64) / 400.0;
        let plus = TorusPoint::exact("1", vec![qi(0)]).with_real(vec![t]);
        let minus = TorusPoint::exact("1", vec![qi(0)]).with_real(vec![-t]);
        let a = averaged_character_phim(&param, "T", &plus, Some(&table)).unwrap();
        let b = averaged_character_phim(&param, "T", &minus, Some(&table)).unwrap();
        assert!((a.numeric - b.numeric).norm() < 1e-9);
    }
}

#[test]
fn compact_character_is_weyl_invariant() {
    let cat = Catalog::shipped().unwrap();
    let group = cat.group("B2c").unwrap();
    let d = &group.datum;
    let wg = weyl_group(d);
    let param = HCParameter::from_fundamental(group, &[qi(2), qi(1)], "triv").unwrap();
    let mut rng = TestRng::new(31);
    let mut tested = 0usize;
    while tested < 25 {
        let coords: Vec<_> = (0..2)
            .map(|_| q(1 + rng.below(9) as i64, 2 + rng.below(9) as i64))
            .collect();
        let gamma = TorusPoint::exact("1", coords);
        if !gamma.is_regular(d) {
            continue;
        }
        tested += 1;
        let base = dsmult::characters::stable_ds_character(&param, &gamma).unwrap();
        for w in wg.iter().step_by(3) {
            let moved = TorusPoint::exact("1", mat_vec(&w.matrix, &gamma.pi_coords));
            let v = dsmult::characters::stable_ds_character(&param, &moved).unwrap();
            assert!(v.exact.as_ref().unwrap().eq(base.exact.as_ref().unwrap()));
        }
    }
}

proptest! {
    #[test]
    fn roots_of_unity_multiply_by_exponent_addition(
        a in 1i64..40, b in 1i64..40, c in 1i64..12, d in 1i64..12
    ) {
        let x = q(a, c);
        let y = q(b, d);
        let lhs = Cyc::root_of_unity(&x).mul(&Cyc::root_of_unity(&y));
        let rhs = Cyc::root_of_unity(&(x + y));
        prop_assert!(lhs.eq(&rhs));
    }

    #[test]
    fn conjugation_is_multiplicative(a in 1i64..30, b in 1i64..30, n in 2i64..16, m in 2i64..16) {
        let x = Cyc::root_of_unity(&q(a, n)).add(&Cyc::from_int(a % 5));
        let y = Cyc::root_of_unity(&q(b, m)).add(&Cyc::from_int(b % 3));
        prop_assert!(x.mul(&y).conj().eq(&x.conj().mul(&y.conj())));
    }

    #[test]
    fn cyclotomic_inverse_roundtrip(a in 1i64..20, n in 2i64..14) {
        let x = Cyc::root_of_unity(&q(a, n)).add(&Cyc::from_int(2));
        let inv = x.inv().unwrap();
        prop_assert!(x.mul(&inv).eq(&Cyc::one()));
    }

    #[test]
    fn synthetic_packets_always_satisfy_the_relations(seed in 0u64..5000) {
        let mut rng = TestRng::new(seed);
        let p = random_packet(&mut rng);
        prop_assert!(verify_adjoint_relations(&p).is_ok());
    }

    #[test]
    fn weight_vectors_pair_integrally_with_simple_coroots(
        a in -6i64..7, b in -6i64..7
    ) {
        for label in ["A2", "B2", "G2"] {
            let d = build_root_datum(label).unwrap();
            let lam = dsmult::exact::vec_add(
                &dsmult::exact::vec_scale(&qi(a), &d.weight_lattice_basis[0]),
                &dsmult::exact::vec_scale(&qi(b), &d.weight_lattice_basis[1]),
            );
            for &si in &d.simple_roots {
                let p = d.pairing(&lam, &d.coroots[si]);
                prop_assert!(p.denom() == &num_bigint::BigInt::from(1));
            }
        }
    }
}

#[test]
fn opposite_roots_split_across_every_positive_system() {
    for label in TYPES {
        let d = build_root_datum(label).unwrap();
        for ps in positive_systems(&d) {
            for &i in &ps.positive {
                let neg = dsmult::exact::vec_neg(&d.roots[i]);
                let j = d.root_index(&neg).unwrap();
                assert!(!ps.positive.contains(&j), "{label}");
            }
            assert_eq!(ps.positive.len() * 2, d.roots.len(), "{label}");
        }
    }
}

#[test]
fn reduced_words_compose_to_their_elements() {
    for label in TYPES {
        let d = build_root_datum(label).unwrap();
        let group = weyl_group(&d);
        for w in &group {
            let mut m = dsmult::exact::mat_id(d.rank);
            for &g in &w.word {
                m = dsmult::exact::mat_mul(&m, &d.reflection_matrix(d.simple_roots[g]));
            }
            assert!(dsmult::exact::mat_eq(&m, &w.matrix), "{label}");
        }
        // identity first, unique empty word
        assert!(group[0].word.is_empty());
        assert!(group[1..].iter().all(|w| !w.word.is_empty()));
    }
}

#[test]
fn fundamental_weights_are_dual_to_simple_coroots() {
    for label in TYPES {
        let d = build_root_datum(label).unwrap();
        for (i, w) in d.weight_lattice_basis.iter().enumerate() {
            for (j, &sj) in d.simple_roots.iter().enumerate() {
                let p = d.pairing(w, &d.coroots[sj]);
                let want = if i == j { qi(1) } else { qi(0) };
                assert_eq!(p, want, "{label}");
            }
        }
        // rho is the sum of the fundamental weights
        let mut sum = vec![qi(0); d.rank];
        for w in &d.weight_lattice_basis {
            sum = dsmult::exact::vec_add(&sum, w);
        }
        assert!(vec_eq(&sum, &d.rho()), "{label}");
    }
}
