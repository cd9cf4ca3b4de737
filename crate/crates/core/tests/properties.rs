//! Property-based checks of the algebraic laws the library relies on.

use dulac_core::hypersurface::{solve_invariant_surfaces, verify_invariance, SolutionStatus};
use dulac_core::normalform::{centralizer_member, normalize, verify_conjugacy};
use dulac_core::polyring::{rat, GaussRat, JetMap, MonoKey, RealPoly};
use dulac_core::spectrum::Spectrum;
use dulac_core::{demo, Rat};
use proptest::prelude::*;

fn arb_gaussrat() -> impl Strategy<Value = GaussRat> {
    ((-6i64..7, 1i64..4), (-6i64..7, 1i64..4))
        .prop_map(|((rn, rd), (in_, id))| GaussRat::new(rat(rn, rd), rat(in_, id)))
}

fn arb_key(nvars: usize) -> impl Strategy<Value = MonoKey> {
    (
        proptest::collection::vec(0u32..3, nvars..=nvars),
        proptest::collection::vec(0u32..3, nvars..=nvars),
    )
        .prop_map(|(hol, antihol)| MonoKey::new(hol, antihol))
}

fn arb_poly(nvars: usize) -> impl Strategy<Value = RealPoly> {
    proptest::collection::vec((arb_key(nvars), arb_gaussrat()), 0..5).prop_map(move |terms| {
        let mut p = RealPoly::zero(nvars);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    })
}

/// A 1-D contraction jet with rational eigenvalue in (0, 1).
fn arb_jet1(order: u32) -> impl Strategy<Value = (JetMap, Spectrum)> {
    (
        (1i64..5, 5i64..9),
        proptest::collection::vec((-9i64..10, 1i64..4, -9i64..10, 1i64..4), order as usize - 1),
    )
        .prop_map(move |((num, den), coeffs)| {
            let lambda = GaussRat::from_frac(num, den);
            let mut tail = RealPoly::zero(1);
            for (d, (rn, rd, in_, id)) in coeffs.into_iter().enumerate() {
                tail.add_term(
                    MonoKey::new(vec![d as u32 + 2], vec![0]),
                    GaussRat::new(rat(rn, rd), rat(in_, id)),
                );
            }
            let f = JetMap::new(vec![lambda.clone()], vec![tail], order).unwrap();
            let s = Spectrum::exact(vec![lambda], vec![1]).unwrap();
            (f, s)
        })
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative(
        a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)
    ) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_distributes(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn conjugation_is_an_involutive_ring_map(a in arb_poly(2), b in arb_poly(2)) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn real_parts_stay_real_under_holomorphic_substitution(
        q in arb_poly(2),
        im1 in arb_poly(2),
        im2 in arb_poly(2),
    ) {
        let p = &q + &q.conj();
        prop_assert!(p.is_real_valued());
        // strip antiholomorphic content from the images
        let images: Vec<RealPoly> = [im1, im2]
            .iter()
            .map(|f| {
                let mut h = RealPoly::zero(2);
                for (k, c) in f.iter() {
                    if k.is_holomorphic() {
                        h.add_term(k.clone(), c.clone());
                    }
                }
                h
            })
            .collect();
        let pushed = p.substitute(&images, Some(6));
        prop_assert!(pushed.is_real_valued());
    }

    #[test]
    fn serialization_is_deterministic(a in arb_poly(2), b in arb_poly(2)) {
        let left = serde_json::to_string(&(&a + &b)).unwrap();
        let right = serde_json::to_string(&(&b + &a)).unwrap();
        prop_assert_eq!(left.clone(), right);
        prop_assert_eq!(left.clone(), serde_json::to_string(&(&a + &b)).unwrap());
    }

    #[test]
    fn composition_is_associative_modulo_truncation(
        (f, _) in arb_jet1(3), (g, _) in arb_jet1(3), (h, _) in arb_jet1(3)
    ) {
        let order = 3;
        let left = f.compose(&g.compose(&h, order).unwrap(), order).unwrap();
        let right = f.compose(&g, order).unwrap().compose(&h, order).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn one_dimensional_normal_forms_are_linear((f, s) in arb_jet1(4)) {
        let r = normalize(&f, &s, 4).unwrap();
        prop_assert!(r.normal_form.nonlinear_part(0).is_zero());
        let residual = verify_conjugacy(&f, &r.conjugator, &r.normal_form, 4).unwrap();
        prop_assert!(residual.iter().all(RealPoly::is_zero));
        // idempotence
        let again = normalize(&r.normal_form, &s, 4).unwrap();
        prop_assert_eq!(again.normal_form, r.normal_form);
        prop_assert!(again.conjugator.is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn extended_resonances_match_brute_force_in_power_mode(
        exps in proptest::collection::btree_set(1u32..7, 1..4)
    ) {
        let exponents: Vec<u32> = exps.into_iter().collect();
        let m = exponents.len();
        let s = Spectrum::power_of_base(rat(1, 2), exponents.clone(), vec![1; m]).unwrap();
        for nu in 0..m {
            let listed = s.extended_resonances(nu).unwrap();
            // brute force over all pairs up to the degree bound
            let bound = s.degree_bound();
            let mut expected = Vec::new();
            let mut slots = vec![0u32; 2 * m];
            loop {
                let total: u32 = slots.iter().sum();
                if total >= 2 && total <= bound {
                    let weighted: u64 = slots
                        .iter()
                        .enumerate()
                        .map(|(p, &e)| u64::from(e) * u64::from(exponents[p % m]))
                        .sum();
                    if weighted == u64::from(exponents[nu]) {
                        expected.push((slots[..m].to_vec(), slots[m..].to_vec()));
                    }
                }
                // odometer over {0..bound}^{2m}
                let mut pos = 2 * m;
                while pos > 0 {
                    if slots[pos - 1] < bound {
                        slots[pos - 1] += 1;
                        break;
                    }
                    slots[pos - 1] = 0;
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
            }
            expected.sort();
            let got: Vec<(Vec<u32>, Vec<u32>)> =
                listed.into_iter().map(|p| (p.i, p.iprime)).collect();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn extended_resonances_are_conjugation_symmetric(
        exps in proptest::collection::btree_set(1u32..7, 1..4)
    ) {
        let exponents: Vec<u32> = exps.into_iter().collect();
        let m = exponents.len();
        let s = Spectrum::power_of_base(rat(1, 3), exponents, vec![1; m]).unwrap();
        for nu in 0..m {
            let listed = s.extended_resonances(nu).unwrap();
            for p in &listed {
                let swapped = (p.iprime.clone(), p.i.clone());
                prop_assert!(listed.iter().any(|q| (q.i.clone(), q.iprime.clone()) == swapped));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn two_dimensional_normal_forms_are_resonant_only(
        coeffs in proptest::collection::vec((arb_gaussrat(), 0usize..2, 2u32..4), 1..4)
    ) {
        let s = Spectrum::power_of_base(rat(1, 2), vec![1, 2], vec![1, 1]).unwrap();
        let mut tails = vec![RealPoly::zero(2), RealPoly::zero(2)];
        for (c, comp, deg) in coeffs {
            tails[comp].add_term(MonoKey::new(vec![deg, 0], vec![0, 0]), c);
        }
        let f = JetMap::new(s.per_var_linear(), tails, 4).unwrap();
        let r = normalize(&f, &s, 4).unwrap();
        prop_assert!(centralizer_member(&r.normal_form, &s).unwrap());
        let residual = verify_conjugacy(&f, &r.conjugator, &r.normal_form, 4).unwrap();
        prop_assert!(residual.iter().all(RealPoly::is_zero));
    }

    #[test]
    fn constrained_solver_reproduces_the_coupling_relations(
        dn in 1i64..7, dd in 1i64..5, bn in -6i64..7, bd in 1i64..5, cn in -6i64..7, cd in 1i64..5
    ) {
        // nonzero D couples the quartic coefficients: g = 2B/D, d = 4(C - g D^2)/D
        let s = demo::spectrum();
        let dval = GaussRat::from_frac(dn, dd);
        let bval = GaussRat::from_frac(bn, bd);
        let cval = GaussRat::from_frac(cn, cd);
        let mut second = RealPoly::zero(3);
        second.add_term(MonoKey::new(vec![2, 0, 0], vec![0, 0, 0]), dval.clone());
        let mut third = RealPoly::zero(3);
        third.add_term(MonoKey::new(vec![2, 1, 0], vec![0, 0, 0]), bval.clone());
        third.add_term(MonoKey::new(vec![4, 0, 0], vec![0, 0, 0]), cval.clone());
        let f = JetMap::new(
            s.per_var_linear(),
            vec![RealPoly::zero(3), second, third],
            4,
        )
        .unwrap();
        let space = solve_invariant_surfaces(&f, &s, 2).unwrap();
        prop_assert_eq!(space.status, SolutionStatus::Solvable);
        prop_assert_eq!(space.real_dimension, 6);
        let base = space.particular.as_ref().unwrap();
        let two = GaussRat::from_int(2);
        let four = GaussRat::from_int(4);
        let dinv = dval.inv();
        let g = &(&two * &bval) * &dinv;
        let dcoef = &(&four * &(&cval - &(&g * &(&dval * &dval)))) * &dinv;
        prop_assert_eq!(
            base.rho().coeff(&MonoKey::new(vec![0, 2, 0], vec![0, 0, 0])),
            g
        );
        prop_assert_eq!(
            base.rho().coeff(&MonoKey::new(vec![2, 1, 0], vec![0, 0, 0])),
            dcoef
        );
        // random member of the affine family still verifies exactly
        let coords: Vec<Rat> = (0..6).map(|k| rat(k as i64 - 2, 3)).collect();
        let member = space.instance(&coords).unwrap();
        prop_assert!(member.rho().is_real_valued());
        let residual = verify_invariance(&f, &s, &member, None).unwrap();
        prop_assert!(residual.is_zero());
    }
}
