//! Property tests for the stated invariants of each layer.

mod common;

use std::sync::Arc;

use ahcalc_core::dga::ChainAlgebra;
use ahcalc_core::exactlinalg::{
    kernel_basis, rational_rank, smith_normal_form, solve_integer, AbelianGroupInvariants, IntMatrix,
};
use ahcalc_core::homotopy::{decide_homotopy_special, rectify_kernel_element, verify_homotopy, CylinderAlgebra, Homotopy};
use ahcalc_core::morphisms::{g_trivial, section_trivial, AlgebraMorphism, DegreeAutomorphism};
use ahcalc_core::random::{random_algebra, random_cycle, random_element, random_matrix, random_split, random_unimodular, seeded, ChaCha8Rng};
use ahcalc_core::selfequiv::{
    check_membership, compute_bq, g_map, kernel_invariants, lift_pair, phi_classify, realize_label, wedge_spheres, KernelLabel,
    PairCandidate,
};
use ahcalc_core::tensoralg::{GradedGeneratorSet, TensorElement};
use common::*;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

/// A self-map homotopic to the identity whose linear part is the identity.
fn unipotent_automorphism(rng: &mut ChaCha8Rng, alg: &Arc<ChainAlgebra>) -> AlgebraMorphism {
    let gens = alg.generators();
    let cylinder = Arc::new(CylinderAlgebra::new(Arc::clone(alg)).unwrap());
    let suspension: Vec<TensorElement> = (0..gens.len())
        .map(|i| random_element(rng, gens, gens.degree_of(i) + 1, 2, 0.5).decomposable_part())
        .collect();
    let id = AlgebraMorphism::identity(Arc::clone(alg));
    Homotopy::from_suspension_values(cylinder, &id, &suspension).unwrap().start().clone()
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..=12, 0usize..=12, any::<u64>()).prop_map(|(r, c, seed)| random_matrix(&mut seeded(seed), r, c, 9))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_decomposition_is_exact(a in small_matrix()) {
        let snf = smith_normal_form(&a);
        let product = snf.u().mul(&a).unwrap().mul(&snf.v()).unwrap();
        prop_assert_eq!(&product, snf.s());
        prop_assert_eq!(snf.u().mul(&snf.u_inv()).unwrap(), IntMatrix::identity(a.rows()));
        prop_assert_eq!(snf.v().mul(&snf.v_inv()).unwrap(), IntMatrix::identity(a.cols()));
        let d = snf.s().diagonal();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert!(snf.s()[(i, j)].is_zero());
                }
            }
        }
        for w in d.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        prop_assert_eq!(snf.rank(), rational_rank(&a));
        prop_assert_eq!(snf.rank(), bareiss_rank(&a));
    }

    #[test]
    fn kernel_basis_spans_a_kernel(a in small_matrix()) {
        let k = kernel_basis(&a);
        prop_assert_eq!(k.cols(), a.cols() - bareiss_rank(&a));
        prop_assert!(a.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn integer_solving_agrees_with_search(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a = random_matrix(&mut rng, r, c, 4);
        let b: Vec<BigInt> = (0..r).map(|_| BigInt::from(rng.gen_range(-6..=6))).collect();
        match solve_integer(&a, &b).unwrap() {
            Some(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
            None => {
                // Any solution would have a small representative: search a box.
                let range: Vec<i64> = (-12..=12).collect();
                let mut found = false;
                let mut idx = vec![0usize; c];
                'outer: loop {
                    let x: Vec<BigInt> = idx.iter().map(|&i| BigInt::from(range[i])).collect();
                    if a.mul_vec(&x).unwrap() == b {
                        found = true;
                        break;
                    }
                    for slot in idx.iter_mut() {
                        *slot += 1;
                        if *slot < range.len() {
                            continue 'outer;
                        }
                        *slot = 0;
                    }
                    break;
                }
                prop_assert!(!found);
            }
        }
    }

    #[test]
    fn word_basis_counts_follow_the_recursion(degrees in prop::collection::vec(2i32..=6, 0..=4)) {
        let pairs: Vec<(String, i32)> = degrees.iter().enumerate().map(|(i, &d)| (format!("g{i}"), d)).collect();
        let refs: Vec<(&str, i32)> = pairs.iter().map(|(n, d)| (n.as_str(), *d)).collect();
        let gens = GradedGeneratorSet::from_pairs(&refs).unwrap();
        let mut counts = [0usize; 21];
        counts[0] = 1;
        for m in 1..=20usize {
            counts[m] = degrees.iter().filter(|&&d| d as usize <= m).map(|&d| counts[m - d as usize]).sum();
        }
        for (m, &c) in counts.iter().enumerate() {
            prop_assert_eq!(gens.word_basis(m as i32).len(), c);
        }
    }

    #[test]
    fn multiplication_is_associative_and_unital(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let gens = GradedGeneratorSet::from_pairs(&[("a", 2), ("b", 3), ("c", 3)]).unwrap();
        let dx = rng.gen_range(2..=6);
        let x = random_element(&mut rng, &gens, dx, 3, 0.7);
        let dy = rng.gen_range(2..=6);
        let y = random_element(&mut rng, &gens, dy, 3, 0.7);
        let dz = rng.gen_range(2..=6);
        let z = random_element(&mut rng, &gens, dz, 3, 0.7);
        prop_assert_eq!(x.multiply(&y).multiply(&z), x.multiply(&y.multiply(&z)));
        prop_assert_eq!(TensorElement::unit().multiply(&x), x.clone());
        prop_assert_eq!(x.multiply(&TensorElement::unit()), x.clone());
        let coords = x.coordinates(&gens).unwrap();
        prop_assert_eq!(TensorElement::from_coordinates(&gens, x.degree(), &coords).unwrap(), x.clone());
        prop_assert_eq!(&(&x - &x.linear_part()), &x.decomposable_part());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differential_matrices_compose_to_zero(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = random_algebra(&mut rng, 4, 6);
        for m in 1..=12 {
            let p = a.differential_matrix(m - 1).mul(&a.differential_matrix(m)).unwrap();
            prop_assert!(p.is_zero(), "degree {}", m);
        }
    }

    #[test]
    fn homology_ranks_match_rational_dimensions(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = random_algebra(&mut rng, 4, 6);
        for m in 0..=10 {
            let dm = a.differential_matrix(m);
            let dm1 = a.differential_matrix(m + 1);
            let dim = a.generators().word_basis(m).len();
            let kernel = dim - rational_rank(&dm);
            let h = a.homology(m);
            prop_assert_eq!(h.invariants().free_rank, kernel - rational_rank(&dm1));
            for (i, rep) in h.representatives().iter().enumerate() {
                prop_assert!(a.differential(rep).is_zero());
                let mut unit = vec![BigInt::zero(); h.rank()];
                unit[i] = BigInt::from(1);
                let class = h.class_of(&a, rep).unwrap();
                prop_assert_eq!(class.coordinates().to_vec(), h.reduce(&unit));
            }
        }
    }

    #[test]
    fn trivial_differential_homology_is_free(degrees in prop::collection::vec(2i32..=5, 1..=3)) {
        let pairs: Vec<(String, i32)> = degrees.iter().enumerate().map(|(i, &d)| (format!("g{i}"), d)).collect();
        let refs: Vec<(&str, i32)> = pairs.iter().map(|(n, d)| (n.as_str(), *d)).collect();
        let a = trivial_algebra(&refs);
        for m in 0..=12 {
            let h = a.homology(m);
            prop_assert_eq!(h.invariants(), &AbelianGroupInvariants::free(a.generators().word_basis(m).len()));
        }
    }

    #[test]
    fn automorphisms_form_a_group(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = Arc::new(random_algebra(&mut rng, 4, 6));
        let f = unipotent_automorphism(&mut rng, &a);
        let g = unipotent_automorphism(&mut rng, &a);
        let h = unipotent_automorphism(&mut rng, &a);
        let id = AlgebraMorphism::identity(Arc::clone(&a));
        prop_assert_eq!(f.compose(&g).unwrap().compose(&h).unwrap(), f.compose(&g.compose(&h).unwrap()).unwrap());
        prop_assert_eq!(id.compose(&f).unwrap(), f.clone());
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
        let inv = f.inverse().unwrap();
        prop_assert!(inv.compose(&f).unwrap().is_identity());
        prop_assert!(f.compose(&inv).unwrap().is_identity());
        prop_assert!(f.is_homotopy_equivalence());
    }

    #[test]
    fn g_is_multiplicative_with_a_section(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=3);
        let q = rng.gen_range(n + 1..=7);
        let sa = random_trivial_split(&mut rng, n, q);
        let k = sa.top_generators().len();
        let random_auto = |rng: &mut ChaCha8Rng| {
            let xi = DegreeAutomorphism::new(q, random_unimodular(rng, k, 4)).unwrap();
            let gamma = unipotent_automorphism(rng, sa.base());
            let base = section_trivial(&sa, &xi, &gamma).unwrap();
            let z: Vec<TensorElement> = (0..k).map(|_| random_element(rng, sa.base().generators(), q, 2, 0.5)).collect();
            (xi, gamma, perturbed_identity(&sa, &z).compose(&base).unwrap())
        };
        let (xi1, gamma1, a1) = random_auto(&mut rng);
        let (xi2, gamma2, a2) = random_auto(&mut rng);
        let (x1, g1) = g_trivial(&sa, &a1).unwrap();
        prop_assert_eq!(&x1, &xi1);
        prop_assert_eq!(&g1, &gamma1);
        let (x12, g12) = g_trivial(&sa, &a1.compose(&a2).unwrap()).unwrap();
        prop_assert_eq!(x12, xi1.compose(&xi2));
        prop_assert_eq!(g12, gamma1.compose(&gamma2).unwrap());
    }

    #[test]
    fn special_homotopies_verify(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=4);
        let q = rng.gen_range(n + 1..=7);
        let sa = random_split(&mut rng, 3, n, q, 2);
        let base = sa.base();
        let k = sa.top_generators().len();
        let z1: Vec<TensorElement> = (0..k).map(|_| random_cycle(&mut rng, base, q, 2)).collect();
        // z2 = z1 + boundary, so the pair is homotopic.
        let z2: Vec<TensorElement> = z1
            .iter()
            .map(|z| z + &base.differential(&random_element(&mut rng, base.generators(), q + 1, 2, 0.5)))
            .collect();
        let (a1, a2) = (perturbed_identity(&sa, &z1), perturbed_identity(&sa, &z2));
        let h = decide_homotopy_special(&sa, &a1, &a2).unwrap();
        prop_assert!(h.is_some());
        let h = h.unwrap();
        prop_assert!(verify_homotopy(h.cylinder(), h.map(), &a1, &a2).is_ok());
    }

    #[test]
    fn naturality_and_section(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let fx = member_fixture(&mut rng);
        let alpha_n = perturb_by_homotopy(&mut rng, fx.sa.base(), &fx.sigma);
        let cand = PairCandidate::new(member_xi(&mut rng, &fx), alpha_n).unwrap();
        let alpha = lift_pair(&fx.sa, &cand).unwrap();
        // Compose with a kernel element to leave the image of the section.
        let h = fx.sa.base().homology(fx.sa.q());
        let classes = (0..fx.sa.top_generators().len())
            .map(|_| h.class(&(0..h.rank()).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect::<Vec<_>>()))
            .collect();
        let beta = realize_label(&fx.sa, &KernelLabel { classes }).unwrap();
        let gamma = beta.compose(&alpha).unwrap();
        let pair = g_map(&fx.sa, &gamma).unwrap();
        prop_assert!(check_membership(&fx.sa, &pair).unwrap());
        prop_assert_eq!(g_map(&fx.sa, &beta).unwrap(), PairCandidate::new(
            DegreeAutomorphism::identity(fx.sa.q(), fx.sa.top_generators().len()),
            AlgebraMorphism::identity(Arc::clone(fx.sa.base())),
        ).unwrap());
        prop_assert_eq!(g_map(&fx.sa, &alpha).unwrap(), cand);
    }

    #[test]
    fn kernel_classification_is_exact(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=4);
        let q = rng.gen_range(n + 1..=7);
        let sa = random_split(&mut rng, 3, n, q, 2);
        let (alpha, witness, _) = kernel_shaped(&mut rng, &sa);
        let beta = rectify_kernel_element(&sa, &alpha, &witness).unwrap();
        let label = phi_classify(&sa, &beta).unwrap();
        let realized = realize_label(&sa, &label).unwrap();
        prop_assert_eq!(phi_classify(&sa, &realized).unwrap(), label.clone());
        prop_assert!(decide_homotopy_special(&sa, &realized, &beta).unwrap().is_some());
        let id = AlgebraMorphism::identity(Arc::clone(sa.full()));
        let to_identity = decide_homotopy_special(&sa, &beta, &id).unwrap();
        prop_assert_eq!(label.is_zero(), to_identity.is_some());
        // Additivity.
        let (alpha2, witness2, _) = kernel_shaped(&mut rng, &sa);
        let beta2 = rectify_kernel_element(&sa, &alpha2, &witness2).unwrap();
        let h = sa.base().homology(q);
        let sum = phi_classify(&sa, &beta.compose(&beta2).unwrap()).unwrap();
        prop_assert_eq!(sum, label.add(&phi_classify(&sa, &beta2).unwrap(), &h));
    }

    #[test]
    fn kernel_invariants_two_ways(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(2..=4);
        let q = rng.gen_range(n + 1..=7);
        let sa = random_split(&mut rng, 3, n, q, 3);
        let hq = sa.base().homology(q).invariants().clone();
        let direct = (0..sa.top_generators().len()).fold(AbelianGroupInvariants::trivial(), |acc, _| acc.direct_sum(&hq));
        prop_assert_eq!(kernel_invariants(&sa), direct);
    }
}

#[test]
fn wedge_pair_group_has_order_four() {
    for (n, q) in [(2, 5), (2, 6), (3, 5)] {
        let sa = wedge_spheres(n, q).unwrap();
        let base = Arc::clone(sa.base());
        let mut members = 0;
        for s in [1i64, -1] {
            for t in [1i64, -1] {
                let xi = DegreeAutomorphism::new(q, IntMatrix::from_rows(&[[s]])).unwrap();
                let an = sign_map(&base, &[t]).unwrap();
                members += usize::from(check_membership(&sa, &PairCandidate::new(xi, an).unwrap()).unwrap());
            }
        }
        assert_eq!(members, 4);
        assert!(compute_bq(&sa).unwrap().is_nil());
    }
}
