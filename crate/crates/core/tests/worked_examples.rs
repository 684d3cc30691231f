//! Small hand-checked computations across the library.

mod common;

use std::sync::Arc;

use ahcalc_core::dga::{ChainAlgebra, DgaError};
use ahcalc_core::exactlinalg::{
    cokernel_invariants, smith_normal_form, solve_integer, subquotient_invariants, AbelianGroupInvariants, IntMatrix,
};
use ahcalc_core::homotopy::{
    decide_homotopy_special, rectify_kernel_element, verify_homotopy, CylinderAlgebra, Homotopy, HomotopyFailure,
};
use ahcalc_core::morphisms::{g_trivial, psi_label, section_trivial, AlgebraMorphism, DegreeAutomorphism, MorphismError};
use ahcalc_core::selfequiv::{
    attach_cells, pi_membership, sequence_report, suspension_model, wedge_spheres, SelfEquivError,
};
use ahcalc_core::tensoralg::{GradedGeneratorSet, TensorElement};
use common::*;
use num_bigint::BigInt;

fn xy() -> Arc<ChainAlgebra> {
    Arc::new(ChainAlgebra::from_spec(&[("x", 2), ("y", 3)], &[("y", "x")]).unwrap())
}

fn v(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| big(x)).collect()
}

#[test]
fn smith_and_cokernels() {
    let empty = IntMatrix::zeros(0, 0);
    assert_eq!(smith_normal_form(&empty).rank(), 0);
    assert_eq!(smith_normal_form(&IntMatrix::identity(3)).s(), &IntMatrix::identity(3));
    let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
    assert_eq!(smith_normal_form(&a).s().diagonal(), v(&[2, 4]));
    // Determinant divisors: d1 = 2, d2 = |det| = 8.
    assert_eq!(determinant_divisor(&a, 1), big(2));
    assert_eq!(determinant_divisor(&a, 2), big(8));
    assert_eq!(cokernel_invariants(&a).to_string(), "Z/2 + Z/4");
    assert_eq!(cokernel_invariants(&IntMatrix::zeros(2, 2)), AbelianGroupInvariants::free(2));
    assert_eq!(cokernel_invariants(&IntMatrix::from_rows(&[[2]])).to_string(), "Z/2");
}

#[test]
fn integer_systems() {
    let b = v(&[5, -7]);
    assert_eq!(solve_integer(&IntMatrix::identity(2), &b).unwrap(), Some(b.clone()));
    assert_eq!(solve_integer(&IntMatrix::from_rows(&[[2]]), &v(&[3])).unwrap(), None);
    let a = IntMatrix::from_rows(&[[2, 3]]);
    let x = solve_integer(&a, &v(&[1])).unwrap().unwrap();
    assert_eq!(a.mul_vec(&x).unwrap(), v(&[1]));
    assert!(solve_integer(&a, &v(&[1, 2])).is_err());
}

#[test]
fn subquotients() {
    let free = subquotient_invariants(&IntMatrix::identity(2), &IntMatrix::zeros(2, 0)).unwrap();
    assert_eq!(free.invariants(), &AbelianGroupInvariants::free(2));
    let z3 = subquotient_invariants(&IntMatrix::identity(1), &IntMatrix::from_rows(&[[3]])).unwrap();
    assert_eq!(z3.invariants().to_string(), "Z/3");
    let diag = subquotient_invariants(&IntMatrix::from_rows(&[[1], [1]]), &IntMatrix::zeros(2, 0)).unwrap();
    assert_eq!(diag.invariants(), &AbelianGroupInvariants::free(1));
    assert_eq!(diag.representatives()[0], v(&[1, 1]));
    // A boundary outside the cycles is reported.
    assert!(subquotient_invariants(&IntMatrix::from_rows(&[[1], [1]]), &IntMatrix::from_rows(&[[1], [0]])).is_err());
}

#[test]
fn derivation_signs() {
    let a = xy();
    let d = |t: &str| a.render(&a.differential(&a.parse(t, None).unwrap()));
    assert_eq!(d("y*y"), "x*y - y*x");
    assert_eq!(d("x*y"), "x*x");
    assert_eq!(d("y*x"), "x*x");
    assert!(a.differential(&TensorElement::unit()).is_zero());
    assert_eq!(a.differential_matrix(5), IntMatrix::from_rows(&[[1, 1]]));
    assert_eq!(a.linear_part_matrix(3), IntMatrix::from_rows(&[[1]]));
    assert!(a.homology(5).invariants().is_trivial());
    let z = a.parse("x*y - y*x", None).unwrap();
    assert!(a.homology(5).class_of(&a, &z).unwrap().is_zero());
}

#[test]
fn square_zero_violations() {
    let bad = ChainAlgebra::from_spec(&[("x", 3), ("y", 4), ("z", 5)], &[("y", "x"), ("z", "y")]);
    match bad {
        Err(DgaError::NotSquareZero(v)) => {
            assert_eq!(v.generator, "z");
            assert_eq!(v.residue, "x");
        }
        other => panic!("expected a violation, got {other:?}"),
    }
    assert!(ChainAlgebra::from_spec(&[("x", 2), ("y", 3)], &[("y", "x")]).is_ok());
}

#[test]
fn linear_parts_and_indecomposables() {
    let a = ChainAlgebra::from_spec(&[("a", 2), ("b", 2), ("v", 4), ("u", 5)], &[("u", "v + a*b")]);
    // ∂u = v + a⊗b is not square-zero unless ∂v cancels ∂(a⊗b) = 0; it does.
    let a = a.unwrap();
    assert_eq!(a.linear_part_matrix(5), IntMatrix::from_rows(&[[1]]));
    let two = ChainAlgebra::from_spec(&[("x", 2), ("y", 3)], &[("y", "2*x")]).unwrap();
    assert_eq!(two.indecomposables_homology(2).to_string(), "Z/2");
    assert!(two.indecomposables_homology(3).is_trivial());
    assert!(xy().indecomposables_homology(2).is_trivial());
    assert!(xy().indecomposables_homology(3).is_trivial());
    assert_eq!(two.homology(2).invariants().to_string(), "Z/2");
}

#[test]
fn sphere_homology_pattern() {
    let a = trivial_algebra(&[("v", 3)]);
    let ranks: Vec<usize> = (0..=9).map(|m| a.homology(m).invariants().free_rank).collect();
    assert_eq!(ranks, vec![1, 0, 0, 1, 0, 0, 1, 0, 0, 1]);
    let empty = ChainAlgebra::with_trivial_differential(GradedGeneratorSet::empty());
    assert_eq!(empty.homology(0).invariants().to_string(), "Z");
    assert!(empty.homology(1).invariants().is_trivial());
}

#[test]
fn chain_conditions_and_composition() {
    let a = xy();
    let neg = AlgebraMorphism::from_spec(a.clone(), a.clone(), &[("x", "-x"), ("y", "-y")]).unwrap();
    assert!(neg.compose(&neg).unwrap().is_identity());
    match AlgebraMorphism::from_spec(a.clone(), a.clone(), &[("y", "-y")]) {
        Err(MorphismError::ChainCondition { generator, .. }) => assert_eq!(generator, "y"),
        other => panic!("expected a chain-condition failure, got {other:?}"),
    }
}

#[test]
fn induced_maps() {
    let a = Arc::new(trivial_algebra(&[("a", 2), ("b", 2), ("v", 4)]));
    let f = AlgebraMorphism::from_spec(a.clone(), a.clone(), &[("v", "-v + a*b")]).unwrap();
    assert_eq!(f.induced_indecomposable().matrix(4), Some(&IntMatrix::from_rows(&[[-1]])));
    let g = AlgebraMorphism::from_spec(a.clone(), a.clone(), &[("v", "v + a*b")]).unwrap();
    assert!(g.induces_identity_on_indecomposables());
    assert!(g.is_homotopy_equivalence());

    let s = Arc::new(trivial_algebra(&[("v", 2)]));
    let neg = AlgebraMorphism::from_spec(s.clone(), s.clone(), &[("v", "-v")]).unwrap();
    assert_eq!(neg.induced_homology_map(4).unwrap(), IntMatrix::from_rows(&[[1]]));
    assert_eq!(neg.induced_homology_map(2).unwrap(), IntMatrix::from_rows(&[[-1]]));

    let t = Arc::new(trivial_algebra(&[("w", 5)]));
    let double = AlgebraMorphism::from_spec(t.clone(), t.clone(), &[("w", "2*w")]).unwrap();
    assert!(!double.is_homotopy_equivalence());
}

#[test]
fn trivial_differential_sequence_maps() {
    let sa = wedge_spheres(2, 6).unwrap();
    let full = sa.full().clone();
    let alpha = AlgebraMorphism::from_spec(full.clone(), full.clone(), &[("v6", "-v6 + 5*v2*v2*v2")]).unwrap();
    let (xi, an) = g_trivial(&sa, &alpha).unwrap();
    assert_eq!(xi.matrix(), &IntMatrix::from_rows(&[[-1]]));
    assert!(an.is_identity());
    let k3 = AlgebraMorphism::from_spec(full.clone(), full.clone(), &[("v6", "v6 + 3*v2*v2*v2")]).unwrap();
    assert_eq!(sa.base().render(&psi_label(&sa, &k3).unwrap()[0]), "3*v2*v2*v2");
    let neg = DegreeAutomorphism::new(6, IntMatrix::from_rows(&[[-1]])).unwrap();
    let id_base = AlgebraMorphism::identity(sa.base().clone());
    let section = section_trivial(&sa, &neg, &id_base).unwrap();
    assert_eq!(full.render(section.image(1)), "-v6");
    assert!(section_trivial(&sa, &DegreeAutomorphism::identity(6, 1), &id_base).unwrap().is_identity());
}

#[test]
fn cylinder_formulas() {
    let a = Arc::new(trivial_algebra(&[("v", 2), ("w", 3)]));
    let cyl = CylinderAlgebra::new(a.clone()).unwrap();
    let c = cyl.algebra();
    assert_eq!(c.render(&c.differential(&c.element("sv").unwrap())), "-v' + v''");
    assert!(cyl.s_map(&TensorElement::unit()).is_zero());
    // S(v⊗w) = sv⊗w″ + (−1)^{|v|} v′⊗sw.
    assert_eq!(c.render(&cyl.s_map(&a.parse("v*w", None).unwrap())), "v'*sw + sv*w''");
    let b = CylinderAlgebra::new(xy()).unwrap();
    let bc = b.algebra();
    assert_eq!(bc.render(&bc.differential(&bc.element("sy").unwrap())), "-y' + y'' - sx");
}

#[test]
fn homotopy_verification_reports_mismatch() {
    let a = xy();
    let cyl = Arc::new(CylinderAlgebra::new(a.clone()).unwrap());
    let id = AlgebraMorphism::identity(a.clone());
    let neg = AlgebraMorphism::from_spec(a.clone(), a.clone(), &[("x", "-x"), ("y", "-y")]).unwrap();
    let fold = Homotopy::constant(cyl.clone(), &id).unwrap();
    assert!(verify_homotopy(&cyl, fold.map(), &id, &id).is_ok());
    assert!(matches!(
        verify_homotopy(&cyl, fold.map(), &id, &neg),
        Err(HomotopyFailure::EndMismatch { .. })
    ));
}

#[test]
fn special_homotopy_decisions() {
    let x = ChainAlgebra::from_spec(&[("x", 2), ("y", 3)], &[("y", "x")]).unwrap();
    let sa = attach_cells(&x, 5, &[TensorElement::zero(4)]).unwrap();
    let cycle = x.parse("x*y - y*x", None).unwrap();
    let a1 = perturbed_identity(&sa, &[cycle]);
    let a2 = perturbed_identity(&sa, &[TensorElement::zero(5)]);
    let h = decide_homotopy_special(&sa, &a1, &a2).unwrap().unwrap();
    assert!(verify_homotopy(h.cylinder(), h.map(), &a1, &a2).is_ok());
    assert_eq!(h.describe_suspensions().iter().find(|(n, _)| n == "sw").unwrap().1, "-y*y");
    let same = decide_homotopy_special(&sa, &a1, &a1).unwrap().unwrap();
    assert!(same.suspension_values().iter().all(TensorElement::is_zero));

    let t = trivial_algebra(&[("x", 2), ("y", 3)]);
    let st = attach_cells(&t, 5, &[TensorElement::zero(4)]).unwrap();
    let b1 = perturbed_identity(&st, &[t.parse("x*y", None).unwrap()]);
    let b2 = perturbed_identity(&st, &[t.parse("y*x", None).unwrap()]);
    assert!(decide_homotopy_special(&st, &b1, &b2).unwrap().is_none());
}

#[test]
fn rectification_of_a_planted_cycle() {
    let x = ChainAlgebra::from_spec(&[("x", 2), ("y", 3)], &[("y", "x")]).unwrap();
    let sa = attach_cells(&x, 5, &[x.parse("x*x", None).unwrap()]).unwrap();
    let alpha = perturbed_identity(&sa, &[x.parse("x*y - y*x", None).unwrap()]);
    let cyl = Arc::new(CylinderAlgebra::new(sa.base().clone()).unwrap());
    let fold = Homotopy::constant(cyl, &AlgebraMorphism::identity(sa.base().clone())).unwrap();
    let beta = rectify_kernel_element(&sa, &alpha, &fold).unwrap();
    assert_eq!(beta, alpha);
}

#[test]
fn pi_subgroup_membership() {
    let base = trivial_algebra(&[("a", 2), ("b", 2), ("u", 4)]);
    let commutator = base.parse("a*b - b*a", None).unwrap();
    let u = base.parse("u", None).unwrap();
    for (attachment, expected) in [(commutator, true), (u, false)] {
        let sa = attach_cells(&base, 5, &[attachment]).unwrap();
        let b = sa.base().clone();
        let shear = AlgebraMorphism::from_spec(b.clone(), b.clone(), &[("u", "u + a*b")]).unwrap();
        assert_eq!(pi_membership(&sa, &shear).unwrap(), expected);
        let swap = AlgebraMorphism::from_spec(b.clone(), b.clone(), &[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(pi_membership(&sa, &swap), Err(SelfEquivError::NotInStarSubgroup));
    }
    let wedge = wedge_spheres(2, 5).unwrap();
    assert!(pi_membership(&wedge, &AlgebraMorphism::identity(wedge.base().clone())).unwrap());
}

#[test]
fn builders_and_reports() {
    let sphere = suspension_model(&[(3, AbelianGroupInvariants::free(1))]).unwrap();
    assert_eq!(format!("{:?}", sphere.generators()), "[\"v3:3\"]");
    let wedge = suspension_model(&[(2, AbelianGroupInvariants::free(1)), (5, AbelianGroupInvariants::free(1))]).unwrap();
    assert_eq!(*wedge_spheres(2, 5).unwrap().full().as_ref(), wedge);
    let x = ChainAlgebra::from_spec(&[("x", 2), ("y", 3)], &[("y", "x")]).unwrap();
    assert!(attach_cells(&x, 6, &[x.parse("x*y", None).unwrap()]).is_err());
    let t = trivial_algebra(&[("v", 2)]);
    let r = sequence_report(&attach_cells(&t, 4, &[TensorElement::zero(3), TensorElement::zero(3)]).unwrap()).unwrap();
    assert_eq!(r.kernel.to_string(), "Z^2");
    assert_eq!((r.space_q, r.space_n), (5, 3));
}
