//! Homotopies between morphisms of a split algebra that fix the base.

use std::sync::Arc;

use super::{verify_homotopy, CylinderAlgebra, Homotopy, HomotopyError, Part};
use crate::dga::SplitChainAlgebra;
use crate::exactlinalg::IntMatrix;
use crate::morphisms::{restrict_to_base, top_linear_part, AlgebraMorphism};
use crate::tensoralg::TensorElement;

/// The perturbations z_v = α(v) − v ∈ T_q(V_{≤n}) of a morphism that is the
/// identity on the base and has identity linear part on V_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelShape {
    /// One element of the base algebra per top generator.
    pub perturbations: Vec<TensorElement>,
}

impl KernelShape {
    pub fn of(sa: &SplitChainAlgebra, alpha: &AlgebraMorphism) -> Result<Self, HomotopyError> {
        let alpha_n = restrict_to_base(sa, alpha)?;
        if !alpha_n.is_identity() {
            return Err(HomotopyError::Shape("not the identity on T(V_<=n)".into()));
        }
        Ok(KernelShape {
            perturbations: top_perturbations(sa, alpha)?,
        })
    }
}

/// α(v) − v for top generators, requiring identity linear part on V_q.
fn top_perturbations(sa: &SplitChainAlgebra, alpha: &AlgebraMorphism) -> Result<Vec<TensorElement>, HomotopyError> {
    if top_linear_part(sa, alpha) != IntMatrix::identity(sa.top_generators().len()) {
        return Err(HomotopyError::Shape("linear part on V_q is not the identity".into()));
    }
    sa.top_generators()
        .iter()
        .map(|&v| {
            sa.restrict(&(alpha.image(v) - &sa.full().generator(v)))
                .ok_or_else(|| HomotopyError::Shape("perturbation leaves T(V_<=n)".into()))
        })
        .collect()
}

/// Decides α₁ ≃ α₂ for α_i(v) = v + z_i(v) on V_q and α_i = id on the base.
///
/// Returns a homotopy when ∂u_v = z₂(v) − z₁(v) is solvable with
/// u_v ∈ T_{q+1}(V), using F(v′) = α₁(v), F(v″) = α₂(v), F(sv) = u_v on V_q
/// and F(sv) = 0 on the base; returns `None` otherwise.
pub fn decide_homotopy_special(
    sa: &SplitChainAlgebra,
    alpha1: &AlgebraMorphism,
    alpha2: &AlgebraMorphism,
) -> Result<Option<Homotopy>, HomotopyError> {
    let z1 = KernelShape::of(sa, alpha1)?.perturbations;
    let z2 = KernelShape::of(sa, alpha2)?.perturbations;
    let full = sa.full();
    let gens = full.generators();
    let mut suspension: Vec<TensorElement> = (0..gens.len()).map(|i| TensorElement::zero(gens.degree_of(i) + 1)).collect();
    for (j, &v) in sa.top_generators().iter().enumerate() {
        let rhs = sa.embed(&(&z2[j] - &z1[j]));
        match full.solve_boundary(&rhs)? {
            Some(u) => suspension[v] = u,
            None => return Ok(None),
        }
    }
    let cylinder = Arc::new(CylinderAlgebra::new(Arc::clone(full))?);
    let h = Homotopy::from_suspension_values(Arc::clone(&cylinder), alpha2, &suspension)?;
    verify_homotopy(&cylinder, h.map(), alpha1, alpha2).map_err(HomotopyError::Verification)?;
    Ok(Some(h))
}

/// Straightens a morphism α with identity linear part on V_q whose base
/// restriction α_n is homotopic to the identity, given a witness
/// F : α_n ≃ id on T(V_{≤n}).
///
/// Returns β with β(v) = α(v) + F(S(∂v)) on V_q and β = id on the base.
/// Before returning it checks that β is a chain map, that β(v) − v is a
/// cycle of T_q(V_{≤n}), and that the homotopy of [`build_g`] verifies.
pub fn rectify_kernel_element(
    sa: &SplitChainAlgebra,
    alpha: &AlgebraMorphism,
    witness: &Homotopy,
) -> Result<AlgebraMorphism, HomotopyError> {
    let alpha_n = restrict_to_base(sa, alpha)?;
    check_witness(sa, &alpha_n, witness)?;
    top_perturbations(sa, alpha)?;
    let full = sa.full();
    let base = sa.base();
    let mut images: Vec<TensorElement> = (0..full.generators().len()).map(|i| full.generator(i)).collect();
    for &v in sa.top_generators() {
        let dv = sa
            .restrict(full.generator_differential(v))
            .expect("differentials of top generators lie in the base");
        let correction = witness.map().apply(&witness.cylinder().s_map(&dv));
        images[v] = alpha.image(v) + &sa.embed(&correction);
    }
    let beta = AlgebraMorphism::new(Arc::clone(full), Arc::clone(full), images)?;
    for &v in sa.top_generators() {
        let theta = beta.image(v) - &full.generator(v);
        let low = sa
            .restrict(&theta)
            .ok_or_else(|| HomotopyError::Shape("rectified perturbation leaves T(V_<=n)".into()))?;
        if !base.is_cycle(&low) {
            return Err(HomotopyError::Shape("rectified perturbation is not a cycle".into()));
        }
    }
    build_g(sa, alpha, &beta, witness)?;
    Ok(beta)
}

fn check_witness(sa: &SplitChainAlgebra, alpha_n: &AlgebraMorphism, witness: &Homotopy) -> Result<(), HomotopyError> {
    if **witness.cylinder().base() != **sa.base() {
        return Err(HomotopyError::Shape("witness is not defined on the base cylinder".into()));
    }
    if witness.start().images() != alpha_n.images() {
        return Err(HomotopyError::Shape("witness does not start at the restriction of the morphism".into()));
    }
    if !witness.end().is_identity() {
        return Err(HomotopyError::Shape("witness does not end at the identity".into()));
    }
    Ok(())
}

/// The homotopy G : α ≃ β on the full cylinder: G = F on the base copies,
/// G(v′) = α(v), G(v″) = β(v) and G(sv) = 0 on V_q.
pub fn build_g(
    sa: &SplitChainAlgebra,
    alpha: &AlgebraMorphism,
    beta: &AlgebraMorphism,
    witness: &Homotopy,
) -> Result<Homotopy, HomotopyError> {
    let full = sa.full();
    let gens = full.generators();
    let cylinder = Arc::new(CylinderAlgebra::new(Arc::clone(full))?);
    let mut images: Vec<TensorElement> = Vec::with_capacity(3 * gens.len());
    for part in [Part::Start, Part::End, Part::Suspension] {
        for i in 0..gens.len() {
            let image = match (sa.base_index(i), part) {
                (Some(b), _) => sa.embed(witness.map().image(witness.cylinder().index(part, b))),
                (None, Part::Start) => alpha.image(i).clone(),
                (None, Part::End) => beta.image(i).clone(),
                (None, Part::Suspension) => TensorElement::zero(gens.degree_of(i) + 1),
            };
            images.push(image);
        }
    }
    let map = AlgebraMorphism::unvalidated(Arc::clone(cylinder.algebra()), Arc::clone(full), images)?;
    verify_homotopy(&cylinder, &map, alpha, beta).map_err(HomotopyError::Verification)?;
    Homotopy::from_map(cylinder, map)
}
