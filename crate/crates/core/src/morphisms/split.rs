//! Morphisms of a split algebra T(V_q ⊕ V_{≤n}) and the maps g, Ψ and the
//! section for the trivial-differential sequence.

use std::sync::Arc;

use super::{AlgebraMorphism, DegreeAutomorphism, MorphismError};
use crate::dga::SplitChainAlgebra;
use crate::exactlinalg::IntMatrix;
use crate::tensoralg::{TensorElement, Word};

fn require_endomorphism(sa: &SplitChainAlgebra, alpha: &AlgebraMorphism) -> Result<(), MorphismError> {
    if !super::same_algebra(alpha.source(), sa.full()) || !super::same_algebra(alpha.target(), sa.full()) {
        return Err(MorphismError::Shape("not an endomorphism of the split algebra".into()));
    }
    Ok(())
}

/// The restriction α_n : T(V_{≤n}) → T(V_{≤n}).
pub fn restrict_to_base(sa: &SplitChainAlgebra, alpha: &AlgebraMorphism) -> Result<AlgebraMorphism, MorphismError> {
    require_endomorphism(sa, alpha)?;
    let images = sa
        .base_to_full()
        .iter()
        .map(|&f| {
            sa.restrict(alpha.image(f))
                .ok_or_else(|| MorphismError::Shape("a low generator maps outside T(V_<=n)".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    AlgebraMorphism::unvalidated(Arc::clone(sa.base()), Arc::clone(sa.base()), images)
}

/// Matrix of α̃_q on the degree-q generators.
pub fn top_linear_part(sa: &SplitChainAlgebra, alpha: &AlgebraMorphism) -> IntMatrix {
    let top = sa.top_generators();
    let mut m = IntMatrix::zeros(top.len(), top.len());
    for (j, &v) in top.iter().enumerate() {
        for (i, &t) in top.iter().enumerate() {
            m[(i, j)] = alpha.image(v).coefficient(&Word::letter(t));
        }
    }
    m
}

/// The morphism with α(v_j) = Σ_i ξ_ij v_i + u_j on V_q and α = α_n on the
/// base. `u_j` are elements of T_q(V_{≤n}) given over the base algebra.
pub fn assemble_split(
    sa: &SplitChainAlgebra,
    xi: &DegreeAutomorphism,
    alpha_n: &AlgebraMorphism,
    u: &[TensorElement],
) -> Result<AlgebraMorphism, MorphismError> {
    let full = sa.full();
    let top = sa.top_generators();
    if xi.rank() != top.len() || u.len() != top.len() {
        return Err(MorphismError::Shape(format!(
            "expected data for {} top generators",
            top.len()
        )));
    }
    let mut images: Vec<Option<TensorElement>> = vec![None; full.generators().len()];
    for (b, &f) in sa.base_to_full().iter().enumerate() {
        images[f] = Some(sa.embed(alpha_n.image(b)));
    }
    for (j, &v) in top.iter().enumerate() {
        let mut x = sa.embed(&u[j]);
        if x.degree() != sa.q() {
            return Err(MorphismError::ImageDegree {
                generator: full.generators().name_of(v).to_string(),
                expected: sa.q(),
                found: x.degree(),
            });
        }
        for (i, &t) in top.iter().enumerate() {
            x.add_scaled(&full.generator(t), &xi.matrix()[(i, j)]);
        }
        images[v] = Some(x);
    }
    let images = images.into_iter().map(|x| x.expect("every generator assigned")).collect();
    AlgebraMorphism::new(Arc::clone(full), Arc::clone(full), images)
}

fn require_trivial(sa: &SplitChainAlgebra) -> Result<(), MorphismError> {
    if !sa.full().has_trivial_differential() {
        return Err(MorphismError::Shape("the differential is not trivial".into()));
    }
    Ok(())
}

/// g(α) = (α̃_q, α_n) for an automorphism of a trivial-differential split algebra.
pub fn g_trivial(
    sa: &SplitChainAlgebra,
    alpha: &AlgebraMorphism,
) -> Result<(DegreeAutomorphism, AlgebraMorphism), MorphismError> {
    require_trivial(sa)?;
    let xi = DegreeAutomorphism::new(sa.q(), top_linear_part(sa, alpha))?;
    Ok((xi, restrict_to_base(sa, alpha)?))
}

/// The automorphism equal to ξ on V_q and to γ on the base.
pub fn section_trivial(
    sa: &SplitChainAlgebra,
    xi: &DegreeAutomorphism,
    gamma: &AlgebraMorphism,
) -> Result<AlgebraMorphism, MorphismError> {
    require_trivial(sa)?;
    let zeros = vec![TensorElement::zero(sa.q()); sa.top_generators().len()];
    assemble_split(sa, xi, gamma, &zeros)
}

/// Ψ(α)(v) = α(v) − v for α in the kernel of g, as elements of T_q(V_{≤n}).
pub fn psi_label(sa: &SplitChainAlgebra, alpha: &AlgebraMorphism) -> Result<Vec<TensorElement>, MorphismError> {
    let (xi, alpha_n) = g_trivial(sa, alpha)?;
    if !xi.is_identity() || !alpha_n.is_identity() {
        return Err(MorphismError::Shape("not in the kernel of g".into()));
    }
    sa.top_generators()
        .iter()
        .map(|&v| {
            let z = alpha.image(v) - &sa.full().generator(v);
            sa.restrict(&z)
                .ok_or_else(|| MorphismError::Shape("perturbation leaves T(V_<=n)".into()))
        })
        .collect()
}
