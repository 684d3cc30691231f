//! The exact sequences for self-equivalences of a split algebra
//! T(V_q ⊕ V_{≤n}): the obstruction map b_q, the pair group, lifting,
//! and the classification of the kernel by H_q(T(V_{≤n})).

mod builders;
mod report;

use std::sync::Arc;

use num_bigint::BigInt;

use crate::dga::{DgaError, HomologyClass, HomologyGroup, SplitError};
use crate::exactlinalg::{
    is_group_isomorphism, rational_rank, reduce_mod, AbelianGroupInvariants, IntMatrix,
};
use crate::homotopy::{HomotopyError, KernelShape};
use crate::morphisms::{assemble_split, restrict_to_base, top_linear_part, AlgebraMorphism, DegreeAutomorphism, MorphismError};
use crate::tensoralg::{TensorElement, TensorError};

pub use crate::dga::SplitChainAlgebra;
pub use builders::{attach_cells, c4_model, suspension_model, wedge_spheres};
pub use report::{sequence_report, BqKind, GroupRow, SequenceReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SelfEquivError {
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("the pair does not commute with b_q")]
    NotMember,
    #[error("the base map does not induce the identity on H(V, d)")]
    NotInStarSubgroup,
    #[error("the base map is not a homotopy equivalence")]
    NotEquivalence,
    #[error("homology in degree {0} has torsion; the suspension model needs free homology")]
    Torsion(i32),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// b_q : V_q → H_{q−1}(T(V_{≤n})), v ↦ [∂v], as a matrix whose columns
/// are homology coordinates.
#[derive(Clone, Debug)]
pub struct BqMap {
    matrix: IntMatrix,
    homology: Arc<HomologyGroup>,
}

impl BqMap {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn homology(&self) -> &Arc<HomologyGroup> {
        &self.homology
    }

    /// Generator orders of the target, 0 for free.
    pub fn orders(&self) -> &[BigInt] {
        self.homology.orders()
    }

    pub fn is_nil(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Whether b_q is an isomorphism V_q ≅ H_{q−1}.
    pub fn is_bijective(&self) -> bool {
        let zeros = vec![BigInt::from(0); self.matrix.cols()];
        is_group_isomorphism(&self.matrix, &zeros, self.orders())
    }

    /// Rank of b_q ⊗ ℚ (torsion rows vanish rationally).
    pub fn rational_rank(&self) -> usize {
        let free_rows: Vec<Vec<BigInt>> = (0..self.matrix.rows())
            .filter(|&i| self.orders()[i] == BigInt::from(0))
            .map(|i| self.matrix.row(i).to_vec())
            .collect();
        let m = IntMatrix::from_row_vecs(free_rows.len(), self.matrix.cols(), free_rows).expect("uniform rows");
        rational_rank(&m)
    }
}

pub fn compute_bq(sa: &SplitChainAlgebra) -> Result<BqMap, SelfEquivError> {
    let base = sa.base();
    let homology = base.homology(sa.q() - 1);
    let cols = sa
        .top_generators()
        .iter()
        .map(|&v| {
            let dv = sa
                .restrict(sa.full().generator_differential(v))
                .ok_or_else(|| SelfEquivError::Internal("top differential leaves the base".into()))?;
            Ok(homology.class_of(base, &dv)?.coordinates().to_vec())
        })
        .collect::<Result<Vec<_>, SelfEquivError>>()?;
    Ok(BqMap {
        matrix: IntMatrix::from_columns(homology.rank(), &cols),
        homology,
    })
}

/// A pair (ξ, α_n): an automorphism of V_q and a self-equivalence of the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCandidate {
    pub xi: DegreeAutomorphism,
    pub alpha_n: AlgebraMorphism,
}

impl PairCandidate {
    pub fn new(xi: DegreeAutomorphism, alpha_n: AlgebraMorphism) -> Result<Self, SelfEquivError> {
        if !alpha_n.is_homotopy_equivalence() {
            return Err(SelfEquivError::NotEquivalence);
        }
        Ok(PairCandidate { xi, alpha_n })
    }
}

fn equal_modulo(a: &IntMatrix, b: &IntMatrix, orders: &[BigInt]) -> bool {
    (0..a.rows()).all(|i| (0..a.cols()).all(|j| reduce_mod(&(&a[(i, j)] - &b[(i, j)]), &orders[i]) == BigInt::from(0)))
}

/// H_{q−1}(α_n)∘b_q = b_q∘ξ, compared modulo the torsion orders.
pub fn check_membership(sa: &SplitChainAlgebra, cand: &PairCandidate) -> Result<bool, SelfEquivError> {
    let bq = compute_bq(sa)?;
    if cand.xi.rank() != sa.top_generators().len() {
        return Err(SelfEquivError::Invalid("ξ has the wrong rank".into()));
    }
    let h = cand.alpha_n.induced_homology_map(sa.q() - 1)?;
    let lhs = h.mul(bq.matrix()).expect("shapes agree");
    let rhs = bq.matrix().mul(cand.xi.matrix()).expect("shapes agree");
    Ok(equal_modulo(&lhs, &rhs, bq.orders()))
}

/// A morphism α with g(α) = (ξ, α_n), built by solving
/// ∂u_v = α_n(∂v) − ∂(ξv) in T_q(V_{≤n}) and setting α(v) = ξ(v) + u_v.
pub fn lift_pair(sa: &SplitChainAlgebra, cand: &PairCandidate) -> Result<AlgebraMorphism, SelfEquivError> {
    if !check_membership(sa, cand)? {
        return Err(SelfEquivError::NotMember);
    }
    let full = sa.full();
    let base = sa.base();
    let top = sa.top_generators();
    let boundaries: Vec<TensorElement> = top
        .iter()
        .map(|&v| sa.restrict(full.generator_differential(v)).expect("top differential lies in the base"))
        .collect();
    let mut u = Vec::with_capacity(top.len());
    for j in 0..top.len() {
        let mut rhs = cand.alpha_n.apply(&boundaries[j]);
        for (i, b) in boundaries.iter().enumerate() {
            rhs.add_scaled(b, &-&cand.xi.matrix()[(i, j)]);
        }
        let solution = base
            .solve_boundary(&rhs)?
            .ok_or_else(|| SelfEquivError::Internal("member pair without a boundary solution".into()))?;
        u.push(solution);
    }
    Ok(assemble_split(sa, &cand.xi, &cand.alpha_n, &u)?)
}

/// g(α) = (α̃_q, α_n).
pub fn g_map(sa: &SplitChainAlgebra, alpha: &AlgebraMorphism) -> Result<PairCandidate, SelfEquivError> {
    let xi = DegreeAutomorphism::new(sa.q(), top_linear_part(sa, alpha))?;
    let alpha_n = restrict_to_base(sa, alpha)?;
    Ok(PairCandidate { xi, alpha_n })
}

/// Φ(β): v ↦ [β(v) − v] ∈ H_q(T(V_{≤n})), one class per top generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelLabel {
    pub classes: Vec<HomologyClass>,
}

impl KernelLabel {
    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(HomologyClass::is_zero)
    }

    /// Sum of labels, reduced canonically in `h`.
    pub fn add(&self, other: &KernelLabel, h: &HomologyGroup) -> KernelLabel {
        let classes = self
            .classes
            .iter()
            .zip(&other.classes)
            .map(|(a, b)| {
                let sum: Vec<BigInt> = a.coordinates().iter().zip(b.coordinates()).map(|(x, y)| x + y).collect();
                h.class(&sum)
            })
            .collect();
        KernelLabel { classes }
    }
}

/// Labels a morphism that fixes the base and perturbs V_q by cycles.
pub fn phi_classify(sa: &SplitChainAlgebra, beta: &AlgebraMorphism) -> Result<KernelLabel, SelfEquivError> {
    let shape = KernelShape::of(sa, beta)?;
    let base = sa.base();
    let h = base.homology(sa.q());
    let classes = shape
        .perturbations
        .iter()
        .map(|theta| h.class_of(base, theta).map_err(SelfEquivError::from))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(KernelLabel { classes })
}

/// β(v) = v + (representative cycle of L(v)) on V_q, β = id on the base.
pub fn realize_label(sa: &SplitChainAlgebra, label: &KernelLabel) -> Result<AlgebraMorphism, SelfEquivError> {
    let top = sa.top_generators();
    if label.classes.len() != top.len() {
        return Err(SelfEquivError::Invalid(format!("expected {} classes", top.len())));
    }
    let h = sa.base().homology(sa.q());
    let full = sa.full();
    let mut images: Vec<TensorElement> = (0..full.generators().len()).map(|i| full.generator(i)).collect();
    for (class, &v) in label.classes.iter().zip(top) {
        if class.degree() != sa.q() || class.coordinates().len() != h.rank() {
            return Err(SelfEquivError::Invalid("class is not in H_q of the base".into()));
        }
        images[v] = &images[v] + &sa.embed(&h.cycle_for(class.coordinates()));
    }
    Ok(AlgebraMorphism::new(Arc::clone(full), Arc::clone(full), images)?)
}

/// Hom(V_q, H_q(T(V_{≤n}))) ≅ H_q^{rank V_q}.
pub fn kernel_invariants(sa: &SplitChainAlgebra) -> AbelianGroupInvariants {
    sa.base()
        .homology(sa.q())
        .invariants()
        .power(sa.top_generators().len())
}

/// Whether a base self-equivalence inducing the identity on H(V, d) also
/// satisfies H_{q−1}(α_n)∘b_q = b_q.
pub fn pi_membership(sa: &SplitChainAlgebra, alpha_n: &AlgebraMorphism) -> Result<bool, SelfEquivError> {
    if !alpha_n.is_homotopy_equivalence() {
        return Err(SelfEquivError::NotEquivalence);
    }
    if !alpha_n.induces_identity_on_indecomposables() {
        return Err(SelfEquivError::NotInStarSubgroup);
    }
    let xi = DegreeAutomorphism::identity(sa.q(), sa.top_generators().len());
    check_membership(
        sa,
        &PairCandidate {
            xi,
            alpha_n: alpha_n.clone(),
        },
    )
}
