//! Standard split algebras: wedges of spheres, suspension models and
//! cell attachments.

use std::sync::Arc;


use super::SelfEquivError;
use crate::dga::{ChainAlgebra, SplitChainAlgebra};
use crate::exactlinalg::AbelianGroupInvariants;
use crate::tensoralg::{Degree, Generator, GradedGeneratorSet, TensorElement};

fn split(full: ChainAlgebra, q: Degree, n: Degree) -> Result<SplitChainAlgebra, SelfEquivError> {
    Ok(SplitChainAlgebra::new(Arc::new(full), q, n)?)
}

/// T(v_n, v_q) with trivial differential: the model of S^{n+1} ∨ S^{q+1}.
pub fn wedge_spheres(n: Degree, q: Degree) -> Result<SplitChainAlgebra, SelfEquivError> {
    if q <= n {
        return Err(SelfEquivError::Invalid(format!("need q > n, got q = {q}, n = {n}")));
    }
    let gens = GradedGeneratorSet::from_pairs(&[(&format!("v{n}"), n), (&format!("v{q}"), q)])?;
    split(ChainAlgebra::with_trivial_differential(gens), q, n)
}

/// (T(H̃_*(Y)), 0), the model of a suspension ΣY, given the reduced
/// homology of a simply connected Y by degree. Homology must be free; each
/// class of degree i gives a generator of degree i, named `v{i}` or
/// `v{i}_{k}` when the rank exceeds one. No homology gives the unit algebra.
pub fn suspension_model(homology: &[(Degree, AbelianGroupInvariants)]) -> Result<ChainAlgebra, SelfEquivError> {
    let mut gens = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, group) in homology {
        if !group.is_free() {
            return Err(SelfEquivError::Torsion(*i));
        }
        if group.is_trivial() {
            continue;
        }
        if *i < 2 {
            return Err(SelfEquivError::Invalid(format!("homology in degree {i}; Y must be simply connected")));
        }
        if !seen.insert(*i) {
            return Err(SelfEquivError::Invalid(format!("degree {i} listed twice")));
        }
        let rank = group.generator_count();
        for k in 1..=rank {
            let name = if rank == 1 { format!("v{i}") } else { format!("v{i}_{k}") };
            gens.push(Generator { name, degree: *i });
        }
    }
    gens.sort_by_key(|g| g.degree);
    Ok(ChainAlgebra::with_trivial_differential(GradedGeneratorSet::new(gens)?))
}

/// Attaches one generator of degree `q` per attaching cycle in T_{q−1} of `x`.
/// New generators are named `w`, or `w1`, `w2`, ... when there are several;
/// the prefix gains underscores (`w_`, `w__1`, ...) until no name clashes
/// with the base.
pub fn attach_cells(x: &ChainAlgebra, q: Degree, attachments: &[TensorElement]) -> Result<SplitChainAlgebra, SelfEquivError> {
    let n = x.generators().max_degree().unwrap_or(q - 1);
    if q <= n {
        return Err(SelfEquivError::Invalid(format!("cells of degree {q} must lie above the base (top degree {n})")));
    }
    let names = |prefix: &str| -> Vec<String> {
        match attachments.len() {
            1 => vec![prefix.to_string()],
            k => (1..=k).map(|j| format!("{prefix}{j}")).collect(),
        }
    };
    let mut prefix = "w".to_string();
    while names(&prefix).iter().any(|m| x.generators().index_of(m).is_some()) {
        prefix.push('_');
    }
    let new_names = names(&prefix);
    let mut gens = x.generators().generators().to_vec();
    let mut differential: Vec<TensorElement> = (0..gens.len()).map(|i| x.generator_differential(i).clone()).collect();
    for (k, z) in attachments.iter().enumerate() {
        if z.degree() != q - 1 {
            return Err(SelfEquivError::Invalid(format!("attaching element {k} has degree {}", z.degree())));
        }
        if !x.differential(z).is_zero() {
            return Err(SelfEquivError::Invalid(format!("attaching element {k} is not a cycle")));
        }
        gens.push(Generator {
            name: new_names[k].clone(),
            degree: q,
        });
        differential.push(z.clone());
    }
    let full = ChainAlgebra::new(GradedGeneratorSet::new(gens)?, differential)?.with_execution(x.execution());
    split(full, q, n)
}

/// T(V_n ⊕ V_{2n}) with trivial differential, ranks r and s:
/// generators `a1..ar` in degree n and `b1..bs` in degree 2n.
pub fn c4_model(n: Degree, r: usize, s: usize) -> Result<SplitChainAlgebra, SelfEquivError> {
    let mut pairs: Vec<(String, Degree)> = (1..=r).map(|k| (format!("a{k}"), n)).collect();
    pairs.extend((1..=s).map(|k| (format!("b{k}"), 2 * n)));
    let gens = GradedGeneratorSet::new(pairs.into_iter().map(|(name, degree)| Generator { name, degree }).collect())?;
    split(ChainAlgebra::with_trivial_differential(gens), 2 * n, n)
}
