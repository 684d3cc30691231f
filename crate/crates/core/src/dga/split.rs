use std::sync::Arc;

use super::ChainAlgebra;
use crate::tensoralg::{Degree, TensorElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("top degree {q} must exceed cut degree {n}")]
    DegreeOrder { q: Degree, n: Degree },
    #[error("generator '{name}' of degree {degree} lies outside V_q + V_<=n")]
    GeneratorOutsideSplit { name: String, degree: Degree },
}

/// A chain algebra T(V_q ⊕ V_{≤n}) with q > n and no generators in
/// between, together with its base T(V_{≤n}).
#[derive(Clone, Debug)]
pub struct SplitChainAlgebra {
    full: Arc<ChainAlgebra>,
    base: Arc<ChainAlgebra>,
    q: Degree,
    n: Degree,
    /// Base generator index -> full index.
    base_to_full: Vec<usize>,
    /// Full generator index -> base index, for generators of degree <= n.
    full_to_base: Vec<Option<usize>>,
    top: Vec<usize>,
}

impl SplitChainAlgebra {
    pub fn new(full: Arc<ChainAlgebra>, q: Degree, n: Degree) -> Result<Self, SplitError> {
        if q <= n {
            return Err(SplitError::DegreeOrder { q, n });
        }
        let gens = full.generators();
        for g in gens.generators() {
            if g.degree > n && g.degree != q {
                return Err(SplitError::GeneratorOutsideSplit {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
        }
        let (base_gens, base_to_full) = gens.truncated(n);
        let mut full_to_base = vec![None; gens.len()];
        for (b, &f) in base_to_full.iter().enumerate() {
            full_to_base[f] = Some(b);
        }
        let differential = base_to_full
            .iter()
            .map(|&f| {
                full.generator_differential(f)
                    .relabel(|l| full_to_base[l as usize].map(|b| b as u32))
                    .expect("differentials of low generators stay low")
            })
            .collect();
        let base = ChainAlgebra::unvalidated(base_gens, differential)
            .expect("restriction of a valid algebra")
            .with_execution(full.execution());
        Ok(SplitChainAlgebra {
            top: gens.indices_in_degree(q),
            full,
            base: Arc::new(base),
            q,
            n,
            base_to_full,
            full_to_base,
        })
    }

    /// Splits at the top generator degree, cutting just below it.
    pub fn at_top(full: Arc<ChainAlgebra>) -> Option<Self> {
        let degrees = full.generators().degrees();
        let q = *degrees.last()?;
        let n = degrees.iter().rev().nth(1).copied().unwrap_or(q - 1);
        Self::new(full, q, n).ok()
    }

    pub fn full(&self) -> &Arc<ChainAlgebra> {
        &self.full
    }

    pub fn base(&self) -> &Arc<ChainAlgebra> {
        &self.base
    }

    pub fn q(&self) -> Degree {
        self.q
    }

    pub fn n(&self) -> Degree {
        self.n
    }

    /// Full indices of the degree-q generators.
    pub fn top_generators(&self) -> &[usize] {
        &self.top
    }

    pub fn base_to_full(&self) -> &[usize] {
        &self.base_to_full
    }

    pub fn base_index(&self, full_index: usize) -> Option<usize> {
        self.full_to_base[full_index]
    }

    /// T(V_{≤n}) → T(V).
    pub fn embed(&self, x: &TensorElement) -> TensorElement {
        x.relabel(|b| Some(self.base_to_full[b as usize] as u32))
            .expect("every base letter has a full index")
    }

    /// T(V) → T(V_{≤n}) when `x` involves only base generators.
    pub fn restrict(&self, x: &TensorElement) -> Option<TensorElement> {
        x.relabel(|f| self.full_to_base[f as usize].map(|b| b as u32))
    }
}
