use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AlgebraMorphism, MorphismError};
use crate::dga::ChainAlgebra;
use crate::exactlinalg::{is_unimodular, unimodular_inverse, IntMatrix};
use crate::exec::Execution;
use crate::tensoralg::{Degree, TensorElement};

/// An automorphism of the free module V_q, as a unimodular matrix on the
/// degree-q generators (declaration order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeAutomorphism {
    degree: Degree,
    matrix: IntMatrix,
}

impl DegreeAutomorphism {
    pub fn new(degree: Degree, matrix: IntMatrix) -> Result<Self, MorphismError> {
        if !is_unimodular(&matrix) {
            return Err(MorphismError::NotInvertible(degree));
        }
        Ok(DegreeAutomorphism { degree, matrix })
    }

    pub fn identity(degree: Degree, rank: usize) -> Self {
        DegreeAutomorphism {
            degree,
            matrix: IntMatrix::identity(rank),
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.rank())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DegreeAutomorphism) -> DegreeAutomorphism {
        DegreeAutomorphism {
            degree: self.degree,
            matrix: self.matrix.mul(&other.matrix).expect("same rank"),
        }
    }

    pub fn inverse(&self) -> DegreeAutomorphism {
        DegreeAutomorphism {
            degree: self.degree,
            matrix: unimodular_inverse(&self.matrix).expect("checked at construction"),
        }
    }
}

const CANDIDATE_LIMIT: u128 = 4_000_000;

/// All endomorphisms of `alg` whose linear part is unimodular in every
/// degree, with every coefficient (linear and decomposable) in
/// `[-bound, bound]`, that satisfy the chain condition.
///
/// Unimodularity forces rank-one linear parts to be ±1, so for generators
/// whose degree admits no decomposable words the result is exact rather
/// than a truncation.
pub fn enumerate_automorphisms(
    alg: &Arc<ChainAlgebra>,
    bound: u32,
    exec: Execution,
) -> Result<Vec<AlgebraMorphism>, MorphismError> {
    let gens = alg.generators();
    let b = bound as i64;
    let range: Vec<BigInt> = (-b..=b).map(BigInt::from).collect();
    // One list of alternatives per degree; each alternative assigns images
    // to every generator of that degree.
    let mut per_degree: Vec<Vec<Vec<(usize, TensorElement)>>> = Vec::new();
    let mut total: u128 = 1;
    for d in gens.degrees() {
        let idx = gens.indices_in_degree(d);
        let r = idx.len();
        let linear: Vec<IntMatrix> = tuples(&range, r * r)
            .into_iter()
            .map(|entries| {
                let rows = entries.chunks(r).map(|c| c.to_vec()).collect();
                IntMatrix::from_row_vecs(r, r, rows).expect("square")
            })
            .filter(is_unimodular)
            .collect();
        let basis = gens.word_basis(d);
        let decomposable: Vec<_> = basis.words().iter().filter(|w| w.len() >= 2).cloned().collect();
        let count = linear.len() as u128 * (range.len() as u128).pow((decomposable.len() * r) as u32);
        total = total.saturating_mul(count);
        if total > CANDIDATE_LIMIT {
            return Err(MorphismError::TooManyCandidates(total));
        }
        let tails = tuples(&range, decomposable.len() * r);
        let mut alternatives = Vec::new();
        for m in &linear {
            for tail in &tails {
                let images = idx
                    .iter()
                    .enumerate()
                    .map(|(col, &v)| {
                        let mut x = TensorElement::zero(d);
                        for (row, &t) in idx.iter().enumerate() {
                            x.add_scaled(&alg.generator(t), &m[(row, col)]);
                        }
                        for (k, w) in decomposable.iter().enumerate() {
                            let c = &tail[col * decomposable.len() + k];
                            if !c.is_zero() {
                                x.add_term(w.clone(), c.clone());
                            }
                        }
                        (v, x)
                    })
                    .collect();
                alternatives.push(images);
            }
        }
        per_degree.push(alternatives);
    }
    let radices: Vec<usize> = per_degree.iter().map(Vec::len).collect();
    let found = exec.map_range(total as usize, |mut code| {
        let mut images: Vec<TensorElement> = (0..gens.len()).map(|i| TensorElement::zero(gens.degree_of(i))).collect();
        for (alts, &radix) in per_degree.iter().zip(&radices) {
            for (v, x) in &alts[code % radix] {
                images[*v] = x.clone();
            }
            code /= radix;
        }
        AlgebraMorphism::new(Arc::clone(alg), Arc::clone(alg), images).ok()
    });
    Ok(found.into_iter().flatten().collect())
}

/// All `len`-tuples over `values`, first coordinate varying slowest.
fn tuples(values: &[BigInt], len: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    out
}
