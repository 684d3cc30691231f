//! Free chain algebras (T(V), ∂) over the integers.
//!
//! The differential is given on generators and extended to words as a
//! derivation with the Koszul sign:
//! ∂(w₁…w_k) = Σ (−1)^{|w₁…w_{i−1}|} w₁…∂w_i…w_k.

mod homology;
mod split;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::exactlinalg::{
    kernel_basis, solve_integer, subquotient_invariants, AbelianGroupInvariants, IntMatrix, LinalgError, Subquotient,
};
use crate::exec::Execution;
use crate::tensoralg::{Degree, GradedGeneratorSet, TensorElement, TensorError, Word};

pub use homology::{HomologyClass, HomologyGroup};
pub use split::{SplitChainAlgebra, SplitError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DgaError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("differential of '{generator}' has degree {found}, expected {expected}")]
    WrongDegree {
        generator: String,
        expected: Degree,
        found: Degree,
    },
    #[error("differential given for unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("{0}")]
    NotSquareZero(Violation),
    #[error("element of degree {0} is not a cycle")]
    NotACycle(Degree),
    #[error("element has degree {found}, expected {expected}")]
    DegreeMismatch { expected: Degree, found: Degree },
}

/// A generator whose differential does not square to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub generator: String,
    /// ∂∂v, rendered with the algebra's generator names.
    pub residue: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d(d({})) = {} is not zero", self.generator, self.residue)
    }
}

pub struct ChainAlgebra {
    gens: GradedGeneratorSet,
    differential: Vec<TensorElement>,
    exec: Execution,
    homology_cache: Mutex<HashMap<Degree, Arc<HomologyGroup>>>,
}

impl ChainAlgebra {
    /// Builds and validates. `differential[i]` is ∂ of generator `i`.
    pub fn new(gens: GradedGeneratorSet, differential: Vec<TensorElement>) -> Result<Self, DgaError> {
        let alg = Self::unvalidated(gens, differential)?;
        alg.validate().map_err(DgaError::NotSquareZero)?;
        Ok(alg)
    }

    /// Builds with degree and alphabet checks only; ∂² = 0 is not checked.
    pub fn unvalidated(gens: GradedGeneratorSet, differential: Vec<TensorElement>) -> Result<Self, DgaError> {
        assert_eq!(gens.len(), differential.len(), "one differential per generator");
        for (i, d) in differential.iter().enumerate() {
            let expected = gens.degree_of(i) - 1;
            if d.degree() != expected {
                return Err(DgaError::WrongDegree {
                    generator: gens.name_of(i).to_string(),
                    expected,
                    found: d.degree(),
                });
            }
            for (w, _) in d.terms() {
                if let Some(&l) = w.letters().iter().find(|&&l| l as usize >= gens.len()) {
                    return Err(TensorError::ForeignLetter(l as usize).into());
                }
            }
        }
        Ok(ChainAlgebra {
            gens,
            differential,
            exec: Execution::default(),
            homology_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_trivial_differential(gens: GradedGeneratorSet) -> Self {
        let differential = (0..gens.len()).map(|i| TensorElement::zero(gens.degree_of(i) - 1)).collect();
        Self::unvalidated(gens, differential).expect("zero differential is well formed")
    }

    /// Builds from `(name, degree)` pairs and `(name, ∂name)` text pairs;
    /// unlisted generators are cycles.
    pub fn from_spec(generators: &[(&str, Degree)], differentials: &[(&str, &str)]) -> Result<Self, DgaError> {
        let gens = GradedGeneratorSet::from_pairs(generators)?;
        let mut differential: Vec<TensorElement> =
            (0..gens.len()).map(|i| TensorElement::zero(gens.degree_of(i) - 1)).collect();
        for &(name, text) in differentials {
            let i = gens
                .index_of(name)
                .ok_or_else(|| DgaError::UnknownGenerator(name.to_string()))?;
            differential[i] = gens.parse_element(text, Some(gens.degree_of(i) - 1))?;
        }
        Self::new(gens, differential)
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn generators(&self) -> &GradedGeneratorSet {
        &self.gens
    }

    /// ∂ of generator `i`.
    pub fn generator_differential(&self, i: usize) -> &TensorElement {
        &self.differential[i]
    }

    pub fn generator(&self, i: usize) -> TensorElement {
        TensorElement::generator(&self.gens, i)
    }

    /// The generator called `name`, as an element.
    pub fn element(&self, name: &str) -> Option<TensorElement> {
        self.gens.index_of(name).map(|i| self.generator(i))
    }

    pub fn parse(&self, text: &str, degree: Option<Degree>) -> Result<TensorElement, TensorError> {
        self.gens.parse_element(text, degree)
    }

    pub fn render(&self, x: &TensorElement) -> String {
        self.gens.render(x)
    }

    pub fn has_trivial_differential(&self) -> bool {
        self.differential.iter().all(TensorElement::is_zero)
    }

    /// ∂x, extending the generator values as a derivation.
    pub fn differential(&self, x: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(x.degree() - 1);
        for (w, c) in x.terms() {
            let letters = w.letters();
            let mut prefix_degree = 0;
            for (i, &l) in letters.iter().enumerate() {
                let dv = &self.differential[l as usize];
                if !dv.is_zero() {
                    let signed = if prefix_degree % 2 == 0 { c.clone() } else { -c };
                    for (dw, dc) in dv.terms() {
                        let mut word = Vec::with_capacity(letters.len() + dw.len());
                        word.extend_from_slice(&letters[..i]);
                        word.extend_from_slice(dw.letters());
                        word.extend_from_slice(&letters[i + 1..]);
                        out.add_term(Word::from_letters(word), &signed * dc);
                    }
                }
                prefix_degree += self.gens.degree_of(l as usize);
            }
        }
        out
    }

    /// Checks ∂∂v = 0 for every generator, which suffices for a derivation.
    pub fn validate(&self) -> Result<(), Violation> {
        for (i, dv) in self.differential.iter().enumerate() {
            let residue = self.differential(dv);
            if !residue.is_zero() {
                return Err(Violation {
                    generator: self.gens.name_of(i).to_string(),
                    residue: self.render(&residue),
                });
            }
        }
        Ok(())
    }

    /// Matrix of the linear part d : V_m → V_{m−1}, generators in declaration order.
    pub fn linear_part_matrix(&self, m: Degree) -> IntMatrix {
        let sources = self.gens.indices_in_degree(m);
        let targets = self.gens.indices_in_degree(m - 1);
        let mut out = IntMatrix::zeros(targets.len(), sources.len());
        for (j, &v) in sources.iter().enumerate() {
            for (i, &t) in targets.iter().enumerate() {
                out[(i, j)] = self.differential[v].coefficient(&Word::letter(t));
            }
        }
        out
    }

    /// Matrix of ∂ : T_m(V) → T_{m−1}(V) in word-basis coordinates.
    pub fn differential_matrix(&self, m: Degree) -> IntMatrix {
        let source = self.gens.word_basis(m);
        let target = self.gens.word_basis(m - 1);
        let columns = self.exec.map(source.words(), |w| {
            let x = TensorElement::monomial_unchecked(m, w.clone(), BigInt::from(1));
            self.differential(&x)
                .coordinates(&self.gens)
                .expect("image of a basis word lies in the target basis")
        });
        IntMatrix::from_columns(target.len(), &columns)
    }

    /// Homology of T(V) in degree `m`, computed once and cached.
    pub fn homology(&self, m: Degree) -> Arc<HomologyGroup> {
        if let Some(h) = self.homology_cache.lock().expect("homology cache poisoned").get(&m) {
            return Arc::clone(h);
        }
        let h = Arc::new(HomologyGroup::compute(self, m));
        self.homology_cache
            .lock()
            .expect("homology cache poisoned")
            .entry(m)
            .or_insert(h)
            .clone()
    }

    /// Homology of several degrees, spread over the execution policy.
    pub fn homology_range(&self, degrees: &[Degree]) -> Vec<Arc<HomologyGroup>> {
        self.exec.map(degrees, |&m| self.homology(m))
    }

    /// Homology of the indecomposables complex (V, d) in degree `m`.
    pub fn indecomposables_homology(&self, m: Degree) -> AbelianGroupInvariants {
        self.indecomposables_subquotient(m).invariants().clone()
    }

    /// H_m(V, d) with generators, in coordinates over the degree-m generators.
    pub fn indecomposables_subquotient(&self, m: Degree) -> Subquotient {
        let z = kernel_basis(&self.linear_part_matrix(m));
        subquotient_invariants(&z, &self.linear_part_matrix(m + 1)).expect("d² = 0 puts boundaries inside cycles")
    }

    /// Whether `x` is a cycle.
    pub fn is_cycle(&self, x: &TensorElement) -> bool {
        self.differential(x).is_zero()
    }

    /// The homology class of the cycle `z`.
    pub fn class_of(&self, z: &TensorElement) -> Result<HomologyClass, DgaError> {
        self.homology(z.degree()).class_of(self, z)
    }

    /// Solves ∂u = b for u of degree `b.degree() + 1`, if possible over ℤ.
    pub fn solve_boundary(&self, b: &TensorElement) -> Result<Option<TensorElement>, DgaError> {
        let m = b.degree() + 1;
        let matrix = self.differential_matrix(m);
        let rhs = b.coordinates(&self.gens)?;
        let Some(x) = solve_integer(&matrix, &rhs)? else {
            return Ok(None);
        };
        Ok(Some(TensorElement::from_coordinates(&self.gens, m, &x)?))
    }
}

impl Clone for ChainAlgebra {
    fn clone(&self) -> Self {
        ChainAlgebra {
            gens: self.gens.clone(),
            differential: self.differential.clone(),
            exec: self.exec,
            homology_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for ChainAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.differential == other.differential
    }
}

impl Eq for ChainAlgebra {}

impl fmt::Debug for ChainAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_map();
        for (i, g) in self.gens.generators().iter().enumerate() {
            list.entry(
                &format!("{}:{}", g.name, g.degree),
                &self.render(&self.differential[i]),
            );
        }
        list.finish()
    }
}
