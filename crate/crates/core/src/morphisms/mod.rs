//! Morphisms of free chain algebras, determined by generator images.

mod automorphism;
mod induced;
mod split;

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::dga::{ChainAlgebra, DgaError};
use crate::exactlinalg::LinalgError;
use crate::tensoralg::{Degree, TensorElement, TensorError};

pub use automorphism::{enumerate_automorphisms, DegreeAutomorphism};
pub use induced::IndecomposableMap;
pub use split::{assemble_split, g_trivial, psi_label, restrict_to_base, section_trivial, top_linear_part};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphismError {
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image of '{generator}' has degree {found}, expected {expected}")]
    ImageDegree {
        generator: String,
        expected: Degree,
        found: Degree,
    },
    #[error("no image given for '{0}' and the target has no generator of that name")]
    MissingImage(String),
    #[error("chain condition fails at '{generator}': d(f(v)) - f(d(v)) = {residue}")]
    ChainCondition { generator: String, residue: String },
    #[error("target of the inner map is not the source of the outer map")]
    NotComposable,
    #[error("source and target differ; an endomorphism is required")]
    NotAnEndomorphism,
    #[error("linear part in degree {0} is not invertible over the integers")]
    NotInvertible(Degree),
    #[error("morphism does not have the required shape: {0}")]
    Shape(String),
    #[error("enumeration would visit {0} candidates; lower the bound")]
    TooManyCandidates(u128),
}

#[derive(Clone)]
pub struct AlgebraMorphism {
    source: Arc<ChainAlgebra>,
    target: Arc<ChainAlgebra>,
    images: Vec<TensorElement>,
}

pub(crate) fn same_algebra(a: &Arc<ChainAlgebra>, b: &Arc<ChainAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraMorphism {
    /// Builds and checks the chain condition.
    pub fn new(
        source: Arc<ChainAlgebra>,
        target: Arc<ChainAlgebra>,
        images: Vec<TensorElement>,
    ) -> Result<Self, MorphismError> {
        let f = Self::unvalidated(source, target, images)?;
        f.validate()?;
        Ok(f)
    }

    /// Builds with degree and alphabet checks only.
    pub fn unvalidated(
        source: Arc<ChainAlgebra>,
        target: Arc<ChainAlgebra>,
        images: Vec<TensorElement>,
    ) -> Result<Self, MorphismError> {
        let sg = source.generators();
        if images.len() != sg.len() {
            return Err(MorphismError::ImageCount {
                expected: sg.len(),
                found: images.len(),
            });
        }
        let tg = target.generators();
        for (i, im) in images.iter().enumerate() {
            if im.degree() != sg.degree_of(i) {
                return Err(MorphismError::ImageDegree {
                    generator: sg.name_of(i).to_string(),
                    expected: sg.degree_of(i),
                    found: im.degree(),
                });
            }
            for (w, _) in im.terms() {
                if let Some(&l) = w.letters().iter().find(|&&l| l as usize >= tg.len()) {
                    return Err(TensorError::ForeignLetter(l as usize).into());
                }
            }
        }
        Ok(AlgebraMorphism { source, target, images })
    }

    pub fn identity(alg: Arc<ChainAlgebra>) -> Self {
        let images = (0..alg.generators().len()).map(|i| alg.generator(i)).collect();
        AlgebraMorphism {
            source: Arc::clone(&alg),
            target: alg,
            images,
        }
    }

    /// Builds from `(name, image text)` pairs. Unlisted generators map to the
    /// target generator of the same name.
    pub fn from_spec(
        source: Arc<ChainAlgebra>,
        target: Arc<ChainAlgebra>,
        images: &[(&str, &str)],
    ) -> Result<Self, MorphismError> {
        let sg = source.generators();
        let mut out: Vec<Option<TensorElement>> = vec![None; sg.len()];
        for &(name, text) in images {
            let i = sg
                .index_of(name)
                .ok_or_else(|| TensorError::UnknownGenerator(name.to_string()))?;
            out[i] = Some(target.parse(text, Some(sg.degree_of(i)))?);
        }
        let images = out
            .into_iter()
            .enumerate()
            .map(|(i, im)| match im {
                Some(x) => Ok(x),
                None => target
                    .element(sg.name_of(i))
                    .ok_or_else(|| MorphismError::MissingImage(sg.name_of(i).to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<ChainAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[TensorElement] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &TensorElement {
        &self.images[i]
    }

    pub fn is_endomorphism(&self) -> bool {
        same_algebra(&self.source, &self.target)
    }

    /// f(x), extending multiplicatively.
    pub fn apply(&self, x: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(x.degree());
        for (w, c) in x.terms() {
            let mut product = TensorElement::unit();
            for &l in w.letters() {
                product = product.multiply(&self.images[l as usize]);
                if product.is_zero() {
                    break;
                }
            }
            if !product.is_zero() {
                out.add_scaled(&product, c);
            }
        }
        out
    }

    /// Checks ∂f(v) = f(∂v) on every generator.
    pub fn validate(&self) -> Result<(), MorphismError> {
        for (i, im) in self.images.iter().enumerate() {
            let lhs = self.target.differential(im);
            let rhs = self.apply(self.source.generator_differential(i));
            if lhs != rhs {
                return Err(MorphismError::ChainCondition {
                    generator: self.source.generators().name_of(i).to_string(),
                    residue: self.target.render(&(&lhs - &rhs)),
                });
            }
        }
        Ok(())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AlgebraMorphism) -> Result<AlgebraMorphism, MorphismError> {
        if !same_algebra(&inner.target, &self.source) {
            return Err(MorphismError::NotComposable);
        }
        let images = inner.images.iter().map(|x| self.apply(x)).collect();
        Ok(AlgebraMorphism {
            source: Arc::clone(&inner.source),
            target: Arc::clone(&self.target),
            images,
        })
    }

    /// Same generator images, read against other (equal) source and target.
    pub fn with_algebras(&self, source: Arc<ChainAlgebra>, target: Arc<ChainAlgebra>) -> Result<Self, MorphismError> {
        Self::unvalidated(source, target, self.images.clone())
    }

    /// Two-sided inverse of an endomorphism whose linear part is unimodular
    /// in every degree, built degree by degree.
    pub fn inverse(&self) -> Result<AlgebraMorphism, MorphismError> {
        if !self.is_endomorphism() {
            return Err(MorphismError::NotAnEndomorphism);
        }
        let gens = self.source.generators();
        let linear = self.induced_indecomposable();
        let mut inv: Vec<TensorElement> = (0..gens.len()).map(|i| TensorElement::zero(gens.degree_of(i))).collect();
        for d in gens.degrees() {
            let idx = gens.indices_in_degree(d);
            let l_inv = crate::exactlinalg::unimodular_inverse(linear.matrix(d).expect("degree with generators"))
                .map_err(|_| MorphismError::NotInvertible(d))?;
            // Left inverse: β(L g) = g − β(N g), with N g in lower generators.
            let partial = AlgebraMorphism {
                source: Arc::clone(&self.source),
                target: Arc::clone(&self.target),
                images: inv.clone(),
            };
            let corrected: Vec<TensorElement> = idx
                .iter()
                .map(|&g| &self.source.generator(g) - &partial.apply(&self.images[g].decomposable_part()))
                .collect();
            for (col, &v) in idx.iter().enumerate() {
                let mut image = TensorElement::zero(d);
                for (row, c) in corrected.iter().enumerate() {
                    image.add_scaled(c, &l_inv[(row, col)]);
                }
                inv[v] = image;
            }
        }
        Ok(AlgebraMorphism {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            images: inv,
        })
    }

    /// Whether this is the identity on generators.
    pub fn is_identity(&self) -> bool {
        self.is_endomorphism()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, im)| im.term_count() == 1 && im.coefficient(&crate::tensoralg::Word::letter(i)).is_one())
    }

    /// Renders generator images as `name -> image` lines.
    pub fn describe(&self) -> Vec<(String, String)> {
        let sg = self.source.generators();
        self.images
            .iter()
            .enumerate()
            .map(|(i, im)| (sg.name_of(i).to_string(), self.target.render(im)))
            .collect()
    }
}

impl PartialEq for AlgebraMorphism {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.source, &other.source)
            && same_algebra(&self.target, &other.target)
            && self.images == other.images
    }
}

impl Eq for AlgebraMorphism {}

impl fmt::Debug for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.describe()).finish()
    }
}
