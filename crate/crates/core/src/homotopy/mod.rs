//! Homotopies of chain-algebra morphisms through the cylinder algebra.
//!
//! A homotopy F : α₁ ≃ α₂ is a chain map out of the cylinder with
//! F(v′) = α₁(v) and F(v″) = α₂(v).

mod cylinder;
mod kernel;

use std::fmt;
use std::sync::Arc;

use crate::dga::{ChainAlgebra, DgaError};
use crate::morphisms::{AlgebraMorphism, MorphismError};
use crate::tensoralg::TensorElement;

pub use cylinder::{CylinderAlgebra, Part};
pub use kernel::{build_g, decide_homotopy_special, rectify_kernel_element, KernelShape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomotopyError {
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error("cylinder construction failed: {0}")]
    Cylinder(String),
    #[error("input does not have the required shape: {0}")]
    Shape(String),
    #[error("constructed homotopy failed verification: {0}")]
    Verification(HomotopyFailure),
}

/// Why a candidate homotopy was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyFailure {
    /// The map is not defined on the right cylinder or lands elsewhere.
    WrongAlgebras,
    /// F∘D ≠ ∂∘F at the named cylinder generator.
    NotChainMap { generator: String, residue: String },
    /// F(v′) ≠ α₁(v).
    StartMismatch { generator: String },
    /// F(v″) ≠ α₂(v).
    EndMismatch { generator: String },
}

impl fmt::Display for HomotopyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyFailure::WrongAlgebras => write!(f, "map is not defined on the cylinder of the common source"),
            HomotopyFailure::NotChainMap { generator, residue } => {
                write!(f, "not a chain map at '{generator}' (residue {residue})")
            }
            HomotopyFailure::StartMismatch { generator } => write!(f, "F({generator}') differs from the start map"),
            HomotopyFailure::EndMismatch { generator } => write!(f, "F({generator}'') differs from the end map"),
        }
    }
}

/// A verified homotopy between two morphisms.
#[derive(Clone, Debug)]
pub struct Homotopy {
    cylinder: Arc<CylinderAlgebra>,
    map: AlgebraMorphism,
    start: AlgebraMorphism,
    end: AlgebraMorphism,
}

impl Homotopy {
    /// Wraps a chain map out of the cylinder, reading off its endpoints.
    pub fn from_map(cylinder: Arc<CylinderAlgebra>, map: AlgebraMorphism) -> Result<Self, HomotopyError> {
        if !Arc::ptr_eq(map.source(), cylinder.algebra()) && **map.source() != **cylinder.algebra() {
            return Err(HomotopyError::Verification(HomotopyFailure::WrongAlgebras));
        }
        if let Err(MorphismError::ChainCondition { generator, residue }) = map.validate() {
            return Err(HomotopyError::Verification(HomotopyFailure::NotChainMap { generator, residue }));
        }
        let start = map.compose(cylinder.start_inclusion())?;
        let end = map.compose(cylinder.end_inclusion())?;
        Ok(Homotopy {
            cylinder,
            map,
            start,
            end,
        })
    }

    /// The constant homotopy α ≃ α: F(v′) = F(v″) = α(v), F(sv) = 0.
    pub fn constant(cylinder: Arc<CylinderAlgebra>, alpha: &AlgebraMorphism) -> Result<Self, HomotopyError> {
        let n = cylinder.base().generators().len();
        let mut images = Vec::with_capacity(3 * n);
        for _ in 0..2 {
            images.extend(alpha.images().iter().cloned());
        }
        images.extend(alpha.images().iter().map(|x| TensorElement::zero(x.degree() + 1)));
        let map = AlgebraMorphism::unvalidated(Arc::clone(cylinder.algebra()), Arc::clone(alpha.target()), images)?;
        Self::from_map(cylinder, map)
    }

    /// The homotopy ending at `end` with F(sv) = `suspension[v]`.
    ///
    /// Generators are processed by ascending degree, setting
    /// F(v″) = end(v), F(sv) = h_v and F(v′) = end(v) − F(S∂v) − ∂h_v, which
    /// always gives a chain map. The start is whatever this produces.
    pub fn from_suspension_values(
        cylinder: Arc<CylinderAlgebra>,
        end: &AlgebraMorphism,
        suspension: &[TensorElement],
    ) -> Result<Self, HomotopyError> {
        let base = cylinder.base();
        let gens = base.generators();
        let n = gens.len();
        if suspension.len() != n {
            return Err(HomotopyError::Shape(format!("expected {n} suspension values")));
        }
        let target = end.target();
        let mut images: Vec<TensorElement> = Vec::with_capacity(3 * n);
        for offset in 0..3 {
            for i in 0..n {
                images.push(TensorElement::zero(gens.degree_of(i) + (offset == 2) as i32));
            }
        }
        for d in gens.degrees() {
            let idx = gens.indices_in_degree(d);
            for &v in &idx {
                images[n + v] = end.image(v).clone();
                images[2 * n + v] = suspension[v].clone();
            }
            // Lower-degree images are final; this degree's v′ slots are unused by S∂v.
            let partial =
                AlgebraMorphism::unvalidated(Arc::clone(cylinder.algebra()), Arc::clone(target), images.clone())?;
            for &v in &idx {
                let correction = partial.apply(&cylinder.s_map(base.generator_differential(v)));
                let start = &(end.image(v) - &correction) - &target.differential(&suspension[v]);
                images[v] = start;
            }
        }
        let map = AlgebraMorphism::unvalidated(Arc::clone(cylinder.algebra()), Arc::clone(target), images)?;
        Self::from_map(cylinder, map)
    }

    pub fn cylinder(&self) -> &Arc<CylinderAlgebra> {
        &self.cylinder
    }

    pub fn map(&self) -> &AlgebraMorphism {
        &self.map
    }

    pub fn start(&self) -> &AlgebraMorphism {
        &self.start
    }

    pub fn end(&self) -> &AlgebraMorphism {
        &self.end
    }

    pub fn target(&self) -> &Arc<ChainAlgebra> {
        self.map.target()
    }

    /// F(sv) for every base generator v.
    pub fn suspension_values(&self) -> Vec<TensorElement> {
        let n = self.cylinder.base().generators().len();
        (0..n).map(|i| self.map.image(self.cylinder.index(Part::Suspension, i)).clone()).collect()
    }

    /// `(sv, F(sv))` pairs, rendered.
    pub fn describe_suspensions(&self) -> Vec<(String, String)> {
        let cg = self.cylinder.algebra().generators();
        self.suspension_values()
            .iter()
            .enumerate()
            .map(|(i, x)| {
                (
                    cg.name_of(self.cylinder.index(Part::Suspension, i)).to_string(),
                    self.target().render(x),
                )
            })
            .collect()
    }
}

/// Checks that `map` is a chain map out of `cylinder` with endpoints
/// `alpha1` and `alpha2`.
pub fn verify_homotopy(
    cylinder: &Arc<CylinderAlgebra>,
    map: &AlgebraMorphism,
    alpha1: &AlgebraMorphism,
    alpha2: &AlgebraMorphism,
) -> Result<(), HomotopyFailure> {
    let h = match Homotopy::from_map(Arc::clone(cylinder), map.clone()) {
        Ok(h) => h,
        Err(HomotopyError::Verification(f)) => return Err(f),
        Err(_) => return Err(HomotopyFailure::WrongAlgebras),
    };
    let names = cylinder.base().generators();
    for (which, expected) in [(0, alpha1), (1, alpha2)] {
        let got = if which == 0 { h.start() } else { h.end() };
        if got.images().len() != expected.images().len() {
            return Err(HomotopyFailure::WrongAlgebras);
        }
        for (i, (a, b)) in got.images().iter().zip(expected.images()).enumerate() {
            if a != b {
                let generator = names.name_of(i).to_string();
                return Err(if which == 0 {
                    HomotopyFailure::StartMismatch { generator }
                } else {
                    HomotopyFailure::EndMismatch { generator }
                });
            }
        }
    }
    Ok(())
}
