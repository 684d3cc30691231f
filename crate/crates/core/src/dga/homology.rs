use num_bigint::BigInt;
use num_traits::Zero;

use super::{ChainAlgebra, DgaError};
use crate::exactlinalg::{kernel_basis, reduce_mod, subquotient_invariants, AbelianGroupInvariants, Subquotient};
use crate::tensoralg::{Degree, TensorElement};

/// H_m(T(V), ∂) with chosen cycle representatives.
///
/// Generators are ordered torsion first (in divisibility order), then free.
#[derive(Debug)]
pub struct HomologyGroup {
    degree: Degree,
    quotient: Subquotient,
    representatives: Vec<TensorElement>,
}

/// Coordinates of a homology class in its group's generators, torsion
/// entries reduced into `[0, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    degree: Degree,
    coordinates: Vec<BigInt>,
}

impl HomologyClass {
    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn coordinates(&self) -> &[BigInt] {
        &self.coordinates
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

impl HomologyGroup {
    pub(crate) fn compute(alg: &ChainAlgebra, m: Degree) -> Self {
        let gens = alg.generators();
        let outgoing = alg.differential_matrix(m);
        let incoming = alg.differential_matrix(m + 1);
        let cycles = kernel_basis(&outgoing);
        let quotient = subquotient_invariants(&cycles, &incoming).expect("boundaries are cycles when ∂² = 0");
        let representatives = quotient
            .representatives()
            .iter()
            .map(|r| TensorElement::from_coordinates(gens, m, r).expect("representative has basis length"))
            .collect();
        HomologyGroup {
            degree: m,
            quotient,
            representatives,
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn invariants(&self) -> &AbelianGroupInvariants {
        self.quotient.invariants()
    }

    pub fn representatives(&self) -> &[TensorElement] {
        &self.representatives
    }

    /// Order of each generator, 0 for free generators.
    pub fn orders(&self) -> &[BigInt] {
        self.quotient.orders()
    }

    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    /// The class of the cycle `z`; fails if `z` is not a cycle.
    pub fn class_of(&self, alg: &ChainAlgebra, z: &TensorElement) -> Result<HomologyClass, DgaError> {
        if z.degree() != self.degree {
            return Err(DgaError::DegreeMismatch {
                expected: self.degree,
                found: z.degree(),
            });
        }
        if !alg.is_cycle(z) {
            return Err(DgaError::NotACycle(self.degree));
        }
        let coords = z.coordinates(alg.generators())?;
        Ok(HomologyClass {
            degree: self.degree,
            coordinates: self.quotient.coordinates(&coords)?,
        })
    }

    /// The class with the given coordinates, reduced canonically.
    pub fn class(&self, coordinates: &[BigInt]) -> HomologyClass {
        assert_eq!(coordinates.len(), self.rank(), "coordinate count");
        HomologyClass {
            degree: self.degree,
            coordinates: self.reduce(coordinates),
        }
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn reduce(&self, coordinates: &[BigInt]) -> Vec<BigInt> {
        coordinates
            .iter()
            .zip(self.orders())
            .map(|(x, d)| reduce_mod(x, d))
            .collect()
    }

    /// The cycle Σ c_i rep_i.
    pub fn cycle_for(&self, coordinates: &[BigInt]) -> TensorElement {
        let mut out = TensorElement::zero(self.degree);
        for (r, c) in self.representatives.iter().zip(coordinates) {
            out.add_scaled(r, c);
        }
        out
    }

    pub fn zero_class(&self) -> HomologyClass {
        HomologyClass {
            degree: self.degree,
            coordinates: vec![BigInt::zero(); self.rank()],
        }
    }
}
