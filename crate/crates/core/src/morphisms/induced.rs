use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{AlgebraMorphism, MorphismError};
use crate::exactlinalg::{is_group_isomorphism, is_identity_modulo, is_unimodular, IntMatrix};
use crate::tensoralg::{Degree, Word};

/// The linear part of a morphism, one matrix per generator degree
/// (columns: source generators, rows: target generators, declaration order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndecomposableMap {
    matrices: BTreeMap<Degree, IntMatrix>,
}

impl IndecomposableMap {
    pub fn matrix(&self, d: Degree) -> Option<&IntMatrix> {
        self.matrices.get(&d)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (&Degree, &IntMatrix)> {
        self.matrices.iter()
    }

    /// Every matrix is square and invertible over the integers.
    pub fn is_isomorphism(&self) -> bool {
        self.matrices.values().all(is_unimodular)
    }

    pub fn is_identity(&self) -> bool {
        self.matrices.values().all(|m| *m == IntMatrix::identity(m.rows()))
    }
}

impl AlgebraMorphism {
    pub fn induced_indecomposable(&self) -> IndecomposableMap {
        let sg = self.source.generators();
        let tg = self.target.generators();
        let mut degrees = sg.degrees();
        degrees.extend(tg.degrees());
        degrees.sort_unstable();
        degrees.dedup();
        let matrices = degrees
            .into_iter()
            .map(|d| {
                let cols = sg.indices_in_degree(d);
                let rows = tg.indices_in_degree(d);
                let mut m = IntMatrix::zeros(rows.len(), cols.len());
                for (j, &v) in cols.iter().enumerate() {
                    for (i, &t) in rows.iter().enumerate() {
                        m[(i, j)] = self.images[v].coefficient(&Word::letter(t));
                    }
                }
                (d, m)
            })
            .collect();
        IndecomposableMap { matrices }
    }

    /// H_m(f) in the homology generators of source and target.
    pub fn induced_homology_map(&self, m: Degree) -> Result<IntMatrix, MorphismError> {
        let hs = self.source.homology(m);
        let ht = self.target.homology(m);
        let cols = hs
            .representatives()
            .iter()
            .map(|r| Ok(ht.class_of(&self.target, &self.apply(r))?.coordinates().to_vec()))
            .collect::<Result<Vec<_>, MorphismError>>()?;
        Ok(IntMatrix::from_columns(ht.rank(), &cols))
    }

    /// The induced map on H_m(V, d), with the generator orders of source
    /// and target.
    pub fn indecomposables_homology_map(&self, m: Degree) -> (IntMatrix, Vec<BigInt>, Vec<BigInt>) {
        let hs = self.source.indecomposables_subquotient(m);
        let ht = self.target.indecomposables_subquotient(m);
        let linear = self.induced_indecomposable();
        let empty = IntMatrix::zeros(0, 0);
        let lm = linear.matrix(m).unwrap_or(&empty);
        let cols: Vec<Vec<BigInt>> = hs
            .representatives()
            .iter()
            .map(|r| {
                let image = lm.mul_vec(r).expect("representative lives on source generators");
                ht.coordinates(&image).expect("chain maps send cycles to cycles")
            })
            .collect();
        (
            IntMatrix::from_columns(ht.orders().len(), &cols),
            hs.orders().to_vec(),
            ht.orders().to_vec(),
        )
    }

    fn generator_degrees(&self) -> Vec<Degree> {
        let mut degrees = self.source.generators().degrees();
        degrees.extend(self.target.generators().degrees());
        degrees.sort_unstable();
        degrees.dedup();
        degrees
    }

    /// Whether H_*(V, d) is mapped isomorphically. For free chain algebras
    /// this characterizes homotopy equivalences.
    pub fn is_homotopy_equivalence(&self) -> bool {
        self.generator_degrees().into_iter().all(|m| {
            let (map, so, to) = self.indecomposables_homology_map(m);
            is_group_isomorphism(&map, &so, &to)
        })
    }

    /// Whether the induced map on H_*(V, d) is the identity.
    pub fn induces_identity_on_indecomposables(&self) -> bool {
        self.is_endomorphism()
            && self.generator_degrees().into_iter().all(|m| {
                let (map, _, orders) = self.indecomposables_homology_map(m);
                is_identity_modulo(&map, &orders)
            })
    }
}
