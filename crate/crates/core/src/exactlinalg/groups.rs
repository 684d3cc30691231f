use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{smith_normal_form, IntMatrix, LinalgError, SmithDecomposition};

/// Isomorphism type of a finitely generated abelian group:
/// `Z^free_rank + Z/t_1 + ... + Z/t_k` with `t_1 | ... | t_k` and every `t_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct AbelianGroupInvariants {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl AbelianGroupInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds the invariants of `Z^free_rank + sum Z/c_i` for arbitrary cyclic
    /// orders `c_i` (zeros mean `Z`, units are dropped), normalizing to
    /// invariant-factor form.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let k = orders.len();
        let mut relations = IntMatrix::zeros(k, k);
        for (i, c) in orders.iter().enumerate() {
            relations[(i, i)] = c.abs();
        }
        let coker = cokernel_invariants(&relations);
        AbelianGroupInvariants {
            free_rank: free_rank + coker.free_rank,
            torsion: coker.torsion,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of cyclic generators in the invariant-factor presentation.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// `G^k`, i.e. `Hom(Z^k, G)`.
    pub fn power(&self, k: usize) -> Self {
        let orders: Vec<BigInt> = (0..k).flat_map(|_| self.torsion.iter().cloned()).collect();
        Self::from_cyclic_orders(self.free_rank * k, &orders)
    }

    /// Direct sum, renormalized through a Smith normal form of the combined
    /// relation matrix.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroupInvariants {
    /// Renders `Z^r + Z/d1 + Z/d2`; the trivial group is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariants of `Z^rows / im(A)`.
pub fn cokernel_invariants(a: &IntMatrix) -> AbelianGroupInvariants {
    let snf = smith_normal_form(a);
    invariants_from_smith(&snf)
}

fn invariants_from_smith(snf: &SmithDecomposition) -> AbelianGroupInvariants {
    AbelianGroupInvariants {
        free_rank: snf.source_rows() - snf.rank(),
        torsion: snf
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect(),
    }
}

/// Finds an integer `x` with `A x = b`, or `None` when no integer solution exists.
///
/// The returned solution is the canonical particular solution of the Smith
/// change of basis: coordinates along the kernel directions are zero.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: (a.rows(), 1),
            found: (b.len(), 1),
        });
    }
    let snf = smith_normal_form(a);
    Ok(solve_with(&snf, b))
}

pub(crate) fn solve_with(snf: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut c = b.to_vec();
    snf.apply_u(&mut c);
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let s = snf.s();
    let mut y = vec![BigInt::zero(); snf.source_cols()];
    for i in 0..r {
        let (q, rem) = c[i].div_rem(&s[(i, i)]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    snf.apply_v(&mut y);
    Some(y)
}

/// The quotient of the column lattice of `Z` by the column lattice of `B`,
/// with chosen representatives and the data to express lattice elements in
/// the quotient's generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    invariants: AbelianGroupInvariants,
    /// Representatives in ambient coordinates, one per kept generator.
    representatives: Vec<Vec<BigInt>>,
    /// Order of each kept generator; zero for free generators.
    orders: Vec<BigInt>,
    lattice: SmithDecomposition,
    relations: SmithDecomposition,
    /// Indices (in the relation-Smith basis) of the kept generators.
    kept: Vec<usize>,
    ambient_dim: usize,
}

impl Subquotient {
    pub fn invariants(&self) -> &AbelianGroupInvariants {
        &self.invariants
    }

    pub fn representatives(&self) -> &[Vec<BigInt>] {
        &self.representatives
    }

    /// Order of each generator (0 = infinite), torsion generators first in
    /// divisibility order, then the free ones.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Coordinates of the lattice element `z` in the quotient generators,
    /// torsion coordinates reduced into `[0, d)`.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if z.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: (self.ambient_dim, 1),
                found: (z.len(), 1),
            });
        }
        let x = lattice_coordinates(&self.lattice, z).ok_or(LinalgError::NotInLattice)?;
        let mut y = x;
        self.relations.apply_u(&mut y);
        Ok(self
            .kept
            .iter()
            .zip(&self.orders)
            .map(|(&i, d)| reduce_mod(&y[i], d))
            .collect())
    }

    /// Whether `z` (which must lie in the lattice of `Z`) lies in the lattice of `B`.
    pub fn is_trivial_class(&self, z: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(z)?.iter().all(Zero::is_zero))
    }
}

pub(crate) fn reduce_mod(x: &BigInt, d: &BigInt) -> BigInt {
    if d.is_zero() {
        x.clone()
    } else {
        x.mod_floor(d)
    }
}

/// Coordinates of `z` in the lattice basis `{ s_i * (U^{-1})_i : i < rank }`.
fn lattice_coordinates(lattice: &SmithDecomposition, z: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut c = z.to_vec();
    lattice.apply_u(&mut c);
    let r = lattice.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let s = lattice.s();
    let mut out = Vec::with_capacity(r);
    for (i, ci) in c.iter().take(r).enumerate() {
        let (q, rem) = ci.div_rem(&s[(i, i)]);
        if !rem.is_zero() {
            return None;
        }
        out.push(q);
    }
    Some(out)
}

/// Invariants of `span(Z) / span(B)` for column lattices inside `Z^rows`.
///
/// Fails with [`LinalgError::NotInLattice`] when a column of `B` is not in the
/// lattice spanned by the columns of `Z`.
pub fn subquotient_invariants(z: &IntMatrix, b: &IntMatrix) -> Result<Subquotient, LinalgError> {
    if z.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: (z.rows(), b.cols()),
            found: (b.rows(), b.cols()),
        });
    }
    let ambient_dim = z.rows();
    let lattice = smith_normal_form(z);
    let r = lattice.rank();
    // Express B in the lattice basis.
    let mut c_cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        let col = b.column(j);
        c_cols.push(lattice_coordinates(&lattice, &col).ok_or(LinalgError::NotInLattice)?);
    }
    let c = IntMatrix::from_columns(r, &c_cols);
    let relations = smith_normal_form(&c);
    let rc = relations.rank();
    let mut kept = Vec::new();
    let mut orders = Vec::new();
    for (i, d) in relations.invariant_factors().into_iter().enumerate() {
        if !d.is_one() {
            kept.push(i);
            orders.push(d);
        }
    }
    for i in rc..r {
        kept.push(i);
        orders.push(BigInt::zero());
    }
    let s_z = lattice.s();
    let representatives = kept
        .iter()
        .map(|&i| {
            // lattice coordinates x = U_C^{-1} e_i, ambient = sum_k x_k s_k (U_Z^{-1})_k
            let x = relations.u_inv_column(i);
            let mut scaled: Vec<BigInt> = vec![BigInt::zero(); ambient_dim];
            for (k, xk) in x.iter().enumerate() {
                scaled[k] = xk * &s_z[(k, k)];
            }
            lattice.apply_u_inv(&mut scaled);
            scaled
        })
        .collect();
    let invariants = AbelianGroupInvariants {
        free_rank: r - rc,
        torsion: orders.iter().filter(|d| !d.is_zero()).cloned().collect(),
    };
    Ok(Subquotient {
        invariants,
        representatives,
        orders,
        lattice,
        relations,
        kept,
        ambient_dim,
    })
}

/// A `Z`-basis of `ker A` (as columns), read off the Smith decomposition.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let cols: Vec<Vec<BigInt>> = (snf.rank()..a.cols()).map(|j| snf.v_column(j)).collect();
    IntMatrix::from_columns(a.cols(), &cols)
}

/// Whether a square matrix is invertible over the integers.
pub fn is_unimodular(a: &IntMatrix) -> bool {
    if a.rows() != a.cols() {
        return false;
    }
    let snf = smith_normal_form(a);
    snf.rank() == a.rows() && snf.invariant_factors().iter().all(One::is_one)
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if !is_unimodular(a) {
        return Err(LinalgError::NotUnimodular);
    }
    let snf = smith_normal_form(a);
    // A = U^{-1} V^{-1} since S = I, so A^{-1} = V U.
    let cols: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|j| {
            let mut e = vec![BigInt::zero(); a.rows()];
            e[j] = BigInt::one();
            snf.apply_u(&mut e);
            snf.apply_v(&mut e);
            e
        })
        .collect();
    Ok(IntMatrix::from_columns(a.rows(), &cols))
}

/// Whether `map` is an isomorphism between the groups presented by
/// generator orders (0 = free): `source_orders` on the columns and
/// `target_orders` on the rows. The map is assumed well defined.
///
/// Isomorphic groups plus surjectivity suffice, since finitely generated
/// abelian groups are Hopfian.
pub fn is_group_isomorphism(map: &IntMatrix, source_orders: &[BigInt], target_orders: &[BigInt]) -> bool {
    assert_eq!(map.cols(), source_orders.len());
    assert_eq!(map.rows(), target_orders.len());
    let group = |orders: &[BigInt]| {
        let free = orders.iter().filter(|d| d.is_zero()).count();
        let torsion: Vec<BigInt> = orders.iter().filter(|d| !d.is_zero()).cloned().collect();
        AbelianGroupInvariants::from_cyclic_orders(free, &torsion)
    };
    if group(source_orders) != group(target_orders) {
        return false;
    }
    let k = target_orders.len();
    let mut relations = IntMatrix::zeros(k, k);
    for (i, d) in target_orders.iter().enumerate() {
        relations[(i, i)] = d.clone();
    }
    let stacked = map.hstack(&relations).expect("row counts agree");
    cokernel_invariants(&stacked).is_trivial()
}

/// Whether the square `map` is the identity modulo the generator orders.
pub fn is_identity_modulo(map: &IntMatrix, orders: &[BigInt]) -> bool {
    map.rows() == orders.len()
        && map.cols() == orders.len()
        && (0..map.rows()).all(|i| {
            (0..map.cols()).all(|j| {
                let expected = if i == j { BigInt::one() } else { BigInt::zero() };
                reduce_mod(&(&map[(i, j)] - expected), &orders[i]).is_zero()
            })
        })
}
