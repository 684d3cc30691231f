//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use ahcalc_core::dga::{ChainAlgebra, SplitChainAlgebra};
use ahcalc_core::exactlinalg::IntMatrix;
use ahcalc_core::homotopy::{CylinderAlgebra, Homotopy};
use ahcalc_core::morphisms::{AlgebraMorphism, DegreeAutomorphism};
use ahcalc_core::random::{random_cycle, random_element, random_split, ChaCha8Rng};
use ahcalc_core::selfequiv::{attach_cells, PairCandidate};
use ahcalc_core::tensoralg::{Degree, Generator, GradedGeneratorSet, TensorElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

// ---- determinant-divisor oracle ----

pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let k = m.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * determinant(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k×k minors.
pub fn determinant_divisor(a: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(a.rows(), k) {
        for cols in subsets(a.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
            g = g.gcd(&determinant(&sub));
        }
    }
    g
}

/// (rank, invariant factors) from determinant divisors.
pub fn invariant_factors_by_minors(a: &IntMatrix) -> (usize, Vec<BigInt>) {
    let mut factors = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=a.rows().min(a.cols()) {
        let d = determinant_divisor(a, k);
        if d.is_zero() {
            break;
        }
        factors.push(&d / &prev);
        prev = d;
    }
    (factors.len(), factors)
}

/// Fraction-free (Bareiss) elimination rank.
pub fn bareiss_rank(a: &IntMatrix) -> usize {
    let mut m = a.to_rows();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = (&m[rank][c] * &m[r][cc] - &m[r][c] * &m[rank][cc]) / &prev;
                m[r][cc] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

// ---- algebras ----

pub fn trivial_algebra(pairs: &[(&str, Degree)]) -> ChainAlgebra {
    ChainAlgebra::with_trivial_differential(GradedGeneratorSet::from_pairs(pairs).unwrap())
}

/// A random trivial-differential split algebra: base generators of degree
/// at most `n` with top degree `n`, one or two generators of degree `q`.
pub fn random_trivial_split(rng: &mut ChaCha8Rng, n: Degree, q: Degree) -> SplitChainAlgebra {
    let count = rng.gen_range(1..=3);
    let mut gens: Vec<Generator> = (0..count)
        .map(|k| Generator {
            name: format!("b{k}"),
            degree: rng.gen_range(2..=n),
        })
        .collect();
    gens[0].degree = n;
    gens.sort_by_key(|g| g.degree);
    let base = ChainAlgebra::with_trivial_differential(GradedGeneratorSet::new(gens).unwrap());
    let tops = rng.gen_range(1..=2);
    let zeros = vec![TensorElement::zero(q - 1); tops];
    attach_cells(&base, q, &zeros).unwrap()
}

/// α(v) = v + z_v on V_q and the identity on the base.
pub fn perturbed_identity(sa: &SplitChainAlgebra, z: &[TensorElement]) -> AlgebraMorphism {
    let full = sa.full();
    let mut images: Vec<TensorElement> = (0..full.generators().len()).map(|i| full.generator(i)).collect();
    for (&v, zv) in sa.top_generators().iter().zip(z) {
        images[v] = &images[v] + &sa.embed(zv);
    }
    AlgebraMorphism::new(Arc::clone(full), Arc::clone(full), images).unwrap()
}

/// A homotopy F : α_n ≃ id on the base built from random suspension values,
/// and a kernel-shaped α with α = α_n on the base and
/// α(v) = v − F(S∂v) + c_v on V_q for random cycles c_v.
pub fn kernel_shaped(rng: &mut ChaCha8Rng, sa: &SplitChainAlgebra) -> (AlgebraMorphism, Homotopy, Vec<TensorElement>) {
    let base = sa.base();
    let gens = base.generators();
    let cylinder = Arc::new(CylinderAlgebra::new(Arc::clone(base)).unwrap());
    let suspension: Vec<TensorElement> = (0..gens.len())
        .map(|i| random_element(rng, gens, gens.degree_of(i) + 1, 2, 0.5))
        .collect();
    let identity = AlgebraMorphism::identity(Arc::clone(base));
    let witness = Homotopy::from_suspension_values(cylinder, &identity, &suspension).unwrap();
    let full = sa.full();
    let mut images: Vec<TensorElement> = (0..full.generators().len()).map(|i| full.generator(i)).collect();
    for (b, &f) in sa.base_to_full().iter().enumerate() {
        images[f] = sa.embed(witness.start().image(b));
    }
    let mut cycles = Vec::new();
    for &v in sa.top_generators() {
        let dv = sa.restrict(full.generator_differential(v)).unwrap();
        let correction = witness.map().apply(&witness.cylinder().s_map(&dv));
        let c = random_cycle(rng, base, sa.q(), 2);
        images[v] = &(&images[v] - &sa.embed(&correction)) + &sa.embed(&c);
        cycles.push(c);
    }
    let alpha = AlgebraMorphism::new(Arc::clone(full), Arc::clone(full), images).unwrap();
    (alpha, witness, cycles)
}

// ---- pairs (ξ, α_n) ----

/// The sign automorphism g ↦ ε_g g of the base, if it is a chain map.
pub fn sign_map(base: &Arc<ChainAlgebra>, signs: &[i64]) -> Option<AlgebraMorphism> {
    let images = signs.iter().enumerate().map(|(i, &s)| base.generator(i).scaled(&big(s))).collect();
    AlgebraMorphism::new(Arc::clone(base), Arc::clone(base), images).ok()
}

/// A split algebra with an automorphism σ of the base and attachments c_j
/// with σ(c_j) = s_j c_j exactly, so (diag(s), σ') is a member for every σ'
/// homotopic to σ.
pub struct MemberFixture {
    pub sa: SplitChainAlgebra,
    pub sigma: AlgebraMorphism,
    pub signs: Vec<i64>,
}

pub fn member_fixture(rng: &mut ChaCha8Rng) -> MemberFixture {
    loop {
        let n = rng.gen_range(2..=4);
        let q = rng.gen_range(n + 1..=7);
        let probe = random_split(rng, 3, n, q, 1);
        let base = Arc::clone(probe.base());
        let k = base.generators().len();
        let eps: Vec<i64> = (0..k).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        let Some(sigma) = sign_map(&base, &eps) else { continue };
        let tops = rng.gen_range(1..=2);
        let mut attachments = Vec::new();
        let mut signs = Vec::new();
        for _ in 0..tops {
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            let x = random_cycle(rng, &base, q - 1, 2);
            let c = &x + &sigma.apply(&x).scaled(&big(s));
            attachments.push(c);
            signs.push(s);
        }
        let sa = attach_cells(&base, q, &attachments).unwrap();
        // Rebase σ on the Arc held by the new split algebra.
        let sigma = sigma.with_algebras(Arc::clone(sa.base()), Arc::clone(sa.base())).unwrap();
        return MemberFixture { sa, sigma, signs };
    }
}

/// σ composed with a random self-map homotopic to the identity.
pub fn perturb_by_homotopy(rng: &mut ChaCha8Rng, base: &Arc<ChainAlgebra>, sigma: &AlgebraMorphism) -> AlgebraMorphism {
    let gens = base.generators();
    let cylinder = Arc::new(CylinderAlgebra::new(Arc::clone(base)).unwrap());
    let suspension: Vec<TensorElement> = (0..gens.len())
        .map(|i| random_element(rng, gens, gens.degree_of(i) + 1, 1, 0.4))
        .collect();
    let identity = AlgebraMorphism::identity(Arc::clone(base));
    let f = Homotopy::from_suspension_values(cylinder, &identity, &suspension).unwrap();
    f.start().compose(sigma).unwrap()
}

/// diag(signs), plus random off-diagonal entries in the first row whose
/// attachment is a boundary (B annihilates that row, and one extra row keeps
/// the determinant ±1).
pub fn member_xi(rng: &mut ChaCha8Rng, fx: &MemberFixture) -> DegreeAutomorphism {
    let k = fx.signs.len();
    let mut m = IntMatrix::zeros(k, k);
    for (j, &s) in fx.signs.iter().enumerate() {
        m[(j, j)] = big(s);
    }
    let full = fx.sa.full();
    let boundary_row = fx.sa.top_generators().iter().position(|&v| {
        let c = fx.sa.restrict(full.generator_differential(v)).unwrap();
        is_boundary(fx.sa.base(), &c)
    });
    if let Some(row) = boundary_row {
        for col in (0..k).filter(|&c| c != row) {
            m[(row, col)] = big(rng.gen_range(-2..=2));
        }
    }
    DegreeAutomorphism::new(fx.sa.q(), m).unwrap()
}

/// Decides z ∈ im ∂ by integer solving against the differential matrix.
pub fn is_boundary(alg: &ChainAlgebra, z: &TensorElement) -> bool {
    let m = alg.differential_matrix(z.degree() + 1);
    let coords = z.coordinates(alg.generators()).unwrap();
    ahcalc_core::exactlinalg::solve_integer(&m, &coords).unwrap().is_some()
}

/// Chain-level membership oracle: every α_n(∂v_j) − Σ_i ξ_ij ∂v_i is a boundary.
pub fn member_by_boundaries(sa: &SplitChainAlgebra, cand: &PairCandidate) -> bool {
    let full = sa.full();
    let d: Vec<TensorElement> = sa
        .top_generators()
        .iter()
        .map(|&v| sa.restrict(full.generator_differential(v)).unwrap())
        .collect();
    (0..d.len()).all(|j| {
        let mut r = cand.alpha_n.apply(&d[j]);
        for (i, di) in d.iter().enumerate() {
            r.add_scaled(di, &-&cand.xi.matrix()[(i, j)]);
        }
        is_boundary(sa.base(), &r)
    })
}

pub fn abs_all(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.abs()).collect()
}
