//! Seeded random inputs: matrices, elements, cycles and valid chain algebras.
//! Everything takes an explicit RNG so runs are reproducible.

use num_bigint::BigInt;
use rand::Rng;

use crate::dga::{ChainAlgebra, SplitChainAlgebra};
use crate::exactlinalg::{kernel_basis, IntMatrix};
use crate::selfequiv::attach_cells;
use crate::tensoralg::{Degree, Generator, GradedGeneratorSet, TensorElement};

pub use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn coef<R: Rng>(rng: &mut R, bound: i64) -> BigInt {
    BigInt::from(rng.gen_range(-bound..=bound))
}

/// Entries uniform in `[-bound, bound]`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = coef(rng, bound);
        }
    }
    m
}

/// A product of random elementary operations and sign changes.
pub fn random_unimodular<R: Rng>(rng: &mut R, k: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(k);
    if k == 0 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..k);
        let j = rng.gen_range(0..k);
        if i == j {
            for c in 0..k {
                m[(i, c)] = -&m[(i, c)];
            }
        } else {
            let f = coef(rng, 2);
            for c in 0..k {
                let add = &m[(j, c)] * &f;
                m[(i, c)] += add;
            }
        }
    }
    m
}

/// Each basis word of degree `m` gets a coefficient in `[-bound, bound]`
/// with probability `density`.
pub fn random_element<R: Rng>(rng: &mut R, gens: &GradedGeneratorSet, m: Degree, bound: i64, density: f64) -> TensorElement {
    let basis = gens.word_basis(m);
    let coords: Vec<BigInt> = (0..basis.len())
        .map(|_| if rng.gen_bool(density) { coef(rng, bound) } else { BigInt::from(0) })
        .collect();
    TensorElement::from_coordinates(gens, m, &coords).expect("coordinates match the basis")
}

/// A random integer combination of a kernel basis of ∂_m.
pub fn random_cycle<R: Rng>(rng: &mut R, alg: &ChainAlgebra, m: Degree, bound: i64) -> TensorElement {
    let gens = alg.generators();
    let k = kernel_basis(&alg.differential_matrix(m));
    let mut coords = vec![BigInt::from(0); k.rows()];
    for j in 0..k.cols() {
        let c = coef(rng, bound);
        for (i, x) in coords.iter_mut().enumerate() {
            *x += &k[(i, j)] * &c;
        }
    }
    TensorElement::from_coordinates(gens, m, &coords).expect("kernel vectors match the basis")
}

/// A validated algebra with `1..=max_gens` generators in degrees
/// `2..=max_degree`. Each ∂v is a random cycle in the algebra on the
/// generators of lower degree, so ∂² = 0 holds by construction.
pub fn random_algebra<R: Rng>(rng: &mut R, max_gens: usize, max_degree: Degree) -> ChainAlgebra {
    let count = rng.gen_range(1..=max_gens.max(1));
    let mut degrees: Vec<Degree> = (0..count).map(|_| rng.gen_range(2..=max_degree.max(2))).collect();
    degrees.sort_unstable();
    let mut gens: Vec<Generator> = Vec::new();
    let mut differential: Vec<TensorElement> = Vec::new();
    let mut current = ChainAlgebra::with_trivial_differential(GradedGeneratorSet::empty());
    let mut start = 0;
    while start < degrees.len() {
        let d = degrees[start];
        let end = start + degrees[start..].iter().take_while(|&&e| e == d).count();
        for k in start..end {
            let dv = if rng.gen_bool(0.7) {
                random_cycle(rng, &current, d - 1, 2)
            } else {
                TensorElement::zero(d - 1)
            };
            gens.push(Generator {
                name: format!("g{k}"),
                degree: d,
            });
            differential.push(dv);
        }
        current = ChainAlgebra::new(
            GradedGeneratorSet::new(gens.clone()).expect("fresh names"),
            differential.clone(),
        )
        .expect("differentials are cycles of lower generators");
        start = end;
    }
    current
}

/// A random base with generators of degree `<= n` and `1..=max_top` top
/// generators of degree `q` attached along random cycles.
pub fn random_split<R: Rng>(rng: &mut R, max_base_gens: usize, n: Degree, q: Degree, max_top: usize) -> SplitChainAlgebra {
    loop {
        let base = random_algebra(rng, max_base_gens, n);
        if base.generators().max_degree() != Some(n) {
            continue;
        }
        let k = rng.gen_range(1..=max_top.max(1));
        let attachments: Vec<TensorElement> = (0..k).map(|_| random_cycle(rng, &base, q - 1, 2)).collect();
        return attach_cells(&base, q, &attachments).expect("attachments are cycles");
    }
}
