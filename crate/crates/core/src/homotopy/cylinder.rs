use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::HomotopyError;
use crate::dga::ChainAlgebra;
use crate::morphisms::AlgebraMorphism;
use crate::tensoralg::{Generator, GradedGeneratorSet, TensorElement, Word};

/// Which copy of a base generator a cylinder generator is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    /// v′, the start copy.
    Start,
    /// v″, the end copy.
    End,
    /// sv, one degree up.
    Suspension,
}

/// The cylinder T(V′ ⊕ V″ ⊕ sV) of a chain algebra, with
/// D(v′) = i′∂v, D(v″) = i″∂v and D(sv) = v″ − v′ − S(∂v).
///
/// Generators are laid out as all of V′, then V″, then sV, each in the
/// base's declaration order, named `v'`, `v''` and `sv`.
#[derive(Clone, Debug)]
pub struct CylinderAlgebra {
    base: Arc<ChainAlgebra>,
    algebra: Arc<ChainAlgebra>,
    start: AlgebraMorphism,
    end: AlgebraMorphism,
}

impl CylinderAlgebra {
    pub fn new(base: Arc<ChainAlgebra>) -> Result<Self, HomotopyError> {
        let bg = base.generators();
        let n = bg.len();
        let mut gens = Vec::with_capacity(3 * n);
        for suffix in ["'", "''"] {
            gens.extend(bg.generators().iter().map(|g| Generator {
                name: format!("{}{suffix}", g.name),
                degree: g.degree,
            }));
        }
        gens.extend(bg.generators().iter().map(|g| Generator {
            name: format!("s{}", g.name),
            degree: g.degree + 1,
        }));
        let cyl_gens = GradedGeneratorSet::new(gens).map_err(|e| HomotopyError::Cylinder(e.to_string()))?;
        let relabel = |x: &TensorElement, offset: usize| {
            x.relabel(|l| Some(l + offset as u32)).expect("total relabeling")
        };
        let mut differential = Vec::with_capacity(3 * n);
        for offset in [0, n] {
            for i in 0..n {
                differential.push(relabel(base.generator_differential(i), offset));
            }
        }
        for i in 0..n {
            let dv = base.generator_differential(i);
            let mut d = TensorElement::monomial_unchecked(bg.degree_of(i), Word::letter(n + i), BigInt::one());
            d.add_term(Word::letter(i), -BigInt::one());
            d = &d - &suspend(n, bg, dv);
            differential.push(d);
        }
        let algebra = ChainAlgebra::new(cyl_gens, differential)
            .map_err(|e| HomotopyError::Cylinder(e.to_string()))?
            .with_execution(base.execution());
        let algebra = Arc::new(algebra);
        let inclusion = |offset: usize| {
            let images = (0..n).map(|i| algebra.generator(offset + i)).collect();
            AlgebraMorphism::new(Arc::clone(&base), Arc::clone(&algebra), images)
        };
        let start = inclusion(0).map_err(|e| HomotopyError::Cylinder(e.to_string()))?;
        let end = inclusion(n).map_err(|e| HomotopyError::Cylinder(e.to_string()))?;
        Ok(CylinderAlgebra {
            base,
            algebra,
            start,
            end,
        })
    }

    pub fn base(&self) -> &Arc<ChainAlgebra> {
        &self.base
    }

    pub fn algebra(&self) -> &Arc<ChainAlgebra> {
        &self.algebra
    }

    /// i′ : T(V) → cylinder.
    pub fn start_inclusion(&self) -> &AlgebraMorphism {
        &self.start
    }

    /// i″ : T(V) → cylinder.
    pub fn end_inclusion(&self) -> &AlgebraMorphism {
        &self.end
    }

    /// Cylinder index of a copy of base generator `i`.
    pub fn index(&self, part: Part, i: usize) -> usize {
        let n = self.base.generators().len();
        match part {
            Part::Start => i,
            Part::End => n + i,
            Part::Suspension => 2 * n + i,
        }
    }

    /// S(x), the degree +1 map with S(v) = sv and
    /// S(xy) = S(x)·i″(y) + (−1)^{|x|} i′(x)·S(y). S(1) = 0.
    pub fn s_map(&self, x: &TensorElement) -> TensorElement {
        suspend(self.base.generators().len(), self.base.generators(), x)
    }

    /// Checks D∘S + S∘∂ = i″ − i′ on every basis word of degree `m`.
    /// Returns the first failing word, rendered.
    pub fn check_identity(&self, m: crate::tensoralg::Degree) -> Result<(), String> {
        let basis = self.base.generators().word_basis(m);
        for w in basis.words() {
            let x = TensorElement::monomial_unchecked(m, w.clone(), BigInt::one());
            let lhs = &self.algebra.differential(&self.s_map(&x)) + &self.s_map(&self.base.differential(&x));
            let rhs = &self.end.apply(&x) - &self.start.apply(&x);
            if lhs != rhs {
                return Err(self.base.render(&x));
            }
        }
        Ok(())
    }
}

/// S with generator layout V′ = [0, n), V″ = [n, 2n), sV = [2n, 3n).
fn suspend(n: usize, base: &GradedGeneratorSet, x: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(x.degree() + 1);
    for (w, c) in x.terms() {
        let letters = w.letters();
        let mut prefix_degree = 0;
        for (i, &l) in letters.iter().enumerate() {
            let mut word = Vec::with_capacity(letters.len());
            word.extend(letters[..i].iter().copied());
            word.push(2 * n as u32 + l);
            word.extend(letters[i + 1..].iter().map(|&r| n as u32 + r));
            let signed = if prefix_degree % 2 == 0 { c.clone() } else { -c };
            out.add_term(Word::from_letters(word), signed);
            prefix_degree += base.degree_of(l as usize);
        }
    }
    out
}
