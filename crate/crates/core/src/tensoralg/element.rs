use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Degree, GradedGeneratorSet, TensorError};

/// A tensor monomial: a sequence of generator indices. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn letter(idx: usize) -> Self {
        Word(vec![idx as u32])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered word basis of one degree of T(V), with a reverse index.
#[derive(Debug)]
pub struct Basis {
    degree: Degree,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl Basis {
    pub(crate) fn new(degree: Degree, words: Vec<Word>) -> Self {
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Basis { degree, words, index }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// A homogeneous element of T(V): an integer combination of words of one degree.
///
/// Zero coefficients are never stored, so equality is structural. The
/// element does not carry its generator set; it is read relative to the
/// algebra it was built in.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TensorElement {
    degree: Degree,
    terms: BTreeMap<Word, BigInt>,
}

impl TensorElement {
    pub fn zero(degree: Degree) -> Self {
        TensorElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Self::monomial_unchecked(0, Word::unit(), BigInt::one())
    }

    pub fn generator(gens: &GradedGeneratorSet, idx: usize) -> Self {
        Self::monomial_unchecked(gens.degree_of(idx), Word::letter(idx), BigInt::one())
    }

    /// Builds an element from terms, rejecting words of the wrong degree or
    /// with letters outside `gens`. Like terms are combined.
    pub fn from_terms<I>(gens: &GradedGeneratorSet, degree: Degree, terms: I) -> Result<Self, TensorError>
    where
        I: IntoIterator<Item = (Word, BigInt)>,
    {
        let mut out = Self::zero(degree);
        for (w, c) in terms {
            if let Some(&l) = w.letters().iter().find(|&&l| l as usize >= gens.len()) {
                return Err(TensorError::ForeignLetter(l as usize));
            }
            let d = gens.word_degree(&w);
            if d != degree {
                return Err(TensorError::MixedDegree {
                    expected: degree,
                    found: d,
                });
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub(crate) fn monomial_unchecked(degree: Degree, w: Word, c: BigInt) -> Self {
        let mut out = Self::zero(degree);
        out.add_term(w, c);
        out
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Adds `c * w`, keeping the no-zero-coefficient invariant. The caller
    /// guarantees `w` has this element's degree.
    pub(crate) fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += k * other`. Panics if the degrees differ.
    pub fn add_scaled(&mut self, other: &TensorElement, k: &BigInt) {
        self.assert_same_degree(other);
        if k.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * k);
        }
    }

    pub fn checked_add(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        if self.degree != other.degree {
            return Err(TensorError::MixedDegree {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(self + other)
    }

    pub fn scaled(&self, k: &BigInt) -> TensorElement {
        let mut out = Self::zero(self.degree);
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect();
        }
        out
    }

    /// Tensor product; degrees add.
    pub fn multiply(&self, other: &TensorElement) -> TensorElement {
        let mut out = Self::zero(self.degree + other.degree);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// The length-one part (the image in the indecomposables).
    pub fn linear_part(&self) -> TensorElement {
        TensorElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == 1)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// The part of word length `>= 2`.
    pub fn decomposable_part(&self) -> TensorElement {
        TensorElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() >= 2)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient vector in `gens.word_basis(degree)` order.
    pub fn coordinates(&self, gens: &GradedGeneratorSet) -> Result<Vec<BigInt>, TensorError> {
        let basis = gens.word_basis(self.degree);
        let mut out = vec![BigInt::zero(); basis.len()];
        for (w, c) in &self.terms {
            let i = basis.position(w).ok_or_else(|| TensorError::ForeignWord(format!("{w:?}")))?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn from_coordinates(gens: &GradedGeneratorSet, degree: Degree, coords: &[BigInt]) -> Result<Self, TensorError> {
        let basis = gens.word_basis(degree);
        if coords.len() != basis.len() {
            return Err(TensorError::CoordinateLength {
                expected: basis.len(),
                found: coords.len(),
            });
        }
        let mut out = Self::zero(degree);
        for (w, c) in basis.words().iter().zip(coords) {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Renames letters through `map` (index in the old set -> index in the new
    /// one). Returns `None` if some letter has no image.
    pub fn relabel(&self, map: impl Fn(u32) -> Option<u32>) -> Option<TensorElement> {
        let mut out = Self::zero(self.degree);
        for (w, c) in &self.terms {
            let letters = w.letters().iter().map(|&l| map(l)).collect::<Option<Vec<u32>>>()?;
            out.add_term(Word::from_letters(letters), c.clone());
        }
        Some(out)
    }

    fn assert_same_degree(&self, other: &TensorElement) {
        assert_eq!(
            self.degree, other.degree,
            "mixed-degree arithmetic on tensor elements"
        );
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;

    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;

    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;

    fn neg(self) -> TensorElement {
        self.scaled(&-BigInt::one())
    }
}

impl Mul for &TensorElement {
    type Output = TensorElement;

    fn mul(self, rhs: &TensorElement) -> TensorElement {
        self.multiply(rhs)
    }
}
