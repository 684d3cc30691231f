use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use super::{Basis, Degree, TensorError, Word};

/// A named generator of the free graded module V.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: Degree,
}

/// The free graded module V: generators in declaration order, each of degree >= 2.
///
/// Declaration order is the basis order used for every word basis built from
/// this set. Word bases are cached per degree.
pub struct GradedGeneratorSet {
    gens: Vec<Generator>,
    by_name: HashMap<String, u32>,
    by_degree: BTreeMap<Degree, Vec<u32>>,
    bases: RwLock<HashMap<Degree, Arc<Basis>>>,
}

impl GradedGeneratorSet {
    pub fn new(gens: Vec<Generator>) -> Result<Self, TensorError> {
        let mut by_name = HashMap::new();
        let mut by_degree: BTreeMap<Degree, Vec<u32>> = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.degree < 2 {
                return Err(TensorError::DegreeTooLow {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
            if !is_valid_name(&g.name) {
                return Err(TensorError::InvalidName(g.name.clone()));
            }
            if by_name.insert(g.name.clone(), i as u32).is_some() {
                return Err(TensorError::DuplicateName(g.name.clone()));
            }
            by_degree.entry(g.degree).or_default().push(i as u32);
        }
        Ok(GradedGeneratorSet {
            gens,
            by_name,
            by_degree,
            bases: RwLock::new(HashMap::new()),
        })
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs(pairs: &[(&str, Degree)]) -> Result<Self, TensorError> {
        Self::new(
            pairs
                .iter()
                .map(|&(name, degree)| Generator {
                    name: name.to_string(),
                    degree,
                })
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Self::new(Vec::new()).expect("empty set is valid")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, idx: usize) -> &Generator {
        &self.gens[idx]
    }

    pub fn degree_of(&self, idx: usize) -> Degree {
        self.gens[idx].degree
    }

    pub fn name_of(&self, idx: usize) -> &str {
        &self.gens[idx].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).map(|&i| i as usize)
    }

    /// Generator indices of degree `d`, in declaration order.
    pub fn indices_in_degree(&self, d: Degree) -> Vec<usize> {
        self.by_degree
            .get(&d)
            .map(|v| v.iter().map(|&i| i as usize).collect())
            .unwrap_or_default()
    }

    /// Degrees that carry at least one generator, ascending.
    pub fn degrees(&self) -> Vec<Degree> {
        self.by_degree.keys().copied().collect()
    }

    pub fn max_degree(&self) -> Option<Degree> {
        self.by_degree.keys().next_back().copied()
    }

    pub fn word_degree(&self, w: &Word) -> Degree {
        w.letters().iter().map(|&l| self.gens[l as usize].degree).sum()
    }

    /// All words of total degree `m`, ordered by length and then
    /// lexicographically by generator index. `m = 0` gives the unit word only.
    pub fn word_basis(&self, m: Degree) -> Arc<Basis> {
        if let Some(b) = self.bases.read().expect("basis cache poisoned").get(&m) {
            return Arc::clone(b);
        }
        let basis = Arc::new(Basis::new(m, self.enumerate_words(m)));
        self.bases
            .write()
            .expect("basis cache poisoned")
            .entry(m)
            .or_insert(basis)
            .clone()
    }

    fn enumerate_words(&self, m: Degree) -> Vec<Word> {
        let mut out = Vec::new();
        if m < 0 {
            return out;
        }
        let mut prefix = Vec::new();
        self.extend_words(m, &mut prefix, &mut out);
        out.sort();
        out
    }

    fn extend_words(&self, remaining: Degree, prefix: &mut Vec<u32>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word::from_letters(prefix.clone()));
            return;
        }
        for (i, g) in self.gens.iter().enumerate() {
            if g.degree <= remaining {
                prefix.push(i as u32);
                self.extend_words(remaining - g.degree, prefix, out);
                prefix.pop();
            }
        }
    }

    /// The sub-set of generators of degree `<= n`, with the index map into `self`.
    pub fn truncated(&self, n: Degree) -> (GradedGeneratorSet, Vec<usize>) {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.gens[i].degree <= n).collect();
        let gens = keep.iter().map(|&i| self.gens[i].clone()).collect();
        (GradedGeneratorSet::new(gens).expect("subset of a valid set"), keep)
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl Clone for GradedGeneratorSet {
    fn clone(&self) -> Self {
        GradedGeneratorSet {
            gens: self.gens.clone(),
            by_name: self.by_name.clone(),
            by_degree: self.by_degree.clone(),
            bases: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for GradedGeneratorSet {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for GradedGeneratorSet {}

impl std::fmt::Debug for GradedGeneratorSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(self.gens.iter().map(|g| format!("{}:{}", g.name, g.degree)))
            .finish()
    }
}
