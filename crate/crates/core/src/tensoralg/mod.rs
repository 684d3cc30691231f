//! The free graded tensor algebra T(V) on a 1-connected generator set.

mod element;
mod generators;
mod text;

pub use element::{Basis, TensorElement, Word};
pub use generators::{Generator, GradedGeneratorSet};

pub type Degree = i32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("generator '{name}' has degree {degree}; generators must have degree >= 2")]
    DegreeTooLow { name: String, degree: Degree },
    #[error("duplicate generator name '{0}'")]
    DuplicateName(String),
    #[error("invalid generator name '{0}'")]
    InvalidName(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("letter {0} is not a generator of this set")]
    ForeignLetter(usize),
    #[error("word {0} is not in the basis")]
    ForeignWord(String),
    #[error("mixed degrees: expected {expected}, found {found}")]
    MixedDegree { expected: Degree, found: Degree },
    #[error("coordinate vector has length {found}, basis has {expected}")]
    CoordinateLength { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    #[test]
    fn basis_single_generator() {
        let g = GradedGeneratorSet::from_pairs(&[("v", 3)]).unwrap();
        assert_eq!(g.word_basis(9).len(), 1);
        assert_eq!(g.word_basis(9).words()[0].len(), 3);
        assert!(g.word_basis(7).is_empty());
        assert_eq!(g.word_basis(0).words(), &[Word::unit()]);
        assert!(g.word_basis(-1).is_empty());
    }

    #[test]
    fn basis_two_generators() {
        let g = GradedGeneratorSet::from_pairs(&[("a", 2), ("b", 3)]).unwrap();
        let b5 = g.word_basis(5);
        assert_eq!(b5.words(), &[Word::from_letters(vec![0, 1]), Word::from_letters(vec![1, 0])]);
        assert_eq!(g.word_basis(4).words(), &[Word::from_letters(vec![0, 0])]);
    }

    #[test]
    fn empty_set_is_the_ground_ring() {
        let g = GradedGeneratorSet::empty();
        assert_eq!(g.word_basis(0).len(), 1);
        assert!(g.word_basis(4).is_empty());
    }

    #[test]
    fn rejects_low_degree_and_duplicates() {
        assert!(matches!(
            GradedGeneratorSet::from_pairs(&[("a", 1)]),
            Err(TensorError::DegreeTooLow { .. })
        ));
        assert!(matches!(
            GradedGeneratorSet::from_pairs(&[("a", 2), ("a", 3)]),
            Err(TensorError::DuplicateName(_))
        ));
    }

    #[test]
    fn multiply_and_linear_part() {
        let g = GradedGeneratorSet::from_pairs(&[("a", 2), ("b", 2), ("u", 4), ("v", 4)]).unwrap();
        let a = TensorElement::generator(&g, 0);
        let unit = TensorElement::unit();
        assert_eq!(unit.multiply(&a), a);
        let sum = g.parse_element("a + 2*b", None).unwrap();
        assert_eq!(g.render(&sum.multiply(&a)), "a*a + 2*b*a");

        let x = g.parse_element("3*u + 2*v - a*a", None).unwrap();
        assert_eq!(g.render(&x.linear_part()), "3*u + 2*v");
        assert_eq!(g.render(&x.decomposable_part()), "-a*a");
        assert!(g.parse_element("a*b", None).unwrap().linear_part().is_zero());
    }

    #[test]
    fn coordinates_examples() {
        let g = GradedGeneratorSet::from_pairs(&[("a", 2), ("b", 3)]).unwrap();
        let x = g.parse_element("a*b - b*a", None).unwrap();
        assert_eq!(x.coordinates(&g).unwrap(), vec![BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(
            TensorElement::zero(5).coordinates(&g).unwrap(),
            vec![BigInt::from(0), BigInt::from(0)]
        );
        let other = GradedGeneratorSet::from_pairs(&[("a", 2)]).unwrap();
        assert!(x.coordinates(&other).is_err());
    }
}
