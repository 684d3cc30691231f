//! JSON documents for algebras and morphisms.
//!
//! An algebra document:
//!
//! ```json
//! {
//!   "ring": "Z",
//!   "generators": [{"name": "x", "degree": 2}, {"name": "y", "degree": 3}],
//!   "differential": {"y": [{"coef": 1, "word": ["x"]}]},
//!   "split": {"q": 3, "n": 2}
//! }
//! ```
//!
//! Generator order is the basis order. Generators missing from
//! `differential` are cycles. A morphism document has optional `source` and
//! `target` (a path relative to the document, or an inline algebra
//! document) and `images`, keyed by source generator name; unlisted
//! generators map to the target generator of the same name.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use ahcalc_core::dga::{ChainAlgebra, DgaError, SplitChainAlgebra};
use ahcalc_core::morphisms::{AlgebraMorphism, MorphismError};
use ahcalc_core::tensoralg::{Degree, GradedGeneratorSet, TensorElement, TensorError, Word};
use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::CliError;

/// An integer coefficient. Written as a JSON number when it fits in 64 bits,
/// otherwise as a decimal string; both forms are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coef(pub BigInt);

impl Serialize for Coef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(k) => s.serialize_i64(k),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct CoefVisitor;
        impl Visitor<'_> for CoefVisitor {
            type Value = Coef;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coef, E> {
                Ok(Coef(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coef, E> {
                Ok(Coef(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coef, E> {
                v.trim().parse().map(Coef).map_err(|_| E::custom(format!("'{v}' is not an integer")))
            }
        }
        d.deserialize_any(CoefVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coef: Coef,
    pub word: Vec<String>,
}

pub type TermList = Vec<Term>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: Degree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitEntry {
    pub q: Degree,
    pub n: Degree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub ring: String,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub differential: BTreeMap<String, TermList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(Box<AlgebraDocument>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<AlgebraRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<AlgebraRef>,
    pub images: BTreeMap<String, TermList>,
}

pub enum Document {
    Algebra(AlgebraDocument),
    Morphism(MorphismDocument),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Deserializes with the failing field path and line/column in the message.
fn from_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            CliError::Parse(format!("{origin}: {inner}"))
        } else {
            CliError::Parse(format!("{origin}: at {path}: {inner}"))
        }
    })?;
    de.end().map_err(|e| CliError::Parse(format!("{origin}: {e}")))?;
    Ok(value)
}

pub fn parse_algebra_document(text: &str, origin: &str) -> Result<AlgebraDocument, CliError> {
    from_json(text, origin)
}

pub fn parse_morphism_document(text: &str, origin: &str) -> Result<MorphismDocument, CliError> {
    from_json(text, origin)
}

/// Reads either kind of document; a top-level `images` field marks a morphism.
pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = read(path)?;
    let origin = path.display().to_string();
    let probe: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{origin}: {e}")))?;
    if probe.get("images").is_some() {
        Ok(Document::Morphism(parse_morphism_document(&text, &origin)?))
    } else {
        Ok(Document::Algebra(parse_algebra_document(&text, &origin)?))
    }
}

pub fn read_algebra_document(path: &Path) -> Result<AlgebraDocument, CliError> {
    parse_algebra_document(&read(path)?, &path.display().to_string())
}

pub fn read_morphism_document(path: &Path) -> Result<MorphismDocument, CliError> {
    parse_morphism_document(&read(path)?, &path.display().to_string())
}

fn tensor_error(at: &str, e: TensorError) -> CliError {
    match e {
        TensorError::DegreeTooLow { .. } | TensorError::MixedDegree { .. } => CliError::Validation(format!("{at}: {e}")),
        _ => CliError::Parse(format!("{at}: {e}")),
    }
}

/// Reads a term list against `gens` as an element of degree `degree`.
pub fn element_from_terms(gens: &GradedGeneratorSet, degree: Degree, terms: &[Term], at: &str) -> Result<TensorElement, CliError> {
    let mut parsed = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let letters = t
            .word
            .iter()
            .enumerate()
            .map(|(k, name)| {
                gens.index_of(name)
                    .map(|x| x as u32)
                    .ok_or_else(|| CliError::Parse(format!("{at}[{i}].word[{k}]: unknown generator '{name}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        parsed.push((Word::from_letters(letters), t.coef.0.clone()));
    }
    TensorElement::from_terms(gens, degree, parsed).map_err(|e| tensor_error(at, e))
}

pub fn terms_of(gens: &GradedGeneratorSet, x: &TensorElement) -> TermList {
    x.terms()
        .map(|(w, c)| Term {
            coef: Coef(c.clone()),
            word: w.letters().iter().map(|&l| gens.name_of(l as usize).to_string()).collect(),
        })
        .collect()
}

impl AlgebraDocument {
    pub fn to_algebra(&self) -> Result<ChainAlgebra, CliError> {
        if self.ring != "Z" {
            return Err(CliError::Parse(format!("ring: expected \"Z\", found \"{}\"", self.ring)));
        }
        let pairs: Vec<(&str, Degree)> = self.generators.iter().map(|g| (g.name.as_str(), g.degree)).collect();
        let gens = GradedGeneratorSet::from_pairs(&pairs).map_err(|e| tensor_error("generators", e))?;
        let mut differential: Vec<TensorElement> =
            (0..gens.len()).map(|i| TensorElement::zero(gens.degree_of(i) - 1)).collect();
        for (name, terms) in &self.differential {
            let at = format!("differential.{name}");
            let i = gens
                .index_of(name)
                .ok_or_else(|| CliError::Parse(format!("{at}: unknown generator '{name}'")))?;
            differential[i] = element_from_terms(&gens, gens.degree_of(i) - 1, terms, &at)?;
        }
        ChainAlgebra::new(gens, differential).map_err(dga_error)
    }

    /// The algebra together with its declared split, if any.
    pub fn to_split(&self) -> Result<(Arc<ChainAlgebra>, Option<SplitChainAlgebra>), CliError> {
        let alg = Arc::new(self.to_algebra()?);
        let split = match self.split {
            Some(s) => Some(split_at(&alg, s.q, s.n)?),
            None => None,
        };
        Ok((alg, split))
    }

    /// Canonical document: terms combined and ordered, zero differentials dropped.
    pub fn from_algebra(alg: &ChainAlgebra, split: Option<SplitEntry>) -> Self {
        let gens = alg.generators();
        AlgebraDocument {
            ring: "Z".to_string(),
            generators: (0..gens.len())
                .map(|i| GeneratorEntry {
                    name: gens.name_of(i).to_string(),
                    degree: gens.degree_of(i),
                })
                .collect(),
            differential: (0..gens.len())
                .filter(|&i| !alg.generator_differential(i).is_zero())
                .map(|i| (gens.name_of(i).to_string(), terms_of(gens, alg.generator_differential(i))))
                .collect(),
            split,
        }
    }
}

pub fn split_at(alg: &Arc<ChainAlgebra>, q: Degree, n: Degree) -> Result<SplitChainAlgebra, CliError> {
    SplitChainAlgebra::new(Arc::clone(alg), q, n).map_err(|e| CliError::Shape(format!("split (q = {q}, n = {n}): {e}")))
}

pub fn dga_error(e: DgaError) -> CliError {
    match e {
        DgaError::Tensor(t) => tensor_error("algebra", t),
        DgaError::UnknownGenerator(_) => CliError::Parse(e.to_string()),
        DgaError::NotSquareZero(v) => CliError::Validation(format!(
            "differential does not square to zero at generator '{}': d(d({})) = {}",
            v.generator, v.generator, v.residue
        )),
        DgaError::WrongDegree { .. } | DgaError::DegreeMismatch { .. } | DgaError::NotACycle(_) => {
            CliError::Validation(e.to_string())
        }
        DgaError::Linalg(_) => CliError::Internal(e.to_string()),
    }
}

pub fn morphism_error(e: MorphismError) -> CliError {
    match e {
        MorphismError::Dga(d) => dga_error(d),
        MorphismError::Tensor(t) => tensor_error("images", t),
        MorphismError::ChainCondition { .. } | MorphismError::ImageDegree { .. } => CliError::Validation(e.to_string()),
        MorphismError::MissingImage(_) => CliError::Parse(e.to_string()),
        MorphismError::Linalg(_) | MorphismError::TooManyCandidates(_) => CliError::Internal(e.to_string()),
        _ => CliError::Shape(e.to_string()),
    }
}

fn resolve(r: &AlgebraRef, base_dir: &Path) -> Result<AlgebraDocument, CliError> {
    match r {
        AlgebraRef::Inline(doc) => Ok((**doc).clone()),
        AlgebraRef::Path(p) => {
            let path = PathBuf::from(p);
            let path = if path.is_absolute() { path } else { base_dir.join(path) };
            read_algebra_document(&path)
        }
    }
}

impl MorphismDocument {
    /// Builds the morphism between the referenced algebras; `base_dir`
    /// anchors relative references.
    pub fn to_morphism(&self, base_dir: &Path) -> Result<(AlgebraMorphism, AlgebraDocument), CliError> {
        let source_ref = self
            .source
            .as_ref()
            .ok_or_else(|| CliError::Parse("morphism document has no 'source'".to_string()))?;
        let source_doc = resolve(source_ref, base_dir)?;
        let source = Arc::new(source_doc.to_algebra()?);
        let target = match &self.target {
            Some(t) => Arc::new(resolve(t, base_dir)?.to_algebra()?),
            None => Arc::clone(&source),
        };
        Ok((self.morphism_between(source, target)?, source_doc))
    }

    /// Reads the images against the given algebras, ignoring the document's
    /// own references.
    pub fn morphism_between(&self, source: Arc<ChainAlgebra>, target: Arc<ChainAlgebra>) -> Result<AlgebraMorphism, CliError> {
        let sg = source.generators();
        if let Some(name) = self.images.keys().find(|k| sg.index_of(k).is_none()) {
            return Err(CliError::Parse(format!("images.{name}: unknown source generator '{name}'")));
        }
        let images = (0..sg.len())
            .map(|i| {
                let name = sg.name_of(i);
                match self.images.get(name) {
                    Some(terms) => element_from_terms(target.generators(), sg.degree_of(i), terms, &format!("images.{name}")),
                    None => target
                        .element(name)
                        .ok_or_else(|| CliError::Parse(format!("images: no image for '{name}' and no target generator of that name"))),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        AlgebraMorphism::new(source, target, images).map_err(morphism_error)
    }

    /// Canonical document listing every generator image.
    pub fn from_morphism(f: &AlgebraMorphism) -> Self {
        let sg = f.source().generators();
        MorphismDocument {
            source: None,
            target: None,
            images: (0..sg.len())
                .map(|i| (sg.name_of(i).to_string(), terms_of(f.target().generators(), f.image(i))))
                .collect(),
        }
    }
}
