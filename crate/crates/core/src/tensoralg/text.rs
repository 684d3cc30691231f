//! Compact text form of tensor elements: `2*x*y - y*x + 3*v`.
//!
//! A term is a `*`-separated product of integers and generator names; the
//! integers multiply into the coefficient and the names, in order, form the
//! word. A bare integer is a multiple of the unit. `0` is the zero element.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Degree, GradedGeneratorSet, TensorElement, TensorError, Word};

impl GradedGeneratorSet {
    /// Renders `x` using this set's generator names.
    pub fn render(&self, x: &TensorElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in x.terms().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let word = w
                .letters()
                .iter()
                .map(|&l| self.name_of(l as usize))
                .collect::<Vec<_>>()
                .join("*");
            if w.is_unit() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{abs}*{word}"));
            }
        }
        out
    }

    /// Parses the text form. `degree` is required to type the zero element
    /// and, when given, is checked against the parsed terms.
    pub fn parse_element(&self, text: &str, degree: Option<Degree>) -> Result<TensorElement, TensorError> {
        let terms = split_terms(text).map_err(|m| TensorError::Parse(m.to_string()))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for (sign, body) in terms {
            let mut coef = BigInt::from(sign);
            let mut letters = Vec::new();
            for factor in body.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(TensorError::Parse(format!("empty factor in '{body}'")));
                }
                if let Ok(k) = factor.parse::<BigInt>() {
                    coef *= k;
                } else if let Some(i) = self.index_of(factor) {
                    letters.push(i as u32);
                } else {
                    return Err(TensorError::UnknownGenerator(factor.to_string()));
                }
            }
            parsed.push((Word::from_letters(letters), coef));
        }
        let nonzero: Vec<_> = parsed.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let degree = match (degree, nonzero.first()) {
            (Some(d), _) => d,
            (None, Some((w, _))) => self.word_degree(w),
            (None, None) => 0,
        };
        TensorElement::from_terms(self, degree, nonzero)
    }
}

fn split_terms(text: &str) -> Result<Vec<(i64, String)>, &'static str> {
    let mut out = Vec::new();
    let mut sign = 1;
    let mut current = String::new();
    let mut expecting_term = true;
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if expecting_term {
                    if ch == '-' {
                        sign = -sign;
                    }
                } else {
                    out.push((sign, std::mem::take(&mut current)));
                    sign = if ch == '-' { -1 } else { 1 };
                    expecting_term = true;
                }
            }
            c if c.is_whitespace() => {
                if !current.is_empty() {
                    current.push(' ');
                }
            }
            c => {
                current.push(c);
                expecting_term = false;
            }
        }
    }
    if expecting_term {
        return Err(if out.is_empty() { "empty expression" } else { "dangling operator" });
    }
    out.push((sign, current));
    // Whitespace between factors means multiplication ("2 x*y").
    Ok(out
        .into_iter()
        .map(|(s, body)| {
            let body = body.trim().split(' ').filter(|p| !p.is_empty()).collect::<Vec<_>>().join("*");
            (s, body.replace("**", "*"))
        })
        .collect())
}
