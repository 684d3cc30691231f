//! Components of the two exact sequences
//! Hom(V_q, H_q) ↣ ℰ(A(Y)) ↠ Γ and Hom(V_q, H_q) ↣ ℰ_*(A(Y)) ↠ Π
//! for a split algebra, with the specializations that can be read off
//! structurally.

use serde::Serialize;

use super::{compute_bq, kernel_invariants, BqMap, SelfEquivError, SplitChainAlgebra};
use crate::exactlinalg::AbelianGroupInvariants;
use crate::tensoralg::Degree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BqKind {
    Nil,
    /// An isomorphism V_q ≅ H_{q−1} over the integers.
    Bijective,
    /// Injective on free parts (rationally injective) but not bijective.
    Injective,
    Other,
}

impl BqKind {
    pub fn of(bq: &BqMap) -> Self {
        if bq.is_nil() {
            BqKind::Nil
        } else if bq.is_bijective() {
            BqKind::Bijective
        } else if bq.rational_rank() == bq.matrix().cols() {
            BqKind::Injective
        } else {
            BqKind::Other
        }
    }
}

impl std::fmt::Display for BqKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BqKind::Nil => "nil",
            BqKind::Bijective => "bijective",
            BqKind::Injective => "injective on free parts",
            BqKind::Other => "neither nil nor injective",
        })
    }
}

/// kernel ↣ middle ↠ quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRow {
    pub kernel: String,
    pub middle: String,
    pub quotient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub model_q: Degree,
    pub model_n: Degree,
    pub space_q: Degree,
    pub space_n: Degree,
    /// rank V_q, which is also rank H_{q+1}(Y,X).
    pub i: usize,
    pub h_q_base: AbelianGroupInvariants,
    pub h_q_minus_1_base: AbelianGroupInvariants,
    pub kernel: AbelianGroupInvariants,
    pub bq: BqKind,
    pub full_row: GroupRow,
    pub star_row: GroupRow,
    /// ℰ_*(A(Y)) itself, when ℰ_*(A(X)) is trivial.
    pub star_group: Option<AbelianGroupInvariants>,
    pub notes: Vec<String>,
}

fn gl(rank: usize) -> Option<String> {
    match rank {
        0 => None,
        1 => Some("Z2".to_string()),
        k => Some(format!("GL({k},Z)")),
    }
}

fn product(factors: &[Option<String>]) -> String {
    let present: Vec<&str> = factors.iter().flatten().map(String::as_str).collect();
    if present.is_empty() {
        "1".to_string()
    } else {
        present.join(" x ")
    }
}

pub fn sequence_report(sa: &SplitChainAlgebra) -> Result<SequenceReport, SelfEquivError> {
    let base = sa.base();
    let (q, n) = (sa.q(), sa.n());
    let i = sa.top_generators().len();
    let homology = base.execution().map(&[q - 1, q], |&m| base.homology(m));
    let kind = BqKind::of(&compute_bq(sa)?);
    let kernel = kernel_invariants(sa);

    let gens = base.generators();
    let degrees = gens.degrees();
    let mut notes = Vec::new();
    // Base generators confined to [m, 2m−1] leave no decomposables in
    // generator degrees, so self-maps of the base are linear.
    let connective = match (degrees.first(), degrees.last()) {
        (Some(&lo), Some(&hi)) => hi < 2 * lo,
        _ => true,
    };
    let rigid = connective && base.has_trivial_differential();
    let e_base = if rigid {
        product(&degrees.iter().map(|&d| gl(gens.indices_in_degree(d).len())).collect::<Vec<_>>())
    } else {
        "E(A(X))".to_string()
    };
    let star_base_trivial = connective;
    if connective && !rigid {
        notes.push(
            "E_*(A(X)) is taken to be trivial because the base generators lie in degrees [m, 2m-1]; \
             this is the connectivity argument, not a computation"
                .to_string(),
        );
    }

    let aut_vq = gl(i);
    let gamma = match kind {
        BqKind::Nil => product(&[aut_vq.clone(), Some(e_base.clone()).filter(|s| s != "1")]),
        BqKind::Bijective => e_base.clone(),
        _ => format!("{{(xi, f) in {} x {e_base} : H_{}(f) b_q = b_q xi}}", product(&[aut_vq]), q - 1),
    };
    let pi = if star_base_trivial {
        "1".to_string()
    } else {
        match kind {
            BqKind::Nil => "E_*(A(X))".to_string(),
            BqKind::Bijective => format!("{{f in E_*(A(X)) : H_{}(f) = id}}", q - 1),
            _ => format!("{{f in E_*(A(X)) : H_{}(f) b_q = b_q}}", q - 1),
        }
    };
    let kernel_text = kernel.to_string();
    let star_group = star_base_trivial.then(|| kernel.clone());
    let full_row = GroupRow {
        kernel: kernel_text.clone(),
        middle: "E(A(Y))".to_string(),
        quotient: gamma,
    };
    let star_row = GroupRow {
        kernel: kernel_text,
        middle: star_group.as_ref().map_or_else(|| "E_*(A(Y))".to_string(), |g| g.to_string()),
        quotient: pi,
    };

    if let Some(&lo) = degrees.first() {
        if connective && q == 2 * lo {
            let r = gens.indices_in_degree(lo).len();
            let expected = AbelianGroupInvariants::free(r * r);
            if homology[1].invariants() != &expected {
                notes.push(format!(
                    "H_{q}(T(V_<={n})) = {} differs from V_{lo} (x) V_{lo} = {expected}",
                    homology[1].invariants()
                ));
            }
        }
    }
    notes.push(format!(
        "H_q(OX) is indexed by the model degree q = {q}; cells of Y have dimension {} and the abstract's \
         kernel H_q(OX) uses the same index q",
        q + 1
    ));

    Ok(SequenceReport {
        model_q: q,
        model_n: n,
        space_q: q + 1,
        space_n: n + 1,
        i,
        h_q_base: homology[1].invariants().clone(),
        h_q_minus_1_base: homology[0].invariants().clone(),
        kernel,
        bq: kind,
        full_row,
        star_row,
        star_group,
        notes,
    })
}
