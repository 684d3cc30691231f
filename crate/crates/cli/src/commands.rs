use std::path::{Path, PathBuf};
use std::sync::Arc;

use ahcalc_core::dga::{ChainAlgebra, SplitChainAlgebra};
use ahcalc_core::exactlinalg::{AbelianGroupInvariants, IntMatrix};
use ahcalc_core::homotopy::{decide_homotopy_special, HomotopyError};
use ahcalc_core::morphisms::{AlgebraMorphism, DegreeAutomorphism};
use ahcalc_core::selfequiv::{
    attach_cells, c4_model, check_membership, compute_bq, kernel_invariants, lift_pair, sequence_report,
    suspension_model, wedge_spheres, BqKind, PairCandidate, SelfEquivError,
};
use ahcalc_core::tensoralg::Degree;
use num_bigint::BigInt;
use serde_json::json;

use crate::document::{
    dga_error, morphism_error, read_algebra_document, read_document, read_morphism_document, split_at, terms_of,
    AlgebraDocument, Document, MorphismDocument, SplitEntry,
};
use crate::error::CliError;
use crate::render;

pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
}

pub fn selfequiv_error(e: SelfEquivError) -> CliError {
    match e {
        SelfEquivError::Morphism(m) => morphism_error(m),
        SelfEquivError::Homotopy(h) => homotopy_error(h),
        SelfEquivError::Dga(d) => dga_error(d),
        SelfEquivError::Tensor(t) => CliError::Parse(t.to_string()),
        SelfEquivError::Internal(m) => CliError::Internal(m),
        other => CliError::Shape(other.to_string()),
    }
}

fn homotopy_error(e: HomotopyError) -> CliError {
    match e {
        HomotopyError::Morphism(m) => morphism_error(m),
        HomotopyError::Dga(d) => dga_error(d),
        HomotopyError::Shape(m) => CliError::Shape(m),
        other => CliError::Internal(other.to_string()),
    }
}

fn parent(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Loads an algebra document and the split to work with: `--split q n` wins
/// over the document's own `split`; failing both, the algebra is cut below
/// its top generator degree.
fn load_split(path: &Path, split: Option<(Degree, Degree)>) -> Result<SplitChainAlgebra, CliError> {
    let doc = read_algebra_document(path)?;
    let alg = Arc::new(doc.to_algebra()?);
    match split.or(doc.split.map(|s| (s.q, s.n))) {
        Some((q, n)) => split_at(&alg, q, n),
        None => SplitChainAlgebra::at_top(alg)
            .ok_or_else(|| CliError::Shape("algebra has no split; pass --split Q N".to_string())),
    }
}

fn describe_algebra(alg: &ChainAlgebra) -> String {
    let gens = alg.generators();
    let list: Vec<String> = (0..gens.len()).map(|i| format!("{}:{}", gens.name_of(i), gens.degree_of(i))).collect();
    let mut out = format!("generators: {}\n", if list.is_empty() { "none".to_string() } else { list.join(" ") });
    for i in 0..gens.len() {
        let d = alg.generator_differential(i);
        if !d.is_zero() {
            out.push_str(&format!("  d({}) = {}\n", gens.name_of(i), alg.render(d)));
        }
    }
    out
}

pub fn check(path: &Path) -> Result<Output, CliError> {
    match read_document(path)? {
        Document::Algebra(doc) => {
            let (alg, split) = doc.to_split()?;
            let mut text = format!("ok: chain algebra, d^2 = 0\n{}", describe_algebra(&alg));
            if let Some(sa) = &split {
                text.push_str(&format!("split: q = {}, n = {}\n", sa.q(), sa.n()));
            }
            Ok(Output {
                text,
                json: json!({"status": "ok", "kind": "algebra", "generators": alg.generators().len()}),
            })
        }
        Document::Morphism(doc) => {
            let (f, _) = doc.to_morphism(&parent(path))?;
            Ok(Output {
                text: format!("ok: chain map\n{}", render::morphism_lines(&f)),
                json: json!({"status": "ok", "kind": "morphism", "generators": f.images().len()}),
            })
        }
    }
}

pub fn homology(path: &Path, degrees: &[Degree], indecomposables: bool) -> Result<Output, CliError> {
    let alg = read_algebra_document(path)?.to_algebra()?;
    let mut text = String::new();
    let mut rows = Vec::new();
    if indecomposables {
        for &m in degrees {
            let g = alg.indecomposables_homology(m);
            text.push_str(&format!("H_{m}(V,d) = {g}    (space degree {}: H_{}(Y))\n", m + 1, m + 1));
            rows.push(json!({"degree": m, "space_degree": m + 1, "group": g, "text": g.to_string()}));
        }
    } else {
        for h in alg.homology_range(degrees) {
            let g = h.invariants();
            text.push_str(&format!("H_{} = {g}\n", h.degree()));
            rows.push(json!({"degree": h.degree(), "group": g, "text": g.to_string()}));
        }
    }
    Ok(Output {
        text,
        json: json!({"homology": rows, "indecomposables": indecomposables}),
    })
}

pub fn bq(path: &Path, split: Option<(Degree, Degree)>) -> Result<Output, CliError> {
    let sa = load_split(path, split)?;
    let b = compute_bq(&sa).map_err(selfequiv_error)?;
    let kind = BqKind::of(&b);
    let (q, target) = (sa.q(), b.homology().invariants().clone());
    let mut text = format!("b_q: V_{q} -> H_{}(A(X)) = {target}\n", q - 1);
    if b.matrix().rows() > 0 && b.matrix().cols() > 0 {
        text.push_str("matrix (columns indexed by V_q):\n");
        for row in render::matrix_rows(b.matrix()) {
            text.push_str(&format!("  {row}\n"));
        }
    }
    text.push_str(&format!("kind: {kind}\n"));
    let orders: Vec<String> = b.orders().iter().map(|o| o.to_string()).collect();
    Ok(Output {
        text,
        json: json!({"q": q, "n": sa.n(), "target": target, "orders": orders, "matrix": render::matrix_json(b.matrix()), "kind": kind}),
    })
}

fn parse_matrix(text: &str, k: usize) -> Result<IntMatrix, CliError> {
    let rows: Vec<Vec<crate::document::Coef>> =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("--xi: {e}")))?;
    if rows.len() != k || rows.iter().any(|r| r.len() != k) {
        return Err(CliError::Shape(format!("--xi must be a {k}x{k} matrix (rank V_q = {k})")));
    }
    let entries: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(|c| c.0).collect()).collect();
    IntMatrix::from_row_vecs(k, k, entries).map_err(|e| CliError::Internal(e.to_string()))
}

fn load_pair(
    algebra: &Path,
    split: Option<(Degree, Degree)>,
    xi: &str,
    map: &Path,
) -> Result<(SplitChainAlgebra, PairCandidate), CliError> {
    let sa = load_split(algebra, split)?;
    let matrix = parse_matrix(xi, sa.top_generators().len())?;
    let xi = DegreeAutomorphism::new(sa.q(), matrix).map_err(morphism_error)?;
    let base = Arc::clone(sa.base());
    let alpha_n = read_morphism_document(map)?.morphism_between(Arc::clone(&base), base)?;
    let cand = PairCandidate::new(xi, alpha_n).map_err(selfequiv_error)?;
    Ok((sa, cand))
}

pub fn membership(algebra: &Path, split: Option<(Degree, Degree)>, xi: &str, map: &Path) -> Result<Output, CliError> {
    let (sa, cand) = load_pair(algebra, split, xi, map)?;
    let member = check_membership(&sa, &cand).map_err(selfequiv_error)?;
    Ok(Output {
        text: format!("{}\n", if member { "member" } else { "not a member" }),
        json: json!({ "member": member }),
    })
}

pub fn lift(algebra: &Path, split: Option<(Degree, Degree)>, xi: &str, map: &Path) -> Result<Output, CliError> {
    let (sa, cand) = load_pair(algebra, split, xi, map)?;
    let alpha = lift_pair(&sa, &cand).map_err(selfequiv_error)?;
    Ok(Output {
        text: format!("lift:\n{}", render::morphism_lines(&alpha)),
        json: serde_json::to_value(MorphismDocument::from_morphism(&alpha)).expect("serializable"),
    })
}

pub fn kernel(path: &Path, split: Option<(Degree, Degree)>) -> Result<Output, CliError> {
    let sa = load_split(path, split)?;
    let k = kernel_invariants(&sa);
    let h = sa.base().homology(sa.q());
    Ok(Output {
        text: format!(
            "kernel: {k}\n  = Hom(V_{q}, H_{q}(A(X))) with rank V_{q} = {}, H_{q}(A(X)) = {}\n",
            sa.top_generators().len(),
            h.invariants(),
            q = sa.q()
        ),
        json: json!({"kernel": k, "text": k.to_string(), "rank_vq": sa.top_generators().len(), "h_q": h.invariants()}),
    })
}

fn load_endpoint(path: &Path) -> Result<AlgebraMorphism, CliError> {
    read_morphism_document(path)?.to_morphism(&parent(path)).map(|(f, _)| f)
}

pub fn homotopy(
    alpha: &Path,
    beta: &Path,
    special: Option<(Degree, Degree)>,
    witness: Option<&Path>,
) -> Result<Output, CliError> {
    let a = load_endpoint(alpha)?;
    let b = load_endpoint(beta)?;
    if a.source() != b.source() || a.target() != b.target() {
        return Err(CliError::Shape("the two morphisms have different source or target".to_string()));
    }
    let b = b
        .with_algebras(Arc::clone(a.source()), Arc::clone(a.target()))
        .map_err(morphism_error)?;
    let sa = match special {
        Some((q, n)) => split_at(a.source(), q, n)?,
        None => SplitChainAlgebra::at_top(Arc::clone(a.source()))
            .ok_or_else(|| CliError::Shape("cannot split the source; pass --special Q N".to_string()))?,
    };
    match decide_homotopy_special(&sa, &a, &b).map_err(homotopy_error)? {
        Some(h) => {
            let target = h.target();
            let values = h.suspension_values();
            let names: Vec<(String, String)> = h.describe_suspensions();
            let mut text = "HOMOTOPIC\n".to_string();
            for (s, u) in &names {
                text.push_str(&format!("  F({s}) = {u}\n"));
            }
            let images: serde_json::Map<String, serde_json::Value> = names
                .iter()
                .zip(&values)
                .map(|((s, _), x)| (s.clone(), serde_json::to_value(terms_of(target.generators(), x)).expect("serializable")))
                .collect();
            let listing = json!({"homotopy_of": alpha.display().to_string(), "to": beta.display().to_string(), "images": images});
            if let Some(path) = witness {
                let body = serde_json::to_string_pretty(&listing).expect("serializable");
                std::fs::write(path, body + "\n").map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))?;
            }
            Ok(Output {
                text,
                json: json!({"verdict": "HOMOTOPIC", "witness": listing}),
            })
        }
        None => Ok(Output {
            text: "NOT-HOMOTOPIC\n".to_string(),
            json: json!({ "verdict": "NOT-HOMOTOPIC" }),
        }),
    }
}

fn report_output(sa: &SplitChainAlgebra, with_model: bool) -> Result<Output, CliError> {
    let r = sequence_report(sa).map_err(selfequiv_error)?;
    let mut text = String::new();
    if with_model {
        text.push_str(&describe_algebra(sa.full()));
    }
    text.push_str(&render::report(&r));
    let doc = AlgebraDocument::from_algebra(sa.full(), Some(SplitEntry { q: sa.q(), n: sa.n() }));
    Ok(Output {
        text,
        json: json!({"algebra": doc, "report": r}),
    })
}

pub fn report(path: &Path, split: Option<(Degree, Degree)>) -> Result<Output, CliError> {
    report_output(&load_split(path, split)?, false)
}

pub enum Example {
    WedgeSpheres { n: Degree, q: Degree },
    Suspension { ranks: Vec<(Degree, usize)> },
    AttachCells { base: PathBuf, q: Degree, attachments: Vec<String> },
    C4 { n: Degree, r: usize, s: usize },
}

pub fn examples(which: &Example) -> Result<Output, CliError> {
    let sa = match which {
        Example::WedgeSpheres { n, q } => wedge_spheres(*n, *q).map_err(selfequiv_error)?,
        Example::Suspension { ranks } => {
            let groups: Vec<(Degree, AbelianGroupInvariants)> =
                ranks.iter().map(|&(d, r)| (d, AbelianGroupInvariants::free(r))).collect();
            let alg = suspension_model(&groups).map_err(selfequiv_error)?;
            SplitChainAlgebra::at_top(Arc::new(alg))
                .ok_or_else(|| CliError::Shape("the model needs generators in at least two degrees".to_string()))?
        }
        Example::AttachCells { base, q, attachments } => {
            let x = read_algebra_document(base)?.to_algebra()?;
            let cells = attachments
                .iter()
                .enumerate()
                .map(|(k, t)| x.parse(t, Some(q - 1)).map_err(|e| CliError::Parse(format!("--attach #{}: {e}", k + 1))))
                .collect::<Result<Vec<_>, _>>()?;
            attach_cells(&x, *q, &cells).map_err(selfequiv_error)?
        }
        Example::C4 { n, r, s } => c4_model(*n, *r, *s).map_err(selfequiv_error)?,
    };
    report_output(&sa, true)
}
