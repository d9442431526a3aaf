//! Face certificates built from the rank of tight F-curve inequalities.
//!
//! For a member `x` of a pointed cone, the smallest face containing `x` has
//! dimension `dim - rank(tight rows at x)`. A ray is extremal iff that rank is
//! `dim - 1`; a 2-dimensional face needs rank `dim - 2`. Independence of the
//! test curves is witnessed by the square matrix of pairings of
//! `{C1, C2, C3(1), ..., C3(g/2)}` against `{12λ, 12λ-δ_0, δ_1, ..., δ_{g/2}}`.

use serde::{Deserialize, Serialize};

use super::{fnef_cone, PolyCone};
use crate::classes::{DivisorClass, GenusContext};
use crate::error::{Error, Result};
use crate::fcurves::{intersect, FCurve, FCurveKind};
use crate::linalg::RationalMatrix;
use crate::rational::{dot, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCertificate {
    pub genus: u32,
    pub face_dim: usize,
    pub generators: Vec<DivisorClass>,
    /// Every F-curve tuple whose inequality is tight on the face.
    pub active_curves: Vec<String>,
    pub active_rank: usize,
    /// A maximal independent subset of the tight inequalities.
    pub witness_curves: Vec<String>,
    pub lemma_rows: Vec<String>,
    pub lemma_columns: Vec<String>,
    pub lemma_matrix: RationalMatrix,
    pub det: Rational,
    pub checks: Vec<Check>,
}

impl FaceCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect()
    }
}

/// Row labels and divisors `12λ, 12λ-δ_0, δ_1, ..., δ_{g/2}`.
pub fn lemma_rows(g: u32) -> Result<Vec<(String, DivisorClass)>> {
    let genus = GenusContext::with_basis(g)?;
    let lambda = DivisorClass::lambda(genus)?;
    let mut rows = vec![
        ("12\u{3bb}".to_string(), lambda.scale(&Rational::integer(12))),
        (
            "12\u{3bb}\u{2212}\u{3b4}0".to_string(),
            DivisorClass::twelve_lambda_minus_delta0(genus)?,
        ),
    ];
    for i in 1..=genus.top_index() {
        rows.push((format!("\u{3b4}{i}"), DivisorClass::delta(genus, i)?));
    }
    Ok(rows)
}

/// The curves `C1, C2, C3(1), ..., C3(g/2)`.
pub fn lemma_columns(g: u32) -> Result<Vec<FCurve>> {
    let genus = GenusContext::with_basis(g)?;
    let mut cols = vec![FCurve::new(genus, FCurveKind::C1)?, FCurve::new(genus, FCurveKind::C2)?];
    for i in 1..=genus.top_index() as u32 {
        cols.push(FCurve::new(genus, FCurveKind::C3(i))?);
    }
    Ok(cols)
}

pub fn lemma_matrix(g: u32) -> Result<RationalMatrix> {
    let rows = lemma_rows(g)?;
    let cols = lemma_columns(g)?;
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for (_, d) in &rows {
        for c in &cols {
            data.push(intersect(d, c)?);
        }
    }
    RationalMatrix::new(rows.len(), cols.len(), data)
}

struct FaceData {
    active_curves: Vec<String>,
    active_rank: usize,
    witness_curves: Vec<String>,
    active: Vec<usize>,
}

fn face_data(cone: &PolyCone, x: &[Rational]) -> FaceData {
    let active = cone.active_set(x);
    let active_curves = active
        .iter()
        .flat_map(|&r| cone.inequalities()[r].provenance.iter().cloned())
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    for &r in &active {
        chosen.push(r);
        if cone.rank_of(&chosen) < chosen.len() {
            chosen.pop();
        }
    }
    let witness_curves = chosen
        .iter()
        .map(|&r| cone.inequalities()[r].provenance.first().cloned().unwrap_or_default())
        .collect();
    FaceData {
        active_curves,
        active_rank: chosen.len(),
        witness_curves,
        active,
    }
}

fn lemma_parts(g: u32) -> Result<(Vec<String>, Vec<String>, RationalMatrix, Rational)> {
    let rows = lemma_rows(g)?.into_iter().map(|(l, _)| l).collect();
    let cols = lemma_columns(g)?.iter().map(FCurve::tag).collect();
    let m = lemma_matrix(g)?;
    let det = m.determinant()?;
    Ok((rows, cols, m, det))
}

/// Smallest face of `cone` containing `d`.
pub fn face_of(cone: &PolyCone, d: &DivisorClass) -> Result<FaceCertificate> {
    let x = d.coordinates();
    if x.len() != cone.dim() {
        return Err(Error::ShapeMismatch {
            expected: cone.dim(),
            found: x.len(),
        });
    }
    if let Some(r) = cone.first_violation(&x) {
        let violated = cone.inequalities()[r]
            .provenance
            .first()
            .cloned()
            .unwrap_or_else(|| format!("row {r}"));
        return Err(Error::NotMember { violated });
    }
    let data = face_data(cone, &x);
    let generators = cone
        .generators()
        .unwrap_or_default()
        .iter()
        .filter(|gen| {
            data.active
                .iter()
                .all(|&r| dot(&cone.inequalities()[r].normal, gen).is_zero())
        })
        .map(|gen| DivisorClass::from_coordinates(d.genus(), gen))
        .collect::<Result<Vec<_>>>()?;
    let g = d.genus().genus();
    let (lemma_rows, lemma_columns, lemma_matrix, det) = lemma_parts(g)?;
    Ok(FaceCertificate {
        genus: g,
        face_dim: cone.dim() - data.active_rank,
        generators,
        active_curves: data.active_curves,
        active_rank: data.active_rank,
        witness_curves: data.witness_curves,
        lemma_rows,
        lemma_columns,
        lemma_matrix,
        det,
        checks: vec![Check::new("member", true, "")],
    })
}

fn isolates(values: &[(String, Rational)], nonzero: &[&str]) -> (bool, String) {
    let mut bad = Vec::new();
    for (tag, v) in values {
        let want_nonzero = nonzero.contains(&tag.as_str());
        if want_nonzero == v.is_zero() {
            bad.push(format!("{tag}={v}"));
        }
    }
    (bad.is_empty(), bad.join(" "))
}

/// Certificate that `first` and `second` span extremal rays of the F-nef
/// cone and that their positive combinations form a 2-dimensional face.
///
/// The checks follow the curve-independence argument: `first` is nonzero only
/// on C1 among the lemma curves, `second` only on C2, `first + second` on
/// exactly those two, and the lemma curves are a basis. The rank checks
/// against the full list of F-curve inequalities certify the ray and face
/// dimensions directly.
pub fn assess_face(g: u32, first: &DivisorClass, second: &DivisorClass) -> Result<FaceCertificate> {
    let genus = GenusContext::with_basis(g)?;
    for d in [first, second] {
        if d.genus() != genus {
            return Err(Error::GenusMismatch {
                left: g,
                right: d.genus().genus(),
            });
        }
    }
    let cone = fnef_cone(g)?;
    let d = genus.dim();
    let interior = first.try_add(second)?;
    let columns = lemma_columns(g)?;
    let pairings = |div: &DivisorClass| -> Result<Vec<(String, Rational)>> {
        columns.iter().map(|c| Ok((c.tag(), intersect(div, c)?))).collect()
    };

    let mut checks = Vec::new();

    let mut fnef_detail = Vec::new();
    for (name, div) in [("first", first), ("second", second)] {
        if let Some(r) = cone.first_violation(&div.coordinates()) {
            fnef_detail.push(format!("{name} violates {}", cone.inequalities()[r].provenance[0]));
        }
    }
    checks.push(Check::new(
        "generators_fnef",
        fnef_detail.is_empty(),
        fnef_detail.join("; "),
    ));

    let (ok, detail) = isolates(&pairings(first)?, &["C1"]);
    checks.push(Check::new("first_generator_isolates_c1", ok, detail));
    let (ok, detail) = isolates(&pairings(second)?, &["C2"]);
    checks.push(Check::new("second_generator_isolates_c2", ok, detail));
    let (ok, detail) = isolates(&pairings(&interior)?, &["C1", "C2"]);
    checks.push(Check::new("interior_point_isolates_c1_c2", ok, detail));

    let (lemma_rows, lemma_columns, lemma_matrix, det) = lemma_parts(g)?;
    checks.push(Check::new(
        "lemma_curves_independent",
        det.abs() == Rational::one(),
        format!("det={det}"),
    ));

    for (name, div) in [
        ("first_generator_extremal", first),
        ("second_generator_extremal", second),
    ] {
        let rank = cone.active_rank(&div.coordinates());
        checks.push(Check::new(
            name,
            !div.is_zero() && rank + 1 == d,
            format!("active_rank={rank}"),
        ));
    }

    let data = face_data(&cone, &interior.coordinates());
    checks.push(Check::new(
        "face_rank",
        data.active_rank + 2 == d,
        format!("active_rank={}", data.active_rank),
    ));

    Ok(FaceCertificate {
        genus: g,
        face_dim: d - data.active_rank,
        generators: vec![first.clone(), second.clone()],
        active_curves: data.active_curves,
        active_rank: data.active_rank,
        witness_curves: data.witness_curves,
        lemma_rows,
        lemma_columns,
        lemma_matrix,
        det,
        checks,
    })
}

/// [`assess_face`] for λ and 12λ-δ_0, failing with
/// [`Error::CertificateFailure`] if any check does not hold.
pub fn verify_extremal_face(g: u32) -> Result<FaceCertificate> {
    let genus = GenusContext::with_basis(g)?;
    let cert = assess_face(
        g,
        &DivisorClass::lambda(genus)?,
        &DivisorClass::twelve_lambda_minus_delta0(genus)?,
    )?;
    if !cert.passed() {
        return Err(Error::CertificateFailure {
            genus: g,
            failed: cert.failed_checks(),
        });
    }
    Ok(cert)
}
