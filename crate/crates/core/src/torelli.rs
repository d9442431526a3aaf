//! Picard models of three compactifications of A_g and their pullbacks to
//! the moduli space of stable curves.
//!
//! Each model is a hard-coded rank-one or rank-two catalog: the Satake
//! compactification (basis `M`), Mumford's partial compactification and the
//! perfect cone compactification (basis `M, D`). A divisor `aM - bD` on the
//! perfect cone model pulls back to `aλ - bδ_0`; `M` on the Satake model
//! pulls back to `λ`. No morphism from the stable-curve compactification to
//! the partial compactification exists, so that model has no pullback.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classes::{linear_combination, DivisorClass, GenusContext, NamedDivisor};
use crate::cone::{Inequality, PolyCone, DEFAULT_DIMENSION_LIMIT};
use crate::error::{Error, Result};
use crate::fcurves::{intersect, FCurve, FCurveKind};
use crate::linalg::RationalMatrix;
use crate::parse::parse_terms;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Compactification {
    Satake,
    Partial,
    Perfect,
}

impl Compactification {
    pub const ALL: [Compactification; 3] = [
        Compactification::Satake,
        Compactification::Partial,
        Compactification::Perfect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Compactification::Satake => "Satake",
            Compactification::Partial => "Partial",
            Compactification::Perfect => "Perfect",
        }
    }

    pub fn picard_rank(self) -> usize {
        match self {
            Compactification::Satake => 1,
            Compactification::Partial | Compactification::Perfect => 2,
        }
    }

    pub fn basis_labels(self) -> &'static [&'static str] {
        match self {
            Compactification::Satake => &["M"],
            Compactification::Partial => &["M", "D_g"],
            Compactification::Perfect => &["M", "D_g^per"],
        }
    }
}

impl fmt::Display for Compactification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Compactification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "satake" | "sat" => Ok(Compactification::Satake),
            "partial" | "part" => Ok(Compactification::Partial),
            "perfect" | "per" => Ok(Compactification::Perfect),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown model {s:?} (expected satake, partial or perfect)"),
            }),
        }
    }
}

/// A compactification together with its nef cone in `(a, b)` coordinates,
/// where `(a, b)` stands for `aM - bD`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompactificationModel {
    kind: Compactification,
    nef_cone: PolyCone,
}

impl CompactificationModel {
    pub fn new(kind: Compactification) -> Self {
        let label = format!("Nef({})", kind.name());
        let q = Rational::integer;
        let inequalities = match kind {
            Compactification::Satake => vec![Inequality {
                normal: vec![q(1)],
                provenance: vec!["a >= 0".into()],
            }],
            Compactification::Partial | Compactification::Perfect => vec![
                Inequality {
                    normal: vec![q(1), q(-12)],
                    provenance: vec!["a >= 12b".into()],
                },
                Inequality {
                    normal: vec![q(0), q(1)],
                    provenance: vec!["b >= 0".into()],
                },
            ],
        };
        let nef_cone = PolyCone::from_inequalities(kind.picard_rank(), label, inequalities)
            .and_then(|c| c.with_extreme_rays(DEFAULT_DIMENSION_LIMIT))
            .expect("catalog cones are pointed and small");
        CompactificationModel { kind, nef_cone }
    }

    pub fn kind(&self) -> Compactification {
        self.kind
    }

    pub fn picard_rank(&self) -> usize {
        self.kind.picard_rank()
    }

    pub fn basis_labels(&self) -> &'static [&'static str] {
        self.kind.basis_labels()
    }

    pub fn nef_cone(&self) -> &PolyCone {
        &self.nef_cone
    }

    /// Extreme rays of the nef cone as divisors of this model.
    pub fn nef_generators(&self) -> Vec<AbelianDivisor> {
        self.nef_cone
            .generators()
            .expect("rays are computed at construction")
            .iter()
            .map(|r| AbelianDivisor {
                model: self.kind,
                coeffs: r.clone(),
            })
            .collect()
    }

    pub fn is_nef(&self, d: &AbelianDivisor) -> Result<bool> {
        self.check_model(d)?;
        Ok(self.nef_cone.satisfies_all(&d.coeffs))
    }

    fn check_model(&self, d: &AbelianDivisor) -> Result<()> {
        if d.model != self.kind {
            return Err(Error::ModelMismatch {
                expected: self.kind.name().into(),
                found: d.model.name().into(),
            });
        }
        Ok(())
    }
}

/// `aM - bD` in the basis of one model; `b` is absent for Satake.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianDivisor {
    model: Compactification,
    coeffs: Vec<Rational>,
}

impl AbelianDivisor {
    pub fn new(model: Compactification, a: Rational, b: Option<Rational>) -> Result<Self> {
        let coeffs: Vec<Rational> = std::iter::once(a).chain(b).collect();
        if coeffs.len() != model.picard_rank() {
            return Err(Error::ShapeMismatch {
                expected: model.picard_rank(),
                found: coeffs.len(),
            });
        }
        Ok(AbelianDivisor { model, coeffs })
    }

    pub fn model(&self) -> Compactification {
        self.model
    }

    pub fn a(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn b(&self) -> Option<&Rational> {
        self.coeffs.get(1)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, s: &Rational) -> Self {
        AbelianDivisor {
            model: self.model,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn try_add(&self, other: &AbelianDivisor) -> Result<Self> {
        if self.model != other.model {
            return Err(Error::ModelMismatch {
                expected: self.model.name().into(),
                found: other.model.name().into(),
            });
        }
        Ok(AbelianDivisor {
            model: self.model,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect(),
        })
    }

    /// Parses `a*M - b*D` (`L` is accepted for `M`). `D` is rejected for
    /// the Satake model.
    pub fn parse(model: Compactification, input: &str) -> Result<Self> {
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        for term in parse_terms(input)? {
            let Some(sym) = term.symbol else {
                if !term.coeff.is_zero() {
                    return Err(Error::Parse {
                        pos: term.pos,
                        msg: "nonzero constant term".into(),
                    });
                }
                continue;
            };
            match (sym.name.as_str(), sym.index.as_deref()) {
                ("M" | "L", None) => a += &term.coeff,
                ("D", None) if model != Compactification::Satake => b -= &term.coeff,
                ("D", None) => {
                    return Err(Error::Parse {
                        pos: sym.pos,
                        msg: "the Satake model has no boundary divisor D".into(),
                    })
                }
                _ => {
                    return Err(Error::Parse {
                        pos: sym.pos,
                        msg: format!("unknown symbol {:?} (expected M or D)", sym.name),
                    })
                }
            }
        }
        let b = (model.picard_rank() == 2).then_some(b);
        AbelianDivisor::new(model, a, b)
    }

    pub fn to_expression(&self) -> String {
        let mut out = String::new();
        let terms = [
            (self.a().clone(), "M"),
            (self.b().map(|b| -b).unwrap_or_else(Rational::zero), "D"),
        ];
        for (c, sym) in terms {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&format!("{}*{}", c.abs(), sym));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for AbelianDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

#[derive(Serialize, Deserialize)]
struct AbelianRecord {
    model: Compactification,
    a: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expansion: Option<String>,
}

impl Serialize for AbelianDivisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AbelianRecord {
            model: self.model,
            a: self.a().clone(),
            b: self.b().cloned(),
            expansion: Some(self.to_expression()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbelianDivisor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = AbelianRecord::deserialize(d)?;
        let div = AbelianDivisor::new(rec.model, rec.a, rec.b).map_err(serde::de::Error::custom)?;
        if let Some(exp) = rec.expansion {
            let parsed = AbelianDivisor::parse(rec.model, &exp).map_err(serde::de::Error::custom)?;
            if parsed != div {
                return Err(serde::de::Error::custom("expansion disagrees with the coefficients"));
            }
        }
        Ok(div)
    }
}

/// Pullback along the extended Torelli map: `M ↦ λ` and, on the perfect
/// cone model, `D ↦ δ_0`.
pub fn pullback(model: &CompactificationModel, d: &AbelianDivisor, g: u32) -> Result<DivisorClass> {
    model.check_model(d)?;
    let genus = GenusContext::with_basis(g)?;
    let lambda = DivisorClass::lambda(genus)?;
    match model.kind {
        Compactification::Satake => Ok(lambda.scale(d.a())),
        Compactification::Perfect => {
            let delta0 = DivisorClass::delta(genus, 0)?;
            let b = d.b().expect("rank-two model");
            linear_combination(&[(d.a().clone(), &lambda), (b.clone(), &delta0.scale(&-Rational::one()))])
        }
        Compactification::Partial => Err(Error::NoPullback(model.kind.name().into())),
    }
}

/// The image of the model's nef cone, generated by the pullbacks of its
/// extreme rays.
pub fn pullback_nef_cone(model: &CompactificationModel, g: u32) -> Result<PolyCone> {
    let genus = GenusContext::with_basis(g)?;
    let generators = model
        .nef_generators()
        .iter()
        .map(|r| pullback(model, r, g).map(|d| d.coordinates()))
        .collect::<Result<Vec<_>>>()?;
    PolyCone::from_generators(
        genus.dim(),
        format!("pullback of Nef({})", model.kind.name()),
        generators,
    )
}

/// Rank of the images of the model's basis vectors.
pub fn pullback_rank(model: &CompactificationModel, g: u32) -> Result<usize> {
    let genus = GenusContext::with_basis(g)?;
    let rows = (0..model.picard_rank())
        .map(|k| {
            let mut coeffs = vec![Rational::zero(); model.picard_rank()];
            coeffs[k] = Rational::one();
            let a = coeffs[0].clone();
            let b = coeffs.get(1).cloned();
            pullback(model, &AbelianDivisor::new(model.kind, a, b)?, g).map(|d| d.coordinates())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_rows(&rows, genus.dim())?.rank())
}

/// Pairing with the curve `C(1)` on the perfect cone model, the image of the
/// F-curve `C1`. Only two facts are used: `C(1)·M = C1·λ = 1/12` and
/// `C(1)·(12M - D) = 0`, so `C(1)·(aM - bD) = a/12 - b`.
pub fn perfect_c1_pairing(d: &AbelianDivisor) -> Result<Rational> {
    if d.model != Compactification::Perfect {
        return Err(Error::ModelMismatch {
            expected: Compactification::Perfect.name().into(),
            found: d.model.name().into(),
        });
    }
    let b = d.b().expect("rank-two model");
    Ok(d.a() / Rational::integer(12) - b)
}

/// Position of a divisor relative to the face spanned by λ and 12λ - δ_0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum FaceClass {
    /// `(12 + ε)λ - δ_0` up to positive scaling.
    InteriorOfF {
        epsilon: Rational,
    },
    RayLambda,
    Ray12LambdaMinusDelta0,
    Origin,
    OutsideF,
}

impl FaceClass {
    pub fn name(&self) -> &'static str {
        match self {
            FaceClass::InteriorOfF { .. } => "InteriorOfF",
            FaceClass::RayLambda => "RayLambda",
            FaceClass::Ray12LambdaMinusDelta0 => "Ray12LambdaMinusDelta0",
            FaceClass::Origin => "Origin",
            FaceClass::OutsideF => "OutsideF",
        }
    }
}

impl fmt::Display for FaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceClass::InteriorOfF { epsilon } => write!(f, "InteriorOfF (epsilon = {epsilon})"),
            other => f.write_str(other.name()),
        }
    }
}

pub fn classify_in_face(d: &DivisorClass) -> FaceClass {
    if d.b()[1..].iter().any(|x| !x.is_zero()) {
        return FaceClass::OutsideF;
    }
    let a = d.a();
    let b = &d.b()[0];
    let twelve_b = Rational::integer(12) * b;
    if a.is_zero() && b.is_zero() {
        FaceClass::Origin
    } else if b.is_zero() && a.is_positive() {
        FaceClass::RayLambda
    } else if b.is_positive() && *a == twelve_b {
        FaceClass::Ray12LambdaMinusDelta0
    } else if b.is_positive() && *a > twelve_b {
        FaceClass::InteriorOfF {
            epsilon: a / b - Rational::integer(12),
        }
    } else {
        FaceClass::OutsideF
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Semiampleness {
    SemiAmple,
    ConditionallySemiAmple,
    NefUnknown,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiampleStatus {
    pub genus: u32,
    pub class: FaceClass,
    pub status: Semiampleness,
    pub reason: String,
}

/// Largest genus for which 12λ - δ_0 is known to be semi-ample (over ℂ).
pub const SEMIAMPLE_GENUS_BOUND: u32 = 11;

/// Catalog lookup of what is known about semi-ampleness on the face.
pub fn semiample_status(d: &DivisorClass) -> SemiampleStatus {
    let g = d.genus().genus();
    let class = classify_in_face(d);
    let (status, reason) = match &class {
        FaceClass::InteriorOfF { .. } => (
            Semiampleness::SemiAmple,
            "semi-ample: pullback of an ample class from the perfect cone compactification".to_string(),
        ),
        FaceClass::RayLambda => (
            Semiampleness::SemiAmple,
            "semi-ample: pullback of M under the Satake morphism".to_string(),
        ),
        FaceClass::Ray12LambdaMinusDelta0 if g <= SEMIAMPLE_GENUS_BOUND => (
            Semiampleness::ConditionallySemiAmple,
            format!("semi-ample if g <= {SEMIAMPLE_GENUS_BOUND} over the complex numbers; nef for all g"),
        ),
        FaceClass::Ray12LambdaMinusDelta0 => (Semiampleness::NefUnknown, "nef, semi-ampleness unknown".to_string()),
        FaceClass::Origin => (Semiampleness::SemiAmple, "trivially semi-ample".to_string()),
        FaceClass::OutsideF => (
            Semiampleness::Unknown,
            "outside the face; not covered by the catalog".to_string(),
        ),
    };
    SemiampleStatus {
        genus: g,
        class,
        status,
        reason,
    }
}

/// Sample points `(m, α, β)` with `m > 0` and `α, β >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BpfGrid {
    points: Vec<(Rational, Rational, Rational)>,
}

impl BpfGrid {
    pub fn new(points: Vec<(Rational, Rational, Rational)>) -> Result<Self> {
        for (m, alpha, beta) in &points {
            if !m.is_positive() {
                return Err(Error::NegativeCoefficient {
                    name: "m",
                    value: m.to_string(),
                });
            }
            for (name, v) in [("alpha", alpha), ("beta", beta)] {
                if v.is_negative() {
                    return Err(Error::NegativeCoefficient {
                        name,
                        value: v.to_string(),
                    });
                }
            }
        }
        Ok(BpfGrid { points })
    }

    /// `{1..=m_max} × {0..=alpha_max} × {0..=beta_max}`.
    pub fn integer_box(m_max: u32, alpha_max: u32, beta_max: u32) -> Self {
        let mut points = Vec::new();
        for m in 1..=m_max {
            for alpha in 0..=alpha_max {
                for beta in 0..=beta_max {
                    points.push((
                        Rational::integer(m.into()),
                        Rational::integer(alpha.into()),
                        Rational::integer(beta.into()),
                    ));
                }
            }
        }
        BpfGrid { points }
    }

    pub fn points(&self) -> &[(Rational, Rational, Rational)] {
        &self.points
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BpfDeviation {
    pub m: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub curve: String,
    pub value: Rational,
}

/// `b_i` of each summand of `(mα)λ + (mβ)(12λ - δ_0) + (-K - Δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicRow {
    pub index: usize,
    pub lambda_part: Rational,
    pub face_part: Rational,
    pub constant_part: Rational,
}

impl SymbolicRow {
    /// The `b_i` coefficient is `(mα)·lambda_part + (mβ)·face_part +
    /// constant_part`; it is identically -1 iff the first two vanish.
    pub fn is_constant_minus_one(&self) -> bool {
        self.lambda_part.is_zero() && self.face_part.is_zero() && self.constant_part == -Rational::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BpfReport {
    pub genus: u32,
    pub points: usize,
    pub evaluations: usize,
    pub curves: Vec<String>,
    pub deviations: Vec<BpfDeviation>,
    pub symbolic: Vec<SymbolicRow>,
}

impl BpfReport {
    pub fn passed(&self) -> bool {
        self.deviations.is_empty() && self.symbolic.iter().all(SymbolicRow::is_constant_minus_one)
    }
}

/// Forms `mD_{αβ} - (K + Δ)` with `D_{αβ} = αλ + β(12λ - δ_0)` at every grid
/// point and pairs it with every `C3(i)`; anything other than -1 is recorded
/// as a deviation.
pub fn bpf_scan(g: u32, grid: &BpfGrid) -> Result<BpfReport> {
    let genus = GenusContext::with_basis(g)?;
    let lambda = DivisorClass::lambda(genus)?;
    let face = DivisorClass::twelve_lambda_minus_delta0(genus)?;
    let canonical = DivisorClass::named(genus, NamedDivisor::Canonical)?;
    let boundary = DivisorClass::named(genus, NamedDivisor::BoundarySum)?;
    let constant = linear_combination(&[(-Rational::one(), &canonical), (-Rational::one(), &boundary)])?;

    let curves = (1..=g - 2)
        .map(|i| FCurve::new(genus, FCurveKind::C3(i)))
        .collect::<Result<Vec<_>>>()?;
    let minus_one = -Rational::one();
    let mut deviations = Vec::new();
    let mut evaluations = 0;
    for (m, alpha, beta) in &grid.points {
        let d = linear_combination(&[(m * alpha, &lambda), (m * beta, &face), (Rational::one(), &constant)])?;
        for c in &curves {
            let value = intersect(&d, c)?;
            evaluations += 1;
            if value != minus_one {
                deviations.push(BpfDeviation {
                    m: m.clone(),
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    curve: c.tag(),
                    value,
                });
            }
        }
    }

    let symbolic = (1..=genus.top_index())
        .map(|i| SymbolicRow {
            index: i,
            lambda_part: lambda.b()[i].clone(),
            face_part: face.b()[i].clone(),
            constant_part: constant.b()[i].clone(),
        })
        .collect();

    Ok(BpfReport {
        genus: g,
        points: grid.points.len(),
        evaluations,
        curves: curves.iter().map(FCurve::tag).collect(),
        deviations,
        symbolic,
    })
}
