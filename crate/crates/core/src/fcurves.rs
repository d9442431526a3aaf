//! The six F-curve families and their intersection numbers with divisors.
//!
//! Every family's pairing `D·C` is a short linear expression in the
//! coefficients `(a, b_0, ..., b_{g/2})` of `D = aλ - Σ b_i δ_i`. Those
//! expressions live in [`formula`] as data, and the same data drives
//! evaluation, table rendering and the genus-independent λ / 12λ-δ_0 columns.
//! Boundary indices above `g/2` in the expressions resolve via `δ_k = δ_{g-k}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classes::{DivisorClass, GenusContext};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::C1, Family::C2, Family::C3, Family::C4, Family::C5, Family::C6];

    pub fn name(self) -> &'static str {
        match self {
            Family::C1 => "C1",
            Family::C2 => "C2",
            Family::C3 => "C3",
            Family::C4 => "C4",
            Family::C5 => "C5",
            Family::C6 => "C6",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::C1 | Family::C2 => 0,
            Family::C3 | Family::C4 => 1,
            Family::C5 => 2,
            Family::C6 => 4,
        }
    }

    fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Family plus index tuple. The derived order (family first, then indices)
/// is the order used for reporting and for choosing representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FCurveKind {
    C1,
    C2,
    C3(u32),
    C4(u32),
    C5(u32, u32),
    C6([u32; 4]),
}

impl FCurveKind {
    pub fn family(&self) -> Family {
        match self {
            FCurveKind::C1 => Family::C1,
            FCurveKind::C2 => Family::C2,
            FCurveKind::C3(_) => Family::C3,
            FCurveKind::C4(_) => Family::C4,
            FCurveKind::C5(..) => Family::C5,
            FCurveKind::C6(_) => Family::C6,
        }
    }

    pub fn indices(&self) -> Vec<u32> {
        match *self {
            FCurveKind::C1 | FCurveKind::C2 => vec![],
            FCurveKind::C3(i) | FCurveKind::C4(i) => vec![i],
            FCurveKind::C5(i, j) => vec![i, j],
            FCurveKind::C6(ix) => ix.to_vec(),
        }
    }

    pub fn from_parts(family: Family, indices: &[u32]) -> Option<FCurveKind> {
        if indices.len() != family.arity() {
            return None;
        }
        Some(match family {
            Family::C1 => FCurveKind::C1,
            Family::C2 => FCurveKind::C2,
            Family::C3 => FCurveKind::C3(indices[0]),
            Family::C4 => FCurveKind::C4(indices[0]),
            Family::C5 => FCurveKind::C5(indices[0], indices[1]),
            Family::C6 => FCurveKind::C6([indices[0], indices[1], indices[2], indices[3]]),
        })
    }

    /// Sorted index tuple for the symmetric families.
    pub fn canonical(self) -> FCurveKind {
        match self {
            FCurveKind::C5(i, j) => FCurveKind::C5(i.min(j), i.max(j)),
            FCurveKind::C6(mut ix) => {
                ix.sort_unstable();
                FCurveKind::C6(ix)
            }
            k => k,
        }
    }
}

impl fmt::Display for FCurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ix = self.indices();
        f.write_str(self.family().name())?;
        if !ix.is_empty() {
            let parts: Vec<String> = ix.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Which coefficient of `D` a formula term reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficient {
    /// The λ-coefficient `a`.
    A,
    /// `b_k` with `k = offset + Σ indices[slot]`.
    B { slots: &'static [usize], offset: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaTerm {
    pub numer: i64,
    pub denom: i64,
    pub coeff: Coefficient,
}

const fn term(numer: i64, denom: i64, coeff: Coefficient) -> FormulaTerm {
    FormulaTerm { numer, denom, coeff }
}

const fn b(slots: &'static [usize]) -> Coefficient {
    Coefficient::B { slots, offset: 0 }
}

const fn b_fixed(k: u32) -> Coefficient {
    Coefficient::B { slots: &[], offset: k }
}

const C1_FORMULA: &[FormulaTerm] = &[
    term(1, 12, Coefficient::A),
    term(-1, 1, b_fixed(0)),
    term(1, 12, b_fixed(1)),
];
const C2_FORMULA: &[FormulaTerm] = &[term(1, 1, b_fixed(0))];
const C3_FORMULA: &[FormulaTerm] = &[term(1, 1, b(&[0]))];
const C4_FORMULA: &[FormulaTerm] = &[
    term(2, 1, b_fixed(0)),
    term(-1, 1, Coefficient::B { slots: &[0], offset: 1 }),
];
const C5_FORMULA: &[FormulaTerm] = &[term(1, 1, b(&[0])), term(1, 1, b(&[1])), term(-1, 1, b(&[0, 1]))];
const C6_FORMULA: &[FormulaTerm] = &[
    term(1, 1, b(&[0])),
    term(1, 1, b(&[1])),
    term(1, 1, b(&[2])),
    term(1, 1, b(&[3])),
    term(-1, 1, b(&[0, 1])),
    term(-1, 1, b(&[0, 2])),
    term(-1, 1, b(&[0, 3])),
];

/// `D·C` for a curve of the given family, as a linear expression in `a, b_k`.
pub fn formula(family: Family) -> &'static [FormulaTerm] {
    match family {
        Family::C1 => C1_FORMULA,
        Family::C2 => C2_FORMULA,
        Family::C3 => C3_FORMULA,
        Family::C4 => C4_FORMULA,
        Family::C5 => C5_FORMULA,
        Family::C6 => C6_FORMULA,
    }
}

const SLOT_NAMES: [&str; 4] = ["i", "j", "k", "\u{2113}"];
const SLOT_NAMES_LATEX: [&str; 4] = ["i", "j", "k", "\\ell"];

fn index_label(slots: &[usize], offset: u32, names: &[&str; 4]) -> (String, bool) {
    if slots.is_empty() {
        return (offset.to_string(), false);
    }
    let mut parts: Vec<String> = slots.iter().map(|&s| names[s].to_string()).collect();
    if offset != 0 {
        parts.push(offset.to_string());
    }
    let compound = parts.len() > 1;
    (parts.join("+"), compound)
}

/// Renders a family's formula, e.g. `2b0 − b_{i+1}` (text) or
/// `2b_0-b_{i+1}` (LaTeX).
pub fn render_formula(family: Family, latex: bool) -> String {
    let names = if latex { &SLOT_NAMES_LATEX } else { &SLOT_NAMES };
    let mut out = String::new();
    for (n, t) in formula(family).iter().enumerate() {
        let sym = match t.coeff {
            Coefficient::A => "a".to_string(),
            Coefficient::B { slots, offset } => {
                let (label, compound) = index_label(slots, offset, names);
                match (latex, slots.is_empty(), compound) {
                    (false, true, _) => format!("b{label}"),
                    (false, false, false) => format!("b_{label}"),
                    (true, _, false) if label.len() == 1 => format!("b_{label}"),
                    _ => format!("b_{{{label}}}"),
                }
            }
        };
        let neg = t.numer < 0;
        let num = t.numer.abs();
        let magnitude = match (num, t.denom, latex) {
            (1, 1, _) => sym,
            (_, 1, _) => format!("{num}{sym}"),
            (1, d, false) => format!("{sym}/{d}"),
            (_, d, false) => format!("{num}{sym}/{d}"),
            (1, d, true) => format!("\\frac{{{sym}}}{{{d}}}"),
            (_, d, true) => format!("\\frac{{{num}{sym}}}{{{d}}}"),
        };
        let minus = if latex { "-" } else { "\u{2212}" };
        match (n, neg, latex) {
            (0, false, _) => {}
            (0, true, _) => out.push_str(minus),
            (_, false, false) => out.push_str(" + "),
            (_, true, false) => out.push_str(&format!(" {minus} ")),
            (_, false, true) => out.push('+'),
            (_, true, true) => out.push('-'),
        }
        out.push_str(&magnitude);
    }
    out
}

/// Value of a family's formula on a divisor whose `b_k` are all equal to
/// `b_rest` for `k >= 1`.
///
/// For valid index tuples every index expression other than the literal `0`
/// resolves to some `k >= 1`, so this gives the pairing of every curve in the
/// family at every genus, e.g. against λ and 12λ-δ_0.
pub fn evaluate_uniform(family: Family, a: &Rational, b0: &Rational, b_rest: &Rational) -> Rational {
    formula(family)
        .iter()
        .map(|t| {
            let c = Rational::new(t.numer, t.denom);
            let v = match t.coeff {
                Coefficient::A => a,
                Coefficient::B { slots: &[], offset: 0 } => b0,
                Coefficient::B { .. } => b_rest,
            };
            c * v
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FCurve {
    kind: FCurveKind,
    genus: GenusContext,
}

impl FCurve {
    /// Validates the index bounds of the family definition. C5/C6 tuples are
    /// accepted in any order.
    pub fn new(genus: GenusContext, kind: FCurveKind) -> Result<Self> {
        genus.require_basis()?;
        let g = genus.genus();
        let ok = match kind {
            FCurveKind::C1 | FCurveKind::C2 => true,
            FCurveKind::C3(i) => (1..=g - 2).contains(&i),
            FCurveKind::C4(i) => i <= g - 2,
            FCurveKind::C5(i, j) => i >= 1 && j >= 1 && i + j < g,
            FCurveKind::C6(ix) => ix.iter().all(|&x| x >= 1) && ix.iter().sum::<u32>() == g,
        };
        if !ok {
            return Err(Error::IndexOutOfRange {
                index: kind.indices().iter().map(|&x| x as i64).max().unwrap_or(0),
                genus: g,
            });
        }
        Ok(FCurve { kind, genus })
    }

    pub fn kind(&self) -> FCurveKind {
        self.kind
    }

    pub fn family(&self) -> Family {
        self.kind.family()
    }

    pub fn genus(&self) -> GenusContext {
        self.genus
    }

    pub fn tag(&self) -> String {
        self.kind.to_string()
    }

    /// Pairings against `λ, δ_0, ..., δ_{g/2}`.
    pub fn intersection_vector(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.genus.dim());
        let lambda = DivisorClass::lambda(self.genus).expect("curve genus has a basis");
        v.push(intersect(&lambda, self).expect("same genus"));
        for i in 0..=self.genus.top_index() {
            let delta = DivisorClass::delta(self.genus, i).expect("index in range");
            v.push(intersect(&delta, self).expect("same genus"));
        }
        v
    }

    /// The linear functional `D ↦ D·C` in coordinates `(a, b_0, ...)`.
    /// Since `D = aλ - Σ b_i δ_i`, this is the intersection vector with the
    /// δ-entries negated.
    pub fn normal(&self) -> Vec<Rational> {
        self.intersection_vector()
            .into_iter()
            .enumerate()
            .map(|(n, x)| if n == 0 { x } else { -x })
            .collect()
    }
}

impl fmt::Display for FCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.kind, f)
    }
}

#[derive(Serialize, Deserialize)]
struct FCurveRecord {
    family: String,
    indices: Vec<u32>,
    genus: u32,
    vector: Vec<Rational>,
}

impl Serialize for FCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FCurveRecord {
            family: self.family().name().to_string(),
            indices: self.kind.indices(),
            genus: self.genus.genus(),
            vector: self.intersection_vector(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = FCurveRecord::deserialize(d)?;
        let family = Family::from_name(&rec.family)
            .ok_or_else(|| D::Error::custom(format!("unknown family {:?}", rec.family)))?;
        let kind =
            FCurveKind::from_parts(family, &rec.indices).ok_or_else(|| D::Error::custom("wrong number of indices"))?;
        let genus = GenusContext::new(rec.genus).map_err(D::Error::custom)?;
        let curve = FCurve::new(genus, kind).map_err(D::Error::custom)?;
        if curve.intersection_vector() != rec.vector {
            return Err(D::Error::custom("intersection vector does not match the curve"));
        }
        Ok(curve)
    }
}

pub fn intersect(d: &DivisorClass, c: &FCurve) -> Result<Rational> {
    if d.genus() != c.genus {
        return Err(Error::GenusMismatch {
            left: d.genus().genus(),
            right: c.genus.genus(),
        });
    }
    let ix = c.kind.indices();
    let mut total = Rational::zero();
    for t in formula(c.family()) {
        let value = match t.coeff {
            Coefficient::A => d.a(),
            Coefficient::B { slots, offset } => {
                let k = offset as i64 + slots.iter().map(|&s| ix[s] as i64).sum::<i64>();
                d.b_at(k)?
            }
        };
        total += Rational::new(t.numer, t.denom) * value;
    }
    Ok(total)
}

/// Every index tuple allowed by the family definitions, with C5/C6 tuples
/// sorted, in [`FCurveKind`] order. No numerical deduplication.
pub fn enumerate_raw(g: u32) -> Result<Vec<FCurve>> {
    let genus = GenusContext::with_basis(g)?;
    let mut kinds = vec![FCurveKind::C1, FCurveKind::C2];
    kinds.extend((1..=g - 2).map(FCurveKind::C3));
    kinds.extend((0..=g - 2).map(FCurveKind::C4));
    for i in 1..g {
        for j in i..g - i {
            kinds.push(FCurveKind::C5(i, j));
        }
    }
    for i in 1..=g / 4 {
        for j in i..=(g - i) / 3 {
            for k in j..=(g - i - j) / 2 {
                let l = g - i - j - k;
                kinds.push(FCurveKind::C6([i, j, k, l]));
            }
        }
    }
    kinds.sort();
    kinds.into_iter().map(|k| FCurve::new(genus, k)).collect()
}

/// One numerical class of F-curves: all raw tuples sharing an intersection
/// vector. The representative is the smallest tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FCurveClass {
    pub representative: FCurve,
    pub aliases: Vec<FCurve>,
    pub vector: Vec<Rational>,
}

pub fn enumerate_classes(g: u32) -> Result<Vec<FCurveClass>> {
    let mut groups: BTreeMap<Vec<Rational>, Vec<FCurve>> = BTreeMap::new();
    for c in enumerate_raw(g)? {
        groups.entry(c.intersection_vector()).or_default().push(c);
    }
    let mut classes: Vec<FCurveClass> = groups
        .into_iter()
        .map(|(vector, aliases)| FCurveClass {
            representative: aliases[0],
            aliases,
            vector,
        })
        .collect();
    classes.sort_by_key(|c| c.representative);
    Ok(classes)
}

/// Numerically distinct F-curves, each tagged by its smallest tuple.
pub fn enumerate_fcurves(g: u32) -> Result<Vec<FCurve>> {
    Ok(enumerate_classes(g)?.into_iter().map(|c| c.representative).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub curve: FCurve,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FnefVerdict {
    pub fnef: bool,
    /// The most negative pairing, ties broken by the smaller curve.
    pub witness: Option<Violation>,
    pub violations: usize,
}

/// Whether `D` pairs nonnegatively with every F-curve of its genus.
pub fn is_fnef(d: &DivisorClass) -> Result<FnefVerdict> {
    let mut witness: Option<Violation> = None;
    let mut violations = 0;
    for curve in enumerate_fcurves(d.genus().genus())? {
        let value = intersect(d, &curve)?;
        if !value.is_negative() {
            continue;
        }
        violations += 1;
        if witness.as_ref().is_none_or(|w| value < w.value) {
            witness = Some(Violation { curve, value });
        }
    }
    Ok(FnefVerdict {
        fnef: violations == 0,
        witness,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{face_member, linear_combination, NamedDivisor};

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    fn ctx(g: u32) -> GenusContext {
        GenusContext::with_basis(g).unwrap()
    }

    fn curve(g: u32, kind: FCurveKind) -> FCurve {
        FCurve::new(ctx(g), kind).unwrap()
    }

    #[test]
    fn raw_enumeration_genus_three() {
        let tags: Vec<String> = enumerate_raw(3).unwrap().iter().map(FCurve::tag).collect();
        assert_eq!(tags, ["C1", "C2", "C3(1)", "C4(0)", "C4(1)", "C5(1,1)"]);
    }

    #[test]
    fn genus_three_dedup() {
        // C4(1) pairs via b_2 = b_1, the same as C4(0); C5(1,1) gives
        // 2b_1 - b_2 = b_1, the same as C3(1).
        let classes = enumerate_classes(3).unwrap();
        let tags: Vec<String> = classes.iter().map(|c| c.representative.tag()).collect();
        assert_eq!(tags, ["C1", "C2", "C3(1)", "C4(0)"]);
        let aliases: Vec<usize> = classes.iter().map(|c| c.aliases.len()).collect();
        assert_eq!(aliases, [1, 1, 2, 2]);
    }

    #[test]
    fn c6_tuples() {
        let c6 = |g| -> Vec<FCurveKind> {
            enumerate_raw(g)
                .unwrap()
                .into_iter()
                .map(|c| c.kind())
                .filter(|k| k.family() == Family::C6)
                .collect()
        };
        assert!(c6(3).is_empty());
        assert_eq!(c6(4), [FCurveKind::C6([1, 1, 1, 1])]);
        assert_eq!(c6(5), [FCurveKind::C6([1, 1, 1, 2])]);
        assert_eq!(
            c6(7),
            [
                FCurveKind::C6([1, 1, 1, 4]),
                FCurveKind::C6([1, 1, 2, 3]),
                FCurveKind::C6([1, 2, 2, 2]),
            ]
        );
    }

    #[test]
    fn raw_enumeration_matches_brute_force() {
        for g in 3..=12u32 {
            let mut expected = vec![FCurveKind::C1, FCurveKind::C2];
            for i in 0..=g {
                if (1..=g - 2).contains(&i) {
                    expected.push(FCurveKind::C3(i));
                }
                if i <= g - 2 {
                    expected.push(FCurveKind::C4(i));
                }
                for j in i..=g {
                    if i >= 1 && i + j < g {
                        expected.push(FCurveKind::C5(i, j));
                    }
                    for k in j..=g {
                        for l in k..=g {
                            if i >= 1 && i + j + k + l == g {
                                expected.push(FCurveKind::C6([i, j, k, l]));
                            }
                        }
                    }
                }
            }
            expected.sort();
            let got: Vec<FCurveKind> = enumerate_raw(g).unwrap().iter().map(FCurve::kind).collect();
            assert_eq!(got, expected, "genus {g}");
        }
    }

    #[test]
    fn enumeration_rejects_low_genus() {
        assert!(matches!(
            enumerate_raw(2),
            Err(Error::UnsupportedGenus { genus: 2, .. })
        ));
        assert!(enumerate_fcurves(1).is_err());
    }

    #[test]
    fn distinct_counts_are_monotone() {
        // Frozen from an independent Fraction-based enumeration script.
        let counts: Vec<usize> = (3..=15).map(|g| enumerate_fcurves(g).unwrap().len()).collect();
        assert_eq!(counts, [4, 8, 9, 14, 17, 24, 28, 37, 43, 54, 62, 75, 85]);
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn index_bounds() {
        let g = ctx(5);
        assert!(FCurve::new(g, FCurveKind::C3(0)).is_err());
        assert!(FCurve::new(g, FCurveKind::C3(4)).is_err());
        assert!(FCurve::new(g, FCurveKind::C4(3)).is_ok());
        assert!(FCurve::new(g, FCurveKind::C4(4)).is_err());
        assert!(FCurve::new(g, FCurveKind::C5(2, 3)).is_err());
        assert!(FCurve::new(g, FCurveKind::C5(3, 1)).is_ok());
        assert!(FCurve::new(g, FCurveKind::C6([2, 1, 1, 1])).is_ok());
        assert!(FCurve::new(g, FCurveKind::C6([0, 2, 2, 1])).is_err());
    }

    #[test]
    fn table_values() {
        let g = ctx(6);
        let lambda = DivisorClass::lambda(g).unwrap();
        let f = DivisorClass::twelve_lambda_minus_delta0(g).unwrap();
        let c1 = curve(6, FCurveKind::C1);
        assert_eq!(intersect(&lambda, &c1).unwrap(), Rational::new(1, 12));
        assert_eq!(intersect(&f, &c1).unwrap(), q(0));
        for i in 0..=4 {
            assert_eq!(intersect(&f, &curve(6, FCurveKind::C4(i))).unwrap(), q(2));
        }
        let zero = DivisorClass::zero(g).unwrap();
        for c in enumerate_raw(6).unwrap() {
            assert_eq!(intersect(&zero, &c).unwrap(), q(0));
        }
    }

    #[test]
    fn intersection_vector_entries() {
        let c1 = curve(5, FCurveKind::C1);
        assert_eq!(c1.intersection_vector()[0], Rational::new(1, 12));
        assert_eq!(
            c1.intersection_vector(),
            vec![Rational::new(1, 12), q(1), Rational::new(-1, 12), q(0)]
        );
        assert_eq!(curve(5, FCurveKind::C2).intersection_vector()[0], q(0));
        assert_eq!(curve(5, FCurveKind::C3(1)).intersection_vector()[2], q(-1));
        // b_{i+j} with i+j = 3 at genus 7 reads b_3 directly.
        assert_eq!(
            curve(7, FCurveKind::C5(1, 2)).intersection_vector(),
            vec![q(0), q(0), q(-1), q(-1), q(1)]
        );
    }

    #[test]
    fn normal_evaluates_pairing() {
        let g = ctx(8);
        let d = DivisorClass::parse(g, "7*L - 3/2*d0 + d1 - 2*d3 + 1/5*d4").unwrap();
        for c in enumerate_raw(8).unwrap() {
            assert_eq!(
                crate::rational::dot(&c.normal(), &d.coordinates()),
                intersect(&d, &c).unwrap()
            );
        }
    }

    #[test]
    fn genus_mismatch() {
        let d = DivisorClass::lambda(ctx(4)).unwrap();
        assert_eq!(
            intersect(&d, &curve(5, FCurveKind::C1)),
            Err(Error::GenusMismatch { left: 4, right: 5 })
        );
    }

    #[test]
    fn rendered_formulas() {
        assert_eq!(render_formula(Family::C1, false), "a/12 \u{2212} b0 + b1/12");
        assert_eq!(render_formula(Family::C2, false), "b0");
        assert_eq!(render_formula(Family::C3, false), "b_i");
        assert_eq!(render_formula(Family::C4, false), "2b0 \u{2212} b_{i+1}");
        assert_eq!(render_formula(Family::C5, false), "b_i + b_j \u{2212} b_{i+j}");
        assert_eq!(
            render_formula(Family::C6, true),
            "b_i+b_j+b_k+b_{\\ell}-b_{i+j}-b_{i+k}-b_{i+\\ell}"
        );
        assert_eq!(render_formula(Family::C1, true), "\\frac{a}{12}-b_0+\\frac{b_1}{12}");
    }

    #[test]
    fn uniform_evaluation_matches_every_curve() {
        for g in 3..=12 {
            let gc = ctx(g);
            let d = DivisorClass::parse(gc, "5*L - 2*d0 - 3*Delta").unwrap();
            for c in enumerate_raw(g).unwrap() {
                assert_eq!(
                    evaluate_uniform(c.family(), &q(5), &q(5), &q(3)),
                    intersect(&d, &c).unwrap(),
                    "{c} at genus {g}"
                );
            }
        }
    }

    #[test]
    fn fnef_examples() {
        let g8 = ctx(8);
        assert!(is_fnef(&DivisorClass::lambda(g8).unwrap()).unwrap().fnef);
        assert!(
            is_fnef(&DivisorClass::twelve_lambda_minus_delta0(g8).unwrap())
                .unwrap()
                .fnef
        );

        let g5 = ctx(5);
        let dab = face_member(&q(1), &q(1), g5).unwrap();
        let k = DivisorClass::named(g5, NamedDivisor::Canonical).unwrap();
        let delta = DivisorClass::named(g5, NamedDivisor::BoundarySum).unwrap();
        let x = linear_combination(&[(q(1), &dab), (q(-1), &k), (q(-1), &delta)]).unwrap();
        let verdict = is_fnef(&x).unwrap();
        assert!(!verdict.fnef);
        let w = verdict.witness.unwrap();
        assert_eq!(w.curve.tag(), "C3(1)");
        assert_eq!(w.value, q(-1));

        let bad = DivisorClass::parse(g8, "11*L - 1*d0").unwrap();
        let verdict = is_fnef(&bad).unwrap();
        assert_eq!(verdict.violations, 1);
        let w = verdict.witness.unwrap();
        assert_eq!(w.curve.tag(), "C1");
        assert_eq!(w.value, Rational::new(-1, 12));
    }

    #[test]
    fn serde_shape_and_round_trip() {
        let c = curve(7, FCurveKind::C5(1, 2));
        let json = serde_json::to_value(c).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"family":"C5","indices":[1,2],"genus":7,"vector":["0","0","-1","-1","1"]})
        );
        let back: FCurve = serde_json::from_value(json).unwrap();
        assert_eq!(back, c);
        let tampered = serde_json::json!({"family":"C5","indices":[1,2],"genus":7,"vector":["0","0","0","0","0"]});
        assert!(serde_json::from_value::<FCurve>(tampered).is_err());
    }
}
