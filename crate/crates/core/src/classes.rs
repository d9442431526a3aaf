//! Rational divisor classes on the moduli space of stable genus-g curves.
//!
//! A class is stored as the pair `(a, b)` meaning `a*λ - Σ b_i δ_i` for
//! `0 <= i <= g/2`. Note the minus sign: the canonical class `13λ - 2Σδ_i` is
//! stored with `b_i = 2`. The boundary classes satisfy `δ_k = δ_{g-k}`, which
//! is how indices above `g/2` are resolved (see [`reflect_index`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::parse_terms;
use crate::rational::Rational;

/// Genus of the curves being parametrized.
///
/// Genus 2 contexts exist, but λ, δ_0, δ_1 are not a basis there, so anything
/// that relies on the basis requires g >= 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct GenusContext {
    g: u32,
}

pub const MIN_GENUS: u32 = 2;
pub const MIN_BASIS_GENUS: u32 = 3;

impl GenusContext {
    pub fn new(g: u32) -> Result<Self> {
        if g < MIN_GENUS {
            return Err(Error::UnsupportedGenus {
                genus: g,
                min: MIN_GENUS,
            });
        }
        Ok(GenusContext { g })
    }

    /// A context in which `{λ, δ_0, ..., δ_{g/2}}` is a basis.
    pub fn with_basis(g: u32) -> Result<Self> {
        let ctx = Self::new(g)?;
        ctx.require_basis()?;
        Ok(ctx)
    }

    pub fn require_basis(&self) -> Result<()> {
        if self.g < MIN_BASIS_GENUS {
            return Err(Error::UnsupportedGenus {
                genus: self.g,
                min: MIN_BASIS_GENUS,
            });
        }
        Ok(())
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    /// Largest boundary index, `⌊g/2⌋`.
    pub fn top_index(&self) -> usize {
        (self.g / 2) as usize
    }

    /// Number of boundary classes, `⌊g/2⌋ + 1`.
    pub fn boundary_count(&self) -> usize {
        self.top_index() + 1
    }

    /// Dimension of the Néron-Severi space, `⌊g/2⌋ + 2`.
    pub fn dim(&self) -> usize {
        self.top_index() + 2
    }

    pub fn reflect(&self, k: i64) -> Result<usize> {
        reflect_index(k, self.g)
    }
}

impl TryFrom<u32> for GenusContext {
    type Error = Error;
    fn try_from(g: u32) -> Result<Self> {
        GenusContext::new(g)
    }
}

impl From<GenusContext> for u32 {
    fn from(ctx: GenusContext) -> u32 {
        ctx.g
    }
}

/// `min(k, g - k)`, the representative of `δ_k = δ_{g-k}`.
pub fn reflect_index(k: i64, g: u32) -> Result<usize> {
    let g = g as i64;
    if k < 0 || k > g {
        return Err(Error::IndexOutOfRange {
            index: k,
            genus: g as u32,
        });
    }
    Ok(k.min(g - k) as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    genus: GenusContext,
    a: Rational,
    b: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedDivisor {
    Lambda,
    TwelveLambdaMinusDelta0,
    Delta(usize),
    /// `K = 13λ - 2Σδ_i`.
    Canonical,
    /// `Δ = Σδ_i`.
    BoundarySum,
}

impl DivisorClass {
    pub fn new(genus: GenusContext, a: Rational, b: Vec<Rational>) -> Result<Self> {
        genus.require_basis()?;
        if b.len() != genus.boundary_count() {
            return Err(Error::ShapeMismatch {
                expected: genus.boundary_count(),
                found: b.len(),
            });
        }
        Ok(DivisorClass { genus, a, b })
    }

    pub fn zero(genus: GenusContext) -> Result<Self> {
        Self::new(genus, Rational::zero(), vec![Rational::zero(); genus.boundary_count()])
    }

    /// Builds a class from coordinates `(a, b_0, ..., b_{g/2})`.
    pub fn from_coordinates(genus: GenusContext, coords: &[Rational]) -> Result<Self> {
        if coords.len() != genus.dim() {
            return Err(Error::ShapeMismatch {
                expected: genus.dim(),
                found: coords.len(),
            });
        }
        Self::new(genus, coords[0].clone(), coords[1..].to_vec())
    }

    pub fn named(genus: GenusContext, name: NamedDivisor) -> Result<Self> {
        let mut d = Self::zero(genus)?;
        match name {
            NamedDivisor::Lambda => d.a = Rational::one(),
            NamedDivisor::TwelveLambdaMinusDelta0 => {
                d.a = Rational::integer(12);
                d.b[0] = Rational::one();
            }
            NamedDivisor::Delta(i) => {
                if i > genus.top_index() {
                    return Err(Error::IndexOutOfRange {
                        index: i as i64,
                        genus: genus.genus(),
                    });
                }
                d.b[i] = -Rational::one();
            }
            NamedDivisor::Canonical => {
                d.a = Rational::integer(13);
                d.b.iter_mut().for_each(|x| *x = Rational::integer(2));
            }
            NamedDivisor::BoundarySum => {
                d.b.iter_mut().for_each(|x| *x = -Rational::one());
            }
        }
        Ok(d)
    }

    pub fn lambda(genus: GenusContext) -> Result<Self> {
        Self::named(genus, NamedDivisor::Lambda)
    }

    pub fn twelve_lambda_minus_delta0(genus: GenusContext) -> Result<Self> {
        Self::named(genus, NamedDivisor::TwelveLambdaMinusDelta0)
    }

    pub fn delta(genus: GenusContext, i: usize) -> Result<Self> {
        Self::named(genus, NamedDivisor::Delta(i))
    }

    pub fn genus(&self) -> GenusContext {
        self.genus
    }

    /// λ-coefficient.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Stored `b_i` for `0 <= i <= g/2`; the δ_i-coefficient is `-b_i`.
    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// `b_k` with `k` resolved through [`reflect_index`].
    pub fn b_at(&self, k: i64) -> Result<&Rational> {
        Ok(&self.b[self.genus.reflect(k)?])
    }

    /// Coefficient of δ_i in the signed expansion, i.e. `-b_i`.
    pub fn delta_coefficient(&self, i: usize) -> Rational {
        -&self.b[i]
    }

    /// `(a, b_0, ..., b_{g/2})`.
    pub fn coordinates(&self) -> Vec<Rational> {
        std::iter::once(self.a.clone()).chain(self.b.iter().cloned()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        DivisorClass {
            genus: self.genus,
            a: &self.a * s,
            b: self.b.iter().map(|x| x * s).collect(),
        }
    }

    fn check_genus(&self, other: &DivisorClass) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus.genus(),
                right: other.genus.genus(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DivisorClass) -> Result<Self> {
        self.check_genus(other)?;
        Ok(DivisorClass {
            genus: self.genus,
            a: &self.a + &other.a,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn try_sub(&self, other: &DivisorClass) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    /// Parses `a*L - b0*d0 - ...`, with the shorthands `lambda`, `K`,
    /// `Delta` and implicit multiplication (`12L-d0`).
    pub fn parse(genus: GenusContext, input: &str) -> Result<Self> {
        let mut d = Self::zero(genus)?;
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
            let name = match (sym.name.as_str(), sym.index.as_deref()) {
                ("L" | "lambda", None) => NamedDivisor::Lambda,
                ("K", None) => NamedDivisor::Canonical,
                ("Delta", None) => NamedDivisor::BoundarySum,
                ("d" | "delta", Some(idx)) => {
                    let k: i64 = idx.parse().map_err(|_| Error::Parse {
                        pos: sym.pos,
                        msg: format!("bad boundary index {idx:?}"),
                    })?;
                    let i = reflect_index(k, genus.genus()).map_err(|_| Error::Parse {
                        pos: sym.pos,
                        msg: format!("boundary index {k} out of range 0..={}", genus.genus()),
                    })?;
                    NamedDivisor::Delta(i)
                }
                _ => {
                    return Err(Error::Parse {
                        pos: sym.pos,
                        msg: format!("unknown divisor symbol {:?}", sym.name),
                    })
                }
            };
            d = d.try_add(&Self::named(genus, name)?.scale(&term.coeff))?;
        }
        Ok(d)
    }

    /// Signed expansion in the input grammar, e.g. `13*L - 2*d0 - 2*d1`.
    /// Zero terms are omitted; the zero class prints as `0`.
    pub fn to_expression(&self) -> String {
        let mut out = String::new();
        let mut push = |coeff: Rational, sym: String| {
            if coeff.is_zero() {
                return;
            }
            let sign_neg = coeff.is_negative();
            if out.is_empty() {
                if sign_neg {
                    out.push('-');
                }
            } else {
                out.push_str(if sign_neg { " - " } else { " + " });
            }
            out.push_str(&format!("{}*{}", coeff.abs(), sym));
        };
        push(self.a.clone(), "L".into());
        for i in 0..self.b.len() {
            push(self.delta_coefficient(i), format!("d{i}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

#[derive(Serialize, Deserialize)]
struct DivisorRecord {
    genus: GenusContext,
    a: Rational,
    b: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expansion: Option<String>,
}

impl Serialize for DivisorClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DivisorRecord {
            genus: self.genus,
            a: self.a.clone(),
            b: self.b.clone(),
            expansion: Some(self.to_expression()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = DivisorRecord::deserialize(d)?;
        let class = DivisorClass::new(rec.genus, rec.a, rec.b).map_err(serde::de::Error::custom)?;
        if let Some(exp) = rec.expansion {
            let parsed = DivisorClass::parse(rec.genus, &exp).map_err(serde::de::Error::custom)?;
            if parsed != class {
                return Err(serde::de::Error::custom(
                    "expansion disagrees with the (a, b) coefficients",
                ));
            }
        }
        Ok(class)
    }
}

/// `Σ c_k D_k` over classes of one genus.
pub fn linear_combination(terms: &[(Rational, &DivisorClass)]) -> Result<DivisorClass> {
    let Some((_, first)) = terms.first() else {
        return Err(Error::ShapeMismatch { expected: 1, found: 0 });
    };
    let mut acc = DivisorClass::zero(first.genus())?;
    for (c, d) in terms {
        acc = acc.try_add(&d.scale(c))?;
    }
    Ok(acc)
}

/// `αλ + β(12λ - δ_0) = (α + 12β)λ - βδ_0` for `α, β >= 0`.
pub fn face_member(alpha: &Rational, beta: &Rational, genus: GenusContext) -> Result<DivisorClass> {
    if alpha.is_negative() {
        return Err(Error::NegativeCoefficient {
            name: "alpha",
            value: alpha.to_string(),
        });
    }
    if beta.is_negative() {
        return Err(Error::NegativeCoefficient {
            name: "beta",
            value: beta.to_string(),
        });
    }
    let mut d = DivisorClass::zero(genus)?;
    d.a = alpha + Rational::integer(12) * beta;
    d.b[0] = beta.clone();
    Ok(d)
}
