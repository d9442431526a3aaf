//! Polyhedral cones over the rationals in divisor-coefficient space.
//!
//! Coordinates are `(a, b_0, ..., b_{g/2})` for `aλ - Σ b_i δ_i`. A
//! [`PolyCone`] holds an inequality description (each row tagged with the
//! F-curves it came from) and optionally a generator description.

mod certificate;
mod conic;

use serde::Serialize;

pub use certificate::{
    assess_face, face_of, lemma_columns, lemma_matrix, lemma_rows, verify_extremal_face, Check, FaceCertificate,
};
pub use conic::{conic_membership, ConicMembership};

use crate::classes::GenusContext;
use crate::error::{Error, Result};
use crate::fcurves::enumerate_classes;
use crate::linalg::RationalMatrix;
use crate::rational::{dot, primitive, Rational};

pub const DEFAULT_DIMENSION_LIMIT: usize = 8;

pub const FNEF_LABEL: &str = "F-nef cone";

/// `normal · x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub normal: Vec<Rational>,
    pub provenance: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyCone {
    dim: usize,
    label: String,
    inequalities: Vec<Inequality>,
    generators: Option<Vec<Vec<Rational>>>,
}

impl PolyCone {
    pub fn from_inequalities(dim: usize, label: impl Into<String>, inequalities: Vec<Inequality>) -> Result<Self> {
        for ineq in &inequalities {
            if ineq.normal.len() != dim {
                return Err(Error::ShapeMismatch {
                    expected: dim,
                    found: ineq.normal.len(),
                });
            }
        }
        Ok(PolyCone {
            dim,
            label: label.into(),
            inequalities,
            generators: None,
        })
    }

    /// A cone given by generators only. Generators are stored primitively
    /// scaled; zero vectors are dropped.
    pub fn from_generators(dim: usize, label: impl Into<String>, generators: Vec<Vec<Rational>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != dim {
                return Err(Error::ShapeMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            if g.iter().any(|x| !x.is_zero()) {
                gens.push(primitive(&g));
            }
        }
        Ok(PolyCone {
            dim,
            label: label.into(),
            inequalities: Vec::new(),
            generators: Some(gens),
        })
    }

    /// Attaches the extreme rays computed by double description.
    pub fn with_extreme_rays(mut self, limit: usize) -> Result<Self> {
        self.generators = Some(extreme_rays_with_limit(&self, limit)?);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn generators(&self) -> Option<&[Vec<Rational>]> {
        self.generators.as_deref()
    }

    /// Number of F-curve tuples behind the inequalities, counting every
    /// numerically duplicate tuple separately.
    pub fn raw_inequality_count(&self) -> usize {
        self.inequalities.iter().map(|i| i.provenance.len().max(1)).sum()
    }

    pub fn normal_matrix(&self) -> RationalMatrix {
        let rows: Vec<Vec<Rational>> = self.inequalities.iter().map(|i| i.normal.clone()).collect();
        RationalMatrix::from_rows(&rows, self.dim).expect("normals have the ambient dimension")
    }

    /// Index of the first inequality (in stored order) that `x` violates.
    pub fn first_violation(&self, x: &[Rational]) -> Option<usize> {
        self.inequalities.iter().position(|i| dot(&i.normal, x).is_negative())
    }

    /// H-representation membership.
    pub fn satisfies_all(&self, x: &[Rational]) -> bool {
        self.first_violation(x).is_none()
    }

    /// V-representation membership, `None` if no generators are stored.
    pub fn conic_membership(&self, x: &[Rational]) -> Option<Result<ConicMembership>> {
        self.generators.as_ref().map(|g| conic_membership(g, x))
    }

    /// Indices of inequalities that are tight at `x`.
    pub fn active_set(&self, x: &[Rational]) -> Vec<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, i)| dot(&i.normal, x).is_zero())
            .map(|(n, _)| n)
            .collect()
    }

    pub fn rank_of(&self, rows: &[usize]) -> usize {
        let normals: Vec<Vec<Rational>> = rows.iter().map(|&r| self.inequalities[r].normal.clone()).collect();
        RationalMatrix::from_rows(&normals, self.dim)
            .expect("normals have the ambient dimension")
            .rank()
    }

    /// Rank of the tight inequalities at `x`. A nonzero member of a pointed
    /// cone spans an extreme ray iff this equals `dim - 1`.
    pub fn active_rank(&self, x: &[Rational]) -> usize {
        self.rank_of(&self.active_set(x))
    }

    /// Same cone with the inequalities reordered by `order` (a permutation).
    pub fn permuted(&self, order: &[usize]) -> Self {
        let mut c = self.clone();
        c.inequalities = order.iter().map(|&i| self.inequalities[i].clone()).collect();
        c
    }
}

/// The cone of divisors pairing nonnegatively with every F-curve, one
/// inequality per numerical class of curves, in curve order. This contains
/// the nef cone; nothing here assumes the two agree.
pub fn fnef_cone(g: u32) -> Result<PolyCone> {
    let genus = GenusContext::with_basis(g)?;
    let inequalities = enumerate_classes(g)?
        .into_iter()
        .map(|c| Inequality {
            normal: c.representative.normal(),
            provenance: c.aliases.iter().map(|a| a.tag()).collect(),
        })
        .collect();
    PolyCone::from_inequalities(genus.dim(), FNEF_LABEL, inequalities)
}

pub fn extreme_rays(cone: &PolyCone) -> Result<Vec<Vec<Rational>>> {
    extreme_rays_with_limit(cone, DEFAULT_DIMENSION_LIMIT)
}

struct Ray {
    coords: Vec<Rational>,
    /// Processed inequalities that are tight on this ray.
    zeros: Vec<usize>,
}

/// Double description: inequalities are inserted in stored order starting
/// from the simplicial cone cut out by the first `dim` independent rows. Two
/// rays are adjacent when their common tight rows have rank `dim - 2`.
/// Output rays are primitive and sorted lexicographically.
pub fn extreme_rays_with_limit(cone: &PolyCone, limit: usize) -> Result<Vec<Vec<Rational>>> {
    let d = cone.dim;
    if d > limit {
        return Err(Error::DimensionLimitExceeded { dim: d, limit });
    }
    let rank = cone.normal_matrix().rank();
    if rank < d {
        return Err(Error::NotPointed { lineality: d - rank });
    }

    let mut initial: Vec<usize> = Vec::with_capacity(d);
    for i in 0..cone.inequalities.len() {
        let mut trial = initial.clone();
        trial.push(i);
        if cone.rank_of(&trial) == trial.len() {
            initial = trial;
        }
        if initial.len() == d {
            break;
        }
    }
    let basis_rows: Vec<Vec<Rational>> = initial.iter().map(|&r| cone.inequalities[r].normal.clone()).collect();
    let basis = RationalMatrix::from_rows(&basis_rows, d)?;

    let mut rays: Vec<Ray> = Vec::with_capacity(d);
    for k in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[k] = Rational::one();
        let col = basis.solve(&e)?.expect("initial rows are independent");
        let zeros = initial
            .iter()
            .enumerate()
            .filter(|(n, _)| *n != k)
            .map(|(_, &r)| r)
            .collect();
        rays.push(Ray {
            coords: primitive(&col),
            zeros,
        });
    }

    for i in 0..cone.inequalities.len() {
        if initial.contains(&i) {
            continue;
        }
        let normal = &cone.inequalities[i].normal;
        let values: Vec<Rational> = rays.iter().map(|r| dot(normal, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&r| values[r].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&r| values[r].is_negative()).collect();

        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = rays[p]
                    .zeros
                    .iter()
                    .copied()
                    .filter(|z| rays[n].zeros.contains(z))
                    .collect();
                if common.len() + 2 < d || cone.rank_of(&common) != d - 2 {
                    continue;
                }
                let coords: Vec<Rational> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(xn, xp)| &values[p] * xn - &values[n] * xp)
                    .collect();
                let mut zeros = common;
                zeros.push(i);
                next.push(Ray {
                    coords: primitive(&coords),
                    zeros,
                });
            }
        }
        for (r, ray) in rays.into_iter().enumerate() {
            if values[r].is_negative() {
                continue;
            }
            let mut ray = ray;
            if values[r].is_zero() {
                ray.zeros.push(i);
            }
            next.push(ray);
        }
        rays = next;
    }

    let mut out: Vec<Vec<Rational>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
