//! Exact membership in a finitely generated cone.
//!
//! Decides whether `x = Σ λ_j g_j` has a solution with `λ >= 0` by running
//! phase one of the simplex method over the rationals (Bland's rule, so it
//! terminates). On failure the optimal phase-one duals give a Farkas
//! certificate `y` with `y·g_j >= 0` for every generator and `y·x < 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vector", rename_all = "snake_case")]
pub enum ConicMembership {
    /// Nonnegative coefficients, one per generator.
    Member(Vec<Rational>),
    /// A separating functional.
    NonMember(Vec<Rational>),
}

impl ConicMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, ConicMembership::Member(_))
    }
}

pub fn conic_membership(generators: &[Vec<Rational>], x: &[Rational]) -> Result<ConicMembership> {
    let m = x.len();
    let n = generators.len();
    for g in generators {
        if g.len() != m {
            return Err(Error::ShapeMismatch {
                expected: m,
                found: g.len(),
            });
        }
    }

    // Row i is flipped so that the right-hand side is nonnegative.
    let signs: Vec<Rational> = x
        .iter()
        .map(|v| {
            if v.is_negative() {
                -Rational::one()
            } else {
                Rational::one()
            }
        })
        .collect();
    let width = n + m + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            for (j, g) in generators.iter().enumerate() {
                row[j] = &signs[i] * &g[i];
            }
            row[n + i] = Rational::one();
            row[rhs] = &signs[i] * &x[i];
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let cost = |j: usize| {
        if j >= n && j < n + m {
            Rational::one()
        } else {
            Rational::zero()
        }
    };

    let reduced_costs = |t: &[Vec<Rational>], basis: &[usize]| -> Vec<Rational> {
        (0..width - 1)
            .map(|j| {
                let z: Rational = (0..m).map(|i| cost(basis[i]) * &t[i][j]).sum();
                cost(j) - z
            })
            .collect()
    };

    loop {
        let d = reduced_costs(&t, &basis);
        let Some(enter) = (0..width - 1).find(|&j| d[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (row, _) = leave.expect("phase-one objective is bounded");
        let inv = t[row][enter].recip().expect("pivot is positive");
        for v in t[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m {
            if i == row || t[i][enter].is_zero() {
                continue;
            }
            let factor = t[i][enter].clone();
            for j in 0..width {
                let delta = &factor * &t[row][j];
                t[i][j] -= &delta;
            }
        }
        basis[row] = enter;
    }

    let objective: Rational = (0..m).map(|i| cost(basis[i]) * &t[i][rhs]).sum();
    if objective.is_zero() {
        let mut coeffs = vec![Rational::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                coeffs[b] = t[i][rhs].clone();
            }
        }
        return Ok(ConicMembership::Member(coeffs));
    }

    // Duals of the flipped system: y_i = 1 - (reduced cost of artificial i).
    let d = reduced_costs(&t, &basis);
    let y: Vec<Rational> = (0..m).map(|i| -(&signs[i] * (Rational::one() - &d[n + i]))).collect();
    debug_assert!(generators.iter().all(|g| !dot(&y, g).is_negative()));
    debug_assert!(dot(&y, x).is_negative());
    Ok(ConicMembership::NonMember(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::integer(x)).collect()
    }

    fn check(gens: &[Vec<Rational>], x: &[Rational]) -> bool {
        match conic_membership(gens, x).unwrap() {
            ConicMembership::Member(c) => {
                assert!(c.iter().all(|l| !l.is_negative()));
                for i in 0..x.len() {
                    let s: Rational = gens.iter().zip(&c).map(|(g, l)| &g[i] * l).sum();
                    assert_eq!(s, x[i]);
                }
                true
            }
            ConicMembership::NonMember(y) => {
                assert!(gens.iter().all(|g| !dot(&y, g).is_negative()));
                assert!(dot(&y, x).is_negative());
                false
            }
        }
    }

    #[test]
    fn quadrant() {
        let gens = vec![v(&[1, 0]), v(&[0, 1])];
        assert!(check(&gens, &v(&[3, 4])));
        assert!(check(&gens, &v(&[0, 0])));
        assert!(!check(&gens, &v(&[-1, 4])));
        assert!(!check(&gens, &v(&[2, -1])));
    }

    #[test]
    fn face_cone() {
        // λ and 12λ - δ_0 in (a, b_0, b_1).
        let gens = vec![v(&[1, 0, 0]), v(&[12, 1, 0])];
        assert!(check(&gens, &v(&[13, 1, 0])));
        assert!(!check(&gens, &v(&[11, 1, 0])));
        assert!(!check(&gens, &v(&[13, 1, 1])));
    }

    #[test]
    fn no_generators() {
        assert!(check(&[], &v(&[0, 0])));
        assert!(!check(&[], &v(&[0, 1])));
    }

    #[test]
    fn degenerate_generators() {
        let gens = vec![v(&[1, 1]), v(&[2, 2]), v(&[-1, -1])];
        assert!(check(&gens, &v(&[-3, -3])));
        assert!(!check(&gens, &v(&[1, 0])));
    }

    proptest! {
        #[test]
        fn certificates_are_valid(
            gens in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 0..6),
            x in proptest::collection::vec(-6i64..=6, 3),
        ) {
            let gens: Vec<Vec<Rational>> = gens.iter().map(|g| v(g)).collect();
            check(&gens, &v(&x));
        }
    }
}
