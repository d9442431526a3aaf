//! Exact intersection calculus for divisors and F-curves on the moduli space
//! of stable genus-g curves, polyhedral cone tools over the rationals, and
//! the rank-one/rank-two Picard models of the toroidal and Satake
//! compactifications of A_g together with their pullbacks.
//!
//! No floating point is used anywhere; all scalars are [`Rational`].

pub mod classes;
pub mod cone;
pub mod error;
pub mod fcurves;
pub mod linalg;
mod parse;
pub mod rational;
pub mod torelli;

pub use classes::{face_member, linear_combination, reflect_index, DivisorClass, GenusContext, NamedDivisor};
pub use error::{Error, Result};
pub use fcurves::{
    enumerate_classes, enumerate_fcurves, enumerate_raw, intersect, is_fnef, FCurve, FCurveKind, Family,
};
pub use linalg::RationalMatrix;
pub use rational::Rational;
pub use torelli::{
    bpf_scan, classify_in_face, pullback, pullback_nef_cone, semiample_status, AbelianDivisor, BpfGrid, BpfReport,
    Compactification, CompactificationModel, FaceClass,
};
