use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mgbar_nef::cone::{conic_membership, fnef_cone};
use mgbar_nef::torelli::{pullback_rank, Compactification};
use mgbar_nef::{
    is_fnef, pullback, pullback_nef_cone, AbelianDivisor, CompactificationModel, DivisorClass, GenusContext, Rational,
};

fn ctx(g: u32) -> GenusContext {
    GenusContext::with_basis(g).unwrap()
}

fn face_generators(g: u32) -> Vec<Vec<Rational>> {
    vec![
        DivisorClass::lambda(ctx(g)).unwrap().coordinates(),
        DivisorClass::twelve_lambda_minus_delta0(ctx(g)).unwrap().coordinates(),
    ]
}

/// The pulled-back nef cone and ⟨λ, 12λ-δ_0⟩ hold the same test points.
#[test]
fn cone_mapping_equality() {
    let model = CompactificationModel::new(Compactification::Perfect);
    let mut rng = ChaCha8Rng::seed_from_u64(392);
    for g in 3..=8 {
        let pulled = pullback_nef_cone(&model, g).unwrap();
        let pulled = pulled.generators().unwrap().to_vec();
        let reference = face_generators(g);
        let d = ctx(g).dim();
        let mut agree_inside = 0;
        for n in 0..500 {
            let mut x: Vec<Rational> = (0..d)
                .map(|_| Rational::new(rng.gen_range(-24..=24), rng.gen_range(1..=5)))
                .collect();
            if n % 2 == 0 {
                x[2..].iter_mut().for_each(|v| *v = Rational::zero());
                x[1] = x[1].abs();
                x[0] = Rational::integer(12) * &x[1] + Rational::new(rng.gen_range(-2..=6), 5);
            }
            let a = conic_membership(&pulled, &x).unwrap().is_member();
            let b = conic_membership(&reference, &x).unwrap().is_member();
            assert_eq!(a, b, "g={g} x={x:?}");
            agree_inside += a as usize;
        }
        assert!(agree_inside > 100, "g={g}: {agree_inside}");
    }
}

#[test]
fn pulled_back_members_are_fnef() {
    let model = CompactificationModel::new(Compactification::Perfect);
    let mut rng = ChaCha8Rng::seed_from_u64(393);
    for g in 3..=12 {
        let cone = fnef_cone(g).unwrap();
        for _ in 0..20 {
            let b = Rational::new(rng.gen_range(0..=30), rng.gen_range(1..=7));
            let a = Rational::integer(12) * &b + Rational::new(rng.gen_range(0..=30), rng.gen_range(1..=7));
            let d = AbelianDivisor::new(Compactification::Perfect, a, Some(b)).unwrap();
            assert!(model.is_nef(&d).unwrap());
            let pulled = pullback(&model, &d, g).unwrap();
            assert!(is_fnef(&pulled).unwrap().fnef, "g={g}: {d}");
            assert!(cone.satisfies_all(&pulled.coordinates()), "g={g}: {d}");
        }
    }
}

#[test]
fn image_has_picard_number_two() {
    let perfect = CompactificationModel::new(Compactification::Perfect);
    let satake = CompactificationModel::new(Compactification::Satake);
    for g in 3..=12 {
        assert_eq!(pullback_rank(&perfect, g).unwrap(), 2);
        assert_eq!(pullback_rank(&satake, g).unwrap(), 1);
    }
}
