mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torprod::facering::{FaceRing, FaceRingElement};
use torprod::koszul::KoszulComplex;
use torprod::toricmorphism::{ChainMaps, ToricMorphism};

use common::{random_data, random_homogeneous, rat, Q};

fn random_face_element(rng: &mut ChaCha8Rng, face: &FaceRing, degree: usize) -> FaceRingElement {
    let mut f = FaceRingElement::zero();
    for m in face.basis_of_degree(degree) {
        if rng.gen_bool(0.7) {
            f.add_term(face.ring(), m, &rat(rng.gen_range(-3..=3)));
        }
    }
    f
}

fn random_face(rng: &mut ChaCha8Rng, face: &FaceRing) -> FaceRingElement {
    let d = 2 * rng.gen_range(0..=2);
    random_face_element(rng, face, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn face_ring_is_a_commutative_ring(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = random_data(&mut rng);
        let face = FaceRing::new(data.poset_arc().clone(), Q);
        let (f, g, h) = (random_face(&mut rng, &face), random_face(&mut rng, &face), random_face(&mut rng, &face));
        prop_assert_eq!(face.multiply(&f, &g), face.multiply(&g, &f));
        prop_assert_eq!(face.multiply(&face.multiply(&f, &g), &h), face.multiply(&f, &face.multiply(&g, &h)));
        prop_assert_eq!(face.multiply(&face.one(), &f), f.clone());
        prop_assert_eq!(
            face.multiply(&f, &face.add(&g, &h)),
            face.add(&face.multiply(&f, &g), &face.multiply(&f, &h))
        );
    }

    #[test]
    fn products_agree_with_restriction_route(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = random_data(&mut rng);
        let face = FaceRing::new(data.poset_arc().clone(), Q);
        for _ in 0..3 {
            let (f, g) = (random_face(&mut rng, &face), random_face(&mut rng, &face));
            let solved = face.multiply_by_restriction(&f, &g).expect("restriction route");
            prop_assert_eq!(face.multiply(&f, &g), solved);
        }
    }

    #[test]
    fn pullback_is_a_ring_homomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = Arc::new(random_data(&mut rng));
        let morphisms = [
            ToricMorphism::power_map(data.clone(), rng.gen_range(2..=3)),
            common::basis_change(&mut rng, data.clone()),
            torprod::toricmorphism::cox_projection(data.clone()).unwrap(),
        ];
        for m in morphisms {
            let maps = ChainMaps::new(m, Q).unwrap();
            let (target, source) = (maps.target_complex().face_ring(), maps.source_complex().face_ring());
            let (f, g) = (random_face(&mut rng, target), random_face(&mut rng, target));
            let pf = maps.pullback_face(&f).unwrap();
            let pg = maps.pullback_face(&g).unwrap();
            prop_assert_eq!(maps.pullback_face(&target.multiply(&f, &g)).unwrap(), source.multiply(&pf, &pg));
            prop_assert_eq!(maps.pullback_face(&target.add(&f, &g)).unwrap(), source.add(&pf, &pg));
            prop_assert_eq!(maps.pullback_face(&target.one()).unwrap(), source.one());
        }
    }

    #[test]
    fn koszul_complex_is_a_dga(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = KoszulComplex::new(Arc::new(random_data(&mut rng)), Q);
        let (x, y, z) = (random_homogeneous(&mut rng, &k, 3), random_homogeneous(&mut rng, &k, 3), random_homogeneous(&mut rng, &k, 3));
        prop_assert!(k.differential(&k.differential(&x)).is_zero());
        let sign = if x.total_degree().unwrap_or(0) % 2 == 0 { 1 } else { -1 };
        for product in [KoszulComplex::star, KoszulComplex::wedge] {
            let lhs = k.differential(&product(&k, &x, &y));
            let rhs = k.add(&product(&k, &k.differential(&x), &y), &k.scale_int(&product(&k, &x, &k.differential(&y)), sign));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(product(&k, &product(&k, &x, &y), &z), product(&k, &x, &product(&k, &y, &z)));
        }
        let swap = if x.total_degree().unwrap_or(0) * y.total_degree().unwrap_or(0) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(k.wedge(&x, &y), k.scale_int(&k.wedge(&y, &x), swap));
    }

    #[test]
    fn star_with_zero_twist_is_the_wedge(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = KoszulComplex::new(Arc::new(random_data(&mut rng)), Q);
        let zero = torprod::koszul::TwistData::zero(k.face_ring(), k.lattice_rank());
        let (x, y) = (random_homogeneous(&mut rng, &k, 3), random_homogeneous(&mut rng, &k, 3));
        prop_assert_eq!(k.star_with(&zero, &x, &y), k.wedge(&x, &y));
    }
}
