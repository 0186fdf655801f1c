//! Property suites for the structural invariants: restricted-ball geometry,
//! orthogonality reductions, decider implications, and transfer laws.

mod common;

use bjorth::coapprox::{self, DEFAULT_SELECTION_CAP};
use bjorth::faces::{self, Subspace};
use bjorth::linalg;
use bjorth::orthogonality::{self, Epsilon};
use bjorth::scalar::{rat, ratio, Rat};
use bjorth::spaces::SpaceSpec;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

const CAP: usize = DEFAULT_SELECTION_CAP;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn vec3() -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(small_rat(), 3)
}

fn nonzero3() -> impl Strategy<Value = Vec<Rat>> {
    vec3().prop_filter("nonzero", |v| !linalg::is_zero(v))
}

fn nonzero_scalar() -> impl Strategy<Value = Rat> {
    (-5i64..=5, 1i64..=3)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| ratio(n, d))
}

fn eps() -> impl Strategy<Value = Epsilon> {
    (0i64..=9).prop_map(|n| Epsilon::new(ratio(n, 10)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bj_homogeneous(x in nonzero3(), y in nonzero3(), a in nonzero_scalar(), b in nonzero_scalar(), e in eps()) {
        let space = SpaceSpec::l1(3).build_default().unwrap();
        let space = space.as_polyhedral().unwrap();
        let base = orthogonality::eps_orthogonal(space, &x, &y, &e).unwrap().decision;
        let scaled = orthogonality::eps_orthogonal(
            space,
            &linalg::scale(&x, &a),
            &linalg::scale(&y, &b),
            &e,
        )
        .unwrap()
        .decision;
        prop_assert_eq!(base, scaled);
    }

    #[test]
    fn eps_monotone_and_zero_coincides(x in nonzero3(), y in nonzero3(), e in eps()) {
        let space = SpaceSpec::linf(3).build_default().unwrap();
        let space = space.as_polyhedral().unwrap();
        let at_zero = orthogonality::eps_orthogonal(space, &x, &y, &Epsilon::zero()).unwrap().decision;
        prop_assert_eq!(at_zero, orthogonality::bj_orthogonal(space, &x, &y).unwrap().decision);
        if at_zero {
            prop_assert!(orthogonality::eps_orthogonal(space, &x, &y, &e).unwrap().decision);
        }
        // Never self-orthogonal below eps = 1; always orthogonal to zero.
        prop_assert!(!orthogonality::eps_orthogonal(space, &x, &x, &e).unwrap().decision);
        let zero = vec![Rat::zero(); 3];
        prop_assert!(orthogonality::eps_orthogonal(space, &x, &zero, &e).unwrap().decision);
    }

    #[test]
    fn line_subspace_matches_pointwise(y in nonzero3(), z in nonzero3(), e in eps()) {
        let space = SpaceSpec::l1(3).build_default().unwrap();
        let space = space.as_polyhedral().unwrap();
        let line = Subspace::line(y.clone()).unwrap();
        prop_assert_eq!(
            orthogonality::subspace_eps_orthogonal(space, &line, &z, &e).unwrap().decision,
            orthogonality::eps_orthogonal(space, &y, &z, &e).unwrap().decision
        );
    }

    #[test]
    fn certificates_are_sound(x in nonzero3(), y in nonzero3(), e in eps()) {
        let space = SpaceSpec::linf(3).build_default().unwrap();
        let space = space.as_polyhedral().unwrap();
        let v = orthogonality::eps_orthogonal(space, &x, &y, &e).unwrap();
        if let orthogonality::Certificate::SupportingFunctional { functional, value } = &v.certificate {
            // Dual norm one, attains the norm at x, and the claimed value.
            for vert in space.vertices() {
                prop_assert!(linalg::dot(functional, vert) <= rat(1));
            }
            prop_assert_eq!(linalg::dot(functional, &x), space.norm(&x).unwrap());
            prop_assert_eq!(&linalg::dot(functional, &y), value);
            if v.decision {
                prop_assert!(value.abs() <= e.value().clone() * space.norm(&y).unwrap());
            }
        }
    }
}

#[test]
fn restricted_ball_geometry() {
    let mut rng = common::rng(1010);
    for _ in 0..30 {
        let dim = rng.gen_range(2..=4);
        let space = common::random_symmetric_space(&mut rng, dim);
        let d = rng.gen_range(1..dim.max(2)).min(dim - 1).max(1);
        let y = common::random_subspace(&mut rng, dim, d);
        let ball = faces::restrict_ball(&space, &y).unwrap();
        // Facets come in +/- pairs with mirrored functionals.
        for f in &ball.facets {
            let neg = linalg::neg(&f.functional);
            assert!(ball.facets.iter().any(|g| g.functional == neg));
            assert!(!f.active_ambient.is_empty());
        }
        // Vertices embed to ambient norm one and active duals attain one.
        for v in &ball.vertices {
            assert!(space.norm(&y.embed(v)).unwrap().is_one());
        }
        for f in &ball.facets {
            for &vi in &f.vertex_indices {
                assert_eq!(linalg::dot(&f.functional, &ball.vertices[vi]), rat(1));
            }
        }
    }
}

#[test]
fn relint_implies_meets() {
    let mut rng = common::rng(2020);
    for _ in 0..30 {
        let dim = rng.gen_range(2..=4);
        let space = common::random_symmetric_space(&mut rng, dim);
        let d = rng.gen_range(1..dim.max(2)).min(dim - 1).max(1);
        let y = common::random_subspace(&mut rng, dim, d);
        for face in faces::enumerate_facets(&space) {
            let relint = faces::meets_face_relint(&space, &y, &face).unwrap().decision;
            let meets = faces::meets_face(&space, &y, &face).unwrap().decision;
            assert!(!relint || meets, "relative-interior hit without a hit");
        }
    }
}

#[test]
fn strong_anti_implies_anti() {
    let mut rng = common::rng(3030);
    for _ in 0..40 {
        let dim = rng.gen_range(2..=4);
        let space = common::random_symmetric_space(&mut rng, dim);
        let d = rng.gen_range(1..dim.max(2)).min(dim - 1).max(1);
        let y = common::random_subspace(&mut rng, dim, d);
        let strong = coapprox::decide_strong_anti(&space, &y, CAP).unwrap().decision;
        let anti = coapprox::decide_anti(&space, &y, CAP).unwrap().decision;
        assert!(!strong || anti);
        // The defect is consistent with both verdicts.
        let delta = coapprox::coapprox_defect(&space, &y, CAP).unwrap().delta;
        assert_eq!(strong, delta.is_one());
        assert_eq!(anti, !delta.is_zero());
    }
}

#[test]
fn verify_matches_eps_verify_at_zero() {
    let mut rng = common::rng(4040);
    let space = SpaceSpec::l1(3).build_default().unwrap();
    let space = space.as_polyhedral().unwrap();
    let y = Subspace::new(vec![vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]]).unwrap();
    for _ in 0..50 {
        let x = common::nonzero_vec(&mut rng, 3);
        let y0 = y.embed(&common::nonzero_vec(&mut rng, 2));
        let plain = coapprox::verify_best_coapprox(space, &y, &x, &y0).unwrap().decision;
        let at_zero = coapprox::verify_eps_best_coapprox(space, &y, &x, &y0, &Epsilon::zero())
            .unwrap()
            .decision;
        assert_eq!(plain, at_zero);
        // Monotone in epsilon.
        if plain {
            let half = Epsilon::new(ratio(1, 2)).unwrap();
            assert!(coapprox::verify_eps_best_coapprox(space, &y, &x, &y0, &half).unwrap().decision);
        }
    }
}

#[test]
fn orthogonal_direction_is_orthogonal() {
    let mut rng = common::rng(5050);
    for _ in 0..30 {
        let dim = rng.gen_range(2..=4);
        let space = common::random_symmetric_space(&mut rng, dim);
        let d = rng.gen_range(1..dim.max(2)).min(dim - 1).max(1);
        let y = common::random_subspace(&mut rng, dim, d);
        if let Some(z) = coapprox::exists_orthogonal_direction(&space, &y, CAP).unwrap() {
            assert!(!linalg::is_zero(&z));
            assert!(orthogonality::subspace_orthogonal(&space, &y, &z).unwrap().decision);
            assert!(!coapprox::decide_anti(&space, &y, CAP).unwrap().decision);
        } else {
            assert!(coapprox::decide_anti(&space, &y, CAP).unwrap().decision);
        }
    }
}
