//! Randomized laws behind the verdicts: canonicalization is a
//! homomorphism, coset transversals partition the image group, certified
//! constants and verified covers translate into one another, metrics and
//! text formats behave, and dynamical balls shrink as the depth grows.

mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use expansia::actions::ActionHandle;
use expansia::expansivity::{dynamical_ball, falsify_expansive, Sampler};
use expansia::groups::{
    coset_transversal, GroupPresentation, Subgroup, TransversalResult, Word,
};
use expansia::matrix::IntMatrix;
use expansia::models;
use expansia::orbit::{constant_from_cover, cover_from_constant, OrbitCoverVerdict};
use expansia::perm::Perm;
use expansia::rat::{rat, Rat};
use expansia::spaces::torus::{torus_distance, TorusPoint, TorusSet};
use expansia::spaces::{Point, Space};

fn seeded_action(seed: u64, max_points: usize, max_gens: usize) -> ActionHandle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    models::random_metric_action(&mut rng, 2, max_points, max_gens).unwrap()
}

/// A word over the primary generators, driven by arbitrary bytes.
fn word_from_bytes(g: &GroupPresentation, bytes: &[u8]) -> Word {
    let prim = g.primary_gens();
    Word(bytes.iter().map(|&b| prim[b as usize % prim.len()]).collect())
}

fn torus_point(coords: &[(i32, u8)]) -> TorusPoint {
    TorusPoint::new(
        coords
            .iter()
            .map(|&(n, d)| rat(n as i64, d as i64 + 1))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonicalization_is_a_homomorphism(
        seed: u64,
        u in prop::collection::vec(any::<u8>(), 0..6),
        v in prop::collection::vec(any::<u8>(), 0..6),
    ) {
        let a = seeded_action(seed, 6, 3);
        let g = a.group();
        let wu = word_from_bytes(g, &u);
        let wv = word_from_bytes(g, &v);
        let mut joined = wu.0.clone();
        joined.extend_from_slice(&wv.0);
        let whole = g.canonicalize(&Word(joined)).unwrap();
        let pieces = g
            .canonicalize(&wu)
            .unwrap()
            .mul(&g.canonicalize(&wv).unwrap())
            .unwrap();
        prop_assert_eq!(whole, pieces);
        prop_assert!(g.canonicalize(&Word(vec![])).unwrap().is_identity());
    }

    #[test]
    fn canonical_inverses_cancel(seed: u64, w in prop::collection::vec(any::<u8>(), 0..8)) {
        let a = seeded_action(seed, 6, 3);
        let e = a.group().canonicalize(&word_from_bytes(a.group(), &w)).unwrap();
        let inv = e.inverse().unwrap();
        prop_assert!(e.mul(&inv).unwrap().is_identity());
        prop_assert!(inv.mul(&e).unwrap().is_identity());
        prop_assert_eq!(inv.inverse().unwrap(), e);
    }

    #[test]
    fn certified_constants_and_verified_covers_translate(seed: u64) {
        let a = seeded_action(seed, 6, 3);
        let n = a.space().finite_size().unwrap();
        let elems = perm_closure(&primary_perm_arrays(&a), n);
        let c = oracle_minmax(a.space(), &elems, n) / rat(2, 1);

        let cover = cover_from_constant(&a, &c, 0).unwrap();
        let masks: Vec<u64> = cover.members().iter().map(|m| mask_of(&m.repr)).collect();
        prop_assert!(oracle_orbit_expansive(&elems, &masks, n));
        prop_assert_eq!(
            exhaustive_verdict(&a, &cover),
            OrbitCoverVerdict::DecidedExpansiveCover
        );

        let back = constant_from_cover(&a, &cover).unwrap();
        let verdict = falsify_expansive(&a, &back, FULL_DEPTH, &Sampler::All, None).unwrap();
        prop_assert!(verdict.is_certified());
    }

    #[test]
    fn torus_distance_is_a_translation_invariant_metric(
        x in prop::collection::vec((any::<i32>(), any::<u8>()), 2),
        y in prop::collection::vec((any::<i32>(), any::<u8>()), 2),
        z in prop::collection::vec((any::<i32>(), any::<u8>()), 2),
        t in prop::collection::vec((any::<i32>(), any::<u8>()), 2),
    ) {
        let (px, py, pz) = (torus_point(&x), torus_point(&y), torus_point(&z));
        let shift = |p: &TorusPoint| {
            TorusPoint::new(
                p.coords()
                    .iter()
                    .zip(torus_point(&t).coords())
                    .map(|(a, b)| a.clone() + b.clone())
                    .collect(),
            )
        };
        let d = torus_distance(&px, &py);
        prop_assert_eq!(&d, &torus_distance(&py, &px));
        prop_assert!(d <= rat(1, 2));
        prop_assert_eq!(d.clone() == rat(0, 1), px == py);
        prop_assert!(torus_distance(&px, &pz) <= d.clone() + torus_distance(&py, &pz));
        prop_assert_eq!(d, torus_distance(&shift(&px), &shift(&py)));
    }

    #[test]
    fn torus_sets_round_trip_through_text(
        arcs in prop::collection::vec((any::<i32>(), 1u8..12, 1u8..8, 1u8..8), 1..=2),
    ) {
        let pairs: Vec<(Rat, Rat)> = arcs
            .iter()
            .map(|&(p, q, r, s)| {
                let lo = rat(p as i64, q as i64);
                let len = rat(r as i64, (r + s) as i64 + 1);
                (lo.clone(), lo + len)
            })
            .collect();
        let set = TorusSet::from_arcs(&pairs).unwrap();
        let text = set.to_string();
        let reparsed = TorusSet::parse(pairs.len(), &text).unwrap();
        prop_assert_eq!(&reparsed, &set);
        prop_assert_eq!(reparsed.to_string(), text);
    }

    #[test]
    fn permutations_satisfy_the_group_laws(
        images in (1usize..8).prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle()),
    ) {
        let p = Perm::new(images).unwrap();
        let identity = Perm::identity(p.len());
        prop_assert_eq!(&p.compose(&p.inverse()).unwrap(), &identity);
        prop_assert_eq!(&p.inverse().compose(&p).unwrap(), &identity);
        prop_assert_eq!(Perm::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn elementary_products_are_unimodular(a in -4i64..5, b in -4i64..5, c in -4i64..5) {
        let upper = |x: i64| IntMatrix::new(2, vec![1, x, 0, 1]).unwrap();
        let lower = |x: i64| IntMatrix::new(2, vec![1, 0, x, 1]).unwrap();
        let m = upper(a).mul(&lower(b)).unwrap().mul(&upper(c)).unwrap();
        prop_assert_eq!(m.det().unwrap(), 1);
        let inv = m.inverse_unimodular().unwrap();
        prop_assert!(m.mul(&inv).unwrap().is_identity());
        prop_assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn lattice_coset_census_matches_the_determinant(
        entries in prop::collection::vec(-4i64..5, 4),
    ) {
        let m = IntMatrix::new(2, entries).unwrap();
        prop_assume!(m.det().unwrap() != 0);
        let reps = m.lattice_coset_reps().unwrap();
        let distinct: BTreeSet<Vec<i64>> = reps.iter().cloned().collect();
        prop_assert_eq!(reps.len() as i64, m.det().unwrap().abs());
        prop_assert_eq!(distinct.len(), reps.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coset_transversals_partition_the_image_group(
        seed: u64,
        w in prop::collection::vec(any::<u8>(), 1..4),
    ) {
        let a = seeded_action(seed, 5, 2);
        let g = a.group();
        let sub = Subgroup::new(g, vec![word_from_bytes(g, &w)]).unwrap();
        let TransversalResult::Complete { reps, exact } =
            coset_transversal(g, &sub, 4096).unwrap()
        else {
            panic!("finite image groups always complete");
        };
        prop_assert!(exact);
        let oracle = sub.membership(g, 0).unwrap();
        prop_assert!(oracle.exact);
        for e in g.cayley_ball_exhaustive().unwrap().elements.keys() {
            let homes = reps
                .iter()
                .filter(|r| {
                    let r_inv = g.canonicalize(r).unwrap().inverse().unwrap();
                    oracle.contains(&r_inv.mul(e).unwrap()) == Some(true)
                })
                .count();
            prop_assert_eq!(homes, 1, "element {} must lie in exactly one coset", e);
        }
    }

    #[test]
    fn dynamical_balls_shrink_as_the_depth_grows(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = models::random_hyperbolic_2x2(&mut rng);
        let a = ActionHandle::new(
            GroupPresentation::from_matrices(vec![("A".into(), m)]).unwrap(),
            Space::Torus { dim: 2 },
        )
        .unwrap();
        let origin = Point::Torus(TorusPoint::origin(2));
        let c = rat(1, 8);
        let mut last: Option<BTreeSet<Point>> = None;
        for depth in 1..=4 {
            let ball: BTreeSet<Point> = dynamical_ball(&a, &origin, &c, depth, 10)
                .unwrap()
                .points
                .into_iter()
                .collect();
            prop_assert!(ball.contains(&origin));
            if let Some(prev) = &last {
                prop_assert!(ball.is_subset(prev), "depth {depth} ball must refine depth {}", depth - 1);
            }
            last = Some(ball);
        }
    }
}
