//! Randomized model builders shared by the property suites and the suite
//! runner: finite metric spaces with exact rational distances, permutation
//! actions with small image groups, finite topologies with continuous
//! actions, random open covers, and hyperbolic integer matrices.
//!
//! Every builder draws from a caller-supplied generator, so a fixed seed
//! reproduces the same models byte for byte.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::actions::ActionHandle;
use crate::error::{Error, Result};
use crate::groups::GroupPresentation;
use crate::matrix::IntMatrix;
use crate::perm::Perm;
use crate::rat::{rat, Rat};
use crate::spaces::cover::OpenCover;
use crate::spaces::metric::FiniteMetricSpace;
use crate::spaces::topology::FiniteTopSpace;
use crate::spaces::Space;

/// Image groups of random actions are kept at or below this many elements
/// so exhaustive scans (every pair against every element) stay fast.
pub const IMAGE_GROUP_CAP: usize = 1500;

/// Depth by which the image group of an accepted random action must close.
const MODEL_BALL_DEPTH: usize = 16;

/// Distances drawn from [1/2, 1] satisfy every triangle inequality.
const PALETTE: [(i64, i64); 5] = [(1, 2), (5, 8), (3, 4), (7, 8), (1, 1)];

/// One palette distance.
pub fn random_distance(rng: &mut impl Rng) -> Rat {
    let (p, q) = PALETTE[rng.gen_range(0..PALETTE.len())];
    rat(p, q)
}

/// A finite metric space with palette distances and a size drawn from the
/// given range.
pub fn random_metric(
    rng: &mut impl Rng,
    min_points: usize,
    max_points: usize,
) -> FiniteMetricSpace {
    let n = rng.gen_range(min_points..=max_points);
    let rows: Vec<Vec<Rat>> = (1..n)
        .map(|k| (0..k).map(|_| random_distance(rng)).collect())
        .collect();
    FiniteMetricSpace::from_lower_triangle(rows).expect("palette distances are positive")
}

/// A permutation biased toward small cyclic structure (transpositions and
/// three-cycles dominate) so generated image groups tend to stay small.
pub fn random_perm(rng: &mut impl Rng, n: usize) -> Perm {
    if n < 2 {
        return Perm::identity(n);
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    match rng.gen_range(0..6u8) {
        0 | 1 => Perm::cycle(n, &idx[..2]).expect("distinct points"),
        2 | 3 if n >= 3 => Perm::cycle(n, &idx[..3]).expect("distinct points"),
        2 | 3 => Perm::cycle(n, &idx[..2]).expect("distinct points"),
        4 => Perm::identity(n),
        _ => Perm::new(idx).expect("shuffled images"),
    }
}

/// A random permutation action on a random metric space whose image group
/// closes within [`IMAGE_GROUP_CAP`] elements (oversized draws are
/// rejected and retried).
pub fn random_metric_action(
    rng: &mut impl Rng,
    min_points: usize,
    max_points: usize,
    max_gens: usize,
) -> Result<ActionHandle> {
    loop {
        let metric = random_metric(rng, min_points, max_points);
        let n = metric.len();
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<(String, Perm)> = (0..k)
            .map(|i| (format!("g{i}"), random_perm(rng, n)))
            .collect();
        let group = GroupPresentation::from_perms(gens)?;
        let ball = group.cayley_ball(MODEL_BALL_DEPTH)?;
        if ball.exhausted && ball.elements.len() <= IMAGE_GROUP_CAP {
            return ActionHandle::new(group, Space::Metric(metric));
        }
    }
}

/// A finite topology generated by random subbasis masks.
pub fn random_topology(
    rng: &mut impl Rng,
    min_points: usize,
    max_points: usize,
) -> FiniteTopSpace {
    let n = rng.gen_range(min_points..=max_points);
    let full = (1u64 << n) - 1;
    let k = rng.gen_range(0..=n + 1);
    let subbasis: Vec<u64> = (0..k).map(|_| rng.gen::<u64>() & full).collect();
    FiniteTopSpace::generate(n, &subbasis).expect("masks lie inside the space")
}

fn perm_mask(p: &Perm, mask: u64) -> u64 {
    let mut out = 0u64;
    for i in 0..p.len() {
        if mask & (1u64 << i) != 0 {
            out |= 1u64 << p.apply(i);
        }
    }
    out
}

/// Does the permutation send every open set to an open set? For a
/// bijection of a finite lattice this already forces the inverse to do the
/// same, so it characterizes homeomorphisms.
pub fn preserves_topology(top: &FiniteTopSpace, p: &Perm) -> bool {
    top.opens().iter().all(|&u| top.is_open(perm_mask(p, u)))
}

/// A continuous permutation action on the given topology. Candidate
/// permutations that break openness are rejected; a generator falls back
/// to the identity when no candidate fits, so the builder always returns.
pub fn random_continuous_action(
    rng: &mut impl Rng,
    top: FiniteTopSpace,
    max_gens: usize,
) -> Result<ActionHandle> {
    let n = top.len();
    let k = rng.gen_range(1..=max_gens);
    let mut gens = Vec::with_capacity(k);
    for i in 0..k {
        let mut pick = Perm::identity(n);
        for _ in 0..12 {
            let cand = random_perm(rng, n);
            if preserves_topology(&top, &cand) {
                pick = cand;
                break;
            }
        }
        gens.push((format!("g{i}"), pick));
    }
    ActionHandle::new(GroupPresentation::from_perms(gens)?, Space::Top(top))
}

/// A random open cover of a finite space: a random selection of open sets
/// (arbitrary sets on metric spaces), patched with minimal neighborhoods
/// (singletons on metric spaces) until every point is covered.
pub fn random_cover(rng: &mut impl Rng, space: &Space) -> Result<OpenCover> {
    let mut masks = match space {
        Space::Top(t) => {
            let mut masks: Vec<u64> = t
                .opens()
                .iter()
                .copied()
                .filter(|&u| u != 0 && rng.gen_bool(0.5))
                .collect();
            let mut covered = masks.iter().fold(0u64, |acc, &m| acc | m);
            for x in 0..t.len() {
                if covered & (1u64 << x) == 0 {
                    let m = t.min_nbhd(x);
                    masks.push(m);
                    covered |= m;
                }
            }
            masks
        }
        Space::Metric(m) => {
            let n = m.len();
            let full = (1u64 << n) - 1;
            let k = rng.gen_range(1..=n + 2);
            let mut masks: Vec<u64> = (0..k)
                .map(|_| rng.gen::<u64>() & full)
                .filter(|&u| u != 0)
                .collect();
            let mut covered = masks.iter().fold(0u64, |acc, &m| acc | m);
            for x in 0..n {
                if covered & (1u64 << x) == 0 {
                    masks.push(1u64 << x);
                    covered |= 1u64 << x;
                }
            }
            masks
        }
        Space::Torus { .. } => {
            return Err(Error::Unsupported(
                "random covers are generated on finite spaces".into(),
            ))
        }
    };
    masks.sort_unstable();
    masks.dedup();
    OpenCover::from_masks(space, masks)
}

/// A hyperbolic 2x2 integer matrix of determinant one: an alternating
/// product of positive elementary shear powers (any such product has trace
/// at least three), optionally negated.
pub fn random_hyperbolic_2x2(rng: &mut impl Rng) -> IntMatrix {
    let mut m = IntMatrix::identity(2);
    let mut lower = rng.gen_bool(0.5);
    let factors = rng.gen_range(2..=4);
    for _ in 0..factors {
        let k = rng.gen_range(1..=3);
        let shear = if lower {
            IntMatrix::new(2, vec![1, 0, k, 1])
        } else {
            IntMatrix::new(2, vec![1, k, 0, 1])
        }
        .expect("two by two");
        m = m.mul(&shear).expect("same dimension");
        lower = !lower;
    }
    if rng.gen_bool(0.25) {
        let neg = IntMatrix::new(2, vec![-1, 0, 0, -1]).expect("two by two");
        m = m.mul(&neg).expect("same dimension");
    }
    debug_assert!(m.trace().expect("square").abs() > 2);
    debug_assert_eq!(m.det().expect("square"), 1);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn metric_models_satisfy_the_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let m = random_metric(&mut rng, 2, 8);
            let n = m.len();
            for i in 0..n {
                assert_eq!(m.dist(i, i), Rat::zero());
                for j in 0..n {
                    assert_eq!(m.dist(i, j), m.dist(j, i));
                    if i != j {
                        assert!(m.dist(i, j) > Rat::zero());
                    }
                    for k in 0..n {
                        assert!(m.dist(i, k) <= m.dist(i, j) + m.dist(j, k));
                    }
                }
            }
        }
    }

    #[test]
    fn metric_actions_close_under_the_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a = random_metric_action(&mut rng, 2, 8, 3).unwrap();
            let ball = a.group().cayley_ball_exhaustive().unwrap();
            assert!(ball.exhausted);
            assert!(ball.elements.len() <= IMAGE_GROUP_CAP);
            assert!(a.check_axioms().unwrap().is_empty());
        }
    }

    #[test]
    fn topologies_close_under_union_and_intersection() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let t = random_topology(&mut rng, 1, 6);
            assert!(t.is_open(0));
            assert!(t.is_open(t.full()));
            let opens = t.opens().to_vec();
            for &u in &opens {
                for &v in &opens {
                    assert!(t.is_open(u | v));
                    assert!(t.is_open(u & v));
                }
            }
        }
    }

    #[test]
    fn continuous_actions_preserve_open_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let top = random_topology(&mut rng, 2, 6);
            let a = random_continuous_action(&mut rng, top.clone(), 3).unwrap();
            let crate::groups::Representation::Perm(ps) = a.group().rep() else {
                panic!("permutation representation")
            };
            for p in ps {
                assert!(preserves_topology(&top, p));
            }
        }
    }

    #[test]
    fn random_covers_cover_their_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..40 {
            let space = if i % 2 == 0 {
                Space::Top(random_topology(&mut rng, 1, 6))
            } else {
                Space::Metric(random_metric(&mut rng, 2, 6))
            };
            let cover = random_cover(&mut rng, &space).unwrap();
            assert!(!cover.is_empty());
            for p in space.points().unwrap() {
                assert!(cover
                    .members()
                    .iter()
                    .any(|m| m.repr.contains(&p).unwrap()));
            }
        }
    }

    #[test]
    fn hyperbolic_draws_are_hyperbolic() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let m = random_hyperbolic_2x2(&mut rng);
            assert_eq!(m.det().unwrap(), 1);
            assert!(m.trace().unwrap().abs() > 2);
            assert_ne!(m.sub_identity().unwrap().det().unwrap(), 0);
        }
    }

    #[test]
    fn equal_seeds_reproduce_equal_models() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            assert_eq!(random_metric(&mut a, 2, 8), random_metric(&mut b, 2, 8));
            assert_eq!(
                random_hyperbolic_2x2(&mut a),
                random_hyperbolic_2x2(&mut b)
            );
        }
    }
}
