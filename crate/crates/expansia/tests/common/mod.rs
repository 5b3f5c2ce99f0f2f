//! Brute-force oracles shared by the integration suites. Everything here
//! recomputes answers from first principles — direct permutation
//! composition and raw table scans — never through the code under test.

use std::collections::BTreeSet;

use num::Zero;

use expansia::actions::ActionHandle;
use expansia::expansivity::Sampler;
use expansia::groups::Representation;
use expansia::orbit::{verify_orbit_expansive, OrbitCoverVerdict};
use expansia::rat::Rat;
use expansia::spaces::cover::{OpenCover, SetRepr};
use expansia::spaces::{Point, Space};

/// Search depth that exhausts every accepted random image group.
pub const FULL_DEPTH: usize = 16;

/// Closure of permutation image arrays under composition: the whole image
/// group, computed without the library's word machinery.
pub fn perm_closure(gens: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q: Vec<usize> = (0..n).map(|i| g[p[i]]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// The primary generators of a finite-model action, as raw image arrays.
pub fn primary_perm_arrays(a: &ActionHandle) -> Vec<Vec<usize>> {
    let Representation::Perm(ps) = a.group().rep() else {
        panic!("finite-model oracle needs a permutation representation");
    };
    a.group()
        .primary_gens()
        .iter()
        .map(|&g| ps[g].images().to_vec())
        .collect()
}

pub fn table_dist(space: &Space, i: usize, j: usize) -> Rat {
    space
        .distance(&Point::Finite(i), &Point::Finite(j))
        .expect("finite metric lookup")
}

/// Largest separation the pair `(i, j)` reaches over the whole group.
pub fn oracle_pair_max(space: &Space, elems: &[Vec<usize>], i: usize, j: usize) -> Rat {
    let mut best = Rat::zero();
    for e in elems {
        let d = table_dist(space, e[i], e[j]);
        if d > best {
            best = d;
        }
    }
    best
}

/// min over distinct pairs of max over group elements of the separation:
/// the exact supremum of working expansivity constants on a finite model.
pub fn oracle_minmax(space: &Space, elems: &[Vec<usize>], n: usize) -> Rat {
    let mut best: Option<Rat> = None;
    for i in 0..n {
        for j in i + 1..n {
            let m = oracle_pair_max(space, elems, i, j);
            if best.as_ref().map_or(true, |b| m < *b) {
                best = Some(m);
            }
        }
    }
    best.expect("needs at least two points")
}

pub fn mask_of(repr: &SetRepr) -> u64 {
    match repr {
        SetRepr::Mask(m) => *m,
        _ => panic!("finite-model oracle needs mask members"),
    }
}

/// Orbit expansivity by definition: no distinct pair may sit inside a
/// single member at every group element.
pub fn oracle_orbit_expansive(elems: &[Vec<usize>], masks: &[u64], n: usize) -> bool {
    for i in 0..n {
        for j in i + 1..n {
            let cobounded_everywhere = elems.iter().all(|e| {
                masks
                    .iter()
                    .any(|m| m & (1u64 << e[i]) != 0 && m & (1u64 << e[j]) != 0)
            });
            if cobounded_everywhere {
                return false;
            }
        }
    }
    true
}

pub fn exhaustive_verdict(a: &ActionHandle, cover: &OpenCover) -> OrbitCoverVerdict {
    verify_orbit_expansive(a, cover, FULL_DEPTH, &Sampler::All).expect("finite verification runs")
}
