//! Moving verdicts around: restrict an orbit-expansive action to a
//! finite-index subgroup with the induced cover, and transport covers
//! along a conjugacy without changing the answer.
//!
//!     cargo run --example transfer_principles

use expansia::actions::{ActionHandle, ConjugacyWitness};
use expansia::error::Result;
use expansia::expansivity::Sampler;
use expansia::groups::{coset_transversal, GroupPresentation, Subgroup, TransversalResult, Word};
use expansia::orbit::{
    conjugate_cover, restrict_action_to_subgroup, subgroup_cover, verify_orbit_expansive,
};
use expansia::perm::Perm;
use expansia::spaces::cover::OpenCover;
use expansia::spaces::metric::FiniteMetricSpace;
use expansia::spaces::Space;

fn main() -> Result<()> {
    // Six points on a circle, shifted by one; the cover of singletons.
    let metric = FiniteMetricSpace::parse("1; 2 1; 3 2 1; 2 3 2 1; 1 2 3 2 1")?;
    let g = GroupPresentation::from_perms(vec![("s".into(), Perm::parse("1,2,3,4,5,0")?)])?;
    let a = ActionHandle::new(g, Space::Metric(metric))?;
    let singletons = OpenCover::from_masks(a.space(), (0..6).map(|i| 1u64 << i).collect())?;
    println!(
        "full action, singleton cover: {:?}",
        verify_orbit_expansive(&a, &singletons, 16, &Sampler::All)?
    );

    // The subgroup of double shifts has index two; the induced cover is
    // the join of the transversal translates, verified for the restriction.
    let s = a.group().find_generator("s").unwrap();
    let sub = Subgroup::new(a.group(), vec![Word(vec![s, s])])?;
    let TransversalResult::Complete { reps, .. } = coset_transversal(a.group(), &sub, 64)? else {
        unreachable!("finite image group");
    };
    println!("index of <s^2>: {}", reps.len());
    let induced = subgroup_cover(&singletons, &a, &reps)?;
    let restricted = restrict_action_to_subgroup(&a, &sub)?;
    println!(
        "restricted action, induced cover ({} members): {:?}",
        induced.len(),
        verify_orbit_expansive(&restricted, &induced, 16, &Sampler::All)?
    );

    // Relabel the six points arbitrarily: conjugating the action and the
    // cover together preserves the verdict.
    let relabel = Perm::parse("3,0,5,1,4,2")?;
    let witness = ConjugacyWitness::Relabel(relabel);
    let b = a.conjugate(&witness)?;
    let moved = conjugate_cover(&singletons, &witness)?;
    println!(
        "conjugated action, transported cover: {:?}",
        verify_orbit_expansive(&b, &moved, 16, &Sampler::All)?
    );
    Ok(())
}
