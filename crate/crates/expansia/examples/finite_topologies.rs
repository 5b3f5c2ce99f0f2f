//! Finite topological actions: when is one orbit-expansive, and what does
//! that force on the space? (T1 — which on finite spaces means discrete.)
//!
//! Also doubles a fixed point into a twin, the construction showing why
//! the T1 conclusion is about separating points along orbits.
//!
//!     cargo run --example finite_topologies

use expansia::actions::ActionHandle;
use expansia::error::Result;
use expansia::groups::GroupPresentation;
use expansia::orbit::{decide_orbit_expansive_finite, doubled_point_example};
use expansia::perm::Perm;
use expansia::spaces::topology::FiniteTopSpace;
use expansia::spaces::{Point, Space};

fn masks(list: &[u64]) -> String {
    let shown: Vec<String> = list.iter().map(|m| format!("{m:#05b}")).collect();
    shown.join(", ")
}

fn main() -> Result<()> {
    // Discrete three points, rotated: orbit-expansive, witnessed by the
    // cover of minimal neighborhoods (the singletons).
    let discrete = FiniteTopSpace::discrete(3)?;
    let rot = ActionHandle::new(
        GroupPresentation::from_perms(vec![("r".into(), Perm::parse("1,2,0")?)])?,
        Space::Top(discrete),
    )?;
    let (yes, cover) = decide_orbit_expansive_finite(&rot)?;
    println!("rotation on discrete 3 points: orbit-expansive = {yes}");
    println!(
        "  T1 = {}, witness cover of {} singletons",
        matches!(rot.space(), Space::Top(t) if t.is_t1()),
        cover.len()
    );

    // Glue two points together (the only opens around 0 also contain 1):
    // no action on this space can be orbit-expansive, not even one that
    // genuinely moves points.
    let glued = FiniteTopSpace::generate(3, &[0b011, 0b100])?;
    println!("\nglued space opens: {}", masks(glued.opens()));
    let swap01 = ActionHandle::new(
        GroupPresentation::from_perms(vec![("t".into(), Perm::parse("1,0,2")?)])?,
        Space::Top(glued.clone()),
    )?;
    let (no, _) = decide_orbit_expansive_finite(&swap01)?;
    println!("swapping the glued pair: orbit-expansive = {no} (T1 = {})", glued.is_t1());

    // Doubling a fixed point: adjoin a twin with mirrored neighborhoods.
    // On finite spaces the doubled space stays T1 and the extended cover
    // stays orbit-expansive — both are re-verified exactly inside.
    let swap = ActionHandle::new(
        GroupPresentation::from_perms(vec![("t".into(), Perm::parse("0,2,1")?)])?,
        Space::Top(FiniteTopSpace::discrete(3)?),
    )?;
    let (_, base_cover) = decide_orbit_expansive_finite(&swap)?;
    let doubled = doubled_point_example(&swap, &Point::Finite(0), &base_cover)?;
    println!(
        "\ndoubled the fixed point {} into twin {}:",
        doubled.doubled, doubled.new_point
    );
    println!(
        "  doubled space T1 = {}, twins separated = {}, extended cover members = {}",
        doubled.t1,
        doubled.twins_separated,
        doubled.cover.len()
    );
    Ok(())
}
