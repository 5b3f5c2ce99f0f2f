//! The cover calculus on a finite metric model: turn a working constant
//! into an orbit-expansive cover, verify it, extract a constant back,
//! push covers through the action, restrict them, and join them.
//!
//!     cargo run --example cover_calculus

use expansia::actions::ActionHandle;
use expansia::error::Result;
use expansia::groups::{GroupPresentation, Word};
use expansia::orbit::{
    constant_from_cover, cover_from_constant, image_cover, trace_cover, verify_orbit_expansive,
};
use expansia::expansivity::Sampler;
use expansia::perm::Perm;
use expansia::rat::rat;
use expansia::spaces::cover::{lebesgue_number, SetRepr};
use expansia::spaces::metric::FiniteMetricSpace;
use expansia::spaces::{Point, Space};

fn points_of(repr: &SetRepr) -> String {
    let SetRepr::Mask(mask) = repr else {
        return format!("{repr:?}");
    };
    let inside: Vec<String> = (0..64)
        .filter(|i| mask & (1u64 << i) != 0)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", inside.join(", "))
}

fn main() -> Result<()> {
    // Four points on a rough circle, rotated by one step.
    let metric = FiniteMetricSpace::parse("1; 2 1; 1 2 1")?;
    let g = GroupPresentation::from_perms(vec![("r".into(), Perm::parse("1,2,3,0")?)])?;
    let a = ActionHandle::new(g, Space::Metric(metric))?;

    let c = rat(1, 2);
    let cover = cover_from_constant(&a, &c, 0)?;
    println!("cover built from c = 1/2 has {} members:", cover.len());
    for m in cover.members() {
        println!("  {} = {}", m.name, points_of(&m.repr));
    }

    let verdict = verify_orbit_expansive(&a, &cover, 16, &Sampler::All)?;
    println!("verified orbit-expansive: {:?}", verdict);
    println!("lebesgue number: {}", lebesgue_number(a.space(), &cover)?);
    println!("constant extracted back: {}", constant_from_cover(&a, &cover)?);

    // Covers push through the action member by member...
    let r = a.group().find_generator("r").unwrap();
    let image = image_cover(&a, &cover, &Word(vec![r]))?;
    let shown: Vec<String> = image.members().iter().map(|m| points_of(&m.repr)).collect();
    println!("image under r: {}", shown.join(", "));

    // ...join with each other (the common refinement)...
    let joined = cover.join(&image)?;
    println!(
        "join with the image has {} members and refines both: {} / {}",
        joined.len(),
        joined.refines(&cover)?,
        joined.refines(&image)?
    );

    // ...and trace onto subsets of the space.
    let subset = [Point::Finite(0), Point::Finite(2)];
    let sub_space = Space::Metric(FiniteMetricSpace::parse("1")?);
    let traced = trace_cover(&cover, &subset, &sub_space)?;
    println!("trace onto {{0, 2}} keeps {} members", traced.len());
    Ok(())
}
