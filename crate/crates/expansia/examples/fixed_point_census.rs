//! Count the rational fixed points of toral automorphism actions exactly.
//!
//! For a single matrix A with det(A - I) != 0 the fixed set is finite of
//! size |det(A - I)|; an eigenvalue one makes it a whole subtorus, which
//! the census reports as an error instead of a wrong list.
//!
//!     cargo run --example fixed_point_census

use expansia::actions::ActionHandle;
use expansia::error::{Error, Result};
use expansia::expansivity::fixed_points;
use expansia::groups::GroupPresentation;
use expansia::matrix::IntMatrix;
use expansia::spaces::Space;

fn census(name: &str, text: &str) -> Result<()> {
    let m = IntMatrix::parse(text)?;
    let d = m.sub_identity()?.det()?;
    let g = GroupPresentation::from_matrices(vec![(name.into(), m)])?;
    let a = ActionHandle::new(g, Space::Torus { dim: 2 })?;
    match fixed_points(&a) {
        Ok(points) => {
            let shown: Vec<String> = points.iter().map(|p| p.to_string()).collect();
            println!(
                "{name} = {text}: |det(A-I)| = {}, census {} point(s): {}",
                d.abs(),
                points.len(),
                shown.join(", ")
            );
        }
        Err(Error::FixedSetNotFinite(why)) => {
            println!("{name} = {text}: not finite — {why}");
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn main() -> Result<()> {
    census("M", "2,1;1,1")?; // hyperbolic: only the origin
    census("A", "3,2;1,1")?; // det(A-I) = -2: two fixed points
    census("B", "4,1;3,1")?; // det(B-I) = -3: three fixed points
    census("C", "5,3;3,2")?; // det(C-I) = -5: five fixed points
    census("S", "1,1;0,1")?; // shear: eigenvalue one, a circle of fixed points
    Ok(())
}
