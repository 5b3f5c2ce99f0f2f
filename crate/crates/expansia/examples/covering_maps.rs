//! Self-coverings of the torus: degree, fibers, the fiber separation
//! constant, and checking that a covering intertwines two actions.
//!
//!     cargo run --example covering_maps

use expansia::actions::{ActionHandle, CoveringMap};
use expansia::error::Result;
use expansia::groups::GroupPresentation;
use expansia::matrix::IntMatrix;
use expansia::spaces::torus::{torus_distance, TorusPoint};
use expansia::spaces::Space;

fn main() -> Result<()> {
    for text in ["2,0;0,2", "3,0;0,3", "1,1;-1,1"] {
        let map = CoveringMap::new(IntMatrix::parse(text)?)?;
        let beta = map.separation()?;
        let y = TorusPoint::parse("(1/2,1/3)")?;
        let fiber = map.fiber(&y)?;
        println!("D = {text}: degree {}, separation beta = {beta}", map.degree());
        let shown: Vec<String> = fiber.iter().map(|p| p.to_string()).collect();
        println!("  fiber over {y}: {}", shown.join(", "));
        let mut min = None;
        for i in 0..fiber.len() {
            for j in i + 1..fiber.len() {
                let d = torus_distance(&fiber[i], &fiber[j]);
                if min.as_ref().map_or(true, |m| d < *m) {
                    min = Some(d);
                }
            }
        }
        println!("  closest fiber pair: {} (never below beta)\n", min.unwrap());
    }

    // The doubling map commutes with every integer matrix action, here
    // semiconjugating the cat map to itself: push(M x) = M push(x).
    let m = IntMatrix::parse("2,1;1,1")?;
    let up = ActionHandle::new(
        GroupPresentation::from_matrices(vec![("M".into(), m.clone())])?,
        Space::Torus { dim: 2 },
    )?;
    let down = ActionHandle::new(
        GroupPresentation::from_matrices(vec![("M".into(), m)])?,
        Space::Torus { dim: 2 },
    )?;
    let doubling = CoveringMap::new(IntMatrix::parse("2,0;0,2")?)?;
    println!(
        "doubling map semiconjugates the cat map to itself: {}",
        doubling.check_semiconjugacy(&up, &down)?
    );
    Ok(())
}
