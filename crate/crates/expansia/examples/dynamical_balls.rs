//! Dynamical balls: the set of sampled points that stay within `c` of a
//! center at every group element of a given word length.
//!
//! Under a hyperbolic action the ball collapses onto the center as the
//! depth grows; under a finite-order action it never does.
//!
//!     cargo run --example dynamical_balls

use expansia::actions::ActionHandle;
use expansia::error::Result;
use expansia::expansivity::dynamical_ball;
use expansia::groups::GroupPresentation;
use expansia::matrix::IntMatrix;
use expansia::rat::rat;
use expansia::spaces::torus::TorusPoint;
use expansia::spaces::{Point, Space};

fn action(name: &str, text: &str) -> Result<ActionHandle> {
    let g = GroupPresentation::from_matrices(vec![(name.into(), IntMatrix::parse(text)?)])?;
    ActionHandle::new(g, Space::Torus { dim: 2 })
}

fn main() -> Result<()> {
    let origin = Point::Torus(TorusPoint::origin(2));
    let c = rat(1, 10);

    let cat = action("M", "2,1;1,1")?;
    println!("hyperbolic M = 2,1;1,1, center (0,0), c = 1/10, 30-grid sample:");
    for depth in 1..=8 {
        let ball = dynamical_ball(&cat, &origin, &c, depth, 30)?;
        println!("  depth {depth}: {} points stay close", ball.points.len());
    }

    let turn = action("R", "0,-1;1,0")?;
    println!("\nquarter turn R = 0,-1;1,0, same center and constant:");
    for depth in [1, 4, 8] {
        let ball = dynamical_ball(&turn, &origin, &c, depth, 30)?;
        println!(
            "  depth {depth}: {} points — isometries never shrink the ball",
            ball.points.len()
        );
    }
    Ok(())
}
