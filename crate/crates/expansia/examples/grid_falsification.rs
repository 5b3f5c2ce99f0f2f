//! Hunt for pairs of points that refuse to separate: grid-sampled
//! falsification on the torus.
//!
//! A finite-order action (the quarter turn) keeps some pairs forever
//! close, and the search exhibits one. A hyperbolic action separates
//! every sampled pair — which can only ever be reported as inconclusive,
//! since a grid is not the whole torus.
//!
//!     cargo run --example grid_falsification

use expansia::actions::ActionHandle;
use expansia::error::Result;
use expansia::expansivity::{falsify_expansive, Sampler, Verdict};
use expansia::groups::GroupPresentation;
use expansia::matrix::IntMatrix;
use expansia::rat::rat;
use expansia::spaces::Space;

fn action(name: &str, text: &str) -> Result<ActionHandle> {
    let g = GroupPresentation::from_matrices(vec![(name.into(), IntMatrix::parse(text)?)])?;
    ActionHandle::new(g, Space::Torus { dim: 2 })
}

fn main() -> Result<()> {
    let c = rat(1, 10);
    let sampler = Sampler::Grid { q: 24 };

    let turn = action("R", "0,-1;1,0")?;
    println!("quarter turn R = 0,-1;1,0 at c = 1/10 over the 24-grid:");
    match falsify_expansive(&turn, &c, 8, &sampler, None)? {
        Verdict::Falsified { pair, max_separation, reason, .. } => {
            let (x, y) = pair.expect("refutations carry a pair");
            let sep = max_separation.expect("finite searches report the maximum");
            println!("  FALSIFIED — {reason}");
            println!("  the pair {x}, {y} never separates beyond {sep}");
        }
        v => println!("  unexpected: {v:?}"),
    }

    let cat = action("M", "2,1;1,1")?;
    println!("\nhyperbolic M = 2,1;1,1, same constant, same grid:");
    match falsify_expansive(&cat, &c, 8, &sampler, None)? {
        Verdict::Inconclusive { depth } => {
            println!("  inconclusive at depth {depth} — every sampled pair separated,");
            println!("  and a sample can never certify the whole torus");
        }
        v => println!("  unexpected: {v:?}"),
    }
    Ok(())
}
