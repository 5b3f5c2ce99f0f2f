//! Estimate how large an expansivity constant can get, and how deep the
//! group must act before a given separation shows up.
//!
//!     cargo run --example constant_estimates

use expansia::actions::ActionHandle;
use expansia::error::Result;
use expansia::expansivity::{
    estimate_sup_constant, uniform_separation_bound, Sampler, UniformBound,
};
use expansia::groups::GroupPresentation;
use expansia::matrix::IntMatrix;
use expansia::rat::rat;
use expansia::spaces::metric::FiniteMetricSpace;
use expansia::spaces::Space;

fn main() -> Result<()> {
    // Two-sided bracket for the hyperbolic cat map, sampled on a grid.
    let g = GroupPresentation::from_matrices(vec![("M".into(), IntMatrix::parse("2,1;1,1")?)])?;
    let cat = ActionHandle::new(g, Space::Torus { dim: 2 })?;
    let est = estimate_sup_constant(&cat, 4, 8)?;
    println!(
        "cat map, depth {} on the {}-grid: sup of working constants is in [{}, {}] (exact: {})",
        est.depth, est.grid_q, est.lo, est.hi, est.exact
    );

    // On a finite metric space the same quantity is computed exactly.
    let metric = FiniteMetricSpace::parse("1; 1 1/2")?;
    let shift = GroupPresentation::from_perms(vec![(
        "r".into(),
        expansia::perm::Perm::parse("1,2,0")?,
    )])?;
    let rot = ActionHandle::new(shift, Space::Metric(metric))?;
    let est = estimate_sup_constant(&rot, 6, 2)?;
    println!(
        "three-point rotation: sup in [{}, {}] (exact: {})",
        est.lo, est.hi, est.exact
    );

    // How many steps until every eps-apart pair of the grid separates
    // beyond c? The analytic hint is log(c/eps) / log(largest eigenvalue).
    let (c, eps) = (rat(1, 4), rat(1, 24));
    match uniform_separation_bound(&cat, &c, &eps, 10, &Sampler::Grid { q: 12 })? {
        UniformBound::Bound { n, analytic_hint } => println!(
            "cat map separates every pair >= 1/24 apart beyond 1/4 within {n} steps \
             (eigenvalue hint: {analytic_hint:?})"
        ),
        UniformBound::Inconclusive { depth, .. } => {
            println!("some pair survived to depth {depth}")
        }
    }
    Ok(())
}
