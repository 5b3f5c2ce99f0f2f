//! Certify or refute expansivity for integer matrix actions on the torus.
//!
//! The headline pair: two order-two matrices B and C, each useless alone,
//! whose product is a hyperbolic automorphism — so the group they generate
//! acts expansively while neither cyclic factor does.
//!
//!     cargo run --example toral_certificates

use expansia::error::Result;
use expansia::expansivity::{certify_linear, Verdict};
use expansia::groups::GroupPresentation;
use expansia::matrix::IntMatrix;

fn describe(label: &str, v: &Verdict, g: &GroupPresentation) {
    match v {
        Verdict::Certified { reason, witness, numeric, .. } => {
            let w = witness
                .as_ref()
                .map(|w| format!(" (witness `{}`)", w.display(g)))
                .unwrap_or_default();
            println!("{label}: CERTIFIED — {reason}{w}, numeric={numeric}");
        }
        Verdict::Falsified { reason, .. } => println!("{label}: FALSIFIED — {reason}"),
        Verdict::Inconclusive { depth } => println!("{label}: inconclusive at depth {depth}"),
    }
}

fn main() -> Result<()> {
    let b = IntMatrix::parse("-1,1;0,1")?;
    let c = IntMatrix::parse("-1,0;1,1")?;
    println!("B = {b}   (trace {}, det {})", b.trace()?, b.det()?);
    println!("C = {c}   (trace {}, det {})", c.trace()?, c.det()?);
    let bc = b.mul(&c)?;
    println!("BC = {bc}  (trace {}, det {}) — hyperbolic\n", bc.trace()?, bc.det()?);

    let pair = GroupPresentation::from_matrices(vec![
        ("B".into(), b.clone()),
        ("C".into(), c.clone()),
    ])?;
    describe("<B,C>", &certify_linear(&pair, 4)?, &pair);

    let product = GroupPresentation::from_matrices(vec![("M".into(), bc)])?;
    describe("<BC> ", &certify_linear(&product, 2)?, &product);

    for (name, m) in [("B", b), ("C", c)] {
        let single = GroupPresentation::from_matrices(vec![(name.into(), m)])?;
        describe(&format!("<{name}>  "), &certify_linear(&single, 4)?, &single);
    }
    Ok(())
}
