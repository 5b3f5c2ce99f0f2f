//! Walk the Cayley balls of a presentation: shortlex witness words,
//! growth, and exhaustion of finite image groups.
//!
//!     cargo run --example cayley_balls

use expansia::error::Result;
use expansia::groups::GroupPresentation;
use expansia::matrix::IntMatrix;
use expansia::perm::Perm;

fn main() -> Result<()> {
    // The infinite dihedral-flavored pair: two involutions whose product
    // has infinite order, so balls keep growing linearly.
    let pair = GroupPresentation::from_matrices(vec![
        ("B".into(), IntMatrix::parse("-1,1;0,1")?),
        ("C".into(), IntMatrix::parse("-1,0;1,1")?),
    ])?;
    println!("<B,C> ball sizes by radius:");
    for depth in 0..=6 {
        let ball = pair.cayley_ball(depth)?;
        println!("  radius {depth}: {} elements (exhausted: {})", ball.len(), ball.exhausted);
    }

    println!("\nshortlex witnesses at radius 2:");
    for (word, elem) in pair.cayley_ball(2)?.in_shortlex_order() {
        println!("  `{}` -> {elem}", word.display(&pair));
    }

    // A finite image group: the 5-cycle already holds all five elements
    // at radius 2, but only radius 3 sees an empty layer — which is what
    // `exhausted` certifies.
    let cyc = GroupPresentation::from_perms(vec![("s".into(), Perm::parse("1,2,3,4,0")?)])?;
    for depth in [2, 3] {
        let ball = cyc.cayley_ball(depth)?;
        println!(
            "\n<s>: radius {depth} holds {} of 5 elements, exhausted: {}",
            ball.len(),
            ball.exhausted
        );
    }
    Ok(())
}
