//! Finite-index subgroups: coset transversals, the index, and syndetic
//! witness sets (finitely many translates that cover the group).
//!
//!     cargo run --example syndetic_subgroups

use expansia::error::Result;
use expansia::groups::{
    coset_transversal, verify_syndetic_witness, GroupPresentation, Subgroup, SyndeticVerdict,
    SyndeticWitness, TransversalResult, Word,
};
use expansia::perm::Perm;

fn main() -> Result<()> {
    // Shifts mod six: the even shifts sit at index two.
    let g = GroupPresentation::from_perms(vec![("s".into(), Perm::parse("1,2,3,4,5,0")?)])?;
    let s = g.find_generator("s").unwrap();
    let even = Subgroup::new(&g, vec![Word(vec![s, s])])?;
    if let TransversalResult::Complete { reps, exact } = coset_transversal(&g, &even, 64)? {
        let words: Vec<String> = reps.iter().map(|w| w.display(&g)).collect();
        println!("<s^2> in Z/6: index {} (exact: {exact}), transversal {{{}}}", reps.len(), words.join(", "));
    }

    // A non-normal subgroup: <(01)> inside S3 has three left cosets, and
    // the transversal walks the coset space by left multiplication.
    let s3 = GroupPresentation::from_perms(vec![
        ("a".into(), Perm::cycle(3, &[0, 1])?),
        ("b".into(), Perm::cycle(3, &[1, 2])?),
    ])?;
    let a = s3.find_generator("a").unwrap();
    let flip = Subgroup::new(&s3, vec![Word(vec![a])])?;
    let TransversalResult::Complete { reps, .. } = coset_transversal(&s3, &flip, 64)? else {
        unreachable!("S3 is finite");
    };
    let words: Vec<String> = reps.iter().map(|w| w.display(&s3)).collect();
    println!("<a> in S3:    index {}, transversal {{{}}}", reps.len(), words.join(", "));

    // A syndetic witness is a direct certificate: K such that K·g meets
    // the subgroup for every g. Too small a K leaves a gap...
    let skimpy = SyndeticWitness::new(&s3, vec![Word(vec![]), Word(vec![a])])?;
    match verify_syndetic_witness(&s3, &flip, &skimpy, 6)? {
        SyndeticVerdict::Falsified { gap } => {
            println!("{{e, a}} is not a witness: the translates miss `{}`", gap.display(&s3))
        }
        v => println!("unexpected: {v:?}"),
    }

    // ...while the transversal (closed under inversion) always is one.
    let full = SyndeticWitness::new(&s3, reps)?;
    match verify_syndetic_witness(&s3, &flip, &full, 6)? {
        SyndeticVerdict::Certified { exhaustive } => {
            println!("the transversal certifies <a> syndetic (exhaustive: {exhaustive})")
        }
        v => println!("unexpected: {v:?}"),
    }
    Ok(())
}
