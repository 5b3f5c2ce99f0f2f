//! expansia — certify, falsify, and measure expansivity and orbit
//! expansivity of finitely generated group actions on concrete compact
//! spaces: the rational torus with exact arithmetic, finite metric
//! spaces, and finite topological spaces.
//!
//! Everything on the verdict path is exact rational or integer
//! arithmetic; the only floating point in the crate is the explicitly
//! flagged numeric eigenvalue test beyond dimension two and an
//! informational analytic bound. Bounded searches scan Cayley balls in
//! shortlex order and grids in lexicographic order, so every report is
//! deterministic and replayable.

pub mod actions;
pub mod cli;
pub mod error;
pub mod expansivity;
pub mod groups;
pub mod matrix;
pub mod models;
pub mod orbit;
pub mod perm;
pub mod rat;
pub mod report;
pub mod scenario;
pub mod suites;
pub mod spaces;
