//! Concrete compact spaces: the rational torus, finite metric spaces,
//! and finite topological spaces, plus the open-cover calculus over them.

pub mod cover;
pub mod metric;
pub mod topology;
pub mod torus;

use crate::error::{Error, Result};
use crate::rat::{rat, Rat};
use metric::FiniteMetricSpace;
use topology::FiniteTopSpace;
use torus::{torus_distance, TorusPoint};

/// A space an action can live on.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Space {
    Torus { dim: usize },
    Metric(FiniteMetricSpace),
    Top(FiniteTopSpace),
}

/// A point of such a space.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Point {
    Torus(TorusPoint),
    Finite(usize),
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Torus(p) => write!(f, "{p}"),
            Point::Finite(i) => write!(f, "{i}"),
        }
    }
}

impl Space {
    /// Number of points of a finite space; `None` for the torus.
    pub fn finite_size(&self) -> Option<usize> {
        match self {
            Space::Torus { .. } => None,
            Space::Metric(m) => Some(m.len()),
            Space::Top(t) => Some(t.len()),
        }
    }

    /// All points of a finite space, in index order.
    pub fn points(&self) -> Result<Vec<Point>> {
        match self.finite_size() {
            Some(n) => Ok((0..n).map(Point::Finite).collect()),
            None => Err(Error::Unsupported(
                "cannot enumerate the points of the torus".into(),
            )),
        }
    }

    /// Does the point belong to (and have the right shape for) this space?
    pub fn check_point(&self, p: &Point) -> Result<()> {
        match (self, p) {
            (Space::Torus { dim }, Point::Torus(t)) if t.dim() == *dim => Ok(()),
            (Space::Torus { dim }, Point::Torus(t)) => Err(Error::invalid(format!(
                "point has dimension {} but the torus has dimension {dim}",
                t.dim()
            ))),
            (Space::Metric(m), Point::Finite(i)) if *i < m.len() => Ok(()),
            (Space::Top(t), Point::Finite(i)) if *i < t.len() => Ok(()),
            (Space::Metric(_), Point::Finite(i)) | (Space::Top(_), Point::Finite(i)) => Err(
                Error::invalid(format!("point index {i} out of range for this space")),
            ),
            _ => Err(Error::invalid("point kind does not match space kind")),
        }
    }

    /// Metric where one exists (torus and finite metric spaces).
    pub fn distance(&self, a: &Point, b: &Point) -> Result<Rat> {
        self.check_point(a)?;
        self.check_point(b)?;
        match (self, a, b) {
            (Space::Torus { .. }, Point::Torus(x), Point::Torus(y)) => Ok(torus_distance(x, y)),
            (Space::Metric(m), Point::Finite(i), Point::Finite(j)) => Ok(m.dist(*i, *j)),
            (Space::Top(_), _, _) => Err(Error::Unsupported(
                "a bare topological space carries no metric".into(),
            )),
            _ => unreachable!("check_point verified the shapes"),
        }
    }

    /// Largest distance between points.
    pub fn diameter(&self) -> Result<Rat> {
        match self {
            Space::Torus { .. } => Ok(rat(1, 2)),
            Space::Metric(m) => Ok(m.diameter()),
            Space::Top(_) => Err(Error::Unsupported(
                "a bare topological space carries no metric".into(),
            )),
        }
    }

    /// Short structural description for logs and reports.
    pub fn describe(&self) -> String {
        match self {
            Space::Torus { dim } => format!("torus dim={dim}"),
            Space::Metric(m) => format!("metric points={}", m.len()),
            Space::Top(t) => format!("top points={} opens={}", t.len(), t.opens().len()),
        }
    }
}
