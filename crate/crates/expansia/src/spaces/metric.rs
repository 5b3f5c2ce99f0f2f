//! Finite metric spaces with exact rational distances.
//!
//! Points are indices `0..n`. Distances are stored as a lower triangle
//! and validated for symmetry-by-construction, zero diagonal, and strict
//! positivity off the diagonal. Triangle-inequality violations are
//! reported rather than rejected, so callers can decide how strict to be.

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, parse_rat, rat_max, rat_min, Rat};
use num::traits::Zero;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteMetricSpace {
    n: usize,
    /// Lower triangle: entry for `(i, j)` with `j < i` at `i(i-1)/2 + j`.
    tri: Vec<Rat>,
}

impl FiniteMetricSpace {
    /// Rows of the strict lower triangle: row `k` lists the distances
    /// from point `k + 1` to points `0..=k`.
    pub fn from_lower_triangle(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let n = rows.len() + 1;
        let mut tri = Vec::with_capacity(n * (n - 1) / 2);
        for (k, row) in rows.into_iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::invalid(format!(
                    "triangle row {} must have {} entries, found {}",
                    k + 1,
                    k + 1,
                    row.len()
                )));
            }
            for d in row {
                if d <= Rat::zero() {
                    return Err(Error::invalid(format!(
                        "distances between distinct points must be positive, found {}",
                        fmt_rat(&d)
                    )));
                }
                tri.push(d);
            }
        }
        Ok(FiniteMetricSpace { n, tri })
    }

    /// A single point (the empty triangle).
    pub fn singleton() -> Self {
        FiniteMetricSpace { n: 1, tri: Vec::new() }
    }

    /// `n` points at pairwise distance `d`.
    pub fn uniform(n: usize, d: Rat) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a metric space needs at least one point"));
        }
        let rows = (1..n).map(|k| vec![d.clone(); k]).collect();
        if n == 1 {
            return Ok(Self::singleton());
        }
        Self::from_lower_triangle(rows)
    }

    /// Parse triangle rows joined by `;`, entries separated by spaces:
    /// `"1; 1 1"` is three points at pairwise distance one.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::singleton());
        }
        let rows = text
            .split(';')
            .map(|row| {
                row.split_whitespace()
                    .map(|t| parse_rat(t).map_err(Error::invalid))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_lower_triangle(rows)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dist(&self, i: usize, j: usize) -> Rat {
        assert!(i < self.n && j < self.n, "point index out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Rat::zero(),
            std::cmp::Ordering::Greater => self.tri[i * (i - 1) / 2 + j].clone(),
            std::cmp::Ordering::Less => self.tri[j * (j - 1) / 2 + i].clone(),
        }
    }

    /// All unordered pairs `(i, j)` with `i < j`, lexicographically.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                v.push((i, j));
            }
        }
        v
    }

    pub fn diameter(&self) -> Rat {
        let mut best = Rat::zero();
        for d in &self.tri {
            best = rat_max(&best, d);
        }
        best
    }

    /// Smallest distance between distinct points; zero on a singleton.
    pub fn min_distance(&self) -> Rat {
        let mut it = self.tri.iter();
        let mut best = match it.next() {
            Some(d) => d.clone(),
            None => return Rat::zero(),
        };
        for d in it {
            best = rat_min(&best, d);
        }
        best
    }

    /// Triples `(i, j, k)` with `d(i, k) > d(i, j) + d(j, k)`.
    pub fn triangle_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for k in (i + 1)..self.n {
                for j in 0..self.n {
                    if j == i || j == k {
                        continue;
                    }
                    if self.dist(i, k) > self.dist(i, j) + self.dist(j, k) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

impl std::fmt::Display for FiniteMetricSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut rows = Vec::new();
        for i in 1..self.n {
            let row: Vec<String> = (0..i).map(|j| fmt_rat(&self.dist(i, j))).collect();
            rows.push(row.join(" "));
        }
        write!(f, "{}", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn triangle_storage_round_trips() {
        let m = FiniteMetricSpace::parse("1; 1 1").unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.dist(0, 1), rat(1, 1));
        assert_eq!(m.dist(1, 0), rat(1, 1));
        assert_eq!(m.dist(2, 2), rat(0, 1));
        assert_eq!(m.to_string(), "1; 1 1");
        assert_eq!(FiniteMetricSpace::parse(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn asymmetric_triangle() {
        let m = FiniteMetricSpace::parse("1/2; 3/4 1").unwrap();
        assert_eq!(m.dist(2, 0), rat(3, 4));
        assert_eq!(m.dist(2, 1), rat(1, 1));
        assert_eq!(m.diameter(), rat(1, 1));
        assert_eq!(m.min_distance(), rat(1, 2));
        assert!(m.triangle_violations().is_empty());
        assert_eq!(m.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn violations_are_reported_not_rejected() {
        // d(0,2) = 5 > d(0,1) + d(1,2) = 2
        let m = FiniteMetricSpace::parse("1; 5 1").unwrap();
        let v = m.triangle_violations();
        assert!(v.contains(&(0, 1, 2)));
    }

    #[test]
    fn palette_above_one_half_is_triangle_safe() {
        let m = FiniteMetricSpace::parse("1/2; 1 5/6; 2/3 3/4 1/2").unwrap();
        assert!(m.triangle_violations().is_empty());
    }

    #[test]
    fn rejects_nonpositive_and_ragged_input() {
        assert!(FiniteMetricSpace::parse("0; 1 1").is_err());
        assert!(FiniteMetricSpace::parse("-1/2").is_err());
        assert!(FiniteMetricSpace::parse("1; 1").is_err());
        assert!(FiniteMetricSpace::parse("junk").is_err());
    }

    #[test]
    fn uniform_and_singleton() {
        let m = FiniteMetricSpace::uniform(4, rat(1, 1)).unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m.dist(1, 3), rat(1, 1));
        assert_eq!(FiniteMetricSpace::singleton().len(), 1);
        assert_eq!(FiniteMetricSpace::singleton().diameter(), rat(0, 1));
        assert_eq!(FiniteMetricSpace::parse("").unwrap().len(), 1);
    }
}
