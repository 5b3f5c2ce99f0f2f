//! Permutations of `{0, .., n-1}` as image tables.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm(Vec<usize>);

impl Perm {
    /// `images[i]` is the image of point `i`; must be a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::invalid("empty permutation"));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::invalid(format!(
                    "not a permutation of 0..{n}: image list {images:?}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Composition `self ∘ rhs`: first `rhs`, then `self`.
    pub fn compose(&self, rhs: &Perm) -> Result<Perm> {
        if self.len() != rhs.len() {
            return Err(Error::invalid("permutation size mismatch in product"));
        }
        Ok(Perm(rhs.0.iter().map(|&i| self.0[i]).collect()))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// Cycle through `points` in the given order (all other points fixed).
    pub fn cycle(n: usize, points: &[usize]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        for w in points.windows(2) {
            if w[0] >= n || w[1] >= n {
                return Err(Error::invalid("cycle point out of range"));
            }
            images[w[0]] = w[1];
        }
        if points.len() > 1 {
            images[*points.last().unwrap()] = points[0];
        }
        Perm::new(images)
    }

    /// Parse a one-line image list `"2,0,1"`.
    pub fn parse(s: &str) -> Result<Perm> {
        let images = s
            .trim()
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad permutation entry `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::new(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
