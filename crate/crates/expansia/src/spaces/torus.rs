//! The rational torus: points with rational coordinates modulo one,
//! the max-of-arcs metric, and unions of half-open rational boxes.
//!
//! Every operation here is exact. Boxes are half-open products
//! `[lo, hi)` with `0 <= lo < hi <= 1`; wrapped arcs are split on
//! construction, so set algebra (intersection, subtraction, subset
//! tests) closes over the representation.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rat::{circle_dist, fmt_rat, mod1, parse_rat, rat_max, Rat};
use num::traits::{One, Zero};

/// A point of the torus, coordinates normalized into `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TorusPoint(Vec<Rat>);

impl TorusPoint {
    pub fn new(coords: Vec<Rat>) -> Self {
        TorusPoint(coords.into_iter().map(|c| mod1(&c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn origin(dim: usize) -> Self {
        TorusPoint(vec![Rat::zero(); dim])
    }

    /// Parse `"1/5,0"` (optionally wrapped in parentheses).
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = inner
            .split(',')
            .map(|t| parse_rat(t).map_err(Error::invalid))
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::invalid("empty point"));
        }
        Ok(TorusPoint::new(coords))
    }
}

impl std::fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rat).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Max over coordinates of the circle distance.
pub fn torus_distance(a: &TorusPoint, b: &TorusPoint) -> Rat {
    assert_eq!(a.dim(), b.dim(), "dimension mismatch");
    let mut best = Rat::zero();
    for (x, y) in a.0.iter().zip(&b.0) {
        best = rat_max(&best, &circle_dist(x, y));
    }
    best
}

/// Apply an integer matrix and reduce modulo one.
pub fn apply_matrix(m: &IntMatrix, p: &TorusPoint) -> Result<TorusPoint> {
    if m.dim() != p.dim() {
        return Err(Error::invalid(format!(
            "matrix dimension {} does not match point dimension {}",
            m.dim(),
            p.dim()
        )));
    }
    Ok(TorusPoint::new(m.apply(p.coords())))
}

/// All points `(k_1/q, .., k_d/q)` in lexicographic order.
pub fn grid_points(dim: usize, q: u32) -> Vec<TorusPoint> {
    assert!(q >= 1 && dim >= 1);
    let mut out = Vec::new();
    let mut idx = vec![0u32; dim];
    loop {
        out.push(TorusPoint::new(
            idx.iter().map(|&k| Rat::new((k as i64).into(), (q as i64).into())).collect(),
        ));
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < q {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// All reduced fractions `a/b` in `[0, 1)` with `b <= q`, sorted.
pub fn farey_fractions(q: u32) -> Vec<Rat> {
    assert!(q >= 1);
    let mut set = std::collections::BTreeSet::new();
    for b in 1..=q as i64 {
        for a in 0..b {
            set.insert(Rat::new(a.into(), b.into()));
        }
    }
    set.into_iter().collect()
}

/// All points whose coordinates are fractions of denominator at most `q`,
/// in lexicographic order.
pub fn farey_points(dim: usize, q: u32) -> Vec<TorusPoint> {
    assert!(dim >= 1);
    let fracs = farey_fractions(q);
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        out.push(TorusPoint::new(
            idx.iter().map(|&k| fracs[k].clone()).collect(),
        ));
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < fracs.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Half-open product box `[lo, hi)` inside the unit cube.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TorusBox {
    lo: Vec<Rat>,
    hi: Vec<Rat>,
}

impl TorusBox {
    /// Requires `0 <= lo_i < hi_i <= 1` in every coordinate.
    pub fn new(lo: Vec<Rat>, hi: Vec<Rat>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::invalid("box endpoint lists must match and be nonempty"));
        }
        let one = Rat::one();
        for (l, h) in lo.iter().zip(&hi) {
            if l < &Rat::zero() || h > &one || l >= h {
                return Err(Error::invalid(format!(
                    "box interval [{}, {}) must satisfy 0 <= lo < hi <= 1",
                    fmt_rat(l),
                    fmt_rat(h)
                )));
            }
        }
        Ok(TorusBox { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Rat] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rat] {
        &self.hi
    }

    pub fn contains(&self, p: &TorusPoint) -> bool {
        self.lo
            .iter()
            .zip(&self.hi)
            .zip(p.coords())
            .all(|((l, h), x)| l <= x && x < h)
    }

    fn intersect(&self, other: &TorusBox) -> Option<TorusBox> {
        let mut lo = Vec::with_capacity(self.dim());
        let mut hi = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let l = rat_max(&self.lo[i], &other.lo[i]);
            let h = crate::rat::rat_min(&self.hi[i], &other.hi[i]);
            if l >= h {
                return None;
            }
            lo.push(l);
            hi.push(h);
        }
        Some(TorusBox { lo, hi })
    }

    /// `self` minus `other` as disjoint boxes.
    fn subtract(&self, other: &TorusBox) -> Vec<TorusBox> {
        let inter = match self.intersect(other) {
            Some(b) => b,
            None => return vec![self.clone()],
        };
        let mut pieces = Vec::new();
        let mut cur = self.clone();
        for i in 0..self.dim() {
            if cur.lo[i] < inter.lo[i] {
                let mut left = cur.clone();
                left.hi[i] = inter.lo[i].clone();
                pieces.push(left);
                cur.lo[i] = inter.lo[i].clone();
            }
            if inter.hi[i] < cur.hi[i] {
                let mut right = cur.clone();
                right.lo[i] = inter.hi[i].clone();
                pieces.push(right);
                cur.hi[i] = inter.hi[i].clone();
            }
        }
        pieces
    }
}

impl std::fmt::Display for TorusBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| format!("{}..{}", fmt_rat(l), fmt_rat(h)))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A finite union of half-open boxes; the crate's torus subset type.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TorusSet {
    dim: usize,
    boxes: Vec<TorusBox>,
}

impl TorusSet {
    pub fn empty(dim: usize) -> Self {
        TorusSet { dim, boxes: Vec::new() }
    }

    pub fn whole(dim: usize) -> Self {
        TorusSet {
            dim,
            boxes: vec![TorusBox {
                lo: vec![Rat::zero(); dim],
                hi: vec![Rat::one(); dim],
            }],
        }
    }

    pub fn from_boxes(dim: usize, boxes: Vec<TorusBox>) -> Result<Self> {
        for b in &boxes {
            if b.dim() != dim {
                return Err(Error::invalid("box dimension mismatch"));
            }
        }
        let mut s = TorusSet { dim, boxes };
        s.normalize();
        Ok(s)
    }

    /// Build from per-coordinate arcs `lo..hi` reduced modulo one.
    /// An arc with `lo >= hi` (after reduction) wraps and is split;
    /// an arc of length one or more is the whole circle.
    pub fn from_arcs(arcs: &[(Rat, Rat)]) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::invalid("empty arc list"));
        }
        let dim = arcs.len();
        let one = Rat::one();
        // Per dimension: list of (lo, hi) fragments with 0 <= lo < hi <= 1.
        let mut frags: Vec<Vec<(Rat, Rat)>> = Vec::with_capacity(dim);
        for (lo, hi) in arcs {
            if hi.clone() - lo.clone() >= one {
                frags.push(vec![(Rat::zero(), one.clone())]);
                continue;
            }
            let l = mod1(lo);
            let h = mod1(hi);
            if l == h {
                return Err(Error::invalid("empty arc"));
            }
            // Map the endpoint so that a reduced value of zero means one.
            let h = if h.is_zero() { one.clone() } else { h };
            if l < h {
                frags.push(vec![(l, h)]);
            } else {
                // wraps through zero: [l, 1) and [0, h)
                frags.push(vec![(l, one.clone()), (Rat::zero(), h)]);
            }
        }
        // Cartesian product of fragments.
        let mut boxes: Vec<TorusBox> = vec![TorusBox {
            lo: Vec::new(),
            hi: Vec::new(),
        }];
        for dim_frags in &frags {
            let mut next = Vec::new();
            for b in &boxes {
                for (l, h) in dim_frags {
                    let mut nb = b.clone();
                    nb.lo.push(l.clone());
                    nb.hi.push(h.clone());
                    next.push(nb);
                }
            }
            boxes = next;
        }
        TorusSet::from_boxes(dim, boxes)
    }

    /// Parse `"lo..hi x lo..hi"`, unions joined with `|`.
    pub fn parse(dim: usize, text: &str) -> Result<Self> {
        let mut out = TorusSet::empty(dim);
        for atom in text.split('|') {
            let atom = atom.trim();
            if atom == "full" {
                return Ok(TorusSet::whole(dim));
            }
            let mut arcs = Vec::new();
            for (i, part) in atom.split('x').enumerate() {
                let part = part.trim();
                let (lo_s, hi_s) = part.split_once("..").ok_or_else(|| {
                    Error::invalid(format!("interval `{part}` must look like lo..hi"))
                })?;
                let lo = parse_rat(lo_s.trim()).map_err(Error::invalid)?;
                let hi = parse_rat(hi_s.trim()).map_err(Error::invalid)?;
                arcs.push((lo, hi));
                if i >= dim {
                    return Err(Error::invalid(format!(
                        "box `{atom}` has more than {dim} coordinates"
                    )));
                }
            }
            if arcs.len() != dim {
                return Err(Error::invalid(format!(
                    "box `{atom}` has {} coordinates but the torus has dimension {dim}",
                    arcs.len()
                )));
            }
            out = out.union(&TorusSet::from_arcs(&arcs)?);
        }
        if out.is_empty() {
            return Err(Error::invalid("empty torus set"));
        }
        Ok(out)
    }

    fn normalize(&mut self) {
        self.boxes.sort();
        self.boxes.dedup();
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[TorusBox] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, p: &TorusPoint) -> bool {
        self.boxes.iter().any(|b| b.contains(p))
    }

    pub fn union(&self, other: &TorusSet) -> TorusSet {
        let mut boxes = self.boxes.clone();
        boxes.extend(other.boxes.iter().cloned());
        let mut s = TorusSet { dim: self.dim, boxes };
        s.normalize();
        s
    }

    pub fn intersect(&self, other: &TorusSet) -> TorusSet {
        let mut boxes = Vec::new();
        for a in &self.boxes {
            for b in &other.boxes {
                if let Some(c) = a.intersect(b) {
                    boxes.push(c);
                }
            }
        }
        let mut s = TorusSet { dim: self.dim, boxes };
        s.normalize();
        s
    }

    pub fn subtract(&self, other: &TorusSet) -> TorusSet {
        let mut pieces = self.boxes.clone();
        for b in &other.boxes {
            pieces = pieces.iter().flat_map(|a| a.subtract(b)).collect();
        }
        let mut s = TorusSet {
            dim: self.dim,
            boxes: pieces,
        };
        s.normalize();
        s
    }

    pub fn is_subset_of(&self, other: &TorusSet) -> bool {
        self.subtract(other).is_empty()
    }

    /// Exact test that the sets jointly cover the torus.
    pub fn covers_whole(dim: usize, sets: &[&TorusSet]) -> bool {
        let mut rest = TorusSet::whole(dim);
        for s in sets {
            rest = rest.subtract(s);
            if rest.is_empty() {
                return true;
            }
        }
        rest.is_empty()
    }

    /// The max-metric open ball of radius `r` around `p`, as the box
    /// `[p - r, p + r)` (radius at most one half).
    pub fn metric_ball(p: &TorusPoint, r: &Rat) -> Result<TorusSet> {
        if r <= &Rat::zero() || r > &Rat::new(1.into(), 2.into()) {
            return Err(Error::invalid("ball radius must lie in (0, 1/2]"));
        }
        let arcs: Vec<(Rat, Rat)> = p
            .coords()
            .iter()
            .map(|c| (c.clone() - r.clone(), c.clone() + r.clone()))
            .collect();
        TorusSet::from_arcs(&arcs)
    }

    /// Total measure; used by sanity tests, not by verdicts.
    pub fn volume(&self) -> Rat {
        // boxes may overlap: inclusion via iterated subtraction
        let mut disjoint: Vec<TorusBox> = Vec::new();
        for b in &self.boxes {
            let mut pieces = vec![b.clone()];
            for d in &disjoint {
                pieces = pieces.iter().flat_map(|p| p.subtract(d)).collect();
            }
            disjoint.extend(pieces);
        }
        let mut total = Rat::zero();
        for b in &disjoint {
            let mut v = Rat::one();
            for i in 0..b.dim() {
                v *= b.hi[i].clone() - b.lo[i].clone();
            }
            total += v;
        }
        total
    }
}

impl std::fmt::Display for TorusSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.boxes.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> = self.boxes.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(" | "))
    }
}

/// Convenience: `k/q` as a rational.
pub fn frac(k: i64, q: i64) -> Rat {
    Rat::new(k.into(), q.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;
    use crate::rat::rat;

    fn pt(text: &str) -> TorusPoint {
        TorusPoint::parse(text).unwrap()
    }

    #[test]
    fn points_normalize_and_round_trip() {
        let p = TorusPoint::new(vec![rat(7, 5), rat(-1, 3)]);
        assert_eq!(p, pt("2/5,2/3"));
        assert_eq!(p.to_string(), "(2/5,2/3)");
        assert_eq!(TorusPoint::parse("(2/5, 2/3)").unwrap(), p);
    }

    #[test]
    fn distance_is_max_of_circle_arcs() {
        assert_eq!(torus_distance(&pt("0,0"), &pt("1/2,0")), rat(1, 2));
        assert_eq!(torus_distance(&pt("0,0"), &pt("3/4,1/8")), rat(1, 4));
        assert_eq!(torus_distance(&pt("1/5,0"), &pt("1/5,0")), rat(0, 1));
        // symmetry
        assert_eq!(
            torus_distance(&pt("9/10,1/3"), &pt("1/10,2/3")),
            torus_distance(&pt("1/10,2/3"), &pt("9/10,1/3")),
        );
    }

    #[test]
    fn matrix_action_is_exact() {
        let bc = IntMatrix::parse("2,1;1,1").unwrap();
        let p = apply_matrix(&bc, &pt("1/5,0")).unwrap();
        assert_eq!(p, pt("2/5,1/5"));
        // denominators never grow under an integer matrix
        let p2 = apply_matrix(&bc, &p).unwrap();
        assert_eq!(p2, pt("0,3/5"));
    }

    #[test]
    fn grid_is_lexicographic_and_complete() {
        let g = grid_points(2, 3);
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], pt("0,0"));
        assert_eq!(g[1], pt("0,1/3"));
        assert_eq!(g[3], pt("1/3,0"));
        assert_eq!(g[8], pt("2/3,2/3"));
    }

    #[test]
    fn parse_boxes_and_membership() {
        let s = TorusSet::parse(2, "0..1/2 x 0..1").unwrap();
        assert!(s.contains(&pt("0,0")));
        assert!(s.contains(&pt("1/4,9/10")));
        assert!(!s.contains(&pt("1/2,0"))); // half-open
        assert!(!s.contains(&pt("3/4,1/4")));
    }

    #[test]
    fn wrapped_arcs_split() {
        let s = TorusSet::parse(1, "3/4..1/4").unwrap();
        assert_eq!(s.boxes().len(), 2);
        assert!(s.contains(&pt("7/8")));
        assert!(s.contains(&pt("0")));
        assert!(s.contains(&pt("1/8")));
        assert!(!s.contains(&pt("1/4")));
        assert!(!s.contains(&pt("1/2")));
        assert_eq!(s.volume(), rat(1, 2));
    }

    #[test]
    fn set_algebra_is_exact() {
        let a = TorusSet::parse(1, "0..2/3").unwrap();
        let b = TorusSet::parse(1, "1/2..1").unwrap();
        let inter = a.intersect(&b);
        assert_eq!(inter, TorusSet::parse(1, "1/2..2/3").unwrap());
        let diff = a.subtract(&b);
        assert_eq!(diff, TorusSet::parse(1, "0..1/2").unwrap());
        assert!(inter.is_subset_of(&a));
        assert!(inter.is_subset_of(&b));
        assert!(!a.is_subset_of(&b));
        assert!(TorusSet::covers_whole(1, &[&a, &b]));
        let c = TorusSet::parse(1, "0..1/2").unwrap();
        assert!(!TorusSet::covers_whole(1, &[&c, &TorusSet::parse(1, "3/5..1").unwrap()]));
    }

    #[test]
    fn two_dim_subtraction_partitions() {
        let whole = TorusSet::whole(2);
        let q = TorusSet::parse(2, "1/4..3/4 x 1/4..3/4").unwrap();
        let rest = whole.subtract(&q);
        assert!(!rest.contains(&pt("1/2,1/2")));
        assert!(rest.contains(&pt("0,0")));
        assert!(rest.contains(&pt("1/2,7/8")));
        assert_eq!(rest.volume(), rat(3, 4));
        assert_eq!(rest.union(&q).volume(), rat(1, 1));
        assert!(TorusSet::covers_whole(2, &[&rest, &q]));
    }

    #[test]
    fn metric_balls_are_boxes() {
        let ball = TorusSet::metric_ball(&pt("0,0"), &rat(1, 4)).unwrap();
        assert!(ball.contains(&pt("0,0")));
        assert!(ball.contains(&pt("7/8,1/8")));
        assert!(!ball.contains(&pt("1/4,0")));
        assert!(ball.contains(&pt("9/10,9/10")));
        assert_eq!(ball.volume(), rat(1, 4));
        // a radius-1/2 ball is the whole torus
        let big = TorusSet::metric_ball(&pt("1/3,1/3"), &rat(1, 2)).unwrap();
        assert_eq!(big.volume(), rat(1, 1));
    }

    #[test]
    fn volume_ignores_overlap() {
        let a = TorusSet::parse(1, "0..1/2 | 1/4..3/4").unwrap();
        assert_eq!(a.volume(), rat(3, 4));
    }

    #[test]
    fn parse_rejects_malformed_boxes() {
        assert!(TorusSet::parse(2, "0..1/2").is_err()); // wrong arity
        assert!(TorusSet::parse(1, "1/2").is_err()); // no ..
        assert!(TorusSet::parse(1, "0..0").is_err()); // empty arc
        assert!(TorusSet::parse(1, "x/2..1").is_err());
    }
}
