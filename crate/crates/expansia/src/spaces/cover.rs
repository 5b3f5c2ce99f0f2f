//! Open covers and the calculus the orbit checks run on: membership,
//! joins, refinement, fitting (Lebesgue) numbers, and the translations
//! between separation constants and covers.
//!
//! Torus members are either explicit box unions or intersections of
//! matrix preimages of box unions (the closed form for images of covers
//! under the action); membership stays exact in both shapes.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::perm::Perm;
use crate::rat::{mod1, rat, rat_max, Rat};
use crate::spaces::torus::{grid_points, TorusSet};
use crate::spaces::{Point, Space};
use num::traits::{One, Zero};
use num::BigInt;
use std::collections::BTreeSet;

/// A subset of a space, in one of the crate's exact representations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum SetRepr {
    /// Subset of a finite space, one bit per point.
    Mask(u64),
    /// Union of half-open rational boxes on the torus.
    Boxes(TorusSet),
    /// Intersection of matrix preimages: a point lies in the set when
    /// `M x mod 1` lands in the box union for every listed pair.
    TorusInter(Vec<(IntMatrix, TorusSet)>),
}

impl SetRepr {
    pub fn contains(&self, p: &Point) -> Result<bool> {
        match (self, p) {
            (SetRepr::Mask(m), Point::Finite(i)) => {
                if *i >= 64 {
                    return Err(Error::invalid("point index out of mask range"));
                }
                Ok(m & (1u64 << i) != 0)
            }
            (SetRepr::Boxes(s), Point::Torus(t)) => Ok(s.contains(t)),
            (SetRepr::TorusInter(list), Point::Torus(t)) => {
                for (m, b) in list {
                    let image = crate::spaces::torus::apply_matrix(m, t)?;
                    if !b.contains(&image) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Err(Error::invalid("set representation does not match point kind")),
        }
    }

    /// Reduce to a plain box union when the representation allows it.
    pub fn as_plain_boxes(&self) -> Option<TorusSet> {
        match self {
            SetRepr::Boxes(s) => Some(s.clone()),
            SetRepr::TorusInter(list) => {
                if list.iter().all(|(m, _)| m.is_identity()) {
                    let mut acc = list[0].1.clone();
                    for (_, b) in &list[1..] {
                        acc = acc.intersect(b);
                    }
                    Some(acc)
                } else {
                    None
                }
            }
            SetRepr::Mask(_) => None,
        }
    }

    fn inter_constraints(&self) -> Option<Vec<(IntMatrix, TorusSet)>> {
        match self {
            SetRepr::Boxes(s) => Some(vec![(
                IntMatrix::identity(s.dim()),
                s.clone(),
            )]),
            SetRepr::TorusInter(list) => Some(list.clone()),
            SetRepr::Mask(_) => None,
        }
    }

    /// Canonical form for a constraint list: identity constraints are
    /// folded into one box union, the rest sorted and deduplicated.
    fn normalize_inter(mut list: Vec<(IntMatrix, TorusSet)>) -> SetRepr {
        let dim = list[0].1.dim();
        let mut plain: Option<TorusSet> = None;
        let mut rest = Vec::new();
        for (m, b) in list.drain(..) {
            if m.is_identity() {
                plain = Some(match plain {
                    Some(acc) => acc.intersect(&b),
                    None => b,
                });
            } else {
                rest.push((m, b));
            }
        }
        rest.sort();
        rest.dedup();
        match (plain, rest.is_empty()) {
            (Some(p), true) => SetRepr::Boxes(p),
            (plain, _) => {
                let mut list = Vec::new();
                if let Some(p) = plain {
                    list.push((IntMatrix::identity(dim), p));
                }
                list.extend(rest);
                list.sort();
                SetRepr::TorusInter(list)
            }
        }
    }

    /// Image under a permutation (finite spaces only).
    pub fn image_perm(&self, p: &Perm) -> Result<SetRepr> {
        match self {
            SetRepr::Mask(m) => {
                let mut out = 0u64;
                for i in 0..p.len() {
                    if m & (1u64 << i) != 0 {
                        out |= 1u64 << p.apply(i);
                    }
                }
                Ok(SetRepr::Mask(out))
            }
            _ => Err(Error::invalid("permutation image of a torus set")),
        }
    }

    /// Image under the torus map with the given inverse matrix:
    /// `x` lies in the image exactly when `g_inv x` lies in `self`.
    pub fn image_matrix(&self, g_inv: &IntMatrix) -> Result<SetRepr> {
        let list = self
            .inter_constraints()
            .ok_or_else(|| Error::invalid("matrix image of a finite-space set"))?;
        let mapped = list
            .into_iter()
            .map(|(m, b)| Ok((m.mul(g_inv)?, b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalize_inter(mapped))
    }

    pub fn intersect(&self, other: &SetRepr) -> Result<SetRepr> {
        match (self, other) {
            (SetRepr::Mask(a), SetRepr::Mask(b)) => Ok(SetRepr::Mask(a & b)),
            _ => {
                let mut list = self
                    .inter_constraints()
                    .ok_or_else(|| Error::invalid("mixed set kinds in intersection"))?;
                list.extend(
                    other
                        .inter_constraints()
                        .ok_or_else(|| Error::invalid("mixed set kinds in intersection"))?,
                );
                Ok(Self::normalize_inter(list))
            }
        }
    }

    /// True when the set is the empty set by inspection. A `false` is not
    /// a nonemptiness certificate for preimage intersections.
    pub fn certainly_empty(&self) -> bool {
        match self {
            SetRepr::Mask(m) => *m == 0,
            SetRepr::Boxes(s) => s.is_empty(),
            SetRepr::TorusInter(list) => list.iter().any(|(_, b)| b.is_empty()),
        }
    }

    /// Exact subset test where the representations allow one; for
    /// preimage intersections a sound structural test is used (more
    /// constraints means a smaller set), and anything beyond it errs.
    pub fn subset_of(&self, other: &SetRepr) -> Result<bool> {
        match (self, other) {
            (SetRepr::Mask(a), SetRepr::Mask(b)) => Ok(a & !b == 0),
            (SetRepr::Mask(_), _) | (_, SetRepr::Mask(_)) => {
                Err(Error::invalid("mixed set kinds in subset test"))
            }
            _ => {
                if let (Some(a), Some(b)) = (self.as_plain_boxes(), other.as_plain_boxes()) {
                    return Ok(a.is_subset_of(&b));
                }
                let a = self.inter_constraints().expect("torus repr");
                let b = other.inter_constraints().expect("torus repr");
                if b.iter().all(|c| a.contains(c)) {
                    return Ok(true);
                }
                Err(Error::Unsupported(
                    "subset test between preimage intersections is only structural".into(),
                ))
            }
        }
    }
}

/// A cover member with a human-readable name carried through joins,
/// images, and reports.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NamedSet {
    pub name: String,
    pub repr: SetRepr,
}

impl NamedSet {
    pub fn new(name: impl Into<String>, repr: SetRepr) -> Self {
        NamedSet {
            name: name.into(),
            repr,
        }
    }
}

/// A validated open cover of a space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpenCover {
    members: Vec<NamedSet>,
}

fn full_of(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl OpenCover {
    /// Validating constructor: members must match the space kind, be open
    /// (for topological spaces), and jointly cover the space, all checked
    /// exactly. Preimage-intersection members are refused here; they only
    /// arise through [`OpenCover::join`] and action images, which preserve
    /// the covering property by construction.
    pub fn new(space: &Space, members: Vec<NamedSet>) -> Result<OpenCover> {
        if members.is_empty() {
            return Err(Error::NotACover("a cover needs at least one member".into()));
        }
        match space {
            Space::Torus { dim } => {
                let mut sets = Vec::new();
                for m in &members {
                    match &m.repr {
                        SetRepr::Boxes(s) if s.dim() == *dim => sets.push(s),
                        SetRepr::Boxes(_) => {
                            return Err(Error::invalid(format!(
                                "member {} has the wrong dimension",
                                m.name
                            )))
                        }
                        _ => {
                            return Err(Error::invalid(format!(
                                "member {} must be an explicit box union",
                                m.name
                            )))
                        }
                    }
                }
                if !TorusSet::covers_whole(*dim, &sets) {
                    return Err(Error::NotACover(
                        "members do not cover the torus".into(),
                    ));
                }
            }
            Space::Metric(_) | Space::Top(_) => {
                let n = space.finite_size().expect("finite space");
                let full = full_of(n);
                let mut union = 0u64;
                for m in &members {
                    match m.repr {
                        SetRepr::Mask(mask) => {
                            if mask & !full != 0 {
                                return Err(Error::invalid(format!(
                                    "member {} mentions a point outside the space",
                                    m.name
                                )));
                            }
                            if let Space::Top(t) = space {
                                if !t.is_open(mask) {
                                    return Err(Error::invalid(format!(
                                        "member {} is not an open set of the space",
                                        m.name
                                    )));
                                }
                            }
                            union |= mask;
                        }
                        _ => {
                            return Err(Error::invalid(format!(
                                "member {} must be a point mask",
                                m.name
                            )))
                        }
                    }
                }
                if union != full {
                    return Err(Error::NotACover(
                        "members do not cover every point".into(),
                    ));
                }
            }
        }
        Ok(OpenCover { members })
    }

    /// Trusted constructor for covers produced by covering-preserving
    /// operations (joins and homeomorphic images).
    pub(crate) fn from_parts(members: Vec<NamedSet>) -> OpenCover {
        OpenCover { members }
    }

    pub fn from_masks(space: &Space, masks: Vec<u64>) -> Result<OpenCover> {
        let members = masks
            .into_iter()
            .enumerate()
            .map(|(i, m)| NamedSet::new(format!("U{i}"), SetRepr::Mask(m)))
            .collect();
        OpenCover::new(space, members)
    }

    pub fn members(&self) -> &[NamedSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index of the first member containing both points, if any. This is
    /// the subordination test: the pair `{a, b}` sits below the cover
    /// exactly when such a member exists.
    pub fn member_containing_pair(&self, a: &Point, b: &Point) -> Result<Option<usize>> {
        for (i, m) in self.members.iter().enumerate() {
            if m.repr.contains(a)? && m.repr.contains(b)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn pair_fits(&self, a: &Point, b: &Point) -> Result<bool> {
        Ok(self.member_containing_pair(a, b)?.is_some())
    }

    /// Common refinement: all pairwise intersections, empties dropped,
    /// duplicates removed, in member order. Covers whenever both inputs
    /// cover, which they do by construction.
    pub fn join(&self, other: &OpenCover) -> Result<OpenCover> {
        let mut seen: BTreeSet<SetRepr> = BTreeSet::new();
        let mut members = Vec::new();
        for a in &self.members {
            for b in &other.members {
                let repr = a.repr.intersect(&b.repr)?;
                if repr.certainly_empty() || !seen.insert(repr.clone()) {
                    continue;
                }
                members.push(NamedSet::new(format!("{}&{}", a.name, b.name), repr));
            }
        }
        if members.is_empty() {
            return Err(Error::NotACover("join produced no members".into()));
        }
        Ok(OpenCover::from_parts(members))
    }

    /// Does every member of `self` sit inside some member of `other`?
    /// Errs only when a subset test is genuinely undecidable in the
    /// preimage representation.
    pub fn refines(&self, other: &OpenCover) -> Result<bool> {
        for m in &self.members {
            let mut placed = false;
            let mut unsupported = false;
            for o in &other.members {
                match m.repr.subset_of(&o.repr) {
                    Ok(true) => {
                        placed = true;
                        break;
                    }
                    Ok(false) => {}
                    Err(Error::Unsupported(_)) => unsupported = true,
                    Err(e) => return Err(e),
                }
            }
            if !placed {
                if unsupported {
                    return Err(Error::Unsupported(format!(
                        "cannot decide whether member {} fits in the coarser cover",
                        m.name
                    )));
                }
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Largest exact "fitting number" of a cover: every subset of diameter
/// strictly below the returned value sits inside some member.
///
/// Finite metric spaces: the minimum diameter over subsets that fit in no
/// member, or diameter plus one when every subset fits. Torus: the largest
/// box side length (from the finite candidate set of corner differences)
/// such that every translated half-open box of that side fits in a member.
pub fn lebesgue_number(space: &Space, cover: &OpenCover) -> Result<Rat> {
    match space {
        Space::Metric(m) => {
            let n = m.len();
            if n > 16 {
                return Err(Error::Unsupported(
                    "fitting numbers are computed exhaustively for at most 16 points".into(),
                ));
            }
            let masks: Vec<u64> = cover
                .members()
                .iter()
                .map(|s| match s.repr {
                    SetRepr::Mask(mask) => Ok(mask),
                    _ => Err(Error::invalid("metric cover members must be masks")),
                })
                .collect::<Result<_>>()?;
            let full = full_of(n);
            let mut best: Option<Rat> = None;
            for sub in 1..=full {
                if sub.count_ones() < 2 {
                    continue;
                }
                if masks.iter().any(|&mk| mk & sub == sub) {
                    continue;
                }
                let mut diam = Rat::zero();
                for i in 0..n {
                    if sub & (1u64 << i) == 0 {
                        continue;
                    }
                    for j in (i + 1)..n {
                        if sub & (1u64 << j) == 0 {
                            continue;
                        }
                        diam = rat_max(&diam, &m.dist(i, j));
                    }
                }
                best = Some(match best {
                    Some(b) if b <= diam => b,
                    _ => diam,
                });
            }
            match best {
                Some(b) if b.is_zero() => Err(Error::invalid(
                    "cover admits no positive fitting number",
                )),
                Some(b) => Ok(b),
                None => Ok(m.diameter() + Rat::one()),
            }
        }
        Space::Torus { dim } => {
            let sets: Vec<&TorusSet> = cover
                .members()
                .iter()
                .map(|s| match &s.repr {
                    SetRepr::Boxes(b) => Ok(b),
                    _ => Err(Error::Unsupported(
                        "torus fitting numbers need explicit box members".into(),
                    )),
                })
                .collect::<Result<_>>()?;
            torus_lebesgue(*dim, &sets)
        }
        Space::Top(_) => Err(Error::Unsupported(
            "fitting numbers need a metric".into(),
        )),
    }
}

fn torus_lebesgue(dim: usize, members: &[&TorusSet]) -> Result<Rat> {
    // Corner coordinates per dimension.
    let mut corners: Vec<BTreeSet<Rat>> = vec![BTreeSet::new(); dim];
    for s in members {
        for b in s.boxes() {
            for i in 0..dim {
                corners[i].insert(b.lo()[i].clone());
                corners[i].insert(b.hi()[i].clone());
            }
        }
    }
    // Candidate side lengths: nonzero circular differences of corners,
    // plus one (a member may be the whole torus).
    let mut cands: BTreeSet<Rat> = BTreeSet::new();
    cands.insert(Rat::one());
    for cs in &corners {
        for p in cs {
            for q in cs {
                let d = mod1(&(p - q));
                if !d.is_zero() {
                    cands.insert(d);
                }
            }
        }
    }
    let cands: Vec<Rat> = cands.into_iter().collect();
    // The fitting predicate is monotone (downward) in the side length.
    let mut lo = 0usize;
    let mut hi = cands.len();
    while lo < hi {
        let mid = (lo + hi) / 2;
        if boxes_of_side_fit(dim, members, &corners, &cands[mid])? {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if lo == 0 {
        return Err(Error::invalid(
            "cover admits no positive fitting number (members meet only along boundaries)",
        ));
    }
    Ok(cands[lo - 1].clone())
}

/// Does every half-open box of side `d` (all real translates) fit inside
/// some member? Checked exactly on the critical translates: per
/// coordinate, the corner values, corners shifted left by `d`, and the
/// midpoints between consecutive critical values.
fn boxes_of_side_fit(
    dim: usize,
    members: &[&TorusSet],
    corners: &[BTreeSet<Rat>],
    d: &Rat,
) -> Result<bool> {
    let two = rat(2, 1);
    let mut tests_per_dim: Vec<Vec<Rat>> = Vec::with_capacity(dim);
    for cs in corners {
        let mut crit: BTreeSet<Rat> = BTreeSet::new();
        for p in cs {
            crit.insert(mod1(p));
            crit.insert(mod1(&(p - d)));
        }
        let crit: Vec<Rat> = crit.into_iter().collect();
        let mut tests = crit.clone();
        for (k, c) in crit.iter().enumerate() {
            let next = if k + 1 < crit.len() {
                crit[k + 1].clone()
            } else {
                crit[0].clone() + Rat::one()
            };
            tests.push(mod1(&((c + next) / &two)));
        }
        tests.sort();
        tests.dedup();
        tests_per_dim.push(tests);
    }
    // walk the cartesian product of per-dimension test translates
    let mut idx = vec![0usize; dim];
    loop {
        let arcs: Vec<(Rat, Rat)> = idx
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let t = tests_per_dim[i][k].clone();
                let hi = t.clone() + d;
                (t, hi)
            })
            .collect();
        let probe = TorusSet::from_arcs(&arcs)?;
        if !members.iter().any(|m| probe.is_subset_of(m)) {
            return Ok(false);
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < tests_per_dim[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// The canonical cover attached to a separation constant: all balls of
/// radius `c/2`. A pair inside one member is at distance at most `c`, so
/// an action that separates every pair beyond `c` escapes this cover.
///
/// On the torus the centers run over the `q`-grid and the members are
/// half-open boxes of side `c`; they cover only when `1/q <= c`.
pub fn cover_from_constant(space: &Space, c: &Rat, grid_q: u32) -> Result<OpenCover> {
    if c <= &Rat::zero() {
        return Err(Error::invalid("separation constant must be positive"));
    }
    match space {
        Space::Metric(m) => {
            let half = c / rat(2, 1);
            let mut members = Vec::new();
            for x in 0..m.len() {
                let mut mask = 0u64;
                for y in 0..m.len() {
                    if m.dist(x, y) <= half {
                        mask |= 1u64 << y;
                    }
                }
                members.push(NamedSet::new(format!("ball{x}"), SetRepr::Mask(mask)));
            }
            OpenCover::new(space, members)
        }
        Space::Torus { dim } => {
            if c > &rat(1, 2) {
                return Err(Error::invalid(
                    "separation constant exceeds the torus diameter 1/2",
                ));
            }
            // need 1/q <= c, i.e. q >= denom/numer rounded up
            let numer = c.numer().clone();
            let denom = c.denom().clone();
            let required: BigInt = (&denom + &numer - BigInt::one()) / &numer;
            let required_u64: u64 = required
                .try_into()
                .map_err(|_| Error::invalid("grid requirement overflow"))?;
            if (grid_q as u64) < required_u64 {
                return Err(Error::GridTooCoarse {
                    required: required_u64,
                });
            }
            let half = c / rat(2, 1);
            let mut members = Vec::new();
            for center in grid_points(*dim, grid_q) {
                let arcs: Vec<(Rat, Rat)> = center
                    .coords()
                    .iter()
                    .map(|x| (x - &half, x + &half))
                    .collect();
                members.push(NamedSet::new(
                    format!("ball{center}"),
                    SetRepr::Boxes(TorusSet::from_arcs(&arcs)?),
                ));
            }
            OpenCover::new(space, members)
        }
        Space::Top(_) => Err(Error::Unsupported(
            "ball covers need a metric".into(),
        )),
    }
}

/// The separation constant attached to a cover: one third of its fitting
/// number. A pair that stays subordinate to the cover at every group
/// element stays within the fitting number, so escaping all pairs beyond
/// this constant certifies the metric property.
pub fn constant_from_cover(space: &Space, cover: &OpenCover) -> Result<Rat> {
    Ok(lebesgue_number(space, cover)? / rat(3, 1))
}

/// A compact set into which every pair of points can be simultaneously
/// translated. On a finite space the whole space works and is verified
/// exhaustively with the identity translation; there is no exhaustive
/// verification on an infinite space.
pub fn property_p_witness(space: &Space) -> Result<NamedSet> {
    let n = space
        .finite_size()
        .ok_or_else(|| Error::Unsupported("exhaustive pair check needs a finite space".into()))?;
    let full = full_of(n);
    let repr = SetRepr::Mask(full);
    for i in 0..n {
        for j in i..n {
            let a = Point::Finite(i);
            let b = Point::Finite(j);
            if !(repr.contains(&a)? && repr.contains(&b)?) {
                return Err(Error::invalid("whole-space witness failed a pair check"));
            }
        }
    }
    Ok(NamedSet::new("C", repr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::spaces::metric::FiniteMetricSpace;
    use crate::spaces::topology::FiniteTopSpace;
    use crate::spaces::torus::TorusPoint;

    fn circle() -> Space {
        Space::Torus { dim: 1 }
    }

    fn tset(dim: usize, text: &str) -> TorusSet {
        TorusSet::parse(dim, text).unwrap()
    }

    fn boxes(dim: usize, text: &str) -> SetRepr {
        SetRepr::Boxes(tset(dim, text))
    }

    fn tp(text: &str) -> Point {
        Point::Torus(TorusPoint::parse(text).unwrap())
    }

    #[test]
    fn cover_validation_is_exact() {
        let halves = OpenCover::new(
            &circle(),
            vec![
                NamedSet::new("L", boxes(1, "0..1/2")),
                NamedSet::new("R", boxes(1, "1/2..1")),
            ],
        )
        .unwrap();
        assert_eq!(halves.len(), 2);
        let gap = OpenCover::new(
            &circle(),
            vec![
                NamedSet::new("L", boxes(1, "0..1/2")),
                NamedSet::new("R", boxes(1, "3/5..1")),
            ],
        );
        assert!(matches!(gap, Err(Error::NotACover(_))));
    }

    #[test]
    fn top_space_covers_must_be_open() {
        let sierp = Space::Top(FiniteTopSpace::parse(2, "0").unwrap());
        assert!(OpenCover::from_masks(&sierp, vec![0b01, 0b11]).is_ok());
        // {1} is not open
        assert!(OpenCover::from_masks(&sierp, vec![0b01, 0b10]).is_err());
        // {0} alone misses point 1
        assert!(matches!(
            OpenCover::from_masks(&sierp, vec![0b01]),
            Err(Error::NotACover(_))
        ));
    }

    #[test]
    fn join_of_shifted_halves_is_the_quarter_cover() {
        let a = OpenCover::new(
            &circle(),
            vec![
                NamedSet::new("A0", boxes(1, "0..1/2")),
                NamedSet::new("A1", boxes(1, "1/2..1")),
            ],
        )
        .unwrap();
        let b = OpenCover::new(
            &circle(),
            vec![
                NamedSet::new("B0", boxes(1, "1/4..3/4")),
                NamedSet::new("B1", boxes(1, "3/4..5/4")),
            ],
        )
        .unwrap();
        let j = a.join(&b).unwrap();
        assert_eq!(j.len(), 4);
        for m in j.members() {
            match &m.repr {
                SetRepr::Boxes(s) => assert_eq!(s.volume(), rat(1, 4)),
                r => panic!("expected plain boxes, got {r:?}"),
            }
        }
        assert!(j.refines(&a).unwrap());
        assert!(j.refines(&b).unwrap());
        assert!(!a.refines(&b).unwrap());
        // joining with itself adds nothing but dedup keeps it tight
        let jj = j.join(&j).unwrap();
        assert_eq!(jj.len(), 4);
    }

    #[test]
    fn mask_joins_and_refinement() {
        let space = Space::Metric(FiniteMetricSpace::uniform(3, rat(1, 1)).unwrap());
        let a = OpenCover::from_masks(&space, vec![0b011, 0b110]).unwrap();
        let b = OpenCover::from_masks(&space, vec![0b101, 0b010]).unwrap();
        let j = a.join(&b).unwrap();
        let masks: Vec<u64> = j
            .members()
            .iter()
            .map(|m| match m.repr {
                SetRepr::Mask(k) => k,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(masks, vec![0b001, 0b010, 0b100]);
        assert!(j.refines(&a).unwrap());
        assert!(j.refines(&b).unwrap());
        assert!(!a.refines(&j).unwrap());
    }

    #[test]
    fn pair_subordination_on_the_circle() {
        let c = OpenCover::new(
            &circle(),
            vec![
                NamedSet::new("A", boxes(1, "0..2/3")),
                NamedSet::new("B", boxes(1, "1/2..7/6")),
            ],
        )
        .unwrap();
        assert_eq!(
            c.member_containing_pair(&tp("0"), &tp("1/2")).unwrap(),
            Some(0)
        );
        assert_eq!(
            c.member_containing_pair(&tp("3/4"), &tp("1/10")).unwrap(),
            Some(1)
        );
        assert_eq!(c.member_containing_pair(&tp("1/3"), &tp("4/5")).unwrap(), None);
    }

    #[test]
    fn image_membership_through_preimages() {
        let g = IntMatrix::parse("2,1;1,1").unwrap();
        let g_inv = g.inverse_unimodular().unwrap();
        let u = boxes(2, "0..1/2 x 0..1");
        let img = u.image_matrix(&g_inv).unwrap();
        // g fixes (0,0) and sends (1/5,0) to (2/5,1/5)
        assert!(img.contains(&tp("0,0")).unwrap());
        assert!(img.contains(&tp("2/5,1/5")).unwrap());
        assert!(!img.contains(&tp("1/2,0")).unwrap()); // preimage (1/2,0) escapes
        // identity image normalizes back to plain boxes
        let id_img = u.image_matrix(&IntMatrix::identity(2)).unwrap();
        assert_eq!(id_img, u);
    }

    #[test]
    fn structural_subset_for_preimage_intersections() {
        let g = IntMatrix::parse("2,1;1,1").unwrap();
        let g_inv = g.inverse_unimodular().unwrap();
        let u = boxes(2, "0..1/2 x 0..1");
        let img = u.image_matrix(&g_inv).unwrap();
        let meet = u.intersect(&img).unwrap();
        assert!(meet.subset_of(&img).unwrap());
        assert!(meet.subset_of(&u).unwrap());
        assert!(matches!(
            u.subset_of(&img),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn two_arc_fitting_number() {
        let c = OpenCover::new(
            &circle(),
            vec![
                NamedSet::new("A", boxes(1, "0..2/3")),
                NamedSet::new("B", boxes(1, "1/2..7/6")),
            ],
        )
        .unwrap();
        assert_eq!(lebesgue_number(&circle(), &c).unwrap(), rat(1, 6));
        assert_eq!(constant_from_cover(&circle(), &c).unwrap(), rat(1, 18));
    }

    #[test]
    fn boundary_touching_cover_has_no_fitting_number() {
        let c = OpenCover::new(
            &circle(),
            vec![
                NamedSet::new("L", boxes(1, "0..1/2")),
                NamedSet::new("R", boxes(1, "1/2..1")),
            ],
        )
        .unwrap();
        assert!(lebesgue_number(&circle(), &c).is_err());
    }

    #[test]
    fn whole_torus_member_gives_side_one() {
        let c = OpenCover::new(&circle(), vec![NamedSet::new("X", boxes(1, "full"))]).unwrap();
        assert_eq!(lebesgue_number(&circle(), &c).unwrap(), rat(1, 1));
    }

    #[test]
    fn two_dimensional_fitting_number() {
        // overlapping vertical strips, full range vertically
        let t2 = Space::Torus { dim: 2 };
        let c = OpenCover::new(
            &t2,
            vec![
                NamedSet::new("A", boxes(2, "0..2/3 x 0..1")),
                NamedSet::new("B", boxes(2, "1/2..7/6 x 0..1")),
            ],
        )
        .unwrap();
        // binding dimension is the first; the second never constrains
        assert_eq!(lebesgue_number(&t2, &c).unwrap(), rat(1, 6));
    }

    #[test]
    fn finite_fitting_numbers() {
        let space = Space::Metric(FiniteMetricSpace::uniform(3, rat(1, 1)).unwrap());
        let pairs = OpenCover::from_masks(&space, vec![0b011, 0b110, 0b101]).unwrap();
        assert_eq!(lebesgue_number(&space, &pairs).unwrap(), rat(1, 1));
        let whole = OpenCover::from_masks(&space, vec![0b111]).unwrap();
        assert_eq!(lebesgue_number(&space, &whole).unwrap(), rat(2, 1));
        // unequal distances: the failing subset of least diameter decides
        let m = Space::Metric(FiniteMetricSpace::parse("1/2; 1 3/4").unwrap());
        let c = OpenCover::from_masks(&m, vec![0b011, 0b100]).unwrap();
        // {0,2} diam 1, {1,2} diam 3/4, {0,1,2} diam 1; min is 3/4
        assert_eq!(lebesgue_number(&m, &c).unwrap(), rat(3, 4));
    }

    #[test]
    fn ball_covers_from_constants() {
        // metric: radius 1/4 balls on the uniform space are singletons
        let space = Space::Metric(FiniteMetricSpace::uniform(3, rat(1, 1)).unwrap());
        let c = cover_from_constant(&space, &rat(1, 2), 0).unwrap();
        assert_eq!(c.len(), 3);
        for (x, m) in c.members().iter().enumerate() {
            assert_eq!(m.repr, SetRepr::Mask(1 << x));
        }
        // torus: grid must be fine enough
        match cover_from_constant(&circle(), &rat(1, 3), 2) {
            Err(Error::GridTooCoarse { required }) => assert_eq!(required, 3),
            other => panic!("expected GridTooCoarse, got {other:?}"),
        }
        // the critical grid covers, but the balls only touch: no overlap
        let c3 = cover_from_constant(&circle(), &rat(1, 3), 3).unwrap();
        assert_eq!(c3.len(), 3);
        assert!(lebesgue_number(&circle(), &c3).is_err());
        // a strictly finer grid overlaps by 1/3 - 1/4
        let c4 = cover_from_constant(&circle(), &rat(1, 3), 4).unwrap();
        assert_eq!(c4.len(), 4);
        assert_eq!(lebesgue_number(&circle(), &c4).unwrap(), rat(1, 12));
        assert!(cover_from_constant(&circle(), &rat(2, 3), 4).is_err());
    }

    #[test]
    fn whole_space_pair_witness() {
        let space = Space::Metric(FiniteMetricSpace::uniform(4, rat(1, 1)).unwrap());
        let w = property_p_witness(&space).unwrap();
        assert_eq!(w.repr, SetRepr::Mask(0b1111));
        assert!(property_p_witness(&circle()).is_err());
    }
}
