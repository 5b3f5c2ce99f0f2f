//! Group actions on concrete spaces: evaluation, axiom checking,
//! conjugation, restriction to invariant subsets, and finite covering
//! maps between torus actions.

use crate::error::{Error, Result};
use crate::groups::{Elem, GenId, GroupPresentation, Representation, Word};
use crate::matrix::IntMatrix;
use crate::perm::Perm;
use crate::rat::Rat;
use crate::spaces::metric::FiniteMetricSpace;
use crate::spaces::topology::FiniteTopSpace;
use crate::spaces::torus::{apply_matrix, grid_points, torus_distance, TorusPoint};
use crate::spaces::{Point, Space};
use num::traits::Zero;
use std::collections::BTreeSet;

/// A group acting on a space; the representation kind must match the
/// space kind (matrices on a torus, permutations on finite spaces).
#[derive(Clone, Debug)]
pub struct ActionHandle {
    group: GroupPresentation,
    space: Space,
}

impl ActionHandle {
    pub fn new(group: GroupPresentation, space: Space) -> Result<Self> {
        match (group.rep(), &space) {
            (Representation::Matrix(ms), Space::Torus { dim }) => {
                if ms[0].dim() != *dim {
                    return Err(Error::invalid(format!(
                        "matrix generators act on dimension {}, space has dimension {dim}",
                        ms[0].dim()
                    )));
                }
            }
            (Representation::Perm(ps), Space::Metric(_) | Space::Top(_)) => {
                let n = space.finite_size().expect("finite space");
                if ps[0].len() != n {
                    return Err(Error::invalid(format!(
                        "permutation generators act on {} points, space has {n}",
                        ps[0].len()
                    )));
                }
            }
            (Representation::Matrix(_), _) => {
                return Err(Error::invalid(
                    "matrix generators need a torus to act on",
                ))
            }
            (Representation::Perm(_), _) => {
                return Err(Error::invalid(
                    "permutation generators need a finite space to act on",
                ))
            }
        }
        Ok(ActionHandle { group, space })
    }

    pub fn group(&self) -> &GroupPresentation {
        &self.group
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn apply_gen(&self, id: GenId, p: &Point) -> Result<Point> {
        match (self.group.rep(), p) {
            (Representation::Matrix(ms), Point::Torus(t)) => {
                Ok(Point::Torus(apply_matrix(&ms[id], t)?))
            }
            (Representation::Perm(ps), Point::Finite(i)) => Ok(Point::Finite(ps[id].apply(*i))),
            _ => Err(Error::invalid("point kind does not match the action")),
        }
    }

    /// Evaluate a word letter by letter, rightmost letter first. This
    /// deliberately avoids canonicalization so that tests comparing it
    /// against [`ActionHandle::apply_elem`] exercise the action laws.
    pub fn apply_word(&self, w: &Word, p: &Point) -> Result<Point> {
        let mut cur = p.clone();
        for &s in w.0.iter().rev() {
            cur = self.apply_gen(s, &cur)?;
        }
        Ok(cur)
    }

    /// Evaluate through the canonical element (one application).
    pub fn apply_elem(&self, e: &Elem, p: &Point) -> Result<Point> {
        match (e, p) {
            (Elem::Matrix(m), Point::Torus(t)) => Ok(Point::Torus(apply_matrix(m, t)?)),
            (Elem::Perm(pm), Point::Finite(i)) => Ok(Point::Finite(pm.apply(*i))),
            _ => Err(Error::invalid("point kind does not match the element")),
        }
    }

    /// Sample points for pointwise law checks: every point of a finite
    /// space, a small grid on the torus.
    fn axiom_sample(&self) -> Result<Vec<Point>> {
        match &self.space {
            Space::Torus { dim } => Ok(grid_points(*dim, 5).into_iter().map(Point::Torus).collect()),
            _ => self.space.points(),
        }
    }

    /// Check the action laws: the identity acts trivially, assigned
    /// inverses are mutual and genuinely invert, and the representation
    /// products agree with pointwise composition.
    pub fn check_axioms(&self) -> Result<Vec<AxiomViolation>> {
        let mut out = Vec::new();
        let sample = self.axiom_sample()?;
        if !self.group.identity_elem().is_identity() {
            out.push(AxiomViolation {
                law: "identity acts trivially".into(),
                witness: "identity element is malformed".into(),
            });
        }
        for s in 0..self.group.gen_count() {
            let name = &self.group.generator(s).name;
            let t = self.group.generator(s).inverse;
            if self.group.generator(t).inverse != s {
                out.push(AxiomViolation {
                    law: "inverse assignment is mutual".into(),
                    witness: format!(
                        "{name} names {} as inverse, which names {}",
                        self.group.generator(t).name,
                        self.group.generator(self.group.generator(t).inverse).name
                    ),
                });
            }
            // exact representation-level inverse law
            let prod = self.group.gen_elem(s).mul(&self.group.gen_elem(t))?;
            if !prod.is_identity() {
                out.push(AxiomViolation {
                    law: "g composed with its inverse is the identity".into(),
                    witness: format!("{name} * {} = {prod}", self.group.generator(t).name),
                });
                continue;
            }
            // pointwise spot check of the same law through the action
            for x in &sample {
                let back = self.apply_gen(s, &self.apply_gen(t, x)?)?;
                if &back != x {
                    out.push(AxiomViolation {
                        law: "g composed with its inverse is the identity".into(),
                        witness: format!("{name} moves {x} through {back}"),
                    });
                    break;
                }
            }
        }
        // composition law on a couple of short words
        let ids: Vec<GenId> = (0..self.group.gen_count()).collect();
        for &u in ids.iter().take(3) {
            for &v in ids.iter().take(3) {
                let w = Word(vec![u, v]);
                let elem = self.group.canonicalize(&w)?;
                for x in sample.iter().take(5) {
                    let via_word = self.apply_word(&w, x)?;
                    let via_elem = self.apply_elem(&elem, x)?;
                    if via_word != via_elem {
                        out.push(AxiomViolation {
                            law: "composition matches the representation product".into(),
                            witness: format!(
                                "word {} at {x}: {via_word} vs {via_elem}",
                                w.display(&self.group)
                            ),
                        });
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Conjugate the whole action by a change of coordinates.
    pub fn conjugate(&self, witness: &ConjugacyWitness) -> Result<ActionHandle> {
        match (witness, self.group.rep(), &self.space) {
            (ConjugacyWitness::TorusMatrix(p), Representation::Matrix(ms), Space::Torus { dim }) => {
                if p.dim() != *dim {
                    return Err(Error::invalid("conjugating matrix has the wrong dimension"));
                }
                let p_inv = p.inverse_unimodular()?;
                let named = self
                    .group
                    .primary_gens()
                    .into_iter()
                    .map(|id| {
                        let m = &ms[id];
                        Ok((
                            self.group.generator(id).name.clone(),
                            p.mul(m)?.mul(&p_inv)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ActionHandle::new(
                    GroupPresentation::from_matrices(named)?,
                    Space::Torus { dim: *dim },
                )
            }
            (ConjugacyWitness::Relabel(sigma), Representation::Perm(ps), _) => {
                let n = self.space.finite_size().expect("finite space");
                if sigma.len() != n {
                    return Err(Error::invalid("relabeling has the wrong degree"));
                }
                let sigma_inv = sigma.inverse();
                let named = self
                    .group
                    .primary_gens()
                    .into_iter()
                    .map(|id| {
                        Ok((
                            self.group.generator(id).name.clone(),
                            sigma.compose(&ps[id])?.compose(&sigma_inv)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let space = match &self.space {
                    Space::Metric(m) => {
                        let rows = (1..n)
                            .map(|i| {
                                (0..i)
                                    .map(|j| m.dist(sigma_inv.apply(i), sigma_inv.apply(j)))
                                    .collect()
                            })
                            .collect();
                        Space::Metric(FiniteMetricSpace::from_lower_triangle(rows)?)
                    }
                    Space::Top(t) => {
                        let opens = t
                            .opens()
                            .iter()
                            .map(|&o| {
                                let mut out = 0u64;
                                for i in 0..n {
                                    if o & (1 << i) != 0 {
                                        out |= 1 << sigma.apply(i);
                                    }
                                }
                                out
                            })
                            .collect();
                        Space::Top(FiniteTopSpace::new(n, opens)?)
                    }
                    Space::Torus { .. } => unreachable!("perm rep on a torus"),
                };
                ActionHandle::new(GroupPresentation::from_perms(named)?, space)
            }
            _ => Err(Error::invalid(
                "conjugacy witness kind does not match the action",
            )),
        }
    }

    /// Smallest set containing `starts` and closed under every generator,
    /// as sorted points. Errs when it exceeds `cap`.
    pub fn orbit_closure(&self, starts: &[Point], cap: usize) -> Result<Vec<Point>> {
        let mut seen: BTreeSet<Point> = BTreeSet::new();
        let mut frontier: Vec<Point> = Vec::new();
        for p in starts {
            self.space.check_point(p)?;
            if seen.insert(p.clone()) {
                frontier.push(p.clone());
            }
        }
        while let Some(p) = frontier.pop() {
            for s in 0..self.group.gen_count() {
                let q = self.apply_gen(s, &p)?;
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return Err(Error::invalid(format!(
                            "orbit closure exceeded the cap of {cap} points"
                        )));
                    }
                    frontier.push(q);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Restrict to an invariant finite point set, turning a torus action
    /// into a permutation action on the induced finite metric space.
    /// The set must be exactly invariant under every generator.
    pub fn restrict_to_invariant(&self, points: &[Point]) -> Result<ActionHandle> {
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Err(Error::invalid("invariant set must be nonempty"));
        }
        for p in &pts {
            self.space.check_point(p)?;
        }
        let index_of = |p: &Point| pts.binary_search(p);
        // induced permutations, with exact invariance checking
        let mut perms: Vec<(String, Perm)> = Vec::new();
        for id in self.group.primary_gens() {
            let name = self.group.generator(id).name.clone();
            let mut images = Vec::with_capacity(pts.len());
            for p in &pts {
                let q = self.apply_gen(id, p)?;
                match index_of(&q) {
                    Ok(k) => images.push(k),
                    Err(_) => {
                        return Err(Error::NotInvariant(format!(
                            "generator {name} maps {p} to {q}, outside the set"
                        )))
                    }
                }
            }
            perms.push((name, Perm::new(images)?));
        }
        let space = match &self.space {
            Space::Torus { .. } | Space::Metric(_) => {
                if pts.len() == 1 {
                    Space::Metric(FiniteMetricSpace::singleton())
                } else {
                    let rows = (1..pts.len())
                        .map(|i| {
                            (0..i)
                                .map(|j| self.space.distance(&pts[i], &pts[j]))
                                .collect::<Result<Vec<Rat>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Space::Metric(FiniteMetricSpace::from_lower_triangle(rows)?)
                }
            }
            Space::Top(t) => {
                let mut bits: Vec<usize> = Vec::new();
                for p in &pts {
                    match p {
                        Point::Finite(i) => bits.push(*i),
                        _ => unreachable!("checked above"),
                    }
                }
                let opens = t
                    .opens()
                    .iter()
                    .map(|&o| {
                        let mut out = 0u64;
                        for (new, &old) in bits.iter().enumerate() {
                            if o & (1 << old) != 0 {
                                out |= 1 << new;
                            }
                        }
                        out
                    })
                    .collect();
                Space::Top(FiniteTopSpace::new(pts.len(), opens)?)
            }
        };
        ActionHandle::new(GroupPresentation::from_perms(perms)?, space)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub law: String,
    pub witness: String,
}

/// A change of coordinates intertwining two actions.
#[derive(Clone, Debug)]
pub enum ConjugacyWitness {
    /// Unimodular matrix `P`: the conjugated generators are `P A P^-1`.
    TorusMatrix(IntMatrix),
    /// Point relabeling `s`: the conjugated generators are `s p s^-1`,
    /// and the space structure is transported along `s`.
    Relabel(Perm),
}

/// A finite covering of the torus by itself: `x` maps to `D x mod 1`
/// for a nonsingular integer matrix `D`, a `|det D|`-to-one map.
#[derive(Clone, Debug)]
pub struct CoveringMap {
    matrix: IntMatrix,
    degree: u64,
}

impl CoveringMap {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let d = matrix.det()?;
        if d == 0 {
            return Err(Error::invalid("covering matrix must be nonsingular"));
        }
        Ok(CoveringMap {
            matrix,
            degree: d.unsigned_abs(),
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn push(&self, x: &TorusPoint) -> Result<TorusPoint> {
        apply_matrix(&self.matrix, x)
    }

    /// The full preimage of `y`: the `|det D|` solutions of `D x = y + k`
    /// over integer coset representatives `k`, sorted.
    pub fn fiber(&self, y: &TorusPoint) -> Result<Vec<TorusPoint>> {
        if y.dim() != self.matrix.dim() {
            return Err(Error::invalid("point dimension does not match the covering"));
        }
        let reps = self.matrix.lattice_coset_reps()?;
        let mut out: Vec<TorusPoint> = Vec::with_capacity(reps.len());
        for k in reps {
            let rhs: Vec<Rat> = y
                .coords()
                .iter()
                .zip(&k)
                .map(|(c, &ki)| c + Rat::from_integer(ki.into()))
                .collect();
            out.push(TorusPoint::new(self.matrix.solve_exact(&rhs)?));
        }
        out.sort();
        out.dedup();
        if out.len() as u64 != self.degree {
            return Err(Error::invalid(
                "fiber size disagrees with the covering degree",
            ));
        }
        Ok(out)
    }

    /// The uniform separation of fibers: the least torus distance between
    /// distinct points of a fiber. Fiber differences do not depend on the
    /// base point, so this is computed from the fiber over the origin.
    pub fn separation(&self) -> Result<Rat> {
        if self.degree == 1 {
            return Err(Error::invalid(
                "a degree-one covering has no fiber separation",
            ));
        }
        let origin = TorusPoint::origin(self.matrix.dim());
        let fiber = self.fiber(&origin)?;
        let mut best: Option<Rat> = None;
        for p in &fiber {
            if p.coords().iter().all(|c| c.is_zero()) {
                continue;
            }
            let d = torus_distance(p, &origin);
            best = Some(match best {
                Some(b) if b <= d => b,
                _ => d,
            });
        }
        best.ok_or_else(|| Error::invalid("fiber over the origin is degenerate"))
    }

    /// Exact intertwining check: `D A_g = B_g D` for every generator,
    /// matching generators of the two actions by name.
    pub fn check_semiconjugacy(&self, up: &ActionHandle, down: &ActionHandle) -> Result<bool> {
        let up_ms = match up.group().rep() {
            Representation::Matrix(ms) => ms,
            _ => return Err(Error::invalid("covering maps relate torus actions")),
        };
        let down_ms = match down.group().rep() {
            Representation::Matrix(ms) => ms,
            _ => return Err(Error::invalid("covering maps relate torus actions")),
        };
        for id in up.group().primary_gens() {
            let name = &up.group().generator(id).name;
            let down_id = down
                .group()
                .find_generator(name)
                .ok_or_else(|| Error::invalid(format!("no downstairs generator named {name}")))?;
            let lhs = self.matrix.mul(&up_ms[id])?;
            let rhs = down_ms[down_id].mul(&self.matrix)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn mat(s: &str) -> IntMatrix {
        IntMatrix::parse(s).unwrap()
    }

    fn involution_action() -> ActionHandle {
        let g = GroupPresentation::from_matrices(vec![
            ("B".into(), mat("-1,1;0,1")),
            ("C".into(), mat("-1,0;1,1")),
        ])
        .unwrap();
        ActionHandle::new(g, Space::Torus { dim: 2 }).unwrap()
    }

    fn tp(s: &str) -> Point {
        Point::Torus(TorusPoint::parse(s).unwrap())
    }

    #[test]
    fn words_and_elements_act_alike() {
        let a = involution_action();
        let b = a.group().find_generator("B").unwrap();
        let c = a.group().find_generator("C").unwrap();
        let w = Word(vec![b, c]);
        let x = tp("1/5,0");
        let via_word = a.apply_word(&w, &x).unwrap();
        assert_eq!(via_word, tp("2/5,1/5"));
        let elem = a.group().canonicalize(&w).unwrap();
        assert_eq!(a.apply_elem(&elem, &x).unwrap(), via_word);
        // empty word is the identity
        assert_eq!(a.apply_word(&Word::identity(), &x).unwrap(), x);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let g = GroupPresentation::from_matrices(vec![("T".into(), mat("1,1;0,1"))]).unwrap();
        assert!(ActionHandle::new(g, Space::Torus { dim: 3 }).is_err());
        let p = GroupPresentation::from_perms(vec![(
            "s".into(),
            Perm::cycle(3, &[0, 1, 2]).unwrap(),
        )])
        .unwrap();
        let m = Space::Metric(FiniteMetricSpace::uniform(4, rat(1, 1)).unwrap());
        assert!(ActionHandle::new(p, m).is_err());
    }

    #[test]
    fn axioms_hold_for_validated_presentations() {
        assert!(involution_action().check_axioms().unwrap().is_empty());
        let g = GroupPresentation::from_perms(vec![(
            "s".into(),
            Perm::cycle(4, &[0, 1, 2, 3]).unwrap(),
        )])
        .unwrap();
        let a = ActionHandle::new(
            g,
            Space::Metric(FiniteMetricSpace::uniform(4, rat(1, 1)).unwrap()),
        )
        .unwrap();
        assert!(a.check_axioms().unwrap().is_empty());
    }

    #[test]
    fn planted_inverse_fault_is_detected() {
        // a 3-cycle falsely declared self-inverse
        let g = GroupPresentation::from_perms_unchecked(
            vec![("s".into(), Perm::cycle(3, &[0, 1, 2]).unwrap())],
            vec![0],
        );
        let a = ActionHandle::new(
            g,
            Space::Metric(FiniteMetricSpace::uniform(3, rat(1, 1)).unwrap()),
        )
        .unwrap();
        let violations = a.check_axioms().unwrap();
        assert!(!violations.is_empty());
        assert!(violations
            .iter()
            .any(|v| v.law.contains("identity") || v.law.contains("inverse")));
    }

    #[test]
    fn matrix_conjugation_matches_hand_computation() {
        let a = involution_action();
        let p = mat("1,1;0,1");
        let conj = a.conjugate(&ConjugacyWitness::TorusMatrix(p)).unwrap();
        let b = conj.group().find_generator("B").unwrap();
        let c = conj.group().find_generator("C").unwrap();
        let bc = conj.group().canonicalize(&Word(vec![b, c])).unwrap();
        assert_eq!(bc, Elem::Matrix(mat("3,-1;1,0")));
        // trace and determinant are conjugation invariants
        assert_eq!(mat("3,-1;1,0").trace().unwrap(), mat("2,1;1,1").trace().unwrap());
        assert_eq!(mat("3,-1;1,0").det().unwrap(), mat("2,1;1,1").det().unwrap());
    }

    #[test]
    fn relabel_conjugation_transports_the_metric() {
        let g = GroupPresentation::from_perms(vec![(
            "s".into(),
            Perm::cycle(3, &[0, 1, 2]).unwrap(),
        )])
        .unwrap();
        let m = FiniteMetricSpace::parse("1/2; 1 3/4").unwrap();
        let a = ActionHandle::new(g, Space::Metric(m)).unwrap();
        let sigma = Perm::new(vec![1, 0, 2]).unwrap();
        let conj = a.conjugate(&ConjugacyWitness::Relabel(sigma.clone())).unwrap();
        // conjugated generator sends sigma(x) to sigma(s(x))
        let s = conj.group().find_generator("s").unwrap();
        assert_eq!(
            conj.apply_gen(s, &Point::Finite(1)).unwrap(),
            Point::Finite(0)
        );
        // transported distances: d'(sigma i, sigma j) = d(i, j)
        match conj.space() {
            Space::Metric(m2) => {
                let m1 = FiniteMetricSpace::parse("1/2; 1 3/4").unwrap();
                for i in 0..3 {
                    for j in 0..3 {
                        assert_eq!(
                            m2.dist(sigma.apply(i), sigma.apply(j)),
                            m1.dist(i, j)
                        );
                    }
                }
            }
            _ => panic!("expected a metric space"),
        }
    }

    #[test]
    fn rational_orbits_close_up() {
        let a = involution_action();
        let orbit = a.orbit_closure(&[tp("1/5,0")], 100).unwrap();
        assert_eq!(orbit.len(), 10);
        assert!(orbit.contains(&tp("2/5,1/5")));
        assert!(orbit.contains(&tp("4/5,0")));
        // a tight cap trips
        assert!(a.orbit_closure(&[tp("1/5,0")], 5).is_err());
        // the origin is fixed by everything
        assert_eq!(a.orbit_closure(&[tp("0,0")], 10).unwrap().len(), 1);
    }

    #[test]
    fn restriction_to_an_orbit_is_a_permutation_action() {
        let a = involution_action();
        let orbit = a.orbit_closure(&[tp("1/5,0")], 100).unwrap();
        let restricted = a.restrict_to_invariant(&orbit).unwrap();
        assert_eq!(restricted.space().finite_size(), Some(10));
        assert!(restricted.check_axioms().unwrap().is_empty());
        // induced distances come from the torus metric
        match restricted.space() {
            Space::Metric(m) => {
                let i = orbit.binary_search(&tp("1/5,0")).unwrap();
                let j = orbit.binary_search(&tp("2/5,1/5")).unwrap();
                assert_eq!(m.dist(i, j), rat(1, 5));
            }
            _ => panic!("expected a metric space"),
        }
        // a non-invariant set is refused
        let bad = a.restrict_to_invariant(&[tp("1/5,0"), tp("2/5,1/5")]);
        assert!(matches!(bad, Err(Error::NotInvariant(_))));
    }

    #[test]
    fn doubling_covering_fibers() {
        let d2 = CoveringMap::new(mat("2,0;0,2")).unwrap();
        assert_eq!(d2.degree(), 4);
        let fiber = d2.fiber(&TorusPoint::origin(2)).unwrap();
        let expected: Vec<TorusPoint> = ["0,0", "0,1/2", "1/2,0", "1/2,1/2"]
            .iter()
            .map(|s| TorusPoint::parse(s).unwrap())
            .collect();
        assert_eq!(fiber, expected);
        assert_eq!(d2.separation().unwrap(), rat(1, 2));
        let d3 = CoveringMap::new(mat("3,0;0,3")).unwrap();
        assert_eq!(d3.degree(), 9);
        assert_eq!(d3.separation().unwrap(), rat(1, 3));
        // pushing a fiber point lands on the base point
        let y = TorusPoint::parse("1/3,2/3").unwrap();
        for x in d2.fiber(&y).unwrap() {
            assert_eq!(d2.push(&x).unwrap(), y);
        }
    }

    #[test]
    fn semiconjugacy_is_checked_exactly() {
        let up = involution_action();
        let down = involution_action();
        let d2 = CoveringMap::new(mat("2,0;0,2")).unwrap();
        assert!(d2.check_semiconjugacy(&up, &down).unwrap());
        // a shear breaks the intertwining with the untouched action
        let shear = CoveringMap::new(mat("1,1;0,1")).unwrap();
        assert!(!shear.check_semiconjugacy(&up, &down).unwrap());
        // but conjugating downstairs by the shear restores it
        let conj = up
            .conjugate(&ConjugacyWitness::TorusMatrix(mat("1,1;0,1")))
            .unwrap();
        assert!(shear.check_semiconjugacy(&up, &conj).unwrap());
        let singular = CoveringMap::new(mat("1,0;0,0"));
        assert!(singular.is_err());
    }
}
