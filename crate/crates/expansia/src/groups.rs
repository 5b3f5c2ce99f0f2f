//! Finitely generated groups given by faithful matrix or permutation
//! representations.
//!
//! Elements are identified with their representation images: two words are
//! equal exactly when their canonical images agree. Ball enumeration is
//! breadth-first over the Cayley graph with shortlex witness words, which
//! makes every bounded search in the crate deterministic.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::perm::Perm;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

pub type GenId = usize;

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    /// Id of the generator acting as this one's inverse (may be itself).
    pub inverse: GenId,
    /// False for inverses that were added automatically.
    pub primary: bool,
}

/// One homeomorphism per generator, all of the same kind.
#[derive(Clone, Debug)]
pub enum Representation {
    /// Unimodular integer matrices acting on a torus.
    Matrix(Vec<IntMatrix>),
    /// Permutations of a finite point set.
    Perm(Vec<Perm>),
}

/// A formal product of generators, leftmost applied last.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Word(v)
    }

    pub fn push(&self, s: GenId) -> Word {
        let mut v = self.0.clone();
        v.push(s);
        Word(v)
    }

    /// Formal inverse: reverse the letters and invert each.
    pub fn inverse(&self, group: &GroupPresentation) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|&s| group.gens[s].inverse)
                .collect(),
        )
    }

    pub fn display(&self, group: &GroupPresentation) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        self.0
            .iter()
            .map(|&s| group.gens[s].name.clone())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Canonical group element: the representation image of a word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Elem {
    Matrix(IntMatrix),
    Perm(Perm),
}

impl Elem {
    pub fn mul(&self, rhs: &Elem) -> Result<Elem> {
        match (self, rhs) {
            (Elem::Matrix(a), Elem::Matrix(b)) => Ok(Elem::Matrix(a.mul(b)?)),
            (Elem::Perm(a), Elem::Perm(b)) => Ok(Elem::Perm(a.compose(b)?)),
            _ => Err(Error::invalid("mixed element kinds in product")),
        }
    }

    pub fn inverse(&self) -> Result<Elem> {
        match self {
            Elem::Matrix(m) => Ok(Elem::Matrix(m.inverse_unimodular()?)),
            Elem::Perm(p) => Ok(Elem::Perm(p.inverse())),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Elem::Matrix(m) => m.is_identity(),
            Elem::Perm(p) => p.is_identity(),
        }
    }
}

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Elem::Matrix(m) => write!(f, "{m}"),
            Elem::Perm(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupPresentation {
    gens: Vec<Generator>,
    rep: Representation,
}

impl GroupPresentation {
    /// Build from named unimodular matrices; inverses are added
    /// automatically unless a listed generator already provides them.
    pub fn from_matrices(named: Vec<(String, IntMatrix)>) -> Result<Self> {
        if named.is_empty() {
            return Err(Error::invalid("a presentation needs at least one generator"));
        }
        let dim = named[0].1.dim();
        for (name, m) in &named {
            if m.dim() != dim {
                return Err(Error::invalid(format!(
                    "generator {name} has dimension {} but expected {dim}",
                    m.dim()
                )));
            }
            let d = m.det()?;
            if d != 1 && d != -1 {
                return Err(Error::invalid(format!(
                    "generator {name} has determinant {d}; torus generators must be unimodular"
                )));
            }
        }
        let mats: Vec<IntMatrix> = named.iter().map(|(_, m)| m.clone()).collect();
        let inverses: Vec<IntMatrix> = mats
            .iter()
            .map(|m| m.inverse_unimodular())
            .collect::<Result<_>>()?;
        Self::assemble(
            named.into_iter().map(|(n, _)| n).collect(),
            mats,
            inverses,
            Representation::Matrix,
        )
    }

    /// Build from named permutations (all of the same degree).
    pub fn from_perms(named: Vec<(String, Perm)>) -> Result<Self> {
        if named.is_empty() {
            return Err(Error::invalid("a presentation needs at least one generator"));
        }
        let n = named[0].1.len();
        for (name, p) in &named {
            if p.len() != n {
                return Err(Error::invalid(format!(
                    "generator {name} permutes {} points but expected {n}",
                    p.len()
                )));
            }
        }
        let perms: Vec<Perm> = named.iter().map(|(_, p)| p.clone()).collect();
        let inverses: Vec<Perm> = perms.iter().map(|p| p.inverse()).collect();
        Self::assemble(
            named.into_iter().map(|(n, _)| n).collect(),
            perms,
            inverses,
            Representation::Perm,
        )
    }

    fn assemble<T: Clone + PartialEq>(
        names: Vec<String>,
        images: Vec<T>,
        inverses: Vec<T>,
        wrap: fn(Vec<T>) -> Representation,
    ) -> Result<Self> {
        {
            let mut seen = BTreeSet::new();
            for n in &names {
                if n == "e" || n.is_empty() {
                    return Err(Error::invalid("generator name `e` is reserved"));
                }
                if !seen.insert(n.clone()) {
                    return Err(Error::invalid(format!("duplicate generator name {n}")));
                }
            }
        }
        let mut gens: Vec<Generator> = names
            .iter()
            .map(|n| Generator {
                name: n.clone(),
                inverse: 0, // fixed below
                primary: true,
            })
            .collect();
        // Pair each primary with itself (self-inverse), with one unpaired
        // primary carrying the inverse element, or with a fresh non-primary
        // inverse. Pairing only unassigned partners keeps the assignment
        // mutual even when generators repeat an element.
        let mut all_images = images.clone();
        let mut assigned: Vec<Option<GenId>> = vec![None; names.len()];
        for i in 0..names.len() {
            if assigned[i].is_some() {
                continue;
            }
            if all_images[i] == inverses[i] {
                assigned[i] = Some(i);
                continue;
            }
            let partner = (0..names.len())
                .find(|&j| j != i && assigned[j].is_none() && all_images[j] == inverses[i]);
            match partner {
                Some(j) => {
                    assigned[i] = Some(j);
                    assigned[j] = Some(i);
                }
                None => {
                    let id = all_images.len();
                    all_images.push(inverses[i].clone());
                    gens.push(Generator {
                        name: format!("{}^-1", names[i]),
                        inverse: i,
                        primary: false,
                    });
                    assigned[i] = Some(id);
                }
            }
        }
        for (i, a) in assigned.into_iter().enumerate() {
            gens[i].inverse = a.expect("every primary generator was assigned");
        }
        Ok(GroupPresentation {
            gens,
            rep: wrap(all_images),
        })
    }

    /// Build with explicit inverse assignments and no consistency checks.
    /// Exists so that action-axiom checkers have broken inputs to detect;
    /// every other constructor validates.
    pub fn from_perms_unchecked(named: Vec<(String, Perm)>, inverse_of: Vec<GenId>) -> Self {
        let gens = named
            .iter()
            .enumerate()
            .map(|(i, (n, _))| Generator {
                name: n.clone(),
                inverse: inverse_of[i],
                primary: true,
            })
            .collect();
        GroupPresentation {
            gens,
            rep: Representation::Perm(named.into_iter().map(|(_, p)| p).collect()),
        }
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    /// Ids of the generators the caller listed (excludes added inverses).
    pub fn primary_gens(&self) -> Vec<GenId> {
        (0..self.gens.len()).filter(|&i| self.gens[i].primary).collect()
    }

    pub fn find_generator(&self, name: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Parse a whitespace-separated word of generator names; `e` is the
    /// empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "e" {
                continue;
            }
            let id = self
                .find_generator(tok)
                .ok_or_else(|| Error::invalid(format!("unknown generator `{tok}`")))?;
            letters.push(id);
        }
        Ok(Word(letters))
    }

    pub fn matrix_dim(&self) -> Option<usize> {
        match &self.rep {
            Representation::Matrix(ms) => Some(ms[0].dim()),
            Representation::Perm(_) => None,
        }
    }

    pub fn perm_degree(&self) -> Option<usize> {
        match &self.rep {
            Representation::Perm(ps) => Some(ps[0].len()),
            Representation::Matrix(_) => None,
        }
    }

    pub fn identity_elem(&self) -> Elem {
        match &self.rep {
            Representation::Matrix(ms) => Elem::Matrix(IntMatrix::identity(ms[0].dim())),
            Representation::Perm(ps) => Elem::Perm(Perm::identity(ps[0].len())),
        }
    }

    pub fn gen_elem(&self, id: GenId) -> Elem {
        match &self.rep {
            Representation::Matrix(ms) => Elem::Matrix(ms[id].clone()),
            Representation::Perm(ps) => Elem::Perm(ps[id].clone()),
        }
    }

    /// Canonical image of a word under the representation.
    pub fn canonicalize(&self, w: &Word) -> Result<Elem> {
        let mut acc = self.identity_elem();
        for &s in &w.0 {
            if s >= self.gens.len() {
                return Err(Error::invalid(format!("unknown generator id {s}")));
            }
            acc = acc.mul(&self.gen_elem(s))?;
        }
        Ok(acc)
    }

    /// All canonical elements reachable by words of length at most `depth`,
    /// each with its shortlex-least witness word.
    pub fn cayley_ball(&self, depth: usize) -> Result<CayleyBall> {
        self.ball_from_generators(
            &(0..self.gens.len())
                .map(|id| (Word(vec![id]), self.gen_elem(id)))
                .collect::<Vec<_>>(),
            depth,
        )
    }

    /// Enumerate the whole image group; terminates only when it is finite
    /// (always, for permutation representations).
    pub fn cayley_ball_exhaustive(&self) -> Result<CayleyBall> {
        self.cayley_ball(usize::MAX)
    }

    /// Ball enumeration over an arbitrary symmetric generating list whose
    /// entries carry witness words in this presentation's letters.
    pub fn ball_from_generators(
        &self,
        gens: &[(Word, Elem)],
        depth: usize,
    ) -> Result<CayleyBall> {
        let mut elements: BTreeMap<Elem, Word> = BTreeMap::new();
        elements.insert(self.identity_elem(), Word::identity());
        let mut frontier: Vec<(Word, Elem)> = vec![(Word::identity(), self.identity_elem())];
        let mut exhausted = false;
        let mut layer = 0usize;
        while layer < depth {
            let mut next: Vec<(Word, Elem)> = Vec::new();
            for (w, m) in &frontier {
                for (gw, ge) in gens {
                    let m2 = m.mul(ge)?;
                    if !elements.contains_key(&m2) {
                        let w2 = w.concat(gw);
                        elements.insert(m2.clone(), w2.clone());
                        next.push((w2, m2));
                    }
                }
            }
            if next.is_empty() {
                exhausted = true;
                break;
            }
            frontier = next;
            layer += 1;
        }
        Ok(CayleyBall {
            elements,
            exhausted,
            depth,
        })
    }
}

/// Enumerated ball in the Cayley graph.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    /// Element -> shortlex-least witness word.
    pub elements: BTreeMap<Elem, Word>,
    /// True when a layer added nothing: the whole image group is listed.
    pub exhausted: bool,
    /// The requested radius.
    pub depth: usize,
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.elements.contains_key(e)
    }

    /// Elements ordered by their witness words (shortlex): the canonical
    /// deterministic scan order for every bounded search.
    pub fn in_shortlex_order(&self) -> Vec<(&Word, &Elem)> {
        let mut v: Vec<(&Word, &Elem)> = self.elements.iter().map(|(e, w)| (w, e)).collect();
        v.sort_by(|a, b| (a.0.len(), &a.0 .0).cmp(&(b.0.len(), &b.0 .0)));
        v
    }
}

/// A subgroup described by generating words in the parent presentation.
/// The generating list is closed under formal inversion on construction.
#[derive(Clone, Debug)]
pub struct Subgroup {
    gens: Vec<Word>,
}

impl Subgroup {
    pub fn new(parent: &GroupPresentation, gens: Vec<Word>) -> Result<Self> {
        let mut words = Vec::new();
        let mut images = Vec::new();
        let mut push = |w: Word, parent: &GroupPresentation| -> Result<()> {
            let img = parent.canonicalize(&w)?;
            if !images.contains(&img) {
                images.push(img);
                words.push(w);
            }
            Ok(())
        };
        for w in gens {
            let inv = w.inverse(parent);
            push(w, parent)?;
            push(inv, parent)?;
        }
        if words.is_empty() {
            return Err(Error::invalid("a subgroup needs at least one generator word"));
        }
        Ok(Subgroup { gens: words })
    }

    /// The whole parent group as a subgroup.
    pub fn whole(parent: &GroupPresentation) -> Result<Self> {
        Subgroup::new(
            parent,
            (0..parent.gen_count()).map(|id| Word(vec![id])).collect(),
        )
    }

    pub fn generating_words(&self) -> &[Word] {
        &self.gens
    }

    /// Ball of the subgroup's image, radius counted in subgroup generators.
    pub fn ball(&self, parent: &GroupPresentation, depth: usize) -> Result<CayleyBall> {
        let gens = self
            .gens
            .iter()
            .map(|w| Ok((w.clone(), parent.canonicalize(w)?)))
            .collect::<Result<Vec<_>>>()?;
        parent.ball_from_generators(&gens, depth)
    }

    /// Membership oracle. Exact for permutation representations (the image
    /// closure is finite); bounded by `membership_depth` otherwise.
    pub fn membership(
        &self,
        parent: &GroupPresentation,
        membership_depth: usize,
    ) -> Result<MembershipOracle> {
        let exact = matches!(parent.rep(), Representation::Perm(_));
        let ball = if exact {
            self.ball(parent, usize::MAX)?
        } else {
            self.ball(parent, membership_depth)?
        };
        Ok(MembershipOracle {
            elements: ball.elements.into_keys().collect(),
            exact: exact || ball.exhausted,
        })
    }
}

/// Set of subgroup elements with a flag telling whether it is complete.
#[derive(Clone, Debug)]
pub struct MembershipOracle {
    elements: BTreeSet<Elem>,
    pub exact: bool,
}

impl MembershipOracle {
    /// `Some(true)`: member. `Some(false)`: certified non-member (exact
    /// oracle only). `None`: not found within the searched ball.
    pub fn contains(&self, e: &Elem) -> Option<bool> {
        if self.elements.contains(e) {
            Some(true)
        } else if self.exact {
            Some(false)
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Elem> {
        self.elements.iter()
    }
}

/// A finite symmetric witness set for bounded-gap (syndetic) checks,
/// closed under formal inversion on construction.
#[derive(Clone, Debug)]
pub struct SyndeticWitness {
    words: Vec<Word>,
}

impl SyndeticWitness {
    pub fn new(parent: &GroupPresentation, words: Vec<Word>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::invalid("witness set must be nonempty"));
        }
        let mut out: Vec<Word> = Vec::new();
        let mut images: Vec<Elem> = Vec::new();
        for w in words {
            for cand in [w.inverse(parent), w] {
                let img = parent.canonicalize(&cand)?;
                if !images.contains(&img) {
                    images.push(img);
                    out.push(cand);
                }
            }
        }
        out.sort_by_key(|w| (w.len(), w.0.clone()));
        Ok(SyndeticWitness { words: out })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }
}

/// Outcome of a bounded syndetic-witness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyndeticVerdict {
    /// Every element of the searched ball meets the subgroup after a witness
    /// translation; `exhaustive` says the ball was the whole image group.
    Certified { exhaustive: bool },
    /// A concrete ball element `gap` with `K·gap` disjoint from the subgroup
    /// (exact membership only).
    Falsified { gap: Word },
    /// Some translate could not be resolved within the membership bound.
    Inconclusive { depth: usize },
}

/// Check `K g ∩ H != ∅` for every `g` in `ball(depth)`, with the subgroup
/// membership oracle bounded by `depth` for matrix representations.
pub fn verify_syndetic_witness(
    parent: &GroupPresentation,
    h: &Subgroup,
    k: &SyndeticWitness,
    depth: usize,
) -> Result<SyndeticVerdict> {
    verify_syndetic_witness_with(parent, h, k, depth, depth)
}

/// As [`verify_syndetic_witness`] with an explicit membership search depth
/// (radius in subgroup generators used to resolve `k·g ∈ H`).
pub fn verify_syndetic_witness_with(
    parent: &GroupPresentation,
    h: &Subgroup,
    k: &SyndeticWitness,
    depth: usize,
    membership_depth: usize,
) -> Result<SyndeticVerdict> {
    let ball = parent.cayley_ball(depth)?;
    let oracle = h.membership(parent, membership_depth)?;
    let k_elems: Vec<Elem> = k
        .words()
        .iter()
        .map(|w| parent.canonicalize(w))
        .collect::<Result<_>>()?;
    let mut unresolved = false;
    for (g_word, g_elem) in ball.in_shortlex_order() {
        let mut hit = false;
        let mut any_unknown = false;
        for ke in &k_elems {
            let kg = ke.mul(g_elem)?;
            match oracle.contains(&kg) {
                Some(true) => {
                    hit = true;
                    break;
                }
                Some(false) => {}
                None => any_unknown = true,
            }
        }
        if !hit {
            if any_unknown || !oracle.exact {
                unresolved = true;
            } else {
                return Ok(SyndeticVerdict::Falsified {
                    gap: g_word.clone(),
                });
            }
        }
    }
    if unresolved {
        Ok(SyndeticVerdict::Inconclusive { depth })
    } else {
        Ok(SyndeticVerdict::Certified {
            exhaustive: ball.exhausted,
        })
    }
}

/// Left-coset representatives of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransversalResult {
    /// Representatives `g_1 = e, g_2, ..`; `exact` means membership was
    /// decided exactly, so the count is the true index.
    Complete { reps: Vec<Word>, exact: bool },
    /// The coset search did not stabilize within `bound` representatives.
    Inconclusive { explored: usize },
}

pub fn coset_transversal(
    parent: &GroupPresentation,
    h: &Subgroup,
    bound: usize,
) -> Result<TransversalResult> {
    coset_transversal_with(parent, h, bound, bound)
}

pub fn coset_transversal_with(
    parent: &GroupPresentation,
    h: &Subgroup,
    bound: usize,
    membership_depth: usize,
) -> Result<TransversalResult> {
    if bound == 0 {
        return Err(Error::invalid("transversal bound must be at least 1"));
    }
    let oracle = h.membership(parent, membership_depth)?;
    let mut reps: Vec<(Word, Elem)> = vec![(Word::identity(), parent.identity_elem())];
    let mut idx = 0;
    while idx < reps.len() {
        for s in 0..parent.gen_count() {
            // Left multiplication: `g (rH) = (g r) H` is the action of the
            // group on its left cosets, so the orbit of `eH` under the
            // generators reaches every coset. Right multiplication would
            // not be well defined on cosets and misses some when the
            // subgroup is not normal.
            let cand_elem = parent.gen_elem(s).mul(&reps[idx].1)?;
            let mut known = false;
            for (_, r_elem) in &reps {
                let shift = r_elem.inverse()?.mul(&cand_elem)?;
                if oracle.contains(&shift) == Some(true) {
                    known = true;
                    break;
                }
            }
            if !known {
                if reps.len() >= bound {
                    return Ok(TransversalResult::Inconclusive {
                        explored: reps.len(),
                    });
                }
                let mut cand_word = vec![s];
                cand_word.extend_from_slice(&reps[idx].0 .0);
                reps.push((Word(cand_word), cand_elem));
            }
        }
        idx += 1;
    }
    Ok(TransversalResult::Complete {
        reps: reps.into_iter().map(|(w, _)| w).collect(),
        exact: oracle.exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;

    fn mat(s: &str) -> IntMatrix {
        IntMatrix::parse(s).unwrap()
    }

    /// The two-involution presentation used across the crate's examples.
    pub(crate) fn involution_pair() -> GroupPresentation {
        GroupPresentation::from_matrices(vec![
            ("B".into(), mat("-1,1;0,1")),
            ("C".into(), mat("-1,0;1,1")),
        ])
        .unwrap()
    }

    #[test]
    fn repeated_generators_get_mutual_inverses() {
        let c3 = Perm::new(vec![2, 0, 1]).unwrap();
        let g = GroupPresentation::from_perms(vec![
            ("a".into(), c3.clone()),
            ("b".into(), c3.clone()),
            ("c".into(), c3.inverse()),
        ])
        .unwrap();
        for i in 0..g.gen_count() {
            let j = g.generator(i).inverse;
            assert_eq!(g.generator(j).inverse, i, "generator {i} is not mutual");
        }
    }

    #[test]
    fn canonicalize_folds_the_representation() {
        let g = involution_pair();
        assert!(g.canonicalize(&Word::identity()).unwrap().is_identity());
        let b = g.find_generator("B").unwrap();
        let c = g.find_generator("C").unwrap();
        // involutions are their own inverses: no extra generators added
        assert_eq!(g.gen_count(), 2);
        assert_eq!(g.generator(b).inverse, b);
        let bb = g.canonicalize(&Word(vec![b, b])).unwrap();
        assert!(bb.is_identity());
        let bc = g.canonicalize(&Word(vec![b, c])).unwrap();
        assert_eq!(bc, Elem::Matrix(mat("2,1;1,1")));
    }

    #[test]
    fn auto_added_inverses_for_a_shear() {
        let g =
            GroupPresentation::from_matrices(vec![("T".into(), mat("1,1;0,1"))]).unwrap();
        assert_eq!(g.gen_count(), 2);
        let t = g.find_generator("T").unwrap();
        let ti = g.find_generator("T^-1").unwrap();
        assert_eq!(g.generator(t).inverse, ti);
        assert_eq!(g.generator(ti).inverse, t);
        assert_eq!(g.primary_gens(), vec![t]);
        let w = Word(vec![t, t, ti]);
        assert_eq!(g.canonicalize(&w).unwrap(), Elem::Matrix(mat("1,1;0,1")));
    }

    #[test]
    fn ball_of_cyclic_shift_wraps() {
        // Degree-5 cyclic shift: radius 2 reaches all five elements.
        let g = GroupPresentation::from_perms(vec![(
            "s".into(),
            Perm::cycle(5, &[0, 1, 2, 3, 4]).unwrap(),
        )])
        .unwrap();
        let ball = g.cayley_ball(2).unwrap();
        assert_eq!(ball.len(), 5);
        assert!(!ball.exhausted); // radius 2 never saw an empty layer
        let ball3 = g.cayley_ball(3).unwrap();
        assert_eq!(ball3.len(), 5);
        assert!(ball3.exhausted);
    }

    #[test]
    fn ball_of_free_shear_grows_linearly() {
        let g =
            GroupPresentation::from_matrices(vec![("T".into(), mat("1,1;0,1"))]).unwrap();
        let ball = g.cayley_ball(3).unwrap();
        assert_eq!(ball.len(), 7); // powers -3..3
        assert!(!ball.exhausted);
    }

    #[test]
    fn involution_pair_ball_radius_one() {
        let g = involution_pair();
        let ball = g.cayley_ball(1).unwrap();
        assert_eq!(ball.len(), 3); // e, B, C
    }

    #[test]
    fn shortlex_witnesses_are_minimal_and_ordered() {
        let g = involution_pair();
        let ball = g.cayley_ball(3).unwrap();
        let order = ball.in_shortlex_order();
        // Words must be sorted by (length, letters) and be genuine witnesses.
        for pair in order.windows(2) {
            let (w1, w2) = (pair[0].0, pair[1].0);
            assert!((w1.len(), &w1.0) < (w2.len(), &w2.0));
        }
        for (w, e) in order {
            assert_eq!(&g.canonicalize(w).unwrap(), e);
        }
    }

    #[test]
    fn ball_monotone_under_depth() {
        let g = involution_pair();
        let mut prev = 0;
        for depth in 0..6 {
            let n = g.cayley_ball(depth).unwrap().len();
            assert!(n >= prev);
            prev = n;
        }
    }

    fn shift_mod6() -> GroupPresentation {
        GroupPresentation::from_perms(vec![(
            "s".into(),
            Perm::cycle(6, &[0, 1, 2, 3, 4, 5]).unwrap(),
        )])
        .unwrap()
    }

    #[test]
    fn syndetic_witness_on_cyclic_six() {
        let g = shift_mod6();
        let s = g.find_generator("s").unwrap();
        let h = Subgroup::new(&g, vec![Word(vec![s, s])]).unwrap();
        let k = SyndeticWitness::new(&g, vec![Word::identity(), Word(vec![s])]).unwrap();
        assert_eq!(
            verify_syndetic_witness(&g, &h, &k, 6).unwrap(),
            SyndeticVerdict::Certified { exhaustive: true }
        );
        // K = {e} misses the odd coset; the first gap is the generator.
        let k_id = SyndeticWitness::new(&g, vec![Word::identity()]).unwrap();
        match verify_syndetic_witness(&g, &h, &k_id, 2).unwrap() {
            SyndeticVerdict::Falsified { gap } => assert_eq!(gap, Word(vec![s])),
            v => panic!("expected falsified, got {v:?}"),
        }
    }

    #[test]
    fn syndetic_witness_on_involution_pair() {
        let g = involution_pair();
        let b = g.find_generator("B").unwrap();
        let c = g.find_generator("C").unwrap();
        let h = Subgroup::new(&g, vec![Word(vec![b, c])]).unwrap();
        let k = SyndeticWitness::new(&g, vec![Word::identity(), Word(vec![b])]).unwrap();
        // Membership radius 2 resolves every translate of the radius-3 ball.
        assert_eq!(
            verify_syndetic_witness_with(&g, &h, &k, 3, 2).unwrap(),
            SyndeticVerdict::Certified { exhaustive: false }
        );
        // Radius 1 cannot resolve the longest translates.
        assert_eq!(
            verify_syndetic_witness_with(&g, &h, &k, 3, 1).unwrap(),
            SyndeticVerdict::Inconclusive { depth: 3 }
        );
    }

    #[test]
    fn whole_group_is_always_syndetic_with_identity_witness() {
        let g = involution_pair();
        let h = Subgroup::whole(&g).unwrap();
        let k = SyndeticWitness::new(&g, vec![Word::identity()]).unwrap();
        // Every ball element lies in H; membership depth must cover it.
        assert_eq!(
            verify_syndetic_witness_with(&g, &h, &k, 3, 3).unwrap(),
            SyndeticVerdict::Certified { exhaustive: false }
        );
    }

    #[test]
    fn transversal_of_even_shifts() {
        let g = shift_mod6();
        let s = g.find_generator("s").unwrap();
        let h = Subgroup::new(&g, vec![Word(vec![s, s])]).unwrap();
        match coset_transversal(&g, &h, 10).unwrap() {
            TransversalResult::Complete { reps, exact } => {
                assert!(exact);
                assert_eq!(reps.len(), 2);
                assert_eq!(reps[0], Word::identity());
            }
            v => panic!("expected complete transversal, got {v:?}"),
        }
        // H = G gives the trivial transversal.
        let whole = Subgroup::whole(&g).unwrap();
        match coset_transversal(&g, &whole, 10).unwrap() {
            TransversalResult::Complete { reps, .. } => assert_eq!(reps, vec![Word::identity()]),
            v => panic!("{v:?}"),
        }
        // Index three for the subgroup of shifts by three.
        let h3 = Subgroup::new(&g, vec![Word(vec![s, s, s])]).unwrap();
        match coset_transversal(&g, &h3, 10).unwrap() {
            TransversalResult::Complete { reps, .. } => assert_eq!(reps.len(), 3),
            v => panic!("{v:?}"),
        }
        // A bound of 2 is too small for index 3.
        assert_eq!(
            coset_transversal(&g, &h3, 2).unwrap(),
            TransversalResult::Inconclusive { explored: 2 }
        );
    }

    #[test]
    fn transversal_of_index_two_matrix_subgroup() {
        let g = involution_pair();
        let b = g.find_generator("B").unwrap();
        let c = g.find_generator("C").unwrap();
        let h = Subgroup::new(&g, vec![Word(vec![b, c])]).unwrap();
        match coset_transversal_with(&g, &h, 8, 3).unwrap() {
            TransversalResult::Complete { reps, exact } => {
                assert!(!exact); // matrix membership is bounded
                assert_eq!(reps.len(), 2);
                assert_eq!(reps[0], Word::identity());
                assert_eq!(reps[1], Word(vec![b]));
            }
            v => panic!("expected complete transversal, got {v:?}"),
        }
    }

    #[test]
    fn transversal_covers_nonnormal_subgroups() {
        // S3 generated by the transpositions (01) and (12); the subgroup
        // <(01)> is not normal and has index three. A coset walk by right
        // multiplication stalls at two representatives here, so this pins
        // the left-multiplication orbit.
        let g = GroupPresentation::from_perms(vec![
            ("a".into(), Perm::cycle(3, &[0, 1]).unwrap()),
            ("b".into(), Perm::cycle(3, &[1, 2]).unwrap()),
        ])
        .unwrap();
        let a = g.find_generator("a").unwrap();
        let h = Subgroup::new(&g, vec![Word(vec![a])]).unwrap();
        let TransversalResult::Complete { reps, exact } = coset_transversal(&g, &h, 10).unwrap()
        else {
            panic!("S3 transversals complete");
        };
        assert!(exact);
        assert_eq!(reps.len(), 3);
        // the three cosets partition all six elements
        let oracle = h.membership(&g, 0).unwrap();
        for e in g.cayley_ball_exhaustive().unwrap().elements.keys() {
            let homes = reps
                .iter()
                .filter(|r| {
                    let shift = g
                        .canonicalize(r)
                        .unwrap()
                        .inverse()
                        .unwrap()
                        .mul(e)
                        .unwrap();
                    oracle.contains(&shift) == Some(true)
                })
                .count();
            assert_eq!(homes, 1, "element {e} must lie in exactly one coset");
        }
    }

    #[test]
    fn product_decomposition_matches_translate_test_on_finite_groups() {
        // On a finite image group: G = K·H exactly when every g has
        // K g ∩ H nonempty. Both sides computed independently here.
        let g = shift_mod6();
        let s = g.find_generator("s").unwrap();
        let si = g.generator(s).inverse;
        let cases: Vec<(Vec<Word>, Vec<Word>)> = vec![
            (vec![Word(vec![s, s])], vec![Word::identity(), Word(vec![s])]),
            (vec![Word(vec![s, s])], vec![Word::identity()]),
            (vec![Word(vec![s, s, s])], vec![Word::identity(), Word(vec![s])]),
            (
                vec![Word(vec![s, s, s])],
                vec![Word::identity(), Word(vec![s]), Word(vec![si])],
            ),
        ];
        for (h_gens, k_words) in cases {
            let h = Subgroup::new(&g, h_gens).unwrap();
            let k = SyndeticWitness::new(&g, k_words).unwrap();
            let all: Vec<Elem> = g
                .cayley_ball_exhaustive()
                .unwrap()
                .elements
                .into_keys()
                .collect();
            let h_set: Vec<Elem> = h.membership(&g, 0).unwrap().elements().cloned().collect();
            let k_set: Vec<Elem> = k
                .words()
                .iter()
                .map(|w| g.canonicalize(w).unwrap())
                .collect();
            // side one: K·H as a set product
            let mut product: BTreeSet<Elem> = BTreeSet::new();
            for ke in &k_set {
                for he in &h_set {
                    product.insert(ke.mul(he).unwrap());
                }
            }
            let covers = all.iter().all(|e| product.contains(e));
            // side two: the translate test
            let translate = all.iter().all(|e| {
                k_set
                    .iter()
                    .any(|ke| h_set.contains(&ke.mul(e).unwrap()))
            });
            assert_eq!(covers, translate);
            // and the library verdict agrees
            let verdict = verify_syndetic_witness(&g, &h, &k, 8).unwrap();
            match verdict {
                SyndeticVerdict::Certified { .. } => assert!(covers),
                SyndeticVerdict::Falsified { .. } => assert!(!covers),
                SyndeticVerdict::Inconclusive { .. } => panic!("exact case must decide"),
            }
        }
    }
}
