//! Orbit expansivity: the co-boundedness relation on open covers, bounded
//! and exact cover verification, translations between expansive constants
//! and covers, covers adapted to finite-index subgroups, and the
//! doubled-fixed-point construction on finite topological spaces.

use std::collections::BTreeSet;

use crate::actions::{ActionHandle, ConjugacyWitness};
use crate::error::{Error, Result};
use crate::expansivity::Sampler;
use crate::groups::{Elem, GroupPresentation, Representation, Subgroup, Word};
use crate::perm::Perm;
use crate::rat::Rat;
use crate::spaces::cover::{NamedSet, OpenCover, SetRepr};
use crate::spaces::{Point, Space};

/// Outcome of an orbit-expansivity check against one cover.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrbitCoverVerdict {
    /// Every sampled distinct pair escaped the cover within the ball.
    VerifiedAtDepth(usize),
    /// The pair stayed co-bounded through the searched (or whole) group.
    Refuted { x: Point, y: Point, exact: bool },
    /// Exact positive: finite space, exhaustive pairs, whole image group.
    DecidedExpansiveCover,
}

impl OrbitCoverVerdict {
    pub fn holds(&self) -> bool {
        !matches!(self, OrbitCoverVerdict::Refuted { .. })
    }
}

/// Is the whole point set inside a single cover member?
pub fn prec(points: &[Point], cover: &OpenCover) -> Result<bool> {
    'member: for m in cover.members() {
        for p in points {
            if !m.repr.contains(p)? {
                continue 'member;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// First sampled pair that stays co-bounded under every listed element,
/// if any.
fn first_cobounded_pair(
    a: &ActionHandle,
    cover: &OpenCover,
    elems: &[(&Word, &Elem)],
    points: &[Point],
) -> Result<Option<(Point, Point)>> {
    for i in 0..points.len() {
        'pair: for j in i + 1..points.len() {
            let (x, y) = (&points[i], &points[j]);
            for (_, elem) in elems {
                let px = a.apply_elem(elem, x)?;
                let py = a.apply_elem(elem, y)?;
                if !cover.pair_fits(&px, &py)? {
                    continue 'pair;
                }
            }
            return Ok(Some((x.clone(), y.clone())));
        }
    }
    Ok(None)
}

/// Check that no sampled distinct pair stays co-bounded in single cover
/// members through the ball. Exact (`DecidedExpansiveCover` or exact
/// `Refuted`) on finite spaces with exhaustive sampling and an exhausted
/// image group; bounded otherwise.
pub fn verify_orbit_expansive(
    a: &ActionHandle,
    cover: &OpenCover,
    depth: usize,
    sampler: &Sampler,
) -> Result<OrbitCoverVerdict> {
    let points = sampler.points(a.space())?;
    let ball = a.group().cayley_ball(depth)?;
    let elems = ball.in_shortlex_order();
    let exact = sampler.is_exhaustive(a.space()) && ball.exhausted;
    match first_cobounded_pair(a, cover, &elems, &points)? {
        Some((x, y)) => Ok(OrbitCoverVerdict::Refuted { x, y, exact }),
        None if exact => Ok(OrbitCoverVerdict::DecidedExpansiveCover),
        None => Ok(OrbitCoverVerdict::VerifiedAtDepth(depth)),
    }
}

/// First co-bounded pair over the whole (finite) image group and all
/// points of a finite space; `None` means the cover is exactly
/// orbit-expansive.
fn exact_cobounded_pair(a: &ActionHandle, cover: &OpenCover) -> Result<Option<(Point, Point)>> {
    let ball = a.group().cayley_ball_exhaustive()?;
    let elems = ball.in_shortlex_order();
    let points = a.space().points()?;
    first_cobounded_pair(a, cover, &elems, &points)
}

/// Decide orbit expansivity of a finite topological action exactly.
///
/// The cover of minimal open neighborhoods refines every cover of the
/// space, and refinements of orbit-expansive covers stay orbit-expansive;
/// so an orbit-expansive cover exists if and only if this one works. The
/// witness cover is returned alongside the decision.
pub fn decide_orbit_expansive_finite(a: &ActionHandle) -> Result<(bool, OpenCover)> {
    let Space::Top(t) = a.space() else {
        return Err(Error::Unsupported(
            "the exact decision runs on finite topological spaces".into(),
        ));
    };
    let cover = OpenCover::from_masks(a.space(), t.minimal_open_cover())?;
    let expansive = exact_cobounded_pair(a, &cover)?.is_none();
    Ok((expansive, cover))
}

/// Cover by balls of radius `c/2` (grid-centered boxes of side `c` on the
/// torus), as used to turn an expansive constant into a cover.
pub fn cover_from_constant(a: &ActionHandle, c: &Rat, grid_q: u32) -> Result<OpenCover> {
    crate::spaces::cover::cover_from_constant(a.space(), c, grid_q)
}

/// A constant below half the fitting number of the cover (one third is
/// used), as used to turn a verified cover into an expansive constant.
pub fn constant_from_cover(a: &ActionHandle, cover: &OpenCover) -> Result<Rat> {
    crate::spaces::cover::constant_from_cover(a.space(), cover)
}

/// The member-by-member image of a cover under one word of the action.
///
/// Images of a cover under a homeomorphism cover the space again, so no
/// re-validation is needed. Torus members are kept as exact preimage
/// constraints (a point lies in the image iff the inverse matrix sends it
/// into the original member); finite members are permuted masks.
pub fn image_cover(a: &ActionHandle, cover: &OpenCover, w: &Word) -> Result<OpenCover> {
    if w.is_empty() {
        return Ok(cover.clone());
    }
    let elem = a.group().canonicalize(w)?;
    let prefix = w.display(a.group());
    let members = cover
        .members()
        .iter()
        .map(|m| {
            let repr = match &elem {
                Elem::Perm(p) => m.repr.image_perm(p)?,
                Elem::Matrix(mat) => m.repr.image_matrix(&mat.inverse_unimodular()?)?,
            };
            Ok(NamedSet::new(format!("{prefix}({})", m.name), repr))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OpenCover::from_parts(members))
}

/// Cover adapted to a finite-index subgroup: the common refinement of the
/// preimage covers over all transversal representatives,
/// `V = (g_1^-1 U) v .. v (g_k^-1 U)`.
///
/// A pair co-bounded in `V` under an `H`-element `h` is co-bounded in `U`
/// under every `g_i h`, and those products sweep the whole group; so when
/// `U` is orbit-expansive for the full action, `V` is orbit-expansive for
/// the restriction to `H`. A plain union of the translated members does
/// not support that argument (a member of `U` itself never leaves the
/// union) and genuinely fails — see the module tests for an example — so
/// the common refinement is what this returns.
pub fn subgroup_cover(
    cover: &OpenCover,
    a: &ActionHandle,
    transversal: &[Word],
) -> Result<OpenCover> {
    if transversal.is_empty() {
        return Err(Error::invalid("empty transversal"));
    }
    let mut acc: Option<OpenCover> = None;
    for w in transversal {
        let translated = image_cover(a, cover, &w.inverse(a.group()))?;
        acc = Some(match acc {
            None => translated,
            Some(v) => v.join(&translated)?,
        });
    }
    Ok(acc.expect("transversal is nonempty"))
}

/// The same space acted on by the subgroup generated by the given words.
pub fn restrict_action_to_subgroup(a: &ActionHandle, sub: &Subgroup) -> Result<ActionHandle> {
    let words = sub.generating_words();
    let group = match a.group().rep() {
        Representation::Perm(_) => {
            let named = words
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    let Elem::Perm(p) = a.group().canonicalize(w)? else {
                        unreachable!("permutation representation")
                    };
                    Ok((format!("h{i}"), p))
                })
                .collect::<Result<Vec<_>>>()?;
            GroupPresentation::from_perms(named)?
        }
        Representation::Matrix(_) => {
            let named = words
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    let Elem::Matrix(m) = a.group().canonicalize(w)? else {
                        unreachable!("matrix representation")
                    };
                    Ok((format!("h{i}"), m))
                })
                .collect::<Result<Vec<_>>>()?;
            GroupPresentation::from_matrices(named)?
        }
    };
    ActionHandle::new(group, a.space().clone())
}

/// The cover carried through a conjugacy: member images under the
/// conjugating homeomorphism, names kept.
pub fn conjugate_cover(cover: &OpenCover, witness: &ConjugacyWitness) -> Result<OpenCover> {
    let members = cover
        .members()
        .iter()
        .map(|m| {
            let repr = match witness {
                ConjugacyWitness::Relabel(p) => m.repr.image_perm(p)?,
                ConjugacyWitness::TorusMatrix(mat) => {
                    m.repr.image_matrix(&mat.inverse_unimodular()?)?
                }
            };
            Ok(NamedSet::new(m.name.clone(), repr))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OpenCover::from_parts(members))
}

/// The trace of a cover on an invariant subset of a finite space: each
/// member intersected with the subset, re-indexed to the restricted
/// space's points, empties dropped and duplicates removed.
pub fn trace_cover(
    cover: &OpenCover,
    subset: &[Point],
    restricted_space: &Space,
) -> Result<OpenCover> {
    let mut old_indices = Vec::with_capacity(subset.len());
    for p in subset {
        match p {
            Point::Finite(i) => old_indices.push(*i),
            Point::Torus(_) => {
                return Err(Error::Unsupported(
                    "cover traces are computed on finite spaces".into(),
                ))
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut members = Vec::new();
    for m in cover.members() {
        let SetRepr::Mask(mask) = m.repr else {
            return Err(Error::invalid("finite covers carry mask members"));
        };
        let mut traced = 0u64;
        for (new_i, old_i) in old_indices.iter().enumerate() {
            if mask & (1u64 << old_i) != 0 {
                traced |= 1u64 << new_i;
            }
        }
        if traced != 0 && seen.insert(traced) {
            members.push(NamedSet::new(m.name.clone(), SetRepr::Mask(traced)));
        }
    }
    OpenCover::new(restricted_space, members)
}

/// A fixed point doubled into a non-separated twin, the action extended
/// to fix the twin, and the witness cover extended by the twin member.
#[derive(Clone, Debug)]
pub struct DoubledPoint {
    /// The extended action on the doubled space.
    pub action: ActionHandle,
    /// The input cover plus the twin member `(host - x0) + x1`.
    pub cover: OpenCover,
    /// The doubled point in the original space.
    pub doubled: Point,
    /// The twin (largest index of the doubled space).
    pub new_point: Point,
    /// The doubled space satisfies T1 (checked exactly).
    pub t1: bool,
    /// Whether the doubled point and its twin have disjoint neighborhoods.
    /// Finite T1 spaces are discrete, so finite doubles always separate
    /// the twins; the non-separated phenomenon needs infinite spaces.
    pub twins_separated: bool,
}

/// Double a fixed point of a finite topological action.
///
/// `x0` must be fixed by every generator and `cover` must be exactly
/// orbit-expansive for the action. The doubled space adjoins a twin `x1`
/// whose neighborhoods mirror `x0`'s; each generator extends by fixing
/// `x1`; the returned cover adds the member `(host - x0) + x1` for the
/// first input member hosting `x0`. Both postconditions are re-verified
/// exactly: the doubled space is T1 and the returned cover is an
/// orbit-expansive covering of the extended action.
pub fn doubled_point_example(
    a: &ActionHandle,
    x0: &Point,
    cover: &OpenCover,
) -> Result<DoubledPoint> {
    let Space::Top(t) = a.space() else {
        return Err(Error::Unsupported(
            "point doubling runs on finite topological spaces".into(),
        ));
    };
    let Point::Finite(x0i) = x0 else {
        return Err(Error::invalid("the doubled point must be a finite-space point"));
    };
    a.space().check_point(x0)?;
    for g in a.group().primary_gens() {
        if a.apply_gen(g, x0)? != *x0 {
            return Err(Error::invalid(format!(
                "the doubled point must be fixed by every generator; `{}` moves it",
                a.group().generator(g).name
            )));
        }
    }
    if let Some((x, y)) = exact_cobounded_pair(a, cover)? {
        return Err(Error::invalid(format!(
            "the witness cover is not orbit-expansive: {x} and {y} stay co-bounded"
        )));
    }
    let host = cover
        .members()
        .iter()
        .find(|m| matches!(m.repr.contains(x0), Ok(true)))
        .ok_or_else(|| Error::NotACover("no member hosts the doubled point".into()))?;
    let SetRepr::Mask(host_mask) = host.repr else {
        return Err(Error::invalid("finite covers carry mask members"));
    };

    let n = t.len();
    let doubled_space = t.double_point(*x0i)?;
    let Representation::Perm(ps) = a.group().rep() else {
        return Err(Error::invalid("finite topological actions are permutation actions"));
    };
    let named = a
        .group()
        .primary_gens()
        .into_iter()
        .map(|g| {
            let mut images = ps[g].images().to_vec();
            images.push(n);
            Ok((a.group().generator(g).name.clone(), Perm::new(images)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let action = ActionHandle::new(
        GroupPresentation::from_perms(named)?,
        Space::Top(doubled_space.clone()),
    )?;

    let twin_mask = (host_mask & !(1u64 << x0i)) | (1u64 << n);
    let mut members = cover.members().to_vec();
    members.push(NamedSet::new(
        format!("twin({})", host.name),
        SetRepr::Mask(twin_mask),
    ));
    let extended = OpenCover::new(action.space(), members)?;

    let t1 = doubled_space.is_t1();
    if !t1 {
        return Err(Error::invalid("doubling failed to preserve T1"));
    }
    if let Some((x, y)) = exact_cobounded_pair(&action, &extended)? {
        return Err(Error::invalid(format!(
            "extended cover lost orbit expansivity: {x} and {y} stay co-bounded"
        )));
    }
    let twins_separated = doubled_space.min_nbhd(*x0i) & doubled_space.min_nbhd(n) == 0;
    Ok(DoubledPoint {
        action,
        cover: extended,
        doubled: x0.clone(),
        new_point: Point::Finite(n),
        t1,
        twins_separated,
    })
}
