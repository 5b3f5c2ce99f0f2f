//! Metric expansivity: certificates, bounded falsification, constant
//! estimation, uniform separation bounds, dynamical balls, fixed points.
//!
//! Separation is strict: `g` separates `x`, `y` beyond `c` iff
//! `d(g x, g y) > c`. Every bounded search scans the Cayley ball in
//! shortlex order and reports the first witness, so serial and parallel
//! runs agree.

use std::collections::BTreeSet;

use num::{Signed, ToPrimitive, Zero};

use crate::actions::ActionHandle;
use crate::error::{Error, Result};
use crate::groups::{Elem, GroupPresentation, Representation, Word};
use crate::matrix::IntMatrix;
use crate::rat::{fmt_rat, rat_int, Rat};
use crate::spaces::torus::{farey_points, grid_points, TorusPoint};
use crate::spaces::{Point, Space};

/// Tolerance for the numeric eigenvalue test beyond dimension two.
pub const NUMERIC_EIGEN_TOL: f64 = 1e-9;

/// Sample count for the numeric unit-circle scan.
pub const CIRCLE_SAMPLES: usize = 4096;

/// How candidate points are drawn from a space.
#[derive(Clone, Debug)]
pub enum Sampler {
    /// Every point of a finite space.
    All,
    /// The `q`-grid `(k_1/q, .., k_d/q)` on the torus.
    Grid { q: u32 },
    /// An explicit point list, e.g. a dense-subset restriction.
    Points(Vec<Point>),
}

impl Sampler {
    /// The sampled points, in scan order (grid points lexicographic,
    /// finite points by index, explicit lists as given minus duplicates).
    pub fn points(&self, space: &Space) -> Result<Vec<Point>> {
        let mut pts = match self {
            Sampler::All => space.points().map_err(|_| {
                Error::invalid("exhaustive sampling needs a finite space; use a grid on the torus")
            })?,
            Sampler::Grid { q } => match space {
                Space::Torus { dim } => {
                    if *q == 0 {
                        return Err(Error::invalid("grid denominator must be at least 1"));
                    }
                    grid_points(*dim, *q).into_iter().map(Point::Torus).collect()
                }
                _ => return Err(Error::invalid("grid sampling applies to the torus only")),
            },
            Sampler::Points(ps) => {
                for p in ps {
                    space.check_point(p)?;
                }
                ps.clone()
            }
        };
        let mut seen = BTreeSet::new();
        pts.retain(|p| seen.insert(p.clone()));
        Ok(pts)
    }

    /// True when the sampler enumerates every point of the space.
    pub fn is_exhaustive(&self, space: &Space) -> bool {
        matches!(self, Sampler::All) && space.finite_size().is_some()
    }
}

/// Outcome of a bounded expansivity search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// The property holds, with a replayable reason.
    Certified {
        /// The constant the verdict is about, where one applies.
        constant: Option<Rat>,
        /// Eigenvalue certificate or exhaustive finite check.
        reason: String,
        /// Witness word for linear certificates.
        witness: Option<Word>,
        /// True when the eigenvalue test relied on floating point.
        numeric: bool,
    },
    /// The property fails, with a concrete witness.
    Falsified {
        /// Refuting pair (absent for linear falsifications).
        pair: Option<(Point, Point)>,
        /// Largest separation the pair reaches inside the searched ball.
        max_separation: Option<Rat>,
        depth: usize,
        /// True when the refutation is complete (finite model, exhaustive
        /// sampling, exhausted image group), not merely a candidate.
        exact: bool,
        reason: String,
    },
    /// The bounded search decided nothing at this depth.
    Inconclusive { depth: usize },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Certified { .. } => "certified",
            Verdict::Falsified { .. } => "falsified",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Verdict::Falsified { .. })
    }
}

/// A replayable witness that one word separates one pair beyond a constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeparationCertificate {
    pub x: Point,
    pub y: Point,
    pub word: Word,
    pub distance: Rat,
    pub constant: Rat,
}

impl SeparationCertificate {
    /// Recomputes the separation distance and refuses certificates whose
    /// word does not separate beyond the constant.
    pub fn new(a: &ActionHandle, x: Point, y: Point, word: Word, constant: Rat) -> Result<Self> {
        let gx = a.apply_word(&word, &x)?;
        let gy = a.apply_word(&word, &y)?;
        let distance = a.space().distance(&gx, &gy)?;
        if distance <= constant {
            return Err(Error::invalid(format!(
                "word {} separates the pair only to {}, not beyond {}",
                word.display(a.group()),
                fmt_rat(&distance),
                fmt_rat(&constant)
            )));
        }
        Ok(Self {
            x,
            y,
            word,
            distance,
            constant,
        })
    }

    /// Re-validates the certificate against the action.
    pub fn replay(&self, a: &ActionHandle) -> Result<()> {
        let again = Self::new(
            a,
            self.x.clone(),
            self.y.clone(),
            self.word.clone(),
            self.constant.clone(),
        )?;
        if again.distance != self.distance {
            return Err(Error::ReplayMismatch {
                field: "distance".into(),
                expected: fmt_rat(&self.distance),
                actual: fmt_rat(&again.distance),
            });
        }
        Ok(())
    }
}

/// Points whose sampled orbit stays strictly within `c` of the center's.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DynamicalBallSample {
    pub center: Point,
    pub constant: Rat,
    pub depth: usize,
    /// Members, sorted; always includes the center.
    pub points: Vec<Point>,
}

/// Two-sided estimate of the supremum of expansive constants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupEstimate {
    pub lo: Rat,
    pub hi: Rat,
    pub depth: usize,
    pub grid_q: u32,
    /// True when `hi` is the exact supremum (finite space, whole group).
    pub exact: bool,
}

/// Result of a uniform separation-bound search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum UniformBound {
    /// Smallest ball radius separating every sampled `eps`-apart pair.
    Bound {
        n: usize,
        /// `ceil(log(c/eps) / log lambda_max)` for a single hyperbolic
        /// two-by-two generator; informational only.
        analytic_hint: Option<u32>,
    },
    /// Some sampled pair stayed within `c` through the whole ball.
    Inconclusive {
        depth: usize,
        analytic_hint: Option<u32>,
    },
}

/// Exact (dimension at most two) or numeric hyperbolicity of one matrix.
enum Hyper {
    ExactYes,
    ExactNo,
    NumericYes,
    NumericNo,
}

/// Coefficients, ascending by degree, of `det(x I - A)` — exact integers.
fn char_poly(m: &IntMatrix) -> Vec<i128> {
    let d = m.dim();
    let cells: Vec<Vec<Vec<i128>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let a = -(m.get(i, j) as i128);
                    if i == j {
                        vec![a, 1]
                    } else {
                        vec![a]
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&cells)
}

fn poly_add(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, &v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, &v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_det(cells: &[Vec<Vec<i128>>]) -> Vec<i128> {
    if cells.len() == 1 {
        return cells[0][0].clone();
    }
    let mut acc = vec![0i128];
    for (j, cell) in cells[0].iter().enumerate() {
        let minor: Vec<Vec<Vec<i128>>> = cells[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, c)| c.clone())
                    .collect()
            })
            .collect();
        let mut term = poly_mul(cell, &poly_det(&minor));
        if j % 2 == 1 {
            for v in &mut term {
                *v = -*v;
            }
        }
        acc = poly_add(&acc, &term);
    }
    acc
}

/// Smallest sampled modulus of the polynomial on the unit circle.
fn min_abs_on_circle(p: &[i128]) -> f64 {
    let mut best = f64::INFINITY;
    for k in 0..CIRCLE_SAMPLES {
        let theta = std::f64::consts::TAU * (k as f64) / (CIRCLE_SAMPLES as f64);
        let (c, s) = (theta.cos(), theta.sin());
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for &coef in p.iter().rev() {
            let nre = re * c - im * s + coef as f64;
            let nim = re * s + im * c;
            re = nre;
            im = nim;
        }
        best = best.min((re * re + im * im).sqrt());
    }
    best
}

fn hyperbolicity(m: &IntMatrix) -> Result<Hyper> {
    match m.dim() {
        // A unimodular 1x1 matrix is (+-1): eigenvalue of modulus one.
        1 => Ok(Hyper::ExactNo),
        2 => {
            let t = m.trace()?;
            let hyper = match m.det()? {
                1 => t.abs() > 2,
                -1 => t != 0,
                _ => return Err(Error::invalid("matrix is not unimodular")),
            };
            Ok(if hyper { Hyper::ExactYes } else { Hyper::ExactNo })
        }
        _ => {
            let p = char_poly(m);
            Ok(if min_abs_on_circle(&p) > NUMERIC_EIGEN_TOL {
                Hyper::NumericYes
            } else {
                Hyper::NumericNo
            })
        }
    }
}

/// Certify expansivity of a matrix group through a hyperbolic element of
/// its Cayley ball, or falsify it where the classical criterion decides.
///
/// In dimension at most two hyperbolicity is decided exactly (det +1:
/// hyperbolic iff |trace| > 2; det -1: iff trace != 0); beyond that a
/// sampled unit-circle scan of the characteristic polynomial is used and
/// the verdict is flagged `numeric`. Falsified is returned for a cyclic
/// group whose generator fails the exact test, and for any exhausted
/// (finite) image group, since a finite group never acts expansively on
/// an infinite compact space.
pub fn certify_linear(group: &GroupPresentation, search_depth: usize) -> Result<Verdict> {
    if !matches!(group.rep(), Representation::Matrix(_)) {
        return Err(Error::Unsupported(
            "linear certificates need a matrix representation".into(),
        ));
    }
    let ball = group.cayley_ball(search_depth)?;
    for (word, elem) in ball.in_shortlex_order() {
        let Elem::Matrix(m) = elem else {
            unreachable!("matrix representation holds matrix elements")
        };
        if m.is_identity() {
            continue;
        }
        match hyperbolicity(m)? {
            Hyper::ExactYes => {
                return Ok(Verdict::Certified {
                    constant: None,
                    reason: format!(
                        "hyperbolic element {} (trace {}, det {})",
                        word.display(group),
                        m.trace()?,
                        m.det()?
                    ),
                    witness: Some(word.clone()),
                    numeric: false,
                });
            }
            Hyper::NumericYes => {
                return Ok(Verdict::Certified {
                    constant: None,
                    reason: format!(
                        "element {} has no characteristic root within {NUMERIC_EIGEN_TOL} \
                         of the sampled unit circle",
                        word.display(group),
                    ),
                    witness: Some(word.clone()),
                    numeric: true,
                });
            }
            Hyper::ExactNo | Hyper::NumericNo => {}
        }
    }
    if search_depth >= 1 {
        let dim = group.matrix_dim().unwrap_or(0);
        if group.primary_gens().len() == 1 && dim <= 2 {
            return Ok(Verdict::Falsified {
                pair: None,
                max_separation: None,
                depth: search_depth,
                exact: true,
                reason: "cyclic group whose generator has an eigenvalue of modulus one".into(),
            });
        }
        if ball.exhausted {
            return Ok(Verdict::Falsified {
                pair: None,
                max_separation: None,
                depth: search_depth,
                exact: true,
                reason: "the image group is finite, and no finite group acts expansively \
                         on an infinite compact space"
                    .into(),
            });
        }
    }
    Ok(Verdict::Inconclusive {
        depth: search_depth,
    })
}

/// First element of the shortlex ball separating `x`, `y` beyond `c`.
pub fn find_separating_element(
    a: &ActionHandle,
    x: &Point,
    y: &Point,
    c: &Rat,
    depth: usize,
) -> Result<Option<SeparationCertificate>> {
    if x == y {
        return Err(Error::invalid("the two points must be distinct"));
    }
    a.space().check_point(x)?;
    a.space().check_point(y)?;
    require_positive(c, "separation constant")?;
    let ball = a.group().cayley_ball(depth)?;
    for (word, elem) in ball.in_shortlex_order() {
        let d = a
            .space()
            .distance(&a.apply_elem(elem, x)?, &a.apply_elem(elem, y)?)?;
        if d > *c {
            let cert =
                SeparationCertificate::new(a, x.clone(), y.clone(), word.clone(), c.clone())?;
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Search sampled pairs for one that no ball element separates beyond `c`.
///
/// `subset`, when given, restricts the sampled points (the dense-subset
/// mode). Falsified is exact on finite models with exhaustive sampling and
/// an exhausted image group, otherwise a candidate with the largest
/// observed separation recorded. Certified only arises in the exact
/// setting; infinite spaces yield Inconclusive when no pair refutes.
pub fn falsify_expansive(
    a: &ActionHandle,
    c: &Rat,
    depth: usize,
    sampler: &Sampler,
    subset: Option<&[Point]>,
) -> Result<Verdict> {
    require_positive(c, "expansivity constant")?;
    let mut points = sampler.points(a.space())?;
    if let Some(sub) = subset {
        for p in sub {
            a.space().check_point(p)?;
        }
        let keep: BTreeSet<&Point> = sub.iter().collect();
        points.retain(|p| keep.contains(p));
    }
    let ball = a.group().cayley_ball(depth)?;
    let elems = ball.in_shortlex_order();
    let exact = sampler.is_exhaustive(a.space()) && subset.is_none() && ball.exhausted;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (x, y) = (&points[i], &points[j]);
            let mut max_sep = Rat::zero();
            let mut escaped = false;
            for (_, elem) in &elems {
                let d = a
                    .space()
                    .distance(&a.apply_elem(elem, x)?, &a.apply_elem(elem, y)?)?;
                if d > max_sep {
                    max_sep = d;
                }
                if max_sep > *c {
                    escaped = true;
                    break;
                }
            }
            if !escaped {
                let reason = if exact {
                    "pair never separated beyond the constant under the whole image group"
                } else {
                    "candidate pair never separated beyond the constant within the searched ball"
                };
                return Ok(Verdict::Falsified {
                    pair: Some((x.clone(), y.clone())),
                    max_separation: Some(max_sep),
                    depth,
                    exact,
                    reason: reason.into(),
                });
            }
        }
    }
    if exact {
        Ok(Verdict::Certified {
            constant: Some(c.clone()),
            reason: format!(
                "all {} sampled pairs separate beyond the constant under the whole image group",
                points.len() * points.len().saturating_sub(1) / 2
            ),
            witness: None,
            numeric: false,
        })
    } else {
        Ok(Verdict::Inconclusive { depth })
    }
}

/// Two-sided estimate of the supremum of expansive constants.
///
/// `hi` is the smallest constant some sampled pair refutes within the
/// ball (the space diameter when no pair exists); `lo = hi (q-1)/q` is
/// the last refinement step below it. `lo` never decreases with depth.
pub fn estimate_sup_constant(a: &ActionHandle, depth: usize, q: u32) -> Result<SupEstimate> {
    if depth < 1 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    if q < 2 {
        return Err(Error::invalid("grid denominator must be at least 2"));
    }
    let sampler = match a.space() {
        Space::Torus { .. } => Sampler::Grid { q },
        _ => Sampler::All,
    };
    let points = sampler.points(a.space())?;
    let ball = a.group().cayley_ball(depth)?;
    let elems = ball.in_shortlex_order();
    // Smallest over pairs of the largest separation inside the ball.
    let mut best: Option<Rat> = None;
    for i in 0..points.len() {
        'pair: for j in i + 1..points.len() {
            let (x, y) = (&points[i], &points[j]);
            let mut max_sep = Rat::zero();
            for (_, elem) in &elems {
                let d = a
                    .space()
                    .distance(&a.apply_elem(elem, x)?, &a.apply_elem(elem, y)?)?;
                if d > max_sep {
                    max_sep = d;
                    if let Some(b) = &best {
                        if max_sep >= *b {
                            // This pair cannot lower the running minimum.
                            continue 'pair;
                        }
                    }
                }
            }
            if best.as_ref().map_or(true, |b| max_sep < *b) {
                best = Some(max_sep);
            }
        }
    }
    let hi = match best {
        Some(b) => b,
        None => a.space().diameter()?,
    };
    let lo = &hi * Rat::new((q as i64 - 1).into(), (q as i64).into());
    let exact = sampler.is_exhaustive(a.space()) && ball.exhausted;
    Ok(SupEstimate {
        lo,
        hi,
        depth,
        grid_q: q,
        exact,
    })
}

/// `ceil(log(c/eps) / log lambda_max)` for one exactly hyperbolic 2x2
/// generator; informational floating-point estimate.
fn analytic_hint(group: &GroupPresentation, c: &Rat, eps: &Rat) -> Option<u32> {
    let gens = group.primary_gens();
    if gens.len() != 1 {
        return None;
    }
    let Representation::Matrix(ms) = group.rep() else {
        return None;
    };
    let m = &ms[gens[0]];
    if m.dim() != 2 || !matches!(hyperbolicity(m).ok()?, Hyper::ExactYes) {
        return None;
    }
    let t = m.trace().ok()? as f64;
    let d = m.det().ok()? as f64;
    let lambda = (t.abs() + (t * t - 4.0 * d).sqrt()) / 2.0;
    let ratio = (c / eps).to_f64()?;
    if ratio <= 1.0 {
        return Some(0);
    }
    Some((ratio.ln() / lambda.ln()).ceil() as u32)
}

/// Smallest ball radius separating every sampled pair at distance >= `eps`
/// beyond `c`, or Inconclusive when some pair survives the whole ball.
pub fn uniform_separation_bound(
    a: &ActionHandle,
    c: &Rat,
    eps: &Rat,
    depth: usize,
    sampler: &Sampler,
) -> Result<UniformBound> {
    require_positive(c, "separation constant")?;
    require_positive(eps, "initial distance")?;
    let hint = analytic_hint(a.group(), c, eps);
    let points = sampler.points(a.space())?;
    let ball = a.group().cayley_ball(depth)?;
    let elems = ball.in_shortlex_order();
    let mut worst = 0usize;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (x, y) = (&points[i], &points[j]);
            if a.space().distance(x, y)? < *eps {
                continue;
            }
            let mut first_len = None;
            for (word, elem) in &elems {
                let d = a
                    .space()
                    .distance(&a.apply_elem(elem, x)?, &a.apply_elem(elem, y)?)?;
                if d > *c {
                    first_len = Some(word.len());
                    break;
                }
            }
            match first_len {
                Some(len) => worst = worst.max(len),
                None => {
                    return Ok(UniformBound::Inconclusive {
                        depth,
                        analytic_hint: hint,
                    });
                }
            }
        }
    }
    Ok(UniformBound::Bound {
        n: worst,
        analytic_hint: hint,
    })
}

/// The sampled dynamical ball: candidate points whose orbit stays
/// strictly within `c` of the center's through the whole searched ball.
///
/// Torus candidates are every point with coordinate denominators at most
/// `q`; finite spaces use all points. The center always belongs.
pub fn dynamical_ball(
    a: &ActionHandle,
    x: &Point,
    c: &Rat,
    depth: usize,
    q: u32,
) -> Result<DynamicalBallSample> {
    require_positive(c, "ball constant")?;
    a.space().check_point(x)?;
    let candidates: Vec<Point> = match a.space() {
        Space::Torus { dim } => {
            if q == 0 {
                return Err(Error::invalid("grid denominator must be at least 1"));
            }
            farey_points(*dim, q).into_iter().map(Point::Torus).collect()
        }
        _ => a.space().points()?,
    };
    let ball = a.group().cayley_ball(depth)?;
    let elems = ball.in_shortlex_order();
    let mut members = BTreeSet::new();
    members.insert(x.clone());
    'cand: for t in candidates {
        for (_, elem) in &elems {
            let d = a
                .space()
                .distance(&a.apply_elem(elem, x)?, &a.apply_elem(elem, &t)?)?;
            if d >= *c {
                continue 'cand;
            }
        }
        members.insert(t);
    }
    Ok(DynamicalBallSample {
        center: x.clone(),
        constant: c.clone(),
        depth,
        points: members.into_iter().collect(),
    })
}

/// Common fixed points of all generators.
///
/// On the torus this solves `(A - I) x` integral exactly for some
/// generator with `det(A - I) != 0` (the candidate count is
/// `|det(A - I)|`) and keeps the candidates every generator fixes. When
/// every generator has singular `A - I` the fixed set need not be finite
/// and the computation is refused.
pub fn fixed_points(a: &ActionHandle) -> Result<Vec<Point>> {
    let gens = a.group().primary_gens();
    match a.space() {
        Space::Torus { .. } => {
            let Representation::Matrix(ms) = a.group().rep() else {
                unreachable!("torus actions hold matrix representations")
            };
            let mut seeds: Option<Vec<TorusPoint>> = None;
            for &g in &gens {
                let shifted = ms[g].sub_identity()?;
                if shifted.det()? == 0 {
                    continue;
                }
                let mut cands = Vec::new();
                for k in shifted.lattice_coset_reps()? {
                    let rhs: Vec<Rat> = k.into_iter().map(rat_int).collect();
                    cands.push(TorusPoint::new(shifted.solve_exact(&rhs)?));
                }
                seeds = Some(cands);
                break;
            }
            let Some(cands) = seeds else {
                return Err(Error::FixedSetNotFinite(
                    "every generator fixes a positive-dimensional subspace".into(),
                ));
            };
            let mut fixed = BTreeSet::new();
            for cand in cands {
                let p = Point::Torus(cand);
                let mut ok = true;
                for &g in &gens {
                    if a.apply_gen(g, &p)? != p {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    fixed.insert(p);
                }
            }
            Ok(fixed.into_iter().collect())
        }
        _ => {
            let mut fixed = Vec::new();
            for p in a.space().points()? {
                let mut ok = true;
                for &g in &gens {
                    if a.apply_gen(g, &p)? != p {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    fixed.push(p);
                }
            }
            Ok(fixed)
        }
    }
}

fn require_positive(r: &Rat, what: &str) -> Result<()> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{what} must be positive")))
    }
}
