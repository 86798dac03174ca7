//! Inductive realization of tree movies and the exhaustive enumeration oracle.
//!
//! `realize` reduces a movie to the trivial one by shrinking the star of a
//! leaf of G₊₊ with changes in foliation and then collapsing it with an
//! inverse finger move. The script it returns runs the other way: from
//! [`base_movie`] through the inverses of the reduction steps.

use std::collections::BTreeSet;

use crate::embedding::SeparatrixMap;
use crate::error::{Error, Result};
use crate::foliation::{ArcId, EllipticId, FoliationMovie, Sign};
use crate::frame::{FEvent, Frame};
use crate::iso::{canonical_frame, is_isomorphic, CanonicalForm};
use crate::moves::{apply, apply_script, inverse, ChangeVariant, FingerData, Move, MoveScript};
use crate::tightness::{build_gpp, is_tree};

/// Largest `k_max` accepted by [`enumerate_movies`].
pub const ENUMERATION_GUARD: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealizationResult {
    Script(MoveScript),
    /// G₊₊ is not a tree; the string names the offending loop, cycle or split.
    Obstruction(String),
}

impl RealizationResult {
    pub fn script(&self) -> Option<&MoveScript> {
        match self {
            RealizationResult::Script(s) => Some(s),
            RealizationResult::Obstruction(_) => None,
        }
    }
}

/// One positive point `p1`, one negative point `n1`, the arc `a1`, no events.
pub fn base_movie() -> FoliationMovie {
    CanonicalForm { k: 1, events: vec![] }.to_movie()
}

pub fn realize(movie: &FoliationMovie) -> Result<RealizationResult> {
    movie.ensure_valid()?;
    let g = build_gpp(movie)?;
    if let Some(why) = g.tree_obstruction() {
        return Ok(RealizationResult::Obstruction(why));
    }
    let mut current = movie.renumbered();
    let mut reduction: Vec<Move> = Vec::new();
    while current.elliptic.len() > 2 {
        let steps = reduce_once(&current)?;
        for mv in steps {
            current = apply(&mv, &current).map_err(|e| Error::Internal(format!("reduction step {mv} failed: {e}")))?;
            reduction.push(mv);
        }
    }
    let mut steps: Vec<Move> = reduction.iter().rev().map(inverse).collect();
    let rename = base_renaming(&current);
    for mv in &mut steps {
        rename_move(mv, &rename);
    }
    Ok(RealizationResult::Script(MoveScript {
        base: base_movie(),
        steps,
    }))
}

/// True iff the script starts at the trivial movie and replays to a movie
/// isomorphic to `movie`. A failing step is reported as an error.
pub fn verify_realization(movie: &FoliationMovie, script: &MoveScript) -> Result<bool> {
    if !is_isomorphic(&script.base, &base_movie())? {
        return Ok(false);
    }
    let out = apply_script(script)?;
    is_isomorphic(&out, movie)
}

/// Moves for one induction step: a run of swaps and a change, or one
/// inverse finger move.
fn reduce_once(m: &FoliationMovie) -> Result<Vec<Move>> {
    let g = build_gpp(m)?;
    let k = g.vertices.len();
    let counts = m.raw_counts();
    if !is_tree(&g) || counts.h_pos != k - 1 {
        return Err(Error::Internal(format!(
            "tree bookkeeping broken: k={k} h+={} tree={}",
            counts.h_pos,
            is_tree(&g)
        )));
    }
    let leaves: Vec<&EllipticId> = g.vertices.iter().filter(|v| g.degree(v) == 1).collect();
    for p in leaves {
        let arc = m.arc_of(p).expect("every positive point has an arc").clone();
        let star: Vec<usize> = (0..m.events.len()).filter(|&t| m.events[t].involves(&arc)).collect();
        let positive = star.iter().filter(|&&t| m.events[t].sign == Sign::Positive).count();
        if positive != 1 {
            return Err(Error::Internal(format!(
                "leaf {p} has {positive} positive star events, expected 1"
            )));
        }
        if star.len() == 2 {
            return Ok(vec![collapse(m, p, &arc, &star)?]);
        }
        if let Some(steps) = shrink(m, &arc, &star)? {
            return Ok(steps);
        }
    }
    Err(Error::OpenCase(format!(
        "no leaf of G++ admits a star-shrinking change (k={k})"
    )))
}

fn collapse(m: &FoliationMovie, p: &EllipticId, arc: &ArcId, star: &[usize]) -> Result<Move> {
    let (plus, minus) = if m.events[star[0]].sign == Sign::Positive {
        (star[0], star[1])
    } else {
        (star[1], star[0])
    };
    let slices = m.replay().map_err(|(r, e)| Error::Internal(format!("replay failed at {r}: {e}")))?;
    let inside = slices[plus + 1].arc(arc).unwrap().neg_end.clone();
    let outside = slices[plus].arc(arc).unwrap().neg_end.clone();
    let d = FingerData {
        target: inside,
        new_pos: p.clone(),
        new_neg: outside,
        new_arc: arc.clone(),
        open_rank: plus as u32 + 1,
        close_rank: minus as u32 + 1,
        open_sign: Sign::Positive,
    };
    let mv = Move::InverseFingerMove(d);
    apply(&mv, m).map_err(|e| Error::Internal(format!("star collapse at {p} failed: {e}")))?;
    Ok(mv)
}

/// Merge two cyclically consecutive negative star events, closest pair first.
fn shrink(m: &FoliationMovie, arc: &ArcId, star: &[usize]) -> Result<Option<Vec<Move>>> {
    let h = m.events.len();
    let n = star.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for s in 0..n {
        let (i, j) = (star[s], star[(s + 1) % n]);
        if m.events[i].sign != Sign::Negative || m.events[j].sign != Sign::Negative {
            continue;
        }
        let mv = change_move(i, j);
        if apply(&mv, m).is_err() {
            continue;
        }
        let gap = (j + h - i) % h - 1;
        if best.is_none_or(|(g, _, _)| gap < g) {
            best = Some((gap, i, j));
        }
    }
    let Some((_, mut i, j)) = best else {
        return Ok(None);
    };

    // bring the earlier event forward past disjoint neighbours
    let mut steps = Vec::new();
    let mut cur = m.clone();
    loop {
        let next = (i + 1) % h;
        if next == j || !f_event(&cur, i).disjoint(&f_event(&cur, next)) {
            break;
        }
        let mv = Move::SwapPi { r1: i as u32 + 1, r2: next as u32 + 1 };
        cur = apply(&mv, &cur).map_err(|e| Error::Internal(format!("swap failed: {e}")))?;
        steps.push(mv);
        i = next;
    }
    let mv = change_move(i, j);
    let after = apply(&mv, &cur).map_err(|e| Error::Internal(format!("change failed after swaps: {e}")))?;
    steps.push(mv);
    let star_after = after.events.iter().filter(|e| e.involves(arc)).count();
    if star_after + 1 != star.len() {
        return Err(Error::OpenCase(format!(
            "change at the star of {arc} left {star_after} events, expected {}",
            star.len() - 1
        )));
    }
    Ok(Some(steps))
}

fn change_move(i: usize, j: usize) -> Move {
    Move::ChangeInFoliation {
        first: i as u32 + 1,
        second: j as u32 + 1,
        variant: ChangeVariant::Second,
    }
}

fn f_event(m: &FoliationMovie, t: usize) -> FEvent {
    Frame::from_movie(m).events[t]
}

/// A bijection on ids, stored as transpositions applied in order.
struct Renaming {
    points: Vec<(EllipticId, EllipticId)>,
    arc: (ArcId, ArcId),
}

impl Renaming {
    fn point(&self, id: &EllipticId) -> EllipticId {
        self.points.iter().fold(id.clone(), |x, (a, b)| {
            if x == *a {
                b.clone()
            } else if x == *b {
                a.clone()
            } else {
                x
            }
        })
    }
}

/// Rename the ids surviving the reduction to those of [`base_movie`],
/// swapping with any id that already uses a base name.
fn base_renaming(reduced: &FoliationMovie) -> Renaming {
    let p = reduced.positive_points().next().unwrap().clone();
    let n = reduced.negative_points().next().unwrap().clone();
    let mut r = Renaming {
        points: vec![(p, "p1".into())],
        arc: (reduced.arcs.keys().next().unwrap().clone(), "a1".into()),
    };
    let n = r.point(&n);
    r.points.push((n, "n1".into()));
    r
}

fn rename_move(mv: &mut Move, r: &Renaming) {
    if let Move::FingerMove(d) | Move::InverseFingerMove(d) = mv {
        d.target = r.point(&d.target);
        d.new_pos = r.point(&d.new_pos);
        d.new_neg = r.point(&d.new_neg);
        if d.new_arc == r.arc.0 {
            d.new_arc = r.arc.1.clone();
        } else if d.new_arc == r.arc.1 {
            d.new_arc = r.arc.0.clone();
        }
    }
}

/// All valid movies with `e₊ ≤ k_max` up to isomorphism, in canonical order.
pub fn enumerate_movies(k_max: usize) -> Result<Vec<FoliationMovie>> {
    Ok(enumerate_canonical(k_max, ENUMERATION_GUARD)?
        .iter()
        .map(CanonicalForm::to_movie)
        .collect())
}

/// Brute force over event sequences from the identity matching, sorted by
/// `(k, events)`. Independent of the moves module.
pub fn enumerate_canonical(k_max: usize, guard: usize) -> Result<Vec<CanonicalForm>> {
    if k_max > guard {
        return Err(Error::Guard { k_max, guard });
    }
    let mut out = Vec::new();
    for k in 1..=k_max {
        let mut found: BTreeSet<CanonicalForm> = BTreeSet::new();
        let mut shapes: BTreeSet<CanonicalForm> = BTreeSet::new();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        for h in 0..=2 * k {
            if pairs.is_empty() && h > 0 {
                continue;
            }
            let mut digits = vec![0usize; h];
            let mut f = Frame {
                pos: (0..k).map(|i| format!("p{}", i + 1).into()).collect(),
                neg: (0..k).map(|i| format!("n{}", i + 1).into()).collect(),
                arc: (0..k).map(|i| format!("a{}", i + 1).into()).collect(),
                initial: (0..k).collect(),
                events: Vec::with_capacity(h),
            };
            let mut perm = vec![0usize; k];
            loop {
                perm.iter_mut().enumerate().for_each(|(i, x)| *x = i);
                for &d in &digits {
                    perm.swap(pairs[d].0, pairs[d].1);
                }
                let closes = perm.iter().enumerate().all(|(i, &x)| i == x);
                if closes {
                    f.events.clear();
                    f.events
                        .extend(digits.iter().map(|&d| FEvent::new(pairs[d].0, pairs[d].1, Sign::Positive)));
                }
                // relabellings act on signings too, so one unsigned
                // representative per class is enough
                if closes
                    && f.is_connected()
                    && (k == 1 || SeparatrixMap::from_frame(&f).euler_characteristic() == 2)
                    && f.to_movie().validate().ok()
                    && shapes.insert(canonical_frame(&f))
                {
                    for mask in 0..1u32 << h {
                        for (t, e) in f.events.iter_mut().enumerate() {
                            e.sign = if mask >> t & 1 == 1 { Sign::Negative } else { Sign::Positive };
                        }
                        found.insert(canonical_frame(&f));
                    }
                }
                if !advance(&mut digits, pairs.len()) {
                    break;
                }
            }
        }
        out.extend(found);
    }
    Ok(out)
}

/// Odometer step; false once every digit has wrapped.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
