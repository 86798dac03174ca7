//! Reversible local rewrites of movies.
//!
//! Moves address events by rank in the movie they are applied to. Every
//! result is renumbered `1..=h`, so a move and its inverse address the same
//! ranks. Ids are never invented here: the finger move takes its new ids as
//! parameters, and [`FingerData::fresh`] picks unused ones deterministically.

use std::fmt;

use crate::error::{Error, Result};
use crate::foliation::{Arc, ArcId, EllipticId, EllipticPoint, FoliationMovie, SaddleEvent, Sign};
use crate::frame::{FEvent, Frame};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChangeVariant {
    /// The shared elliptic point moves into the earlier event.
    Second,
    /// Inverse of [`ChangeVariant::Second`].
    Third,
}

impl ChangeVariant {
    pub fn other(self) -> Self {
        match self {
            ChangeVariant::Second => ChangeVariant::Third,
            ChangeVariant::Third => ChangeVariant::Second,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ChangeVariant::Second => "second",
            ChangeVariant::Third => "third",
        }
    }
}

/// Parameters of a finger move, shared with its inverse.
///
/// The move pushes a finger out of the negative point `target`, creating
/// `new_pos`, `new_neg` and the arc `new_arc` between them, plus two saddles
/// between `new_arc` and whichever arc ends at `target`. Between the open and
/// the close event `new_arc` holds `target` and `new_neg` stands in for it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FingerData {
    pub target: EllipticId,
    pub new_pos: EllipticId,
    pub new_neg: EllipticId,
    pub new_arc: ArcId,
    /// Ranks of the two new events in the resulting movie.
    pub open_rank: u32,
    pub close_rank: u32,
    /// The close event has the opposite sign.
    pub open_sign: Sign,
}

impl FingerData {
    /// Finger data using the smallest unused `p<i>`, `n<i>` and `a<i>` ids.
    pub fn fresh(movie: &FoliationMovie, target: EllipticId, open_rank: u32, close_rank: u32, open_sign: Sign) -> Self {
        let free_point = |prefix: &str| {
            (1..)
                .map(|i| EllipticId(format!("{prefix}{i}")))
                .find(|id| !movie.elliptic.contains_key(id))
                .unwrap()
        };
        let new_arc = (1..)
            .map(|i| ArcId(format!("a{i}")))
            .find(|id| !movie.arcs.contains_key(id))
            .unwrap();
        FingerData {
            target,
            new_pos: free_point("p"),
            new_neg: free_point("n"),
            new_arc,
            open_rank,
            close_rank,
            open_sign,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// Exchange the π-values of two cyclically adjacent events with disjoint arcs.
    SwapPi { r1: u32, r2: u32 },
    /// Re-pair two same-sign events; the events strictly between `first`
    /// and `second` (going forward cyclically) keep their separatrices.
    ChangeInFoliation { first: u32, second: u32, variant: ChangeVariant },
    FingerMove(FingerData),
    InverseFingerMove(FingerData),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::SwapPi { r1, r2 } => write!(f, "swap {r1} {r2}"),
            Move::ChangeInFoliation { first, second, variant } => {
                write!(f, "change {first} {second} variant={}", variant.name())
            }
            Move::FingerMove(d) | Move::InverseFingerMove(d) => {
                let kw = if matches!(self, Move::FingerMove(_)) { "finger" } else { "unfinger" };
                write!(
                    f,
                    "{kw} {} {} {} {} open={} close={} sign={}",
                    d.target, d.new_pos, d.new_neg, d.new_arc, d.open_rank, d.close_rank, d.open_sign
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveScript {
    pub base: FoliationMovie,
    pub steps: Vec<Move>,
}

pub fn inverse(mv: &Move) -> Move {
    match mv {
        Move::SwapPi { r1, r2 } => Move::SwapPi { r1: *r1, r2: *r2 },
        Move::ChangeInFoliation { first, second, variant } => Move::ChangeInFoliation {
            first: *first,
            second: *second,
            variant: variant.other(),
        },
        Move::FingerMove(d) => Move::InverseFingerMove(d.clone()),
        Move::InverseFingerMove(d) => Move::FingerMove(d.clone()),
    }
}

/// `Ok(())` if the move applies, otherwise the reason it does not.
pub fn applicable(mv: &Move, movie: &FoliationMovie) -> std::result::Result<(), String> {
    match apply(mv, movie) {
        Ok(_) => Ok(()),
        Err(Error::Inapplicable(d)) => Err(d),
        Err(e) => Err(e.to_string()),
    }
}

pub fn apply(mv: &Move, movie: &FoliationMovie) -> Result<FoliationMovie> {
    movie.ensure_valid()?;
    let out = match mv {
        Move::SwapPi { r1, r2 } => {
            let f = Frame::from_movie(movie);
            swap(&f, position(movie, *r1)?, position(movie, *r2)?)?.to_movie()
        }
        Move::ChangeInFoliation { first, second, variant } => {
            let f = Frame::from_movie(movie);
            change(&f, position(movie, *first)?, position(movie, *second)?, *variant)?.to_movie()
        }
        Move::FingerMove(d) => finger(movie, d)?,
        Move::InverseFingerMove(d) => unfinger(movie, d)?,
    };
    let report = out.validate();
    if !report.ok() {
        return Err(Error::Inapplicable(format!("result would be invalid: {report}")));
    }
    Ok(out)
}

/// Left fold of [`apply`]; errors name the failing step counting from 1.
pub fn apply_script(script: &MoveScript) -> Result<FoliationMovie> {
    let mut m = script.base.clone();
    script.base.ensure_valid()?;
    for (i, mv) in script.steps.iter().enumerate() {
        m = apply(mv, &m).map_err(|e| Error::Script {
            step: i + 1,
            diagnostic: format!("{mv}: {e}"),
        })?;
    }
    Ok(m)
}

fn position(movie: &FoliationMovie, rank: u32) -> Result<usize> {
    movie
        .events
        .iter()
        .position(|e| e.rank == rank)
        .ok_or_else(|| Error::Inapplicable(format!("no event with rank {rank}")))
}

fn inapplicable<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Inapplicable(msg.into()))
}

pub(crate) fn swap(f: &Frame, i: usize, j: usize) -> Result<Frame> {
    let h = f.h();
    if i == j {
        return inapplicable("cannot swap an event with itself");
    }
    let (x, y) = if (i + 1) % h == j {
        (i, j)
    } else if (j + 1) % h == i {
        (j, i)
    } else {
        return inapplicable(format!("events at positions {} and {} are not adjacent", i + 1, j + 1));
    };
    let (ex, ey) = (f.events[x], f.events[y]);
    if !ex.disjoint(&ey) {
        return inapplicable(format!(
            "events {} and {} share an arc",
            x + 1,
            y + 1
        ));
    }
    let mut g = f.clone();
    g.events.swap(x, y);
    if y < x {
        // wrapping across the initial slice moves it past both events
        g.initial.swap(ex.a, ex.b);
        g.initial.swap(ey.a, ey.b);
    }
    Ok(g)
}

pub(crate) fn change(f: &Frame, i: usize, j: usize, variant: ChangeVariant) -> Result<Frame> {
    let h = f.h();
    if i == j {
        return inapplicable("a change needs two distinct events");
    }
    let sign = f.events[i].sign;
    if f.events[j].sign != sign {
        return inapplicable("change in foliation needs two events of the same sign");
    }
    let (g, off) = if i < j { (f.clone(), 0) } else { (f.rotated(i), i) };
    let (ii, jj) = ((i + h - off) % h, (j + h - off) % h);
    let labels = match sign {
        Sign::Negative => g.events.clone(),
        Sign::Positive => g.negative_labels(),
    };
    let new_labels = change_labels(&labels, ii, jj, variant)?;
    let mut out = g.clone();
    out.events = match sign {
        Sign::Negative => new_labels,
        Sign::Positive => g.relabel_from_negative(&new_labels),
    };
    Ok(if off > 0 { out.rotated(h - off) } else { out })
}

fn act(w: &FEvent, v: usize) -> usize {
    if v == w.a {
        w.b
    } else if v == w.b {
        w.a
    } else {
        v
    }
}

fn change_labels(events: &[FEvent], i: usize, j: usize, variant: ChangeVariant) -> Result<Vec<FEvent>> {
    let (x, z) = (events[i], events[j]);
    let word = &events[i + 1..j];
    let (mut xa, mut xb) = (x.a, x.b);
    for w in word {
        xa = act(w, xa);
        xb = act(w, xb);
    }
    let shared: Vec<usize> = [xa, xb].into_iter().filter(|&v| z.touches(v)).collect();
    if shared.len() != 1 {
        return inapplicable(format!(
            "events {} and {} do not meet in exactly one point across the intervening events",
            i + 1,
            j + 1
        ));
    }
    let q = shared[0];
    let a = if xa == q { xb } else { xa };
    let c = if z.a == q { z.b } else { z.a };
    let (first, second) = match variant {
        ChangeVariant::Second => ((q, c), (a, c)),
        ChangeVariant::Third => ((a, c), (q, a)),
    };
    let (mut fa, mut fb) = first;
    for w in word.iter().rev() {
        fa = act(w, fa);
        fb = act(w, fb);
    }
    let mut out = events.to_vec();
    out[i] = FEvent::new(fa, fb, x.sign);
    out[j] = FEvent::new(second.0, second.1, z.sign);
    Ok(out)
}

fn check_finger_ranks(d: &FingerData, total: usize) -> Result<()> {
    let ok = |r: u32| r >= 1 && (r as usize) <= total;
    if d.open_rank == d.close_rank || !ok(d.open_rank) || !ok(d.close_rank) {
        return inapplicable(format!(
            "open={} close={} must be distinct ranks in 1..={total}",
            d.open_rank, d.close_rank
        ));
    }
    Ok(())
}

fn finger(movie: &FoliationMovie, d: &FingerData) -> Result<FoliationMovie> {
    match movie.elliptic.get(&d.target) {
        Some(Sign::Negative) => {}
        Some(Sign::Positive) => return inapplicable(format!("target {} is a positive elliptic point", d.target)),
        None => return inapplicable(format!("target {} does not exist", d.target)),
    }
    if d.new_pos == d.new_neg || movie.elliptic.contains_key(&d.new_pos) || movie.elliptic.contains_key(&d.new_neg) {
        return inapplicable("new elliptic ids must be fresh and distinct");
    }
    if movie.arcs.contains_key(&d.new_arc) {
        return inapplicable(format!("arc id {} is already in use", d.new_arc));
    }
    let h = movie.events.len();
    check_finger_ranks(d, h + 2)?;
    let slices = movie
        .replay()
        .map_err(|(r, e)| Error::Internal(format!("replay of a valid movie failed at {r}: {e}")))?;
    let owner = |t: usize| slices[t].arc_into(&d.target).expect("perfect matching").id.clone();

    let (o, c) = (d.open_rank as usize - 1, d.close_rank as usize - 1);
    let mut events = Vec::with_capacity(h + 2);
    let mut old = movie.events.iter();
    let mut t = 0;
    for pos in 0..h + 2 {
        let rank = pos as u32 + 1;
        if pos == o || pos == c {
            let sign = if pos == o { d.open_sign } else { d.open_sign.flip() };
            events.push(SaddleEvent::new(rank, sign, d.new_arc.clone(), owner(t)));
        } else {
            let e = old.next().unwrap();
            events.push(SaddleEvent::new(rank, e.sign, e.arcs[0].clone(), e.arcs[1].clone()));
            t += 1;
        }
    }

    let mut arcs: Vec<Arc> = movie.arcs.values().cloned().collect();
    let new_end = if o < c {
        d.new_neg.clone()
    } else {
        for a in arcs.iter_mut().filter(|a| a.neg_end == d.target) {
            a.neg_end = d.new_neg.clone();
        }
        d.target.clone()
    };
    arcs.push(Arc {
        id: d.new_arc.clone(),
        pos_end: d.new_pos.clone(),
        neg_end: new_end,
    });
    let elliptic = movie.elliptic_points().chain([
        EllipticPoint {
            id: d.new_pos.clone(),
            sign: Sign::Positive,
        },
        EllipticPoint {
            id: d.new_neg.clone(),
            sign: Sign::Negative,
        },
    ]);
    Ok(FoliationMovie::from_parts(elliptic, arcs, events))
}

fn unfinger(movie: &FoliationMovie, d: &FingerData) -> Result<FoliationMovie> {
    let h = movie.events.len();
    if h < 2 {
        return inapplicable("an inverse finger move needs at least two events");
    }
    check_finger_ranks(d, h)?;
    if movie.elliptic.get(&d.new_pos) != Some(&Sign::Positive) {
        return inapplicable(format!("{} is not a positive elliptic point", d.new_pos));
    }
    if movie.elliptic.get(&d.new_neg) != Some(&Sign::Negative) || movie.elliptic.get(&d.target) != Some(&Sign::Negative) {
        return inapplicable(format!("{} and {} must be negative elliptic points", d.new_neg, d.target));
    }
    match movie.arcs.get(&d.new_arc) {
        Some(a) if a.pos_end == d.new_pos => {}
        _ => return inapplicable(format!("arc {} does not leave {}", d.new_arc, d.new_pos)),
    }
    let star: Vec<&SaddleEvent> = movie.events.iter().filter(|e| e.involves(&d.new_arc)).collect();
    let ranks = movie.renumbered();
    let star_pos: Vec<u32> = ranks.events.iter().filter(|e| e.involves(&d.new_arc)).map(|e| e.rank).collect();
    if star.len() != 2 {
        return inapplicable(format!("{} has {} incident events, expected 2", d.new_pos, star.len()));
    }
    let open = ranks.events[d.open_rank as usize - 1].clone();
    let close = ranks.events[d.close_rank as usize - 1].clone();
    if !star_pos.contains(&d.open_rank) || !star_pos.contains(&d.close_rank) {
        return inapplicable("open and close ranks must be the two events at the collapsed point");
    }
    if open.sign != d.open_sign || close.sign != d.open_sign.flip() {
        return inapplicable("the open and close events must have opposite signs as given");
    }

    let (o, c) = (d.open_rank as usize - 1, d.close_rank as usize - 1);
    let events = ranks
        .events
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != o && *i != c)
        .map(|(_, e)| e.clone());
    let mut arcs: Vec<Arc> = movie.arcs.values().filter(|a| a.id != d.new_arc).cloned().collect();
    for a in arcs.iter_mut().filter(|a| a.neg_end == d.new_neg) {
        a.neg_end = d.target.clone();
    }
    let elliptic = movie
        .elliptic_points()
        .filter(|e| e.id != d.new_pos && e.id != d.new_neg)
        .collect::<Vec<_>>();
    let reduced = FoliationMovie::from_parts(elliptic, arcs, events).renumbered();
    if !reduced.validate().ok() {
        return inapplicable(format!("collapsing the star leaves an invalid movie: {}", reduced.validate()));
    }
    let rebuilt = finger(&reduced, d)?;
    if Frame::from_movie(&rebuilt) != Frame::from_movie(movie) {
        return inapplicable(format!(
            "{} is not the result of a finger move with these parameters",
            d.new_pos
        ));
    }
    Ok(reduced)
}
