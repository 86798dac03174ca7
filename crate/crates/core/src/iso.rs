//! Canonical forms and isomorphism of movies.
//!
//! A movie is determined up to relabelling by its event list once the
//! initial slice is fixed, so the canonical form picks a starting event,
//! names every negative point after its partner in that starting slice, and
//! names positive points in order of first appearance. The lexicographically
//! least event list over all choices is the canonical one.

use std::fmt;

use crate::error::Result;
use crate::foliation::{FoliationMovie, Sign};
use crate::frame::{FEvent, Frame};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub k: usize,
    /// `(i, j, sign)` with `i < j`, arcs numbered from 0.
    pub events: Vec<(usize, usize, Sign)>,
}

impl CanonicalForm {
    /// The movie with ids `p1.., n1.., a1..` and the identity initial matching.
    pub fn to_movie(&self) -> FoliationMovie {
        Frame {
            pos: (1..=self.k).map(|i| format!("p{i}").into()).collect(),
            neg: (1..=self.k).map(|i| format!("n{i}").into()).collect(),
            arc: (1..=self.k).map(|i| format!("a{i}").into()).collect(),
            initial: (0..self.k).collect(),
            events: self.events.iter().map(|&(a, b, s)| FEvent::new(a, b, s)).collect(),
        }
        .to_movie()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}", self.k)?;
        for (a, b, s) in &self.events {
            write!(f, " {}{}{}", s, a + 1, b + 1)?;
        }
        Ok(())
    }
}

pub fn canonical_form(movie: &FoliationMovie) -> Result<CanonicalForm> {
    movie.ensure_valid()?;
    Ok(canonical_frame(&Frame::from_movie(movie)))
}

pub fn is_isomorphic(m1: &FoliationMovie, m2: &FoliationMovie) -> Result<bool> {
    Ok(canonical_form(m1)? == canonical_form(m2)?)
}

pub(crate) fn canonical_frame(f: &Frame) -> CanonicalForm {
    let k = f.k();
    let mut best: Option<Vec<(usize, usize, Sign)>> = None;
    for r in 0..f.h().max(1) {
        let g = f.rotated(r);
        let mut labels = vec![usize::MAX; k];
        search(&g.events, 0, &mut labels, 0, &mut Vec::new(), &mut best);
    }
    CanonicalForm {
        k,
        events: best.unwrap_or_default(),
    }
}

fn search(
    events: &[FEvent],
    t: usize,
    labels: &mut Vec<usize>,
    next: usize,
    prefix: &mut Vec<(usize, usize, Sign)>,
    best: &mut Option<Vec<(usize, usize, Sign)>>,
) {
    if let Some(b) = best.as_ref() {
        if prefix.as_slice() > &b[..prefix.len()] {
            return;
        }
    }
    if t == events.len() {
        if best.as_ref().is_none_or(|b| *prefix < *b) {
            *best = Some(prefix.clone());
        }
        return;
    }
    let e = events[t];
    let orders: Vec<[usize; 2]> = match (labels[e.a] == usize::MAX, labels[e.b] == usize::MAX) {
        (true, true) => vec![[e.a, e.b], [e.b, e.a]],
        (true, false) => vec![[e.a, usize::MAX]],
        (false, true) => vec![[e.b, usize::MAX]],
        (false, false) => vec![[usize::MAX, usize::MAX]],
    };
    for order in orders {
        let mut n = next;
        for &v in order.iter().filter(|&&v| v != usize::MAX) {
            labels[v] = n;
            n += 1;
        }
        let (x, y) = (labels[e.a], labels[e.b]);
        prefix.push((x.min(y), x.max(y), e.sign));
        search(events, t + 1, labels, n, prefix, best);
        prefix.pop();
        for &v in order.iter().filter(|&&v| v != usize::MAX) {
            labels[v] = usize::MAX;
        }
    }
}
