//! Index-based view of a structurally sound movie.
//!
//! Arc `i` is the arc leaving `pos[i]`; `initial[i]` is the index into `neg`
//! of its negative end in the initial slice. Events are unordered pairs of
//! arc indices stored with `a < b`.

use crate::foliation::{Arc, ArcId, EllipticId, EllipticPoint, FoliationMovie, SaddleEvent, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct FEvent {
    pub a: usize,
    pub b: usize,
    pub sign: Sign,
}

impl FEvent {
    pub fn new(x: usize, y: usize, sign: Sign) -> Self {
        FEvent {
            a: x.min(y),
            b: x.max(y),
            sign,
        }
    }

    pub fn touches(&self, i: usize) -> bool {
        self.a == i || self.b == i
    }

    pub fn disjoint(&self, other: &FEvent) -> bool {
        !self.touches(other.a) && !self.touches(other.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Frame {
    pub pos: Vec<EllipticId>,
    pub neg: Vec<EllipticId>,
    pub arc: Vec<ArcId>,
    pub initial: Vec<usize>,
    pub events: Vec<FEvent>,
}

impl Frame {
    /// The movie must have a perfect initial matching and event arcs that exist.
    pub fn from_movie(m: &FoliationMovie) -> Frame {
        let mut arcs: Vec<&Arc> = m.arcs.values().collect();
        arcs.sort_by(|x, y| x.pos_end.cmp(&y.pos_end));
        let pos: Vec<EllipticId> = arcs.iter().map(|a| a.pos_end.clone()).collect();
        let arc: Vec<ArcId> = arcs.iter().map(|a| a.id.clone()).collect();
        let neg: Vec<EllipticId> = m.negative_points().cloned().collect();
        let initial = arcs
            .iter()
            .map(|a| neg.binary_search(&a.neg_end).expect("negative end declared"))
            .collect();
        let index = |id: &ArcId| arc.iter().position(|x| x == id).expect("event arc exists");
        let events = m
            .events
            .iter()
            .map(|e| FEvent::new(index(&e.arcs[0]), index(&e.arcs[1]), e.sign))
            .collect();
        Frame {
            pos,
            neg,
            arc,
            initial,
            events,
        }
    }

    pub fn to_movie(&self) -> FoliationMovie {
        let elliptic = self
            .pos
            .iter()
            .map(|p| EllipticPoint {
                id: p.clone(),
                sign: Sign::Positive,
            })
            .chain(self.neg.iter().map(|n| EllipticPoint {
                id: n.clone(),
                sign: Sign::Negative,
            }));
        let arcs = (0..self.k()).map(|i| Arc {
            id: self.arc[i].clone(),
            pos_end: self.pos[i].clone(),
            neg_end: self.neg[self.initial[i]].clone(),
        });
        let events = self.events.iter().enumerate().map(|(t, e)| {
            SaddleEvent::new(t as u32 + 1, e.sign, self.arc[e.a].clone(), self.arc[e.b].clone())
        });
        FoliationMovie::from_parts(elliptic, arcs, events)
    }

    pub fn k(&self) -> usize {
        self.pos.len()
    }

    pub fn h(&self) -> usize {
        self.events.len()
    }

    #[cfg(test)]
    pub fn closes(&self) -> bool {
        let mut s = self.initial.clone();
        for e in &self.events {
            s.swap(e.a, e.b);
        }
        s == self.initial
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.k());
        for e in &self.events {
            uf.union(e.a, e.b);
        }
        uf.components() <= 1
    }

    /// Start the movie at the slice following event `r`.
    pub fn rotated(&self, r: usize) -> Frame {
        let h = self.h();
        if h == 0 {
            return self.clone();
        }
        let r = r % h;
        let mut f = self.clone();
        for e in &self.events[..r] {
            f.initial.swap(e.a, e.b);
        }
        f.events.rotate_left(r);
        f
    }

    /// Events relabelled by the negative ends of their arcs just before firing.
    pub fn negative_labels(&self) -> Vec<FEvent> {
        let mut s = self.initial.clone();
        self.events
            .iter()
            .map(|e| {
                let out = FEvent::new(s[e.a], s[e.b], e.sign);
                s.swap(e.a, e.b);
                out
            })
            .collect()
    }

    /// Inverse of [`Frame::negative_labels`] for the current initial matching.
    pub fn relabel_from_negative(&self, labelled: &[FEvent]) -> Vec<FEvent> {
        let mut s = self.initial.clone();
        let mut inv = vec![0; s.len()];
        for (i, &n) in s.iter().enumerate() {
            inv[n] = i;
        }
        labelled
            .iter()
            .map(|e| {
                let (x, y) = (inv[e.a], inv[e.b]);
                s.swap(x, y);
                inv[s[x]] = x;
                inv[s[y]] = y;
                FEvent::new(x, y, e.sign)
            })
            .collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `x` and `y` were already joined.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx] = ry;
        true
    }

    pub fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(k: usize, events: &[(usize, usize, Sign)]) -> Frame {
        Frame {
            pos: (1..=k).map(|i| format!("p{i}").into()).collect(),
            neg: (1..=k).map(|i| format!("n{i}").into()).collect(),
            arc: (1..=k).map(|i| format!("a{i}").into()).collect(),
            initial: (0..k).collect(),
            events: events.iter().map(|&(a, b, s)| FEvent::new(a, b, s)).collect(),
        }
    }

    #[test]
    fn movie_round_trip() {
        use Sign::*;
        let f = frame(3, &[(0, 1, Positive), (1, 2, Negative), (0, 2, Positive), (0, 1, Negative)]);
        let m = f.to_movie();
        assert_eq!(Frame::from_movie(&m), f);
    }

    #[test]
    fn negative_labels_invert() {
        use Sign::*;
        let f = frame(4, &[(0, 1, Positive), (1, 2, Negative), (0, 3, Positive), (1, 3, Negative), (2, 3, Negative)]);
        let nl = f.negative_labels();
        assert_eq!(f.relabel_from_negative(&nl), f.events);
    }

    #[test]
    fn rotation_preserves_closure() {
        use Sign::*;
        let f = frame(3, &[(0, 1, Positive), (1, 2, Positive), (0, 1, Negative), (0, 2, Negative)]);
        assert!(f.closes());
        for r in 0..4 {
            let g = f.rotated(r);
            assert!(g.closes());
            assert_eq!(g.rotated(4 - r), f);
        }
    }
}
