//! The movie encoding of a circle-free open book foliation on S².
//!
//! Every regular leaf is an arc from a positive elliptic point (a source) to a
//! negative one (a sink), and each elliptic point carries exactly one leaf per
//! π-value. A slice is therefore a perfect matching between E₊ and E₋. An arc
//! keeps its id and its positive endpoint for the whole movie; a saddle event
//! between arcs `(p₁,n₁)` and `(p₂,n₂)` swaps their negative ends.
//!
//! Orientation convention: rotations are counterclockwise seen from the
//! positive side of the sphere, and leaves advance towards their left side
//! as π increases. A saddle corridor therefore lies on the left of both arcs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::embedding::{SeparatrixMap, SliceEmbedding};
use crate::error::{Error, Result};
use crate::frame::Frame;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EllipticId(pub String);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(pub String);

macro_rules! id_impls {
    ($t:ident) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $t {
            fn from(s: &str) -> Self {
                $t(s.to_string())
            }
        }

        impl From<String> for $t {
            fn from(s: String) -> Self {
                $t(s)
            }
        }

        impl $t {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }
    };
}

id_impls!(EllipticId);
id_impls!(ArcId);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Side of a directed arc (oriented from its positive to its negative end).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Which endpoint re-pairing a saddle produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Resolution {
    /// `{(p₁,n₁),(p₂,n₂)} → {(p₁,n₂),(p₂,n₁)}`
    Cross,
    /// `{(p₁,n₁),(p₂,n₂)} → {(p₁,p₂),(n₁,n₂)}`; never consistent with oriented leaves.
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EllipticPoint {
    pub id: EllipticId,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub id: ArcId,
    pub pos_end: EllipticId,
    pub neg_end: EllipticId,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SaddleEvent {
    pub rank: u32,
    pub sign: Sign,
    pub arcs: [ArcId; 2],
    /// Side of `arcs[0]` and `arcs[1]` facing the saddle corridor.
    pub corridor: [Side; 2],
    pub resolution: Resolution,
}

impl SaddleEvent {
    /// A saddle in the only orientation-consistent configuration.
    pub fn new(rank: u32, sign: Sign, a: ArcId, b: ArcId) -> Self {
        SaddleEvent {
            rank,
            sign,
            arcs: [a, b],
            corridor: [Side::Left, Side::Left],
            resolution: Resolution::Cross,
        }
    }

    pub fn involves(&self, arc: &ArcId) -> bool {
        self.arcs[0] == *arc || self.arcs[1] == *arc
    }

    fn normalized(mut self) -> Self {
        if self.arcs[1] < self.arcs[0] {
            self.arcs.swap(0, 1);
            self.corridor.swap(0, 1);
        }
        self
    }
}

/// One slice: the arc matching at a regular π-value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slice {
    arcs: BTreeMap<ArcId, Arc>,
}

impl Slice {
    pub fn new(arcs: impl IntoIterator<Item = Arc>) -> Self {
        Slice {
            arcs: arcs.into_iter().map(|a| (a.id.clone(), a)).collect(),
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.values()
    }

    pub fn arc(&self, id: &ArcId) -> Option<&Arc> {
        self.arcs.get(id)
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// The arc ending at the given negative elliptic point.
    pub fn arc_into(&self, neg: &EllipticId) -> Option<&Arc> {
        self.arcs.values().find(|a| a.neg_end == *neg)
    }

    pub fn arc_from(&self, pos: &EllipticId) -> Option<&Arc> {
        self.arcs.values().find(|a| a.pos_end == *pos)
    }

    pub fn embedding(&self) -> SliceEmbedding {
        SliceEmbedding::of(self)
    }

    /// Apply one saddle: both arcs must be present and distinct.
    pub(crate) fn resolve(&mut self, a: &ArcId, b: &ArcId) -> std::result::Result<(), String> {
        if a == b {
            return Err(format!("saddle between arc {a} and itself"));
        }
        let na = self.arcs.get(a).ok_or_else(|| format!("unknown arc {a}"))?.neg_end.clone();
        let nb = self.arcs.get(b).ok_or_else(|| format!("unknown arc {b}"))?.neg_end.clone();
        self.arcs.get_mut(a).unwrap().neg_end = nb;
        self.arcs.get_mut(b).unwrap().neg_end = na;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SingularityCounts {
    pub e_pos: usize,
    pub e_neg: usize,
    pub h_pos: usize,
    pub h_neg: usize,
}

impl SingularityCounts {
    /// Index sum `(e₊ + e₋) − (h₊ + h₋)`.
    pub fn index_sum(&self) -> i64 {
        (self.e_pos + self.e_neg) as i64 - (self.h_pos + self.h_neg) as i64
    }
}

impl fmt::Display for SingularityCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "e+={} e-={} h+={} h-={} PH={}",
            self.e_pos,
            self.e_neg,
            self.h_pos,
            self.h_neg,
            self.index_sum()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    UnsupportedGenus,
    DanglingReference,
    EndpointSign,
    PerfectMatching,
    Rotation,
    EllipticBalance,
    DuplicateRank,
    SelfSaddle,
    Corridor,
    Resolution,
    CyclicClosure,
    Connectivity,
    PoincareHopf,
    Genus,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Invariant::UnsupportedGenus => "unsupported genus",
            Invariant::DanglingReference => "dangling reference",
            Invariant::EndpointSign => "arc endpoint sign",
            Invariant::PerfectMatching => "perfect matching",
            Invariant::Rotation => "rotation data",
            Invariant::EllipticBalance => "e+ = e-",
            Invariant::DuplicateRank => "duplicate π-rank",
            Invariant::SelfSaddle => "self-saddle",
            Invariant::Corridor => "corridor",
            Invariant::Resolution => "resolution",
            Invariant::CyclicClosure => "cyclic closure",
            Invariant::Connectivity => "connectivity",
            Invariant::PoincareHopf => "Poincaré–Hopf",
            Invariant::Genus => "genus",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Movie,
    Elliptic(EllipticId),
    Arc(ArcId),
    Event(u32),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Movie => f.write_str("movie"),
            Location::Elliptic(id) => write!(f, "elliptic {id}"),
            Location::Arc(id) => write!(f, "arc {id}"),
            Location::Event(r) => write!(f, "event {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub invariant: Invariant,
    pub location: Location,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.invariant, self.location, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, invariant: Invariant) -> bool {
        self.violations.iter().any(|v| v.invariant == invariant)
    }

    fn push(&mut self, invariant: Invariant, location: Location, detail: impl Into<String>) {
        self.violations.push(Violation {
            invariant,
            location,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FoliationMovie {
    pub genus: u32,
    pub elliptic: BTreeMap<EllipticId, Sign>,
    pub arcs: BTreeMap<ArcId, Arc>,
    /// Arc-ends incident to each elliptic point in the initial slice,
    /// counterclockwise. One entry per point in a well-formed movie.
    pub rotation: BTreeMap<EllipticId, Vec<ArcId>>,
    /// Sorted by rank; ranks are compared cyclically.
    pub events: Vec<SaddleEvent>,
}

impl FoliationMovie {
    /// Build a movie, deriving the initial rotation data from the arcs.
    pub fn from_parts(
        elliptic: impl IntoIterator<Item = EllipticPoint>,
        arcs: impl IntoIterator<Item = Arc>,
        events: impl IntoIterator<Item = SaddleEvent>,
    ) -> Self {
        let arcs: Vec<Arc> = arcs.into_iter().collect();
        let elliptic: BTreeMap<EllipticId, Sign> =
            elliptic.into_iter().map(|e| (e.id, e.sign)).collect();
        let mut rotation: BTreeMap<EllipticId, Vec<ArcId>> = BTreeMap::new();
        for a in &arcs {
            rotation.entry(a.pos_end.clone()).or_default().push(a.id.clone());
            rotation.entry(a.neg_end.clone()).or_default().push(a.id.clone());
        }
        Self::with_rotation(0, elliptic, arcs, rotation, events)
    }

    /// Build a movie from explicit parts, as read from a document.
    pub fn with_rotation(
        genus: u32,
        elliptic: BTreeMap<EllipticId, Sign>,
        arcs: impl IntoIterator<Item = Arc>,
        rotation: BTreeMap<EllipticId, Vec<ArcId>>,
        events: impl IntoIterator<Item = SaddleEvent>,
    ) -> Self {
        let mut events: Vec<SaddleEvent> = events.into_iter().map(SaddleEvent::normalized).collect();
        events.sort_by_key(|e| e.rank);
        FoliationMovie {
            genus,
            elliptic,
            arcs: arcs.into_iter().map(|a| (a.id.clone(), a)).collect(),
            rotation,
            events,
        }
    }

    pub fn elliptic_points(&self) -> impl Iterator<Item = EllipticPoint> + '_ {
        self.elliptic.iter().map(|(id, &sign)| EllipticPoint {
            id: id.clone(),
            sign,
        })
    }

    pub fn positive_points(&self) -> impl Iterator<Item = &EllipticId> {
        self.elliptic
            .iter()
            .filter(|(_, s)| **s == Sign::Positive)
            .map(|(id, _)| id)
    }

    pub fn negative_points(&self) -> impl Iterator<Item = &EllipticId> {
        self.elliptic
            .iter()
            .filter(|(_, s)| **s == Sign::Negative)
            .map(|(id, _)| id)
    }

    pub fn initial_slice(&self) -> Slice {
        Slice::new(self.arcs.values().cloned())
    }

    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    pub fn event_at(&self, rank: u32) -> Option<&SaddleEvent> {
        self.events.iter().find(|e| e.rank == rank)
    }

    /// The arc whose positive end is `pos`; constant over the whole movie.
    pub fn arc_of(&self, pos: &EllipticId) -> Option<&ArcId> {
        self.arcs.values().find(|a| a.pos_end == *pos).map(|a| &a.id)
    }

    /// Check every invariant of the encoding and report all violations.
    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.ok() {
            Ok(())
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// Slices after each event, starting with the initial slice (length h + 1).
    /// Assumes event arcs are present and distinct.
    pub(crate) fn replay(&self) -> std::result::Result<Vec<Slice>, (u32, String)> {
        let mut slice = self.initial_slice();
        let mut out = Vec::with_capacity(self.events.len() + 1);
        out.push(slice.clone());
        for e in &self.events {
            slice.resolve(&e.arcs[0], &e.arcs[1]).map_err(|d| (e.rank, d))?;
            out.push(slice.clone());
        }
        Ok(out)
    }

    /// The slice immediately after the event at position `rank` (cyclically);
    /// rank 0 and rank h both give the initial slice.
    pub fn slice_at(&self, rank: i64) -> Result<Slice> {
        self.ensure_valid()?;
        if rank < 0 {
            return Err(Error::Range { rank });
        }
        let h = self.events.len() as i64;
        let idx = if h == 0 { 0 } else { rank.rem_euclid(h) as usize };
        let slices = self.replay().map_err(|(r, d)| Error::Internal(format!("replay failed at {r}: {d}")))?;
        Ok(slices[idx].clone())
    }

    pub fn singularity_counts(&self) -> Result<SingularityCounts> {
        self.ensure_valid()?;
        Ok(self.raw_counts())
    }

    pub(crate) fn raw_counts(&self) -> SingularityCounts {
        let mut c = SingularityCounts::default();
        for s in self.elliptic.values() {
            match s {
                Sign::Positive => c.e_pos += 1,
                Sign::Negative => c.e_neg += 1,
            }
        }
        for e in &self.events {
            match e.sign {
                Sign::Positive => c.h_pos += 1,
                Sign::Negative => c.h_neg += 1,
            }
        }
        c
    }

    /// Same movie with ranks renumbered `1..=h` in order.
    pub fn renumbered(&self) -> FoliationMovie {
        let mut m = self.clone();
        for (i, e) in m.events.iter_mut().enumerate() {
            e.rank = i as u32 + 1;
        }
        m
    }
}

fn validate(m: &FoliationMovie) -> ValidationReport {
    let mut rep = ValidationReport::default();

    if m.genus != 0 {
        rep.push(
            Invariant::UnsupportedGenus,
            Location::Movie,
            format!("unsupported genus {}: only the sphere is handled", m.genus),
        );
    }

    // Arc endpoints and the perfect matching of the initial slice.
    let mut incidence: BTreeMap<&EllipticId, usize> = m.elliptic.keys().map(|k| (k, 0)).collect();
    let mut structural = true;
    for a in m.arcs.values() {
        for (end, want) in [(&a.pos_end, Sign::Positive), (&a.neg_end, Sign::Negative)] {
            match m.elliptic.get(end) {
                None => {
                    structural = false;
                    rep.push(
                        Invariant::DanglingReference,
                        Location::Arc(a.id.clone()),
                        format!("endpoint {end} is not a declared elliptic point"),
                    );
                }
                Some(&s) if s != want => {
                    structural = false;
                    rep.push(
                        Invariant::EndpointSign,
                        Location::Arc(a.id.clone()),
                        format!("endpoint {end} has sign {s}, expected {want}"),
                    );
                }
                Some(_) => *incidence.get_mut(end).unwrap() += 1,
            }
        }
    }
    for (id, &n) in &incidence {
        if n != 1 {
            structural = false;
            rep.push(
                Invariant::PerfectMatching,
                Location::Elliptic((*id).clone()),
                format!("{n} arcs meet this point in the initial slice, expected 1"),
            );
        }
    }

    for (id, ends) in &m.rotation {
        if !m.elliptic.contains_key(id) {
            rep.push(
                Invariant::DanglingReference,
                Location::Elliptic(id.clone()),
                "rotation declared for an unknown elliptic point",
            );
            continue;
        }
        let expected: Vec<ArcId> = m
            .arcs
            .values()
            .filter(|a| a.pos_end == *id || a.neg_end == *id)
            .map(|a| a.id.clone())
            .collect();
        if *ends != expected {
            rep.push(
                Invariant::Rotation,
                Location::Elliptic(id.clone()),
                format!("rotation lists {ends:?}, incident arcs are {expected:?}"),
            );
        }
    }
    for id in m.elliptic.keys() {
        if !m.rotation.contains_key(id) {
            rep.push(Invariant::Rotation, Location::Elliptic(id.clone()), "missing rotation");
        }
    }

    let counts = m.raw_counts();
    if counts.e_pos != counts.e_neg {
        rep.push(
            Invariant::EllipticBalance,
            Location::Movie,
            format!("e+={} but e-={}", counts.e_pos, counts.e_neg),
        );
    }

    let mut ranks = BTreeSet::new();
    for e in &m.events {
        if !ranks.insert(e.rank) {
            rep.push(Invariant::DuplicateRank, Location::Event(e.rank), "two events share this π-rank");
        }
        for a in &e.arcs {
            if !m.arcs.contains_key(a) {
                structural = false;
                rep.push(
                    Invariant::DanglingReference,
                    Location::Event(e.rank),
                    format!("arc {a} does not exist"),
                );
            }
        }
        if e.arcs[0] == e.arcs[1] {
            structural = false;
            rep.push(
                Invariant::SelfSaddle,
                Location::Event(e.rank),
                format!("saddle joins arc {} to itself (would close a circle leaf)", e.arcs[0]),
            );
        }
        if e.resolution != Resolution::Cross {
            rep.push(
                Invariant::Resolution,
                Location::Event(e.rank),
                "resolution 2 pairs like-signed elliptic points",
            );
        }
    }

    if !structural {
        return rep;
    }

    let slices = match m.replay() {
        Ok(s) => s,
        Err((rank, d)) => {
            rep.push(Invariant::DanglingReference, Location::Event(rank), d);
            return rep;
        }
    };

    for (e, pre) in m.events.iter().zip(&slices) {
        let emb = pre.embedding();
        let sides = [(&e.arcs[0], e.corridor[0]), (&e.arcs[1], e.corridor[1])];
        if !emb.share_region(sides[0], sides[1]) {
            rep.push(
                Invariant::Corridor,
                Location::Event(e.rank),
                "corridor sides do not face a common region of the pre-event slice",
            );
        } else if e.corridor != [Side::Left, Side::Left] {
            rep.push(
                Invariant::Corridor,
                Location::Event(e.rank),
                format!(
                    "corridor {}{},{}{} is not on the advancing (left) side of both arcs",
                    e.arcs[0],
                    side_char(e.corridor[0]),
                    e.arcs[1],
                    side_char(e.corridor[1])
                ),
            );
        }
    }

    let last = slices.last().unwrap();
    if *last != slices[0] {
        let moved: Vec<String> = last
            .arcs()
            .filter(|a| slices[0].arc(&a.id).map(|b| b.neg_end != a.neg_end).unwrap_or(true))
            .map(|a| format!("{}→{}", a.id, a.neg_end))
            .collect();
        rep.push(
            Invariant::CyclicClosure,
            Location::Movie,
            format!("replay does not return to the initial slice ({})", moved.join(", ")),
        );
        return rep;
    }

    let frame = Frame::from_movie(m);
    if !frame.is_connected() {
        rep.push(
            Invariant::Connectivity,
            Location::Movie,
            "the encoded surface has more than one component",
        );
        return rep;
    }

    if counts.index_sum() != 2 {
        rep.push(
            Invariant::PoincareHopf,
            Location::Movie,
            format!("(e+ + e-) - (h+ + h-) = {}, expected 2", counts.index_sum()),
        );
    }
    if frame.k() > 1 {
        let map = SeparatrixMap::from_frame(&frame);
        let chi = map.euler_characteristic();
        if chi != 2 {
            rep.push(
                Invariant::Genus,
                Location::Movie,
                format!("face trace of the separatrix map gives V-E+F = {chi}, genus {}", (2 - chi) / 2),
            );
        }
    }
    rep
}

fn side_char(s: Side) -> char {
    match s {
        Side::Left => 'L',
        Side::Right => 'R',
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ep(id: &str, sign: Sign) -> EllipticPoint {
        EllipticPoint { id: id.into(), sign }
    }

    pub(crate) fn arc(id: &str, p: &str, n: &str) -> Arc {
        Arc {
            id: id.into(),
            pos_end: p.into(),
            neg_end: n.into(),
        }
    }

    fn trivial() -> FoliationMovie {
        FoliationMovie::from_parts(
            [ep("p1", Sign::Positive), ep("n1", Sign::Negative)],
            [arc("a1", "p1", "n1")],
            [],
        )
    }

    fn k2(s1: Sign, s2: Sign) -> FoliationMovie {
        FoliationMovie::from_parts(
            [
                ep("p1", Sign::Positive),
                ep("p2", Sign::Positive),
                ep("n1", Sign::Negative),
                ep("n2", Sign::Negative),
            ],
            [arc("a1", "p1", "n1"), arc("a2", "p2", "n2")],
            [
                SaddleEvent::new(1, s1, "a1".into(), "a2".into()),
                SaddleEvent::new(2, s2, "a1".into(), "a2".into()),
            ],
        )
    }

    #[test]
    fn trivial_movie_is_valid() {
        let m = trivial();
        assert!(m.validate().ok(), "{}", m.validate());
        let c = m.singularity_counts().unwrap();
        assert_eq!((c.e_pos, c.e_neg, c.h_pos, c.h_neg), (1, 1, 0, 0));
        assert_eq!(c.index_sum(), 2);
    }

    #[test]
    fn k2_movie_is_valid_and_slices_repair() {
        let m = k2(Sign::Positive, Sign::Negative);
        assert!(m.validate().ok(), "{}", m.validate());
        let s = m.slice_at(1).unwrap();
        assert_eq!(s.arc(&"a1".into()).unwrap().neg_end, "n2".into());
        assert_eq!(s.arc(&"a2".into()).unwrap().neg_end, "n1".into());
        assert_eq!(m.slice_at(2).unwrap(), m.initial_slice());
        assert_eq!(m.slice_at(3).unwrap(), m.slice_at(1).unwrap());
        assert!(matches!(m.slice_at(-1), Err(Error::Range { .. })));
    }

    #[test]
    fn duplicate_rank_is_reported() {
        let mut m = k2(Sign::Positive, Sign::Negative);
        m.events[1].rank = 1;
        let rep = m.validate();
        assert!(rep.has(Invariant::DuplicateRank), "{rep}");
    }

    #[test]
    fn dangling_references_are_violations_not_panics() {
        let mut m = k2(Sign::Positive, Sign::Negative);
        m.events[0].arcs[1] = "zz".into();
        m.arcs.get_mut(&ArcId::from("a2")).unwrap().neg_end = "nowhere".into();
        let rep = m.validate();
        assert!(rep.has(Invariant::DanglingReference));
        assert!(!rep.ok());
    }

    #[test]
    fn self_saddle_and_bad_corridor() {
        let mut m = k2(Sign::Positive, Sign::Negative);
        m.events[0].corridor = [Side::Left, Side::Right];
        assert!(m.validate().has(Invariant::Corridor));
        m.events[0].arcs = ["a1".into(), "a1".into()];
        assert!(m.validate().has(Invariant::SelfSaddle));
    }

    #[test]
    fn parallel_resolution_rejected() {
        let mut m = k2(Sign::Positive, Sign::Negative);
        m.events[1].resolution = Resolution::Parallel;
        assert!(m.validate().has(Invariant::Resolution));
    }

    #[test]
    fn open_movie_fails_closure() {
        let mut m = k2(Sign::Positive, Sign::Negative);
        m.events.pop();
        let rep = m.validate();
        assert!(rep.has(Invariant::CyclicClosure), "{rep}");
    }

    #[test]
    fn genus_one_rejected() {
        let mut m = trivial();
        m.genus = 1;
        assert!(m.validate().has(Invariant::UnsupportedGenus));
    }

    #[test]
    fn torus_movie_fails_face_trace() {
        // four saddles between the same two arcs: connected, closes, χ = 0
        let mut m = k2(Sign::Positive, Sign::Positive);
        m.events.push(SaddleEvent::new(3, Sign::Negative, "a1".into(), "a2".into()));
        m.events.push(SaddleEvent::new(4, Sign::Negative, "a1".into(), "a2".into()));
        let rep = m.validate();
        assert!(rep.has(Invariant::Genus), "{rep}");
        assert!(rep.has(Invariant::PoincareHopf));
    }

    #[test]
    fn two_spheres_are_disconnected() {
        let m = FoliationMovie::from_parts(
            [
                ep("p1", Sign::Positive),
                ep("p2", Sign::Positive),
                ep("n1", Sign::Negative),
                ep("n2", Sign::Negative),
            ],
            [arc("a1", "p1", "n1"), arc("a2", "p2", "n2")],
            [],
        );
        assert!(m.validate().has(Invariant::Connectivity));
    }

    #[test]
    fn unbalanced_and_bad_rotation() {
        let mut m = trivial();
        m.elliptic.insert("p9".into(), Sign::Positive);
        let rep = m.validate();
        assert!(rep.has(Invariant::EllipticBalance));
        assert!(rep.has(Invariant::PerfectMatching));
        assert!(rep.has(Invariant::Rotation));
    }

    #[test]
    fn event_arc_order_is_normalized() {
        let a = FoliationMovie::from_parts(
            [ep("p1", Sign::Positive), ep("n1", Sign::Negative)],
            [arc("a1", "p1", "n1")],
            [SaddleEvent::new(1, Sign::Positive, "b".into(), "a".into())],
        );
        assert_eq!(a.events[0].arcs, [ArcId::from("a"), ArcId::from("b")]);
    }
}
