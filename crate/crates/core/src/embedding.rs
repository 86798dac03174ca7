//! Face tracing for rotation systems.
//!
//! Two embedded graphs are traced here: the arc system of a single slice and
//! the separatrix graph of a whole movie. The latter is never stored; it is
//! rebuilt from the event list whenever a genus check is needed.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::foliation::{ArcId, EllipticId, FoliationMovie, Side, Slice};
use crate::frame::{Frame, UnionFind};

/// A rotation system given as darts: `alpha` pairs the two darts of each
/// edge, `sigma` sends a dart to the next one counterclockwise at its vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub vertex_count: usize,
    pub alpha: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl RotationSystem {
    /// Build from per-vertex ccw lists of edge indices; each edge must
    /// appear exactly twice overall (twice at one vertex for a loop).
    pub fn from_rotations(vertex_count: usize, edge_count: usize, rotations: &[Vec<usize>]) -> Self {
        let darts = 2 * edge_count;
        let mut alpha = vec![usize::MAX; darts];
        let mut sigma = vec![usize::MAX; darts];
        let mut seen = vec![0usize; edge_count];
        for rot in rotations {
            let ids: Vec<usize> = rot
                .iter()
                .map(|&e| {
                    let d = 2 * e + seen[e];
                    seen[e] += 1;
                    d
                })
                .collect();
            for (i, &d) in ids.iter().enumerate() {
                sigma[d] = ids[(i + 1) % ids.len()];
            }
        }
        for e in 0..edge_count {
            alpha[2 * e] = 2 * e + 1;
            alpha[2 * e + 1] = 2 * e;
        }
        RotationSystem {
            vertex_count,
            alpha,
            sigma,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    /// Boundary walks: orbits of `sigma ∘ alpha`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.alpha.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                walk.push(d);
                d = self.sigma[self.alpha[d]];
            }
            out.push(walk);
        }
        out
    }

    /// `V − E + F`, counting an isolated vertex as one face of its own.
    pub fn euler_characteristic(&self) -> i64 {
        let isolated = self.isolated_vertices();
        self.vertex_count as i64 - self.edge_count() as i64 + (self.faces().len() + isolated) as i64
    }

    fn isolated_vertices(&self) -> usize {
        self.vertex_count.saturating_sub(self.vertex_count_with_edges())
    }

    fn vertex_count_with_edges(&self) -> usize {
        let mut uf = UnionFind::new(self.alpha.len());
        for d in 0..self.sigma.len() {
            uf.union(d, self.sigma[d]);
        }
        uf.components()
    }
}

/// The arc system of one slice: every elliptic point has one arc-end, and
/// the single complementary region meets both sides of every arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceEmbedding {
    /// For each elliptic point, its one incident arc.
    pub rotation: BTreeMap<EllipticId, Vec<ArcId>>,
    /// One boundary walk per arc, left side then right side.
    pub walks: Vec<Vec<(ArcId, Side)>>,
    /// Regions of the sphere cut along the arcs.
    pub regions: usize,
}

impl SliceEmbedding {
    pub fn of(slice: &Slice) -> Self {
        let mut rotation: BTreeMap<EllipticId, Vec<ArcId>> = BTreeMap::new();
        let mut walks = Vec::new();
        for a in slice.arcs() {
            rotation.entry(a.pos_end.clone()).or_default().push(a.id.clone());
            rotation.entry(a.neg_end.clone()).or_default().push(a.id.clone());
            walks.push(vec![(a.id.clone(), Side::Left), (a.id.clone(), Side::Right)]);
        }
        let v = rotation.len() as i64;
        let e = slice.len() as i64;
        let components = (v - e).max(0);
        // Euler's formula for a planar graph: V − E + F = 1 + C.
        let regions = (1 + components - v + e).max(1) as usize;
        SliceEmbedding {
            rotation,
            walks,
            regions,
        }
    }

    pub fn region_of(&self, arc: &ArcId, _side: Side) -> Option<usize> {
        self.walks.iter().any(|w| w[0].0 == *arc).then_some(0)
    }

    /// Whether the two arc-sides face a common region.
    pub fn share_region(&self, x: (&ArcId, Side), y: (&ArcId, Side)) -> bool {
        match (self.region_of(x.0, x.1), self.region_of(y.0, y.1)) {
            (Some(r), Some(s)) => r == s,
            _ => false,
        }
    }
}

/// The separatrix graph of a movie: elliptic and hyperbolic points as
/// vertices, one edge per separatrix.
///
/// At a hyperbolic point merging `(p₁,n₁)` and `(p₂,n₂)` the separatrices
/// run to `p₁, n₁, p₂, n₂` in counterclockwise order. At a positive elliptic
/// point they are ordered by increasing π, at a negative one by decreasing π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatrixMap {
    pub system: RotationSystem,
    pub elliptic_count: usize,
    pub hyperbolic_count: usize,
}

impl SeparatrixMap {
    pub fn of(movie: &FoliationMovie) -> Result<Self> {
        movie.ensure_valid()?;
        Ok(Self::from_frame(&Frame::from_movie(movie)))
    }

    pub(crate) fn from_frame(f: &Frame) -> Self {
        let k = f.k();
        let h = f.h();
        // vertices: positives 0..k, negatives k..2k, saddles 2k..2k+h
        let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); 2 * k + h];
        let mut s = f.initial.clone();
        for (t, e) in f.events.iter().enumerate() {
            let base = 4 * t;
            let ends = [e.a, k + s[e.a], e.b, k + s[e.b]];
            rotations[2 * k + t] = (base..base + 4).collect();
            for (j, &v) in ends.iter().enumerate() {
                rotations[v].push(base + j);
            }
            s.swap(e.a, e.b);
        }
        for r in rotations[k..2 * k].iter_mut() {
            r.reverse();
        }
        SeparatrixMap {
            system: RotationSystem::from_rotations(2 * k + h, 4 * h, &rotations),
            elliptic_count: 2 * k,
            hyperbolic_count: h,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.system.euler_characteristic()
    }

    pub fn face_count(&self) -> usize {
        self.system.faces().len()
    }
}
