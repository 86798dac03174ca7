//! The G₊₊ graph and the dividing-set circle count.

use std::collections::BTreeMap;
use std::fmt;

use crate::embedding::RotationSystem;
use crate::error::{Error, Result};
use crate::foliation::{EllipticId, FoliationMovie, Sign};
use crate::frame::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GppEdge {
    /// Rank of the positive event the edge comes from.
    pub rank: u32,
    pub ends: [EllipticId; 2],
}

impl GppEdge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GppGraph {
    pub vertices: Vec<EllipticId>,
    pub edges: Vec<GppEdge>,
    /// Edge indices around each vertex, counterclockwise; a loop appears twice.
    pub rotation: BTreeMap<EllipticId, Vec<usize>>,
}

impl GppGraph {
    /// A graph whose rotation lists edges in index order at every vertex.
    pub fn new(vertices: Vec<EllipticId>, edges: Vec<GppEdge>) -> Self {
        let mut rotation: BTreeMap<EllipticId, Vec<usize>> =
            vertices.iter().map(|v| (v.clone(), Vec::new())).collect();
        for (i, e) in edges.iter().enumerate() {
            for end in &e.ends {
                rotation.entry(end.clone()).or_default().push(i);
            }
        }
        GppGraph {
            vertices,
            edges,
            rotation,
        }
    }

    fn index(&self) -> BTreeMap<&EllipticId, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect()
    }

    pub fn component_count(&self) -> usize {
        let idx = self.index();
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(idx[&e.ends[0]], idx[&e.ends[1]]);
        }
        uf.components()
    }

    pub fn degree(&self, v: &EllipticId) -> usize {
        self.edges
            .iter()
            .map(|e| e.ends.iter().filter(|x| *x == v).count())
            .sum()
    }

    /// Σ over components of `E_c − V_c + 2`.
    pub fn circles_closed_form(&self) -> usize {
        let e = self.edges.len() as i64;
        let v = self.vertices.len() as i64;
        let c = self.component_count() as i64;
        (e - v + 2 * c) as usize
    }

    /// Boundary circles of a regular neighbourhood, traced face by face.
    pub fn circles_face_trace(&self) -> usize {
        let idx = self.index();
        let mut rotations = vec![Vec::new(); self.vertices.len()];
        for (v, rot) in &self.rotation {
            rotations[idx[v]] = rot.clone();
        }
        let rs = RotationSystem::from_rotations(self.vertices.len(), self.edges.len(), &rotations);
        let isolated = rotations.iter().filter(|r| r.is_empty()).count();
        rs.faces().len() + isolated
    }

    /// Why the graph is not a tree, or `None` if it is one.
    pub fn tree_obstruction(&self) -> Option<String> {
        if let Some(e) = self.edges.iter().find(|e| e.is_loop()) {
            return Some(format!("loop at {} from event {}", e.ends[0], e.rank));
        }
        let idx = self.index();
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            if !uf.union(idx[&e.ends[0]], idx[&e.ends[1]]) {
                return Some(format!(
                    "cycle closed by edge {}–{} from event {}",
                    e.ends[0], e.ends[1], e.rank
                ));
            }
        }
        if uf.components() > 1 {
            return Some(format!("G++ has {} components", uf.components()));
        }
        None
    }
}

pub fn build_gpp(movie: &FoliationMovie) -> Result<GppGraph> {
    movie.ensure_valid()?;
    let vertices: Vec<EllipticId> = movie.positive_points().cloned().collect();
    let mut edges = Vec::new();
    let mut rotation: BTreeMap<EllipticId, Vec<usize>> =
        vertices.iter().map(|v| (v.clone(), Vec::new())).collect();
    for e in movie.events.iter().filter(|e| e.sign == Sign::Positive) {
        let ends = [movie.arcs[&e.arcs[0]].pos_end.clone(), movie.arcs[&e.arcs[1]].pos_end.clone()];
        for end in &ends {
            rotation.get_mut(end).unwrap().push(edges.len());
        }
        edges.push(GppEdge { rank: e.rank, ends });
    }
    Ok(GppGraph {
        vertices,
        edges,
        rotation,
    })
}

/// Connected, loop-free and `|E| = |V| − 1`.
pub fn is_tree(g: &GppGraph) -> bool {
    g.edges.iter().all(|e| !e.is_loop())
        && g.edges.len() + 1 == g.vertices.len()
        && g.component_count() == 1
}

/// Circles of `∂N(G₊₊)`; both computations must agree.
pub fn dividing_circle_count(movie: &FoliationMovie) -> Result<usize> {
    let g = build_gpp(movie)?;
    checked_circles(&g)
}

fn checked_circles(g: &GppGraph) -> Result<usize> {
    let closed = g.circles_closed_form();
    let traced = g.circles_face_trace();
    if closed != traced {
        return Err(Error::Internal(format!(
            "dividing circles: closed form {closed} but face trace {traced}"
        )));
    }
    Ok(closed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    TightCompatible,
    OvertwistedWitness,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::TightCompatible => "tight-compatible",
            Verdict::OvertwistedWitness => "overtwisted-witness",
        })
    }
}

pub fn tightness_verdict(movie: &FoliationMovie) -> Result<Verdict> {
    let g = build_gpp(movie)?;
    let tree = is_tree(&g);
    let circles = checked_circles(&g)?;
    if tree != (circles == 1) {
        return Err(Error::Internal(format!(
            "tree={tree} disagrees with dividing circle count {circles}"
        )));
    }
    Ok(if tree {
        Verdict::TightCompatible
    } else {
        Verdict::OvertwistedWitness
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::base_movie;

    fn v(s: &str) -> EllipticId {
        s.into()
    }

    fn edge(rank: u32, a: &str, b: &str) -> GppEdge {
        GppEdge { rank, ends: [v(a), v(b)] }
    }

    #[test]
    fn trivial_movie_is_a_single_vertex() {
        let g = build_gpp(&base_movie()).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
        assert!(is_tree(&g));
        assert_eq!(dividing_circle_count(&base_movie()).unwrap(), 1);
        assert_eq!(tightness_verdict(&base_movie()).unwrap(), Verdict::TightCompatible);
    }

    #[test]
    fn loop_gives_two_circles() {
        let g = GppGraph::new(vec![v("p")], vec![edge(1, "p", "p")]);
        assert!(!is_tree(&g));
        assert_eq!(g.circles_face_trace(), 2);
        assert_eq!(g.circles_closed_form(), 2);
        assert!(g.tree_obstruction().unwrap().contains("loop"));
    }

    #[test]
    fn two_isolated_vertices_give_two_circles() {
        let g = GppGraph::new(vec![v("p"), v("q")], vec![]);
        assert_eq!(g.circles_face_trace(), 2);
        assert_eq!(g.circles_closed_form(), 2);
        assert!(!is_tree(&g));
    }

    #[test]
    fn paths_and_stars_are_trees_with_one_circle() {
        let path = GppGraph::new(vec![v("a"), v("b"), v("c")], vec![edge(1, "a", "b"), edge(2, "b", "c")]);
        assert!(is_tree(&path));
        assert_eq!(path.circles_face_trace(), 1);
        let star = GppGraph::new(
            vec![v("a"), v("b"), v("c"), v("d")],
            vec![edge(1, "a", "b"), edge(3, "a", "c"), edge(5, "a", "d")],
        );
        assert!(is_tree(&star));
        assert_eq!(star.circles_face_trace(), 1);
    }

    #[test]
    fn parallel_edges_are_not_a_tree() {
        let g = GppGraph::new(vec![v("a"), v("b")], vec![edge(1, "a", "b"), edge(2, "a", "b")]);
        assert!(!is_tree(&g));
        assert_eq!(g.circles_face_trace(), 2);
        assert!(g.tree_obstruction().unwrap().contains("cycle"));
    }
}
