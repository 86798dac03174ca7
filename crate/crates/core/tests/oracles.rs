//! Independent brute-force oracles checked against the library.

use std::collections::BTreeMap;

use folcalc::realization::enumerate_canonical;
use folcalc::*;

/// Lexicographically least event list over all rotations and all
/// relabellings of positive points, by plain permutation search.
fn brute_key(m: &FoliationMovie) -> (usize, Vec<(usize, usize, Sign)>) {
    let pos: Vec<EllipticId> = m.positive_points().cloned().collect();
    let k = pos.len();
    let idx = |arc: &ArcId| pos.iter().position(|p| *p == m.arcs[arc].pos_end).unwrap();
    let events: Vec<(usize, usize, Sign)> = m
        .events
        .iter()
        .map(|e| (idx(&e.arcs[0]), idx(&e.arcs[1]), e.sign))
        .collect();
    let h = events.len();
    let mut best: Option<Vec<(usize, usize, Sign)>> = None;
    for r in 0..h.max(1) {
        let rotated: Vec<_> = events[r.min(h)..].iter().chain(&events[..r.min(h)]).cloned().collect();
        for perm in permutations(k) {
            let key: Vec<_> = rotated
                .iter()
                .map(|&(a, b, s)| (perm[a].min(perm[b]), perm[a].max(perm[b]), s))
                .collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    (k, best.unwrap_or_default())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..k {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Rename every id with a fixed scrambling and shift all ranks.
fn relabel(m: &FoliationMovie, salt: usize) -> FoliationMovie {
    let pts: Vec<EllipticId> = m.elliptic.keys().cloned().collect();
    let arcs: Vec<ArcId> = m.arcs.keys().cloned().collect();
    let pmap: BTreeMap<EllipticId, EllipticId> = pts
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), format!("v{}", (i * 7 + salt) % pts.len() + 100).into()))
        .collect();
    let amap: BTreeMap<ArcId, ArcId> = arcs
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), format!("e{}", (i * 5 + salt) % arcs.len()).into()))
        .collect();
    let h = m.events.len() as u32;
    FoliationMovie::from_parts(
        m.elliptic_points().map(|e| EllipticPoint { id: pmap[&e.id].clone(), sign: e.sign }),
        m.arcs.values().map(|a| Arc {
            id: amap[&a.id].clone(),
            pos_end: pmap[&a.pos_end].clone(),
            neg_end: pmap[&a.neg_end].clone(),
        }),
        m.events.iter().map(|e| {
            SaddleEvent::new(
                (e.rank + salt as u32) % h.max(1) * 10 + 10,
                e.sign,
                amap[&e.arcs[0]].clone(),
                amap[&e.arcs[1]].clone(),
            )
        }),
    )
}

fn corpus(k_max: usize) -> Vec<FoliationMovie> {
    enumerate_movies(k_max).unwrap()
}

#[test]
fn census_counts_are_frozen() {
    let all = enumerate_canonical(4, 4).unwrap();
    let per_k: Vec<usize> = (1..=4).map(|k| all.iter().filter(|c| c.k == k).count()).collect();
    assert_eq!(per_k, vec![1, 3, 20, 1320]);
    let trees: Vec<usize> = (1..=4)
        .map(|k| {
            all.iter()
                .filter(|c| c.k == k && is_tree(&build_gpp(&c.to_movie()).unwrap()))
                .count()
        })
        .collect();
    assert_eq!(trees, vec![1, 1, 6, 216]);
}

#[test]
fn enumeration_is_guarded_and_sorted() {
    assert!(matches!(enumerate_movies(5), Err(Error::Guard { k_max: 5, guard: 4 })));
    let all = enumerate_canonical(3, 4).unwrap();
    assert!(all.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(enumerate_movies(1).unwrap(), vec![base_movie()]);
}

#[test]
fn every_enumerated_movie_validates_with_expected_counts() {
    for m in corpus(3) {
        assert!(m.validate().ok(), "{}", m.validate());
        let c = m.singularity_counts().unwrap();
        let k = c.e_pos;
        assert_eq!(c.h_pos + c.h_neg, 2 * k - 2);
        if k == 2 && is_tree(&build_gpp(&m).unwrap()) {
            assert_eq!((c.e_pos, c.e_neg, c.h_pos, c.h_neg), (2, 2, 1, 1));
        }
        if k == 3 && is_tree(&build_gpp(&m).unwrap()) {
            assert_eq!((c.e_neg, c.h_pos, c.h_neg), (3, 2, 2));
        }
    }
}

#[test]
fn canonical_form_agrees_with_permutation_search() {
    let movies = corpus(3);
    let keys: Vec<_> = movies.iter().map(brute_key).collect();
    for (i, a) in movies.iter().enumerate() {
        for (j, b) in movies.iter().enumerate() {
            assert_eq!(is_isomorphic(a, b).unwrap(), keys[i] == keys[j], "{i} vs {j}");
        }
        for salt in 0..3 {
            let r = relabel(a, salt);
            assert!(r.validate().ok(), "{}", r.validate());
            assert!(is_isomorphic(a, &r).unwrap());
            assert_eq!(brute_key(&r), keys[i]);
        }
    }
}

#[test]
fn isomorphism_is_an_equivalence_relation() {
    let mut movies = corpus(3);
    let copies: Vec<_> = movies.iter().map(|m| relabel(m, 1)).collect();
    movies.extend(copies);
    let n = movies.len();
    let rel: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| is_isomorphic(&movies[i], &movies[j]).unwrap()).collect())
        .collect();
    for i in 0..n {
        assert!(rel[i][i]);
        for j in 0..n {
            assert_eq!(rel[i][j], rel[j][i]);
            for l in 0..n {
                if rel[i][j] && rel[j][l] {
                    assert!(rel[i][l]);
                }
            }
        }
    }
}

#[test]
fn sign_flip_breaks_isomorphism() {
    for m in corpus(3).into_iter().filter(|m| !m.events.is_empty()) {
        let mut f = m.clone();
        f.events[0].sign = f.events[0].sign.flip();
        assert!(!is_isomorphic(&m, &f).unwrap());
    }
}

#[test]
fn slices_follow_a_naive_replay() {
    for m in corpus(3) {
        let h = m.events.len();
        let mut partner: BTreeMap<ArcId, EllipticId> =
            m.arcs.values().map(|a| (a.id.clone(), a.neg_end.clone())).collect();
        for r in 0..=h {
            let s = m.slice_at(r as i64).unwrap();
            for a in s.arcs() {
                assert_eq!(a.neg_end, partner[&a.id]);
            }
            assert_eq!(s, m.slice_at((r + h) as i64).unwrap());
            if r < h {
                let e = &m.events[r];
                let (x, y) = (partner[&e.arcs[0]].clone(), partner[&e.arcs[1]].clone());
                partner.insert(e.arcs[0].clone(), y);
                partner.insert(e.arcs[1].clone(), x);
            }
        }
    }
}

#[test]
fn k2_corpus_matches_hand_counts() {
    let k2: Vec<_> = enumerate_canonical(2, 4).unwrap().into_iter().filter(|c| c.k == 2).collect();
    let shown: Vec<String> = k2.iter().map(|c| c.to_string()).collect();
    assert_eq!(shown, vec!["k=2 +12 +12", "k=2 +12 -12", "k=2 -12 -12"]);
    let circles: Vec<usize> = k2.iter().map(|c| dividing_circle_count(&c.to_movie()).unwrap()).collect();
    // parallel edges, a path, two isolated vertices
    assert_eq!(circles, vec![2, 1, 2]);
}

/// All movies one finger move away from `m`, with fresh ids.
fn finger_neighbours(m: &FoliationMovie) -> Vec<FoliationMovie> {
    let total = m.events.len() as u32 + 2;
    let mut out = Vec::new();
    for n in m.negative_points() {
        for open in 1..=total {
            for close in (1..=total).filter(|&c| c != open) {
                for sign in [Sign::Positive, Sign::Negative] {
                    let d = FingerData::fresh(m, n.clone(), open, close, sign);
                    if let Ok(x) = apply(&Move::FingerMove(d), m) {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn k2_tree_movie_is_one_finger_move_from_base() {
    let reach = finger_neighbours(&base_movie());
    assert!(!reach.is_empty());
    let tree = corpus(2).into_iter().find(|m| m.elliptic.len() == 4 && is_tree(&build_gpp(m).unwrap())).unwrap();
    assert!(reach.iter().all(|x| is_isomorphic(x, &tree).unwrap()));
    let script = realize(&tree).unwrap();
    let steps = &script.script().unwrap().steps;
    assert_eq!(steps.iter().filter(|s| matches!(s, Move::FingerMove(_))).count(), 1);
}

#[test]
fn two_finger_moves_stay_among_k3_tree_movies() {
    let mut reached = std::collections::BTreeSet::new();
    for m in finger_neighbours(&base_movie()) {
        for x in finger_neighbours(&m) {
            reached.insert(canonical_form(&x).unwrap());
        }
    }
    let trees: std::collections::BTreeSet<_> = corpus(3)
        .iter()
        .filter(|m| m.elliptic.len() == 6 && is_tree(&build_gpp(m).unwrap()))
        .map(|m| canonical_form(m).unwrap())
        .collect();
    assert!(reached.is_subset(&trees));
    // the sixth class needs a change in foliation as well
    assert_eq!((reached.len(), trees.len()), (5, 6));
}
