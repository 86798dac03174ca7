use folcalc::random::{random_movie, scramble_moves};
use folcalc::*;
use proptest::prelude::*;

fn resign(m: &FoliationMovie, mask: u32) -> FoliationMovie {
    let mut out = m.clone();
    for (t, e) in out.events.iter_mut().enumerate() {
        if mask >> t & 1 == 1 {
            e.sign = e.sign.flip();
        }
    }
    out
}

fn counts(m: &FoliationMovie) -> [i64; 4] {
    let c = m.singularity_counts().unwrap();
    [c.e_pos as i64, c.e_neg as i64, c.h_pos as i64, c.h_neg as i64]
}

/// Inverse finger moves that collapse a two-event star of opposite signs.
fn unfinger_candidates(m: &FoliationMovie) -> Vec<Move> {
    let mut out = Vec::new();
    let slices: Vec<Slice> = (0..=m.events.len()).map(|r| m.slice_at(r as i64).unwrap()).collect();
    for a in m.arcs.values() {
        let star: Vec<usize> = (0..m.events.len()).filter(|&t| m.events[t].involves(&a.id)).collect();
        if star.len() != 2 || m.events[star[0]].sign == m.events[star[1]].sign {
            continue;
        }
        for (o, c) in [(star[0], star[1]), (star[1], star[0])] {
            let d = FingerData {
                target: slices[o + 1].arc(&a.id).unwrap().neg_end.clone(),
                new_pos: a.pos_end.clone(),
                new_neg: slices[o].arc(&a.id).unwrap().neg_end.clone(),
                new_arc: a.id.clone(),
                open_rank: o as u32 + 1,
                close_rank: c as u32 + 1,
                open_sign: m.events[o].sign,
            };
            let mv = Move::InverseFingerMove(d);
            if applicable(&mv, m).is_ok() {
                out.push(mv);
            }
        }
    }
    out
}

fn finger_candidates(m: &FoliationMovie) -> Vec<Move> {
    let total = m.events.len() as u32 + 2;
    let mut out = Vec::new();
    for n in m.negative_points() {
        for open in 1..=total {
            for close in (1..=total).filter(|&c| c != open) {
                out.push(Move::FingerMove(FingerData::fresh(m, n.clone(), open, close, Sign::Positive)));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn random_movies_are_valid_tree_movies(k in 1usize..=5, extra in 0usize..=4, seed in any::<u64>()) {
        let m = random_movie(k, extra, seed).unwrap();
        prop_assert!(m.validate().ok(), "{}", m.validate());
        let c = m.singularity_counts().unwrap();
        prop_assert_eq!(c.index_sum(), 2);
        prop_assert_eq!((c.e_pos, c.e_neg, c.h_pos, c.h_neg), (k, k, k - 1, k - 1));
        prop_assert!(is_tree(&build_gpp(&m).unwrap()));
        prop_assert_eq!(random_movie(k, extra, seed).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn signs_never_affect_validity(k in 1usize..=5, seed in any::<u64>(), mask in any::<u32>()) {
        let m = resign(&random_movie(k, 2, seed).unwrap(), mask);
        prop_assert!(m.validate().ok());
        let g = build_gpp(&m).unwrap();
        prop_assert_eq!(g.edges.len(), m.singularity_counts().unwrap().h_pos);
        let circles = dividing_circle_count(&m).unwrap();
        prop_assert_eq!(is_tree(&g), circles == 1);
        prop_assert_eq!(g.circles_face_trace(), g.circles_closed_form());
        let verdict = tightness_verdict(&m).unwrap();
        prop_assert_eq!(verdict == Verdict::TightCompatible, circles == 1);
    }

    #[test]
    fn slices_are_cyclic(k in 1usize..=5, seed in any::<u64>(), r in 0i64..40) {
        let m = random_movie(k, 1, seed).unwrap();
        let h = m.events.len() as i64;
        prop_assert_eq!(m.slice_at(r).unwrap(), m.slice_at(r + h).unwrap());
        if h > 0 {
            prop_assert_eq!(m.slice_at(r).unwrap(), m.slice_at(r % h).unwrap());
        }
    }

    #[test]
    fn moves_are_sound_and_invertible(k in 1usize..=4, seed in any::<u64>(), mask in any::<u32>(), pick in any::<usize>()) {
        let m = resign(&random_movie(k, 2, seed).unwrap(), mask);
        let mut candidates = scramble_moves(&m);
        candidates.extend(unfinger_candidates(&m));
        candidates.extend(finger_candidates(&m));
        let mv = candidates[pick % candidates.len()].clone();
        let out = match apply(&mv, &m) {
            Ok(out) => out,
            Err(Error::Inapplicable(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(out.validate().ok());
        let delta: Vec<i64> = counts(&out).iter().zip(counts(&m)).map(|(a, b)| a - b).collect();
        let want = match mv {
            Move::FingerMove(_) => vec![1, 1, 1, 1],
            Move::InverseFingerMove(_) => vec![-1, -1, -1, -1],
            _ => vec![0, 0, 0, 0],
        };
        prop_assert_eq!(delta, want);
        prop_assert_eq!(apply(&inverse(&mv), &out).unwrap(), m.clone());
        if let Move::ChangeInFoliation { .. } = mv {
            prop_assert_eq!(dividing_circle_count(&out).unwrap(), dividing_circle_count(&m).unwrap());
        }
    }

    #[test]
    fn swap_is_an_involution(k in 2usize..=5, seed in any::<u64>()) {
        let m = random_movie(k, 3, seed).unwrap();
        for mv in scramble_moves(&m).into_iter().filter(|mv| matches!(mv, Move::SwapPi { .. })) {
            let once = apply(&mv, &m).unwrap();
            prop_assert_eq!(apply(&mv, &once).unwrap(), m.clone());
        }
    }

    #[test]
    fn random_tree_movies_realize(k in 1usize..=5, extra in 0usize..=3, seed in any::<u64>()) {
        let m = random_movie(k, extra, seed).unwrap();
        let r = realize(&m).unwrap();
        let script = r.script().expect("tree movie");
        let h = m.events.len();
        prop_assert!(script.steps.len() <= 4 * (k + h) * (k + h));
        prop_assert!(verify_realization(&m, script).unwrap());
    }
}
