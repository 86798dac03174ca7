//! Seeded generation of valid movies.
//!
//! Movies are grown from the trivial one by `k − 1` random finger moves and
//! then scrambled by `h_extra` random swaps and changes, so every output is
//! realizable by construction and has a tree G₊₊.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::foliation::{FoliationMovie, Sign};
use crate::moves::{apply, ChangeVariant, FingerData, Move};
use crate::realization::base_movie;

const ATTEMPTS: usize = 64;

pub fn random_movie(k: usize, h_extra: usize, seed: u64) -> Result<FoliationMovie> {
    if k == 0 {
        return Err(Error::Generation("k must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = base_movie();
    for _ in 1..k {
        m = random_finger(&m, &mut rng)?;
    }
    for _ in 0..h_extra {
        let moves = scramble_moves(&m);
        if let Some(mv) = moves.choose(&mut rng) {
            m = apply(mv, &m)?;
        }
    }
    Ok(m)
}

fn random_finger(m: &FoliationMovie, rng: &mut ChaCha8Rng) -> Result<FoliationMovie> {
    let negatives: Vec<_> = m.negative_points().cloned().collect();
    let total = m.events.len() as u32 + 2;
    for _ in 0..ATTEMPTS {
        let target = negatives.choose(rng).unwrap().clone();
        let open = rng.gen_range(1..=total);
        let close = loop {
            let c = rng.gen_range(1..=total);
            if c != open {
                break c;
            }
        };
        let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
        let d = FingerData::fresh(m, target, open, close, sign);
        if let Ok(out) = apply(&Move::FingerMove(d), m) {
            return Ok(out);
        }
    }
    Err(Error::Generation(format!("no legal finger move found in {ATTEMPTS} attempts")))
}

/// Every applicable swap and change of `m`, in a fixed order.
pub fn scramble_moves(m: &FoliationMovie) -> Vec<Move> {
    let h = m.events.len() as u32;
    let mut out = Vec::new();
    for r in 1..=h {
        let next = r % h + 1;
        if next != r {
            let mv = Move::SwapPi { r1: r, r2: next };
            if apply(&mv, m).is_ok() && !out.contains(&mv) {
                out.push(mv);
            }
        }
    }
    for first in 1..=h {
        for second in 1..=h {
            for variant in [ChangeVariant::Second, ChangeVariant::Third] {
                let mv = Move::ChangeInFoliation { first, second, variant };
                if first != second && apply(&mv, m).is_ok() {
                    out.push(mv);
                }
            }
        }
    }
    out
}
