#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pezzo_core::fixtures;
use pezzo_core::mutation::{quiver_mutate, Side};
use pezzo_core::{Collection, SurfaceKind};

/// Total rank above which random quiver walks restart from their fixture.
pub const RANK_CAP: i64 = 400;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every bundled table collection with its surface.
pub fn fixture_collections() -> Vec<Collection> {
    fixtures::all()
        .iter()
        .flat_map(|t| t.entries.iter().map(move |e| e.collection(t.surface).expect("fixture decodes")))
        .collect()
}

pub fn fixtures_of(kind: SurfaceKind) -> Vec<Collection> {
    fixtures::for_surface(kind).entries.iter().map(|e| e.collection(kind).unwrap()).collect()
}

pub fn random_side<R: Rng>(rng: &mut R) -> Side {
    if rng.gen_bool(0.5) {
        Side::Left
    } else {
        Side::Right
    }
}

/// A very strong collection reached by a random quiver-mutation walk from `start`.
pub fn quiver_walk<R: Rng>(rng: &mut R, start: &Collection, steps: usize) -> Collection {
    let mut cur = start.clone();
    for _ in 0..steps {
        let i = rng.gen_range(0..cur.len());
        let next = quiver_mutate(&cur, i, random_side(rng)).expect("quiver mutation of a very strong collection").collection;
        cur = if next.total_rank() > RANK_CAP { start.clone() } else { next };
    }
    cur
}

/// A random quiver walk from a random fixture.
pub fn random_very_strong<R: Rng>(rng: &mut R, max_steps: usize) -> Collection {
    let all = fixture_collections();
    let start = all.choose(rng).unwrap().clone();
    let steps = rng.gen_range(0..=max_steps);
    quiver_walk(rng, &start, steps)
}

/// A random walk of raw braid moves that keeps every rank positive.
pub fn braid_walk<R: Rng>(rng: &mut R, start: &Collection, steps: usize) -> Collection {
    let n = start.len();
    let mut cur = start.clone();
    for _ in 0..steps {
        let i = rng.gen_range(1..=n);
        let next = if rng.gen_bool(0.5) { cur.braid_left(i) } else { cur.braid_right(i) }.unwrap();
        if next.check_positive_ranks().is_ok() && next.total_rank() <= RANK_CAP {
            cur = next;
        }
    }
    cur
}

/// Euler pairing on the plane for `(r, c1, chi)` triples.
pub fn p2_chi(e: (i64, i64, i64), f: (i64, i64, i64)) -> i64 {
    e.0 * f.2 + f.0 * e.2 - e.0 * f.0 - e.1 * f.1 - 3 * f.0 * e.1
}

/// Classes `F_i` with `chi(F_i, E_j) = delta_ij`, found by exhaustive search.
pub fn brute_force_duals(objects: &[(i64, i64, i64)]) -> Vec<(i64, i64, i64)> {
    let mut out = vec![None; objects.len()];
    for r in -4..=4 {
        for c in -20..=20 {
            for x in -60..=60 {
                for (i, slot) in out.iter_mut().enumerate() {
                    if objects.iter().enumerate().all(|(j, e)| p2_chi((r, c, x), *e) == i64::from(i == j)) {
                        assert!(slot.is_none(), "dual class is unique");
                        *slot = Some((r, c, x));
                    }
                }
            }
        }
    }
    out.into_iter().map(|f| f.expect("dual class found")).collect()
}

/// Polygon vertices as prefix sums of `r_i (r(F_i), deg F_i)` starting from `(0, -1)`.
pub fn plane_triangle_oracle(objects: &[(i64, i64, i64)], duals: &[(i64, i64, i64)]) -> Vec<(i128, i128)> {
    let mut acc = (0i128, -1i128);
    let mut out = Vec::new();
    for ((r, _, _), f) in objects.iter().zip(duals) {
        acc = (acc.0 + (*r as i128) * f.0 as i128, acc.1 + (*r as i128) * 3 * f.1 as i128);
        out.push(acc);
    }
    out
}
