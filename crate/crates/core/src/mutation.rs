//! Quiver mutations of very strong collections and reduction to minimal ones.

use serde::{Deserialize, Serialize};

use crate::collection::Collection;
use crate::error::{Error, Result};
use crate::polygon::{polygon_of, shear, Polygon};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Mutation(format!("unknown side `{s}`"))),
        }
    }
}

/// Result of a single quiver mutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutated {
    pub collection: Collection,
    /// New position of the mutated object.
    pub target: usize,
    /// `perm[old position] = new position` for every object.
    pub perm: Vec<usize>,
}

fn very_strong_or_false(c: &Collection) -> bool {
    c.is_very_strong().unwrap_or(false)
}

fn require_very_strong(c: &Collection) -> Result<()> {
    if c.is_very_strong()? {
        Ok(())
    } else {
        Err(Error::NotVeryStrong)
    }
}

/// Push the object at position 0 to the right until the collection is very strong
/// again and the object has passed one it maps to non-trivially.
fn right_from_start(c: &Collection) -> Result<(Collection, usize)> {
    let n = c.len();
    let s = c.s();
    let mu0 = c.objects[0].slope(s);
    let mut cur = c.clone();
    for j in 1..n {
        cur = cur.braid_right(j)?;
        if mu0 < c.objects[j].slope(s) && very_strong_or_false(&cur) {
            if c.chi(0, j) <= 0 {
                return Err(Error::Mutation(format!("chi(E_0, E_{j}) = {} with increasing slope", c.chi(0, j))));
            }
            return Ok((cur, j));
        }
    }
    Err(Error::Mutation("no very strong collection reached".into()))
}

/// Mirror of `right_from_start` for the object at position `n - 1`.
fn left_from_end(c: &Collection) -> Result<(Collection, usize)> {
    let n = c.len();
    let s = c.s();
    let mu = c.objects[n - 1].slope(s);
    let mut cur = c.clone();
    for k in (1..n).rev() {
        cur = cur.braid_left(k)?;
        if c.objects[k - 1].slope(s) < mu && very_strong_or_false(&cur) {
            if c.chi(k - 1, n - 1) <= 0 {
                return Err(Error::Mutation(format!("chi(E_{}, E_{}) <= 0 with increasing slope", k - 1, n - 1)));
            }
            return Ok((cur, k - 1));
        }
    }
    Err(Error::Mutation("no very strong collection reached".into()))
}

fn check_index(c: &Collection, i: usize) -> Result<()> {
    if i < c.len() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, len: c.len() })
    }
}

/// Right quiver mutation at object `i` via braid moves.
pub fn quiver_mutate_right(c: &Collection, i: usize) -> Result<Mutated> {
    check_index(c, i)?;
    require_very_strong(c)?;
    let n = c.len();
    let (m, j0) = right_from_start(&c.rotate_right_by(i))?;
    let collection = m.rotate_left_by(i);
    let perm = (0..n)
        .map(|p| {
            let rel = (p + n - i) % n;
            let new_rel = if rel == 0 { j0 } else if rel <= j0 { rel - 1 } else { rel };
            (new_rel + i) % n
        })
        .collect();
    Ok(Mutated { collection, target: (i + j0) % n, perm })
}

/// Left quiver mutation at object `i` via braid moves.
pub fn quiver_mutate_left(c: &Collection, i: usize) -> Result<Mutated> {
    check_index(c, i)?;
    require_very_strong(c)?;
    let n = c.len();
    let shift = (i + 1) % n;
    let (m, k0) = left_from_end(&c.rotate_right_by(shift))?;
    let collection = m.rotate_left_by(shift);
    let perm = (0..n)
        .map(|p| {
            let rel = (p + n - shift) % n;
            let new_rel = if rel == n - 1 { k0 } else if rel >= k0 { rel + 1 } else { rel };
            (new_rel + shift) % n
        })
        .collect();
    Ok(Mutated { collection, target: (k0 + shift) % n, perm })
}

pub fn quiver_mutate(c: &Collection, i: usize, side: Side) -> Result<Mutated> {
    match side {
        Side::Left => quiver_mutate_left(c, i),
        Side::Right => quiver_mutate_right(c, i),
    }
}

/// Polygon route of a quiver mutation at edge `i`. Returns the polygon and the
/// vertex index where the mutated edge ends up.
pub fn polygon_quiver_mutate(p: &Polygon, i: usize, side: Side) -> Result<(Polygon, usize)> {
    match side {
        Side::Right => p.quiver_mutate_right(i),
        Side::Left => {
            let n = p.len();
            let opp = p.opposing_vertices(i);
            let start = (i + n - 1) % n;
            let j = (0..n).map(|t| (start + n - t) % n).find(|k| opp.contains(k)).expect("opposing vertex");
            let (a, b) = (p.v(i as isize - 1), p.v(i as isize));
            let mut vertices = p.vertices.clone();
            let mut k = start;
            while k != j {
                vertices[k] = shear(a, b, p.v(k as isize - 1))?;
                k = (k + n - 1) % n;
            }
            Ok((Polygon::new(vertices), (j + 1) % n))
        }
    }
}

/// Block quiver mutation: mutate every object of block `b`, last to first for the
/// right side and first to last for the left side.
pub fn block_quiver_mutate(c: &Collection, b: usize, side: Side) -> Result<Collection> {
    let blocks = c.detect_blocks()?;
    if b >= blocks.count() {
        return Err(Error::IndexOutOfRange { index: b, len: blocks.count() });
    }
    let start = blocks.starts()[b];
    let mut members: Vec<usize> = (start..start + blocks.sizes[b]).collect();
    if side == Side::Right {
        members.reverse();
    }
    let mut cur = c.clone();
    for t in 0..members.len() {
        let m = quiver_mutate(&cur, members[t], side)?;
        for later in members.iter_mut().skip(t + 1) {
            *later = m.perm[*later];
        }
        cur = m.collection;
    }
    Ok(cur)
}

/// Minimal iff the origin lies in the forbidden region of the polygon.
pub fn is_minimal(c: &Collection) -> Result<bool> {
    require_very_strong(c)?;
    Ok(polygon_of(c)?.origin_in_forbidden())
}

/// Remove parallel long edges by block quiver mutations that do not increase the total rank.
pub fn reduce_to_block_complete(c: &Collection) -> Result<Collection> {
    require_very_strong(c)?;
    let (mut cur, _) = c.unbroken()?;
    loop {
        let p = polygon_of(&cur)?;
        let pairs = p.parallel_long_edges();
        if pairs.is_empty() {
            return Ok(cur);
        }
        let blocks = cur.detect_blocks()?;
        let long = p.long_edges();
        let rank = cur.total_rank();
        let mut best: Option<(i64, usize, Collection)> = None;
        for (a, b) in pairs {
            for le in [a, b] {
                let blk = blocks.block_of(long[le].edges[0]);
                let Ok(next) = block_quiver_mutate(&cur, blk, Side::Right) else { continue };
                let Ok((next, _)) = next.unbroken() else { continue };
                let r = next.total_rank();
                let nb = next.detect_blocks()?.count();
                if r <= rank && nb < blocks.count() && best.as_ref().is_none_or(|(br, bb, _)| (r, blk) < (*br, *bb)) {
                    best = Some((r, blk, next));
                }
            }
        }
        match best {
            Some((_, _, next)) => cur = next,
            None => return Err(Error::Mutation("no rank non-increasing block mutation removes a parallel pair".into())),
        }
    }
}

/// Alternate block-completion and rank-reducing right quiver mutations until minimal.
pub fn reduce_to_minimal(c: &Collection) -> Result<Collection> {
    let mut cur = reduce_to_block_complete(c)?;
    loop {
        let p = polygon_of(&cur)?;
        let Some(i) = (0..p.len()).find(|&i| p.area_delta_sign(i) < 0) else {
            return Ok(cur);
        };
        let next = quiver_mutate_right(&cur, i)?.collection;
        debug_assert!(next.total_rank() < cur.total_rank());
        cur = reduce_to_block_complete(&next)?;
    }
}

/// Apply quiver mutations named by the index of their first braid move, `1 <= s <= n`;
/// `s` refers to the object at position `s mod n`.
pub fn apply_mutation_sequence(c: &Collection, seq: &[usize], side: Side) -> Result<Collection> {
    let n = c.len();
    let mut cur = c.clone();
    for &s in seq {
        if s == 0 || s > n {
            return Err(Error::IndexOutOfRange { index: s, len: n });
        }
        cur = quiver_mutate(&cur, s % n, side)?.collection;
    }
    Ok(cur)
}
