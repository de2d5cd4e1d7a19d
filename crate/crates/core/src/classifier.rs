//! Bounded enumeration of reduced Gram data of minimal block-complete collections.
//!
//! A candidate is the cyclic block data `(alpha_i, r_i, chi_{i,i+1})`. Candidates
//! are produced from the finiteness arguments for three and four blocks, then
//! certified by rebuilding the polygon and testing every invariant on it.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class::{euler_form, NumClass};
use crate::collection::{cyclic_min, serre_matrix};
use crate::error::{Error, Result};
use crate::fixtures::{self, block_key, Label};
use crate::linalg::smith_invariants;
use crate::polygon::{omega, Point, Polygon};
use crate::quiver::Quiver;
use crate::surface::SurfaceKind;
use crate::Q;

fn q(n: i64) -> Q {
    Q::from_integer(n as i128)
}

fn floor_q(x: Q) -> i128 {
    x.floor().to_integer()
}

fn ceil_q(x: Q) -> i128 {
    x.ceil().to_integer()
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// All tuples of positive integers `k` with `sum_i a_i / k_i = target`.
///
/// The largest remaining term is at least the remaining target divided by the
/// number of remaining terms, which bounds its denominator; recursing with that
/// term as a cap on the others keeps every branch finite.
pub fn bounded_reciprocal_solve(a: &[Q], target: Q) -> Vec<Vec<i128>> {
    fn rec(a: &[Q], remaining: &[usize], target: Q, cap: Option<Q>, partial: &mut [i128], out: &mut BTreeSet<Vec<i128>>) {
        if remaining.is_empty() {
            if target.is_zero() {
                out.insert(partial.to_vec());
            }
            return;
        }
        if !target.is_positive() {
            return;
        }
        let m = remaining.len() as i128;
        for (pos, &j) in remaining.iter().enumerate() {
            let upper_term = cap.map_or(target, |c| c.min(target));
            let mut lo = ceil_q(a[j] / upper_term).max(1);
            if m > 1 && Q::from_integer(lo) * target == a[j] {
                lo += 1;
            }
            let hi = floor_q(Q::from_integer(m) * a[j] / target);
            let rest: Vec<usize> = remaining.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &x)| x).collect();
            for k in lo..=hi {
                let t = a[j] / Q::from_integer(k);
                partial[j] = k;
                rec(a, &rest, target - t, Some(t), partial, out);
            }
            partial[j] = 0;
        }
    }
    if a.is_empty() || a.iter().any(|x| !x.is_positive()) {
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    let idx: Vec<usize> = (0..a.len()).collect();
    rec(a, &idx, target, None, &mut vec![0; a.len()], &mut out);
    out.into_iter().collect()
}

/// Reduced block data of a candidate, rotated to its least cyclic form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Candidate {
    pub alphas: Vec<usize>,
    pub ranks: Vec<i64>,
    /// `chi_{i,i+1}`, the last entry wrapping to the first block twisted by `omega^{-1}`.
    pub chi_adjacent: Vec<i64>,
    pub reduced_gram: Vec<Vec<i64>>,
    pub reduced_quiver: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Label>,
    pub polygon: Polygon,
}

impl Candidate {
    pub fn key(&self) -> Vec<(usize, i64, i64)> {
        (0..self.alphas.len()).map(|i| (self.alphas[i], self.ranks[i], self.chi_adjacent[i])).collect()
    }
}

/// Output of an enumeration run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Enumeration {
    pub surface: SurfaceKind,
    pub blocks: usize,
    pub candidates: Vec<Candidate>,
    /// Raw solutions of the search equations before certification.
    pub raw_solutions: usize,
    /// Search bounds in force, marking those that are looser than or additional to the standard ones.
    pub bounds: Vec<String>,
}

/// Reduced Gram matrix from ranks and adjacent Euler characteristics:
/// `chi_ij / (r_i r_j) = sum_{k=i}^{j-1} chi_{k,k+1} / (r_k r_{k+1})`.
pub fn full_reduced_gram(ranks: &[i64], chis: &[i64]) -> Option<Vec<Vec<i64>>> {
    let k = ranks.len();
    let mut m = vec![vec![0i64; k]; k];
    for i in 0..k {
        m[i][i] = 1;
        let mut acc = Q::zero();
        for j in i + 1..k {
            acc += Q::new(chis[j - 1] as i128, (ranks[j - 1] * ranks[j]) as i128);
            let v = acc * q(ranks[i] * ranks[j]);
            if !v.is_integer() {
                return None;
            }
            m[i][j] = v.to_integer() as i64;
        }
    }
    Some(m)
}

/// Expand a reduced Gram matrix to the full Gram matrix, blocks being orthogonal.
pub fn expand_gram(alphas: &[usize], reduced: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let owner: Vec<usize> = alphas.iter().enumerate().flat_map(|(b, &a)| std::iter::repeat_n(b, a)).collect();
    let n = owner.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i == j, owner[i].cmp(&owner[j])) {
                    (true, _) => 1,
                    (false, std::cmp::Ordering::Less) => reduced[owner[i]][owner[j]],
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Basis of the lattice spanned by integer vectors, as `((a, b), (0, g))`.
fn lattice_basis(vs: &[(i128, i128)]) -> Option<((i128, i128), (i128, i128))> {
    let mut vs: Vec<(i128, i128)> = vs.iter().copied().filter(|v| *v != (0, 0)).collect();
    loop {
        let p = vs.iter().enumerate().filter(|(_, v)| v.0 != 0).min_by_key(|(_, v)| v.0.abs()).map(|(i, _)| i)?;
        let pivot = vs[p];
        let mut changed = false;
        for (i, v) in vs.iter_mut().enumerate() {
            if i != p && v.0 != 0 {
                let t = Integer::div_floor(&v.0, &pivot.0);
                *v = (v.0 - t * pivot.0, v.1 - t * pivot.1);
                changed = true;
            }
        }
        if !changed {
            let g = vs.iter().enumerate().filter(|(i, _)| *i != p).fold(0i128, |g, (_, v)| g.gcd(&v.1));
            return (g != 0).then_some((pivot, (0, g)));
        }
    }
}

/// Rewrite a rational polygon in a basis of the lattice spanned by its vertices,
/// which must have covolume one for `omega`.
fn normalize_lattice(vertices: &[Point]) -> Result<Polygon> {
    let den = vertices.iter().fold(1i128, |d, p| d.lcm(p.x.denom()).lcm(p.y.denom()));
    let ints: Vec<(i128, i128)> = vertices.iter().map(|p| ((p.x * den).to_integer(), (p.y * den).to_integer())).collect();
    let (a, b) = lattice_basis(&ints).ok_or_else(|| Error::Infeasible("vertices span a line".into()))?;
    let d = Q::from_integer(den);
    let (mut b1, mut b2) = (Point::int(a.0, a.1).scale(d.recip()), Point::int(b.0, b.1).scale(d.recip()));
    let mut det = omega(b1, b2);
    if det.is_negative() {
        std::mem::swap(&mut b1, &mut b2);
        det = -det;
    }
    if det != Q::one() {
        return Err(Error::Infeasible(format!("vertex lattice has covolume {det}")));
    }
    Ok(Polygon::new(vertices.iter().map(|&p| Point::new(omega(p, b2), omega(b1, p))).collect()))
}

/// Rebuild the polygon of a block collection from its reduced data.
///
/// Long edges satisfy `omega(M_i, M_{i+1}) = chi_{i,i+1} alpha_i alpha_{i+1} r_i r_{i+1}`
/// and corners `c_i` satisfy `omega(c_{i-1}, c_i) = alpha_i r_i^2`. Up to `SL_2`
/// we may take `M_0 = (1, 0)` and `M_1 = (0, S_01)`.
pub fn reconstruct_polygon(alphas: &[usize], ranks: &[i64], chis: &[i64]) -> Result<Polygon> {
    let k = alphas.len();
    if !(3..=4).contains(&k) || ranks.len() != k || chis.len() != k {
        return Err(Error::Infeasible(format!("reconstruction needs 3 or 4 blocks with matching data, got {k}")));
    }
    if alphas.contains(&0) || ranks.iter().any(|&r| r <= 0) || chis.iter().any(|&c| c <= 0) {
        return Err(Error::Infeasible("block data must be positive".into()));
    }
    let s: Vec<Q> =
        (0..k).map(|i| q(chis[i] * alphas[i] as i64 * alphas[(i + 1) % k] as i64 * ranks[i] * ranks[(i + 1) % k])).collect();
    let r: Vec<Q> = (0..k).map(|i| q(alphas[i] as i64 * ranks[i] * ranks[i])).collect();
    let mut m = vec![Point::int(1, 0), Point::new(Q::zero(), s[0])];
    if k == 4 {
        m.push(Point::new(-s[1] / s[0], s[3] - s[0]));
    }
    let closing = m.iter().fold(Point::default(), |acc, &v| acc - v);
    m.push(closing);
    for i in 0..k {
        if omega(m[i], m[(i + 1) % k]) != s[i] {
            return Err(Error::Infeasible(format!("edge cycle does not close with S_{i}{}", (i + 1) % k)));
        }
    }
    let (u, v) = (m[1], m[2]);
    let (e1, e2) = (r[1], r[2] - s[1]);
    let det = omega(u, v);
    // omega(t, u) = e1 and omega(t, v) = e2
    let t = Point::new((e2 * u.x - e1 * v.x) / det, (e2 * u.y - e1 * v.y) / det);
    let mut corners = vec![t];
    for i in 1..k {
        let prev = corners[i - 1];
        corners.push(prev + m[i]);
    }
    for i in 0..k {
        if omega(corners[(i + k - 1) % k], corners[i]) != r[i] {
            return Err(Error::Infeasible(format!("R_{i} is inconsistent")));
        }
    }
    let mut vertices = Vec::new();
    for i in 0..k {
        let start = corners[(i + k - 1) % k];
        for j in 1..=alphas[i] {
            vertices.push(start + Q::new(j as i128, alphas[i] as i128) * m[i]);
        }
    }
    normalize_lattice(&vertices)
}

/// Invariant factors of the symmetrised Euler form `chi(x, y) + chi(y, x)` on the
/// numerical Grothendieck group, computed on the basis of unit `(r, c1, chi)` triples.
pub fn surface_lattice_invariants(surface: SurfaceKind) -> Vec<i128> {
    let s = surface.surface();
    let n = s.picard_rank + 2;
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        NumClass { r: v[0], c1: v[1..n - 1].to_vec(), chi: v[n - 1] }
    };
    let b: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| euler_form(&unit(i), &unit(j), s).unwrap() + euler_form(&unit(j), &unit(i), s).unwrap()).collect()).collect();
    smith_invariants(&b)
}

/// Invariant factors of `M + M^T` for a Gram matrix `M`.
pub fn gram_lattice_invariants(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let b: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| m[i][j] + m[j][i]).collect()).collect();
    smith_invariants(&b)
}

/// Certify block data; returns the candidate in least cyclic rotation.
pub fn certify(surface: SurfaceKind, alphas: &[usize], ranks: &[i64], chis: &[i64]) -> Option<Candidate> {
    let k = alphas.len();
    let key: Vec<(usize, i64, i64)> = (0..k).map(|i| (alphas[i], ranks[i], chis[i])).collect();
    let key = cyclic_min(&key);
    let alphas: Vec<usize> = key.iter().map(|x| x.0).collect();
    let ranks: Vec<i64> = key.iter().map(|x| x.1).collect();
    let chis: Vec<i64> = key.iter().map(|x| x.2).collect();
    let k2 = q(surface.surface().k2);
    let wh = (0..k).fold(Q::zero(), |acc, i| acc + Q::new(chis[i] as i128, (ranks[i] * ranks[(i + 1) % k]) as i128));
    if wh != k2 || alphas.iter().sum::<usize>() as i64 + surface.surface().k2 != 12 {
        return None;
    }
    let reduced = full_reduced_gram(&ranks, &chis)?;
    let gram = expand_gram(&alphas, &reduced);
    if !serre_matrix(&gram).ok()?.passes() || gram_lattice_invariants(&gram) != surface_lattice_invariants(surface) {
        return None;
    }
    let polygon = reconstruct_polygon(&alphas, &ranks, &chis).ok()?;
    let fine_ranks: Vec<i64> = alphas.iter().zip(&ranks).flat_map(|(&a, &r)| std::iter::repeat_n(r, a)).collect();
    if !polygon.is_convex().ok()?
        || polygon.check_lattice_invariants(&fine_ranks).is_err()
        || !polygon.origin_in_forbidden()
        || !polygon.parallel_long_edges().is_empty()
    {
        return None;
    }
    let mut quiver = Quiver::of_polygon(&polygon).ok()?;
    quiver.blocks = Some(alphas.clone());
    let reduced_quiver = quiver.reduced()?.upper_entries();
    Some(Candidate { alphas, ranks, chi_adjacent: chis, reduced_gram: reduced, reduced_quiver, label: None, polygon })
}

/// Ordered compositions of `total` into `k` positive parts.
pub fn compositions(total: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (1..=total.saturating_sub(k - 1))
        .flat_map(|first| {
            compositions(total - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Largest `A = sum alpha_i r_i^2` compatible with a three-block minimal collection.
///
/// With `x_i = alpha_i r_i^2` the equations give `A^2 = K^2 x_0 x_1 x_2`, and
/// minimality gives `2 x_i <= A`. Writing `x` for the least `x_i` this forces
/// `K^2 x > 4`, `K^2 x <= 12` and `A <= 2 K^2 x^2 / (K^2 x - 4)`.
pub fn three_block_area_bound(k2: i64) -> i64 {
    (1..=12 / k2).filter(|&x| k2 * x > 4).map(|x| 2 * k2 * x * x / (k2 * x - 4)).max().unwrap_or(0)
}

fn three_block_raw(k2: i64, total_alpha: usize) -> Vec<(Vec<usize>, Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    for area in 1..=three_block_area_bound(k2) {
        let a = q(area);
        for sol in bounded_reciprocal_solve(&[a, a, a], q(k2)) {
            let (q0, q1, q2) = (sol[0], sol[1], sol[2]);
            if (q0 * q2) % q1 != 0 {
                continue;
            }
            let Some(x0) = isqrt(q0 * q2 / q1) else { continue };
            if x0 == 0 || q0 % x0 != 0 || q2 % x0 != 0 {
                continue;
            }
            let x = [x0, q0 / x0, q2 / x0];
            if x[1] * x[2] != q1 || x.iter().sum::<i128>() != area as i128 || x.iter().any(|&xi| 2 * xi > area as i128) {
                continue;
            }
            for alphas in compositions(total_alpha, 3) {
                let r: Option<Vec<i128>> =
                    (0..3).map(|i| (x[i] % alphas[i] as i128 == 0).then(|| isqrt(x[i] / alphas[i] as i128)).flatten()).collect();
                let Some(r) = r else { continue };
                let chis: Option<Vec<i64>> = (0..3)
                    .map(|i| {
                        let j = (i + 1) % 3;
                        let num = area as i128 * r[i] * r[j];
                        let den = x[i] * x[j];
                        (num % den == 0).then(|| (num / den) as i64)
                    })
                    .collect();
                if let Some(chis) = chis {
                    out.push((alphas, r.iter().map(|&v| v as i64).collect(), chis));
                }
            }
        }
    }
    out
}

/// Positive solutions of `chi_01 r_2 r_3 + chi_23 r_0 r_1 = rhs` with the minimality lower bounds.
fn solve_outer_chis(r: [i64; 4], alphas: &[usize], rhs: i64) -> Vec<(i64, i64)> {
    let (a0, a3) = (alphas[0] as i64, alphas[3] as i64);
    let lo01 = ceil_q(Q::new((2 * r[1]) as i128, (a0 * r[0]) as i128)).max(1) as i64;
    let lo23 = ceil_q(Q::new((2 * r[2]) as i128, (a3 * r[3]) as i128)).max(1) as i64;
    let mut out = Vec::new();
    let mut c01 = lo01;
    while c01 * r[2] * r[3] + lo23 * r[0] * r[1] <= rhs {
        let rest = rhs - c01 * r[2] * r[3];
        if rest % (r[0] * r[1]) == 0 {
            out.push((c01, rest / (r[0] * r[1])));
        }
        c01 += 1;
    }
    out
}

fn four_block_case1(k2: i64, alphas: &[usize]) -> Vec<(Vec<usize>, Vec<i64>, Vec<i64>)> {
    let a: Vec<i64> = alphas.iter().map(|&x| x as i64).collect();
    let chi_from = |p: i64| isqrt(4 / p as i128).filter(|c| 4 % p == 0 && c * c * p as i128 == 4).map(|c| c as i64);
    let (Some(chi12), Some(chi30)) = (chi_from(a[1] * a[2]), chi_from(a[0] * a[3])) else { return Vec::new() };
    let mut out = Vec::new();
    // alpha_0 / r_1^2 + alpha_1 / r_0^2 = K^2 alpha_0 alpha_1 / 4
    for sol in bounded_reciprocal_solve(&[q(a[0]), q(a[1])], Q::new((k2 * a[0] * a[1]) as i128, 4)) {
        let (Some(r1), Some(r0)) = (isqrt(sol[0]), isqrt(sol[1])) else { continue };
        let r2sq = Q::from_integer(r1 * r1) * q(a[1]) / q(a[2]);
        let r3sq = Q::from_integer(r0 * r0) * q(a[0]) / q(a[3]);
        if !r2sq.is_integer() || !r3sq.is_integer() {
            continue;
        }
        let (Some(r2), Some(r3)) = (isqrt(r2sq.to_integer()), isqrt(r3sq.to_integer())) else { continue };
        let r = [r0 as i64, r1 as i64, r2 as i64, r3 as i64];
        let rhs = k2 * r[0] * r[1] * r[2] * r[3] - chi12 * r[0] * r[3] - chi30 * r[1] * r[2];
        for (c01, c23) in solve_outer_chis(r, alphas, rhs) {
            out.push((alphas.to_vec(), r.to_vec(), vec![c01, chi12, c23, chi30]));
        }
    }
    out
}

fn four_block_case2(k2: i64, alphas: &[usize]) -> Vec<(Vec<usize>, Vec<i64>, Vec<i64>)> {
    let a: Vec<i64> = alphas.iter().map(|&x| x as i64).collect();
    if a[1] * a[2] > 3 {
        return Vec::new();
    }
    let chi12 = 1;
    let mut out = Vec::new();
    let mut chi30 = 1i64;
    while chi30 * chi30 * a[0] * a[1] * a[2] * a[3] <= 16 {
        let p = chi30 * chi30 * a[0] * a[3];
        if p < 5 {
            chi30 += 1;
            continue;
        }
        let gamma = (Q::new(1, 2) - Q::new(2, p as i128)).recip();
        for r0 in 1..=22 * chi30 {
            for r3 in 1..=22 * chi30 / r0 {
                if 2 * r0 > chi30 * a[3] * r3 || 2 * r3 > chi30 * a[0] * r0 {
                    continue;
                }
                let budget = a[0] * r0 * r0 + a[3] * r3 * r3;
                let mut r1 = 1;
                while a[1] * r1 * r1 + a[2] <= budget {
                    let mut r2 = 1;
                    while a[1] * r1 * r1 + a[2] * r2 * r2 <= budget {
                        let base = Q::new(1, (r1 * r2) as i128) + Q::new(chi30 as i128, (r0 * r3) as i128);
                        let low = base + Q::new(2, (a[0] * r0 * r0) as i128) + Q::new(2, (a[3] * r3 * r3) as i128);
                        let high = base + gamma / q(a[0] * r0 * r0) + gamma / q(a[3] * r3 * r3);
                        if low <= q(k2) && q(k2) <= high {
                            let r = [r0, r1, r2, r3];
                            let rhs = k2 * r0 * r1 * r2 * r3 - chi12 * r0 * r3 - chi30 * r1 * r2;
                            for (c01, c23) in solve_outer_chis(r, alphas, rhs) {
                                let s01 = Q::new((c01 * a[0] * r0) as i128, r1 as i128);
                                let s23 = Q::new((c23 * a[3] * r3) as i128, r2 as i128);
                                if s01 <= gamma && s23 <= gamma {
                                    out.push((alphas.to_vec(), r.to_vec(), vec![c01, chi12, c23, chi30]));
                                }
                            }
                        }
                        r2 += 1;
                    }
                    r1 += 1;
                }
            }
        }
        chi30 += 1;
    }
    out
}

fn bounds_metadata(k2: i64, k: usize) -> Vec<String> {
    match k {
        3 => vec![
            format!("A = sum alpha_i r_i^2 <= {} (derived from 2 x_i <= A and A^2 = K^2 x_0 x_1 x_2; additional)", three_block_area_bound(k2)),
            "chi_{i,i+1} from chi / (r_i r_{i+1}) = A / (x_i x_{i+1})".into(),
        ],
        4 => vec![
            "case 1: chi_12^2 a_1 a_2 = 4, chi_30^2 a_0 a_3 = 4, Markov-type equation for r_0, r_1".into(),
            "case 2: chi_12 = 1, a_1 a_2 <= 3, chi_30^2 a_0 a_3 >= 5, chi_30^2 a_0 a_1 a_2 a_3 <= 16".into(),
            "case 2: r_0 r_3 <= 22 chi_30, r_0/r_3 <= chi_30 a_3/2, r_3/r_0 <= chi_30 a_0/2".into(),
            "case 2: a_1 r_1^2 + a_2 r_2^2 <= a_0 r_0^2 + a_3 r_3^2, both bounds on K^2, 2 <= S_01/(a_1 r_1^2), S_23/(a_2 r_2^2) <= gamma".into(),
            "monotone rank profile pruning not applied (looser)".into(),
        ],
        _ => vec![],
    }
}

/// Enumerate certified candidates with `k` blocks, labelled by matching table entries.
pub fn enumerate_minimal(surface: SurfaceKind, k: usize) -> Result<Enumeration> {
    let s = surface.surface();
    let total = (12 - s.k2) as usize;
    let raw: Vec<(Vec<usize>, Vec<i64>, Vec<i64>)> = match k {
        3 => three_block_raw(s.k2, total),
        4 => compositions(total, 4)
            .par_iter()
            .flat_map_iter(|al| {
                let mut v = four_block_case1(s.k2, al);
                v.extend(four_block_case2(s.k2, al));
                v
            })
            .collect(),
        _ => return Err(Error::Infeasible(format!("enumeration supports 3 or 4 blocks, got {k}"))),
    };
    let raw_solutions = raw.len();
    let certified: BTreeSet<Candidate> =
        raw.par_iter().filter_map(|(al, r, c)| certify(surface, al, r, c)).collect::<Vec<_>>().into_iter().collect();
    let table = fixtures::for_surface(surface);
    let mut seen = BTreeSet::new();
    let mut candidates = Vec::new();
    for mut c in certified {
        if !seen.insert(c.key()) {
            continue;
        }
        c.label = table.entries.iter().find_map(|e| {
            let col = e.collection(surface).ok()?;
            let (_, key) = block_key(&col).ok()?;
            (key == c.key()).then_some(e.label)
        });
        candidates.push(c);
    }
    Ok(Enumeration { surface, blocks: k, candidates, raw_solutions, bounds: bounds_metadata(s.k2, k) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_unit_fractions() {
        let one = Q::one();
        let sols = bounded_reciprocal_solve(&[one, one, one], one);
        let mut brute = Vec::new();
        for x in 1..=12i128 {
            for y in 1..=12i128 {
                for z in 1..=12i128 {
                    if Q::new(1, x) + Q::new(1, y) + Q::new(1, z) == one {
                        brute.push(vec![x, y, z]);
                    }
                }
            }
        }
        assert_eq!(sols, brute);
        assert_eq!(sols.len(), 10);
        assert!(bounded_reciprocal_solve(&[one], Q::new(2, 1)).is_empty());
    }

    #[test]
    fn area_bounds() {
        assert_eq!(three_block_area_bound(1), 50);
        assert_eq!(three_block_area_bound(9), 3);
        assert_eq!(three_block_area_bound(8), 4);
    }

    #[test]
    fn p2_reconstruction() {
        let p = reconstruct_polygon(&[1, 1, 1], &[1, 1, 1], &[3, 3, 3]).unwrap();
        assert!(p.unimodular_equivalent_up_to_shift(&Polygon::from_ints(&[(1, 8), (-1, -7), (0, -1)])));
        assert!(reconstruct_polygon(&[1, 1, 1], &[1, 1, 1], &[3, 0, 3]).is_err());
    }

    #[test]
    fn lattice_invariants_separate_degree_eight() {
        assert_eq!(surface_lattice_invariants(SurfaceKind::P1xP1), vec![2, 2, 2, 2]);
        assert_eq!(surface_lattice_invariants(SurfaceKind::X(1)), vec![1, 1, 4, 4]);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(5, 3).len(), 6);
        assert_eq!(compositions(2, 3).len(), 0);
    }
}
