//! Hille-Perling polygons: the Gale dual of the toric system of a collection.
//!
//! The plane is identified with pairs (rank, degree) restricted to an
//! anticanonical curve and `omega` is the determinant. Vertex `k` stores
//! `l_{k,k+1}`; edge `k` is `m_k = l_{k,k+1} - l_{k-1,k}`, so edge 0 runs from
//! the last vertex to the first. Polygons built from collections are
//! counter-clockwise: `omega(l_{k-1,k}, l_{k,k+1}) = r_k^2 > 0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::collection::Collection;
use crate::error::{Error, Result};
use crate::Q;

/// A point of the plane with rational coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Point {
        Point { x, y }
    }

    pub fn int(x: i128, y: i128) -> Point {
        Point { x: Q::from_integer(x), y: Q::from_integer(y) }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Integer coordinates, if integral.
    pub fn to_int(self) -> Option<(i128, i128)> {
        self.is_integral().then(|| (self.x.to_integer(), self.y.to_integer()))
    }

    pub fn scale(self, k: Q) -> Point {
        Point { x: self.x * k, y: self.y * k }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point { x: self.x + o.x, y: self.y + o.y }
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point { x: self.x - o.x, y: self.y - o.y }
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point { x: -self.x, y: -self.y }
    }
}

impl Mul<Point> for Q {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        p.scale(self)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn q_to_json(q: &Q) -> serde_json::Value {
    if q.is_integer() {
        serde_json::Value::from(q.to_integer() as i64)
    } else {
        serde_json::Value::from(q.to_string())
    }
}

fn q_from_json(v: &serde_json::Value) -> std::result::Result<Q, String> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(|i| Q::from_integer(i as i128)).ok_or("non-integer number".into()),
        serde_json::Value::String(s) => s.parse::<Q>().map_err(|e| e.to_string()),
        _ => Err("coordinate must be an integer or a fraction string".into()),
    }
}

/// Serde adapter for a single rational: integers as numbers, fractions as `"a/b"`.
pub mod q_serde {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        q_to_json(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let v: serde_json::Value = Deserialize::deserialize(d)?;
        q_from_json(&v).map_err(D::Error::custom)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [q_to_json(&self.x), q_to_json(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Point, D::Error> {
        let v: [serde_json::Value; 2] = Deserialize::deserialize(d)?;
        Ok(Point { x: q_from_json(&v[0]).map_err(D::Error::custom)?, y: q_from_json(&v[1]).map_err(D::Error::custom)? })
    }
}

/// The volume form `omega(a, b) = det(a, b)`.
pub fn omega(a: Point, b: Point) -> Q {
    a.x * b.y - a.y * b.x
}

/// The shear `A_{uv}`: the area preserving linear map sending `u` to `v`
/// that fixes the direction `v - u`.
pub fn shear(u: Point, v: Point, x: Point) -> Result<Point> {
    let d = v - u;
    let den = omega(u, d);
    if den.is_zero() {
        return Err(Error::Degenerate(format!("shear with omega({u}, {v}) = 0")));
    }
    Ok(x + (omega(x, d) / den) * d)
}

/// Rational toric system `T_{i,i+1} = s(E_{i+1}) - s(E_i)` with the wrap term
/// `s(E_0 ⊗ omega^{-1}) - s(E_{n-1})`.
pub fn toric_system(c: &Collection) -> Result<Vec<Vec<Q>>> {
    c.check_positive_ranks()?;
    let s = c.s();
    let n = c.len();
    let sv = |o: &crate::NumClass| -> Vec<Q> {
        o.c1.iter().map(|x| Q::new(*x as i128, o.r as i128)).collect()
    };
    Ok((0..n)
        .map(|i| {
            let a = sv(&c.objects[i]);
            let b = if i + 1 < n { sv(&c.objects[i + 1]) } else { sv(&c.objects[0].twist_omega(-1, s)) };
            b.iter().zip(&a).map(|(p, q)| p - q).collect()
        })
        .collect())
}

/// A cyclic list of vertices `l_{k,k+1}` around the marked origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Polygon {
    pub vertices: Vec<Point>,
}

/// A maximal run of parallel, equally oriented edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongEdge {
    /// Edge indices in cyclic order.
    pub edges: Vec<usize>,
    pub vector: Point,
}

/// Half-plane `omega(direction, x) <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub edge: usize,
    pub direction: Point,
    #[serde(with = "q_serde")]
    pub bound: Q,
}

impl HalfPlane {
    pub fn contains(&self, x: Point) -> bool {
        omega(self.direction, x) <= self.bound
    }
}

fn isqrt_exact(v: Q) -> Option<i128> {
    if !v.is_integer() || v.is_negative() {
        return None;
    }
    let n = v.to_integer();
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Pseudo-angle key used to count how often the edge directions wind around.
fn half_plane_index(p: Point) -> u8 {
    if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: Point, b: Point) -> Ordering {
    half_plane_index(a).cmp(&half_plane_index(b)).then_with(|| Q::zero().cmp(&omega(a, b)))
}

/// Polygon of a full collection with positive ranks.
pub fn polygon_of(c: &Collection) -> Result<Polygon> {
    c.check_full()?;
    c.check_positive_ranks()?;
    let s = c.s();
    let duals = c.dual_right_classes();
    let mut acc = Point::int(0, -1);
    let mut vertices = Vec::with_capacity(c.len());
    for (e, f) in c.objects.iter().zip(&duals) {
        let r = e.r as i128;
        acc = acc + Point::int(r * f.r as i128, r * f.degree(s) as i128);
        vertices.push(acc);
    }
    let p = Polygon { vertices };
    p.check_lattice_invariants(&c.ranks())?;
    Ok(p)
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Polygon {
        Polygon { vertices }
    }

    pub fn from_ints(v: &[(i128, i128)]) -> Polygon {
        Polygon { vertices: v.iter().map(|(x, y)| Point::int(*x, *y)).collect() }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex `l_{k,k+1}` with cyclic indexing.
    pub fn v(&self, k: isize) -> Point {
        let n = self.len() as isize;
        self.vertices[k.rem_euclid(n) as usize]
    }

    /// Edge `m_k = l_{k,k+1} - l_{k-1,k}`.
    pub fn edge(&self, k: isize) -> Point {
        self.v(k) - self.v(k - 1)
    }

    pub fn edges(&self) -> Vec<Point> {
        (0..self.len() as isize).map(|k| self.edge(k)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|p| p.is_integral())
    }

    /// `R_k = omega(l_{k-1,k}, l_{k,k+1})`.
    pub fn r_squared(&self, k: usize) -> Q {
        omega(self.v(k as isize - 1), self.v(k as isize))
    }

    /// Ranks recovered as square roots of `R_k`.
    pub fn ranks(&self) -> Result<Vec<i64>> {
        (0..self.len())
            .map(|k| {
                isqrt_exact(self.r_squared(k)).filter(|r| *r > 0).map(|r| r as i64).ok_or_else(|| {
                    Error::PolygonInvariant(format!("R_{k} = {} is not a positive square", self.r_squared(k)))
                })
            })
            .collect()
    }

    /// Twice the signed area (shoelace formula).
    pub fn area_x2(&self) -> Q {
        (0..self.len()).map(|k| self.r_squared(k)).fold(Q::zero(), |a, b| a + b)
    }

    /// Closure, positivity of `R_k = r_k^2`, vertex primitivity, edge divisibility.
    pub fn check_lattice_invariants(&self, ranks: &[i64]) -> Result<()> {
        let n = self.len();
        if ranks.len() != n {
            return Err(Error::PolygonInvariant("rank count differs from vertex count".into()));
        }
        for k in 0..n {
            let r = ranks[k] as i128;
            if self.r_squared(k) != Q::from_integer(r * r) {
                return Err(Error::PolygonInvariant(format!("R_{k} = {} but r_{k}^2 = {}", self.r_squared(k), r * r)));
            }
            let Some((x, y)) = self.v(k as isize).to_int() else {
                return Err(Error::PolygonInvariant(format!("vertex {k} is not integral")));
            };
            if x.gcd(&y) != 1 {
                return Err(Error::PolygonInvariant(format!("vertex {k} = ({x}, {y}) is not primitive")));
            }
            let m = self.edge(k as isize).to_int().expect("integral vertices");
            if m.0 % r != 0 || m.1 % r != 0 || (m.0 / r).gcd(&(m.1 / r)) != 1 {
                return Err(Error::PolygonInvariant(format!("edge {k} is not {r} times a primitive vector")));
            }
        }
        Ok(())
    }

    /// Convex with counter-clockwise orientation, turning exactly once.
    pub fn is_convex(&self) -> Result<bool> {
        let n = self.len();
        let e = self.edges();
        if e.iter().any(|m| m.is_zero()) {
            return Err(Error::Degenerate("repeated vertex".into()));
        }
        let mut wraps = 0;
        for k in 0..n {
            let (a, b) = (e[k], e[(k + 1) % n]);
            let w = omega(a, b);
            if w.is_negative() {
                return Ok(false);
            }
            if w.is_zero() && (a.x * b.x + a.y * b.y).is_negative() {
                return Ok(false);
            }
            if angle_cmp(b, a) == Ordering::Less {
                wraps += 1;
            }
        }
        Ok(wraps == 1)
    }

    /// Maximal runs of parallel, equally oriented edges.
    pub fn long_edges(&self) -> Vec<LongEdge> {
        let n = self.len();
        let e = self.edges();
        let joins = |k: usize| {
            let (a, b) = (e[(k + n - 1) % n], e[k]);
            omega(a, b).is_zero() && (a.x * b.x + a.y * b.y).is_positive()
        };
        let Some(start) = (0..n).find(|&k| !joins(k)) else {
            return vec![LongEdge { edges: (0..n).collect(), vector: Point::default() }];
        };
        let mut out: Vec<LongEdge> = Vec::new();
        for t in 0..n {
            let k = (start + t) % n;
            if t > 0 && joins(k) {
                let last = out.last_mut().expect("started");
                last.edges.push(k);
                last.vector = last.vector + e[k];
            } else {
                out.push(LongEdge { edges: vec![k], vector: e[k] });
            }
        }
        out
    }

    /// Pairs of long edges that are parallel.
    pub fn parallel_long_edges(&self) -> Vec<(usize, usize)> {
        let le = self.long_edges();
        let mut out = Vec::new();
        for a in 0..le.len() {
            for b in a + 1..le.len() {
                if omega(le[a].vector, le[b].vector).is_zero() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Height function `omega(m_i, x - l_{i,i+1})` of edge `i`.
    fn height(&self, i: usize, x: Point) -> Q {
        omega(self.edge(i as isize), x - self.v(i as isize))
    }

    /// Vertices maximizing the height over edge `i`.
    pub fn opposing_vertices(&self, i: usize) -> Vec<usize> {
        let h: Vec<Q> = (0..self.len()).map(|k| self.height(i, self.vertices[k])).collect();
        let max = h.iter().max().copied().unwrap_or_default();
        (0..self.len()).filter(|&k| h[k] == max).collect()
    }

    /// First opposing vertex after edge `i` in cyclic order.
    pub fn earliest_opposing(&self, i: usize) -> usize {
        let n = self.len();
        let opp = self.opposing_vertices(i);
        (0..n).map(|t| (i + t) % n).find(|k| opp.contains(k)).expect("some vertex is opposing")
    }

    /// Corner vertices that oppose some edge.
    pub fn admissible_vertices(&self) -> Vec<usize> {
        let corners = self.corner_vertices();
        let mut out: Vec<usize> = (0..self.len())
            .flat_map(|i| self.opposing_vertices(i))
            .filter(|k| corners.contains(k))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Vertices where two non-parallel edges meet.
    pub fn corner_vertices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| !omega(self.edge(k as isize), self.edge(k as isize + 1)).is_zero())
            .collect()
    }

    /// One half-plane per edge, midway between the edge and its opposing line.
    pub fn forbidden_region(&self) -> Vec<HalfPlane> {
        (0..self.len())
            .map(|i| {
                let d = self.edge(i as isize);
                let h = self.height(i, self.vertices[self.earliest_opposing(i)]);
                HalfPlane { edge: i, direction: d, bound: omega(d, self.v(i as isize)) + h / Q::from_integer(2) }
            })
            .collect()
    }

    pub fn origin_in_forbidden(&self) -> bool {
        self.forbidden_region().iter().all(|hp| hp.contains(Point::default()))
    }

    /// Sign of the area change of the right mutation at edge `i`: negative means the area drops.
    pub fn area_delta_sign(&self, i: usize) -> i8 {
        let j = self.earliest_opposing(i);
        let v = omega(self.edge(i as isize), self.vertices[j] + self.v(i as isize));
        match v.cmp(&Q::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Polygon counterpart of the braid move `sigma_i`, `1 <= i <= n`.
    pub fn braid_left(&self, i: usize) -> Result<Polygon> {
        self.braid_move(i, true)
    }

    /// Polygon counterpart of `sigma_i^{-1}`, `1 <= i <= n`.
    pub fn braid_right(&self, i: usize) -> Result<Polygon> {
        self.braid_move(i, false)
    }

    fn braid_move(&self, i: usize, left: bool) -> Result<Polygon> {
        let n = self.len();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let p = (i - 1) as isize;
        let (u, prev, next) = (self.v(p), self.v(p - 1), self.v(p + 1));
        let new = if left { shear(u, next, prev)? } else { shear(u, prev, next)? };
        if omega(prev, new).is_zero() || omega(new, next).is_zero() {
            return Err(Error::Degenerate(format!("braid move {i} produces an object of rank 0")));
        }
        let mut vertices = self.vertices.clone();
        vertices[p as usize] = new;
        Ok(Polygon { vertices })
    }

    /// Shear of a right quiver mutation at edge `i` towards the earliest opposing vertex.
    /// Returns the new polygon and the opposing vertex index.
    pub fn quiver_mutate_right(&self, i: usize) -> Result<(Polygon, usize)> {
        let n = self.len();
        let j = self.earliest_opposing(i);
        let a = |x: Point| shear(self.v(i as isize), self.v(i as isize - 1), x);
        let mut vertices = self.vertices.clone();
        let mut k = i;
        while k != j {
            vertices[k] = a(self.v(k as isize + 1))?;
            k = (k + 1) % n;
        }
        Ok((Polygon { vertices }, j))
    }

    /// A linear map `g` with `det g = 1` and `g(self_k) = other_k` for all `k`, if one exists.
    pub fn sl2_map_to(&self, other: &Polygon) -> Option<[[Q; 2]; 2]> {
        let n = self.len();
        if n != other.len() || n < 2 {
            return None;
        }
        let k = (0..n).find(|&k| !omega(self.vertices[k], self.v(k as isize + 1)).is_zero())?;
        let (a, b) = (self.vertices[k], self.v(k as isize + 1));
        let (c, d) = (other.vertices[k], other.v(k as isize + 1));
        let det = omega(a, b);
        // g = [c d] [a b]^{-1}
        let inv = [[b.y / det, -b.x / det], [-a.y / det, a.x / det]];
        let g = [
            [c.x * inv[0][0] + d.x * inv[1][0], c.x * inv[0][1] + d.x * inv[1][1]],
            [c.y * inv[0][0] + d.y * inv[1][0], c.y * inv[0][1] + d.y * inv[1][1]],
        ];
        if g[0][0] * g[1][1] - g[0][1] * g[1][0] != Q::one() {
            return None;
        }
        let apply = |p: Point| Point::new(g[0][0] * p.x + g[0][1] * p.y, g[1][0] * p.x + g[1][1] * p.y);
        self.vertices.iter().zip(&other.vertices).all(|(p, q)| apply(*p) == *q).then_some(g)
    }

    /// Equal up to a unimodular integral linear map with the same vertex labelling.
    pub fn unimodular_equivalent(&self, other: &Polygon) -> bool {
        self.sl2_map_to(other).is_some_and(|g| g.iter().flatten().all(|x| x.is_integer()))
    }

    /// Unimodularly equivalent after some cyclic relabelling.
    pub fn unimodular_equivalent_up_to_shift(&self, other: &Polygon) -> bool {
        let n = self.len();
        n == other.len()
            && (0..n).any(|t| {
                let shifted = Polygon { vertices: (0..n).map(|k| other.vertices[(k + t) % n]).collect() };
                self.unimodular_equivalent(&shifted)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceKind;

    fn p2() -> Collection {
        Collection::line_bundles(SurfaceKind::P2, &[vec![0], vec![1], vec![2]]).unwrap()
    }

    #[test]
    fn p2_polygon() {
        let p = polygon_of(&p2()).unwrap();
        assert_eq!(p, Polygon::from_ints(&[(1, 8), (-1, -7), (0, -1)]));
        assert_eq!(p.area_x2(), Q::from_integer(3));
        assert!(p.is_convex().unwrap());
        assert!(p.origin_in_forbidden());
        assert_eq!(p.opposing_vertices(0), vec![1]);
        assert_eq!(p.admissible_vertices(), vec![0, 1, 2]);
        assert_eq!(p.area_delta_sign(0), 1);
    }

    #[test]
    fn shear_example() {
        let x = shear(Point::int(1, 8), Point::int(0, -1), Point::int(-1, -7)).unwrap();
        assert_eq!(x, Point::int(1, 11));
        let (u, v) = (Point::int(1, 8), Point::int(0, -1));
        assert_eq!(shear(u, v, u).unwrap(), v);
        assert!(shear(u, u.scale(Q::from_integer(2)), v).is_err());
    }

    #[test]
    fn toric_system_p2() {
        let t = toric_system(&p2()).unwrap();
        assert!(t.iter().all(|v| v == &vec![Q::from_integer(1)]));
    }

    #[test]
    fn square_is_convex() {
        let sq = Polygon::from_ints(&[(1, 0), (1, 1), (0, 1), (0, 0)]);
        assert!(sq.is_convex().unwrap());
        let twice = Polygon::from_ints(&[(1, 0), (0, 1), (-1, 0), (0, -1), (1, 0), (0, 1), (-1, 0), (0, -1)]);
        assert!(!twice.is_convex().unwrap());
    }
}
