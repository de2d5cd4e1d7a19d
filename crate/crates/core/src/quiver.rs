//! Quivers as signed arrow-multiplicity matrices.

use serde::{Deserialize, Serialize};

use crate::collection::Collection;
use crate::error::{Error, Result};
use crate::polygon::{omega, polygon_of, Polygon};
use crate::Q;

/// `c[i][j] > 0` means `c[i][j]` arrows `i -> j`; the matrix is antisymmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub n: usize,
    pub c: Vec<Vec<i64>>,
    /// Block sizes when the vertices are grouped into orthogonal blocks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
}

impl Quiver {
    pub fn new(c: Vec<Vec<i64>>) -> Quiver {
        Quiver { n: c.len(), c, blocks: None }
    }

    /// Quiver of a convex polygon: `c_ij = omega(m_i, m_j) / (r_i r_j)`.
    pub fn of_polygon(p: &Polygon) -> Result<Quiver> {
        if !p.is_convex()? {
            return Err(Error::PolygonInvariant("quiver requires a convex polygon".into()));
        }
        let r = p.ranks()?;
        let m = p.edges();
        let n = p.len();
        let mut c = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let v = omega(m[i], m[j]) / Q::from_integer((r[i] * r[j]) as i128);
                if !v.is_integer() {
                    return Err(Error::PolygonInvariant(format!("arrow count c_{i}{j} = {v} is not integral")));
                }
                c[i][j] = v.to_integer() as i64;
            }
        }
        Ok(Quiver::new(c))
    }

    /// Quiver of a very strong collection, with its block structure.
    pub fn of_collection(c: &Collection) -> Result<Quiver> {
        let blocks = c.detect_blocks()?;
        let mut q = Quiver::of_polygon(&polygon_of(c)?)?;
        q.blocks = Some(blocks.sizes);
        Ok(q)
    }

    /// Quiver on block representatives (one vertex per block).
    pub fn reduced(&self) -> Option<Quiver> {
        let sizes = self.blocks.as_ref()?;
        let mut starts = Vec::new();
        let mut acc = 0;
        for s in sizes {
            starts.push(acc);
            acc += s;
        }
        let c = starts.iter().map(|&i| starts.iter().map(|&j| self.c[i][j]).collect()).collect();
        Some(Quiver { n: starts.len(), c, blocks: None })
    }

    /// Upper-triangular arrow counts `c_01, c_02, ..., c_{n-2,n-1}` row by row.
    pub fn upper_entries(&self) -> Vec<i64> {
        (0..self.n).flat_map(|i| (i + 1..self.n).map(move |j| (i, j))).map(|(i, j)| self.c[i][j]).collect()
    }

    /// Quiver mutation at `v`: compose paths through `v`, reverse arrows at `v`, cancel 2-cycles.
    pub fn dwz_mutate(&self, v: usize) -> Result<Quiver> {
        if v >= self.n {
            return Err(Error::IndexOutOfRange { index: v, len: self.n });
        }
        if self.c[v][v] != 0 {
            return Err(Error::QuiverCycle(v));
        }
        let mut c = self.c.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                if i == v || j == v {
                    c[i][j] = -self.c[i][j];
                } else if self.c[i][v] > 0 && self.c[v][j] > 0 {
                    c[i][j] = self.c[i][j] + self.c[i][v] * self.c[v][j];
                } else if self.c[i][v] < 0 && self.c[v][j] < 0 {
                    c[i][j] = self.c[i][j] - self.c[i][v] * self.c[v][j];
                }
            }
        }
        Ok(Quiver { n: self.n, c, blocks: None })
    }

    /// Relabel vertices: vertex `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Quiver {
        let mut c = vec![vec![0; self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                c[perm[i]][perm[j]] = self.c[i][j];
            }
        }
        Quiver { n: self.n, c, blocks: None }
    }

    /// The Plücker relation `c01 c23 - c02 c13 + c03 c12 = 0` on a 4-tuple.
    pub fn plucker(&self, t: [usize; 4]) -> i64 {
        let c = &self.c;
        c[t[0]][t[1]] * c[t[2]][t[3]] - c[t[0]][t[2]] * c[t[1]][t[3]] + c[t[0]][t[3]] * c[t[1]][t[2]]
    }

    /// Every 4-subset satisfies the Plücker relation.
    pub fn satisfies_plucker(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (a + 1..n).all(|b| (b + 1..n).all(|c| (c + 1..n).all(|d| self.plucker([a, b, c, d]) == 0)))
        })
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|i| self.c[i][i] != 0)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.c[i][j] == -self.c[j][i]))
    }

    /// All pairs of distinct vertices joined by at least one arrow.
    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.c[i][j] != 0))
    }
}
