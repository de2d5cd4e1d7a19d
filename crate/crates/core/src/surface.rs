//! Picard lattices of del Pezzo surfaces and the action of their symmetry groups.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the ten del Pezzo surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SurfaceKind {
    P2,
    P1xP1,
    /// Blow-up of the projective plane in `n` general points, `1 <= n <= 8`.
    X(u8),
}

impl SurfaceKind {
    pub const ALL: [SurfaceKind; 10] = [
        SurfaceKind::P2,
        SurfaceKind::P1xP1,
        SurfaceKind::X(1),
        SurfaceKind::X(2),
        SurfaceKind::X(3),
        SurfaceKind::X(4),
        SurfaceKind::X(5),
        SurfaceKind::X(6),
        SurfaceKind::X(7),
        SurfaceKind::X(8),
    ];

    /// Shared, lazily built lattice data for this surface.
    pub fn surface(self) -> &'static Surface {
        static CACHE: OnceLock<Vec<Surface>> = OnceLock::new();
        let all = CACHE.get_or_init(|| Self::ALL.iter().map(|k| Surface::build(*k)).collect());
        let idx = Self::ALL.iter().position(|k| *k == self).expect("valid surface kind");
        &all[idx]
    }

    pub fn id(self) -> String {
        match self {
            SurfaceKind::P2 => "P2".into(),
            SurfaceKind::P1xP1 => "P1xP1".into(),
            SurfaceKind::X(n) => format!("X{n}"),
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P2" | "X0" => Ok(SurfaceKind::P2),
            "P1xP1" => Ok(SurfaceKind::P1xP1),
            _ => {
                let n: u8 = s
                    .strip_prefix('X')
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::UnknownSurface(s.to_string()))?;
                if (1..=8).contains(&n) {
                    Ok(SurfaceKind::X(n))
                } else {
                    Err(Error::UnknownSurface(s.to_string()))
                }
            }
        }
    }
}

impl TryFrom<String> for SurfaceKind {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SurfaceKind> for String {
    fn from(k: SurfaceKind) -> String {
        k.id()
    }
}

/// How the indices of certificate words are mapped onto simple roots.
///
/// Certificate words index reflections `s'_k`, which are first sent through the
/// per-surface permutation `s'_k = s_{p(k)}`. `ZeroBased` then reads `s_i` as the
/// reflection in the simple root `alpha_{i+1}`, `OneBased` as `alpha_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexBase {
    ZeroBased,
    OneBased,
}

impl IndexBase {
    pub const CANDIDATES: [IndexBase; 2] = [IndexBase::ZeroBased, IndexBase::OneBased];
}

/// Picard lattice data of a del Pezzo surface in its standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    pub kind: SurfaceKind,
    pub picard_rank: usize,
    pub intersection: Vec<Vec<i64>>,
    pub canonical: Vec<i64>,
    pub k2: i64,
    /// Simple roots `alpha_1, ..., alpha_m` in order.
    pub simple_roots: Vec<Vec<i64>>,
    /// Permutation `p` with `s'_k = s_{p(k)}` for certificate words.
    pub certificate_remap: Vec<usize>,
}

impl Surface {
    fn build(kind: SurfaceKind) -> Surface {
        match kind {
            SurfaceKind::P1xP1 => Surface {
                kind,
                picard_rank: 2,
                intersection: vec![vec![0, 1], vec![1, 0]],
                canonical: vec![-2, -2],
                k2: 8,
                simple_roots: vec![vec![1, -1]],
                certificate_remap: vec![0],
            },
            SurfaceKind::P2 => Self::blowup(kind, 0),
            SurfaceKind::X(n) => Self::blowup(kind, n as usize),
        }
    }

    fn blowup(kind: SurfaceKind, n: usize) -> Surface {
        let dim = n + 1;
        let mut intersection = vec![vec![0; dim]; dim];
        intersection[0][0] = 1;
        for (i, row) in intersection.iter_mut().enumerate().skip(1) {
            row[i] = -1;
        }
        let mut canonical = vec![1; dim];
        canonical[0] = -3;
        let mut simple_roots = Vec::new();
        if n >= 3 {
            let mut a1 = vec![0; dim];
            a1[0] = 1;
            a1[1] = -1;
            a1[2] = -1;
            a1[3] = -1;
            simple_roots.push(a1);
        }
        if n >= 2 {
            for i in 2..=n {
                let mut a = vec![0; dim];
                a[i - 1] = 1;
                a[i] = -1;
                simple_roots.push(a);
            }
        }
        let m = simple_roots.len();
        let mut certificate_remap: Vec<usize> = (0..m).collect();
        match n {
            4 => certificate_remap.swap(1, 3),
            5 => certificate_remap = vec![1, 2, 3, 0, 4],
            6..=8 => certificate_remap.swap(0, 1),
            _ => {}
        }
        Surface {
            kind,
            picard_rank: dim,
            intersection,
            canonical,
            k2: 9 - n as i64,
            simple_roots,
            certificate_remap,
        }
    }

    /// Number of objects in a full exceptional collection.
    pub fn collection_length(&self) -> usize {
        self.picard_rank + 2
    }

    pub fn check_dim(&self, d: &[i64]) -> Result<()> {
        if d.len() == self.picard_rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.picard_rank, got: d.len() })
        }
    }

    /// Intersection pairing of two divisors.
    pub fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in self.intersection.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                if *m != 0 {
                    s += a[i] * m * b[j];
                }
            }
        }
        s
    }

    /// Degree `(-K)·D`.
    pub fn degree(&self, d: &[i64]) -> i64 {
        -self.dot(&self.canonical, d)
    }

    /// Reflection `s_rho(D) = D + (D·rho) rho` in a (-2)-class.
    pub fn reflect(&self, rho: &[i64], d: &[i64]) -> Result<Vec<i64>> {
        self.check_dim(rho)?;
        self.check_dim(d)?;
        let rr = self.dot(rho, rho);
        if rr != -2 {
            return Err(Error::NotARoot(rr));
        }
        let t = self.dot(d, rho);
        Ok(d.iter().zip(rho).map(|(x, p)| x + t * p).collect())
    }

    /// Translate a certificate word into 0-based indices into `simple_roots`.
    pub fn certificate_roots(&self, word: &[usize], base: IndexBase) -> Result<Vec<usize>> {
        let m = self.simple_roots.len();
        word.iter()
            .map(|&k| {
                let err = Error::ReflectionIndex { surface: self.kind.id(), index: k, count: m };
                let s = *self.certificate_remap.get(k).ok_or(err.clone())?;
                let idx = match base {
                    IndexBase::ZeroBased => Some(s),
                    IndexBase::OneBased => s.checked_sub(1),
                };
                idx.filter(|i| *i < m).ok_or(err)
            })
            .collect()
    }

    /// Apply simple reflections (0-based indices into `simple_roots`) left to right.
    pub fn weyl_apply_divisor(&self, word: &[usize], d: &[i64]) -> Result<Vec<i64>> {
        let mut v = d.to_vec();
        for &i in word {
            let rho = self.simple_roots.get(i).ok_or_else(|| Error::ReflectionIndex {
                surface: self.kind.id(),
                index: i,
                count: self.simple_roots.len(),
            })?;
            v = self.reflect(rho, &v)?;
        }
        Ok(v)
    }

    /// Standard basis vector `e_i`.
    pub fn basis(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.picard_rank];
        v[i] = 1;
        v
    }
}
