//! Ordered numerical exceptional collections and the braid group action on them.

use serde::{Deserialize, Serialize};

use crate::class::{chi, NumClass, Slope};
use crate::error::{Error, Result};
use crate::linalg;
use crate::surface::{Surface, SurfaceKind};

/// An ordered list of numerical classes on a fixed surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Collection {
    pub surface: SurfaceKind,
    pub objects: Vec<NumClass>,
}

/// Block decomposition: sizes of maximal runs of equal slope.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Blocks {
    pub sizes: Vec<usize>,
    /// The last block and the twisted first block have equal slope.
    pub broken: bool,
}

impl Blocks {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Index of the first object in each block.
    pub fn starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut acc = 0;
        for s in &self.sizes {
            out.push(acc);
            acc += s;
        }
        out
    }

    /// Block containing object position `p`.
    pub fn block_of(&self, p: usize) -> usize {
        let mut acc = 0;
        for (b, s) in self.sizes.iter().enumerate() {
            acc += s;
            if p < acc {
                return b;
            }
        }
        self.sizes.len() - 1
    }
}

/// Reduced invariants of a collection with blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockData {
    pub alphas: Vec<usize>,
    pub ranks: Vec<i64>,
    pub reduced_gram: Vec<Vec<i64>>,
    /// `chi(E_i, E_{i+1})` between consecutive block representatives, the last entry
    /// pairing the last block with the first block twisted by `omega^{-1}`.
    pub chi_adjacent: Vec<i64>,
}

impl BlockData {
    /// Cyclic sequence of `(alpha_i, r_i, chi_{i,i+1})` in its lexicographically least rotation.
    pub fn cyclic_key(&self) -> Vec<(usize, i64, i64)> {
        cyclic_min(
            &(0..self.alphas.len())
                .map(|i| (self.alphas[i], self.ranks[i], self.chi_adjacent[i]))
                .collect::<Vec<_>>(),
        )
    }
}

/// Lexicographically least rotation of a sequence.
pub fn cyclic_min<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    (0..v.len().max(1))
        .map(|t| v[t.min(v.len())..].iter().chain(&v[..t.min(v.len())]).cloned().collect::<Vec<T>>())
        .min()
        .unwrap_or_default()
}

/// How `equivalent` matched two collections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    /// Right rotations applied to the first collection.
    pub rotation: usize,
    /// Right rotations applied to the second collection to remove broken blocks.
    pub target_rotation: usize,
    pub twist: Vec<i64>,
    pub sign: i64,
}

/// Serre matrix `s = M^{-1} M^T` with the two tests used to filter Gram candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreReport {
    pub matrix: linalg::Matrix,
    pub unipotent: bool,
    pub rank_minus_identity: usize,
}

impl SerreReport {
    pub fn passes(&self) -> bool {
        self.unipotent && self.rank_minus_identity <= 2
    }
}

pub fn serre_matrix(m: &[Vec<i64>]) -> Result<SerreReport> {
    let a = linalg::from_int(m);
    let inv = linalg::inverse(&a)?;
    let s = linalg::mul(&inv, &linalg::transpose(&a));
    let n = m.len();
    let d = linalg::sub(&s, &linalg::identity(n));
    let mut p = linalg::identity(n);
    for _ in 0..n {
        p = linalg::mul(&p, &d);
    }
    Ok(SerreReport { unipotent: linalg::is_zero(&p), rank_minus_identity: linalg::rank(&d), matrix: s })
}

impl Collection {
    pub fn new(surface: SurfaceKind, objects: Vec<NumClass>) -> Result<Collection> {
        let s = surface.surface();
        for o in &objects {
            s.check_dim(&o.c1)?;
        }
        Ok(Collection { surface, objects })
    }

    /// Build from `(rank, c1)` pairs, solving for the Euler characteristic.
    pub fn from_rank_c1(surface: SurfaceKind, data: &[(i64, Vec<i64>)]) -> Result<Collection> {
        let s = surface.surface();
        let objects =
            data.iter().map(|(r, c1)| NumClass::exceptional(*r, c1.clone(), s)).collect::<Result<Vec<_>>>()?;
        Ok(Collection { surface, objects })
    }

    pub fn line_bundles(surface: SurfaceKind, divisors: &[Vec<i64>]) -> Result<Collection> {
        let data: Vec<(i64, Vec<i64>)> = divisors.iter().map(|d| (1, d.clone())).collect();
        Collection::from_rank_c1(surface, &data)
    }

    pub fn s(&self) -> &'static Surface {
        self.surface.surface()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn chi(&self, i: usize, j: usize) -> i64 {
        chi(&self.objects[i], &self.objects[j], self.s())
    }

    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.chi(i, j)).collect()).collect()
    }

    pub fn ranks(&self) -> Vec<i64> {
        self.objects.iter().map(|o| o.r).collect()
    }

    pub fn total_rank(&self) -> i64 {
        self.objects.iter().map(|o| o.r).sum()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let s = self.s();
        self.objects.iter().map(|o| o.degree(s)).collect()
    }

    pub fn slopes(&self) -> Vec<Slope> {
        let s = self.s();
        self.objects.iter().map(|o| o.slope(s)).collect()
    }

    /// Check `chi(E_i,E_i) = 1` and `chi(E_j,E_i) = 0` for `j > i`.
    pub fn check_exceptional(&self) -> Result<()> {
        for i in 0..self.len() {
            let v = self.chi(i, i);
            if v != 1 {
                return Err(Error::NotExceptionalCollection { i, j: i, value: v });
            }
            for j in i + 1..self.len() {
                let v = self.chi(j, i);
                if v != 0 {
                    return Err(Error::NotExceptionalCollection { i: j, j: i, value: v });
                }
            }
        }
        Ok(())
    }

    pub fn check_full(&self) -> Result<()> {
        let expected = self.s().collection_length();
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::NotFull { expected, got: self.len() })
        }
    }

    pub fn check_positive_ranks(&self) -> Result<()> {
        match self.objects.iter().position(|o| o.r <= 0) {
            Some(index) => Err(Error::NonPositiveRank { index, rank: self.objects[index].r }),
            None => Ok(()),
        }
    }

    /// Very strong iff `mu_0 <= ... <= mu_{n-1} <= mu_0 + K^2`.
    pub fn is_very_strong(&self) -> Result<bool> {
        self.check_positive_ranks()?;
        let sl = self.slopes();
        if sl.windows(2).any(|w| w[0] > w[1]) {
            return Ok(false);
        }
        Ok(match (sl.first(), sl.last()) {
            (Some(first), Some(last)) => *last <= first.shift(self.s().k2),
            _ => true,
        })
    }

    fn with_objects(&self, objects: Vec<NumClass>) -> Collection {
        Collection { surface: self.surface, objects }
    }

    /// `L_E F = F - chi(E,F) E`, sign normalized.
    fn left_mut(&self, e: &NumClass, f: &NumClass) -> Result<NumClass> {
        let s = self.s();
        f.combine(1, e, -chi(e, f, s)).normalized(s)
    }

    /// `R_F E = E - chi(E,F) F`, sign normalized.
    fn right_mut(&self, e: &NumClass, f: &NumClass) -> Result<NumClass> {
        let s = self.s();
        e.combine(1, f, -chi(e, f, s)).normalized(s)
    }

    fn check_braid_index(&self, i: usize) -> Result<()> {
        let n = self.len();
        if i == 0 || i > n || n < 2 {
            Err(Error::IndexOutOfRange { index: i, len: n })
        } else {
            Ok(())
        }
    }

    /// The tilde braid move `sigma_i`, `1 <= i <= n`; `i = n` acts across the wrap.
    pub fn braid_left(&self, i: usize) -> Result<Collection> {
        self.check_braid_index(i)?;
        let n = self.len();
        if i == n {
            return self.rotate_right().braid_left(n - 1).map(|c| c.rotate_left());
        }
        let mut o = self.objects.clone();
        let m = self.left_mut(&o[i - 1], &o[i])?;
        o[i] = o[i - 1].clone();
        o[i - 1] = m;
        Ok(self.with_objects(o))
    }

    /// The inverse tilde braid move `sigma_i^{-1}`, `1 <= i <= n`.
    pub fn braid_right(&self, i: usize) -> Result<Collection> {
        self.check_braid_index(i)?;
        let n = self.len();
        if i == n {
            return self.rotate_right().braid_right(n - 1).map(|c| c.rotate_left());
        }
        let mut o = self.objects.clone();
        let m = self.right_mut(&o[i - 1], &o[i])?;
        o[i - 1] = o[i].clone();
        o[i] = m;
        Ok(self.with_objects(o))
    }

    /// `(E_{n-1} ⊗ omega, E_0, ..., E_{n-2})`.
    pub fn rotate_left(&self) -> Collection {
        let s = self.s();
        let mut o = self.objects.clone();
        if let Some(last) = o.pop() {
            o.insert(0, last.twist_omega(1, s));
        }
        self.with_objects(o)
    }

    /// `(E_1, ..., E_{n-1}, E_0 ⊗ omega^{-1})`.
    pub fn rotate_right(&self) -> Collection {
        let s = self.s();
        let mut o = self.objects.clone();
        if !o.is_empty() {
            let first = o.remove(0);
            o.push(first.twist_omega(-1, s));
        }
        self.with_objects(o)
    }

    pub fn rotate_right_by(&self, t: usize) -> Collection {
        (0..t).fold(self.clone(), |c, _| c.rotate_right())
    }

    pub fn rotate_left_by(&self, t: usize) -> Collection {
        (0..t).fold(self.clone(), |c, _| c.rotate_left())
    }

    /// Unnormalized right dual classes `F_i = R_{E_{n-1}} ... R_{E_{i+1}} E_i`, indexed by `i`.
    pub fn dual_right_classes(&self) -> Vec<NumClass> {
        let s = self.s();
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut x = self.objects[i].clone();
                for f in &self.objects[i + 1..] {
                    x = x.combine(1, f, -chi(&x, f, s));
                }
                x
            })
            .collect()
    }

    /// Unnormalized left dual classes `G_i = L_{E_0} ... L_{E_{i-1}} E_i`, indexed by `i`.
    pub fn dual_left_classes(&self) -> Vec<NumClass> {
        let s = self.s();
        (0..self.len())
            .map(|i| {
                let mut x = self.objects[i].clone();
                for e in self.objects[..i].iter().rev() {
                    x = x.combine(1, e, -chi(e, &x, s));
                }
                x
            })
            .collect()
    }

    /// Right dual collection `(F_{n-1}, ..., F_0)` with sheaf sign normalization.
    pub fn dual_right(&self) -> Result<Collection> {
        let s = self.s();
        let objs = self.dual_right_classes().iter().rev().map(|x| x.normalized(s)).collect::<Result<Vec<_>>>()?;
        Ok(self.with_objects(objs))
    }

    /// Left dual collection `(G_{n-1}, ..., G_0)` with sheaf sign normalization.
    pub fn dual_left(&self) -> Result<Collection> {
        let s = self.s();
        let objs = self.dual_left_classes().iter().rev().map(|x| x.normalized(s)).collect::<Result<Vec<_>>>()?;
        Ok(self.with_objects(objs))
    }

    /// Maximal runs of equal slope, plus whether the wrap pair has equal slope.
    pub fn detect_blocks(&self) -> Result<Blocks> {
        if !self.is_very_strong()? {
            return Err(Error::NotVeryStrong);
        }
        let sl = self.slopes();
        let mut sizes = Vec::new();
        let mut run = 0;
        for i in 0..sl.len() {
            run += 1;
            if i + 1 == sl.len() || sl[i] != sl[i + 1] {
                sizes.push(run);
                run = 0;
            }
        }
        let broken = sl.len() > 1 && sl[sl.len() - 1] == sl[0].shift(self.s().k2);
        Ok(Blocks { sizes, broken })
    }

    /// Rotate right until there are no broken blocks; returns the rotation count too.
    pub fn unbroken(&self) -> Result<(Collection, usize)> {
        let mut c = self.clone();
        for t in 0..self.len() {
            if !c.detect_blocks()?.broken {
                return Ok((c, t));
            }
            c = c.rotate_right();
        }
        Err(Error::Degenerate("every rotation has broken blocks".into()))
    }

    /// Reduced Gram matrix using the first object of every block.
    pub fn reduced_gram(&self, blocks: &Blocks) -> Vec<Vec<i64>> {
        let st = blocks.starts();
        st.iter().map(|&i| st.iter().map(|&j| self.chi(i, j)).collect()).collect()
    }

    pub fn block_data(&self, blocks: &Blocks) -> BlockData {
        let s = self.s();
        let st = blocks.starts();
        let k = st.len();
        let chi_adjacent = (0..k)
            .map(|b| {
                if b + 1 < k {
                    self.chi(st[b], st[b + 1])
                } else {
                    chi(&self.objects[st[b]], &self.objects[st[0]].twist_omega(-1, s), s)
                }
            })
            .collect();
        BlockData {
            alphas: blocks.sizes.clone(),
            ranks: st.iter().map(|&i| self.objects[i].r).collect(),
            reduced_gram: self.reduced_gram(blocks),
            chi_adjacent,
        }
    }

    pub fn tensor_line_bundle(&self, l: &[i64]) -> Result<Collection> {
        let s = self.s();
        s.check_dim(l)?;
        Ok(self.with_objects(self.objects.iter().map(|o| o.twist(l, s)).collect()))
    }

    /// Apply a word of simple reflections (0-based root indices) to every object.
    pub fn weyl_apply(&self, word: &[usize]) -> Result<Collection> {
        let s = self.s();
        let objs = self
            .objects
            .iter()
            .map(|o| Ok(NumClass { r: o.r, c1: s.weyl_apply_divisor(word, &o.c1)?, chi: o.chi }))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.with_objects(objs))
    }

    /// Maximal runs of consecutive, pairwise orthogonal objects, read linearly.
    fn orthogonal_runs(&self) -> Vec<usize> {
        let n = self.len();
        let mut sizes = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            let joins = i < n && (start..i).all(|j| self.chi(j, i) == 0 && self.chi(i, j) == 0);
            if !joins {
                sizes.push(i - start);
                start = i;
            }
        }
        sizes
    }

    fn wrap_orthogonal(&self) -> bool {
        let s = self.s();
        let n = self.len();
        if n < 2 {
            return false;
        }
        let first = self.objects[0].twist_omega(-1, s);
        let last = &self.objects[n - 1];
        chi(last, &first, s) == 0 && chi(&first, last, s) == 0
    }

    /// Whether `other` arises from `self` by rotation, reordering inside orthogonal
    /// blocks, a line bundle twist and a global sign.
    pub fn equivalent(&self, other: &Collection) -> Option<EquivalenceWitness> {
        if self.surface != other.surface || self.len() != other.len() || self.is_empty() {
            return None;
        }
        let n = self.len();
        let s = self.s();
        let (target, target_rotation) = {
            let mut c = other.clone();
            let mut t = 0;
            while c.wrap_orthogonal() && t < n {
                c = c.rotate_right();
                t += 1;
            }
            (c, t)
        };
        let runs = target.orthogonal_runs();
        let mut run_of = Vec::with_capacity(n);
        for (b, sz) in runs.iter().enumerate() {
            run_of.extend(std::iter::repeat_n(b, *sz));
        }
        let starts: Vec<usize> = runs.iter().scan(0, |a, s| {
            let v = *a;
            *a += s;
            Some(v)
        }).collect();
        let mut rotated = self.clone();
        for rotation in 0..n {
            for sign in [1i64, -1] {
                let cand: Vec<NumClass> =
                    rotated.objects.iter().map(|o| if sign == 1 { o.clone() } else { o.neg() }).collect();
                let Some(p) = cand.iter().position(|o| o.r != 0) else { continue };
                let b = run_of[p];
                let x = &cand[p];
                for y in &target.objects[starts[b]..starts[b] + runs[b]] {
                    if y.r != x.r {
                        continue;
                    }
                    let diff: Vec<i64> = y.c1.iter().zip(&x.c1).map(|(a, c)| a - c).collect();
                    if diff.iter().any(|d| d % x.r != 0) {
                        continue;
                    }
                    let l: Vec<i64> = diff.iter().map(|d| d / x.r).collect();
                    let twisted: Vec<NumClass> = cand.iter().map(|o| o.twist(&l, s)).collect();
                    let ok = (0..runs.len()).all(|bb| {
                        let range = starts[bb]..starts[bb] + runs[bb];
                        let mut a: Vec<&NumClass> = twisted[range.clone()].iter().collect();
                        let mut c: Vec<&NumClass> = target.objects[range].iter().collect();
                        a.sort();
                        c.sort();
                        a == c
                    });
                    if ok {
                        return Some(EquivalenceWitness { rotation, target_rotation, twist: l, sign });
                    }
                }
            }
            rotated = rotated.rotate_right();
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Collection {
        Collection::line_bundles(SurfaceKind::P2, &[vec![0], vec![1], vec![2]]).unwrap()
    }

    #[test]
    fn p2_gram_and_strength() {
        let c = p2();
        assert_eq!(c.gram_matrix(), vec![vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]);
        assert!(c.is_very_strong().unwrap());
        c.check_exceptional().unwrap();
    }

    #[test]
    fn braid_right_example() {
        let c = p2().braid_right(1).unwrap();
        assert_eq!((c.objects[0].r, c.objects[0].c1.clone()), (1, vec![1]));
        assert_eq!((c.objects[1].r, c.objects[1].c1.clone()), (2, vec![3]));
        assert_eq!(c.braid_left(1).unwrap(), p2());
        c.check_exceptional().unwrap();
    }

    #[test]
    fn rotations() {
        let c = p2();
        assert_eq!(c.rotate_left().rotate_right(), c);
        let twisted = c.tensor_line_bundle(&[-3]).unwrap();
        assert_eq!(c.rotate_left_by(3), twisted);
        assert_eq!(c.rotate_right().gram_matrix(), c.gram_matrix());
    }

    #[test]
    fn dual_endpoints() {
        let c = p2();
        let d = c.dual_right().unwrap();
        let rc: Vec<(i64, Vec<i64>)> = d.objects.iter().map(|o| (o.r, o.c1.clone())).collect();
        assert_eq!(rc, vec![(1, vec![2]), (2, vec![5]), (1, vec![3])]);
        let l = c.dual_left().unwrap();
        assert_eq!(l.objects[2], c.objects[0]);
    }

    #[test]
    fn serre_of_p2() {
        let rep = serre_matrix(&p2().gram_matrix()).unwrap();
        assert!(rep.unipotent);
        assert_eq!(rep.rank_minus_identity, 2);
        let id = serre_matrix(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(id.rank_minus_identity, 0);
    }

    #[test]
    fn equivalence_basics() {
        let c = p2();
        assert!(c.equivalent(&c.rotate_left()).is_some());
        assert!(c.equivalent(&c.tensor_line_bundle(&[1]).unwrap()).is_some());
        assert!(c.equivalent(&c.braid_right(1).unwrap()).is_none());
    }
}
