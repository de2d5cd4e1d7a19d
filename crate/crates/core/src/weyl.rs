//! Weyl groups acting on roots, with group orders from a Schreier-Sims chain.

use std::collections::{HashMap, VecDeque};

use crate::error::Result;
use crate::surface::{Surface, SurfaceKind};

/// A permutation given by its image list: `p[x]` is the image of `x`.
pub type Perm = Vec<u16>;

/// All roots: the closure of the simple roots under the simple reflections.
pub fn roots(s: &Surface) -> Vec<Vec<i64>> {
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<Vec<i64>> = s.simple_roots.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        if seen.contains_key(&r) {
            continue;
        }
        seen.insert(r.clone(), out.len());
        out.push(r.clone());
        for rho in &s.simple_roots {
            let img = s.reflect(rho, &r).expect("simple roots are roots");
            if !seen.contains_key(&img) {
                queue.push_back(img);
            }
        }
    }
    out
}

/// Order of the Weyl group of the root system of each surface.
pub fn expected_order(kind: SurfaceKind) -> u128 {
    match kind {
        SurfaceKind::P2 | SurfaceKind::X(1) => 1,
        SurfaceKind::P1xP1 | SurfaceKind::X(2) => 2,
        SurfaceKind::X(3) => 12,
        SurfaceKind::X(4) => 120,
        SurfaceKind::X(5) => 1920,
        SurfaceKind::X(6) => 51_840,
        SurfaceKind::X(7) => 2_903_040,
        SurfaceKind::X(8) => 696_729_600,
        SurfaceKind::X(_) => 0,
    }
}

/// The roots of a surface with an index for looking them up.
pub struct RootSystem<'a> {
    pub surface: &'a Surface,
    pub roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl<'a> RootSystem<'a> {
    pub fn new(surface: &'a Surface) -> RootSystem<'a> {
        let roots = roots(surface);
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        RootSystem { surface, roots, index }
    }

    /// Permutation of the roots induced by a word of simple reflections applied left to right.
    pub fn element(&self, word: &[usize]) -> Result<Perm> {
        self.roots
            .iter()
            .map(|r| {
                let img = self.surface.weyl_apply_divisor(word, r)?;
                Ok(self.index[&img] as u16)
            })
            .collect()
    }

    pub fn simple_reflections(&self) -> Vec<Perm> {
        (0..self.surface.simple_roots.len()).map(|i| self.element(&[i]).expect("simple reflection")).collect()
    }
}

fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inverse(a: &Perm) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out
}

fn is_identity(a: &Perm) -> bool {
    a.iter().enumerate().all(|(i, &x)| i == x as usize)
}

struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `trans[x]` maps `base` to `x`.
    trans: Vec<Option<Perm>>,
}

/// A base and strong generating set for a permutation group.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, gens: &[Perm]) -> StabilizerChain {
        let mut chain = StabilizerChain { degree, levels: Vec::new() };
        for g in gens {
            chain.insert(g.clone(), 0);
        }
        chain
    }

    fn sift(&self, mut g: Perm, from: usize) -> Option<(usize, Perm)> {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = g[level.base] as usize;
            match &level.trans[x] {
                None => return Some((i, g)),
                Some(u) => g = compose(&g, &inverse(u)),
            }
        }
        (!is_identity(&g)).then_some((self.levels.len(), g))
    }

    fn insert(&mut self, g: Perm, from: usize) {
        let Some((i, h)) = self.sift(g, from) else { return };
        if i == self.levels.len() {
            let base = h.iter().enumerate().position(|(x, &y)| x != y as usize).expect("non-identity");
            let mut trans = vec![None; self.degree];
            trans[base] = Some((0..self.degree as u16).collect());
            self.levels.push(Level { base, gens: Vec::new(), trans });
        }
        for j in (from..=i).rev() {
            self.levels[j].gens.push(h.clone());
            self.close_orbit(j);
        }
    }

    /// Extend the orbit of level `j` and sift every Schreier generator into level `j + 1`.
    fn close_orbit(&mut self, j: usize) {
        let mut queue: VecDeque<usize> = (0..self.degree).filter(|&x| self.levels[j].trans[x].is_some()).collect();
        while let Some(x) = queue.pop_front() {
            let ux = self.levels[j].trans[x].clone().expect("orbit point");
            for s in self.levels[j].gens.clone() {
                let y = s[x] as usize;
                let cand = compose(&ux, &s);
                match self.levels[j].trans[y].clone() {
                    None => {
                        self.levels[j].trans[y] = Some(cand);
                        queue.push_back(y);
                    }
                    Some(uy) => self.insert(compose(&cand, &inverse(&uy)), j + 1),
                }
            }
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.trans.iter().filter(|t| t.is_some()).count() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.sift(g.clone(), 0).is_none()
    }
}

/// Order of the subgroup generated by the given words of simple reflections.
pub fn generated_order(s: &Surface, words: &[Vec<usize>]) -> Result<u128> {
    let rs = RootSystem::new(s);
    if rs.roots.is_empty() {
        return Ok(1);
    }
    let gens = words.iter().map(|w| rs.element(w)).collect::<Result<Vec<_>>>()?;
    Ok(StabilizerChain::new(rs.roots.len(), &gens).order())
}
