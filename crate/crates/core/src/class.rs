//! Numerical K-theory classes and the Euler form.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::Surface;
use crate::Q;

/// A class in the numerical Grothendieck group, written as (rank, c1, chi).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NumClass {
    pub r: i64,
    pub c1: Vec<i64>,
    pub chi: i64,
}

/// Slope `d/r`, with rank zero classes sitting at `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(Q),
    Infinite,
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Slope::Finite(a), Slope::Finite(b)) => a.cmp(b),
            (Slope::Finite(_), Slope::Infinite) => Ordering::Less,
            (Slope::Infinite, Slope::Finite(_)) => Ordering::Greater,
            (Slope::Infinite, Slope::Infinite) => Ordering::Equal,
        }
    }
}

impl Slope {
    pub fn shift(self, by: i64) -> Slope {
        match self {
            Slope::Finite(q) => Slope::Finite(q + Q::from_integer(by as i128)),
            Slope::Infinite => Slope::Infinite,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(q) => write!(f, "{q}"),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

/// Euler form `chi(e, f)` computed from Riemann-Roch.
pub fn euler_form(e: &NumClass, f: &NumClass, s: &Surface) -> Result<i64> {
    s.check_dim(&e.c1)?;
    s.check_dim(&f.c1)?;
    Ok(chi(e, f, s))
}

/// Euler form without dimension checks, for classes already known to live on `s`.
pub(crate) fn chi(e: &NumClass, f: &NumClass, s: &Surface) -> i64 {
    e.r * f.chi + f.r * e.chi - e.r * f.r - s.dot(&e.c1, &f.c1) + f.r * s.dot(&s.canonical, &e.c1)
}

impl NumClass {
    /// The unique exceptional class with the given rank and first Chern class.
    pub fn exceptional(r: i64, c1: Vec<i64>, s: &Surface) -> Result<NumClass> {
        s.check_dim(&c1)?;
        if r <= 0 {
            return Err(Error::NotExceptional { r, c1, reason: "rank must be positive".into() });
        }
        let num = 1 + r * r + s.dot(&c1, &c1) - r * s.dot(&s.canonical, &c1);
        if num % (2 * r) != 0 {
            return Err(Error::NotExceptional { r, c1, reason: format!("chi = {num}/{} is not integral", 2 * r) });
        }
        Ok(NumClass { r, c1, chi: num / (2 * r) })
    }

    /// Class of the line bundle `O(D)`.
    pub fn line_bundle(d: Vec<i64>, s: &Surface) -> Result<NumClass> {
        NumClass::exceptional(1, d, s)
    }

    pub fn degree(&self, s: &Surface) -> i64 {
        s.degree(&self.c1)
    }

    pub fn slope(&self, s: &Surface) -> Slope {
        if self.r == 0 {
            Slope::Infinite
        } else {
            Slope::Finite(Q::new(self.degree(s) as i128, self.r as i128))
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: i64, other: &NumClass, b: i64) -> NumClass {
        NumClass {
            r: a * self.r + b * other.r,
            c1: self.c1.iter().zip(&other.c1).map(|(x, y)| a * x + b * y).collect(),
            chi: a * self.chi + b * other.chi,
        }
    }

    pub fn neg(&self) -> NumClass {
        NumClass { r: -self.r, c1: self.c1.iter().map(|x| -x).collect(), chi: -self.chi }
    }

    /// Class of `E ⊗ O(L)`.
    pub fn twist(&self, l: &[i64], s: &Surface) -> NumClass {
        let c1: Vec<i64> = self.c1.iter().zip(l).map(|(c, x)| c + self.r * x).collect();
        let ll = s.dot(l, l) - s.dot(&s.canonical, l);
        let chi = self.chi + s.dot(&self.c1, l) + self.r * ll / 2;
        NumClass { r: self.r, c1, chi }
    }

    /// Twist by `omega^k`, i.e. by `k·K`.
    pub fn twist_omega(&self, k: i64, s: &Surface) -> NumClass {
        let l: Vec<i64> = s.canonical.iter().map(|x| k * x).collect();
        self.twist(&l, s)
    }

    /// Flip the sign so that the rank is positive, or the rank is zero and the degree positive.
    pub fn normalized(&self, s: &Surface) -> Result<NumClass> {
        match self.r.cmp(&0) {
            Ordering::Greater => Ok(self.clone()),
            Ordering::Less => Ok(self.neg()),
            Ordering::Equal => match self.degree(s).cmp(&0) {
                Ordering::Greater => Ok(self.clone()),
                Ordering::Less => Ok(self.neg()),
                Ordering::Equal => Err(Error::DegenerateClass),
            },
        }
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.c1.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}, ({})]", self.r, c.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceKind;

    #[test]
    fn p2_line_bundles() {
        let s = SurfaceKind::P2.surface();
        let o = NumClass::line_bundle(vec![0], s).unwrap();
        let o1 = NumClass::line_bundle(vec![1], s).unwrap();
        let o2 = NumClass::line_bundle(vec![2], s).unwrap();
        assert_eq!(o1.chi, 3);
        assert_eq!(euler_form(&o, &o1, s).unwrap(), 3);
        assert_eq!(euler_form(&o2, &o1, s).unwrap(), 0);
        assert_eq!(euler_form(&o1, &o1, s).unwrap(), 1);
        assert_eq!(o1.degree(s), 3);
        assert_eq!(o1.slope(s), Slope::Finite(Q::from_integer(3)));
        assert_eq!(o.twist(&[2], s), o2);
    }

    #[test]
    fn exceptional_rejects_non_integral() {
        let s = SurfaceKind::P2.surface();
        assert!(NumClass::exceptional(2, vec![0], s).is_err());
        let x8 = SurfaceKind::X(8).surface();
        let e = NumClass::exceptional(4, vec![15, -3, -3, -3, -3, -3, -3, -2, -2], x8).unwrap();
        assert_eq!(euler_form(&e, &e, x8).unwrap(), 1);
    }

    #[test]
    fn p1xp1_degree() {
        let s = SurfaceKind::P1xP1.surface();
        assert_eq!(NumClass::line_bundle(vec![0, 0], s).unwrap().chi, 1);
        assert_eq!(NumClass::line_bundle(vec![0, 1], s).unwrap().degree(s), 2);
    }

    #[test]
    fn slopes_order_infinity_last() {
        assert!(Slope::Finite(Q::from_integer(1000)) < Slope::Infinite);
    }
}
