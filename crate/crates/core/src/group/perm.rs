//! Permutations on `0..degree` and the action abstraction used by stabilizer chains.
//!
//! Products are read left to right: `p.then(q)` applies `p` first, then `q`.
//! Every commutator value in this crate depends on that convention.

use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A group element acting on the points `0..degree()`.
///
/// Implementors must satisfy `x.then(y).image(p) == y.image(x.image(p))`.
pub trait Action: Clone + Eq + Hash + fmt::Debug {
    fn degree(&self) -> usize;
    fn image(&self, point: usize) -> usize;
    /// Left-to-right product: apply `self`, then `other`.
    fn then(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// The identity element of the same shape as `self`.
    fn identity_like(&self) -> Self;
    /// The smallest point moved by `self`.
    fn first_moved(&self) -> Option<usize>;

    fn commutator(&self, other: &Self) -> Self {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    /// `by⁻¹ · self · by`.
    fn conjugate_by(&self, by: &Self) -> Self {
        by.inverse().then(self).then(by)
    }

    fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut acc = self.identity_like();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }
}

/// A permutation stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &p in &images {
            if p >= degree || seen[p] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{degree}"
                )));
            }
            seen[p] = true;
        }
        Ok(Permutation(images.into_iter().map(|p| p as u32).collect()))
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]` for `(0 1 2)`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree || touched[p] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint on 0..{degree}"
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&p| p as usize)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Disjoint-cycle notation, fixed points omitted; `()` for the identity.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.0[start] as usize;
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.0[p] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            let parts: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl Action for Permutation {
    fn degree(&self) -> usize {
        self.0.len()
    }

    fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    fn then(&self, other: &Self) -> Self {
        Permutation(self.0.iter().map(|&p| other.0[p as usize]).collect())
    }

    fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Permutation(inv)
    }

    fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    fn identity_like(&self) -> Self {
        Permutation::identity(self.0.len())
    }

    fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().position(|(i, &p)| i as u32 != p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        // apply a then b: 0 -> 1 -> 2
        assert_eq!(a.then(&b).image(0), 2);
        assert_eq!(a.commutator(&b), Permutation::from_cycles(3, &[&[0, 2, 1]]).unwrap());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn display_and_first_moved() {
        let p = Permutation::from_cycles(5, &[&[1, 3], &[2, 4]]).unwrap();
        assert_eq!(p.to_string(), "(1 3)(2 4)");
        assert_eq!(p.first_moved(), Some(1));
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p.pow(2), Permutation::identity(5));
        assert_eq!(p.pow(-1), p);
    }
}
