//! Straight-line programs recording how group elements were produced from generators.

use std::cell::RefCell;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

use serde::Serialize;

use super::perm::Action;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Instr {
    Identity,
    Generator(usize),
    /// Left-to-right product of two earlier lines.
    Product(u32, u32),
    Inverse(u32),
}

/// A straight-line program; the value of the last line is the program's output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slp {
    pub lines: Vec<Instr>,
}

impl Slp {
    pub fn evaluate<T: Clone>(
        &self,
        generators: &[T],
        identity: &T,
        mul: impl Fn(&T, &T) -> T,
        inv: impl Fn(&T) -> T,
    ) -> T {
        let mut values: Vec<T> = Vec::with_capacity(self.lines.len());
        for line in &self.lines {
            let v = match *line {
                Instr::Identity => identity.clone(),
                Instr::Generator(i) => generators[i].clone(),
                Instr::Product(a, b) => mul(&values[a as usize], &values[b as usize]),
                Instr::Inverse(a) => inv(&values[a as usize]),
            };
            values.push(v);
        }
        values.pop().unwrap_or_else(|| identity.clone())
    }

    pub fn evaluate_action<P: Action>(&self, generators: &[P], identity: &P) -> P {
        self.evaluate(generators, identity, |a, b| a.then(b), |a| a.inverse())
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// Shared instruction arena for [`Tracked`] elements.
#[derive(Clone, Debug, Default)]
pub struct Arena(Rc<RefCell<Vec<Instr>>>);

impl Arena {
    pub fn new() -> Self {
        Arena::default()
    }

    fn push(&self, instr: Instr) -> u32 {
        let mut lines = self.0.borrow_mut();
        lines.push(instr);
        (lines.len() - 1) as u32
    }

    /// Wraps the `index`-th generator.
    pub fn generator<P: Action>(&self, index: usize, elem: P) -> Tracked<P> {
        Tracked {
            node: self.push(Instr::Generator(index)),
            elem,
            arena: self.clone(),
        }
    }

    pub fn identity<P: Action>(&self, elem: P) -> Tracked<P> {
        Tracked {
            node: self.push(Instr::Identity),
            elem,
            arena: self.clone(),
        }
    }

    /// Extracts the lines needed to compute `node`, renumbered compactly.
    pub fn program(&self, node: u32) -> Slp {
        let lines = self.0.borrow();
        let mut needed = vec![false; node as usize + 1];
        needed[node as usize] = true;
        for i in (0..=node as usize).rev() {
            if !needed[i] {
                continue;
            }
            match lines[i] {
                Instr::Product(a, b) => {
                    needed[a as usize] = true;
                    needed[b as usize] = true;
                }
                Instr::Inverse(a) => needed[a as usize] = true,
                _ => {}
            }
        }
        let mut renumber = vec![0u32; node as usize + 1];
        let mut out = Vec::new();
        for i in 0..=node as usize {
            if !needed[i] {
                continue;
            }
            renumber[i] = out.len() as u32;
            out.push(match lines[i] {
                Instr::Product(a, b) => Instr::Product(renumber[a as usize], renumber[b as usize]),
                Instr::Inverse(a) => Instr::Inverse(renumber[a as usize]),
                other => other,
            });
        }
        Slp { lines: out }
    }
}

/// A group element paired with the straight-line program that produced it.
/// Equality and hashing look only at the element.
#[derive(Clone)]
pub struct Tracked<P> {
    pub elem: P,
    node: u32,
    arena: Arena,
}

impl<P: Action> Tracked<P> {
    pub fn program(&self) -> Slp {
        self.arena.program(self.node)
    }
}

impl<P: fmt::Debug> fmt::Debug for Tracked<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Tracked").field(&self.elem).field(&self.node).finish()
    }
}

impl<P: PartialEq> PartialEq for Tracked<P> {
    fn eq(&self, other: &Self) -> bool {
        self.elem == other.elem
    }
}

impl<P: Eq> Eq for Tracked<P> {}

impl<P: Hash> Hash for Tracked<P> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elem.hash(state)
    }
}

impl<P: Action> Action for Tracked<P> {
    fn degree(&self) -> usize {
        self.elem.degree()
    }

    fn image(&self, point: usize) -> usize {
        self.elem.image(point)
    }

    fn then(&self, other: &Self) -> Self {
        Tracked {
            elem: self.elem.then(&other.elem),
            node: self.arena.push(Instr::Product(self.node, other.node)),
            arena: self.arena.clone(),
        }
    }

    fn inverse(&self) -> Self {
        Tracked {
            elem: self.elem.inverse(),
            node: self.arena.push(Instr::Inverse(self.node)),
            arena: self.arena.clone(),
        }
    }

    fn is_identity(&self) -> bool {
        self.elem.is_identity()
    }

    fn identity_like(&self) -> Self {
        self.arena.identity(self.elem.identity_like())
    }

    fn first_moved(&self) -> Option<usize> {
        self.elem.first_moved()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Permutation, PermutationGroup};

    #[test]
    fn factorization_witness_reproduces_element() {
        let a = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let b = Permutation::from_cycles(5, &[&[0, 1]]).unwrap();
        let arena = Arena::new();
        let gens = vec![arena.generator(0, a.clone()), arena.generator(1, b.clone())];
        let group = PermutationGroup::from_generators(arena.identity(Permutation::identity(5)), gens);
        let target = b.then(&a).then(&a).then(&b).then(&a.inverse());
        let path = group.factor(&arena.identity(target.clone()).then(&group.identity().clone())).unwrap();
        let mut acc = group.identity().clone();
        for (l, k) in path {
            acc = acc.then(group.transversal(l, k));
        }
        assert_eq!(acc.elem, target);
        let slp = acc.program();
        let value = slp.evaluate_action(&[a, b], &Permutation::identity(5));
        assert_eq!(value, target);
    }
}
