//! Deterministic Schreier–Sims stabilizer chains over any [`Action`].
//!
//! Base points are chosen as the smallest point moved by the element that forces a
//! new level, so the chain is a function of the generator order alone.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use super::perm::{Action, Permutation};

#[derive(Clone, Debug)]
struct Level<P> {
    base: usize,
    /// Indices into `PermutationGroup::strong`.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    position: HashMap<usize, usize>,
    /// `transversal[k]` maps `base` to `orbit[k]`.
    transversal: Vec<P>,
    inverse_transversal: Vec<P>,
    /// For each orbit point, how many of `gens` have had their Schreier generator sifted.
    checked: Vec<usize>,
}

impl<P: Action> Level<P> {
    fn new(base: usize, identity: P) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            position: HashMap::from([(base, 0)]),
            transversal: vec![identity.clone()],
            inverse_transversal: vec![identity],
            checked: vec![0],
        }
    }

    fn extend_orbit(&mut self, strong: &[P]) {
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            for &gi in &self.gens {
                let q = strong[gi].image(p);
                if !self.position.contains_key(&q) {
                    let u = self.transversal[k].then(&strong[gi]);
                    self.position.insert(q, self.orbit.len());
                    self.orbit.push(q);
                    self.inverse_transversal.push(u.inverse());
                    self.transversal.push(u);
                    self.checked.push(0);
                }
            }
            k += 1;
        }
    }

    fn next_pending(&mut self) -> Option<(usize, usize)> {
        let ngens = self.gens.len();
        for (k, done) in self.checked.iter_mut().enumerate() {
            if *done < ngens {
                let g = self.gens[*done];
                *done += 1;
                return Some((k, g));
            }
        }
        None
    }
}

/// A group given by generators together with a complete stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermutationGroup<P: Action = Permutation> {
    degree: usize,
    identity: P,
    generators: Vec<P>,
    strong: Vec<P>,
    levels: Vec<Level<P>>,
}

impl<P: Action> PermutationGroup<P> {
    /// The trivial group, shaped like `identity`.
    pub fn trivial(identity: P) -> Self {
        PermutationGroup {
            degree: identity.degree(),
            identity,
            generators: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn from_generators(identity: P, generators: impl IntoIterator<Item = P>) -> Self {
        let mut group = Self::trivial(identity);
        for g in generators {
            group.extend(g);
        }
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> &P {
        &self.identity
    }

    /// Generators in the order they were supplied (members already present are skipped).
    pub fn generators(&self) -> &[P] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[P] {
        &self.strong
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Transversal elements of every level, in level order.
    pub fn transversal_elements(&self) -> impl Iterator<Item = &P> {
        self.levels.iter().flat_map(|l| l.transversal.iter())
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn contains(&self, g: &P) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Strips `g` through the levels starting at `from`. Returns the residue and the
    /// level at which it left the chain (`levels.len()` when it passed every level).
    fn sift(&self, g: &P, from: usize) -> (P, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            match level.position.get(&h.image(level.base)) {
                Some(&k) => h = h.then(&level.inverse_transversal[k]),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    /// Writes a member as a product of transversal elements, as `(level, orbit index)`
    /// pairs to be multiplied left to right.
    pub fn factor(&self, g: &P) -> Option<Vec<(usize, usize)>> {
        let mut h = g.clone();
        let mut path = Vec::new();
        for (l, level) in self.levels.iter().enumerate() {
            let k = *level.position.get(&h.image(level.base))?;
            h = h.then(&level.inverse_transversal[k]);
            path.push((l, k));
        }
        if !h.is_identity() {
            return None;
        }
        path.reverse();
        Some(path)
    }

    pub fn transversal(&self, level: usize, index: usize) -> &P {
        &self.levels[level].transversal[index]
    }

    /// Adds a generator and completes the chain. Returns false when `g` was already a member.
    pub fn extend(&mut self, g: P) -> bool {
        assert_eq!(g.degree(), self.degree, "degree mismatch");
        let (residue, j) = self.sift(&g, 0);
        if residue.is_identity() {
            return false;
        }
        self.generators.push(g);
        self.insert_strong(residue, 0, j);
        self.complete(j);
        true
    }

    fn insert_strong(&mut self, h: P, lowest: usize, highest: usize) {
        if highest == self.levels.len() {
            let base = h.first_moved().expect("non-identity residue moves a point");
            self.levels.push(Level::new(base, self.identity.clone()));
        }
        let index = self.strong.len();
        self.strong.push(h);
        for l in lowest..=highest {
            self.levels[l].gens.push(index);
            self.levels[l].extend_orbit(&self.strong);
        }
    }

    /// Sifts pending Schreier generators. All levels above `start` must already be complete.
    fn complete(&mut self, start: usize) {
        let mut i = start;
        loop {
            let pending = self.levels[i].next_pending();
            match pending {
                Some((k, gi)) => {
                    let level = &self.levels[i];
                    let p = self.strong[gi].image(level.orbit[k]);
                    let back = &level.inverse_transversal[level.position[&p]];
                    let schreier = level.transversal[k].then(&self.strong[gi]).then(back);
                    let (residue, j) = self.sift(&schreier, i + 1);
                    if !residue.is_identity() {
                        self.insert_strong(residue, i + 1, j);
                        i = j;
                    }
                }
                None if i == 0 => break,
                None => i -= 1,
            }
        }
    }

    /// The stabilizer of the first base point when that point is `point`, or the
    /// whole group when no element moves `point`.
    pub fn stabilizer_of(&self, point: usize) -> Option<Self> {
        match self.levels.first() {
            None => Some(self.clone()),
            Some(level) if level.base == point => {
                let gens = self.levels.get(1).map_or_else(Vec::new, |next| {
                    next.gens.iter().map(|&g| self.strong[g].clone()).collect()
                });
                Some(Self::from_generators(self.identity.clone(), gens))
            }
            Some(_) if self.strong.iter().all(|g| g.image(point) == point) => Some(self.clone()),
            Some(_) => None,
        }
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &Self) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Smallest subgroup containing `gens` that is normalized by every element of `ambient`.
    pub fn normal_closure(ambient: &[P], gens: impl IntoIterator<Item = P>, identity: P) -> Self {
        let mut group = Self::trivial(identity);
        let mut queue: Vec<P> = Vec::new();
        for g in gens {
            if group.extend(g.clone()) {
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            for c in ambient {
                let y = x.conjugate_by(c);
                if group.extend(y.clone()) {
                    queue.push(y);
                }
            }
        }
        group
    }

    /// `[self, other]` for subgroups normalized by `ambient`, as the normal closure in
    /// `ambient` of commutators of generators.
    pub fn commutator_with(&self, other: &Self, ambient: &[P]) -> Self {
        let comms = self
            .generators
            .iter()
            .flat_map(|x| other.generators.iter().map(move |y| x.commutator(y)))
            .filter(|c| !c.is_identity())
            .collect::<Vec<_>>();
        Self::normal_closure(ambient, comms, self.identity.clone())
    }

    pub fn derived_subgroup(&self) -> Self {
        self.commutator_with(self, &self.generators)
    }

    /// Derived series ending at the first repeated term.
    pub fn derived_series(&self) -> Vec<Self> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                return series;
            }
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Lower central series ending at the first repeated term.
    pub fn lower_central_series(&self) -> Vec<Self> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                return series;
            }
            let next = last.commutator_with(self, &self.generators);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Number of derived-series steps to the trivial group, `None` if never reached.
    pub fn derived_length(&self) -> Option<usize> {
        let s = self.derived_series();
        s.last().unwrap().is_trivial().then(|| s.len() - 1)
    }

    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.last().unwrap().is_trivial().then(|| s.len() - 1)
    }
}

impl PermutationGroup<Permutation> {
    pub fn from_permutations(degree: usize, generators: &[Permutation]) -> Self {
        Self::from_generators(Permutation::identity(degree), generators.iter().cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn naive_order(degree: usize, gens: &[Permutation]) -> usize {
        let id = Permutation::identity(degree);
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn symmetric_three() {
        let gens = [cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])];
        let g = PermutationGroup::from_permutations(3, &gens);
        assert_eq!(g.order(), BigUint::from(6u32));
        assert_eq!(naive_order(3, &gens), 6);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermutationGroup::from_permutations(4, &[]);
        assert_eq!(g.order(), BigUint::one());
        assert!(g.contains(&Permutation::identity(4)));
        assert!(!g.contains(&cyc(4, &[&[0, 1]])));
    }

    #[test]
    fn klein_four_rejects_four_cycle() {
        let gens = [cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])];
        let g = PermutationGroup::from_permutations(4, &gens);
        assert_eq!(g.order(), BigUint::from(4u32));
        assert_eq!(naive_order(4, &gens), 4);
        assert!(!g.contains(&cyc(4, &[&[0, 1, 2, 3]])));
        assert!(g.contains(&cyc(4, &[&[0, 3], &[1, 2]])));
    }

    #[test]
    fn larger_groups_match_naive_closure() {
        let cases: Vec<(usize, Vec<Permutation>)> = vec![
            (5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1]])]),
            (6, vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4, 5]]), cyc(6, &[&[0, 3], &[1, 4], &[2, 5]])]),
            (7, vec![cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]]), cyc(7, &[&[1, 2, 4], &[3, 6, 5]])]),
            (8, vec![cyc(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]), cyc(8, &[&[0, 4, 2, 6], &[1, 7, 3, 5]])]),
        ];
        for (degree, gens) in cases {
            let g = PermutationGroup::from_permutations(degree, &gens);
            assert_eq!(g.order(), BigUint::from(naive_order(degree, &gens)));
        }
    }

    #[test]
    fn factor_reproduces_members() {
        let gens = [cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1]])];
        let g = PermutationGroup::from_permutations(5, &gens);
        let x = gens[0].then(&gens[1]).then(&gens[0]).then(&gens[0]);
        let path = g.factor(&x).unwrap();
        let rebuilt = path
            .iter()
            .fold(Permutation::identity(5), |acc, &(l, k)| acc.then(g.transversal(l, k)));
        assert_eq!(rebuilt, x);
    }

    #[test]
    fn series_of_symmetric_four() {
        let gens = [cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])];
        let g = PermutationGroup::from_permutations(4, &gens);
        let orders: Vec<BigUint> = g.derived_series().iter().map(|h| h.order()).collect();
        assert_eq!(orders, [24u32, 12, 4, 1].map(BigUint::from).to_vec());
        assert_eq!(g.derived_length(), Some(3));
        assert_eq!(g.nilpotency_class(), None);
    }

    #[test]
    fn stabilizer_of_first_base_point() {
        let gens = [cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])];
        let g = PermutationGroup::from_permutations(4, &gens);
        assert_eq!(g.base()[0], 0);
        let stab = g.stabilizer_of(0).unwrap();
        assert_eq!(stab.order(), BigUint::from(6u32));
    }
}
