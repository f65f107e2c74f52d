use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use super::perm::{Action, Permutation};
use crate::error::{Error, Result};

/// Groups above this order skip the cubic associativity check.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 128;
/// Default cap on the number of elements enumerated from permutation generators.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// How a group is described before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Table(Vec<Vec<usize>>),
    Permutations {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

/// A finite group given by its full multiplication table. Element 0 is the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<usize>,
    permutations: Option<Vec<Permutation>>,
    associativity_checked: bool,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

pub fn build_group(name: &str, spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Table(rows) => FiniteGroup::from_table(name, rows),
        GroupSpec::Permutations { degree, generators } => {
            let perms = generators
                .iter()
                .map(|g| {
                    if g.len() != *degree {
                        return Err(Error::InvalidPermutation(format!(
                            "generator {g:?} does not have degree {degree}"
                        )));
                    }
                    Permutation::from_images(g.clone())
                })
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::from_permutations(name, *degree, &perms, cap)
        }
    }
}

impl FiniteGroup {
    #[allow(clippy::needless_range_loop)]
    pub fn from_table(name: &str, rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::NotLatinSquare("empty table".into()));
        }
        if order > u16::MAX as usize {
            return Err(Error::Limit(format!("group order {order} exceeds {}", u16::MAX)));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotLatinSquare(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
        }
        for i in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for j in 0..order {
                let r = rows[i][j];
                let c = rows[j][i];
                if r >= order || c >= order {
                    return Err(Error::NotLatinSquare(format!(
                        "entry out of range in row {i} or column {i}"
                    )));
                }
                if row_seen[r] {
                    return Err(Error::NotLatinSquare(format!("row {i} repeats {r}")));
                }
                if col_seen[c] {
                    return Err(Error::NotLatinSquare(format!("column {i} repeats {c}")));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        for i in 0..order {
            if rows[0][i] != i || rows[i][0] != i {
                return Err(Error::IdentityNotZero(format!(
                    "row 0 and column 0 must be the identity map (fails at {i})"
                )));
            }
        }
        let table: Vec<u32> = rows.iter().flatten().map(|&x| x as u32).collect();
        let mut group = FiniteGroup {
            name: name.to_string(),
            order,
            table,
            inverses: Vec::new(),
            generators: Vec::new(),
            permutations: None,
            associativity_checked: false,
        };
        if order <= ASSOCIATIVITY_CHECK_LIMIT {
            group.check_associativity()?;
            group.associativity_checked = true;
        }
        group.finish();
        Ok(group)
    }

    /// Enumerates the group generated by `generators` breadth first: index 0 is the
    /// identity and the remaining indices follow discovery order.
    pub fn from_permutations(
        name: &str,
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "all generators must have degree {degree}"
            )));
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(identity, 0)]);
        let mut head = 0;
        while head < elements.len() {
            for g in generators {
                let next = elements[head].then(g);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            head += 1;
        }
        let order = elements.len();
        if order > u16::MAX as usize {
            return Err(Error::Limit(format!("group order {order} exceeds {}", u16::MAX)));
        }
        let mut table = Vec::with_capacity(order * order);
        for x in &elements {
            for y in &elements {
                table.push(index[&x.then(y)] as u32);
            }
        }
        let gen_indices: Vec<usize> = generators
            .iter()
            .map(|g| index[g])
            .filter(|&i| i != 0)
            .collect();
        let mut group = FiniteGroup {
            name: name.to_string(),
            order,
            table,
            inverses: Vec::new(),
            generators: Vec::new(),
            permutations: Some(elements),
            associativity_checked: true,
        };
        group.finish();
        let mut gens = Vec::new();
        for g in gen_indices {
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        group.generators = gens;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(&mut self) {
        let n = self.order;
        self.inverses = (0..n)
            .map(|a| (0..n).find(|&b| self.mul(a, b) == 0).unwrap() as u32)
            .collect();
        self.generators = self.greedy_generators();
    }

    /// Generating set picked in ascending index order: an element is kept when it is
    /// not already in the subgroup generated by the earlier picks.
    fn greedy_generators(&self) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut members = vec![0usize];
        let mut gens = Vec::new();
        for x in 1..self.order {
            if member[x] {
                continue;
            }
            gens.push(x);
            let mut head = 0;
            // re-close from scratch with the enlarged generating set
            members.clear();
            member.iter_mut().for_each(|m| *m = false);
            member[0] = true;
            members.push(0);
            while head < members.len() {
                for &g in &gens {
                    let y = self.mul(members[head], g);
                    if !member[y] {
                        member[y] = true;
                        members.push(y);
                    }
                }
                head += 1;
            }
        }
        gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// A generating set: the supplied permutation generators, or a greedy one for tables.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn associativity_checked(&self) -> bool {
        self.associativity_checked
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: a,
                order: self.order,
            })
        }
    }

    pub fn pow(&self, a: usize, exp: i64) -> usize {
        let base = if exp < 0 { self.inv(a) } else { a };
        let mut e = exp.unsigned_abs() % self.element_order(a) as u64;
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `by⁻¹ · a · by`.
    pub fn conjugate(&self, a: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), a), by)
    }

    /// `[a, ₖb]`: `[a, ₀b] = a` and `[a, ₖ₊₁b] = [[a, ₖb], b]`.
    pub fn iterated_commutator(&self, a: usize, b: usize, k: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok((0..k).fold(a, |acc, _| self.commutator(acc, b)))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&x| gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// The permutation behind each element, when the group was built from permutations.
    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.permutations.as_deref()
    }

    pub fn find_permutation(&self, p: &Permutation) -> Option<usize> {
        self.permutations.as_ref()?.iter().position(|q| q == p)
    }

    /// Element index of the permutation written in cycle notation.
    pub fn element_from_cycles(&self, cycles: &[&[usize]]) -> Option<usize> {
        let degree = self.permutations.as_ref()?.first()?.degree();
        let p = Permutation::from_cycles(degree, cycles).ok()?;
        self.find_permutation(&p)
    }

    /// Checks that `map` is a bijective homomorphism of this group onto itself.
    pub fn check_automorphism(&self, map: &[usize]) -> Result<()> {
        if map.len() != self.order {
            return Err(Error::NotAutomorphism(format!(
                "expected {} images, found {}",
                self.order,
                map.len()
            )));
        }
        let mut seen = vec![false; self.order];
        for &x in map {
            if x >= self.order || seen[x] {
                return Err(Error::NotAutomorphism("map is not a bijection".into()));
            }
            seen[x] = true;
        }
        for a in self.elements() {
            for b in self.elements() {
                if map[self.mul(a, b)] != self.mul(map[a], map[b]) {
                    return Err(Error::NotAutomorphism(format!(
                        "image of {a}·{b} is not the product of the images"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The inner automorphism `t ↦ b⁻¹ t b` as a permutation of element indices.
    pub fn inner_automorphism(&self, b: usize) -> Vec<usize> {
        self.elements().map(|t| self.conjugate(t, b)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn cyclic_two_from_table() {
        let g = FiniteGroup::from_table("C2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
        assert!(g.associativity_checked());
    }

    #[test]
    fn rejects_repeated_row() {
        let err = FiniteGroup::from_table("bad", &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotLatinSquare(_)));
    }

    #[test]
    fn rejects_identity_elsewhere() {
        let err = FiniteGroup::from_table("bad", &[vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::IdentityNotZero(_)));
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // loop of order 5 with identity 0 that is not a group
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", &rows).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
    }

    #[test]
    fn symmetric_three_from_permutations() {
        let spec = GroupSpec::Permutations {
            degree: 3,
            generators: vec![vec![1, 0, 2], vec![1, 2, 0]],
        };
        let g = build_group("S3", &spec, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn permutation_cap_is_enforced() {
        let spec = GroupSpec::Permutations {
            degree: 5,
            generators: vec![vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]],
        };
        assert_eq!(
            build_group("S5", &spec, 100).unwrap_err(),
            Error::CapExceeded { cap: 100 }
        );
    }

    #[test]
    fn iterated_commutator_examples() {
        let s3 = corpus::symmetric(3);
        let a = s3.element_from_cycles(&[&[0, 1]]).unwrap();
        let b = s3.element_from_cycles(&[&[0, 1, 2]]).unwrap();
        assert_eq!(s3.iterated_commutator(a, b, 0).unwrap(), a);
        let expected = s3.element_from_cycles(&[&[0, 2, 1]]).unwrap();
        assert_eq!(s3.iterated_commutator(a, b, 1).unwrap(), expected);
        let c6 = corpus::cyclic(6);
        for a in c6.elements() {
            for b in c6.elements() {
                assert_eq!(c6.iterated_commutator(a, b, 1).unwrap(), 0);
            }
        }
        assert!(s3.iterated_commutator(7, 0, 1).is_err());
    }

    #[test]
    fn iterated_commutator_recursion_on_corpus() {
        for g in corpus::standard_corpus() {
            for a in g.elements() {
                for b in g.elements() {
                    for k in 0..6 {
                        let next = g.iterated_commutator(a, b, k + 1).unwrap();
                        let step = g.commutator(g.iterated_commutator(a, b, k).unwrap(), b);
                        assert_eq!(next, step);
                    }
                }
            }
        }
    }

    #[test]
    fn exponent_kills_every_element() {
        for g in corpus::standard_corpus() {
            let e = g.exponent();
            assert_eq!(g.order() % e, 0);
            for a in g.elements() {
                assert_eq!(g.pow(a, e as i64), 0);
                assert_eq!(e % g.element_order(a), 0);
            }
        }
    }

    #[test]
    fn automorphism_validation() {
        let s3 = corpus::symmetric(3);
        for b in s3.elements() {
            s3.check_automorphism(&s3.inner_automorphism(b)).unwrap();
        }
        let mut swap: Vec<usize> = s3.elements().collect();
        swap.swap(1, 2);
        assert!(s3.check_automorphism(&swap).is_err());
    }
}
