use super::finite::FiniteGroup;
use crate::error::Result;

/// A subgroup of a [`FiniteGroup`], stored as a sorted member list plus the
/// generators it was closed from.
/// Equality compares member sets only.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    generators: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn trivial(group: &FiniteGroup) -> Self {
        let mut mask = vec![false; group.order()];
        mask[0] = true;
        Subgroup {
            members: vec![0],
            generators: Vec::new(),
            mask,
        }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup {
            members: group.elements().collect(),
            generators: group.generators().to_vec(),
            mask: vec![true; group.order()],
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.mask.get(a).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }

    /// True when conjugation by every generator of `ambient` preserves `self`.
    pub fn is_normal_in(&self, group: &FiniteGroup, ambient: &Subgroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.generators.iter().all(|&c| {
                self.generators
                    .iter()
                    .all(|&h| self.contains(group.conjugate(h, c)))
            })
    }

    /// Adds `g` as a generator and re-closes. Returns false when `g` was already a member.
    fn adjoin(&mut self, group: &FiniteGroup, g: usize) -> bool {
        if self.contains(g) {
            return false;
        }
        self.generators.push(g);
        // every element of the new subgroup is a product of old members and g
        let mut head = 0;
        while head < self.members.len() {
            let x = self.members[head];
            for &s in &self.generators {
                let y = group.mul(x, s);
                if !self.mask[y] {
                    self.mask[y] = true;
                    self.members.push(y);
                }
            }
            head += 1;
        }
        true
    }

    fn finalize(mut self) -> Self {
        self.members.sort_unstable();
        self
    }
}

/// The smallest subgroup containing `gens`; with `normal`, the smallest normal
/// subgroup of `group` containing them.
pub fn closure(group: &FiniteGroup, gens: &[usize], normal: bool) -> Result<Subgroup> {
    for &g in gens {
        group.check_index(g)?;
    }
    let ambient = Subgroup::whole(group);
    Ok(if normal {
        normal_closure_in(group, &ambient, gens)
    } else {
        generate(group, gens)
    })
}

pub(crate) fn generate(group: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut h = Subgroup::trivial(group);
    for &g in gens {
        h.adjoin(group, g);
    }
    h.finalize()
}

/// The normal closure of `gens` inside `ambient`, which must contain them.
pub fn normal_closure_in(group: &FiniteGroup, ambient: &Subgroup, gens: &[usize]) -> Subgroup {
    let mut h = Subgroup::trivial(group);
    for &g in gens {
        h.adjoin(group, g);
    }
    let mut next = 0;
    while next < h.generators.len() {
        let x = h.generators[next];
        for &c in &ambient.generators {
            let y = group.conjugate(x, c);
            h.adjoin(group, y);
        }
        next += 1;
    }
    h.finalize()
}

/// `[h, k]` for subgroups `h`, `k` that normalize each other, computed as the
/// normal closure in `ambient` of the generator commutators.
pub fn commutator_subgroup(
    group: &FiniteGroup,
    h: &Subgroup,
    k: &Subgroup,
    ambient: &Subgroup,
) -> Subgroup {
    let mut gens = Vec::new();
    for &x in &h.generators {
        for &y in &k.generators {
            let c = group.commutator(x, y);
            if c != 0 && !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    normal_closure_in(group, ambient, &gens)
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

pub fn derived_subgroup(group: &FiniteGroup, h: &Subgroup) -> Subgroup {
    commutator_subgroup(group, h, h, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    /// Brute-force closure used as an oracle: products of members until stable.
    fn brute_closure(group: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
        let mut set: Vec<bool> = vec![false; group.order()];
        set[0] = true;
        for &g in gens {
            set[g] = true;
        }
        loop {
            let current: Vec<usize> = (0..group.order()).filter(|&a| set[a]).collect();
            let mut grew = false;
            for &a in &current {
                for &b in &current {
                    let c = group.mul(a, b);
                    if !set[c] {
                        set[c] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                return (0..group.order()).filter(|&a| set[a]).collect();
            }
        }
    }

    #[test]
    fn empty_generation_is_trivial() {
        let g = corpus::symmetric(3);
        let h = closure(&g, &[], false).unwrap();
        assert_eq!(h.members(), &[0]);
    }

    #[test]
    fn three_cycle_generates_a3() {
        let g = corpus::symmetric(3);
        let c = g.element_from_cycles(&[&[0, 1, 2]]).unwrap();
        let h = closure(&g, &[c], false).unwrap();
        assert_eq!(h.order(), 3);
        assert!(h.is_normal_in(&g, &Subgroup::whole(&g)));
    }

    #[test]
    fn transposition_normal_closure_is_everything() {
        let g = corpus::symmetric(3);
        let t = g.element_from_cycles(&[&[0, 1]]).unwrap();
        assert_eq!(closure(&g, &[t], false).unwrap().order(), 2);
        assert_eq!(closure(&g, &[t], true).unwrap().order(), 6);
    }

    #[test]
    fn closure_matches_brute_force() {
        for g in corpus::standard_corpus() {
            for a in g.elements() {
                for b in [0, g.order() / 2, g.order() - 1] {
                    let h = closure(&g, &[a, b], false).unwrap();
                    assert_eq!(h.members(), brute_closure(&g, &[a, b]).as_slice());
                    let n = closure(&g, &[a], true).unwrap();
                    assert!(n.is_normal_in(&g, &Subgroup::whole(&g)));
                    // normality against every element, not just generators
                    for &x in n.members() {
                        for c in g.elements() {
                            assert!(n.contains(g.conjugate(x, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn derived_subgroup_matches_all_commutators() {
        for g in corpus::standard_corpus() {
            let whole = Subgroup::whole(&g);
            let d = derived_subgroup(&g, &whole);
            let all: Vec<usize> = g
                .elements()
                .flat_map(|a| g.elements().map(move |b| (a, b)))
                .map(|(a, b)| g.commutator(a, b))
                .collect();
            assert_eq!(d.members(), brute_closure(&g, &all).as_slice());
            assert!(d.is_normal_in(&g, &whole));
        }
    }

    #[test]
    fn out_of_range_generator_is_an_error() {
        let g = corpus::cyclic(3);
        assert!(closure(&g, &[5], false).is_err());
    }
}
