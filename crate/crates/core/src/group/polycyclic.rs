use super::finite::FiniteGroup;
use super::series::derived_series;
use super::subgroup::{generate, Subgroup};
use crate::error::{Error, Result};

/// Elements `b₁, …, b_d` with a subnormal series `G = G₁ ▷ G₂ ▷ … ▷ G_{d+1} = 1`
/// such that `b_j G_{j+1}` generates the cyclic factor `G_j / G_{j+1}`.
#[derive(Clone, Debug)]
pub struct PolycyclicSequence {
    elements: Vec<usize>,
    factor_orders: Vec<usize>,
    /// `series[j]` is `G_{j+1}` in one-based notation; the last entry is trivial.
    series: Vec<Subgroup>,
}

impl PolycyclicSequence {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn factor_orders(&self) -> &[usize] {
        &self.factor_orders
    }

    pub fn series(&self) -> &[Subgroup] {
        &self.series
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `b₁^{β₁} ⋯ b_d^{β_d}`.
    pub fn recompose(&self, group: &FiniteGroup, exponents: &[usize]) -> usize {
        self.elements
            .iter()
            .zip(exponents)
            .fold(0, |acc, (&b, &e)| group.mul(acc, group.pow(b, e as i64)))
    }

    /// The unique exponents `0 ≤ β_j < factor_orders[j]` with `a = b₁^{β₁} ⋯ b_d^{β_d}`.
    pub fn decompose(&self, group: &FiniteGroup, a: usize) -> Result<Vec<usize>> {
        group.check_index(a)?;
        let mut rest = a;
        let mut exps = Vec::with_capacity(self.len());
        for (j, &b) in self.elements.iter().enumerate() {
            let next = &self.series[j + 1];
            let b_inv = group.inv(b);
            let mut beta = 0;
            // peel b_j off the left until the remainder drops into G_{j+1}
            while !next.contains(rest) {
                rest = group.mul(b_inv, rest);
                beta += 1;
                if beta >= self.factor_orders[j] {
                    return Err(Error::Internal(format!(
                        "element {a} has no exponent at step {j}"
                    )));
                }
            }
            exps.push(beta);
        }
        Ok(exps)
    }
}

/// Refines the derived series into cyclic steps. Within each abelian factor the
/// generators are taken in ascending element order.
pub fn polycyclic_sequence(group: &FiniteGroup) -> Result<PolycyclicSequence> {
    let derived = derived_series(group);
    if !derived.last().unwrap().is_trivial() {
        return Err(Error::NotSoluble);
    }
    // build bottom-up: 1 = L₀ < L₁ < … < L_d = G
    let mut chain = vec![Subgroup::trivial(group)];
    let mut picked = Vec::new();
    for level in derived.iter().rev().skip(1) {
        for x in level.members().iter().copied() {
            let current = chain.last().unwrap();
            if current.contains(x) {
                continue;
            }
            let mut gens = current.generators().to_vec();
            gens.push(x);
            chain.push(generate(group, &gens));
            picked.push(x);
        }
    }
    chain.reverse();
    picked.reverse();
    let factor_orders = chain
        .windows(2)
        .map(|w| w[0].order() / w[1].order())
        .collect();
    let seq = PolycyclicSequence {
        elements: picked,
        factor_orders,
        series: chain,
    };
    let mut seen = vec![false; group.order()];
    for a in group.elements() {
        let exps = seq.decompose(group, a)?;
        if seq.recompose(group, &exps) != a || std::mem::replace(&mut seen[a], true) {
            return Err(Error::Internal("polycyclic decomposition is not a bijection".into()));
        }
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn cyclic_six_single_step() {
        let g = corpus::cyclic(6);
        let seq = polycyclic_sequence(&g).unwrap();
        assert_eq!(seq.factor_orders(), &[6]);
        let b = seq.elements()[0];
        assert_eq!(g.element_order(b), 6);
        assert_eq!(seq.decompose(&g, g.pow(b, 4)).unwrap(), vec![4]);
        assert_eq!(seq.decompose(&g, 0).unwrap(), vec![0]);
    }

    #[test]
    fn symmetric_three_transposition_then_three_cycle() {
        let g = corpus::symmetric(3);
        let seq = polycyclic_sequence(&g).unwrap();
        assert_eq!(seq.factor_orders(), &[2, 3]);
        assert_eq!(g.element_order(seq.elements()[0]), 2);
        assert_eq!(g.element_order(seq.elements()[1]), 3);
        // exhaustive oracle over all six exponent pairs
        for a in g.elements() {
            let mut hits = Vec::new();
            for b1 in 0..2 {
                for b2 in 0..3 {
                    let prod = g.mul(
                        g.pow(seq.elements()[0], b1),
                        g.pow(seq.elements()[1], b2),
                    );
                    if prod == a {
                        hits.push(vec![b1 as usize, b2 as usize]);
                    }
                }
            }
            assert_eq!(hits, vec![seq.decompose(&g, a).unwrap()]);
        }
    }

    #[test]
    fn alternating_five_rejected() {
        assert_eq!(
            polycyclic_sequence(&corpus::alternating(5)).unwrap_err(),
            Error::NotSoluble
        );
    }

    #[test]
    fn round_trips_on_soluble_corpus() {
        for g in corpus::soluble_corpus() {
            let seq = polycyclic_sequence(&g).unwrap();
            assert_eq!(seq.factor_orders().iter().product::<usize>(), g.order());
            for a in g.elements() {
                let e = seq.decompose(&g, a).unwrap();
                assert_eq!(seq.recompose(&g, &e), a);
            }
            // every exponent tuple recomposes to a distinct element
            let mut tuples = vec![vec![]];
            for &o in seq.factor_orders() {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t: Vec<usize>| {
                        (0..o).map(move |e| {
                            let mut t = t.clone();
                            t.push(e);
                            t
                        })
                    })
                    .collect();
            }
            for t in tuples {
                let a = seq.recompose(&g, &t);
                assert_eq!(seq.decompose(&g, a).unwrap(), t);
            }
            for w in seq.series().windows(2) {
                assert!(w[1].is_normal_in(&g, &w[0]));
            }
        }
    }
}
