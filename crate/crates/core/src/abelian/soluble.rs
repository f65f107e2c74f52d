use std::sync::Arc;

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::fgab::FgAbelianGroup;
use super::matrix::IntMatrix;
use super::poly::IntPolynomial;
use super::shift::{FiniteAutomorphism, ShiftWord};
use crate::error::{Error, Result};
use crate::group::{closure, derived_series, FiniteGroup, Subgroup};
use crate::polyfun::PolyFunction;

/// A presentation of the abelian section `top / bottom` of a finite group.
#[derive(Clone, Debug)]
pub struct AbelianSection {
    pub generators: Vec<usize>,
    pub relative_orders: Vec<usize>,
    pub group: FgAbelianGroup,
    /// Exponent vector of each element of `top`, indexed by element.
    coordinates: Vec<Option<Vec<i64>>>,
}

impl AbelianSection {
    /// Requires `bottom ⊴ top` with abelian quotient.
    pub fn new(g: &FiniteGroup, top: &Subgroup, bottom: &Subgroup) -> Result<Self> {
        let mut generators = Vec::new();
        let mut relative_orders = Vec::new();
        let mut current = bottom.clone();
        for &x in top.members() {
            if current.contains(x) {
                continue;
            }
            let mut r = 1;
            let mut p = x;
            while !current.contains(p) {
                p = g.mul(p, x);
                r += 1;
            }
            generators.push(x);
            relative_orders.push(r);
            let mut gens = current.generators().to_vec();
            gens.push(x);
            current = closure(g, &gens, false)?;
        }
        let m = generators.len();
        let mut coordinates = vec![None; g.order()];
        let total: usize = relative_orders.iter().product();
        for index in 0..total {
            let mut rest = index;
            let mut e = vec![0i64; m];
            let mut p = 0;
            for j in 0..m {
                e[j] = (rest % relative_orders[j]) as i64;
                rest /= relative_orders[j];
                p = g.mul(p, g.pow(generators[j], e[j]));
            }
            for &h in bottom.members() {
                coordinates[g.mul(p, h)] = Some(e.clone());
            }
        }
        let mut columns = Vec::with_capacity(m);
        for j in 0..m {
            let power = g.pow(generators[j], relative_orders[j] as i64);
            let lower = coordinates[power].clone().expect("power lies in the section");
            let mut column: Vec<BigInt> = lower.iter().map(|&x| BigInt::from(-x)).collect();
            column[j] += relative_orders[j];
            columns.push(column);
        }
        let group = FgAbelianGroup::new(m, IntMatrix::from_columns(m, &columns)?)?;
        Ok(AbelianSection {
            generators,
            relative_orders,
            group,
            coordinates,
        })
    }

    pub fn coordinates(&self, x: usize) -> Option<&[i64]> {
        self.coordinates.get(x)?.as_deref()
    }

    /// The matrix of the automorphism induced by `map`.
    pub fn induced_matrix(&self, map: &[usize]) -> Result<IntMatrix> {
        let m = self.generators.len();
        let mut columns = Vec::with_capacity(m);
        for &x in &self.generators {
            let c = self
                .coordinates(map[x])
                .ok_or_else(|| Error::NotAutomorphism("section is not invariant".into()))?;
            columns.push(c.iter().map(|&v| BigInt::from(v)).collect());
        }
        IntMatrix::from_columns(m, &columns)
    }
}

/// One step of the derived-series walk.
#[derive(Clone, Debug, Serialize)]
pub struct SectionStep {
    pub section_order: usize,
    pub annihilator: String,
    pub word_length: usize,
}

/// `W ↦ ∏_{j = λ, …, 0} φʲ(W)^{c_j}`.
pub fn apply_polynomial(word: &ShiftWord, p: &IntPolynomial) -> Result<ShiftWord> {
    let mut out = ShiftWord::empty();
    for (j, c) in p.coefficients().iter().enumerate().rev() {
        let c = c
            .to_i64()
            .ok_or_else(|| Error::Limit(format!("coefficient {c} does not fit in 64 bits")))?;
        if c != 0 {
            out.append(&word.shifted(j as i64).power(c));
        }
    }
    Ok(out)
}

/// A relation `φ^ξ(t)·Y(t)·t = 1` valid at every `t`, with the shifts of `Y` in
/// `[1, ξ − 1]`, built down the derived series.
pub fn lemma32_word(phi: &FiniteAutomorphism) -> Result<(ShiftWord, Vec<SectionStep>)> {
    let g = phi.group();
    let series = derived_series(g);
    if !series.last().expect("series is non-empty").is_trivial() {
        return Err(Error::NotSoluble);
    }
    if g.order() == 1 {
        return Ok((ShiftWord::new(vec![(1, 1), (0, 1)])?, Vec::new()));
    }
    let mut word = ShiftWord::letter(0);
    let mut steps = Vec::new();
    for pair in series.windows(2) {
        let section = AbelianSection::new(g, &pair[0], &pair[1])?;
        let aut = section
            .group
            .check_automorphism(section.induced_matrix(phi.map())?)?;
        let p = aut.annihilator()?;
        word = apply_polynomial(&word, &p)?;
        steps.push(SectionStep {
            section_order: pair[0].order() / pair[1].order(),
            annihilator: p.to_string(),
            word_length: word.len(),
        });
    }
    word.relation_parts()?;
    if !word.is_identity_on(phi) {
        return Err(Error::Internal(format!("{word} does not vanish")));
    }
    Ok((word, steps))
}

/// `(T^{2N} − 2T^N + 1)` for an automorphism of order `N`; valid in every finite group.
pub fn period_relation(phi: &FiniteAutomorphism) -> ShiftWord {
    let n = phi.period() as i64;
    ShiftWord::new(vec![(2 * n, 1), (n, -2), (0, 1)]).expect("exponents are nonzero")
}

/// Relation used for `φ`: the derived-series word when `G` is soluble, otherwise
/// [`period_relation`].
pub fn relation_for(phi: &FiniteAutomorphism) -> Result<ShiftWord> {
    match lemma32_word(phi) {
        Ok((w, _)) => Ok(w),
        Err(Error::NotSoluble) => Ok(period_relation(phi)),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug)]
pub struct BoundedGenerators {
    pub xi: i64,
    pub relations: Vec<ShiftWord>,
    /// Distinct conjugators `b₁^{β₁}…b_d^{β_d}` with every `|βᵢ| < ξ`.
    pub conjugators: Vec<usize>,
    pub generators: Vec<PolyFunction>,
}

/// `b₁^{β₁}…b_d^{β_d}` over all `β` in the box `|βᵢ| ≤ bound`.
pub fn box_products(g: &FiniteGroup, b: &[usize], bound: i64) -> IndexSet<usize> {
    let mut out: IndexSet<usize> = IndexSet::from([0]);
    for &bj in b {
        let mut next = IndexSet::new();
        for &x in &out {
            for beta in -bound..=bound {
                next.insert(g.mul(x, g.pow(bj, beta)));
            }
        }
        out = next;
    }
    out
}

/// Conjugation functions by `b₁^{β₁}…b_d^{β_d}` with `|βᵢ| < ξ`, for `ξ` the largest
/// shift among the relations of the inner automorphisms `t ↦ bⱼ⁻¹tbⱼ`.
pub fn lemma35_bounded_generators(g: &Arc<FiniteGroup>, b: &[usize]) -> Result<BoundedGenerators> {
    let mut relations = Vec::with_capacity(b.len());
    for &bj in b {
        relations.push(relation_for(&FiniteAutomorphism::inner(g, bj)?)?);
    }
    let xi = relations
        .iter()
        .map(|r| r.relation_parts().map(|p| p.0))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(1);
    let conjugators: Vec<usize> = box_products(g, b, xi - 1).into_iter().collect();
    let mut generators: IndexSet<PolyFunction> = IndexSet::new();
    for &c in &conjugators {
        generators.insert(PolyFunction::conjugation(g, 1, 1, c)?);
    }
    Ok(BoundedGenerators {
        xi,
        relations,
        conjugators,
        generators: generators.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::shift::{rewrite_power, DEFAULT_MAX_WORD_LEN};
    use crate::corpus;

    fn arc(name: &str) -> Arc<FiniteGroup> {
        Arc::new(corpus::by_name(name).unwrap())
    }

    #[test]
    fn spec_relations() {
        let c2 = arc("C2");
        let id = FiniteAutomorphism::new(&c2, vec![0, 1]).unwrap();
        let (w, _) = lemma32_word(&id).unwrap();
        assert_eq!(w, ShiftWord::new(vec![(2, 1), (1, -2), (0, 1)]).unwrap());
        let c6 = arc("C6");
        let inv = FiniteAutomorphism::new(&c6, c6.elements().map(|t| c6.inv(t)).collect()).unwrap();
        let (w, _) = lemma32_word(&inv).unwrap();
        assert_eq!(w, ShiftWord::new(vec![(1, 1), (0, 1)]).unwrap());
        let s3 = arc("S3");
        let c = s3.element_from_cycles(&[&[0, 1, 2]]).unwrap();
        let (w, steps) = lemma32_word(&FiniteAutomorphism::inner(&s3, c).unwrap()).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(w.is_identity_on(&FiniteAutomorphism::inner(&s3, c).unwrap()));
        let trivial = Arc::new(corpus::trivial());
        let (w, _) = lemma32_word(&FiniteAutomorphism::new(&trivial, vec![0]).unwrap()).unwrap();
        assert_eq!(w, ShiftWord::new(vec![(1, 1), (0, 1)]).unwrap());
    }

    #[test]
    fn relations_for_all_inner_automorphisms() {
        for name in ["S3", "D4", "Q8", "A4", "S4"] {
            let g = arc(name);
            for b in g.elements() {
                let phi = FiniteAutomorphism::inner(&g, b).unwrap();
                let (w, _) = lemma32_word(&phi).unwrap();
                assert!(w.is_identity_on(&phi), "{name} b={b}");
                assert!(w.min_shift() == Some(0));
            }
        }
        let a5 = arc("A5");
        let phi = FiniteAutomorphism::inner(&a5, 7).unwrap();
        assert_eq!(lemma32_word(&phi).unwrap_err(), Error::NotSoluble);
        assert!(relation_for(&phi).unwrap().is_identity_on(&phi));
    }

    #[test]
    fn non_inner_automorphisms() {
        let c7 = arc("C3");
        let inv = FiniteAutomorphism::new(&c7, vec![0, 2, 1]).unwrap();
        let (w, _) = lemma32_word(&inv).unwrap();
        for zeta in [4, -4, 0, 19] {
            let r = rewrite_power(&w, zeta, None, DEFAULT_MAX_WORD_LEN).unwrap();
            assert!(r.pairs().iter().all(|&(s, _)| s.abs() < w.relation_parts().unwrap().0));
            for t in c7.elements() {
                assert_eq!(r.evaluate(&inv, t), inv.apply_power(zeta, t));
            }
        }
    }

    #[test]
    fn section_presentations() {
        let g = arc("Q8");
        let series = derived_series(&g);
        let s = AbelianSection::new(&g, &series[0], &series[1]).unwrap();
        assert_eq!(s.relative_orders.iter().product::<usize>(), 4);
        assert_eq!(s.group.torsion_order(), BigInt::from(4));
        let s = AbelianSection::new(&g, &series[1], &series[2]).unwrap();
        assert_eq!(s.relative_orders, vec![2]);
    }

    #[test]
    fn bounded_generators() {
        let c6 = arc("C6");
        let r = lemma35_bounded_generators(&c6, c6.generators()).unwrap();
        assert_eq!(r.generators.len(), 1);
        let s3 = arc("S3");
        let b = crate::group::polycyclic_sequence(&s3).unwrap().elements().to_vec();
        let r = lemma35_bounded_generators(&s3, &b).unwrap();
        assert!(r.xi >= 1);
        assert_eq!(r.conjugators.len(), 6);
    }
}
