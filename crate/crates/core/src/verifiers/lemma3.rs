use std::sync::Arc;

use serde::Serialize;

use super::report::{VerificationReport, Verdict};
use super::theorem12::same_subgroup;
use crate::abelian::{
    box_products, lemma32_word, lemma35_bounded_generators, relation_for, rewrite_multi, rewrite_power,
    FiniteAutomorphism, ShiftWord,
};
use crate::error::{Error, Result};
use crate::group::{is_soluble, polycyclic_sequence, FiniteGroup};
use crate::polyfun::{PolyFunGroup, PolyFunOptions, PolyFunction, Strategy};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RewriteOptions {
    /// `ζ` ranges over `[−zeta_max, zeta_max]`.
    pub zeta_max: i64,
    pub max_len: usize,
}

impl Default for RewriteOptions {
    fn default() -> Self {
        RewriteOptions {
            zeta_max: 20,
            max_len: crate::abelian::DEFAULT_MAX_WORD_LEN,
        }
    }
}

/// Inner automorphisms of `g`, one per distinct map, with a representative element.
fn inner_automorphisms(g: &Arc<FiniteGroup>) -> Result<Vec<(usize, FiniteAutomorphism)>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for b in g.elements() {
        let phi = FiniteAutomorphism::inner(g, b)?;
        if seen.insert(phi.map().to_vec()) {
            out.push((b, phi));
        }
    }
    Ok(out)
}

fn check_power(phi: &FiniteAutomorphism, rel: &ShiftWord, zeta: i64, period: Option<u64>, max_len: usize) -> Result<bool> {
    let xi = rel.relation_parts()?.0;
    let w = rewrite_power(rel, zeta, period, max_len)?;
    let in_range = w
        .pairs()
        .iter()
        .all(|&(s, _)| s.abs() < xi && (zeta >= 0 && s >= 0 || zeta <= 0 && s <= 0));
    Ok(in_range && phi.group().elements().all(|t| w.evaluate(phi, t) == phi.apply_power(zeta, t)))
}

/// Derived-series relations for every inner automorphism, single-power rewriting for
/// every `ζ` in range, and two-automorphism rewriting along the polycyclic sequence.
pub fn verify_lemma32(g: &Arc<FiniteGroup>, options: RewriteOptions) -> Result<VerificationReport> {
    if !is_soluble(g) {
        return Err(Error::NotSoluble);
    }
    let mut report = VerificationReport::new("lemma3.2")
        .param("group", g.name())
        .param("zeta_max", options.zeta_max)
        .param("max_word_len", options.max_len);
    let autos = inner_automorphisms(g)?;
    let mut relations = Vec::new();
    let mut bad_relations = Vec::new();
    let mut bad_powers = Vec::new();
    let mut max_xi = 0;
    for (b, phi) in &autos {
        let (w, _) = lemma32_word(phi)?;
        if !w.is_identity_on(phi) {
            bad_relations.push((*b, w.to_string()));
        }
        let xi = w.relation_parts()?.0;
        max_xi = max_xi.max(xi);
        let period = Some(phi.period() as u64);
        for zeta in -options.zeta_max..=options.zeta_max {
            if !check_power(phi, &w, zeta, period, options.max_len)? {
                bad_powers.push((*b, zeta, "reduced"));
            }
        }
        // The plain induction, without reducing by the period.
        for zeta in -(xi + 2)..=(xi + 2) {
            match check_power(phi, &w, zeta, None, options.max_len) {
                Ok(true) | Err(Error::WordTooLong(_)) => {}
                Ok(false) => bad_powers.push((*b, zeta, "unreduced")),
                Err(e) => return Err(e),
            }
        }
        relations.push(serde_json::json!({ "b": b, "xi": xi, "length": w.len() }));
    }
    report.evidence("inner_automorphisms", autos.len());
    report.evidence("max_xi", max_xi);
    report.evidence("relations", relations);
    report.check("relations vanish", Verdict::from_bool(bad_relations.is_empty()), &bad_relations);
    report.check("power rewriting", Verdict::from_bool(bad_powers.is_empty()), &bad_powers);

    let seq = polycyclic_sequence(g)?;
    let b: Vec<usize> = seq.elements().iter().take(2).copied().collect();
    let mut bad_multi = Vec::new();
    let mut vectors = 0usize;
    if !b.is_empty() {
        let phis = b
            .iter()
            .map(|&x| FiniteAutomorphism::inner(g, x))
            .collect::<Result<Vec<_>>>()?;
        let rels = phis.iter().map(relation_for).collect::<Result<Vec<_>>>()?;
        let periods: Vec<Option<u64>> = phis.iter().map(|p| Some(p.period() as u64)).collect();
        let xi = rels.iter().map(|r| r.relation_parts().map(|p| p.0)).collect::<Result<Vec<_>>>()?;
        let xi = xi.into_iter().max().unwrap_or(1);
        let z = options.zeta_max;
        let grid: Vec<Vec<i64>> = if phis.len() == 2 {
            (-z..=z).flat_map(|x| (-z..=z).map(move |y| vec![x, y])).collect()
        } else {
            (-z..=z).map(|x| vec![x]).collect()
        };
        for zeta in grid {
            vectors += 1;
            let w = rewrite_multi(&rels, &periods, &zeta, options.max_len)?;
            let ok = w.max_abs_shift() < xi
                && g.elements().all(|t| {
                    let direct = phis
                        .iter()
                        .zip(&zeta)
                        .rev()
                        .fold(t, |x, (phi, &s)| phi.apply_power(s, x));
                    w.evaluate(&phis, t) == direct
                });
            if !ok {
                bad_multi.push(zeta);
            }
        }
    }
    report.evidence("multi_vectors_checked", vectors);
    report.check("composite rewriting", Verdict::from_bool(bad_multi.is_empty()), &bad_multi);
    Ok(report)
}

/// Conjugators `b₁^{β₁}…b_d^{β_d}` over all integer exponents.
pub fn all_conjugators(g: &FiniteGroup, b: &[usize]) -> Vec<usize> {
    let bound = b.iter().map(|&x| g.element_order(x) as i64).max().unwrap_or(1);
    box_products(g, b, bound).into_iter().collect()
}

/// The sequence used for the bounded generating set: a polycyclic sequence when one
/// exists, otherwise the stored generators.
pub fn default_sequence(g: &FiniteGroup) -> Vec<usize> {
    polycyclic_sequence(g).map_or_else(|_| g.generators().to_vec(), |s| s.elements().to_vec())
}

pub const MAX_CONSTRUCTIVE_VECTORS: usize = 2048;

pub fn verify_lemma35(g: &Arc<FiniteGroup>, b: &[usize], options: RewriteOptions) -> Result<VerificationReport> {
    let bounded = lemma35_bounded_generators(g, b)?;
    let mut report = VerificationReport::new("lemma3.5")
        .param("group", g.name())
        .param("sequence", b)
        .param("max_word_len", options.max_len);
    report.evidence("xi", bounded.xi);
    report.evidence("bounded_generators", bounded.generators.len());

    let conjugators = all_conjugators(g, b);
    let full: Vec<PolyFunction> = conjugators
        .iter()
        .map(|&c| PolyFunction::conjugation(g, 1, 1, c))
        .collect::<Result<_>>()?;
    let opts = PolyFunOptions::default();
    let small = PolyFunGroup::generated(g, 1, bounded.generators.clone(), Strategy::Chain, opts)?;
    let large = PolyFunGroup::generated(g, 1, full, Strategy::Chain, opts)?;
    report.evidence("closure_order", small.order().to_string());
    report.check(
        "bounded and full conjugation sets generate the same subgroup",
        Verdict::from_bool(same_subgroup(&small, &large) && same_subgroup(&large, &small)),
        serde_json::json!({ "bounded": small.order().to_string(), "full": large.order().to_string() }),
    );

    // Conjugation by b₁^{β₁}…b_d^{β_d} is φ_d^{β_d}∘…∘φ₁^{β₁}.
    let phis = b
        .iter()
        .rev()
        .map(|&x| FiniteAutomorphism::inner(g, x))
        .collect::<Result<Vec<_>>>()?;
    let rels: Vec<ShiftWord> = bounded.relations.iter().rev().cloned().collect();
    let periods: Vec<Option<u64>> = phis.iter().map(|p| Some(p.period() as u64)).collect();
    let reach = bounded.xi + 1;
    let mut digits = vec![-reach; b.len()];
    let mut bad = Vec::new();
    let mut checked = 0;
    while checked < MAX_CONSTRUCTIVE_VECTORS {
        checked += 1;
        let c = digits
            .iter()
            .zip(b)
            .fold(0, |acc, (&beta, &x)| g.mul(acc, g.pow(x, beta)));
        let zeta: Vec<i64> = digits.iter().rev().copied().collect();
        let w = rewrite_multi(&rels, &periods, &zeta, options.max_len)?;
        let ok = w.max_abs_shift() < bounded.xi
            && g.elements().all(|t| w.evaluate(&phis, t) == g.conjugate(t, c));
        if !ok {
            bad.push(digits.clone());
        }
        let mut i = digits.len();
        let done = loop {
            if i == 0 {
                break true;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] <= reach {
                break false;
            }
            digits[i] = -reach;
        };
        if done || b.is_empty() {
            break;
        }
    }
    report.evidence("exponent_vectors_rewritten", checked);
    report.check("rewritten conjugations", Verdict::from_bool(bad.is_empty()), &bad);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn lemma32_small() {
        for name in ["C2", "S3", "Q8"] {
            let g = Arc::new(corpus::by_name(name).unwrap());
            let r = verify_lemma32(&g, RewriteOptions::default()).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.checks);
        }
    }

    #[test]
    fn lemma35_small() {
        for name in ["C6", "S3", "Q8", "A5"] {
            let g = Arc::new(corpus::by_name(name).unwrap());
            let b = default_sequence(&g);
            let r = verify_lemma35(&g, &b, RewriteOptions::default()).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.checks);
        }
        let c6 = Arc::new(corpus::cyclic(6));
        let r = verify_lemma35(&c6, &default_sequence(&c6), RewriteOptions::default()).unwrap();
        assert_eq!(r.evidence["closure_order"], "6");
    }
}
