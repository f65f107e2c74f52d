use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Default bound on the number of pairs in a rewritten word.
pub const DEFAULT_MAX_WORD_LEN: usize = 1_000_000;

/// An automorphism of a finite group, with all its powers tabulated.
#[derive(Clone, Debug)]
pub struct FiniteAutomorphism {
    group: Arc<FiniteGroup>,
    powers: Vec<Vec<usize>>,
}

impl FiniteAutomorphism {
    pub fn new(group: &Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        group.check_automorphism(&map)?;
        let identity: Vec<usize> = group.elements().collect();
        let mut powers = vec![identity.clone()];
        let mut current = map.clone();
        while current != identity {
            let next = current.iter().map(|&x| map[x]).collect();
            powers.push(current);
            current = next;
        }
        Ok(FiniteAutomorphism {
            group: Arc::clone(group),
            powers,
        })
    }

    /// `t ↦ b⁻¹ t b`.
    pub fn inner(group: &Arc<FiniteGroup>, b: usize) -> Result<Self> {
        group.check_index(b)?;
        Self::new(group, group.inner_automorphism(b))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn map(&self) -> &[usize] {
        self.powers.get(1).unwrap_or(&self.powers[0])
    }

    /// Least `p ≥ 1` with `φᵖ = 1`.
    pub fn period(&self) -> usize {
        self.powers.len()
    }

    /// `φˢ(t)`.
    pub fn apply_power(&self, s: i64, t: usize) -> usize {
        let p = self.powers.len() as i64;
        self.powers[s.rem_euclid(p) as usize][t]
    }
}

/// The function `t ↦ ∏ φ^{shift}(t)^{exponent}`, read left to right.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ShiftWord {
    pairs: Vec<(i64, i64)>,
}

impl ShiftWord {
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self> {
        if pairs.iter().any(|&(_, e)| e == 0) {
            return Err(Error::MalformedRelation("zero exponent".into()));
        }
        Ok(ShiftWord { pairs })
    }

    pub fn empty() -> Self {
        ShiftWord::default()
    }

    /// The word `t`.
    pub fn letter(shift: i64) -> Self {
        ShiftWord {
            pairs: vec![(shift, 1)],
        }
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn max_shift(&self) -> Option<i64> {
        self.pairs.iter().map(|p| p.0).max()
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.pairs.iter().map(|p| p.0).min()
    }

    /// Replaces `t` by `φˢ(t)`.
    pub fn shifted(&self, s: i64) -> Self {
        ShiftWord {
            pairs: self.pairs.iter().map(|&(a, e)| (a + s, e)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        ShiftWord {
            pairs: self.pairs.iter().rev().map(|&(a, e)| (a, -e)).collect(),
        }
    }

    pub fn power(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = ShiftWord::empty();
        for _ in 0..e.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// Appends `other`, merging equal shifts at the seam.
    pub fn append(&mut self, other: &ShiftWord) {
        for &(s, e) in &other.pairs {
            push_merged(&mut self.pairs, s, e);
        }
    }

    pub fn concat(&self, other: &ShiftWord) -> Self {
        let mut out = self.clone();
        out.append(other);
        out
    }

    pub fn evaluate(&self, phi: &FiniteAutomorphism, t: usize) -> usize {
        let g = &phi.group;
        self.pairs
            .iter()
            .fold(0, |acc, &(s, e)| g.mul(acc, g.pow(phi.apply_power(s, t), e)))
    }

    /// Whether the word evaluates to the identity at every element.
    pub fn is_identity_on(&self, phi: &FiniteAutomorphism) -> bool {
        phi.group.elements().all(|t| self.evaluate(phi, t) == 0)
    }

    /// Splits a relation `φ^ξ(t)·Y(t)·t` into `(ξ, Y)`.
    pub fn relation_parts(&self) -> Result<(i64, ShiftWord)> {
        let n = self.pairs.len();
        if n < 2 {
            return Err(Error::MalformedRelation("a relation needs at least two factors".into()));
        }
        let (xi, head) = self.pairs[0];
        if head != 1 || self.pairs[n - 1] != (0, 1) || xi < 1 {
            return Err(Error::MalformedRelation(
                "a relation must start with (ξ, 1), ξ ≥ 1, and end with (0, 1)".into(),
            ));
        }
        let middle = &self.pairs[1..n - 1];
        if middle.iter().any(|&(s, e)| s < 1 || s >= xi || e == 0) {
            return Err(Error::MalformedRelation("inner shifts must lie in [1, ξ − 1]".into()));
        }
        Ok((xi, ShiftWord { pairs: middle.to_vec() }))
    }
}

fn push_merged<K: PartialEq>(pairs: &mut Vec<(K, i64)>, k: K, e: i64) {
    if let Some(last) = pairs.last_mut() {
        if last.0 == k {
            last.1 += e;
            if last.1 == 0 {
                pairs.pop();
            }
            return;
        }
    }
    if e != 0 {
        pairs.push((k, e));
    }
}

impl fmt::Debug for ShiftWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ShiftWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "φ^{s}(t)^{e}")?;
        }
        Ok(())
    }
}

/// Reduces `zeta` modulo `period` without changing its sign.
pub fn reduce_by_period(zeta: i64, period: Option<u64>) -> i64 {
    match period {
        Some(p) if p > 0 => {
            let r = (zeta.unsigned_abs() % p) as i64;
            if zeta < 0 {
                -r
            } else {
                r
            }
        }
        _ => zeta,
    }
}

/// Expresses `φ^ζ(t)` as a word whose shifts lie strictly between `−ξ` and `ξ`,
/// on the same side of zero as `ζ`, given a relation `φ^ξ(t)·Y(t)·t = 1`.
///
/// With `period` known, `ζ` is first reduced modulo it.
pub fn rewrite_power(
    relation: &ShiftWord,
    zeta: i64,
    period: Option<u64>,
    max_len: usize,
) -> Result<ShiftWord> {
    let (xi, y) = relation.relation_parts()?;
    let zeta = reduce_by_period(zeta, period);
    if zeta.abs() < xi {
        return Ok(ShiftWord::letter(zeta));
    }
    let mut memo: HashMap<i64, ShiftWord> = HashMap::new();
    let positive = zeta > 0;
    let steps: Vec<i64> = if positive {
        (xi..=zeta).collect()
    } else {
        (zeta..=-xi).rev().collect()
    };
    for s in steps {
        // φˢ(t) = φ^{s−ξ}(t)⁻¹·Y(φ^{s−ξ}(t))⁻¹ and φˢ(t) = Y(φˢ(t))⁻¹·φ^{s+ξ}(t)⁻¹.
        let raw = if positive {
            ShiftWord::letter(s - xi).inverse().concat(&y.shifted(s - xi).inverse())
        } else {
            y.shifted(s).inverse().concat(&ShiftWord::letter(s + xi).inverse())
        };
        let mut out = ShiftWord::empty();
        for &(u, e) in &raw.pairs {
            match memo.get(&u) {
                Some(w) if u.abs() >= xi => {
                    if w.len().saturating_mul(e.unsigned_abs() as usize) + out.len() > max_len {
                        return Err(Error::WordTooLong(max_len));
                    }
                    out.append(&w.power(e));
                }
                _ => push_merged(&mut out.pairs, u, e),
            }
        }
        if out.len() > max_len {
            return Err(Error::WordTooLong(max_len));
        }
        memo.insert(s, out);
    }
    Ok(memo.remove(&zeta).expect("computed above"))
}

/// `∏ (φ₁^{v₁}∘…∘φ_d^{v_d})(t)^{θ}`, read left to right.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MultiShiftWord {
    pairs: Vec<(Vec<i64>, i64)>,
}

impl MultiShiftWord {
    pub fn pairs(&self) -> &[(Vec<i64>, i64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn append_power(&mut self, other: &MultiShiftWord, e: i64) {
        let forward = e > 0;
        for _ in 0..e.unsigned_abs() {
            let items: Box<dyn Iterator<Item = &(Vec<i64>, i64)>> = if forward {
                Box::new(other.pairs.iter())
            } else {
                Box::new(other.pairs.iter().rev())
            };
            for (v, x) in items {
                push_merged(&mut self.pairs, v.clone(), if forward { *x } else { -x });
            }
        }
    }

    /// Largest `|v_j|` over all shift vectors.
    pub fn max_abs_shift(&self) -> i64 {
        self.pairs
            .iter()
            .flat_map(|(v, _)| v.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// `φ_d` is applied first and `φ₁` last in each factor.
    pub fn evaluate(&self, autos: &[FiniteAutomorphism], t: usize) -> usize {
        let g = &autos[0].group;
        self.pairs.iter().fold(0, |acc, (v, e)| {
            let x = v
                .iter()
                .zip(autos)
                .rev()
                .fold(t, |x, (&s, phi)| phi.apply_power(s, x));
            g.mul(acc, g.pow(x, *e))
        })
    }
}

impl fmt::Debug for MultiShiftWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.pairs)
    }
}

/// Expresses `(φ₁^{ζ₁}∘…∘φ_d^{ζ_d})(t)` as a product of `(φ₁^{v₁}∘…∘φ_d^{v_d})(t)^θ`
/// with every `|v_j|` below the largest `ξ` of the relations.
pub fn rewrite_multi(
    relations: &[ShiftWord],
    periods: &[Option<u64>],
    zeta: &[i64],
    max_len: usize,
) -> Result<MultiShiftWord> {
    if relations.len() != zeta.len() || periods.len() != zeta.len() {
        return Err(Error::Dimension(format!(
            "{} relations, {} periods and {} exponents",
            relations.len(),
            periods.len(),
            zeta.len()
        )));
    }
    let d = zeta.len();
    if d == 0 {
        return Ok(MultiShiftWord {
            pairs: vec![(Vec::new(), 1)],
        });
    }
    let inner = rewrite_multi(&relations[..d - 1], &periods[..d - 1], &zeta[..d - 1], max_len)?;
    let last = rewrite_power(&relations[d - 1], zeta[d - 1], periods[d - 1], max_len)?;
    let mut out = MultiShiftWord::default();
    for &(a, theta) in last.pairs() {
        let piece = MultiShiftWord {
            pairs: inner
                .pairs
                .iter()
                .map(|(v, e)| {
                    let mut v = v.clone();
                    v.push(a);
                    (v, *e)
                })
                .collect(),
        };
        if out.len() + piece.len().saturating_mul(theta.unsigned_abs() as usize) > max_len {
            return Err(Error::WordTooLong(max_len));
        }
        out.append_power(&piece, theta);
    }
    Ok(out)
}

/// Checks that `relations` are valid for `autos` and that the groups agree.
pub fn check_relations(autos: &[FiniteAutomorphism], relations: &[ShiftWord]) -> Result<()> {
    if let Some(first) = autos.first() {
        if autos.iter().any(|a| !Arc::ptr_eq(&a.group, &first.group)) {
            return Err(Error::GroupMismatch);
        }
    }
    for (phi, rel) in autos.iter().zip(relations) {
        rel.relation_parts()?;
        if !rel.is_identity_on(phi) {
            return Err(Error::MalformedRelation(format!("{rel} is not an identity")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn word(pairs: &[(i64, i64)]) -> ShiftWord {
        ShiftWord::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn automorphism_powers() {
        let g = Arc::new(corpus::symmetric(3));
        let c = g.element_from_cycles(&[&[0, 1, 2]]).unwrap();
        let phi = FiniteAutomorphism::inner(&g, c).unwrap();
        assert_eq!(phi.period(), 3);
        for t in g.elements() {
            assert_eq!(phi.apply_power(-1, phi.apply_power(1, t)), t);
            assert_eq!(phi.apply_power(2, t), g.conjugate(t, g.mul(c, c)));
        }
        let c6 = Arc::new(corpus::cyclic(6));
        let inv = FiniteAutomorphism::new(&c6, c6.elements().map(|t| c6.inv(t)).collect()).unwrap();
        assert_eq!(inv.period(), 2);
        let id = FiniteAutomorphism::new(&c6, c6.elements().collect()).unwrap();
        assert_eq!(id.period(), 1);
        assert_eq!(id.map(), &[0, 1, 2, 3, 4, 5]);
        assert!(FiniteAutomorphism::new(&c6, vec![0, 2, 4, 0, 2, 4]).is_err());
    }

    #[test]
    fn word_algebra() {
        let w = word(&[(2, 1), (1, -2), (0, 1)]);
        assert_eq!(w.inverse(), word(&[(0, -1), (1, 2), (2, -1)]));
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.shifted(-1).pairs()[2], (-1, 1));
        assert_eq!(w.power(0), ShiftWord::empty());
        assert_eq!(w.power(2).len(), 6);
        assert!(ShiftWord::new(vec![(1, 0)]).is_err());
        assert_eq!(w.relation_parts().unwrap(), (2, word(&[(1, -2)])));
        assert!(word(&[(1, 2), (0, 1)]).relation_parts().is_err());
        assert!(word(&[(1, 1), (3, 1), (0, 1)]).relation_parts().is_err());
    }

    #[test]
    fn identity_relation_rewrites() {
        let c2 = Arc::new(corpus::cyclic(2));
        let id = FiniteAutomorphism::new(&c2, vec![0, 1]).unwrap();
        let rel = word(&[(2, 1), (1, -2), (0, 1)]);
        assert!(rel.is_identity_on(&id));
        let w = rewrite_power(&rel, 5, None, DEFAULT_MAX_WORD_LEN).unwrap();
        assert!(w.pairs().iter().all(|&(s, _)| (0..2).contains(&s)));
        for t in c2.elements() {
            assert_eq!(w.evaluate(&id, t), t);
        }
    }

    #[test]
    fn exhaustive_small_rewrites() {
        let g = Arc::new(corpus::symmetric(3));
        let c = g.element_from_cycles(&[&[0, 1, 2]]).unwrap();
        let phi = FiniteAutomorphism::inner(&g, c).unwrap();
        let rel = word(&[(6, 1), (3, -2), (0, 1)]);
        assert!(rel.is_identity_on(&phi));
        // Abelian polynomial identities need not survive as ordered words.
        assert!(!word(&[(4, 1), (3, -1), (1, -1), (0, 1)]).is_identity_on(&phi));
        for zeta in -20..=20 {
            for period in [None, Some(3)] {
                let w = rewrite_power(&rel, zeta, period, DEFAULT_MAX_WORD_LEN).unwrap();
                for &(s, _) in w.pairs() {
                    assert!(s.abs() < 6);
                    assert!(zeta >= 0 && s >= 0 || zeta <= 0 && s <= 0);
                }
                for t in g.elements() {
                    assert_eq!(w.evaluate(&phi, t), phi.apply_power(zeta, t), "ζ={zeta}");
                }
            }
        }
    }

    #[test]
    fn word_budget() {
        let rel = word(&[(2, 1), (1, -2), (0, 1)]);
        assert_eq!(
            rewrite_power(&rel, 60, None, 100).unwrap_err(),
            Error::WordTooLong(100)
        );
    }

    #[test]
    fn multi_rewrites_compose() {
        let g = Arc::new(corpus::symmetric(3));
        let a = g.element_from_cycles(&[&[0, 1]]).unwrap();
        let c = g.element_from_cycles(&[&[0, 1, 2]]).unwrap();
        let autos = [FiniteAutomorphism::inner(&g, a).unwrap(), FiniteAutomorphism::inner(&g, c).unwrap()];
        let rels = [word(&[(4, 1), (2, -2), (0, 1)]), word(&[(6, 1), (3, -2), (0, 1)])];
        check_relations(&autos, &rels).unwrap();
        for zeta in [[3, -4], [0, 0], [-7, 9], [5, 5]] {
            let w = rewrite_multi(&rels, &[None, None], &zeta, DEFAULT_MAX_WORD_LEN).unwrap();
            assert!(w.max_abs_shift() < 6);
            for t in g.elements() {
                let direct = autos[0].apply_power(zeta[0], autos[1].apply_power(zeta[1], t));
                assert_eq!(w.evaluate(&autos, t), direct);
            }
        }
        let w1 = rewrite_multi(&rels[..1], &[None], &[7], DEFAULT_MAX_WORD_LEN).unwrap();
        let p = rewrite_power(&rels[0], 7, None, DEFAULT_MAX_WORD_LEN).unwrap();
        assert_eq!(w1.pairs().iter().map(|(v, e)| (v[0], *e)).collect::<Vec<_>>(), p.pairs());
    }
}
