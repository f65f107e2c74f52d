use std::sync::Arc;

use serde::Serialize;

use super::report::{VerificationReport, Verdict};
use crate::error::{Error, Result};
use crate::group::{closure, derived_subgroup, is_soluble, normal_closure_in, FiniteGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaBounds {
    pub r: usize,
    pub s: usize,
    pub e: i64,
}

impl Default for OmegaBounds {
    fn default() -> Self {
        OmegaBounds { r: 4, s: 4, e: 4 }
    }
}

pub const DEFAULT_K_MAX: u64 = 6;

/// `[a, ᵣb]^{e₀}[a, ᵣ₊₁b]^{e₁}…[a, ᵣ₊ₛb]^{e_s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaWitness {
    pub r: usize,
    pub s: usize,
    pub exponents: Vec<i64>,
}

/// A minimum found within the search bounds, or `None` when the bounds were
/// exhausted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaResult {
    pub value: Option<u64>,
    pub witness: Option<OmegaWitness>,
}

impl OmegaResult {
    fn empty() -> Self {
        OmegaResult {
            value: None,
            witness: None,
        }
    }

    fn offer(&mut self, value: u64, w: &OmegaWitness) {
        if self.value.is_none_or(|v| value < v) {
            self.value = Some(value);
            self.witness = Some(w.clone());
        }
    }
}

/// Minima of `|e₀|` and of `|e_s|`, searched independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaPair {
    pub first: OmegaResult,
    pub last: OmegaResult,
}

/// The derived subgroup of the normal closure of `a` in `⟨a, b⟩`.
pub fn omega_target(g: &FiniteGroup, a: usize, b: usize) -> Result<Subgroup> {
    let ab = closure(g, &[a, b], false)?;
    let n = normal_closure_in(g, &ab, &[a]);
    Ok(derived_subgroup(g, &n))
}

pub fn evaluate_witness(g: &FiniteGroup, a: usize, b: usize, w: &OmegaWitness) -> Result<usize> {
    let mut acc = 0;
    for (i, &e) in w.exponents.iter().enumerate() {
        acc = g.mul(acc, g.pow(g.iterated_commutator(a, b, w.r + i)?, e));
    }
    Ok(acc)
}

/// Integers ordered `0, 1, −1, 2, −2, …` up to `bound`.
fn keyed(bound: i64) -> Vec<i64> {
    let mut v = vec![0];
    for x in 1..=bound {
        v.push(x);
        v.push(-x);
    }
    v
}

/// Exponent vectors of length `len` with max-norm exactly `norm` and nonzero
/// ends, in lexicographic order of keys.
fn vectors(len: usize, norm: i64) -> Vec<Vec<i64>> {
    let keys = keyed(norm);
    let mut out = Vec::new();
    let mut digits = vec![0usize; len];
    loop {
        let v: Vec<i64> = digits.iter().map(|&d| keys[d]).collect();
        if v[0] != 0 && v[len - 1] != 0 && v.iter().any(|x| x.abs() == norm) {
            out.push(v);
        }
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < keys.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

pub fn omega_bounded(g: &FiniteGroup, a: usize, b: usize, bounds: OmegaBounds) -> Result<OmegaPair> {
    g.check_index(a)?;
    g.check_index(b)?;
    let target = omega_target(g, a, b)?;
    let comms = (0..=bounds.r + bounds.s)
        .map(|k| g.iterated_commutator(a, b, k))
        .collect::<Result<Vec<_>>>()?;
    let mut pair = OmegaPair {
        first: OmegaResult::empty(),
        last: OmegaResult::empty(),
    };
    for r in 1..=bounds.r {
        for s in 0..=bounds.s {
            for norm in 1..=bounds.e {
                for exponents in vectors(s + 1, norm) {
                    let x = exponents
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (i, &e)| g.mul(acc, g.pow(comms[r + i], e)));
                    if target.contains(x) {
                        let w = OmegaWitness { r, s, exponents };
                        pair.first.offer(w.exponents[0].unsigned_abs(), &w);
                        pair.last.offer(w.exponents[s].unsigned_abs(), &w);
                        if pair.first.value == Some(1) && pair.last.value == Some(1) {
                            return Ok(pair);
                        }
                    }
                }
            }
        }
    }
    Ok(pair)
}

#[derive(Serialize)]
struct PairRecord {
    a: usize,
    b: usize,
    omega_last: Option<u64>,
    max_omega_first: Option<u64>,
}

/// Evaluates, within bounds, the conditions `Ω^⋆(a,b) = 1` and boundedness of
/// `Ω_⋆(a,bᵏ)` for `k ≤ k_max` over all pairs of a finite soluble group.
pub fn lemma22_empirical(g: &Arc<FiniteGroup>, bounds: OmegaBounds, k_max: u64) -> Result<VerificationReport> {
    if !is_soluble(g) {
        return Err(Error::NotSoluble);
    }
    let mut report = VerificationReport::new("lemma2.2")
        .param("group", g.name())
        .param("bounds", bounds)
        .param("k_max", k_max);
    let mut exhausted = Vec::new();
    let mut bad_witness = Vec::new();
    let mut max_first = 0u64;
    let mut max_last = 0u64;
    for a in g.elements() {
        for b in g.elements() {
            let base = omega_bounded(g, a, b, bounds)?;
            let target = omega_target(g, a, b)?;
            for w in [&base.first.witness, &base.last.witness].into_iter().flatten() {
                if !target.contains(evaluate_witness(g, a, b, w)?) {
                    bad_witness.push((a, b, w.clone()));
                }
            }
            let mut worst: Option<u64> = Some(0);
            for k in 1..=k_max {
                let bk = g.pow(b, k as i64);
                let res = omega_bounded(g, a, bk, bounds)?;
                let tk = omega_target(g, a, bk)?;
                if let Some(w) = &res.first.witness {
                    if !tk.contains(evaluate_witness(g, a, bk, w)?) {
                        bad_witness.push((a, bk, w.clone()));
                    }
                }
                worst = match (worst, res.first.value) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    _ => None,
                };
            }
            if let Some(v) = base.last.value {
                max_last = max_last.max(v);
            }
            if let Some(v) = worst {
                max_first = max_first.max(v);
            }
            if base.last.value != Some(1) || worst.is_none() {
                exhausted.push(PairRecord {
                    a,
                    b,
                    omega_last: base.last.value,
                    max_omega_first: worst,
                });
            }
        }
    }
    report.evidence("pairs", g.order() * g.order());
    report.evidence("max_omega_first", max_first);
    report.evidence("max_omega_last", max_last);
    report.check("witnesses round-trip", Verdict::from_bool(bad_witness.is_empty()), &bad_witness);
    let verdict = if exhausted.is_empty() {
        Verdict::Pass
    } else {
        Verdict::InconclusiveBounded
    };
    report.check("conditions met within bounds", verdict, &exhausted);
    Ok(report)
}
