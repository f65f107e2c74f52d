use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::report::{VerificationReport, Verdict};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::polyfun::{build_polyfun_group, PolyFunGroup, PolyFunOptions, PolyFunction, Strategy};

/// A reduced word in `y₁, …, y_k`: syllables `(variable, exponent)` with nonzero
/// exponents and distinct adjacent variables. Variables are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LawWord {
    k: usize,
    syllables: Vec<(usize, i64)>,
}

impl LawWord {
    /// Freely reduces the given syllables.
    pub fn new(k: usize, raw: &[(usize, i64)]) -> Result<Self> {
        let mut syllables: Vec<(usize, i64)> = Vec::new();
        for &(v, e) in raw {
            if v == 0 || v > k {
                return Err(Error::VariableOutOfRange { index: v, n: k });
            }
            match syllables.last_mut() {
                Some(last) if last.0 == v => {
                    last.1 += e;
                    if last.1 == 0 {
                        syllables.pop();
                    }
                }
                _ if e != 0 => syllables.push((v, e)),
                _ => {}
            }
        }
        Ok(LawWord { k, syllables })
    }

    /// `y1^2 * y2^-1`; `1` is the empty word.
    pub fn parse(k: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return LawWord::new(k, &[]);
        }
        let mut raw = Vec::new();
        let mut pos = 0;
        for token in text.split(|c: char| c == '*' || c.is_whitespace()) {
            if token.is_empty() {
                pos += 1;
                continue;
            }
            let err = |msg: &str| Error::Parse {
                pos,
                msg: format!("{msg} in `{token}`"),
            };
            let body = token.strip_prefix('y').ok_or_else(|| err("expected `y`"))?;
            let (var, exp) = match body.split_once('^') {
                Some((v, e)) => (v, e.parse::<i64>().map_err(|_| err("bad exponent"))?),
                None => (body, 1),
            };
            let var = var.parse::<usize>().map_err(|_| err("bad variable"))?;
            raw.push((var, exp));
            pos += token.len() + 1;
        }
        LawWord::new(k, &raw)
    }

    pub fn commutator(k: usize, a: usize, b: usize) -> Result<Self> {
        LawWord::new(k, &[(a, -1), (b, -1), (a, 1), (b, 1)])
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    /// Number of letters `y_i^{±1}`.
    pub fn length(&self) -> usize {
        self.syllables.iter().map(|s| s.1.unsigned_abs() as usize).sum()
    }

    /// Variables occurring in the word, ascending.
    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.syllables.iter().map(|s| s.0).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// All reduced words of length at most `max_len`, shortest first.
    pub fn enumerate(k: usize, max_len: usize) -> Vec<LawWord> {
        let letters: Vec<(usize, i64)> = (1..=k).flat_map(|v| [(v, 1), (v, -1)]).collect();
        let mut out = vec![LawWord { k, syllables: Vec::new() }];
        let mut layer: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &(v, e) in &letters {
                    if w.last() == Some(&(v, -e)) {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push((v, e));
                    next.push(w2);
                }
            }
            out.extend(next.iter().map(|w| LawWord::new(k, w).expect("letters are in range")));
            layer = next;
        }
        out
    }

    pub fn evaluate<T: Clone>(
        &self,
        values: &[T],
        identity: &T,
        mul: impl Fn(&T, &T) -> T,
        inv: impl Fn(&T) -> T,
    ) -> T {
        let mut acc = identity.clone();
        for &(v, e) in &self.syllables {
            let base = if e < 0 { inv(&values[v - 1]) } else { values[v - 1].clone() };
            for _ in 0..e.unsigned_abs() {
                acc = mul(&acc, &base);
            }
        }
        acc
    }
}

impl fmt::Display for LawWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, &(v, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "y{v}")?;
            } else {
                write!(f, "y{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sweeps all substitutions of `elements` into the variables that occur in `w`;
/// returns the first one (indices into `elements`, unused variables 0) that
/// does not evaluate to the identity.
fn sweep<T: Clone>(
    w: &LawWord,
    elements: &[T],
    identity: &T,
    mul: impl Fn(&T, &T) -> T,
    inv: impl Fn(&T) -> T,
    is_identity: impl Fn(&T) -> bool,
) -> Option<Vec<usize>> {
    let vars = w.variables();
    let size = elements.len();
    if vars.is_empty() {
        return None;
    }
    let mut digits = vec![0usize; vars.len()];
    let mut values = vec![identity.clone(); w.k];
    loop {
        for (d, &v) in digits.iter().zip(&vars) {
            values[v - 1] = elements[*d].clone();
        }
        if !is_identity(&w.evaluate(&values, identity, &mul, &inv)) {
            let mut witness = vec![0; w.k];
            for (d, &v) in digits.iter().zip(&vars) {
                witness[v - 1] = *d;
            }
            return Some(witness);
        }
        // Last variable varies fastest.
        let mut i = digits.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < size {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// A substitution of group elements refuting `w`, if any.
pub fn law_counterexample(w: &LawWord, g: &FiniteGroup) -> Option<Vec<usize>> {
    let elements: Vec<usize> = g.elements().collect();
    sweep(w, &elements, &0, |&a, &b| g.mul(a, b), |&a| g.inv(a), |&a| a == 0)
}

pub fn is_law(w: &LawWord, g: &FiniteGroup) -> bool {
    law_counterexample(w, g).is_none()
}

/// A substitution of elements of `p` refuting `w`, as positions in the enumerated
/// element list.
pub fn polyfun_law_counterexample(w: &LawWord, p: &PolyFunGroup) -> Result<Option<Vec<usize>>> {
    let elements = p
        .elements()
        .ok_or_else(|| Error::Limit("law checks need an enumerated (naive) realization".into()))?;
    let elements: Vec<PolyFunction> = elements.iter().cloned().collect();
    let identity = p.identity();
    Ok(sweep(
        w,
        &elements,
        &identity,
        |a, b| a.product(b).expect("same group"),
        PolyFunction::pointwise_inverse,
        PolyFunction::is_identity_function,
    ))
}

pub fn is_polyfun_law(w: &LawWord, p: &PolyFunGroup) -> Result<bool> {
    Ok(polyfun_law_counterexample(w, p)?.is_none())
}

#[derive(Serialize)]
struct Discrepancy {
    word: String,
    law_in_group: bool,
    law_in_polyfun: bool,
    witness: Option<Vec<Vec<usize>>>,
}

/// Compares the laws of `G` and `Ḡ[x₁,…,xₙ]` among all reduced words of length at
/// most `max_len` in `k` variables.
pub fn laws_agree(
    g: &Arc<FiniteGroup>,
    n: usize,
    max_len: usize,
    k: usize,
    options: PolyFunOptions,
) -> Result<VerificationReport> {
    let p = build_polyfun_group(g, n, Strategy::Naive, options)?;
    let words = LawWord::enumerate(k, max_len);
    let elements: Vec<&PolyFunction> = p.elements().expect("naive").iter().collect();
    let mut discrepancies = Vec::new();
    let mut laws = 0usize;
    for w in &words {
        let in_g = law_counterexample(w, g);
        let in_p = polyfun_law_counterexample(w, &p)?;
        if in_g.is_none() {
            laws += 1;
        }
        if in_g.is_none() != in_p.is_none() {
            let witness = in_p.map(|idx| {
                idx.iter().map(|&i| elements[i].values().collect()).collect()
            });
            discrepancies.push(Discrepancy {
                word: w.to_string(),
                law_in_group: in_g.is_none(),
                law_in_polyfun: witness.is_none(),
                witness,
            });
        }
    }
    let mut report = VerificationReport::new("lemma2.1")
        .param("group", g.name())
        .param("n", n)
        .param("max_word_len", max_len)
        .param("vars", k);
    report.evidence("words_checked", words.len());
    report.evidence("laws_found", laws);
    report.evidence("polyfun_order", p.order().to_string());
    let ok = discrepancies.is_empty();
    report.check("same laws", Verdict::from_bool(ok), discrepancies);
    Ok(report)
}
