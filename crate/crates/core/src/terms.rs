//! Elements of the free product `G ∗ Fₙ` in normal form.
//!
//! A reduced term alternates between nontrivial constants from `G` and nonzero
//! powers of the variables `x₁, …, xₙ`; consecutive letters are allowed only when
//! they name different variables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Constant(usize),
    /// `x_var^exp`, with `var` counted from 1.
    Letter { var: usize, exp: i64 },
}

#[derive(Clone, Debug)]
pub struct Term {
    group: Arc<FiniteGroup>,
    n: usize,
    syllables: Vec<Atom>,
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
            && self.n == other.n
            && self.syllables == other.syllables
    }
}

impl Eq for Term {}

impl Term {
    pub fn identity(group: &Arc<FiniteGroup>, n: usize) -> Self {
        Term {
            group: Arc::clone(group),
            n,
            syllables: Vec::new(),
        }
    }

    pub fn constant(group: &Arc<FiniteGroup>, n: usize, g: usize) -> Result<Self> {
        Term::reduce(group, n, &[Atom::Constant(g)])
    }

    pub fn variable(group: &Arc<FiniteGroup>, n: usize, var: usize) -> Result<Self> {
        Term::reduce(group, n, &[Atom::Letter { var, exp: 1 }])
    }

    /// Free-product reduction: merges neighbouring constants through the group table
    /// and neighbouring powers of the same variable, dropping identities as they appear.
    pub fn reduce(group: &Arc<FiniteGroup>, n: usize, raw: &[Atom]) -> Result<Self> {
        let mut stack: Vec<Atom> = Vec::with_capacity(raw.len());
        for &atom in raw {
            match atom {
                Atom::Constant(g) => {
                    group.check_index(g)?;
                    if g == 0 {
                        continue;
                    }
                    if let Some(Atom::Constant(h)) = stack.last().copied() {
                        stack.pop();
                        let merged = group.mul(h, g);
                        if merged != 0 {
                            stack.push(Atom::Constant(merged));
                        }
                    } else {
                        stack.push(atom);
                    }
                }
                Atom::Letter { var, exp } => {
                    if var == 0 || var > n {
                        return Err(Error::VariableOutOfRange { index: var, n });
                    }
                    if exp == 0 {
                        continue;
                    }
                    match stack.last().copied() {
                        Some(Atom::Letter { var: v, exp: e }) if v == var => {
                            stack.pop();
                            if e + exp != 0 {
                                stack.push(Atom::Letter { var, exp: e + exp });
                            }
                        }
                        _ => stack.push(atom),
                    }
                }
            }
        }
        Ok(Term {
            group: Arc::clone(group),
            n,
            syllables: stack,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn syllables(&self) -> &[Atom] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    fn check_compatible(&self, other: &Term) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn product(&self, other: &Term) -> Result<Term> {
        self.check_compatible(other)?;
        let raw: Vec<Atom> = self
            .syllables
            .iter()
            .chain(&other.syllables)
            .copied()
            .collect();
        Term::reduce(&self.group, self.n, &raw)
    }

    pub fn inverse(&self) -> Term {
        let syllables = self
            .syllables
            .iter()
            .rev()
            .map(|&a| match a {
                Atom::Constant(g) => Atom::Constant(self.group.inv(g)),
                Atom::Letter { var, exp } => Atom::Letter { var, exp: -exp },
            })
            .collect();
        Term {
            group: Arc::clone(&self.group),
            n: self.n,
            syllables: syllables_checked(syllables),
        }
    }

    /// Substitutes `tuple[i-1]` for `xᵢ` and multiplies left to right.
    pub fn evaluate(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: tuple.len(),
            });
        }
        for &t in tuple {
            self.group.check_index(t)?;
        }
        Ok(evaluate_atoms(&self.group, &self.syllables, tuple))
    }

    /// Parses `a3 * x1^2 * a5^-1 * x2^-1` (`aK` is element K, `xJ` is variable J).
    /// `1` or an empty string denotes the identity.
    pub fn parse(group: &Arc<FiniteGroup>, n: usize, text: &str) -> Result<Term> {
        let raw = parse_atoms(group, text)?;
        Term::reduce(group, n, &raw)
    }
}

fn syllables_checked(s: Vec<Atom>) -> Vec<Atom> {
    debug_assert!(s.windows(2).all(|w| match (w[0], w[1]) {
        (Atom::Constant(_), Atom::Constant(_)) => false,
        (Atom::Letter { var: a, .. }, Atom::Letter { var: b, .. }) => a != b,
        _ => true,
    }));
    s
}

/// Evaluates a raw (not necessarily reduced) atom list at a tuple.
pub fn evaluate_atoms(group: &FiniteGroup, atoms: &[Atom], tuple: &[usize]) -> usize {
    atoms.iter().fold(0, |acc, &a| match a {
        Atom::Constant(g) => group.mul(acc, g),
        Atom::Letter { var, exp } => group.mul(acc, group.pow(tuple[var - 1], exp)),
    })
}

fn parse_atoms(group: &FiniteGroup, text: &str) -> Result<Vec<Atom>> {
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    let compact: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if compact.is_empty() || (compact.len() == 1 && compact[0].1 == '1') {
        return Ok(Vec::new());
    }
    let mut atoms = Vec::new();
    let mut i = 0;
    let read_int = |i: &mut usize, signed: bool| -> Result<i64> {
        let start = *i;
        let mut s = String::new();
        if signed && *i < compact.len() && (compact[*i].1 == '-' || compact[*i].1 == '+') {
            s.push(compact[*i].1);
            *i += 1;
        }
        while *i < compact.len() && compact[*i].1.is_ascii_digit() {
            s.push(compact[*i].1);
            *i += 1;
        }
        let pos = compact.get(start).map_or(text.len(), |c| c.0);
        s.parse::<i64>().map_err(|_| err(pos, "expected an integer"))
    };
    loop {
        let Some(&(pos, c)) = compact.get(i) else {
            return Err(err(text.len(), "expected a factor"));
        };
        i += 1;
        let index = read_int(&mut i, false)?;
        let mut exp = 1;
        if compact.get(i).map(|c| c.1) == Some('^') {
            i += 1;
            exp = read_int(&mut i, true)?;
        }
        match c {
            'a' => {
                let g = usize::try_from(index).map_err(|_| err(pos, "bad element index"))?;
                group.check_index(g).map_err(|e| err(pos, &e.to_string()))?;
                atoms.push(Atom::Constant(group.pow(g, exp)));
            }
            'x' => {
                let var = usize::try_from(index).map_err(|_| err(pos, "bad variable index"))?;
                atoms.push(Atom::Letter { var, exp });
            }
            _ => return Err(err(pos, "expected `a<index>` or `x<index>`")),
        }
        match compact.get(i) {
            None => return Ok(atoms),
            Some((_, '*')) => i += 1,
            Some(&(pos, _)) => return Err(err(pos, "expected `*`")),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|a| match *a {
                Atom::Constant(g) => format!("a{g}"),
                Atom::Letter { var, exp: 1 } => format!("x{var}"),
                Atom::Letter { var, exp } => format!("x{var}^{exp}"),
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}
