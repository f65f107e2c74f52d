use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{Action, FiniteGroup};
use crate::terms::Term;

/// Largest `|G|ⁿ` for which function tables are materialized.
pub const MAX_DOMAIN: usize = 1 << 22;

/// A function `Gⁿ → G` stored as its full value table.
///
/// Tuples are indexed mixed-radix with `t₁` as the least significant digit, so
/// index 0 is the tuple `(1, …, 1)`.
#[derive(Clone)]
pub struct PolyFunction {
    group: Arc<FiniteGroup>,
    n: usize,
    values: Box<[u16]>,
}

pub fn domain_size(order: usize, n: usize) -> Result<usize> {
    u32::try_from(n)
        .ok()
        .and_then(|n| order.checked_pow(n))
        .filter(|&s| s <= MAX_DOMAIN)
        .ok_or_else(|| Error::Limit(format!("|G|^n = {order}^{n} is too large to tabulate")))
}

pub fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().rev().fold(0, |acc, &t| acc * order + t)
}

pub fn index_tuple(order: usize, n: usize, mut index: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let t = index % order;
            index /= order;
            t
        })
        .collect()
}

impl PolyFunction {
    pub fn from_values(group: &Arc<FiniteGroup>, n: usize, values: Vec<usize>) -> Result<Self> {
        let size = domain_size(group.order(), n)?;
        if values.len() != size {
            return Err(Error::ArityMismatch {
                expected: size,
                found: values.len(),
            });
        }
        for &v in &values {
            group.check_index(v)?;
        }
        Ok(PolyFunction {
            group: Arc::clone(group),
            n,
            values: values.into_iter().map(|v| v as u16).collect(),
        })
    }

    fn tabulate(group: &Arc<FiniteGroup>, n: usize, f: impl Fn(&[usize]) -> usize) -> Result<Self> {
        let size = domain_size(group.order(), n)?;
        let order = group.order();
        let mut tuple = vec![0usize; n];
        let mut values = Vec::with_capacity(size);
        for _ in 0..size {
            values.push(f(&tuple) as u16);
            // increment with t₁ as the fastest digit
            for t in tuple.iter_mut() {
                *t += 1;
                if *t < order {
                    break;
                }
                *t = 0;
            }
        }
        Ok(PolyFunction {
            group: Arc::clone(group),
            n,
            values: values.into_boxed_slice(),
        })
    }

    pub fn constant(group: &Arc<FiniteGroup>, n: usize, g: usize) -> Result<Self> {
        group.check_index(g)?;
        Self::tabulate(group, n, |_| g)
    }

    pub fn identity(group: &Arc<FiniteGroup>, n: usize) -> Result<Self> {
        Self::constant(group, n, 0)
    }

    /// `(t₁, …, tₙ) ↦ tᵢ`, with `i` counted from 1.
    pub fn projection(group: &Arc<FiniteGroup>, n: usize, i: usize) -> Result<Self> {
        check_var(i, n)?;
        Self::tabulate(group, n, |t| t[i - 1])
    }

    /// `(t₁, …, tₙ) ↦ a⁻¹ tᵢ a`.
    pub fn conjugation(group: &Arc<FiniteGroup>, n: usize, i: usize, a: usize) -> Result<Self> {
        check_var(i, n)?;
        group.check_index(a)?;
        Self::tabulate(group, n, |t| group.conjugate(t[i - 1], a))
    }

    /// The function induced by a free-product term.
    pub fn from_term(term: &Term) -> Result<Self> {
        Self::tabulate(term.group(), term.arity(), |t| {
            term.evaluate(t).expect("tuple has the term's arity")
        })
    }

    /// `Ψᵢ(f)(t₁, …, tₙ) = f(tᵢ)` for a one-variable `f`.
    pub fn embed_coordinate(&self, i: usize, n: usize) -> Result<Self> {
        if self.n != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: self.n,
            });
        }
        check_var(i, n)?;
        Self::tabulate(&self.group, n, |t| self.values[t[i - 1]] as usize)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, index: usize) -> usize {
        self.values[index] as usize
    }

    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().map(|&v| v as usize)
    }

    pub fn raw_values(&self) -> &[u16] {
        &self.values
    }

    pub fn at(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: tuple.len(),
            });
        }
        for &t in tuple {
            self.group.check_index(t)?;
        }
        Ok(self.value(tuple_index(self.group.order(), tuple)))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
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

    /// `(fg)(t) = f(t) g(t)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.product_unchecked(other))
    }

    fn product_unchecked(&self, other: &Self) -> Self {
        let g = &self.group;
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(&a, &b)| g.mul(a as usize, b as usize) as u16)
            .collect();
        PolyFunction {
            group: Arc::clone(g),
            n: self.n,
            values,
        }
    }

    pub fn pointwise_inverse(&self) -> Self {
        let g = &self.group;
        PolyFunction {
            group: Arc::clone(g),
            n: self.n,
            values: self.values.iter().map(|&a| g.inv(a as usize) as u16).collect(),
        }
    }

    pub fn is_identity_function(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Value at `(1, …, 1)`.
    pub fn value_at_identity(&self) -> usize {
        self.value(0)
    }

    /// Order of `self` in `Ḡ`: the lcm of the orders of its values.
    pub fn element_order(&self) -> usize {
        let mut seen = vec![false; self.group.order()];
        let mut lcm = 1usize;
        for &v in self.values.iter() {
            if !std::mem::replace(&mut seen[v as usize], true) {
                lcm = lcm.lcm(&self.group.element_order(v as usize));
            }
        }
        lcm
    }
}

fn check_var(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::VariableOutOfRange { index: i, n })
    } else {
        Ok(())
    }
}

impl PartialEq for PolyFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.n == other.n && self.values == other.values
    }
}

impl Eq for PolyFunction {}

impl Hash for PolyFunction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.values.hash(state)
    }
}

impl fmt::Debug for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFunction(n={}, {:?})", self.n, self.values)
    }
}

/// Right-regular action on `|G|ⁿ` disjoint copies of `G`: the point `v·|G| + g`
/// is sent to `v·|G| + g·f(v)`.
impl Action for PolyFunction {
    fn degree(&self) -> usize {
        self.values.len() * self.group.order()
    }

    fn image(&self, point: usize) -> usize {
        let order = self.group.order();
        let (v, g) = (point / order, point % order);
        v * order + self.group.mul(g, self.values[v] as usize)
    }

    fn then(&self, other: &Self) -> Self {
        debug_assert!(self.check_compatible(other).is_ok());
        self.product_unchecked(other)
    }

    fn inverse(&self) -> Self {
        self.pointwise_inverse()
    }

    fn is_identity(&self) -> bool {
        self.is_identity_function()
    }

    fn identity_like(&self) -> Self {
        PolyFunction {
            group: Arc::clone(&self.group),
            n: self.n,
            values: vec![0u16; self.values.len()].into_boxed_slice(),
        }
    }

    fn first_moved(&self) -> Option<usize> {
        self.values
            .iter()
            .position(|&v| v != 0)
            .map(|v| v * self.group.order())
    }
}
