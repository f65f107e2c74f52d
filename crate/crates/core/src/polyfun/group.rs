use std::sync::Arc;

use indexmap::IndexSet;
use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::function::{domain_size, PolyFunction};
use crate::error::{Error, Result};
use crate::group::{closure, Action, FiniteGroup, PermutationGroup, Subgroup};

pub const DEFAULT_CAP: usize = 2_000_000;
pub const DEFAULT_DEGREE_LIMIT: usize = 20_000;
/// Total number of stored function values the naive closure may hold; the
/// element cap is lowered to fit.
pub const NAIVE_VALUE_BUDGET: usize = 1 << 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Naive,
    Chain,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Strategy::Naive),
            "chain" => Ok(Strategy::Chain),
            other => Err(Error::Limit(format!("unknown strategy `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PolyFunOptions {
    /// Maximum number of elements enumerated by the naive strategy.
    pub cap: usize,
    /// Maximum number of points acted on by the chain strategy.
    pub degree_limit: usize,
}

impl Default for PolyFunOptions {
    fn default() -> Self {
        PolyFunOptions {
            cap: DEFAULT_CAP,
            degree_limit: DEFAULT_DEGREE_LIMIT,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Realization {
    Elements(IndexSet<PolyFunction>),
    Chain(PermutationGroup<PolyFunction>),
}

/// A subgroup of `G^(Gⁿ)` given by generators, realized either as an explicit
/// element set or as a stabilizer chain on `|G|ⁿ·|G|` points.
#[derive(Clone, Debug)]
pub struct PolyFunGroup {
    group: Arc<FiniteGroup>,
    n: usize,
    generators: Vec<PolyFunction>,
    realization: Realization,
    order: BigUint,
}

/// Constants for each generator of `G` followed by the `n` projections.
pub fn standard_generators(group: &Arc<FiniteGroup>, n: usize) -> Result<Vec<PolyFunction>> {
    let mut gens = group
        .generators()
        .iter()
        .map(|&g| PolyFunction::constant(group, n, g))
        .collect::<Result<Vec<_>>>()?;
    for i in 1..=n {
        gens.push(PolyFunction::projection(group, n, i)?);
    }
    Ok(gens)
}

/// `Ḡ[x₁,…,xₙ]`.
pub fn build_polyfun_group(
    group: &Arc<FiniteGroup>,
    n: usize,
    strategy: Strategy,
    options: PolyFunOptions,
) -> Result<PolyFunGroup> {
    let gens = standard_generators(group, n)?;
    PolyFunGroup::generated(group, n, gens, strategy, options)
}

fn naive_closure(identity: PolyFunction, gens: &[PolyFunction], cap: usize) -> Result<IndexSet<PolyFunction>> {
    let mut elements = IndexSet::new();
    elements.insert(identity);
    let mut k = 0;
    while k < elements.len() {
        for g in gens {
            let h = elements[k].then(g);
            if !elements.contains(&h) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                elements.insert(h);
            }
        }
        k += 1;
    }
    Ok(elements)
}

fn chain_of(identity: PolyFunction, gens: &[PolyFunction]) -> PermutationGroup<PolyFunction> {
    // Generators moving the identity tuple go first so that the first base point is 0.
    let (moving, fixing): (Vec<_>, Vec<_>) = gens
        .iter()
        .cloned()
        .partition(|g| g.value_at_identity() != 0);
    PermutationGroup::from_generators(identity, moving.into_iter().chain(fixing))
}

impl PolyFunGroup {
    pub fn generated(
        group: &Arc<FiniteGroup>,
        n: usize,
        generators: Vec<PolyFunction>,
        strategy: Strategy,
        options: PolyFunOptions,
    ) -> Result<Self> {
        let size = domain_size(group.order(), n)?;
        for g in &generators {
            if !Arc::ptr_eq(g.group(), group) {
                return Err(Error::GroupMismatch);
            }
            if g.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: g.arity(),
                });
            }
        }
        let identity = PolyFunction::identity(group, n)?;
        let (realization, order) = match strategy {
            Strategy::Naive => {
                let cap = options.cap.min(NAIVE_VALUE_BUDGET / size).max(1);
                let elements = naive_closure(identity, &generators, cap)?;
                let order = BigUint::from(elements.len());
                (Realization::Elements(elements), order)
            }
            Strategy::Chain => {
                let degree = size * group.order();
                if degree > options.degree_limit {
                    return Err(Error::DegreeLimit {
                        degree,
                        limit: options.degree_limit,
                    });
                }
                let chain = chain_of(identity, &generators);
                let order = chain.order();
                (Realization::Chain(chain), order)
            }
        };
        Ok(PolyFunGroup {
            group: Arc::clone(group),
            n,
            generators,
            realization,
            order,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PolyFunction] {
        &self.generators
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn strategy(&self) -> Strategy {
        match self.realization {
            Realization::Elements(_) => Strategy::Naive,
            Realization::Chain(_) => Strategy::Chain,
        }
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The enumerated elements, in discovery order, for naive realizations.
    pub fn elements(&self) -> Option<&IndexSet<PolyFunction>> {
        match &self.realization {
            Realization::Elements(e) => Some(e),
            Realization::Chain(_) => None,
        }
    }

    pub fn identity(&self) -> PolyFunction {
        PolyFunction::identity(&self.group, self.n).expect("arity already validated")
    }

    pub fn contains(&self, f: &PolyFunction) -> bool {
        if !Arc::ptr_eq(f.group(), &self.group) || f.arity() != self.n {
            return false;
        }
        match &self.realization {
            Realization::Elements(e) => e.contains(f),
            Realization::Chain(c) => c.contains(f),
        }
    }

    /// A stabilizer chain for the group, built from the generators if necessary.
    pub fn chain(&self) -> PermutationGroup<PolyFunction> {
        match &self.realization {
            Realization::Chain(c) => c.clone(),
            Realization::Elements(_) => chain_of(self.identity(), &self.generators),
        }
    }

    /// `Ḡ₁`: the elements sending `(1, …, 1)` to 1.
    pub fn one_subgroup(&self) -> Result<PolyFunGroup> {
        let (generators, realization, order) = match &self.realization {
            Realization::Elements(elements) => {
                let members: IndexSet<PolyFunction> = elements
                    .iter()
                    .filter(|f| f.value_at_identity() == 0)
                    .cloned()
                    .collect();
                let order = BigUint::from(members.len());
                (self.schreier_generators(), Realization::Elements(members), order)
            }
            Realization::Chain(chain) => {
                let stab = chain
                    .stabilizer_of(0)
                    .ok_or_else(|| Error::Internal("first base point is not 0".into()))?;
                let order = stab.order();
                (stab.generators().to_vec(), Realization::Chain(stab), order)
            }
        };
        Ok(PolyFunGroup {
            group: Arc::clone(&self.group),
            n: self.n,
            generators,
            realization,
            order,
        })
    }

    /// Schreier generators of `Ḡ₁` with respect to coset representatives taken from
    /// the orbit of the identity tuple; exact when the group contains the constants
    /// of that orbit, which holds for every group built from `standard_generators`.
    fn schreier_generators(&self) -> Vec<PolyFunction> {
        let image = self.eval_image(&vec![0; self.n]).expect("identity tuple is valid");
        let reps: Vec<PolyFunction> = image
            .members()
            .iter()
            .map(|&c| PolyFunction::constant(&self.group, self.n, c).unwrap())
            .collect();
        let mut out: IndexSet<PolyFunction> = IndexSet::new();
        let constants_present = reps.iter().all(|r| self.contains(r));
        if !constants_present {
            // Fall back on the filtered element set.
            if let Some(e) = self.elements() {
                out.extend(e.iter().filter(|f| f.value_at_identity() == 0).cloned());
            }
            out.shift_remove(&self.identity());
            return out.into_iter().collect();
        }
        for r in &reps {
            for s in &self.generators {
                let rs = r.then(s);
                let back = PolyFunction::constant(&self.group, self.n, rs.value_at_identity())
                    .unwrap()
                    .inverse();
                let x = rs.then(&back);
                if !x.is_identity() {
                    out.insert(x);
                }
            }
        }
        out.into_iter().collect()
    }

    /// `φ_v(P) = {f(v) : f ∈ P}`.
    pub fn eval_image(&self, v: &[usize]) -> Result<Subgroup> {
        let mut values = Vec::with_capacity(self.generators.len());
        for f in &self.generators {
            values.push(f.at(v)?);
        }
        closure(&self.group, &values, false)
    }

    /// Lower and upper bounds on the exponent, equal whenever the exponent is known
    /// exactly.
    pub fn exponent_bounds(&self) -> (usize, usize) {
        match &self.realization {
            Realization::Elements(e) => {
                let exp = e.iter().fold(1usize, |acc, f| acc.lcm(&f.element_order()));
                (exp, exp)
            }
            Realization::Chain(chain) => {
                let lower = chain
                    .generators()
                    .iter()
                    .chain(chain.strong_generators())
                    .chain(chain.transversal_elements())
                    .fold(1usize, |acc, f| acc.lcm(&f.element_order()));
                let order = self.group.order();
                let size = order.pow(self.n as u32);
                let mut upper = 1usize;
                let mut seen = std::collections::HashSet::new();
                for index in 0..size {
                    let v = super::function::index_tuple(order, self.n, index);
                    let image = self.eval_image(&v).expect("valid tuple");
                    if seen.insert(image.members().to_vec()) {
                        upper = upper.lcm(&subgroup_exponent(&self.group, &image));
                    }
                }
                (lower, upper)
            }
        }
    }

    /// Checks `|P| = |φ₁(P)|·|Ḡ₁|` for the evaluation at the identity tuple.
    pub fn semidirect_orders_agree(&self, one: &PolyFunGroup) -> bool {
        let image = self.eval_image(&vec![0; self.n]).expect("valid tuple");
        self.order == BigUint::from(image.order()) * one.order()
    }
}

fn subgroup_exponent(group: &FiniteGroup, h: &Subgroup) -> usize {
    h.members()
        .iter()
        .fold(1usize, |acc, &a| acc.lcm(&group.element_order(a)))
}
