use super::finite::FiniteGroup;
use super::subgroup::{commutator_subgroup, derived_subgroup, Subgroup};

/// Derived and lower central series of a finite group with the invariants read off them.
#[derive(Clone, Debug)]
pub struct StructureReport {
    /// `G = G⁽⁰⁾ > G⁽¹⁾ > …`, ending at the first term that repeats.
    pub derived_series: Vec<Subgroup>,
    /// `G = γ₁ > γ₂ > …`, ending at the first term that repeats.
    pub lower_central_series: Vec<Subgroup>,
    /// `None` when the group is not soluble.
    pub derived_length: Option<usize>,
    /// `None` when the group is not nilpotent.
    pub nilpotency_class: Option<usize>,
    pub exponent: usize,
}

impl StructureReport {
    pub fn is_soluble(&self) -> bool {
        self.derived_length.is_some()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class.is_some()
    }
}

pub fn derived_series(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::whole(group)];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            return series;
        }
        let next = derived_subgroup(group, last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

pub fn lower_central_series(group: &FiniteGroup) -> Vec<Subgroup> {
    let whole = Subgroup::whole(group);
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            return series;
        }
        let next = commutator_subgroup(group, last, &whole, &whole);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_soluble(group: &FiniteGroup) -> bool {
    derived_series(group).last().unwrap().is_trivial()
}

pub fn structure_report(group: &FiniteGroup) -> StructureReport {
    let derived = derived_series(group);
    let lower = lower_central_series(group);
    let derived_length = derived
        .last()
        .unwrap()
        .is_trivial()
        .then(|| derived.len() - 1);
    let nilpotency_class = lower.last().unwrap().is_trivial().then(|| lower.len() - 1);
    StructureReport {
        derived_series: derived,
        lower_central_series: lower,
        derived_length,
        nilpotency_class,
        exponent: group.exponent(),
    }
}
