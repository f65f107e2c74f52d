//! The standard small groups used throughout the test and verification suites.

use crate::group::{FiniteGroup, Permutation, DEFAULT_ELEMENT_CAP};

fn from_cycles(name: &str, degree: usize, gens: &[&[&[usize]]]) -> FiniteGroup {
    let perms: Vec<Permutation> = gens
        .iter()
        .map(|cycles| Permutation::from_cycles(degree, cycles).expect("valid cycles"))
        .collect();
    FiniteGroup::from_permutations(name, degree, &perms, DEFAULT_ELEMENT_CAP)
        .expect("corpus group within cap")
}

pub fn trivial() -> FiniteGroup {
    FiniteGroup::from_table("1", &[vec![0]]).expect("trivial table")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let cycle: Vec<usize> = (0..n).collect();
    from_cycles(&format!("C{n}"), n, &[&[&cycle]])
}

pub fn symmetric(n: usize) -> FiniteGroup {
    let cycle: Vec<usize> = (0..n).collect();
    from_cycles(&format!("S{n}"), n, &[&[&[0, 1]], &[&cycle]])
}

pub fn alternating(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
    from_cycles(&format!("A{n}"), n, &[&[&[0, 1, 2]], &[&long]])
}

/// Dihedral group of order 8.
pub fn dihedral8() -> FiniteGroup {
    from_cycles("D4", 4, &[&[&[0, 1, 2, 3]], &[&[1, 3]]])
}

/// Quaternion group in its regular representation on 8 points.
pub fn quaternion8() -> FiniteGroup {
    from_cycles(
        "Q8",
        8,
        &[&[&[0, 1, 2, 3], &[4, 5, 6, 7]], &[&[0, 4, 2, 6], &[1, 7, 3, 5]]],
    )
}

/// C2, C3, C6, S3, D4, Q8, A4, S4, A5.
pub fn standard_corpus() -> Vec<FiniteGroup> {
    vec![
        cyclic(2),
        cyclic(3),
        cyclic(6),
        symmetric(3),
        dihedral8(),
        quaternion8(),
        alternating(4),
        symmetric(4),
        alternating(5),
    ]
}

/// The soluble members of the standard corpus.
pub fn soluble_corpus() -> Vec<FiniteGroup> {
    standard_corpus()
        .into_iter()
        .filter(|g| g.name() != "A5")
        .collect()
}

pub fn by_name(name: &str) -> Option<FiniteGroup> {
    match name {
        "1" | "trivial" => Some(trivial()),
        "D4" => Some(dihedral8()),
        "Q8" => Some(quaternion8()),
        _ => {
            let (kind, n) = name.split_at(1);
            let n: usize = n.parse().ok()?;
            match kind {
                "C" if n >= 1 => Some(cyclic(n)),
                "S" if n >= 2 => Some(symmetric(n)),
                "A" if n >= 3 => Some(alternating(n)),
                _ => None,
            }
        }
    }
}
