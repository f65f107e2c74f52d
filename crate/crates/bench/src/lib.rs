//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use grpoly_core::abelian::IntMatrix;
use grpoly_core::corpus;
use grpoly_core::group::FiniteGroup;

/// A dense `rows × cols` integer matrix with entries of mixed sign and size.
pub fn dense_matrix(rows: usize, cols: usize) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let (i, j) = (i as i64, j as i64);
                    (i * i * 7 + j * 13 + i * j * 5) % 97 - 48
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&data).expect("rectangular")
}

/// Companion matrix of `Tⁿ - T - 1`, an automorphism of `Zⁿ`.
pub fn companion(n: usize) -> IntMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate().skip(1) {
        row[i - 1] = 1;
    }
    rows[0][n - 1] = 1;
    if n > 1 {
        rows[1][n - 1] = 1;
    }
    IntMatrix::from_rows(&rows).expect("square")
}

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(corpus::by_name(name).unwrap_or_else(|| panic!("{name} is not in the corpus")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn companion_is_unimodular() {
        for n in 1..6 {
            let d = companion(n).determinant().unwrap();
            assert!(d == BigInt::from(1) || d == BigInt::from(-1), "n = {n}: {d}");
        }
    }
}
