use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{smith_normal_form, IntMatrix, SmithForm};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// `ℤᵐ` modulo the lattice spanned by the columns of `relations`.
#[derive(Clone, Debug)]
pub struct FgAbelianGroup {
    m: usize,
    relations: IntMatrix,
    snf: SmithForm,
}

impl FgAbelianGroup {
    pub fn new(m: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != m {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows for {m} generators",
                relations.rows()
            )));
        }
        let snf = smith_normal_form(&relations);
        Ok(FgAbelianGroup { m, relations, snf })
    }

    pub fn free(m: usize) -> Self {
        Self::new(m, IntMatrix::zeros(m, 0)).expect("shape is consistent")
    }

    /// `ℤ/d₁ × … × ℤ/d_m`; a zero modulus gives a free factor.
    pub fn from_moduli(moduli: &[i64]) -> Self {
        let diag: Vec<BigInt> = moduli.iter().map(|&d| BigInt::from(d)).collect();
        Self::new(moduli.len(), IntMatrix::diagonal(&diag)).expect("shape is consistent")
    }

    pub fn generator_count(&self) -> usize {
        self.m
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn smith_form(&self) -> &SmithForm {
        &self.snf
    }

    /// Invariant factors greater than 1, in divisibility order.
    pub fn torsion_invariants(&self) -> Vec<BigInt> {
        self.snf.moduli().into_iter().filter(|d| d > &BigInt::one()).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.snf.moduli().iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion_invariants().iter().product()
    }

    pub fn contains_relation(&self, x: &[BigInt]) -> bool {
        self.snf.in_lattice(x)
    }

    pub fn check_automorphism(&self, matrix: IntMatrix) -> Result<FgAbelianAutomorphism> {
        if matrix.rows() != self.m || matrix.cols() != self.m {
            return Err(Error::Dimension(format!(
                "automorphism matrix must be {0}x{0}",
                self.m
            )));
        }
        let image = matrix.mul(&self.relations)?;
        for j in 0..image.cols() {
            if !self.contains_relation(&image.column(j)) {
                return Err(Error::NotLatticePreserving);
            }
        }
        // Surjective endomorphisms of finitely generated abelian groups are injective.
        let joint = smith_normal_form(&matrix.hcat(&self.relations)?);
        if !joint.moduli().iter().all(One::is_one) {
            return Err(Error::NotInvertible);
        }
        Ok(FgAbelianAutomorphism {
            group: self.clone(),
            matrix,
        })
    }
}

#[derive(Clone, Debug)]
pub struct FgAbelianAutomorphism {
    group: FgAbelianGroup,
    matrix: IntMatrix,
}

/// Largest number of iterations spent finding the order of a torsion automorphism.
pub const TORSION_ORDER_LIMIT: u64 = 1 << 24;

impl FgAbelianAutomorphism {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Whether `P(φ)` kills every generator.
    pub fn is_annihilated_by(&self, p: &IntPolynomial) -> Result<bool> {
        let pm = p.evaluate_matrix(&self.matrix)?;
        Ok((0..self.group.m).all(|j| self.group.contains_relation(&pm.column(j))))
    }

    /// A monic `P ∈ ℤ[T]` with constant term 1 and `P(φ) = 0`.
    pub fn annihilator(&self) -> Result<IntPolynomial> {
        let snf = &self.group.snf;
        let moduli = snf.moduli();
        let conj = snf.u.mul(&self.matrix)?.mul(&snf.u_inv)?;
        let torsion: Vec<usize> = (0..moduli.len()).filter(|&i| moduli[i] > BigInt::one()).collect();
        let free: Vec<usize> = (0..moduli.len()).filter(|&i| moduli[i].is_zero()).collect();

        let free_block = conj.select(&free, &free);
        let p_free = adjust(IntPolynomial::characteristic(&free_block)?);

        let p_tors = if torsion.is_empty() {
            IntPolynomial::one()
        } else {
            let mut block = conj.select(&torsion, &torsion);
            for (a, &i) in torsion.iter().enumerate() {
                for b in 0..torsion.len() {
                    block[(a, b)] = symmetric_residue(&block[(a, b)], &moduli[i]);
                }
            }
            let chi = IntPolynomial::characteristic(&block)?;
            if chi.constant_term().abs().is_one() {
                adjust(chi)
            } else {
                let mods: Vec<BigInt> = torsion.iter().map(|&i| moduli[i].clone()).collect();
                let n = torsion_order(&block, &mods)?;
                IntPolynomial::t_pow_minus_one(n).mul(&IntPolynomial::t_minus_one())
            }
        };
        let p = p_tors.mul(&p_free);
        if !p.is_monic() || !p.constant_term().is_one() || !self.is_annihilated_by(&p)? {
            return Err(Error::Internal(format!("annihilator {p} failed verification")));
        }
        Ok(p)
    }
}

/// Multiplies by `T − 1` exactly when the constant term is −1.
fn adjust(p: IntPolynomial) -> IntPolynomial {
    if p.constant_term() == -BigInt::one() {
        p.mul(&IntPolynomial::t_minus_one())
    } else {
        p
    }
}

fn symmetric_residue(x: &BigInt, d: &BigInt) -> BigInt {
    let r = x.mod_floor(d);
    if &r * 2 > *d {
        r - d
    } else {
        r
    }
}

/// Order of `block` acting on `⊕ ℤ/dᵢ`, row `i` read modulo `mods[i]`.
fn torsion_order(block: &IntMatrix, mods: &[BigInt]) -> Result<usize> {
    let size: BigInt = mods.iter().product();
    let cap = (&size * &size).to_u64().unwrap_or(u64::MAX).min(TORSION_ORDER_LIMIT);
    let k = block.rows();
    let reduce = |m: &mut IntMatrix| {
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = m[(i, j)].mod_floor(&mods[i]);
            }
        }
    };
    let mut power = block.clone();
    reduce(&mut power);
    let mut identity = IntMatrix::identity(k);
    reduce(&mut identity);
    let mut n = 1u64;
    while power != identity {
        if n >= cap {
            return Err(Error::Limit(format!("torsion automorphism order exceeds {cap}")));
        }
        power = block.mul(&power)?;
        reduce(&mut power);
        n += 1;
    }
    Ok(n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn automorphism_validation() {
        let z = FgAbelianGroup::free(1);
        assert!(z.check_automorphism(mat(&[vec![1]])).is_ok());
        assert_eq!(z.check_automorphism(mat(&[vec![2]])).unwrap_err(), Error::NotInvertible);
        let z2 = FgAbelianGroup::free(2);
        assert!(z2.check_automorphism(mat(&[vec![0, 1], vec![1, 1]])).is_ok());
        let c6 = FgAbelianGroup::from_moduli(&[6]);
        assert!(c6.check_automorphism(mat(&[vec![5]])).is_ok());
        assert_eq!(c6.check_automorphism(mat(&[vec![2]])).unwrap_err(), Error::NotInvertible);
        // Z/2 × Z: sending the torsion generator to the free one is not well defined.
        let mixed = FgAbelianGroup::from_moduli(&[2, 0]);
        assert_eq!(
            mixed.check_automorphism(mat(&[vec![1, 0], vec![1, 1]])).unwrap_err(),
            Error::NotLatticePreserving
        );
        assert!(mixed.check_automorphism(mat(&[vec![1, 1], vec![0, 1]])).is_ok());
        assert!(z2.check_automorphism(mat(&[vec![1]])).is_err());
    }

    #[test]
    fn spec_annihilators() {
        let z = FgAbelianGroup::free(1);
        let neg = z.check_automorphism(mat(&[vec![-1]])).unwrap();
        assert_eq!(neg.annihilator().unwrap(), IntPolynomial::from_i64(&[1, 1]));
        let id = z.check_automorphism(mat(&[vec![1]])).unwrap();
        assert_eq!(id.annihilator().unwrap(), IntPolynomial::from_i64(&[1, -2, 1]));
        let fib = FgAbelianGroup::free(2)
            .check_automorphism(mat(&[vec![0, 1], vec![1, 1]]))
            .unwrap();
        let p = fib.annihilator().unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[1, 0, -2, 1]));
        assert!(p.evaluate_matrix(fib.matrix()).unwrap().is_zero());
        let c6 = FgAbelianGroup::from_moduli(&[6]);
        let inv = c6.check_automorphism(mat(&[vec![5]])).unwrap();
        assert_eq!(inv.annihilator().unwrap(), IntPolynomial::from_i64(&[1, 1]));
        let c2 = FgAbelianGroup::from_moduli(&[2]);
        let id2 = c2.check_automorphism(mat(&[vec![1]])).unwrap();
        assert_eq!(id2.annihilator().unwrap(), IntPolynomial::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn torsion_fallback() {
        // Multiplication by 2 on Z/5 has no lift with determinant ±1 among symmetric residues.
        let c5 = FgAbelianGroup::from_moduli(&[5]);
        let two = c5.check_automorphism(mat(&[vec![2]])).unwrap();
        let p = two.annihilator().unwrap();
        assert_eq!(p, IntPolynomial::t_pow_minus_one(4).mul(&IntPolynomial::t_minus_one()));
    }

    #[test]
    fn mixed_torsion_and_free() {
        let g = FgAbelianGroup::new(3, mat(&[vec![4, 0], vec![2, 6], vec![0, 0]])).unwrap();
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion_order(), BigInt::from(24));
        let candidates = [
            mat(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            mat(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]),
            mat(&[vec![-1, 0, 0], vec![0, -1, 0], vec![1, 1, 1]]),
            mat(&[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]),
        ];
        let mut valid = 0;
        for m in candidates {
            if let Ok(phi) = g.check_automorphism(m) {
                valid += 1;
                let p = phi.annihilator().unwrap();
                assert!(p.is_monic() && p.constant_term().is_one());
                assert!(phi.is_annihilated_by(&p).unwrap());
            }
        }
        assert!(valid >= 2);
    }
}
