//! Exact linear algebra over ℚ, ℤ and ℤ/p.
//!
//! Scalars are carried as [`BigRational`] values normalized for their
//! [`CoefficientRing`]; fields are handled by Gaussian elimination
//! ([`field`]) and the integers by Smith normal form ([`smith`]).

pub mod field;
pub mod matrix;
pub mod ring;
pub mod smith;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use field::{Field, PrimeField, Rationals, Rref};
pub use matrix::{int_matrix, IntMatrix, Matrix};
pub use ring::{is_prime, CoefficientRing};
pub use smith::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not an element of {1}")]
    NotInRing(String, CoefficientRing),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

/// A matrix whose entries are known to lie in `ring`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: CoefficientRing,
    entries: Matrix<BigRational>,
}

impl ExactMatrix {
    pub fn new(ring: CoefficientRing, entries: Matrix<BigRational>) -> Result<Self, ExactError> {
        let mut out = entries;
        for i in 0..out.rows() {
            for j in 0..out.cols() {
                out[(i, j)] = ring.try_normalize(&out[(i, j)])?;
            }
        }
        Ok(ExactMatrix { ring, entries: out })
    }

    pub fn from_ints(ring: CoefficientRing, rows: &[&[i64]]) -> Self {
        let m = int_matrix(rows).map(|x| BigRational::from_integer(x.clone()));
        ExactMatrix::new(ring, m).expect("integers lie in every supported ring")
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn entries(&self) -> &Matrix<BigRational> {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    /// Entries as integers. Only meaningful over ℤ.
    pub fn to_int_matrix(&self) -> IntMatrix {
        self.entries.map(|x| x.to_integer())
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.entries.mul_vec(v).into_iter().map(|x| self.ring.normalize(&x)).collect()
    }
}

/// Structure of `coker(A: R^cols → R^rows)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    /// Invariant factors greater than one (ℤ only), increasing by divisibility.
    pub torsion: Vec<BigInt>,
    /// One row per quotient coordinate: free coordinates first, then one per
    /// torsion invariant in the same order as `torsion`.
    projection: Matrix<BigRational>,
    ring: CoefficientRing,
}

impl Cokernel {
    /// Coordinates of the class of `w` in the quotient; torsion coordinates
    /// are reduced into `[0, d)`.
    pub fn project(&self, w: &[BigRational]) -> Vec<BigRational> {
        let mut out: Vec<BigRational> =
            self.projection.mul_vec(w).into_iter().map(|x| self.ring.normalize(&x)).collect();
        for (k, d) in self.torsion.iter().enumerate() {
            let c = &mut out[self.free_rank + k];
            *c = BigRational::from_integer(c.to_integer().mod_floor(d));
        }
        out
    }
}

pub fn rank(a: &ExactMatrix) -> usize {
    match a.ring {
        CoefficientRing::Rationals => Rref::new(Rationals, &a.entries).rank(),
        CoefficientRing::ModPrime(p) => {
            let f = PrimeField::new(p);
            Rref::new(f, &to_field(&f, &a.entries)).rank()
        }
        CoefficientRing::Integers => smith_normal_form(&a.to_int_matrix()).rank(),
    }
}

/// Basis of `ker A`; over ℤ a basis of the (saturated) kernel lattice.
pub fn kernel_basis(a: &ExactMatrix) -> Vec<Vec<BigRational>> {
    match a.ring {
        CoefficientRing::Rationals => Rref::new(Rationals, &a.entries).kernel_basis(),
        CoefficientRing::ModPrime(p) => {
            let f = PrimeField::new(p);
            let basis = Rref::new(f, &to_field(&f, &a.entries)).kernel_basis();
            basis.iter().map(|v| from_field(&f, v)).collect()
        }
        CoefficientRing::Integers => {
            let s = smith_normal_form(&a.to_int_matrix());
            (s.rank()..a.cols()).map(|j| s.v.column(j).into_iter().map(BigRational::from_integer).collect()).collect()
        }
    }
}

pub fn cokernel_structure(a: &ExactMatrix) -> Cokernel {
    let m = a.rows();
    match a.ring {
        CoefficientRing::Integers => {
            let s = smith_normal_form(&a.to_int_matrix());
            let r = s.rank();
            let torsion_rows: Vec<usize> = (0..r).filter(|&i| !s.diag[i].is_one()).collect();
            let mut rows: Vec<Vec<BigRational>> = Vec::new();
            for i in (r..m).chain(torsion_rows.iter().copied()) {
                rows.push(s.u.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect());
            }
            Cokernel {
                free_rank: m - r,
                torsion: torsion_rows.iter().map(|&i| s.diag[i].clone()).collect(),
                projection: Matrix::from_rows(m, rows),
                ring: a.ring,
            }
        }
        CoefficientRing::Rationals => field_cokernel(&Rationals, &a.entries, a.ring),
        CoefficientRing::ModPrime(p) => {
            let f = PrimeField::new(p);
            field_cokernel(&f, &to_field(&f, &a.entries), a.ring)
        }
    }
}

fn field_cokernel<F: Field>(f: &F, a: &Matrix<F::Elem>, ring: CoefficientRing) -> Cokernel {
    let m = a.rows();
    let mut reduced = a.clone();
    let mut transform = field::identity(f, m);
    let r = field::row_reduce(f, &mut reduced, Some(&mut transform));
    let rows = (r.len()..m).map(|i| transform.row(i).iter().map(|x| f.to_rational(x)).collect()).collect();
    Cokernel { free_rank: m - r.len(), torsion: Vec::new(), projection: Matrix::from_rows(m, rows), ring }
}

/// Some `x` with `A x = b`, or `Ok(None)` when no solution exists in the ring.
pub fn solve(a: &ExactMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>, ExactError> {
    if b.len() != a.rows() {
        return Err(ExactError::DimensionMismatch { expected: a.rows(), actual: b.len() });
    }
    let b: Vec<BigRational> = b.iter().map(|x| a.ring.try_normalize(x)).collect::<Result<_, _>>()?;
    Ok(match a.ring {
        CoefficientRing::Rationals => Rref::new(Rationals, &a.entries).solve(&b),
        CoefficientRing::ModPrime(p) => {
            let f = PrimeField::new(p);
            let bf: Vec<u64> = b.iter().map(|x| f.embed(x)).collect();
            Rref::new(f, &to_field(&f, &a.entries)).solve(&bf).map(|x| from_field(&f, &x))
        }
        CoefficientRing::Integers => {
            let bi: Vec<BigInt> = b.iter().map(|x| x.to_integer()).collect();
            solve_integer(&smith_normal_form(&a.to_int_matrix()), &bi)
                .map(|x| x.into_iter().map(BigRational::from_integer).collect())
        }
    })
}

/// Integer solution of `A x = b` given the Smith form of `A`.
pub fn solve_integer(s: &SmithForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = s.u.mul_vec(b);
    let n = s.v.rows();
    let mut y = vec![BigInt::zero(); n];
    for (i, c) in ub.iter().enumerate() {
        let d = s.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(s.v.mul_vec(&y))
}

pub fn to_field<F: Field>(f: &F, m: &Matrix<BigRational>) -> Matrix<F::Elem> {
    m.map(|x| f.embed(x))
}

pub fn from_field<F: Field>(f: &F, v: &[F::Elem]) -> Vec<BigRational> {
    v.iter().map(|x| f.to_rational(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    const Z: CoefficientRing = CoefficientRing::Integers;
    const QQ: CoefficientRing = CoefficientRing::Rationals;

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&ExactMatrix::from_ints(QQ, &[&[0, 0], &[0, 0]])).len(), 2);
        assert!(kernel_basis(&ExactMatrix::from_ints(Z, &[&[1, 0], &[0, 1]])).is_empty());
        let k = kernel_basis(&ExactMatrix::from_ints(QQ, &[&[1, 1]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // ker [2 4] over ℤ is spanned by (2,-1), not a multiple of it
        let k = kernel_basis(&ExactMatrix::from_ints(Z, &[&[2, 4]]));
        assert_eq!(k.len(), 1);
        let g = k[0][0].to_integer().gcd(&k[0][1].to_integer());
        assert!(g.is_one());
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_structure(&ExactMatrix::from_ints(Z, &[&[2]]));
        assert_eq!((c.free_rank, c.torsion.clone()), (0, vec![BigInt::from(2)]));
        assert_eq!(c.project(&[q(3)]), vec![q(1)]);
        let c = cokernel_structure(&ExactMatrix::from_ints(Z, &[&[0]]));
        assert_eq!((c.free_rank, c.torsion.len()), (1, 0));
        let c = cokernel_structure(&ExactMatrix::from_ints(QQ, &[&[1, 0], &[0, 1]]));
        assert_eq!((c.free_rank, c.torsion.len()), (0, 0));
        let c = cokernel_structure(&ExactMatrix::from_ints(QQ, &[&[1], &[1]]));
        assert_eq!(c.free_rank, 1);
        assert_eq!(c.project(&[q(1), q(1)]), vec![q(0)]);
    }

    #[test]
    fn solve_examples() {
        let id = ExactMatrix::from_ints(Z, &[&[1, 0], &[0, 1]]);
        assert_eq!(solve(&id, &[q(4), q(-7)]).unwrap(), Some(vec![q(4), q(-7)]));
        assert_eq!(solve(&ExactMatrix::from_ints(Z, &[&[2]]), &[q(3)]).unwrap(), None);
        let half = BigRational::new(3.into(), 2.into());
        assert_eq!(solve(&ExactMatrix::from_ints(QQ, &[&[2]]), &[q(3)]).unwrap(), Some(vec![half]));
        assert!(matches!(solve(&id, &[q(1)]), Err(ExactError::DimensionMismatch { .. })));
        let f5 = CoefficientRing::ModPrime(5);
        assert_eq!(solve(&ExactMatrix::from_ints(f5, &[&[2]]), &[q(3)]).unwrap(), Some(vec![q(4)]));
    }

    // ----- oracles -----

    fn det(m: &[Vec<i64>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let term = BigInt::from(m[0][j]) * det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }

    fn gcd_of_minors(a: &[Vec<i64>], k: usize) -> BigInt {
        let (m, n) = (a.len(), a[0].len());
        let mut g = BigInt::zero();
        for rs in subsets(m, k) {
            for cs in subsets(n, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        g
    }

    /// Fraction-free elimination over ℚ on the augmented matrix; returns
    /// whether `A x = b` is consistent.
    fn naive_consistent(a: &[Vec<i64>], b: &[i64]) -> bool {
        let mut m: Vec<Vec<BigInt>> = a
            .iter()
            .zip(b)
            .map(|(r, &y)| r.iter().map(|&x| BigInt::from(x)).chain([BigInt::from(y)]).collect())
            .collect();
        let cols = a[0].len();
        let mut row = 0;
        for c in 0..cols {
            let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(row, p);
            for i in 0..m.len() {
                if i != row && !m[i][c].is_zero() {
                    let (f, g) = (m[row][c].clone(), m[i][c].clone());
                    let pivot = m[row].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x = &*x * &f - y * &g;
                    }
                }
            }
            row += 1;
        }
        m[row..].iter().all(|r| r[cols].is_zero())
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
    }

    fn as_refs(a: &[Vec<i64>]) -> Vec<&[i64]> {
        a.iter().map(|r| r.as_slice()).collect()
    }

    proptest! {
        #[test]
        fn smith_invariants(a in small_matrix(6)) {
            let im = int_matrix(&as_refs(&a));
            let s = smith_normal_form(&im);
            prop_assert_eq!(s.u.mul(&im).mul(&s.v), s.diagonal_matrix());
            prop_assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(im.rows()));
            prop_assert_eq!(s.v_inv.mul(&s.v), Matrix::identity(im.cols()));
            let mut prod = BigInt::one();
            for k in 1..=s.diag.len().min(4) {
                prod *= &s.diag[k - 1];
                prop_assert_eq!(&prod, &gcd_of_minors(&a, k));
                if k < s.diag.len() && !s.diag[k].is_zero() {
                    prop_assert!(s.diag[k].is_multiple_of(&s.diag[k - 1]));
                }
            }
        }

        #[test]
        fn kernel_vectors_are_annihilated(a in small_matrix(5), p in prop::sample::select(vec![0u64, 1, 2, 3, 7])) {
            let ring = match p { 0 => QQ, 1 => Z, p => CoefficientRing::ModPrime(p) };
            let m = ExactMatrix::from_ints(ring, &as_refs(&a));
            let ker = kernel_basis(&m);
            prop_assert_eq!(ker.len(), m.cols() - rank(&m));
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn solve_matches_naive_oracle(a in small_matrix(4), seed in prop::collection::vec(-3i64..=3, 4)) {
            let rows = a.len();
            let cols = a[0].len();
            // half the time b lies in the image
            let b: Vec<i64> = if seed[0] % 2 == 0 {
                (0..rows).map(|i| (0..cols).map(|j| a[i][j] * seed[j % 4]).sum()).collect()
            } else {
                (0..rows).map(|i| seed[i % 4]).collect()
            };
            let bq: Vec<BigRational> = b.iter().map(|&x| q(x)).collect();
            let mq = ExactMatrix::from_ints(QQ, &as_refs(&a));
            let xq = solve(&mq, &bq).unwrap();
            prop_assert_eq!(xq.is_some(), naive_consistent(&a, &b));
            if let Some(x) = xq {
                prop_assert_eq!(mq.mul_vec(&x), bq.clone());
            }
            let mz = ExactMatrix::from_ints(Z, &as_refs(&a));
            match solve(&mz, &bq).unwrap() {
                Some(x) => {
                    prop_assert!(x.iter().all(|v| v.is_integer()));
                    prop_assert_eq!(mz.mul_vec(&x), bq);
                }
                None => {
                    // no integer point in a small box either
                    if seed[0] % 2 == 0 {
                        prop_assert!(false, "constructed integral solution missed");
                    }
                }
            }
        }
    }
}
