//! Gaussian elimination over the two exact fields we support.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::ring::mod_inverse;

pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics if `x` has no image in the field.
    fn embed(&self, x: &BigRational) -> Self::Elem;
    fn to_rational(&self, a: &Self::Elem) -> BigRational;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn embed(&self, x: &BigRational) -> BigRational {
        x.clone()
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// `ℤ/p` with `p` prime and below 2^32, so products fit in `u64`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!((2..(1u64 << 32)).contains(&p), "prime field modulus out of range: {p}");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat
        let mut base = *a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
    fn embed(&self, x: &BigRational) -> u64 {
        let p = BigInt::from(self.p);
        let num = x.numer().mod_floor(&p);
        let den = x.denom().mod_floor(&p);
        let inv = mod_inverse(&den, &p).expect("denominator divisible by the characteristic");
        (num * inv).mod_floor(&p).to_u64().expect("residue fits in u64")
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

/// Reduced row echelon form together with the invertible matrix `T`
/// satisfying `T · A = R`.
#[derive(Clone)]
pub struct Rref<F: Field> {
    field: F,
    reduced: Matrix<F::Elem>,
    transform: Matrix<F::Elem>,
    pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn new(field: F, a: &Matrix<F::Elem>) -> Self {
        let mut reduced = a.clone();
        let mut transform = identity(&field, a.rows());
        let pivots = row_reduce(&field, &mut reduced, Some(&mut transform));
        Rref { field, reduced, transform, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot column of each nonzero row, increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduced(&self) -> &Matrix<F::Elem> {
        &self.reduced
    }

    /// Basis of the null space, one vector per free column. The vector for
    /// free column `f` has a one at `f` and zeros at every other free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let cols = self.reduced.cols();
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (row, &p) in self.pivots.iter().enumerate() {
                v[p] = f.neg(&self.reduced[(row, free)]);
            }
            basis.push(v);
        }
        basis
    }

    /// Columns that are not pivots, increasing.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.reduced.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.reduced.cols()).filter(|&c| !is_pivot[c]).collect()
    }

    /// One solution of `A x = b` (free variables set to zero), or `None`.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        assert_eq!(b.len(), self.reduced.rows(), "right-hand side length mismatch");
        let tb = mat_vec(f, &self.transform, b);
        if tb[self.rank()..].iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        let mut x = vec![f.zero(); self.reduced.cols()];
        for (row, &p) in self.pivots.iter().enumerate() {
            x[p] = tb[row].clone();
        }
        Some(x)
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..a.rows())
        .map(|i| {
            let mut acc = f.zero();
            for (x, y) in a.row(i).iter().zip(v) {
                if !f.is_zero(x) && !f.is_zero(y) {
                    acc = f.add(&acc, &f.mul(x, y));
                }
            }
            acc
        })
        .collect()
}

/// In-place reduction to RREF. Pivot for each column is the first nonzero
/// entry at or below the current row. Row operations are mirrored onto
/// `companion` when given. Returns the pivot columns.
pub fn row_reduce<F: Field>(f: &F, m: &mut Matrix<F::Elem>, mut companion: Option<&mut Matrix<F::Elem>>) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[(i, c)])) else {
            continue;
        };
        m.swap_rows(r, pr);
        if let Some(t) = companion.as_deref_mut() {
            t.swap_rows(r, pr);
        }
        let inv = f.inv(&m[(r, c)]);
        scale_row(f, m, r, &inv);
        if let Some(t) = companion.as_deref_mut() {
            scale_row(f, t, r, &inv);
        }
        for i in 0..rows {
            if i == r || f.is_zero(&m[(i, c)]) {
                continue;
            }
            let factor = m[(i, c)].clone();
            axpy_row(f, m, i, r, &factor);
            if let Some(t) = companion.as_deref_mut() {
                axpy_row(f, t, i, r, &factor);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn scale_row<F: Field>(f: &F, m: &mut Matrix<F::Elem>, row: usize, s: &F::Elem) {
    for j in 0..m.cols() {
        if !f.is_zero(&m[(row, j)]) {
            m[(row, j)] = f.mul(&m[(row, j)], s);
        }
    }
}

/// `row_i -= factor * row_r`
fn axpy_row<F: Field>(f: &F, m: &mut Matrix<F::Elem>, i: usize, r: usize, factor: &F::Elem) {
    for j in 0..m.cols() {
        if f.is_zero(&m[(r, j)]) {
            continue;
        }
        let d = f.mul(factor, &m[(r, j)]);
        m[(i, j)] = f.sub(&m[(i, j)], &d);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        let cols = rows[0].len();
        Matrix::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect(),
        )
    }

    #[test]
    fn rref_rank_and_kernel() {
        let a = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let rr = Rref::new(Rationals, &a);
        assert_eq!(rr.rank(), 2);
        let ker = rr.kernel_basis();
        assert_eq!(ker.len(), 1);
        let av = mat_vec(&Rationals, &a, &ker[0]);
        assert!(av.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(11);
        for a in 1..11 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.embed(&BigRational::new(1.into(), 2.into())), 6);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = qm(&[&[1, 1], &[2, 2]]);
        let rr = Rref::new(Rationals, &a);
        let b = vec![BigRational::one(), BigRational::zero()];
        assert!(rr.solve(&b).is_none());
        let b = vec![BigRational::one(), BigRational::from_integer(2.into())];
        let x = rr.solve(&b).unwrap();
        assert_eq!(mat_vec(&Rationals, &a, &x), b);
    }
}
