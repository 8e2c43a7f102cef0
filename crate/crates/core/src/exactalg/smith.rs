use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, Matrix};

/// `U · A · V = diag(d_1, …, d_r, 0, …)` with `d_i | d_{i+1}` and `U`, `V`
/// unimodular. Both inverses are kept because cokernel coordinates and
/// cocycle representatives need them.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// The `min(rows, cols)` diagonal entries, nonnegative.
    pub diag: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    /// The diagonal matrix `D` with the shape of the input.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut d = Matrix::zeros(m, n);
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut u_inv = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut v_inv = Matrix::identity(n);

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = find_pivot(&d, t) {
            if pi != t {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
            }
            if pj != t {
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);
            }
            let pivot = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&pivot);
                add_row_multiple(&mut d, i, t, &-&q);
                add_row_multiple(&mut u, i, t, &-&q);
                add_col_multiple(&mut u_inv, t, i, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&pivot);
                add_col_multiple(&mut d, j, t, &-&q);
                add_col_multiple(&mut v, j, t, &-&q);
                add_row_multiple(&mut v_inv, t, j, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row t and column t are clear; enforce divisibility of the rest.
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    add_row_multiple(&mut d, t, i, &BigInt::one());
                    add_row_multiple(&mut u, t, i, &BigInt::one());
                    add_col_multiple(&mut u_inv, i, t, &-BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
            negate_col(&mut u_inv, t);
        }
    }

    let diag = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    SmithForm { u, u_inv, v, v_inv, diag }
}

/// Nonzero entry of minimal absolute value in the trailing block starting
/// at `(t, t)`; ties go to the first entry in row-major order.
fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                let done = a.is_one();
                best = Some((i, j, a));
                if done {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// `row_dst += k * row_src`
fn add_row_multiple(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        if m[(src, j)].is_zero() {
            continue;
        }
        let p = k * &m[(src, j)];
        m[(dst, j)] += p;
    }
}

/// `col_dst += k * col_src`
fn add_col_multiple(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        if m[(i, src)].is_zero() {
            continue;
        }
        let p = k * &m[(i, src)];
        m[(i, dst)] += p;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let x = -&m[(r, j)];
        m[(r, j)] = x;
    }
}

fn negate_col(m: &mut IntMatrix, c: usize) {
    for i in 0..m.rows() {
        let x = -&m[(i, c)];
        m[(i, c)] = x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::int_matrix;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.diagonal_matrix());
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), Matrix::identity(a.cols()));
        for w in s.diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn zero_matrix() {
        let a = int_matrix(&[&[0, 0], &[0, 0]]);
        let s = check(&a);
        assert_eq!(s.diag, vec![BigInt::zero(), BigInt::zero()]);
        assert_eq!(s.u, Matrix::identity(2));
        assert_eq!(s.v, Matrix::identity(2));
    }

    #[test]
    fn identity_three() {
        let s = check(&Matrix::identity(3));
        assert_eq!(s.diag, vec![BigInt::one(); 3]);
    }

    #[test]
    fn diag_two_three() {
        // d1 = gcd(2, 3) = 1 and d1 d2 = det = 6
        let s = check(&int_matrix(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular() {
        let s = check(&int_matrix(&[&[1, 1], &[1, 1], &[1, 1]]));
        assert_eq!(s.rank(), 1);
        let s = check(&int_matrix(&[&[2, 4, 4], &[-6, 6, 12]]));
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn empty_shapes() {
        let s = check(&Matrix::zeros(0, 3));
        assert!(s.diag.is_empty());
        let s = check(&Matrix::zeros(2, 0));
        assert!(s.diag.is_empty());
    }
}
