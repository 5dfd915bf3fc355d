//! Exact integer linear algebra on dense matrices: Hermite and Smith normal
//! forms (with transforms), Bareiss determinants, adjugates, p-adic
//! valuations, integer kernels and saturation.
//!
//! Conventions, fixed once for the whole crate: lattices are *row spans*, and
//! endomorphisms act on row vectors by right multiplication. The HNF is
//! row-style upper echelon with positive pivots and entries above a pivot
//! reduced into `[0, pivot)`.

use num::{bigint::Sign, BigInt, Integer, One, Signed, Zero};
use std::fmt;

/// Minimal p-adic valuation of a matrix; `Infinite` for the zero matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

pub fn val_p(x: &BigInt, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut x = x.clone();
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        v += 1;
        x = q;
    }
}

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> IntMat {
        let mut m = IntMat::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn diag_i64(entries: &[i64]) -> IntMat {
        let n = entries.len();
        IntMat::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::from(entries[i])
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = &out[(i, j)] + a * b;
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Juxtapose `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        IntMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMat {
        IntMat::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn min_valuation(&self, p: u64) -> Valuation {
        let mut best: Option<u64> = None;
        for x in &self.data {
            if let Valuation::Finite(v) = val_p(x, p) {
                best = Some(best.map_or(v, |b| b.min(v)));
                if best == Some(0) {
                    break;
                }
            }
        }
        best.map_or(Valuation::Infinite, Valuation::Finite)
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.data
            .iter()
            .map(|x| i64::try_from(x.clone()).ok())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    /// `row_a -= q * row_b`
    fn row_axpy(&mut self, a: usize, q: &BigInt, b: usize) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self[(a, c)] - q * &self[(b, c)];
            self[(a, c)] = v;
        }
    }

    /// Row Hermite normal form of the row span together with a unimodular
    /// `U` such that `U * self = H` (zero rows of `H` kept in place).
    pub fn hnf_with_transform(&self) -> (IntMat, IntMat) {
        let mut h = self.clone();
        let mut u = IntMat::identity(self.rows);
        let mut pivot = 0usize;
        for col in 0..self.cols {
            if pivot >= self.rows {
                break;
            }
            // gcd-eliminate below the pivot row
            loop {
                let mut min_row: Option<usize> = None;
                for r in pivot..self.rows {
                    if !h[(r, col)].is_zero()
                        && min_row.is_none_or(|m| h[(r, col)].abs() < h[(m, col)].abs())
                    {
                        min_row = Some(r);
                    }
                }
                let Some(mr) = min_row else { break };
                h.swap_rows(pivot, mr);
                u.swap_rows(pivot, mr);
                let mut done = true;
                for r in pivot + 1..self.rows {
                    if h[(r, col)].is_zero() {
                        continue;
                    }
                    let q = h[(r, col)].div_floor(&h[(pivot, col)]);
                    h.row_axpy(r, &q, pivot);
                    u.row_axpy(r, &q, pivot);
                    if !h[(r, col)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h[(pivot, col)].is_zero() {
                continue;
            }
            if h[(pivot, col)].sign() == Sign::Minus {
                h.negate_row(pivot);
                u.negate_row(pivot);
            }
            for r in 0..pivot {
                let q = h[(r, col)].div_floor(&h[(pivot, col)]);
                h.row_axpy(r, &q, pivot);
                u.row_axpy(r, &q, pivot);
            }
            pivot += 1;
        }
        (h, u)
    }

    /// HNF of the row span with zero rows removed.
    pub fn hnf(&self) -> IntMat {
        let (h, _) = self.hnf_with_transform();
        let keep: Vec<usize> = (0..h.rows)
            .filter(|&r| h.row(r).iter().any(|x| !x.is_zero()))
            .collect();
        h.submatrix(&keep, &(0..h.cols).collect::<Vec<_>>())
    }

    pub fn rank(&self) -> usize {
        self.hnf().rows
    }

    /// Saturated basis of the left kernel `{x : x * self = 0}`.
    pub fn kernel_int(&self) -> IntMat {
        let (h, u) = self.hnf_with_transform();
        let keep: Vec<usize> = (0..h.rows)
            .filter(|&r| h.row(r).iter().all(|x| x.is_zero()))
            .collect();
        u.submatrix(&keep, &(0..self.rows).collect::<Vec<_>>())
    }

    /// Basis of the smallest direct summand of `Z^cols` containing the row
    /// span; the quotient by the result is torsion-free.
    pub fn saturate(&self) -> IntMat {
        // right kernel of self, as rows
        let right = self.transpose().kernel_int();
        // vectors orthogonal to that kernel under x * right^T = 0
        right.transpose().kernel_int()
    }

    /// Express `target` in the row span, returning the coefficient vector
    /// with respect to `self`'s rows; `None` if it is not in the integer span.
    pub fn solve_in_row_span(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(target.len(), self.cols);
        let (h, u) = self.hnf_with_transform();
        let mut rem: Vec<BigInt> = target.to_vec();
        let mut y = vec![BigInt::zero(); self.rows];
        for r in 0..h.rows {
            let Some(pc) = (0..h.cols).find(|&c| !h[(r, c)].is_zero()) else {
                continue;
            };
            let (q, m) = rem[pc].div_rem(&h[(r, pc)]);
            if !m.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for c in 0..h.cols {
                    let v = &rem[c] - &q * &h[(r, c)];
                    rem[c] = v;
                }
            }
            y[r] = q;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        // coefficients w.r.t. original rows: y * U
        let mut out = vec![BigInt::zero(); self.rows];
        for r in 0..self.rows {
            if y[r].is_zero() {
                continue;
            }
            for c in 0..self.rows {
                let v = &out[c] + &y[r] * &u[(r, c)];
                out[c] = v;
            }
        }
        Some(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)])
                        .div_exact(&prev);
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Adjugate matrix: `self * adjugate(self) = det(self) * I`.
    pub fn adjugate(&self) -> IntMat {
        assert!(self.is_square(), "adjugate of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return IntMat::zero(0, 0);
        }
        if n == 1 {
            return IntMat::identity(1);
        }
        let idx: Vec<usize> = (0..n).collect();
        IntMat::from_fn(n, n, |j, i| {
            // cofactor C_{ij} placed at (j, i)
            let rs: Vec<usize> = idx.iter().copied().filter(|&r| r != i).collect();
            let cs: Vec<usize> = idx.iter().copied().filter(|&c| c != j).collect();
            let minor = self.submatrix(&rs, &cs).det();
            if (i + j) % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> IntMat {
        let d = self.det();
        let adj = self.adjugate();
        if d == BigInt::one() {
            adj
        } else if d == -BigInt::one() {
            adj.scale(&-BigInt::one())
        } else {
            panic!("matrix is not unimodular (det = {d})");
        }
    }

    /// Smith normal form: `(diag, U, V)` with `U * self * V` diagonal, the
    /// diagonal nonnegative with each entry dividing the next.
    pub fn snf_with_transform(&self) -> (Vec<BigInt>, IntMat, IntMat) {
        let mut s = self.clone();
        let mut u = IntMat::identity(self.rows);
        let mut v = IntMat::identity(self.cols);
        let steps = self.rows.min(self.cols);
        for t in 0..steps {
            'outer: loop {
                // locate minimal nonzero entry in the trailing block
                let mut best: Option<(usize, usize)> = None;
                for i in t..self.rows {
                    for j in t..self.cols {
                        if !s[(i, j)].is_zero()
                            && best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs())
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else { break };
                s.swap_rows(t, bi);
                u.swap_rows(t, bi);
                swap_cols(&mut s, t, bj);
                swap_cols(&mut v, t, bj);
                // clear column t
                for i in t + 1..self.rows {
                    if s[(i, t)].is_zero() {
                        continue;
                    }
                    let q = s[(i, t)].div_floor(&s[(t, t)]);
                    s.row_axpy(i, &q, t);
                    u.row_axpy(i, &q, t);
                    if !s[(i, t)].is_zero() {
                        continue 'outer;
                    }
                }
                // clear row t
                for j in t + 1..self.cols {
                    if s[(t, j)].is_zero() {
                        continue;
                    }
                    let q = s[(t, j)].div_floor(&s[(t, t)]);
                    col_axpy(&mut s, j, &q, t);
                    col_axpy(&mut v, j, &q, t);
                    if !s[(t, j)].is_zero() {
                        continue 'outer;
                    }
                }
                // enforce divisibility of the trailing block
                for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                            let one = BigInt::from(-1);
                            s.row_axpy(t, &one, i);
                            u.row_axpy(t, &one, i);
                            continue 'outer;
                        }
                    }
                }
                break;
            }
            if s[(t, t)].sign() == Sign::Minus {
                s.negate_row(t);
                u.negate_row(t);
            }
        }
        let diag = (0..steps).map(|t| s[(t, t)].clone()).collect();
        (diag, u, v)
    }

    pub fn snf(&self) -> Vec<BigInt> {
        self.snf_with_transform().0
    }
}

fn swap_cols(m: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in 0..m.rows {
        let x = m[(r, a)].clone();
        m[(r, a)] = m[(r, b)].clone();
        m[(r, b)] = x;
    }
}

/// `col_a -= q * col_b`
fn col_axpy(m: &mut IntMat, a: usize, q: &BigInt, b: usize) {
    if q.is_zero() {
        return;
    }
    for r in 0..m.rows {
        let v = &m[(r, a)] - q * &m[(r, b)];
        m[(r, a)] = v;
    }
}

trait DivExact {
    fn div_exact(&self, d: &BigInt) -> BigInt;
}

impl DivExact for BigInt {
    fn div_exact(&self, d: &BigInt) -> BigInt {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division in Bareiss step");
        q
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_reorders_divisibility() {
        let m = IntMat::diag_i64(&[2, 1, 4]);
        let diag = m.snf();
        assert_eq!(
            diag,
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(4)]
        );
        let (d, u, v) = m.snf_with_transform();
        let prod = u.mul(&m).mul(&v);
        for (i, di) in d.iter().enumerate() {
            assert_eq!(&prod[(i, i)], di);
        }
    }

    #[test]
    fn adjugate_2x2() {
        let m = IntMat::from_rows_i64(&[vec![1, 1], vec![0, 2]]);
        let adj = m.adjugate();
        assert_eq!(adj, IntMat::from_rows_i64(&[vec![2, -1], vec![0, 1]]));
        assert_eq!(m.mul(&adj), IntMat::identity(2).scale(&m.det()));
    }

    #[test]
    fn det_of_p_power_diag() {
        let m = IntMat::diag_i64(&[8, 4]);
        assert_eq!(m.det(), BigInt::from(32));
    }

    #[test]
    fn valuation_examples() {
        let m = IntMat::from_rows_i64(&[vec![2, 4], vec![8, 2]]);
        assert_eq!(m.min_valuation(2), Valuation::Finite(1));
        assert_eq!(IntMat::identity(3).min_valuation(5), Valuation::Finite(0));
        assert_eq!(IntMat::zero(2, 2).min_valuation(3), Valuation::Infinite);
    }

    #[test]
    fn saturate_examples() {
        // span{(2,0)} saturates to span{(1,0)}
        let m = IntMat::from_rows_i64(&[vec![2, 0]]);
        assert_eq!(m.saturate(), IntMat::from_rows_i64(&[vec![1, 0]]));
        // span{(1,1),(1,-1)} has index 2; saturation is all of Z^2
        let m = IntMat::from_rows_i64(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.saturate().hnf(), IntMat::identity(2));
        let incl = m.hnf();
        assert_eq!(incl.snf(), vec![BigInt::from(1), BigInt::from(2)]);
        // unimodular rows stay the same span
        let m = IntMat::from_rows_i64(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(m.saturate().hnf(), m.hnf());
    }

    #[test]
    fn kernel_examples() {
        let m = IntMat::from_rows_i64(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(m.kernel_int(), IntMat::from_rows_i64(&[vec![0, 1]]));
        let z = IntMat::zero(2, 2);
        assert_eq!(z.kernel_int().hnf(), IntMat::identity(2));
        let inv = IntMat::from_rows_i64(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(inv.kernel_int().rows(), 0);
    }

    #[test]
    fn hnf_shape() {
        let m = IntMat::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let h = m.hnf();
        // upper echelon, positive pivots, reduced above
        let mut last_pivot: i64 = -1;
        for r in 0..h.rows() {
            let pc = (0..h.cols()).find(|&c| !h[(r, c)].is_zero()).unwrap();
            assert!((pc as i64) > last_pivot);
            last_pivot = pc as i64;
            assert!(h[(r, pc)].is_positive());
            for rr in 0..r {
                assert!(h[(rr, pc)] >= BigInt::zero() && h[(rr, pc)] < h[(r, pc)]);
            }
        }
    }

    #[test]
    fn solve_in_row_span_works() {
        let m = IntMat::from_rows_i64(&[vec![1, 2, 0], vec![0, 3, 1]]);
        let t = vec![BigInt::from(2), BigInt::from(10), BigInt::from(2)];
        let coeffs = m.solve_in_row_span(&t).unwrap();
        assert_eq!(coeffs, vec![BigInt::from(2), BigInt::from(2)]);
        let missing = vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)];
        assert!(m.solve_in_row_span(&missing).is_none());
    }
}
