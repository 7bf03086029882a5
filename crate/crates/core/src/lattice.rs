//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision: charge-matrix cofactors grow
//! quickly, and every downstream series coefficient depends on these
//! computations being exact. Fixed-width arithmetic is deliberately not
//! used anywhere.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

/// Outcome of a Smith normal form computation: `u * m * v = d` with
/// `u`, `v` unimodular and `d` diagonal with divisibility down the diagonal.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_concat(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.entries.swap(a * c + j, b * c + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let c = self.cols;
            self.entries.swap(i * c + a, i * c + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    /// col[a] += q * col[b]
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * &self[(i, b)];
            self[(i, a)] += add;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    /// Determinant by Bareiss fraction-free elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
                match swap {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero());
                    a[(i, j)] = q;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

trait ConcatRows {
    fn into_concat(self) -> Vec<BigInt>;
}

impl ConcatRows for Vec<Vec<BigInt>> {
    fn into_concat(self) -> Vec<BigInt> {
        self.into_iter().flatten().collect()
    }
}

/// Smith normal form with transforms.
///
/// Pivot selection takes the smallest nonzero absolute value in the
/// remaining block, which keeps intermediate entries from exploding.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let dim = rows.min(cols);
    let mut rank: usize = 0;

    for k in 0..dim {
        // smallest |entry| pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if a[(i, j)].abs() < a[(pi, pj)].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(k, pi);
        u.swap_rows(k, pi);
        a.swap_cols(k, pj);
        v.swap_cols(k, pj);

        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if !a[(i, k)].is_zero() {
                    let q = -div_nearest(&a[(i, k)], &a[(k, k)]);
                    a.add_row_multiple(i, k, &q);
                    u.add_row_multiple(i, k, &q);
                    if !a[(i, k)].is_zero() {
                        a.swap_rows(i, k);
                        u.swap_rows(i, k);
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if !a[(k, j)].is_zero() {
                    let q = -div_nearest(&a[(k, j)], &a[(k, k)]);
                    a.add_col_multiple(j, k, &q);
                    v.add_col_multiple(j, k, &q);
                    if !a[(k, j)].is_zero() {
                        a.swap_cols(j, k);
                        v.swap_cols(j, k);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        if a[(k, k)].is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
        rank += 1;
    }

    // Enforce d_1 | d_2 | ... by folding later diagonal entries back.
    loop {
        let mut changed = false;
        for k in 0..rank.saturating_sub(1) {
            let (dk, dn) = (a[(k, k)].clone(), a[(k + 1, k + 1)].clone());
            if dk.is_zero() || (&dn % &dk).is_zero() {
                continue;
            }
            // col k += col k+1, then re-reduce the 2x2 block
            a.add_col_multiple(k, k + 1, &BigInt::one());
            v.add_col_multiple(k, k + 1, &BigInt::one());
            loop {
                if a[(k + 1, k)].is_zero() && a[(k, k + 1)].is_zero() {
                    break;
                }
                if !a[(k + 1, k)].is_zero() {
                    let q = -div_nearest(&a[(k + 1, k)], &a[(k, k)]);
                    a.add_row_multiple(k + 1, k, &q);
                    u.add_row_multiple(k + 1, k, &q);
                    if !a[(k + 1, k)].is_zero() {
                        a.swap_rows(k, k + 1);
                        u.swap_rows(k, k + 1);
                    }
                }
                if !a[(k, k + 1)].is_zero() {
                    let q = -div_nearest(&a[(k, k + 1)], &a[(k, k)]);
                    a.add_col_multiple(k + 1, k, &q);
                    v.add_col_multiple(k + 1, k, &q);
                    if !a[(k, k + 1)].is_zero() {
                        a.swap_cols(k, k + 1);
                        v.swap_cols(k, k + 1);
                    }
                }
            }
            if a[(k, k)].is_negative() {
                a.negate_row(k);
                u.negate_row(k);
            }
            if a[(k + 1, k + 1)].is_negative() {
                a.negate_row(k + 1);
                u.negate_row(k + 1);
            }
            changed = true;
        }
        if !changed {
            break;
        }
    }

    SmithNormalForm { u, d: a, v, rank }
}

/// Integer division rounding to nearest (ties toward even quotient are fine;
/// we only need |remainder| <= |b|/2 to keep SNF entries small).
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if r.is_zero() {
        return q;
    }
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Z-basis of the integer kernel of `m`, as column vectors of length `m.cols`.
///
/// Empty when the kernel is trivial. With `u m v = d` and `d` of rank `r`,
/// the last `cols - r` columns of `v` span the kernel over `Z`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank..m.cols).map(|j| snf.v.column(j)).collect()
}

/// Dense rational matrix used for exact solving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows)
                .flat_map(|i| (0..m.cols).map(move |j| (i, j)))
                .map(|(i, j)| BigRational::from_integer(m[(i, j)].clone()))
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                let c = self.cols;
                self.entries.swap(row * c + j, p * c + j);
            }
            let inv = self[(row, col)].recip();
            for j in col..self.cols {
                let v = &self[(row, j)] * &inv;
                self[(row, j)] = v;
            }
            for i in 0..self.rows {
                if i != row && !self[(i, col)].is_zero() {
                    let f = self[(i, col)].clone();
                    for j in col..self.cols {
                        let v = &self[(i, j)] - &f * &self[(row, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

/// Solve `m x = b` over the rationals.
///
/// Returns `Ok(None)` for an inconsistent system (that is a result, not a
/// failure), `Ok(Some(x))` otherwise. When the solution space is positive
/// dimensional the free variables are set to zero, so the answer is still
/// an exact solution; when the solution is unique it is returned exactly.
pub fn solve_rational(m: &RatMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    if b.len() != m.rows {
        return Err(Error::InvalidInput(format!(
            "solve_rational: rhs length {} does not match {} rows",
            b.len(),
            m.rows
        )));
    }
    let mut aug = RatMatrix::zero(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let pivots = aug.rref();
    if pivots.contains(&m.cols) {
        return Ok(None); // row [0 ... 0 | 1]: inconsistent
    }
    let mut x = vec![BigRational::zero(); m.cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug[(row, m.cols)].clone();
    }
    Ok(Some(x))
}

/// Solve `m x = b` for integer matrices, rational unknowns.
pub fn solve_rational_int(m: &IntMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    solve_rational(&RatMatrix::from_int(m), b)
}

/// Basis of the rational kernel of `m` (row-reduced, denominators cleared
/// to primitive integer vectors).
pub fn rational_kernel_basis(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    let mut a = m.clone();
    let pivots = a.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![BigRational::zero(); m.cols];
        v[f] = BigRational::one();
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = -a[(row, f)].clone();
        }
        basis.push(clear_denominators(&v));
    }
    basis
}

/// Scale a rational vector to a primitive integer vector (gcd 1), preserving
/// direction.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = crate::util::denominator_lcm(v.iter());
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| {
            let scaled = x * BigRational::from_integer(l.clone());
            debug_assert!(scaled.denom().is_one());
            scaled.to_integer()
        })
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.clone());
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.iter().map(|x| x / &g).collect()
}

/// gcd of entries; zero vector gives zero.
pub fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        g = num::integer::gcd(g, x.clone());
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::{big, rat, rat_int};

    fn check_snf(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        // u m v = d exactly
        let umv = snf.u.mul(m).mul(&snf.v);
        assert_eq!(umv, snf.d, "u*m*v != d");
        assert_eq!(snf.u.determinant().abs(), big(1), "u not unimodular");
        assert_eq!(snf.v.determinant().abs(), big(1), "v not unimodular");
        // diagonal, nonnegative, divisibility chain
        for i in 0..snf.d.rows {
            for j in 0..snf.d.cols {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero(), "off-diagonal entry");
                }
            }
        }
        for k in 0..snf.rank.saturating_sub(1) {
            let (a, b) = (&snf.d[(k, k)], &snf.d[(k + 1, k + 1)]);
            assert!((b % a).is_zero(), "divisibility {a} | {b} fails");
        }
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(2);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, IntMatrix::identity(2));
        assert_eq!(snf.u, IntMatrix::identity(2));
        assert_eq!(snf.v, IntMatrix::identity(2));
        check_snf(&m);
    }

    #[test]
    fn snf_one_by_one() {
        let m = IntMatrix::from_i64_rows(&[vec![2]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d[(0, 0)], big(2));
        check_snf(&m);
    }

    #[test]
    fn snf_c2z2_extended_fan_map() {
        // fan map of [C^2/Z_2] extended by the Box vector:
        // e_0 -> (0,1), e_1 -> (2,1), e_2 -> (1,1)
        let m = IntMatrix::from_i64_rows(&[vec![0, 2, 1], vec![1, 1, 1]]);
        check_snf(&m);
        let kernel = kernel_basis(&m);
        assert_eq!(kernel.len(), 1);
        // spanned by (1,1,-2) up to sign: check m*v = 0 and the ratio
        let v = &kernel[0];
        assert_eq!(m.mul_vec(v), vec![big(0), big(0)]);
        let scaled: Vec<BigInt> = if v[0].is_negative() {
            v.iter().map(|x| -x).collect()
        } else {
            v.clone()
        };
        assert_eq!(scaled, vec![big(1), big(1), big(-2)]);
    }

    #[test]
    fn snf_divisibility() {
        let m = IntMatrix::from_i64_rows(&[vec![6, 0], vec![0, 4]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d[(0, 0)], big(2));
        assert_eq!(snf.d[(1, 1)], big(12));
        check_snf(&m);
    }

    #[test]
    fn snf_random_small() {
        // deterministic pseudo-random matrices
        let mut seed: i64 = 12345;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % 7 - 3
        };
        for rows in 1..4usize {
            for cols in 1..4usize {
                let data: Vec<Vec<i64>> =
                    (0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect();
                check_snf(&IntMatrix::from_i64_rows(&data));
            }
        }
    }

    #[test]
    fn kernel_identity_trivial() {
        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_kp2() {
        // rays (0,0,1),(1,0,1),(0,1,1),(-1,-1,1) as columns
        let m = IntMatrix::from_i64_rows(&[
            vec![0, 1, 0, -1],
            vec![0, 0, 1, -1],
            vec![1, 1, 1, 1],
        ]);
        let kernel = kernel_basis(&m);
        assert_eq!(kernel.len(), 1);
        let v = &kernel[0];
        assert_eq!(m.mul_vec(v), vec![big(0); 3]);
        // (-3,1,1,1) up to sign: -3(0,0,1)+(1,0,1)+(0,1,1)+(-1,-1,1) = 0
        let scaled: Vec<BigInt> = if v[0].is_positive() {
            v.iter().map(|x| -x).collect()
        } else {
            v.clone()
        };
        assert_eq!(scaled, vec![big(-3), big(1), big(1), big(1)]);
    }

    #[test]
    fn solve_identity() {
        let m = IntMatrix::identity(3);
        let b = vec![rat(1, 2), rat_int(3), rat(-5, 7)];
        let x = solve_rational_int(&m, &b).unwrap().unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_express_in_cone_basis() {
        // (1,1) in basis {(0,1),(2,1)} -> (1/2, 1/2)
        let m = IntMatrix::from_i64_rows(&[vec![0, 2], vec![1, 1]]);
        let b = vec![rat_int(1), rat_int(1)];
        let x = solve_rational_int(&m, &b).unwrap().unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn solve_kpn_extra_vector() {
        // (0,0,1) in the maximal cone {(1,0,1),(0,1,1),(-1,-1,1)} -> (1/3,1/3,1/3)
        let m = IntMatrix::from_i64_rows(&[
            vec![1, 0, -1],
            vec![0, 1, -1],
            vec![1, 1, 1],
        ]);
        let b = vec![rat_int(0), rat_int(0), rat_int(1)];
        let x = solve_rational_int(&m, &b).unwrap().unwrap();
        assert_eq!(x, vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
    }

    #[test]
    fn solve_inconsistent_is_none() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]);
        let b = vec![rat_int(0), rat_int(1)];
        assert!(solve_rational_int(&m, &b).unwrap().is_none());
    }

    #[test]
    fn solution_is_exact_when_returned() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 3], vec![5, 7], vec![7, 10]]);
        let b = vec![rat_int(1), rat_int(2), rat_int(3)];
        let x = solve_rational_int(&m, &b).unwrap().unwrap();
        let mx = RatMatrix::from_int(&m).mul_vec(&x);
        assert_eq!(mx, b);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(m.determinant(), big(-3));
        let singular = IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(), big(0));
    }

    #[test]
    fn kernel_count_matches_rank_deficit() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 1);
        let kernel = kernel_basis(&m);
        assert_eq!(kernel.len(), m.cols - snf.rank);
        for v in &kernel {
            assert_eq!(m.mul_vec(v), vec![big(0), big(0)]);
        }
    }
}
