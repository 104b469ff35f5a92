//! Exact integer and modular linear algebra.
//!
//! Matrices here are tiny (a handful of rows and columns), so everything is
//! plain elimination over `BigInt` with the unimodular transforms tracked
//! explicitly. Pivot ties are broken by smallest absolute value, then lowest
//! index, which keeps every output deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix");
            for (j, &x) in r.as_ref().iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let data: Vec<BigInt> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n * cols, "ragged matrix");
        IntMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| big_to_i64_vec(self.row(i)))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= f * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] -= v;
        }
    }

    /// col[dst] -= f * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn rank(&self) -> usize {
        let h = hnf(self);
        (0..h.h.rows).filter(|&i| h.h.row(i).iter().any(|x| !x.is_zero())).count()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

pub fn big_to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Linalg(format!("entry {x} overflows i64"))))
        .collect()
}

pub fn i64_to_big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[derive(Clone, Debug)]
pub struct HermiteResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

/// Row-style Hermite normal form: U·A = H with H in row echelon form,
/// positive pivots, and entries above each pivot reduced into [0, pivot).
pub fn hnf(a: &IntMatrix) -> HermiteResult {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        loop {
            let best = (pivot_row..m)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&x, &y| h[(x, col)].abs().cmp(&h[(y, col)].abs()).then(x.cmp(&y)));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let f = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                h.sub_row(i, pivot_row, &f);
                u.sub_row(i, pivot_row, &f);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < m && !h[(pivot_row, col)].is_zero() {
            if h[(pivot_row, col)].is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            for i in 0..pivot_row {
                let f = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                h.sub_row(i, pivot_row, &f);
                u.sub_row(i, pivot_row, &f);
            }
            pivot_row += 1;
        }
    }
    HermiteResult { h, u }
}

#[derive(Clone, Debug)]
pub struct SmithResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithResult {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smith normal form: U·A·V = S diagonal with d_1 | d_2 | ... and d_i ≥ 0.
pub fn snf(a: &IntMatrix) -> SmithResult {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => s[(i, j)].abs() < s[(bi, bj)].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SmithResult { s, u, v };
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..m {
                let f = s[(i, t)].div_floor(&s[(t, t)]);
                s.sub_row(i, t, &f);
                u.sub_row(i, t, &f);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let f = s[(t, j)].div_floor(&s[(t, t)]);
                s.sub_col(j, t, &f);
                v.sub_col(j, t, &f);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&s[(t, t)]));
            match offender {
                Some((i, _)) => {
                    // Pull the offending row into the pivot row and retry.
                    let minus_one = -BigInt::one();
                    s.sub_row(t, i, &minus_one);
                    u.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithResult { s, u, v }
}

/// Basis of the saturated integer kernel {x : A·x = 0}.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    // U·Aᵀ = H; rows of U opposite zero rows of H span the kernel of A, and
    // being rows of a unimodular matrix they span a saturated lattice.
    let HermiteResult { h, u } = hnf(&a.transpose());
    (0..h.rows)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect()
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &IntMatrix) -> Result<IntMatrix> {
    if a.rows != a.cols {
        return Err(Error::Linalg("inverse of a non-square matrix".into()));
    }
    let HermiteResult { h, u } = hnf(a);
    if h != IntMatrix::identity(a.rows) {
        return Err(Error::Linalg("matrix is not unimodular".into()));
    }
    Ok(u)
}

/// One integer solution x of A·x = b, if any.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let SmithResult { s, u, v } = snf(a);
    let ub = u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, c) in ub.iter().enumerate() {
        let d = if i < a.cols { s[(i, i)].clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            if !c.is_multiple_of(&d) {
                return None;
            }
            y[i] = c / &d;
        }
    }
    Some(v.mul_vec(&y))
}

/// One rational solution of A·x = b, if any.
pub fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let (m, n) = (a.rows, a.cols);
    let mut aug: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> =
                a.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.push(BigRational::from_integer(b[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=n {
                    let v = &aug[r][j] * &f;
                    aug[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Some(x)
}

/// Rank of a list of rational vectors.
pub fn rational_rank(vectors: &[Vec<BigRational>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors.to_vec();
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &rows[r][c];
            for j in c..n {
                let v = &rows[r][j] * &f;
                rows[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}

/// The primitive integer relation γ among the columns of M, normalized so
/// its first nonzero entry is negative.
pub fn gale_vector(m: &IntMatrix) -> Result<Vec<i64>> {
    if m.cols != m.rows + 1 {
        return Err(Error::Linalg(format!(
            "expected a (d+1)×(d+2) matrix, got {}×{}",
            m.rows, m.cols
        )));
    }
    let ker = integer_kernel(m);
    if ker.len() != 1 {
        return Err(Error::Linalg(format!(
            "exponent vectors lie in an affine hyperplane (kernel rank {})",
            ker.len()
        )));
    }
    let mut g = big_to_i64_vec(&ker[0])?;
    let content = g.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    for x in g.iter_mut() {
        *x /= content;
    }
    if g.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
        for x in g.iter_mut() {
            *x = -*x;
        }
    }
    Ok(g)
}

/// Rewrites a lattice basis so that its first vector is `v`, which must be
/// primitive in the lattice.
pub fn basis_starting_with(basis: &[Vec<BigInt>], v: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let b = IntMatrix::from_big_rows(basis.to_vec());
    let coords = solve_integer(&b.transpose(), v)
        .ok_or_else(|| Error::Linalg("vector is not in the lattice".into()))?;
    // U·cᵀ = e_1 for a primitive coordinate vector c; then c is the first row
    // of U^{-T}, and U^{-T}·B is a basis starting with c·B = v.
    let col = IntMatrix::from_big_rows(coords.iter().map(|x| vec![x.clone()]).collect());
    let HermiteResult { h, u } = hnf(&col);
    if !h[(0, 0)].is_one() {
        return Err(Error::Linalg("vector is not primitive in the lattice".into()));
    }
    let w = unimodular_inverse(&u)?.transpose();
    let nb = w.mul(&b);
    debug_assert_eq!(nb.row(0), v);
    Ok((0..nb.rows).map(|i| nb.row(i).to_vec()).collect())
}

/// Z-basis (1, f_1, …, f_d) of K = {x : γ·x = 0}.
pub fn kernel_basis_with_ones(gamma: &[i64]) -> Result<IntMatrix> {
    if gamma.iter().sum::<i64>() != 0 {
        return Err(Error::Linalg("gamma entries must sum to zero".into()));
    }
    let k = integer_kernel(&IntMatrix::from_rows(&[gamma]));
    let ones = vec![BigInt::one(); gamma.len()];
    Ok(IntMatrix::from_big_rows(basis_starting_with(&k, &ones)?))
}

/// Vectors ρ_1..ρ_d with F·ρ_kᵀ = e_{k+1}.
pub fn solve_rho(f: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    (1..f.rows)
        .map(|k| {
            let mut e = vec![BigInt::zero(); f.rows];
            e[k] = BigInt::one();
            let x = solve_integer(f, &e)
                .ok_or_else(|| Error::Linalg("no integral dual vector; basis not saturated".into()))?;
            big_to_i64_vec(&x)
        })
        .collect()
}

/// All λ ∈ (Z/n)^d with λ·𝒩 ≡ 0 (mod n), sorted lexicographically.
pub fn modular_nullspace(nmat: &IntMatrix, n: u64) -> Result<Vec<Vec<u64>>> {
    if nmat.rows != nmat.cols || nmat.det().is_zero() {
        return Err(Error::Linalg("covering matrix must be nonsingular".into()));
    }
    let d = nmat.rows;
    // U𝒩V = S, so λ𝒩 ≡ 0 iff μS ≡ 0 for μ = λU^{-1}.
    let SmithResult { s, u, .. } = snf(nmat);
    let nn = BigInt::from(n);
    let steps: Vec<(u64, u64)> = (0..d)
        .map(|i| {
            let g = s[(i, i)].gcd(&nn).to_u64().expect("gcd fits");
            (g, n / g)
        })
        .collect();
    let mut out = Vec::new();
    let total: u64 = steps.iter().map(|&(g, _)| g).product();
    for idx in 0..total {
        let mut rest = idx;
        let mu: Vec<BigInt> = steps
            .iter()
            .map(|&(g, step)| {
                let k = rest % g;
                rest /= g;
                BigInt::from(k * step)
            })
            .collect();
        let lambda: Vec<u64> = (0..d)
            .map(|j| {
                let v: BigInt = (0..d).map(|i| &mu[i] * &u[(i, j)]).sum();
                v.mod_floor(&nn).to_u64().expect("reduced")
            })
            .collect();
        out.push(lambda);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        i64_to_big_vec(v)
    }

    fn is_hermite(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            let pivot = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
            match pivot {
                None => seen_zero = true,
                Some(j) => {
                    if seen_zero || last_pivot.is_some_and(|lp| j <= lp) || !h[(i, j)].is_positive() {
                        return false;
                    }
                    for k in 0..i {
                        if h[(k, j)].is_negative() || h[(k, j)] >= h[(i, j)] {
                            return false;
                        }
                    }
                    last_pivot = Some(j);
                }
            }
        }
        true
    }

    // Oracle: Laplace expansion.
    fn cofactor_det(a: &[Vec<i64>]) -> i64 {
        if a.len() == 1 {
            return a[0][0];
        }
        (0..a.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn hnf_identity() {
        let r = hnf(&IntMatrix::identity(3));
        assert_eq!(r.h, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_dwork_covering_matrix() {
        // Transposed coefficient matrix of the d = 3 Dwork family in a
        // scrambled kernel basis.
        let a = IntMatrix::from_rows(&[[1, 5, 1], [0, -4, 0], [1, 1, 5]]);
        let r = hnf(&a);
        assert_eq!(r.h, IntMatrix::from_rows(&[[1, 1, 1], [0, 4, 0], [0, 0, 4]]));
        assert_eq!(r.u.mul(&a), r.h);
        assert_eq!(r.u.det().abs(), BigInt::one());
    }

    #[test]
    fn hnf_preserves_determinant() {
        let rows = vec![vec![3, -1, 4], vec![1, 5, -9], vec![2, 6, 5]];
        let a = IntMatrix::from_rows(&rows);
        let r = hnf(&a);
        assert!(is_hermite(&r.h));
        assert_eq!(r.h.det().abs(), BigInt::from(cofactor_det(&rows).abs()));
        assert_eq!(a.det(), BigInt::from(cofactor_det(&rows)));
    }

    #[test]
    fn snf_examples() {
        let r = snf(&IntMatrix::from_rows(&[[2, 0], [0, 4]]));
        assert_eq!(r.invariant_factors(), big(&[2, 4]));
        let a = IntMatrix::from_rows(&[[1, 1], [0, 4]]);
        let r = snf(&a);
        assert_eq!(r.invariant_factors(), big(&[1, 4]));
        assert_eq!(r.u.mul(&a).mul(&r.v), r.s);
        let z = snf(&IntMatrix::zeros(2, 3));
        assert!(z.s.is_zero());
    }

    #[test]
    fn kernel_and_gale_vector() {
        let m = IntMatrix::from_rows(&[[1, 1, 1], [-1, 0, 1]]);
        assert_eq!(gale_vector(&m).unwrap(), vec![-1, 2, -1]);
        // Three collinear points in the plane plus a fourth: rank deficient.
        let bad = IntMatrix::from_rows(&[[1, 1, 1, 1], [0, 1, 2, 3], [0, 1, 2, 3]]);
        assert!(gale_vector(&bad).is_err());
    }

    #[test]
    fn dwork_gale_vector() {
        // Monomials x1x2x3, x1^4, x2^4, x3^4, 1.
        let m = IntMatrix::from_rows(&[
            [1, 1, 1, 1, 1],
            [1, 4, 0, 0, 0],
            [1, 0, 4, 0, 0],
            [1, 0, 0, 4, 0],
        ]);
        assert_eq!(gale_vector(&m).unwrap(), vec![-4, 1, 1, 1, 1]);
    }

    #[test]
    fn kernel_basis_starts_with_ones() {
        let gamma = [-30, -1, 6, 10, 15];
        let f = kernel_basis_with_ones(&gamma).unwrap();
        assert_eq!(f.rows(), 4);
        assert!(f.row(0).iter().all(|x| x.is_one()));
        for i in 0..f.rows() {
            let dot: BigInt = f.row(i).iter().zip(gamma).map(|(a, g)| a * g).sum();
            assert!(dot.is_zero());
        }
        // Saturation: F extended by any ρ-type dual has all invariant factors 1.
        let s = snf(&f);
        assert!(s.invariant_factors().iter().all(|x| x.is_one()));
        assert!(kernel_basis_with_ones(&[-1, 2]).is_err());
    }

    #[test]
    fn rho_is_dual_basis() {
        let gamma = [-3, -1, 2, 2];
        let f = kernel_basis_with_ones(&gamma).unwrap();
        let rho = solve_rho(&f).unwrap();
        for (k, r) in rho.iter().enumerate() {
            assert_eq!(r.iter().sum::<i64>(), 0);
            let img = f.mul_vec(&big(r));
            for (l, x) in img.iter().enumerate() {
                assert_eq!(*x, BigInt::from((l == k + 1) as i64));
            }
        }
    }

    #[test]
    fn modular_nullspace_examples() {
        let nmat = IntMatrix::from_rows(&[[1, 1, 1], [0, 4, 0], [0, 0, 4]]);
        for q in [5u64, 7, 9, 13] {
            let n = q - 1;
            let e = n.gcd(&4);
            let lam = modular_nullspace(&nmat, n).unwrap();
            let mut expected: Vec<Vec<u64>> = Vec::new();
            for a in 0..e {
                for b in 0..e {
                    expected.push(vec![0, n / e * a, n / e * b]);
                }
            }
            expected.sort();
            assert_eq!(lam, expected);
        }
        assert_eq!(modular_nullspace(&nmat, 1).unwrap(), vec![vec![0, 0, 0]]);
        let id = IntMatrix::identity(3);
        assert_eq!(modular_nullspace(&id, 12).unwrap(), vec![vec![0, 0, 0]]);
        assert!(modular_nullspace(&IntMatrix::zeros(2, 2), 4).is_err());
    }

    #[test]
    fn solvers() {
        let a = IntMatrix::from_rows(&[[2, 4], [1, 3]]);
        let x = solve_integer(&a, &big(&[6, 4])).unwrap();
        assert_eq!(a.mul_vec(&x), big(&[6, 4]));
        let a = IntMatrix::from_rows(&[[2, 4]]);
        assert!(solve_integer(&a, &big(&[3])).is_none());
        let r = solve_rational(&a, &big(&[3])).unwrap();
        let lhs: BigRational = r
            .iter()
            .zip(a.row(0))
            .map(|(x, c)| x * BigRational::from_integer(c.clone()))
            .sum();
        assert_eq!(lhs, BigRational::from_integer(BigInt::from(3)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn hnf_is_valid(rows in proptest::collection::vec(proptest::collection::vec(-9i64..10, 3), 3)) {
                let a = IntMatrix::from_rows(&rows);
                let r = hnf(&a);
                prop_assert!(is_hermite(&r.h));
                prop_assert_eq!(r.u.mul(&a), r.h.clone());
                prop_assert_eq!(r.u.det().abs(), BigInt::one());
            }

            #[test]
            fn snf_is_valid(rows in proptest::collection::vec(proptest::collection::vec(-9i64..10, 4), 3)) {
                let a = IntMatrix::from_rows(&rows);
                let r = snf(&a);
                prop_assert_eq!(r.u.mul(&a).mul(&r.v), r.s.clone());
                prop_assert_eq!(r.u.det().abs(), BigInt::one());
                prop_assert_eq!(r.v.det().abs(), BigInt::one());
                let f = r.invariant_factors();
                for w in f.windows(2) {
                    prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
                }
                for i in 0..3 { for j in 0..4 {
                    if i != j { prop_assert!(r.s[(i, j)].is_zero()); }
                }}
            }

            #[test]
            fn nullspace_size_and_rho_shift(
                diag in proptest::collection::vec(1i64..7, 2),
                off in -5i64..6,
                n in 1u64..40,
            ) {
                let nmat = IntMatrix::from_rows(&[[diag[0], off], [0, diag[1]]]);
                let lam = modular_nullspace(&nmat, n).unwrap();
                let det = (diag[0] * diag[1]) as u64;
                prop_assert!(lam.len() as u64 <= det);
                if n % det == 0 { prop_assert_eq!(lam.len() as u64, det); }
                for l in &lam {
                    for k in 0..2 {
                        let s: i64 = (0..2).map(|i| l[i] as i64 * nmat[(i, k)].to_i64().unwrap()).sum();
                        prop_assert_eq!(s.rem_euclid(n as i64), 0);
                    }
                }
            }
        }
    }
}
