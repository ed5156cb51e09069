//! Dense matrices over the Gaussian rationals, and isometries of signed
//! Hermitian forms `⟨x, y⟩ = Σ s_k x_k conj(y_k)` acting on row vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

type Gq = GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gq>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Gq::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Gq::one());
        }
        m
    }

    /// Diagonal matrix of the given signs.
    pub fn signed_diag(signs: &[i8]) -> Self {
        let mut m = Self::zeros(signs.len(), signs.len());
        for (i, &s) in signs.iter().enumerate() {
            m.set(i, i, Gq::from(s as i64));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Gq>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Gq {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Gq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Gq> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Gq> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Gq>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                got: o.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Gq) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Gq]) -> Vec<Gq> {
        assert_eq!(v.len(), self.rows, "vector length");
        (0..self.cols)
            .map(|j| v.iter().enumerate().map(|(i, x)| x * self.get(i, j)).sum())
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().unwrap();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<Gq> {
        if self.rows != self.cols {
            return Err(Error::Dimension {
                expected: self.rows,
                got: self.cols,
            });
        }
        let mut m = self.clone();
        let mut det = Gq::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Gq::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// A particular solution `X` of `self · X = b` (free variables zero).
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "row count");
        let mut aug = Matrix::zeros(self.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..b.cols {
                aug.set(i, self.cols + j, b.get(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (k, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(k, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Basis of `{x : self · x = 0}` as columns.
    pub fn nullspace(&self) -> Vec<Vec<Gq>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Gq::zero(); self.cols];
                v[f] = Gq::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(k, f);
                }
                v
            })
            .collect()
    }

    /// `(C, R)` with `self = C·R`, `C` of full column rank and `R` of full row rank.
    pub fn rank_factorization(&self) -> (Matrix, Matrix) {
        let (r, pivots) = self.rref();
        let k = pivots.len();
        let mut c = Matrix::zeros(self.rows, k);
        for (t, &p) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                c.set(i, t, self.get(i, p).clone());
            }
        }
        let rr = Matrix::from_rows((0..k).map(|i| r.row(i)).collect());
        let rr = if k == 0 {
            Matrix::zeros(0, self.cols)
        } else {
            rr
        };
        (c, rr)
    }

    /// Residual `U·E·U* − E` for the signed form `E = diag(signs)`.
    pub fn isometry_residual(&self, signs: &[i8], eps: i8) -> Matrix {
        let e = Matrix::signed_diag(signs);
        let lhs = self.mul(&e).unwrap().mul(&self.conj_transpose()).unwrap();
        lhs.sub(&e.scale(&Gq::from(eps as i64)))
    }

    pub fn is_isometry(&self, signs: &[i8], eps: i8) -> bool {
        self.rows == signs.len()
            && self.cols == signs.len()
            && self.isometry_residual(signs, eps).is_zero()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            f.write_str(&row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// `Σ s_k x_k conj(y_k)`.
pub fn form(x: &[Gq], y: &[Gq], signs: &[i8]) -> Gq {
    let mut acc = Gq::zero();
    for ((a, b), &s) in x.iter().zip(y).zip(signs) {
        let t = a * &b.conj();
        if s < 0 {
            acc -= &t;
        } else {
            acc += &t;
        }
    }
    acc
}

/// `y ↦ y − c⟨y, x⟩x` as a matrix on row vectors.
fn quasi_reflection(x: &[Gq], c: &Gq, signs: &[i8]) -> Matrix {
    let n = x.len();
    let mut m = Matrix::identity(n);
    for i in 0..n {
        let ex = x[i].conj().scale(&(signs[i] as i64).into());
        if ex.is_zero() {
            continue;
        }
        let f = c * &ex;
        for (j, xj) in x.iter().enumerate() {
            let v = m.get(i, j) - &(&f * xj);
            m.set(i, j, v);
        }
    }
    m
}

/// An isometry `U` of the form with signs `signs` (acting on row vectors) such
/// that `sources[i]·U = targets[i]` for every `i`.
///
/// Requires the two families to have equal Gram matrices. Works for
/// indefinite forms as long as the orthogonalized sources are anisotropic.
pub fn witt_extend(sources: &[Vec<Gq>], targets: &[Vec<Gq>], signs: &[i8]) -> Result<Matrix> {
    let n = signs.len();
    if sources.len() != targets.len() {
        return Err(Error::Dimension {
            expected: sources.len(),
            got: targets.len(),
        });
    }
    if let Some(v) = sources.iter().chain(targets).find(|v| v.len() != n) {
        return Err(Error::Dimension {
            expected: n,
            got: v.len(),
        });
    }
    for i in 0..sources.len() {
        for j in 0..sources.len() {
            if form(&sources[i], &sources[j], signs) != form(&targets[i], &targets[j], signs) {
                return Err(Error::Invalid(
                    "source and target Gram matrices differ".into(),
                ));
            }
        }
    }
    // Gram-Schmidt on sources, mirrored on targets.
    let mut basis: Vec<(Vec<Gq>, Vec<Gq>, Gq)> = Vec::new();
    for (v, t) in sources.iter().zip(targets) {
        let mut v = v.clone();
        let mut t = t.clone();
        for (b, bt, q) in &basis {
            let coef = &form(&v, b, signs) / q;
            for k in 0..n {
                v[k] = &v[k] - &(&coef * &b[k]);
                t[k] = &t[k] - &(&coef * &bt[k]);
            }
        }
        let q = form(&v, &v, signs);
        if q.is_zero() {
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            return Err(Error::Invalid("isotropic vector in the source span".into()));
        }
        basis.push((v, t, q));
    }
    let mut u = Matrix::identity(n);
    for (v, t, q) in &basis {
        let cur = u.apply_row(v);
        if &cur == t {
            continue;
        }
        let h = form(&cur, t, signs);
        let step = |from: &[Gq], to: &[Gq], h: &Gq| -> Matrix {
            let x: Vec<Gq> = from.iter().zip(to).map(|(a, b)| a - b).collect();
            let c = (q - h).inv().unwrap();
            quasi_reflection(&x, &c, signs)
        };
        if &h != q {
            u = u.mul(&step(&cur, t, &h))?;
        } else {
            let neg: Vec<Gq> = t.iter().map(|x| -x).collect();
            let h1 = form(&cur, &neg, signs);
            u = u.mul(&step(&cur, &neg, &h1))?;
            let h2 = form(&neg, t, signs);
            u = u.mul(&step(&neg, t, &h2))?;
        }
    }
    for (v, t) in sources.iter().zip(targets) {
        if &u.apply_row(v) != t {
            return Err(Error::Invalid(
                "targets are not an isometric image of the sources".into(),
            ));
        }
    }
    debug_assert!(u.is_isometry(signs, 1));
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> Gq {
        Gq::from_ints(a, b)
    }

    #[test]
    fn rank_solve_nullspace() {
        let a = Matrix::from_rows(vec![vec![g(1, 0), g(2, 0)], vec![g(2, 0), g(4, 0)]]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let b = Matrix::from_rows(vec![vec![g(3, 0)], vec![g(6, 0)]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
        let bad = Matrix::from_rows(vec![vec![g(3, 0)], vec![g(7, 0)]]);
        assert!(a.solve(&bad).is_none());
        let (c, r) = a.rank_factorization();
        assert_eq!(c.mul(&r).unwrap(), a);
    }

    #[test]
    fn determinant_of_rotation() {
        let m = Matrix::from_rows(vec![vec![g(0, 1), g(0, 0)], vec![g(0, 0), g(1, 0)]]);
        assert_eq!(m.determinant().unwrap(), Gq::i());
    }

    #[test]
    fn witt_maps_basis_vectors() {
        let signs = [-1, 1, 1];
        let v = vec![g(2, 0), g(1, 0), g(1, 1)];
        // <v,v> = -4 + 1 + 2 = -1
        let t = vec![g(1, 0), g(0, 0), g(0, 0)];
        let u = witt_extend(&[v.clone()], &[t.clone()], &signs).unwrap();
        assert_eq!(u.apply_row(&v), t);
        assert!(u.is_isometry(&signs, 1));
        // h == q case
        let u2 = witt_extend(&[t.clone()], &[t.clone()], &signs).unwrap();
        assert_eq!(u2, Matrix::identity(3));
        let s2 = vec![g(0, 0), g(0, 1), g(0, 0)];
        let t2 = vec![g(0, 0), g(0, 0), g(1, 0)];
        let u3 = witt_extend(&[t.clone(), s2.clone()], &[t.clone(), t2.clone()], &signs).unwrap();
        assert_eq!(u3.apply_row(&s2), t2);
        assert_eq!(u3.apply_row(&t), t);
    }

    #[test]
    fn witt_rejects_mismatched_norms() {
        let signs = [1, 1];
        let v = vec![g(1, 0), g(1, 0)];
        let t = vec![g(1, 0), g(0, 0)];
        assert!(witt_extend(&[v], &[t], &signs).is_err());
    }
}
