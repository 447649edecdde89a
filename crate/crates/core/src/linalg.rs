//! Dense exact integer matrices and the few algorithms the invariants need.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Square matrix over arbitrary-precision integers with labelled basis.
///
/// Row/column `i` corresponds to `basis[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    basis: Vec<String>,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(basis: Vec<String>) -> Self {
        let n = basis.len();
        IntMatrix {
            basis,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(basis: Vec<String>) -> Self {
        let mut m = IntMatrix::zeros(basis);
        for i in 0..m.dim() {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// # Panics
    /// If `rows` is not `basis.len()` square.
    pub fn from_rows<T: Into<BigInt> + Clone>(basis: Vec<String>, rows: &[Vec<T>]) -> Self {
        let n = basis.len();
        assert_eq!(rows.len(), n, "row count must match basis");
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "row length must match basis");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix { basis, entries }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        let n = self.dim();
        self.entries[i * n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        let n = self.dim();
        &self.entries[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim()).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as `i64`, or `None` if any entry overflows.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.dim())
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.dim();
        let mut t = IntMatrix::zeros(self.basis.clone());
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            basis: self.basis.clone(),
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i..n).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.rows())
    }

    /// Signature of a symmetric matrix.
    ///
    /// # Panics
    /// If the matrix is not symmetric.
    pub fn signature(&self) -> i64 {
        assert!(self.is_symmetric(), "signature needs a symmetric matrix");
        symmetric_signature(&self.rows())
    }

    /// `D A D` for a diagonal `D` of signs.
    pub fn conjugate_by_signs(&self, signs: &[i8]) -> IntMatrix {
        let n = self.dim();
        assert_eq!(signs.len(), n);
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                if signs[i] * signs[j] < 0 {
                    let v = -out.get(i, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        let n = self.dim();
        assert_eq!(n, rhs.dim(), "dimension mismatch");
        let mut out = IntMatrix::zeros(self.basis.clone());
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        IntMatrix {
            basis: self.basis.clone(),
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        IntMatrix {
            basis: self.basis.clone(),
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for IntMatrix {
    /// Header comment with the basis, then one space-separated row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# basis: {}", self.basis.join(" "))?;
        for i in 0..self.dim() {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Fraction-free Gaussian elimination. Every intermediate division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Signature (positive minus negative inertia) of a symmetric integer
/// matrix by rational symmetric elimination.
///
/// A zero diagonal with a nonzero off-diagonal entry `a_ij` is fixed by the
/// congruence `e_i -> e_i + e_j`, which puts `2 a_ij` on the diagonal.
pub fn symmetric_signature(rows: &[Vec<BigInt>]) -> i64 {
    let n = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut signature = 0i64;
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let found = active.iter().enumerate().find_map(|(p, &i)| {
                    active
                        .iter()
                        .find(|&&j| j != i && !a[i][j].is_zero())
                        .map(|&j| (p, i, j))
                });
                let Some((p, i, j)) = found else { break };
                // row_i += row_j, then col_i += col_j
                let row_j = a[j].clone();
                for (x, v) in a[i].iter_mut().zip(row_j) {
                    *x += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[i] += v;
                }
                p
            }
        };
        let i = active.remove(pivot);
        let d = a[i][i].clone();
        signature += if d.is_positive() { 1 } else { -1 };
        for &r in &active {
            if a[r][i].is_zero() {
                continue;
            }
            let factor = &a[r][i] / &d;
            for &c in &active {
                let v = &factor * &a[i][c];
                a[r][c] -= v;
            }
        }
    }
    signature
}

/// Integer polynomial `c_0 + c_1 t + ... + c_d t^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn negate(&self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// The unique polynomial of degree `< values.len()` through
    /// `(0, values[0]), (1, values[1]), ...`.
    ///
    /// # Panics
    /// If the interpolant does not have integer coefficients.
    pub fn interpolate(values: &[BigInt]) -> IntPolynomial {
        // Newton divided differences on nodes 0..k
        let k = values.len();
        let mut table: Vec<BigRational> = values.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        let mut newton = Vec::with_capacity(k);
        for level in 0..k {
            newton.push(table[0].clone());
            let denom = BigRational::from_integer(BigInt::from(level + 1));
            table = table.windows(2).map(|w| (&w[1] - &w[0]) / &denom).collect();
        }
        // expand sum c_l * t(t-1)...(t-l+1)
        let mut coeffs = vec![BigRational::zero(); k.max(1)];
        let mut basis = vec![BigRational::one()];
        for (l, c) in newton.iter().enumerate() {
            for (i, b) in basis.iter().enumerate() {
                coeffs[i] += c * b;
            }
            // basis *= (t - l)
            let shift = BigRational::from_integer(BigInt::from(l));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * &shift;
            }
            basis = next;
        }
        IntPolynomial::new(
            coeffs
                .into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "interpolant is not integral");
                    c.to_integer()
                })
                .collect(),
        )
    }
}

impl fmt::Display for IntPolynomial {
    /// Coefficients from degree 0 upward, space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}
