//! Dense matrices over exact rationals: arithmetic, rank and nullspace by
//! fraction-free-enough Gaussian elimination. No floating point anywhere.

use num::{BigInt, BigRational, One, Signed, Zero};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qr(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| q(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigRational {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> QMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn scale(&self, s: &BigRational) -> QMatrix {
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a * other.at(k, c);
                    *out.at_mut(r, c) = out.at(r, c) + term;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .map(|r| v[r].clone() * self.at(r, c))
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn rank(&self) -> usize {
        let (_, pivots) = self.row_echelon();
        pivots.len()
    }

    /// Reduced row echelon form together with the pivot column list.
    fn row_echelon(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            let Some(pivot_row) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            for c in 0..m.cols {
                let tmp = m.at(row, c).clone();
                *m.at_mut(row, c) = m.at(pivot_row, c).clone();
                *m.at_mut(pivot_row, c) = tmp;
            }
            let inv = m.at(row, col).recip();
            for c in 0..m.cols {
                *m.at_mut(row, c) = m.at(row, c) * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in 0..m.cols {
                        let sub = &factor * m.at(row, c);
                        *m.at_mut(r, c) = m.at(r, c) - sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    /// Basis of the right nullspace `{v : M v = 0}`, one vector per free
    /// column, each normalized to primitive integers with positive leading
    /// nonzero entry.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (rref, pivots) = self.row_echelon();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.at(r, free).clone();
            }
            basis.push(normalize_vector(&v));
        }
        basis
    }
}

/// Scales a rational vector to coprime integers with positive first nonzero
/// coordinate.
pub fn normalize_vector(v: &[BigRational]) -> Vec<BigRational> {
    let mut denom_lcm = BigInt::one();
    for x in v {
        denom_lcm = num::integer::lcm(denom_lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = num::integer::gcd(g, n.abs());
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|n| !n.is_zero())
        .map(|n| if n.is_negative() { -1 } else { 1 })
        .unwrap_or(1);
    ints.into_iter()
        .map(|n| BigRational::from_integer(n * sign / &g))
        .collect()
}

impl std::fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_ones() {
        assert_eq!(QMatrix::identity(5).rank(), 5);
        let ones = QMatrix::from_fn(4, 4, |_, _| q(1));
        assert_eq!(ones.rank(), 1);
    }

    #[test]
    fn nullspace_of_all_ones() {
        let ones = QMatrix::from_fn(3, 3, |_, _| q(1));
        let ns = ones.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let prod: BigRational = v.iter().fold(BigRational::zero(), |a, b| a + b);
            assert!(prod.is_zero());
        }
    }

    #[test]
    fn mul_matches_hand_computation() {
        let a = QMatrix::from_int_rows(&[vec![1, 2], vec![3, 4]]);
        let b = QMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, QMatrix::from_int_rows(&[vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn normalize_clears_denominators() {
        let v = vec![qr(2, 3), qr(-4, 3), q(0)];
        assert_eq!(normalize_vector(&v), vec![q(1), q(-2), q(0)]);
        let w = vec![qr(-1, 2), qr(1, 4)];
        assert_eq!(normalize_vector(&w), vec![q(2), q(-1)]);
    }

    #[test]
    fn rational_elimination_is_exact() {
        // Hilbert-like matrix has full rank over the rationals
        let h = QMatrix::from_fn(4, 4, |r, c| qr(1, (r + c + 1) as i64));
        assert_eq!(h.rank(), 4);
    }
}
