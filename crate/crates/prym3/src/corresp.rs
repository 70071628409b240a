//! The fiberwise correspondence matrices on the n x n grid of fiber points,
//! their exact quadratic identities, the Kanev-exponent solver and integer
//! eigenstructure. All arithmetic is exact.

use num::{BigRational, Zero};
use thiserror::Error;

use crate::group::GroupAction;
use crate::ratmat::{q, QMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorrespError {
    #[error("grid parameter must be at least 2, got {0}")]
    GridTooSmall(usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry at {0} is nonzero")]
    NonzeroDiagonal(usize),
    #[error("negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("row sums are not constant: row 0 has {0}, row {1} has {2}")]
    RowSumNotConstant(i64, usize, i64),
    #[error("entry matrix is {0}x{1}, expected {2}x{2}")]
    WrongShape(usize, usize, usize),
    #[error("action domain has {0} points but the grid has {1}")]
    DomainMismatch(usize, usize),
    #[error("trial integer roots only account for {found} of {dim} dimensions; spectrum is not integral")]
    NonIntegerSpectrum { found: usize, dim: usize },
}

/// Square symmetric nonnegative-integer matrix indexed by the n^2 grid labels
/// in row-major order, with zero diagonal and constant row sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceMatrix {
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl CorrespondenceMatrix {
    pub fn new(n: usize, entries: Vec<Vec<i64>>) -> Result<Self, CorrespError> {
        let dim = n * n;
        if entries.len() != dim || entries.iter().any(|r| r.len() != dim) {
            return Err(CorrespError::WrongShape(
                entries.len(),
                entries.first().map_or(0, |r| r.len()),
                dim,
            ));
        }
        for (i, row) in entries.iter().enumerate() {
            if row[i] != 0 {
                return Err(CorrespError::NonzeroDiagonal(i));
            }
            for (j, &v) in row.iter().enumerate() {
                if v < 0 {
                    return Err(CorrespError::NegativeEntry(i, j));
                }
                if entries[j][i] != v {
                    return Err(CorrespError::NotSymmetric(i, j));
                }
            }
        }
        let sum0: i64 = entries[0].iter().sum();
        for (i, row) in entries.iter().enumerate() {
            let s: i64 = row.iter().sum();
            if s != sum0 {
                return Err(CorrespError::RowSumNotConstant(sum0, i, s));
            }
        }
        Ok(CorrespondenceMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn row_sum(&self) -> i64 {
        self.entries[0].iter().sum()
    }

    /// Row-major grid label index of the pair `(i, j)`, 0-based.
    pub fn label(n: usize, i: usize, j: usize) -> usize {
        n * i + j
    }

    pub fn pair_of(n: usize, label: usize) -> (usize, usize) {
        (label / n, label % n)
    }
}

/// The correspondence pairing grid points that agree in exactly one
/// coordinate; bidegree `2n - 2`.
pub fn build_d(n: usize) -> Result<CorrespondenceMatrix, CorrespError> {
    if n < 2 {
        return Err(CorrespError::GridTooSmall(n));
    }
    let dim = n * n;
    let mut entries = vec![vec![0i64; dim]; dim];
    for a in 0..dim {
        let (i, j) = CorrespondenceMatrix::pair_of(n, a);
        for b in 0..dim {
            let (k, l) = CorrespondenceMatrix::pair_of(n, b);
            if (i == k) != (j == l) {
                entries[a][b] = 1;
            }
        }
    }
    CorrespondenceMatrix::new(n, entries)
}

/// The complementary correspondence pairing grid points that differ in both
/// coordinates; bidegree `(n - 1)^2`.
pub fn build_dprime(n: usize) -> Result<CorrespondenceMatrix, CorrespError> {
    if n < 2 {
        return Err(CorrespError::GridTooSmall(n));
    }
    let dim = n * n;
    let mut entries = vec![vec![0i64; dim]; dim];
    for a in 0..dim {
        let (i, j) = CorrespondenceMatrix::pair_of(n, a);
        for b in 0..dim {
            let (k, l) = CorrespondenceMatrix::pair_of(n, b);
            if i != k && j != l {
                entries[a][b] = 1;
            }
        }
    }
    CorrespondenceMatrix::new(n, entries)
}

pub fn int_identity(dim: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn int_all_ones(dim: usize) -> Vec<Vec<i64>> {
    vec![vec![1i64; dim]; dim]
}

pub fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; b[0].len()]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..b[0].len() {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn int_is_zero(m: &[Vec<i64>]) -> bool {
    m.iter().all(|row| row.iter().all(|&v| v == 0))
}

fn int_linear_combination(terms: &[(i64, &[Vec<i64>])]) -> Vec<Vec<i64>> {
    let dim = terms[0].1.len();
    let mut out = vec![vec![0i64; dim]; dim];
    for &(c, m) in terms {
        for i in 0..dim {
            for j in 0..dim {
                out[i][j] += c * m[i][j];
            }
        }
    }
    out
}

/// Residual of the quadratic identity for the agree-in-one-coordinate
/// correspondence at grid size n:
/// `D^2 - (n-4) D - (2n-4) I - 2 J`; the identity holds iff this is zero.
pub fn quadratic_d_residual(n: usize) -> Result<Vec<Vec<i64>>, CorrespError> {
    let d = build_d(n)?;
    let dim = d.dim();
    let d2 = int_mul(d.entries(), d.entries());
    let nn = n as i64;
    Ok(int_linear_combination(&[
        (1, &d2),
        (-(nn - 4), d.entries()),
        (-(2 * nn - 4), &int_identity(dim)),
        (-2, &int_all_ones(dim)),
    ]))
}

/// Residual of the fiber-level quadratic identity for the complementary
/// correspondence: `D'^2 + (n-2) D' - (n-1) I - (n-1)(n-2) J`.
///
/// The all-ones term is the sharper fiber-level form; it dies after the
/// pullback of a point class is quotiented away.
pub fn quadratic_dprime_residual(n: usize) -> Result<Vec<Vec<i64>>, CorrespError> {
    let dp = build_dprime(n)?;
    let dim = dp.dim();
    let dp2 = int_mul(dp.entries(), dp.entries());
    let nn = n as i64;
    Ok(int_linear_combination(&[
        (1, &dp2),
        (nn - 2, dp.entries()),
        (-(nn - 1), &int_identity(dim)),
        (-((nn - 1) * (nn - 2)), &int_all_ones(dim)),
    ]))
}

/// Solves `M^2 + (e-2) M - (e-1) I = c J` exactly over the rationals.
///
/// Returns the unique `(e, c)` when the full entrywise system is consistent
/// and determines both unknowns, `None` otherwise. For the
/// agree-in-one-coordinate correspondence this succeeds exactly at n = 3,
/// which is the Kanev criterion for a Prym-Tyurin variety of exponent e.
pub fn solve_kanev(m: &CorrespondenceMatrix) -> Option<(BigRational, BigRational)> {
    let dim = m.dim();
    let m2 = int_mul(m.entries(), m.entries());
    // Each entry gives a linear equation  e * (M_ab - delta_ab) - c = rhs_ab
    // with rhs = -M2_ab + 2 M_ab - delta_ab.
    let coeff = |a: usize, b: usize| -> i64 { m.entries()[a][b] - i64::from(a == b) };
    let rhs = |a: usize, b: usize| -> i64 {
        -m2[a][b] + 2 * m.entries()[a][b] - i64::from(a == b)
    };
    // Eliminate c using a pair of equations with distinct e-coefficients.
    let mut base: Option<(i64, i64)> = None;
    let mut solved_e: Option<BigRational> = None;
    'outer: for a in 0..dim {
        for b in 0..dim {
            match base {
                None => base = Some((coeff(a, b), rhs(a, b))),
                Some((c0, r0)) => {
                    let (c1, r1) = (coeff(a, b), rhs(a, b));
                    if c1 != c0 {
                        solved_e = Some(q(r1 - r0) / q(c1 - c0));
                        break 'outer;
                    }
                }
            }
        }
    }
    let e = solved_e?;
    let (c0, r0) = base?;
    let c = q(c0) * &e - q(r0);
    for a in 0..dim {
        for b in 0..dim {
            if q(coeff(a, b)) * &e - &c != q(rhs(a, b)) {
                return None;
            }
        }
    }
    Some((e, c))
}

/// Eigenvalues with multiplicities for a matrix with integer spectrum.
///
/// Tries every integer in the Gershgorin row-sum bound and measures each
/// multiplicity as the exact nullity of `M - lambda I`; errors unless the
/// multiplicities account for the full dimension.
pub fn integer_eigen_structure(m: &[Vec<i64>]) -> Result<Vec<(i64, usize)>, CorrespError> {
    let dim = m.len();
    let bound: i64 = m
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<i64>())
        .max()
        .unwrap_or(0);
    let mut out = Vec::new();
    let mut found = 0usize;
    for lambda in -bound..=bound {
        let shifted = QMatrix::from_fn(dim, dim, |r, c| {
            q(m[r][c]) - if r == c { q(lambda) } else { BigRational::zero() }
        });
        let nullity = dim - shifted.rank();
        if nullity > 0 {
            out.push((lambda, nullity));
            found += nullity;
        }
    }
    if found != dim {
        return Err(CorrespError::NonIntegerSpectrum { found, dim });
    }
    Ok(out)
}

/// Checks that the matrix commutes with every generator of the action on the
/// grid: `P_g M = M P_g` i.e. `M[g(a)][g(b)] = M[a][b]`.
pub fn equivariance_check(
    m: &CorrespondenceMatrix,
    act: &GroupAction,
) -> Result<bool, CorrespError> {
    let dim = m.dim();
    if act.domain_size() != dim {
        return Err(CorrespError::DomainMismatch(act.domain_size(), dim));
    }
    for g in act.group().generators() {
        let p = act
            .perm_of_element(g)
            .expect("generator is a group element");
        for a in 0..dim {
            for b in 0..dim {
                if m.entries()[p.apply(a)][p.apply(b)] != m.entries()[a][b] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_row_of_first_label_at_n3() {
        let d = build_d(3).unwrap();
        // P11 is adjacent exactly to P12, P13, P21, P31
        let row = &d.entries()[0];
        let expected_ones = [1usize, 2, 3, 6];
        for b in 0..9 {
            assert_eq!(row[b], i64::from(expected_ones.contains(&b)), "col {b}");
        }
    }

    #[test]
    fn d_bidegree_and_zero_diagonal() {
        assert_eq!(build_d(2).unwrap().row_sum(), 2);
        let d3 = build_d(3).unwrap();
        assert_eq!(d3.row_sum(), 4);
        for i in 0..9 {
            assert_eq!(d3.entries()[i][i], 0);
        }
    }

    #[test]
    fn dprime_row_sum_and_n2_shape() {
        assert_eq!(build_dprime(3).unwrap().row_sum(), 4);
        let dp2 = build_dprime(2).unwrap();
        // at n = 2 the complementary correspondence swaps P11<->P22, P12<->P21
        assert_eq!(
            dp2.entries(),
            &[
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0],
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0]
            ]
        );
    }

    #[test]
    fn d_plus_dprime_plus_identity_is_all_ones() {
        // the three index conditions partition all pairs of grid points
        for n in 2..=6 {
            let d = build_d(n).unwrap();
            let dp = build_dprime(n).unwrap();
            let dim = d.dim();
            let sum = int_linear_combination(&[
                (1, d.entries()),
                (1, dp.entries()),
                (1, &int_identity(dim)),
            ]);
            assert_eq!(sum, int_all_ones(dim));
        }
    }

    #[test]
    fn quadratic_identities_hold_exactly() {
        for n in 2..=6 {
            assert!(int_is_zero(&quadratic_d_residual(n).unwrap()), "D at n={n}");
            assert!(
                int_is_zero(&quadratic_dprime_residual(n).unwrap()),
                "D' at n={n}"
            );
        }
    }

    #[test]
    fn kanev_solution_exists_only_at_n3() {
        let (e, c) = solve_kanev(&build_d(3).unwrap()).unwrap();
        assert_eq!(e, q(3));
        assert_eq!(c, q(2));
        for n in [2usize, 4, 5, 6] {
            assert!(solve_kanev(&build_d(n).unwrap()).is_none(), "n={n}");
        }
    }

    #[test]
    fn eigen_structure_of_d3() {
        let d = build_d(3).unwrap();
        let eig = integer_eigen_structure(d.entries()).unwrap();
        assert_eq!(eig, vec![(-2, 4), (1, 4), (4, 1)]);
        // independent arithmetic cross-checks: trace and trace of the square
        let trace: i64 = eig.iter().map(|&(l, m)| l * m as i64).sum();
        assert_eq!(trace, 0);
        let trace_sq: i64 = eig.iter().map(|&(l, m)| l * l * m as i64).sum();
        assert_eq!(trace_sq, 9 * 4);
    }

    #[test]
    fn eigen_structure_of_all_ones() {
        let j = int_all_ones(9);
        assert_eq!(integer_eigen_structure(&j).unwrap(), vec![(0, 8), (9, 1)]);
    }

    #[test]
    fn eigen_structure_of_dprime_matches_complement_relation() {
        // D' = J - I - D sends eigenvalues 4, 1, -2 to 4, -2, 1
        let dp = build_dprime(3).unwrap();
        assert_eq!(
            integer_eigen_structure(dp.entries()).unwrap(),
            vec![(-2, 4), (1, 4), (4, 1)]
        );
    }

    #[test]
    fn non_integer_spectrum_is_reported() {
        // rotation by 90 degrees has eigenvalues +-i
        let m = vec![vec![0, -1], vec![1, 0]];
        assert!(matches!(
            integer_eigen_structure(&m),
            Err(CorrespError::NonIntegerSpectrum { found: 0, dim: 2 })
        ));
    }

    #[test]
    fn lambda_one_and_minus_two_fill_the_ones_kernel() {
        let eig = integer_eigen_structure(build_d(3).unwrap().entries()).unwrap();
        let m1 = eig.iter().find(|&&(l, _)| l == 1).unwrap().1;
        let m2 = eig.iter().find(|&&(l, _)| l == -2).unwrap().1;
        assert_eq!(m1 + m2, 8);
    }

    #[test]
    fn constructor_rejects_broken_invariants() {
        assert!(matches!(
            CorrespondenceMatrix::new(2, vec![vec![1, 0, 0, 0]; 4]),
            Err(CorrespError::NonzeroDiagonal(0))
        ));
        let asym = vec![
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 1],
            vec![1, 0, 0, 1],
            vec![1, 1, 0, 0],
        ];
        assert!(CorrespondenceMatrix::new(2, asym).is_err());
    }
}
