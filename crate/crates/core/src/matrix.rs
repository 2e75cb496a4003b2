//! The band matrices presenting the quantum cohomology rings, their
//! characteristic coefficients, and the named polynomial families
//! `e^k_i`, `E^k_i`, `Ehat^n_i`, `chi_i` built from them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::{PolyError, Polynomial};

/// Which of the three presentation matrices to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// Tridiagonal matrix with diagonal `x_i`, superdiagonal `q_i`,
    /// subdiagonal `-1`.
    MFl,
    /// `MFl` with entries `(n-2, n) = -q_{n-1} q_{n-2}` and
    /// `(n-1, n) = -q_{n-1} x_{n-1}`.
    MX,
    /// `MFl` with `(n-1, n-1) = x_{n-1} + q_{n-1}`,
    /// `(n-1, n) = q_{n-1}(-x_n + q_{n-1})`, `(n, n) = x_n - q_{n-1}`.
    MXtilde,
}

/// A square matrix of polynomials (rank of the entries may exceed the matrix
/// size, e.g. a size-`k` flag matrix living in the rank-`n` ring).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn new(entries: Vec<Vec<Polynomial>>) -> Self {
        let size = entries.len();
        for row in &entries {
            assert_eq!(row.len(), size, "matrix must be square");
        }
        PolyMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row - 1][col - 1]
    }

    /// Coefficients `[C_0, ..., C_size]` of `det(I + lambda * M)` in `lambda`:
    /// `C_k` is the sum of the `k x k` principal minors, computed exactly by
    /// Laplace expansion memoized over (row-set, column-set) pairs.
    pub fn char_coefficients(&self) -> Vec<Polynomial> {
        let n = self.size;
        let ring_rank = self
            .entries
            .iter()
            .flatten()
            .map(|p| p.rank())
            .next()
            .unwrap_or(1);
        let mut memo: HashMap<(u32, u32), Polynomial> = HashMap::new();
        let mut out = vec![Polynomial::zero(ring_rank); n + 1];
        out[0] = Polynomial::one(ring_rank);
        for subset in 1u32..(1 << n) {
            let k = subset.count_ones() as usize;
            let minor = self.det_minor(subset, subset, ring_rank, &mut memo);
            out[k] = &out[k] + &minor;
        }
        out
    }

    fn det_minor(
        &self,
        rows: u32,
        cols: u32,
        ring_rank: usize,
        memo: &mut HashMap<(u32, u32), Polynomial>,
    ) -> Polynomial {
        if rows == 0 {
            return Polynomial::one(ring_rank);
        }
        if let Some(p) = memo.get(&(rows, cols)) {
            return p.clone();
        }
        let first_row = rows.trailing_zeros() as usize;
        let rest_rows = rows & !(1 << first_row);
        let mut det = Polynomial::zero(ring_rank);
        let mut sign = BigInt::one();
        for col in 0..self.size {
            if cols & (1 << col) == 0 {
                continue;
            }
            let entry = &self.entries[first_row][col];
            if !entry.is_zero() {
                let minor = self.det_minor(rest_rows, cols & !(1 << col), ring_rank, memo);
                det = &det + &(entry * &minor).scale(&sign);
            }
            sign = -sign;
        }
        memo.insert((rows, cols), det.clone());
        det
    }
}

/// Size-`k` flag matrix (diagonal `x_1..x_k`, superdiagonal `q_1..q_{k-1}`,
/// subdiagonal `-1`) with entries in the rank-`n` ring, `k <= n`.
pub fn flag_matrix(n: usize, k: usize) -> PolyMatrix {
    assert!(k >= 1 && k <= n);
    let mut entries = vec![vec![Polynomial::zero(n); k]; k];
    for i in 0..k {
        entries[i][i] = Polynomial::x(n, i + 1);
        if i + 1 < k {
            entries[i][i + 1] = Polynomial::q(n, i + 1);
            entries[i + 1][i] = Polynomial::constant(n, -1);
        }
    }
    PolyMatrix::new(entries)
}

/// Build one of the three presentation matrices of size `n` (entries in the
/// rank-`n` ring). `MFl` needs `n >= 2`; `MX` and `MXtilde` need `n >= 3`.
pub fn build_matrix(kind: MatrixKind, n: usize) -> Result<PolyMatrix, PolyError> {
    let min = match kind {
        MatrixKind::MFl => 2,
        MatrixKind::MX | MatrixKind::MXtilde => 3,
    };
    if n < min {
        return Err(PolyError::VarOutOfRange(n, min));
    }
    let mut m = flag_matrix(n, n);
    match kind {
        MatrixKind::MFl => {}
        MatrixKind::MX => {
            let qn1 = Polynomial::q(n, n - 1);
            m.entries[n - 3][n - 1] = -&(&qn1 * &Polynomial::q(n, n - 2));
            m.entries[n - 2][n - 1] = -&(&qn1 * &Polynomial::x(n, n - 1));
        }
        MatrixKind::MXtilde => {
            let qn1 = Polynomial::q(n, n - 1);
            m.entries[n - 2][n - 2] = &Polynomial::x(n, n - 1) + &qn1;
            m.entries[n - 2][n - 1] = &qn1 * &(&qn1 - &Polynomial::x(n, n));
            m.entries[n - 1][n - 1] = &Polynomial::x(n, n) - &qn1;
        }
    }
    Ok(m)
}

/// The named polynomial families of rank `n`:
/// `e(k, i)` elementary symmetric in `x_1..x_k`;
/// `big_e(k, i)` its quantization (characteristic coefficients of the size-`k`
/// flag matrix); `ehat(i)` and `chi(i)` the characteristic coefficients of
/// `MX` and `MXtilde` (present for `n >= 3`).
#[derive(Debug, Clone)]
pub struct NamedPolys {
    n: usize,
    e: Vec<Vec<Polynomial>>,
    big_e: Vec<Vec<Polynomial>>,
    ehat: Option<Vec<Polynomial>>,
    chi: Option<Vec<Polynomial>>,
}

impl NamedPolys {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut e: Vec<Vec<Polynomial>> = Vec::with_capacity(n + 1);
        // e[k][i], 0 <= i <= k, by the recursion e^k_i = e^{k-1}_i + x_k e^{k-1}_{i-1}
        e.push(vec![Polynomial::one(n)]);
        for k in 1..=n {
            let xk = Polynomial::x(n, k);
            let prev = &e[k - 1];
            let mut row = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let mut v = Polynomial::zero(n);
                if i < k {
                    v = &v + &prev[i];
                }
                if i > 0 {
                    v = &v + &(&xk * &prev[i - 1]);
                }
                if i == 0 {
                    v = Polynomial::one(n);
                }
                row.push(v);
            }
            e.push(row);
        }
        let mut big_e: Vec<Vec<Polynomial>> = Vec::with_capacity(n + 1);
        big_e.push(vec![Polynomial::one(n)]);
        for k in 1..=n {
            big_e.push(flag_matrix(n, k).char_coefficients());
        }
        let (ehat, chi) = if n >= 3 {
            (
                Some(build_matrix(MatrixKind::MX, n).unwrap().char_coefficients()),
                Some(
                    build_matrix(MatrixKind::MXtilde, n)
                        .unwrap()
                        .char_coefficients(),
                ),
            )
        } else {
            (None, None)
        };
        NamedPolys {
            n,
            e,
            big_e,
            ehat,
            chi,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `e^k_i`, elementary symmetric of degree `i` in `x_1..x_k` (`i <= k`).
    pub fn e(&self, k: usize, i: usize) -> &Polynomial {
        &self.e[k][i]
    }

    /// `E^k_i`, the quantization of `e^k_i` (uses `x_1..x_k`, `q_1..q_{k-1}`).
    pub fn big_e(&self, k: usize, i: usize) -> &Polynomial {
        &self.big_e[k][i]
    }

    /// `Ehat^n_i` (`n >= 3`).
    pub fn ehat(&self, i: usize) -> &Polynomial {
        &self.ehat.as_ref().expect("ehat needs rank >= 3")[i]
    }

    /// `chi_i` (`n >= 3`).
    pub fn chi(&self, i: usize) -> &Polynomial {
        &self.chi.as_ref().expect("chi needs rank >= 3")[i]
    }
}
