//! Naive dense reference implementation, independent of the sparse
//! pipeline: boundaries are assembled straight from the structure
//! constants into dense BigRational matrices and ranks come from textbook
//! Gaussian elimination. `Mode::Super` applies the Koszul sign on the wrap
//! face; `Mode::Ungraded` is the classical sign-free differential on the
//! same structure constants.

use num::rational::BigRational;
use num::Zero;
use superhh_core::exactlin::Scalar;
use superhh_core::superalg::SuperAlgebra;

#[derive(Clone, Copy)]
pub enum Mode {
    Super,
    Ungraded,
}

pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl DenseMatrix {
    pub fn zero(rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: BigRational) {
        let cell = &mut self.data[r * self.cols + c];
        *cell = &*cell + v;
    }

    pub fn rank(mut self) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(found) =
                (pivot_row..self.rows).find(|&r| !self.data[r * self.cols + col].is_zero())
            else {
                continue;
            };
            for c in 0..self.cols {
                self.data
                    .swap(pivot_row * self.cols + c, found * self.cols + c);
            }
            let inv = self.data[pivot_row * self.cols + col].recip();
            for r in (pivot_row + 1)..self.rows {
                let factor = &self.data[r * self.cols + col] * &inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let delta = &factor * &self.data[pivot_row * self.cols + c];
                    let cell = &mut self.data[r * self.cols + c];
                    *cell = &*cell - delta;
                }
            }
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        pivot_row
    }
}

fn rational(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rational(r) => r.clone(),
        Scalar::Prime { .. } => panic!("the dense reference runs over the rationals"),
    }
}

fn product_table(a: &SuperAlgebra) -> Vec<Vec<Vec<(usize, BigRational)>>> {
    let d = a.dim();
    let mut table = vec![vec![Vec::new(); d]; d];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a
                .product_terms(i, j)
                .iter()
                .map(|(k, c)| (*k, rational(c)))
                .collect();
        }
    }
    table
}

/// The boundary `d_m : A^(m+1) -> A^m` of the complex with coefficients in
/// the algebra itself (slot 0 is the coefficient), `m >= 1`. Indices are
/// row-major with slot 0 slowest.
pub fn boundary(a: &SuperAlgebra, mode: Mode, m: usize) -> DenseMatrix {
    let d = a.dim();
    let table = product_table(a);
    let cols = d.pow((m + 1) as u32);
    let mut out = DenseMatrix::zero(d.pow(m as u32), cols);

    let mut idx = vec![0usize; m + 1];
    for col in 0..cols {
        let mut rest = col;
        for slot in (0..=m).rev() {
            idx[slot] = rest % d;
            rest /= d;
        }
        for face in 0..=m {
            let (terms, prefix, suffix): (&[(usize, BigRational)], &[usize], &[usize]) =
                if face == m {
                    (&table[idx[m]][idx[0]], &[], &idx[1..m])
                } else {
                    (
                        &table[idx[face]][idx[face + 1]],
                        &idx[..face],
                        &idx[face + 2..],
                    )
                };
            let mut sign = if face % 2 == 0 { 1i64 } else { -1 };
            if face == m {
                if let Mode::Super = mode {
                    let crossed = idx[..m].iter().filter(|&&i| a.parity(i).is_odd()).count();
                    if a.parity(idx[m]).is_odd() && crossed % 2 == 1 {
                        sign = -sign;
                    }
                }
            }
            for (k, coeff) in terms {
                let mut row = 0usize;
                for &i in prefix {
                    row = row * d + i;
                }
                row = row * d + k;
                for &i in suffix {
                    row = row * d + i;
                }
                out.add_at(row, col, coeff * BigRational::from_integer(sign.into()));
            }
        }
    }
    out
}

/// Homology dimensions on the reliable window `0 .. max_degree`, with the
/// algebra itself as coefficients.
pub fn homology_dims(a: &SuperAlgebra, mode: Mode, max_degree: usize) -> Vec<usize> {
    let d = a.dim();
    let ranks: Vec<usize> = (1..=max_degree)
        .map(|m| boundary(a, mode, m).rank())
        .collect();
    (0..max_degree)
        .map(|m| {
            let kernel = d.pow((m + 1) as u32) - if m == 0 { 0 } else { ranks[m - 1] };
            kernel - ranks[m]
        })
        .collect()
}
