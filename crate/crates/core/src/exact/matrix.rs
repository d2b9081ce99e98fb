//! Dense rational matrices with an exact, fraction-free null space routine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        ExactMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// An empty matrix with a fixed column count, filled with [`push_row`](Self::push_row).
    pub fn with_cols(cols: usize) -> Self {
        ExactMatrix {
            rows: 0,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols, "row length");
        self.entries.extend(row);
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Each row scaled to primitive integers (content 1), zero rows dropped.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .filter_map(|r| {
                let row = self.row(r);
                let lcm = Rational::denominator_lcm(row);
                let ints: Vec<BigInt> =
                    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
                primitive(ints)
            })
            .collect()
    }

    /// Integer reduced echelon form by fraction-free Gauss–Jordan elimination.
    ///
    /// Rows are combined as `p·row - a·pivot_row` and immediately divided by their
    /// content, so intermediate entries stay small. Returns `(rows, pivot columns)`.
    fn echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut rows = self.integer_rows();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            // smallest nonzero pivot keeps multipliers small
            let Some(best) = (rank..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
            else {
                continue;
            };
            rows.swap(rank, best);
            let pivot_row = rows[rank].clone();
            let p = &pivot_row[col];
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || row[col].is_zero() {
                    continue;
                }
                let g = p.gcd(&row[col]);
                let mp = p / &g;
                let ma = &row[col] / &g;
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &mp - &ma * y;
                }
                // a row reduced to zero is left empty and dropped below
                if let Some(prim) = primitive(std::mem::take(row)) {
                    *row = prim;
                }
            }
            rows.retain(|row| !row.is_empty());
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Exact basis of the right null space.
    ///
    /// One vector per free column (in increasing column order), with that free
    /// coordinate equal to 1 and all other free coordinates 0.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rows, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in rows.iter().zip(&pivots) {
                    if !row[f].is_zero() {
                        v[pc] = -Rational::from_bigints(row[f].clone(), row[pc].clone());
                    }
                }
                v
            })
            .collect()
    }
}

/// Divides by the gcd of the entries; `None` for a zero row.
fn primitive(mut row: Vec<BigInt>) -> Option<Vec<BigInt>> {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return None;
    }
    if !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    Some(row)
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(vectors.to_vec()).rank()
}

/// Scales a vector to coprime integers with a positive first nonzero entry.
pub fn normalize_integral(v: &[Rational]) -> Vec<Rational> {
    let lcm = Rational::denominator_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let Some(mut prim) = primitive(ints) else {
        return v.to_vec();
    };
    if prim
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in prim.iter_mut() {
            *x = -&*x;
        }
    }
    prim.into_iter().map(Rational::from).collect()
}
