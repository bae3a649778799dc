//! Dense exact linear algebra over ℚ.

use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("vector of length {got} in an ambient space of dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// Row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(RatMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form (zero rows kept at the bottom) and rank.
    /// Pivots are the first nonzero entry in column order.
    pub fn rref(&self) -> (RatMatrix, usize) {
        let mut m = self.clone();
        let (rank, _) = m.rref_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Returns `(rank, pivot columns)`.
    fn rref_in_place(&mut self) -> (usize, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] *= &inv;
                }
            }
            let pivot_row: Vec<Rational> = self.row(r)[c..].to_vec();
            for i in 0..rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for (k, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let delta = &factor * pv;
                        self[(i, c + k)] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (r, pivots)
    }

    /// Canonical basis of `{v : self · v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let mut red = self.clone();
        let (rank, pivots) = red.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::with_capacity(self.cols - rank);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -red[(i, free)].clone();
            }
            vectors.push(v);
        }
        for v in &vectors {
            let image = self.mul_vec(v).expect("column count");
            assert!(
                image.iter().all(Zero::is_zero),
                "nullspace vector fails m·v = 0"
            );
        }
        Subspace::span(&vectors, self.cols).expect("lengths match by construction")
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(crate::rational::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of ℚ^ambient, held as its RREF basis. Two subspaces are
/// equal exactly when their bases are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMatrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMatrix::identity(ambient),
        }
    }

    pub fn span(vectors: &[Vec<Rational>], ambient: usize) -> Result<Self, LinalgError> {
        let m = RatMatrix::from_rows(ambient, vectors.to_vec())?;
        let (mut red, rank) = m.rref();
        red.rows = rank;
        red.data.truncate(rank * ambient);
        Ok(Subspace {
            ambient,
            basis: red,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(LinalgError::AmbientMismatch(self.ambient, other.ambient))
        }
    }

    /// The span of `self ∪ other`.
    pub fn join(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(&rows, self.ambient)
    }

    pub fn eq_subspace(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.basis == other.basis)
    }

    /// `self ⊆ other`.
    pub fn leq(&self, other: &Subspace) -> Result<bool, LinalgError> {
        Ok(self.join(other)?.dim() == other.dim())
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::LengthMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        Ok(Subspace::span(&rows, self.ambient)?.dim() == self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = RatMatrix::identity(3);
        assert_eq!(id.rref(), (id.clone(), 3));

        let dup = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(dup.rref(), (RatMatrix::from_i64(&[&[1, 1], &[0, 0]]), 1));

        // [[2,4],[1,3]]: R1/2 → [1,2]; R2−R1 → [0,1]; R1−2R2 → [1,0]
        let m = RatMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        assert_eq!(m.rref(), (RatMatrix::identity(2), 2));
    }

    #[test]
    fn rref_with_fractions() {
        let m = RatMatrix::from_i64(&[&[0, 3, 1], &[2, 1, 0], &[2, 4, 1]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 2);
        // row3 = row1 + row2; hand elimination gives
        // [1, 0, -1/6], [0, 1, 1/3], [0, 0, 0]
        assert_eq!(r.row(0), &[int(1), int(0), crate::rational::frac(-1, 6)]);
        assert_eq!(r.row(1), &[int(0), int(1), crate::rational::frac(1, 3)]);
        assert_eq!(r.row(2), &ints(&[0, 0, 0])[..]);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(RatMatrix::identity(3).nullspace(), Subspace::zero(3));

        let m = RatMatrix::from_i64(&[&[1, -1]]);
        let ns = m.nullspace();
        assert_eq!(ns, Subspace::span(&[ints(&[1, 1])], 2).unwrap());

        let empty = RatMatrix::zeros(0, 4);
        assert_eq!(empty.nullspace(), Subspace::full(4));
    }

    #[test]
    fn span_examples() {
        assert_eq!(Subspace::span(&[], 3).unwrap().dim(), 0);
        let v = ints(&[1, 2, 3]);
        let w = ints(&[2, 4, 6]);
        assert_eq!(Subspace::span(&[v, w], 3).unwrap().dim(), 1);
        assert_eq!(
            Subspace::span(&[ints(&[1, 2])], 3),
            Err(LinalgError::LengthMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn comparisons() {
        let s = Subspace::span(&[ints(&[1, 0, 1]), ints(&[0, 1, 1])], 3).unwrap();
        assert!(s.eq_subspace(&s).unwrap());
        let z = Subspace::zero(3);
        assert!(z.contains(&ints(&[0, 0, 0])).unwrap());
        assert!(!z.contains(&ints(&[1, 0, 0])).unwrap());
        assert!(s.contains(&ints(&[1, 1, 2])).unwrap());
        assert!(!s.contains(&ints(&[1, 1, 1])).unwrap());
        assert!(z.leq(&s).unwrap());
        assert!(!s.leq(&z).unwrap());
        assert!(s.leq(&Subspace::full(3)).unwrap());
        assert_eq!(
            s.leq(&Subspace::zero(2)),
            Err(LinalgError::AmbientMismatch(3, 2))
        );
        assert!(s.contains(&ints(&[1])).is_err());
    }
}
