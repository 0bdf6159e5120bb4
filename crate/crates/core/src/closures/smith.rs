//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
            for (j, x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            *self.at(dst, j) -= v;
        }
    }

    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            *self.at(i, dst) -= v;
        }
    }
}

/// Nonzero diagonal of a Smith normal form, `d₁ | d₂ | … | d_r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementaryDivisors {
    pub divisors: Vec<BigInt>,
}

impl ElementaryDivisors {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn last(&self) -> Option<&BigInt> {
        self.divisors.last()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> ElementaryDivisors {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let mut divisors = Vec::new();
    for t in 0..r.min(c) {
        loop {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            let pivot = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !a.get(i, j).is_zero())
                .min_by(|&(i, j), &(k, l)| a.get(i, j).abs().cmp(&a.get(k, l).abs()));
            let Some((pi, pj)) = pivot else {
                return ElementaryDivisors { divisors };
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = a.get(i, t).div_floor(&p);
                a.sub_row(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..c {
                let q = a.get(t, j).div_floor(&p);
                a.sub_col(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the rest of the block by the pivot.
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..c {
                        let v = a.get(i, j).clone();
                        *a.at(t, j) += v;
                    }
                }
                None => {
                    divisors.push(p.abs());
                    break;
                }
            }
        }
    }
    ElementaryDivisors { divisors }
}
