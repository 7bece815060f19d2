use std::fmt;

use crate::polyforms::{Form, Poly};

/// Dense row-major matrix. Rows index the target basis, columns the source
/// basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        self.data[r * self.cols + c] = v;
    }

    /// Entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let cols = self.cols.max(1);
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / cols, k % cols, v))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> Vec<&T> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for r in 0..self.rows {
            l.entry(&&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        l.finish()
    }
}

pub(crate) fn poly_zero(nvars: usize, rows: usize, cols: usize) -> Matrix<Poly> {
    Matrix::from_fn(rows, cols, |_, _| Poly::zero(nvars))
}

pub(crate) fn form_zero(nvars: usize, k: usize, rows: usize, cols: usize) -> Matrix<Form> {
    Matrix::from_fn(rows, cols, |_, _| Form::zero(nvars, k))
}

pub(crate) fn poly_mul(a: &Matrix<Poly>, b: &Matrix<Poly>, nvars: usize) -> Matrix<Poly> {
    assert_eq!(a.cols, b.rows, "matrix shapes");
    Matrix::from_fn(a.rows, b.cols, |i, k| {
        let mut acc = Poly::zero(nvars);
        for j in 0..a.cols {
            let (x, y) = (a.get(i, j), b.get(j, k));
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &(x * y);
            }
        }
        acc
    })
}

/// `a · b` with polynomial `a`.
pub(crate) fn poly_form_mul(a: &Matrix<Poly>, b: &Matrix<Form>, nvars: usize, k: usize) -> Matrix<Form> {
    assert_eq!(a.cols, b.rows, "matrix shapes");
    Matrix::from_fn(a.rows, b.cols, |i, l| {
        let mut acc = Form::zero(nvars, k);
        for j in 0..a.cols {
            let (x, y) = (a.get(i, j), b.get(j, l));
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &y.mul_poly(x);
            }
        }
        acc
    })
}

/// `a · b` with polynomial `b`.
pub(crate) fn form_poly_mul(a: &Matrix<Form>, b: &Matrix<Poly>, nvars: usize, k: usize) -> Matrix<Form> {
    assert_eq!(a.cols, b.rows, "matrix shapes");
    Matrix::from_fn(a.rows, b.cols, |i, l| {
        let mut acc = Form::zero(nvars, k);
        for j in 0..a.cols {
            let (x, y) = (a.get(i, j), b.get(j, l));
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &x.mul_poly(y);
            }
        }
        acc
    })
}

/// `a · b` with entries `a_ij ∧ b_jl`.
pub(crate) fn form_form_mul(a: &Matrix<Form>, b: &Matrix<Form>, nvars: usize, k: usize) -> Matrix<Form> {
    assert_eq!(a.cols, b.rows, "matrix shapes");
    Matrix::from_fn(a.rows, b.cols, |i, l| {
        let mut acc = Form::zero(nvars, k);
        for j in 0..a.cols {
            let (x, y) = (a.get(i, j), b.get(j, l));
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &x.wedge(y).expect("same arity");
            }
        }
        acc
    })
}
