//! Exact rational linear algebra.
//!
//! Everything downstream (hom spaces, homotopy tests, invariant projections)
//! reduces to row reduction over `BigRational`, so this module stays small and
//! dense-matrix only.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Sparse vector keyed by an ordered index; zero entries are never stored.
pub type Sparse<K> = BTreeMap<K, Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// `acc += c * v`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone>(acc: &mut Sparse<K>, c: &Rat, v: &Sparse<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        add_entry(acc, k.clone(), c * x);
    }
}

pub fn add_entry<K: Ord>(acc: &mut Sparse<K>, k: K, x: Rat) {
    if x.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(k) {
        Entry::Vacant(e) => {
            e.insert(x);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &x;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

pub fn scaled<K: Ord + Clone>(c: &Rat, v: &Sparse<K>) -> Sparse<K> {
    let mut out = Sparse::new();
    axpy(&mut out, c, v);
    out
}

pub fn sub<K: Ord + Clone>(a: &Sparse<K>, b: &Sparse<K>) -> Sparse<K> {
    let mut out = a.clone();
    axpy(&mut out, &rat(-1), b);
    out
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Mat {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Mat { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(), cols)
    }

    /// Columns given as vectors of equal length `rows`.
    pub fn from_cols(cols: &[Vec<Rat>], rows: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length mismatch");
            for (r, x) in v.iter().enumerate() {
                m.set(r, c, x.clone());
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

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rat) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut s = Rat::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

/// Reduced row echelon form with its strictly increasing pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols {
                a.data.swap(p * a.cols + c, row * a.cols + c);
            }
        }
        let inv = a.get(row, col).recip();
        for c in col..a.cols {
            let v = a.get(row, c) * &inv;
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let f = a.get(r, col).clone();
            if f.is_zero() {
                continue;
            }
            for c in col..a.cols {
                let x = a.get(row, c);
                if !x.is_zero() {
                    let v = a.get(r, c) - &f * x;
                    a.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Basis of the right null space, one vector per free column.
pub fn kernel_basis(m: &Mat) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); m.cols];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, free).clone();
        }
        out.push(v);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Rat>,
    pub kernel: Vec<Vec<Rat>>,
}

/// Solves `a x = b`; `None` when inconsistent. Free variables are set to zero
/// in the particular solution.
pub fn solve_linear(a: &Mat, b: &[Rat]) -> Option<Solution> {
    assert_eq!(a.rows, b.len(), "solve_linear: rhs length must equal row count");
    let mut aug = Mat::zeros(a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols, b[r].clone());
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); a.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red.get(i, a.cols).clone();
    }
    Some(Solution { particular: x, kernel: kernel_basis(a) })
}

/// A subspace of `k^n` held as the nonzero rows of a reduced echelon matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Subspace {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient, "subspace ambient mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }
}

/// Coordinates with respect to a fixed independent family of sparse vectors.
///
/// Picks `d` key positions on which the family is invertible; `coords` solves
/// there and then checks the full vector, so membership is decided exactly.
#[derive(Clone, Debug)]
pub struct Coordinatizer<K: Ord + Clone + std::hash::Hash> {
    basis: Vec<Sparse<K>>,
    pivot_keys: Vec<K>,
    inverse: Mat,
}

impl<K: Ord + Clone + std::hash::Hash> Coordinatizer<K> {
    /// Panics when the family is dependent.
    pub fn new(basis: Vec<Sparse<K>>) -> Coordinatizer<K> {
        let keys: Vec<K> = basis
            .iter()
            .flat_map(|b| b.keys().cloned())
            .collect::<std::collections::BTreeSet<K>>()
            .into_iter()
            .collect();
        let index: std::collections::HashMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let d = basis.len();
        let mut bt = Mat::zeros(d, keys.len());
        for (r, b) in basis.iter().enumerate() {
            for (k, x) in b {
                bt.set(r, index[k], x.clone());
            }
        }
        let (_, pivots) = rref(&bt);
        assert_eq!(pivots.len(), d, "Coordinatizer needs an independent family");
        // square[i][r] = basis[r] at pivot key i
        let mut square = Mat::zeros(d, d);
        for (i, &p) in pivots.iter().enumerate() {
            for r in 0..d {
                square.set(i, r, bt.get(r, p).clone());
            }
        }
        let mut aug = Mat::zeros(d, 2 * d);
        for r in 0..d {
            for c in 0..d {
                aug.set(r, c, square.get(r, c).clone());
            }
            aug.set(r, d + r, Rat::one());
        }
        let (red, _) = rref(&aug);
        let mut inverse = Mat::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                inverse.set(r, c, red.get(r, d + c).clone());
            }
        }
        Coordinatizer { basis, pivot_keys: pivots.iter().map(|&p| keys[p].clone()).collect(), inverse }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Sparse<K>] {
        &self.basis
    }

    /// `None` when `v` is outside the span.
    pub fn coords(&self, v: &Sparse<K>) -> Option<Vec<Rat>> {
        let rhs: Vec<Rat> = self.pivot_keys.iter().map(|k| v.get(k).cloned().unwrap_or_else(Rat::zero)).collect();
        let c = self.inverse.mul_vec(&rhs);
        (self.combine(&c) == *v).then_some(c)
    }

    pub fn combine(&self, c: &[Rat]) -> Sparse<K> {
        let mut out = Sparse::new();
        for (x, b) in c.iter().zip(&self.basis) {
            axpy(&mut out, x, b);
        }
        out
    }
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn is_nonneg_int(r: &Rat) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_identity_and_zero() {
        let (r, p) = rref(&Mat::identity(2));
        assert_eq!(r, Mat::identity(2));
        assert_eq!(p, vec![0, 1]);
        let (r, p) = rref(&Mat::zeros(2, 3));
        assert!(r.is_zero());
        assert!(p.is_empty());
    }

    #[test]
    fn rref_hand_reduction() {
        let (r, p) = rref(&Mat::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, Mat::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(3)).is_empty());
        assert_eq!(kernel_basis(&Mat::zeros(2, 3)).len(), 3);
        let m = Mat::from_i64(&[&[1, 2]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![v(&[-2, 1])]);
        assert!(is_zero_vec(&m.mul_vec(&k[0])));
    }

    #[test]
    fn solve_examples() {
        let b = v(&[3, -5]);
        let s = solve_linear(&Mat::identity(2), &b).unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());

        let s = solve_linear(&Mat::from_i64(&[&[1, 1]]), &v(&[2])).unwrap();
        assert_eq!(s.particular, v(&[2, 0]));
        assert_eq!(s.kernel, vec![v(&[-1, 1])]);

        assert!(solve_linear(&Mat::from_i64(&[&[0]]), &v(&[1])).is_none());
    }

    #[test]
    #[should_panic]
    fn solve_dimension_mismatch_panics() {
        solve_linear(&Mat::identity(2), &v(&[1]));
    }

    #[test]
    fn subspace_membership() {
        let s = Subspace::span(3, &[v(&[1, 1, 0]), v(&[2, 2, 0]), v(&[0, 1, 1])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[1, 2, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        let t = Subspace::span(3, &[v(&[0, 0, 1])]);
        assert_eq!(s.intersection_dim(&t), 0);
        assert_eq!(s.sum(&t).dim(), 3);
    }

    #[test]
    fn coordinatizer_round_trip() {
        let b: Vec<Sparse<u8>> = vec![
            [(0u8, rat(1)), (1, rat(1))].into_iter().collect(),
            [(1u8, rat(2)), (2, rat(-1))].into_iter().collect(),
        ];
        let c = Coordinatizer::new(b);
        let v: Sparse<u8> = [(0u8, rat(3)), (1, rat(5)), (2, rat(-1))].into_iter().collect();
        assert_eq!(c.coords(&v), Some(v_(&[3, 1])));
        let w: Sparse<u8> = [(2u8, rat(1))].into_iter().collect();
        assert_eq!(c.coords(&w), None);
    }

    fn v_(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(fmt_rat(&ratio(-6, 4)), "-3/2");
        assert_eq!(fmt_rat(&rat(7)), "7");
        assert_eq!(parse_rat("-3/2"), Some(ratio(-3, 2)));
        assert_eq!(parse_rat("1/0"), None);
    }
}
