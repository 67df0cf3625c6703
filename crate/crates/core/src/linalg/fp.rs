//! Dense matrices over prime fields, in the row-vector convention: a matrix
//! `A` acts as `x -> x A`.

use std::fmt;

use crate::error::{Error, Result};

/// Multiplicative inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(a % p != 0);
    let (p, a) = (p as u32, a as u32);
    // a^(p-2)
    let mut r = 1u32;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r as u8
}

/// `dst[j] += c * src[j]` for all `j`, modulo `p`.
#[inline]
pub(crate) fn axpy(dst: &mut [u8], src: &[u8], c: u8, p: u8) {
    if c == 0 {
        return;
    }
    if p == 2 {
        dst.iter_mut().zip(src).for_each(|(d, &s)| *d ^= s);
    } else {
        let (c, p) = (c as u16, p as u16);
        dst.iter_mut()
            .zip(src)
            .for_each(|(d, &s)| *d = ((*d as u16 + c * s as u16) % p) as u8);
    }
}

#[inline]
fn scale(v: &mut [u8], c: u8, p: u8) {
    if c != 1 {
        v.iter_mut().for_each(|x| *x = ((*x as u16 * c as u16) % p as u16) as u8);
    }
}

#[inline]
pub(crate) fn neg(a: u8, p: u8) -> u8 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Incremental row echelon form. Each stored row is normalized so that its
/// leading entry (its pivot) is 1. With tracking enabled every row carries the
/// combination of inserted vectors it came from.
#[derive(Clone)]
pub struct Echelon {
    p: u8,
    width: usize,
    rows: Vec<Vec<u8>>,
    tracks: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    pivot_row: Vec<u32>,
    track_width: Option<usize>,
}

impl fmt::Debug for Echelon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Echelon")
            .field("p", &self.p)
            .field("width", &self.width)
            .field("rank", &self.rows.len())
            .finish()
    }
}

impl Echelon {
    pub fn new(p: u8, width: usize) -> Echelon {
        Echelon {
            p,
            width,
            rows: Vec::new(),
            tracks: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![u32::MAX; width],
            track_width: None,
        }
    }

    pub fn with_tracking(p: u8, width: usize, track_width: usize) -> Echelon {
        Echelon {
            track_width: Some(track_width),
            ..Echelon::new(p, width)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the stored rows. With `stop_early`, returns as soon
    /// as a nonzero entry in a non-pivot column is found. Returns the first
    /// column left nonzero.
    fn reduce(&self, v: &mut [u8], mut track: Option<&mut [u8]>, stop_early: bool) -> Option<usize> {
        let p = self.p;
        let mut first = None;
        for c in 0..self.width {
            let x = v[c];
            if x == 0 {
                continue;
            }
            let r = self.pivot_row[c];
            if r == u32::MAX {
                if first.is_none() {
                    first = Some(c);
                    if stop_early {
                        return first;
                    }
                }
                continue;
            }
            let r = r as usize;
            let coef = neg(x, p);
            axpy(&mut v[c..], &self.rows[r][c..], coef, p);
            if let Some(t) = track.as_deref_mut() {
                axpy(t, &self.tracks[r], coef, p);
            }
        }
        first
    }

    fn push(&mut self, mut v: Vec<u8>, mut t: Option<Vec<u8>>, c: usize) {
        let inv = inv_mod(v[c], self.p);
        scale(&mut v[c..], inv, self.p);
        if let Some(t) = t.as_mut() {
            scale(t, inv, self.p);
        }
        self.pivot_row[c] = self.rows.len() as u32;
        self.pivots.push(c);
        self.rows.push(v);
        if let Some(t) = t {
            self.tracks.push(t);
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        debug_assert!(self.track_width.is_none());
        match self.reduce(&mut v, None, true) {
            Some(c) => {
                self.push(v, None, c);
                true
            }
            None => false,
        }
    }

    /// Tracked insertion of `v` with combination vector `track`. If `v` is
    /// dependent, returns the reduced track: a combination of inserted vectors
    /// summing to zero.
    pub fn insert_tracked(&mut self, mut v: Vec<u8>, mut track: Vec<u8>) -> Option<Vec<u8>> {
        debug_assert_eq!(Some(track.len()), self.track_width);
        match self.reduce(&mut v, Some(&mut track), true) {
            Some(c) => {
                self.push(v, Some(track), c);
                None
            }
            None => Some(track),
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v, None, true).is_none()
    }

    /// Finds coefficients `x` over the inserted vectors with `sum x_i v_i = b`.
    /// Requires tracking.
    pub fn solve(&self, b: &[u8]) -> Option<Vec<u8>> {
        let tw = self.track_width.expect("solve needs a tracked echelon");
        let mut v = b.to_vec();
        let mut t = vec![0u8; tw];
        if self.reduce(&mut v, Some(&mut t), true).is_some() {
            return None;
        }
        t.iter_mut().for_each(|x| *x = neg(*x, self.p));
        Some(t)
    }

    /// Reduced row echelon form of the stored span, rows sorted by pivot.
    pub fn rref(&self) -> Vec<Vec<u8>> {
        let p = self.p;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        let mut rows: Vec<Vec<u8>> = order.iter().map(|&r| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&r| self.pivots[r]).collect();
        for i in (0..rows.len()).rev() {
            let (upper, lower) = rows.split_at_mut(i);
            let pivot_row = &lower[0];
            let c = pivots[i];
            for row in upper.iter_mut() {
                let x = row[c];
                if x != 0 {
                    axpy(&mut row[c..], &pivot_row[c..], neg(x, p), p);
                }
            }
        }
        rows
    }
}

/// A dense matrix over F_p with entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    prime: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.prime, self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(prime: u8, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix {
            prime,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(prime: u8, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(prime, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry modulo `prime`.
    pub fn from_rows(prime: u8, cols: usize, rows: &[Vec<u8>]) -> FpMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| x % prime));
        }
        FpMatrix {
            prime,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64_rows(prime: u8, rows: &[Vec<i64>]) -> FpMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let p = prime as i64;
        let rows: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x.rem_euclid(p) as u8).collect())
            .collect();
        FpMatrix::from_rows(prime, cols, &rows)
    }

    pub fn prime(&self) -> u8 {
        self.prime
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.prime;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.prime, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.prime != other.prime {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FpMatrix::zeros(self.prime, self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                axpy(dst, other.row(k), self.get(r, k), self.prime);
            }
        }
        Ok(out)
    }

    /// `x A` for a row vector `x`.
    pub fn apply(&self, x: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.cols];
        for (r, &c) in x.iter().enumerate() {
            axpy(&mut out, self.row(r), c, self.prime);
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.prime, self.cols);
        for r in 0..self.rows {
            e.insert(self.row(r).to_vec());
        }
        e
    }
}

/// Rank over F_p by Gaussian elimination.
pub fn rank(a: &FpMatrix) -> usize {
    a.echelon().rank()
}

/// Basis of the left kernel `{v : v A = 0}` in reduced row echelon form.
pub fn kernel_basis(a: &FpMatrix) -> FpMatrix {
    let n = a.nrows();
    let mut e = Echelon::with_tracking(a.prime(), a.ncols(), n);
    let mut kernel = Echelon::new(a.prime(), n);
    for r in 0..n {
        let mut t = vec![0u8; n];
        t[r] = 1;
        if let Some(k) = e.insert_tracked(a.row(r).to_vec(), t) {
            kernel.insert(k);
        }
    }
    FpMatrix::from_rows(a.prime(), n, &kernel.rref())
}

/// A particular solution of `x A = b`, or `None` when `b` is not in the row
/// space.
pub fn solve(a: &FpMatrix, b: &[u8]) -> Option<Vec<u8>> {
    if b.len() != a.ncols() {
        return None;
    }
    let n = a.nrows();
    let mut e = Echelon::with_tracking(a.prime(), a.ncols(), n);
    for r in 0..n {
        let mut t = vec![0u8; n];
        t[r] = 1;
        e.insert_tracked(a.row(r).to_vec(), t);
    }
    e.solve(b)
}
