//! Integer matrices: dense Smith normal form over arbitrary precision
//! integers, and sparse eliminations for large boundary matrices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &x) in row.iter().enumerate() {
                m.data[r * cols + c] = BigInt::from(x);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]`
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if !s.is_zero() {
                let v = q * s;
                self.data[dst * self.cols + c] -= v;
            }
        }
    }

    /// `col[dst] -= q * col[src]`
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let s = &self.data[r * self.cols + src];
            if !s.is_zero() {
                let v = q * s;
                self.data[r * self.cols + dst] -= v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }
}

/// Result of [`smith_normal_form`]: `u * a * v` is diagonal with entries
/// `diagonal` (all positive, each dividing the next), padded by zeros.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Smith normal form with unimodular transforms. Pivots are chosen with
/// minimal absolute value to limit entry growth.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    smith(a, true)
}

/// Invariant factors only, without the transforms.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    smith(a, false).diagonal
}

fn smith(a: &IntMatrix, track: bool) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let (mut u, mut v) = if track {
        (IntMatrix::identity(m), IntMatrix::identity(n))
    } else {
        (IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0))
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    'outer: while t < m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for r in t..m {
                for c in t..n {
                    let x = d.get(r, c);
                    if !x.is_zero() && best.map_or(true, |(br, bc)| x.abs() < d.get(br, bc).abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else { break 'outer };
            d.swap_rows(t, br);
            if track {
                u.swap_rows(t, br);
            }
            d.swap_cols(t, bc);
            if track {
                v.swap_cols(t, bc);
            }
            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..m {
                if !d.get(r, t).is_zero() {
                    let q = nearest_quotient(d.get(r, t), &pivot);
                    d.sub_row(r, t, &q);
                    if track {
                        u.sub_row(r, t, &q);
                    }
                    clean &= d.get(r, t).is_zero();
                }
            }
            for c in t + 1..n {
                if !d.get(t, c).is_zero() {
                    let q = nearest_quotient(d.get(t, c), &pivot);
                    d.sub_col(c, t, &q);
                    if track {
                        v.sub_col(c, t, &q);
                    }
                    clean &= d.get(t, c).is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..m).find(|&r| (t + 1..n).any(|c| !d.get(r, c).is_multiple_of(&pivot)));
            match bad {
                Some(r) => {
                    // row t += row r brings the offending entries into row t
                    let minus_one = -BigInt::one();
                    d.sub_row(t, r, &minus_one);
                    if track {
                        u.sub_row(t, r, &minus_one);
                    }
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            if track {
                u.negate_row(t);
            }
        }
        diagonal.push(d.get(t, t).clone());
        t += 1;
    }
    Smith { diagonal, u, v }
}

/// `q` with `|a - q b| <= |b| / 2`.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    let twice: BigInt = &r * 2;
    if twice.abs() > b.abs() {
        // the floor remainder shares the sign of b
        q + 1
    } else {
        q
    }
}

/// Invariant factors `> 1` of `Z^ambient_rank / rowspace(a)`, followed by one
/// `0` per free summand.
pub fn abelian_invariants_of_cokernel(a: &IntMatrix, ambient_rank: usize) -> Result<Vec<BigInt>> {
    if a.ncols() != ambient_rank {
        return Err(Error::InvalidInput(format!(
            "matrix has {} columns, ambient rank is {ambient_rank}",
            a.ncols()
        )));
    }
    let snf = smith_normal_form(a);
    let mut out: Vec<BigInt> = snf.diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
    out.extend(std::iter::repeat(BigInt::zero()).take(ambient_rank - snf.diagonal.len()));
    Ok(out)
}

/// Sparse integer row: sorted `(column, value)` pairs with nonzero values.
pub type SparseRow = Vec<(u32, i64)>;

fn overflow() -> Error {
    Error::Internal("integer overflow in sparse elimination".into())
}

/// `ca * a + cb * b`
pub(crate) fn combine(a: &[(u32, i64)], ca: i64, b: &[(u32, i64)], cb: i64) -> Result<SparseRow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let term = |x: i64, c: i64| x.checked_mul(c).ok_or_else(overflow);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map_or(u32::MAX, |e| e.0);
        let kb = b.get(j).map_or(u32::MAX, |e| e.0);
        let (k, v) = if ka < kb {
            i += 1;
            (ka, term(a[i - 1].1, ca)?)
        } else if kb < ka {
            j += 1;
            (kb, term(b[j - 1].1, cb)?)
        } else {
            i += 1;
            j += 1;
            let v = term(a[i - 1].1, ca)?.checked_add(term(b[j - 1].1, cb)?).ok_or_else(overflow)?;
            (ka, v)
        };
        if v != 0 {
            out.push((k, v));
        }
    }
    Ok(out)
}

/// Structure of `Z^ncols / rowspace`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    /// Invariant factors greater than 1, ascending by divisibility.
    pub torsion: Vec<u64>,
    pub free_rank: usize,
    /// Rank of the relation matrix.
    pub rank: usize,
}

impl Cokernel {
    /// Invariant list in the `[d_1, …, 0, 0]` encoding.
    pub fn invariants(&self) -> Vec<u64> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat(0).take(self.free_rank));
        v
    }
}

/// Cokernel of a sparse relation matrix. Unit pivots are eliminated
/// sparsely in 128-bit arithmetic; the remainder goes through the dense
/// Smith form.
pub fn sparse_cokernel(ncols: usize, rows: Vec<SparseRow>) -> Result<Cokernel> {
    let rows: Vec<Vec<(u32, i128)>> = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.into_iter().map(|(c, v)| (c, v as i128)).collect())
        .collect();
    let mut elim = Eliminator::new(ncols, rows);
    let eliminated = elim.run(|x| x.abs() == 1, |pivot, a| Some(a * pivot), |x, f, y| {
        x.checked_sub(f.checked_mul(y)?)
    })?;
    let residual = elim.residual();
    let mut col_index = HashMap::new();
    for r in &residual {
        for &(c, _) in r.iter() {
            let next = col_index.len();
            col_index.entry(c).or_insert(next);
        }
    }
    let mut dense = IntMatrix::zeros(residual.len(), col_index.len());
    for (i, r) in residual.iter().enumerate() {
        for &(c, v) in r.iter() {
            dense.set(i, col_index[&c], BigInt::from(v));
        }
    }
    let diagonal = smith_diagonal(&dense);
    let mut torsion = Vec::new();
    for d in &diagonal {
        if !d.is_one() {
            torsion.push(d.to_u64().ok_or_else(overflow)?);
        }
    }
    let rank = eliminated.len() + diagonal.len();
    Ok(Cokernel {
        torsion,
        free_rank: ncols - rank,
        rank,
    })
}

/// Full elimination of a sparse integer matrix over `Z/p^e`, pivoting on
/// entries of least valuation. Returns the eliminator and the pivot rows
/// with their valuations.
fn local_eliminate(
    ncols: usize,
    rows: &[SparseRow],
    p: u64,
    e: u32,
    track: bool,
) -> Result<(Eliminator<u64>, Vec<(usize, u32)>)> {
    let q = p
        .checked_pow(e)
        .filter(|&q| q < 1 << 31)
        .ok_or_else(|| Error::InvalidInput(format!("modulus {p}^{e} is too large")))?;
    let reduce = |v: i64| v.rem_euclid(q as i64) as u64;
    let reduced: Vec<Vec<(u32, u64)>> = rows
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c, reduce(v))).filter(|e| e.1 != 0).collect())
        .collect();
    let valuation = |mut x: u64| {
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    };
    // inverse of a unit modulo q: u^(phi(q) - 1)
    let phi = q / p * (p - 1);
    let inverse = |u: u64| {
        let (mut base, mut exp, mut acc) = (u % q, phi - 1, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            exp >>= 1;
        }
        acc
    };
    let mut elim = Eliminator::new(ncols, reduced);
    if track {
        elim = elim.with_transform(1);
    }
    let mut pivots = Vec::new();
    // entries of valuation below the current level are gone, so any entry of
    // the current valuation divides everything left in its column
    for level in 0..e {
        let scale = p.pow(level);
        let found = elim.run(
            |&x| valuation(x) == level,
            |pivot, a| Some(a / scale % q * inverse(pivot / scale) % q),
            |x, f, y| Some((x + q - f * y % q) % q),
        )?;
        pivots.extend(found.into_iter().map(|(r, _)| (r, level)));
    }
    Ok((elim, pivots))
}

/// Cokernel of a sparse integer relation matrix computed over `Z/p^e`.
/// Exact when the torsion of the cokernel is a `p`-group of exponent less
/// than `p^e`, as for the homology of a `p`-group of order below `p^e`.
pub fn local_cokernel(ncols: usize, rows: &[SparseRow], p: u64, e: u32) -> Result<Cokernel> {
    let (_, pivots) = local_eliminate(ncols, rows, p, e, false)?;
    let mut torsion: Vec<u64> = pivots.iter().filter(|v| v.1 > 0).map(|v| p.pow(v.1)).collect();
    torsion.sort_unstable();
    Ok(Cokernel {
        torsion,
        free_rank: ncols - pivots.len(),
        rank: pivots.len(),
    })
}

/// Generators of `{x : x A = 0 mod p^e}` with entries in `[0, p^e)`, and
/// the number of pivots met, which is the rank of `A` when the cokernel of
/// `A` has `p`-torsion of exponent below `p^e` only.
pub fn local_left_kernel(ncols: usize, rows: &[SparseRow], p: u64, e: u32) -> Result<(Vec<SparseRow>, usize)> {
    let (elim, pivots) = local_eliminate(ncols, rows, p, e, true)?;
    let q = p.pow(e);
    let transform = elim.transform.as_ref().expect("tracked");
    let to_row = |t: &Vec<(u32, u64)>, scale: u64| -> SparseRow {
        t.iter()
            .map(|&(c, v)| (c, (v * scale % q) as i64))
            .filter(|e| e.1 != 0)
            .collect()
    };
    let mut out: Vec<SparseRow> = (0..rows.len())
        .filter(|&i| elim.active[i])
        .map(|i| to_row(&transform[i], 1))
        .collect();
    // a pivot row of valuation v contributes p^(e - v) times its transform
    out.extend(
        pivots
            .iter()
            .filter(|&&(_, v)| v > 0)
            .map(|&(r, v)| to_row(&transform[r], p.pow(e - v))),
    );
    out.retain(|r| !r.is_empty());
    Ok((out, pivots.len()))
}

/// Sparse row elimination with column incidence lists. Each pivot row is
/// removed together with its pivot column; the other rows through that
/// column are reduced by it. Optionally tracks the row transform.
struct Eliminator<T> {
    rows: Vec<Vec<(u32, T)>>,
    transform: Option<Vec<Vec<(u32, T)>>>,
    active: Vec<bool>,
    col_rows: Vec<Vec<u32>>,
    order: Vec<usize>,
}

/// `x - f y` over sorted sparse rows; `fresh` sees columns only in `y`.
fn sub_rows<T: Copy + Default + PartialEq>(
    x: &[(u32, T)],
    f: T,
    y: &[(u32, T)],
    sub: &impl Fn(T, T, T) -> Option<T>,
    mut fresh: impl FnMut(u32),
) -> Result<Vec<(u32, T)>> {
    let zero = T::default();
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ka = x.get(i).map_or(u32::MAX, |e| e.0);
        let kb = y.get(j).map_or(u32::MAX, |e| e.0);
        let (k, v) = if ka < kb {
            i += 1;
            (ka, x[i - 1].1)
        } else {
            let a = if ka == kb {
                i += 1;
                x[i - 1].1
            } else {
                fresh(kb);
                zero
            };
            j += 1;
            (kb, sub(a, f, y[j - 1].1).ok_or_else(overflow)?)
        };
        if v != zero {
            out.push((k, v));
        }
    }
    Ok(out)
}

impl<T: Copy + Default + PartialEq> Eliminator<T> {
    fn new(ncols: usize, rows: Vec<Vec<(u32, T)>>) -> Self {
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            for &(c, _) in r {
                col_rows[c as usize].push(i as u32);
            }
        }
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&i| rows[i].len());
        Eliminator {
            active: vec![true; rows.len()],
            rows,
            transform: None,
            col_rows,
            order,
        }
    }

    fn with_transform(mut self, one: T) -> Self {
        self.transform = Some((0..self.rows.len()).map(|i| vec![(i as u32, one)]).collect());
        self
    }

    /// Eliminates pivots accepted by `is_pivot` until none is left. `factor`
    /// gives the multiple of the pivot row to subtract from a row holding
    /// `a` in the pivot column, `sub(x, f, y)` computes `x - f y`. Returns
    /// the pivot rows and values.
    fn run(
        &mut self,
        is_pivot: impl Fn(&T) -> bool,
        factor: impl Fn(T, T) -> Option<T>,
        sub: impl Fn(T, T, T) -> Option<T>,
    ) -> Result<Vec<(usize, T)>> {
        let mut pivots = Vec::new();
        loop {
            let mut progress = false;
            for idx in 0..self.order.len() {
                let r = self.order[idx];
                if !self.active[r] || self.rows[r].is_empty() {
                    continue;
                }
                let pivot = self.rows[r]
                    .iter()
                    .filter(|e| is_pivot(&e.1))
                    .min_by_key(|e| self.col_rows[e.0 as usize].len())
                    .copied();
                let Some((c, pv)) = pivot else { continue };
                let pivot_row = std::mem::take(&mut self.rows[r]);
                self.active[r] = false;
                let users = std::mem::take(&mut self.col_rows[c as usize]);
                let mut seen = std::collections::HashSet::new();
                for s in users {
                    let s = s as usize;
                    if s == r || !self.active[s] || !seen.insert(s) {
                        continue;
                    }
                    let Ok(pos) = self.rows[s].binary_search_by_key(&c, |e| e.0) else {
                        continue;
                    };
                    let f = factor(pv, self.rows[s][pos].1).ok_or_else(overflow)?;
                    let col_rows = &mut self.col_rows;
                    self.rows[s] = sub_rows(&self.rows[s], f, &pivot_row, &sub, |k| col_rows[k as usize].push(s as u32))?;
                    if let Some(t) = self.transform.as_mut() {
                        t[s] = sub_rows(&t[s], f, &t[r], &sub, |_| {})?;
                    }
                }
                pivots.push((r, pv));
                progress = true;
            }
            if !progress {
                return Ok(pivots);
            }
        }
    }

    fn residual(&self) -> Vec<&Vec<(u32, T)>> {
        (0..self.rows.len())
            .filter(|&i| self.active[i] && !self.rows[i].is_empty())
            .map(|i| &self.rows[i])
            .collect()
    }
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Basis of the left kernel lattice `{x in Z^rows : x A = 0}` of a sparse
/// matrix, by Hermite-style row reduction with a tracked unimodular
/// transform.
pub fn sparse_left_kernel(rows: &[SparseRow]) -> Result<Vec<SparseRow>> {
    match hermite_kernel(rows) {
        Err(Error::Internal(_)) if rows.len() <= DENSE_KERNEL_ROWS => dense_kernel(rows),
        Ok(kernel) if kernel.iter().flatten().any(|e| e.1.unsigned_abs() > LARGE) => {
            let n = rows.len();
            let mut basis: Vec<Vec<BigInt>> = kernel
                .iter()
                .map(|v| {
                    let mut d = vec![BigInt::zero(); n];
                    for &(c, x) in v {
                        d[c as usize] = BigInt::from(x);
                    }
                    d
                })
                .collect();
            hermite_rows(&mut basis);
            to_sparse_rows(&basis)
        }
        other => other,
    }
}

/// Largest matrix whose kernel may be recomputed densely after an overflow;
/// the dense transform is quadratic in the row count.
const DENSE_KERNEL_ROWS: usize = 2048;

/// Kernel entries beyond this are re-reduced so that later products stay in range.
const LARGE: u64 = 1 << 20;

fn to_sparse_rows(basis: &[Vec<BigInt>]) -> Result<Vec<SparseRow>> {
    basis
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| Ok((c as u32, x.to_i64().ok_or_else(overflow)?)))
                .collect()
        })
        .collect()
}

fn dense_of(rows: &[SparseRow]) -> IntMatrix {
    let ncols = rows.iter().filter_map(|r| r.last()).map(|e| e.0 as usize + 1).max().unwrap_or(0);
    let mut dense = IntMatrix::zeros(rows.len(), ncols);
    for (i, r) in rows.iter().enumerate() {
        for &(c, v) in r {
            dense.set(i, c as usize, BigInt::from(v));
        }
    }
    dense
}

/// Kernel from the rows of the left transform of the Smith form, brought to
/// Hermite normal form to keep entries small.
fn dense_kernel(rows: &[SparseRow]) -> Result<Vec<SparseRow>> {
    let snf = smith_normal_form(&dense_of(rows));
    let n = rows.len();
    let mut basis: Vec<Vec<BigInt>> = (snf.diagonal.len()..n)
        .map(|r| (0..n).map(|c| snf.u.get(r, c).clone()).collect())
        .collect();
    hermite_rows(&mut basis);
    to_sparse_rows(&basis)
}

/// Row Hermite normal form in place: positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
fn hermite_rows(rows: &mut Vec<Vec<BigInt>>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut top = 0;
    for col in 0..width {
        // gcd-combine rows top.. in this column until one nonzero remains
        loop {
            let nonzero: Vec<usize> = (top..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&r) = nonzero.first() {
                    rows.swap(top, r);
                }
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&r| rows[r][col].abs()).expect("nonempty");
            for &r in &nonzero {
                if r != best {
                    let q = rows[r][col].div_floor(&rows[best][col]);
                    let (src, dst) = if r < best {
                        let (a, b) = rows.split_at_mut(best);
                        (&b[0], &mut a[r])
                    } else {
                        let (a, b) = rows.split_at_mut(r);
                        (&a[best], &mut b[0])
                    };
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d -= &q * s;
                    }
                }
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            if rows[top][col].is_negative() {
                rows[top].iter_mut().for_each(|x| *x = -&*x);
            }
            let (above, rest) = rows.split_at_mut(top);
            let pivot = &rest[0];
            for r in above.iter_mut() {
                let q = r[col].div_floor(&pivot[col]);
                if !q.is_zero() {
                    for (d, s) in r.iter_mut().zip(pivot) {
                        *d -= &q * s;
                    }
                }
            }
            top += 1;
        }
    }
    rows.truncate(top);
}

fn hermite_kernel(rows: &[SparseRow]) -> Result<Vec<SparseRow>> {
    let mut pivots: HashMap<u32, (SparseRow, SparseRow)> = HashMap::new();
    let mut kernel = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        let mut t: SparseRow = vec![(i as u32, 1)];
        loop {
            let Some(&(c, b)) = v.first() else {
                kernel.push(t);
                break;
            };
            let Some((p, pt)) = pivots.get_mut(&c) else {
                if b < 0 {
                    v.iter_mut().for_each(|e| e.1 = -e.1);
                    t.iter_mut().for_each(|e| e.1 = -e.1);
                }
                pivots.insert(c, (v, t));
                break;
            };
            let a = p[0].1;
            if b % a == 0 {
                let q = b / a;
                v = combine(&v, 1, p, -q)?;
                t = combine(&t, 1, pt, -q)?;
            } else {
                let (g, s, u) = egcd(a, b);
                let new_p = combine(p, s, &v, u)?;
                let new_pt = combine(pt, s, &t, u)?;
                v = combine(p, b / g, &v, -(a / g))?;
                t = combine(pt, b / g, &t, -(a / g))?;
                *p = new_p;
                *pt = new_pt;
            }
        }
    }
    Ok(kernel)
}

/// Applies a sparse row vector to a sparse matrix: `x A`.
pub fn sparse_apply(x: &[(u32, i64)], rows: &[SparseRow], ncols: usize) -> Result<SparseRow> {
    let mut acc = vec![0i64; ncols];
    for &(r, c) in x {
        for &(col, v) in &rows[r as usize] {
            let term = v.checked_mul(c).ok_or_else(overflow)?;
            acc[col as usize] = acc[col as usize].checked_add(term).ok_or_else(overflow)?;
        }
    }
    Ok(acc
        .into_iter()
        .enumerate()
        .filter(|e| e.1 != 0)
        .map(|(c, v)| (c as u32, v))
        .collect())
}
