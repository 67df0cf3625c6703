use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::group::{minimal_generating_set, FiniteGroup};
use crate::linalg::{axpy, Echelon, FpMatrix};

/// `x · v` for `v` in a free module of rank `blocks`, coordinates laid out as
/// `generator * |G| + element`.
pub(crate) fn act(g: &FiniteGroup, x: usize, v: &[u8], blocks: usize) -> Vec<u8> {
    let n = g.order();
    let row = g.row(x);
    let mut out = vec![0u8; v.len()];
    for b in 0..blocks {
        let src = &v[b * n..(b + 1) * n];
        let dst = &mut out[b * n..(b + 1) * n];
        for (y, &c) in src.iter().enumerate() {
            if c != 0 {
                dst[row[y] as usize] = c;
            }
        }
    }
    out
}

/// `out += x · v`
pub(crate) fn act_add(g: &FiniteGroup, x: usize, v: &[u8], blocks: usize, coef: u8, p: u8, out: &mut [u8]) {
    let n = g.order();
    let row = g.row(x);
    for b in 0..blocks {
        let src = &v[b * n..(b + 1) * n];
        let dst = &mut out[b * n..(b + 1) * n];
        for (y, &c) in src.iter().enumerate() {
            if c != 0 {
                let t = &mut dst[row[y] as usize];
                *t = ((*t as u16 + coef as u16 * c as u16) % p as u16) as u8;
            }
        }
    }
}

/// Sum of the coefficients in each generator block.
pub(crate) fn block_augmentation(v: &[u8], order: usize, p: u8) -> Vec<u8> {
    v.chunks(order)
        .map(|b| (b.iter().map(|&c| c as u32).sum::<u32>() % p as u32) as u8)
        .collect()
}

/// A minimal free resolution of `F_p` over `F_p[G]`, computed up to some
/// degree. `ranks()[n]` is `dim H_n(G, F_p)`.
pub struct MinimalResolution {
    group: Arc<FiniteGroup>,
    prime: u8,
    ranks: Vec<usize>,
    /// `images[n][k] = d_n(e_k)`, a vector of length `|G| * b_{n-1}`.
    images: Vec<Vec<Vec<u8>>>,
    /// Tracked echelon forms of the full `d_n` matrices, built on demand.
    solvers: Vec<OnceLock<Echelon>>,
    budget: Budget,
}

impl fmt::Debug for MinimalResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MinimalResolution")
            .field("group", &self.group.name())
            .field("prime", &self.prime)
            .field("ranks", &self.ranks)
            .finish()
    }
}

impl MinimalResolution {
    /// Computes ranks `b_0, …, b_max_degree` and the boundary maps
    /// `d_1, …, d_max_degree`.
    pub fn compute(group: Arc<FiniteGroup>, prime: u8, max_degree: usize, budget: Budget) -> Result<Self> {
        if let Some(p) = group.prime() {
            if p != prime as u32 {
                return Err(Error::InvalidInput(format!(
                    "prime {prime} does not divide the order of {}",
                    group.name()
                )));
            }
        }
        if !(2..=251).contains(&prime) || (2..prime).any(|d| prime % d == 0) {
            return Err(Error::InvalidInput(format!("{prime} is not a supported prime")));
        }
        let n = group.order();
        let radical_gens = minimal_generating_set(&group);
        let mut res = MinimalResolution {
            group,
            prime,
            ranks: vec![1],
            images: vec![Vec::new()],
            solvers: vec![OnceLock::new()],
            budget,
        };
        for degree in 0..max_degree {
            // kernel of d_degree
            let kernel: Vec<Vec<u8>> = if degree == 0 {
                (1..n)
                    .map(|x| {
                        let mut v = vec![0u8; n];
                        v[x] = 1;
                        v[0] = prime - 1;
                        v
                    })
                    .collect()
            } else {
                let (echelon, kernel) = res.eliminate(degree)?;
                let _ = res.solvers[degree].set(echelon);
                kernel
            };
            // new generators: kernel vectors independent modulo the radical
            let blocks = res.ranks[degree];
            let mut radical = Echelon::new(prime, n * blocks);
            for k in &kernel {
                for &s in &radical_gens {
                    let mut v = act(&res.group, s, k, blocks);
                    axpy(&mut v, k, prime - 1, prime);
                    radical.insert(v);
                }
            }
            let mut generators = Vec::new();
            for k in kernel {
                if radical.insert(k.clone()) {
                    generators.push(k);
                }
            }
            res.ranks.push(generators.len());
            res.images.push(generators);
            res.solvers.push(OnceLock::new());
            #[cfg(debug_assertions)]
            res.check_degree(degree + 1)?;
        }
        Ok(res)
    }

    /// Row reduction of the full `d_n` matrix, returning the tracked echelon
    /// and a basis of the kernel.
    fn eliminate(&self, degree: usize) -> Result<(Echelon, Vec<Vec<u8>>)> {
        let n = self.group.order();
        let (rows, cols) = (n * self.ranks[degree], n * self.ranks[degree - 1]);
        self.budget.check_fp(
            || format!("d_{degree} of the resolution of {}", self.group.name()),
            rows as u128 * cols as u128,
        )?;
        let mut echelon = Echelon::with_tracking(self.prime, cols, rows);
        let mut kernel = Vec::new();
        for (k, image) in self.images[degree].iter().enumerate() {
            for x in 0..n {
                let row = act(&self.group, x, image, self.ranks[degree - 1]);
                let mut track = vec![0u8; rows];
                track[k * n + x] = 1;
                if let Some(t) = echelon.insert_tracked(row, track) {
                    kernel.push(t);
                }
            }
        }
        Ok((echelon, kernel))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn prime(&self) -> u8 {
        self.prime
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `b_0, …, b_max_degree`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    /// Images of the free generators of degree `n` under `d_n`.
    pub fn generator_images(&self, n: usize) -> &[Vec<u8>] {
        &self.images[n]
    }

    /// The full matrix of `d_n`, `(|G| b_n) × (|G| b_{n-1})`, row
    /// `k |G| + x` holding `d_n(x e_k)`.
    pub fn boundary(&self, n: usize) -> FpMatrix {
        let g = &self.group;
        let cols = g.order() * self.ranks[n - 1];
        let mut rows = Vec::with_capacity(g.order() * self.ranks[n]);
        for image in &self.images[n] {
            for x in 0..g.order() {
                rows.push(act(g, x, image, self.ranks[n - 1]));
            }
        }
        FpMatrix::from_rows(self.prime, cols, &rows)
    }

    /// `d_n(v)` for `v` in the free module of degree `n`; for `n = 0` the
    /// augmentation.
    pub fn apply_boundary(&self, n: usize, v: &[u8]) -> Vec<u8> {
        let order = self.group.order();
        let p = self.prime;
        if n == 0 {
            return block_augmentation(v, order, p);
        }
        let mut out = vec![0u8; order * self.ranks[n - 1]];
        for (k, image) in self.images[n].iter().enumerate() {
            for x in 0..order {
                let c = v[k * order + x];
                if c != 0 {
                    act_add(&self.group, x, image, self.ranks[n - 1], c, p, &mut out);
                }
            }
        }
        out
    }

    /// Tracked echelon form of `d_n`, used to lift chain maps.
    pub(crate) fn solver(&self, n: usize) -> Result<&Echelon> {
        if let Some(e) = self.solvers[n].get() {
            return Ok(e);
        }
        let (echelon, _) = self.eliminate(n)?;
        Ok(self.solvers[n].get_or_init(|| echelon))
    }

    /// Solves `d_n(x) = b`.
    pub(crate) fn lift(&self, n: usize, b: &[u8]) -> Result<Option<Vec<u8>>> {
        Ok(self.solver(n)?.solve(b))
    }

    /// Cheap per-degree checks: generator images are cycles and lie in the
    /// radical.
    fn check_degree(&self, n: usize) -> Result<()> {
        let order = self.group.order();
        for v in &self.images[n] {
            if block_augmentation(v, order, self.prime).iter().any(|&c| c != 0) {
                return Err(Error::Internal(format!("d_{n} is not minimal")));
            }
            if n >= 2 && self.apply_boundary(n - 1, v).iter().any(|&c| c != 0) {
                return Err(Error::Internal(format!("d_{} d_{n} is not zero", n - 1)));
            }
        }
        Ok(())
    }

    /// Full verification: `d d = 0`, minimality and exactness in every
    /// degree where both sides are known.
    pub fn verify(&self) -> Result<()> {
        let order = self.group.order();
        for n in 1..=self.max_degree() {
            self.check_degree(n)?;
            let rank_n = self.boundary(n).echelon().rank();
            let kernel_prev = if n == 1 {
                order - 1
            } else {
                order * self.ranks[n - 1] - self.boundary(n - 1).echelon().rank()
            };
            if rank_n != kernel_prev {
                return Err(Error::Internal(format!("resolution is not exact at degree {}", n - 1)));
            }
        }
        Ok(())
    }
}
