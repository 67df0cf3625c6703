//! Constructions of the bundled groups as permutation groups.

use crate::error::{Error, Result};
use crate::group::Permutation;

/// An `n`-cycle on `0..n`.
pub fn cycle(n: usize) -> Permutation {
    Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())
}

/// Generators of a direct product, acting on disjoint blocks of points.
pub fn direct_product_generators(factors: &[Vec<Permutation>]) -> Vec<Permutation> {
    let degree: usize = factors
        .iter()
        .map(|f| f.iter().map(Permutation::degree).max().unwrap_or(1))
        .sum();
    let mut offset = 0;
    let mut out = Vec::new();
    for f in factors {
        let width = f.iter().map(Permutation::degree).max().unwrap_or(1);
        out.extend(f.iter().map(|p| p.extended(width).shifted(offset).extended(degree)));
        offset += width;
    }
    out
}

/// Generators of an abelian group `C_{n_1} x ... x C_{n_k}`.
pub fn abelian_generators(orders: &[usize]) -> Vec<Permutation> {
    let factors: Vec<Vec<Permutation>> = orders.iter().map(|&n| vec![cycle(n)]).collect();
    if factors.is_empty() {
        return vec![Permutation::identity(1)];
    }
    direct_product_generators(&factors)
}

/// Rotation and reflection of a regular `m`-gon: the dihedral group of
/// order `2m`. For `m = 2` this is the Klein four-group.
pub fn dihedral_generators(m: usize) -> Vec<Permutation> {
    if m == 2 {
        return abelian_generators(&[2, 2]);
    }
    vec![
        cycle(m),
        Permutation::from_images((0..m).map(|i| (m - i) % m).collect()),
    ]
}

/// Right regular representation of a group given by a multiplication on
/// `0..order` with `0` the identity, restricted to the listed generators.
fn regular(order: usize, generators: &[usize], mul: impl Fn(usize, usize) -> usize) -> Vec<Permutation> {
    generators
        .iter()
        .map(|&g| Permutation::from_images((0..order).map(|x| mul(x, g)).collect()))
        .collect()
}

/// `⟨a, b | a^m = 1, b^n = a^s, b a b^{-1} = a^r⟩`, elements `a^i b^j`
/// encoded as `j * m + i`. Needs `r^n = 1` and `r s = s` modulo `m`.
pub fn metacyclic_generators(m: usize, n: usize, r: usize, s: usize) -> Result<Vec<Permutation>> {
    let mut rn = 1;
    for _ in 0..n {
        rn = rn * r % m;
    }
    if rn != 1 % m || (r * s) % m != s % m {
        return Err(Error::InvalidInput(format!("inconsistent metacyclic parameters ({m}, {n}, {r}, {s})")));
    }
    let pow_r: Vec<usize> = (0..n)
        .scan(1usize, |acc, _| {
            let v = *acc;
            *acc = *acc * r % m;
            Some(v)
        })
        .collect();
    // b^j a^k = a^{k r^j} b^j, and b^n folds back into a^s
    let mul = |x: usize, y: usize| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        let mut e = i + k * pow_r[j];
        let mut t = j + l;
        if t >= n {
            t -= n;
            e += s;
        }
        t * m + e % m
    };
    Ok(regular(m * n, &[1, m], mul))
}

/// Generalized quaternion group of order `2^l`, `l >= 3`.
pub fn quaternion_generators(l: u32) -> Result<Vec<Permutation>> {
    let m = 1usize << (l - 1);
    metacyclic_generators(m, 2, m - 1, m / 2)
}

/// Semidihedral group of order `2^l`, `l >= 4`.
pub fn semidihedral_generators(l: u32) -> Result<Vec<Permutation>> {
    let m = 1usize << (l - 1);
    metacyclic_generators(m, 2, m / 2 - 1, 0)
}

/// Upper unitriangular 3×3 matrices over F_p, elements `(a, b, c)` encoded
/// as `a + p b + p^2 c` with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
pub fn heisenberg_generators(p: usize) -> Vec<Permutation> {
    let dec = |x: usize| (x % p, (x / p) % p, x / (p * p));
    let mul = |x: usize, y: usize| {
        let (a, b, c) = dec(x);
        let (a2, b2, c2) = dec(y);
        (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p)
    };
    regular(p * p * p, &[1, p], mul)
}

/// `C_2^2 ⋊ C_4` where the generator of `C_4` swaps the two involutions.
/// Elements `(v, k)` encoded as `4 k + v` with `v` a 2-bit vector.
pub fn swap_semidirect_generators() -> Vec<Permutation> {
    let swap = |v: usize| ((v & 1) << 1) | (v >> 1);
    let mul = |x: usize, y: usize| {
        let (v, k) = (x % 4, x / 4);
        let (w, l) = (y % 4, y / 4);
        let w = if k % 2 == 1 { swap(w) } else { w };
        4 * ((k + l) % 4) + (v ^ w)
    };
    regular(16, &[1, 4], mul)
}

/// The central product `C_4 ∘ D_8` realized as the Pauli group
/// `{ i^k X^a Z^b }` with `Z X = -X Z`, encoded as `k + 4 a + 8 b`.
pub fn pauli_generators() -> Vec<Permutation> {
    let dec = |x: usize| (x % 4, (x / 4) % 2, x / 8);
    let mul = |x: usize, y: usize| {
        let (k, a, b) = dec(x);
        let (k2, a2, b2) = dec(y);
        (k + k2 + 2 * b * a2) % 4 + 4 * ((a + a2) % 2) + 8 * ((b + b2) % 2)
    };
    regular(16, &[1, 4, 8], mul)
}

#[cfg(test)]
pub(crate) fn build(generators: Vec<Permutation>, name: &str) -> Result<crate::group::FiniteGroup> {
    crate::group::FiniteGroup::from_permutations(&generators, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_invariants, min_generators};

    #[test]
    fn orders_and_shapes() {
        let q8 = build(quaternion_generators(3).unwrap(), "Q8").unwrap();
        assert_eq!(q8.order(), 8);
        // one involution
        assert_eq!((1..8).filter(|&x| q8.element_order(x) == 2).count(), 1);
        let sd = build(semidihedral_generators(4).unwrap(), "SD16").unwrap();
        assert_eq!(sd.order(), 16);
        assert_eq!(sd.nilpotency_class(), 3);
        let h = build(heisenberg_generators(3), "He3").unwrap();
        assert_eq!((h.order(), h.exponent(), h.nilpotency_class()), (27, 3, 2));
        let g = build(swap_semidirect_generators(), "16.3").unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!((1..16).filter(|&x| g.element_order(x) == 2).count(), 7);
        assert_eq!(g.center().order(), 4);
        let pauli = build(pauli_generators(), "16.13").unwrap();
        assert_eq!(pauli.center().order(), 4);
        assert_eq!(min_generators(&pauli), 3);
        let a = build(abelian_generators(&[2, 4]), "C2xC4").unwrap();
        assert_eq!(abelian_invariants(&a).unwrap(), vec![2, 4]);
        assert!(metacyclic_generators(8, 2, 3, 1).is_err());
    }
}
