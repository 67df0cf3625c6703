//! Finite p-groups given by explicit Cayley tables.
//!
//! Elements are the indices `0..order`, with `0` the identity. Groups are
//! normally built from permutation generators ([`FiniteGroup::from_permutations`]);
//! quotients and other derived groups reuse the same table representation.

mod abelian;
mod hom;
mod perm;
mod series;
mod subgroup;

use std::collections::VecDeque;
use std::fmt;

pub use abelian::{abelian_invariants, frattini_rank, min_generators, minimal_generating_set};
pub use hom::GroupHom;
pub use perm::Permutation;
pub use series::{quotient_chain, series, Functor, NormalSeries, QuotientChain};
pub use subgroup::{agemo_closure, commutator_subgroup, quotient, Subgroup};

use crate::config::DEFAULT_ORDER_CAP;
use crate::error::{Error, Result};

/// A finite group of prime-power order with an explicit multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    prime: Option<u32>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("prime", &self.prime)
            .finish()
    }
}

/// Returns `Some((p, k))` with `n = p^k`, `None` if `n` is not a prime power.
/// `n = 1` yields `Some((1, 0))`.
pub fn prime_power(n: usize) -> Option<(u32, u32)> {
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some((1, 0));
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p as u32, k))
}

impl FiniteGroup {
    /// Builds the group generated by `generators` with the default order cap.
    pub fn from_permutations(generators: &[Permutation], name: &str) -> Result<FiniteGroup> {
        Self::from_permutations_with_cap(generators, name, DEFAULT_ORDER_CAP)
    }

    /// Enumerates the group generated by `generators` breadth first.
    ///
    /// Element `0` is the identity. A new element `x * g_k` is numbered when it
    /// is first discovered, scanning elements in discovery order and
    /// generators in index order, so numbering depends only on the input.
    pub fn from_permutations_with_cap(
        generators: &[Permutation],
        name: &str,
        cap: usize,
    ) -> Result<FiniteGroup> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("no generators given".into()));
        }
        let degree = generators.iter().map(Permutation::degree).max().unwrap_or(0);
        let gens: Vec<Permutation> = generators.iter().map(|g| g.extended(degree)).collect();

        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(identity, 0usize);
        // right[x][k] = x * g_k; parent[y] = (x, k) with y = x * g_k.
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, g) in gens.iter().enumerate() {
                let y = elements[x].then(g);
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        if id >= cap {
                            return Err(Error::OrderCap {
                                order: id + 1,
                                cap,
                            });
                        }
                        index.insert(y.clone(), id);
                        elements.push(y);
                        parent.push((x, k));
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id as u32);
            }
            if right.len() <= x {
                right.resize(x + 1, Vec::new());
            }
            right[x] = row;
        }
        let order = elements.len();
        let (p, _) = prime_power(order).ok_or(Error::NotPrimePower(order))?;
        let prime = (order > 1).then_some(p);

        // Elements are numbered in BFS order, so every parent precedes its child.
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            table[x * order] = x as u32;
            for y in 1..order {
                let (py, k) = parent[y];
                let xpy = table[x * order + py] as usize;
                table[x * order + y] = right[xpy][k];
            }
        }
        let generators = gens
            .iter()
            .map(|g| index[g])
            .filter(|&g| g != 0)
            .collect::<Vec<_>>();
        let mut group = FiniteGroup {
            name: name.to_string(),
            order,
            prime,
            table,
            inverse: Vec::new(),
            generators,
        };
        group.fill_inverses();
        group.dedup_generators();
        Ok(group)
    }

    /// Builds a group from a full Cayley table. Checks identity, inverses,
    /// closure and (for orders up to `DEFAULT_ORDER_CAP`) associativity.
    pub fn from_table(table: Vec<Vec<usize>>, name: &str) -> Result<FiniteGroup> {
        let order = table.len();
        if order == 0 || table.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidInput("Cayley table must be square and nonempty".into()));
        }
        let (p, _) = prime_power(order).ok_or(Error::NotPrimePower(order))?;
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        if flat.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidInput("Cayley table entry out of range".into()));
        }
        let mut group = FiniteGroup {
            name: name.to_string(),
            order,
            prime: (order > 1).then_some(p),
            table: flat,
            inverse: Vec::new(),
            generators: Vec::new(),
        };
        for x in 0..order {
            if group.mul(0, x) != x || group.mul(x, 0) != x {
                return Err(Error::InvalidInput("element 0 is not the identity".into()));
            }
        }
        group.fill_inverses();
        if group.inverse.iter().enumerate().any(|(x, &i)| group.mul(x, i as usize) != 0) {
            return Err(Error::InvalidInput("some element has no inverse".into()));
        }
        if order <= DEFAULT_ORDER_CAP && !group.is_associative() {
            return Err(Error::InvalidInput("multiplication is not associative".into()));
        }
        group.generators = group.greedy_generators();
        Ok(group)
    }

    /// Internal constructor for tables that are correct by construction.
    pub(crate) fn from_parts(
        name: String,
        prime: Option<u32>,
        table: Vec<u32>,
        generators: Vec<usize>,
    ) -> FiniteGroup {
        let order = (table.len() as f64).sqrt().round() as usize;
        debug_assert_eq!(order * order, table.len());
        let mut group = FiniteGroup {
            name,
            order,
            prime,
            table,
            inverse: Vec::new(),
            generators,
        };
        group.fill_inverses();
        group.dedup_generators();
        if group.generators.is_empty() && order > 1 {
            group.generators = group.greedy_generators();
        }
        group
    }

    fn fill_inverses(&mut self) {
        let n = self.order;
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let row = &self.table[x * n..(x + 1) * n];
            inverse[x] = row.iter().position(|&v| v == 0).unwrap_or(0) as u32;
        }
        self.inverse = inverse;
    }

    fn dedup_generators(&mut self) {
        let mut seen = vec![false; self.order];
        self.generators.retain(|&g| {
            let fresh = g != 0 && !seen[g];
            if g < seen.len() {
                seen[g] = true;
            }
            fresh
        });
    }

    /// Generators chosen greedily by element index: an element is added when
    /// it is not in the subgroup generated so far.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = Subgroup::trivial(self);
        for x in 1..self.order {
            if !current.contains(x) {
                gens.push(x);
                current = Subgroup::generated(self, &gens);
                if current.order() == self.order {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FiniteGroup {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The prime `p` with `order = p^k`; `None` for the trivial group.
    pub fn prime(&self) -> Option<u32> {
        self.prime
    }

    pub(crate) fn set_prime(&mut self, p: Option<u32>) {
        self.prime = p;
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// The element indices of the defining generators (identity removed).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    /// Row `x` of the Cayley table: `row(x)[y] = x * y`.
    #[inline]
    pub fn row(&self, x: usize) -> &[u32] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut acc = 0;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^{-1} y^{-1} x y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let a = self.mul(self.inv(x), self.inv(y));
        self.mul(self.mul(a, x), y)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|x| self.element_order(x)).max().unwrap_or(1)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn center(&self) -> Subgroup {
        let members = (0..self.order)
            .filter(|&x| self.generators.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        Subgroup::from_sorted(self, members)
    }

    /// `log_p` of the order (0 for the trivial group).
    pub fn log_order(&self) -> u32 {
        prime_power(self.order).map(|(_, k)| k).unwrap_or(0)
    }

    /// Full Cayley table as nested vectors.
    pub fn cayley(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| self.row(x).iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// The right regular representation of the generators: generator `g`
    /// acts on elements by `x -> x * g`.
    pub fn regular_generators(&self) -> Vec<Permutation> {
        self.generators
            .iter()
            .map(|&g| Permutation::from_images((0..self.order).map(|x| self.mul(x, g)).collect()))
            .collect()
    }

    /// Nilpotency class (length of the lower central series).
    pub fn nilpotency_class(&self) -> usize {
        series(self, Functor::L).map(|s| s.len() - 1).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Permutation {
        Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())
    }

    #[test]
    fn single_involution() {
        let g = FiniteGroup::from_permutations(&[Permutation::from_cycles(2, &[&[1, 2]])], "C2")
            .unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.prime(), Some(2));
    }

    #[test]
    fn dihedral_of_order_eight() {
        // 4-gon rotation and a reflection
        let r = Permutation::from_cycles(4, &[&[1, 2, 3, 4]]);
        let s = Permutation::from_cycles(4, &[&[2, 4]]);
        let g = FiniteGroup::from_permutations(&[r, s], "D8").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.prime(), Some(2));
        assert!(g.is_associative());
        assert!(!g.is_abelian());
        // brute-force closure count: all products of r^i s^j
        let mut seen = std::collections::HashSet::new();
        for x in 0..8 {
            for y in 0..8 {
                seen.insert(g.mul(x, y));
            }
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn identity_permutation_gives_trivial_group() {
        let g = FiniteGroup::from_permutations(&[Permutation::identity(3)], "1").unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_trivial());
        assert!(g.generators().is_empty());
    }

    #[test]
    fn cap_and_prime_power_errors() {
        let err = FiniteGroup::from_permutations_with_cap(&[cycle(16)], "C16", 8).unwrap_err();
        assert!(matches!(err, Error::OrderCap { cap: 8, .. }));
        let err = FiniteGroup::from_permutations(&[cycle(6)], "C6").unwrap_err();
        assert!(matches!(err, Error::NotPrimePower(6)));
    }

    #[test]
    fn table_laws_hold() {
        let g = FiniteGroup::from_permutations(&[cycle(8), cycle(3).extended(8)], "x");
        assert!(g.is_err());
        let g = FiniteGroup::from_permutations(&[cycle(9)], "C9").unwrap();
        for x in 0..9 {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
        assert_eq!(g.prime(), Some(3));
        assert_eq!(g.exponent(), 9);
    }

    #[test]
    fn from_table_rejects_nonassociative() {
        // order 2 loop-like table is fine; break associativity on order 4
        let good = vec![vec![0, 1], vec![1, 0]];
        assert!(FiniteGroup::from_table(good, "C2").is_ok());
        let bad = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 1, 0],
            vec![3, 2, 1, 0],
        ];
        assert!(FiniteGroup::from_table(bad, "bad").is_err());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(1), Some((1, 0)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
    }
}
