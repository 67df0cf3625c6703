//! Brute-force group theory on Cayley tables, independent of the library's
//! subgroup and series code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use pgph::group::FiniteGroup;

/// Subgroup generated by `seeds`, by closing under multiplication.
pub fn closure(g: &FiniteGroup, seeds: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    let mut frontier: Vec<usize> = seeds.into_iter().collect();
    let gens = frontier.clone();
    while let Some(x) = frontier.pop() {
        if set.insert(x) {
            for &s in &gens {
                frontier.push(g.mul(x, s));
            }
        }
    }
    set
}

pub fn commutator(g: &FiniteGroup, x: usize, y: usize) -> usize {
    let xi = (0..g.order()).find(|&z| g.mul(x, z) == 0).unwrap();
    let yi = (0..g.order()).find(|&z| g.mul(y, z) == 0).unwrap();
    g.mul(g.mul(xi, yi), g.mul(x, y))
}

/// `[A, G]`.
pub fn commutator_with_group(g: &FiniteGroup, a: &BTreeSet<usize>) -> BTreeSet<usize> {
    let seeds: Vec<usize> = a
        .iter()
        .flat_map(|&x| (0..g.order()).map(move |y| (x, y)))
        .map(|(x, y)| commutator(g, x, y))
        .collect();
    closure(g, seeds)
}

fn power(g: &FiniteGroup, x: usize, e: usize) -> usize {
    (0..e).fold(0, |acc, _| g.mul(acc, x))
}

pub fn prime_of(order: usize) -> usize {
    (2..=order).find(|d| order % d == 0).unwrap_or(1)
}

/// `log_p |G / [G,G] G^p|`, the minimal number of generators.
pub fn generator_rank(g: &FiniteGroup) -> usize {
    if g.order() == 1 {
        return 0;
    }
    let p = prime_of(g.order());
    let all: BTreeSet<usize> = (0..g.order()).collect();
    let mut seeds: Vec<usize> = commutator_with_group(g, &all).into_iter().collect();
    seeds.extend((0..g.order()).map(|x| power(g, x, p)));
    let frattini = closure(g, seeds);
    let mut index = g.order() / frattini.len();
    let mut d = 0;
    while index > 1 {
        index /= p;
        d += 1;
    }
    d
}

/// Length of the lower central series.
pub fn class(g: &FiniteGroup) -> usize {
    let mut term: BTreeSet<usize> = (0..g.order()).collect();
    let mut c = 0;
    while term.len() > 1 {
        term = commutator_with_group(g, &term);
        c += 1;
    }
    c
}

/// Partitions of `k` into parts, largest first.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=k.min(max)).rev() {
            prefix.push(part);
            go(k - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// `p_{i,k} <= p_{i,j}` and `p_{i,k} <= p_{j,k}` for `i <= j <= k`, on raw
/// zero-based rows.
pub fn monotone(m: &[Vec<usize>]) -> bool {
    let n = m.len();
    (0..n).all(|i| (i..n).all(|j| (j..n).all(|k| m[i][k] <= m[i][j] && m[i][k] <= m[j][k])))
}
