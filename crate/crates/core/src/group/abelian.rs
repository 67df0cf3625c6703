use super::{agemo_closure, prime_power, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Rank of the Frattini quotient `G/[G,G]G^p` (minimal number of generators).
pub fn min_generators(g: &FiniteGroup) -> usize {
    if g.is_trivial() {
        return 0;
    }
    let w = Subgroup::whole(g);
    let phi = agemo_closure(g, &w, &w);
    prime_power(g.order() / phi.order()).map_or(0, |(_, k)| k as usize)
}

/// A generating set of minimal size: elements chosen greedily by index,
/// independent modulo the Frattini subgroup.
pub fn minimal_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let w = Subgroup::whole(g);
    let phi = agemo_closure(g, &w, &w);
    let mut seeds: Vec<usize> = phi.members().to_vec();
    let mut current = phi;
    let mut chosen = Vec::new();
    for x in 0..g.order() {
        if current.is_whole() {
            break;
        }
        if !current.contains(x) {
            chosen.push(x);
            seeds.push(x);
            current = Subgroup::generated(g, &seeds);
        }
    }
    chosen
}

/// `dim_{F_p} (A/B) ⊗ F_p` for normal subgroups `B <= A` with `A/B` abelian,
/// computed as the index of `B A^p` in `A`.
pub fn frattini_rank(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> usize {
    let p = g.prime().unwrap_or(1) as u64;
    let mut seeds: Vec<usize> = b.members().to_vec();
    seeds.extend(a.members().iter().map(|&x| g.pow(x, p)));
    let below = Subgroup::generated(g, &seeds);
    prime_power(a.order() / below.order()).map_or(0, |(_, k)| k as usize)
}

/// Invariant factors of an abelian p-group, ascending (`[2, 4, 4, 16]`).
///
/// Counts elements killed by `p^i`: the number of cyclic factors of order at
/// least `p^i` is `log_p |Ω_i| - log_p |Ω_{i-1}|`.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<Vec<u64>> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian(g.name().to_string()));
    }
    let Some(p) = g.prime() else {
        return Ok(Vec::new());
    };
    let p = p as u64;
    let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let exp = *orders.iter().max().unwrap_or(&1);
    let log = |n: usize| prime_power(n).map_or(0, |(_, k)| k as usize);
    let mut at_least = Vec::new(); // at_least[i-1] = #factors of order >= p^i
    let mut prev = 1usize;
    let mut pi = 1usize;
    while pi < exp {
        pi *= p as usize;
        let omega = orders.iter().filter(|&&o| pi % o == 0).count();
        at_least.push(log(omega) - log(prev));
        prev = omega;
    }
    let mut inv = Vec::new();
    for i in 0..at_least.len() {
        let exactly = at_least[i] - at_least.get(i + 1).copied().unwrap_or(0);
        inv.extend(std::iter::repeat(p.pow(i as u32 + 1)).take(exactly));
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Permutation;

    fn abelian(orders: &[usize]) -> FiniteGroup {
        let mut offset = 0;
        let gens: Vec<Permutation> = orders
            .iter()
            .map(|&n| {
                let c = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).shifted(offset);
                offset += n;
                c
            })
            .collect();
        FiniteGroup::from_permutations_with_cap(&gens, "A", 4096).unwrap()
    }

    fn frattini_brute(g: &FiniteGroup) -> usize {
        // G/Φ(G): Φ generated by all commutators and p-th powers
        let p = g.prime().unwrap() as u64;
        let mut seeds = Vec::new();
        for x in 0..g.order() {
            seeds.push(g.pow(x, p));
            for y in 0..g.order() {
                seeds.push(g.commutator(x, y));
            }
        }
        let phi = Subgroup::generated(g, &seeds);
        prime_power(g.order() / phi.order()).unwrap().1 as usize
    }

    #[test]
    fn min_generator_examples() {
        let t = FiniteGroup::from_permutations(&[Permutation::identity(1)], "1").unwrap();
        assert_eq!(min_generators(&t), 0);
        let g = abelian(&[2, 4]);
        assert_eq!(min_generators(&g), 2);
        assert_eq!(frattini_brute(&g), 2);
        let r = Permutation::from_cycles(4, &[&[1, 2, 3, 4]]);
        let s = Permutation::from_cycles(4, &[&[2, 4]]);
        let d8 = FiniteGroup::from_permutations(&[r, s], "D8").unwrap();
        assert_eq!(min_generators(&d8), 2);
        assert_eq!(frattini_brute(&d8), 2);
        let gens = minimal_generating_set(&d8);
        assert_eq!(gens.len(), 2);
        assert!(Subgroup::generated(&d8, &gens).is_whole());
        assert!(minimal_generating_set(&t).is_empty());
    }

    #[test]
    fn abelian_invariant_examples() {
        assert_eq!(abelian_invariants(&abelian(&[2, 4, 4, 16])).unwrap(), vec![2, 4, 4, 16]);
        assert_eq!(abelian_invariants(&abelian(&[2, 2, 2])).unwrap(), vec![2, 2, 2]);
        assert_eq!(abelian_invariants(&abelian(&[9, 3])).unwrap(), vec![3, 9]);
        let t = FiniteGroup::from_permutations(&[Permutation::identity(1)], "1").unwrap();
        assert_eq!(abelian_invariants(&t).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn non_abelian_is_rejected() {
        let r = Permutation::from_cycles(4, &[&[1, 2, 3, 4]]);
        let s = Permutation::from_cycles(4, &[&[2, 4]]);
        let d8 = FiniteGroup::from_permutations(&[r, s], "D8").unwrap();
        assert!(matches!(abelian_invariants(&d8), Err(Error::NotAbelian(_))));
    }
}
