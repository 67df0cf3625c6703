mod common;

use pgph::catalog::abelian_entry;
use pgph::group::Functor;
use pgph::persistence::{barcode, matrix_from_barcode, persistence_sequence, recover_abelian_invariants, Bar, Barcode};
use pgph::Budget;
use proptest::prelude::*;
use proptest::sample::select;

use common::monotone;

fn random_barcode() -> impl Strategy<Value = Barcode> {
    (1usize..7)
        .prop_flat_map(|n| {
            let bar = (1..=n, 0..n, 1usize..4).prop_map(move |(b, len, m)| (b, (b + len).min(n), m));
            (Just(n), prop::collection::vec(bar, 0..6))
        })
        .prop_map(|(n, raw)| {
            let mut merged = std::collections::BTreeMap::new();
            for (b, d, m) in raw {
                *merged.entry((b, d)).or_insert(0) += m;
            }
            Barcode {
                group: "random".into(),
                functor: Functor::L,
                degree: 1,
                columns: n,
                bars: merged
                    .into_iter()
                    .map(|((birth, death), multiplicity)| Bar { birth, death, multiplicity })
                    .collect(),
            }
        })
}

/// Exponent partitions of `k`, largest first.
fn partition(max_k: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=3, 1..=max_k).prop_filter_map("too large", move |mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        (parts.iter().sum::<u32>() as usize <= max_k).then_some(parts)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn barcode_and_matrix_determine_each_other(b in random_barcode()) {
        let m = matrix_from_barcode(&b);
        prop_assert!(monotone(&m.matrix));
        prop_assert!(m.is_monotone());
        prop_assert_eq!(barcode(&m).unwrap(), b.clone());
        prop_assert_eq!(m.diagonal().iter().sum::<usize>(), (1..=b.columns)
            .map(|c| b.bars.iter().filter(|x| x.birth <= c && c <= x.death).map(|x| x.multiplicity).sum::<usize>())
            .sum::<usize>());
    }

    #[test]
    fn abelian_upper_p_central_diagonal(parts in partition(6), p in select(vec![2usize, 3])) {
        prop_assume!(p == 2 || parts.iter().sum::<u32>() <= 4);
        let orders: Vec<usize> = parts.iter().map(|&e| p.pow(e)).collect();
        let e = abelian_entry(&orders);
        let seq = persistence_sequence(&e.group, Functor::Zp, 2, Budget::default()).unwrap();
        let p1 = &seq.matrices[0];
        // column t is G / Ω_{t-1}, whose rank counts the factors of order at least p^t
        let want: Vec<usize> = (1..=parts[0]).map(|t| parts.iter().filter(|&&x| x >= t).count()).collect();
        prop_assert_eq!(p1.diagonal(), want);
        let mut sorted: Vec<u64> = orders.iter().map(|&o| o as u64).collect();
        sorted.sort_unstable();
        prop_assert_eq!(recover_abelian_invariants(p1, seq.matrices.get(1), p as u64).unwrap(), sorted);
    }
}
