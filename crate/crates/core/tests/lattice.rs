mod common;

use proptest::prelude::*;
use qlat::lattice::{
    count_antichains, dim2, dim2_lower_bound, enumerate_upsets, is_embedding, upset_close, Poset,
    SubsetMask,
};

proptest! {
    #[test]
    fn upset_close_is_upward_closed(n in 0usize..=6, gens in proptest::collection::vec(any::<u64>(), 0..6)) {
        let masks: Vec<SubsetMask> = gens
            .iter()
            .map(|&g| SubsetMask::new(g & ((1u64 << n) - 1), n).unwrap())
            .collect();
        let u = upset_close(&masks, n).unwrap();
        for t in 0..1u64 << n {
            if u.contains(t) {
                for t2 in 0..1u64 << n {
                    if t & !t2 == 0 {
                        prop_assert!(u.contains(t2));
                    }
                }
            }
        }
        for g in &masks {
            prop_assert!(u.contains(g.bits()));
        }
    }

    #[test]
    fn lex_products_are_posets(a in 0usize..3, b in 0usize..3, m in 0usize..=2) {
        let left = match a { 0 => Poset::chain(3), 1 => Poset::antichain(2), _ => Poset::boolean_lattice(1) };
        let right = match b { 0 => Poset::boolean_lattice(m), 1 => Poset::chain(m + 1), _ => Poset::antichain(m + 1) };
        let prod = left.lex_product(&right);
        let n = prod.size();
        let mut leq = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                leq.push(prod.leq(x, y));
            }
        }
        prop_assert!(Poset::from_matrix(n, leq).is_ok());
    }
}

#[test]
fn enumerated_upsets_match_filter_oracle() {
    for n in 0..=3usize {
        let cells = 1u64 << n;
        let mut oracle = Vec::new();
        for family in 0u64..1 << cells {
            let closed = (0..cells).all(|t| {
                family >> t & 1 == 0 || (0..cells).all(|t2| t & !t2 != 0 || family >> t2 & 1 == 1)
            });
            if closed {
                oracle.push(family);
            }
        }
        let mut got: Vec<u64> = enumerate_upsets(n).unwrap().iter().map(|u| u.family_bits()).collect();
        let len = got.len();
        got.sort_unstable();
        got.dedup();
        assert_eq!(got.len(), len, "duplicates at n = {n}");
        assert_eq!(got, oracle);
    }
}

#[test]
fn antichain_counts_match_enumeration() {
    for n in 0..=5 {
        assert_eq!(
            count_antichains(n).unwrap(),
            (enumerate_upsets(n).unwrap().len() as u64).into()
        );
    }
    let dedekind = [2u64, 3, 6, 20, 168, 7581, 7828354, 2414682040998];
    for (n, &d) in dedekind.iter().enumerate() {
        assert_eq!(count_antichains(n).unwrap(), d.into());
    }
}

#[test]
fn dim2_respects_lower_bounds() {
    for size in 1..=4 {
        for p in common::all_posets(size) {
            let d = dim2(&p).unwrap();
            let log = (usize::BITS - (p.size() - 1).leading_zeros()) as usize;
            assert!(d >= log);
            assert!(d + 1 >= p.height());
            assert!(d >= dim2_lower_bound(&p));
        }
    }
}

#[test]
fn identity_is_an_embedding() {
    for n in 0..=5 {
        let images: Vec<SubsetMask> = (0..1u64 << n).map(|s| SubsetMask::new(s, n).unwrap()).collect();
        assert!(is_embedding(&Poset::boolean_lattice(n), &images));
    }
}
