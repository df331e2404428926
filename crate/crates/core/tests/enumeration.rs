use std::collections::BTreeSet;

use proptest::prelude::*;
use redwords::enumeration::{
    enumerate_avoiders, partition_count, partition_of_perm, partitions, pi_of_partition, reading_word, support_size,
    table_132, Partition,
};
use redwords::Permutation;

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn first_letter_counts_parts() {
    for l in 0..=10 {
        for lambda in partitions(l) {
            let w = pi_of_partition(&lambda);
            if l > 0 {
                assert_eq!(w.at(1), lambda.len() + 1, "{lambda}");
            }
        }
        for k in 1..=l {
            let starting = partitions(l).iter().filter(|x| pi_of_partition(x).at(1) == k + 1).count();
            assert_eq!(starting, partitions(l).iter().filter(|x| x.len() == k).count());
        }
    }
}

#[test]
fn mirror_213_matches_132() {
    for l in 0..=7 {
        let a = enumerate_avoiders(&perm("132"), l, None).unwrap();
        let b = enumerate_avoiders(&perm("213"), l, None).unwrap();
        assert_eq!(a.len(), b.len());
        assert_eq!(a.len() as u128, partition_count(l));
        let rc: BTreeSet<Permutation> = a.iter().map(Permutation::reverse_complement).collect();
        assert_eq!(rc, b);
    }
}

#[test]
fn avoiders_of_123_are_finite() {
    let p = perm("123");
    for l in 0..=6 {
        for w in enumerate_avoiders(&p, l, None).unwrap() {
            assert_eq!(w.length(), l);
        }
    }
    let wider = enumerate_avoiders(&p, 4, Some(8)).unwrap();
    assert_eq!(wider, enumerate_avoiders(&p, 4, None).unwrap());
}

#[test]
fn support_matches_table() {
    let table = table_132(7, 8);
    for l in 0..=7 {
        let avoiders = enumerate_avoiders(&perm("132"), l, None).unwrap();
        for (d, row) in table.iter().enumerate() {
            assert_eq!(avoiders.iter().filter(|w| support_size(w) == d).count() as u128, row[l]);
        }
    }
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..8, 0..8).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

proptest! {
    #[test]
    fn reading_words_are_reduced(lambda in partition()) {
        let s = reading_word(&lambda);
        prop_assert!(s.is_reduced());
        prop_assert_eq!(s.len(), lambda.size());
    }

    #[test]
    fn bijection_round_trips(lambda in partition()) {
        let w = pi_of_partition(&lambda);
        prop_assert_eq!(w.length(), lambda.size());
        prop_assert!(w.rank() <= lambda.size() + 1);
        prop_assert_eq!(partition_of_perm(&w).unwrap(), lambda);
    }
}
