use std::collections::BTreeSet;

use ellhyp_core::lattice::{binomial, box_iter, simplex_exact, simplex_le, Domain, MultiIndex};
use proptest::prelude::*;

fn collect(it: impl Iterator<Item = MultiIndex>) -> Vec<MultiIndex> {
    it.collect()
}

#[test]
fn documented_counts() {
    assert_eq!(collect(simplex_exact(3, 4)).len(), 15);
    assert_eq!(collect(simplex_le(3, 3)).len(), 20);
    assert_eq!(collect(box_iter(&MultiIndex::new(vec![2, 1, 2]))).len(), 18);
    assert_eq!(collect(box_iter(&MultiIndex::new(vec![0, 0, 0]))), vec![MultiIndex::zeros(3)]);
    let two: Vec<Vec<usize>> = simplex_exact(2, 2).map(|y| y.entries().to_vec()).collect();
    assert_eq!(two, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
}

proptest! {
    #[test]
    fn exact_layers_make_up_the_solid_simplex(n in 1usize..=4, total in 0usize..=5) {
        let layers: BTreeSet<MultiIndex> = (0..=total).flat_map(|k| simplex_exact(n, k)).collect();
        let solid: BTreeSet<MultiIndex> = simplex_le(n, total).collect();
        prop_assert_eq!(layers, solid);
    }

    #[test]
    fn exact_simplex_is_distinct_sorted_and_counted(n in 1usize..=4, total in 0usize..=6) {
        let v = collect(simplex_exact(n, total));
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(v.iter().all(|y| y.len() == n && y.weight() == total));
        prop_assert_eq!(v.len(), binomial(total + n - 1, n - 1));
        prop_assert_eq!(v.len(), Domain::SimplexExact { n, total }.count());
    }

    #[test]
    fn solid_simplex_is_distinct_and_counted(n in 1usize..=4, total in 0usize..=6) {
        let v = collect(simplex_le(n, total));
        let set: BTreeSet<_> = v.iter().cloned().collect();
        prop_assert_eq!(set.len(), v.len());
        prop_assert!(v.iter().all(|y| y.weight() <= total));
        prop_assert_eq!(v.len(), binomial(total + n, n));
    }

    #[test]
    fn box_is_distinct_bounded_and_counted(m in prop::collection::vec(0usize..=3, 1..=4)) {
        let bounds = MultiIndex::new(m.clone());
        let v = collect(box_iter(&bounds));
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(v.iter().all(|y| y.iter().zip(&m).all(|(a, b)| a <= b)));
        prop_assert_eq!(v.len(), m.iter().map(|k| k + 1).product::<usize>());
        prop_assert_eq!(v.len(), Domain::Box(bounds).count());
    }
}
