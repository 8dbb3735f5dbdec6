use decmatch_core::graph::{CollapsedMatching, Pair};
use decmatch_core::sparsifier::{level_of, sample_without_replacement, Sparsifier};
use decmatch_core::seed;
use proptest::prelude::*;

/// Random collapsed matching on `n` vertices with vertex loads at most 1.
fn fractional(n: usize, raw: &[(usize, usize, f64)]) -> CollapsedMatching {
    let mut load = vec![0.0; n];
    let mut y = CollapsedMatching::default();
    for &(u, v, x) in raw {
        let (u, v) = (u % n, v % n);
        if u == v || y.values.contains_key(&Pair::new(u, v)) {
            continue;
        }
        let x = x.min(1.0 - load[u]).min(1.0 - load[v]);
        if x > 0.0 {
            load[u] += x;
            load[v] += x;
            y.values.insert(Pair::new(u, v), x);
        }
    }
    y
}

#[test]
fn level_examples() {
    assert_eq!(level_of(0.1, 0.5), 6);
    assert_eq!(level_of(0.05, 0.5), 8);
    assert_eq!(level_of(1.5f64.powi(-6), 0.5), 6);
}

#[test]
fn low_levels_keep_everything() {
    let mut y = CollapsedMatching::default();
    for i in 0..10 {
        y.values.insert(Pair::new(2 * i, 2 * i + 1), 0.3);
    }
    let s = Sparsifier::new(&y, 20, 0.5, 50.0, 1);
    assert_eq!(s.kernel().len(), 10);
}

#[test]
fn tiny_values_sample_three_ceil_d() {
    let eps = 0.3f64;
    let mut y = CollapsedMatching::default();
    y.values.insert(Pair::new(0, 1), eps.powi(6));
    let s = Sparsifier::new(&y, 100, eps, 121.6, 3);
    let i = s.level_of_pair(Pair::new(0, 1)).unwrap();
    assert_eq!(s.sample_size(i), 3 * 122);
    assert_eq!(s.sampled(i).unwrap().len(), 3 * 122);
}

#[test]
fn delete_everything_empties_kernel() {
    let mut y = CollapsedMatching::default();
    for u in 0..12 {
        for v in u + 1..12 {
            y.values.insert(Pair::new(u, v), 1.0 / 12.0);
        }
    }
    let mut s = Sparsifier::new(&y, 12, 0.3, 4.0, 9);
    let budget = 64.0 * (12f64).log2();
    for p in s.pairs() {
        let before = s.kernel().contains(&p);
        let d = s.delete(p).unwrap();
        assert_eq!(d.was_in, before);
        assert!(!s.kernel().contains(&p));
        assert!(s.last_update_ops() as f64 <= budget);
    }
    assert!(s.kernel().is_empty() && s.is_empty());
    assert!(s.delete(Pair::new(0, 1)).is_err());
}

#[test]
fn decrease_rules() {
    let mut y = CollapsedMatching::default();
    y.values.insert(Pair::new(0, 1), 0.1);
    let mut s = Sparsifier::new(&y, 20, 0.5, 100.0, 4);
    let p = Pair::new(0, 1);
    assert!(s.decrease(p, 0.2).is_err());
    s.decrease(p, 0.095).unwrap();
    assert_eq!(s.level_of_pair(p), Some(6));
    s.decrease(p, 0.05).unwrap();
    assert_eq!(s.level_of_pair(p), Some(8));
    s.decrease(p, 0.0).unwrap();
    assert!(!s.tracks(p) && s.kernel().is_empty());
}

proptest! {
    #[test]
    fn floyd_sample_is_a_uniform_subset_shape(p in 1u64..200, k in 0u64..220, s in any::<u64>()) {
        let got = sample_without_replacement(p, k, &mut seed::rng(s));
        prop_assert_eq!(got.len() as u64, k.min(p));
        prop_assert!(got.iter().all(|&c| c < p));
    }

    #[test]
    fn coloring_stays_proper_under_updates(
        n in 4usize..24,
        raw in prop::collection::vec((0usize..24, 0usize..24, 0.0f64..0.4), 1..80),
        ops in prop::collection::vec((0usize..1000, 0.0f64..1.0, any::<bool>()), 0..60),
        eps in prop::sample::select(vec![0.1, 0.3, 0.5]),
        s in any::<u64>(),
    ) {
        let y = fractional(n, &raw);
        let mut sp = Sparsifier::new(&y, n, eps, 6.0, s);
        prop_assert!(sp.coloring_is_proper());
        for (idx, f, del) in ops {
            let pairs = sp.pairs();
            if pairs.is_empty() {
                break;
            }
            let p = pairs[idx % pairs.len()];
            if del {
                sp.delete(p).unwrap();
            } else {
                let v = sp.value(p).unwrap() * f;
                sp.decrease(p, v).unwrap();
            }
            prop_assert!(sp.coloring_is_proper());
            prop_assert!(sp.kernel().iter().all(|q| sp.tracks(*q)));
        }
        let (a, b) = (Sparsifier::new(&y, n, eps, 6.0, s), Sparsifier::new(&y, n, eps, 6.0, s));
        prop_assert_eq!(a.kernel(), b.kernel());
    }
}
