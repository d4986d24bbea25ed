use proptest::prelude::*;
use proptest::sample::Index;

use walled_brauer::blocks::{balanced_subs, is_balanced, minimal_balanced_weight};
use walled_brauer::cell::CellLabel;
use walled_brauer::diagram::WalledDiagram;
use walled_brauer::geometry::{
    dot_reflect, same_w_orbit, same_wp_orbit, swap_vector, to_weight, GeometryContext, Weight,
};
use walled_brauer::Bipartition;

fn label(r: usize, s: usize, ix: &Index) -> Bipartition {
    let all = CellLabel::all(r, s);
    all[ix.index(all.len())].bip.clone()
}

fn signed_index(r: usize, s: usize, k: usize) -> i64 {
    let k = k % (r + s);
    if k < r {
        k as i64 - r as i64
    } else {
        (k - r) as i64 + 1
    }
}

/// Dominant weights of `X_{r,s}`: non-positive, weakly decreasing left block
/// and non-negative, weakly decreasing right block.
fn dominant() -> impl Strategy<Value = Weight> {
    (0..=4usize, 0..=4usize).prop_flat_map(|(r, s)| {
        (prop::collection::vec(0..6i64, r), prop::collection::vec(0..6i64, s)).prop_map(move |(mut l, mut rt)| {
            l.sort_unstable();
            rt.sort_unstable_by(|a, b| b.cmp(a));
            Weight::new(r, s, l.into_iter().map(|x| -x).chain(rt).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn weight_round_trip(w in dominant()) {
        prop_assert!(w.is_dominant());
        let bp = w.to_bipartition().unwrap();
        let ctx = GeometryContext::new(w.r, w.s, 0, 0).unwrap();
        prop_assert_eq!(to_weight(&bp, &ctx).unwrap(), w);
    }

    #[test]
    fn balanced_is_reflexive_and_symmetric(
        r in 0..=4usize, s in 0..=4usize, a in any::<Index>(), b in any::<Index>(),
        delta in -6..=6i64, p in prop::sample::select(vec![0u64, 5, 7]),
    ) {
        let (x, y) = (label(r, s, &a), label(r, s, &b));
        prop_assert!(is_balanced(&x, &x, delta, p));
        prop_assert_eq!(is_balanced(&x, &y, delta, p), is_balanced(&y, &x, delta, p));
    }

    #[test]
    fn dot_reflections_preserve_degree_and_square_to_one(
        w in dominant(), i in any::<usize>(), j in any::<usize>(), k in -3..=3i64,
        delta in -4..=4i64, p in prop::sample::select(vec![0u64, 2, 3, 5]),
    ) {
        prop_assume!(w.r + w.s >= 2);
        let (i, j) = (signed_index(w.r, w.s, i), signed_index(w.r, w.s, j));
        prop_assume!(i != j);
        let ctx = GeometryContext::new(w.r, w.s, delta, p).unwrap();
        let shift = k * p as i64;
        let v = dot_reflect(&w, i, j, shift, &ctx).unwrap();
        prop_assert_eq!(v.degree(), w.degree());
        prop_assert_eq!(dot_reflect(&v, i, j, shift, &ctx).unwrap(), w.clone());
        if p == 0 {
            prop_assert!(same_w_orbit(&w, &v, &ctx).unwrap());
        } else {
            prop_assert!(same_wp_orbit(&w, &v, &ctx).unwrap());
        }
    }

    #[test]
    fn swap_vectors_sum_to_zero(perm in (1..=8usize).prop_flat_map(|n| (0..=n, Just((0..n).collect::<Vec<_>>()).prop_shuffle()))) {
        let (r, sigma) = perm;
        let s = sigma.len() - r;
        let pairs: Vec<(i64, i64)> = sigma
            .iter()
            .enumerate()
            .map(|(k, &v)| (signed_index(r, s, k), signed_index(r, s, v)))
            .collect();
        prop_assert_eq!(swap_vector(&pairs).iter().sum::<i64>(), 0);
    }

    #[test]
    fn minimal_weight_is_idempotent_and_monotone(
        r in 0..=4usize, s in 0..=4usize, a in any::<Index>(), delta in -4..=4i64,
    ) {
        let lam = label(r, s, &a);
        let m = minimal_balanced_weight(&lam, delta, 0).unwrap();
        prop_assert!(m.is_sub_of(&lam));
        prop_assert!(is_balanced(&m, &lam, delta, 0));
        prop_assert_eq!(minimal_balanced_weight(&m, delta, 0).unwrap(), m.clone());
        for sub in balanced_subs(&lam, delta, 0) {
            let below = minimal_balanced_weight(&sub, delta, 0).unwrap();
            prop_assert_eq!(&below, &m);
        }
    }

    #[test]
    fn random_products_are_associative(r in 0..=3usize, s in 0..=3usize, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = [0; 3].map(|_| WalledDiagram::random(r, s, &mut rng));
        let (l1, ab) = a.multiply(&b).unwrap();
        let (l2, left) = ab.multiply(&c).unwrap();
        let (l3, bc) = b.multiply(&c).unwrap();
        let (l4, right) = a.multiply(&bc).unwrap();
        prop_assert_eq!(l1 + l2, l3 + l4);
        prop_assert_eq!(left, right);
    }
}

#[test]
fn balanced_is_transitive_in_characteristic_zero() {
    for r in 0..=4 {
        for s in 0..=4 {
            let labels: Vec<Bipartition> = CellLabel::all(r, s).into_iter().map(|l| l.bip).collect();
            for delta in -6..=6 {
                let rel: Vec<Vec<bool>> = labels
                    .iter()
                    .map(|x| labels.iter().map(|y| is_balanced(x, y, delta, 0)).collect())
                    .collect();
                let n = labels.len();
                for i in 0..n {
                    for j in 0..n {
                        if !rel[i][j] {
                            continue;
                        }
                        for k in 0..n {
                            assert!(!rel[j][k] || rel[i][k], "{} {} {} at δ={delta}", labels[i], labels[j], labels[k]);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn associativity_on_fixed_samples() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(500);
    for total in 0..=5 {
        for r in 0..=total {
            let s = total - r;
            for _ in 0..500 {
                let [a, b, c] = [0; 3].map(|_| WalledDiagram::random(r, s, &mut rng));
                let (l1, ab) = a.multiply(&b).unwrap();
                let (l2, left) = ab.multiply(&c).unwrap();
                let (l3, bc) = b.multiply(&c).unwrap();
                let (l4, right) = a.multiply(&bc).unwrap();
                assert_eq!((l1 + l2, &left), (l3 + l4, &right), "({r},{s})");
            }
        }
    }
}

fn shifted_contexts(r: usize, s: usize, delta: i64, p: u64) -> Vec<GeometryContext> {
    let bound = p as i64 * (r + s + 2) as i64 + 3;
    (-bound..=bound)
        .filter(|d| (d - delta).rem_euclid(p as i64) == 0)
        .map(|d| GeometryContext::new(r, s, d, 0).unwrap())
        .collect()
}

/// A finite `W` orbit at any `δ' ≡ δ (mod p)` lies inside the `W_p` orbit at `δ`.
#[test]
fn shifted_finite_orbits_lie_in_affine_orbits() {
    let mut linked = 0;
    for total in 0..=4 {
        for r in 0..=total {
            let s = total - r;
            for p in [2u64, 3, 5] {
                for delta in -3..=3i64 {
                    let ctx = GeometryContext::new(r, s, delta, p).unwrap();
                    let shifted = shifted_contexts(r, s, delta, p);
                    let weights: Vec<Weight> =
                        CellLabel::all(r, s).iter().map(|l| to_weight(&l.bip, &ctx).unwrap()).collect();
                    for a in &weights {
                        for b in &weights {
                            if shifted.iter().any(|c| same_w_orbit(a, b, c).unwrap()) {
                                linked += 1;
                                assert!(same_wp_orbit(a, b, &ctx).unwrap(), "{a} {b} δ={delta} p={p}");
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(linked > 0);
}

/// The converse fails: `W_p` also translates inside one side of the wall,
/// which no change of `δ` reproduces.
#[test]
fn affine_orbits_exceed_shifted_finite_orbits() {
    let (r, s, p) = (0, 2, 2);
    for delta in -3..=3i64 {
        let ctx = GeometryContext::new(r, s, delta, p).unwrap();
        let a = to_weight(&Bipartition::from_parts(vec![], vec![2]).unwrap(), &ctx).unwrap();
        let b = to_weight(&Bipartition::from_parts(vec![], vec![1, 1]).unwrap(), &ctx).unwrap();
        assert!(same_wp_orbit(&a, &b, &ctx).unwrap());
        assert!(shifted_contexts(r, s, delta, p).iter().all(|c| !same_w_orbit(&a, &b, c).unwrap()));
    }
}
