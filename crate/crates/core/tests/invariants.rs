//! Property tests for the arithmetic kernels and the hull.

use npcert::polygon::{
    lower_hull, np_of_int_poly, np_pointwise_leq, slope_sequence, Rational, ValuedPoint,
};
use npcert::valuations::{factorize, is_prime, vp_binomial, vp_factorial, vp_int, Valuation};
use proptest::prelude::*;

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Carries when adding a and b in base p; by Kummer's theorem this equals
/// v_p(C(a+b, a)) and gives an independent route to the binomial
/// valuation.
fn kummer_carries(mut a: u64, mut b: u64, p: u64) -> u64 {
    let mut carry = 0u64;
    let mut count = 0u64;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        count += carry;
        a /= p;
        b /= p;
    }
    count
}

fn points_strategy() -> impl Strategy<Value = Vec<ValuedPoint>> {
    // Valuations 0..=20 with an occasional infinite interior point
    // (encoded as None).
    prop::collection::vec(prop::option::weighted(0.9, 0u64..=20), 2..=25).prop_map(|vals| {
        let last = vals.len() - 1;
        vals.into_iter()
            .enumerate()
            .map(|(i, v)| ValuedPoint {
                index: i as u64,
                valuation: match v {
                    Some(v) => Valuation::Finite(v),
                    None if i != 0 && i != last => Valuation::Infinite,
                    None => Valuation::Finite(0),
                },
            })
            .collect()
    })
}

fn poly_strategy() -> impl Strategy<Value = Vec<i64>> {
    (
        1i64..=100,
        prop::collection::vec(-100i64..=100, 0..=7),
        1i64..=100,
        prop::bool::ANY,
        prop::bool::ANY,
    )
        .prop_map(|(c0, mid, ck, s0, sk)| {
            let mut poly = vec![if s0 { -c0 } else { c0 }];
            poly.extend(mid);
            poly.push(if sk { -ck } else { ck });
            poly
        })
}

proptest! {
    #[test]
    fn hull_is_sound(points in points_strategy()) {
        let np = lower_hull(&points).unwrap();
        prop_assert_eq!(np.degree() as usize, points.len() - 1);
        for pt in &points {
            if let Some(v) = pt.valuation.finite() {
                prop_assert!(np.value_at(pt.index as i64) <= Rational::integer(v as i64));
            }
        }
        for &(x, y) in np.vertices() {
            prop_assert_eq!(points[x as usize].valuation, Valuation::Finite(y as u64));
        }
        let slopes = slope_sequence(&np).slopes;
        for w in slopes.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn raising_valuations_raises_the_hull(
        points in points_strategy(),
        bumps in prop::collection::vec((0usize..25, 1u64..=5), 0..6)
    ) {
        let np = lower_hull(&points).unwrap();
        let mut raised = points.clone();
        for (at, by) in bumps {
            let at = at % raised.len();
            if let Valuation::Finite(v) = raised[at].valuation {
                // Endpoints must stay finite, which Finite + by preserves.
                raised[at].valuation = Valuation::Finite(v + by);
            }
        }
        let np_raised = lower_hull(&raised).unwrap();
        prop_assert!(np_pointwise_leq(&np, &np_raised).unwrap());
    }

    #[test]
    fn product_merges_slopes(g in poly_strategy(), h in poly_strategy(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let gh = poly_mul(&g, &h);
        let mut merged = slope_sequence(&np_of_int_poly(&g, p).unwrap()).slopes;
        merged.extend(slope_sequence(&np_of_int_poly(&h, p).unwrap()).slopes);
        merged.sort();
        let product = slope_sequence(&np_of_int_poly(&gh, p).unwrap()).slopes;
        prop_assert_eq!(product, merged);
    }

    #[test]
    fn factorization_reassembles(n in 1u64..=1_000_000_000_000) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.reassemble(), n);
        for w in f.pairs().windows(2) {
            prop_assert!(w[0].0 < w[1].0);
        }
        for &(p, _) in f.pairs() {
            prop_assert!(is_prime(p));
        }
        prop_assert_eq!(is_prime(n), f.pairs() == [(n, 1)]);
    }

    #[test]
    fn valuation_is_additive(a in 1u64..=1_000_000, b in 1u64..=1_000_000, p in prop::sample::select(vec![2u64, 3, 5, 7, 13])) {
        prop_assert_eq!(
            vp_int(a * b, p).unwrap(),
            vp_int(a, p).unwrap() + vp_int(b, p).unwrap()
        );
    }

    #[test]
    fn binomial_valuation_counts_carries(k in 0u64..=6000, j_frac in 0.0f64..=1.0, p in prop::sample::select(vec![2u64, 3, 5, 7, 31])) {
        let j = (k as f64 * j_frac) as u64;
        prop_assert_eq!(
            vp_binomial(k, j, p).unwrap(),
            kummer_carries(j, k - j, p)
        );
    }

    #[test]
    fn legendre_matches_digit_sum_form(n in 0u64..=100_000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        // v_p(n!) = (n - s_p(n)) / (p - 1) with s_p the base-p digit sum.
        let mut digits = 0u64;
        let mut q = n;
        while q > 0 {
            digits += q % p;
            q /= p;
        }
        prop_assert_eq!(vp_factorial(n, p).unwrap(), (n - digits) / (p - 1));
    }
}
