use lattangle::algebra::{rat, Rational, RootOfUnity};
use lattangle::surface::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[test]
fn resultant_matches_sylvester_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let v: [Rational; 4] = std::array::from_fn(|_| rat(rng.gen_range(-30..=30), rng.gen_range(1..=9)));
        let (e, s) = resultant_at(v);
        assert_eq!(e, s);
    }
}

#[test]
fn scaling_identity_order_twelve() {
    let bad: Vec<_> = triples_dividing(12)
        .into_par_iter()
        .filter(|t| !estar_check(&t[0], &t[1], &t[2]).unwrap().scaling_identity)
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn defined_over_q_routes_agree_order_twelve() {
    let bad: Vec<_> = triples_dividing(12)
        .into_par_iter()
        .map(|t| defined_over_q(&t[0], &t[1], &t[2]).unwrap())
        .filter(|d| !d.agree())
        .collect();
    assert!(bad.is_empty(), "{:?}", bad.iter().take(5).collect::<Vec<_>>());
}

#[test]
fn defined_over_q_routes_agree_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut triples = Vec::new();
    while triples.len() < 100 {
        let n: u64 = rng.gen_range(2..=40);
        let t: [RootOfUnity; 3] = std::array::from_fn(|_| RootOfUnity::of(rng.gen_range(1..n as i64), n));
        if t.iter().all(|r| !r.is_one()) {
            triples.push(t);
        }
    }
    let bad: Vec<_> = triples
        .into_par_iter()
        .map(|t| defined_over_q(&t[0], &t[1], &t[2]).unwrap())
        .filter(|d| !d.agree())
        .collect();
    assert!(bad.is_empty(), "{:?}", bad.iter().take(5).collect::<Vec<_>>());
}
