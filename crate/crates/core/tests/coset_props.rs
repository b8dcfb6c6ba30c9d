use std::collections::HashSet;

use lattangle::algebra::{int, rat, RootOfUnity};
use lattangle::angles::{eliminant, AngleConfig, CaseId};
use lattangle::coset::{coset_family_test, gamma_decompose, order_mod, short_vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimal norm over the cube `|w_i| ≤ M`.
fn cube_minimum(v: &[i64; 3], m: i64) -> i64 {
    let mults: HashSet<[i64; 3]> = (0..m).map(|k| v.map(|c| (k * c).rem_euclid(m))).collect();
    let mut best = i64::MAX;
    for a in -m..=m {
        for b in -m..=m {
            for c in -m..=m {
                let w = [a, b, c];
                if w == [0, 0, 0] || !mults.contains(&w.map(|x| x.rem_euclid(m))) {
                    continue;
                }
                best = best.min(a * a + b * b + c * c);
            }
        }
    }
    best
}

#[test]
fn short_vector_is_minimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in 2..=50i64 {
        let v = loop {
            let v = [rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m)];
            if order_mod(&v, m as u64) > 1 {
                break v;
            }
        };
        let s = short_vector(&v, m as u64).unwrap();
        assert_eq!(s.norm2, cube_minimum(&v, m), "v={v:?} M={m}");
        let ord = order_mod(&v, m as u64) as i64;
        if ord == m {
            assert!(s.hermite_ok, "v={v:?} M={m}");
        }
    }
}

#[test]
fn family_witnesses_specialise() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let base = AngleConfig::new(CaseId::C4, vec![int(4), int(2)], [RootOfUnity::of(1, 9), RootOfUnity::of(11, 18), RootOfUnity::of(2, 9)]).unwrap();
    let w = coset_family_test(&base, &[1, 1, 2]).unwrap().expect("4-tuple family");
    let y = RootOfUnity::of(1, 5);
    let base2 = AngleConfig::unchecked(CaseId::C222, vec![int(2), rat(1, 3), rat(-1, 3), int(-2)], [RootOfUnity::minus_one(), y, y]);
    let w2 = coset_family_test(&base2, &[0, 1, 1]).unwrap().expect("right-angle family");
    for _ in 0..50 {
        let t = RootOfUnity::of(rng.gen_range(0..60), 60);
        for fw in [&w, &w2] {
            let mut cfg = fw.base.clone();
            for k in 0..3 {
                cfg.roots[k] = cfg.roots[k].mul(&t.pow(fw.w[k]));
            }
            assert!(eliminant(&cfg).unwrap().is_zero());
        }
    }
}

#[test]
fn gamma_regrouping() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases = [CaseId::C4, CaseId::C32, CaseId::C222];
    for _ in 0..60 {
        let case = cases[rng.gen_range(0..3)];
        let params = (0..case.num_params()).map(|_| rat(rng.gen_range(-9..10), rng.gen_range(1..4))).collect();
        let n = [12u64, 18, 20, 36, 45][rng.gen_range(0..5)];
        let roots = [0, 1, 2].map(|_| RootOfUnity::of(rng.gen_range(1..n as i64), n));
        let cfg = AngleConfig::unchecked(case, params, roots);
        let order = cfg.common_order();
        for (p, m) in lattangle::algebra::arith::factorize(order) {
            let g = gamma_decompose(&cfg, p, m).unwrap();
            let e = eliminant(&cfg).unwrap();
            // the regrouped sum is the eliminant divided by xyz
            let xyz = cfg.roots.iter().fold(RootOfUnity::one(), |a, r| a.mul(r)).to_cyclo();
            assert_eq!(&g.regrouped().lift(order).unwrap() * &xyz, e.lift(order).unwrap(), "{cfg:?} p={p}");
        }
    }
}
