use lattangle::examples::*;
use proptest::prelude::*;

fn combo(m: i64, t: bool) -> ECPoint {
    let g = ECPoint::generator();
    let base = if m < 0 { g.neg() } else { g };
    let mut p = base.multiple(m.unsigned_abs() as usize).unwrap();
    if t {
        p = p.add(&ECPoint::torsion()).unwrap();
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn group_law_is_associative(a in -3i64..=3, ta: bool, b in -3i64..=3, tb: bool, c in -3i64..=3, tc: bool) {
        let (p, q, r) = (combo(a, ta), combo(b, tb), combo(c, tc));
        let left = p.add(&q).unwrap().add(&r).unwrap();
        let right = p.add(&q.add(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(p.add(&p.neg()).unwrap(), ECPoint::Infinity);
    }
}

#[test]
fn multiples_up_to_eight_verify() {
    let sweep = ec_sweep(8).unwrap();
    assert_eq!(sweep.len(), 8);
    for e in &sweep[1..] {
        let r = e.report.as_ref().expect("valid quadruple");
        assert!(r.ok(), "{}G: {:?}", e.multiple, r.checks);
        assert_eq!(phi_invariant(&r.quadruple).unwrap(), phi_buv(&r.quadruple).unwrap());
    }
}

#[test]
fn third_multiple_passes() {
    let g = ECPoint::generator();
    let p3 = g.double().unwrap().add(&g).unwrap();
    assert!(ec_verify(&p3).unwrap().ok());
}
