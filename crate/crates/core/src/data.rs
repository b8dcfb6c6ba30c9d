//! Transcribed polynomial data, embedded at build time.

use std::collections::BTreeMap;

use once_cell::sync::Lazy;
use sha2::{Digest, Sha256};

use crate::algebra::{parse_poly, MPoly, Rational};
use crate::error::{Error, Result};

pub const C222_TABLE: &str = include_str!("../data/c222_table.txt");
pub const C32: &str = include_str!("../data/c32.txt");
pub const GENUS5: &str = include_str!("../data/genus5.txt");
pub const EC_SYSTEM: &str = include_str!("../data/ec_system.txt");
pub const EXPECT_PAPER: &str = include_str!("../data/expect_paper.json");

/// Variables of the configuration polynomials: parameters first, then roots.
pub const C4_VARS: [&str; 5] = ["a", "b", "x", "y", "z"];
pub const C32_VARS: [&str; 6] = ["a", "b", "c", "x", "y", "z"];
pub const C222_VARS: [&str; 7] = ["a", "b", "c", "d", "x", "y", "z"];
pub const ABCD: [&str; 4] = ["a", "b", "c", "d"];

/// sha256 of every data file, keyed by file name.
pub fn checksums() -> BTreeMap<&'static str, String> {
    [("c222_table.txt", C222_TABLE), ("c32.txt", C32), ("ec_system.txt", EC_SYSTEM), ("expect_paper.json", EXPECT_PAPER), ("genus5.txt", GENUS5)]
        .into_iter()
        .map(|(name, body)| (name, format!("{:x}", Sha256::digest(body.as_bytes()))))
        .collect()
}

fn content_lines(src: &str) -> impl Iterator<Item = &str> {
    src.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// `name = expr` entries of a data file.
pub fn named_polys(src: &str, vars: &[&str]) -> Result<BTreeMap<String, MPoly<Rational>>> {
    content_lines(src)
        .map(|l| {
            let (name, expr) = l.split_once('=').ok_or_else(|| Error::Parse(format!("expected `name = expr`: {l}")))?;
            Ok((name.trim().to_string(), parse_poly(expr, vars)?))
        })
        .collect()
}

fn parse_c222() -> Result<MPoly<Rational>> {
    let mut p = MPoly::zero(&C222_VARS);
    for line in content_lines(C222_TABLE) {
        let (monos, coeff) = line.split_once('|').ok_or_else(|| Error::Parse(format!("table row: {line}")))?;
        let coeff = parse_poly(coeff, &C222_VARS)?;
        for m in monos.split(',') {
            p = p.add(&coeff.mul(&parse_poly(m, &C222_VARS)?));
        }
    }
    Ok(p)
}

pub static C222_POLY: Lazy<MPoly<Rational>> = Lazy::new(|| parse_c222().expect("c222 table parses"));

pub static C32_POLY: Lazy<MPoly<Rational>> =
    Lazy::new(|| parse_poly(&content_lines(C32).collect::<Vec<_>>().join(" "), &C32_VARS).expect("c32 parses"));

pub static C4_POLY: Lazy<MPoly<Rational>> =
    Lazy::new(|| parse_poly("(a - b) x + b y - a z - a x y + b x z + (a - b) y z", &C4_VARS).unwrap());

pub static GENUS5_POLYS: Lazy<(MPoly<Rational>, MPoly<Rational>)> = Lazy::new(|| {
    let m = named_polys(GENUS5, &ABCD).expect("genus5 parses");
    (m["f1"].clone(), m["f2"].clone())
});

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use std::collections::HashMap;

    fn at(p: &MPoly<Rational>, vars: &[&str], vals: &[i64]) -> Rational {
        let m: HashMap<&str, Rational> = vars.iter().copied().zip(vals.iter().map(|&v| int(v))).collect();
        p.eval(&m).unwrap()
    }

    #[test]
    fn transcriptions_vanish_at_the_trivial_point() {
        let (f1, f2) = &*GENUS5_POLYS;
        assert_eq!(at(f1, &ABCD, &[1, 1, 1, 1]), int(0));
        assert_eq!(at(f2, &ABCD, &[1, 1, 1, 1]), int(0));
        // a = b = c = d makes both pair equations identical
        let p = C222_POLY.clone();
        let m: HashMap<&str, MPoly<Rational>> = ABCD.iter().map(|&v| (v, MPoly::constant(&["x", "y", "z"], int(1)))).collect();
        assert!(p.substitute(&["x", "y", "z"], &m).unwrap().is_zero());
        assert_eq!(C222_POLY.num_terms() > 0, true);
    }

    #[test]
    fn table_shape() {
        // 27 monomials of degree at most two in each root
        let p = C222_POLY.collect(&["x", "y", "z"]).unwrap();
        assert_eq!(p.len(), 27);
        assert!(p.keys().all(|e| e.iter().all(|&k| (0..=2).contains(&k))));
    }

    #[test]
    fn checksums_are_stable() {
        let c = checksums();
        assert_eq!(c.len(), 5);
        assert!(c.values().all(|h| h.len() == 64));
    }
}
