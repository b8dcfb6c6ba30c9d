//! Linear algebra over ℚ, and the ℚ-linear questions about cyclotomic elements
//! (ranks, rational ratios, minimal polynomials) that reduce to it.

use num_traits::{One, Zero};

use super::arith::lcm;
use super::cyclo::{check_order, Cyclo};
use super::rational::Rational;
use crate::error::Result;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    rref(&mut m.to_vec()).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Matrix {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `a x = b`: a particular solution and a basis of the homogeneous solutions.
pub fn solve_affine(a: &[Vec<Rational>], b: &[Rational]) -> Option<(Vec<Rational>, Matrix)> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some((x, nullspace(a, cols)))
}

/// Lifts elements to a common order and returns their coordinate vectors.
pub fn coordinate_rows(xs: &[Cyclo]) -> Result<(u64, Matrix)> {
    let n = xs.iter().fold(1, |acc, x| lcm(acc, x.order()));
    check_order(n)?;
    let rows = xs.iter().map(|x| x.lift(n).map(|y| y.coords())).collect::<Result<Vec<_>>>()?;
    Ok((n, rows))
}

/// Dimension of the ℚ-span of the given elements.
pub fn q_rank(xs: &[Cyclo]) -> Result<usize> {
    Ok(rank(&coordinate_rows(xs)?.1))
}

/// Whether the elements are ℚ-linearly dependent.
pub fn q_dependent(xs: &[Cyclo]) -> Result<bool> {
    Ok(q_rank(xs)? < xs.len())
}

/// Outcome of asking whether `u / v` is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatioOutcome {
    /// `u = ρ v`.
    Ratio(Rational),
    /// `v ≠ 0` and `u / v ∉ ℚ`, or `v = 0 ≠ u`.
    None,
    /// `u = v = 0`.
    Indeterminate,
}

/// Decides whether `u = ρ v` for some rational `ρ`.
pub fn rational_ratio(u: &Cyclo, v: &Cyclo) -> RatioOutcome {
    match (u.is_zero(), v.is_zero()) {
        (true, true) => return RatioOutcome::Indeterminate,
        (false, true) => return RatioOutcome::None,
        _ => {}
    }
    let (_, rows) = coordinate_rows(&[u.clone(), v.clone()]).expect("orders within cap");
    let k = rows[1].iter().position(|c| !c.is_zero()).unwrap();
    let rho = &rows[0][k] / &rows[1][k];
    if rows[0].iter().zip(&rows[1]).all(|(a, b)| *a == &rho * b) {
        RatioOutcome::Ratio(rho)
    } else {
        RatioOutcome::None
    }
}

/// Monic minimal polynomial over ℚ, lowest degree first.
pub fn min_poly(x: &Cyclo) -> Vec<Rational> {
    let n = x.order();
    let mut powers: Matrix = vec![Cyclo::one().lift(n).unwrap().coords()];
    let mut cur = Cyclo::one();
    loop {
        cur = &cur * x;
        let target = cur.lift(n).unwrap().coords();
        // columns are the previous powers; solve Σ c_i x^i = x^d
        let d = powers.len();
        let a: Matrix = (0..target.len()).map(|r| (0..d).map(|c| powers[c][r].clone()).collect()).collect();
        if let Some((c, _)) = solve_affine(&a, &target) {
            let mut poly: Vec<Rational> = c.into_iter().map(|v| -v).collect();
            poly.push(Rational::one());
            return poly;
        }
        powers.push(target);
    }
}

/// Evaluates a polynomial with rational coefficients (lowest degree first) at `x`.
pub fn eval_poly(p: &[Rational], x: &Cyclo) -> Cyclo {
    p.iter().rev().fold(Cyclo::zero(), |acc, c| &(&acc * x) + &Cyclo::from_rational(c))
}
