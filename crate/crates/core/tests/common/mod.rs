//! Independent oracles for cross-checking the library's fast paths.
#![allow(dead_code)]

use charbound_core::ffpoly::FFPoly;
use charbound_core::intpoly::{IntMatrix, IntPoly};
use num_bigint::BigInt;
use num_traits::Zero;

/// det(X·I − A) by Laplace expansion over polynomial entries.  Exponential
/// in n; for use as an oracle only.
pub fn naive_charpoly(a: &IntMatrix) -> IntPoly {
    let n = a.n();
    let x = IntPoly::x();
    let mut m: Vec<Vec<IntPoly>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = -&IntPoly::constant(a.get(i, j).clone());
            if i == j {
                e = &e + &x;
            }
            row.push(e);
        }
        m.push(row);
    }
    poly_det(&m)
}

fn poly_det(m: &[Vec<IntPoly>]) -> IntPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = IntPoly::zero();
    for (j, pivot) in m[0].iter().enumerate() {
        if pivot.degree().is_none() {
            continue;
        }
        let minor: Vec<Vec<IntPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = pivot * &poly_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// All monic polynomials of degree d over F_p, as a digit sweep.
pub fn monic_polys(p: u64, d: usize) -> Vec<FFPoly> {
    let count = (p as u128).pow(d as u32);
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let mut c = idx;
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push((c % p as u128) as u64);
            c /= p as u128;
        }
        coeffs.push(1);
        out.push(FFPoly::new(p, coeffs).unwrap());
    }
    out
}

/// Irreducibility by trial division against every monic divisor of degree
/// at most n/2.
pub fn ff_irreducible_trial(f: &FFPoly) -> bool {
    let n = match f.degree() {
        Some(n) => n,
        None => return false,
    };
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        for g in monic_polys(f.modulus(), d) {
            if f.rem(&g).unwrap().degree().is_none() {
                return false;
            }
        }
    }
    true
}

/// Perfect-square test over the integers.
pub fn is_perfect_square(x: &BigInt) -> bool {
    if x < &BigInt::zero() {
        return false;
    }
    let s = x.sqrt();
    &s * &s == *x
}
