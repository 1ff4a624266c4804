//! Dense integer polynomials, integer matrices, characteristic polynomials
//! by two independent algorithms, and complete small-degree irreducibility
//! and factorization over the integers.
//!
//! Coefficients are arbitrary-precision throughout; verdicts carry
//! certificates (a witness prime or an explicit factor), never estimates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ffpoly::FFPoly;
use crate::primes::divisors_u64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntPolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor must be monic")]
    NonMonicDivisor,
    #[error("polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("entry ({0},{1}) breaks the lower Hessenberg shape")]
    NotHessenberg(usize, usize),
    #[error("complete factorization is limited to degree <= 4, got {0}")]
    DegreeTooLarge(usize),
    #[error("constant term too large for the bounded factor search")]
    FactorSearchOverflow,
    #[error("cannot parse {0:?} as {1}")]
    Parse(String, &'static str),
}

/// Integer polynomial, coefficients ascending by degree.  Canonical form has
/// no trailing zero; the zero polynomial is the empty sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn x() -> Self {
        IntPoly { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// X^d.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &BigInt) -> IntPoly {
        if s.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Multiply by X^k.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Quotient and remainder for a monic divisor.
    pub fn div_rem(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly), IntPolyError> {
        if divisor.is_zero() {
            return Err(IntPolyError::DivisionByZero);
        }
        if !divisor.is_monic() {
            return Err(IntPolyError::NonMonicDivisor);
        }
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[top], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            let shift = top - d;
            for (i, dc) in divisor.coeffs.iter().take(d).enumerate() {
                let t = dc * &c;
                rem[shift + i] -= t;
            }
            quot[shift] = c;
        }
        rem.truncate(d);
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Ascending decimal coefficients separated by single spaces; "0" is the
/// zero polynomial.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for IntPoly {
    type Err = IntPolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut coeffs = Vec::new();
        for tok in s.split_whitespace() {
            let c = BigInt::from_str(tok)
                .map_err(|_| IntPolyError::Parse(s.to_string(), "IntPoly"))?;
            coeffs.push(c);
        }
        if coeffs.is_empty() {
            return Err(IntPolyError::Parse(s.to_string(), "IntPoly"));
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        assert_eq!(entries.len(), n * n, "entry count must be n*n");
        IntMatrix { n, entries }
    }

    pub fn from_i64s(n: usize, entries: &[i64]) -> Self {
        Self::new(n, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Fraction-free determinant (Bareiss), exact.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        bareiss(&mut m)
    }
}

fn bareiss(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev; // exact by the Bareiss identity
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = std::mem::take(&mut m[n - 1][n - 1]);
    if negate {
        -d
    } else {
        d
    }
}

/// Row-major decimal entries; rows separated by ';'.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let row: Vec<String> =
                    (0..self.n).map(|j| self.get(i, j).to_string()).collect();
                row.join(" ")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for IntMatrix {
    type Err = IntPolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || IntPolyError::Parse(s.to_string(), "IntMatrix");
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for row in s.split(';') {
            let entries: Result<Vec<BigInt>, _> =
                row.split_whitespace().map(BigInt::from_str).collect();
            rows.push(entries.map_err(|_| err())?);
        }
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(err());
        }
        Ok(IntMatrix::new(n, rows.into_iter().flatten().collect()))
    }
}

/// det(X·I − A) by evaluation at X = 0, 1, …, n and exact interpolation.
pub fn charpoly_interp(a: &IntMatrix) -> IntPoly {
    let n = a.n();
    let values: Vec<BigInt> = (0..=n)
        .map(|x| {
            let x = BigInt::from(x);
            let mut m: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                &x - a.get(i, j)
                            } else {
                                -a.get(i, j)
                            }
                        })
                        .collect()
                })
                .collect();
            bareiss(&mut m)
        })
        .collect();
    let poly = interpolate_at_small_nodes(&values);
    assert_eq!(poly.degree(), Some(n), "characteristic polynomial degree");
    assert!(poly.is_monic(), "characteristic polynomial must be monic");
    poly
}

/// Interpolate through (i, values[i]) for i = 0..values.len(); the result
/// must have integer coefficients.  Works in integers throughout: with
/// N(X) = ∏(X − i), n!·p(X) = Σ values[i]·(−1)^{n−i}·C(n,i)·N(X)/(X − i).
fn interpolate_at_small_nodes(values: &[BigInt]) -> IntPoly {
    let n = values.len() - 1;
    let mut master = vec![BigInt::one()]; // ∏ (X − i), ascending
    for i in 0..=n {
        let i = BigInt::from(i);
        let mut next = vec![BigInt::zero(); master.len() + 1];
        for (d, c) in master.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= &i * c;
        }
        master = next;
    }
    let mut binom = BigInt::one(); // C(n, i), updated multiplicatively
    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, y) in values.iter().enumerate() {
        let quot = divide_out_root(&master, &BigInt::from(i));
        let mut w = y * &binom;
        if (n - i) % 2 == 1 {
            w = -w;
        }
        for (d, c) in quot.iter().enumerate() {
            acc[d] += &w * c;
        }
        if i < n {
            binom = binom * BigInt::from(n - i) / BigInt::from(i + 1);
        }
    }
    let mut fact = BigInt::one();
    for i in 2..=n {
        fact *= BigInt::from(i);
    }
    let coeffs = acc
        .into_iter()
        .map(|c| {
            debug_assert!((&c % &fact).is_zero(), "interpolation must be integral");
            c / &fact
        })
        .collect();
    IntPoly::from_coeffs(coeffs)
}

/// Synthetic division by (X − root); the remainder must vanish.
fn divide_out_root(poly: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let deg = poly.len() - 1;
    let mut quot = vec![BigInt::zero(); deg];
    let mut carry = poly[deg].clone();
    for d in (0..deg).rev() {
        quot[d] = carry.clone();
        carry = &poly[d] + root * &carry;
    }
    debug_assert!(carry.is_zero(), "node is not a root");
    quot
}

/// det(X·I − B) for lower Hessenberg B via the leading-principal-minor
/// recurrence.  With D_0 = 1 and s_j = ∏ superdiagonal entries b_{i,i+1},
/// D_r = (X − b_{r,r})·D_{r−1} − Σ_{c<r} b_{r,c}·s_{c..r}·D_{c}.
pub fn charpoly_hessenberg(b: &IntMatrix) -> Result<IntPoly, IntPolyError> {
    let n = b.n();
    for i in 0..n {
        for j in i + 2..n {
            if !b.get(i, j).is_zero() {
                return Err(IntPolyError::NotHessenberg(i, j));
            }
        }
    }
    let mut minors: Vec<IntPoly> = Vec::with_capacity(n + 1);
    minors.push(IntPoly::one());
    for r in 0..n {
        let linear = IntPoly::from_coeffs(vec![-b.get(r, r), BigInt::one()]);
        let mut d = &linear * &minors[r];
        let mut super_prod = BigInt::one();
        for c in (0..r).rev() {
            super_prod *= b.get(c, c + 1);
            let w = b.get(r, c) * &super_prod;
            if !w.is_zero() {
                d = &d - &minors[c].scale(&w);
            }
        }
        minors.push(d);
    }
    Ok(minors.pop().unwrap())
}

/// Every coefficient of a monic factor of f is bounded by 2^{deg f}·Σ|f_i|.
fn mignotte_bound(f: &IntPoly) -> BigInt {
    let sum: BigInt = f.coeffs().iter().map(|c| c.abs()).sum();
    sum << f.degree().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibleWitness {
    /// The reduction mod this prime is irreducible over F_p.
    Prime(u64),
    /// The complete bounded factor search found nothing.
    ExhaustedFactorSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    Irreducible(IrreducibleWitness),
    /// Carries a nontrivial monic factor.
    Reducible(IntPoly),
    Inconclusive,
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Irreducible(_))
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Reducible(_))
    }

    pub fn status_str(&self) -> &'static str {
        match self {
            IrreducibilityVerdict::Irreducible(_) => "irreducible",
            IrreducibilityVerdict::Reducible(_) => "reducible",
            IrreducibilityVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IrreduciblePolicy {
    /// Witness primes, tried in order.
    pub primes: Vec<u64>,
    /// Cap on factor-search candidates before giving up.
    pub search_budget: u64,
}

impl Default for IrreduciblePolicy {
    fn default() -> Self {
        IrreduciblePolicy { primes: vec![2, 3, 5, 7, 11, 13], search_budget: 1_000_000 }
    }
}

/// Irreducibility over the integers for monic f.
///
/// Order of attack: constant term zero, then modular certificates, then (for
/// degree ≤ 5) a complete bounded factor search.  Degree ≥ 6 without a
/// modular certificate is Inconclusive by design.
pub fn irreducible_over_z(
    f: &IntPoly,
    policy: &IrreduciblePolicy,
) -> Result<IrreducibilityVerdict, IntPolyError> {
    if !f.is_monic() || f.degree() == Some(0) {
        return Err(IntPolyError::NotMonic);
    }
    let deg = f.degree().unwrap();
    if deg >= 2 && f.coeff(0).is_zero() {
        return Ok(IrreducibilityVerdict::Reducible(IntPoly::x()));
    }
    for &p in &policy.primes {
        let fp = FFPoly::from_intpoly(f, p).expect("policy primes are prime");
        if fp.degree() == Some(deg) && fp.is_irreducible().expect("monic reduction") {
            return Ok(IrreducibilityVerdict::Irreducible(IrreducibleWitness::Prime(p)));
        }
    }
    if deg > 5 {
        return Ok(IrreducibilityVerdict::Inconclusive);
    }
    let mut budget = policy.search_budget;
    if let Some(root) = find_integer_root(f, &mut budget)? {
        let factor = IntPoly::from_coeffs(vec![-root, BigInt::one()]);
        return Ok(IrreducibilityVerdict::Reducible(factor));
    }
    let quad = match deg {
        4 => quartic_quadratic_split(f, &mut budget)?.map(|(q, _)| q),
        5 => quintic_quadratic_factor(f, &mut budget)?,
        _ => None,
    };
    if let Some(q) = quad {
        return Ok(IrreducibilityVerdict::Reducible(q));
    }
    if budget == 0 {
        return Ok(IrreducibilityVerdict::Inconclusive);
    }
    Ok(IrreducibilityVerdict::Irreducible(IrreducibleWitness::ExhaustedFactorSearch))
}

/// Candidate divisors of |c| as signed values, deterministic order
/// (ascending magnitude, positive first).
fn signed_divisors(c: &BigInt, budget: &mut u64) -> Result<Vec<BigInt>, IntPolyError> {
    let m = c.abs().to_u64().ok_or(IntPolyError::FactorSearchOverflow)?;
    debug_assert!(m > 0);
    let mut out = Vec::new();
    for d in divisors_u64(m) {
        if *budget < 2 {
            *budget = 0;
            break;
        }
        *budget -= 2;
        out.push(BigInt::from(d));
        out.push(-BigInt::from(d));
    }
    Ok(out)
}

/// Smallest-magnitude integer root of monic f with nonzero constant term,
/// positive before negative.
fn find_integer_root(f: &IntPoly, budget: &mut u64) -> Result<Option<BigInt>, IntPolyError> {
    debug_assert!(!f.coeff(0).is_zero());
    for r in signed_divisors(&f.coeff(0), budget)? {
        if f.eval(&r).is_zero() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Split monic quartic f (known to have no integer root) into two monic
/// quadratics if possible.  Candidates: b runs over divisors of the constant
/// term within the Mignotte bound; the partner coefficients are forced.
fn quartic_quadratic_split(
    f: &IntPoly,
    budget: &mut u64,
) -> Result<Option<(IntPoly, IntPoly)>, IntPolyError> {
    debug_assert_eq!(f.degree(), Some(4));
    let (f3, f2, f1, f0) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let bound = mignotte_bound(f);
    for b in signed_divisors(&f0, budget)? {
        if b.abs() > bound {
            continue;
        }
        let d = &f0 / &b;
        if b != d {
            // f1 = a·d + b·c with c = f3 − a forces a.
            let num = &f1 - &b * &f3;
            let den = &d - &b;
            if (&num % &den).is_zero() {
                let a = num / den;
                if a.abs() <= bound {
                    let c = &f3 - &a;
                    if &b + &d + &a * &c == f2 {
                        let q1 = IntPoly::from_coeffs(vec![b, a, BigInt::one()]);
                        let q2 = IntPoly::from_coeffs(vec![d, c, BigInt::one()]);
                        debug_assert_eq!(&(&q1 * &q2), f);
                        return Ok(Some((q1, q2)));
                    }
                }
            }
        } else {
            // b = d: f1 = b·(a + c) pins a + c; a·c comes from f2.
            if f1 != &b * &f3 {
                continue;
            }
            let disc = &f3 * &f3 - BigInt::from(4) * (&f2 - BigInt::from(2) * &b);
            if let Some(s) = exact_sqrt(&disc) {
                let two = BigInt::from(2);
                if ((&f3 + &s) % &two).is_zero() {
                    let a = (&f3 + &s) / &two;
                    let c = &f3 - &a;
                    if a.abs() <= bound {
                        let q1 = IntPoly::from_coeffs(vec![b.clone(), a, BigInt::one()]);
                        let q2 = IntPoly::from_coeffs(vec![d, c, BigInt::one()]);
                        debug_assert_eq!(&(&q1 * &q2), f);
                        return Ok(Some((q1, q2)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Monic quadratic factor of a monic quintic with no integer root, if any.
/// For each divisor b of the constant term, matching X²+aX+b against f
/// forces a to be a root of an explicit integer cubic.
fn quintic_quadratic_factor(
    f: &IntPoly,
    budget: &mut u64,
) -> Result<Option<IntPoly>, IntPolyError> {
    debug_assert_eq!(f.degree(), Some(5));
    let (f4, f3, f2, f1, f0) =
        (f.coeff(4), f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let bound = mignotte_bound(f);
    for b in signed_divisors(&f0, budget)? {
        if b.abs() > bound {
            continue;
        }
        let e = &f0 / &b;
        // a³ − f4·a² + (f3 − 2b)·a + (e + b·f4 − f2) = 0
        let g1 = &f3 - BigInt::from(2) * &b;
        let g0 = &e + &b * &f4 - &f2;
        let mut cands: Vec<BigInt> = Vec::new();
        if g0.is_zero() {
            cands.push(BigInt::zero());
            // remaining quadratic a² − f4·a + g1 = 0
            let disc = &f4 * &f4 - BigInt::from(4) * &g1;
            if let Some(s) = exact_sqrt(&disc) {
                let two = BigInt::from(2);
                if ((&f4 + &s) % &two).is_zero() {
                    cands.push((&f4 + &s) / &two);
                    cands.push((&f4 - &s) / &two);
                }
            }
        } else {
            cands = signed_divisors(&g0, budget)?;
        }
        cands.sort();
        cands.dedup();
        for a in cands {
            if a.abs() > bound {
                continue;
            }
            let holds = {
                let cubic = (&a * &a * &a) - &f4 * &a * &a + &g1 * &a + &g0;
                cubic.is_zero()
            };
            if !holds {
                continue;
            }
            let c = &f4 - &a;
            let d = &f3 - &b - &a * &c;
            if &a * &e + &b * &d == f1 {
                let q = IntPoly::from_coeffs(vec![b.clone(), a, BigInt::one()]);
                debug_assert!(f.div_rem(&q).unwrap().1.is_zero());
                return Ok(Some(q));
            }
        }
    }
    Ok(None)
}

/// Exact integer square root, if the argument is a perfect square.
fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let s = x.sqrt();
    if &(&s * &s) == x {
        Some(s)
    } else {
        None
    }
}

/// Complete factorization of a monic polynomial of degree ≤ 4 into monic
/// irreducible factors with multiplicity, sorted by degree then
/// coefficients.
pub fn factor_over_z_smalldeg(f: &IntPoly) -> Result<Vec<IntPoly>, IntPolyError> {
    if !f.is_monic() {
        return Err(IntPolyError::NotMonic);
    }
    let deg = f.degree().unwrap();
    if deg > 4 {
        return Err(IntPolyError::DegreeTooLarge(deg));
    }
    let mut rest = f.clone();
    let mut factors: Vec<IntPoly> = Vec::new();
    let mut budget = IrreduciblePolicy::default().search_budget;
    loop {
        match rest.degree() {
            None | Some(0) => break,
            Some(1) => {
                factors.push(rest);
                break;
            }
            _ => {}
        }
        if rest.coeff(0).is_zero() {
            factors.push(IntPoly::x());
            rest = rest.div_rem(&IntPoly::x()).unwrap().0;
            continue;
        }
        if let Some(r) = find_integer_root(&rest, &mut budget)? {
            let lin = IntPoly::from_coeffs(vec![-r, BigInt::one()]);
            rest = rest.div_rem(&lin).unwrap().0;
            factors.push(lin);
            continue;
        }
        // No linear factor remains; only a 2+2 split of a quartic is left.
        if rest.degree() == Some(4) {
            if let Some((q1, q2)) = quartic_quadratic_split(&rest, &mut budget)? {
                factors.push(q1);
                factors.push(q2);
            } else {
                factors.push(rest);
            }
        } else {
            factors.push(rest);
        }
        break;
    }
    factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(factors)
}
