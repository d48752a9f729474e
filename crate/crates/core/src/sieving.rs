//! Cyclic sieving checks: exact evaluation at roots of unity and comparison
//! with fixed-point counts read off an orbit census.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::dynamics::OrbitCensus;
use crate::error::{Error, Result};
use crate::qpoly::{factorial_i128, q_binomial, q_int, QPolynomial};

/// The cyclotomic polynomial `Φ_m`.
pub fn cyclotomic(m: usize) -> QPolynomial {
    assert!(m >= 1);
    let mut p = &QPolynomial::monomial(1, m) - &QPolynomial::one();
    for e in 1..m {
        if m.is_multiple_of(e) {
            p = p.div_exact(&cyclotomic(e)).expect("cyclotomic factors divide q^m - 1");
        }
    }
    p
}

/// `P(e^{2πik/ω})`, computed exactly in `Z[q]/Φ_m` where `m` is the order of
/// the root. Errors if the value is not a rational integer.
pub fn eval_at_root(p: &QPolynomial, k: i64, omega: u64) -> Result<i128> {
    let w = omega as i64;
    let k_red = k.rem_euclid(w);
    let g = k_red.gcd(&w);
    let m = (w / g) as usize;
    if m == 1 {
        return Ok(p.eval_at_one());
    }
    // e^{2πik/ω} = ξ^{k'} with ξ a primitive m-th root and k' = k/g coprime to m
    let k_prime = (k_red / g) as usize;
    let mut folded = vec![0i128; m];
    for (e, &a) in p.coeffs().iter().enumerate() {
        folded[(k_prime * e) % m] += a;
    }
    let (_, rem) = QPolynomial::new(folded).div_rem(&cyclotomic(m))?;
    match rem.degree() {
        None => Ok(0),
        Some(0) => Ok(rem.coeffs()[0]),
        Some(_) => Err(Error::NonIntegral { k: k_red as u64, omega }),
    }
}

/// Floating-point evaluation `(re, im)`, used only as a cross-check.
pub fn eval_at_root_float(p: &QPolynomial, k: i64, omega: u64) -> (f64, f64) {
    let w = omega as i64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (e, &a) in p.coeffs().iter().enumerate() {
        let r = ((k.rem_euclid(w) as i128 * e as i128) % w as i128) as f64;
        let angle = std::f64::consts::TAU * r / omega as f64;
        re += a as f64 * angle.cos();
        im += a as f64 * angle.sin();
    }
    (re, im)
}

/// True iff the exact and floating evaluations agree within `1e-6` for every `k`.
pub fn evaluations_consistent(p: &QPolynomial, omega: u64) -> bool {
    (0..omega as i64).all(|k| {
        let (re, im) = eval_at_root_float(p, k, omega);
        match eval_at_root(p, k, omega) {
            Ok(v) => (re - v as f64).abs() < 1e-6 && im.abs() < 1e-6,
            Err(_) => (re - re.round()).abs() > 1e-6 || im.abs() > 1e-6,
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CspRow {
    pub k: u64,
    pub fixed_from_census: u64,
    pub poly_value: Option<i128>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CspReport {
    pub omega: u64,
    pub rows: Vec<CspRow>,
    /// `(1/ω) Σ_k P(ζ^k)` equals the number of orbits.
    pub burnside: bool,
    pub passed: bool,
}

impl CspReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CspRow> {
        self.rows.iter().filter(|r| !r.matches)
    }
}

/// Compare `#Fix(f^k)` from the census with `P(e^{2πik/ω})` for `k = 0..ω-1`.
pub fn csp_verify<T>(census: &OrbitCensus<T>, p: &QPolynomial) -> CspReport {
    let omega = u64::try_from(census.order).expect("order small enough for a sieving check");
    let rows: Vec<CspRow> = (0..omega)
        .map(|k| {
            let fixed = census.fixed_points(k);
            let value = eval_at_root(p, k as i64, omega).ok();
            CspRow { k, fixed_from_census: fixed, poly_value: value, matches: value == Some(fixed as i128) }
        })
        .collect();
    let sum: Option<i128> = rows.iter().map(|r| r.poly_value).sum();
    let burnside = sum.is_some_and(|s| s == omega as i128 * census.orbit_count() as i128);
    let passed = burnside && rows.iter().all(|r| r.matches);
    CspReport { omega, rows, burnside, passed }
}

/// Given a sieving triple for `f`, predict the orbit sizes
/// `{(N k_i)^{χ m_i}}` of `g` and its polynomial `χ [N]_{q^ω} F(q)`.
pub fn csp_compose<T>(
    census_f: &OrbitCensus<T>,
    f_poly: &QPolynomial,
    big_n: u64,
    chi: Ratio<i64>,
) -> Result<(BTreeMap<u64, u64>, QPolynomial)> {
    let mut predicted = BTreeMap::new();
    for (&k, &m) in &census_f.sizes {
        let mult = chi * m as i64;
        if !mult.is_integer() || mult <= Ratio::from_integer(0) {
            return Err(Error::FractionalMultiplicity);
        }
        predicted.insert(big_n * k, mult.to_integer() as u64);
    }
    let omega = usize::try_from(census_f.order).map_err(|_| Error::OutOfRange("order too large".into()))?;
    let poly = (&q_int(big_n as usize).substitute_power(omega) * f_poly)
        .scale(*chi.numer() as i128)
        .div_scalar_exact(*chi.denom() as i128)?;
    Ok((predicted, poly))
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if d == 0 || d >= n {
        return Err(Error::OutOfRange(format!("need 1 <= d <= n-1, got d = {d}, n = {n}")));
    }
    Ok(())
}

/// `(d-1)!(n-d-1)! [n-d]_{q^d} [n-1 choose d-1]_q`.
fn core_poly(n: usize, d: usize) -> Result<QPolynomial> {
    check_nd(n, d)?;
    let scalar = factorial_i128(d - 1) * factorial_i128(n - d - 1);
    Ok((&q_int(n - d).substitute_power(d) * &q_binomial(n - 1, d - 1)?).scale(scalar))
}

/// Sieving polynomial for `TPro_β` on `Path_n` with `d` counterclockwise edges.
pub fn main_poly(n: usize, d: usize) -> Result<QPolynomial> {
    Ok(core_poly(n, d)?.scale(n as i128))
}

/// Sieving polynomial for `cyc ∘ Bro_{{1..d}}`.
pub fn broken_interval_poly(n: usize, d: usize) -> Result<QPolynomial> {
    Ok(&q_int(n).substitute_power(n - d) * &core_poly(n, d)?)
}

/// Sieving polynomial for `cyc ∘ Bro_ℛ` with the canonical `ℛ`.
pub fn broken_r_poly(n: usize, d: usize) -> Result<QPolynomial> {
    Ok(&q_int(n).substitute_power(d) * &core_poly(n, d)?)
}

/// `[n-1 choose d-1]_q`, the sieving polynomial for rotation of compositions.
pub fn rot_poly(n: usize, d: usize) -> Result<QPolynomial> {
    if d == 0 || d > n {
        return Err(Error::OutOfRange(format!("need 1 <= d <= n, got d = {d}, n = {n}")));
    }
    q_binomial(n - 1, d - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic(2).coeffs(), &[1, 1]);
        assert_eq!(cyclotomic(3).coeffs(), &[1, 1, 1]);
        assert_eq!(cyclotomic(4).coeffs(), &[1, 0, 1]);
        assert_eq!(cyclotomic(6).coeffs(), &[1, -1, 1]);
        assert_eq!(cyclotomic(12).coeffs(), &[1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_evaluations() {
        for n in 2..12u64 {
            let p = q_int(n as usize);
            assert_eq!(eval_at_root(&p, 0, n).unwrap(), n as i128);
            assert_eq!(eval_at_root(&p, n as i64, n).unwrap(), n as i128);
            for k in 1..n as i64 {
                assert_eq!(eval_at_root(&p, k, n).unwrap(), 0);
            }
        }
        // 1 + q at a primitive cube root is -ζ^2, not rational
        assert!(eval_at_root(&q_int(2), 1, 3).is_err());
    }

    #[test]
    fn main_poly_at_one_is_factorial() {
        for n in 2..=9 {
            for d in 1..n {
                assert_eq!(main_poly(n, d).unwrap().eval_at_one(), factorial_i128(n));
            }
        }
    }

    #[test]
    fn toric_reduction() {
        for n in 3..=8 {
            let expect = q_int(n - 1).scale(n as i128 * factorial_i128(n - 2));
            assert_eq!(main_poly(n, 1).unwrap(), expect);
        }
    }

    #[test]
    fn float_and_exact_agree() {
        for n in 3..=7 {
            for d in 1..n {
                let omega = (d * (n - d)) as u64;
                assert!(evaluations_consistent(&main_poly(n, d).unwrap(), omega));
            }
        }
    }

    #[test]
    fn compose_identity() {
        let c = OrbitCensus::<()>::from_orbits(4, None, vec![(1, ()), (2, ()), (2, ())]);
        let f = QPolynomial::new(vec![3, 2]);
        let (pred, poly) = csp_compose(&c, &f, 1, Ratio::from_integer(1)).unwrap();
        assert_eq!(pred, c.sizes);
        assert_eq!(poly, f);
        assert_eq!(csp_compose(&c, &f, 2, Ratio::new(1, 2)).unwrap_err(), Error::FractionalMultiplicity);
    }
}
