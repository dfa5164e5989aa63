//! Exact multiplicative number theory: factorization, the divisor-sum and
//! Dedekind psi functions, totients, primorials, and the two sign-certified
//! criterion deltas.

mod interval;

pub use interval::{bits_for_digits, Interval};

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

/// Exact prime factorization, pairs ascending by prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// The integer this factorization reconstructs.
    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// Sign of a criterion delta, certified by interval arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Result of evaluating a Robin-type inequality at one input.
#[derive(Debug, Clone)]
pub struct CriterionDelta {
    /// The q or k evaluated.
    pub input: u64,
    /// Midpoint of the certifying interval, as an exact rational.
    pub value: BigRational,
    pub sign: Sign,
    /// Decimal digits of working precision that certified the sign.
    pub digits: u32,
}

impl CriterionDelta {
    pub fn value_decimal(&self, digits: u32) -> String {
        let num = self.value.numer().clone();
        let den = self.value.denom().clone();
        let scaled = num * BigInt::from(10u32).pow(digits);
        let q = scaled / &den;
        let neg = q.is_negative();
        let mag = q.magnitude().to_string();
        let mag = if mag.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
        } else {
            mag
        };
        let split = mag.len() - digits as usize;
        format!("{}{}.{}", if neg { "-" } else { "" }, &mag[..split], &mag[split..])
    }
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Pollard-Brent rho; n must be composite, odd, > 1.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Exact prime factorization; n = 1 yields the empty list.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut pairs = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            pairs.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        if m <= TRIAL_LIMIT * TRIAL_LIMIT || is_prime(m) {
            pairs.push((m, 1));
        } else {
            // residue above trial range: split recursively with rho
            let mut stack = vec![m];
            let mut found = Vec::new();
            while let Some(v) = stack.pop() {
                if is_prime(v) {
                    found.push(v);
                } else {
                    let d = pollard_rho(v);
                    stack.push(d);
                    stack.push(v / d);
                }
            }
            found.sort_unstable();
            let mut i = 0;
            while i < found.len() {
                let p = found[i];
                let e = found[i..].iter().take_while(|&&x| x == p).count();
                pairs.push((p, e as u32));
                i += e;
            }
        }
    }
    pairs.sort_unstable();
    Ok(Factorization { pairs })
}

/// Sum of all positive divisors, via the product formula.
pub fn sigma(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    let mut acc: u128 = 1;
    for &(p, e) in &f.pairs {
        let mut term: u128 = 1;
        let mut pk: u128 = 1;
        for _ in 0..e {
            pk *= p as u128;
            term += pk;
        }
        acc *= term;
    }
    Ok(u64::try_from(acc).expect("sigma fits in u64 at supported scales"))
}

/// Dedekind psi: n * prod_{p|n} (1 + 1/p).
pub fn psi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    let mut acc: u128 = n as u128;
    for &(p, _) in &f.pairs {
        acc = acc / p as u128 * (p as u128 + 1);
    }
    Ok(u64::try_from(acc).expect("psi fits in u64 at supported scales"))
}

/// Euler totient and the Jordan totient J2(n) = phi(n) * psi(n).
pub fn phi_and_jordan2(n: u64) -> Result<(u64, u128)> {
    let f = factorize(n)?;
    let mut phi: u64 = n;
    for &(p, _) in &f.pairs {
        phi = phi / p * (p - 1);
    }
    let j2 = phi as u128 * psi(n)? as u128;
    Ok((phi, j2))
}

/// The first k primes, ascending.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(k);
    let mut n = 2u64;
    while primes.len() < k {
        if is_prime(n) {
            primes.push(n);
        }
        n += 1;
    }
    primes
}

/// Primorial N_k: product of the first k primes.
pub fn primorial(k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for p in first_primes(k as usize) {
        acc *= BigUint::from(p);
    }
    acc
}

const BASE_DIGITS: u32 = 50;
const WIDE_DIGITS: u32 = 200;

/// Robin criterion delta: sigma(q)/(q log log q) - e^gamma.
///
/// Requires q >= 3 so that log log q is positive.
pub fn robin_delta(q: u64) -> Result<CriterionDelta> {
    if q <= 2 {
        return Err(Error::InvalidInput(format!(
            "robin delta needs q >= 3, got {q}"
        )));
    }
    let s = sigma(q)?;
    let eval = |digits: u32| -> Interval {
        let bits = bits_for_digits(digits);
        let loglog = Interval::from_u64(q, bits).ln().ln();
        let lhs = Interval::from_ratio(&BigInt::from(s), &BigInt::from(q), bits).div(&loglog);
        lhs.sub(&Interval::gamma(bits).exp01())
    };
    certify(q, eval, format!("robin({q})"))
}

/// Psi-primorial criterion delta: psi(N_k)/(N_k log log N_k) - e^gamma/zeta(2).
///
/// psi(N_k)/N_k is formed exactly as prod (1 + 1/p) over the first k primes;
/// log log N_k is evaluated as log(sum of log p), never through a float N_k.
pub fn psi_primorial_delta(k: u32) -> Result<CriterionDelta> {
    if k < 2 {
        return Err(Error::InvalidInput(format!(
            "psi-primorial delta needs k >= 2, got {k}"
        )));
    }
    let primes = first_primes(k as usize);
    let mut ratio = BigRational::one();
    for &p in &primes {
        ratio *= BigRational::new(BigInt::from(p + 1), BigInt::from(p));
    }
    let eval = move |digits: u32| -> Interval {
        let bits = bits_for_digits(digits);
        let mut log_n = Interval::from_u64(0, bits);
        for &p in &primes {
            log_n = log_n.add(&Interval::from_u64(p, bits).ln());
        }
        let lhs = Interval::from_rational(&ratio, bits).div(&log_n.ln());
        let rhs = Interval::gamma(bits).exp01().div(&Interval::zeta2(bits));
        lhs.sub(&rhs)
    };
    certify(k as u64, eval, format!("psi_primorial({k})"))
}

fn certify(
    input: u64,
    eval: impl Fn(u32) -> Interval,
    what: String,
) -> Result<CriterionDelta> {
    for digits in [BASE_DIGITS, WIDE_DIGITS] {
        let iv = eval(digits);
        let sign = if iv.is_negative() {
            Sign::Negative
        } else if iv.is_positive() {
            Sign::Positive
        } else {
            continue;
        };
        return Ok(CriterionDelta {
            input,
            value: iv.midpoint(),
            sign,
            digits,
        });
    }
    // None of the implemented criteria has an exact analytic zero, so an
    // interval still straddling zero at 200 digits is a failure, not a zero.
    Err(Error::SignUndecided(what))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().pairs, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1).unwrap().pairs, vec![]);
        assert_eq!(factorize(32).unwrap().pairs, vec![(2, 5)]);
        assert_eq!(factorize(0), Err(Error::ZeroInput));
    }

    #[test]
    fn factorize_reconstructs() {
        for n in 1..=2000u64 {
            assert_eq!(factorize(n).unwrap().value(), n);
        }
        // exercise the rho path with a semiprime above the trial range
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        assert_eq!(
            factorize(p * q).unwrap().pairs,
            vec![(p, 1), (q, 1)]
        );
    }

    /// Brute-force divisor-sum oracle.
    fn sigma_oracle(n: u64) -> u64 {
        (1..=n).filter(|d| n % d == 0).sum()
    }

    /// Brute-force coprime-count oracle.
    fn phi_oracle(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(4).unwrap(), 7);
        assert_eq!(sigma(12).unwrap(), 28);
        assert_eq!(sigma(32).unwrap(), 63);
        assert_eq!(sigma(1).unwrap(), 1);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(4).unwrap(), 6);
        assert_eq!(psi(12).unwrap(), 24);
        assert_eq!(psi(18).unwrap(), 36);
        // 6 is square-free, so psi(6) = sigma(6)
        assert_eq!(psi(6).unwrap(), sigma_oracle(6));
        assert_eq!(psi(6).unwrap(), 12);
    }

    #[test]
    fn phi_jordan_examples() {
        assert_eq!(phi_and_jordan2(4).unwrap(), (2, 12));
        assert_eq!(phi_and_jordan2(1).unwrap(), (1, 1));
        let (phi6, j26) = phi_and_jordan2(6).unwrap();
        assert_eq!(phi6, phi_oracle(6));
        assert_eq!((phi6, j26), (2, 24));
    }

    #[test]
    fn primorial_examples() {
        assert_eq!(primorial(1), BigUint::from(2u32));
        assert_eq!(primorial(3), BigUint::from(30u32));
        // direct product of the first five primes
        assert_eq!(primorial(5), BigUint::from(2u32 * 3 * 5 * 7 * 11));
        assert_eq!(primorial(5), BigUint::from(2310u32));
    }

    #[test]
    fn oracle_agreement_small() {
        for n in 1..=2_000u64 {
            assert_eq!(sigma(n).unwrap(), sigma_oracle(n), "sigma({n})");
            let (phi, j2) = phi_and_jordan2(n).unwrap();
            assert_eq!(phi, phi_oracle(n), "phi({n})");
            assert_eq!(j2, phi as u128 * psi(n).unwrap() as u128);
        }
    }

    #[test]
    fn robin_examples() {
        assert_eq!(robin_delta(5040).unwrap().sign, Sign::Positive);
        assert_eq!(robin_delta(5041).unwrap().sign, Sign::Negative);
        let d6 = robin_delta(6).unwrap();
        assert_eq!(d6.sign, Sign::Positive);
        // sigma(6)=12, 12/(6 log log 6) ~ 3.43 against e^gamma ~ 1.781
        let v = d6.value.to_f64().unwrap();
        assert!((v - (3.4295 - 1.7811)).abs() < 1e-3, "got {v}");
        assert!(robin_delta(2).is_err());
    }

    #[test]
    fn psi_primorial_examples() {
        assert_eq!(psi_primorial_delta(31).unwrap().sign, Sign::Positive);
        assert_eq!(psi_primorial_delta(100).unwrap().sign, Sign::Positive);
        // k=2: psi(6)/(6 log log 6) - e^gamma/zeta(2), high-precision oracle
        let d = psi_primorial_delta(2).unwrap();
        assert_eq!(d.sign, Sign::Positive);
        let v = d.value.to_f64().unwrap();
        assert!((v - 2.346604373).abs() < 1e-6, "got {v}");
        assert!(psi_primorial_delta(1).is_err());
    }

    #[test]
    fn delta_decimal_echo() {
        let d = robin_delta(5041).unwrap();
        assert_eq!(d.input, 5041);
        assert!(d.value_decimal(6).starts_with("-1.30778"), "{}", d.value_decimal(6));
    }
}
