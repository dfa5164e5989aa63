//! Binary fixed-point interval arithmetic on top of `BigInt`.
//!
//! A value is an interval `[lo, hi] / 2^bits` guaranteed to contain the exact
//! quantity. All operations round outward, so a sign read off an interval
//! that excludes zero is certified, not float-guessed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Euler-Mascheroni constant, 200 fractional digits (OEIS A001620).
const GAMMA_DEC: &str = "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674951463144724980708248096050401448654283622417399764492353625350033374293733773767394279259525824709491";

/// zeta(2) = pi^2/6, 200 fractional digits (OEIS A013661).
const ZETA2_DEC: &str = "1.64493406684822643647241516664602518921894990120679843773555822937000747040320087383362890061975870530400431896233719067962872468700500778793510294633086627683173330936776260509525100687214005479681155";

/// Natural log of 2, 200 fractional digits (OEIS A002162).
const LN2_DEC: &str = "0.69314718055994530941723212145817656807550013436025525412068000949339362196969471560586332699641868754200148102057068573368552023575813055703267075163507596193072757082837143519030703862389167347112335";

/// Working precision for a requested number of significant decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    // log2(10) ~ 3.322, plus guard bits for rounding slop in series sums
    (digits * 10 + 2) / 3 + 32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

impl Interval {
    fn scale(bits: u32) -> BigInt {
        BigInt::one() << bits
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn from_u64(v: u64, bits: u32) -> Self {
        let m = BigInt::from(v) << bits;
        Interval {
            lo: m.clone(),
            hi: m,
            bits,
        }
    }

    /// Tight interval around `num/den`, `den > 0`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        let scaled = num * Self::scale(bits);
        Interval {
            lo: floor_div(&scaled, den),
            hi: ceil_div(&scaled, den),
            bits,
        }
    }

    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        Self::from_ratio(r.numer(), r.denom(), bits)
    }

    /// Parse a decimal constant, widened by one unit in the last digit to
    /// absorb the truncation of the stored literal.
    fn from_decimal_const(s: &str, bits: u32) -> Self {
        let (int_part, frac_part) = s.split_once('.').expect("constant has a decimal point");
        let digits = frac_part.len() as u32;
        let num: BigInt = format!("{int_part}{frac_part}").parse().expect("constant parses");
        let den = BigInt::from(10u32).pow(digits);
        let base = Self::from_ratio(&num, &den, bits);
        let ulp = Self::from_ratio(&BigInt::one(), &den, bits);
        Interval {
            lo: base.lo - ulp.hi.clone(),
            hi: base.hi + ulp.hi,
            bits,
        }
    }

    pub fn gamma(bits: u32) -> Self {
        Self::from_decimal_const(GAMMA_DEC, bits)
    }

    pub fn zeta2(bits: u32) -> Self {
        Self::from_decimal_const(ZETA2_DEC, bits)
    }

    pub fn ln2(bits: u32) -> Self {
        Self::from_decimal_const(LN2_DEC, bits)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.bits, other.bits);
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            bits: self.bits,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.bits, other.bits);
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
            bits: self.bits,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.bits, other.bits);
        let corners = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let s = Self::scale(self.bits);
        let lo = corners.iter().min().unwrap();
        let hi = corners.iter().max().unwrap();
        Interval {
            lo: floor_div(lo, &s),
            hi: ceil_div(hi, &s),
            bits: self.bits,
        }
    }

    /// Division by an interval that is strictly positive.
    pub fn div(&self, other: &Self) -> Self {
        debug_assert_eq!(self.bits, other.bits);
        assert!(other.lo.is_positive(), "divisor interval must be > 0");
        let num_lo = &self.lo * Self::scale(self.bits);
        let num_hi = &self.hi * Self::scale(self.bits);
        let lo_den = if self.lo.is_negative() { &other.lo } else { &other.hi };
        let hi_den = if self.hi.is_negative() { &other.hi } else { &other.lo };
        Interval {
            lo: floor_div(&num_lo, lo_den),
            hi: ceil_div(&num_hi, hi_den),
            bits: self.bits,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        let (a, b) = (&self.lo * &k, &self.hi * &k);
        let (lo, hi) = if k.is_negative() { (b, a) } else { (a, b) };
        Interval { lo, hi, bits: self.bits }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn straddles_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    /// Natural logarithm; requires `lo > 0`. Monotone, so the endpoints are
    /// evaluated separately with outward rounding.
    pub fn ln(&self) -> Self {
        assert!(self.lo.is_positive(), "ln needs a positive interval");
        let lo = ln_point(&self.lo, self.bits);
        let hi = ln_point(&self.hi, self.bits);
        Interval {
            lo: lo.lo,
            hi: hi.hi,
            bits: self.bits,
        }
    }

    /// exp on [0, 1); enough for e^gamma.
    pub fn exp01(&self) -> Self {
        assert!(!self.lo.is_negative() && self.hi < Self::scale(self.bits));
        let lo = exp01_point(&self.lo, self.bits);
        let hi = exp01_point(&self.hi, self.bits);
        Interval {
            lo: lo.lo,
            hi: hi.hi,
            bits: self.bits,
        }
    }

    /// Midpoint as an exact rational.
    pub fn midpoint(&self) -> BigRational {
        BigRational::new(&self.lo + &self.hi, BigInt::from(2) << self.bits)
    }

    /// Midpoint rendered as a decimal string with `digits` fractional digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let mid = &self.lo + &self.hi;
        let scaled = mid * BigInt::from(10u32).pow(digits);
        let v = floor_div(&scaled, &(BigInt::from(2) << self.bits));
        let neg = v.is_negative();
        let mag = v.magnitude().to_string();
        let mag = if mag.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
        } else {
            mag
        };
        let split = mag.len() - digits as usize;
        format!("{}{}.{}", if neg { "-" } else { "" }, &mag[..split], &mag[split..])
    }
}

/// Interval enclosure of ln(m / 2^bits) for a positive point value m.
fn ln_point(m: &BigInt, bits: u32) -> Interval {
    debug_assert!(m.is_positive());
    // m/2^bits = t * 2^e with t in [1, 2)
    let e = m.bits() as i64 - 1 - bits as i64;
    let unit = BigInt::one() << (m.bits() - 1); // represents t = m/unit in [1,2)

    // ln t = 2 atanh(r), r = (t-1)/(t+1) in [0, 1/3)
    let r = Interval::from_ratio(&(m - &unit), &(m + &unit), bits);
    let r2 = r.mul(&r);
    let mut term = r.clone();
    let mut sum = r;
    let mut k: u64 = 1;
    let one_ulp = BigInt::one();
    loop {
        term = term.mul(&r2);
        k += 2;
        sum = sum.add(&term.div(&Interval::from_u64(k, bits)));
        if term.hi <= one_ulp {
            break;
        }
    }
    // tail of the series is below term * r2 / (1 - r2) <= 2 ulp here
    let mut ln_t = sum.mul_int(2);
    ln_t.hi += BigInt::from(4);

    if e == 0 {
        ln_t
    } else {
        ln_t.add(&Interval::ln2(bits).mul_int(e))
    }
}

/// Interval enclosure of exp(m / 2^bits) for m/2^bits in [0, 1).
fn exp01_point(m: &BigInt, bits: u32) -> Interval {
    let x = Interval {
        lo: m.clone(),
        hi: m.clone(),
        bits,
    };
    let mut term = Interval::from_u64(1, bits);
    let mut sum = Interval::from_u64(1, bits);
    let mut k: u64 = 0;
    let one_ulp = BigInt::one();
    loop {
        k += 1;
        term = term.mul(&x).div(&Interval::from_u64(k, bits));
        sum = sum.add(&term);
        if term.hi <= one_ulp {
            break;
        }
    }
    // tail below term * x/(1-x) with x < 1; crude but safe bound
    sum.hi += BigInt::from(8);
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: u32 = 200;

    fn approx(iv: &Interval) -> f64 {
        let mid = iv.midpoint();
        let num: f64 = mid.numer().to_string().parse().unwrap();
        let den: f64 = mid.denom().to_string().parse().unwrap();
        num / den
    }

    #[test]
    fn ln_of_e_neighborhood() {
        // ln 2 from the series must agree with the stored constant
        let two = Interval::from_u64(2, BITS);
        let ln = two.ln();
        let c = Interval::ln2(BITS);
        assert!(ln.sub(&c).straddles_zero());
        assert!((approx(&ln) - 0.6931471805599453).abs() < 1e-12);
    }

    #[test]
    fn ln_large_and_small() {
        let x = Interval::from_u64(5040, BITS);
        assert!((approx(&x.ln()) - 8.525161361).abs() < 1e-6);
        let y = Interval::from_ratio(&BigInt::from(11), &BigInt::from(10), BITS);
        assert!((approx(&y.ln()) - 0.09531017980432486).abs() < 1e-12);
    }

    #[test]
    fn exp_gamma() {
        let eg = Interval::gamma(BITS).exp01();
        assert!((approx(&eg) - 1.7810724179901979).abs() < 1e-12);
    }

    #[test]
    fn interval_sign_reads() {
        let a = Interval::from_u64(3, BITS);
        let b = Interval::from_u64(5, BITS);
        assert!(a.sub(&b).is_negative());
        assert!(b.sub(&a).is_positive());
        assert!(a.sub(&a).straddles_zero());
    }

    #[test]
    fn decimal_rendering() {
        let r = Interval::from_ratio(&BigInt::from(-1), &BigInt::from(8), BITS);
        assert_eq!(r.to_decimal(4), "-0.1250");
        let z = Interval::zeta2(BITS);
        assert!(z.to_decimal(10).starts_with("1.6449340668"));
    }
}
