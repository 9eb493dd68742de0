use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

const SIEVE_BOUND: u64 = 1_000_000;

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SIEVE_BOUND as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Sparse prime factorization of a positive rational: `p ↦ e_p`, no zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PrimeExponents(BTreeMap<u64, i64>);

impl PrimeExponents {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, p: u64) -> i64 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    fn bump(&mut self, p: u64, e: i64) {
        let slot = self.0.entry(p).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&p);
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return Self::new();
        }
        PrimeExponents(self.0.iter().map(|(&p, &e)| (p, e * k)).collect())
    }

    /// Rebuilds `∏ p^{e_p}`.
    pub fn value(&self) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&p, &e) in &self.0 {
            let pe = BigInt::from(p).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        Rational::new(num, den)
    }
}

impl FromIterator<(u64, i64)> for PrimeExponents {
    fn from_iter<I: IntoIterator<Item = (u64, i64)>>(iter: I) -> Self {
        let mut out = PrimeExponents::new();
        for (p, e) in iter {
            out.bump(p, e);
        }
        out
    }
}

impl Add for &PrimeExponents {
    type Output = PrimeExponents;
    fn add(self, rhs: &PrimeExponents) -> PrimeExponents {
        let mut out = self.clone();
        for (&p, &e) in &rhs.0 {
            out.bump(p, e);
        }
        out
    }
}

impl Neg for &PrimeExponents {
    type Output = PrimeExponents;
    fn neg(self) -> PrimeExponents {
        self.scaled(-1)
    }
}

impl Sub for &PrimeExponents {
    type Output = PrimeExponents;
    fn sub(self, rhs: &PrimeExponents) -> PrimeExponents {
        self + &(-rhs)
    }
}

fn factor_natural(n: &BigUint, sign: i64, out: &mut PrimeExponents) -> Result<()> {
    let mut rest = n.clone();
    if rest.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    for &p in primes() {
        if rest.is_one() {
            return Ok(());
        }
        // once the cofactor fits in u64 finish natively
        if let Some(small) = rest.to_u64() {
            return factor_u64(small, p, sign, out, n);
        }
        let bp = BigUint::from(p);
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            out.bump(p, sign);
        }
    }
    if rest.is_one() {
        Ok(())
    } else {
        Err(Error::FactorTooLarge(n.to_string()))
    }
}

fn factor_u64(mut m: u64, start: u64, sign: i64, out: &mut PrimeExponents, orig: &BigUint) -> Result<()> {
    for &p in primes().iter().skip_while(|&&p| p < start) {
        if m == 1 {
            return Ok(());
        }
        if p.saturating_mul(p) > m {
            // no divisor up to sqrt(m): m is prime
            out.bump(m, sign);
            return Ok(());
        }
        while m.is_multiple_of(p) {
            m /= p;
            out.bump(p, sign);
        }
    }
    if m == 1 {
        return Ok(());
    }
    // m has no prime factor below the sieve bound; prime only if m < bound²
    if m < SIEVE_BOUND * SIEVE_BOUND {
        out.bump(m, sign);
        Ok(())
    } else {
        Err(Error::FactorTooLarge(orig.to_string()))
    }
}

/// Factors a positive rational into prime exponents; numerator and denominator
/// are factored separately by trial division against a sieve up to 10^6.
pub fn factorize(q: &Rational) -> Result<PrimeExponents> {
    if !q.is_positive() {
        return Err(Error::Domain(format!("factorize needs a positive rational, got {q}")));
    }
    let mut out = PrimeExponents::new();
    factor_natural(q.numer().magnitude(), 1, &mut out)?;
    factor_natural(q.denom().magnitude(), -1, &mut out)?;
    Ok(out)
}
