use rand::RngCore;

use super::{Field, FieldDescriptor};
use crate::error::{Error, Result};

/// 2^62 − 57, the largest prime below 2^62.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

/// Prime field GF(p) for 2 ≤ p < 2^63.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gfp {
    p: u64,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin; the first twelve primes as bases are exact
/// for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Gfp {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::Input(format!("gfp modulus {p} must be below 2^63")));
        }
        if !is_prime_u64(p) {
            return Err(Error::Input(format!("gfp modulus {p} is not prime")));
        }
        Ok(Gfp { p })
    }

    pub fn default_prime() -> Self {
        Gfp { p: DEFAULT_PRIME }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for Gfp {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Gfp { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        // rejection sampling keeps the draw uniform
        let bits = 64 - self.p.leading_zeros();
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        loop {
            let x = rng.next_u64() & mask;
            if x < self.p {
                return x;
            }
        }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let v: i128 = s.parse().map_err(|_| Error::Input(format!("`{s}` is not an integer")))?;
        Ok(v.rem_euclid(self.p as i128) as u64)
    }
}
