use rand::RngCore;

use super::{Field, FieldDescriptor};
use crate::error::{Error, Result};

/// GF(2^k) in the polynomial basis, k ∈ {16, 32, 64}.
///
/// Elements are packed into a `u64`; multiplication is a carry-less product
/// followed by reduction with the low part of a fixed sparse irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2k {
    k: u32,
    /// The modulus minus its leading term x^k.
    low: u64,
    mask: u64,
}

fn irreducible_low(k: u32) -> Option<u64> {
    match k {
        // x^16 + x^5 + x^3 + x + 1
        16 => Some(0x2b),
        // x^32 + x^7 + x^3 + x^2 + 1
        32 => Some(0x8d),
        // x^64 + x^4 + x^3 + x + 1
        64 => Some(0x1b),
        _ => None,
    }
}

impl Gf2k {
    pub fn new(k: u32) -> Result<Self> {
        let low = irreducible_low(k)
            .ok_or_else(|| Error::Input(format!("gf2k degree {k} unsupported (use 16, 32 or 64)")))?;
        let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let f = Gf2k { k, low, mask };
        if !f.modulus_is_irreducible() {
            return Err(Error::Consistency(format!("gf2k:{k} modulus is reducible")));
        }
        Ok(f)
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus_low(&self) -> u64 {
        self.low
    }

    fn reduce(&self, mut p: u128) -> u64 {
        let k = self.k;
        loop {
            let hi = p >> k;
            if hi == 0 {
                return p as u64;
            }
            let lo = p & self.mask as u128;
            // hi < 2^k fits in a u64 for every supported k
            p = lo ^ clmul(hi as u64, self.low);
        }
    }

    /// Rabin's test: x^(2^k) ≡ x and gcd(x^(2^(k/q)) − x, f) = 1 for the
    /// prime divisors q of k (k is a power of two, so q = 2 only).
    fn modulus_is_irreducible(&self) -> bool {
        let x = 2u64;
        let mut t = x;
        let mut half = 0u64;
        for i in 0..self.k {
            t = self.mul(&t, &t);
            if i + 1 == self.k / 2 {
                half = t;
            }
        }
        if t != x {
            return false;
        }
        // gcd(f, half + x) over GF(2)[x]; f itself does not fit in 64 bits
        // when k = 64, so carry it as u128.
        let f: u128 = (1u128 << self.k) | self.low as u128;
        poly_gcd(f, (half ^ x) as u128) == 1
    }
}

fn poly_deg(a: u128) -> i32 {
    127 - a.leading_zeros() as i32
}

fn poly_rem(mut a: u128, b: u128) -> u128 {
    let db = poly_deg(b);
    while a != 0 && poly_deg(a) >= db {
        a ^= b << (poly_deg(a) - db);
    }
    a
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Carry-less 64×64 → 128 bit product.
pub fn clmul(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") && std::arch::is_x86_feature_detected!("sse2") {
            // SAFETY: both features were detected at runtime.
            return unsafe { clmul_x86(a, b) };
        }
    }
    clmul_soft(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul_x86(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::*;
    let va = _mm_set_epi64x(0, a as i64);
    let vb = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(va, vb, 0x00);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
    ((hi as u128) << 64) | lo as u128
}

pub fn clmul_soft(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    for i in 1..16 {
        table[i] = if i & 1 == 1 { table[i - 1] ^ a as u128 } else { table[i >> 1] << 1 };
    }
    let mut acc = 0u128;
    for nib in (0..16).rev() {
        acc <<= 4;
        acc ^= table[((b >> (nib * 4)) & 0xf) as usize];
    }
    acc
}

impl Field for Gf2k {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Gf2k { k: self.k }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v & 1) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }
    fn neg(&self, a: &u64) -> u64 {
        *a
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(clmul(*a, *b))
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // a^(2^k − 2)
        let mut r = 1u64;
        let mut s = *a;
        for _ in 1..self.k {
            s = self.mul(&s, &s);
            r = self.mul(&r, &s);
        }
        Ok(r)
    }
    fn characteristic(&self) -> u64 {
        2
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() & self.mask
    }
    fn format(&self, a: &u64) -> String {
        format!("{a:#x}")
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let v = match s.strip_prefix("0x") {
            Some(h) => u64::from_str_radix(h, 16),
            None => s.parse(),
        }
        .map_err(|_| Error::Input(format!("`{s}` is not an element of GF(2^{})", self.k)))?;
        if v & !self.mask != 0 {
            return Err(Error::Input(format!("`{s}` does not fit in GF(2^{})", self.k)));
        }
        Ok(v)
    }
    fn mul_add_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        *a ^= self.mul(b, c);
    }
}
