//! Prime-field arithmetic: inverses, primitive roots and the additive
//! character `z -> e(z/p)` as a precomputed table.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Largest prime accepted by [`FieldContext::new`]; the tables take about
/// 20 bytes per residue.
pub const MAX_TABLE_PRIME: u64 = 1 << 24;

/// Immutable per-prime tables shared read-only by every computation.
#[derive(Debug, Clone)]
pub struct FieldContext {
    p: u32,
    inv: Vec<u32>,
    chi: Vec<Complex64>,
}

impl FieldContext {
    /// Builds the tables for an odd prime `p`.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if p > MAX_TABLE_PRIME {
            return Err(Error::PrimeTooLarge {
                p,
                max: MAX_TABLE_PRIME,
            });
        }
        let p32 = p as u32;
        Ok(Self {
            p: p32,
            inv: inverse_table(p32),
            chi: character_table(p32),
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn sqrt_p(&self) -> f64 {
        (self.p as f64).sqrt()
    }

    /// Inverse of a nonzero residue `x` in `1..p`. Index 0 maps to 0.
    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inv[x as usize]
    }

    /// Checked inverse of an arbitrary integer.
    pub fn try_inv(&self, x: i64) -> Result<u32> {
        match self.reduce(x) {
            0 => Err(Error::ZeroResidue { p: self.p as u64 }),
            r => Ok(self.inv(r)),
        }
    }

    /// `e(k/p)` for a reduced residue `k`.
    #[inline]
    pub fn chi(&self, k: u32) -> Complex64 {
        self.chi[k as usize]
    }

    /// The additive character `psi_p(z) = e^{2 pi i z / p}` for any integer `z`.
    #[inline]
    pub fn psi(&self, z: i64) -> Complex64 {
        self.chi(self.reduce(z))
    }

    #[inline]
    pub fn reduce(&self, z: i64) -> u32 {
        z.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        let s = x as u64 + y as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        pow_mod(x as u64, e, self.p as u64) as u32
    }
}

fn inverse_table(p: u32) -> Vec<u32> {
    let mut inv = alloc::vec![0u32; p as usize];
    inv[1] = 1;
    let p64 = p as u64;
    for x in 2..p as u64 {
        // inv[x] = -(p / x) * inv[p mod x]
        let q = p64 / x;
        let r = inv[(p64 % x) as usize] as u64;
        inv[x as usize] = ((p64 - q) * r % p64) as u32;
    }
    inv
}

fn character_table(p: u32) -> Vec<Complex64> {
    let n = p as usize;
    let mut chi = alloc::vec![Complex64::new(1.0, 0.0); n];
    for k in 1..=n / 2 {
        let angle = TAU * (k as f64) / (p as f64);
        let (s, c) = angle.sin_cos();
        chi[k] = Complex64::new(c, s);
        chi[n - k] = Complex64::new(c, -s);
    }
    chi
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
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

/// Inverse of `x` modulo the prime `p`, in `1..p`.
pub fn mod_inverse(x: i64, p: u64) -> Result<u64> {
    if p < 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let r = (x as i128).rem_euclid(p as i128);
    if r == 0 {
        return Err(Error::ZeroResidue { p });
    }
    // extended Euclid on (r, p)
    let (mut old_r, mut cur_r) = (r, p as i128);
    let (mut old_s, mut cur_s) = (1i128, 0i128);
    while cur_r != 0 {
        let q = old_r / cur_r;
        (old_r, cur_r) = (cur_r, old_r - q * cur_r);
        (old_s, cur_s) = (cur_s, old_s - q * cur_s);
    }
    Ok(old_s.rem_euclid(p as i128) as u64)
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group modulo the prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if p < 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let order = p - 1;
    let factors = distinct_prime_factors(order);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, order / q, p) != 1))
        .ok_or(Error::NotOddPrime(p))
}
